//! `skewbrace`: census enumeration and classification, brace analysis,
//! isoclinism checks and involutive Yang–Baxter solutions.
//!
//! Exit codes: 0 success or YES, 1 NO, 2 usage or unsupported input,
//! 3 I/O failure, 4 invalid data.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use skewbrace::brace::{BraceJson, SkewBrace};
use skewbrace::census::{
    classify_census, enumerate_braces_with, load_db, save_db, BraceRecord, CensusError, ClassTable,
    EnumerateOptions, Filter,
};
use skewbrace::isoclinism::{
    find_isoclinism, h_orbit_stats, is_stem, verify_isoclinism, HSelector, Prepared,
};
use skewbrace::ybe::{
    classify_solutions, enumerate_involutive, permutation_brace, Solution, SolutionJson, YbeError,
    MAX_ENUMERATION_SIZE,
};

#[derive(Parser)]
#[command(
    name = "skewbrace",
    version,
    about = "Finite skew braces, isoclinism and Yang-Baxter solutions"
)]
struct Cli {
    /// Worker threads (default: one per core).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate all skew braces of one order into a JSON-lines database.
    Enumerate {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        out: PathBuf,
        /// Where per-group checkpoints go (default: `<out>.checkpoints`).
        #[arg(long)]
        checkpoint_dir: Option<PathBuf>,
        /// Reuse checkpoints left by an interrupted run.
        #[arg(long)]
        resume: bool,
    },
    /// Count isoclinism classes in a database.
    Classify {
        #[arg(long)]
        db: PathBuf,
        /// all, two-sided, abelian or radical; omitted means every filter.
        #[arg(long)]
        filter: Option<Filter>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Include a witness relating each member to its representative.
        #[arg(long)]
        witnesses: bool,
    },
    /// Report the invariants of a brace given as `{"n", "add", "circ"}`.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Decide whether two braces are isoclinic.
    Isoclinic {
        a: PathBuf,
        b: PathBuf,
        /// Re-check the witness exhaustively before printing it.
        #[arg(long)]
        verify: bool,
    },
    /// Involutive set-theoretic solutions of the Yang-Baxter equation.
    Ybe {
        #[command(subcommand)]
        command: YbeCommand,
    },
}

#[derive(Subcommand)]
enum YbeCommand {
    /// Enumerate involutive solutions of one size up to relabeling.
    Enumerate {
        #[arg(long)]
        size: usize,
        /// Write the solutions as JSON lines.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Split solutions into permutation-isoclinism classes.
    Classify {
        /// Classify every solution of this size.
        #[arg(long, conflicts_with = "input", required_unless_present = "input")]
        size: Option<usize>,
        /// Classify the solutions listed in a file, one per line.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Report the class of each solution listed in this file.
        #[arg(long)]
        match_representatives: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Report retractions, the permutation group and its brace.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(String),
    Data(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Io(_) => 3,
            Failure::Data(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Io(m) | Failure::Data(m) => m,
        }
    }
}

impl From<CensusError> for Failure {
    fn from(e: CensusError) -> Self {
        match e {
            CensusError::Catalog(_) => Failure::Usage(e.to_string()),
            CensusError::Io(_) => Failure::Io(e.to_string()),
            _ => Failure::Data(e.to_string()),
        }
    }
}

impl From<YbeError> for Failure {
    fn from(e: YbeError) -> Self {
        match e {
            YbeError::TooLarge(_) | YbeError::UnsupportedSolutionKind => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Data(e.to_string()),
        }
    }
}

/// Process outcome for commands that answer a yes/no question.
enum Verdict {
    Yes,
    No,
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn read_brace(path: &Path) -> Result<SkewBrace, Failure> {
    let text = read(path)?;
    let j: BraceJson = serde_json::from_str(&text)
        .map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
    SkewBrace::from_json(&j).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

/// Prefixes census failures with the file they concern.
fn at(path: &Path) -> impl Fn(CensusError) -> Failure + '_ {
    move |e| match Failure::from(e) {
        Failure::Usage(m) => Failure::Usage(m),
        Failure::Io(m) => Failure::Io(format!("{}: {m}", path.display())),
        Failure::Data(m) => Failure::Data(format!("{}: {m}", path.display())),
    }
}

fn parse_solution(text: &str) -> Result<Solution, Failure> {
    let text = text.trim();
    if text.starts_with('{') {
        let j: SolutionJson =
            serde_json::from_str(text).map_err(|e| Failure::Data(e.to_string()))?;
        Ok(Solution::from_json(&j)?)
    } else {
        Ok(Solution::parse_cycles(&text.replace('\n', ";"))?)
    }
}

/// One solution per non-empty line; `#` starts a comment line.
fn read_solutions(path: &Path) -> Result<Vec<Solution>, Failure> {
    read(path)?
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .enumerate()
        .map(|(i, l)| {
            parse_solution(l).map_err(|e| {
                Failure::Data(format!(
                    "{} entry {}: {}",
                    path.display(),
                    i + 1,
                    e.message()
                ))
            })
        })
        .collect()
}

fn plural(n: usize, one: &str, many: &str) -> String {
    format!("{n} {}", if n == 1 { one } else { many })
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

fn report_group(i: usize, count: usize, found: usize) {
    eprintln!(
        "additive group {}/{count}: {}",
        i + 1,
        plural(found, "skew brace", "skew braces")
    );
}

fn enumerate(
    order: usize,
    out: &Path,
    checkpoint_dir: Option<PathBuf>,
    resume: bool,
) -> Result<(), Failure> {
    let checkpoint_dir = checkpoint_dir.or_else(|| {
        resume.then(|| {
            let mut name = out.as_os_str().to_owned();
            name.push(".checkpoints");
            PathBuf::from(name)
        })
    });
    let opts = EnumerateOptions {
        checkpoint_dir,
        resume,
        progress: Some(report_group),
    };
    let records = enumerate_braces_with(order, &opts)?;
    save_db(out, &records).map_err(at(out))?;
    println!("{}", plural(records.len(), "skew brace", "skew braces"));
    Ok(())
}

fn class_json(
    table: &ClassTable,
    records: &[BraceRecord],
    witnesses: bool,
) -> Result<Value, Failure> {
    let mut v = serde_json::to_value(table).expect("class tables serialize");
    if witnesses {
        let prepared = |id: &str| -> Result<Prepared, Failure> {
            let r = records
                .iter()
                .find(|r| r.id == id)
                .expect("class members come from the database");
            Ok(Prepared::new(
                &r.brace().map_err(|e| Failure::Data(e.to_string()))?,
            ))
        };
        for (k, class) in table.classes.iter().enumerate() {
            let rep = prepared(&class.representative)?;
            let mut list = Vec::new();
            for m in &class.members {
                let w = find_isoclinism(&rep, &prepared(m)?)
                    .expect("members are isoclinic to the representative");
                list.push(serde_json::to_value(w).expect("witnesses serialize"));
            }
            v["classes"][k]["witnesses"] = Value::Array(list);
        }
    }
    Ok(v)
}

fn classify(
    db: &Path,
    filter: Option<Filter>,
    format: Format,
    witnesses: bool,
) -> Result<(), Failure> {
    let records = load_db(db).map_err(at(db))?;
    let filters = match filter {
        Some(f) => vec![f],
        None => Filter::EVERY.to_vec(),
    };
    let tables = filters
        .iter()
        .map(|&f| classify_census(&records, f))
        .collect::<Result<Vec<_>, _>>()?;
    match format {
        Format::Json => {
            let list = tables
                .iter()
                .map(|t| class_json(t, &records, witnesses))
                .collect::<Result<Vec<_>, _>>()?;
            let v = if filter.is_some() {
                list.into_iter().next().unwrap()
            } else {
                Value::Array(list)
            };
            println!("{}", pretty(&v));
        }
        Format::Table if filter.is_some() => {
            let t = &tables[0];
            println!(
                "{}",
                plural(t.class_count, "isoclinism class", "isoclinism classes")
            );
            println!("{:>5}  {:<64}  members", "class", "representative");
            for (k, c) in t.classes.iter().enumerate() {
                println!(
                    "{:>5}  {:<64}  {}",
                    k + 1,
                    c.representative,
                    c.members.len()
                );
            }
            if witnesses {
                println!("{}", pretty(&class_json(t, &records, true)?));
            }
        }
        Format::Table => {
            println!("{:<10}  {:>7}  {:>7}", "filter", "records", "classes");
            for t in &tables {
                println!("{:<10}  {:>7}  {:>7}", t.filter, t.records, t.class_count);
            }
        }
    }
    Ok(())
}

fn stats_json(stats: &std::collections::BTreeMap<usize, usize>) -> Value {
    stats
        .iter()
        .map(|(size, count)| (size.to_string(), json!(count)))
        .collect::<serde_json::Map<_, _>>()
        .into()
}

fn brace_report(b: &SkewBrace) -> Value {
    let p = b.predicates();
    let comm = b
        .commutator_ideal()
        .expect("the commutator of a valid brace is an ideal");
    let lambda = h_orbit_stats(b, &HSelector::Lambda).expect("built-in selector");
    let rho = h_orbit_stats(b, &HSelector::Rho).expect("built-in selector");
    json!({
        "order": b.order(),
        "trivial": p.is_trivial,
        "two_sided": p.is_two_sided,
        "abelian_type": p.is_abelian_type,
        "nilpotent_type": p.is_nilpotent_type,
        "radical_ring": p.is_radical_ring,
        "right_nilpotent": b.is_right_nilpotent(),
        "annihilator_nilpotent": p.is_annihilator_nilpotent,
        "stem": is_stem(b),
        "commutator_order": comm.len(),
        "annihilator": b.annihilator().elements(),
        "socle": b.socle().elements(),
        "lambda_orbits": stats_json(&lambda),
        "rho_orbits": stats_json(&rho),
        "right_series": b.right_series().sizes(),
    })
}

/// `key: value` lines; nested reports are indented, orbit profiles are
/// shown as `size×count`.
fn write_report(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    for (k, x) in v.as_object().expect("reports are objects") {
        let shown = match x {
            Value::Object(m) if m.values().all(Value::is_number) => {
                let parts: Vec<String> = m
                    .iter()
                    .map(|(size, count)| format!("{size}×{count}"))
                    .collect();
                parts.join(" ")
            }
            Value::Object(_) => {
                let _ = writeln!(out, "{pad}{k}:");
                write_report(out, x, depth + 1);
                continue;
            }
            Value::Array(items) => {
                let parts: Vec<String> = items.iter().map(Value::to_string).collect();
                parts.join(", ")
            }
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        let _ = writeln!(out, "{pad}{k}: {shown}");
    }
}

fn print_report(v: &Value, format: Format) {
    match format {
        Format::Json => println!("{}", pretty(v)),
        Format::Table => {
            let mut out = String::new();
            write_report(&mut out, v, 0);
            print!("{out}");
        }
    }
}

fn isoclinic(a: &Path, b: &Path, verify: bool) -> Result<Verdict, Failure> {
    let (ba, bb) = (read_brace(a)?, read_brace(b)?);
    let (pa, pb) = (Prepared::new(&ba), Prepared::new(&bb));
    match find_isoclinism(&pa, &pb) {
        Some(w) => {
            if verify {
                verify_isoclinism(&ba, &bb, &w)
                    .map_err(|e| Failure::Data(format!("witness rejected: {e}")))?;
            }
            println!("YES");
            println!(
                "{}",
                serde_json::to_string(&w).expect("witnesses serialize")
            );
            Ok(Verdict::Yes)
        }
        None => {
            match pa.fingerprint.first_difference(&pb.fingerprint) {
                Some(field) => println!("NO: first difference in {field}"),
                None => println!(
                    "NO: no isomorphism of the annihilator quotients extends to the commutators"
                ),
            }
            Ok(Verdict::No)
        }
    }
}

fn ybe_enumerate(size: usize, out: Option<&Path>) -> Result<(), Failure> {
    if size > MAX_ENUMERATION_SIZE {
        return Err(YbeError::TooLarge(size).into());
    }
    let list = enumerate_involutive(size)?;
    if let Some(path) = out {
        let mut text = String::new();
        for s in &list {
            text.push_str(&serde_json::to_string(&s.to_json()).expect("solutions serialize"));
            text.push('\n');
        }
        write(path, &text)?;
    }
    println!("{}", plural(list.len(), "solution", "solutions"));
    Ok(())
}

fn ybe_classify(
    size: Option<usize>,
    input: Option<&Path>,
    reps: Option<&Path>,
    format: Format,
) -> Result<(), Failure> {
    let list = match (size, input) {
        (Some(n), _) => enumerate_involutive(n)?,
        (None, Some(path)) => read_solutions(path)?,
        (None, None) => return Err(Failure::Usage("give --size or --input".into())),
    };
    let classes = classify_solutions(&list)?;
    let reps = reps.map(read_solutions).transpose()?;
    let matches: Option<Vec<Option<usize>>> = reps
        .as_ref()
        .map(|reps| {
            reps.iter()
                .map(|r| {
                    let pr = Prepared::new(&permutation_brace(r)?);
                    let mut hit = None;
                    for (k, c) in classes.iter().enumerate() {
                        let pc = Prepared::new(&permutation_brace(&list[c.representative])?);
                        if find_isoclinism(&pc, &pr).is_some() {
                            hit = Some(k);
                            break;
                        }
                    }
                    Ok::<_, YbeError>(hit)
                })
                .collect()
        })
        .transpose()?;
    match format {
        Format::Json => {
            let v = json!({
                "solutions": list.len(),
                "classes": classes
                    .iter()
                    .map(|c| json!({
                        "representative": list[c.representative].to_string(),
                        "members": c.members.iter().map(|&i| list[i].to_string()).collect::<Vec<_>>(),
                    }))
                    .collect::<Vec<_>>(),
                "matches": matches,
            });
            println!("{}", pretty(&v));
        }
        Format::Table => {
            println!("{}", plural(classes.len(), "class", "classes"));
            for (k, c) in classes.iter().enumerate() {
                println!(
                    "class {}: {}; representative {}",
                    k + 1,
                    plural(c.members.len(), "solution", "solutions"),
                    list[c.representative]
                );
            }
            if let (Some(reps), Some(matches)) = (&reps, &matches) {
                for (i, (r, m)) in reps.iter().zip(matches).enumerate() {
                    match m {
                        Some(k) => println!("listed {}: class {} ({r})", i + 1, k + 1),
                        None => println!("listed {}: no class ({r})", i + 1),
                    }
                }
            }
        }
    }
    Ok(())
}

fn ybe_analyze(path: &Path, format: Format) -> Result<(), Failure> {
    let s = parse_solution(&read(path)?)
        .map_err(|e| Failure::Data(format!("{}: {}", path.display(), e.message())))?;
    let tower = s.retraction_tower();
    let mut v = json!({
        "size": s.size(),
        "solution": s.to_string(),
        "involutive": s.is_involutive(),
        "indecomposable": s.is_indecomposable(),
        "permutation_group_order": s.permutation_group().order(),
        "retraction_sizes": tower.levels.iter().map(Solution::size).collect::<Vec<_>>(),
        "multipermutation_level": tower.mp_level,
    });
    if s.is_involutive() {
        let b = permutation_brace(&s)?;
        v["permutation_brace"] = brace_report(&b);
    }
    print_report(&v, format);
    Ok(())
}

fn run(cli: Cli) -> Result<Verdict, Failure> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs as usize)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    match cli.command {
        Command::Enumerate {
            order,
            out,
            checkpoint_dir,
            resume,
        } => enumerate(order, &out, checkpoint_dir, resume)?,
        Command::Classify {
            db,
            filter,
            format,
            witnesses,
        } => classify(&db, filter, format, witnesses)?,
        Command::Analyze { file, format } => {
            print_report(&brace_report(&read_brace(&file)?), format)
        }
        Command::Isoclinic { a, b, verify } => return isoclinic(&a, &b, verify),
        Command::Ybe { command } => match command {
            YbeCommand::Enumerate { size, out } => ybe_enumerate(size, out.as_deref())?,
            YbeCommand::Classify {
                size,
                input,
                match_representatives,
                format,
            } => ybe_classify(
                size,
                input.as_deref(),
                match_representatives.as_deref(),
                format,
            )?,
            YbeCommand::Analyze { file, format } => ybe_analyze(&file, format)?,
        },
    }
    Ok(Verdict::Yes)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Verdict::Yes) => ExitCode::SUCCESS,
        Ok(Verdict::No) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

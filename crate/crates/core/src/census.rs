//! Censuses of skew braces of a fixed small order, their isoclinism
//! classes, and a JSON-lines database format.
//!
//! Braces with additive group `G` are read off from the regular subgroups
//! of `Hol(G)`, one per `Aut(G)`-conjugacy class.

use std::fmt;
use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::brace::{brace_from_regular_subgroup, brace_isomorphic, BraceError, SkewBrace};
use crate::catalog::{catalog_groups, CatalogError};
use crate::group::{automorphism_group, CayleyGroup};
use crate::holomorph::{holomorph_with, regular_subgroups, Fusion};
use crate::isoclinism::{is_stem, partition_prepared, Fingerprint, Prepared};

#[derive(Debug, thiserror::Error)]
pub enum CensusError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    ParseError { line: usize, message: String },
    #[error("record {0}: stored id does not match the tables")]
    HashMismatch(String),
    #[error("record {0}: stored flags or fingerprint disagree with recomputation")]
    FlagMismatch(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RecordFlags {
    pub trivial: bool,
    pub two_sided: bool,
    pub abelian_type: bool,
    pub radical_ring: bool,
    pub right_nilpotent: bool,
    pub stem: bool,
}

impl RecordFlags {
    pub fn of(b: &SkewBrace) -> Self {
        let p = b.predicates();
        RecordFlags {
            trivial: p.is_trivial,
            two_sided: p.is_two_sided,
            abelian_type: p.is_abelian_type,
            radical_ring: p.is_radical_ring,
            right_nilpotent: b.is_right_nilpotent(),
            stem: is_stem(b),
        }
    }
}

/// One line of a census database.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraceRecord {
    /// Content hash of the tables.
    pub id: String,
    pub order: usize,
    pub add: Vec<Vec<usize>>,
    pub circ: Vec<Vec<usize>>,
    pub fingerprint: Fingerprint,
    pub flags: RecordFlags,
    /// Id of the representative of the record's isoclinism class.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_id: Option<String>,
}

impl BraceRecord {
    pub fn new(b: &SkewBrace) -> Self {
        let j = b.to_json();
        BraceRecord {
            id: b.content_hash(),
            order: j.n,
            add: j.add,
            circ: j.circ,
            fingerprint: crate::isoclinism::fingerprint(b),
            flags: RecordFlags::of(b),
            class_id: None,
        }
    }

    pub fn brace(&self) -> Result<SkewBrace, BraceError> {
        crate::brace::validate_brace(&self.add, &self.circ)
    }

    /// Rebuilds the brace and checks the stored id, flags and fingerprint.
    pub fn verify(&self) -> Result<SkewBrace, CensusError> {
        let b = self.brace().map_err(|e| CensusError::ParseError {
            line: 0,
            message: e.to_string(),
        })?;
        if b.order() != self.order || b.content_hash() != self.id {
            return Err(CensusError::HashMismatch(self.id.clone()));
        }
        if RecordFlags::of(&b) != self.flags
            || crate::isoclinism::fingerprint(&b) != self.fingerprint
        {
            return Err(CensusError::FlagMismatch(self.id.clone()));
        }
        Ok(b)
    }
}

/// Where per-additive-group results are cached during a long census.
#[derive(Debug, Clone, Default)]
pub struct EnumerateOptions {
    pub checkpoint_dir: Option<PathBuf>,
    /// Reuse checkpoints already present in `checkpoint_dir`.
    pub resume: bool,
    /// Called as `(group index, group count, braces found)` when the
    /// braces on one additive group are known.
    pub progress: Option<fn(usize, usize, usize)>,
}

pub fn enumerate_braces(n: usize) -> Result<Vec<BraceRecord>, CensusError> {
    enumerate_braces_with(n, &EnumerateOptions::default())
}

/// Every skew brace of order `n` up to isomorphism, sorted by id.
pub fn enumerate_braces_with(
    n: usize,
    opts: &EnumerateOptions,
) -> Result<Vec<BraceRecord>, CensusError> {
    let groups = catalog_groups(n)?;
    if let Some(dir) = &opts.checkpoint_dir {
        fs::create_dir_all(dir)?;
    }
    let per_group: Vec<Result<Vec<BraceRecord>, CensusError>> = groups
        .par_iter()
        .enumerate()
        .map(|(i, g)| {
            let path = opts
                .checkpoint_dir
                .as_ref()
                .map(|d| d.join(format!("order-{n}-group-{i}.jsonl")));
            let records = match &path {
                Some(p) if opts.resume && p.exists() => load_db(p)?,
                _ => {
                    let records: Vec<BraceRecord> =
                        braces_on(g).iter().map(BraceRecord::new).collect();
                    if let Some(p) = &path {
                        save_db(p, &records)?;
                    }
                    records
                }
            };
            if let Some(report) = opts.progress {
                report(i, groups.len(), records.len());
            }
            Ok(records)
        })
        .collect();
    let mut records = Vec::new();
    for r in per_group {
        records.extend(r?);
    }
    records.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(records)
}

/// One brace per `Aut(g)`-class of regular subgroups of `Hol(g)`, with
/// isomorphic leftovers removed.
pub fn braces_on(g: &CayleyGroup) -> Vec<SkewBrace> {
    let aut = automorphism_group(g);
    let hol = holomorph_with(g, &aut);
    let mut out: Vec<SkewBrace> = Vec::new();
    for sub in regular_subgroups(&hol, g.order(), Fusion::PointStabilizer) {
        let b = brace_from_regular_subgroup(g, &sub).expect("regular subgroup of the holomorph");
        if !out.iter().any(|c| brace_isomorphic(c, &b).is_some()) {
            out.push(b);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Filter {
    All,
    TwoSided,
    AbelianType,
    RadicalRing,
}

impl Filter {
    pub const EVERY: [Filter; 4] = [
        Filter::RadicalRing,
        Filter::AbelianType,
        Filter::TwoSided,
        Filter::All,
    ];

    pub fn accepts(self, flags: &RecordFlags) -> bool {
        match self {
            Filter::All => true,
            Filter::TwoSided => flags.two_sided,
            Filter::AbelianType => flags.abelian_type,
            Filter::RadicalRing => flags.radical_ring,
        }
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Filter::All => "all",
            Filter::TwoSided => "two-sided",
            Filter::AbelianType => "abelian",
            Filter::RadicalRing => "radical",
        })
    }
}

impl FromStr for Filter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "all" => Ok(Filter::All),
            "two-sided" => Ok(Filter::TwoSided),
            "abelian" => Ok(Filter::AbelianType),
            "radical" => Ok(Filter::RadicalRing),
            other => Err(format!(
                "unknown filter {other:?} (all, two-sided, abelian, radical)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassEntry {
    pub representative: String,
    pub members: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassTable {
    pub filter: String,
    pub order: Option<usize>,
    pub records: usize,
    pub class_count: usize,
    pub classes: Vec<ClassEntry>,
}

/// Partitions the records accepted by `filter` into isoclinism classes.
pub fn classify_census(records: &[BraceRecord], filter: Filter) -> Result<ClassTable, CensusError> {
    let chosen: Vec<&BraceRecord> = records
        .iter()
        .filter(|r| filter.accepts(&r.flags))
        .collect();
    let braces: Vec<SkewBrace> = chosen
        .par_iter()
        .map(|r| {
            r.brace()
                .map_err(|_| CensusError::HashMismatch(r.id.clone()))
        })
        .collect::<Result<_, _>>()?;
    let prepared: Vec<Prepared> = braces.par_iter().map(Prepared::new).collect();
    let ids: Vec<String> = chosen.iter().map(|r| r.id.clone()).collect();
    let classes = partition_prepared(&prepared, &ids);
    let order = records.first().map(|r| r.order);
    Ok(ClassTable {
        filter: filter.to_string(),
        order,
        records: chosen.len(),
        class_count: classes.len(),
        classes: classes
            .into_iter()
            .map(|c| ClassEntry {
                representative: ids[c.representative].clone(),
                members: c.members.iter().map(|&i| ids[i].clone()).collect(),
            })
            .collect(),
    })
}

/// Sets every record's `class_id` to the id of its class representative.
pub fn assign_class_ids(records: &mut [BraceRecord]) -> Result<(), CensusError> {
    let table = classify_census(records, Filter::All)?;
    for class in table.classes {
        for m in &class.members {
            if let Some(r) = records.iter_mut().find(|r| &r.id == m) {
                r.class_id = Some(class.representative.clone());
            }
        }
    }
    Ok(())
}

/// Writes one record per line, sorted by id.
pub fn save_db(path: &Path, records: &[BraceRecord]) -> Result<(), CensusError> {
    let mut sorted: Vec<&BraceRecord> = records.iter().collect();
    sorted.sort_by(|a, b| a.id.cmp(&b.id));
    let mut out = BufWriter::new(fs::File::create(path)?);
    for r in sorted {
        let line = serde_json::to_string(r).expect("records serialize");
        writeln!(out, "{line}")?;
    }
    out.flush()?;
    Ok(())
}

/// Reads and verifies a database written by [`save_db`].
pub fn load_db(path: &Path) -> Result<Vec<BraceRecord>, CensusError> {
    let reader = BufReader::new(fs::File::open(path)?);
    let mut records = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let parse_err = |message: String| CensusError::ParseError {
            line: i + 1,
            message,
        };
        let r: BraceRecord = serde_json::from_str(&line).map_err(|e| parse_err(e.to_string()))?;
        r.brace().map_err(|e| parse_err(e.to_string()))?;
        r.verify()?;
        records.push(r);
    }
    Ok(records)
}

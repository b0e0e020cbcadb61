//! Finite non-degenerate set-theoretic solutions of the Yang–Baxter
//! equation, `r(x, y) = (σ_x(y), τ_y(x))` on `X = {0..n-1}`.

mod enumerate;
mod permbrace;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::perm::{closure, Perm, PermError, PermGroup};

pub use enumerate::{
    enumerate_involutive, enumerate_involutive_with, SearchOrder, MAX_ENUMERATION_SIZE,
};
pub use permbrace::{
    are_permutation_isoclinic, classify_solutions, permutation_brace, SolutionClass,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum YbeError {
    #[error("expected {expected} permutations of degree {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("braid relation fails at ({0}, {1}, {2})")]
    BraidFails(usize, usize, usize),
    #[error("r is not a bijection of X × X")]
    NotBijective,
    #[error("the solution is not involutive")]
    NotInvolutive,
    #[error("the induced solution on classes is not well defined")]
    InducedNotWellDefined,
    #[error("only involutive solutions are supported here")]
    UnsupportedSolutionKind,
    #[error("internal check failed: {0}")]
    InternalAxiomFailure(String),
    #[error("enumeration supports sizes up to {max}, got {0}", max = MAX_ENUMERATION_SIZE)]
    TooLarge(usize),
    #[error("{0}")]
    Parse(String),
}

impl From<PermError> for YbeError {
    fn from(e: PermError) -> Self {
        YbeError::Parse(e.to_string())
    }
}

/// A validated solution.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Solution {
    sigma: Vec<Perm>,
    tau: Vec<Perm>,
    involutive: bool,
}

impl fmt::Debug for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Solution({self})")
    }
}

/// Lists every `σ_x` in 1-indexed cycle notation: `s1=(); s2=(1 2)`.
impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (x, s) in self.sigma.iter().enumerate() {
            if x > 0 {
                f.write_str("; ")?;
            }
            write!(f, "s{}={}", x + 1, s)?;
        }
        if !self.involutive {
            for (x, t) in self.tau.iter().enumerate() {
                write!(f, "; t{}={}", x + 1, t)?;
            }
        }
        Ok(())
    }
}

/// Wire form `{"n", "sigma", "tau"}`; `tau` may be omitted for
/// involutive solutions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionJson {
    pub n: usize,
    pub sigma: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<Vec<Vec<usize>>>,
}

fn check_family(n: usize, family: &[Perm]) -> Result<(), YbeError> {
    if family.len() != n || family.iter().any(|p| p.degree() != n) {
        return Err(YbeError::SizeMismatch {
            expected: n,
            got: family.len(),
        });
    }
    Ok(())
}

/// Checks bijectivity of `r` and the braid relation on all triples.
pub fn validate_solution(sigma: Vec<Perm>, tau: Vec<Perm>) -> Result<Solution, YbeError> {
    let n = sigma.len();
    check_family(n, &sigma)?;
    check_family(n, &tau)?;
    let r = |x: usize, y: usize| (sigma[x].apply(y), tau[y].apply(x));

    let mut hit = vec![false; n * n];
    for x in 0..n {
        for y in 0..n {
            let (u, v) = r(x, y);
            if std::mem::replace(&mut hit[u * n + v], true) {
                return Err(YbeError::NotBijective);
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            let (x1, y1) = r(x, y);
            for z in 0..n {
                // (r×id)(id×r)(r×id) against (id×r)(r×id)(id×r)
                let (y2, z2) = r(y1, z);
                let (x3, y3) = r(x1, y2);
                let (b1, c1) = r(y, z);
                let (a2, b2) = r(x, b1);
                let (b3, c3) = r(b2, c1);
                if (x3, y3, z2) != (a2, b3, c3) {
                    return Err(YbeError::BraidFails(x, y, z));
                }
            }
        }
    }
    let involutive = (0..n).all(|x| {
        (0..n).all(|y| {
            let (u, v) = r(x, y);
            r(u, v) == (x, y)
        })
    });
    Ok(Solution {
        sigma,
        tau,
        involutive,
    })
}

/// `τ_y(x) = σ⁻¹_{σ_x(y)}(x)`; fails unless the result is involutive.
pub fn from_sigma_involutive(sigma: Vec<Perm>) -> Result<Solution, YbeError> {
    let n = sigma.len();
    check_family(n, &sigma)?;
    let inv: Vec<Perm> = sigma.iter().map(Perm::inverse).collect();
    let tau = (0..n)
        .map(|y| {
            let images = (0..n).map(|x| inv[sigma[x].apply(y)].apply(x)).collect();
            Perm::from_images(images).map_err(|_| YbeError::NotBijective)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let s = validate_solution(sigma, tau)?;
    if !s.involutive {
        return Err(YbeError::NotInvolutive);
    }
    Ok(s)
}

impl Solution {
    /// `(x, y) ↦ (y, x)` on `n` points.
    pub fn flip(n: usize) -> Self {
        let id = vec![Perm::identity(n); n];
        Solution {
            sigma: id.clone(),
            tau: id,
            involutive: true,
        }
    }

    /// `r(x, y) = (s(y), s⁻¹(x))`.
    pub fn permutation_solution(s: &Perm) -> Result<Self, YbeError> {
        let n = s.degree();
        validate_solution(vec![s.clone(); n], vec![s.inverse(); n])
    }

    pub fn size(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self) -> &[Perm] {
        &self.sigma
    }

    pub fn tau(&self) -> &[Perm] {
        &self.tau
    }

    pub fn is_involutive(&self) -> bool {
        self.involutive
    }

    pub fn r(&self, x: usize, y: usize) -> (usize, usize) {
        (self.sigma[x].apply(y), self.tau[y].apply(x))
    }

    pub fn to_json(&self) -> SolutionJson {
        SolutionJson {
            n: self.size(),
            sigma: self.sigma.iter().map(Perm::images).collect(),
            tau: (!self.involutive).then(|| self.tau.iter().map(Perm::images).collect()),
        }
    }

    pub fn from_json(j: &SolutionJson) -> Result<Self, YbeError> {
        let perms = |rows: &[Vec<usize>]| -> Result<Vec<Perm>, YbeError> {
            rows.iter()
                .map(|r| Ok(Perm::from_images(r.clone())?))
                .collect()
        };
        let sigma = perms(&j.sigma)?;
        check_family(j.n, &sigma)?;
        match &j.tau {
            Some(tau) => validate_solution(sigma, perms(tau)?),
            None => from_sigma_involutive(sigma),
        }
    }

    /// Parses `s1=(3 4); s2=(1 3 2 4); ...` (1-indexed, missing `σ` are
    /// the identity) into an involutive solution. The size is taken from
    /// an optional `n=` entry, otherwise from the largest index or point
    /// mentioned. `flip` alone (with `n=`) gives the flip.
    pub fn parse_cycles(text: &str) -> Result<Self, YbeError> {
        let bad = |s: &str| YbeError::Parse(format!("cannot parse {s:?}"));
        let mut n = None;
        let mut entries: Vec<(usize, &str)> = Vec::new();
        let mut largest = 0;
        for part in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            if part == "flip" {
                continue;
            }
            let (key, value) = part.split_once('=').ok_or_else(|| bad(part))?;
            let (key, value) = (key.trim(), value.trim());
            if key == "n" {
                n = Some(value.parse::<usize>().map_err(|_| bad(part))?);
                continue;
            }
            let idx: usize = key
                .strip_prefix('s')
                .and_then(|k| k.parse().ok())
                .filter(|&k| k >= 1)
                .ok_or_else(|| bad(part))?;
            largest = largest.max(idx);
            for tok in value
                .split(|c: char| !c.is_ascii_digit())
                .filter(|t| !t.is_empty())
            {
                largest = largest.max(tok.parse::<usize>().map_err(|_| bad(part))?);
            }
            entries.push((idx - 1, value));
        }
        let n = n.unwrap_or(largest);
        if n == 0 {
            return Err(bad(text));
        }
        let mut sigma = vec![Perm::identity(n); n];
        for (x, value) in entries {
            if x >= n {
                return Err(bad(text));
            }
            sigma[x] = Perm::parse_cycles(n, value)?;
        }
        from_sigma_involutive(sigma)
    }

    /// `Ret(X, r)` and the map from `X` to its classes. Classes of
    /// `x ~ y ⟺ (σ_x, τ_x) = (σ_y, τ_y)` are labeled by smallest member.
    pub fn retraction(&self) -> Result<(Solution, Vec<usize>), YbeError> {
        let n = self.size();
        let mut class = vec![usize::MAX; n];
        let mut reps: Vec<usize> = Vec::new();
        for x in 0..n {
            if class[x] != usize::MAX {
                continue;
            }
            class[x] = reps.len();
            for y in x + 1..n {
                if class[y] == usize::MAX
                    && self.sigma[x] == self.sigma[y]
                    && self.tau[x] == self.tau[y]
                {
                    class[y] = reps.len();
                }
            }
            reps.push(x);
        }
        let k = reps.len();
        let induce = |family: &[Perm]| -> Result<Vec<Perm>, YbeError> {
            reps.iter()
                .map(|&x| {
                    let mut images = vec![usize::MAX; k];
                    for y in 0..n {
                        let img = class[family[x].apply(y)];
                        let slot = &mut images[class[y]];
                        if *slot == usize::MAX {
                            *slot = img;
                        } else if *slot != img {
                            return Err(YbeError::InducedNotWellDefined);
                        }
                    }
                    Perm::from_images(images).map_err(|_| YbeError::InducedNotWellDefined)
                })
                .collect()
        };
        let sigma = induce(&self.sigma)?;
        let tau = induce(&self.tau)?;
        let ret = validate_solution(sigma, tau).map_err(|_| YbeError::InducedNotWellDefined)?;
        Ok((ret, class))
    }

    /// `X, Ret(X), Ret²(X), …` until the size stops shrinking.
    pub fn retraction_tower(&self) -> RetractionTower {
        let mut levels = vec![self.clone()];
        let mut mp_level = None;
        loop {
            let last = levels.last().unwrap();
            let (next, _) = last.retraction().expect("retraction of a valid solution");
            let shrank = next.size() < last.size();
            let size = next.size();
            levels.push(next);
            if size == 1 {
                mp_level = Some(levels.len() - 1);
                break;
            }
            if !shrank {
                break;
            }
        }
        RetractionTower { levels, mp_level }
    }

    /// Least `m ≥ 1` with `|Retᵐ(X, r)| = 1`, or `None` if there is none.
    pub fn multipermutation_level(&self) -> Option<usize> {
        self.retraction_tower().mp_level
    }

    /// `𝒢(X, r) = ⟨σ_x, τ_x⟩`.
    pub fn permutation_group(&self) -> PermGroup {
        let gens: Vec<Perm> = self.sigma.iter().chain(&self.tau).cloned().collect();
        closure(self.size(), &gens)
    }

    /// `⟨σ_x⟩` only.
    pub fn sigma_group(&self) -> PermGroup {
        closure(self.size(), &self.sigma)
    }

    /// Transitivity of `𝒢(X, r)` on `X`.
    pub fn is_indecomposable(&self) -> bool {
        self.permutation_group().is_transitive()
    }

    /// The solution with points renamed by `p`: `σ'_{p(x)} = p σ_x p⁻¹`.
    pub fn relabel(&self, p: &Perm) -> Solution {
        let n = self.size();
        let mut sigma = vec![Perm::identity(n); n];
        let mut tau = vec![Perm::identity(n); n];
        for x in 0..n {
            sigma[p.apply(x)] = p.conjugate(&self.sigma[x]);
            tau[p.apply(x)] = p.conjugate(&self.tau[x]);
        }
        Solution {
            sigma,
            tau,
            involutive: self.involutive,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RetractionTower {
    pub levels: Vec<Solution>,
    pub mp_level: Option<usize>,
}

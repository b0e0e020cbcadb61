//! Involutive solutions of size `n ≤ 5` up to relabeling.
//!
//! An involutive solution is determined by `π_x = σ_x⁻¹`, and a family
//! `π` comes from one exactly when `π_{π_x(y)} π_x = π_{π_y(x)} π_y` for
//! all `x, y` (the cycle set identity). The search assigns the `π_x` one
//! at a time; with [`SearchOrder::Propagating`] the identity is also used
//! to force `π_{π_x(y)}` once `π_x`, `π_y` and `π_{π_y(x)}` are known.
//! Every leaf is validated as a solution before canonicalization.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{from_sigma_involutive, Solution, YbeError};
use crate::perm::Perm;

pub const MAX_ENUMERATION_SIZE: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchOrder {
    /// Assign `π_0, π_1, …`, forcing values through the identity.
    Propagating,
    /// Assign `π_{n-1}, …, π_0` and only check the identity.
    ReverseChecking,
}

pub fn enumerate_involutive(n: usize) -> Result<Vec<Solution>, YbeError> {
    enumerate_involutive_with(n, SearchOrder::Propagating)
}

/// One solution per relabeling class, each in canonical form, sorted.
pub fn enumerate_involutive_with(n: usize, order: SearchOrder) -> Result<Vec<Solution>, YbeError> {
    if n > MAX_ENUMERATION_SIZE {
        return Err(YbeError::TooLarge(n));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let all = all_perms(n);
    let relabelings = all.clone();
    let vars: Vec<usize> = match order {
        SearchOrder::Propagating => (0..n).collect(),
        SearchOrder::ReverseChecking => (0..n).rev().collect(),
    };
    let first = vars[0];
    let found: Vec<BTreeMap<Vec<u8>, Solution>> = all
        .par_iter()
        .map(|p| {
            let mut st = Search {
                n,
                all: &all,
                relabelings: &relabelings,
                vars: &vars,
                propagate: order == SearchOrder::Propagating,
                out: BTreeMap::new(),
            };
            let mut pi: Vec<Option<Perm>> = vec![None; n];
            pi[first] = Some(p.clone());
            st.descend(pi);
            st.out
        })
        .collect();
    let mut merged = BTreeMap::new();
    for part in found {
        merged.extend(part);
    }
    Ok(merged.into_values().collect())
}

fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    permute(&mut current, 0, &mut out);
    out.sort_unstable();
    out
}

fn permute(v: &mut Vec<usize>, k: usize, out: &mut Vec<Perm>) {
    if k == v.len() {
        out.push(Perm::from_images(v.clone()).expect("permutation"));
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, out);
        v.swap(k, i);
    }
}

/// Encoding of the `σ` family; the canonical form is the least encoding
/// over all relabelings.
fn encode(sigma: &[Perm]) -> Vec<u8> {
    sigma
        .iter()
        .flat_map(|s| s.as_bytes().iter().copied())
        .collect()
}

pub(crate) fn canonical_form(s: &Solution, relabelings: &[Perm]) -> (Vec<u8>, Solution) {
    relabelings
        .iter()
        .map(|p| {
            let r = s.relabel(p);
            (encode(r.sigma()), r)
        })
        .min_by(|a, b| a.0.cmp(&b.0))
        .expect("at least the identity relabeling")
}

struct Search<'a> {
    n: usize,
    all: &'a [Perm],
    relabelings: &'a [Perm],
    vars: &'a [usize],
    propagate: bool,
    out: BTreeMap<Vec<u8>, Solution>,
}

impl Search<'_> {
    fn descend(&mut self, mut pi: Vec<Option<Perm>>) {
        if !self.settle(&mut pi) {
            return;
        }
        let Some(&x) = self.vars.iter().find(|&&v| pi[v].is_none()) else {
            self.leaf(&pi);
            return;
        };
        for p in self.all {
            let mut next = pi.clone();
            next[x] = Some(p.clone());
            self.descend(next);
        }
    }

    /// Checks the identity wherever all four maps are known; when
    /// propagating, fills in forced maps until nothing changes.
    fn settle(&self, pi: &mut [Option<Perm>]) -> bool {
        let n = self.n;
        loop {
            let mut changed = false;
            for x in 0..n {
                for y in 0..n {
                    let (Some(px), Some(py)) = (&pi[x], &pi[y]) else {
                        continue;
                    };
                    let (a, b) = (px.apply(y), py.apply(x));
                    match (&pi[a], &pi[b]) {
                        (Some(pa), Some(pb)) => {
                            if pa.compose(px) != pb.compose(py) {
                                return false;
                            }
                        }
                        (None, Some(pb)) if self.propagate => {
                            pi[a] = Some(pb.compose(py).compose(&px.inverse()));
                            changed = true;
                        }
                        (Some(pa), None) if self.propagate => {
                            pi[b] = Some(pa.compose(px).compose(&py.inverse()));
                            changed = true;
                        }
                        _ => {}
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn leaf(&mut self, pi: &[Option<Perm>]) {
        let sigma: Vec<Perm> = pi
            .iter()
            .map(|p| p.as_ref().expect("assigned").inverse())
            .collect();
        if let Ok(s) = from_sigma_involutive(sigma) {
            let (key, canon) = canonical_form(&s, self.relabelings);
            self.out.entry(key).or_insert(canon);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_involutive(1).unwrap().len(), 1);
        assert_eq!(enumerate_involutive(2).unwrap().len(), 2);
        assert_eq!(enumerate_involutive(3).unwrap().len(), 5);
        assert!(matches!(
            enumerate_involutive(6),
            Err(YbeError::TooLarge(6))
        ));
    }

    /// All four `σ` assignments on two points, filtered and fused.
    #[test]
    fn size_two_brute_force() {
        let perms = all_perms(2);
        let mut keys = std::collections::BTreeSet::new();
        for a in &perms {
            for b in &perms {
                if let Ok(s) = from_sigma_involutive(vec![a.clone(), b.clone()]) {
                    keys.insert(canonical_form(&s, &perms).0);
                }
            }
        }
        assert_eq!(keys.len(), 2);
    }
}

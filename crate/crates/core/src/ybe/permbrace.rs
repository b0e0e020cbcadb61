//! The skew brace on the permutation group of an involutive solution.
//!
//! `𝒢 = ⟨σ_x⟩` is the image of the structure group `G(X, r)`, whose
//! additive group is free abelian on `X`, under `e_x ↦ σ_x`. Every element
//! is reached by words `σ_{x₁}…σ_{x_k}`; tracking the generator added at
//! each step gives a coordinate vector `v(g) ∈ ℤˣ` with `v(w∘σ_x) = v(w) +
//! e_{w(x)}`. Addition then folds `v(h)` into `g` one unit at a time:
//! `u + e_y = u∘σ_{u⁻¹(y)}` and `u - e_y = u∘σ_x⁻¹` where `σ_x⁻¹(x) = u⁻¹(y)`.

use std::collections::HashMap;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Solution, YbeError};
use crate::brace::SkewBrace;
use crate::group::CayleyGroup;
use crate::isoclinism::{are_isoclinic, partition_classes, Isoclinism};
use crate::perm::Perm;

/// Pairs whose sums are recomputed from a second generating word.
const WORD_CHECKS: usize = 100;

struct Builder<'a> {
    s: &'a Solution,
    /// `x` with `σ_x⁻¹(x) = z`, indexed by `z`.
    diagonal_inv: Vec<usize>,
    sigma_inv: Vec<Perm>,
}

impl Builder<'_> {
    fn add_vector(&self, g: &Perm, v: &[i64]) -> Perm {
        let mut u = g.clone();
        for (y, &c) in v.iter().enumerate() {
            for _ in 0..c.unsigned_abs() {
                let pre = u.inverse().apply(y);
                u = if c > 0 {
                    u.compose(&self.s.sigma[pre])
                } else {
                    u.compose(&self.sigma_inv[self.diagonal_inv[pre]])
                };
            }
        }
        u
    }
}

/// The permutation skew brace of an involutive solution. Element `i` of
/// the carrier is the `i`-th element of `⟨σ_x⟩` in lexicographic order
/// of image arrays, so `0` is the identity.
pub fn permutation_brace(s: &Solution) -> Result<SkewBrace, YbeError> {
    if !s.is_involutive() {
        return Err(YbeError::UnsupportedSolutionKind);
    }
    let n = s.size();
    let sigma_inv: Vec<Perm> = s.sigma.iter().map(Perm::inverse).collect();
    let mut diagonal_inv = vec![usize::MAX; n];
    for x in 0..n {
        diagonal_inv[sigma_inv[x].apply(x)] = x;
    }
    if diagonal_inv.contains(&usize::MAX) {
        return Err(YbeError::InternalAxiomFailure(
            "x ↦ σ_x⁻¹(x) is not bijective".into(),
        ));
    }
    let b = Builder {
        s,
        diagonal_inv,
        sigma_inv,
    };

    // breadth-first over words, keeping up to two coordinate vectors
    let id = Perm::identity(n);
    let mut words: HashMap<Perm, Vec<Vec<i64>>> = HashMap::new();
    words.insert(id.clone(), vec![vec![0; n]]);
    let mut queue = vec![id];
    let mut i = 0;
    while i < queue.len() {
        let w = queue[i].clone();
        let v = words[&w][0].clone();
        for x in 0..n {
            let next = w.compose(&s.sigma[x]);
            let mut nv = v.clone();
            nv[w.apply(x)] += 1;
            match words.get_mut(&next) {
                None => {
                    words.insert(next.clone(), vec![nv]);
                    queue.push(next);
                }
                Some(list) => {
                    if list.len() < 2 && !list.contains(&nv) {
                        list.push(nv);
                    }
                }
            }
        }
        i += 1;
    }

    let mut elements = queue;
    elements.sort_unstable();
    let m = elements.len();
    let index: HashMap<&Perm, usize> = elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let idx = |p: &Perm| -> Result<usize, YbeError> {
        index
            .get(p)
            .copied()
            .ok_or_else(|| YbeError::InternalAxiomFailure("sum left the group".into()))
    };

    let mut circ = Vec::with_capacity(m * m);
    let mut add = Vec::with_capacity(m * m);
    for g in &elements {
        for h in &elements {
            circ.push(idx(&g.compose(h))?);
            add.push(idx(&b.add_vector(g, &words[h][0]))?);
        }
    }

    // a second word for h must give the same sums
    let with_two: Vec<usize> = (0..m).filter(|&j| words[&elements[j]].len() > 1).collect();
    if !with_two.is_empty() {
        let total = m * with_two.len();
        let mut rng = ChaCha8Rng::seed_from_u64(m as u64);
        for t in sample(&mut rng, total, total.min(WORD_CHECKS)) {
            let (gi, hj) = (t / with_two.len(), with_two[t % with_two.len()]);
            let h = &elements[hj];
            let other = idx(&b.add_vector(&elements[gi], &words[h][1]))?;
            if other != add[gi * m + hj] {
                return Err(YbeError::InternalAxiomFailure(format!(
                    "sum {gi} + {hj} depends on the generating word"
                )));
            }
        }
    }

    let to_group = |table: Vec<usize>, what: &str| {
        let rows: Vec<Vec<usize>> = table.chunks(m).map(<[usize]>::to_vec).collect();
        crate::group::validate_group(&rows)
            .map_err(|e| YbeError::InternalAxiomFailure(format!("{what} table: {e}")))
    };
    let add: CayleyGroup = to_group(add, "additive")?;
    let circ: CayleyGroup = to_group(circ, "multiplicative")?;
    let brace = SkewBrace::from_groups(add, circ)
        .map_err(|e| YbeError::InternalAxiomFailure(e.to_string()))?;

    for x in 0..n {
        let sx = idx(&s.sigma[x])?;
        for y in 0..n {
            let lhs = brace.lambda(sx, idx(&s.sigma[y])?);
            if lhs != idx(&s.sigma[s.sigma[x].apply(y)])? {
                return Err(YbeError::InternalAxiomFailure(format!(
                    "λ_σ{x}(σ{y}) != σ_σ{x}({y})"
                )));
            }
        }
    }
    Ok(brace)
}

/// Isoclinism of the permutation braces.
pub fn are_permutation_isoclinic(
    a: &Solution,
    b: &Solution,
) -> Result<Option<Isoclinism>, YbeError> {
    Ok(are_isoclinic(
        &permutation_brace(a)?,
        &permutation_brace(b)?,
    ))
}

/// A permutation-isoclinism class; indices refer to the input list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionClass {
    pub representative: usize,
    pub members: Vec<usize>,
}

/// Partitions solutions by isoclinism of their permutation braces. The
/// representative of a class is its first member in input order.
pub fn classify_solutions(list: &[Solution]) -> Result<Vec<SolutionClass>, YbeError> {
    let braces = list
        .iter()
        .map(permutation_brace)
        .collect::<Result<Vec<_>, _>>()?;
    let mut classes: Vec<SolutionClass> = partition_classes(&braces)
        .into_iter()
        .map(|c| {
            let mut members = c.members;
            members.sort_unstable();
            SolutionClass {
                representative: members[0],
                members,
            }
        })
        .collect();
    classes.sort_by_key(|c| c.representative);
    Ok(classes)
}

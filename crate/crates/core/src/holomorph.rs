//! Holomorphs and the search for their regular subgroups.
//!
//! Skew braces with additive group `A` correspond to regular subgroups of
//! `Hol(A)`, and isomorphic braces to subgroups conjugate under `Aut(A)`,
//! the stabilizer of `0` in `Hol(A)`.

use std::collections::{BTreeSet, HashMap, HashSet};

use rayon::prelude::*;

use crate::group::{automorphism_group, CayleyGroup};
use crate::perm::{closure, small_generating_set, Perm, PermGroup};

/// `Hol(G)`: all maps `x ↦ g·f(x)` with `f ∈ Aut(G)`.
pub fn holomorph(g: &CayleyGroup) -> PermGroup {
    let aut = automorphism_group(g);
    holomorph_with(g, &aut)
}

pub(crate) fn holomorph_with(g: &CayleyGroup, aut: &PermGroup) -> PermGroup {
    let n = g.order();
    let mut elements = Vec::with_capacity(n * aut.order());
    for a in 0..n {
        for f in aut.elements() {
            let images = (0..n).map(|x| g.op(a, f.apply(x))).collect();
            elements.push(Perm::from_images(images).expect("bijection"));
        }
    }
    let mut gens: Vec<Perm> = g
        .generating_set()
        .into_iter()
        .map(|a| g.left_translation(a))
        .collect();
    gens.extend(aut.generators().iter().cloned());
    PermGroup::from_closed_set(n, gens, elements)
}

/// Which regular subgroups count as the same.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fusion {
    /// Every regular subgroup separately.
    None,
    /// One representative per conjugacy class under the stabilizer of `0`.
    PointStabilizer,
}

/// Regular subgroups of `h` (a group acting on `n` points).
///
/// The search fixes, point by point, the unique subgroup element sending
/// `0` to the next uncovered point and closes up after every choice; a
/// partial closure with a fixed-point element, or with two elements that
/// agree on `0`, is abandoned. Results are sorted by element list; with
/// [`Fusion::PointStabilizer`] each class is represented by its least
/// member.
pub fn regular_subgroups(h: &PermGroup, n: usize, fusion: Fusion) -> Vec<PermGroup> {
    assert_eq!(h.degree(), n, "group must act on n points");
    if n == 1 {
        return vec![closure(1, &[])];
    }
    let stab0 = h.stabilizer(0);
    let cand = semiregular_candidates(h, n);

    // Symmetry breaking on the element sending 0 to 1: only one
    // candidate per orbit of Stab(0) ∩ Stab(1) acting by conjugation.
    let first: Vec<Perm> = match fusion {
        Fusion::None => cand[1].clone(),
        Fusion::PointStabilizer => {
            let stab01: Vec<Perm> = stab0.iter().filter(|s| s.apply(1) == 1).cloned().collect();
            let gens = small_generating_set(n, &sorted(stab01));
            conjugation_orbit_reps(&cand[1], &gens)
        }
    };

    let found: Vec<Vec<Perm>> = first
        .par_iter()
        .map(|c| {
            let mut search = Search {
                n,
                cand: &cand,
                visited: HashSet::new(),
                out: BTreeSet::new(),
            };
            if let Some(node) = Node::root(n).extend(c) {
                search.run(node);
            }
            search.out.into_iter().collect::<Vec<_>>()
        })
        .flatten()
        .collect();
    let found: BTreeSet<Vec<Perm>> = found.into_iter().collect();

    let keys: Vec<Vec<Perm>> = match fusion {
        Fusion::None => found.into_iter().collect(),
        Fusion::PointStabilizer => {
            let gens = small_generating_set(n, &sorted(stab0));
            fuse_by_conjugation(found, &gens)
        }
    };
    keys.into_iter()
        .map(|elements| {
            let gens = small_generating_set(n, &elements);
            PermGroup::from_closed_set(n, gens, elements)
        })
        .collect()
}

fn sorted(mut v: Vec<Perm>) -> Vec<Perm> {
    v.sort_unstable();
    v
}

/// For each point `a`, the elements sending `0` to `a` whose cyclic
/// group is semiregular with order dividing `n`.
fn semiregular_candidates(h: &PermGroup, n: usize) -> Vec<Vec<Perm>> {
    let mut cand = vec![Vec::new(); n];
    for g in h.elements() {
        let a = g.apply(0);
        if a == 0 {
            continue;
        }
        let mut x = g.clone();
        let mut order = 1;
        let ok = loop {
            if x.is_identity() {
                break n.is_multiple_of(order);
            }
            if x.has_fixed_point() || order >= n {
                break false;
            }
            x = x.compose(g);
            order += 1;
        };
        if ok {
            cand[a].push(g.clone());
        }
    }
    cand
}

fn conjugation_orbit_reps(set: &[Perm], gens: &[Perm]) -> Vec<Perm> {
    let index: HashMap<&Perm, usize> = set.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut seen = vec![false; set.len()];
    let mut reps = Vec::new();
    for start in 0..set.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        reps.push(set[start].clone());
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for s in gens {
                let j = index[&s.conjugate(&set[i])];
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    reps
}

/// Collapses subgroups (given as sorted element lists) into orbits under
/// conjugation by `gens`; returns the least member of each orbit, sorted.
pub(crate) fn fuse_by_conjugation(found: BTreeSet<Vec<Perm>>, gens: &[Perm]) -> Vec<Vec<Perm>> {
    let mut seen: HashSet<Vec<Perm>> = HashSet::new();
    let mut reps = Vec::new();
    for key in found {
        if seen.contains(&key) {
            continue;
        }
        let mut orbit = vec![key.clone()];
        seen.insert(key);
        let mut k = 0;
        while k < orbit.len() {
            for s in gens {
                let mut img: Vec<Perm> = orbit[k].iter().map(|p| s.conjugate(p)).collect();
                img.sort_unstable();
                if seen.insert(img.clone()) {
                    orbit.push(img);
                }
            }
            k += 1;
        }
        reps.push(orbit.into_iter().min().expect("nonempty"));
    }
    reps.sort();
    reps
}

struct Search<'a> {
    n: usize,
    cand: &'a [Vec<Perm>],
    visited: HashSet<Vec<Perm>>,
    out: BTreeSet<Vec<Perm>>,
}

impl Search<'_> {
    fn run(&mut self, node: Node) {
        if node.elements.len() == self.n {
            self.out.insert(sorted(node.elements));
            return;
        }
        let key = sorted(node.elements.clone());
        if !self.visited.insert(key) {
            return;
        }
        let a = (0..self.n)
            .find(|&p| node.slot[p] == NONE)
            .expect("uncovered point");
        for h in &self.cand[a] {
            if let Some(next) = node.extend(h) {
                self.run(next);
            }
        }
    }
}

const NONE: u32 = u32::MAX;

/// A semiregular subgroup under construction; `slot[p]` indexes the
/// element sending `0` to `p`.
#[derive(Clone)]
struct Node {
    elements: Vec<Perm>,
    gens: Vec<Perm>,
    slot: Vec<u32>,
}

impl Node {
    fn root(n: usize) -> Node {
        let mut slot = vec![NONE; n];
        slot[0] = 0;
        Node {
            elements: vec![Perm::identity(n)],
            gens: Vec::new(),
            slot,
        }
    }

    fn extend(&self, h: &Perm) -> Option<Node> {
        let mut next = self.clone();
        next.gens.push(h.clone());
        let mut k = 0;
        while k < next.elements.len() {
            for gi in 0..next.gens.len() {
                let y = next.elements[k].compose(&next.gens[gi]);
                let p = y.apply(0);
                match next.slot[p] {
                    NONE => {
                        if y.has_fixed_point() {
                            return None;
                        }
                        next.slot[p] = next.elements.len() as u32;
                        next.elements.push(y);
                    }
                    s => {
                        if next.elements[s as usize] != y {
                            return None;
                        }
                    }
                }
            }
            k += 1;
        }
        Some(next)
    }
}

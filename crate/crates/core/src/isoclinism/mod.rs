//! Isoclinism of skew braces.
//!
//! Two braces are isoclinic when there are brace isomorphisms
//! `ξ: A/Ann(A) → B/Ann(B)` and `θ: A′ → B′` such that `θ` carries
//! `[a,b]₊` and `a * b` to the corresponding values on lifts of `ξ(ā)`,
//! `ξ(b̄)`. Since these values generate `A′` additively, `θ` is determined
//! by `ξ`; the search therefore runs over `ξ` only.

mod orbits;

use std::collections::BTreeMap;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::brace::{for_each_brace_isomorphism, BraceError, BraceSubset, SkewBrace};
use crate::group::CayleyGroup;

pub use orbits::{
    action_group, h_orbit_stats, two_sided_class_equation, ActionGroup, ClassEquation, HSelector,
    OrbitError,
};

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IsoclinismError {
    #[error("{map}({a}, {b}) depends on the choice of representatives")]
    WellDefinednessViolation {
        map: &'static str,
        a: usize,
        b: usize,
    },
    #[error("the subset does not contain the annihilator")]
    AnnNotContained,
    #[error(transparent)]
    Brace(#[from] BraceError),
}

/// The maps `φ₊(ā,b̄) = [a,b]₊`, `φ∗(ā,b̄) = a * b` and `φ∘(ā,b̄) = [a,b]∘`
/// from `(A/Ann A)²` to `A′`, tabulated over quotient labels.
#[derive(Debug, Clone)]
pub struct PhiMaps {
    pub quotient: SkewBrace,
    /// `A → A/Ann(A)`.
    pub projection: Vec<usize>,
    /// Smallest member of each annihilator coset.
    pub lifts: Vec<usize>,
    /// `A′` with its sorted elements relabeled `0..m`.
    pub commutator: SkewBrace,
    /// Commutator label to element of `A`.
    pub embedding: Vec<usize>,
    comm_index: Vec<usize>,
    plus: Vec<usize>,
    star: Vec<usize>,
    circ: Vec<usize>,
}

impl PhiMaps {
    pub fn quotient_order(&self) -> usize {
        self.quotient.order()
    }

    /// The commutator label of `a ∈ A′`.
    pub fn commutator_label(&self, a: usize) -> Option<usize> {
        Some(self.comm_index[a]).filter(|&i| i != NONE)
    }

    fn at(&self, table: &[usize], x: usize, y: usize) -> usize {
        table[x * self.quotient_order() + y]
    }

    /// `φ₊` as a commutator label.
    pub fn plus_label(&self, x: usize, y: usize) -> usize {
        self.at(&self.plus, x, y)
    }

    pub fn star_label(&self, x: usize, y: usize) -> usize {
        self.at(&self.star, x, y)
    }

    pub fn circ_label(&self, x: usize, y: usize) -> usize {
        self.at(&self.circ, x, y)
    }

    /// `φ₊` as an element of `A`.
    pub fn plus(&self, x: usize, y: usize) -> usize {
        self.embedding[self.plus_label(x, y)]
    }

    pub fn star(&self, x: usize, y: usize) -> usize {
        self.embedding[self.star_label(x, y)]
    }

    pub fn circ(&self, x: usize, y: usize) -> usize {
        self.embedding[self.circ_label(x, y)]
    }
}

/// Computes the three φ tables from the least representatives and checks
/// that every other choice of representatives gives the same values.
pub fn phi_maps(a: &SkewBrace) -> Result<PhiMaps, IsoclinismError> {
    let n = a.order();
    let (quotient, projection) = a.quotient(&a.annihilator())?;
    let k = quotient.order();
    let mut lifts = vec![NONE; k];
    for x in (0..n).rev() {
        lifts[projection[x]] = x;
    }
    let comm = a.commutator_ideal()?;
    let (commutator, embedding) = a.subbrace_table(&comm)?;
    let mut comm_index = vec![NONE; n];
    for (i, &x) in embedding.iter().enumerate() {
        comm_index[x] = i;
    }

    let maps: [(&'static str, fn(&SkewBrace, usize, usize) -> usize); 3] = [
        ("φ₊", SkewBrace::bracket_add),
        ("φ∗", SkewBrace::star),
        ("φ∘", SkewBrace::bracket_circ),
    ];
    let mut tables: Vec<Vec<usize>> = Vec::with_capacity(3);
    for (name, f) in maps {
        let mut t = vec![NONE; k * k];
        for x in 0..k {
            for y in 0..k {
                let v = comm_index[f(a, lifts[x], lifts[y])];
                if v == NONE {
                    return Err(IsoclinismError::WellDefinednessViolation {
                        map: name,
                        a: lifts[x],
                        b: lifts[y],
                    });
                }
                t[x * k + y] = v;
            }
        }
        for u in 0..n {
            for v in 0..n {
                if comm_index[f(a, u, v)] != t[projection[u] * k + projection[v]] {
                    return Err(IsoclinismError::WellDefinednessViolation {
                        map: name,
                        a: u,
                        b: v,
                    });
                }
            }
        }
        tables.push(t);
    }
    let circ = tables.pop().unwrap();
    let star = tables.pop().unwrap();
    let plus = tables.pop().unwrap();
    Ok(PhiMaps {
        quotient,
        projection,
        lifts,
        commutator,
        embedding,
        comm_index,
        plus,
        star,
        circ,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct InvariantFlags {
    pub is_trivial: bool,
    pub is_two_sided: bool,
    pub is_right_nilpotent: bool,
    pub abelian_type: bool,
    pub nilpotent_type: bool,
}

/// Element-order multisets of the additive and multiplicative groups,
/// as sorted `(order, count)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GroupProfiles {
    pub add: Vec<(usize, usize)>,
    pub circ: Vec<(usize, usize)>,
}

impl GroupProfiles {
    fn of(b: &SkewBrace) -> Self {
        GroupProfiles {
            add: b.additive_group().order_profile(),
            circ: b.multiplicative_group().order_profile(),
        }
    }
}

/// Isoclinism invariants. Orbit profiles list `(orbit size c, m_c/|A|)`
/// with `m_c` the number of orbits of size `c`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Fingerprint {
    pub ord_quotient: usize,
    pub ord_commutator: usize,
    pub flags: InvariantFlags,
    pub quotient_group_profiles: GroupProfiles,
    pub commutator_group_profiles: GroupProfiles,
    pub lambda_orbit_profile: Vec<(usize, Ratio<u64>)>,
    pub rho_orbit_profile: Vec<(usize, Ratio<u64>)>,
}

impl Fingerprint {
    /// Name of the first field in which the fingerprints differ.
    pub fn first_difference(&self, other: &Fingerprint) -> Option<&'static str> {
        let checks = [
            ("ord_quotient", self.ord_quotient == other.ord_quotient),
            (
                "ord_commutator",
                self.ord_commutator == other.ord_commutator,
            ),
            ("flags", self.flags == other.flags),
            (
                "quotient_group_profiles",
                self.quotient_group_profiles == other.quotient_group_profiles,
            ),
            (
                "commutator_group_profiles",
                self.commutator_group_profiles == other.commutator_group_profiles,
            ),
            (
                "lambda_orbit_profile",
                self.lambda_orbit_profile == other.lambda_orbit_profile,
            ),
            (
                "rho_orbit_profile",
                self.rho_orbit_profile == other.rho_orbit_profile,
            ),
        ];
        checks
            .into_iter()
            .find(|&(_, same)| !same)
            .map(|(name, _)| name)
    }
}

/// Orbit-size multiset `{c: m_c}` of a family of maps acting on `A`.
pub(crate) fn orbit_counts(per_element: &[usize]) -> BTreeMap<usize, usize> {
    let mut counts = BTreeMap::new();
    for &c in per_element {
        *counts.entry(c).or_insert(0) += 1;
    }
    for (c, m) in counts.iter_mut() {
        *m /= *c;
    }
    counts
}

fn normalized(counts: BTreeMap<usize, usize>, n: usize) -> Vec<(usize, Ratio<u64>)> {
    counts
        .into_iter()
        .map(|(c, m)| (c, Ratio::new(m as u64, n as u64)))
        .collect()
}

fn fingerprint_with(a: &SkewBrace, phi: &PhiMaps) -> Fingerprint {
    let n = a.order();
    let lam = crate::brace::orbit_sizes(n, |x, y| a.lambda(x, y));
    let rho = crate::brace::orbit_sizes(n, |x, y| a.rho(x, y));
    Fingerprint {
        ord_quotient: phi.quotient.order(),
        ord_commutator: phi.commutator.order(),
        flags: InvariantFlags {
            is_trivial: a.is_trivial(),
            is_two_sided: a.is_two_sided(),
            is_right_nilpotent: a.is_right_nilpotent(),
            abelian_type: a.is_abelian_type(),
            nilpotent_type: a.is_nilpotent_type(),
        },
        quotient_group_profiles: GroupProfiles::of(&phi.quotient),
        commutator_group_profiles: GroupProfiles::of(&phi.commutator),
        lambda_orbit_profile: normalized(orbit_counts(&lam), n),
        rho_orbit_profile: normalized(orbit_counts(&rho), n),
    }
}

pub fn fingerprint(a: &SkewBrace) -> Fingerprint {
    let phi = phi_maps(a).expect("φ maps of a valid brace are well defined");
    fingerprint_with(a, &phi)
}

/// A witness: image arrays of `ξ` over quotient labels and of `θ` over
/// commutator labels (see [`PhiMaps`]).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Isoclinism {
    pub xi: Vec<usize>,
    pub theta: Vec<usize>,
}

fn invert(f: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; f.len()];
    for (i, &x) in f.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

impl Isoclinism {
    pub fn identity(quotient_order: usize, commutator_order: usize) -> Self {
        Isoclinism {
            xi: (0..quotient_order).collect(),
            theta: (0..commutator_order).collect(),
        }
    }

    /// The witness for `B ~ A` from one for `A ~ B`.
    pub fn inverse(&self) -> Self {
        Isoclinism {
            xi: invert(&self.xi),
            theta: invert(&self.theta),
        }
    }

    /// `self` for `A ~ B` followed by `next` for `B ~ C`.
    pub fn then(&self, next: &Isoclinism) -> Self {
        Isoclinism {
            xi: self.xi.iter().map(|&x| next.xi[x]).collect(),
            theta: self.theta.iter().map(|&x| next.theta[x]).collect(),
        }
    }
}

/// A brace with its φ tables and fingerprint, computed once for repeated
/// isoclinism tests.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub phi: PhiMaps,
    pub fingerprint: Fingerprint,
}

impl Prepared {
    pub fn new(a: &SkewBrace) -> Self {
        let phi = phi_maps(a).expect("φ maps of a valid brace are well defined");
        let fingerprint = fingerprint_with(a, &phi);
        Prepared { phi, fingerprint }
    }
}

pub fn are_isoclinic(a: &SkewBrace, b: &SkewBrace) -> Option<Isoclinism> {
    find_isoclinism(&Prepared::new(a), &Prepared::new(b))
}

/// Isoclinism of the groups `g` and `h`, i.e. of their trivial braces.
pub fn groups_isoclinic(g: &CayleyGroup, h: &CayleyGroup) -> Option<Isoclinism> {
    are_isoclinic(&SkewBrace::trivial(g), &SkewBrace::trivial(h))
}

pub fn find_isoclinism(pa: &Prepared, pb: &Prepared) -> Option<Isoclinism> {
    if pa.fingerprint != pb.fingerprint {
        return None;
    }
    let mut found = None;
    for_each_brace_isomorphism(
        &pa.phi.quotient,
        &pb.phi.quotient,
        &mut |xi| match forced_theta(pa, pb, xi) {
            Some(theta) => {
                found = Some(Isoclinism {
                    xi: xi.to_vec(),
                    theta,
                });
                false
            }
            None => true,
        },
    );
    found
}

/// The unique `θ` compatible with `ξ`, if it is a brace isomorphism.
fn forced_theta(pa: &Prepared, pb: &Prepared, xi: &[usize]) -> Option<Vec<usize>> {
    let (fa, fb) = (&pa.phi, &pb.phi);
    let (ca, cb) = (&fa.commutator, &fb.commutator);
    let k = fa.quotient_order();
    let m = ca.order();

    let mut gen_img = vec![NONE; m];
    for x in 0..k {
        for y in 0..k {
            let pairs = [
                (fa.plus_label(x, y), fb.plus_label(xi[x], xi[y])),
                (fa.star_label(x, y), fb.star_label(xi[x], xi[y])),
            ];
            for (g, h) in pairs {
                if gen_img[g] == NONE {
                    gen_img[g] = h;
                } else if gen_img[g] != h {
                    return None;
                }
            }
        }
    }
    let gens: Vec<usize> = (1..m).filter(|&g| gen_img[g] != NONE).collect();

    let mut theta = vec![NONE; m];
    let mut used = vec![false; m];
    theta[0] = 0;
    used[0] = true;
    let mut queue = vec![0];
    let mut i = 0;
    while i < queue.len() {
        let u = queue[i];
        for &g in &gens {
            let v = ca.add(u, g);
            let w = cb.add(theta[u], gen_img[g]);
            if theta[v] == NONE {
                if used[w] {
                    return None;
                }
                theta[v] = w;
                used[w] = true;
                queue.push(v);
            } else if theta[v] != w {
                return None;
            }
        }
        i += 1;
    }
    assert_eq!(
        queue.len(),
        m,
        "brackets and star products generate the commutator"
    );

    let circ_gens = ca.multiplicative_group().generating_set();
    let hom = (0..m).all(|u| {
        circ_gens
            .iter()
            .all(|&g| theta[ca.circ(u, g)] == cb.circ(theta[u], theta[g]))
    });
    hom.then_some(theta)
}

/// Why a proposed witness is rejected.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WitnessFailure {
    #[error("ξ is not a bijection between the annihilator quotients")]
    XiShape,
    #[error("ξ is not a skew brace isomorphism")]
    XiNotIsomorphism,
    #[error("θ is not a bijection between the commutators")]
    ThetaShape,
    #[error("θ is not a skew brace isomorphism")]
    ThetaNotIsomorphism,
    #[error("the {map} square fails at ({x}, {y})")]
    SquareFails {
        map: &'static str,
        x: usize,
        y: usize,
    },
}

fn is_bijection(f: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    f.len() == n
        && f.iter()
            .all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
}

fn is_brace_iso(f: &[usize], a: &SkewBrace, b: &SkewBrace) -> bool {
    let n = a.order();
    (0..n).all(|x| {
        (0..n).all(|y| f[a.add(x, y)] == b.add(f[x], f[y]) && f[a.circ(x, y)] == b.circ(f[x], f[y]))
    })
}

/// Exhaustive check of a witness, including the `φ∘` square.
pub fn verify_isoclinism(
    a: &SkewBrace,
    b: &SkewBrace,
    w: &Isoclinism,
) -> Result<(), WitnessFailure> {
    let fa = phi_maps(a).expect("φ maps of a valid brace are well defined");
    let fb = phi_maps(b).expect("φ maps of a valid brace are well defined");
    let k = fa.quotient_order();
    if fb.quotient_order() != k || !is_bijection(&w.xi, k) {
        return Err(WitnessFailure::XiShape);
    }
    if !is_brace_iso(&w.xi, &fa.quotient, &fb.quotient) {
        return Err(WitnessFailure::XiNotIsomorphism);
    }
    let m = fa.commutator.order();
    if fb.commutator.order() != m || !is_bijection(&w.theta, m) {
        return Err(WitnessFailure::ThetaShape);
    }
    if !is_brace_iso(&w.theta, &fa.commutator, &fb.commutator) {
        return Err(WitnessFailure::ThetaNotIsomorphism);
    }
    let squares: [(&'static str, fn(&PhiMaps, usize, usize) -> usize); 3] = [
        ("φ₊", PhiMaps::plus_label),
        ("φ∗", PhiMaps::star_label),
        ("φ∘", PhiMaps::circ_label),
    ];
    for (map, f) in squares {
        for x in 0..k {
            for y in 0..k {
                if w.theta[f(&fa, x, y)] != f(&fb, w.xi[x], w.xi[y]) {
                    return Err(WitnessFailure::SquareFails { map, x, y });
                }
            }
        }
    }
    Ok(())
}

/// One isoclinism class of a list of braces; indices refer to the input.
#[derive(Debug, Clone)]
pub struct IsoclinismClass {
    pub representative: usize,
    /// Members in content-hash order, starting with the representative.
    pub members: Vec<usize>,
    /// `witnesses[i]` relates the representative to `members[i]`.
    pub witnesses: Vec<Isoclinism>,
}

/// Splits `braces` into isoclinism classes. Each representative is the
/// member with the least content hash; classes are sorted by it.
pub fn partition_classes(braces: &[SkewBrace]) -> Vec<IsoclinismClass> {
    let prepared: Vec<Prepared> = braces.par_iter().map(Prepared::new).collect();
    let hashes: Vec<String> = braces.par_iter().map(SkewBrace::content_hash).collect();
    partition_prepared(&prepared, &hashes)
}

pub fn partition_prepared(prepared: &[Prepared], hashes: &[String]) -> Vec<IsoclinismClass> {
    let mut buckets: BTreeMap<&Fingerprint, Vec<usize>> = BTreeMap::new();
    for (i, p) in prepared.iter().enumerate() {
        buckets.entry(&p.fingerprint).or_default().push(i);
    }
    let buckets: Vec<Vec<usize>> = buckets.into_values().collect();
    let mut classes: Vec<IsoclinismClass> = buckets
        .into_par_iter()
        .flat_map_iter(|mut bucket| {
            bucket.sort_by(|&i, &j| (&hashes[i], i).cmp(&(&hashes[j], j)));
            let mut classes: Vec<IsoclinismClass> = Vec::new();
            for i in bucket {
                let joined = classes.iter_mut().find_map(|c| {
                    find_isoclinism(&prepared[c.representative], &prepared[i]).map(|w| (c, w))
                });
                match joined {
                    Some((c, w)) => {
                        c.members.push(i);
                        c.witnesses.push(w);
                    }
                    None => {
                        let phi = &prepared[i].phi;
                        classes.push(IsoclinismClass {
                            representative: i,
                            members: vec![i],
                            witnesses: vec![Isoclinism::identity(
                                phi.quotient_order(),
                                phi.commutator.order(),
                            )],
                        });
                    }
                }
            }
            classes
        })
        .collect();
    classes.sort_by(|c, d| {
        (&hashes[c.representative], c.representative)
            .cmp(&(&hashes[d.representative], d.representative))
    });
    classes
}

/// The sub skew brace of `b` corresponding to `a1 ⊇ Ann(A)` under `w`:
/// the preimage of `ξ(a1/Ann(A))` in `B`.
pub fn corresponding_subbrace<'b>(
    a: &SkewBrace,
    b: &'b SkewBrace,
    w: &Isoclinism,
    a1: &BraceSubset<'_>,
) -> Result<BraceSubset<'b>, IsoclinismError> {
    let ann = a.annihilator();
    if !ann.is_subset_of(a1) {
        return Err(IsoclinismError::AnnNotContained);
    }
    if !a1.is_subbrace() {
        return Err(BraceError::NotASubbrace.into());
    }
    let (_, proj_a) = a.quotient(&ann)?;
    let (qb, proj_b) = b.quotient(&b.annihilator())?;
    let mut image = vec![false; qb.order()];
    for &x in a1.elements() {
        image[w.xi[proj_a[x]]] = true;
    }
    Ok(BraceSubset::new(
        b,
        (0..b.order()).filter(|&y| image[proj_b[y]]),
    ))
}

/// `Ann(A) ⊆ A′`.
pub fn is_stem(a: &SkewBrace) -> bool {
    let comm = a.commutator_ideal().expect("commutator is an ideal");
    a.annihilator().is_subset_of(&comm)
}

/// A stem member of least order (ties broken by content hash), if the
/// list has one.
pub fn stem_search(class: &[SkewBrace]) -> Option<&SkewBrace> {
    class
        .iter()
        .filter(|b| is_stem(b))
        .min_by_key(|b| (b.order(), b.content_hash()))
}

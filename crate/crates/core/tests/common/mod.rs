#![allow(dead_code)]

pub mod properties;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use skewbrace::brace::SkewBrace;
use skewbrace::census::{enumerate_braces, BraceRecord};
use skewbrace::group::CayleyGroup;
use skewbrace::perm::Perm;
use skewbrace::ybe::{from_sigma_involutive, Solution};

/// `C2 × C4` with `(x, y)` stored at `4x + y`.
fn c2_c4_brace(circ: impl Fn(usize, usize, usize, usize) -> (usize, usize)) -> SkewBrace {
    let add = CayleyGroup::from_fn(8, |a, b| {
        let (x1, y1, x2, y2) = (a / 4, a % 4, b / 4, b % 4);
        ((x1 + x2) % 2) * 4 + (y1 + y2) % 4
    })
    .unwrap();
    let circ = CayleyGroup::from_fn(8, |a, b| {
        let (x, y) = circ(a / 4, a % 4, b / 4, b % 4);
        (x % 2) * 4 + y % 4
    })
    .unwrap();
    SkewBrace::from_groups(add, circ).unwrap()
}

/// `(x₁,y₁)∘(x₂,y₂) = (x₁+x₂, y₁+y₂+2x₁y₂)`.
pub fn order_eight_a() -> SkewBrace {
    c2_c4_brace(|x1, y1, x2, y2| (x1 + x2, y1 + y2 + 2 * x1 * y2))
}

/// `(x₁,y₁)∘(x₂,y₂) = (x₁+x₂, y₁+y₂+2(x₁+y₁)x₂+2y₁y₂)`. With `x₁+y₂` in
/// the first factor the operation has no identity; see
/// `literal_b_is_not_a_group`.
pub fn order_eight_b() -> SkewBrace {
    c2_c4_brace(|x1, y1, x2, y2| (x1 + x2, y1 + y2 + 2 * (x1 + y1) * x2 + 2 * y1 * y2))
}

/// The operation of [`order_eight_b`] with `x₁+y₂` in the first factor.
pub fn literal_b_table() -> Result<CayleyGroup, skewbrace::group::GroupError> {
    CayleyGroup::from_fn(8, |a, b| {
        let (x1, y1, x2, y2) = (a / 4, a % 4, b / 4, b % 4);
        ((x1 + x2) % 2) * 4 + (y1 + y2 + 2 * (x1 + y2) * x2 + 2 * y1 * y2) % 4
    })
}

pub fn census(n: usize) -> &'static [BraceRecord] {
    static C8: OnceLock<Vec<BraceRecord>> = OnceLock::new();
    static C27: OnceLock<Vec<BraceRecord>> = OnceLock::new();
    let cell = match n {
        8 => &C8,
        27 => &C27,
        _ => panic!("only orders 8 and 27 are cached"),
    };
    cell.get_or_init(|| enumerate_braces(n).unwrap())
}

pub fn census_braces(n: usize) -> Vec<SkewBrace> {
    census(n).iter().map(|r| r.brace().unwrap()).collect()
}

/// Every skew brace of order at most `max`, up to isomorphism.
pub fn all_braces_up_to(max: usize) -> Vec<SkewBrace> {
    (1..=max)
        .flat_map(|n| enumerate_braces(n).unwrap())
        .map(|r| r.brace().unwrap())
        .collect()
}

pub fn solution(text: &str) -> Solution {
    Solution::parse_cycles(text).unwrap()
}

/// The four listed representatives of size 4.
pub fn size_four_representatives() -> Vec<Solution> {
    [
        "n=4; flip",
        "s3=(3 4); s4=(1 2)(3 4)",
        "s1=(3 4); s2=(1 3 2 4); s3=(1 4 2 3); s4=(1 2)",
        "s1=(1 2); s2=(1 3 2 4); s3=(3 4); s4=(1 4 2 3)",
    ]
    .into_iter()
    .map(solution)
    .collect()
}

/// The six listed representatives of size 5.
pub fn size_five_representatives() -> Vec<Solution> {
    [
        "n=5; flip",
        "s4=(4 5); s5=(2 3)(4 5)",
        "s4=(2 3)(4 5); s5=(1 2)(4 5)",
        "s2=(4 5); s3=(2 4 3 5); s4=(2 5 3 4); s5=(2 3)",
        "s2=(2 3); s3=(2 4 3 5); s4=(4 5); s5=(2 5 3 4)",
        "s1=(4 5); s2=(4 5); s3=(1 4)(2 5); s4=(1 2); s5=(1 2)",
    ]
    .into_iter()
    .map(solution)
    .collect()
}

/// Index of the class containing `s`, found by isoclinism with the class
/// representatives.
pub fn class_of(s: &Solution, reps: &[Solution]) -> Option<usize> {
    reps.iter().position(|r| {
        skewbrace::ybe::are_permutation_isoclinic(r, s)
            .unwrap()
            .is_some()
    })
}

pub fn census_braces_small(n: usize) -> Vec<SkewBrace> {
    enumerate_braces(n)
        .unwrap()
        .iter()
        .map(|r| r.brace().unwrap())
        .collect()
}

pub fn perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut stack = vec![Vec::new()];
    while let Some(prefix) = stack.pop() {
        if prefix.len() == n {
            out.push(Perm::from_images(prefix).unwrap());
            continue;
        }
        for x in 0..n {
            if !prefix.contains(&x) {
                let mut next = prefix.clone();
                next.push(x);
                stack.push(next);
            }
        }
    }
    out
}

/// Least `σ` image table over all relabelings.
pub fn key(s: &Solution, relabelings: &[Perm]) -> Vec<Vec<usize>> {
    relabelings
        .iter()
        .map(|p| {
            s.relabel(p)
                .sigma()
                .iter()
                .map(Perm::images)
                .collect::<Vec<_>>()
        })
        .min()
        .unwrap()
}

pub fn keys(list: &[Solution], relabelings: &[Perm]) -> BTreeSet<Vec<Vec<usize>>> {
    list.iter().map(|s| key(s, relabelings)).collect()
}

/// Relabeling classes of involutive solutions of size 4, from every one of
/// the `24⁴` choices of `σ` with no pruning.
pub fn brute_force_size_four() -> BTreeSet<Vec<Vec<usize>>> {
    let all = perms(4);
    let mut found = BTreeSet::new();
    for code in 0..24usize.pow(4) {
        let sigma: Vec<Perm> = (0..4)
            .map(|i| all[(code / 24usize.pow(i)) % 24].clone())
            .collect();
        if let Ok(s) = from_sigma_involutive(sigma) {
            found.insert(key(&s, &all));
        }
    }
    found
}

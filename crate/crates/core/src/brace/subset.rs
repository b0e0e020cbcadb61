use std::collections::BTreeSet;
use std::sync::OnceLock;

use super::{BraceError, SkewBrace};
use crate::group::CayleyGroup;

/// A subset of a brace's carrier, always containing `0`, with lazily
/// computed structural flags.
#[derive(Clone)]
pub struct BraceSubset<'a> {
    parent: &'a SkewBrace,
    elements: Vec<usize>,
    mask: Vec<bool>,
    flags: OnceLock<Flags>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Flags {
    subbrace: bool,
    left_ideal: bool,
    ideal: bool,
}

impl std::fmt::Debug for BraceSubset<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BraceSubset{:?}", self.elements)
    }
}

impl PartialEq for BraceSubset<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for BraceSubset<'_> {}

impl<'a> BraceSubset<'a> {
    /// `0` is added if missing; the element list is sorted.
    pub fn new(parent: &'a SkewBrace, elements: impl IntoIterator<Item = usize>) -> Self {
        let mut mask = vec![false; parent.order()];
        mask[0] = true;
        for x in elements {
            mask[x] = true;
        }
        Self::from_mask(parent, mask)
    }

    fn from_mask(parent: &'a SkewBrace, mask: Vec<bool>) -> Self {
        let elements = (0..mask.len()).filter(|&i| mask[i]).collect();
        BraceSubset {
            parent,
            elements,
            mask,
            flags: OnceLock::new(),
        }
    }

    pub fn whole(parent: &'a SkewBrace) -> Self {
        Self::new(parent, 0..parent.order())
    }

    pub fn zero(parent: &'a SkewBrace) -> Self {
        Self::new(parent, [0])
    }

    pub fn parent(&self) -> &'a SkewBrace {
        self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.elements.len() == self.parent.order()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    pub fn is_subset_of(&self, other: &BraceSubset<'_>) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &BraceSubset<'_>) -> BraceSubset<'a> {
        Self::new(
            self.parent,
            self.elements.iter().copied().filter(|&x| other.contains(x)),
        )
    }

    /// `{x + y : x ∈ self, y ∈ other}`.
    pub fn sum_set(&self, other: &BraceSubset<'_>) -> BraceSubset<'a> {
        let b = self.parent;
        Self::new(
            b,
            self.elements
                .iter()
                .flat_map(|&x| other.elements.iter().map(move |&y| b.add(x, y))),
        )
    }

    fn flags(&self) -> Flags {
        *self.flags.get_or_init(|| {
            let b = self.parent;
            let s = &self.elements;
            let subbrace = s.iter().all(|&x| {
                self.mask[b.neg(x)]
                    && self.mask[b.circ_inv(x)]
                    && s.iter()
                        .all(|&y| self.mask[b.add(x, y)] && self.mask[b.circ(x, y)])
            });
            let lambda_stable = s
                .iter()
                .all(|&x| (0..b.order()).all(|a| self.mask[b.lambda(a, x)]));
            let left_ideal = subbrace && lambda_stable;
            let ideal = left_ideal
                && s.iter().all(|&x| {
                    (0..b.order())
                        .all(|a| self.mask[b.sub(b.add(a, x), a)] && self.mask[b.circ.conj(a, x)])
                });
            Flags {
                subbrace,
                left_ideal,
                ideal,
            }
        })
    }

    pub fn is_subbrace(&self) -> bool {
        self.flags().subbrace
    }

    pub fn is_left_ideal(&self) -> bool {
        self.flags().left_ideal
    }

    pub fn is_ideal(&self) -> bool {
        self.flags().ideal
    }
}

/// `ker λ`, the centres of both groups, `Soc(A)` and `Ann(A)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacteristicSubsets {
    pub ker_lambda: Vec<usize>,
    pub center_add: Vec<usize>,
    pub center_circ: Vec<usize>,
    pub socle: Vec<usize>,
    pub annihilator: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Predicates {
    pub is_trivial: bool,
    pub is_two_sided: bool,
    pub is_abelian_type: bool,
    pub is_nilpotent_type: bool,
    pub is_radical_ring: bool,
    pub is_annihilator_nilpotent: bool,
}

/// `A = A⁽¹⁾ ⊇ A⁽²⁾ ⊇ …` with `A⁽ᵏ⁺¹⁾ = A⁽ᵏ⁾ * A`.
#[derive(Debug, Clone)]
pub struct RightSeries<'a> {
    pub terms: Vec<BraceSubset<'a>>,
}

impl RightSeries<'_> {
    pub fn reaches_zero(&self) -> bool {
        self.terms.last().is_some_and(BraceSubset::is_zero)
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.terms.iter().map(BraceSubset::len).collect()
    }
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter()
        .copied()
        .filter(|x| b.binary_search(x).is_ok())
        .collect()
}

impl SkewBrace {
    /// Smallest additive subgroup containing `s`.
    pub fn additive_closure(&self, s: impl IntoIterator<Item = usize>) -> BraceSubset<'_> {
        let mut gens: Vec<usize> = s.into_iter().collect();
        gens.sort_unstable();
        gens.dedup();
        BraceSubset::new(self, self.add.subgroup_generated(&gens))
    }

    /// `A'`: additive closure of all `[a,b]₊` and all `a * b`.
    pub fn commutator_ideal(&self) -> Result<BraceSubset<'_>, BraceError> {
        let n = self.order();
        let mut gens = BTreeSet::new();
        for a in 0..n {
            for b in 0..n {
                gens.insert(self.bracket_add(a, b));
                gens.insert(self.star(a, b));
            }
        }
        let c = self.additive_closure(gens);
        if !c.is_ideal() {
            return Err(BraceError::InternalIdealCheckFailed);
        }
        Ok(c)
    }

    /// `A⁽²⁾ = A * A`.
    pub fn star_square(&self) -> BraceSubset<'_> {
        let n = self.order();
        self.additive_closure(
            (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .map(|(a, b)| self.star(a, b)),
        )
    }

    pub fn characteristic_subsets(&self) -> CharacteristicSubsets {
        let n = self.order();
        let ker_lambda: Vec<usize> = (0..n)
            .filter(|&a| (0..n).all(|b| self.lambda(a, b) == b))
            .collect();
        let center_add = self.add.center();
        let center_circ = self.circ.center();
        let socle = intersect(&ker_lambda, &center_add);
        let annihilator = intersect(&socle, &center_circ);
        debug_assert!(BraceSubset::new(self, socle.iter().copied()).is_ideal());
        debug_assert!(BraceSubset::new(self, annihilator.iter().copied()).is_ideal());
        CharacteristicSubsets {
            ker_lambda,
            center_add,
            center_circ,
            socle,
            annihilator,
        }
    }

    pub fn socle(&self) -> BraceSubset<'_> {
        BraceSubset::new(self, self.characteristic_subsets().socle)
    }

    pub fn annihilator(&self) -> BraceSubset<'_> {
        BraceSubset::new(self, self.characteristic_subsets().annihilator)
    }

    /// Smallest ideal containing `s`.
    pub fn ideal_generated(&self, s: impl IntoIterator<Item = usize>) -> BraceSubset<'_> {
        let n = self.order();
        let mut current: Vec<usize> = s.into_iter().collect();
        loop {
            let closed = self.additive_closure(current.iter().copied());
            let mut mask = closed.mask.clone();
            let mut grew = false;
            for &x in closed.elements() {
                let mut push = |y: usize| {
                    if !mask[y] {
                        mask[y] = true;
                        grew = true;
                    }
                };
                push(self.circ_inv(x));
                for a in 0..n {
                    push(self.sub(self.add(a, x), a));
                    push(self.circ.conj(a, x));
                    push(self.lambda(a, x));
                }
            }
            if !grew {
                return closed;
            }
            current = (0..n).filter(|&i| mask[i]).collect();
        }
    }

    /// Smallest sub skew brace containing `s`.
    pub fn subbrace_generated(&self, s: impl IntoIterator<Item = usize>) -> BraceSubset<'_> {
        let mut mask = vec![false; self.order()];
        mask[0] = true;
        let mut list = vec![0];
        for x in s {
            if !mask[x] {
                mask[x] = true;
                list.push(x);
            }
        }
        let mut k = 0;
        while k < list.len() {
            let x = list[k];
            let mut fresh = vec![self.neg(x), self.circ_inv(x)];
            for &y in &list[..=k] {
                fresh.extend([
                    self.add(x, y),
                    self.add(y, x),
                    self.circ(x, y),
                    self.circ(y, x),
                ]);
            }
            for y in fresh {
                if !mask[y] {
                    mask[y] = true;
                    list.push(y);
                }
            }
            k += 1;
        }
        BraceSubset::from_mask(self, mask)
    }

    /// `A/I` with cosets labeled by increasing smallest member, and the
    /// projection `A → A/I`.
    pub fn quotient(&self, ideal: &BraceSubset<'_>) -> Result<(SkewBrace, Vec<usize>), BraceError> {
        if !std::ptr::eq(ideal.parent, self) && ideal.parent != self {
            return Err(BraceError::NotAnIdeal);
        }
        if !ideal.is_ideal() {
            return Err(BraceError::NotAnIdeal);
        }
        let n = self.order();
        let mut proj = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for a in 0..n {
            if proj[a] != usize::MAX {
                continue;
            }
            let label = reps.len();
            reps.push(a);
            for &i in ideal.elements() {
                proj[self.add(a, i)] = label;
            }
        }
        for a in 0..n {
            for &i in ideal.elements() {
                assert_eq!(
                    proj[self.circ(a, i)],
                    proj[a],
                    "∘-cosets of an ideal match its +-cosets"
                );
            }
        }
        let k = reps.len();
        let add = (0..k * k)
            .map(|t| proj[self.add(reps[t / k], reps[t % k])])
            .collect();
        let circ = (0..k * k)
            .map(|t| proj[self.circ(reps[t / k], reps[t % k])])
            .collect();
        let q = SkewBrace::from_groups_unchecked(
            CayleyGroup::from_raw(k, add),
            CayleyGroup::from_raw(k, circ),
        );
        Ok((q, proj))
    }

    /// The sub skew brace on `s`, its sorted elements relabeled `0..k`,
    /// together with the embedding into `self`.
    pub fn subbrace_table(
        &self,
        s: &BraceSubset<'_>,
    ) -> Result<(SkewBrace, Vec<usize>), BraceError> {
        if !s.is_subbrace() {
            return Err(BraceError::NotASubbrace);
        }
        let (add, emb) = self
            .add
            .subgroup_table(s.elements())
            .map_err(BraceError::Additive)?;
        let (circ, emb2) = self
            .circ
            .subgroup_table(s.elements())
            .map_err(BraceError::Multiplicative)?;
        debug_assert_eq!(emb, emb2);
        Ok((SkewBrace::from_groups_unchecked(add, circ), emb))
    }

    pub fn right_series(&self) -> RightSeries<'_> {
        let n = self.order();
        let mut terms = vec![BraceSubset::whole(self)];
        loop {
            let last = terms.last().unwrap();
            if last.is_zero() {
                break;
            }
            let next = self.additive_closure(
                last.elements()
                    .iter()
                    .flat_map(|&a| (0..n).map(move |b| (a, b)))
                    .map(|(a, b)| self.star(a, b)),
            );
            let stable = next == *last;
            terms.push(next);
            if stable {
                break;
            }
        }
        RightSeries { terms }
    }

    pub fn is_right_nilpotent(&self) -> bool {
        self.right_series().reaches_zero()
    }

    pub fn is_trivial(&self) -> bool {
        self.add == self.circ
    }

    /// `(a+b)∘c = a∘c - c + b∘c` for all `a, b, c`.
    pub fn is_two_sided(&self) -> bool {
        let n = self.order();
        (0..n).all(|c| {
            (0..n).all(|a| {
                let ac_c = self.sub(self.circ(a, c), c);
                (0..n).all(|b| self.circ(self.add(a, b), c) == self.add(ac_c, self.circ(b, c)))
            })
        })
    }

    pub fn is_abelian_type(&self) -> bool {
        self.add.is_abelian()
    }

    pub fn is_nilpotent_type(&self) -> bool {
        self.add.is_nilpotent()
    }

    /// Iterates `A → A/Ann(A)` until the order-1 brace (true) or a
    /// non-trivial brace with trivial annihilator (false).
    pub fn is_annihilator_nilpotent(&self) -> bool {
        let mut cur = self.clone();
        for _ in 0..=self.order() {
            if cur.order() == 1 {
                return true;
            }
            let ann = cur.annihilator();
            if ann.is_zero() {
                return false;
            }
            let (q, _) = cur.quotient(&ann).expect("annihilator is an ideal");
            cur = q;
        }
        unreachable!("each step shrinks the order")
    }

    pub fn predicates(&self) -> Predicates {
        let is_two_sided = self.is_two_sided();
        let is_abelian_type = self.is_abelian_type();
        Predicates {
            is_trivial: self.is_trivial(),
            is_two_sided,
            is_abelian_type,
            is_nilpotent_type: self.is_nilpotent_type(),
            is_radical_ring: is_two_sided && is_abelian_type,
            is_annihilator_nilpotent: self.is_annihilator_nilpotent(),
        }
    }

    /// Every sub skew brace containing `base` (itself a sub skew brace),
    /// ordered by size and then by element list.
    pub fn sub_braces_containing(&self, base: &BraceSubset<'_>) -> Vec<BraceSubset<'_>> {
        let n = self.order();
        let bottom = self.subbrace_generated(base.elements().iter().copied());
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        found.insert(bottom.elements().to_vec());
        for x in 0..n {
            let s = self.subbrace_generated(bottom.elements().iter().copied().chain([x]));
            found.insert(s.elements().to_vec());
        }
        loop {
            let list: Vec<Vec<usize>> = found.iter().cloned().collect();
            let mut grew = false;
            for i in 0..list.len() {
                for j in i + 1..list.len() {
                    let joined = self.subbrace_generated(list[i].iter().chain(&list[j]).copied());
                    if found.insert(joined.elements().to_vec()) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let mut out: Vec<BraceSubset<'_>> = found
            .into_iter()
            .map(|s| BraceSubset::new(self, s))
            .collect();
        out.sort_by(|a, b| (a.len(), a.elements()).cmp(&(b.len(), b.elements())));
        out
    }

    /// Every ideal, ordered by size and then by element list.
    pub fn ideals(&self) -> Vec<BraceSubset<'_>> {
        self.sub_braces_containing(&BraceSubset::zero(self))
            .into_iter()
            .filter(BraceSubset::is_ideal)
            .collect()
    }
}

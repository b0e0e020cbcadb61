//! Finite skew braces `(A, +, ∘)` on the carrier `{0..n-1}`.
//!
//! Both group structures share the identity `0`. Throughout, `-a` is the
//! additive inverse and `a'` the inverse for `∘`.

mod iso;
mod subset;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::group::{CayleyGroup, GroupError};

pub use iso::{brace_from_regular_subgroup, brace_isomorphic};
pub(crate) use iso::{for_each_brace_isomorphism, orbit_sizes};
pub use subset::{BraceSubset, CharacteristicSubsets, Predicates, RightSeries};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BraceError {
    #[error("additive table: {0}")]
    Additive(GroupError),
    #[error("multiplicative table: {0}")]
    Multiplicative(GroupError),
    #[error("tables have different orders ({0} and {1})")]
    OrderMismatch(usize, usize),
    #[error("{0}∘({1}+{2}) != {0}∘{1} - {0} + {0}∘{2}")]
    CompatibilityFails(usize, usize, usize),
    #[error("subset is not an ideal")]
    NotAnIdeal,
    #[error("subset is not a sub skew brace")]
    NotASubbrace,
    #[error("C({0},{1}) needs d | n and every prime divisor of n dividing d")]
    BadParameters(usize, usize),
    #[error("the commutator failed the ideal test")]
    InternalIdealCheckFailed,
    #[error("permutation group is not regular of the right degree")]
    NotRegular,
}

/// A validated skew brace.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SkewBrace {
    add: CayleyGroup,
    circ: CayleyGroup,
}

impl std::fmt::Debug for SkewBrace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SkewBrace")
            .field("n", &self.order())
            .field("id", &self.content_hash())
            .finish()
    }
}

/// Wire form `{"n", "add", "circ"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraceJson {
    pub n: usize,
    pub add: Vec<Vec<usize>>,
    pub circ: Vec<Vec<usize>>,
}

/// Validates both groups and the compatibility law on all triples.
pub fn validate_brace(add: &[Vec<usize>], circ: &[Vec<usize>]) -> Result<SkewBrace, BraceError> {
    let add = crate::group::validate_group(add).map_err(BraceError::Additive)?;
    let circ = crate::group::validate_group(circ).map_err(BraceError::Multiplicative)?;
    SkewBrace::from_groups(add, circ)
}

impl SkewBrace {
    pub fn from_groups(add: CayleyGroup, circ: CayleyGroup) -> Result<Self, BraceError> {
        if add.order() != circ.order() {
            return Err(BraceError::OrderMismatch(add.order(), circ.order()));
        }
        let b = SkewBrace { add, circ };
        let n = b.order();
        for a in 0..n {
            let na = b.neg(a);
            for x in 0..n {
                let ax = b.circ(a, x);
                let left = b.add(ax, na);
                for y in 0..n {
                    if b.circ(a, b.add(x, y)) != b.add(left, b.circ(a, y)) {
                        return Err(BraceError::CompatibilityFails(a, x, y));
                    }
                }
            }
        }
        Ok(b)
    }

    /// Skips the compatibility check; for tables produced by constructions
    /// that guarantee it. Checked in debug builds.
    pub(crate) fn from_groups_unchecked(add: CayleyGroup, circ: CayleyGroup) -> Self {
        debug_assert!(SkewBrace::from_groups(add.clone(), circ.clone()).is_ok());
        SkewBrace { add, circ }
    }

    /// The trivial brace `a ∘ b = a + b` on `g`.
    pub fn trivial(g: &CayleyGroup) -> Self {
        SkewBrace {
            add: g.clone(),
            circ: g.clone(),
        }
    }

    pub fn from_json(j: &BraceJson) -> Result<Self, BraceError> {
        if j.add.len() != j.n {
            return Err(BraceError::Additive(GroupError::Malformed));
        }
        if j.circ.len() != j.n {
            return Err(BraceError::Multiplicative(GroupError::Malformed));
        }
        validate_brace(&j.add, &j.circ)
    }

    pub fn to_json(&self) -> BraceJson {
        BraceJson {
            n: self.order(),
            add: self.add.rows(),
            circ: self.circ.rows(),
        }
    }

    /// SHA-256 (hex) of `n` followed by both tables row-major, every
    /// number as a little-endian `u32`.
    pub fn content_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.order() as u32).to_le_bytes());
        for &x in self.add.raw_table().iter().chain(self.circ.raw_table()) {
            h.update((x as u32).to_le_bytes());
        }
        hex::encode(h.finalize())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.add.order()
    }

    pub fn additive_group(&self) -> &CayleyGroup {
        &self.add
    }

    pub fn multiplicative_group(&self) -> &CayleyGroup {
        &self.circ
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add.op(a, b)
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.add.inv(a)
    }

    /// `a - b`.
    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add.op(a, self.add.inv(b))
    }

    #[inline]
    pub fn circ(&self, a: usize, b: usize) -> usize {
        self.circ.op(a, b)
    }

    /// `a'`, the inverse of `a` for `∘`.
    #[inline]
    pub fn circ_inv(&self, a: usize) -> usize {
        self.circ.inv(a)
    }

    /// `λ_a(b) = -a + a∘b`.
    #[inline]
    pub fn lambda(&self, a: usize, b: usize) -> usize {
        self.add(self.neg(a), self.circ(a, b))
    }

    /// `ρ_a(b) = a∘b - a`.
    #[inline]
    pub fn rho(&self, a: usize, b: usize) -> usize {
        self.sub(self.circ(a, b), a)
    }

    /// `a * b = -a + a∘b - b`.
    #[inline]
    pub fn star(&self, a: usize, b: usize) -> usize {
        self.sub(self.lambda(a, b), b)
    }

    /// `[a,b]₊ = a + b - a - b`.
    #[inline]
    pub fn bracket_add(&self, a: usize, b: usize) -> usize {
        self.add.commutator(a, b)
    }

    /// `[a,b]∘ = a∘b∘a'∘b'`.
    #[inline]
    pub fn bracket_circ(&self, a: usize, b: usize) -> usize {
        self.circ.commutator(a, b)
    }

    /// `[a,b]₊` in the additive group, `a * b` and `[a,b]∘` as total maps.
    pub fn pointwise_maps(&self) -> PointwiseMaps<'_> {
        PointwiseMaps { brace: self }
    }

    /// Transports the brace along a bijection `f` fixing `0`.
    pub fn relabel(&self, f: &crate::perm::Perm) -> SkewBrace {
        SkewBrace {
            add: self.add.relabel(f),
            circ: self.circ.relabel(f),
        }
    }
}

/// Borrowed view exposing the canonical maps of a brace as functions.
#[derive(Clone, Copy)]
pub struct PointwiseMaps<'a> {
    brace: &'a SkewBrace,
}

impl PointwiseMaps<'_> {
    pub fn lambda(&self, a: usize, b: usize) -> usize {
        self.brace.lambda(a, b)
    }
    pub fn rho(&self, a: usize, b: usize) -> usize {
        self.brace.rho(a, b)
    }
    pub fn star(&self, a: usize, b: usize) -> usize {
        self.brace.star(a, b)
    }
    pub fn bplus(&self, a: usize, b: usize) -> usize {
        self.brace.bracket_add(a, b)
    }
    pub fn bcirc(&self, a: usize, b: usize) -> usize {
        self.brace.bracket_circ(a, b)
    }

    /// Checks that λ and ρ are actions of `(A,∘)` by automorphisms of
    /// `(A,+)`. Returns the first failing `(a, b, c)` if any.
    pub fn check_action_laws(&self) -> Result<(), (usize, usize, usize)> {
        let b = self.brace;
        let n = b.order();
        for x in 0..n {
            for y in 0..n {
                let xy = b.circ(x, y);
                for z in 0..n {
                    if b.lambda(xy, z) != b.lambda(x, b.lambda(y, z))
                        || b.rho(xy, z) != b.rho(x, b.rho(y, z))
                        || b.lambda(x, b.add(y, z)) != b.add(b.lambda(x, y), b.lambda(x, z))
                        || b.rho(x, b.add(y, z)) != b.add(b.rho(x, y), b.rho(x, z))
                    {
                        return Err((x, y, z));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Componentwise product; `(a, b)` is stored at `a·|B| + b`.
pub fn direct_product(a: &SkewBrace, b: &SkewBrace) -> SkewBrace {
    SkewBrace {
        add: crate::group::direct_product(&a.add, &b.add),
        circ: crate::group::direct_product(&a.circ, &b.circ),
    }
}

/// `C(n, d)`: `Z/n` with `x ∘ y = x + dxy + y`.
pub fn make_cnd(n: usize, d: usize) -> Result<SkewBrace, BraceError> {
    let bad = BraceError::BadParameters(n, d);
    if n < 2 || d == 0 || !n.is_multiple_of(d) {
        return Err(bad);
    }
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        if m.is_multiple_of(p) {
            if !d.is_multiple_of(p) {
                return Err(bad);
            }
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    let add = crate::group::named::cyclic(n);
    let circ = CayleyGroup::from_fn(n, |x, y| (x + d * x * y + y) % n)
        .map_err(BraceError::Multiplicative)?;
    SkewBrace::from_groups(add, circ)
}

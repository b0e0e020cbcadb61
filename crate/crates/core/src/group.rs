//! Finite groups given by Cayley tables on `{0..n-1}` with identity `0`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::perm::{Perm, PermGroup};
use crate::search::{self, Colouring};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("table is not square or has an entry outside 0..n")]
    Malformed,
    #[error("0 is not a two-sided identity")]
    NoIdentityAtZero,
    #[error("element {0} has no inverse")]
    NotInvertible(usize),
    #[error("{0} is not a permutation of the carrier")]
    NotLatin(LatinLine),
    #[error("({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("subset is not a subgroup")]
    NotSubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatinLine {
    Row(usize),
    Col(usize),
}

impl fmt::Display for LatinLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatinLine::Row(r) => write!(f, "row {r}"),
            LatinLine::Col(c) => write!(f, "column {c}"),
        }
    }
}

/// A validated finite group. Row-major table, `table[a*n + b] = a·b`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CayleyGroup {
    n: usize,
    table: Vec<usize>,
    inv: Vec<usize>,
}

/// Wire form of a Cayley table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyTableJson {
    pub n: usize,
    pub table: Vec<Vec<usize>>,
}

impl fmt::Debug for CayleyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CayleyGroup")
            .field("n", &self.n)
            .field("table", &self.rows())
            .finish()
    }
}

/// Checks the group axioms; identity must sit at `0`.
pub fn validate_group(table: &[Vec<usize>]) -> Result<CayleyGroup, GroupError> {
    let n = table.len();
    if n == 0
        || table
            .iter()
            .any(|r| r.len() != n || r.iter().any(|&x| x >= n))
    {
        return Err(GroupError::Malformed);
    }
    for i in 0..n {
        if table[0][i] != i || table[i][0] != i {
            return Err(GroupError::NoIdentityAtZero);
        }
    }
    let mut inv = vec![usize::MAX; n];
    for a in 0..n {
        let right = (0..n).find(|&b| table[a][b] == 0);
        match right {
            Some(b) if table[b][a] == 0 => inv[a] = b,
            _ => return Err(GroupError::NotInvertible(a)),
        }
    }
    let mut seen = vec![0usize; n];
    for a in 0..n {
        for b in 0..n {
            let x = table[a][b];
            if seen[x] == 2 * a + 1 {
                return Err(GroupError::NotLatin(LatinLine::Row(a)));
            }
            seen[x] = 2 * a + 1;
        }
    }
    seen.fill(0);
    for b in 0..n {
        for a in 0..n {
            let x = table[a][b];
            if seen[x] == b + 1 {
                return Err(GroupError::NotLatin(LatinLine::Col(b)));
            }
            seen[x] = b + 1;
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = table[a][b];
            for c in 0..n {
                if table[ab][c] != table[a][table[b][c]] {
                    return Err(GroupError::NotAssociative(a, b, c));
                }
            }
        }
    }
    Ok(CayleyGroup {
        n,
        table: table.iter().flatten().copied().collect(),
        inv,
    })
}

impl CayleyGroup {
    /// Validates a table whose identity may sit anywhere, relabeling so
    /// that the identity becomes `0` (by swapping it with `0`).
    pub fn from_table_normalized(table: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0
            || table
                .iter()
                .any(|r| r.len() != n || r.iter().any(|&x| x >= n))
        {
            return Err(GroupError::Malformed);
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|i| table[e][i] == i && table[i][e] == i))
            .ok_or(GroupError::NoIdentityAtZero)?;
        let swap = |x: usize| {
            if x == e {
                0
            } else if x == 0 {
                e
            } else {
                x
            }
        };
        let relabeled: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| swap(table[swap(a)][swap(b)])).collect())
            .collect();
        validate_group(&relabeled)
    }

    /// Builds a group from a multiplication closure on `0..n`; the closure
    /// must already have identity `0`.
    pub fn from_fn(n: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self, GroupError> {
        let rows: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| op(a, b)).collect()).collect();
        validate_group(&rows)
    }

    /// Trusted constructor used by internal transports of valid tables.
    pub(crate) fn from_raw(n: usize, table: Vec<usize>) -> Self {
        let mut inv = vec![0; n];
        for a in 0..n {
            for b in 0..n {
                if table[a * n + b] == 0 {
                    inv[a] = b;
                }
            }
        }
        let g = CayleyGroup { n, table, inv };
        debug_assert!(validate_group(&g.rows()).is_ok());
        g
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn raw_table(&self) -> &[usize] {
        &self.table
    }

    pub fn to_json(&self) -> CayleyTableJson {
        CayleyTableJson {
            n: self.n,
            table: self.rows(),
        }
    }

    pub fn from_json(j: &CayleyTableJson) -> Result<Self, GroupError> {
        if j.table.len() != j.n {
            return Err(GroupError::Malformed);
        }
        validate_group(&j.table)
    }

    /// `a b a⁻¹ b⁻¹`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.op(self.op(a, b), self.op(self.inv(a), self.inv(b)))
    }

    /// `g a g⁻¹`.
    pub fn conj(&self, g: usize, a: usize) -> usize {
        self.op(self.op(g, a), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.op(x, a);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.n).map(|a| self.element_order(a)).collect()
    }

    pub fn exponent(&self) -> usize {
        self.element_orders().into_iter().fold(1, num_integer::lcm)
    }

    /// Sorted multiset of element orders as `(order, count)`.
    pub fn order_profile(&self) -> Vec<(usize, usize)> {
        let mut m: BTreeMap<usize, usize> = BTreeMap::new();
        for o in self.element_orders() {
            *m.entry(o).or_default() += 1;
        }
        m.into_iter().collect()
    }

    pub fn conjugacy_class_sizes(&self) -> Vec<usize> {
        (0..self.n)
            .map(|a| {
                let mut seen = vec![false; self.n];
                let mut k = 0;
                for g in 0..self.n {
                    let c = self.conj(g, a);
                    if !seen[c] {
                        seen[c] = true;
                        k += 1;
                    }
                }
                k
            })
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.op(a, b) == self.op(b, a)))
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&a| (0..self.n).all(|b| self.op(a, b) == self.op(b, a)))
            .collect()
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.n];
        inside[0] = true;
        let mut list = vec![0];
        let mut k = 0;
        while k < list.len() {
            let x = list[k];
            for &g in gens {
                let y = self.op(x, g);
                if !inside[y] {
                    inside[y] = true;
                    list.push(y);
                }
            }
            k += 1;
        }
        list.sort_unstable();
        list
    }

    pub fn derived_subgroup(&self) -> Vec<usize> {
        let gens: Vec<usize> = (0..self.n)
            .flat_map(|a| (0..self.n).map(move |b| (a, b)))
            .map(|(a, b)| self.commutator(a, b))
            .collect();
        self.subgroup_generated(&dedup_sorted(gens))
    }

    /// `[H, G]` for a subgroup `H`.
    fn commutator_with_whole(&self, h: &[usize]) -> Vec<usize> {
        let gens: Vec<usize> = h
            .iter()
            .flat_map(|&a| (0..self.n).map(move |b| (a, b)))
            .map(|(a, b)| self.commutator(a, b))
            .collect();
        self.subgroup_generated(&dedup_sorted(gens))
    }

    /// Terms of the lower central series until it stabilizes.
    pub fn lower_central_series(&self) -> Vec<Vec<usize>> {
        let mut series = vec![(0..self.n).collect::<Vec<_>>()];
        loop {
            let next = self.commutator_with_whole(series.last().unwrap());
            if &next == series.last().unwrap() {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().unwrap().len() == 1
    }

    pub fn is_subgroup(&self, s: &[usize]) -> bool {
        let mut inside = vec![false; self.n];
        for &x in s {
            if x >= self.n {
                return false;
            }
            inside[x] = true;
        }
        inside[0]
            && s.iter()
                .all(|&a| inside[self.inv(a)] && s.iter().all(|&b| inside[self.op(a, b)]))
    }

    pub fn is_normal(&self, s: &[usize]) -> bool {
        let mut inside = vec![false; self.n];
        for &x in s {
            inside[x] = true;
        }
        s.iter()
            .all(|&a| (0..self.n).all(|g| inside[self.conj(g, a)]))
    }

    /// A greedy generating set, preferring elements of large order.
    pub fn generating_set(&self) -> Vec<usize> {
        let orders = self.element_orders();
        let mut by_order: Vec<usize> = (1..self.n).collect();
        by_order.sort_by_key(|&a| (std::cmp::Reverse(orders[a]), a));
        let mut gens = Vec::new();
        let mut inside = vec![false; self.n];
        inside[0] = true;
        let mut size = 1;
        for a in by_order {
            if size == self.n {
                break;
            }
            if inside[a] {
                continue;
            }
            gens.push(a);
            let sub = self.subgroup_generated(&gens);
            size = sub.len();
            for x in sub {
                inside[x] = true;
            }
        }
        gens
    }

    /// Left-regular representation `x ↦ a·x`.
    pub fn left_translation(&self, a: usize) -> Perm {
        Perm::from_images((0..self.n).map(|x| self.op(a, x)).collect()).expect("latin row")
    }

    /// Transports the table along a bijection `f`, giving the group
    /// with `f(a)·f(b) = f(a·b)`; `f` must fix `0`.
    pub fn relabel(&self, f: &Perm) -> CayleyGroup {
        assert_eq!(f.apply(0), 0, "relabeling must fix the identity");
        let n = self.n;
        let finv = f.inverse();
        let table = (0..n * n)
            .map(|k| {
                let (a, b) = (finv.apply(k / n), finv.apply(k % n));
                f.apply(self.op(a, b))
            })
            .collect();
        CayleyGroup::from_raw(n, table)
    }

    pub fn invariants(&self) -> GroupInvariants {
        GroupInvariants {
            center: self.center(),
            derived_subgroup: self.derived_subgroup(),
            is_abelian: self.is_abelian(),
            is_nilpotent: self.is_nilpotent(),
            order_profile: self.order_profile(),
        }
    }

    /// Restricts the table to a subgroup, relabeling its sorted elements
    /// as `0..k`. Returns the subgroup and the embedding.
    pub fn subgroup_table(&self, s: &[usize]) -> Result<(CayleyGroup, Vec<usize>), GroupError> {
        if !self.is_subgroup(s) {
            return Err(GroupError::NotSubgroup);
        }
        let mut elems = s.to_vec();
        elems.sort_unstable();
        let mut pos = vec![usize::MAX; self.n];
        for (i, &x) in elems.iter().enumerate() {
            pos[x] = i;
        }
        let k = elems.len();
        let table = (0..k * k)
            .map(|idx| pos[self.op(elems[idx / k], elems[idx % k])])
            .collect();
        Ok((CayleyGroup::from_raw(k, table), elems))
    }
}

fn dedup_sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v.dedup();
    v
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupInvariants {
    pub center: Vec<usize>,
    pub derived_subgroup: Vec<usize>,
    pub is_abelian: bool,
    pub is_nilpotent: bool,
    pub order_profile: Vec<(usize, usize)>,
}

pub fn group_invariants(g: &CayleyGroup) -> GroupInvariants {
    g.invariants()
}

/// `G/N` with cosets labeled by increasing smallest member (so the coset
/// of `0` is `0`), together with the projection `G → G/N`.
pub fn quotient_group(
    g: &CayleyGroup,
    normal: &[usize],
) -> Result<(CayleyGroup, Vec<usize>), GroupError> {
    if !g.is_subgroup(normal) {
        return Err(GroupError::NotSubgroup);
    }
    if !g.is_normal(normal) {
        return Err(GroupError::NotNormal);
    }
    let n = g.order();
    let mut proj = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for a in 0..n {
        if proj[a] != usize::MAX {
            continue;
        }
        let label = reps.len();
        reps.push(a);
        for &x in normal {
            proj[g.op(a, x)] = label;
        }
    }
    let k = reps.len();
    let table = (0..k * k)
        .map(|idx| proj[g.op(reps[idx / k], reps[idx % k])])
        .collect();
    Ok((CayleyGroup::from_raw(k, table), proj))
}

/// Colour used to prune group isomorphism searches: element order and
/// conjugacy class size.
pub(crate) fn group_colouring(g: &CayleyGroup) -> Vec<u64> {
    let orders = g.element_orders();
    let classes = g.conjugacy_class_sizes();
    orders
        .iter()
        .zip(classes)
        .map(|(&o, c)| ((o as u64) << 32) | c as u64)
        .collect()
}

/// A bijection `f` with `f(a·b) = f(a)·f(b)`, as a [`Perm`] of the
/// carrier, or `None`.
pub fn are_isomorphic(g: &CayleyGroup, h: &CayleyGroup) -> Option<Perm> {
    if g.order() != h.order() || g.order_profile() != h.order_profile() {
        return None;
    }
    let colours = Colouring::new(group_colouring(g), group_colouring(h))?;
    let mut found = None;
    search::for_each_isomorphism(g, h, &colours, &mut |f| {
        found = Some(f.to_vec());
        false
    });
    found.map(|f| Perm::from_images(f).expect("bijection"))
}

/// All automorphisms, as permutations of the carrier.
pub fn automorphism_group(g: &CayleyGroup) -> PermGroup {
    let col = group_colouring(g);
    let colours = Colouring::new(col.clone(), col).expect("same colours");
    let mut all = Vec::new();
    search::for_each_isomorphism(g, g, &colours, &mut |f| {
        all.push(Perm::from_images(f.to_vec()).expect("bijection"));
        true
    });
    let gens = crate::perm::small_generating_set(g.order(), &{
        let mut s = all.clone();
        s.sort_unstable();
        s
    });
    PermGroup::from_closed_set(g.order(), gens, all)
}

/// The direct product with carrier index `a·|H| + b`.
pub fn direct_product(g: &CayleyGroup, h: &CayleyGroup) -> CayleyGroup {
    let (m, k) = (g.order(), h.order());
    let n = m * k;
    let table = (0..n * n)
        .map(|idx| {
            let (x, y) = (idx / n, idx % n);
            g.op(x / k, y / k) * k + h.op(x % k, y % k)
        })
        .collect();
    CayleyGroup::from_raw(n, table)
}

/// Cayley table of a permutation group, elements in their canonical
/// (sorted) order so that the identity is `0`.
pub fn from_perm_group(p: &PermGroup) -> CayleyGroup {
    let elems = p.elements();
    let n = elems.len();
    let table = (0..n * n)
        .map(|idx| {
            p.position(&elems[idx / n].compose(&elems[idx % n]))
                .expect("closed")
        })
        .collect();
    CayleyGroup::from_raw(n, table)
}

pub mod named {
    //! Explicit small groups used in tests and the catalog.

    use super::*;

    pub fn cyclic(n: usize) -> CayleyGroup {
        CayleyGroup::from_fn(n, |a, b| (a + b) % n).expect("cyclic")
    }

    pub fn trivial() -> CayleyGroup {
        cyclic(1)
    }

    /// Dihedral group of order `2m`: `r^i` is `i`, `s r^i` is `m + i`.
    pub fn dihedral(order: usize) -> CayleyGroup {
        assert!(order >= 2 && order.is_multiple_of(2));
        dihedral_table(order / 2)
    }

    fn dihedral_table(m: usize) -> CayleyGroup {
        // (s^a r^i)(s^b r^j) = s^(a+b) r^((-1)^b i + j)
        CayleyGroup::from_fn(2 * m, |x, y| {
            let (a, i) = (x / m, x % m);
            let (b, j) = (y / m, y % m);
            let i2 = if b == 1 { (m - i) % m } else { i };
            ((a + b) % 2) * m + (i2 + j) % m
        })
        .expect("dihedral")
    }

    /// Quaternion group: `±1, ±i, ±j, ±k` encoded as sign·unit.
    pub fn quaternion() -> CayleyGroup {
        // unit index 0..4 = 1,i,j,k; element = unit*2 + sign
        let mul = |u: usize, v: usize| -> (usize, usize) {
            const T: [[(usize, usize); 4]; 4] = [
                [(0, 0), (1, 0), (2, 0), (3, 0)],
                [(1, 0), (0, 1), (3, 0), (2, 1)],
                [(2, 0), (3, 1), (0, 1), (1, 0)],
                [(3, 0), (2, 0), (1, 1), (0, 1)],
            ];
            T[u][v]
        };
        CayleyGroup::from_fn(8, |x, y| {
            let (u, s) = (x / 2, x % 2);
            let (v, t) = (y / 2, y % 2);
            let (w, sign) = mul(u, v);
            w * 2 + ((s + t + sign) % 2)
        })
        .expect("quaternion")
    }

    /// Unitriangular 3×3 matrices over `F_p`: `(a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')`.
    pub fn heisenberg(p: usize) -> CayleyGroup {
        let enc = |a: usize, b: usize, c: usize| (a * p + b) * p + c;
        CayleyGroup::from_fn(p * p * p, |x, y| {
            let (a, b, c) = (x / (p * p), (x / p) % p, x % p);
            let (a2, b2, c2) = (y / (p * p), (y / p) % p, y % p);
            enc((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p)
        })
        .expect("heisenberg")
    }

    /// `C_{p²} ⋊ C_p` with the generator of `C_p` acting by `x ↦ (1+p)x`.
    pub fn extraspecial_exponent_p2(p: usize) -> CayleyGroup {
        let m = p * p;
        CayleyGroup::from_fn(m * p, |x, y| {
            let (u, s) = (x % m, x / m);
            let (v, t) = (y % m, y / m);
            let mut twist = 1;
            for _ in 0..s {
                twist = twist * (1 + p) % m;
            }
            ((s + t) % p) * m + (u + twist * v) % m
        })
        .expect("extraspecial")
    }

    /// Symmetric group `S_k` via its permutations.
    pub fn symmetric(k: usize) -> CayleyGroup {
        let gens = if k < 2 {
            vec![]
        } else {
            let mut cyc: Vec<usize> = (1..k).collect();
            cyc.push(0);
            vec![
                Perm::from_cycles(k, &[vec![0, 1]]).unwrap(),
                Perm::from_images(cyc).unwrap(),
            ]
        };
        from_perm_group(&crate::perm::closure(k, &gens))
    }

    pub fn elementary_abelian(p: usize, rank: u32) -> CayleyGroup {
        let mut g = trivial();
        for _ in 0..rank {
            g = direct_product(&g, &cyclic(p));
        }
        g
    }
}

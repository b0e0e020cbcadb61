//! Permutations on `{0..n-1}` and materialized permutation groups.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest number of points a [`Perm`] can act on.
pub const MAX_DEGREE: usize = 256;

/// A bijection of `{0..n-1}` stored as its image array.
///
/// Composition follows function notation: `p.compose(&q)` is `p ∘ q`,
/// i.e. `q` is applied first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct Perm {
    images: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PermError {
    #[error("image array is not a bijection of 0..{0}")]
    NotBijective(usize),
    #[error("degree {0} exceeds the supported maximum of {MAX_DEGREE}")]
    DegreeTooLarge(usize),
    #[error("malformed cycle notation: {0}")]
    BadCycles(String),
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_DEGREE, "degree {n} too large");
        Perm {
            images: (0..n).map(|i| i as u8).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(PermError::DegreeTooLarge(n));
        }
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(PermError::NotBijective(n));
            }
            seen[i] = true;
        }
        Ok(Perm {
            images: images.into_iter().map(|i| i as u8).collect(),
        })
    }

    /// Builds a permutation of degree `n` from 0-indexed disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x >= n || touched[x] {
                    return Err(PermError::BadCycles(format!("{cycles:?}")));
                }
                touched[x] = true;
                images[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Perm::from_images(images)
    }

    /// Parses 1-indexed cycle notation such as `(1 3 2 4)`, `(1,2)(3,4)`,
    /// `()` or `id`.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Self, PermError> {
        let text = text.trim();
        if text.is_empty() || text == "id" || text == "()" {
            return Ok(Perm::identity(n));
        }
        let bad = || PermError::BadCycles(text.to_string());
        let mut cycles = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = open.find(')').ok_or_else(bad)?;
            let body = &open[..close];
            let cycle = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| match s.parse::<usize>() {
                    Ok(v) if v >= 1 => Ok(v - 1),
                    _ => Err(bad()),
                })
                .collect::<Result<Vec<_>, _>>()?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = open[close + 1..].trim_start();
        }
        Perm::from_cycles(n, &cycles)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| i == x as usize)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other
                .images
                .iter()
                .map(|&i| self.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u8;
        }
        Perm { images }
    }

    /// `self ∘ other ∘ self⁻¹`.
    pub fn conjugate(&self, other: &Perm) -> Perm {
        let mut images = vec![0u8; self.degree()];
        for (i, &x) in other.images.iter().enumerate() {
            images[self.images[i] as usize] = self.images[x as usize];
        }
        Perm { images }
    }

    pub fn has_fixed_point(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .any(|(i, &x)| i == x as usize)
    }

    pub fn order(&self) -> usize {
        let mut seen = vec![false; self.degree()];
        let mut order = 1;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
                len += 1;
            }
            order = num_integer::lcm(order, len);
        }
        order
    }

    /// Disjoint cycles of length at least two, each starting at its
    /// smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Raw image bytes; used as a compact hash key.
    pub(crate) fn as_bytes(&self) -> &[u8] {
        &self.images
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

/// 1-indexed cycle notation, `()` for the identity.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

impl From<Perm> for Vec<usize> {
    fn from(p: Perm) -> Self {
        p.images()
    }
}

impl TryFrom<Vec<usize>> for Perm {
    type Error = PermError;

    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        Perm::from_images(v)
    }
}

/// A permutation group with all of its elements materialized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
}

impl PermGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// Elements in lexicographic order of their image arrays; the
    /// identity is always first.
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn position(&self, p: &Perm) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    /// Builds a group from a set already known to be closed.
    pub(crate) fn from_closed_set(
        degree: usize,
        generators: Vec<Perm>,
        mut elements: Vec<Perm>,
    ) -> Self {
        elements.sort_unstable();
        elements.dedup();
        PermGroup {
            degree,
            generators,
            elements,
        }
    }

    /// True when the only element fixing a point is the identity and the
    /// group is transitive.
    pub fn is_regular(&self) -> bool {
        if self.order() != self.degree {
            return false;
        }
        let mut hit = vec![false; self.degree];
        for g in &self.elements {
            if !g.is_identity() && g.has_fixed_point() {
                return false;
            }
            if self.degree > 0 {
                hit[g.apply(0)] = true;
            }
        }
        hit.into_iter().all(|b| b)
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() <= 1
    }

    /// Orbits on the points, each sorted, listed by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.degree, &self.generators)
    }

    pub fn stabilizer(&self, point: usize) -> Vec<Perm> {
        self.elements
            .iter()
            .filter(|g| g.apply(point) == point)
            .cloned()
            .collect()
    }

    /// A small generating set picked greedily, preferring elements of
    /// large order.
    pub fn small_generating_set(&self) -> Vec<Perm> {
        small_generating_set(self.degree, &self.elements)
    }
}

/// Closure of `generators` under composition.
pub fn closure(degree: usize, generators: &[Perm]) -> PermGroup {
    for g in generators {
        assert_eq!(g.degree(), degree, "generator degree mismatch");
    }
    let id = Perm::identity(degree);
    let mut seen: HashSet<Perm> = HashSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    let mut elements = Vec::new();
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = x.compose(g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
        elements.push(x);
    }
    PermGroup::from_closed_set(degree, generators.to_vec(), elements)
}

pub(crate) fn orbits_of(degree: usize, generators: &[Perm]) -> Vec<Vec<usize>> {
    let mut label = vec![usize::MAX; degree];
    let mut out = Vec::new();
    for start in 0..degree {
        if label[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut orbit = vec![start];
        label[start] = id;
        let mut k = 0;
        while k < orbit.len() {
            let x = orbit[k];
            for g in generators {
                let y = g.apply(x);
                if label[y] == usize::MAX {
                    label[y] = id;
                    orbit.push(y);
                }
            }
            k += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

pub(crate) fn small_generating_set(degree: usize, elements: &[Perm]) -> Vec<Perm> {
    let mut by_order: Vec<&Perm> = elements.iter().collect();
    by_order.sort_by_key(|p| std::cmp::Reverse(p.order()));
    let mut gens: Vec<Perm> = Vec::new();
    let mut current: HashSet<Perm> = HashSet::from([Perm::identity(degree)]);
    for p in by_order {
        if current.len() == elements.len() {
            break;
        }
        if current.contains(p) {
            continue;
        }
        gens.push(p.clone());
        current = closure(degree, &gens).elements.into_iter().collect();
    }
    gens
}

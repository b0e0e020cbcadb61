//! The action of `Ā₊ ⋊ Ā∘` on `A` by `(a,b)c = a + ρ_b(c) - a`, its orbit
//! statistics, and the class equation of two-sided braces.

use std::collections::BTreeMap;

use crate::brace::SkewBrace;
use crate::group::CayleyGroup;
use crate::perm::Perm;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrbitError {
    #[error("the given pairs do not form a subgroup of the action group")]
    NotASubgroup,
    #[error("the brace is not two-sided")]
    NotTwoSided,
}

/// `Ā₊ ⋊ Ā∘` with `Ā = A/Ann(A)`. The pair `(a, b)` of quotient labels
/// is stored at `a·|Ā| + b`.
#[derive(Debug, Clone)]
pub struct ActionGroup {
    pub quotient: SkewBrace,
    pub lifts: Vec<usize>,
    actions: Vec<Perm>,
}

impl ActionGroup {
    /// `|Ā|²`.
    pub fn order(&self) -> usize {
        self.actions.len()
    }

    pub fn pair(&self, a: usize, b: usize) -> usize {
        a * self.quotient.order() + b
    }

    /// `(a,b)(c,d) = (a + ρ̄_b(c), b∘d)`.
    pub fn mul(&self, p: usize, q: usize) -> usize {
        let k = self.quotient.order();
        let (a, b, c, d) = (p / k, p % k, q / k, q % k);
        let bar = &self.quotient;
        self.pair(bar.add(a, bar.rho(b, c)), bar.circ(b, d))
    }

    /// The permutation of `A` by which `p` acts.
    pub fn action(&self, p: usize) -> &Perm {
        &self.actions[p]
    }

    pub fn to_cayley(&self) -> CayleyGroup {
        let m = self.order();
        CayleyGroup::from_raw(m, (0..m * m).map(|t| self.mul(t / m, t % m)).collect())
    }

    /// The pairs of `sel`, checked to form a subgroup when given explicitly.
    pub fn selected(&self, sel: &HSelector) -> Result<Vec<usize>, OrbitError> {
        let k = self.quotient.order();
        let bar = &self.quotient;
        match sel {
            HSelector::Lambda => Ok((0..k).map(|a| self.pair(bar.neg(a), a)).collect()),
            HSelector::Rho => Ok((0..k).map(|a| self.pair(0, a)).collect()),
            HSelector::Full => Ok((0..self.order()).collect()),
            HSelector::Explicit(pairs) => {
                if pairs.iter().any(|&(a, b)| a >= k || b >= k) {
                    return Err(OrbitError::NotASubgroup);
                }
                let mut member = vec![false; self.order()];
                for &(a, b) in pairs {
                    member[self.pair(a, b)] = true;
                }
                let list: Vec<usize> = (0..self.order()).filter(|&p| member[p]).collect();
                let closed = member[0]
                    && list
                        .iter()
                        .all(|&p| list.iter().all(|&q| member[self.mul(p, q)]));
                if closed {
                    Ok(list)
                } else {
                    Err(OrbitError::NotASubgroup)
                }
            }
        }
    }
}

/// Subgroups of the action group: `{(-ā, ā)}` (its orbits are the
/// λ-orbits), `{(0̄, ā)}` (ρ-orbits), everything, or an explicit list of
/// pairs of quotient labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HSelector {
    Lambda,
    Rho,
    Full,
    Explicit(Vec<(usize, usize)>),
}

pub fn action_group(a: &SkewBrace) -> ActionGroup {
    let n = a.order();
    let ann = a.annihilator();
    let (quotient, proj) = a.quotient(&ann).expect("annihilator is an ideal");
    let k = quotient.order();
    let mut lifts = vec![usize::MAX; k];
    for x in (0..n).rev() {
        lifts[proj[x]] = x;
    }
    let act = |x: usize, y: usize, c: usize| a.sub(a.add(x, a.rho(y, c)), x);
    let mut actions = Vec::with_capacity(k * k);
    for p in 0..k * k {
        let (x, y) = (lifts[p / k], lifts[p % k]);
        let images: Vec<usize> = (0..n).map(|c| act(x, y, c)).collect();
        for &z in ann.elements() {
            for &w in ann.elements() {
                let (x2, y2) = (a.add(x, z), a.add(y, w));
                assert!(
                    (0..n).all(|c| act(x2, y2, c) == images[c]),
                    "the action does not depend on annihilator representatives"
                );
            }
        }
        actions.push(Perm::from_images(images).expect("action by automorphisms"));
    }
    ActionGroup {
        quotient,
        lifts,
        actions,
    }
}

fn orbits_under(n: usize, maps: &[&Perm]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        seen[x] = true;
        let mut orbit = vec![x];
        let mut i = 0;
        while i < orbit.len() {
            let y = orbit[i];
            for p in maps {
                let z = p.apply(y);
                if !seen[z] {
                    seen[z] = true;
                    orbit.push(z);
                }
            }
            i += 1;
        }
        out.push(orbit);
    }
    out
}

/// `{orbit size: number of orbits}` for the action of `sel` on `A`.
pub fn h_orbit_stats(a: &SkewBrace, sel: &HSelector) -> Result<BTreeMap<usize, usize>, OrbitError> {
    let g = action_group(a);
    let h = g.selected(sel)?;
    let maps: Vec<&Perm> = h.iter().map(|&p| g.action(p)).collect();
    let mut stats = BTreeMap::new();
    for orbit in orbits_under(a.order(), &maps) {
        *stats.entry(orbit.len()).or_insert(0) += 1;
    }
    Ok(stats)
}

/// `|B| = |Ann(B)| + Σ nᵢ` for the action `d ↦ a + ρ_b(c∘d∘c') - a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassEquation {
    pub ann_size: usize,
    /// Sizes of the orbits with more than one element, ascending.
    pub orbit_sizes: Vec<usize>,
}

fn prime_power_base(n: usize) -> Option<usize> {
    let p = (2..=n).find(|p| n.is_multiple_of(*p))?;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    (m == 1).then_some(p)
}

fn is_power_of(mut x: usize, p: usize) -> bool {
    while x.is_multiple_of(p) {
        x /= p;
    }
    x == 1
}

pub fn two_sided_class_equation(b: &SkewBrace) -> Result<ClassEquation, OrbitError> {
    if !b.is_two_sided() {
        return Err(OrbitError::NotTwoSided);
    }
    let n = b.order();
    let mut seen = vec![false; n];
    let mut singletons = Vec::new();
    let mut orbit_sizes = Vec::new();
    for d in 0..n {
        if seen[d] {
            continue;
        }
        seen[d] = true;
        let mut orbit = vec![d];
        let mut i = 0;
        while i < orbit.len() {
            let e = orbit[i];
            for c in 0..n {
                let conj = b.circ(b.circ(c, e), b.circ_inv(c));
                for y in 0..n {
                    let r = b.rho(y, conj);
                    for x in 0..n {
                        let z = b.sub(b.add(x, r), x);
                        if !seen[z] {
                            seen[z] = true;
                            orbit.push(z);
                        }
                    }
                }
            }
            i += 1;
        }
        if orbit.len() == 1 {
            singletons.push(d);
        } else {
            orbit_sizes.push(orbit.len());
        }
    }
    orbit_sizes.sort_unstable();
    let ann = b.characteristic_subsets().annihilator;
    assert_eq!(
        singletons, ann,
        "fixed points of the action are the annihilator"
    );
    if let Some(p) = prime_power_base(n) {
        assert!(
            orbit_sizes.iter().all(|&s| is_power_of(s, p)),
            "orbit sizes are powers of {p}"
        );
        assert!(
            ann.len() > 1,
            "two-sided braces of prime-power order have a non-trivial annihilator"
        );
    }
    Ok(ClassEquation {
        ann_size: ann.len(),
        orbit_sizes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::make_cnd;
    use crate::group::named::*;

    #[test]
    fn action_group_orders() {
        assert_eq!(action_group(&SkewBrace::trivial(&cyclic(2))).order(), 1);
        let g = action_group(&make_cnd(4, 2).unwrap());
        assert_eq!(g.order(), 4);
        assert_eq!(g.action(0).degree(), 4);
        let cay = g.to_cayley();
        assert!(crate::group::validate_group(&cay.rows()).is_ok());
    }

    #[test]
    fn action_is_a_homomorphism() {
        let b = make_cnd(8, 2).unwrap();
        let g = action_group(&b);
        for p in 0..g.order() {
            for q in 0..g.order() {
                assert_eq!(g.action(p).compose(g.action(q)), *g.action(g.mul(p, q)));
            }
        }
    }

    #[test]
    fn lambda_orbits_of_trivial_brace_are_points() {
        let t = SkewBrace::trivial(&symmetric(3));
        let stats = h_orbit_stats(&t, &HSelector::Lambda).unwrap();
        assert_eq!(stats, BTreeMap::from([(1, 6)]));
    }

    #[test]
    fn explicit_selector_must_be_a_subgroup() {
        let c = make_cnd(4, 2).unwrap();
        let err = h_orbit_stats(&c, &HSelector::Explicit(vec![(0, 0), (1, 0), (0, 1)]));
        assert_eq!(err.unwrap_err(), OrbitError::NotASubgroup);
        assert!(h_orbit_stats(&c, &HSelector::Explicit(vec![(0, 0), (1, 1)])).is_ok());
    }

    #[test]
    fn class_equations() {
        let c = two_sided_class_equation(&make_cnd(4, 2).unwrap()).unwrap();
        assert_eq!(
            c,
            ClassEquation {
                ann_size: 2,
                orbit_sizes: vec![2]
            }
        );
        let t = two_sided_class_equation(&SkewBrace::trivial(&cyclic(2))).unwrap();
        assert_eq!(
            t,
            ClassEquation {
                ann_size: 2,
                orbit_sizes: vec![]
            }
        );
    }
}

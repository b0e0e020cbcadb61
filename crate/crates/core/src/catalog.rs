//! One representative of every isomorphism class of groups of order at
//! most [`MAX_CATALOG_ORDER`].
//!
//! Every group of order below 60 is solvable, so it has a normal subgroup
//! `N` of prime index `p`. Picking `g` outside `N`, the group is recovered
//! from `N`, the automorphism `α = (x ↦ g x g⁻¹)` and `z = gᵖ ∈ N`, subject
//! to `α(z) = z` and `αᵖ = (x ↦ z x z⁻¹)`. Running over all such triples
//! for every `N` in the catalog of order `n/p` yields every group of order
//! `n`; duplicates are removed with the isomorphism test.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::group::{are_isomorphic, automorphism_group, CayleyGroup};
use crate::perm::Perm;

pub const MAX_CATALOG_ORDER: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("no group catalog for order {0} (supported: 1..={MAX_CATALOG_ORDER})")]
    UnsupportedOrder(usize),
}

fn cache() -> &'static Mutex<HashMap<usize, Vec<CayleyGroup>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<CayleyGroup>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// All groups of order `n` up to isomorphism: abelian groups first, then
/// by decreasing exponent, then by element-order profile.
pub fn catalog_groups(n: usize) -> Result<Vec<CayleyGroup>, CatalogError> {
    if n == 0 || n > MAX_CATALOG_ORDER {
        return Err(CatalogError::UnsupportedOrder(n));
    }
    if let Some(hit) = cache().lock().unwrap().get(&n) {
        return Ok(hit.clone());
    }
    let groups = build(n)?;
    cache().lock().unwrap().insert(n, groups.clone());
    Ok(groups)
}

fn build(n: usize) -> Result<Vec<CayleyGroup>, CatalogError> {
    if n == 1 {
        return Ok(vec![crate::group::named::trivial()]);
    }
    let mut found: Vec<(Key, CayleyGroup)> = Vec::new();
    for p in prime_divisors(n) {
        for base in catalog_groups(n / p)? {
            for g in cyclic_extensions(&base, p) {
                let key = Key::of(&g);
                let dup = found
                    .iter()
                    .any(|(k, h)| *k == key && are_isomorphic(&g, h).is_some());
                if !dup {
                    found.push((key, g));
                }
            }
        }
    }
    found.sort_by_key(|a| a.0.sort_key());
    Ok(found.into_iter().map(|(_, g)| g).collect())
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// All groups `⟨N, g⟩` with `N` normal of index `p`, one per admissible
/// `(α, z)` pair. Element `x·gⁱ` is stored at `i·|N| + x`.
fn cyclic_extensions(base: &CayleyGroup, p: usize) -> Vec<CayleyGroup> {
    let m = base.order();
    let aut = automorphism_group(base);
    let mut out = Vec::new();
    for alpha in aut.elements() {
        let mut powers = vec![Perm::identity(m)];
        for i in 1..=p {
            powers.push(alpha.compose(&powers[i - 1]));
        }
        for z in 0..m {
            if alpha.apply(z) != z {
                continue;
            }
            if (0..m).any(|x| powers[p].apply(x) != base.conj(z, x)) {
                continue;
            }
            let n = m * p;
            let table: Vec<Vec<usize>> = (0..n)
                .map(|u| {
                    (0..n)
                        .map(|v| {
                            let (x, i) = (u % m, u / m);
                            let (y, j) = (v % m, v / m);
                            let mut w = base.op(x, powers[i].apply(y));
                            let mut k = i + j;
                            if k >= p {
                                w = base.op(w, z);
                                k -= p;
                            }
                            k * m + w
                        })
                        .collect()
                })
                .collect();
            let g = crate::group::validate_group(&table).expect("cyclic extension is a group");
            out.push(g);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Key {
    abelian: bool,
    exponent: usize,
    orders: Vec<usize>,
    classes: Vec<(usize, usize)>,
    center: usize,
    derived: usize,
}

impl Key {
    fn of(g: &CayleyGroup) -> Key {
        let mut orders = g.element_orders();
        orders.sort_unstable();
        let ord = g.element_orders();
        let mut classes: Vec<(usize, usize)> = g
            .conjugacy_class_sizes()
            .into_iter()
            .zip(ord)
            .map(|(c, o)| (o, c))
            .collect();
        classes.sort_unstable();
        Key {
            abelian: g.is_abelian(),
            exponent: g.exponent(),
            orders,
            classes,
            center: g.center().len(),
            derived: g.derived_subgroup().len(),
        }
    }

    fn sort_key(
        &self,
    ) -> (
        bool,
        std::cmp::Reverse<usize>,
        Vec<usize>,
        Vec<(usize, usize)>,
    ) {
        (
            !self.abelian,
            std::cmp::Reverse(self.exponent),
            self.orders.clone(),
            self.classes.clone(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named::*;

    #[test]
    fn order_one_and_primes() {
        assert_eq!(catalog_groups(1).unwrap().len(), 1);
        assert_eq!(catalog_groups(7).unwrap().len(), 1);
        assert_eq!(catalog_groups(0), Err(CatalogError::UnsupportedOrder(0)));
        assert_eq!(catalog_groups(31), Err(CatalogError::UnsupportedOrder(31)));
    }

    #[test]
    fn order_eight_matches_named_groups() {
        let cat = catalog_groups(8).unwrap();
        assert_eq!(cat.len(), 5);
        let named = [
            cyclic(8),
            direct_product(&cyclic(4), &cyclic(2)),
            elementary_abelian(2, 3),
            dihedral(8),
            quaternion(),
        ];
        for (g, h) in cat.iter().zip(&named) {
            assert!(are_isomorphic(g, h).is_some());
        }
    }

    #[test]
    fn order_27_matches_named_groups() {
        let cat = catalog_groups(27).unwrap();
        assert_eq!(cat.len(), 5);
        let named = [
            cyclic(27),
            direct_product(&cyclic(9), &cyclic(3)),
            elementary_abelian(3, 3),
            extraspecial_exponent_p2(3),
            heisenberg(3),
        ];
        for (g, h) in cat.iter().zip(&named) {
            assert!(are_isomorphic(g, h).is_some());
        }
    }

    use crate::group::direct_product;
}

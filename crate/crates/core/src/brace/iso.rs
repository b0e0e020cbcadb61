use super::{BraceError, SkewBrace};
use crate::group::CayleyGroup;
use crate::perm::{Perm, PermGroup};
use crate::search::{for_each_isomorphism, Colouring};

/// Sizes of the orbits of `A` under a family of maps `f(a, ·)` that forms a
/// group action; `out[x]` is the size of the orbit of `x`.
pub(crate) fn orbit_sizes(n: usize, f: impl Fn(usize, usize) -> usize) -> Vec<usize> {
    let mut label = vec![usize::MAX; n];
    let mut sizes = Vec::new();
    for x in 0..n {
        if label[x] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        label[x] = id;
        let mut orbit = vec![x];
        let mut k = 0;
        while k < orbit.len() {
            let y = orbit[k];
            for a in 0..n {
                let z = f(a, y);
                if label[z] == usize::MAX {
                    label[z] = id;
                    orbit.push(z);
                }
            }
            k += 1;
        }
        sizes.push(orbit.len());
    }
    label.into_iter().map(|l| sizes[l]).collect()
}

/// Per-element invariants preserved by brace isomorphisms.
pub(crate) fn brace_colouring(b: &SkewBrace) -> Vec<u64> {
    let n = b.order();
    let add_col = crate::group::group_colouring(b.additive_group());
    let circ_col = crate::group::group_colouring(b.multiplicative_group());
    let lam = orbit_sizes(n, |a, x| b.lambda(a, x));
    let rho = orbit_sizes(n, |a, x| b.rho(a, x));
    let cs = b.characteristic_subsets();
    let pack = |c: u64| ((c >> 32) << 8 | (c & 0xff)) & 0xffff;
    (0..n)
        .map(|x| {
            let soc = cs.socle.binary_search(&x).is_ok() as u64;
            let ann = cs.annihilator.binary_search(&x).is_ok() as u64;
            pack(add_col[x])
                | pack(circ_col[x]) << 16
                | (lam[x] as u64 & 0xff) << 32
                | (rho[x] as u64 & 0xff) << 40
                | soc << 48
                | ann << 49
        })
        .collect()
}

/// Calls `visit` on every brace isomorphism `src → dst` until it returns
/// `false`; returns `false` when stopped early.
pub(crate) fn for_each_brace_isomorphism(
    src: &SkewBrace,
    dst: &SkewBrace,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if src.order() != dst.order() {
        return true;
    }
    let Some(colours) = Colouring::new(brace_colouring(src), brace_colouring(dst)) else {
        return true;
    };
    let n = src.order();
    let circ_gens = src.multiplicative_group().generating_set();
    for_each_isomorphism(
        src.additive_group(),
        dst.additive_group(),
        &colours,
        &mut |f| {
            let hom = (0..n).all(|a| {
                circ_gens
                    .iter()
                    .all(|&g| f[src.circ(a, g)] == dst.circ(f[a], f[g]))
            });
            if hom {
                visit(f)
            } else {
                true
            }
        },
    )
}

/// A brace isomorphism `a → b`, if one exists.
pub fn brace_isomorphic(a: &SkewBrace, b: &SkewBrace) -> Option<Perm> {
    let mut found = None;
    for_each_brace_isomorphism(a, b, &mut |f| {
        found = Some(Perm::from_images(f.to_vec()).expect("bijection"));
        false
    });
    found
}

/// The brace on `add` whose `∘` comes from a regular subgroup `g` of
/// `Hol(add)`: `a ∘ b = g_a(b)` with `g_a` the element sending `0` to `a`.
pub fn brace_from_regular_subgroup(
    add: &CayleyGroup,
    g: &PermGroup,
) -> Result<SkewBrace, BraceError> {
    let n = add.order();
    if g.degree() != n || !g.is_regular() {
        return Err(BraceError::NotRegular);
    }
    let mut by_zero: Vec<Option<&Perm>> = vec![None; n];
    for p in g.elements() {
        by_zero[p.apply(0)] = Some(p);
    }
    let mut table = Vec::with_capacity(n * n);
    for slot in &by_zero {
        let p = slot.ok_or(BraceError::NotRegular)?;
        table.extend((0..n).map(|b| p.apply(b)));
    }
    let circ = CayleyGroup::from_raw(n, table);
    SkewBrace::from_groups(add.clone(), circ)
}

//! Backtracking over group isomorphisms, shared by the group, brace and
//! isoclinism searches.
//!
//! An isomorphism is pinned down by the images of a generating set; each
//! choice is propagated along the Cayley graph of the subgroup generated
//! so far, so a conflict or a colour mismatch prunes the branch at once.

use std::collections::HashMap;

use crate::group::CayleyGroup;

const UNSET: usize = usize::MAX;

/// Per-element invariants of the source and target. Isomorphisms must
/// map every element to one of the same colour.
pub(crate) struct Colouring {
    src: Vec<u64>,
    dst: Vec<u64>,
    by_colour: HashMap<u64, Vec<usize>>,
}

impl Colouring {
    /// `None` when the colour multisets differ, i.e. no isomorphism exists.
    pub(crate) fn new(src: Vec<u64>, dst: Vec<u64>) -> Option<Self> {
        let mut a = src.clone();
        let mut b = dst.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return None;
        }
        let mut by_colour: HashMap<u64, Vec<usize>> = HashMap::new();
        for (x, &c) in dst.iter().enumerate() {
            by_colour.entry(c).or_default().push(x);
        }
        Some(Colouring {
            src,
            dst,
            by_colour,
        })
    }
}

struct State<'a> {
    src: &'a CayleyGroup,
    dst: &'a CayleyGroup,
    colours: &'a Colouring,
    gens: Vec<usize>,
    images: Vec<usize>,
    f: Vec<usize>,
    used: Vec<bool>,
    domain: Vec<usize>,
}

/// Calls `visit` with every isomorphism `src → dst` (as an image array)
/// that respects the colouring, until `visit` returns `false`. Returns
/// `false` if the enumeration was stopped early.
pub(crate) fn for_each_isomorphism(
    src: &CayleyGroup,
    dst: &CayleyGroup,
    colours: &Colouring,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let n = src.order();
    if n != dst.order() || colours.src[0] != colours.dst[0] {
        return true;
    }
    let mut gens = src.generating_set();
    // generators with few candidate images first
    gens.sort_by_key(|&g| colours.by_colour.get(&colours.src[g]).map_or(0, Vec::len));
    let gens = reduce_generators(src, gens);
    let mut st = State {
        src,
        dst,
        colours,
        images: Vec::with_capacity(gens.len()),
        gens,
        f: vec![UNSET; n],
        used: vec![false; n],
        domain: vec![0],
    };
    st.f[0] = 0;
    st.used[0] = true;
    recurse(&mut st, visit)
}

/// Drops generators already contained in the span of the earlier ones.
fn reduce_generators(g: &CayleyGroup, gens: Vec<usize>) -> Vec<usize> {
    let mut kept: Vec<usize> = Vec::new();
    let mut span = vec![0usize];
    for x in gens {
        if span.binary_search(&x).is_ok() {
            continue;
        }
        kept.push(x);
        span = g.subgroup_generated(&kept);
        if span.len() == g.order() {
            break;
        }
    }
    kept
}

fn recurse(st: &mut State<'_>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    let level = st.images.len();
    if level == st.gens.len() {
        debug_assert_eq!(st.domain.len(), st.src.order());
        return visit(&st.f);
    }
    let g = st.gens[level];
    let Some(cands) = st.colours.by_colour.get(&st.colours.src[g]) else {
        return true;
    };
    let cands = cands.clone();
    for h in cands {
        if st.used[h] {
            continue;
        }
        let mark = st.domain.len();
        st.images.push(h);
        let ok = extend(st, level);
        let keep_going = !ok || recurse(st, visit);
        for &x in &st.domain[mark..] {
            st.used[st.f[x]] = false;
            st.f[x] = UNSET;
        }
        st.domain.truncate(mark);
        st.images.pop();
        if !keep_going {
            return false;
        }
    }
    true
}

/// Propagates the images of `gens[..=level]` over the subgroup they
/// generate. Returns `false` on a conflict.
fn extend(st: &mut State<'_>, level: usize) -> bool {
    let g = st.gens[level];
    let h = st.images[level];
    if st.f[g] != UNSET {
        return st.f[g] == h;
    }
    st.f[g] = h;
    st.used[h] = true;
    st.domain.push(g);
    let mut k = 0;
    while k < st.domain.len() {
        let x = st.domain[k];
        let fx = st.f[x];
        for j in 0..=level {
            let y = st.src.op(x, st.gens[j]);
            let fy = st.dst.op(fx, st.images[j]);
            match st.f[y] {
                UNSET => {
                    if st.used[fy] || st.colours.src[y] != st.colours.dst[fy] {
                        return false;
                    }
                    st.f[y] = fy;
                    st.used[fy] = true;
                    st.domain.push(y);
                }
                prev if prev != fy => return false,
                _ => {}
            }
        }
        k += 1;
    }
    true
}

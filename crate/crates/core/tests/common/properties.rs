//! Checks shared by the property tests and the acceptance run. Each
//! returns a description of the first failure.

use std::collections::{BTreeMap, BTreeSet};

use skewbrace::brace::{make_cnd, BraceSubset, SkewBrace};
use skewbrace::census::BraceRecord;
use skewbrace::isoclinism::{
    action_group, are_isoclinic, corresponding_subbrace, find_isoclinism, fingerprint,
    groups_isoclinic, h_orbit_stats, is_stem, partition_classes, phi_maps,
    two_sided_class_equation, verify_isoclinism, ActionGroup, HSelector, Isoclinism, Prepared,
};

pub type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Isoclinism search that ignores the fingerprint filter, so invariance of
/// the fingerprint is tested rather than assumed.
pub fn blind_isoclinism(pa: &Prepared, pb: &Prepared) -> Option<Isoclinism> {
    if pa.phi.quotient_order() != pb.phi.quotient_order()
        || pa.phi.commutator.order() != pb.phi.commutator.order()
    {
        return None;
    }
    let mut pb = pb.clone();
    pb.fingerprint = pa.fingerprint.clone();
    find_isoclinism(pa, &pb)
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

/// All isoclinic pairs `(i, j, witness)` with `i < j` found by the blind search.
pub fn isoclinic_pairs(braces: &[SkewBrace]) -> Vec<(usize, usize, Isoclinism)> {
    let prepared: Vec<Prepared> = braces.iter().map(Prepared::new).collect();
    let mut out = Vec::new();
    for i in 0..braces.len() {
        for j in i + 1..braces.len() {
            if let Some(w) = blind_isoclinism(&prepared[i], &prepared[j]) {
                out.push((i, j, w));
            }
        }
    }
    out
}

fn partition_of(n: usize, pairs: &[(usize, usize, Isoclinism)]) -> BTreeSet<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    for (i, j, _) in pairs {
        let (ri, rj) = (find(&mut parent, *i), find(&mut parent, *j));
        parent[ri.max(rj)] = ri.min(rj);
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..n {
        classes.entry(find(&mut parent, x)).or_default().push(x);
    }
    classes.into_values().collect()
}

/// Every blind witness verifies; isoclinic braces agree on triviality,
/// two-sidedness, right nilpotency and the whole fingerprint; the blind
/// classes are the classes of `partition_classes`.
pub fn flag_invariance(braces: &[SkewBrace], pairs: &[(usize, usize, Isoclinism)]) -> Check {
    for (i, j, w) in pairs {
        let (a, b) = (&braces[*i], &braces[*j]);
        verify_isoclinism(a, b, w).map_err(|e| format!("witness {i} ~ {j}: {e}"))?;
        ensure(a.is_trivial() == b.is_trivial(), || {
            format!("triviality differs on {i} ~ {j}")
        })?;
        ensure(a.is_two_sided() == b.is_two_sided(), || {
            format!("two-sidedness differs on {i} ~ {j}")
        })?;
        ensure(a.is_right_nilpotent() == b.is_right_nilpotent(), || {
            format!("right nilpotency differs on {i} ~ {j}")
        })?;
        ensure(fingerprint(a) == fingerprint(b), || {
            format!("fingerprints differ on {i} ~ {j}")
        })?;
    }
    let blind = partition_of(braces.len(), pairs);
    let found: BTreeSet<Vec<usize>> = partition_classes(braces)
        .into_iter()
        .map(|c| {
            let mut m = c.members;
            m.sort_unstable();
            m
        })
        .collect();
    ensure(blind == found, || {
        "blind partition differs from partition_classes".into()
    })
}

/// Reflexivity, symmetry and transitivity of witnesses, and the structure
/// each witness carries: `ξ(Soc/Ann) = Soc/Ann`, `ξ × ξ` an isomorphism of
/// the action groups, isoclinic additive and multiplicative groups, equal
/// orders of isoclinic stems.
pub fn witness_structure(braces: &[SkewBrace], pairs: &[(usize, usize, Isoclinism)]) -> Check {
    for (i, a) in braces.iter().enumerate() {
        let phi = phi_maps(a).map_err(|e| e.to_string())?;
        let id = Isoclinism::identity(phi.quotient_order(), phi.commutator.order());
        verify_isoclinism(a, a, &id).map_err(|e| format!("identity on {i}: {e}"))?;
    }
    let mut by_first: BTreeMap<usize, Vec<(usize, &Isoclinism)>> = BTreeMap::new();
    for (i, j, w) in pairs {
        let (a, b) = (&braces[*i], &braces[*j]);
        verify_isoclinism(b, a, &w.inverse()).map_err(|e| format!("inverse of {i} ~ {j}: {e}"))?;
        by_first.entry(*i).or_default().push((*j, w));

        let (pa, pb) = (phi_maps(a).unwrap(), phi_maps(b).unwrap());
        let image = |x: &BraceSubset<'_>, proj: &[usize]| -> BTreeSet<usize> {
            x.elements().iter().map(|&e| proj[e]).collect()
        };
        let soc_a: BTreeSet<usize> = image(&a.socle(), &pa.projection)
            .iter()
            .map(|&x| w.xi[x])
            .collect();
        ensure(soc_a == image(&b.socle(), &pb.projection), || {
            format!("ξ moves Soc/Ann on {i} ~ {j}")
        })?;

        let (ga, gb) = (action_group(a), action_group(b));
        let k = ga.quotient.order();
        let pair_map = |p: usize| gb.pair(w.xi[p / k], w.xi[p % k]);
        for p in 0..ga.order() {
            for q in 0..ga.order() {
                ensure(
                    pair_map(ga.mul(p, q)) == gb.mul(pair_map(p), pair_map(q)),
                    || format!("ξ × ξ is not a homomorphism of action groups on {i} ~ {j}"),
                )?;
            }
        }

        ensure(
            groups_isoclinic(a.additive_group(), b.additive_group()).is_some(),
            || format!("additive groups of {i} ~ {j} are not isoclinic"),
        )?;
        ensure(
            groups_isoclinic(a.multiplicative_group(), b.multiplicative_group()).is_some(),
            || format!("multiplicative groups of {i} ~ {j} are not isoclinic"),
        )?;
        if is_stem(a) && is_stem(b) {
            ensure(a.order() == b.order(), || {
                format!("isoclinic stems {i}, {j} differ in order")
            })?;
        }
    }
    // i ~ j and j ~ l compose to a witness for i ~ l
    for (i, list) in &by_first {
        for (j, w1) in list {
            for (l, w2) in by_first.get(j).into_iter().flatten() {
                verify_isoclinism(&braces[*i], &braces[*l], &w1.then(w2))
                    .map_err(|e| format!("composite {i} ~ {j} ~ {l}: {e}"))?;
            }
        }
    }
    Ok(())
}

/// `φ₊`, `φ∗` and `φ∘` agree with the pointwise maps on every pair of
/// elements, whatever the representatives.
pub fn phi_well_defined(braces: &[SkewBrace]) -> Check {
    for (i, a) in braces.iter().enumerate() {
        let phi = phi_maps(a).map_err(|e| format!("brace {i}: {e}"))?;
        let p = &phi.projection;
        for x in 0..a.order() {
            for y in 0..a.order() {
                let (u, v) = (p[x], p[y]);
                ensure(
                    phi.plus(u, v) == a.bracket_add(x, y)
                        && phi.star(u, v) == a.star(x, y)
                        && phi.circ(u, v) == a.bracket_circ(x, y),
                    || format!("φ on brace {i} depends on representatives at ({x}, {y})"),
                )?;
            }
        }
    }
    Ok(())
}

fn r(a: &SkewBrace, x: usize, y: usize) -> usize {
    a.add(a.add(a.neg(y), a.neg(x)), a.circ(x, y))
}

fn l(a: &SkewBrace, x: usize, y: usize) -> usize {
    a.sub(a.sub(a.circ(x, y), y), x)
}

/// The `r`/`l` decompositions, the `[a,b]∘` decomposition, the two-sided
/// defect and the conjugation defect, on every pair and triple.
pub fn derived_identities(braces: &[SkewBrace]) -> Check {
    for (i, a) in braces.iter().enumerate() {
        let n = a.order();
        let sum = |xs: &[usize]| xs.iter().fold(0, |acc, &x| a.add(acc, x));
        for x in 0..n {
            for y in 0..n {
                let rd = a.add(
                    a.bracket_add(a.neg(y), a.add(a.neg(x), a.circ(x, y))),
                    a.star(x, y),
                );
                ensure(r(a, x, y) == rd, || {
                    format!("r decomposition fails on brace {i} at ({x}, {y})")
                })?;
                let ld = a.add(
                    a.bracket_add(a.sub(a.circ(x, y), y), a.neg(x)),
                    a.star(x, y),
                );
                ensure(l(a, x, y) == ld, || {
                    format!("l decomposition fails on brace {i} at ({x}, {y})")
                })?;

                let (xi, yi) = (a.circ_inv(x), a.circ_inv(y));
                let xy_inv = a.circ(xi, yi);
                let rhs = sum(&[
                    a.bracket_add(x, y),
                    a.neg(l(a, y, x)),
                    a.neg(r(a, a.circ(y, x), xy_inv)),
                    r(a, y, xy_inv),
                    r(a, x, a.circ(y, xy_inv)),
                ]);
                ensure(a.bracket_circ(x, y) == rhs, || {
                    format!("[a,b]∘ decomposition fails on brace {i} at ({x}, {y})")
                })?;
            }
        }
        for x in 0..n {
            for y in 0..n {
                for c in 0..n {
                    let xy = a.add(x, y);
                    let lhs = sum(&[a.circ(xy, c), a.neg(a.circ(y, c)), c, a.neg(a.circ(x, c))]);
                    let yc = a.circ(y, c);
                    let rhs = sum(&[
                        l(a, xy, c),
                        a.neg(l(a, y, c)),
                        a.neg(a.bracket_add(x, a.sub(a.sub(yc, c), y))),
                        a.neg(l(a, x, c)),
                    ]);
                    ensure(lhs == rhs, || {
                        format!("two-sided defect fails on brace {i} at ({x}, {y}, {c})")
                    })?;

                    let acted = a.sub(a.add(x, a.rho(y, c)), x);
                    let rhs = sum(&[
                        a.bracket_add(x, a.sub(yc, y)),
                        a.bracket_add(yc, a.neg(y)),
                        a.star(y, c),
                    ]);
                    ensure(a.sub(acted, c) == rhs, || {
                        format!("conjugation defect fails on brace {i} at ({x}, {y}, {c})")
                    })?;
                }
            }
        }
    }
    Ok(())
}

/// For every ideal `K`: `A/K ~ A/(K ∩ A′)`, and `A ~ A/K` exactly when
/// `K ∩ A′ = 0`.
pub fn quotients_by_ideals(braces: &[SkewBrace]) -> Check {
    for (i, a) in braces.iter().enumerate() {
        let comm = a.commutator_ideal().map_err(|e| e.to_string())?;
        for k in a.ideals() {
            let meet = k.intersection(&comm);
            let (q1, _) = a.quotient(&k).map_err(|e| e.to_string())?;
            let (q2, _) = a.quotient(&meet).map_err(|e| e.to_string())?;
            let w = are_isoclinic(&q1, &q2)
                .ok_or_else(|| format!("brace {i}: A/K ≁ A/(K ∩ A′) for K = {:?}", k.elements()))?;
            verify_isoclinism(&q1, &q2, &w).map_err(|e| format!("brace {i}: {e}"))?;
            ensure(are_isoclinic(a, &q1).is_some() == meet.is_zero(), || {
                format!(
                    "brace {i}: A ~ A/K disagrees with K ∩ A′ = 0 for K = {:?}",
                    k.elements()
                )
            })?;
        }
    }
    Ok(())
}

/// For every sub skew brace `K`: `K ~ K + Ann(A)`, and `A ~ K` exactly
/// when `K + Ann(A) = A`.
pub fn subbraces_and_annihilator(braces: &[SkewBrace]) -> Check {
    for (i, a) in braces.iter().enumerate() {
        let ann = a.annihilator();
        for k in a.sub_braces_containing(&BraceSubset::zero(a)) {
            let ka = k.sum_set(&ann);
            ensure(ka.is_subbrace(), || {
                format!("brace {i}: K + Ann is not a sub skew brace")
            })?;
            let (kt, _) = a.subbrace_table(&k).map_err(|e| e.to_string())?;
            let (kat, _) = a.subbrace_table(&ka).map_err(|e| e.to_string())?;
            ensure(are_isoclinic(&kt, &kat).is_some(), || {
                format!("brace {i}: K ≁ K + Ann for K = {:?}", k.elements())
            })?;
            ensure(are_isoclinic(a, &kt).is_some() == ka.is_whole(), || {
                format!(
                    "brace {i}: A ~ K disagrees with K + Ann = A for K = {:?}",
                    k.elements()
                )
            })?;
        }
    }
    Ok(())
}

/// Each witness maps the sub skew braces over `Ann(A)` bijectively onto
/// those over `Ann(B)`, and corresponding ones are isoclinic.
pub fn lattice_correspondence(braces: &[SkewBrace], pairs: &[(usize, usize, Isoclinism)]) -> Check {
    for (i, j, w) in pairs {
        let (a, b) = (&braces[*i], &braces[*j]);
        let over_a = a.sub_braces_containing(&a.annihilator());
        let over_b: BTreeSet<Vec<usize>> = b
            .sub_braces_containing(&b.annihilator())
            .iter()
            .map(|s| s.elements().to_vec())
            .collect();
        let mut images = BTreeSet::new();
        for a1 in &over_a {
            let b1 = corresponding_subbrace(a, b, w, a1).map_err(|e| e.to_string())?;
            ensure(b1.is_subbrace(), || {
                format!("{i} ~ {j}: image is not a sub skew brace")
            })?;
            let (t1, _) = a.subbrace_table(a1).map_err(|e| e.to_string())?;
            let (t2, _) = b.subbrace_table(&b1).map_err(|e| e.to_string())?;
            ensure(are_isoclinic(&t1, &t2).is_some(), || {
                format!("{i} ~ {j}: corresponding sub skew braces are not isoclinic")
            })?;
            images.insert(b1.elements().to_vec());
        }
        ensure(images.len() == over_a.len() && images == over_b, || {
            format!("{i} ~ {j}: correspondence is not a bijection")
        })?;
    }
    Ok(())
}

fn subgroups(g: &ActionGroup) -> BTreeSet<Vec<usize>> {
    let close = |gens: &[usize]| -> Vec<usize> {
        let mut set = BTreeSet::from([0usize]);
        let mut frontier = vec![0usize];
        while let Some(p) = frontier.pop() {
            for &q in gens {
                let r = g.mul(p, q);
                if set.insert(r) {
                    frontier.push(r);
                }
            }
        }
        set.into_iter().collect()
    };
    let m = g.order();
    let mut out = BTreeSet::new();
    for p in 0..m {
        for q in p..m {
            out.insert(close(&[p, q]));
        }
    }
    out
}

/// `m₁|B| = m₂|A|` for every orbit size, for `C(m², m) ~ C(m³, m²)` with
/// `m ∈ {2, 3}`, over the λ, ρ and full selectors and every two-generated
/// subgroup `H` with its image under `(x, y) ↦ (ξx, ξy)`.
pub fn orbit_counts_scale() -> Check {
    for m in [2usize, 3] {
        let a = make_cnd(m * m, m).map_err(|e| e.to_string())?;
        let b = make_cnd(m * m * m, m * m).map_err(|e| e.to_string())?;
        let w = are_isoclinic(&a, &b)
            .ok_or_else(|| format!("C({}, {m}) ≁ C({}, {})", m * m, m * m * m, m * m))?;
        verify_isoclinism(&a, &b, &w).map_err(|e| e.to_string())?;
        let (na, nb) = (a.order(), b.order());
        let scaled = |sa: &BTreeMap<usize, usize>, sb: &BTreeMap<usize, usize>| {
            let keys: BTreeSet<&usize> = sa.keys().chain(sb.keys()).collect();
            keys.into_iter()
                .all(|c| sa.get(c).unwrap_or(&0) * nb == sb.get(c).unwrap_or(&0) * na)
        };
        for sel in [HSelector::Lambda, HSelector::Rho, HSelector::Full] {
            let (sa, sb) = (
                h_orbit_stats(&a, &sel).unwrap(),
                h_orbit_stats(&b, &sel).unwrap(),
            );
            ensure(scaled(&sa, &sb), || {
                format!("m = {m}, {sel:?}: {sa:?} vs {sb:?}")
            })?;
        }
        let ga = action_group(&a);
        let k = ga.quotient.order();
        for h in subgroups(&ga) {
            let pa: Vec<(usize, usize)> = h.iter().map(|&p| (p / k, p % k)).collect();
            let pb: Vec<(usize, usize)> = pa.iter().map(|&(x, y)| (w.xi[x], w.xi[y])).collect();
            let sa = h_orbit_stats(&a, &HSelector::Explicit(pa)).map_err(|e| e.to_string())?;
            let sb = h_orbit_stats(&b, &HSelector::Explicit(pb)).map_err(|e| e.to_string())?;
            ensure(scaled(&sa, &sb), || {
                format!("m = {m}, H = {h:?}: {sa:?} vs {sb:?}")
            })?;
        }
    }
    Ok(())
}

/// For every two-sided record: the class equation balances with orbit
/// sizes powers of `p`, the fixed points of `d ↦ a + ρ_b(c∘d∘c') - a` are
/// exactly `Ann`, `|Ann| > 1`, and `B′ ≠ B`.
pub fn two_sided_class_equations(records: &[BraceRecord]) -> Check {
    for rec in records.iter().filter(|r| r.flags.two_sided) {
        let b = rec.brace().map_err(|e| e.to_string())?;
        let n = b.order();
        let eq = two_sided_class_equation(&b).map_err(|e| format!("{}: {e}", rec.id))?;
        ensure(
            eq.ann_size + eq.orbit_sizes.iter().sum::<usize>() == n,
            || format!("{}: class equation does not balance", rec.id),
        )?;
        ensure(eq.ann_size > 1, || {
            format!("{}: trivial annihilator", rec.id)
        })?;
        let p = (2..=n).find(|p| n % p == 0).unwrap();
        ensure(
            eq.orbit_sizes
                .iter()
                .all(|&s| s > 1 && p.pow(s.ilog(p)) == s),
            || format!("{}: orbit size not a power of {p}", rec.id),
        )?;
        let fixed: Vec<usize> = (0..n)
            .filter(|&d| {
                (0..n).all(|c| {
                    let conj = b.circ(b.circ(c, d), b.circ_inv(c));
                    (0..n).all(|y| {
                        let r = b.rho(y, conj);
                        (0..n).all(|x| b.sub(b.add(x, r), x) == d)
                    })
                })
            })
            .collect();
        ensure(fixed == b.annihilator().elements(), || {
            format!("{}: fixed points are not Ann", rec.id)
        })?;
        ensure(b.commutator_ideal().unwrap().len() < n, || {
            format!("{}: B′ = B", rec.id)
        })?;
    }
    Ok(())
}

/// `A ~ A₁` and `B ~ B₁` give `A × B ~ A₁ × B₁` on a few small pairs.
pub fn products(pairs: &[(SkewBrace, SkewBrace)]) -> Check {
    for (x, (a, a1)) in pairs.iter().enumerate() {
        for (y, (b, b1)) in pairs.iter().enumerate() {
            let p = skewbrace::brace::direct_product(a, b);
            let q = skewbrace::brace::direct_product(a1, b1);
            let w = are_isoclinic(&p, &q)
                .ok_or_else(|| format!("product of pairs {x}, {y} not isoclinic"))?;
            verify_isoclinism(&p, &q, &w).map_err(|e| e.to_string())?;
        }
    }
    Ok(())
}

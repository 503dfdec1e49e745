//! Examples checked through plane models and Artin-Schreier structure: the
//! degree-4 elementary abelian cover, the hyperelliptic family, the product
//! curve `(Y^q+Y)(X^q+X) + 1` and the quotient of the semidihedral example.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{AffineMap, CensusConfig, CensusReport, Claim, ExampleId, FixedPlaceFinding};
use crate::bivar::BivarPoly;
use crate::error::{Error, Result};
use crate::gf2m::{Field, Fq};
use crate::group::{closure_keyed, FiniteGroup, GroupKind};
use crate::plane::{
    check_plane_automorphism, common_affine_zeros, plane_genus, plane_singularity_analysis,
    PlaneAutVerdict, SingularityReport,
};
use crate::poly::Poly;
use crate::ratfun::RatFun;
use crate::tower::{elementary_abelian_cover, nakajima_ok, ramification_rational};

fn check_q(q: u64) -> Result<u32> {
    if !q.is_power_of_two() || !(4..=16).contains(&q) {
        return Err(Error::Degenerate(format!("q = {q} must be 4, 8 or 16")));
    }
    Ok(q.trailing_zeros())
}

/// Elements `a` with `a^q = a`.
fn subfield(field: &Arc<Field>, q: u64) -> Vec<Fq> {
    field.elements().filter(|&a| field.pow(a, q) == a).collect()
}

fn multiplicity_at(rep: &SingularityReport, label: &str) -> u32 {
    rep.points
        .iter()
        .find(|p| p.point == label)
        .map(|p| p.multiplicity)
        .unwrap_or(1)
}

fn affine_singular(rep: &SingularityReport) -> usize {
    rep.points
        .iter()
        .filter(|p| p.point.ends_with(": 1)"))
        .count()
}

/// Verified affine automorphisms with their closure as a group.
struct AffineGroup {
    elements: Vec<AffineMap>,
    group: FiniteGroup,
}

fn affine_group(field: &Arc<Field>, gens: &[AffineMap]) -> Result<AffineGroup> {
    let mul = |a: &AffineMap, b: &AffineMap| Ok(a.compose(field, b));
    let elements = closure_keyed(AffineMap::identity(), gens, 4096, mul, |a| *a)?;
    let group = FiniteGroup::from_keyed(&elements, mul, |a| *a)?;
    Ok(AffineGroup { elements, group })
}

fn preserves(f: &BivarPoly, m: &AffineMap) -> bool {
    check_plane_automorphism(f, &m.to_plane_map(f.field())) == PlaneAutVerdict::Scalar
}

/// `(Y^2 + Y + X)(X^q + X) + sum (X^q + X)/(X + a) = 0` over `GF(q^2)`,
/// which holds the roots of `m^2 + m = b` for `b` in `F_q`.
pub(super) fn hyperelliptic(q: u64) -> Result<CensusReport> {
    let h = check_q(q)?;
    let field = Field::with_degree(2 * h)?;
    let fq = subfield(&field, q);
    let mut rep = CensusReport::new(ExampleId::Hyperelliptic, Some(q), field.spec());
    let x = Poly::x(&field);
    let l = &x.pow(q) + &x;
    let mut s = Poly::zero(&field);
    for &a in &fq {
        s = &s + &l.exact_div(&Poly::linear(&field, a))?;
    }
    rep.notes.push(format!(
        "sum of (X^q + X)/(X + a) over F_q equals {}",
        s.to_text("X")
    ));
    let quad = BivarPoly::y(&field)
        .square()
        .add(&BivarPoly::y(&field))
        .add(&BivarPoly::x(&field));
    let f = quad
        .mul(&BivarPoly::from_poly_x(&l))
        .add(&BivarPoly::from_poly_x(&s));

    // Y^2 + Y = X + s / (X^q + X)
    let e = RatFun::new(&(&x * &l) + &s, l.clone())?;
    let rd = ramification_rational(&e, None)?;
    rep.genus = Some(rd.genus);
    rep.prank = Some(rd.prank);
    rep.push(Claim::compare(
        "genus q-1 (Hurwitz)",
        q as i64 - 1,
        rd.genus,
    ));
    let sing = plane_singularity_analysis(&f)?;
    let gp = plane_genus(&sing);
    rep.attempt("genus q-1 (plane formula)", &(q - 1).to_string(), || {
        Ok(Claim::compare(
            "genus q-1 (plane formula)",
            q as i64 - 1,
            gp.clone()?,
        ))
    });
    rep.attempt("Hurwitz and plane genus agree", "equal", || {
        let g = gp.clone()?;
        Ok(Claim::holds(
            "Hurwitz and plane genus agree",
            "equal",
            format!("Hurwitz {} / plane {g}", rd.genus),
            g == rd.genus,
        ))
    });
    let mx = multiplicity_at(&sing, "(1 : 0 : 0)");
    let my = multiplicity_at(&sing, "(0 : 1 : 0)");
    rep.push(Claim::compare(
        "multiplicity of X_inf = (1:0:0)",
        q as u32,
        mx,
    ));
    rep.push(Claim::compare("multiplicity of Y_inf = (0:1:0)", 2, my));
    rep.push(Claim::compare(
        "affine singular points",
        0,
        affine_singular(&sing),
    ));
    rep.push(Claim::holds(
        "singular points are ordinary",
        "true",
        sing.points.iter().all(|p| p.ordinary).to_string(),
        sing.points.iter().all(|p| p.ordinary),
    ));

    let mut maps = Vec::new();
    for &b in &fq {
        let m0 = field
            .solve_artin_schreier(b)
            .ok_or_else(|| Error::Inconsistent("m^2 + m = b unsolvable in GF(q^2)".into()))?;
        for m in [m0, field.add(m0, Fq::ONE)] {
            maps.push(AffineMap::translation(b, m));
        }
    }
    let verified = maps.iter().filter(|m| preserves(&f, m)).count();
    rep.push(Claim::compare(
        "translations (x+b, y+m) preserving C",
        2 * q as usize,
        verified,
    ));
    let grp = affine_group(&field, &maps)?;
    let st = grp.group.structure();
    rep.group_order = Some(st.order);
    rep.push(Claim::compare("group order 2q", 2 * q as usize, st.order));
    rep.push(Claim::compare(
        "elementary abelian",
        GroupKind::ElementaryAbelian.name(),
        st.kind.name(),
    ));
    let target = 2 * rd.genus + 2;
    rep.push(
        Claim::holds(
            "|S| = 2g + 2",
            target.to_string(),
            st.order.to_string(),
            st.order as i64 == target,
        )
        .with_detail(format!("with the computed genus g = {}", rd.genus)),
    );
    rep.push(Claim::holds(
        "Nakajima bound respected",
        "|S| <= 4(gamma - 1)",
        format!("|S| = {}, gamma = {}", st.order, rd.prank),
        nakajima_ok(st.order as u64, rd.prank),
    ));
    rep.group = Some(st);
    Ok(rep)
}

/// Per class: element count, fixed-place counts `(affine, at infinity)` with
/// multiplicity, and a representative label.
type ClassTally = (usize, BTreeMap<(u64, u64), usize>, String);

/// Fixed points of an affine automorphism on the smooth `P^1 x P^1` model
/// of `(Y^q+Y)(X^q+X) + 1 = 0`: the points at infinity are `(inf, c)` and
/// `(c, inf)` for `c` in `F_q`, one for each branch of the two ordinary
/// singular points of the plane model.
fn fixed_on_product(f: &BivarPoly, field: &Arc<Field>, m: &AffineMap) -> Result<(u64, u64)> {
    let mut at_inf = 0;
    for c in field.elements() {
        for p in [(None, Some(c)), (Some(c), None)] {
            if m.apply_p1p1(field, p) == p {
                at_inf += 1;
            }
        }
    }
    let affine: u64 = common_affine_zeros(f, &m.displacement(field))?
        .iter()
        .map(|z| z.degree as u64)
        .sum();
    Ok((affine, at_inf))
}

fn product_class(field: &Field, m: &AffineMap) -> &'static str {
    let [a, b] = m.b;
    match (m.swaps(), a.is_zero(), b.is_zero()) {
        (true, _, _) if a == b => "swap then (a, a)",
        (true, _, _) => "swap then (a, b), a != b",
        (false, false, true) => "translation (a, 0)",
        (false, true, false) => "translation (0, b)",
        (false, _, _) if field.add(a, b).is_zero() => "translation (a, a)",
        _ => "translation (a, b), a != b both nonzero",
    }
}

/// `(Y^q + Y)(X^q + X) + 1 = 0` over `F_q`.
pub(super) fn product_curve(q: u64) -> Result<CensusReport> {
    let h = check_q(q)?;
    let field = Field::with_degree(h)?;
    let mut rep = CensusReport::new(ExampleId::ProductCurve, Some(q), field.spec());
    let x = Poly::x(&field);
    let l = &x.pow(q) + &x;
    let lx = BivarPoly::from_poly_x(&l);
    let f = lx.swap().mul(&lx).add(&BivarPoly::one(&field));

    let sing = plane_singularity_analysis(&f)?;
    let gp = plane_genus(&sing)?;
    rep.genus = Some(gp);
    let expected_g = (q as i64 - 1).pow(2);
    rep.push(Claim::compare(
        "genus (q-1)^2 (plane formula)",
        expected_g,
        gp,
    ));
    let at_inf: Vec<_> = sing
        .points
        .iter()
        .filter(|p| p.point.ends_with(": 0)"))
        .collect();
    let ok = at_inf.len() == 2
        && at_inf
            .iter()
            .all(|p| p.multiplicity == q as u32 && p.ordinary);
    rep.push(Claim::holds(
        "two ordinary singular points of multiplicity q at infinity",
        format!("(1 : 0 : 0) and (0 : 1 : 0), multiplicity {q}"),
        at_inf
            .iter()
            .map(|p| format!("{} m={} ordinary={}", p.point, p.multiplicity, p.ordinary))
            .collect::<Vec<_>>()
            .join("; "),
        ok,
    ));
    rep.push(Claim::compare(
        "affine singular points",
        0,
        affine_singular(&sing),
    ));
    let cover = elementary_abelian_cover(&RatFun::new(Poly::one(&field), l.clone())?, q)?;
    rep.prank = Some(cover.prank);
    rep.push(Claim::holds(
        "plane genus agrees with the Artin-Schreier genus",
        gp.to_string(),
        cover.genus.to_string(),
        cover.genus == gp,
    ));

    let translations: Vec<AffineMap> = field
        .elements()
        .flat_map(|a| field.elements().map(move |b| AffineMap::translation(a, b)))
        .collect();
    let verified = translations.iter().filter(|m| preserves(&f, m)).count();
    rep.push(Claim::compare(
        "translations preserving C",
        (q * q) as usize,
        verified,
    ));
    let swap = AffineMap::swap();
    rep.push(Claim::holds(
        "rho: (X, Y) -> (Y, X) preserves C",
        "true",
        preserves(&f, &swap).to_string(),
        preserves(&f, &swap),
    ));
    let mut gens = translations.clone();
    gens.push(swap);
    let grp = affine_group(&field, &gens)?;
    let st = grp.group.structure();
    let order = st.order as i64;
    rep.group_order = Some(st.order);
    rep.push(Claim::compare(
        "group order 2q^2",
        2 * (q * q) as usize,
        st.order,
    ));
    let rhs = 2 * (gp - 1) + 4 * q as i64 - 2;
    rep.push(
        Claim::holds(
            "|S| = 2(g-1) + 4q - 2",
            rhs.to_string(),
            order.to_string(),
            order == rhs,
        )
        .with_detail(format!("with g = {gp}")),
    );
    rep.push(Claim::compare(
        "Nakajima bound attained",
        q == 4,
        order == 4 * (cover.prank - 1),
    ));

    let center: Vec<AffineMap> = grp
        .group
        .center()
        .into_iter()
        .map(|i| grp.elements[i])
        .collect();
    let diag: Vec<AffineMap> = field
        .elements()
        .map(|a| AffineMap::translation(a, a))
        .collect();
    let same = center.len() == diag.len() && diag.iter().all(|d| center.contains(d));
    rep.push(Claim::holds(
        "central elements are the translations (a, a)",
        format!("{} elements (x + a, y + a)", diag.len()),
        format!("{} central elements", center.len()),
        same,
    ));

    // fixed places of every non-trivial element, grouped by shape
    let mut classes: BTreeMap<&str, ClassTally> = BTreeMap::new();
    let mut with_fixed = 0;
    for m in grp.elements.iter().skip(1) {
        let (aff, inf) = fixed_on_product(&f, &field, m)?;
        if aff + inf > 0 {
            with_fixed += 1;
        }
        let entry =
            classes
                .entry(product_class(&field, m))
                .or_insert((0, BTreeMap::new(), String::new()));
        entry.0 += 1;
        *entry.1.entry((aff, inf)).or_insert(0) += 1;
        if entry.2.is_empty() && aff + inf > 0 {
            entry.2 = format!("{}: {aff} affine, {inf} at infinity", m.label(&field));
        }
    }
    for (name, (count, hist, example)) in &classes {
        let max = hist.keys().map(|(a, i)| a + i).max().unwrap_or(0);
        let dist = hist
            .iter()
            .map(|((a, i), n)| format!("{n} with {a} affine + {i} at infinity"))
            .collect::<Vec<_>>()
            .join(", ");
        let mut detail = format!("{count} elements: {dist}");
        if !example.is_empty() {
            detail.push_str(&format!("; e.g. {example}"));
        }
        rep.fixed_places.push(FixedPlaceFinding {
            element: name.to_string(),
            fixed_places: max,
            detail,
        });
    }
    let nontrivial = grp.elements.len() - 1;
    rep.push(Claim::holds(
        "no non-trivial element of S fixes a place",
        "0 elements with fixed places",
        format!("{with_fixed} of {nontrivial} non-trivial elements fix a place"),
        with_fixed == 0,
    ));
    let u = AffineMap::translation(Fq::ONE, Fq::ONE);
    let (aff, inf) = fixed_on_product(&f, &field, &u)?;
    rep.push(Claim::compare(
        "u = (x + 1, y + 1) fixes no place",
        0,
        aff + inf,
    ));
    rep.group = Some(st);
    Ok(rep)
}

/// `F = A(X)(Y^4 + Y) + C(X)`: a degree-4 elementary abelian cover of the
/// `X`-line.
pub(super) fn quartic_cover(cfg: &CensusConfig) -> Result<CensusReport> {
    let g = super::load_golden("6.2", cfg.golden_dir.as_deref())?;
    let field = g.field(cfg.field_spec.as_deref())?;
    let mut rep = CensusReport::new(ExampleId::QuarticCover, None, field.spec());
    let f = g.bivar(&field, field.generator())?;
    rep.push(Claim::holds(
        "printed polynomial loads",
        "a plane curve",
        format!(
            "{} terms, degree {} (X-degree {}, Y-degree {})",
            f.len(),
            f.total_degree(),
            f.deg_x(),
            f.deg_y()
        ),
        !f.is_zero() && f.deg_y() > 0,
    ));
    let cs = f.as_poly_in_y();
    let shaped =
        cs.len() == 5 && cs[2].is_zero() && cs[3].is_zero() && cs[1] == cs[4] && !cs[1].is_zero();
    if !shaped {
        rep.push(Claim::not_computed(
            "genus 9",
            "9",
            "not of the form A(X)(Y^4 + Y) + C(X)",
        ));
        return Ok(rep);
    }
    rep.notes
        .push("F = A(X)(Y^4 + Y) + C(X), so Y^4 + Y = C/A".into());
    let r = RatFun::new(cs[0].clone(), cs[1].clone())?;
    match elementary_abelian_cover(&r, 4) {
        Ok(cd) => {
            rep.genus = Some(cd.genus);
            rep.prank = Some(cd.prank);
            rep.push(Claim::holds(
                "defines an irreducible curve",
                "irreducible",
                "every quadratic subcover W^2 + W = l C/A is ramified",
                true,
            ));
            rep.push(Claim::compare("genus 9", 9, cd.genus));
            let genera: Vec<String> = cd
                .layers
                .iter()
                .map(|l| format!("l={}: g={}", l.lambda, l.genus))
                .collect();
            rep.notes.push(format!(
                "quotients by the translations Y -> Y + c: {}",
                genera.join(", ")
            ));
        }
        Err(e) => rep.push(Claim::not_computed(
            "genus 9",
            "9",
            format!("pipeline error: {e}"),
        )),
    }
    rep.push(Claim::not_computed(
        "S = D8 x C2 of order 32",
        "D8 x C2",
        "group structure needs the full automorphism group",
    ));
    rep.push(Claim::not_computed(
        "X/C2 has genus 5",
        "5",
        "the order-2 subgroup is not specified; see the quotient genera in the notes",
    ));
    rep.push(Claim::not_computed(
        "Aut(X/C2) has a dihedral subgroup of order 8",
        "D4",
        "out of reach",
    ));
    Ok(rep)
}

/// `F = f1 Y^4 + f2 Y^2 + f3 Y + f4` and its quotient by `u: Y -> Y + 1`.
pub(super) fn semidihedral_quotient(cfg: &CensusConfig) -> Result<CensusReport> {
    let load = |i: usize| -> Result<(Arc<Field>, Poly)> {
        let g = super::load_golden(&format!("6.6-f{i}"), cfg.golden_dir.as_deref())?;
        let field = g.field(cfg.field_spec.as_deref())?;
        let p = g.univariate("", &field, field.generator())?;
        Ok((field, p))
    };
    let (field, f1) = load(1)?;
    let (_, f2) = load(2)?;
    let (_, f3) = load(3)?;
    let (_, f4) = load(4)?;
    let mut rep = CensusReport::new(ExampleId::SemidihedralQuotient, None, field.spec());
    let s12 = &f1 + &f2;
    rep.push(Claim::holds(
        "u: Y -> Y + 1 preserves F (f3 = f1 + f2)",
        "f3 = f1 + f2",
        if f3 == s12 {
            "equal".to_string()
        } else {
            format!("f3 + f1 + f2 = {}", (&f3 + &s12).to_text("X"))
        },
        f3 == s12,
    ));
    let y = BivarPoly::y(&field);
    let big = BivarPoly::from_poly_in_y(&[
        f4.clone(),
        f3.clone(),
        f2.clone(),
        Poly::zero(&field),
        f1.clone(),
    ]);
    let quotient = BivarPoly::from_poly_in_y(&[f4.clone(), s12.clone(), f1.clone()]);
    let pulled = quotient.substitute(&BivarPoly::x(&field), &y.square().add(&y));
    rep.push(Claim::holds(
        "K(x, y^2 + y) is cut out by f1 Z^2 + (f1 + f2) Z + f4",
        "F(X, Y) = G(X, Y^2 + Y)",
        if pulled == big {
            "identical"
        } else {
            "different"
        },
        pulled == big,
    ));

    rep.attempt(
        "printed quotient W^2 + W = f4/(f1+f2)^2 has genus 1",
        "1",
        || {
            let e = RatFun::new(f4.clone(), s12.square())?;
            let rd = ramification_rational(&e, None)?;
            Ok(Claim::compare(
                "printed quotient W^2 + W = f4/(f1+f2)^2 has genus 1",
                1,
                rd.genus,
            )
            .with_detail(
                "the printed quotient equation Z^2 + (f1+f2) Z + f4 lacks the factor f1 on Z^2",
            ))
        },
    );
    rep.attempt("X/<u> is an elliptic curve", "genus 1", || {
        let e = RatFun::new(&f1 * &f4, s12.square())?;
        let rd = ramification_rational(&e, None)?;
        Ok(Claim::compare("X/<u> is an elliptic curve", 1, rd.genus)
            .with_detail("W = f1 Z/(f1 + f2) gives W^2 + W = f1 f4/(f1 + f2)^2"))
    });
    if let Some(c) = rep.claim("X/<u> is an elliptic curve") {
        rep.genus = c.computed.as_ref().and_then(|s| s.parse().ok());
    }
    rep.push(Claim::not_computed(
        "X has genus 17 and 2-rank 9",
        "17 / 9",
        "quartic-in-Y tower is out of scope",
    ));
    rep.push(Claim::not_computed(
        "Aut(X) is semidihedral of order 32",
        "SD32",
        "quartic-in-Y tower is out of scope",
    ));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::ClaimStatus;

    #[test]
    fn hyperelliptic_q4() {
        let rep = hyperelliptic(4).unwrap();
        assert_eq!(rep.group_order, Some(8));
        assert_eq!(
            rep.claim("elementary abelian").unwrap().status,
            ClaimStatus::Matched
        );
        assert_eq!(
            rep.claim("Hurwitz and plane genus agree").unwrap().status,
            ClaimStatus::Matched
        );
    }

    #[test]
    fn product_curve_q4() {
        let rep = product_curve(4).unwrap();
        assert_eq!(rep.genus, Some(9));
        assert_eq!(rep.group_order, Some(32));
        assert_eq!(
            rep.claim("u = (x + 1, y + 1) fixes no place")
                .unwrap()
                .status,
            ClaimStatus::Matched
        );
    }
}

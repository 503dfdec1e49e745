//! The main family for `n = 8` over GF(16): locate the torsion point and
//! primitive element matching the printed Witt elements, then rebuild the
//! tower and compare its plane model with the printed one.

use std::time::Instant;

use super::{load_golden, primitive_exponents, CensusConfig, CensusReport, Claim, ExampleId};
use crate::autcheck::{build_report, FieldConfig, Tower};
use crate::bivar::BivarPoly;
use crate::ellcurve::{Point, TorsionGenerator};
use crate::error::{Error, Result};
use crate::funcfield::{witt_elements, DVariant, Translations};
use crate::gf2m::{Field, Fq};
use crate::group::GroupKind;
use crate::plane::eliminate_to_plane;
use crate::ratfun::RatFun;
use crate::tower::ramification_rational;

const N: u64 = 8;

fn setup(example: ExampleId) -> (u64, DVariant, &'static str) {
    match example {
        ExampleId::MainFamilyAlternative => (7, DVariant::Alternative, "6.1b"),
        _ => (1, DVariant::Standard, "6.1a"),
    }
}

/// Printed `e = (delta/xi) y + omega/epsilon` read with `mu -> mu^j`, as
/// `(y-part, constant part)`.
fn printed_witt(
    name: &str,
    cfg: &CensusConfig,
    field: &std::sync::Arc<Field>,
    j: u64,
) -> Result<(RatFun, RatFun)> {
    let g = load_golden(&format!("{name}-witt"), cfg.golden_dir.as_deref())?;
    let mu = field.pow(field.generator(), j);
    let p = |k: &str| g.univariate(k, field, mu);
    Ok((
        RatFun::new(p("delta")?, p("xi")?)?,
        RatFun::new(p("omega")?, p("epsilon")?)?,
    ))
}

fn format_diff(field: &Field, d: &[(u32, u32, Fq, Fq)], limit: usize) -> String {
    let mut parts: Vec<String> = d
        .iter()
        .take(limit)
        .map(|(i, j, a, b)| {
            format!(
                "X^{i} Y^{j}: computed {} printed {}",
                field.format(*a),
                field.format(*b)
            )
        })
        .collect();
    if d.len() > limit {
        parts.push(format!("... {} more", d.len() - limit));
    }
    parts.join("; ")
}

pub(super) fn run(example: ExampleId, cfg: &CensusConfig) -> Result<CensusReport> {
    let start = Instant::now();
    let (k, variant, name) = setup(example);
    let golden_plane = load_golden(name, cfg.golden_dir.as_deref())?;
    let spec = cfg
        .field_spec
        .clone()
        .unwrap_or_else(|| golden_plane.field_spec.clone());
    let fc = FieldConfig::standard(&spec, cfg.seed)?;
    let field = fc.field.clone();
    let curve = fc.curve()?;
    let mut rep = CensusReport::new(example, None, field.spec());
    let order = 2 * N;

    // every point of exact order 2n over the base field, tried against the
    // printed Witt elements under every primitive-element substitution
    let generators: Vec<Point> = curve
        .points()?
        .into_iter()
        .filter(|p| curve.order(p, order) == Some(order))
        .collect();
    let exps = primitive_exponents(field.size());
    let printed: Vec<(u64, (RatFun, RatFun))> = exps
        .iter()
        .map(|&j| Ok((j, printed_witt(name, cfg, &field, j)?)))
        .collect::<Result<_>>()?;
    let mut found = None;
    for p in &generators {
        let tg = TorsionGenerator {
            curve: curve.clone(),
            point: *p,
            order,
            extension_degree: 1,
        };
        let tr = Translations::new(tg)?;
        let w = witt_elements(&tr, k, variant)?;
        let (b, a) = (w.e_k.part_b(), w.e_k.part_a());
        if let Some((j, _)) = printed.iter().find(|(_, (pb, pa))| *pb == b && *pa == a) {
            found = Some((*p, *j));
            break;
        }
    }
    rep.notes.push(format!(
        "{} points of order {order} over {}",
        generators.len(),
        field.spec()
    ));
    let (p0, witt_j) = match found {
        Some((p, j)) => {
            rep.push(Claim::holds(
                "printed Witt element matches e_k",
                "equal up to mu -> mu^j",
                format!("equal for P0 = {}, mu -> mu^{j}", curve.format_point(&p)),
                true,
            ));
            (p, Some(j))
        }
        None => {
            rep.push(Claim::holds(
                "printed Witt element matches e_k",
                "equal up to mu -> mu^j",
                "no torsion point and substitution reproduces it",
                false,
            ));
            let tg = fc.torsion(N)?;
            if tg.extension_degree != 1 {
                return Err(Error::Inconsistent(
                    "torsion point outside the base field".into(),
                ));
            }
            (tg.point, None)
        }
    };

    let tg = TorsionGenerator {
        curve: curve.clone(),
        point: p0,
        order,
        extension_degree: 1,
    };
    let tw = Tower::new(Translations::new(tg)?, k, variant)?;
    let e = tw.witt.e_k.clone();
    let (tw, mr) = build_report(tw, &fc, Vec::new(), start)?;
    rep.genus = Some(mr.genus);
    rep.prank = Some(mr.prank);
    rep.group_order = Some(mr.group_order);
    rep.push(Claim::compare("genus 9", 9, mr.genus));
    rep.push(Claim::compare("2-rank 9", 9, mr.prank));
    rep.push(Claim::compare("|S| = 32", 32, mr.group_order));
    rep.push(Claim::compare(
        "S dihedral",
        GroupKind::Dihedral.name(),
        mr.group.kind.name(),
    ));
    rep.push(Claim::compare(
        "iota fixes exactly 8 places",
        8,
        mr.iota_fixed,
    ));
    rep.push(Claim::compare(
        "|S| = 4(gamma - 1)",
        4 * (mr.prank - 1),
        mr.group_order as i64,
    ));
    // the trace-chain identities concern d in K(x) only
    let applies = |name: &str| {
        variant == DVariant::Standard || !(name.starts_with("Tr_g(a g0") || name == "psi^2 = id")
    };
    let failed: Vec<&str> = mr
        .relations_verified
        .iter()
        .chain(&mr.identities)
        .filter(|c| !c.holds && applies(&c.name))
        .map(|c| c.name.as_str())
        .collect();
    rep.push(Claim::holds(
        "defining relations and identities hold",
        "all",
        if failed.is_empty() {
            "all".to_string()
        } else {
            failed.join(", ")
        },
        failed.is_empty(),
    ));
    let involution = mr
        .relations_verified
        .iter()
        .any(|c| c.name == "psi^2 = id" && c.holds);
    let mut c = Claim::holds(
        "psi is an involution",
        "psi^2 = id",
        if involution {
            "psi^2 = id"
        } else {
            "psi has order 4"
        },
        involution,
    );
    if !involution && variant == DVariant::Alternative {
        c = c.with_detail("phi(d) = d + 1 for this d, so psi^2 is z -> z + 1");
    }
    rep.push(c);
    rep.group = Some(mr.group.clone());
    drop(tw);

    // plane model: tried under every substitution, the Witt match first
    let computed = eliminate_to_plane(&e)?;
    let mut order_j = exps.clone();
    if let Some(j) = witt_j {
        order_j.retain(|&x| x != j);
        order_j.insert(0, j);
    }
    let mut plane_j = None;
    let mut first_printed = None;
    for &j in &order_j {
        let mu = field.pow(field.generator(), j);
        let pr = golden_plane.bivar(&field, mu)?.monic();
        if pr == computed {
            plane_j = Some(j);
            break;
        }
        first_printed.get_or_insert(pr);
    }
    let claim = "eliminated plane model equals the printed one";
    match plane_j {
        Some(j) => rep.push(Claim::holds(
            claim,
            "equal up to mu -> mu^j",
            format!("equal with mu -> mu^{j}"),
            true,
        )),
        None => {
            let pr = first_printed.expect("at least one substitution");
            let d = computed.diff(&pr);
            rep.push(
                Claim::holds(
                    claim,
                    "equal up to mu -> mu^j",
                    format!(
                        "no substitution matches; computed has {} terms (X-degree {}, Y-degree {}), printed {} terms (X-degree {}, Y-degree {})",
                        computed.len(),
                        computed.deg_x(),
                        computed.deg_y(),
                        pr.len(),
                        pr.deg_x(),
                        pr.deg_y()
                    ),
                    false,
                )
                .with_detail(format!("{} differing coefficients: {}", d.len(), format_diff(&field, &d, 12))),
            );
            printed_model_genus(&mut rep, &pr);
        }
    }
    Ok(rep)
}

/// Genus of a printed model of `Y`-degree 2 read as a double cover of the
/// `X`-line: `c2 Y^2 + c1 Y + c0` becomes `W^2 + W = c0 c2 / c1^2`.
fn printed_model_genus(rep: &mut CensusReport, pr: &BivarPoly) {
    let name = "printed model is birational to X_k (genus 9)";
    rep.attempt(name, "9", || {
        let cs = pr.as_poly_in_y();
        if cs.len() != 3 || cs[1].is_zero() {
            return Ok(Claim::not_computed(
                name,
                "9",
                "printed model is not a separable double cover of the X-line",
            ));
        }
        let e = RatFun::new(&cs[0] * &cs[2], cs[1].square())?;
        let rd = ramification_rational(&e, None)?;
        Ok(Claim::compare(name, 9, rd.genus)
            .with_detail("genus of the printed model, W = c2 Y / c1"))
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::ClaimStatus;

    #[test]
    fn standard_case_matches_printed_data() {
        let rep = run(ExampleId::MainFamilyStandard, &CensusConfig::default()).unwrap();
        for c in &rep.claims {
            assert_eq!(c.status, ClaimStatus::Matched, "{c:?}");
        }
        assert_eq!(rep.genus, Some(9));
    }
}

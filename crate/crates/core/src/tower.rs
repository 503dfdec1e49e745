//! Artin-Schreier layers `z^2 + z = e` over `K(x)` or `K(E)`: reduction of
//! pole orders, different exponents, and the Hurwitz and
//! Deuring-Shafarevich formulas.

use std::sync::Arc;

use serde::Serialize;

use crate::ellcurve::TorsionGenerator;
use crate::error::{Error, Result};
use crate::funcfield::FFElem;
use crate::gf2m::{Field, Fq};
use crate::places::{expand, places_above, Place};
use crate::poly::Poly;
use crate::ratfun::RatFun;
use crate::residue::ResidueField;
use crate::series::{Laurent, EXACT};

/// Bound on reduction steps at one place.
const MAX_REDUCTION_STEPS: usize = 256;

/// A place of the rational function field `K(x)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RationalPlace {
    Finite(Poly),
    Infinity,
}

impl RationalPlace {
    pub fn degree(&self) -> i64 {
        match self {
            RationalPlace::Finite(p) => p.deg(),
            RationalPlace::Infinity => 1,
        }
    }

    pub fn label(&self) -> String {
        match self {
            RationalPlace::Finite(p) => format!("x = root of {}", p.to_text("x")),
            RationalPlace::Infinity => "x = inf".to_string(),
        }
    }
}

/// Order of `p` in `r` (negative for poles).
pub fn order_at(r: &RatFun, p: &Poly) -> i64 {
    if r.is_zero() {
        return i64::MAX;
    }
    r.num().multiplicity(p) as i64 - r.den().multiplicity(p) as i64
}

/// `f(1/x)`, moving the place at infinity to `x = 0`.
pub fn invert_variable(f: &RatFun) -> RatFun {
    let field = f.field();
    let inv_x = RatFun::x(field).inv().expect("x != 0");
    f.compose(&inv_x).expect("composition with 1/x")
}

/// Result of reducing `e` at one place: the reduced pole order (0 when
/// unramified) and the accumulated witness `w` with `e + w^2 + w` reduced.
#[derive(Clone, Debug)]
pub struct Reduction<W> {
    pub reduced_order: i64,
    pub witness: W,
}

impl<W> Reduction<W> {
    pub fn different(&self) -> i64 {
        if self.reduced_order > 0 {
            self.reduced_order + 1
        } else {
            0
        }
    }
}

/// Reduction over `K(x)` at a finite place or at infinity.
pub fn as_reduce_rational(e: &RatFun, place: &RationalPlace) -> Result<Reduction<RatFun>> {
    match place {
        RationalPlace::Finite(p) => reduce_at_poly(e, p),
        RationalPlace::Infinity => {
            let f = e.field();
            let red = reduce_at_poly(&invert_variable(e), &Poly::x(f))?;
            Ok(Reduction {
                reduced_order: red.reduced_order,
                witness: invert_variable(&red.witness),
            })
        }
    }
}

fn reduce_at_poly(e: &RatFun, p: &Poly) -> Result<Reduction<RatFun>> {
    let field = e.field();
    let l = ResidueField::new(p);
    let mut cur = e.clone();
    let mut w = RatFun::zero(field);
    let mut last = i64::MAX;
    for _ in 0..MAX_REDUCTION_STEPS {
        if cur.is_zero() {
            return Ok(Reduction {
                reduced_order: 0,
                witness: w,
            });
        }
        let m = -order_at(&cur, p);
        if m <= 0 || m % 2 == 1 {
            return Ok(Reduction {
                reduced_order: m.max(0),
                witness: w,
            });
        }
        if m >= last {
            return Err(Error::Inconsistent("pole order did not decrease".into()));
        }
        last = m;
        // leading coefficient of the p-adic expansion
        let k = cur.num().multiplicity(p);
        let top = cur.num().exact_div(&p.pow(k as u64))?;
        let rest = cur
            .den()
            .exact_div(&p.pow(cur.den().multiplicity(p) as u64))?;
        let c = l.mul(&top, &l.inv(&rest)?);
        let s = l.sqrt(&c);
        let step = RatFun::new(s, p.pow((m / 2) as u64))?;
        cur = &(&cur + &step.square()) + &step;
        w = &w + &step;
    }
    Err(Error::Inconsistent("reduction did not terminate".into()))
}

/// Reduction over `K(E)` at a degree-one place, performed on Laurent
/// expansions; the witness is the polar part accumulated in the local
/// parameter.
pub fn as_reduce_elliptic(e: &FFElem, place: &Place) -> Result<Reduction<Laurent>> {
    let f = e.field().clone();
    if e.is_zero() {
        return Ok(Reduction {
            reduced_order: 0,
            witness: Laurent::zero(&f, EXACT),
        });
    }
    let mut s = expand(e, place, 1)?;
    let mut w = Laurent::zero(&f, EXACT);
    let mut last = i64::MAX;
    for _ in 0..MAX_REDUCTION_STEPS {
        let lead = s.leading().filter(|(v, _)| *v < 0);
        let Some((v, c)) = lead else {
            return Ok(Reduction {
                reduced_order: 0,
                witness: w,
            });
        };
        let m = -v;
        if m % 2 == 1 {
            return Ok(Reduction {
                reduced_order: m,
                witness: w,
            });
        }
        if m >= last {
            return Err(Error::Inconsistent("pole order did not decrease".into()));
        }
        last = m;
        let step = Laurent::monomial(&f, f.sqrt(c), -m / 2, EXACT);
        s = s.add(&step.square()).add(&step);
        w = w.add(&step);
    }
    Err(Error::Inconsistent("reduction did not terminate".into()))
}

/// Base of an Artin-Schreier layer.
#[derive(Clone, Debug)]
pub enum BaseElem {
    Rational(RatFun),
    Elliptic(FFElem),
}

/// `z^2 + z = e` over `K(x)` or `K(E)`.
#[derive(Clone, Debug)]
pub struct ASExt {
    pub e: BaseElem,
}

/// Per-place ramification record.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RamEntry {
    pub place: String,
    pub degree: i64,
    pub reduced_order: i64,
    pub different: i64,
}

/// Ramification of a layer with the resulting genus and 2-rank.
#[derive(Clone, Debug, Serialize)]
pub struct RamData {
    pub base_genus: i64,
    pub base_prank: i64,
    pub ramified: Vec<RamEntry>,
    pub unramified_checked: usize,
    pub genus: i64,
    pub prank: i64,
}

impl RamData {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    fn assemble(
        base_genus: i64,
        base_prank: i64,
        entries: Vec<RamEntry>,
        unramified: usize,
    ) -> Result<RamData> {
        for en in &entries {
            if en.different % 2 != 0 {
                return Err(Error::OddDifferent(en.different));
            }
        }
        if entries.is_empty() {
            // unramified: irreducibility cannot be certified by pole orders
            return Err(Error::NotCertified);
        }
        let list: Vec<(i64, i64)> = entries.iter().map(|en| (en.degree, en.different)).collect();
        let genus = genus_hurwitz(base_genus, 2, &list)?;
        let orbits: Vec<u64> = entries
            .iter()
            .flat_map(|en| std::iter::repeat_n(1u64, en.degree as usize))
            .collect();
        let prank = prank_ds(base_prank, 2, &orbits)?;
        Ok(RamData {
            base_genus,
            base_prank,
            ramified: entries,
            unramified_checked: unramified,
            genus,
            prank,
        })
    }
}

impl ASExt {
    pub fn rational(e: RatFun) -> ASExt {
        ASExt {
            e: BaseElem::Rational(e),
        }
    }

    pub fn elliptic(e: FFElem) -> ASExt {
        ASExt {
            e: BaseElem::Elliptic(e),
        }
    }

    /// Places of the rational base where `e` has a pole.
    pub fn rational_pole_places(e: &RatFun) -> Vec<RationalPlace> {
        let mut out: Vec<RationalPlace> = e
            .den()
            .factor()
            .into_iter()
            .map(|(p, _)| RationalPlace::Finite(p))
            .collect();
        if e.degree().is_some_and(|d| d > 0) {
            out.push(RationalPlace::Infinity);
        }
        out
    }

    /// Places of the elliptic base where `e` may have a pole.
    pub fn elliptic_pole_places(e: &FFElem) -> Vec<Place> {
        let mut out = vec![Place::Infinity];
        for (p, _) in e.den().factor() {
            out.extend(places_above(e.curve(), &p));
        }
        out
    }
}

/// Ramification over `K(x)` at the given candidate places (all poles of `e`
/// when `None`).
pub fn ramification_rational(e: &RatFun, candidates: Option<&[RationalPlace]>) -> Result<RamData> {
    let cands = match candidates {
        Some(c) => c.to_vec(),
        None => ASExt::rational_pole_places(e),
    };
    let mut entries = Vec::new();
    let mut unram = 0;
    for pl in &cands {
        let red = as_reduce_rational(e, pl)?;
        if red.reduced_order > 0 {
            entries.push(RamEntry {
                place: pl.label(),
                degree: pl.degree(),
                reduced_order: red.reduced_order,
                different: red.different(),
            });
        } else {
            unram += 1;
        }
    }
    RamData::assemble(0, 0, entries, unram)
}

/// Ramification over `K(E)` at the given degree-one candidate places.
pub fn ramification_elliptic(
    e: &FFElem,
    candidates: &[Place],
    torsion: Option<&TorsionGenerator>,
) -> Result<RamData> {
    let mut entries = Vec::new();
    let mut unram = 0;
    for pl in candidates {
        let red = as_reduce_elliptic(e, pl)?;
        if red.reduced_order > 0 {
            entries.push(RamEntry {
                place: pl.label(e.curve(), torsion),
                degree: pl.degree(),
                reduced_order: red.reduced_order,
                different: red.different(),
            });
        } else {
            unram += 1;
        }
    }
    RamData::assemble(1, 1, entries, unram)
}

/// Ramification data for a layer with automatically chosen candidates.
pub fn ramification_data(ext: &ASExt) -> Result<RamData> {
    match &ext.e {
        BaseElem::Rational(e) => ramification_rational(e, None),
        BaseElem::Elliptic(e) => ramification_elliptic(e, &ASExt::elliptic_pole_places(e), None),
    }
}

/// Solves `2g - 2 = |S|(2 g_base - 2) + sum count * d_P` for `g`.
pub fn genus_hurwitz(base_genus: i64, group_order: i64, d_list: &[(i64, i64)]) -> Result<i64> {
    let total = group_order * (2 * base_genus - 2) + d_list.iter().map(|(c, d)| c * d).sum::<i64>();
    if total % 2 != 0 {
        return Err(Error::ParityViolation(total));
    }
    Ok(total / 2 + 1)
}

/// Solves `gamma - 1 = |S|(gamma_base - 1) + sum (|S| - l_i)` for `gamma`.
pub fn prank_ds(base_prank: i64, group_order: i64, short_orbits: &[u64]) -> Result<i64> {
    for &l in short_orbits {
        if l == 0 || !(group_order as u64).is_multiple_of(l) || l >= group_order as u64 {
            return Err(Error::Inconsistent(format!(
                "short orbit size {l} for a group of order {group_order}"
            )));
        }
    }
    let gamma = 1
        + group_order * (base_prank - 1)
        + short_orbits
            .iter()
            .map(|&l| group_order - l as i64)
            .sum::<i64>();
    if gamma < 0 {
        return Err(Error::Inconsistent(format!("negative 2-rank {gamma}")));
    }
    Ok(gamma)
}

/// Nakajima's bound `|S| <= 4(gamma - 1)` for 2-groups when `gamma >= 2`.
pub fn nakajima_ok(group_order: u64, prank: i64) -> bool {
    prank < 2 || group_order as i64 <= 4 * (prank - 1)
}

/// Nonzero elements of the subfield `F_q` of the coefficient field.
pub fn subfield_units(field: &Arc<Field>, q: u64) -> Result<Vec<Fq>> {
    if q < 2 || !q.is_power_of_two() || !field.degree().is_multiple_of(q.trailing_zeros()) {
        return Err(Error::Inconsistent(format!(
            "F_{q} is not a subfield of {}",
            field.spec()
        )));
    }
    Ok(field
        .elements()
        .filter(|&a| !a.is_zero() && field.pow(a, q) == a)
        .collect())
}

/// One quadratic subcover `W^2 + W = lambda R` of `t^q + t = R`.
#[derive(Clone, Debug, Serialize)]
pub struct QuadraticLayer {
    pub lambda: String,
    pub genus: i64,
    pub prank: i64,
}

/// Genus and 2-rank of `t^q + t = R` over `K(x)`, assembled from its `q - 1`
/// quadratic subcovers `W_l = sum (l t)^(2^i)`.
#[derive(Clone, Debug, Serialize)]
pub struct CoverData {
    pub q: u64,
    pub layers: Vec<QuadraticLayer>,
    pub genus: i64,
    pub prank: i64,
}

/// For an elementary abelian group the genus (and the 2-rank) of the cover
/// is the sum over the index-2 subgroups of the quotient genera, the base
/// being rational.
pub fn elementary_abelian_cover(r: &RatFun, q: u64) -> Result<CoverData> {
    let field = r.field();
    let mut layers = Vec::new();
    for l in subfield_units(field, q)? {
        let rd = ramification_rational(&r.scale(l), None)?;
        layers.push(QuadraticLayer {
            lambda: field.format(l),
            genus: rd.genus,
            prank: rd.prank,
        });
    }
    Ok(CoverData {
        q,
        genus: layers.iter().map(|l| l.genus).sum(),
        prank: layers.iter().map(|l| l.prank).sum(),
        layers,
    })
}

/// Rational places of `t^q + t = R` lying over one place of `K(x)`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FibreCount {
    pub place: String,
    /// `q / |inertia|`
    pub places_above: u64,
    pub rational: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PlaceCount {
    pub fibres: Vec<FibreCount>,
    pub total: u64,
}

/// Value at a degree-one place of `e` after pole reduction, or `None` when
/// the layer `W^2 + W = e` is ramified there.
fn reduced_value(e: &RatFun, place: &RationalPlace) -> Result<Option<Fq>> {
    let red = as_reduce_rational(e, place)?;
    if red.reduced_order > 0 {
        return Ok(None);
    }
    let w = &red.witness;
    let reg = &(e + &w.square()) + w;
    let v = match place {
        RationalPlace::Finite(p) => reg.eval(p.coeff(0))?,
        RationalPlace::Infinity => invert_variable(&reg).eval(Fq::ZERO)?,
    };
    Ok(Some(v))
}

/// Counts the places of `t^q + t = R` rational over the coefficient field
/// `F_Q`. Over a place `P` of degree one the inertia group is cut out by the
/// ramified quadratic subcovers; the fibre is rational exactly when every
/// unramified subcover splits, i.e. its reduced value has absolute trace 0.
pub fn rational_place_count(r: &RatFun, q: u64) -> Result<PlaceCount> {
    let field = r.field();
    let lambdas = subfield_units(field, q)?;
    let scaled: Vec<RatFun> = lambdas.iter().map(|&l| r.scale(l)).collect();
    let places = field
        .elements()
        .map(|a| RationalPlace::Finite(Poly::linear(field, a)))
        .chain(std::iter::once(RationalPlace::Infinity));
    let mut fibres = Vec::new();
    for pl in places {
        let mut unramified = 0u64;
        let mut split = true;
        for e in &scaled {
            if let Some(c) = reduced_value(e, &pl)? {
                unramified += 1;
                split &= field.trace(c) == 0;
            }
        }
        let above = unramified + 1;
        if !above.is_power_of_two() {
            return Err(Error::Inconsistent(format!(
                "unramified subcovers at {} do not form a subgroup",
                pl.label()
            )));
        }
        fibres.push(FibreCount {
            place: pl.label(),
            places_above: above,
            rational: if split { above } else { 0 },
        });
    }
    let total = fibres.iter().map(|f| f.rational).sum();
    Ok(PlaceCount { fibres, total })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2m::{Field, Fq};

    #[test]
    fn hyperelliptic_layer_genus() {
        for m in [2u32, 3, 4] {
            let f = Field::with_degree(m).unwrap();
            let q = f.size() as usize;
            let xq = &Poly::monomial(&f, Fq::ONE, q) + &Poly::x(&f);
            let e = &RatFun::x(&f) + &RatFun::from_poly(xq).inv().unwrap();
            let rd = ramification_rational(&e, None).unwrap();
            assert_eq!(rd.ramified.len(), q + 1);
            assert!(rd.ramified.iter().all(|r| r.different == 2));
            // q+1 simple poles, each with different exponent 2
            assert_eq!(rd.genus, q as i64);
        }
    }

    #[test]
    fn reduction_removes_even_poles() {
        let f = Field::with_degree(4).unwrap();
        let x = RatFun::x(&f);
        // e = 1/x^2 + 1/x^4 + x^2 is a coboundary-plus-regular: w = 1/x + 1/x^2 ... reduces fully
        let w = &x.inv().unwrap() + &x.square().inv().unwrap();
        let e = &(&w.square() + &w) + &RatFun::one(&f);
        let red = as_reduce_rational(&e, &RationalPlace::Finite(Poly::x(&f))).unwrap();
        assert_eq!(red.reduced_order, 0);
        let fixed = &(&e + &red.witness.square()) + &red.witness;
        assert!(order_at(&fixed, &Poly::x(&f)) >= 0);
        // a genuine coboundary is not certified
        let zeta = &x + &x.inv().unwrap();
        let cob = &zeta.square() + &zeta;
        assert_eq!(
            ramification_rational(&cob, None).unwrap_err(),
            Error::NotCertified
        );
        // x^6 ~ x^3 folds into x^5, leaving a pole of order 5 at infinity
        let e2 = &x.pow(6) + &x.pow(5);
        let red = as_reduce_rational(&e2, &RationalPlace::Infinity).unwrap();
        assert_eq!(red.reduced_order, 5);
        assert_eq!(red.different(), 6);
    }

    #[test]
    fn formula_examples() {
        assert_eq!(genus_hurwitz(1, 2, &[(8, 2)]).unwrap(), 9);
        assert_eq!(genus_hurwitz(1, 2, &[]).unwrap(), 1);
        assert_eq!(genus_hurwitz(0, 2, &[(17, 2)]).unwrap(), 16);
        assert_eq!(
            genus_hurwitz(0, 2, &[(1, 3)]).unwrap_err(),
            Error::ParityViolation(-1)
        );
        assert_eq!(prank_ds(1, 2, &[1; 8]).unwrap(), 9);
        assert_eq!(prank_ds(3, 2, &[]).unwrap(), 5);
        assert!(nakajima_ok(32, 9));
        assert!(!nakajima_ok(64, 9));
    }
    #[test]
    fn elementary_abelian_genus_by_subcovers() {
        let f = Field::parse_spec("gf2^4:0x13").unwrap();
        // t^4 + t = 1/(x^4 + x): every subcover has 4 simple poles
        let r = RatFun::new(Poly::one(&f), Poly::parse(&f, "x^4 + x", "x").unwrap()).unwrap();
        let cd = elementary_abelian_cover(&r, 4).unwrap();
        assert_eq!(cd.layers.len(), 3);
        assert_eq!((cd.genus, cd.prank), (9, 9));
        assert!(subfield_units(&f, 8).is_err());
    }

    #[test]
    fn rational_places_match_brute_force() {
        let f = Field::parse_spec("gf2^4:0x13").unwrap();
        for (src, q) in [("x^3", 2u64), ("x^3 + mu*x", 4), ("mu^3*x^5 + x^2", 4)] {
            let p = Poly::parse(&f, src, "x").unwrap();
            let affine = f
                .elements()
                .flat_map(|x| f.elements().map(move |t| (x, t)))
                .filter(|&(x, t)| f.add(f.pow(t, q), t) == p.eval(x))
                .count() as u64;
            // odd pole order at infinity: one totally ramified rational place
            let pc = rational_place_count(&RatFun::from_poly(p), q).unwrap();
            assert_eq!(pc.total, affine + 1, "{src}");
        }
    }
}

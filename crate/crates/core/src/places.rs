//! Places of the elliptic function field, local expansions, valuations and
//! principal divisors.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::ellcurve::{Curve, Point, TorsionGenerator};
use crate::error::{Error, Result};
use crate::funcfield::FFElem;
use crate::gf2m::Fq;
use crate::poly::Poly;
use crate::residue::ResidueField;
use crate::series::{Laurent, EXACT};

/// Initial relative precision of local expansions.
pub const START_PRECISION: i64 = 8;

/// A place of `K(E)`. Affine places lie over a monic irreducible `p(x)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    /// The neutral element `Yinf`.
    Infinity,
    /// A place of degree `deg p` with `y` congruent to the given residue;
    /// when `p = x` this is the ramified 2-torsion place.
    Point { p: Poly, y: Poly },
    /// The unique place of degree `2 deg p` over an inert `p`.
    Inert { p: Poly },
}

impl Place {
    pub fn from_point(curve: &Curve, pt: &Point) -> Place {
        let f = curve.field();
        match *pt {
            Point::Infinity => Place::Infinity,
            Point::Affine(x0, y0) => Place::Point {
                p: Poly::linear(f, x0),
                y: Poly::constant(f, y0),
            },
        }
    }

    pub fn degree(&self) -> i64 {
        match self {
            Place::Infinity => 1,
            Place::Point { p, .. } => p.deg(),
            Place::Inert { p } => 2 * p.deg(),
        }
    }

    /// Whether this is the place `(0, sqrt(mu))`, where `v(x) = 2`.
    pub fn is_ramified(&self) -> bool {
        matches!(self, Place::Point { p, .. } if p.deg() == 1 && p.coeff(0).is_zero())
    }

    /// Coordinates of a degree-one place.
    pub fn rational_point(&self) -> Option<Point> {
        match self {
            Place::Infinity => Some(Point::Infinity),
            Place::Point { p, y } if p.deg() == 1 => Some(Point::Affine(p.coeff(0), y.coeff(0))),
            _ => None,
        }
    }

    /// Name: `Yinf`, `[i]P0` for torsion points, coordinates otherwise.
    pub fn label(&self, curve: &Curve, torsion: Option<&TorsionGenerator>) -> String {
        if let Some(pt) = self.rational_point() {
            if let Some(i) = torsion.and_then(|t| t.index_of(&pt)) {
                return if i == 0 {
                    "Yinf".into()
                } else {
                    format!("[{i}]P0")
                };
            }
            return curve.format_point(&pt);
        }
        match self {
            Place::Point { p, y } => format!("{{{} = 0, y = {}}}", p.to_text("x"), y.to_text("x")),
            Place::Inert { p } => format!("{{{} = 0, inert}}", p.to_text("x")),
            Place::Infinity => unreachable!(),
        }
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "Yinf"),
            Place::Point { p, y } => write!(f, "Point({p}; y={y})"),
            Place::Inert { p } => write!(f, "Inert({p})"),
        }
    }
}

/// The places lying over a monic irreducible `p(x)`.
pub fn places_above(curve: &Curve, p: &Poly) -> Vec<Place> {
    let f = curve.field();
    if p.deg() == 1 && p.coeff(0).is_zero() {
        return vec![Place::Point {
            p: p.clone(),
            y: Poly::constant(f, curve.sqrt_mu()),
        }];
    }
    let l = ResidueField::new(p);
    let x = l.reduce(&Poly::x(f));
    // y = x u with u^2 + u = h(x)/x^2
    let c = l.mul(
        &l.reduce(&curve.rhs_poly()),
        &l.inv(&l.square(&x)).expect("x invertible mod p"),
    );
    match l.solve_artin_schreier(&c) {
        None => vec![Place::Inert { p: p.clone() }],
        Some(u) => {
            let y0 = l.mul(&x, &u);
            let y1 = &y0 + &x;
            let mut v = vec![
                Place::Point {
                    p: p.clone(),
                    y: y0,
                },
                Place::Point {
                    p: p.clone(),
                    y: y1,
                },
            ];
            v.sort();
            v
        }
    }
}

/// `v_inf` of `a + b y` with `v(x) = -2`, `v(y) = -3`.
fn infinity_order(a: &Poly, b: &Poly) -> i64 {
    let va = if a.is_zero() { i64::MAX } else { -2 * a.deg() };
    let vb = if b.is_zero() {
        i64::MAX
    } else {
        -2 * b.deg() - 3
    };
    va.min(vb)
}

/// Exact valuation computed from norms in the residue field; valid at every
/// place, independent of local expansions.
pub fn valuation_algebraic(f: &FFElem, place: &Place) -> Result<i64> {
    if f.is_zero() {
        return Err(Error::Degenerate("valuation of zero".into()));
    }
    let curve = f.curve();
    let (a, b, den) = (f.num_a(), f.num_b(), f.den());
    match place {
        Place::Infinity => Ok(infinity_order(a, b) + 2 * den.deg()),
        Place::Point { p, y } => {
            let e = if place.is_ramified() { 2 } else { 1 };
            let k = match (a.is_zero(), b.is_zero()) {
                (true, _) => b.multiplicity(p),
                (_, true) => a.multiplicity(p),
                _ => a.multiplicity(p).min(b.multiplicity(p)),
            };
            let (a1, b1) = if a.is_zero() {
                (a.clone(), b.exact_div(&p.pow(k as u64))?)
            } else if b.is_zero() {
                (a.exact_div(&p.pow(k as u64))?, b.clone())
            } else {
                let pk = p.pow(k as u64);
                (a.exact_div(&pk)?, b.exact_div(&pk)?)
            };
            let vden = e * den.multiplicity(p) as i64;
            let norm =
                || crate::funcfield::Lin::new(a1.clone(), b1.clone()).norm(&curve.rhs_poly());
            let vnum = if place.is_ramified() {
                norm().multiplicity(p) as i64
            } else {
                let l = ResidueField::new(p);
                let r = &l.reduce(&a1) + &l.mul(&l.reduce(&b1), y);
                if r.is_zero() {
                    norm().multiplicity(p) as i64
                } else {
                    0
                }
            };
            Ok(e * k as i64 + vnum - vden)
        }
        Place::Inert { p } => {
            let n = f.lin().norm(&curve.rhs_poly());
            Ok(n.multiplicity(p) as i64 / 2 - den.multiplicity(p) as i64)
        }
    }
}

/// Laurent expansions of `x` and `y` in a local parameter `t` at a degree-one
/// place.
#[derive(Clone, Debug)]
pub struct LocalExpansion {
    pub place: Place,
    pub x: Laurent,
    pub y: Laurent,
}

/// Builds the expansions to relative precision `prec`: `x = x0 + t` at
/// ordinary affine points, `t = y - sqrt(mu)` at the 2-torsion point and
/// `t = x/y` at infinity.
pub fn local_expand(curve: &Arc<Curve>, place: &Place, prec: i64) -> Result<LocalExpansion> {
    if prec < 1 {
        return Err(Error::Degenerate("precision must be positive".into()));
    }
    if prec > 1 << 16 {
        return Err(Error::PrecisionExceeded(prec as usize));
    }
    let f = curve.field();
    let h = curve.rhs_poly();
    let nu = curve.nu();
    let mu = curve.mu();
    let pt = place
        .rational_point()
        .ok_or_else(|| Error::Degenerate(format!("{place:?} is not a degree-one place")))?;
    let iterations = 2 * prec + 4;
    let (x, y) = match pt {
        Point::Infinity => {
            // s = 1/y in u = x/y: s = u^3 + nu u^2 s + mu s^3 + u s
            let p = prec + 3;
            let u = Laurent::monomial(f, Fq::ONE, 1, EXACT);
            let u2 = u.square();
            let u3 = u2.mul(&u);
            let mut s = Laurent::zero(f, p);
            for _ in 0..iterations {
                let s3 = s.square().mul(&s);
                let next = u3
                    .add(&u2.mul(&s).scale(nu))
                    .add(&s3.scale(mu))
                    .add(&u.mul(&s))
                    .truncate(p);
                let done = next.eq_to_precision(&s) && next.precision() >= p;
                s = next;
                if done {
                    break;
                }
            }
            let y = s.inv()?;
            (u.mul(&y), y)
        }
        Point::Affine(x0, y0) if x0.is_zero() => {
            // t = y - sqrt(mu): x = (t^2 + x^3 + nu x^2) / (sqrt(mu) + t)
            let p = prec + 2;
            let t = Laurent::monomial(f, Fq::ONE, 1, EXACT);
            let y = Laurent::new(f, 0, vec![y0, Fq::ONE], EXACT);
            let inv = y.truncate(p).inv()?;
            let t2 = t.square();
            let mut x = Laurent::zero(f, p);
            for _ in 0..iterations {
                let x2 = x.square();
                let next = t2.add(&x2.mul(&x)).add(&x2.scale(nu)).mul(&inv).truncate(p);
                let done = next.eq_to_precision(&x) && next.precision() >= p;
                x = next;
                if done {
                    break;
                }
            }
            (x, y.truncate(p))
        }
        Point::Affine(x0, y0) => {
            // Newton: y <- y + (y^2 + x y + h(x)) / x
            let x = Laurent::new(f, 0, vec![x0, Fq::ONE], prec);
            let xinv = x.inv()?;
            let hx = Laurent::eval_poly(&h, &x);
            let mut y = Laurent::constant(f, y0, prec);
            for _ in 0..iterations {
                let fy = y.square().add(&x.mul(&y)).add(&hx);
                if fy.is_zero_to_precision() {
                    break;
                }
                y = y.add(&fy.mul(&xinv));
            }
            (
                x,
                Laurent::new(f, 0, (0..prec).map(|k| y.coeff(k)).collect(), prec),
            )
        }
    };
    Ok(LocalExpansion {
        place: place.clone(),
        x,
        y,
    })
}

impl LocalExpansion {
    /// Series of `(a + b y)` and `den` at the place.
    fn parts(&self, f: &FFElem) -> (Laurent, Laurent) {
        let a = Laurent::eval_poly(f.num_a(), &self.x);
        let b = Laurent::eval_poly(f.num_b(), &self.x);
        let num = a.add(&b.mul(&self.y));
        let den = Laurent::eval_poly(f.den(), &self.x);
        (num, den)
    }

    /// Series of `f`, or `None` when the precision is insufficient to see a
    /// nonzero numerator or denominator.
    pub fn series(&self, f: &FFElem) -> Option<Laurent> {
        let (num, den) = self.parts(f);
        if num.is_zero_to_precision() || den.is_zero_to_precision() {
            return None;
        }
        num.div(&den).ok()
    }
}

/// Upper bound for the order of vanishing of `a + b y` at any place.
fn zero_bound(f: &FFElem) -> i64 {
    let a = f.num_a().deg().max(0);
    let b = f.num_b().deg();
    (2 * a).max(if b >= 0 { 2 * b + 3 } else { 0 }) + 2 * f.den().deg().max(0)
}

/// Expands `f` at a degree-one place with absolute precision at least
/// `abs_prec`, escalating the working precision as needed.
pub fn expand(f: &FFElem, place: &Place, abs_prec: i64) -> Result<Laurent> {
    if f.is_zero() {
        return Err(Error::Degenerate("expansion of zero".into()));
    }
    let bound = zero_bound(f);
    let shift = if *place == Place::Infinity {
        2 * bound + 6
    } else {
        0
    };
    let mut prec = START_PRECISION;
    loop {
        let le = local_expand(f.curve(), place, prec + shift)?;
        if let Some(s) = le.series(f) {
            if s.precision() >= abs_prec {
                return Ok(s);
            }
        }
        if prec > 4 * (bound + abs_prec.abs()) + 4 * START_PRECISION {
            return Err(Error::PrecisionExceeded(prec as usize));
        }
        prec *= 2;
    }
}

/// `v_P(f)`: by local expansion at degree-one places (with precision
/// escalation), by residue-field norms elsewhere.
pub fn valuation(f: &FFElem, place: &Place) -> Result<i64> {
    if f.is_zero() {
        return Err(Error::Degenerate("valuation of zero".into()));
    }
    if place.rational_point().is_none() {
        return valuation_algebraic(f, place);
    }
    let bound = zero_bound(f);
    let shift = if *place == Place::Infinity {
        2 * bound + 6
    } else {
        0
    };
    let mut prec = START_PRECISION;
    loop {
        let le = local_expand(f.curve(), place, prec + shift)?;
        let (num, den) = le.parts(f);
        if let (Some(vn), Some(vd)) = (num.valuation(), den.valuation()) {
            return Ok(vn - vd);
        }
        if prec > 4 * bound + 4 * START_PRECISION {
            return Err(Error::PrecisionExceeded(prec as usize));
        }
        prec *= 2;
    }
}

/// A finite formal sum of places.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Divisor {
    pub entries: BTreeMap<Place, i64>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DivisorEntry {
    pub place: String,
    pub multiplicity: i64,
}

impl Divisor {
    pub fn degree(&self) -> i64 {
        self.entries.iter().map(|(p, m)| p.degree() * m).sum()
    }

    pub fn get(&self, p: &Place) -> i64 {
        self.entries.get(p).copied().unwrap_or(0)
    }

    pub fn add_place(&mut self, p: Place, m: i64) {
        let e = self.entries.entry(p.clone()).or_insert(0);
        *e += m;
        if *e == 0 {
            self.entries.remove(&p);
        }
    }

    pub fn zeros(&self) -> impl Iterator<Item = (&Place, i64)> {
        self.entries
            .iter()
            .filter(|(_, m)| **m > 0)
            .map(|(p, m)| (p, *m))
    }

    pub fn poles(&self) -> impl Iterator<Item = (&Place, i64)> {
        self.entries
            .iter()
            .filter(|(_, m)| **m < 0)
            .map(|(p, m)| (p, *m))
    }

    /// Sorted `(place, multiplicity)` list with readable labels.
    pub fn describe(&self, curve: &Curve, torsion: Option<&TorsionGenerator>) -> Vec<DivisorEntry> {
        let mut v: Vec<DivisorEntry> = self
            .entries
            .iter()
            .map(|(p, m)| DivisorEntry {
                place: p.label(curve, torsion),
                multiplicity: *m,
            })
            .collect();
        v.sort_by(|a, b| a.place.cmp(&b.place));
        v
    }
}

/// All places that can carry a zero or pole of `f`: those above factors of
/// the norm numerator and of the denominator, plus `Yinf`.
pub fn candidate_places(f: &FFElem) -> Vec<Place> {
    let curve = f.curve();
    let norm = f.lin().norm(&curve.rhs_poly());
    let mut polys: Vec<Poly> = norm.factor().into_iter().map(|(p, _)| p).collect();
    polys.extend(f.den().factor().into_iter().map(|(p, _)| p));
    polys.sort();
    polys.dedup();
    let mut out = vec![Place::Infinity];
    for p in polys {
        out.extend(places_above(curve, &p));
    }
    out
}

/// `div(f)` over the given candidate places, checked to have degree 0.
pub fn principal_divisor(f: &FFElem, candidates: &[Place]) -> Result<Divisor> {
    if f.is_zero() {
        return Err(Error::Degenerate("divisor of zero".into()));
    }
    let mut d = Divisor::default();
    for p in candidates {
        let v = valuation(f, p)?;
        if v != 0 {
            d.add_place(p.clone(), v);
        }
    }
    let deg = d.degree();
    if deg != 0 {
        return Err(Error::NonzeroDegree { deficit: deg });
    }
    Ok(d)
}

/// `div(f)` with automatically generated candidate places.
pub fn divisor(f: &FFElem) -> Result<Divisor> {
    principal_divisor(f, &candidate_places(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ellcurve::find_torsion_generator;
    use crate::gf2m::Field;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn curve16() -> Arc<Curve> {
        let f = Field::parse_spec("gf2^4:0x13").unwrap();
        Curve::new(&f, Fq::ZERO, f.generator()).unwrap()
    }

    fn random_elem(c: &Arc<Curve>, rng: &mut ChaCha8Rng, deg: usize) -> FFElem {
        let f = c.field();
        let mut rp = |d: usize| Poly::new(f, (0..=d).map(|_| f.random(rng)).collect());
        let a = rp(deg);
        let b = rp(deg.saturating_sub(1));
        let mut den = rp(deg);
        if den.is_zero() {
            den = Poly::one(f);
        }
        FFElem::new(c, a, b, den).unwrap()
    }

    #[test]
    fn expansions_satisfy_curve_equation() {
        let c = curve16();
        let h = c.rhs_poly();
        for pt in c.points().unwrap() {
            let place = Place::from_point(&c, &pt);
            let le = local_expand(&c, &place, 12).unwrap();
            let lhs = le.y.square().add(&le.x.mul(&le.y));
            let rhs = Laurent::eval_poly(&h, &le.x);
            assert!(lhs.eq_to_precision(&rhs), "{place:?}");
            let (vx, vy) = (le.x.valuation(), le.y.valuation());
            match pt {
                Point::Infinity => assert_eq!((vx, vy), (Some(-2), Some(-3))),
                Point::Affine(x0, _) if x0.is_zero() => assert_eq!(vx, Some(2)),
                Point::Affine(x0, _) => {
                    assert_eq!(vx, Some(0));
                    assert_eq!(
                        le.x.add(&Laurent::constant(c.field(), x0, EXACT))
                            .valuation(),
                        Some(1)
                    );
                }
            }
        }
    }

    #[test]
    fn series_and_norm_valuations_agree() {
        let c = curve16();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let places: Vec<Place> = c
            .points()
            .unwrap()
            .iter()
            .map(|p| Place::from_point(&c, p))
            .collect();
        for _ in 0..30 {
            let f = random_elem(&c, &mut rng, 3);
            if f.is_zero() {
                continue;
            }
            for p in &places {
                assert_eq!(
                    valuation(&f, p).unwrap(),
                    valuation_algebraic(&f, p).unwrap(),
                    "{f} at {p:?}"
                );
            }
        }
        // forced zeros at a split point and at the 2-torsion point
        let x = FFElem::x(&c);
        let t2 = Place::from_point(&c, &c.two_torsion());
        assert_eq!(valuation(&x, &t2).unwrap(), 2);
        assert_eq!(valuation(&x, &Place::Infinity).unwrap(), -2);
        assert_eq!(valuation(&FFElem::y(&c), &Place::Infinity).unwrap(), -3);
    }

    #[test]
    fn divisors_have_degree_zero() {
        let c = curve16();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let f = random_elem(&c, &mut rng, 4);
            if f.is_zero() {
                continue;
            }
            let d = divisor(&f).unwrap();
            assert_eq!(d.degree(), 0);
        }
        assert!(divisor(&FFElem::constant(&c, c.field().generator()))
            .unwrap()
            .entries
            .is_empty());
    }

    #[test]
    fn divisor_of_x_minus_point() {
        let c = curve16();
        let g = find_torsion_generator(&c, 16, 1).unwrap();
        let p = g.multiple(3);
        let f = &FFElem::x(&c) + &FFElem::constant(&c, p.x().unwrap());
        let d = divisor(&f).unwrap();
        assert_eq!(d.get(&Place::from_point(&c, &p)), 1);
        assert_eq!(d.get(&Place::from_point(&c, &c.neg(&p))), 1);
        assert_eq!(d.get(&Place::Infinity), -2);
        let labels = d.describe(&c, Some(&g));
        assert!(labels.iter().any(|e| e.place == "[3]P0"));
        assert!(labels.iter().any(|e| e.place == "[13]P0"));
    }
}

//! The elliptic function field `K(E) = K(x)[y]/(y^2 + xy + x^3 + nu*x^2 + mu)`,
//! translation and involution pullbacks, relative traces and the Witt
//! elements `d, a, c_k, e_k`.

use std::fmt;
use std::ops::{Add, Mul};
use std::sync::{Arc, Mutex};

use crate::ellcurve::{Curve, Point, TorsionGenerator};
use crate::error::{Error, Result};
use crate::gf2m::{Field, Fq};
use crate::poly::Poly;
use crate::ratfun::RatFun;

/// `(a + b*y) / den` with `den` monic and `gcd(a, b, den) = 1`.
#[derive(Clone)]
pub struct FFElem {
    curve: Arc<Curve>,
    a: Poly,
    b: Poly,
    den: Poly,
}

impl PartialEq for FFElem {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && self.den == other.den
    }
}
impl Eq for FFElem {}

/// Polynomial pair `a + b*y` (no denominator); used for cheap intermediate
/// arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lin {
    pub a: Poly,
    pub b: Poly,
}

impl Lin {
    pub fn new(a: Poly, b: Poly) -> Lin {
        Lin { a, b }
    }

    pub fn zero(f: &Arc<Field>) -> Lin {
        Lin::new(Poly::zero(f), Poly::zero(f))
    }

    pub fn from_poly(p: Poly) -> Lin {
        let z = Poly::zero(p.field());
        Lin::new(p, z)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, o: &Lin) -> Lin {
        Lin::new(&self.a + &o.a, &self.b + &o.b)
    }

    pub fn scale_poly(&self, p: &Poly) -> Lin {
        Lin::new(&self.a * p, &self.b * p)
    }

    /// Product, reducing `y^2 = x*y + h`.
    pub fn mul(&self, o: &Lin, h: &Poly) -> Lin {
        let bb = &self.b * &o.b;
        let a = &(&self.a * &o.a) + &(&bb * h);
        let b = &(&(&self.a * &o.b) + &(&self.b * &o.a)) + &bb.shift(1);
        Lin::new(a, b)
    }

    /// Image under `y -> x + y`.
    pub fn conj(&self) -> Lin {
        Lin::new(&self.a + &self.b.shift(1), self.b.clone())
    }

    /// `(a + b y)(a + b x + b y) = a^2 + a b x + b^2 h`.
    pub fn norm(&self, h: &Poly) -> Poly {
        &(&self.a.square() + &(&self.a * &self.b).shift(1)) + &(&self.b.square() * h)
    }
}

impl FFElem {
    /// Normalizing constructor.
    pub fn new(curve: &Arc<Curve>, a: Poly, b: Poly, den: Poly) -> Result<FFElem> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if a.is_zero() && b.is_zero() {
            return Ok(FFElem::zero(curve));
        }
        let mut g = a.gcd(&b).gcd(&den);
        let lc = den.lead();
        if !g.is_one() || lc != Fq::ONE {
            g = g.scale(lc);
            let a = a.exact_div(&g)?;
            let b = b.exact_div(&g)?;
            let den = den.exact_div(&g)?;
            debug_assert!(den.is_monic());
            return Ok(FFElem {
                curve: curve.clone(),
                a,
                b,
                den,
            });
        }
        Ok(FFElem {
            curve: curve.clone(),
            a,
            b,
            den,
        })
    }

    pub fn from_lin(curve: &Arc<Curve>, l: Lin, den: Poly) -> Result<FFElem> {
        FFElem::new(curve, l.a, l.b, den)
    }

    /// `A + B*y` from two rational functions.
    pub fn from_parts(curve: &Arc<Curve>, a: &RatFun, b: &RatFun) -> FFElem {
        let den = a.den().lcm(b.den());
        let an = &a.num().clone() * &den.exact_div(a.den()).expect("lcm");
        let bn = &b.num().clone() * &den.exact_div(b.den()).expect("lcm");
        FFElem::new(curve, an, bn, den).expect("nonzero denominator")
    }

    pub fn from_ratfun(curve: &Arc<Curve>, r: &RatFun) -> FFElem {
        FFElem {
            curve: curve.clone(),
            a: r.num().clone(),
            b: Poly::zero(curve.field()),
            den: r.den().clone(),
        }
    }

    pub fn from_poly(curve: &Arc<Curve>, p: Poly) -> FFElem {
        FFElem {
            curve: curve.clone(),
            b: Poly::zero(p.field()),
            den: Poly::one(p.field()),
            a: p,
        }
    }

    pub fn zero(curve: &Arc<Curve>) -> FFElem {
        FFElem::from_poly(curve, Poly::zero(curve.field()))
    }

    pub fn one(curve: &Arc<Curve>) -> FFElem {
        FFElem::from_poly(curve, Poly::one(curve.field()))
    }

    pub fn constant(curve: &Arc<Curve>, c: Fq) -> FFElem {
        FFElem::from_poly(curve, Poly::constant(curve.field(), c))
    }

    pub fn x(curve: &Arc<Curve>) -> FFElem {
        FFElem::from_poly(curve, Poly::x(curve.field()))
    }

    pub fn y(curve: &Arc<Curve>) -> FFElem {
        let f = curve.field();
        FFElem {
            curve: curve.clone(),
            a: Poly::zero(f),
            b: Poly::one(f),
            den: Poly::one(f),
        }
    }

    pub fn curve(&self) -> &Arc<Curve> {
        &self.curve
    }

    pub fn field(&self) -> &Arc<Field> {
        self.curve.field()
    }

    /// Numerator polynomials `(a, b)` of `(a + b y)/den`.
    pub fn num_a(&self) -> &Poly {
        &self.a
    }

    pub fn num_b(&self) -> &Poly {
        &self.b
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn lin(&self) -> Lin {
        Lin::new(self.a.clone(), self.b.clone())
    }

    /// Coordinate `A` in `A + B*y`.
    pub fn part_a(&self) -> RatFun {
        RatFun::new(self.a.clone(), self.den.clone()).expect("nonzero")
    }

    /// Coordinate `B` in `A + B*y`.
    pub fn part_b(&self) -> RatFun {
        RatFun::new(self.b.clone(), self.den.clone()).expect("nonzero")
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.den.is_one()
    }

    /// Whether the element lies in `K(x)`.
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_constant(&self) -> Option<Fq> {
        (self.b.is_zero() && self.den.is_one() && self.a.is_constant()).then(|| self.a.coeff(0))
    }

    fn h(&self) -> Poly {
        self.curve.rhs_poly()
    }

    fn check_curve(&self, o: &FFElem) {
        assert!(*self.curve == *o.curve, "elements on different curves");
    }

    /// Image under the elliptic involution `y -> x + y`.
    pub fn phi(&self) -> FFElem {
        FFElem {
            curve: self.curve.clone(),
            a: &self.a + &self.b.shift(1),
            b: self.b.clone(),
            den: self.den.clone(),
        }
    }

    /// `f * phi(f)` as a rational function.
    pub fn norm(&self) -> RatFun {
        RatFun::new(self.lin().norm(&self.h()), self.den.square()).expect("nonzero")
    }

    pub fn inv(&self) -> Result<FFElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let h = self.h();
        let n = self.lin().norm(&h);
        let c = self.lin().conj().scale_poly(&self.den);
        FFElem::from_lin(&self.curve, c, n)
    }

    pub fn div(&self, o: &FFElem) -> Result<FFElem> {
        Ok(self * &o.inv()?)
    }

    pub fn square(&self) -> FFElem {
        // (a + b y)^2 = a^2 + b^2 (x y + h)
        let b2 = self.b.square();
        FFElem::new(
            &self.curve,
            &self.a.square() + &(&b2 * &self.h()),
            b2.shift(1),
            self.den.square(),
        )
        .expect("nonzero")
    }

    pub fn pow(&self, mut e: u64) -> FFElem {
        let mut acc = FFElem::one(&self.curve);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    pub fn scale(&self, c: Fq) -> FFElem {
        FFElem::new(
            &self.curve,
            self.a.scale(c),
            self.b.scale(c),
            self.den.clone(),
        )
        .expect("nonzero")
    }

    /// A square root in `K(E)` if one exists.
    pub fn sqrt(&self) -> Option<FFElem> {
        let p = self.part_a();
        let q = self.part_b();
        let bsq = q.div(&RatFun::x(self.field())).expect("x != 0");
        let b = bsq.sqrt()?;
        let h = RatFun::from_poly(self.h());
        let a = (&p + &(&bsq * &h)).sqrt()?;
        Some(FFElem::from_parts(&self.curve, &a, &b))
    }

    /// Value at an affine point not a pole.
    pub fn eval(&self, p: &Point) -> Result<Fq> {
        let f = self.field();
        let Point::Affine(x0, y0) = *p else {
            return Err(Error::Degenerate("evaluation at infinity".into()));
        };
        let top = f.add(self.a.eval(x0), f.mul(self.b.eval(x0), y0));
        f.div(top, self.den.eval(x0))
    }

    /// Substitutes `(x, y) -> (X/L^2, Y/L^3)` for polynomial pairs `X, Y`
    /// and a polynomial `L`.
    pub fn substitute(&self, img: &Image) -> Result<FFElem> {
        let h = self.h();
        let da = self.a.deg().max(0) as usize;
        let db = self.b.deg().max(0) as usize;
        let dd = self.den.deg().max(0) as usize;
        let lpow = img.lpows(2 * da.max(db).max(dd) + 3);
        if self.is_zero() {
            return Ok(FFElem::zero(&self.curve));
        }
        let ahat = img.homogeneous(&self.a, &h, &lpow);
        let (num, e) = if self.b.is_zero() {
            (ahat, 2 * da)
        } else {
            let bhat = img.homogeneous(&self.b, &h, &lpow).mul(&img.ny, &h);
            let e = (2 * da).max(2 * db + 3);
            let num = ahat
                .scale_poly(&lpow[e - 2 * da])
                .add(&bhat.scale_poly(&lpow[e - 2 * db - 3]));
            (num, e)
        };
        let num = num.scale_poly(&lpow[2 * dd]);
        if self.den.is_constant() {
            let c = self.den.coeff(0);
            return FFElem::from_lin(&self.curve, num, lpow[e].scale(c));
        }
        let dhat = img.homogeneous(&self.den, &h, &lpow);
        let top = num.mul(&dhat.conj(), &h);
        let bottom = &lpow[e] * &dhat.norm(&h);
        FFElem::from_lin(&self.curve, top, bottom)
    }

    /// Canonical text `(A) + (B)*y`.
    pub fn to_text(&self) -> String {
        let a = self.part_a().to_text("x");
        if self.b.is_zero() {
            return a;
        }
        format!("({}) + ({})*y", a, self.part_b().to_text("x"))
    }
}

impl fmt::Debug for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Display for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl Add for &FFElem {
    type Output = FFElem;
    fn add(self, o: &FFElem) -> FFElem {
        self.check_curve(o);
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        if self.den == o.den {
            return FFElem::new(
                &self.curve,
                &self.a + &o.a,
                &self.b + &o.b,
                self.den.clone(),
            )
            .expect("nonzero");
        }
        let g = self.den.gcd(&o.den);
        let s = o.den.exact_div(&g).expect("gcd divides");
        let t = self.den.exact_div(&g).expect("gcd divides");
        FFElem::new(
            &self.curve,
            &(&self.a * &s) + &(&o.a * &t),
            &(&self.b * &s) + &(&o.b * &t),
            &self.den * &s,
        )
        .expect("nonzero")
    }
}

impl Mul for &FFElem {
    type Output = FFElem;
    fn mul(self, o: &FFElem) -> FFElem {
        self.check_curve(o);
        if self.is_zero() || o.is_zero() {
            return FFElem::zero(&self.curve);
        }
        let l = self.lin().mul(&o.lin(), &self.h());
        FFElem::from_lin(&self.curve, l, &self.den * &o.den).expect("nonzero")
    }
}

impl Add for FFElem {
    type Output = FFElem;
    fn add(self, o: FFElem) -> FFElem {
        &self + &o
    }
}

impl Mul for FFElem {
    type Output = FFElem;
    fn mul(self, o: FFElem) -> FFElem {
        &self * &o
    }
}

/// Operations accepted by [`ff_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FFOp {
    Add,
    Mul,
    Inv,
}

/// Checked arithmetic; `Inv` ignores the second operand.
pub fn ff_arith(f: &FFElem, g: &FFElem, op: FFOp) -> Result<FFElem> {
    if *f.curve != *g.curve {
        return Err(Error::CurveMismatch);
    }
    match op {
        FFOp::Add => Ok(f + g),
        FFOp::Mul => Ok(f * g),
        FFOp::Inv => f.inv(),
    }
}

/// Square root test in `K(E)`.
pub fn ff_square_test(f: &FFElem) -> Option<FFElem> {
    f.sqrt()
}

/// Coordinate images `x -> nx / l^2`, `y -> ny / l^3` of a rational map.
#[derive(Clone, Debug)]
pub struct Image {
    pub nx: Lin,
    pub ny: Lin,
    pub l: Poly,
    cache: Arc<Mutex<Vec<Poly>>>,
}

impl Image {
    pub fn new(nx: Lin, ny: Lin, l: Poly) -> Image {
        let one = Poly::one(l.field());
        Image {
            nx,
            ny,
            l,
            cache: Arc::new(Mutex::new(vec![one])),
        }
    }

    /// Powers `l^0, ..., l^k`.
    fn lpows(&self, k: usize) -> Vec<Poly> {
        let mut c = self.cache.lock().expect("power cache poisoned");
        while c.len() <= k {
            let next = &c[c.len() - 1] * &self.l;
            c.push(next);
        }
        c[..=k].to_vec()
    }

    /// `sum p_i nx^i l^(2(d-i))` for `d = deg p`, by homogeneous Horner.
    fn homogeneous(&self, p: &Poly, h: &Poly, lpow: &[Poly]) -> Lin {
        let f = p.field();
        let Some(d) = p.degree() else {
            return Lin::zero(f);
        };
        let mut acc = Lin::from_poly(Poly::constant(f, p.coeff(d)));
        for i in (0..d).rev() {
            acc = acc.mul(&self.nx, h);
            let c = p.coeff(i);
            if !c.is_zero() {
                acc.a.add_assign_scaled(&lpow[2 * (d - i)], c, 0);
            }
        }
        acc
    }
}

/// A base automorphism `P -> eps*P + [shift]P0` of the curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BaseMap {
    pub shift: u64,
    pub negate: bool,
}

impl BaseMap {
    pub fn identity() -> BaseMap {
        BaseMap {
            shift: 0,
            negate: false,
        }
    }

    pub fn translation(i: i64, order: u64) -> BaseMap {
        BaseMap {
            shift: i.rem_euclid(order as i64) as u64,
            negate: false,
        }
    }

    pub fn involution() -> BaseMap {
        BaseMap {
            shift: 0,
            negate: true,
        }
    }

    /// Point map of `self` after `other`: `P -> self(other(P))`.
    pub fn compose(&self, other: &BaseMap, order: u64) -> BaseMap {
        let j = if self.negate {
            (order - other.shift % order) % order
        } else {
            other.shift
        };
        BaseMap {
            shift: (self.shift + j) % order,
            negate: self.negate ^ other.negate,
        }
    }

    pub fn apply(&self, p: &Point, tg: &TorsionGenerator) -> Point {
        let e = &tg.curve;
        let q = if self.negate { e.neg(p) } else { *p };
        e.add(&q, &tg.multiple(self.shift as i64))
    }

    pub fn label(&self) -> String {
        match (self.shift, self.negate) {
            (0, false) => "id".into(),
            (0, true) => "phi".into(),
            (i, false) => format!("g0^{i}"),
            (i, true) => format!("g0^{i}*phi"),
        }
    }
}

/// Translation pullbacks by multiples of a torsion generator.
#[derive(Debug)]
pub struct Translations {
    pub torsion: TorsionGenerator,
    images: Vec<Option<Image>>,
}

impl Translations {
    pub fn new(torsion: TorsionGenerator) -> Result<Translations> {
        let curve = torsion.curve.clone();
        let f = curve.field().clone();
        let h = curve.rhs_poly();
        let mut images = Vec::with_capacity(torsion.order as usize);
        for (i, pt) in torsion.multiples().into_iter().enumerate() {
            let Point::Affine(xx, yy) = pt else {
                if i != 0 {
                    return Err(Error::Inconsistent(format!(
                        "[{i}]P0 is the neutral element"
                    )));
                }
                images.push(None);
                continue;
            };
            // x' = (X y + X x^2 + (X^2 + Y) x) / (x + X)^2
            let l = Poly::linear(&f, xx);
            let nx = Lin::new(
                Poly::new(&f, vec![Fq::ZERO, f.add(f.square(xx), yy), xx]),
                Poly::constant(&f, xx),
            );
            // y' = (y + Y)/(x + X) * (x' + X) + x' + Y, over l^3
            let l2 = l.square();
            let y_plus = Lin::new(Poly::constant(&f, yy), Poly::one(&f));
            let t1 = y_plus.mul(&nx.add(&Lin::from_poly(l2.scale(xx))), &h);
            let t2 = nx.add(&Lin::from_poly(l2.scale(yy))).scale_poly(&l);
            let ny = t1.add(&t2);
            images.push(Some(Image::new(nx, ny, l)));
        }
        Ok(Translations { torsion, images })
    }

    pub fn curve(&self) -> &Arc<Curve> {
        &self.torsion.curve
    }

    /// `2n`, the order of the generator.
    pub fn order(&self) -> u64 {
        self.torsion.order
    }

    pub fn image(&self, i: i64) -> Option<&Image> {
        self.images[i.rem_euclid(self.order() as i64) as usize].as_ref()
    }

    /// Pullback by the translation `P -> P + [i]P0`.
    pub fn translate(&self, f: &FFElem, i: i64) -> Result<FFElem> {
        match self.image(i) {
            None => Ok(f.clone()),
            Some(img) => f.substitute(img),
        }
    }

    /// Pullback `f o map`.
    pub fn pullback(&self, f: &FFElem, map: &BaseMap) -> Result<FFElem> {
        let t = self.translate(f, map.shift as i64)?;
        Ok(if map.negate { t.phi() } else { t })
    }

    /// `x o g0^i`.
    pub fn x_image(&self, i: i64) -> FFElem {
        let c = self.curve();
        match self.image(i) {
            None => FFElem::x(c),
            Some(img) => FFElem::from_lin(c, img.nx.clone(), img.l.square()).expect("nonzero"),
        }
    }

    /// `y o g0^i`.
    pub fn y_image(&self, i: i64) -> FFElem {
        let c = self.curve();
        match self.image(i) {
            None => FFElem::y(c),
            Some(img) => FFElem::from_lin(c, img.ny.clone(), img.l.pow(3)).expect("nonzero"),
        }
    }

    /// `n`, the order of `g = g0^2`.
    pub fn n(&self) -> u64 {
        self.order() / 2
    }

    /// `g^v(f)` with `g = g0^2`.
    pub fn g_pow(&self, f: &FFElem, v: i64) -> Result<FFElem> {
        self.translate(f, 2 * v)
    }

    /// Relative trace `sum_{j<n} g^j(f)`.
    pub fn trace_g(&self, f: &FFElem) -> Result<FFElem> {
        let mut acc = FFElem::zero(self.curve());
        for j in 0..self.n() as i64 {
            acc = &acc + &self.g_pow(f, j)?;
        }
        Ok(acc)
    }

    /// Partial sums `f_{g^0} = 0, f_{g^v} = f + g(f) + ... + g^(v-1)(f)` for
    /// `0 <= v <= count`.
    pub fn partial_sums(&self, f: &FFElem, count: usize) -> Result<Vec<FFElem>> {
        let mut out = vec![FFElem::zero(self.curve())];
        for j in 0..count as i64 {
            let next = &out[j as usize] + &self.g_pow(f, j)?;
            out.push(next);
        }
        Ok(out)
    }
}

/// Choice of the element `d` with `Tr_g(d) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum DVariant {
    /// `d = x / Tr_g(x)`.
    Standard,
    /// `d = y/x + (Tr_g(y/x) + 1) x / Tr_g(x)`.
    Alternative,
}

/// The Witt elements of the construction for one odd `k`.
#[derive(Clone, Debug)]
pub struct WittElements {
    pub k: u64,
    pub variant: DVariant,
    pub trace_x: FFElem,
    pub d: FFElem,
    pub a: FFElem,
    pub c_k: FFElem,
    pub e_k: FFElem,
}

/// Builds `d`, `a = d^2 + d`, `c_k = g0^k(x)` and
/// `e_k = (1/Tr_g(c_k)) sum_{v<n} a_{g^v} g^v(c_k)`.
pub fn witt_elements(tr: &Translations, k: u64, variant: DVariant) -> Result<WittElements> {
    let order = tr.order();
    if k.is_multiple_of(2) || k == 0 || k >= order {
        return Err(Error::Degenerate(format!(
            "k = {k} must be odd and below {order}"
        )));
    }
    let curve = tr.curve();
    let x = FFElem::x(curve);
    let trace_x = tr.trace_g(&x)?;
    if trace_x.is_zero() {
        return Err(Error::Degenerate("Tr_g(x) vanishes".into()));
    }
    let d = match variant {
        DVariant::Standard => x.div(&trace_x)?,
        DVariant::Alternative => {
            let yx = FFElem::y(curve).div(&x)?;
            let t = &tr.trace_g(&yx)? + &FFElem::one(curve);
            &yx + &(&t * &x.div(&trace_x)?)
        }
    };
    let a = &d.square() + &d;
    let n = tr.n() as usize;
    // a_{g^v} = D_v^2 + D_v with D_v = d + g(d) + ... + g^(v-1)(d)
    let dsums = tr.partial_sums(&d, n - 1)?;
    let c_k = tr.x_image(k as i64);
    let mut num = FFElem::zero(curve);
    let mut tr_c = FFElem::zero(curve);
    for (v, dv) in dsums.iter().enumerate() {
        let gc = tr.x_image(k as i64 + 2 * v as i64);
        tr_c = &tr_c + &gc;
        if v > 0 {
            num = &num + &(&(&dv.square() + dv) * &gc);
        }
    }
    if tr_c.is_zero() {
        return Err(Error::Degenerate(format!("Tr_g(c_{k}) vanishes")));
    }
    let e_k = num.div(&tr_c)?;
    Ok(WittElements {
        k,
        variant,
        trace_x,
        d,
        a,
        c_k,
        e_k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ellcurve::find_torsion_generator;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn setup(order: u64) -> Translations {
        let f = Field::parse_spec("gf2^4:0x13").unwrap();
        let e = Curve::new(&f, Fq::ZERO, f.generator()).unwrap();
        Translations::new(find_torsion_generator(&e, order, 3).unwrap()).unwrap()
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
    fn defining_relation_examples() {
        let tr = setup(16);
        let c = tr.curve();
        let f = c.field();
        let y = FFElem::y(c);
        let x = FFElem::x(c);
        let expect = FFElem::new(
            c,
            Poly::parse(f, "x^3 + mu", "x").unwrap(),
            Poly::x(f),
            Poly::one(f),
        )
        .unwrap();
        assert_eq!(&y * &y, expect);
        assert!((&y * &y.inv().unwrap()).is_one());
        let norm = FFElem::from_poly(c, Poly::parse(f, "x^3 + mu", "x").unwrap());
        assert_eq!(&y * &(&x + &y), norm);
        assert_eq!(y.phi(), &x + &y);
        assert_eq!(x.phi(), x);
    }

    #[test]
    fn field_axioms_on_random_elements() {
        let tr = setup(16);
        let c = tr.curve();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let p = random_elem(c, &mut rng, 4);
            let q = random_elem(c, &mut rng, 3);
            let r = random_elem(c, &mut rng, 2);
            assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            if !p.is_zero() {
                assert!((&p * &p.inv().unwrap()).is_one());
            }
            assert_eq!(p.square(), &p * &p);
        }
    }

    #[test]
    fn square_test_examples() {
        let tr = setup(16);
        let c = tr.curve();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let p = random_elem(c, &mut rng, 3);
            assert_eq!(ff_square_test(&p.square()).unwrap().square(), p.square());
        }
        assert!(ff_square_test(&FFElem::x(c)).is_none());
        assert!(ff_square_test(&FFElem::y(c)).is_none());
    }

    #[test]
    fn translation_pullback_matches_group_law() {
        let tr = setup(16);
        let c = tr.curve().clone();
        let pts = c.points().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let f = random_elem(&c, &mut rng, 3);
        for i in 0..16i64 {
            let fx = tr.x_image(i);
            let fy = tr.y_image(i);
            let ff = tr.translate(&f, i).unwrap();
            for p in &pts {
                let q = c.add(p, &tr.torsion.multiple(i));
                if let (Point::Affine(..), Point::Affine(qx, qy)) = (p, q) {
                    if let Ok(v) = fx.eval(p) {
                        assert_eq!(v, qx, "i={i}");
                    }
                    if let Ok(v) = fy.eval(p) {
                        assert_eq!(v, qy, "i={i}");
                    }
                    if let (Ok(v), Ok(w)) = (ff.eval(p), f.eval(&q)) {
                        assert_eq!(v, w);
                    }
                }
            }
        }
    }

    #[test]
    fn pullbacks_are_homomorphisms_of_order_2n() {
        let tr = setup(16);
        let c = tr.curve().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..4 {
            let p = random_elem(&c, &mut rng, 3);
            let q = random_elem(&c, &mut rng, 2);
            let i = rng.gen_range(1..16);
            assert_eq!(
                tr.translate(&(&p * &q), i).unwrap(),
                &tr.translate(&p, i).unwrap() * &tr.translate(&q, i).unwrap()
            );
            // composing translations
            let j = rng.gen_range(1..16);
            assert_eq!(
                tr.translate(&tr.translate(&p, i).unwrap(), j).unwrap(),
                tr.translate(&p, i + j).unwrap()
            );
            assert_eq!(tr.translate(&p, 16).unwrap(), p);
            // dihedral relation on the base
            let lhs = tr.translate(&p.phi(), 1).unwrap().phi();
            assert_eq!(lhs, tr.translate(&p, -1).unwrap());
        }
    }

    #[test]
    fn base_map_composition_matches_pullbacks() {
        let tr = setup(16);
        let c = tr.curve().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let p = random_elem(&c, &mut rng, 2);
        let a = BaseMap {
            shift: 3,
            negate: true,
        };
        let b = BaseMap {
            shift: 5,
            negate: false,
        };
        // (f o a) o b = f o (a o b)
        let lhs = tr.pullback(&tr.pullback(&p, &a).unwrap(), &b).unwrap();
        let rhs = tr.pullback(&p, &a.compose(&b, 16)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn trace_of_d_is_one() {
        let tr = setup(16);
        for variant in [DVariant::Standard, DVariant::Alternative] {
            let w = witt_elements(&tr, 7, variant).unwrap();
            assert!(tr.trace_g(&w.d).unwrap().is_one(), "{variant:?}");
            assert!(tr.trace_g(&w.a).unwrap().is_zero());
            let g = |f: &FFElem| tr.g_pow(f, 1).unwrap();
            assert_eq!(&g(&w.e_k) + &w.e_k, w.a);
        }
    }
}

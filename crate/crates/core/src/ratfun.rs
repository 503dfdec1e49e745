//! Normalized rational functions over GF(2^m): the field K(x).

use std::fmt;
use std::ops::{Add, Mul};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf2m::{Field, Fq};
use crate::poly::Poly;

/// `num / den` with `den` monic and `gcd(num, den) = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

/// Operations accepted by [`ratfun_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Mul,
    Inv,
}

/// Checked arithmetic; `Inv` ignores `b`.
pub fn ratfun_arith(a: &RatFun, b: &RatFun, op: RatOp) -> Result<RatFun> {
    if *a.field() != *b.field() {
        return Err(Error::FieldMismatch(a.field().spec(), b.field().spec()));
    }
    match op {
        RatOp::Add => Ok(a + b),
        RatOp::Mul => Ok(a * b),
        RatOp::Inv => a.inv(),
    }
}

/// Square root in K(x) if `f` is a square.
pub fn ratfun_sqrt_test(f: &RatFun) -> Option<RatFun> {
    f.sqrt()
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<RatFun> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let field = num.field().clone();
        if num.is_zero() {
            return Ok(RatFun::zero(&field));
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g)?, den.exact_div(&g)?)
        };
        let lc = d.lead();
        if lc != Fq::ONE {
            let inv = field.inv(lc)?;
            n = n.scale(inv);
            d = d.scale(inv);
        }
        Ok(RatFun { num: n, den: d })
    }

    pub fn from_poly(p: Poly) -> RatFun {
        let one = Poly::one(p.field());
        RatFun { num: p, den: one }
    }

    pub fn zero(field: &Arc<Field>) -> RatFun {
        RatFun::from_poly(Poly::zero(field))
    }

    pub fn one(field: &Arc<Field>) -> RatFun {
        RatFun::from_poly(Poly::one(field))
    }

    pub fn constant(field: &Arc<Field>, c: Fq) -> RatFun {
        RatFun::from_poly(Poly::constant(field, c))
    }

    pub fn x(field: &Arc<Field>) -> RatFun {
        RatFun::from_poly(Poly::x(field))
    }

    pub fn field(&self) -> &Arc<Field> {
        self.num.field()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// Constant value, if the function is constant.
    pub fn as_constant(&self) -> Option<Fq> {
        (self.den.is_one() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn inv(&self) -> Result<RatFun> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RatFun) -> Result<RatFun> {
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, c: Fq) -> RatFun {
        if c.is_zero() {
            return RatFun::zero(self.field());
        }
        RatFun {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn square(&self) -> RatFun {
        RatFun {
            num: self.num.square(),
            den: self.den.square(),
        }
    }

    pub fn pow(&self, e: u64) -> RatFun {
        RatFun {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    pub fn derivative(&self) -> RatFun {
        // (n/d)' = (n'd + nd')/d^2
        let top = &(&self.num.derivative() * &self.den) + &(&self.num * &self.den.derivative());
        RatFun::new(top, self.den.square()).expect("nonzero denominator")
    }

    /// Square root when `self` is a square (both numerator and denominator
    /// are then squares because the representation is reduced).
    pub fn sqrt(&self) -> Option<RatFun> {
        let n = self.num.sqrt()?;
        let d = self.den.sqrt()?;
        Some(RatFun { num: n, den: d })
    }

    /// Degree at infinity: `deg num - deg den` (`None` for zero).
    pub fn degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.num.deg() - self.den.deg())
    }

    pub fn eval(&self, x: Fq) -> Result<Fq> {
        let d = self.den.eval(x);
        self.field().div(self.num.eval(x), d)
    }

    /// Substitutes a rational function for `x`.
    pub fn compose(&self, g: &RatFun) -> Result<RatFun> {
        // homogeneous evaluation: p(g) = P(gn, gd) / gd^deg p
        let hom = |p: &Poly| -> Poly {
            let deg = p.deg().max(0) as usize;
            let mut acc = Poly::zero(self.field());
            let mut npow = Poly::one(self.field());
            let dpows: Vec<Poly> = {
                let mut v = vec![Poly::one(self.field())];
                for i in 1..=deg {
                    let next = &v[i - 1] * &g.den;
                    v.push(next);
                }
                v
            };
            for i in 0..=deg {
                let c = p.coeff(i);
                if !c.is_zero() {
                    acc = &acc + &(&npow * &dpows[deg - i]).scale(c);
                }
                npow = &npow * &g.num;
            }
            acc
        };
        let dn = self.num.deg().max(0);
        let dd = self.den.deg().max(0);
        let mut top = hom(&self.num);
        let mut bot = hom(&self.den);
        if dn > dd {
            bot = &bot * &g.den.pow((dn - dd) as u64);
        } else if dd > dn {
            top = &top * &g.den.pow((dd - dn) as u64);
        }
        RatFun::new(top, bot)
    }

    pub fn map_coeffs(&self, target: &Arc<Field>, m: impl Fn(Fq) -> Fq + Copy) -> RatFun {
        RatFun::new(
            self.num.map_coeffs(target, m),
            self.den.map_coeffs(target, m),
        )
        .expect("coefficient maps are injective")
    }

    pub fn to_text(&self, var: &str) -> String {
        if self.den.is_one() {
            self.num.to_text(var)
        } else {
            format!("({}) / ({})", self.num.to_text(var), self.den.to_text(var))
        }
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text("x"))
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text("x"))
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFun::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero");
        }
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RatFun::new(num, &self.den * &rhs.den).expect("nonzero");
        }
        let a = self.den.exact_div(&g).expect("gcd divides");
        let b = rhs.den.exact_div(&g).expect("gcd divides");
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        RatFun::new(num, &(&a * &b) * &g).expect("nonzero")
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero(self.field());
        }
        // cross-cancel before multiplying
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1).expect("divides");
        let d2 = rhs.den.exact_div(&g1).expect("divides");
        let n2 = rhs.num.exact_div(&g2).expect("divides");
        let d1 = self.den.exact_div(&g2).expect("divides");
        RatFun::new(&n1 * &n2, &d1 * &d2).expect("nonzero")
    }
}

impl Add for RatFun {
    type Output = RatFun;
    fn add(self, rhs: RatFun) -> RatFun {
        &self + &rhs
    }
}

impl Mul for RatFun {
    type Output = RatFun;
    fn mul(self, rhs: RatFun) -> RatFun {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf16() -> Arc<Field> {
        Field::with_degree(4).unwrap()
    }

    fn rf(f: &Arc<Field>, n: &str, d: &str) -> RatFun {
        RatFun::new(
            Poly::parse(f, n, "x").unwrap(),
            Poly::parse(f, d, "x").unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn sum_of_reciprocal_translates() {
        // sum over alpha in F_q of 1/(x+alpha), checked against 1/(x^q+x)
        // by clearing denominators
        for m in [2u32, 3, 4] {
            let f = Field::with_degree(m).unwrap();
            let mut s = RatFun::zero(&f);
            for a in f.elements() {
                s = &s + &RatFun::from_poly(Poly::linear(&f, a)).inv().unwrap();
            }
            let q = f.size() as usize;
            let xq = &Poly::monomial(&f, Fq::ONE, q) + &Poly::x(&f);
            let cleared = &s * &RatFun::from_poly(xq);
            assert!(cleared.is_one(), "m={m}: {s}");
        }
    }

    #[test]
    fn basic_examples() {
        let f = gf16();
        let a = rf(&f, "x^3 + mu", "x + 1");
        assert!((&a + &a).is_zero());
        assert_eq!(RatFun::x(&f).inv().unwrap(), rf(&f, "1", "x"));
        assert_eq!(RatFun::zero(&f).inv().unwrap_err(), Error::DivisionByZero);
        assert_eq!(ratfun_sqrt_test(&rf(&f, "x^2", "1")), Some(RatFun::x(&f)));
        assert_eq!(ratfun_sqrt_test(&rf(&f, "x^3", "1")), None);
        assert_eq!(
            ratfun_sqrt_test(&rf(&f, "x^2 + 1", "x^4")),
            Some(rf(&f, "x + 1", "x^2"))
        );
    }

    #[test]
    fn normalization_is_canonical() {
        let f = gf16();
        let a = rf(&f, "mu*x^2 + mu", "mu^3*x + mu^3");
        assert_eq!(a, rf(&f, "mu^13*x + mu^13", "1"));
        assert!(a.den().is_monic());
    }

    #[test]
    fn composition() {
        let f = gf16();
        let a = rf(&f, "x^2 + 1", "x");
        let g = rf(&f, "x", "x + 1");
        let c = a.compose(&g).unwrap();
        // ((x/(x+1))^2+1)/(x/(x+1)) = (x^2 + (x+1)^2)/(x(x+1)) = 1/(x^2+x)
        assert_eq!(c, rf(&f, "1", "x^2 + x"));
    }

    proptest! {
        #[test]
        fn sqrt_inverts_square(n in prop::collection::vec(0u64..16, 1..12),
                               d in prop::collection::vec(0u64..16, 1..12)) {
            let f = gf16();
            let num = Poly::new(&f, n.into_iter().map(Fq).collect());
            let den = Poly::new(&f, d.into_iter().map(Fq).collect());
            prop_assume!(!den.is_zero());
            let a = RatFun::new(num, den).unwrap();
            prop_assert_eq!(ratfun_sqrt_test(&a.square()), Some(a));
        }
    }
}

//! Dense univariate polynomials over GF(2^m), including squarefree and
//! Cantor-Zassenhaus factorization.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul};
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf2m::{Field, Fq};
use crate::text;

/// Polynomial with coefficients lowest degree first and no trailing zeros.
#[derive(Clone)]
pub struct Poly {
    field: Arc<Field>,
    coeffs: Vec<Fq>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && *self.field == *other.field
    }
}
impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficients from the top.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text("x"))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text("x"))
    }
}

/// Operations accepted by [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
    DivRem,
    Gcd,
}

/// Checked polynomial arithmetic returning one or two polynomials
/// (`DivRem` yields quotient and remainder).
pub fn poly_arith(a: &Poly, b: &Poly, op: PolyOp) -> Result<Vec<Poly>> {
    if *a.field != *b.field {
        return Err(Error::FieldMismatch(a.field.spec(), b.field.spec()));
    }
    Ok(match op {
        PolyOp::Add => vec![a + b],
        PolyOp::Mul => vec![a * b],
        PolyOp::DivRem => {
            let (q, r) = a.div_rem(b)?;
            vec![q, r]
        }
        PolyOp::Gcd => vec![a.gcd(b)],
    })
}

impl Poly {
    pub fn new(field: &Arc<Field>, mut coeffs: Vec<Fq>) -> Poly {
        while coeffs.last() == Some(&Fq::ZERO) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &Arc<Field>) -> Poly {
        Poly::new(field, Vec::new())
    }

    pub fn one(field: &Arc<Field>) -> Poly {
        Poly::constant(field, Fq::ONE)
    }

    pub fn constant(field: &Arc<Field>, c: Fq) -> Poly {
        Poly::new(field, vec![c])
    }

    /// The indeterminate `x`.
    pub fn x(field: &Arc<Field>) -> Poly {
        Poly::new(field, vec![Fq::ZERO, Fq::ONE])
    }

    pub fn monomial(field: &Arc<Field>, c: Fq, deg: usize) -> Poly {
        let mut v = vec![Fq::ZERO; deg + 1];
        v[deg] = c;
        Poly::new(field, v)
    }

    /// `x + c`.
    pub fn linear(field: &Arc<Field>, c: Fq) -> Poly {
        Poly::new(field, vec![c, Fq::ONE])
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Fq> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Fq::ONE
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `-1` for zero.
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, i: usize) -> Fq {
        self.coeffs.get(i).copied().unwrap_or(Fq::ZERO)
    }

    pub fn lead(&self) -> Fq {
        self.coeffs.last().copied().unwrap_or(Fq::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == Fq::ONE
    }

    /// Order of vanishing at `x = 0`.
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: Fq) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn monic(&self) -> Poly {
        match self.field.inv(self.lead()) {
            Ok(inv) => self.scale(inv),
            Err(_) => self.clone(),
        }
    }

    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![Fq::ZERO; k];
        v.extend_from_slice(&self.coeffs);
        Poly::new(&self.field, v)
    }

    fn check_field(&self, other: &Poly) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field,
            "polynomials over different fields: {} vs {}",
            self.field.spec(),
            other.field.spec()
        );
    }

    pub fn add_assign_scaled(&mut self, other: &Poly, c: Fq, shift: usize) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let f = self.field.clone();
        if self.coeffs.len() < other.coeffs.len() + shift {
            self.coeffs.resize(other.coeffs.len() + shift, Fq::ZERO);
        }
        for (i, &b) in other.coeffs.iter().enumerate() {
            let slot = &mut self.coeffs[i + shift];
            *slot = f.add(*slot, f.mul(b, c));
        }
        while self.coeffs.last() == Some(&Fq::ZERO) {
            self.coeffs.pop();
        }
    }

    pub fn square(&self) -> Poly {
        let f = &self.field;
        let mut v = vec![Fq::ZERO; (2 * self.coeffs.len()).saturating_sub(1)];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[2 * i] = f.square(c);
        }
        Poly::new(f, v)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut acc = Poly::one(&self.field);
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

    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(d);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let inv_lead = f.inv(d.lead())?;
        let mut r = self.coeffs.clone();
        let mut q = vec![Fq::ZERO; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = f.mul(r[i + dd], inv_lead);
            if c.is_zero() {
                continue;
            }
            q[i] = c;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                r[i + j] = f.add(r[i + j], f.mul(c, dc));
            }
        }
        r.truncate(dd);
        Ok((Poly::new(f, q), Poly::new(f, r)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.div_rem(d)?.1)
    }

    /// Quotient, failing if the division leaves a remainder.
    pub fn exact_div(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::Inconsistent(format!("{d} does not divide {self}")));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        matches!(other.div_rem(self), Ok((_, r)) if r.is_zero())
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        self.check_field(other);
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        self.check_field(other);
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 + &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 + &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = f.inv(r0.lead()).expect("nonzero");
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    /// Inverse of `self` modulo `m`.
    pub fn inv_mod(&self, m: &Poly) -> Result<Poly> {
        let (g, s, _) = self.rem(m)?.ext_gcd(m);
        if !g.is_one() {
            return Err(Error::DivisionByZero);
        }
        s.rem(m)
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let g = self.gcd(other);
        (&self.exact_div(&g).expect("gcd divides") * other).monic()
    }

    pub fn derivative(&self) -> Poly {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| if i % 2 == 1 { c } else { Fq::ZERO })
            .collect();
        Poly::new(&self.field, v)
    }

    /// Square root when `self` is a square (derivative zero).
    pub fn sqrt(&self) -> Option<Poly> {
        if self.coeffs.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
            return None;
        }
        let f = &self.field;
        Some(Poly::new(
            f,
            self.coeffs.iter().step_by(2).map(|&c| f.sqrt(c)).collect(),
        ))
    }

    pub fn eval(&self, x: Fq) -> Fq {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Fq::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Composition `self(g)`.
    pub fn compose(&self, g: &Poly) -> Poly {
        let mut acc = Poly::zero(&self.field);
        for &c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Poly::constant(&self.field, c);
        }
        acc
    }

    /// Applies a coefficient map, e.g. an embedding or a field automorphism.
    pub fn map_coeffs(&self, target: &Arc<Field>, m: impl Fn(Fq) -> Fq) -> Poly {
        Poly::new(target, self.coeffs.iter().map(|&c| m(c)).collect())
    }

    /// Multiplicity of `p` as a factor (`p` non-constant).
    pub fn multiplicity(&self, p: &Poly) -> usize {
        if self.is_zero() || p.is_constant() {
            return 0;
        }
        let mut k = 0;
        let mut cur = self.clone();
        loop {
            match cur.div_rem(p) {
                Ok((q, r)) if r.is_zero() => {
                    cur = q;
                    k += 1;
                }
                _ => return k,
            }
        }
    }

    /// `self^(2^k) mod m` by repeated squaring.
    pub fn frobenius_mod(&self, k: u64, m: &Poly) -> Poly {
        let mut r = self.rem(m).expect("nonzero modulus");
        for _ in 0..k {
            r = r.square().rem(m).expect("nonzero modulus");
        }
        r
    }

    pub fn mul_mod(&self, other: &Poly, m: &Poly) -> Poly {
        (self * other).rem(m).expect("nonzero modulus")
    }

    /// Squarefree decomposition: pairs `(g_i, i)` with `self = c * prod g_i^i`.
    pub fn squarefree_decomposition(&self) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let d = f.derivative();
        let mut c = f.gcd(&d);
        let mut w = f.exact_div(&c).expect("gcd divides");
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c);
            let z = w.exact_div(&y).expect("gcd divides");
            if !z.is_one() {
                out.push((z, i));
            }
            i += 1;
            c = c.exact_div(&y).expect("gcd divides");
            w = y;
        }
        if !c.is_one() {
            let root = c.sqrt().expect("remaining cofactor is a square");
            for (g, j) in root.squarefree_decomposition() {
                out.push((g, 2 * j));
            }
        }
        out
    }

    /// Distinct-degree factorization of a monic squarefree polynomial.
    pub fn distinct_degree_factors(&self) -> Vec<(Poly, usize)> {
        let m = self.field.degree() as u64;
        let x = Poly::x(&self.field);
        let mut out = Vec::new();
        let mut rest = self.monic();
        let mut h = x.rem(&rest).unwrap_or_else(|_| x.clone());
        let mut d = 0;
        while rest.deg() >= 2 * (d as i64 + 1) {
            d += 1;
            h = h.frobenius_mod(m, &rest);
            let g = rest.gcd(&(&h + &x));
            if !g.is_one() {
                rest = rest.exact_div(&g).expect("gcd divides");
                h = h.rem(&rest).expect("nonzero");
                out.push((g, d));
            }
        }
        if rest.deg() > 0 {
            let dd = rest.deg() as usize;
            out.push((rest, dd));
        }
        out
    }

    /// Splits a product of distinct monic irreducibles of degree `d`.
    pub fn equal_degree_factors(&self, d: usize) -> Vec<Poly> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut out = Vec::new();
        self.edf_rec(d, &mut rng, &mut out);
        out.sort();
        out
    }

    fn edf_rec(&self, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
        let n = self.deg() as usize;
        if n == d {
            out.push(self.monic());
            return;
        }
        let f = &self.field;
        let bits = f.degree() as usize * d;
        loop {
            let a = Poly::new(f, (0..n).map(|_| f.random(rng)).collect());
            if a.is_constant() {
                continue;
            }
            // absolute trace of the algebra GF(q)[x]/(self) down to GF(2)
            let mut t = a.rem(self).expect("nonzero");
            let mut acc = t.clone();
            for _ in 1..bits {
                t = t.square().rem(self).expect("nonzero");
                acc = &acc + &t;
            }
            let g = self.gcd(&acc);
            if !g.is_one() && g.deg() < self.deg() {
                let h = self.exact_div(&g).expect("gcd divides");
                g.edf_rec(d, rng, out);
                h.edf_rec(d, rng, out);
                return;
            }
        }
    }

    /// Complete factorization into monic irreducibles with multiplicities,
    /// sorted by degree then coefficients.
    pub fn factor(&self) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        for (g, mult) in self.squarefree_decomposition() {
            for (block, d) in g.distinct_degree_factors() {
                for p in block.equal_degree_factors(d) {
                    out.push((p, mult));
                }
            }
        }
        out.sort();
        out
    }

    pub fn is_irreducible(&self) -> bool {
        let f = self.factor();
        f.len() == 1 && f[0].1 == 1
    }

    /// Distinct roots in the coefficient field.
    pub fn roots(&self) -> Vec<Fq> {
        if self.is_zero() {
            return Vec::new();
        }
        let f = &self.field;
        if f.size() <= 4096 {
            return f.elements().filter(|&a| self.eval(a).is_zero()).collect();
        }
        let x = Poly::x(f);
        let sq = self.monic();
        let h = x.frobenius_mod(f.degree() as u64, &sq);
        let lin = sq.gcd(&(&h + &x));
        if lin.is_constant() {
            return Vec::new();
        }
        let mut roots: Vec<Fq> = lin
            .equal_degree_factors(1)
            .into_iter()
            .map(|p| p.coeff(0))
            .collect();
        roots.sort();
        roots
    }

    /// Canonical text: decreasing degree, coefficients as powers of `mu`.
    pub fn to_text(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| text::format_monomial(&self.field, c, &[(var, i as u32)]))
            .collect();
        terms.join(" + ")
    }

    pub fn parse(field: &Arc<Field>, src: &str, var: &str) -> Result<Poly> {
        let mut p = Poly::zero(field);
        for (c, e) in text::parse_terms(field, src, &[var])? {
            p.add_assign_scaled(&Poly::one(field), c, e[0] as usize);
        }
        Ok(p)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.check_field(rhs);
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut v = long.coeffs.clone();
        for (a, b) in v.iter_mut().zip(&short.coeffs) {
            *a = Fq(a.0 ^ b.0);
        }
        Poly::new(&self.field, v)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.check_field(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut v = vec![Fq::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                v[i + j] = Fq(v[i + j].0 ^ f.mul(a, b).0);
            }
        }
        Poly::new(f, v)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
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

    fn p(f: &Arc<Field>, s: &str) -> Poly {
        Poly::parse(f, s, "x").unwrap()
    }

    #[test]
    fn spec_examples() {
        let f = gf16();
        assert_eq!(p(&f, "x^2 + 1").gcd(&p(&f, "x + 1")), p(&f, "x + 1"));
        let (q, r) = p(&f, "x^3").div_rem(&p(&f, "x")).unwrap();
        assert_eq!(q, p(&f, "x^2"));
        assert!(r.is_zero());
        assert_eq!(&p(&f, "x + 1") * &p(&f, "x + 1"), p(&f, "x^2 + 1"));
        assert_eq!(
            p(&f, "x").div_rem(&Poly::zero(&f)).unwrap_err(),
            Error::DivisionByZero
        );
    }

    #[test]
    fn text_round_trip() {
        let f = gf16();
        let s = "mu^4*x^12 + mu*x^8 + mu^6*x^4 + mu^4";
        assert_eq!(p(&f, s).to_text("x"), s);
        assert_eq!(p(&f, "x^2 + x").to_text("x"), "x^2 + x");
    }

    #[test]
    fn mixed_fields_error() {
        let a = Poly::x(&gf16());
        let b = Poly::x(&Field::with_degree(8).unwrap());
        assert!(matches!(
            poly_arith(&a, &b, PolyOp::Add),
            Err(Error::FieldMismatch(..))
        ));
    }

    #[test]
    fn factorization_of_x_q_plus_x() {
        let f = gf16();
        let xq = &Poly::monomial(&f, Fq::ONE, 16) + &Poly::x(&f);
        let fac = xq.factor();
        assert_eq!(fac.len(), 16);
        assert!(fac.iter().all(|(g, m)| g.deg() == 1 && *m == 1));
        // x^17 + 1: the 17th roots of unity live in GF(2^8) -> factors of degree 2
        let x17 = &Poly::monomial(&f, Fq::ONE, 17) + &Poly::one(&f);
        let fac = x17.factor();
        assert_eq!(fac.iter().map(|(g, _)| g.deg()).sum::<i64>(), 17);
        assert!(fac.iter().all(|(g, _)| g.deg() <= 2 && g.is_irreducible()));
    }

    #[test]
    fn squarefree_decomposition_recovers_multiplicities() {
        let f = gf16();
        let a = p(&f, "x + mu");
        let b = p(&f, "x^2 + x + mu^3");
        let prod = &(&a.pow(3) * &b.pow(2)) * &p(&f, "x");
        let fac = prod.factor();
        let total: i64 = fac.iter().map(|(g, m)| g.deg() * *m as i64).sum();
        assert_eq!(total, prod.deg());
        assert!(fac.contains(&(a.clone(), 3)));
        let mut rebuilt = Poly::one(&f);
        for (g, m) in &fac {
            rebuilt = &rebuilt * &g.pow(*m as u64);
        }
        assert_eq!(rebuilt, prod.monic());
    }

    #[test]
    fn roots_in_large_field() {
        let f = Field::with_degree(16).unwrap();
        let r1 = f.pow(f.generator(), 1234);
        let r2 = f.pow(f.generator(), 777);
        let poly = &(&Poly::linear(&f, r1) * &Poly::linear(&f, r2)) * &p(&f, "x^2 + x + mu^5");
        let mut expect = vec![r1, r2];
        expect.sort();
        let roots = poly.roots();
        for r in &expect {
            assert!(roots.contains(r));
        }
        for r in &roots {
            assert!(poly.eval(*r).is_zero());
        }
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = Vec<u64>> {
        prop::collection::vec(0u64..16, 0..=max_deg + 1)
    }

    proptest! {
        #[test]
        fn ext_gcd_certifies(a in arb_poly(64), b in arb_poly(64)) {
            let f = gf16();
            let a = Poly::new(&f, a.into_iter().map(Fq).collect());
            let b = Poly::new(&f, b.into_iter().map(Fq).collect());
            let (g, s, t) = a.ext_gcd(&b);
            prop_assert_eq!(&(&s * &a) + &(&t * &b), g.clone());
            if !g.is_zero() {
                prop_assert!(g.divides(&a));
                prop_assert!(g.divides(&b));
                prop_assert_eq!(g, a.gcd(&b));
            }
        }

        #[test]
        fn sqrt_of_square(a in arb_poly(30)) {
            let f = gf16();
            let a = Poly::new(&f, a.into_iter().map(Fq).collect());
            prop_assert_eq!(a.square().sqrt(), Some(a.clone()));
        }
    }
}

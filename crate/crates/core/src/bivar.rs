//! Sparse polynomials in two affine variables and homogeneous polynomials
//! in three projective variables over GF(2^m).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf2m::{Field, Fq};
use crate::poly::Poly;
use crate::text::{format_monomial, parse_terms_with};

/// `sum c_ij X^i Y^j`, keyed by `(i, j)`.
#[derive(Clone, PartialEq, Eq)]
pub struct BivarPoly {
    field: Arc<Field>,
    terms: BTreeMap<(u32, u32), Fq>,
}

impl BivarPoly {
    pub fn zero(field: &Arc<Field>) -> BivarPoly {
        BivarPoly {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(field: &Arc<Field>, c: Fq, i: u32, j: u32) -> BivarPoly {
        let mut p = BivarPoly::zero(field);
        p.add_term(c, i, j);
        p
    }

    pub fn constant(field: &Arc<Field>, c: Fq) -> BivarPoly {
        BivarPoly::monomial(field, c, 0, 0)
    }

    pub fn one(field: &Arc<Field>) -> BivarPoly {
        BivarPoly::constant(field, Fq::ONE)
    }

    pub fn x(field: &Arc<Field>) -> BivarPoly {
        BivarPoly::monomial(field, Fq::ONE, 1, 0)
    }

    pub fn y(field: &Arc<Field>) -> BivarPoly {
        BivarPoly::monomial(field, Fq::ONE, 0, 1)
    }

    /// `p(X)` as a bivariate polynomial.
    pub fn from_poly_x(p: &Poly) -> BivarPoly {
        BivarPoly::from_poly_in_y(std::slice::from_ref(p))
    }

    /// `sum_j c_j(X) Y^j`.
    pub fn from_poly_in_y(cs: &[Poly]) -> BivarPoly {
        let field = cs.first().map(|p| p.field().clone()).expect("nonempty");
        let mut out = BivarPoly::zero(&field);
        for (j, p) in cs.iter().enumerate() {
            for (i, &c) in p.coeffs().iter().enumerate() {
                out.add_term(c, i as u32, j as u32);
            }
        }
        out
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn add_term(&mut self, c: Fq, i: u32, j: u32) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_insert(Fq::ZERO);
        *slot = self.field.add(*slot, c);
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, Fq)> + '_ {
        self.terms.iter().map(|(&(i, j), &c)| (i, j, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Fq {
        self.terms.get(&(i, j)).copied().unwrap_or(Fq::ZERO)
    }

    pub fn deg_x(&self) -> i64 {
        self.terms.keys().map(|k| k.0 as i64).max().unwrap_or(-1)
    }

    pub fn deg_y(&self) -> i64 {
        self.terms.keys().map(|k| k.1 as i64).max().unwrap_or(-1)
    }

    pub fn total_degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|k| (k.0 + k.1) as i64)
            .max()
            .unwrap_or(-1)
    }

    /// Coefficients of `Y^j` as polynomials in `X`.
    pub fn as_poly_in_y(&self) -> Vec<Poly> {
        let dy = self.deg_y().max(0) as usize;
        let mut cs = vec![vec![Fq::ZERO; self.deg_x().max(0) as usize + 1]; dy + 1];
        for (&(i, j), &c) in &self.terms {
            cs[j as usize][i as usize] = c;
        }
        cs.into_iter().map(|v| Poly::new(&self.field, v)).collect()
    }

    /// Coefficients of `X^i` as polynomials in `Y`.
    pub fn as_poly_in_x(&self) -> Vec<Poly> {
        self.swap().as_poly_in_y()
    }

    /// `F(Y, X)`.
    pub fn swap(&self) -> BivarPoly {
        BivarPoly {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(&(i, j), &c)| ((j, i), c)).collect(),
        }
    }

    pub fn add(&self, o: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (&(i, j), &c) in &o.terms {
            out.add_term(c, i, j);
        }
        out
    }

    pub fn mul(&self, o: &BivarPoly) -> BivarPoly {
        let f = &self.field;
        let mut out = BivarPoly::zero(f);
        for (&(i, j), &c) in &self.terms {
            for (&(k, l), &d) in &o.terms {
                out.add_term(f.mul(c, d), i + k, j + l);
            }
        }
        out
    }

    pub fn scale(&self, c: Fq) -> BivarPoly {
        let f = &self.field;
        let mut out = BivarPoly::zero(f);
        for (&(i, j), &d) in &self.terms {
            out.add_term(f.mul(c, d), i, j);
        }
        out
    }

    pub fn square(&self) -> BivarPoly {
        // Frobenius: (sum c m)^2 = sum c^2 m^2
        let f = &self.field;
        BivarPoly {
            field: f.clone(),
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), &c)| ((2 * i, 2 * j), f.square(c)))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> BivarPoly {
        let mut base = self.clone();
        let mut acc = BivarPoly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    pub fn eval(&self, x: Fq, y: Fq) -> Fq {
        let f = &self.field;
        let mut acc = Fq::ZERO;
        for (&(i, j), &c) in &self.terms {
            acc = f.add(acc, f.mul(c, f.mul(f.pow(x, i as u64), f.pow(y, j as u64))));
        }
        acc
    }

    /// `F(x0, Y)`.
    pub fn eval_x(&self, x0: Fq) -> Poly {
        let f = &self.field;
        let mut cs = vec![Fq::ZERO; self.deg_y().max(0) as usize + 1];
        for (&(i, j), &c) in &self.terms {
            cs[j as usize] = f.add(cs[j as usize], f.mul(c, f.pow(x0, i as u64)));
        }
        Poly::new(f, cs)
    }

    pub fn map_coeffs(&self, target: &Arc<Field>, m: impl Fn(Fq) -> Fq) -> BivarPoly {
        let mut out = BivarPoly::zero(target);
        for (&(i, j), &c) in &self.terms {
            out.add_term(m(c), i, j);
        }
        out
    }

    /// `F(P(X,Y), Q(X,Y))`.
    pub fn substitute(&self, p: &BivarPoly, q: &BivarPoly) -> BivarPoly {
        let f = &self.field;
        let dx = self.deg_x().max(0) as usize;
        let dy = self.deg_y().max(0) as usize;
        let mut ppow = vec![BivarPoly::one(f)];
        for k in 1..=dx {
            ppow.push(ppow[k - 1].mul(p));
        }
        let mut qpow = vec![BivarPoly::one(f)];
        for k in 1..=dy {
            qpow.push(qpow[k - 1].mul(q));
        }
        let mut out = BivarPoly::zero(f);
        // group by Y-power to share the products
        for (j, cx) in self.as_poly_in_y().iter().enumerate() {
            if cx.is_zero() {
                continue;
            }
            let mut inner = BivarPoly::zero(f);
            for (i, &c) in cx.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    inner = inner.add(&ppow[i].scale(c));
                }
            }
            out = out.add(&inner.mul(&qpow[j]));
        }
        out
    }

    pub fn derivative_x(&self) -> BivarPoly {
        let mut out = BivarPoly::zero(&self.field);
        for (&(i, j), &c) in &self.terms {
            if i % 2 == 1 {
                out.add_term(c, i - 1, j);
            }
        }
        out
    }

    pub fn derivative_y(&self) -> BivarPoly {
        self.swap().derivative_x().swap()
    }

    /// Lowest total degree `m` and the form of that degree.
    pub fn lowest_form(&self) -> Option<(u32, BivarPoly)> {
        let m = self.terms.keys().map(|k| k.0 + k.1).min()?;
        let mut out = BivarPoly::zero(&self.field);
        for (&(i, j), &c) in &self.terms {
            if i + j == m {
                out.add_term(c, i, j);
            }
        }
        Some((m, out))
    }

    /// Form of the top total degree.
    pub fn top_form(&self) -> BivarPoly {
        let d = self.total_degree().max(0) as u32;
        let mut out = BivarPoly::zero(&self.field);
        for (&(i, j), &c) in &self.terms {
            if i + j == d {
                out.add_term(c, i, j);
            }
        }
        out
    }

    /// `F(x0 + X, y0 + Y)`.
    pub fn translate(&self, x0: Fq, y0: Fq) -> BivarPoly {
        let f = &self.field;
        let p = BivarPoly::x(f).add(&BivarPoly::constant(f, x0));
        let q = BivarPoly::y(f).add(&BivarPoly::constant(f, y0));
        self.substitute(&p, &q)
    }

    /// Divides out the largest constant making the leading term (in the
    /// term order) monic.
    pub fn monic(&self) -> BivarPoly {
        match self.leading() {
            None => self.clone(),
            Some(c) => self.scale(self.field.inv(c).expect("nonzero")),
        }
    }

    /// Coefficient of the greatest monomial in `(Y-degree, X-degree)` order.
    pub fn leading(&self) -> Option<Fq> {
        self.terms
            .iter()
            .max_by_key(|(&(i, j), _)| (j, i))
            .map(|(_, &c)| c)
    }

    /// Greatest common divisor of the `Y`-coefficients, as a polynomial in `X`.
    pub fn content_x(&self) -> Poly {
        let mut g = Poly::zero(&self.field);
        for c in self.as_poly_in_y() {
            g = g.gcd(&c);
        }
        g
    }

    /// Divides every `Y`-coefficient by `d(X)`; fails if inexact.
    pub fn div_poly_x(&self, d: &Poly) -> Result<BivarPoly> {
        let cs = self
            .as_poly_in_y()
            .iter()
            .map(|c| c.exact_div(d))
            .collect::<Result<Vec<Poly>>>()?;
        Ok(BivarPoly::from_poly_in_y(&cs))
    }

    pub fn parse(field: &Arc<Field>, src: &str, vx: &str, vy: &str) -> Result<BivarPoly> {
        BivarPoly::parse_with(field, src, vx, vy, field.generator())
    }

    /// Parses with the symbol `mu` standing for the element `mu`.
    pub fn parse_with(
        field: &Arc<Field>,
        src: &str,
        vx: &str,
        vy: &str,
        mu: Fq,
    ) -> Result<BivarPoly> {
        let mut p = BivarPoly::zero(field);
        for (c, e) in parse_terms_with(field, src, &[vx, vy], mu)? {
            p.add_term(c, e[0], e[1]);
        }
        Ok(p)
    }

    /// Canonical text: terms by descending `Y`-degree, then `X`-degree.
    pub fn to_text(&self, vx: &str, vy: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by_key(|k| std::cmp::Reverse((k.1, k.0)));
        keys.iter()
            .map(|&&(i, j)| format_monomial(&self.field, self.terms[&(i, j)], &[(vy, j), (vx, i)]))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Coefficient-wise difference to `other`, as `(i, j, self, other)`.
    pub fn diff(&self, other: &BivarPoly) -> Vec<(u32, u32, Fq, Fq)> {
        let mut keys: Vec<(u32, u32)> = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .copied()
            .collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .filter(|&(i, j)| self.coeff(i, j) != other.coeff(i, j))
            .map(|(i, j)| (i, j, self.coeff(i, j), other.coeff(i, j)))
            .collect()
    }
}

impl fmt::Debug for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text("X", "Y"))
    }
}

/// Homogeneous polynomial in `X, Y, Z`, keyed by exponent triples.
#[derive(Clone, PartialEq, Eq)]
pub struct HomPoly {
    field: Arc<Field>,
    degree: u32,
    terms: BTreeMap<(u32, u32, u32), Fq>,
}

/// Coordinate chart of the projective plane: which coordinate is set to 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub enum Chart {
    X,
    Y,
    Z,
}

impl HomPoly {
    pub fn zero(field: &Arc<Field>, degree: u32) -> HomPoly {
        HomPoly {
            field: field.clone(),
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, c: Fq, e: (u32, u32, u32)) {
        assert_eq!(e.0 + e.1 + e.2, self.degree, "inhomogeneous term");
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert(Fq::ZERO);
        *slot = self.field.add(*slot, c);
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Homogenization of `F(X, Y)` with `Z`, at the total degree of `F`.
    pub fn homogenize(f: &BivarPoly) -> HomPoly {
        let d = f.total_degree().max(0) as u32;
        let mut h = HomPoly::zero(f.field(), d);
        for (i, j, c) in f.terms() {
            h.add_term(c, (i, j, d - i - j));
        }
        h
    }

    /// Affine part in the chart; the two remaining coordinates keep their
    /// order (`(Y,Z)`, `(X,Z)` or `(X,Y)`).
    pub fn dehomogenize(&self, chart: Chart) -> BivarPoly {
        let mut out = BivarPoly::zero(&self.field);
        for (&(a, b, c), &k) in &self.terms {
            let (i, j) = match chart {
                Chart::X => (b, c),
                Chart::Y => (a, c),
                Chart::Z => (a, b),
            };
            out.add_term(k, i, j);
        }
        out
    }

    pub fn parse(field: &Arc<Field>, src: &str) -> Result<HomPoly> {
        HomPoly::parse_with(field, src, field.generator())
    }

    pub fn parse_with(field: &Arc<Field>, src: &str, mu: Fq) -> Result<HomPoly> {
        let terms = parse_terms_with(field, src, &["X", "Y", "Z"], mu)?;
        let d = terms
            .iter()
            .map(|(_, e)| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0);
        let mut h = HomPoly::zero(field, d);
        for (c, e) in terms {
            if e.iter().sum::<u32>() != d {
                return Err(Error::Parse("polynomial is not homogeneous".into()));
            }
            h.add_term(c, (e[0], e[1], e[2]));
        }
        Ok(h)
    }

    pub fn eval(&self, p: [Fq; 3]) -> Fq {
        let f = &self.field;
        let mut acc = Fq::ZERO;
        for (&(a, b, c), &k) in &self.terms {
            let m = f.mul(
                f.pow(p[0], a as u64),
                f.mul(f.pow(p[1], b as u64), f.pow(p[2], c as u64)),
            );
            acc = f.add(acc, f.mul(k, m));
        }
        acc
    }

    pub fn map_coeffs(&self, target: &Arc<Field>, m: impl Fn(Fq) -> Fq) -> HomPoly {
        let mut out = HomPoly::zero(target, self.degree);
        for (&e, &c) in &self.terms {
            out.add_term(m(c), e);
        }
        out
    }

    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .rev()
            .map(|(&(a, b, c), &k)| {
                format_monomial(&self.field, k, &[("X", a), ("Y", b), ("Z", c)])
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Debug for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// A rational map of the plane given by three homogeneous polynomials of
/// equal degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneMap {
    pub comps: [HomPoly; 3],
}

impl PlaneMap {
    pub fn new(comps: [HomPoly; 3]) -> Result<PlaneMap> {
        let d = comps[0].degree();
        if comps.iter().any(|c| c.degree() != d) {
            return Err(Error::Parse("map components have different degrees".into()));
        }
        Ok(PlaneMap { comps })
    }

    /// Parses `"P1; P2; P3"` in `X, Y, Z`.
    pub fn parse(field: &Arc<Field>, src: &str) -> Result<PlaneMap> {
        PlaneMap::parse_with(field, src, field.generator())
    }

    /// Components separated by `;`, with `mu` read as the element `mu`.
    pub fn parse_with(field: &Arc<Field>, src: &str, mu: Fq) -> Result<PlaneMap> {
        let parts: Vec<&str> = src.split(';').collect();
        if parts.len() != 3 {
            return Err(Error::Parse("a plane map needs three components".into()));
        }
        let comps = [
            HomPoly::parse_with(field, parts[0], mu)?,
            HomPoly::parse_with(field, parts[1], mu)?,
            HomPoly::parse_with(field, parts[2], mu)?,
        ];
        PlaneMap::new(comps)
    }

    pub fn degree(&self) -> u32 {
        self.comps[0].degree()
    }

    pub fn identity(field: &Arc<Field>) -> PlaneMap {
        PlaneMap::parse(field, "X; Y; Z").expect("identity")
    }

    /// Image of a point, `None` at a base point.
    pub fn apply(&self, p: [Fq; 3]) -> Option<[Fq; 3]> {
        let img = [
            self.comps[0].eval(p),
            self.comps[1].eval(p),
            self.comps[2].eval(p),
        ];
        img.iter().any(|c| !c.is_zero()).then_some(img)
    }

    /// Affine substitution `F(P1/P3, P2/P3)` with the denominator cleared:
    /// `P3^deg(F) F(P1/P3, P2/P3)`, computed in the chart `Z = 1`.
    pub fn pull_back(&self, f: &BivarPoly) -> BivarPoly {
        let field = f.field();
        let h = HomPoly::homogenize(f);
        let c: Vec<BivarPoly> = self
            .comps
            .iter()
            .map(|c| c.dehomogenize(Chart::Z))
            .collect();
        let d = h.degree() as usize;
        let pw = |b: &BivarPoly| -> Vec<BivarPoly> {
            let mut v = vec![BivarPoly::one(field)];
            for k in 1..=d {
                v.push(v[k - 1].mul(b));
            }
            v
        };
        let (p0, p1, p2) = (pw(&c[0]), pw(&c[1]), pw(&c[2]));
        let mut out = BivarPoly::zero(field);
        for (&(a, b, e), &k) in &h.terms {
            out = out.add(
                &p0[a as usize]
                    .mul(&p1[b as usize])
                    .mul(&p2[e as usize])
                    .scale(k),
            );
        }
        out
    }

    pub fn map_coeffs(&self, target: &Arc<Field>, m: impl Fn(Fq) -> Fq + Copy) -> PlaneMap {
        PlaneMap {
            comps: [
                self.comps[0].map_coeffs(target, m),
                self.comps[1].map_coeffs(target, m),
                self.comps[2].map_coeffs(target, m),
            ],
        }
    }
}

/// Normalizes a projective point so that its last nonzero coordinate is 1.
pub fn normalize_point(field: &Field, p: [Fq; 3]) -> [Fq; 3] {
    let k = (0..3)
        .rev()
        .find(|&i| !p[i].is_zero())
        .expect("nonzero point");
    let inv = field.inv(p[k]).expect("nonzero");
    [
        field.mul(p[0], inv),
        field.mul(p[1], inv),
        field.mul(p[2], inv),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f16() -> Arc<Field> {
        Field::parse_spec("gf2^4:0x13").unwrap()
    }

    #[test]
    fn text_roundtrip_and_arith() {
        let f = f16();
        let p = BivarPoly::parse(&f, "mu^3*X^2*Y + X + mu*Y^2 + 1", "X", "Y").unwrap();
        let text = p.to_text("X", "Y");
        assert_eq!(BivarPoly::parse(&f, &text, "X", "Y").unwrap(), p);
        assert_eq!(p.square(), p.mul(&p));
        assert_eq!(p.total_degree(), 3);
        let x0 = f.pow(f.generator(), 5);
        let y0 = f.pow(f.generator(), 9);
        let t = p.translate(x0, y0);
        assert_eq!(t.eval(Fq::ZERO, Fq::ZERO), p.eval(x0, y0));
        assert_eq!(
            p.derivative_y(),
            BivarPoly::parse(&f, "mu^3*X^2", "X", "Y").unwrap()
        );
    }

    #[test]
    fn homogenize_and_charts() {
        let f = f16();
        let p = BivarPoly::parse(&f, "X^2*Y + Y + 1", "X", "Y").unwrap();
        let h = HomPoly::homogenize(&p);
        assert_eq!(h.degree(), 3);
        assert_eq!(h.dehomogenize(Chart::Z), p);
        // chart Y = 1: X^2 + Z^2 + Z^3
        let q = h.dehomogenize(Chart::Y);
        assert_eq!(
            q,
            BivarPoly::parse(&f, "X^2 + Y^2 + Y^3", "X", "Y").unwrap()
        );
    }

    #[test]
    fn plane_map_pullback_matches_pointwise() {
        let f = f16();
        let p = BivarPoly::parse(&f, "X^3 + mu*X*Y + Y^2 + mu^4", "X", "Y").unwrap();
        let m = PlaneMap::parse(&f, "X*Z + Y^2; Y*Z + mu*Z^2; Z^2").unwrap();
        let g = m.pull_back(&p);
        for x in f.elements().take(7) {
            for y in f.elements().skip(3).take(5) {
                let img = m.apply([x, y, Fq::ONE]).unwrap();
                let pt = normalize_point(&f, img);
                let w = f.pow(img[2], 3);
                assert_eq!(g.eval(x, y), f.mul(w, p.eval(pt[0], pt[1])));
            }
        }
    }
}

//! Ordinary binary elliptic curves `y^2 + xy = x^3 + nu*x^2 + mu`, their
//! group law and 2-power torsion generators.

use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf2m::{Embedding, Field, Fq, MAX_DEGREE};
use crate::poly::Poly;

/// Largest field on which [`Curve::point_count`] enumerates points.
pub const BRUTE_FORCE_LIMIT: u32 = 20;

#[derive(Clone, Debug)]
pub struct Curve {
    field: Arc<Field>,
    nu: Fq,
    mu: Fq,
}

impl PartialEq for Curve {
    fn eq(&self, other: &Self) -> bool {
        self.nu == other.nu && self.mu == other.mu && *self.field == *other.field
    }
}
impl Eq for Curve {}

/// A point: the neutral element `Yinf` or an affine pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Infinity,
    Affine(Fq, Fq),
}

impl Point {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn x(&self) -> Option<Fq> {
        match self {
            Point::Infinity => None,
            Point::Affine(x, _) => Some(*x),
        }
    }

    pub fn y(&self) -> Option<Fq> {
        match self {
            Point::Infinity => None,
            Point::Affine(_, y) => Some(*y),
        }
    }
}

impl Curve {
    /// Builds the curve; `mu = 0` is singular and rejected.
    pub fn new(field: &Arc<Field>, nu: Fq, mu: Fq) -> Result<Arc<Curve>> {
        if mu.is_zero() {
            return Err(Error::Degenerate("mu = 0 gives a singular curve".into()));
        }
        if !field.contains(nu) || !field.contains(mu) {
            return Err(Error::Degenerate("coefficients outside the field".into()));
        }
        Ok(Arc::new(Curve {
            field: field.clone(),
            nu,
            mu,
        }))
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn nu(&self) -> Fq {
        self.nu
    }

    pub fn mu(&self) -> Fq {
        self.mu
    }

    /// `sqrt(mu)`, the y-coordinate of the 2-torsion point.
    pub fn sqrt_mu(&self) -> Fq {
        self.field.sqrt(self.mu)
    }

    /// The rational 2-torsion point `(0, sqrt(mu))`.
    pub fn two_torsion(&self) -> Point {
        Point::Affine(Fq::ZERO, self.sqrt_mu())
    }

    /// `x^3 + nu*x^2 + mu` as a polynomial.
    pub fn rhs_poly(&self) -> Poly {
        Poly::new(&self.field, vec![self.mu, Fq::ZERO, self.nu, Fq::ONE])
    }

    pub fn rhs(&self, x: Fq) -> Fq {
        let f = &self.field;
        f.add(f.mul(f.square(x), f.add(x, self.nu)), self.mu)
    }

    pub fn contains(&self, p: &Point) -> bool {
        match *p {
            Point::Infinity => true,
            Point::Affine(x, y) => {
                let f = &self.field;
                f.contains(x) && f.contains(y) && f.add(f.square(y), f.mul(x, y)) == self.rhs(x)
            }
        }
    }

    /// The same curve over an extension field.
    pub fn base_change(&self, target: &Arc<Field>) -> Result<Arc<Curve>> {
        let e = Embedding::new(&self.field, target)?;
        Curve::new(target, e.apply(self.nu), e.apply(self.mu))
    }

    pub fn neg(&self, p: &Point) -> Point {
        match *p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(x, self.field.add(x, y)),
        }
    }

    /// Group law; inputs are assumed to lie on the curve.
    pub fn add(&self, p: &Point, q: &Point) -> Point {
        let f = &self.field;
        let (x1, y1, x2, y2) = match (*p, *q) {
            (Point::Infinity, _) => return *q,
            (_, Point::Infinity) => return *p,
            (Point::Affine(a, b), Point::Affine(c, d)) => (a, b, c, d),
        };
        if x1 == x2 {
            if f.add(y1, y2) == x1 || x1.is_zero() {
                // q = -p (covers the 2-torsion point, whose tangent is vertical)
                return Point::Infinity;
            }
            let lambda = f.add(x1, f.div(y1, x1).expect("x1 != 0"));
            let x3 = f.add(f.add(f.square(lambda), lambda), self.nu);
            let y3 = f.add(f.square(x1), f.mul(f.add(lambda, Fq::ONE), x3));
            return Point::Affine(x3, y3);
        }
        let lambda = f.div(f.add(y1, y2), f.add(x1, x2)).expect("x1 != x2");
        let x3 = f.add(
            f.add(f.add(f.square(lambda), lambda), f.add(x1, x2)),
            self.nu,
        );
        let y3 = f.add(f.add(f.mul(lambda, f.add(x1, x3)), x3), y1);
        Point::Affine(x3, y3)
    }

    /// Checked addition that rejects points not on this curve.
    pub fn ec_add(&self, p: &Point, q: &Point) -> Result<Point> {
        if !self.contains(p) || !self.contains(q) {
            return Err(Error::CurveMismatch);
        }
        Ok(self.add(p, q))
    }

    pub fn mul(&self, k: i64, p: &Point) -> Point {
        let base = if k < 0 { self.neg(p) } else { *p };
        let mut e = k.unsigned_abs();
        let mut acc = Point::Infinity;
        let mut cur = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.add(&acc, &cur);
            }
            e >>= 1;
            if e > 0 {
                cur = self.add(&cur, &cur);
            }
        }
        acc
    }

    /// Smallest `k >= 1` with `[k]p = Yinf`, searched up to `bound`.
    pub fn order(&self, p: &Point, bound: u64) -> Option<u64> {
        let mut cur = *p;
        for k in 1..=bound {
            if cur.is_infinity() {
                return Some(k);
            }
            cur = self.add(&cur, p);
        }
        None
    }

    /// Number of rational points including `Yinf`, by enumeration of x.
    pub fn point_count(&self) -> Result<u64> {
        let f = &self.field;
        if f.degree() > BRUTE_FORCE_LIMIT {
            return Err(Error::FieldTooLarge(f.degree()));
        }
        // x = 0 gives one point; otherwise y = x*u with u^2 + u = rhs(x)/x^2
        let mut count = 2;
        for x in f.elements().filter(|x| !x.is_zero()) {
            let c = f.div(self.rhs(x), f.square(x)).expect("x != 0");
            if f.trace(c) == 0 {
                count += 2;
            }
        }
        Ok(count)
    }

    /// Frobenius trace `q + 1 - #E(F_q)` from a point count.
    pub fn trace_of_frobenius(&self) -> Result<i128> {
        Ok(self.field.size() as i128 + 1 - self.point_count()? as i128)
    }

    /// All rational points (small fields only), sorted.
    pub fn points(&self) -> Result<Vec<Point>> {
        let f = &self.field;
        if f.degree() > BRUTE_FORCE_LIMIT {
            return Err(Error::FieldTooLarge(f.degree()));
        }
        let mut out = vec![Point::Infinity, self.two_torsion()];
        for x in f.elements().filter(|x| !x.is_zero()) {
            let c = f.div(self.rhs(x), f.square(x)).expect("x != 0");
            if let Some(u) = f.solve_artin_schreier(c) {
                out.push(Point::Affine(x, f.mul(x, u)));
                out.push(Point::Affine(x, f.mul(x, f.add(u, Fq::ONE))));
            }
        }
        out.sort();
        Ok(out)
    }

    /// A random affine point (x nonzero).
    pub fn random_point(&self, rng: &mut ChaCha8Rng) -> Point {
        let f = &self.field;
        loop {
            let x = f.random(rng);
            if x.is_zero() {
                continue;
            }
            let c = f.div(self.rhs(x), f.square(x)).expect("x != 0");
            if let Some(u) = f.solve_artin_schreier(c) {
                let u = if rng_bit(rng) { u } else { f.add(u, Fq::ONE) };
                return Point::Affine(x, f.mul(x, u));
            }
        }
    }

    pub fn format_point(&self, p: &Point) -> String {
        match *p {
            Point::Infinity => "Yinf".to_string(),
            Point::Affine(x, y) => format!(
                "({},{})@gf2^{}",
                self.field.format(x),
                self.field.format(y),
                self.field.degree()
            ),
        }
    }

    pub fn parse_point(&self, s: &str) -> Result<Point> {
        let s = s.trim();
        if s == "Yinf" {
            return Ok(Point::Infinity);
        }
        let (coords, deg) = s
            .split_once('@')
            .ok_or_else(|| Error::Parse(format!("point `{s}` lacks @gf2^s")))?;
        if deg.trim() != format!("gf2^{}", self.field.degree()) {
            return Err(Error::Parse(format!("point `{s}` is over another field")));
        }
        let inner = coords
            .trim()
            .strip_prefix('(')
            .and_then(|c| c.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("malformed point `{s}`")))?;
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("malformed point `{s}`")))?;
        let p = Point::Affine(self.field.parse_elem(a)?, self.field.parse_elem(b)?);
        if !self.contains(&p) {
            return Err(Error::CurveMismatch);
        }
        Ok(p)
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "y^2 + x*y = x^3 + {}*x^2 + {} over {}",
            self.field.format(self.nu),
            self.field.format(self.mu),
            self.field.spec()
        )
    }
}

fn rng_bit(rng: &mut ChaCha8Rng) -> bool {
    use rand::Rng;
    rng.gen()
}

/// A point of exact order `2n` on the base change of a curve.
#[derive(Clone, Debug)]
pub struct TorsionGenerator {
    pub curve: Arc<Curve>,
    pub point: Point,
    pub order: u64,
    /// degree of the extension over the curve's original field
    pub extension_degree: u32,
}

impl TorsionGenerator {
    /// `[i]P0` for `i` modulo the order.
    pub fn multiple(&self, i: i64) -> Point {
        self.curve.mul(i.rem_euclid(self.order as i64), &self.point)
    }

    /// Table of `[i]P0` for `0 <= i < order`.
    pub fn multiples(&self) -> Vec<Point> {
        let mut out = Vec::with_capacity(self.order as usize);
        let mut cur = Point::Infinity;
        for _ in 0..self.order {
            out.push(cur);
            cur = self.curve.add(&cur, &self.point);
        }
        out
    }

    /// Index `i` with `p = [i]P0`, if `p` lies in the generated subgroup.
    pub fn index_of(&self, p: &Point) -> Option<u64> {
        self.multiples()
            .iter()
            .position(|q| q == p)
            .map(|i| i as u64)
    }
}

/// Point counts over `F_{q^s}` from the count over `F_q`, using the
/// recurrence for `alpha^s + beta^s`.
pub fn extension_counts(q: u128, trace: i128, max_s: u32) -> Vec<u128> {
    let mut out = Vec::new();
    // s_k = alpha^k + beta^k with s_0 = 2, s_1 = trace, s_k = t*s_{k-1} - q*s_{k-2}
    let (mut prev, mut cur) = (2i128, trace);
    let mut qk = q;
    for _ in 1..=max_s {
        out.push((qk as i128 + 1 - cur) as u128);
        let next = trace * cur - q as i128 * prev;
        prev = cur;
        cur = next;
        qk *= q;
    }
    out
}

/// Searches extensions of degree `s = 1, 2, ...` of the curve's field for a
/// point of exact order `order` (a power of two, at least 8). The degree
/// of the resulting field is capped at `MAX_DEGREE`.
pub fn find_torsion_generator(
    curve: &Arc<Curve>,
    order: u64,
    seed: u64,
) -> Result<TorsionGenerator> {
    if !order.is_power_of_two() || order < 8 {
        return Err(Error::Degenerate(format!(
            "torsion order {order} must be a power of 2, at least 8"
        )));
    }
    let base = curve.field();
    let m = base.degree();
    let trace = curve.trace_of_frobenius()?;
    let max_s = MAX_DEGREE / m;
    let counts = extension_counts(base.size() as u128, trace, max_s);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tried = Vec::new();
    for (idx, &count) in counts.iter().enumerate() {
        let s = idx as u32 + 1;
        let two_part = 1u128 << count.trailing_zeros();
        tried.push(format!("s={s}: #E={count}, 2-part {two_part}"));
        if two_part < order as u128 {
            continue;
        }
        let field = if s == 1 {
            base.clone()
        } else {
            Field::with_degree(m * s)?
        };
        let ext = if s == 1 {
            curve.clone()
        } else {
            curve.base_change(&field)?
        };
        let odd = (count >> count.trailing_zeros()) as i64;
        // the 2-Sylow subgroup is cyclic, so a random point generates it
        // with probability 1/2
        for _ in 0..256 {
            let p = ext.random_point(&mut rng);
            let mut q = ext.mul(odd, &p);
            let mut ord = 1u128;
            let mut probe = q;
            while !probe.is_infinity() {
                probe = ext.add(&probe, &probe);
                ord <<= 1;
            }
            if ord < order as u128 {
                continue;
            }
            while ord > order as u128 {
                q = ext.add(&q, &q);
                ord >>= 1;
            }
            debug_assert!(ext.mul(order as i64, &q).is_infinity());
            debug_assert!(!ext.mul(order as i64 / 2, &q).is_infinity());
            return Ok(TorsionGenerator {
                curve: ext,
                point: q,
                order,
                extension_degree: s,
            });
        }
        return Err(Error::SearchExhausted(format!(
            "no generator of order {order} found among random points over GF(2^{})",
            m * s
        )));
    }
    Err(Error::SearchExhausted(format!(
        "no extension of degree <= {max_s} contains a point of order {order}; {}",
        tried.join("; ")
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve16() -> Arc<Curve> {
        let f = Field::parse_spec("gf2^4:0x13").unwrap();
        Curve::new(&f, Fq::ZERO, f.generator()).unwrap()
    }

    #[test]
    fn group_law_basics() {
        let e = curve16();
        let pts = e.points().unwrap();
        let t2 = e.two_torsion();
        assert!(e.add(&t2, &t2).is_infinity());
        for p in &pts {
            assert_eq!(e.add(p, &Point::Infinity), *p);
            assert!(e.add(p, &e.neg(p)).is_infinity());
            assert!(e.contains(&e.add(p, p)));
            if let Point::Affine(x, y) = *p {
                assert_eq!(e.mul(-1, p), Point::Affine(x, e.field().add(x, y)));
            }
        }
    }

    #[test]
    fn exhaustive_associativity_and_commutativity() {
        let e = curve16();
        let pts = e.points().unwrap();
        for a in &pts {
            for b in &pts {
                assert_eq!(e.add(a, b), e.add(b, a));
                for c in &pts {
                    assert_eq!(e.add(&e.add(a, b), c), e.add(a, &e.add(b, c)));
                }
            }
        }
    }

    #[test]
    fn point_count_matches_enumeration_and_hasse() {
        let e = curve16();
        let n = e.point_count().unwrap();
        assert_eq!(n as usize, e.points().unwrap().len());
        assert_eq!(n % 2, 0);
        let q = 16f64;
        assert!((n as f64 - (q + 1.0)).abs() <= 2.0 * q.sqrt());
    }

    #[test]
    fn count_matches_naive_pair_enumeration() {
        // oracle: test all 256 pairs against the curve equation directly
        let e = curve16();
        let f = e.field();
        let mut naive = 1;
        for x in f.elements() {
            for y in f.elements() {
                if e.contains(&Point::Affine(x, y)) {
                    naive += 1;
                }
            }
        }
        assert_eq!(e.point_count().unwrap(), naive);
    }

    #[test]
    fn extension_counts_agree_with_enumeration() {
        let e = curve16();
        let t = e.trace_of_frobenius().unwrap();
        let counts = extension_counts(16, t, 4);
        for s in 1..=3u32 {
            let f = Field::with_degree(4 * s).unwrap();
            let ext = e.base_change(&f).unwrap();
            assert_eq!(ext.point_count().unwrap() as u128, counts[s as usize - 1]);
        }
    }

    #[test]
    fn doubling_formula_of_the_generator() {
        let e = curve16();
        let g = find_torsion_generator(&e, 16, 1).unwrap();
        let f = g.curve.field().clone();
        let Point::Affine(w1, w2) = g.point else {
            panic!()
        };
        let sm = g.curve.sqrt_mu();
        let s1 = f.add(w1, f.div(sm, w1).unwrap());
        let s2 = f.add(f.mul(f.div(s1, w1).unwrap(), f.add(f.add(w1, w2), sm)), w1);
        assert_eq!(
            g.curve.mul(2, &g.point),
            Point::Affine(f.square(s1), f.square(s2))
        );
    }

    #[test]
    fn generator_has_exact_order() {
        let e = curve16();
        for order in [16u64, 32] {
            let g = find_torsion_generator(&e, order, 7).unwrap();
            assert!(g.curve.mul(order as i64, &g.point).is_infinity());
            assert_eq!(
                g.curve.mul(order as i64 / 2, &g.point),
                g.curve.two_torsion()
            );
            let mult = g.multiples();
            for (i, p) in mult.iter().enumerate() {
                assert_eq!(*p, g.curve.mul(i as i64, &g.point));
            }
        }
    }

    #[test]
    fn point_text_round_trip() {
        let e = curve16();
        for p in e.points().unwrap() {
            assert_eq!(e.parse_point(&e.format_point(&p)).unwrap(), p);
        }
    }
}

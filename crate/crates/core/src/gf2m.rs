//! Binary finite fields GF(2^m) with an explicit primitive defining polynomial.
//!
//! Elements are packed bit vectors ([`Fq`]); all arithmetic goes through a
//! [`Field`] context. Fields with `m <= 16` use log/antilog tables, larger
//! ones fall back to carry-less multiplication and reduction.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rand::Rng;

use crate::bits::{self, BitVec};
use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 32;

/// A field element: coefficients of the residue polynomial, bit `i` holding
/// the coefficient of `t^i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fq(pub u64);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fq({:#x})", self.0)
    }
}

/// Default defining polynomials, all primitive.
fn default_modulus(m: u32) -> Option<u64> {
    Some(match m {
        1 => 0b11,
        2 => 0b111,
        3 => 0b1011,
        4 => 0x13,
        8 => 0x11d,
        _ => return None,
    })
}

struct Tables {
    exp: Vec<u64>,
    log: Vec<u32>,
}

/// GF(2^m) context. Immutable after construction.
pub struct Field {
    degree: u32,
    modulus: u64,
    tables: Option<Tables>,
    /// 2^m - 1
    order: u64,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.modulus == other.modulus
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec())
    }
}

impl Field {
    /// Builds GF(2^m) from a defining polynomial given as a bitmask
    /// including the leading `x^m` bit. The polynomial must be primitive.
    pub fn new(m: u32, modulus: u64) -> Result<Arc<Field>> {
        if !(1..=MAX_DEGREE).contains(&m) {
            return Err(Error::InvalidFieldSpec(format!("gf2^{m}")));
        }
        if bits::deg128(modulus as u128) != m as i32 {
            return Err(Error::InvalidFieldSpec(format!("gf2^{m}:{modulus:#x}")));
        }
        if !bits::is_irreducible_gf2(modulus) {
            return Err(Error::NotIrreducible(modulus));
        }
        let order = (1u64 << m) - 1;
        // x primitive iff x^(order/p) != 1 for every prime p | order
        for p in bits::prime_factors(order) {
            if pow_gf2(2, order / p, modulus) == 1 {
                return Err(Error::NotPrimitive(modulus));
            }
        }
        let tables = if m <= 16 {
            let q = 1usize << m;
            let mut exp = vec![0u64; 2 * (q - 1)];
            let mut log = vec![0u32; q];
            let mut a = 1u64;
            for (i, slot) in exp.iter_mut().enumerate().take(q - 1) {
                *slot = a;
                log[a as usize] = i as u32;
                a <<= 1;
                if a >> m & 1 == 1 {
                    a ^= modulus;
                }
            }
            for i in q - 1..2 * (q - 1) {
                exp[i] = exp[i - (q - 1)];
            }
            Some(Tables { exp, log })
        } else {
            None
        };
        Ok(Arc::new(Field {
            degree: m,
            modulus,
            tables,
            order,
        }))
    }

    /// GF(2^m) with the default (or smallest primitive) defining polynomial.
    pub fn with_degree(m: u32) -> Result<Arc<Field>> {
        let modulus = match default_modulus(m) {
            Some(p) => p,
            None => smallest_primitive(m)?,
        };
        Field::new(m, modulus)
    }

    /// Parses `gf2^<m>[:<hex mask>]`.
    pub fn parse_spec(spec: &str) -> Result<Arc<Field>> {
        let bad = || Error::InvalidFieldSpec(spec.to_string());
        let rest = spec.trim().strip_prefix("gf2^").ok_or_else(bad)?;
        let (deg, poly) = match rest.split_once(':') {
            Some((d, p)) => (d, Some(p)),
            None => (rest, None),
        };
        let m: u32 = deg.parse().map_err(|_| bad())?;
        match poly {
            None => Field::with_degree(m),
            Some(p) => {
                let p = p.trim_start_matches("0x").trim_start_matches("0X");
                let mask = u64::from_str_radix(p, 16).map_err(|_| bad())?;
                Field::new(m, mask)
            }
        }
    }

    pub fn spec(&self) -> String {
        format!("gf2^{}:{:#x}", self.degree, self.modulus)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Number of elements.
    pub fn size(&self) -> u64 {
        1u64 << self.degree
    }

    pub fn zero(&self) -> Fq {
        Fq::ZERO
    }

    pub fn one(&self) -> Fq {
        Fq::ONE
    }

    /// The residue class of `x`, the designated primitive element.
    pub fn generator(&self) -> Fq {
        // in GF(2) the class of x is 1
        if self.degree == 1 {
            Fq::ONE
        } else {
            Fq(2)
        }
    }

    pub fn contains(&self, a: Fq) -> bool {
        a.0 >> self.degree == 0
    }

    pub fn from_bits(&self, bits: u64) -> Fq {
        Fq(bits::rem128(bits as u128, self.modulus as u128) as u64)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.size()).map(Fq)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fq {
        Fq(rng.gen::<u64>() & (self.size() - 1))
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        Fq(a.0 ^ b.0)
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a.0 == 0 || b.0 == 0 {
            return Fq::ZERO;
        }
        match &self.tables {
            Some(t) => Fq(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => Fq(bits::mulmod(a.0, b.0, self.modulus)),
        }
    }

    #[inline]
    pub fn square(&self, a: Fq) -> Fq {
        self.mul(a, a)
    }

    pub fn inv(&self, a: Fq) -> Result<Fq> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.tables {
            Some(t) => {
                let l = t.log[a.0 as usize] as u64;
                Fq(t.exp[((self.order - l) % self.order) as usize])
            }
            None => self.pow(a, self.order - 1),
        })
    }

    pub fn div(&self, a: Fq, b: Fq) -> Result<Fq> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fq, e: u64) -> Fq {
        if e == 0 {
            return Fq::ONE;
        }
        if a.0 == 0 {
            return Fq::ZERO;
        }
        if let Some(t) = &self.tables {
            let l = t.log[a.0 as usize] as u128;
            return Fq(t.exp[((l * e as u128) % self.order as u128) as usize]);
        }
        let mut base = a;
        let mut e = e;
        let mut acc = Fq::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    /// Signed exponent power; negative exponents invert first.
    pub fn powi(&self, a: Fq, e: i64) -> Result<Fq> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(self.inv(a)?, e.unsigned_abs()))
        }
    }

    /// The unique square root, `a^(2^(m-1))`.
    pub fn sqrt(&self, a: Fq) -> Fq {
        let mut r = a;
        for _ in 0..self.degree - 1 {
            r = self.square(r);
        }
        r
    }

    /// Absolute trace to GF(2).
    pub fn trace(&self, a: Fq) -> u8 {
        let mut acc = a;
        let mut t = a;
        for _ in 1..self.degree {
            t = self.square(t);
            acc = self.add(acc, t);
        }
        acc.0 as u8
    }

    /// Discrete logarithm to base `t` (the generator).
    pub fn log(&self, a: Fq) -> Option<u64> {
        if a.0 == 0 {
            return None;
        }
        match &self.tables {
            Some(t) => Some(t.log[a.0 as usize] as u64),
            None => {
                let g = self.generator();
                let mut acc = Fq::ONE;
                for i in 0..self.order {
                    if acc == a {
                        return Some(i);
                    }
                    acc = self.mul(acc, g);
                }
                None
            }
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Fq) -> Option<u64> {
        if a.0 == 0 {
            return None;
        }
        let mut ord = self.order;
        for p in bits::prime_factors(self.order) {
            while ord.is_multiple_of(p) && self.pow(a, ord / p) == Fq::ONE {
                ord /= p;
            }
        }
        Some(ord)
    }

    /// Finds `u` with `u^2 + u = c`, when one exists (iff the trace of `c` is 0).
    pub fn solve_artin_schreier(&self, c: Fq) -> Option<Fq> {
        let m = self.degree as usize;
        let cols: Vec<BitVec> = (0..m)
            .map(|i| {
                let e = Fq(1 << i);
                to_bitvec(self.add(self.square(e), e).0, m)
            })
            .collect();
        let sol = bits::solve_gf2(&cols, &to_bitvec(c.0, m))?;
        let mut u = 0u64;
        for i in 0..m {
            if sol.get(i) {
                u |= 1 << i;
            }
        }
        Some(Fq(u))
    }

    /// Formats an element as a power of the generator (`mu^k`), `0` or `1`.
    pub fn format(&self, a: Fq) -> String {
        match self.log(a) {
            None => "0".to_string(),
            Some(0) => "1".to_string(),
            Some(1) => "mu".to_string(),
            Some(k) => format!("mu^{k}"),
        }
    }

    /// Parses `0`, `1`, `mu`, `mu^k`.
    pub fn parse_elem(&self, s: &str) -> Result<Fq> {
        let s = s.trim();
        match s {
            "0" => return Ok(Fq::ZERO),
            "1" => return Ok(Fq::ONE),
            "mu" => return Ok(self.generator()),
            _ => {}
        }
        let k = s
            .strip_prefix("mu^")
            .and_then(|k| k.trim_matches(|c| c == '{' || c == '}').parse::<i64>().ok())
            .ok_or_else(|| Error::Parse(format!("bad field element `{s}`")))?;
        self.powi(self.generator(), k)
    }
}

fn to_bitvec(bits: u64, len: usize) -> BitVec {
    let mut v = BitVec::zeros(len);
    for i in 0..len {
        v.set(i, (bits >> i) & 1 == 1);
    }
    v
}

fn pow_gf2(base: u64, mut e: u64, modulus: u64) -> u64 {
    let mut acc = 1u64;
    let mut b = bits::rem128(base as u128, modulus as u128) as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = bits::mulmod(acc, b, modulus);
        }
        b = bits::mulmod(b, b, modulus);
        e >>= 1;
    }
    acc
}

/// Smallest primitive polynomial of degree `m` in bitmask order.
pub fn smallest_primitive(m: u32) -> Result<u64> {
    let order = (1u64 << m) - 1;
    let factors = bits::prime_factors(order);
    for low in (1u64..(1 << m)).step_by(2) {
        let p = (1u64 << m) | low;
        if bits::is_irreducible_gf2(p) && factors.iter().all(|&f| pow_gf2(2, order / f, p) != 1) {
            return Ok(p);
        }
    }
    Err(Error::SearchExhausted(format!(
        "no primitive polynomial of degree {m}"
    )))
}

/// Element bound to its field, for checked arithmetic across contexts.
#[derive(Clone, Debug)]
pub struct FqElem {
    pub field: Arc<Field>,
    pub value: Fq,
}

/// Binary operations accepted by [`fq_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FqOp {
    Add,
    Mul,
    Inv,
    Pow(u64),
}

impl FqElem {
    pub fn new(field: &Arc<Field>, value: Fq) -> Self {
        FqElem {
            field: field.clone(),
            value,
        }
    }
}

impl PartialEq for FqElem {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.value == other.value
    }
}

/// Checked field arithmetic. `Inv` and `Pow` ignore `b`.
pub fn fq_arith(a: &FqElem, b: &FqElem, op: FqOp) -> Result<FqElem> {
    if *a.field != *b.field {
        return Err(Error::FieldMismatch(a.field.spec(), b.field.spec()));
    }
    let f = &a.field;
    let value = match op {
        FqOp::Add => f.add(a.value, b.value),
        FqOp::Mul => f.mul(a.value, b.value),
        FqOp::Inv => f.inv(a.value)?,
        FqOp::Pow(e) => f.pow(a.value, e),
    };
    Ok(FqElem::new(f, value))
}

pub fn fq_sqrt(a: &FqElem) -> FqElem {
    FqElem::new(&a.field, a.field.sqrt(a.value))
}

/// Ring embedding of a subfield into an extension, fixed by sending the
/// source generator to the smallest (by bit pattern) root of its defining
/// polynomial in the target.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub source: Arc<Field>,
    pub target: Arc<Field>,
    /// images of t^0, ..., t^(m-1)
    basis: Vec<Fq>,
}

impl Embedding {
    pub fn new(source: &Arc<Field>, target: &Arc<Field>) -> Result<Embedding> {
        let (m, n) = (source.degree(), target.degree());
        if n % m != 0 {
            return Err(Error::IncompatibleDegrees { from: m, to: n });
        }
        let root = cached_root(source, target)?;
        let mut basis = Vec::with_capacity(m as usize);
        let mut acc = Fq::ONE;
        for _ in 0..m {
            basis.push(acc);
            acc = target.mul(acc, root);
        }
        Ok(Embedding {
            source: source.clone(),
            target: target.clone(),
            basis,
        })
    }

    pub fn apply(&self, a: Fq) -> Fq {
        let mut r = Fq::ZERO;
        for (i, b) in self.basis.iter().enumerate() {
            if (a.0 >> i) & 1 == 1 {
                r = Fq(r.0 ^ b.0);
            }
        }
        r
    }

    /// Inverse image of an element lying in the embedded subfield.
    pub fn preimage(&self, a: Fq) -> Option<Fq> {
        // Frobenius-fixed test then brute force over the (small) source
        self.source.elements().find(|&s| self.apply(s) == a)
    }
}

type EmbedKey = (u32, u64, u32, u64);

fn cached_root(source: &Field, target: &Arc<Field>) -> Result<Fq> {
    static CACHE: OnceLock<Mutex<HashMap<EmbedKey, Fq>>> = OnceLock::new();
    let key = (source.degree, source.modulus, target.degree, target.modulus);
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(r) = cache.lock().expect("embedding cache poisoned").get(&key) {
        return Ok(*r);
    }
    if *source == **target {
        return Ok(source.generator());
    }
    let coeffs = (0..=source.degree)
        .map(|i| Fq((source.modulus >> i) & 1))
        .collect();
    let root = crate::poly::Poly::new(target, coeffs)
        .roots()
        .into_iter()
        .min()
        .ok_or_else(|| {
            Error::Inconsistent("defining polynomial has no root in extension".into())
        })?;
    cache
        .lock()
        .expect("embedding cache poisoned")
        .insert(key, root);
    Ok(root)
}

/// Embeds `a` into `target`, which must be an extension of `a`'s field.
pub fn fq_embed(a: &FqElem, target: &Arc<Field>) -> Result<FqElem> {
    let e = Embedding::new(&a.field, target)?;
    Ok(FqElem::new(target, e.apply(a.value)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf16() -> Arc<Field> {
        Field::parse_spec("gf2^4:0x13").unwrap()
    }

    #[test]
    fn arith_examples() {
        let f = gf16();
        let t = f.generator();
        let a = f.pow(t, 5);
        assert_eq!(f.add(a, a), Fq::ZERO);
        assert_eq!(f.mul(t, f.pow(t, 3)), Fq(0b11)); // t^4 = t + 1
        assert_eq!(f.mul(t, f.inv(t).unwrap()), Fq::ONE);
        assert_eq!(f.inv(Fq::ZERO), Err(Error::DivisionByZero));
    }

    #[test]
    fn sqrt_examples() {
        let f = gf16();
        let t = f.generator();
        assert_eq!(f.sqrt(Fq::ONE), Fq::ONE);
        assert_eq!(f.sqrt(Fq::ZERO), Fq::ZERO);
        assert_eq!(f.sqrt(f.square(t)), t);
    }

    #[test]
    fn mixed_contexts_are_rejected() {
        let f = gf16();
        let g = Field::with_degree(8).unwrap();
        let a = FqElem::new(&f, Fq(3));
        let b = FqElem::new(&g, Fq(3));
        assert!(matches!(
            fq_arith(&a, &b, FqOp::Add),
            Err(Error::FieldMismatch(..))
        ));
    }

    #[test]
    fn rejects_non_primitive_and_reducible() {
        // x^4+x^3+x^2+x+1 is irreducible but has order 5
        assert_eq!(Field::new(4, 0x1f).unwrap_err(), Error::NotPrimitive(0x1f));
        assert_eq!(
            Field::new(4, 0x15).unwrap_err(),
            Error::NotIrreducible(0x15)
        );
        assert!(Field::parse_spec("gf2^x").is_err());
        assert!(Field::parse_spec("gf2^0").is_err());
        assert_eq!(Field::parse_spec("gf2^1").unwrap().generator(), Fq::ONE);
    }

    #[test]
    fn spec_round_trip_and_formatting() {
        let f = gf16();
        assert_eq!(f.spec(), "gf2^4:0x13");
        assert_eq!(f.format(f.pow(f.generator(), 7)), "mu^7");
        assert_eq!(f.parse_elem("mu^7").unwrap(), f.pow(f.generator(), 7));
        assert_eq!(f.parse_elem("mu^{13}").unwrap(), f.pow(f.generator(), 13));
        assert_eq!(f.format(Fq::ONE), "1");
        assert_eq!(f.format(Fq::ZERO), "0");
    }

    #[test]
    fn embedding_gf4_into_gf16() {
        let f4 = Field::with_degree(2).unwrap();
        let f16 = gf16();
        let e = Embedding::new(&f4, &f16).unwrap();
        assert_eq!(e.apply(Fq::ZERO), Fq::ZERO);
        assert_eq!(e.apply(Fq::ONE), Fq::ONE);
        let img = e.apply(f4.generator());
        assert_eq!(f16.mult_order(img), Some(3));
        // independent oracle: the order-3 roots of x^2+x+1 in GF(16)
        let roots: Vec<Fq> = f16
            .elements()
            .filter(|&c| f16.add(f16.add(f16.square(c), c), Fq::ONE).is_zero())
            .collect();
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&img));
        assert!(matches!(
            Embedding::new(&Field::with_degree(3).unwrap(), &f16),
            Err(Error::IncompatibleDegrees { from: 3, to: 4 })
        ));
    }

    #[test]
    fn embedding_is_a_ring_homomorphism() {
        let f16 = gf16();
        let f256 = Field::with_degree(8).unwrap();
        let e = Embedding::new(&f16, &f256).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let a = f16.random(&mut rng);
            let b = f16.random(&mut rng);
            assert_eq!(e.apply(f16.add(a, b)), f256.add(e.apply(a), e.apply(b)));
            assert_eq!(e.apply(f16.mul(a, b)), f256.mul(e.apply(a), e.apply(b)));
        }
    }

    #[test]
    fn field_axioms_exhaustive_small_degrees() {
        for m in 2..=8 {
            let f = Field::with_degree(m).unwrap();
            let q = f.size();
            for a in f.elements() {
                assert_eq!(f.sqrt(a), {
                    let r = f.sqrt(a);
                    assert_eq!(f.square(r), a);
                    r
                });
                assert_eq!(f.pow(a, q), a);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Fq::ONE);
                }
            }
            // Frobenius additivity on a sampled grid
            for a in f.elements().step_by(3) {
                for b in f.elements().step_by(5) {
                    assert_eq!(f.square(f.add(a, b)), f.add(f.square(a), f.square(b)));
                }
            }
        }
    }

    #[test]
    fn table_free_path_matches_tables() {
        let f = Field::with_degree(20).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let a = f.random(&mut rng);
            if a.is_zero() {
                continue;
            }
            assert_eq!(f.mul(a, f.inv(a).unwrap()), Fq::ONE);
            assert_eq!(f.square(f.sqrt(a)), a);
        }
    }

    #[test]
    fn artin_schreier_solver() {
        let f = gf16();
        for c in f.elements() {
            match f.solve_artin_schreier(c) {
                Some(u) => assert_eq!(f.add(f.square(u), u), c),
                None => assert_eq!(f.trace(c), 1),
            }
        }
    }
}

//! Truncated Laurent series `sum c_j t^j + O(t^prec)` over GF(2^m).

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf2m::{Field, Fq};
use crate::poly::Poly;

/// Precision used for exactly known series (constants, monomials).
pub const EXACT: i64 = i64::MAX / 8;

#[derive(Clone)]
pub struct Laurent {
    field: Arc<Field>,
    /// exponent of `coeffs[0]`; `coeffs[0] != 0` unless the series is
    /// zero to the known precision
    val: i64,
    coeffs: Vec<Fq>,
    /// absolute precision: the series is known modulo `t^prec`
    prec: i64,
}

impl Laurent {
    fn normalize(mut self) -> Laurent {
        self.prec = self.prec.min(EXACT);
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.val = self.prec;
            }
            Some(k) => {
                self.coeffs.drain(..k);
                self.val += k as i64;
            }
        }
        let keep = (self.prec - self.val).max(0) as usize;
        self.coeffs.truncate(keep);
        self
    }

    pub fn new(field: &Arc<Field>, val: i64, coeffs: Vec<Fq>, prec: i64) -> Laurent {
        Laurent {
            field: field.clone(),
            val,
            coeffs,
            prec,
        }
        .normalize()
    }

    pub fn zero(field: &Arc<Field>, prec: i64) -> Laurent {
        Laurent::new(field, prec, Vec::new(), prec)
    }

    pub fn constant(field: &Arc<Field>, c: Fq, prec: i64) -> Laurent {
        Laurent::new(field, 0, vec![c], prec)
    }

    /// `c * t^k`.
    pub fn monomial(field: &Arc<Field>, c: Fq, k: i64, prec: i64) -> Laurent {
        Laurent::new(field, k, vec![c], prec)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    /// Order of the leading term, `None` if zero to the known precision.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.val)
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    /// Number of known coefficients after the leading one.
    pub fn relative_precision(&self) -> i64 {
        self.prec - self.val
    }

    pub fn is_zero_to_precision(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: i64) -> Fq {
        if k < self.val || k >= self.prec {
            return Fq::ZERO;
        }
        self.coeffs
            .get((k - self.val) as usize)
            .copied()
            .unwrap_or(Fq::ZERO)
    }

    pub fn leading(&self) -> Option<(i64, Fq)> {
        self.coeffs.first().map(|&c| (self.val, c))
    }

    pub fn truncate(&self, prec: i64) -> Laurent {
        Laurent::new(
            &self.field,
            self.val,
            self.coeffs.clone(),
            prec.min(self.prec),
        )
    }

    pub fn add(&self, o: &Laurent) -> Laurent {
        let prec = self.prec.min(o.prec);
        let lead = |s: &Laurent| if s.coeffs.is_empty() { prec } else { s.val };
        let val = lead(self).min(lead(o)).min(prec);
        let end_of = |s: &Laurent| {
            if s.coeffs.is_empty() {
                i64::MIN
            } else {
                s.val + s.coeffs.len() as i64
            }
        };
        let end = end_of(self).max(end_of(o)).min(prec);
        let mut c = vec![Fq::ZERO; end.saturating_sub(val).max(0) as usize];
        for s in [self, o] {
            for (i, &x) in s.coeffs.iter().enumerate() {
                let k = s.val + i as i64;
                if k < prec {
                    let slot = &mut c[(k - val) as usize];
                    *slot = Fq(slot.0 ^ x.0);
                }
            }
        }
        Laurent::new(&self.field, val, c, prec)
    }

    pub fn mul(&self, o: &Laurent) -> Laurent {
        let f = &self.field;
        let val = self.val + o.val;
        let prec = (self.val + o.prec).min(o.val + self.prec);
        let full = (self.coeffs.len() + o.coeffs.len()).saturating_sub(1) as i64;
        let len = (prec - val).clamp(0, full) as usize;
        let mut c = vec![Fq::ZERO; len];
        for (i, &x) in self.coeffs.iter().enumerate().take(len) {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in o.coeffs.iter().enumerate().take(len - i) {
                c[i + j] = Fq(c[i + j].0 ^ f.mul(x, y).0);
            }
        }
        Laurent::new(f, val, c, prec)
    }

    pub fn scale(&self, a: Fq) -> Laurent {
        let f = &self.field;
        Laurent::new(
            f,
            self.val,
            self.coeffs.iter().map(|&c| f.mul(c, a)).collect(),
            self.prec,
        )
    }

    /// Frobenius: coefficients squared at doubled exponents, so the
    /// absolute precision doubles as well.
    pub fn square(&self) -> Laurent {
        let f = &self.field;
        let mut c = vec![Fq::ZERO; (2 * self.coeffs.len()).saturating_sub(1)];
        for (i, &x) in self.coeffs.iter().enumerate() {
            c[2 * i] = f.square(x);
        }
        let prec = if self.prec >= EXACT {
            EXACT
        } else {
            2 * self.prec
        };
        Laurent::new(f, 2 * self.val, c, prec)
    }

    /// Multiplicative inverse; fails on a series that is zero to precision.
    pub fn inv(&self) -> Result<Laurent> {
        let f = &self.field;
        let Some((v, lead)) = self.leading() else {
            return Err(Error::DivisionByZero);
        };
        if self.prec >= EXACT && self.coeffs.len() == 1 {
            return Ok(Laurent::monomial(f, f.inv(lead)?, -v, EXACT));
        }
        let r = self.relative_precision().min(1 << 16) as usize;
        let li = f.inv(lead)?;
        // unit part u = sum u_j t^j with u_0 = lead; solve u * w = 1
        let u = &self.coeffs;
        let mut w = vec![Fq::ZERO; r];
        for j in 0..r {
            let mut s = if j == 0 { Fq::ONE } else { Fq::ZERO };
            for i in 1..=j.min(u.len() - 1) {
                s = f.add(s, f.mul(u[i], w[j - i]));
            }
            w[j] = f.mul(s, li);
        }
        Ok(Laurent::new(f, -v, w, -v + r as i64))
    }

    pub fn div(&self, o: &Laurent) -> Result<Laurent> {
        Ok(self.mul(&o.inv()?))
    }

    /// Evaluates a polynomial at the series (Horner).
    pub fn eval_poly(p: &Poly, s: &Laurent) -> Laurent {
        let f = s.field();
        let mut acc = Laurent::zero(f, EXACT);
        for &c in p.coeffs().iter().rev() {
            acc = acc.mul(s).add(&Laurent::constant(f, c, EXACT));
        }
        acc
    }

    pub fn eq_to_precision(&self, o: &Laurent) -> bool {
        self.add(o).is_zero_to_precision()
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                parts.push(format!(
                    "{}*t^{}",
                    self.field.format(c),
                    self.val + i as i64
                ));
            }
        }
        parts.push(format!("O(t^{})", self.prec));
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_products() {
        let f = Field::with_degree(4).unwrap();
        let g = f.generator();
        // (1 + t)^{-1} = 1 + t + t^2 + ...
        let s = Laurent::new(&f, 0, vec![Fq::ONE, Fq::ONE], 10);
        let inv = s.inv().unwrap();
        for k in 0..10 {
            assert_eq!(inv.coeff(k), Fq::ONE);
        }
        assert!(s
            .mul(&inv)
            .eq_to_precision(&Laurent::constant(&f, Fq::ONE, 10)));
        let u = Laurent::new(&f, -3, vec![g, Fq::ZERO, Fq::ONE], 5);
        let p = u.mul(&u.inv().unwrap());
        assert_eq!(p.valuation(), Some(0));
        assert_eq!(p.coeff(0), Fq::ONE);
        assert!(p.relative_precision() >= 8);
    }

    #[test]
    fn polynomial_evaluation() {
        let f = Field::with_degree(4).unwrap();
        let t = Laurent::new(&f, 1, vec![Fq::ONE], 20);
        let p = Poly::parse(&f, "x^3 + mu*x + 1", "x").unwrap();
        let v = Laurent::eval_poly(&p, &t);
        assert_eq!(v.coeff(0), Fq::ONE);
        assert_eq!(v.coeff(1), f.generator());
        assert_eq!(v.coeff(3), Fq::ONE);
        assert_eq!(v.coeff(2), Fq::ZERO);
    }
}

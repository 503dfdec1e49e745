//! Residue fields `F[x]/(p)` of irreducible polynomials, with the
//! Artin-Schreier root finder needed to split places of the curve.

use std::sync::Arc;

use crate::bits::{solve_gf2, BitVec};
use crate::error::{Error, Result};
use crate::gf2m::{Field, Fq};
use crate::poly::Poly;

#[derive(Clone, Debug)]
pub struct ResidueField {
    p: Poly,
}

impl ResidueField {
    /// `p` must be monic irreducible; irreducibility is the caller's promise
    /// (checked in debug builds).
    pub fn new(p: &Poly) -> ResidueField {
        debug_assert!(p.is_monic() && p.deg() >= 1);
        ResidueField { p: p.clone() }
    }

    pub fn modulus(&self) -> &Poly {
        &self.p
    }

    pub fn base(&self) -> &Arc<Field> {
        self.p.field()
    }

    /// Degree over the coefficient field.
    pub fn degree(&self) -> usize {
        self.p.deg() as usize
    }

    /// Degree over GF(2).
    pub fn bits(&self) -> usize {
        self.degree() * self.base().degree() as usize
    }

    pub fn reduce(&self, a: &Poly) -> Poly {
        a.rem(&self.p).expect("nonzero modulus")
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul_mod(b, &self.p)
    }

    pub fn square(&self, a: &Poly) -> Poly {
        self.reduce(&a.square())
    }

    pub fn inv(&self, a: &Poly) -> Result<Poly> {
        a.inv_mod(&self.p)
    }

    /// Square root: the inverse of Frobenius, i.e. `a^(2^(bits-1))`.
    pub fn sqrt(&self, a: &Poly) -> Poly {
        let mut r = self.reduce(a);
        for _ in 1..self.bits() {
            r = self.square(&r);
        }
        r
    }

    /// Absolute trace to GF(2).
    pub fn trace(&self, a: &Poly) -> u8 {
        let mut t = self.reduce(a);
        let mut acc = t.clone();
        for _ in 1..self.bits() {
            t = self.square(&t);
            acc = &acc + &t;
        }
        debug_assert!(acc.is_constant());
        (acc.coeff(0).0 & 1) as u8
    }

    fn to_bits(&self, a: &Poly) -> BitVec {
        let m = self.base().degree() as usize;
        let mut v = BitVec::zeros(self.bits());
        for i in 0..self.degree() {
            let c = a.coeff(i).0;
            for j in 0..m {
                if (c >> j) & 1 == 1 {
                    v.set(i * m + j, true);
                }
            }
        }
        v
    }

    fn poly_from_bits(&self, v: &BitVec) -> Poly {
        let m = self.base().degree() as usize;
        let coeffs = (0..self.degree())
            .map(|i| {
                let mut c = 0u64;
                for j in 0..m {
                    if v.get(i * m + j) {
                        c |= 1 << j;
                    }
                }
                Fq(c)
            })
            .collect();
        Poly::new(self.base(), coeffs)
    }

    /// A root `u` of `u^2 + u = c`, if one exists.
    pub fn solve_artin_schreier(&self, c: &Poly) -> Option<Poly> {
        let c = self.reduce(c);
        let m = self.base().degree() as usize;
        let f = self.base();
        let columns: Vec<BitVec> = (0..self.bits())
            .map(|k| {
                let basis = Poly::monomial(f, Fq(1 << (k % m)), k / m);
                self.to_bits(&(&self.square(&basis) + &basis))
            })
            .collect();
        let sol = solve_gf2(&columns, &self.to_bits(&c))?;
        let u = self.poly_from_bits(&sol);
        debug_assert_eq!(&self.square(&u) + &u, c);
        Some(u)
    }

    /// Multiplicative inverse that reports zero divisors as an error.
    pub fn checked_inv(&self, a: &Poly) -> Result<Poly> {
        if self.reduce(a).is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.inv(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn artin_schreier_in_quadratic_extension() {
        let f = Field::with_degree(4).unwrap();
        let p = Poly::parse(&f, "x^2 + x + mu^7", "x").unwrap();
        assert!(p.is_irreducible());
        let l = ResidueField::new(&p);
        let mut solvable = 0;
        for i in 0..16u64 {
            for j in 0..16u64 {
                let c = Poly::new(&f, vec![Fq(i), Fq(j)]);
                match l.solve_artin_schreier(&c) {
                    Some(u) => {
                        assert_eq!(&l.square(&u) + &u, l.reduce(&c));
                        assert_eq!(l.trace(&c), 0);
                        solvable += 1;
                    }
                    None => assert_eq!(l.trace(&c), 1),
                }
            }
        }
        assert_eq!(solvable, 128);
        let a = Poly::parse(&f, "mu*x + mu^3", "x").unwrap();
        let s = l.sqrt(&a);
        assert_eq!(l.square(&s), a);
    }
}

//! Affine maps of the plane, `(x, y) -> A (x, y) + b`, composed exactly.

use std::sync::Arc;

use crate::bivar::{BivarPoly, HomPoly, PlaneMap};
use crate::gf2m::{Field, Fq};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    pub a: [[Fq; 2]; 2],
    pub b: [Fq; 2],
}

impl AffineMap {
    pub fn identity() -> AffineMap {
        AffineMap {
            a: [[Fq::ONE, Fq::ZERO], [Fq::ZERO, Fq::ONE]],
            b: [Fq::ZERO; 2],
        }
    }

    pub fn translation(bx: Fq, by: Fq) -> AffineMap {
        AffineMap {
            b: [bx, by],
            ..AffineMap::identity()
        }
    }

    /// `(x, y) -> (y, x)`.
    pub fn swap() -> AffineMap {
        AffineMap {
            a: [[Fq::ZERO, Fq::ONE], [Fq::ONE, Fq::ZERO]],
            b: [Fq::ZERO; 2],
        }
    }

    /// `self o other`: apply `other` first.
    pub fn compose(&self, field: &Field, other: &AffineMap) -> AffineMap {
        let m = |r: usize, c: usize| {
            field.add(
                field.mul(self.a[r][0], other.a[0][c]),
                field.mul(self.a[r][1], other.a[1][c]),
            )
        };
        let v = |r: usize| {
            let ab = field.add(
                field.mul(self.a[r][0], other.b[0]),
                field.mul(self.a[r][1], other.b[1]),
            );
            field.add(ab, self.b[r])
        };
        AffineMap {
            a: [[m(0, 0), m(0, 1)], [m(1, 0), m(1, 1)]],
            b: [v(0), v(1)],
        }
    }

    pub fn apply(&self, field: &Field, p: (Fq, Fq)) -> (Fq, Fq) {
        let c = |r: usize| {
            let s = field.add(field.mul(self.a[r][0], p.0), field.mul(self.a[r][1], p.1));
            field.add(s, self.b[r])
        };
        (c(0), c(1))
    }

    /// Whether the linear part swaps the coordinates.
    pub fn swaps(&self) -> bool {
        self.a[0][0].is_zero() && self.a[1][1].is_zero()
    }

    /// Action on `P^1 x P^1` (`None` is the point at infinity) for maps
    /// with diagonal or antidiagonal linear part.
    pub fn apply_p1p1(
        &self,
        field: &Field,
        p: (Option<Fq>, Option<Fq>),
    ) -> (Option<Fq>, Option<Fq>) {
        let coord = |c: Fq, s: Option<Fq>, b: Fq| s.map(|v| field.add(field.mul(c, v), b));
        if self.swaps() {
            (
                coord(self.a[0][1], p.1, self.b[0]),
                coord(self.a[1][0], p.0, self.b[1]),
            )
        } else {
            (
                coord(self.a[0][0], p.0, self.b[0]),
                coord(self.a[1][1], p.1, self.b[1]),
            )
        }
    }

    /// `(a00 X + a01 Y + b0 Z : a10 X + a11 Y + b1 Z : Z)`.
    pub fn to_plane_map(&self, field: &Arc<Field>) -> PlaneMap {
        let row = |r: usize| {
            let mut h = HomPoly::zero(field, 1);
            h.add_term(self.a[r][0], (1, 0, 0));
            h.add_term(self.a[r][1], (0, 1, 0));
            h.add_term(self.b[r], (0, 0, 1));
            h
        };
        let mut z = HomPoly::zero(field, 1);
        z.add_term(Fq::ONE, (0, 0, 1));
        PlaneMap::new([row(0), row(1), z]).expect("linear components")
    }

    /// The affine components minus the coordinates, `(x' - x, y' - y)`,
    /// whose common zeros on a curve are its fixed points.
    pub fn displacement(&self, field: &Arc<Field>) -> [BivarPoly; 2] {
        let row = |r: usize| {
            let mut p = BivarPoly::zero(field);
            p.add_term(self.a[r][0], 1, 0);
            p.add_term(self.a[r][1], 0, 1);
            p.add_term(self.b[r], 0, 0);
            p.add(&if r == 0 {
                BivarPoly::x(field)
            } else {
                BivarPoly::y(field)
            })
        };
        [row(0), row(1)]
    }

    pub fn label(&self, field: &Field) -> String {
        let f = |c: Fq| field.format(c);
        if self.swaps() {
            format!("(x, y) -> (y + {}, x + {})", f(self.b[0]), f(self.b[1]))
        } else {
            format!("(x, y) -> (x + {}, y + {})", f(self.b[0]), f(self.b[1]))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_matches_application() {
        let f = Field::parse_spec("gf2^4:0x13").unwrap();
        let g = f.generator();
        let t = AffineMap::translation(g, f.pow(g, 3));
        let s = AffineMap::swap();
        let ts = t.compose(&f, &s);
        let p = (f.pow(g, 7), f.pow(g, 11));
        assert_eq!(ts.apply(&f, p), t.apply(&f, s.apply(&f, p)));
        assert_eq!(s.compose(&f, &s), AffineMap::identity());
        assert!(ts.swaps());
        let q = (None, Some(g));
        assert_eq!(ts.apply_p1p1(&f, q), (Some(f.add(g, g)), None));
        let [dx, dy] = ts.displacement(&f);
        let img = ts.apply(&f, p);
        assert_eq!(dx.eval(p.0, p.1), f.add(img.0, p.0));
        assert_eq!(dy.eval(p.0, p.1), f.add(img.1, p.1));
    }
}

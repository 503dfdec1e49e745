//! Plane models: elimination of `y` from an Artin-Schreier layer over the
//! elliptic function field, resultants, singular points with tangent cones,
//! the ordinary-singularity genus formula and plane automorphism checks.

use std::sync::Arc;

use serde::Serialize;

use crate::bivar::{normalize_point, BivarPoly, Chart, HomPoly, PlaneMap};
use crate::error::{Error, Result};
use crate::funcfield::FFElem;
use crate::gf2m::{Embedding, Field, Fq};
use crate::poly::Poly;

/// `F(x, z)` with `F = 0` the image of `z^2 + z = e` under `(x, y, z) -> (x, z)`:
/// the resultant in `y` of `den (z^2 + z) + a + b y` and the curve equation,
/// divided by its content in `x` and made monic.
pub fn eliminate_to_plane(e: &FFElem) -> Result<BivarPoly> {
    let curve = e.curve();
    let f = curve.field();
    let den = BivarPoly::from_poly_x(e.den());
    let z = BivarPoly::y(f);
    let alpha = den
        .mul(&z.square().add(&z))
        .add(&BivarPoly::from_poly_x(e.num_a()));
    let beta = BivarPoly::from_poly_x(e.num_b());
    let h = BivarPoly::from_poly_x(&curve.rhs_poly());
    let x = BivarPoly::x(f);
    // Res_y(beta y + alpha, y^2 + x y + h) = alpha^2 + x alpha beta + beta^2 h
    let res = alpha
        .square()
        .add(&x.mul(&alpha).mul(&beta))
        .add(&beta.square().mul(&h));
    if res.is_zero() {
        return Err(Error::Degenerate("resultant vanishes identically".into()));
    }
    let content = res.content_x();
    Ok(res.div_poly_x(&content)?.monic())
}

/// Resultant in `Y` of two bivariate polynomials, as a polynomial in `X`,
/// by fraction-free elimination on the Sylvester matrix.
pub fn resultant_y(p: &BivarPoly, q: &BivarPoly) -> Poly {
    let f = p.field().clone();
    let a = p.as_poly_in_y();
    let b = q.as_poly_in_y();
    let (m, n) = (a.len() - 1, b.len() - 1);
    if m == 0 && n == 0 {
        return Poly::one(&f);
    }
    if m == 0 {
        return a[0].pow(n as u64);
    }
    if n == 0 {
        return b[0].pow(m as u64);
    }
    let size = m + n;
    let mut mat = vec![vec![Poly::zero(&f); size]; size];
    for r in 0..n {
        for (k, c) in a.iter().rev().enumerate() {
            mat[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in b.iter().rev().enumerate() {
            mat[n + r][r + k] = c.clone();
        }
    }
    bareiss_det(mat)
}

/// Determinant over `F[x]` by Bareiss elimination.
pub fn bareiss_det(mut mat: Vec<Vec<Poly>>) -> Poly {
    let n = mat.len();
    let f = mat[0][0].field().clone();
    let mut prev = Poly::one(&f);
    for k in 0..n {
        if mat[k][k].is_zero() {
            match (k + 1..n).find(|&r| !mat[r][k].is_zero()) {
                Some(r) => mat.swap(k, r),
                None => return Poly::zero(&f),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&mat[i][j] * &mat[k][k]) + &(&mat[i][k] * &mat[k][j]);
                mat[i][j] = v.exact_div(&prev).expect("Bareiss division is exact");
            }
            mat[i][k] = Poly::zero(&f);
        }
        prev = mat[k][k].clone();
    }
    mat[n - 1][n - 1].clone()
}

/// Pseudo-remainder of `g` by `f` as polynomials in `Y` over `F[X]`.
pub fn pseudo_rem_y(g: &BivarPoly, f: &BivarPoly) -> BivarPoly {
    let fc = f.as_poly_in_y();
    let df = fc.len() - 1;
    let lc = fc[df].clone();
    let mut r = g.as_poly_in_y();
    while r.len() > df && !r.is_empty() {
        let dr = r.len() - 1;
        let top = r[dr].clone();
        if top.is_zero() {
            r.pop();
            continue;
        }
        for c in r.iter_mut() {
            *c = &*c * &lc;
        }
        for (k, fk) in fc.iter().enumerate() {
            let idx = dr - df + k;
            r[idx] = &r[idx] + &(fk * &top);
        }
        debug_assert!(r[dr].is_zero());
        r.pop();
    }
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
    if r.is_empty() {
        BivarPoly::zero(g.field())
    } else {
        BivarPoly::from_poly_in_y(&r)
    }
}

/// Whether `f` divides `g` in `F[X, Y]`, for `f` irreducible of positive
/// `Y`-degree.
pub fn divides(f: &BivarPoly, g: &BivarPoly) -> bool {
    pseudo_rem_y(g, f).is_zero()
}

/// A singular point of a plane curve.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SingularPoint {
    /// normalized homogeneous coordinates, as text
    pub point: String,
    /// field holding the coordinates
    pub field: String,
    pub multiplicity: u32,
    pub ordinary: bool,
    /// number of distinct tangent lines
    pub tangents: u32,
    /// degree over the base field of the point's coordinates
    pub degree: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct SingularityReport {
    pub degree: u32,
    pub points: Vec<SingularPoint>,
    /// conjugate points counted with their Galois orbits
    pub complete: bool,
}

/// Splitting-field bookkeeping: an extension of the base field containing
/// given roots.
struct Ext {
    target: Arc<Field>,
    emb: Embedding,
}

fn extension(base: &Arc<Field>, k: u32) -> Result<Ext> {
    let target = if k == 1 {
        base.clone()
    } else {
        Field::with_degree(base.degree() * k)?
    };
    let emb = Embedding::new(base, &target)?;
    Ok(Ext { target, emb })
}

/// Number of distinct linear factors of a binary form (over the algebraic
/// closure) and whether it is squarefree.
fn tangent_cone(form: &BivarPoly, m: u32) -> (u32, bool) {
    // L(u, v) = sum c_i u^i v^(m-i); v | L counts the direction (1:0)
    let f = form.field();
    let coeffs: Vec<Fq> = (0..=m).map(|i| form.coeff(i, m - i)).collect();
    let p = Poly::new(f, coeffs);
    let low = p.deg() as u32; // u-degree; m - low factors of v
    let v_mult = m - low;
    let sf = p.squarefree_decomposition();
    let distinct_u: i64 = sf.iter().map(|(q, _)| q.deg()).sum();
    let squarefree = v_mult <= 1 && sf.iter().all(|(_, k)| *k == 1);
    let distinct = distinct_u as u32 + u32::from(v_mult > 0);
    (distinct, squarefree)
}

/// Multiplicity and tangent data at an affine point of `F`.
fn local_data(f: &BivarPoly, x0: Fq, y0: Fq) -> (u32, u32, bool) {
    let t = f.translate(x0, y0);
    let (m, form) = t.lowest_form().expect("point lies on a nonzero curve");
    let (distinct, sf) = tangent_cone(&form, m);
    (m, distinct, sf)
}

/// A common affine zero over the algebraic closure, represented by one
/// point of its Galois orbit in an extension of the base field.
#[derive(Clone, Debug)]
pub struct AffineZero {
    pub field: Arc<Field>,
    pub emb: Embedding,
    pub x: Fq,
    pub y: Fq,
    /// size of the Galois orbit over the base field
    pub degree: u32,
}

/// Common zeros of `f` and `others` over the algebraic closure. Zero
/// polynomials among `others` impose no condition; a nonzero constant
/// leaves no zeros. Fails when the zero set is not finite.
pub fn common_affine_zeros(f: &BivarPoly, others: &[BivarPoly]) -> Result<Vec<AffineZero>> {
    let base = f.field().clone();
    let active: Vec<&BivarPoly> = others.iter().filter(|g| !g.is_zero()).collect();
    if active.is_empty() || f.deg_y() <= 0 {
        return Err(Error::Degenerate("zero set is not finite".into()));
    }
    let mut cand = Poly::zero(&base);
    for g in &active {
        cand = cand.gcd(&resultant_y(f, g));
    }
    if cand.is_zero() {
        return Err(Error::Degenerate(
            "F shares a factor with another polynomial".into(),
        ));
    }
    let mut out = Vec::new();
    for (p, _) in cand.factor() {
        let k = p.deg() as u32;
        let ext = extension(&base, k)?;
        let lift = |g: &BivarPoly| g.map_coeffs(&ext.target, |c| ext.emb.apply(c));
        let pe = p.map_coeffs(&ext.target, |c| ext.emb.apply(c));
        // one root per Galois orbit suffices; the orbit has size k
        let x0 = *pe.roots().first().expect("splits in its own extension");
        let mut g = lift(f).eval_x(x0);
        for q in &active {
            g = g.gcd(&lift(q).eval_x(x0));
        }
        if g.is_zero() {
            return Err(Error::Degenerate(
                "a vertical line lies in the zero set".into(),
            ));
        }
        if g.deg() <= 0 {
            continue;
        }
        // y-roots may need a further extension
        for (gy, _) in g.factor() {
            let k2 = gy.deg() as u32;
            let ext2 = extension(&ext.target, k2)?;
            let y2 = *gy
                .map_coeffs(&ext2.target, |c| ext2.emb.apply(c))
                .roots()
                .first()
                .expect("splits");
            let emb = Embedding::new(&base, &ext2.target)?;
            out.push(AffineZero {
                field: ext2.target.clone(),
                emb,
                x: ext2.emb.apply(x0),
                y: y2,
                degree: k * k2,
            });
        }
    }
    Ok(out)
}

/// Singular points of the projective closure of `F(X, Y) = 0`, searched
/// over the algebraic closure through resultants and splitting fields.
pub fn plane_singularity_analysis(f: &BivarPoly) -> Result<SingularityReport> {
    let base = f.field().clone();
    let d = f.total_degree().max(0) as u32;
    let h = HomPoly::homogenize(f);
    let mut points = Vec::new();

    // affine part: F = F_X = F_Y = 0
    let fx = f.derivative_x();
    let fy = f.derivative_y();
    if fx.is_zero() && fy.is_zero() {
        return Err(Error::Degenerate(
            "both partial derivatives vanish: F is a square".into(),
        ));
    }
    for z in common_affine_zeros(f, &[fx, fy])? {
        let fe = f.map_coeffs(&z.field, |c| z.emb.apply(c));
        let (m, tangents, ordinary) = local_data(&fe, z.x, z.y);
        if m >= 2 {
            points.push(SingularPoint {
                point: format!("({} : {} : 1)", z.field.format(z.x), z.field.format(z.y)),
                field: z.field.spec(),
                multiplicity: m,
                ordinary,
                tangents,
                degree: z.degree,
            });
        }
    }

    // points at infinity: zeros of the top form
    let top = f.top_form();
    // top(X, Y) = sum c_i X^i Y^(d-i); the point (1 : 0 : 0) if Y | top
    let coeffs: Vec<Fq> = (0..=d).map(|i| top.coeff(i, d - i)).collect();
    let tp = Poly::new(&base, coeffs); // in s = X/Y
    let mut inf_points: Vec<(Chart, Poly)> = Vec::new();
    if (tp.deg() as u32) < d {
        inf_points.push((Chart::X, Poly::x(&base))); // (1 : 0 : 0): y = 0 in chart X
    }
    for (p, _) in tp.factor() {
        inf_points.push((Chart::Y, p)); // (s : 1 : 0)
    }
    for (chart, p) in inf_points {
        let k = p.deg() as u32;
        let ext = extension(&base, k)?;
        let local = h
            .map_coeffs(&ext.target, |c| ext.emb.apply(c))
            .dehomogenize(chart);
        let r = *p
            .map_coeffs(&ext.target, |c| ext.emb.apply(c))
            .roots()
            .first()
            .expect("splits");
        // chart X: coordinates (Y, Z), point (r, 0); chart Y: (X, Z), point (r, 0)
        let (m, tangents, ordinary) = local_data(&local, r, Fq::ZERO);
        if m >= 2 {
            let label = match chart {
                Chart::X => "(1 : 0 : 0)".to_string(),
                _ => format!("({} : 1 : 0)", ext.target.format(r)),
            };
            points.push(SingularPoint {
                point: label,
                field: ext.target.spec(),
                multiplicity: m,
                ordinary,
                tangents,
                degree: k,
            });
        }
    }
    Ok(SingularityReport {
        degree: d,
        points,
        complete: true,
    })
}

/// `(d-1)(d-2)/2 - sum m(m-1)/2` over all singular points (each Galois
/// orbit counted with its size); refuses non-ordinary singularities.
pub fn plane_genus(rep: &SingularityReport) -> Result<i64> {
    let d = rep.degree as i64;
    let mut g = (d - 1) * (d - 2) / 2;
    for p in &rep.points {
        if !p.ordinary {
            return Err(Error::NonOrdinary(p.point.clone()));
        }
        let m = p.multiplicity as i64;
        g -= p.degree as i64 * m * (m - 1) / 2;
    }
    Ok(g)
}

/// How a map preserves a curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PlaneAutVerdict {
    /// `F o map = lambda F`
    Scalar,
    /// `F o map` is a multiple of `F`
    Divisible,
    NotPreserved,
}

/// Tests whether `map` sends the curve `F = 0` into itself.
pub fn check_plane_automorphism(f: &BivarPoly, map: &PlaneMap) -> PlaneAutVerdict {
    let g = map.pull_back(f);
    if g.is_zero() {
        return PlaneAutVerdict::Divisible;
    }
    if g.total_degree() == f.total_degree() {
        let lf = f.leading().expect("nonzero");
        let (_, _, c) = g.terms().max_by_key(|&(i, j, _)| (j, i)).expect("nonzero");
        let lambda = f.field().div(c, lf).expect("nonzero");
        if g == f.scale(lambda) {
            return PlaneAutVerdict::Scalar;
        }
    }
    let divisible = if f.deg_y() > 0 {
        divides(f, &g)
    } else {
        divides(&f.swap(), &g.swap())
    };
    if divisible {
        PlaneAutVerdict::Divisible
    } else {
        PlaneAutVerdict::NotPreserved
    }
}

/// Projective points of `F = 0` over `field` (coordinates normalized),
/// with the embedding of the coefficients given.
pub fn projective_points(f: &BivarPoly, target: &Arc<Field>) -> Result<Vec<[Fq; 3]>> {
    let emb = Embedding::new(f.field(), target)?;
    let fe = f.map_coeffs(target, |c| emb.apply(c));
    let h = HomPoly::homogenize(&fe);
    let mut out = Vec::new();
    for x in target.elements() {
        let p = fe.eval_x(x);
        if p.is_zero() {
            return Err(Error::Degenerate("curve contains a vertical line".into()));
        }
        for y in p.roots() {
            out.push([x, y, Fq::ONE]);
        }
    }
    for x in target.elements() {
        if h.eval([x, Fq::ONE, Fq::ZERO]).is_zero() {
            out.push([x, Fq::ONE, Fq::ZERO]);
        }
    }
    if h.eval([Fq::ONE, Fq::ZERO, Fq::ZERO]).is_zero() {
        out.push([Fq::ONE, Fq::ZERO, Fq::ZERO]);
    }
    for p in &mut out {
        *p = normalize_point(target, *p);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f16() -> Arc<Field> {
        Field::parse_spec("gf2^4:0x13").unwrap()
    }

    #[test]
    fn resultant_of_linear_and_quadratic() {
        let f = f16();
        let p = BivarPoly::parse(&f, "X*Y + X^2 + 1", "X", "Y").unwrap();
        let q = BivarPoly::parse(&f, "Y^2 + X*Y + X^3 + mu", "X", "Y").unwrap();
        // Res = a^2 + x a b + b^2 h with a = X^2 + 1, b = X
        let r = resultant_y(&p, &q);
        let expect = Poly::parse(&f, "X^4 + 1 + X^4 + X^2 + X^5 + mu*X^2", "X").unwrap();
        assert_eq!(r, expect);
    }

    #[test]
    fn smooth_conic_and_nodal_cubic() {
        let f = f16();
        let conic = BivarPoly::parse(&f, "X^2 + Y", "X", "Y").unwrap();
        let rep = plane_singularity_analysis(&conic).unwrap();
        assert!(rep.points.is_empty());
        assert_eq!(plane_genus(&rep).unwrap(), 0);
        // y^2 + xy = x^3 has a node at the origin
        let nodal = BivarPoly::parse(&f, "Y^2 + X*Y + X^3", "X", "Y").unwrap();
        let rep = plane_singularity_analysis(&nodal).unwrap();
        assert_eq!(rep.points.len(), 1);
        assert_eq!(rep.points[0].multiplicity, 2);
        assert!(rep.points[0].ordinary);
        assert_eq!(plane_genus(&rep).unwrap(), 0);
        // cusp y^2 = x^3 is not ordinary
        let cusp = BivarPoly::parse(&f, "Y^2 + X^3", "X", "Y").unwrap();
        let rep = plane_singularity_analysis(&cusp).unwrap();
        assert!(!rep.points[0].ordinary);
        assert!(plane_genus(&rep).is_err());
    }

    #[test]
    fn elliptic_curve_is_smooth() {
        let f = f16();
        let e = BivarPoly::parse(&f, "Y^2 + X*Y + X^3 + mu", "X", "Y").unwrap();
        let rep = plane_singularity_analysis(&e).unwrap();
        assert!(rep.points.is_empty(), "{rep:?}");
        assert_eq!(plane_genus(&rep).unwrap(), 1);
    }

    #[test]
    fn translations_preserve_additive_curve() {
        let f = f16();
        let c = BivarPoly::parse(&f, "X^4*Y^4 + X^4*Y + X*Y^4 + X*Y + 1", "X", "Y").unwrap();
        let m = PlaneMap::parse(&f, "X + Z; Y + mu^5*Z; Z").unwrap();
        assert_eq!(check_plane_automorphism(&c, &m), PlaneAutVerdict::Scalar);
        let bad = PlaneMap::parse(&f, "X + mu*Z; Y; Z").unwrap();
        assert_eq!(
            check_plane_automorphism(&c, &bad),
            PlaneAutVerdict::NotPreserved
        );
    }
}

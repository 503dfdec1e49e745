//! Independent check of the pole structure at the neutral place `Yinf` of
//! `y^2 + xy = x^3 + mu`, using a hand-built expansion in `t = x / y`
//! instead of the library's place machinery.

use bielliptic::census::load_golden;
use bielliptic::ellcurve::{Curve, TorsionGenerator};
use bielliptic::funcfield::{witt_elements, DVariant, Translations};
use bielliptic::gf2m::{Field, Fq};
use bielliptic::places::Place;
use bielliptic::series::{Laurent, EXACT};
use bielliptic::tower::ramification_elliptic;

const PREC: i64 = 80;

/// `x` and `y` at `Yinf`: with `t = x/y` the curve gives
/// `x = t^-2 + t^-1 + mu / x^2`, solved by fixed-point iteration.
fn expansions(f: &std::sync::Arc<Field>, mu: Fq) -> (Laurent, Laurent) {
    let base = Laurent::monomial(f, Fq::ONE, -2, EXACT)
        .add(&Laurent::monomial(f, Fq::ONE, -1, EXACT))
        .truncate(PREC);
    let mut x = base.clone();
    for _ in 0..40 {
        x = base
            .add(&x.square().inv().unwrap().scale(mu))
            .truncate(PREC);
    }
    let y = x.mul(&Laurent::monomial(f, Fq::ONE, -1, EXACT));
    (x, y)
}

/// Pole order left after removing even leading poles by `s^2 + s`.
fn reduced_pole_order(f: &Field, mut e: Laurent) -> i64 {
    loop {
        let Some((v, c)) = e.leading() else { return 0 };
        if v >= 0 {
            return 0;
        }
        if v % 2 != 0 {
            return -v;
        }
        let s = Laurent::monomial(e.field(), f.sqrt(c), v / 2, EXACT);
        e = e.add(&s.square()).add(&s);
    }
}

fn printed_witt_at_infinity(name: &str) -> i64 {
    let f = Field::parse_spec("gf2^4:0x13").unwrap();
    let mu = f.generator();
    let (x, y) = expansions(&f, mu);
    let g = load_golden(name, None).unwrap();
    let p = |k: &str| Laurent::eval_poly(&g.univariate(k, &f, mu).unwrap(), &x);
    let e = p("delta")
        .div(&p("xi"))
        .unwrap()
        .mul(&y)
        .add(&p("omega").div(&p("epsilon")).unwrap());
    reduced_pole_order(&f, e)
}

#[test]
fn expansion_lies_on_the_curve() {
    let f = Field::parse_spec("gf2^4:0x13").unwrap();
    let mu = f.generator();
    let (x, y) = expansions(&f, mu);
    let r = y
        .square()
        .add(&x.mul(&y))
        .add(&x.square().mul(&x))
        .add(&Laurent::constant(&f, mu, EXACT));
    assert!(r.is_zero_to_precision());
    assert!(r.precision() > 60);
}

#[test]
fn standard_witt_element_is_unramified_at_infinity() {
    assert_eq!(printed_witt_at_infinity("6.1a-witt"), 0);
}

#[test]
fn alternative_witt_element_has_reduced_pole_order_three_at_infinity() {
    let oracle = printed_witt_at_infinity("6.1b-witt");
    assert_eq!(oracle, 3);

    // the library's reduction at the same place, for the tower that
    // reproduces the printed element
    let f = Field::parse_spec("gf2^4:0x13").unwrap();
    let curve = Curve::new(&f, Fq::ZERO, f.generator()).unwrap();
    let tg = TorsionGenerator {
        curve: curve.clone(),
        point: curve.parse_point("(mu^9,mu^11)@gf2^4").unwrap(),
        order: 16,
        extension_degree: 1,
    };
    let tr = Translations::new(tg).unwrap();
    let w = witt_elements(&tr, 7, DVariant::Alternative).unwrap();
    let rd = ramification_elliptic(&w.e_k, &[Place::Infinity], None).unwrap();
    assert_eq!(rd.ramified.len(), 1);
    assert_eq!(rd.ramified[0].reduced_order, oracle);
    assert_eq!(rd.ramified[0].different, oracle + 1);
}

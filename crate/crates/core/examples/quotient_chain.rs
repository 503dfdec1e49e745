//! The genus-5 curve (X^2 + X)(Y^4 + Y + X^2 + X) + 1 = 0: its 28 rational
//! places as branch expansions and the cycle type of a few plane maps on them.

use bielliptic::bivar::PlaneMap;
use bielliptic::census::{place_action, quotient_curve, rational_branches};
use bielliptic::gf2m::Field;

fn cycle_type(perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for s in 0..perm.len() {
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len > 0 {
            out.push(len);
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn main() -> bielliptic::Result<()> {
    let f = Field::parse_spec("gf2^4:0x13")?;
    println!("G = {}", quotient_curve(&f).to_text("X", "Y"));
    let places = rational_branches(&f)?;
    for p in &places {
        println!(
            "{:<28} v(z) = {:>3?}  v(t) = {:>3?}",
            p.label,
            p.z.valuation(),
            p.t.valuation()
        );
    }
    for (name, src) in [
        ("x -> x + 1", "X + Z; Y; Z"),
        ("(x, y) -> (x + 1, y + 1)", "X + Z; Y + Z; Z"),
    ] {
        let m = PlaneMap::parse(&f, src)?;
        let a = place_action(&places, &m, name)?;
        println!("{name}: cycle type {:?}", cycle_type(&a.permutation));
    }
    Ok(())
}

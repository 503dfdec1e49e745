//! Arithmetic in GF(2^m): multiplication table excerpt, Frobenius, trace and
//! Artin-Schreier solvability. Takes an optional field spec (default
//! `gf2^4:0x13`).

use bielliptic::gf2m::Field;

fn main() -> bielliptic::Result<()> {
    let spec = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "gf2^4:0x13".into());
    let f = Field::parse_spec(&spec)?;
    let g = f.generator();
    println!(
        "field {} of size {}, generator of order {:?}",
        f.spec(),
        f.size(),
        f.mult_order(g)
    );
    for e in [1u64, 3, 5, 9, 11] {
        let a = f.pow(g, e);
        let inv = f.inv(a)?;
        println!(
            "mu^{e} = {:<8} inverse {:<8} square {:<8} sqrt {:<8} trace {}",
            f.format(a),
            f.format(inv),
            f.format(f.square(a)),
            f.format(f.sqrt(a)),
            f.trace(a)
        );
    }
    // z^2 + z = c is solvable exactly when Tr(c) = 0
    let solvable = f
        .elements()
        .filter(|&c| f.solve_artin_schreier(c).is_some())
        .count();
    println!(
        "{solvable} of {} constants c give a solvable z^2 + z = c",
        f.size()
    );
    Ok(())
}

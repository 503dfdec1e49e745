//! Points of order 2n on y^2 + xy = x^3 + mu: point count, trace of
//! Frobenius and the extension needed for each n.

use bielliptic::autcheck::FieldConfig;

fn main() -> bielliptic::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1);
    let cfg = FieldConfig::standard("gf2^4:0x13", seed)?;
    let curve = cfg.curve()?;
    println!(
        "#E(GF(16)) = {}, trace {}",
        curve.point_count()?,
        curve.trace_of_frobenius()?
    );
    for n in [4u64, 8, 16, 32] {
        let tg = cfg.torsion(n)?;
        let c = &tg.curve;
        println!(
            "n = {n:>2}: P0 = {} over {} (degree {} over the base), order {}",
            c.format_point(&tg.point),
            c.field().spec(),
            tg.extension_degree,
            c.order(&tg.point, tg.order).unwrap_or(0)
        );
    }
    Ok(())
}

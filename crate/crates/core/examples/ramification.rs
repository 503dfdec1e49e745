//! Ramification of z^2 + z = e_k over the elliptic curve, and the genus and
//! 2-rank that follow from it.

use bielliptic::autcheck::{construct_main_family, FieldConfig, KChoice};
use bielliptic::funcfield::DVariant;
use bielliptic::tower::{genus_hurwitz, nakajima_ok};

fn main() -> bielliptic::Result<()> {
    let n: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(8);
    let cfg = FieldConfig::standard("gf2^4:0x13", 1)?;
    let (_, rep) = construct_main_family(n, &cfg, KChoice::Auto, DVariant::Standard)?;
    let rd = &rep.ramification;
    for r in &rd.ramified {
        println!(
            "{:<24} degree {} reduced pole order {} different {}",
            r.place, r.degree, r.reduced_order, r.different
        );
    }
    println!("{} unramified places checked", rd.unramified_checked);
    let d: Vec<(i64, i64)> = rd
        .ramified
        .iter()
        .map(|r| (r.degree, r.different))
        .collect();
    println!(
        "genus {} (Hurwitz recomputation {})",
        rd.genus,
        genus_hurwitz(1, 2, &d)?
    );
    println!("2-rank {}", rd.prank);
    println!(
        "|S| = {} with gamma = {}: bound 4(gamma - 1) {}",
        rep.group_order,
        rep.prank,
        if nakajima_ok(rep.group_order as u64, rep.prank) {
            "respected"
        } else {
            "violated"
        }
    );
    Ok(())
}

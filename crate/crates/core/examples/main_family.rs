//! Builds the main family for n = 8 (or the n given as the first argument)
//! and prints the construction report.

use bielliptic::autcheck::{construct_main_family, FieldConfig, KChoice};
use bielliptic::funcfield::DVariant;

fn main() -> bielliptic::Result<()> {
    let n: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(8);
    let cfg = FieldConfig::standard("gf2^4:0x13", 1)?;
    let (tw, report) = construct_main_family(n, &cfg, KChoice::Auto, DVariant::Standard)?;
    println!("e_k = {}", tw.witt.e_k);
    println!("{}", serde_json::to_string_pretty(&report).expect("json"));
    println!(
        "consistent with the expected invariants: {}",
        report.consistent()
    );
    Ok(())
}

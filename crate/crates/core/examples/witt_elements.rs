//! The elements d, a and e_k for n = 8: the scan for k, the explicit e_k and
//! the exact identity checks. An optional argument selects n.

use bielliptic::autcheck::{find_good_k, identity_suite, FieldConfig};
use bielliptic::funcfield::{DVariant, Translations};

fn main() -> bielliptic::Result<()> {
    let n: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(8);
    let cfg = FieldConfig::standard("gf2^4:0x13", 1)?;
    let tr = Translations::new(cfg.torsion(n)?)?;
    let (tw, scan) = find_good_k(&tr, DVariant::Standard)?;
    for s in &scan {
        println!("k = {:>2}: v(e_k) at [-k]P0 = {}", s.k, s.valuation);
    }
    let w = &tw.witt;
    println!("Tr(x) = {}", w.trace_x);
    println!("d     = {}", w.d);
    println!("a     = {}", w.a);
    println!("e_{}   = {}", w.k, w.e_k);
    for c in identity_suite(&tw)? {
        println!("[{}] {}", if c.holds { "ok" } else { "FAIL" }, c.name);
    }
    Ok(())
}

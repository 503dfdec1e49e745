//! Principal divisors on the elliptic curve: the divisor of Tr(x) and the
//! divisor-level checks behind the pole structure of e_k.

use bielliptic::autcheck::{construct_main_family, divisor_suite, FieldConfig, KChoice};
use bielliptic::funcfield::DVariant;
use bielliptic::places::divisor;

fn main() -> bielliptic::Result<()> {
    let cfg = FieldConfig::standard("gf2^4:0x13", 1)?;
    let (tw, _) = construct_main_family(8, &cfg, KChoice::Auto, DVariant::Standard)?;
    let tg = &tw.tr.torsion;
    for (name, f) in [("Tr(x)", &tw.witt.trace_x), ("e_k", &tw.witt.e_k)] {
        let dv = divisor(f)?;
        let parts: Vec<String> = dv
            .describe(tw.curve(), Some(tg))
            .iter()
            .map(|e| format!("{:+}*{}", e.multiplicity, e.place))
            .collect();
        println!("div({name}) = {} (degree {})", parts.join(" "), dv.degree());
    }
    for c in divisor_suite(&tw)? {
        println!(
            "[{}] {}: {}",
            if c.holds { "ok" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    Ok(())
}

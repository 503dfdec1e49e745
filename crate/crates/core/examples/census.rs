//! Runs the census over every worked example (or the one named by the
//! first argument) and prints each graded claim.
//!
//!     cargo run --example census -- 6.4 8

use bielliptic::census::{jobs, run_jobs, CensusConfig, ClaimStatus, ExampleId};

fn main() -> bielliptic::Result<()> {
    let mut args = std::env::args().skip(1);
    let example = args.next().map(|s| ExampleId::parse(&s)).transpose()?;
    let q = args.next().and_then(|s| s.parse().ok());
    let cfg = CensusConfig::default();
    let list = jobs(example, q);
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    for res in run_jobs(&list, &cfg, workers) {
        let rep = res?;
        println!("== {} [{}] {:.2}s", rep.label(), rep.field, rep.seconds);
        for c in &rep.claims {
            let tag = match c.status {
                ClaimStatus::Matched => "ok  ",
                ClaimStatus::Mismatched => "MISS",
                ClaimStatus::NotComputed => "n/c ",
            };
            let got = c.computed.as_deref().unwrap_or("-");
            println!(
                "  {tag} {}: expected {}, computed {got}",
                c.name, c.expected
            );
            if let Some(d) = &c.detail {
                println!("       {d}");
            }
        }
        for f in &rep.fixed_places {
            println!(
                "  fixed: {} -> {} ({})",
                f.element, f.fixed_places, f.detail
            );
        }
        for n in &rep.notes {
            println!("  note: {n}");
        }
    }
    Ok(())
}

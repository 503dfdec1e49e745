use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use bielliptic::autcheck::{
    construct_main_family, divisor_suite, identity_suite, FieldConfig, KChoice,
};
use bielliptic::census::{jobs, load_golden, run_jobs, CensusConfig, CensusReport, ExampleId};
use bielliptic::funcfield::DVariant;
use bielliptic::plane::eliminate_to_plane;

#[derive(Parser)]
#[command(version, about = "Artin-Schreier towers over binary elliptic curves")]
struct Cli {
    /// seed for the torsion-point search order
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build the curve X_k for n = 2^h and certify genus, 2-rank and group.
    Construct {
        #[arg(long)]
        n: u64,
        /// `auto` or an odd integer
        #[arg(long, default_value = "auto")]
        k: String,
        #[arg(long)]
        alt_d: bool,
        #[arg(long, default_value = "gf2^4:0x13")]
        field: String,
    },
    /// Run the identity and divisor suites for n = 2^h.
    VerifyLemmas {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value = "gf2^4:0x13")]
        field: String,
    },
    /// Grade the claims of one worked example (all when omitted).
    Census {
        #[arg(long)]
        example: Option<String>,
        #[arg(long)]
        q: Option<u64>,
        /// replaces the field of the golden files
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        golden_dir: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        workers: usize,
    },
    /// Print the plane model of X_k, optionally compared with a golden file.
    PlaneModel {
        #[arg(long, default_value_t = 8)]
        n: u64,
        #[arg(long, default_value = "auto")]
        k: String,
        #[arg(long)]
        alt_d: bool,
        #[arg(long, default_value = "gf2^4:0x13")]
        field: String,
        /// golden file name, e.g. 6.1a
        #[arg(long)]
        compare: Option<String>,
    },
    /// Write the n = 8 construction and the full census as one JSON file.
    Report {
        #[arg(long)]
        json: PathBuf,
        #[arg(long, default_value_t = 4)]
        workers: usize,
    },
}

fn k_choice(k: &str) -> bielliptic::Result<KChoice> {
    if k == "auto" {
        return Ok(KChoice::Auto);
    }
    k.parse().map(KChoice::Fixed).map_err(|_| {
        bielliptic::Error::Parse(format!("--k expects `auto` or an odd integer, got `{k}`"))
    })
}

fn variant(alt: bool) -> DVariant {
    if alt {
        DVariant::Alternative
    } else {
        DVariant::Standard
    }
}

fn print_json<T: Serialize>(v: &T) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn census_reports(
    example: Option<ExampleId>,
    q: Option<u64>,
    cfg: &CensusConfig,
    workers: usize,
) -> bielliptic::Result<Vec<CensusReport>> {
    run_jobs(&jobs(example, q), cfg, workers)
        .into_iter()
        .collect()
}

fn run(cli: Cli) -> bielliptic::Result<bool> {
    match cli.cmd {
        Cmd::Construct { n, k, alt_d, field } => {
            let cfg = FieldConfig::standard(&field, cli.seed)?;
            let (tw, report) = construct_main_family(n, &cfg, k_choice(&k)?, variant(alt_d))?;
            eprintln!("e_k = {}", tw.witt.e_k);
            print_json(&report);
            Ok(report.consistent())
        }
        Cmd::VerifyLemmas { n, field } => {
            let cfg = FieldConfig::standard(&field, cli.seed)?;
            let (tw, _) = construct_main_family(n, &cfg, KChoice::Auto, DVariant::Standard)?;
            let ids = identity_suite(&tw)?;
            let divs = divisor_suite(&tw)?;
            let ok = ids.iter().all(|c| c.holds) && divs.iter().all(|c| c.holds);
            print_json(&serde_json::json!({ "k": tw.witt.k, "identities": ids, "divisors": divs }));
            Ok(ok)
        }
        Cmd::Census {
            example,
            q,
            field,
            golden_dir,
            workers,
        } => {
            let example = example.as_deref().map(ExampleId::parse).transpose()?;
            let cfg = CensusConfig {
                field_spec: field,
                golden_dir,
                seed: cli.seed,
            };
            let reports = census_reports(example, q, &cfg, workers)?;
            print_json(&reports);
            Ok(!reports.iter().any(CensusReport::any_mismatch))
        }
        Cmd::PlaneModel {
            n,
            k,
            alt_d,
            field,
            compare,
        } => {
            let cfg = FieldConfig::standard(&field, cli.seed)?;
            let (tw, _) = construct_main_family(n, &cfg, k_choice(&k)?, variant(alt_d))?;
            let f = eliminate_to_plane(&tw.witt.e_k)?;
            println!("{}", f.to_text("X", "Z"));
            match compare {
                None => Ok(true),
                Some(name) => {
                    let g = load_golden(&name, None)?;
                    let printed = g
                        .bivar(tw.curve().field(), tw.curve().field().generator())?
                        .monic();
                    let diff = f.diff(&printed);
                    eprintln!("{} differing coefficients against `{name}`", diff.len());
                    Ok(diff.is_empty())
                }
            }
        }
        Cmd::Report { json, workers } => {
            let cfg = FieldConfig::standard("gf2^4:0x13", cli.seed)?;
            let (_, main) = construct_main_family(8, &cfg, KChoice::Auto, DVariant::Standard)?;
            let ccfg = CensusConfig {
                seed: cli.seed,
                ..CensusConfig::default()
            };
            let reports = census_reports(None, None, &ccfg, workers)?;
            let ok = main.consistent() && !reports.iter().any(CensusReport::any_mismatch);
            let doc = serde_json::json!({ "main_family": main, "census": reports });
            std::fs::write(
                &json,
                serde_json::to_string_pretty(&doc).expect("serializable"),
            )?;
            eprintln!("wrote {}", json.display());
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

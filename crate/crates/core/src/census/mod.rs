//! Reproduction census for the worked examples: each example runs the
//! relevant pipeline and grades every stated claim as matched, mismatched
//! or not computed. Mismatches are results, not errors.

mod affine;
mod golden;
mod main_family;
mod plane_examples;
mod quotient_chain;

use std::fmt::Display;
use std::path::PathBuf;
use std::time::Instant;

use serde::Serialize;

pub use affine::AffineMap;
pub use golden::{load_golden, GoldenFile, GOLDEN_NAMES};
pub use quotient_chain::{
    place_action, quotient_curve, rational_branches, BranchPlace, PlaceAction, PlaceKey,
};

use crate::error::{Error, Result};
use crate::group::GroupStructure;

/// The worked examples covered by the census.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ExampleId {
    #[serde(rename = "6.1a")]
    MainFamilyStandard,
    #[serde(rename = "6.1b")]
    MainFamilyAlternative,
    #[serde(rename = "6.2")]
    QuarticCover,
    #[serde(rename = "6.3")]
    Hyperelliptic,
    #[serde(rename = "6.4")]
    ProductCurve,
    #[serde(rename = "6.5")]
    QuotientChain,
    #[serde(rename = "6.6q")]
    SemidihedralQuotient,
}

impl ExampleId {
    pub const ALL: [ExampleId; 7] = [
        ExampleId::MainFamilyStandard,
        ExampleId::MainFamilyAlternative,
        ExampleId::QuarticCover,
        ExampleId::Hyperelliptic,
        ExampleId::ProductCurve,
        ExampleId::QuotientChain,
        ExampleId::SemidihedralQuotient,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            ExampleId::MainFamilyStandard => "6.1a",
            ExampleId::MainFamilyAlternative => "6.1b",
            ExampleId::QuarticCover => "6.2",
            ExampleId::Hyperelliptic => "6.3",
            ExampleId::ProductCurve => "6.4",
            ExampleId::QuotientChain => "6.5",
            ExampleId::SemidihedralQuotient => "6.6q",
        }
    }

    pub fn parse(s: &str) -> Result<ExampleId> {
        ExampleId::ALL
            .into_iter()
            .find(|e| e.id() == s.trim())
            .ok_or_else(|| {
                Error::Parse(format!(
                    "unknown example `{s}`; expected one of 6.1a 6.1b 6.2 6.3 6.4 6.5 6.6q"
                ))
            })
    }

    /// Examples parametrized by `q`, run for 4, 8 and 16 by default.
    pub fn takes_q(&self) -> bool {
        matches!(self, ExampleId::Hyperelliptic | ExampleId::ProductCurve)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimStatus {
    Matched,
    Mismatched,
    NotComputed,
}

/// One graded claim with the expected and the computed value.
#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub name: String,
    pub expected: String,
    pub computed: Option<String>,
    pub status: ClaimStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Claim {
    pub fn compare<T: PartialEq + Display>(name: &str, expected: T, computed: T) -> Claim {
        let status = if expected == computed {
            ClaimStatus::Matched
        } else {
            ClaimStatus::Mismatched
        };
        Claim {
            name: name.into(),
            expected: expected.to_string(),
            computed: Some(computed.to_string()),
            status,
            detail: None,
        }
    }

    pub fn holds(
        name: &str,
        expected: impl Into<String>,
        computed: impl Into<String>,
        ok: bool,
    ) -> Claim {
        Claim {
            name: name.into(),
            expected: expected.into(),
            computed: Some(computed.into()),
            status: if ok {
                ClaimStatus::Matched
            } else {
                ClaimStatus::Mismatched
            },
            detail: None,
        }
    }

    pub fn not_computed(
        name: &str,
        expected: impl Into<String>,
        reason: impl Into<String>,
    ) -> Claim {
        Claim {
            name: name.into(),
            expected: expected.into(),
            computed: None,
            status: ClaimStatus::NotComputed,
            detail: Some(reason.into()),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Claim {
        self.detail = Some(detail.into());
        self
    }
}

/// Fixed places of one group element (or a class of elements).
#[derive(Clone, Debug, Serialize)]
pub struct FixedPlaceFinding {
    pub element: String,
    pub fixed_places: u64,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub example: ExampleId,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    pub field: String,
    pub genus: Option<i64>,
    pub prank: Option<i64>,
    pub group_order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupStructure>,
    pub fixed_places: Vec<FixedPlaceFinding>,
    pub claims: Vec<Claim>,
    pub notes: Vec<String>,
    pub seconds: f64,
}

impl CensusReport {
    fn new(example: ExampleId, q: Option<u64>, field: String) -> CensusReport {
        CensusReport {
            example,
            q,
            field,
            genus: None,
            prank: None,
            group_order: None,
            group: None,
            fixed_places: Vec::new(),
            claims: Vec::new(),
            notes: Vec::new(),
            seconds: 0.0,
        }
    }

    pub fn push(&mut self, c: Claim) {
        self.claims.push(c);
    }

    /// Runs a claim computation; a pipeline error becomes a not-computed
    /// claim carrying the error text.
    pub fn attempt(&mut self, name: &str, expected: &str, f: impl FnOnce() -> Result<Claim>) {
        let c = f().unwrap_or_else(|e| {
            Claim::not_computed(name, expected, format!("pipeline error: {e}"))
        });
        self.claims.push(c);
    }

    pub fn claim(&self, name: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.name == name)
    }

    pub fn count(&self, status: ClaimStatus) -> usize {
        self.claims.iter().filter(|c| c.status == status).count()
    }

    pub fn any_mismatch(&self) -> bool {
        self.count(ClaimStatus::Mismatched) > 0
    }

    pub fn label(&self) -> String {
        match self.q {
            Some(q) => format!("{} (q={q})", self.example.id()),
            None => self.example.id().to_string(),
        }
    }
}

/// Options shared by all census runs.
#[derive(Clone, Debug, Default)]
pub struct CensusConfig {
    /// replaces the field named in the golden file headers
    pub field_spec: Option<String>,
    /// reads golden files from this directory instead of the built-in copies
    pub golden_dir: Option<PathBuf>,
    pub seed: u64,
}

/// One unit of census work.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Job {
    pub example: ExampleId,
    pub q: Option<u64>,
}

/// Jobs for one example (all when `None`); `q`-parametrized examples run
/// for 4, 8 and 16 unless `q` is given.
pub fn jobs(example: Option<ExampleId>, q: Option<u64>) -> Vec<Job> {
    let list: Vec<ExampleId> = match example {
        Some(e) => vec![e],
        None => ExampleId::ALL.to_vec(),
    };
    let mut out = Vec::new();
    for e in list {
        if e.takes_q() {
            match q {
                Some(q) => out.push(Job {
                    example: e,
                    q: Some(q),
                }),
                None => out.extend([4, 8, 16].map(|q| Job {
                    example: e,
                    q: Some(q),
                })),
            }
        } else {
            out.push(Job {
                example: e,
                q: None,
            });
        }
    }
    out
}

/// Runs one example.
pub fn census(example: ExampleId, q: Option<u64>, cfg: &CensusConfig) -> Result<CensusReport> {
    let start = Instant::now();
    let mut rep = match example {
        ExampleId::MainFamilyStandard | ExampleId::MainFamilyAlternative => {
            main_family::run(example, cfg)?
        }
        ExampleId::QuarticCover => plane_examples::quartic_cover(cfg)?,
        ExampleId::Hyperelliptic => plane_examples::hyperelliptic(q.unwrap_or(8))?,
        ExampleId::ProductCurve => plane_examples::product_curve(q.unwrap_or(4))?,
        ExampleId::QuotientChain => quotient_chain::run(cfg)?,
        ExampleId::SemidihedralQuotient => plane_examples::semidihedral_quotient(cfg)?,
    };
    rep.seconds = start.elapsed().as_secs_f64();
    Ok(rep)
}

/// Runs jobs on a pool of `workers` threads; results come back in job order.
pub fn run_jobs(jobs: &[Job], cfg: &CensusConfig, workers: usize) -> Vec<Result<CensusReport>> {
    let workers = workers.max(1);
    let next = std::sync::atomic::AtomicUsize::new(0);
    let slots: Vec<std::sync::Mutex<Option<Result<CensusReport>>>> =
        jobs.iter().map(|_| std::sync::Mutex::new(None)).collect();
    std::thread::scope(|s| {
        for _ in 0..workers.min(jobs.len()) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                let Some(job) = jobs.get(i) else { break };
                let r = census(job.example, job.q, cfg);
                *slots[i].lock().expect("unpoisoned") = Some(r);
            });
        }
    });
    slots
        .into_iter()
        .map(|m| m.into_inner().expect("unpoisoned").expect("every job ran"))
        .collect()
}

/// Primitive-element substitutions `mu -> mu^j` of a field with `size`
/// elements, `j` coprime to `size - 1`, identity first.
pub fn primitive_exponents(size: u64) -> Vec<u64> {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    (1..size - 1).filter(|&j| gcd(j, size - 1) == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_ids_roundtrip() {
        for e in ExampleId::ALL {
            assert_eq!(ExampleId::parse(e.id()).unwrap(), e);
            assert_eq!(
                serde_json::to_string(&e).unwrap(),
                format!("\"{}\"", e.id())
            );
        }
        assert!(ExampleId::parse("7.1").is_err());
    }

    #[test]
    fn job_expansion() {
        assert_eq!(jobs(Some(ExampleId::Hyperelliptic), None).len(), 3);
        assert_eq!(jobs(Some(ExampleId::ProductCurve), Some(8)).len(), 1);
        assert_eq!(jobs(None, None).len(), 11);
    }

    #[test]
    fn primitive_exponents_of_gf16() {
        assert_eq!(primitive_exponents(16), vec![1, 2, 4, 7, 8, 11, 13, 14]);
    }

    #[test]
    fn claim_grading() {
        assert_eq!(Claim::compare("g", 9, 9).status, ClaimStatus::Matched);
        assert_eq!(Claim::compare("g", 9, 8).status, ClaimStatus::Mismatched);
        let mut r = CensusReport::new(ExampleId::QuarticCover, None, "gf2^4:0x13".into());
        r.attempt("g", "9", || Err(Error::NotCertified));
        assert_eq!(r.claims[0].status, ClaimStatus::NotComputed);
        assert!(!r.any_mismatch());
    }
}

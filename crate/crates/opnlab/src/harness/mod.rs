//! Brute-force verification harness: σ sieves, exhaustive coprime-pair
//! sweeps, Eulerian candidate scans, and the Lemma 7 bound scan.

mod scan;
mod sieve;
mod sweep;

pub use scan::{scan_eulerian_candidates, EulerianCandidate};
pub use sieve::{
    primes_one_mod_four, read_sigma_table, sigma_sieve, sigma_sieve_parallel, spf_sieve,
    write_sigma_table, MAX_SIEVE_LIMIT, SIGMA_TABLE_MAGIC,
};
pub use sweep::{
    sweep_pairs, Counterexample, PairFilter, PredicateTally, SweepConfig, SweepReport,
    SWEEP_PREDICATE_IDS,
};

use crate::predicates::{eval_l7_bound, PredicateReport, Verdict};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid harness configuration: {0}")]
    BadConfig(String),
    #[error("memory budget exceeded: requested {requested}, maximal feasible limit {max_feasible}")]
    MemoryBudget { requested: u64, max_feasible: u64 },
    #[error("unknown predicate id {0:?}")]
    UnknownPredicate(String),
    #[error("corrupt sigma table: {0}")]
    BadTable(String),
}

/// Outcome of exact-checking the Lemma 7 bound over all Euler-shaped primes
/// up to a limit. A witness would be a refutation; none is expected.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct L7Scan {
    pub q_limit: u64,
    pub primes_checked: u64,
    pub violation: Option<PredicateReport>,
}

/// Exact check of `1 + 1/q + sqrt(2q/(q+1)) > 3*2^(-1/3)` for every prime
/// q = 1 mod 4 up to `q_limit`. Returns the first violation, if any.
pub fn find_l7_violation(q_limit: u64) -> Result<L7Scan, HarnessError> {
    if q_limit < 5 {
        return Err(HarnessError::BadConfig("q_limit must be >= 5".into()));
    }
    let primes = primes_one_mod_four(q_limit)?;
    let mut checked = 0u64;
    for p in &primes {
        let report = eval_l7_bound(&crate::arith::nat(*p));
        checked += 1;
        if report.verdict != Verdict::Holds {
            return Ok(L7Scan {
                q_limit,
                primes_checked: checked,
                violation: Some(report),
            });
        }
    }
    Ok(L7Scan {
        q_limit,
        primes_checked: checked,
        violation: None,
    })
}

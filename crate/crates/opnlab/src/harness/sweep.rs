//! Exhaustive sweeps over ordered pairs (a, b) with toggleable filters.
//!
//! Verdict tallies use u128 cross-multiplication against a shared σ table,
//! which is algebraically the same comparison the exact predicate layer
//! performs; counterexamples are re-evaluated through that layer so the
//! recorded reports carry full exact values. Work is partitioned by
//! disjoint outer-loop ranges and merged by associative tally addition, so
//! reports are identical at any parallelism level.

use super::{sieve, HarnessError};
use crate::arith::{factorize, Budget};
use crate::predicates::{self, PredicateReport, Verdict};
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::time::Instant;

/// Predicate IDs a sweep can evaluate.
pub const SWEEP_PREDICATE_IDS: [&str; 4] = ["T2a", "R10", "T1-generic", "R5"];

/// Independently toggleable pair filters. A pair is swept when it passes
/// every enabled filter.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairFilter {
    /// gcd(a, b) = 1
    pub coprime: bool,
    /// I(a) < I(b)
    pub abundancy_ordered: bool,
    /// a = p^k with p prime, p = 1 mod 4, k = 1 mod 4
    pub euler_power: bool,
    /// b odd
    pub odd_second: bool,
}

impl PairFilter {
    /// Parses a comma-separated list: `coprime`, `abundancy-ordered`,
    /// `euler-power`, `odd`.
    pub fn parse(s: &str) -> Result<PairFilter, HarnessError> {
        let mut f = PairFilter::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part {
                "coprime" => f.coprime = true,
                "abundancy-ordered" => f.abundancy_ordered = true,
                "euler-power" => f.euler_power = true,
                "odd" => f.odd_second = true,
                other => {
                    return Err(HarnessError::BadConfig(format!(
                        "unknown filter {other:?}"
                    )))
                }
            }
        }
        Ok(f)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepConfig {
    pub bound: u64,
    pub filter: PairFilter,
    pub predicate_ids: Vec<String>,
    pub parallelism: usize,
    pub seed: u64,
    pub counterexample_cap: usize,
}

impl SweepConfig {
    pub fn new(bound: u64, filter: PairFilter, predicate_ids: Vec<String>) -> Self {
        SweepConfig {
            bound,
            filter,
            predicate_ids,
            parallelism: 1,
            seed: 0,
            counterexample_cap: 100,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateTally {
    pub predicate_id: String,
    pub holds: u64,
    pub fails: u64,
    pub vacuous: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub a: u64,
    pub b: u64,
    pub report: PredicateReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub pairs_evaluated: u64,
    pub tallies: Vec<PredicateTally>,
    pub counterexamples: Vec<Counterexample>,
    /// Set when the counterexample list was capped.
    pub truncated: bool,
    /// Not serialized: everything serialized must be bit-identical across
    /// runs and parallelism levels.
    #[serde(skip)]
    pub wall_time_ms: u64,
}

impl SweepReport {
    pub fn any_failures(&self) -> bool {
        self.tallies.iter().any(|t| t.fails > 0)
    }

    pub fn tally(&self, id: &str) -> Option<&PredicateTally> {
        self.tallies.iter().find(|t| t.predicate_id == id)
    }
}

/// Fast exact verdict for one predicate on one pair, using u128
/// cross-multiplication. `sa`, `sb` are σ(a), σ(b).
fn fast_verdict(id: &str, a: u64, b: u64, sa: u64, sb: u64) -> Verdict {
    let (a, b, sa, sb) = (a as u128, b as u128, sa as u128, sb as u128);
    match id {
        "T2a" => {
            // premise I(a) < I(b)
            if sa * b >= sb * a {
                return Verdict::Vacuous;
            }
            // sigma(a)/b < sigma(b)/a  <=>  sigma(a)*a < sigma(b)*b
            let left = sa * a < sb * b;
            // a/b + b/a < sigma(a)/sigma(b) + sigma(b)/sigma(a)
            let right = (a * a + b * b) * sa * sb < (sa * sa + sb * sb) * a * b;
            if left == right {
                Verdict::Holds
            } else {
                Verdict::Fails
            }
        }
        "R10" => {
            // sigma(a)/sigma(b) + sigma(b)/sigma(a) < sigma(a)/b + sigma(b)/a
            let first = (sa * sa + sb * sb) * a * b < (sa * a + sb * b) * sa * sb;
            // a/b + b/a < sigma(a)/b + sigma(b)/a
            let second = a * a + b * b < sa * a + sb * b;
            if first && second {
                Verdict::Holds
            } else {
                Verdict::Fails
            }
        }
        "T1-generic" => {
            if (a < b) == (sa < sb) {
                Verdict::Holds
            } else {
                Verdict::Fails
            }
        }
        "R5" => {
            if a * sa != b * sb {
                Verdict::Holds
            } else {
                Verdict::Fails
            }
        }
        _ => unreachable!("validated predicate id"),
    }
}

/// Full exact report for a recorded counterexample, through the predicate
/// layer rather than the fast path.
fn exact_report(id: &str, a: u64, b: u64) -> PredicateReport {
    let budget = Budget::default();
    let fa = factorize(&crate::arith::nat(a), &budget).expect("desk-scale pair");
    let fb = factorize(&crate::arith::nat(b), &budget).expect("desk-scale pair");
    match id {
        "T2a" => predicates::eval_t2a(&fa, &fb),
        "R10" => predicates::eval_r10(&fa, &fb),
        "T1-generic" => predicates::eval_t1_generic(&fa, &fb),
        "R5" => {
            let lhs = crate::arith::nat(a) * fa.sigma();
            let rhs = crate::arith::nat(b) * fb.sigma();
            PredicateReport::new(
                "R5",
                vec![],
                lhs != rhs,
                vec![
                    crate::predicates::Witness {
                        symbol: "a*sigma(a)".into(),
                        value: lhs.to_string(),
                    },
                    crate::predicates::Witness {
                        symbol: "b*sigma(b)".into(),
                        value: rhs.to_string(),
                    },
                ],
            )
        }
        _ => unreachable!("validated predicate id"),
    }
}

/// True when `a = p^k` with `p = 1 mod 4` prime and `k = 1 mod 4`.
fn euler_power_shape(mut a: u64, spf: &[u32]) -> bool {
    if a < 2 {
        return false;
    }
    let p = spf[a as usize] as u64;
    if p % 4 != 1 {
        return false;
    }
    let mut k = 0u32;
    while a % p == 0 {
        a /= p;
        k += 1;
    }
    a == 1 && k % 4 == 1
}

pub fn sweep_pairs(cfg: &SweepConfig) -> Result<SweepReport, HarnessError> {
    if cfg.bound < 2 {
        return Err(HarnessError::BadConfig("bound must be >= 2".into()));
    }
    for id in &cfg.predicate_ids {
        if !SWEEP_PREDICATE_IDS.contains(&id.as_str()) {
            return Err(HarnessError::UnknownPredicate(id.clone()));
        }
    }
    if cfg.predicate_ids.is_empty() {
        return Err(HarnessError::BadConfig("no predicates selected".into()));
    }
    let start = Instant::now();
    let sigma = sieve::sigma_sieve(cfg.bound)?;
    let spf = if cfg.filter.euler_power {
        Some(sieve::spf_sieve(cfg.bound)?)
    } else {
        None
    };

    struct Partial {
        pairs: u64,
        holds: Vec<u64>,
        fails: Vec<u64>,
        vacuous: Vec<u64>,
        counterexamples: Vec<(u64, u64, usize)>,
    }

    let npred = cfg.predicate_ids.len();
    let sweep_row = |a: u64| -> Partial {
        let mut p = Partial {
            pairs: 0,
            holds: vec![0; npred],
            fails: vec![0; npred],
            vacuous: vec![0; npred],
            counterexamples: Vec::new(),
        };
        if cfg.filter.euler_power && !euler_power_shape(a, spf.as_ref().unwrap()) {
            return p;
        }
        let sa = sigma[a as usize];
        for b in 2..=cfg.bound {
            if cfg.filter.odd_second && b % 2 == 0 {
                continue;
            }
            if cfg.filter.coprime && a.gcd(&b) != 1 {
                continue;
            }
            let sb = sigma[b as usize];
            if cfg.filter.abundancy_ordered && sa as u128 * b as u128 >= sb as u128 * a as u128 {
                continue;
            }
            p.pairs += 1;
            for (i, id) in cfg.predicate_ids.iter().enumerate() {
                match fast_verdict(id, a, b, sa, sb) {
                    Verdict::Holds => p.holds[i] += 1,
                    Verdict::Vacuous => p.vacuous[i] += 1,
                    Verdict::Fails => {
                        p.fails[i] += 1;
                        p.counterexamples.push((a, b, i));
                    }
                }
            }
        }
        p
    };

    let rows: Vec<Partial> = {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.parallelism.max(1))
            .build()
            .map_err(|e| HarnessError::BadConfig(e.to_string()))?;
        pool.install(|| (2..=cfg.bound).into_par_iter().map(sweep_row).collect())
    };

    let mut report = SweepReport {
        pairs_evaluated: 0,
        tallies: cfg
            .predicate_ids
            .iter()
            .map(|id| PredicateTally {
                predicate_id: id.clone(),
                ..PredicateTally::default()
            })
            .collect(),
        counterexamples: Vec::new(),
        truncated: false,
        wall_time_ms: 0,
    };
    for row in rows {
        report.pairs_evaluated += row.pairs;
        for i in 0..npred {
            report.tallies[i].holds += row.holds[i];
            report.tallies[i].fails += row.fails[i];
            report.tallies[i].vacuous += row.vacuous[i];
        }
        for (a, b, i) in row.counterexamples {
            if report.counterexamples.len() < cfg.counterexample_cap {
                report.counterexamples.push(Counterexample {
                    a,
                    b,
                    report: exact_report(&cfg.predicate_ids[i], a, b),
                });
            } else {
                report.truncated = true;
            }
        }
    }
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

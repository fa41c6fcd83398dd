//! The eight release gates, one test per criterion. Each prints a single
//! `criterion N: PASS` line on success (visible with `--nocapture`); a
//! failed assertion is the corresponding FAIL.
//!
//! Timing tolerances are pinned here, next to the asserts that use them.

use opnlab::arith::{factorize, nat, parse_rational, rat, Budget, Rational};
use opnlab::cli::cmd_bounds;
use opnlab::eulerian::descartes_spoof;
use opnlab::harness::{
    find_l7_violation, scan_eulerian_candidates, sigma_sieve, sweep_pairs, PairFilter,
    SweepConfig,
};
use opnlab::predicates::{constants, eval_all, eval_l10_case, EvalMode, Instance, Verdict};
use serde_json::Value;
use std::cmp::Ordering;
use std::time::{Duration, Instant};

const MAX_BOUNDS_TIME: Duration = Duration::from_secs(1);
const MAX_L7_SCAN_TIME: Duration = Duration::from_secs(120);
const MAX_PAIR_SWEEP_TIME: Duration = Duration::from_secs(60);
const MAX_BIG_SIEVE_TIME: Duration = Duration::from_secs(10);

fn sigma_brute(n: u64) -> u64 {
    let mut s = 0;
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            s += d;
            if d * d != n {
                s += n / d;
            }
        }
        d += 1;
    }
    s
}

fn cfg(bound: u64, filter: &str, preds: &[&str]) -> SweepConfig {
    SweepConfig::new(
        bound,
        PairFilter::parse(filter).unwrap(),
        preds.iter().map(|s| s.to_string()).collect(),
    )
}

#[test]
fn criterion_1_exact_constant_chains() {
    let start = Instant::now();
    // Exact order over the radical constants, no floating point anywhere.
    let chains = [
        (constants::six_fifths(), constants::sqrt_5_3()),
        (constants::five_fourths(), constants::sqrt_8_5()),
        (constants::cbrt_2(), constants::sqrt_5_3()),
        (constants::one_plus_sqrt_5_3(), constants::three_over_cbrt_2()),
        (constants::sqrt_5_3(), constants::three_over_cbrt_2_minus_1()),
    ];
    for (lo, hi) in &chains {
        assert_eq!(lo.compare(hi).unwrap(), Ordering::Less);
    }
    // The certified intervals at precision 4 contain the documented decimal
    // approximations.
    let (_, results, exit) = cmd_bounds(4, None).unwrap();
    assert_eq!(exit, 0);
    let contains = |name: &str, decimal: &str| {
        let row = results["constants"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["name"] == name)
            .unwrap_or_else(|| panic!("constant {name} missing"));
        let lo = parse_rational(row["interval"]["lo"].as_str().unwrap()).unwrap();
        let hi = parse_rational(row["interval"]["hi"].as_str().unwrap()).unwrap();
        let d: Rational = parse_rational(decimal).unwrap();
        // "Contains the stated decimal": every point of the interval prints
        // as that decimal, i.e. the interval sits within [d, d + ulp].
        let frac_digits = decimal.split('.').nth(1).unwrap().len() as i64;
        let ulp = rat(1, 10i64.pow(frac_digits as u32));
        assert!(
            d <= lo && hi <= &d + &ulp,
            "{name} interval [{lo}, {hi}] does not refine {decimal}"
        );
    };
    contains("3*2^(-1/3)", "2.3811");
    contains("1+sqrt(5/3)", "2.29099");
    contains("3*2^(-1/3)-1", "1.3811");
    contains("sqrt(5/3)", "1.29099");
    assert!(start.elapsed() < MAX_BOUNDS_TIME, "took {:?}", start.elapsed());
    println!("criterion 1: PASS");
}

#[test]
fn criterion_2_amgm_bound_all_euler_primes_to_1e6() {
    let start = Instant::now();
    let scan = find_l7_violation(1_000_000).unwrap();
    assert!(scan.violation.is_none(), "unexpected witness: {scan:?}");
    assert!(scan.primes_checked > 30_000);
    assert!(
        start.elapsed() < MAX_L7_SCAN_TIME,
        "took {:?}",
        start.elapsed()
    );
    println!("criterion 2: PASS");
}

#[test]
fn criterion_3_biconditional_sweep_to_1000() {
    let start = Instant::now();
    let report = sweep_pairs(&cfg(
        1000,
        "coprime,abundancy-ordered",
        &["T2a", "R10"],
    ))
    .unwrap();
    assert!(!report.any_failures());
    // All coprime abundancy-ordered pairs in 2..=1000; roughly half of the
    // ~6*10^5 coprime pairs carry I(a) < I(b).
    assert!(
        (250_000..700_000).contains(&report.pairs_evaluated),
        "pairs: {}",
        report.pairs_evaluated
    );
    let t2a = report.tally("T2a").unwrap();
    assert_eq!(t2a.fails, 0);
    assert_eq!(t2a.holds, report.pairs_evaluated);
    assert_eq!(report.tally("R10").unwrap().fails, 0);
    assert!(
        start.elapsed() < MAX_PAIR_SWEEP_TIME,
        "took {:?}",
        start.elapsed()
    );
    println!("criterion 3: PASS");
}

#[test]
fn criterion_4_generic_biconditional_has_counterexamples() {
    let mut c = cfg(100, "", &["T1-generic"]);
    c.counterexample_cap = 20_000;
    let report = sweep_pairs(&c).unwrap();
    assert!(report.any_failures());
    let ce = report
        .counterexamples
        .iter()
        .find(|c| c.a == 9 && c.b == 8)
        .expect("(9, 8) must be recorded");
    let value_of = |symbol: &str| {
        ce.report
            .witnesses
            .iter()
            .find(|w| w.symbol == symbol)
            .unwrap_or_else(|| panic!("missing witness {symbol}"))
            .value
            .clone()
    };
    // sigma(9) = 13 < sigma(8) = 15 yet 9 > 8.
    assert_eq!(value_of("a < b"), "false");
    assert_eq!(value_of("sigma(a) < sigma(b)"), "true");
    // The key premise fails on the pair: 13/8 + 15/9 = 79/24 = 237/72 is
    // smaller than I(9) + I(8) = 239/72.
    assert_eq!(
        value_of("L8 key premise I(a)+I(b) < sigma(a)/b + sigma(b)/a"),
        "false"
    );
    assert_eq!(value_of("I(a)+I(b)"), "239/72");
    assert_eq!(value_of("sigma(a)/b + sigma(b)/a"), "79/24");
    println!("criterion 4: PASS");
}

#[test]
fn criterion_5_descartes_spoof_suite() {
    // Independent oracle: plain divisor-sum loops, no library sigma.
    let q: u64 = 22021;
    let n: u64 = 3003;
    let big_n: u64 = q * n * n;
    assert_eq!(big_n, 198_585_576_189);
    let sigma_n = sigma_brute(n);
    let sigma_n_sq = sigma_brute(n * n);
    assert_eq!(sigma_n, 5376);
    assert_eq!(sigma_n_sq, 18_035_199);
    // Spoofed sigma treats 22021 as prime: sigma~(q) = q + 1.
    let spoofed_sigma = (q as u128 + 1) * sigma_n_sq as u128;
    assert_eq!(spoofed_sigma, 2 * big_n as u128);

    let inst = Instance::new(descartes_spoof());
    assert!(inst.comps.is_perfect);
    assert_eq!(inst.comps.i_q_pow_k, rat(22022, 22021));
    assert_eq!(inst.comps.i_n, rat(256, 143));
    assert_eq!(inst.comps.sigma_n, nat(sigma_n));
    assert_eq!(inst.comps.sigma_n_sq, nat(sigma_n_sq));

    let reports = eval_all(&inst, EvalMode::Standard);
    let report = |id: &str| {
        reports
            .iter()
            .find(|r| r.predicate_id == id)
            .unwrap_or_else(|| panic!("missing report {id}"))
    };
    let witness_value = |id: &str, symbol: &str| {
        report(id)
            .witnesses
            .iter()
            .find(|w| w.symbol == symbol)
            .unwrap_or_else(|| panic!("missing witness {id}/{symbol}"))
            .value
            .clone()
    };
    assert_eq!(report("L5").verdict, Verdict::Holds);
    assert_eq!(report("L6").verdict, Verdict::Holds);

    let case = eval_l10_case(&inst);
    assert_eq!(case.case_id, Some(2));
    assert_eq!(case.chain, "n < sigma(n) < q^k < sigma(q^k)");

    assert_eq!(report("T2b").verdict, Verdict::Holds);
    assert_eq!(witness_value("T2b", "sigma(n) < q^k"), "true");
    assert_eq!(report("CONJ1").verdict, Verdict::Holds);

    // gcd(sigma~(q), sigma(n^2)) = gcd(22022, 18035199) = 91.
    assert_eq!(
        witness_value("R2", "gcd(sigma(q^k), sigma(n^2))"),
        "91"
    );
    assert_eq!(report("R2").verdict, Verdict::Holds);

    // The spoof violates the q < n*sqrt(3) bound that genuine odd perfect
    // numbers must satisfy: 22021^2 = 484924441 >= 3 * 3003^2.
    assert_eq!(report("R6").verdict, Verdict::Fails);
    assert_eq!(witness_value("R6", "q^2"), (q * q).to_string());
    assert_eq!(q * q, 484_924_441);
    assert!(q * q >= 3 * n * n);
    println!("criterion 5: PASS");
}

#[test]
fn criterion_6_sieve_correctness_and_speed() {
    let table = sigma_sieve(100_000).unwrap();
    let budget = Budget::default();
    for m in 1..=100_000u64 {
        let f = factorize(&nat(m), &budget).unwrap();
        assert_eq!(nat(table[m as usize]), f.sigma(), "sigma({m})");
    }
    let start = Instant::now();
    let big = sigma_sieve(10_000_000).unwrap();
    assert!(
        start.elapsed() < MAX_BIG_SIEVE_TIME,
        "took {:?}",
        start.elapsed()
    );
    assert_eq!(big[6], 12);
    assert_eq!(big[28], 56);
    println!("criterion 6: PASS");
}

#[test]
fn criterion_7_sweep_reports_are_parallelism_independent() {
    let mut serial = cfg(400, "coprime", &["T2a", "R10", "T1-generic"]);
    serial.counterexample_cap = 50;
    let mut parallel = serial.clone();
    serial.parallelism = 1;
    parallel.parallelism = 8;
    let a = serde_json::to_vec(&sweep_pairs(&serial).unwrap()).unwrap();
    let b = serde_json::to_vec(&sweep_pairs(&parallel).unwrap()).unwrap();
    assert_eq!(a, b, "serialized sweep reports differ across parallelism");
    println!("criterion 7: PASS");
}

#[test]
fn criterion_8_no_perfect_eulerian_candidate_below_1e6() {
    let candidates = scan_eulerian_candidates(1_000_000).unwrap();
    assert!(candidates.len() > 10_000, "scan looks too sparse");
    for c in &candidates {
        assert!(!c.is_perfect, "N = {} claims perfection", c.value);
    }
    println!("criterion 8: PASS");
}

/// The JSON payloads the criteria above inspect must round-trip through
/// parse and serialize without change.
#[test]
fn payload_round_trip_sanity() {
    let (_, results, _) = cmd_bounds(3, Some(100)).unwrap();
    let text = serde_json::to_string(&results).unwrap();
    let back: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(results, back);
}

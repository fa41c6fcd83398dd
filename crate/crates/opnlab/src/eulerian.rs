//! Eulerian forms `N = q^k * n^2` and their component quantities.
//!
//! No genuine odd perfect number is known, so the *spoof* flavor is what
//! gives the predicate layer nonvacuous test points: a base may be asserted
//! prime (classically 22021 = 19^2 * 61 in Descartes' number) and σ is then
//! computed as if the assertion held.

use crate::arith::{
    self, factorize_with_assertions, is_prime, nat_to_rational, ArithError, Budget, Factorization,
    Natural, Rational,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// Every base verified prime.
    Genuine,
    /// At least one base is only asserted prime.
    Spoof,
}

/// A validated `q^k * n^2` shape. `k` is the q-adic valuation of the value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerianForm {
    #[serde(with = "crate::arith::serde_nat")]
    q: Natural,
    k: u32,
    #[serde(with = "crate::arith::serde_nat")]
    n: Natural,
    n_factorization: Factorization,
    flavor: Flavor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Violation {
    QNotOneMod4,
    KNotOneMod4,
    QLessThanFive,
    QCompositeWithoutAssertion,
    NEven,
    QSharesFactorWithN,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            Violation::QNotOneMod4 => "q is not congruent to 1 mod 4",
            Violation::KNotOneMod4 => "k is not congruent to 1 mod 4",
            Violation::QLessThanFive => "q < 5",
            Violation::QCompositeWithoutAssertion => "q is composite and not asserted prime",
            Violation::NEven => "n is even",
            Violation::QSharesFactorWithN => "gcd(q, n) != 1",
        };
        write!(f, "{msg}")
    }
}

#[derive(Debug, Error)]
pub enum EulerianError {
    #[error("not an Eulerian form: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("no Eulerian structure: {0}")]
    NoEulerianStructure(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("invalid form spec {0:?} (expected \"q^k*n^2 [assert p,...]\")")]
    BadSpec(String),
}

impl EulerianForm {
    pub fn q(&self) -> &Natural {
        &self.q
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> &Natural {
        &self.n
    }

    pub fn n_factorization(&self) -> &Factorization {
        &self.n_factorization
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    /// N = q^k * n^2.
    pub fn value(&self) -> Natural {
        self.q.pow(self.k) * (&self.n * &self.n)
    }

    pub fn components(&self) -> ComponentQuantities {
        ComponentQuantities::of(self)
    }
}

impl fmt::Display for EulerianForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{} * {}^2", self.q, self.k, self.n)
    }
}

/// Builds and validates an Eulerian form. Bases listed in `assertions` are
/// accepted as prime without checking, which forces the spoof flavor when
/// any of them is actually used.
pub fn make_eulerian(
    q: Natural,
    k: u32,
    n: Natural,
    assertions: &[Natural],
) -> Result<EulerianForm, EulerianError> {
    make_eulerian_with_budget(q, k, n, assertions, &Budget::default())
}

pub fn make_eulerian_with_budget(
    q: Natural,
    k: u32,
    n: Natural,
    assertions: &[Natural],
    budget: &Budget,
) -> Result<EulerianForm, EulerianError> {
    let mut violations = Vec::new();
    let four = Natural::from(4u32);
    if &q % &four != Natural::one() {
        violations.push(Violation::QNotOneMod4);
    }
    if k % 4 != 1 {
        violations.push(Violation::KNotOneMod4);
    }
    if q < Natural::from(5u32) {
        violations.push(Violation::QLessThanFive);
    }
    if (&n % 2u32).is_zero() {
        violations.push(Violation::NEven);
    }
    if !q.gcd(&n).is_one() {
        violations.push(Violation::QSharesFactorWithN);
    }
    let q_asserted = assertions.contains(&q);
    if !q_asserted && !is_prime(&q) {
        violations.push(Violation::QCompositeWithoutAssertion);
    }
    if !violations.is_empty() {
        return Err(EulerianError::Invalid(violations));
    }
    let n_factorization = factorize_with_assertions(&n, assertions, budget)?;
    let flavor = if q_asserted || n_factorization.has_assertions() {
        Flavor::Spoof
    } else {
        Flavor::Genuine
    };
    Ok(EulerianForm {
        q,
        k,
        n,
        n_factorization,
        flavor,
    })
}

/// Recovers the unique Eulerian form of an odd `N`: exactly one prime with
/// odd exponent, that prime congruent to 1 mod 4, its exponent congruent to
/// 1 mod 4.
pub fn decompose(n: &Natural) -> Result<EulerianForm, EulerianError> {
    decompose_with_budget(n, &Budget::default())
}

pub fn decompose_with_budget(n: &Natural, budget: &Budget) -> Result<EulerianForm, EulerianError> {
    if n.is_zero() {
        return Err(EulerianError::NoEulerianStructure("N must be >= 1".into()));
    }
    if (n % 2u32).is_zero() {
        return Err(EulerianError::NoEulerianStructure("N is even".into()));
    }
    let f = arith::factorize(n, budget)?;
    let odd_exp: Vec<_> = f
        .factors()
        .iter()
        .filter(|p| p.exponent % 2 == 1)
        .collect();
    match odd_exp.len() {
        0 => {
            return Err(EulerianError::NoEulerianStructure(
                "no prime with odd exponent (N is a perfect square or 1)".into(),
            ))
        }
        1 => {}
        m => {
            return Err(EulerianError::NoEulerianStructure(format!(
                "{m} primes with odd exponent"
            )))
        }
    }
    let qf = odd_exp[0];
    let four = Natural::from(4u32);
    if &qf.base % &four != Natural::one() {
        return Err(EulerianError::NoEulerianStructure(format!(
            "odd-exponent prime {} is not 1 mod 4",
            qf.base
        )));
    }
    if qf.exponent % 4 != 1 {
        return Err(EulerianError::NoEulerianStructure(format!(
            "exponent {} of {} is not 1 mod 4",
            qf.exponent, qf.base
        )));
    }
    let q = qf.base.clone();
    let k = qf.exponent;
    let mut n_factors = Vec::new();
    for p in f.factors() {
        if p.base == q {
            continue;
        }
        let mut half = p.clone();
        half.exponent = p.exponent / 2;
        n_factors.push(half);
    }
    let n_factorization = Factorization::new(n_factors)?;
    let n_val = n_factorization.value();
    Ok(EulerianForm {
        q,
        k,
        n: n_val,
        n_factorization,
        flavor: Flavor::Genuine,
    })
}

/// Every derived value the component inequalities mention, computed exactly.
/// For spoof forms the σ values are the spoofed σ̃ throughout.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentQuantities {
    #[serde(with = "crate::arith::serde_nat")]
    pub q_pow_k: Natural,
    #[serde(with = "crate::arith::serde_nat")]
    pub n: Natural,
    #[serde(with = "crate::arith::serde_nat")]
    pub n_sq: Natural,
    #[serde(with = "crate::arith::serde_nat")]
    pub sigma_q_pow_k: Natural,
    #[serde(with = "crate::arith::serde_nat")]
    pub sigma_n: Natural,
    #[serde(with = "crate::arith::serde_nat")]
    pub sigma_n_sq: Natural,
    #[serde(with = "crate::arith::serde_rat")]
    pub i_q_pow_k: Rational,
    #[serde(with = "crate::arith::serde_rat")]
    pub i_n: Rational,
    #[serde(with = "crate::arith::serde_rat")]
    pub i_n_sq: Rational,
    /// σ(q^k)/n
    #[serde(with = "crate::arith::serde_rat")]
    pub ratio_sqk_over_n: Rational,
    /// σ(n)/q^k
    #[serde(with = "crate::arith::serde_rat")]
    pub ratio_sn_over_qk: Rational,
    /// q^k/n
    #[serde(with = "crate::arith::serde_rat")]
    pub ratio_qk_over_n: Rational,
    pub is_perfect: bool,
}

impl ComponentQuantities {
    pub fn of(e: &EulerianForm) -> ComponentQuantities {
        let q_pow_k = e.q.pow(e.k);
        // Geometric series for the (possibly asserted) prime q.
        let sigma_q_pow_k = (e.q.pow(e.k + 1) - Natural::one()) / (&e.q - Natural::one());
        let n = e.n.clone();
        let n_sq = &n * &n;
        let n_sq_fact = e.n_factorization.pow(2).expect("exponent fits");
        let sigma_n = e.n_factorization.sigma();
        let sigma_n_sq = n_sq_fact.sigma();
        let ratio = |a: &Natural, b: &Natural| {
            Rational::new(BigInt::from(a.clone()), BigInt::from(b.clone()))
        };
        let is_perfect =
            &sigma_q_pow_k * &sigma_n_sq == Natural::from(2u32) * &q_pow_k * &n_sq;
        ComponentQuantities {
            i_q_pow_k: ratio(&sigma_q_pow_k, &q_pow_k),
            i_n: ratio(&sigma_n, &n),
            i_n_sq: ratio(&sigma_n_sq, &n_sq),
            ratio_sqk_over_n: ratio(&sigma_q_pow_k, &n),
            ratio_sn_over_qk: ratio(&sigma_n, &q_pow_k),
            ratio_qk_over_n: ratio(&q_pow_k, &n),
            q_pow_k,
            n,
            n_sq,
            sigma_q_pow_k,
            sigma_n,
            sigma_n_sq,
            is_perfect,
        }
    }

    /// 2N as a rational, handy for the perfection identity I(q^k)*I(n^2) = 2.
    pub fn abundancy_product(&self) -> Rational {
        &self.i_q_pow_k * &self.i_n_sq
    }

    pub fn value(&self) -> Natural {
        &self.q_pow_k * &self.n_sq
    }

    pub fn value_rational(&self) -> Rational {
        nat_to_rational(&self.value())
    }
}

/// The classical Descartes spoof 3^2 7^2 11^2 13^2 * 22021 with 22021
/// asserted prime, in Eulerian shape q = 22021, k = 1, n = 3003.
pub fn descartes_spoof() -> EulerianForm {
    make_eulerian(
        Natural::from(22021u32),
        1,
        Natural::from(3003u32),
        &[Natural::from(22021u32)],
    )
    .expect("Descartes spoof is a valid form")
}

/// Parses `"q^k*n^2"` with an optional trailing `"assert p1,p2"` clause
/// (`"assert none"` is accepted). The n-exponent must be 2.
pub fn parse_form_spec(spec: &str) -> Result<EulerianForm, EulerianError> {
    let bad = || EulerianError::BadSpec(spec.to_string());
    let (shape, asserts) = match spec.split_once(" assert ") {
        Some((s, a)) => (s.trim(), a.trim()),
        None => (spec.trim(), "none"),
    };
    let mut assertions = Vec::new();
    if asserts != "none" && !asserts.is_empty() {
        for part in asserts.split(',') {
            let p = arith::parse_natural(part).map_err(|_| bad())?;
            if (&p % 2u32).is_zero() || p.is_one() {
                return Err(EulerianError::BadSpec(format!(
                    "cannot assert even or unit base {p}"
                )));
            }
            assertions.push(p);
        }
    }
    let (q_part, n_part) = shape.split_once('*').ok_or_else(bad)?;
    let parse_pow = |s: &str| -> Result<(Natural, u32), EulerianError> {
        let s = s.trim();
        match s.split_once('^') {
            Some((b, e)) => Ok((
                arith::parse_natural(b).map_err(|_| bad())?,
                e.trim().parse().map_err(|_| bad())?,
            )),
            None => Ok((arith::parse_natural(s).map_err(|_| bad())?, 1)),
        }
    };
    let (q, k) = parse_pow(q_part)?;
    let (n, n_exp) = parse_pow(n_part)?;
    if n_exp != 2 {
        return Err(bad());
    }
    make_eulerian(q, k, n, &assertions)
}

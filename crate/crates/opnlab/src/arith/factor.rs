//! Factorizations, the divisor-sum function σ, and the abundancy index.
//!
//! A [`Factorization`] may carry bases that are merely *asserted* prime.
//! [`Factorization::sigma`] always applies the multiplicative prime-power
//! formula per component, which is exactly what makes Descartes-style spoof
//! evaluation possible: for an asserted base the result is the "spoofed"
//! σ̃ rather than the true divisor sum.

use super::{is_prime, ArithError, Natural, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    #[serde(with = "super::serde_nat")]
    pub base: Natural,
    pub exponent: u32,
    pub asserted_prime: bool,
}

/// Ordered list of (base, exponent) pairs with strictly increasing, pairwise
/// coprime bases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    factors: Vec<Factor>,
}

impl Factorization {
    /// Empty product, i.e. the factorization of 1.
    pub fn one() -> Self {
        Factorization { factors: Vec::new() }
    }

    pub fn new(factors: Vec<Factor>) -> Result<Self, ArithError> {
        let two = Natural::from(2u32);
        for f in &factors {
            if f.base < two {
                return Err(ArithError::BadFactorization(format!(
                    "base {} < 2",
                    f.base
                )));
            }
            if f.exponent == 0 {
                return Err(ArithError::BadFactorization(format!(
                    "base {} has exponent 0",
                    f.base
                )));
            }
            if !f.asserted_prime && !is_prime(&f.base) {
                return Err(ArithError::BadFactorization(format!(
                    "base {} is composite and not asserted prime",
                    f.base
                )));
            }
        }
        for w in factors.windows(2) {
            if w[0].base >= w[1].base {
                return Err(ArithError::BadFactorization(
                    "bases not strictly increasing".into(),
                ));
            }
        }
        for i in 0..factors.len() {
            for j in i + 1..factors.len() {
                if !factors[i].base.gcd(&factors[j].base).is_one() {
                    return Err(ArithError::BadFactorization(format!(
                        "bases {} and {} share a factor",
                        factors[i].base, factors[j].base
                    )));
                }
            }
        }
        Ok(Factorization { factors })
    }

    /// Convenience constructor from verified-prime (base, exponent) pairs.
    pub fn from_prime_powers(pairs: &[(u64, u32)]) -> Result<Self, ArithError> {
        Factorization::new(
            pairs
                .iter()
                .map(|&(b, e)| Factor {
                    base: Natural::from(b),
                    exponent: e,
                    asserted_prime: false,
                })
                .collect(),
        )
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn value(&self) -> Natural {
        self.factors
            .iter()
            .fold(Natural::one(), |acc, f| acc * f.base.pow(f.exponent))
    }

    /// σ of the represented number, per component `(p^(a+1) - 1)/(p - 1)`.
    /// Asserted bases are treated as prime.
    pub fn sigma(&self) -> Natural {
        self.factors.iter().fold(Natural::one(), |acc, f| {
            let num = f.base.pow(f.exponent + 1) - Natural::one();
            let den = &f.base - Natural::one();
            acc * (num / den)
        })
    }

    /// Abundancy index σ(f)/value(f), in lowest terms.
    pub fn abundancy(&self) -> Rational {
        Rational::new(BigInt::from(self.sigma()), BigInt::from(self.value()))
    }

    /// Raises to the `e`-th power by scaling exponents.
    pub fn pow(&self, e: u32) -> Result<Self, ArithError> {
        if e == 0 {
            return Ok(Factorization::one());
        }
        Ok(Factorization {
            factors: self
                .factors
                .iter()
                .map(|f| Factor {
                    base: f.base.clone(),
                    exponent: f.exponent * e,
                    asserted_prime: f.asserted_prime,
                })
                .collect(),
        })
    }

    pub fn has_assertions(&self) -> bool {
        self.factors.iter().any(|f| f.asserted_prime)
    }

    /// q-adic valuation of the represented number.
    pub fn valuation(&self, base: &Natural) -> u32 {
        self.factors
            .iter()
            .find(|f| &f.base == base)
            .map_or(0, |f| f.exponent)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|p| {
                let star = if p.asserted_prime { "~" } else { "" };
                if p.exponent == 1 {
                    format!("{}{}", star, p.base)
                } else {
                    format!("{}{}^{}", star, p.base, p.exponent)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}

/// Effort limits for [`factorize`]. The default handles every input up to
/// 10^18; beyond that callers are expected to supply prime assertions.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Budget {
    pub trial_division_bound: u64,
    pub rho_rounds: u32,
    pub rho_iterations_per_round: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            trial_division_bound: 100_000,
            rho_rounds: 64,
            rho_iterations_per_round: 1 << 22,
        }
    }
}

/// Fully factors `n` within the given budget. Deterministic for fixed input
/// and budget; the rho walk uses a fixed constant schedule, no ambient RNG.
pub fn factorize(n: &Natural, budget: &Budget) -> Result<Factorization, ArithError> {
    factorize_with_assertions(n, &[], budget)
}

/// Like [`factorize`], but divides out the caller-asserted bases first and
/// marks them `asserted_prime` in the result. Assertions that do not divide
/// `n` are ignored.
pub fn factorize_with_assertions(
    n: &Natural,
    assertions: &[Natural],
    budget: &Budget,
) -> Result<Factorization, ArithError> {
    if n.is_zero() {
        return Err(ArithError::BadFactorization("cannot factor 0".into()));
    }
    let mut remaining = n.clone();
    let mut found: BTreeMap<Natural, (u32, bool)> = BTreeMap::new();
    for a in assertions {
        if a < &Natural::from(2u32) {
            return Err(ArithError::BadFactorization(format!(
                "asserted base {a} < 2"
            )));
        }
        let mut e = 0u32;
        while (&remaining % a).is_zero() {
            remaining /= a;
            e += 1;
        }
        if e > 0 {
            found.insert(a.clone(), (e, true));
        }
    }

    // Trial division.
    let mut d = 2u64;
    while d <= budget.trial_division_bound {
        let db = Natural::from(d);
        if &db * &db > remaining {
            break;
        }
        let mut e = 0u32;
        while (&remaining % d).is_zero() {
            remaining /= d;
            e += 1;
        }
        if e > 0 {
            add_factor(&mut found, db, e);
        }
        d = if d == 2 { 3 } else { d + 2 };
    }

    // Whatever is left is either prime or needs rho splitting.
    let mut stack = Vec::new();
    if !remaining.is_one() {
        stack.push(remaining);
    }
    while let Some(m) = stack.pop() {
        if is_prime(&m) {
            add_factor(&mut found, m, 1);
            continue;
        }
        if let Some((r, e)) = perfect_power_root(&m) {
            for _ in 0..e {
                stack.push(r.clone());
            }
            continue;
        }
        match pollard_brent(&m, budget) {
            Some(f) => {
                stack.push(&m / &f);
                stack.push(f);
            }
            None => {
                stack.push(m.clone());
                let cofactor: Natural =
                    stack.iter().fold(Natural::one(), |acc, x| acc * x);
                let partial = build(&found)?;
                return Err(ArithError::BudgetExhausted { partial, cofactor });
            }
        }
    }

    let f = build(&found)?;
    debug_assert_eq!(&f.value(), n);
    Ok(f)
}

fn add_factor(map: &mut BTreeMap<Natural, (u32, bool)>, base: Natural, exp: u32) {
    let entry = map.entry(base).or_insert((0, false));
    entry.0 += exp;
}

fn build(map: &BTreeMap<Natural, (u32, bool)>) -> Result<Factorization, ArithError> {
    Factorization::new(
        map.iter()
            .map(|(b, &(e, asserted))| Factor {
                base: b.clone(),
                exponent: e,
                asserted_prime: asserted,
            })
            .collect(),
    )
}

/// If `m = r^e` for some e >= 2 returns `(r, e)`. Pollard rho can stall on
/// perfect powers of a prime, so peel them first.
fn perfect_power_root(m: &Natural) -> Option<(Natural, u32)> {
    let bits = m.bits();
    for e in 2..=bits.max(2) as u32 {
        let r = m.nth_root(e);
        if r < Natural::from(2u32) {
            break;
        }
        if r.pow(e) == *m {
            return Some((r, e));
        }
    }
    None
}

/// Brent-cycle Pollard rho returning one nontrivial factor, or `None` when
/// the iteration budget is exhausted. The polynomial offset `c` advances
/// through a fixed schedule, keeping the walk deterministic.
fn pollard_brent(n: &Natural, budget: &Budget) -> Option<Natural> {
    if let Ok(v) = u64::try_from(n) {
        return pollard_brent_u64(v, budget).map(Natural::from);
    }
    for round in 0..budget.rho_rounds {
        let c = Natural::from(2 * round as u64 + 1);
        let mut x = Natural::from(2u32);
        let mut y = x.clone();
        let mut d = Natural::one();
        let mut count = 0u64;
        let step = |v: &Natural| (v * v + &c) % n;
        while d.is_one() && count < budget.rho_iterations_per_round {
            x = step(&x);
            y = step(&step(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            d = diff.gcd(n);
            count += 1;
        }
        if !d.is_one() && &d != n {
            return Some(d);
        }
    }
    None
}

fn pollard_brent_u64(n: u64, budget: &Budget) -> Option<u64> {
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    for round in 0..budget.rho_rounds {
        let c = 2 * round as u64 + 1;
        let step = |v: u64| (mul(v, v) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        let mut count = 0u64;
        while d == 1 && count < budget.rho_iterations_per_round {
            x = step(x);
            y = step(step(y));
            d = x.abs_diff(y).gcd(&n);
            count += 1;
        }
        if d != 1 && d != n {
            return Some(d);
        }
    }
    None
}

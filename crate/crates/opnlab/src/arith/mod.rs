//! Exact unbounded-integer and rational arithmetic.
//!
//! Everything downstream of this module works with [`Natural`] (arbitrary
//! precision, non-negative) and [`Rational`] (always reduced, positive
//! denominator). No verdict anywhere in the crate goes through floating
//! point; irrational bounds are handled by [`roots`] as exact m-th root
//! comparisons or certified rational intervals.

mod factor;
mod primality;
mod roots;

pub use factor::{factorize, factorize_with_assertions, Budget, Factor, Factorization};
pub use primality::is_prime;
pub use roots::{compare_root_exprs, compare_to_root, eval_root_expr, Interval, RootExpr, RootTerm};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision non-negative integer.
pub type Natural = BigUint;

/// Arbitrary-precision rational, stored in lowest terms with a positive
/// denominator (both guaranteed by `num_rational`).
pub type Rational = BigRational;

#[derive(Debug, Error)]
pub enum ArithError {
    #[error("invalid natural number literal {0:?}")]
    BadNatural(String),
    #[error("invalid rational literal {0:?} (expected \"a/b\" or \"a\")")]
    BadRational(String),
    #[error("invalid factorization: {0}")]
    BadFactorization(String),
    #[error("factoring budget exhausted: unfactored cofactor {cofactor}")]
    BudgetExhausted {
        /// What was split off before the budget ran out.
        partial: Factorization,
        cofactor: Natural,
    },
    #[error("cannot decide equality of the given radical expressions exactly")]
    UndecidableEquality,
    #[error("invalid root expression: {0}")]
    BadRootExpr(String),
}

pub fn nat(v: u64) -> Natural {
    Natural::from(v)
}

/// Rational from an integer pair. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn nat_to_rational(n: &Natural) -> Rational {
    Rational::from_integer(BigInt::from(n.clone()))
}

pub fn parse_natural(s: &str) -> Result<Natural, ArithError> {
    s.trim()
        .parse::<Natural>()
        .map_err(|_| ArithError::BadNatural(s.to_string()))
}

/// Parses `"a/b"`, a plain integer `"a"`, or a decimal literal `"a.b"`.
pub fn parse_rational(s: &str) -> Result<Rational, ArithError> {
    let t = s.trim();
    if let Some((int, frac)) = t.split_once('.') {
        if t.contains('/') || frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ArithError::BadRational(s.to_string()));
        }
        let num: BigInt = format!("{int}{frac}")
            .parse()
            .map_err(|_| ArithError::BadRational(s.to_string()))?;
        return Ok(Rational::new(num, BigInt::from(10u32).pow(frac.len() as u32)));
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| ArithError::BadRational(s.to_string()))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| ArithError::BadRational(s.to_string()))?;
    if den.is_zero() {
        return Err(ArithError::BadRational(s.to_string()));
    }
    Ok(Rational::new(num, den))
}

/// Canonical `"a/b"` form used by every serialized report.
pub fn rational_str(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Decimal string with `digits` places, truncated toward minus infinity
/// (`round_up = false`) or plus infinity (`round_up = true`).
pub fn decimal_str(r: &Rational, digits: u32, round_up: bool) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = r * Rational::from_integer(scale.clone());
    let mut q = scaled.numer() / scaled.denom();
    let exact = (scaled.numer() % scaled.denom()).is_zero();
    if !exact {
        // BigInt division truncates toward zero; fix up to floor/ceil.
        if scaled.is_negative() && !round_up {
            q -= 1;
        } else if !scaled.is_negative() && round_up {
            q += 1;
        }
    }
    let neg = q.is_negative();
    let mag = q.abs().to_string();
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    if digits == 0 {
        s.push_str(&mag);
        return s;
    }
    let d = digits as usize;
    if mag.len() <= d {
        s.push_str("0.");
        s.push_str(&"0".repeat(d - mag.len()));
        s.push_str(&mag);
    } else {
        let (int, frac) = mag.split_at(mag.len() - d);
        s.push_str(int);
        s.push('.');
        s.push_str(frac);
    }
    s
}

pub fn rational_pow(r: &Rational, e: u32) -> Rational {
    if e == 0 {
        return Rational::one();
    }
    Rational::new(r.numer().pow(e), r.denom().pow(e))
}

/// Serde adapter: `Natural` as a decimal string.
pub mod serde_nat {
    use super::Natural;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &Natural, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Natural, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_natural(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter: `Rational` as an `"a/b"` string.
pub mod serde_rat {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::rational_str(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_decimal_round_trip_at_40_digits() {
        let s = "1234567890123456789012345678901234567890";
        let n = parse_natural(s).unwrap();
        assert_eq!(n.to_string(), s);
    }

    #[test]
    fn rational_is_reduced_and_positive_denominator() {
        let r = parse_rational("5376/3003").unwrap();
        assert_eq!(rational_str(&r), "256/143");
        let r = parse_rational("3/-6").unwrap();
        assert_eq!(rational_str(&r), "-1/2");
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal_str(&rat(1, 3), 4, false), "0.3333");
        assert_eq!(decimal_str(&rat(1, 3), 4, true), "0.3334");
        assert_eq!(decimal_str(&rat(1, 2), 4, true), "0.5000");
        assert_eq!(decimal_str(&rat(-1, 3), 3, false), "-0.334");
        assert_eq!(decimal_str(&rat(45, 2), 1, false), "22.5");
    }

    #[test]
    fn bad_literals_rejected() {
        assert!(parse_natural("12x").is_err());
        assert!(parse_rational("1/0").is_err());
    }
}

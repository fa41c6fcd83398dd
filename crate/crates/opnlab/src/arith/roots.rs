//! Exact comparison of rationals against m-th roots, and certified rational
//! intervals for sums of radical terms.
//!
//! Single-root comparisons raise both sides to the m-th power and compare
//! integers, so the verdict path never touches floating point. Multi-term
//! sums are compared by adaptive interval refinement with an exact algebraic
//! fallback for the forms that refinement alone cannot separate (equal
//! expressions, or a rational against a lone radical).

use super::{ArithError, Rational};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// One term `coefficient * radicand^(1/root_index)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootTerm {
    #[serde(with = "super::serde_rat")]
    pub coefficient: Rational,
    #[serde(with = "super::serde_rat")]
    pub radicand: Rational,
    pub root_index: u32,
}

/// Exact representation of `sum of c_i * r_i^(1/m_i)` with positive radicands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootExpr {
    pub terms: Vec<RootTerm>,
}

/// Closed rational interval certified to contain an exact value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Interval {
    #[serde(with = "super::serde_rat")]
    pub lo: Rational,
    #[serde(with = "super::serde_rat")]
    pub hi: Rational,
}

impl Interval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, inner: &Interval) -> bool {
        self.lo <= inner.lo && inner.hi <= self.hi
    }
}

impl RootExpr {
    pub fn rational(r: Rational) -> Self {
        RootExpr {
            terms: vec![RootTerm {
                coefficient: r,
                radicand: Rational::one(),
                root_index: 1,
            }],
        }
    }

    /// `coefficient * radicand^(1/root_index)`; radicand must be positive.
    pub fn root(coefficient: Rational, radicand: Rational, root_index: u32) -> Self {
        assert!(radicand.is_positive(), "radicand must be positive");
        assert!(root_index >= 1, "root index must be >= 1");
        RootExpr {
            terms: vec![RootTerm {
                coefficient,
                radicand,
                root_index,
            }],
        }
    }

    pub fn plus(mut self, other: RootExpr) -> Self {
        self.terms.extend(other.terms);
        self
    }

    pub fn validate(&self) -> Result<(), ArithError> {
        for t in &self.terms {
            if t.root_index == 0 {
                return Err(ArithError::BadRootExpr("root index 0".into()));
            }
            if !t.radicand.is_positive() {
                return Err(ArithError::BadRootExpr(format!(
                    "non-positive radicand {}",
                    super::rational_str(&t.radicand)
                )));
            }
        }
        Ok(())
    }

    pub fn eval(&self, precision: u32) -> Interval {
        eval_root_expr(self, precision)
    }

    pub fn compare(&self, other: &RootExpr) -> Result<Ordering, ArithError> {
        compare_root_exprs(self, other)
    }
}

impl fmt::Display for RootExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                if t.root_index == 1 && t.radicand.is_one() {
                    super::rational_str(&t.coefficient)
                } else if t.root_index == 1 {
                    format!(
                        "{}*{}",
                        super::rational_str(&t.coefficient),
                        super::rational_str(&t.radicand)
                    )
                } else {
                    format!(
                        "{}*({})^(1/{})",
                        super::rational_str(&t.coefficient),
                        super::rational_str(&t.radicand),
                        t.root_index
                    )
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Exact ordering of `x` versus `radicand^(1/root_index)`, decided by integer
/// comparison of `x^root_index` against `radicand`.
pub fn compare_to_root(x: &Rational, radicand: &Rational, root_index: u32) -> Ordering {
    assert!(root_index >= 1);
    assert!(radicand.is_positive(), "radicand must be positive");
    if x.is_negative() {
        // The principal root of a positive radicand is positive.
        if root_index % 2 == 0 {
            return Ordering::Less;
        }
    }
    super::rational_pow(x, root_index).cmp(radicand)
}

/// Certified interval for `e` with width at most `10^-precision`.
pub fn eval_root_expr(e: &RootExpr, precision: u32) -> Interval {
    assert!(precision >= 1);
    // Extra digits so that per-term widths, scaled by coefficients, sum to
    // within the requested width.
    let mut slack: BigUint = BigUint::from(e.terms.len().max(1));
    for t in &e.terms {
        let c = t.coefficient.abs();
        slack += c.numer().magnitude() / c.denom().magnitude() + BigUint::one();
    }
    let extra = slack.to_string().len() as u32 + 1;
    let digits = precision + extra;

    let mut lo = Rational::zero();
    let mut hi = Rational::zero();
    for t in &e.terms {
        let (tlo, thi) = term_interval(t, digits);
        lo += tlo;
        hi += thi;
    }
    Interval { lo, hi }
}

/// Interval of width 10^-digits around `radicand^(1/m)`, scaled by the
/// coefficient (with endpoint swap for negative coefficients).
fn term_interval(t: &RootTerm, digits: u32) -> (Rational, Rational) {
    if t.root_index == 1 {
        let exact = &t.coefficient * &t.radicand;
        return (exact.clone(), exact);
    }
    let scale = BigUint::from(10u32).pow(digits);
    let num = t.radicand.numer().magnitude();
    let den = t.radicand.denom().magnitude();
    // floor(num * scale^m / den), then integer m-th root a:
    //   (a/scale)^m <= radicand < ((a+1)/scale)^m
    let x = num * scale.pow(t.root_index) / den;
    let a = x.nth_root(t.root_index);
    let scale_int = BigInt::from(scale);
    let rlo = BigRational::new(BigInt::from(a.clone()), scale_int.clone());
    let rhi = BigRational::new(BigInt::from(a + BigUint::one()), scale_int);
    let lo = &t.coefficient * &rlo;
    let hi = &t.coefficient * &rhi;
    if t.coefficient.is_negative() {
        (hi, lo)
    } else {
        (lo, hi)
    }
}

/// Exact ordering of two radical expressions: adaptive interval refinement,
/// then algebraic normalization of the difference for the shapes refinement
/// cannot separate.
pub fn compare_root_exprs(a: &RootExpr, b: &RootExpr) -> Result<Ordering, ArithError> {
    for (i, p) in [4u32, 12, 40, 120, 300].iter().enumerate() {
        let ia = eval_root_expr(a, *p);
        let ib = eval_root_expr(b, *p);
        if ia.lo > ib.hi {
            return Ok(Ordering::Greater);
        }
        if ia.hi < ib.lo {
            return Ok(Ordering::Less);
        }
        // Two refinement rounds are enough evidence of a near-tie to be
        // worth attempting the exact route.
        if i >= 1 {
            if let Some(ord) = exact_difference_sign(a, b) {
                return Ok(ord);
            }
        }
    }
    Err(ArithError::UndecidableEquality)
}

/// Exact sign of `a - b` after combining like radical terms, for the shapes
/// with at most one radical against a rational, or two radicals alone.
fn exact_difference_sign(a: &RootExpr, b: &RootExpr) -> Option<Ordering> {
    let mut rational_acc = Rational::zero();
    // (radicand, index) -> coefficient sum
    let mut radicals: Vec<(Rational, u32, Rational)> = Vec::new();
    let mut absorb = |t: &RootTerm, sign: i32| {
        let c = if sign >= 0 {
            t.coefficient.clone()
        } else {
            -t.coefficient.clone()
        };
        if t.root_index == 1 || t.radicand.is_one() {
            let point = if t.root_index == 1 {
                &c * &t.radicand
            } else {
                c
            };
            rational_acc += point;
            return;
        }
        if let Some(slot) = radicals
            .iter_mut()
            .find(|(r, m, _)| r == &t.radicand && *m == t.root_index)
        {
            slot.2 += c;
        } else {
            radicals.push((t.radicand.clone(), t.root_index, c));
        }
    };
    for t in &a.terms {
        absorb(t, 1);
    }
    for t in &b.terms {
        absorb(t, -1);
    }
    radicals.retain(|(_, _, c)| !c.is_zero());

    match radicals.len() {
        0 => Some(rational_acc.cmp(&Rational::zero())),
        1 => {
            let (r, m, c) = &radicals[0];
            Some(sign_of_rational_plus_root(&rational_acc, c, r, *m))
        }
        2 if rational_acc.is_zero() => {
            let (r1, m1, c1) = &radicals[0];
            let (r2, m2, c2) = &radicals[1];
            match (c1.is_positive(), c2.is_positive()) {
                (true, true) => Some(Ordering::Greater),
                (false, false) => Some(Ordering::Less),
                (true, false) => Some(compare_scaled_roots(c1, r1, *m1, &c2.abs(), r2, *m2)),
                (false, true) => {
                    Some(compare_scaled_roots(c2, r2, *m2, &c1.abs(), r1, *m1).reverse())
                }
            }
        }
        _ => {
            if rational_acc.is_zero()
                && (radicals.iter().all(|(_, _, c)| c.is_positive())
                    || radicals.iter().all(|(_, _, c)| c.is_negative()))
            {
                return Some(if radicals[0].2.is_positive() {
                    Ordering::Greater
                } else {
                    Ordering::Less
                });
            }
            None
        }
    }
}

/// Sign of `rational + c * r^(1/m)`, reported as an ordering against zero.
fn sign_of_rational_plus_root(rational: &Rational, c: &Rational, r: &Rational, m: u32) -> Ordering {
    debug_assert!(!c.is_zero());
    if c.is_positive() {
        // positive iff r^(1/m) > -rational/c
        let threshold = -rational / c;
        compare_to_root(&threshold, r, m).reverse()
    } else {
        // rational - |c| root > 0 iff root < rational/|c|
        let threshold = rational / c.abs();
        compare_to_root(&threshold, r, m)
    }
}

/// Exact ordering of `c1 * r1^(1/m1)` vs `c2 * r2^(1/m2)` with all inputs
/// positive, by raising both sides to the lcm of the indices.
fn compare_scaled_roots(
    c1: &Rational,
    r1: &Rational,
    m1: u32,
    c2: &Rational,
    r2: &Rational,
    m2: u32,
) -> Ordering {
    let l = m1.lcm(&m2);
    let lhs = super::rational_pow(c1, l) * super::rational_pow(r1, l / m1);
    let rhs = super::rational_pow(c2, l) * super::rational_pow(r2, l / m2);
    lhs.cmp(&rhs)
}

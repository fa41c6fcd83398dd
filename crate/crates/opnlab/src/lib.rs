//! Exact-arithmetic laboratory for the component inequalities of odd perfect
//! numbers in Eulerian form `N = q^k * n^2`.
//!
//! The crate is organized around five layers:
//!
//! - [`arith`]: unbounded integers and rationals, factorization, the divisor
//!   sum σ, the abundancy index I(x) = σ(x)/x, and exact comparison of
//!   rationals against m-th roots and radical sums.
//! - [`eulerian`]: the Eulerian-form data model, including Descartes-style
//!   spoofs where a composite base is asserted prime so that the
//!   multiplicative σ formula treats it as one.
//! - [`predicates`]: one checkable predicate per lemma/theorem, each producing
//!   a [`predicates::PredicateReport`] with premise values, conclusion truth,
//!   and a holds/fails/vacuous verdict.
//! - [`harness`]: σ sieves and exhaustive coprime-pair sweeps that separate
//!   universally true algebraic claims from claims conditional on perfection.
//! - [`cli`]: command-line front end with a JSON output contract.

pub mod arith;
pub mod cli;
pub mod eulerian;
pub mod harness;
pub mod predicates;

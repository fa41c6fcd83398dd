//! One checkable predicate per lemma/theorem/remark, each producing a
//! [`PredicateReport`].
//!
//! Report semantics: the verdict is `Vacuous` iff some premise is false,
//! `Holds` iff all premises and the conclusion are true, `Fails` otherwise.
//! Results that hypothesize perfection evaluate to `Vacuous` on non-perfect
//! inputs in [`EvalMode::Standard`]; [`EvalMode::Raw`] drops the perfection
//! premise for exploratory use (no genuine odd perfect number is available
//! to instantiate it).
//!
//! Stable predicate IDs: `L1`-`L11`, `T1`, `T2a`, `T2b`, `C1`, `R2`, `R5`,
//! `R6`, `R8`, `R10`, `CONJ1`, plus `T1-generic` for the sweep-only generic
//! biconditional.

use crate::arith::{
    compare_root_exprs, compare_to_root, nat_to_rational, rational_str, Factor, Factorization,
    Natural, Rational, RootExpr,
};
use crate::eulerian::{ComponentQuantities, EulerianForm};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Vacuous,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EvalMode {
    /// Perfection premises are honored; non-perfect inputs yield `Vacuous`.
    Standard,
    /// Perfection premises are skipped; conclusions are checked raw.
    Raw,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Premise {
    pub name: String,
    pub value: String,
    pub truth: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub symbol: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateReport {
    pub predicate_id: String,
    pub premises: Vec<Premise>,
    pub conclusion: bool,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
}

impl PredicateReport {
    pub fn new(
        id: &str,
        premises: Vec<Premise>,
        conclusion: bool,
        witnesses: Vec<Witness>,
    ) -> Self {
        let verdict = if premises.iter().any(|p| !p.truth) {
            Verdict::Vacuous
        } else if conclusion {
            Verdict::Holds
        } else {
            Verdict::Fails
        };
        PredicateReport {
            predicate_id: id.to_string(),
            premises,
            conclusion,
            verdict,
            witnesses,
        }
    }
}

fn premise(name: &str, value: String, truth: bool) -> Premise {
    Premise {
        name: name.to_string(),
        value,
        truth,
    }
}

fn witness(symbol: &str, value: impl ToString) -> Witness {
    Witness {
        symbol: symbol.to_string(),
        value: value.to_string(),
    }
}

/// The exact radical constants the bounds live in. All are m-th roots of
/// rationals, so every comparison against them reduces to integer
/// arithmetic.
pub mod constants {
    use super::*;
    use crate::arith::rat;

    pub fn sqrt_5_3() -> RootExpr {
        RootExpr::root(rat(1, 1), rat(5, 3), 2)
    }

    pub fn sqrt_8_5() -> RootExpr {
        RootExpr::root(rat(1, 1), rat(8, 5), 2)
    }

    pub fn sqrt_2() -> RootExpr {
        RootExpr::root(rat(1, 1), rat(2, 1), 2)
    }

    pub fn sqrt_3() -> RootExpr {
        RootExpr::root(rat(1, 1), rat(3, 1), 2)
    }

    pub fn cbrt_2() -> RootExpr {
        RootExpr::root(rat(1, 1), rat(2, 1), 3)
    }

    /// 3 * 2^(-1/3), the sharper lower bound for I(q) + I(n).
    pub fn three_over_cbrt_2() -> RootExpr {
        RootExpr::root(rat(3, 1), rat(1, 2), 3)
    }

    /// 3 * 2^(-1/3) - 1, the sharper lower bound for I(q)I(n).
    pub fn three_over_cbrt_2_minus_1() -> RootExpr {
        three_over_cbrt_2().plus(RootExpr::rational(rat(-1, 1)))
    }

    pub fn one_plus_sqrt_5_3() -> RootExpr {
        RootExpr::rational(rat(1, 1)).plus(sqrt_5_3())
    }

    /// 2 * (8/5)^(1/4), the ratio-sum lower bound.
    pub fn two_quartic_8_5() -> RootExpr {
        RootExpr::root(rat(2, 1), rat(8, 5), 4)
    }

    pub fn six_fifths() -> RootExpr {
        RootExpr::rational(rat(6, 5))
    }

    pub fn five_fourths() -> RootExpr {
        RootExpr::rational(rat(5, 4))
    }

    /// 1 + 1/q + sqrt(2q/(q+1)), the exact chain under the AM-GM bound.
    pub fn am_gm_chain_at(q: &Natural) -> RootExpr {
        let qi = BigInt::from(q.clone());
        let a = Rational::new(&qi + 1, qi.clone());
        let radicand = Rational::new(2 * qi.clone(), &qi + 1);
        RootExpr::rational(a).plus(RootExpr::root(rat(1, 1), radicand, 2))
    }

    /// Every named constant, for the bounds report.
    pub fn all_named() -> Vec<(&'static str, RootExpr)> {
        vec![
            ("6/5", six_fifths()),
            ("5/4", five_fourths()),
            ("sqrt(5/3)", sqrt_5_3()),
            ("sqrt(8/5)", sqrt_8_5()),
            ("cbrt(2)", cbrt_2()),
            ("sqrt(2)", sqrt_2()),
            ("sqrt(3)", sqrt_3()),
            ("3*2^(-1/3)", three_over_cbrt_2()),
            ("3*2^(-1/3)-1", three_over_cbrt_2_minus_1()),
            ("1+sqrt(5/3)", one_plus_sqrt_5_3()),
            ("2*(8/5)^(1/4)", two_quartic_8_5()),
        ]
    }
}

/// An Eulerian form together with its derived component quantities, the
/// common input of the instance predicates.
#[derive(Clone, Debug)]
pub struct Instance {
    pub form: EulerianForm,
    pub comps: ComponentQuantities,
}

impl Instance {
    pub fn new(form: EulerianForm) -> Self {
        let comps = form.components();
        Instance { form, comps }
    }

    /// The Euler factor q^k as a standalone factorization (asserted when the
    /// form is a spoof with asserted q).
    pub fn q_factorization(&self) -> Factorization {
        Factorization::new(vec![Factor {
            base: self.form.q().clone(),
            exponent: self.form.k(),
            asserted_prime: !crate::arith::is_prime(self.form.q()),
        }])
        .expect("q^k is a valid one-component factorization")
    }

    fn perfection_premise(&self, mode: EvalMode) -> Option<Premise> {
        match mode {
            EvalMode::Raw => None,
            EvalMode::Standard => Some(premise(
                "N is perfect",
                format!("sigma(N) = {}", if self.comps.is_perfect { "2N" } else { "!= 2N" }),
                self.comps.is_perfect,
            )),
        }
    }
}

fn cmp_str(a: &Natural, rel: &str, b: &Natural) -> String {
    format!("{a} {rel} {b}")
}

/// L1: if n < q then k = 1.
pub fn eval_l1(inst: &Instance) -> PredicateReport {
    let n_lt_q = inst.form.n() < inst.form.q();
    PredicateReport::new(
        "L1",
        vec![premise(
            "n < q",
            cmp_str(inst.form.n(), "<?", inst.form.q()),
            n_lt_q,
        )],
        inst.form.k() == 1,
        vec![witness("k", inst.form.k())],
    )
}

/// L2: if sigma(n) <= sigma(q) then k = 1.
pub fn eval_l2(inst: &Instance) -> PredicateReport {
    let sigma_q = inst.form.q() + Natural::one();
    let prem = inst.comps.sigma_n <= sigma_q;
    PredicateReport::new(
        "L2",
        vec![premise(
            "sigma(n) <= sigma(q)",
            cmp_str(&inst.comps.sigma_n, "<=?", &sigma_q),
            prem,
        )],
        inst.form.k() == 1,
        vec![witness("k", inst.form.k())],
    )
}

/// L3: if sigma(n)/q < sigma(q)/n then k = 1.
pub fn eval_l3(inst: &Instance) -> PredicateReport {
    let sigma_q = nat_to_rational(&(inst.form.q() + Natural::one()));
    let lhs = nat_to_rational(&inst.comps.sigma_n) / nat_to_rational(inst.form.q());
    let rhs = sigma_q / nat_to_rational(inst.form.n());
    let prem = lhs < rhs;
    PredicateReport::new(
        "L3",
        vec![premise(
            "sigma(n)/q < sigma(q)/n",
            format!("{} <? {}", rational_str(&lhs), rational_str(&rhs)),
            prem,
        )],
        inst.form.k() == 1,
        vec![witness("k", inst.form.k())],
    )
}

/// L4: n < q if and only if N < q^3.
pub fn eval_l4(inst: &Instance) -> PredicateReport {
    let n_lt_q = inst.form.n() < inst.form.q();
    let big_n = inst.form.value();
    let q_cubed = inst.form.q().pow(3);
    let n_lt_q3 = big_n < q_cubed;
    PredicateReport::new(
        "L4",
        vec![],
        n_lt_q == n_lt_q3,
        vec![
            witness("n < q", n_lt_q),
            witness("N < q^3", n_lt_q3),
            witness("N", &big_n),
            witness("q^3", &q_cubed),
        ],
    )
}

/// R2/R3: sigma(n) differs from sigma(q), q, sigma(q^k) and q^k; and, for
/// perfect inputs, gcd(sigma(q^k), sigma(n^2)) > 1.
pub fn eval_r2_r3(inst: &Instance, mode: EvalMode) -> PredicateReport {
    let c = &inst.comps;
    let sigma_q = inst.form.q() + Natural::one();
    let q_pow_k = &c.q_pow_k;
    let checks = [
        ("sigma(n) != sigma(q)", c.sigma_n != sigma_q),
        ("sigma(n) != q", &c.sigma_n != inst.form.q()),
        ("sigma(n) != sigma(q^k)", c.sigma_n != c.sigma_q_pow_k),
        ("sigma(n) != q^k", &c.sigma_n != q_pow_k),
    ];
    let gcd = c.sigma_q_pow_k.gcd(&c.sigma_n_sq);
    // The gcd > 1 result is conditional on perfection; on non-perfect raw
    // inputs it is simply not checked.
    let gcd_applies = c.is_perfect || mode == EvalMode::Raw;
    let mut conclusion = checks.iter().all(|(_, ok)| *ok);
    if gcd_applies {
        conclusion &= gcd > Natural::one();
    }
    let mut witnesses: Vec<Witness> = checks.iter().map(|(s, ok)| witness(s, ok)).collect();
    witnesses.push(witness("gcd(sigma(q^k), sigma(n^2))", &gcd));
    witnesses.push(witness("gcd check applied", gcd_applies));
    PredicateReport::new("R2", vec![], conclusion, witnesses)
}

fn chain_link(
    witnesses: &mut Vec<Witness>,
    label: &str,
    ok: bool,
) -> bool {
    witnesses.push(witness(label, ok));
    ok
}

/// L5 abundancy chains, each link decided exactly:
/// k = 1:  1 < I(q) <= 6/5 < sqrt(5/3) < I(n) < 2
/// k >= 1: 1 < I(q^k) < 5/4 < sqrt(8/5) < I(n) < 2
/// always: I(q^k) < cbrt(2) < I(n)
pub fn eval_l5(inst: &Instance) -> PredicateReport {
    use crate::arith::rat;
    let c = &inst.comps;
    let mut w = Vec::new();
    let mut ok = true;
    let one = Rational::one();
    let i_qk = &c.i_q_pow_k;
    let i_n = &c.i_n;

    if inst.form.k() == 1 {
        ok &= chain_link(&mut w, "1 < I(q)", i_qk > &one);
        ok &= chain_link(&mut w, "I(q) <= 6/5", i_qk <= &rat(6, 5));
        ok &= chain_link(
            &mut w,
            "6/5 < sqrt(5/3)",
            compare_to_root(&rat(6, 5), &rat(5, 3), 2) == Ordering::Less,
        );
        ok &= chain_link(
            &mut w,
            "sqrt(5/3) < I(n)",
            compare_to_root(i_n, &rat(5, 3), 2) == Ordering::Greater,
        );
    }
    ok &= chain_link(&mut w, "1 < I(q^k)", i_qk > &one);
    ok &= chain_link(&mut w, "I(q^k) < 5/4", i_qk < &rat(5, 4));
    ok &= chain_link(
        &mut w,
        "5/4 < sqrt(8/5)",
        compare_to_root(&rat(5, 4), &rat(8, 5), 2) == Ordering::Less,
    );
    ok &= chain_link(
        &mut w,
        "sqrt(8/5) < I(n)",
        compare_to_root(i_n, &rat(8, 5), 2) == Ordering::Greater,
    );
    ok &= chain_link(&mut w, "I(n) < 2", i_n < &rat(2, 1));
    ok &= chain_link(
        &mut w,
        "I(q^k) < cbrt(2)",
        compare_to_root(i_qk, &rat(2, 1), 3) == Ordering::Less,
    );
    ok &= chain_link(
        &mut w,
        "cbrt(2) < I(n)",
        compare_to_root(i_n, &rat(2, 1), 3) == Ordering::Greater,
    );
    PredicateReport::new("L5", vec![], ok, w)
}

/// L6: (I(q^k))^2 < I(n^2), given perfection.
pub fn eval_l6(inst: &Instance, mode: EvalMode) -> PredicateReport {
    let c = &inst.comps;
    let lhs = &c.i_q_pow_k * &c.i_q_pow_k;
    let conclusion = lhs < c.i_n_sq;
    let premises = inst.perfection_premise(mode).into_iter().collect();
    PredicateReport::new(
        "L6",
        premises,
        conclusion,
        vec![
            witness("(I(q^k))^2", rational_str(&lhs)),
            witness("I(n^2)", rational_str(&c.i_n_sq)),
            witness(
                "I(q^k)*I(n^2)",
                rational_str(&c.abundancy_product()),
            ),
        ],
    )
}

/// L7 bound at a specific Euler prime: 1 + 1/q + sqrt(2q/(q+1)) > 3*2^(-1/3).
pub fn eval_l7_bound(q: &Natural) -> PredicateReport {
    let four = Natural::from(4u32);
    let q_ge_5 = q >= &Natural::from(5u32);
    let q_1_mod_4 = &(q % &four) == &Natural::one();
    let premises = vec![
        premise("q >= 5", q.to_string(), q_ge_5),
        premise("q = 1 mod 4", format!("{} mod 4", q), q_1_mod_4),
    ];
    let mut witnesses = vec![witness("q", q)];
    let conclusion = if q_ge_5 && q_1_mod_4 {
        let lhs = constants::am_gm_chain_at(q);
        let rhs = constants::three_over_cbrt_2();
        let ord = compare_root_exprs(&lhs, &rhs)
            .expect("chain vs cube-root bound is always separable");
        witnesses.push(witness("1 + 1/q + sqrt(2q/(q+1)) vs 3*2^(-1/3)", format!("{ord:?}")));
        ord == Ordering::Greater
    } else {
        false
    };
    PredicateReport::new("L7", premises, conclusion, witnesses)
}

/// R8: I(q)I(n) > 3*2^(-1/3) - 1, for k = 1.
pub fn eval_r8(inst: &Instance) -> PredicateReport {
    let c = &inst.comps;
    let k_is_1 = inst.form.k() == 1;
    let product = &c.i_q_pow_k * &c.i_n;
    let premises = vec![premise("k = 1", inst.form.k().to_string(), k_is_1)];
    let bound = constants::three_over_cbrt_2_minus_1();
    let ord = compare_root_exprs(&RootExpr::rational(product.clone()), &bound)
        .expect("rational vs single radical is always decidable");
    // I(q) + I(n) - 1 < I(q)I(n) is (I(q)-1)(I(n)-1) > 0 in disguise.
    let sum_minus_one = &c.i_q_pow_k + &c.i_n - Rational::one();
    let sharper = sum_minus_one < product;
    PredicateReport::new(
        "R8",
        premises,
        ord == Ordering::Greater,
        vec![
            witness("I(q)I(n)", rational_str(&product)),
            witness("I(q)I(n) vs 3*2^(-1/3)-1", format!("{ord:?}")),
            witness("I(q)+I(n)-1 < I(q)I(n)", sharper),
        ],
    )
}

/// Reports for Theorem 1, its Lemma 8 key premise, and Corollary 1.
pub struct Theorem1Reports {
    pub t1: PredicateReport,
    pub l8: PredicateReport,
    pub c1: PredicateReport,
}

/// T1: q^k < n iff sigma(q^k) < sigma(n); L8: the key-premise conditional;
/// C1: q^k < n iff sigma(q^k)/n < sigma(n)/q^k.
pub fn eval_t1(inst: &Instance) -> Theorem1Reports {
    let c = &inst.comps;
    let qk_lt_n = c.q_pow_k < c.n;
    let s_qk_lt_s_n = c.sigma_q_pow_k < c.sigma_n;
    let biconditional = qk_lt_n == s_qk_lt_s_n;
    let t1 = PredicateReport::new(
        "T1",
        vec![],
        biconditional,
        vec![
            witness("q^k < n", qk_lt_n),
            witness("sigma(q^k) < sigma(n)", s_qk_lt_s_n),
        ],
    );

    let i_sum = &c.i_q_pow_k + &c.i_n;
    let ratio_sum = &c.ratio_sqk_over_n + &c.ratio_sn_over_qk;
    let key = i_sum < ratio_sum;
    let l8 = PredicateReport::new(
        "L8",
        vec![premise(
            "I(q^k) + I(n) < sigma(q^k)/n + sigma(n)/q^k",
            format!("{} <? {}", rational_str(&i_sum), rational_str(&ratio_sum)),
            key,
        )],
        biconditional,
        vec![
            witness("I(q^k)+I(n)", rational_str(&i_sum)),
            witness("sigma(q^k)/n + sigma(n)/q^k", rational_str(&ratio_sum)),
        ],
    );

    let ratio_bicond = qk_lt_n == (c.ratio_sqk_over_n < c.ratio_sn_over_qk);
    let c1 = PredicateReport::new(
        "C1",
        vec![],
        ratio_bicond,
        vec![
            witness("q^k < n", qk_lt_n),
            witness(
                "sigma(q^k)/n < sigma(n)/q^k",
                c.ratio_sqk_over_n < c.ratio_sn_over_qk,
            ),
        ],
    );
    Theorem1Reports { t1, l8, c1 }
}

fn pair_values(a: &Factorization, b: &Factorization) -> (Rational, Rational, Rational, Rational) {
    (
        nat_to_rational(&a.value()),
        nat_to_rational(&b.value()),
        nat_to_rational(&a.sigma()),
        nat_to_rational(&b.sigma()),
    )
}

/// First Theorem 2 on a generic coprime pair, under the premise I(a) < I(b):
/// sigma(a)/b < sigma(b)/a iff a/b + b/a < sigma(a)/sigma(b) + sigma(b)/sigma(a).
pub fn eval_t2a(a: &Factorization, b: &Factorization) -> PredicateReport {
    let (av, bv, sa, sb) = pair_values(a, b);
    let coprime = a.value().gcd(&b.value()).is_one();
    let ia = a.abundancy();
    let ib = b.abundancy();
    let abundancy_ordered = ia < ib;
    let premises = vec![
        premise(
            "gcd(a, b) = 1",
            format!("gcd({}, {})", a.value(), b.value()),
            coprime,
        ),
        premise(
            "I(a) < I(b)",
            format!("{} <? {}", rational_str(&ia), rational_str(&ib)),
            abundancy_ordered,
        ),
    ];
    let left = &sa / &bv < &sb / &av;
    let right = &av / &bv + &bv / &av < &sa / &sb + &sb / &sa;
    PredicateReport::new(
        "T2a",
        premises,
        left == right,
        vec![
            witness("sigma(a)/b < sigma(b)/a", left),
            witness("a/b + b/a < sigma(a)/sigma(b) + sigma(b)/sigma(a)", right),
        ],
    )
}

/// Remark 10's two unconditional inequalities on a coprime pair a, b >= 2.
pub fn eval_r10(a: &Factorization, b: &Factorization) -> PredicateReport {
    let (av, bv, sa, sb) = pair_values(a, b);
    let two = Natural::from(2u32);
    let coprime = a.value().gcd(&b.value()).is_one();
    let premises = vec![
        premise(
            "a, b >= 2",
            format!("a = {}, b = {}", a.value(), b.value()),
            a.value() >= two && b.value() >= Natural::from(2u32),
        ),
        premise(
            "gcd(a, b) = 1",
            format!("gcd({}, {})", a.value(), b.value()),
            coprime,
        ),
    ];
    let first = &sa / &sb + &sb / &sa < &sa / &bv + &sb / &av;
    let second = &av / &bv + &bv / &av < &sa / &bv + &sb / &av;
    PredicateReport::new(
        "R10",
        premises,
        first && second,
        vec![
            witness(
                "sigma(a)/sigma(b) + sigma(b)/sigma(a) < sigma(a)/b + sigma(b)/a",
                first,
            ),
            witness("a/b + b/a < sigma(a)/b + sigma(b)/a", second),
        ],
    )
}

/// The generic Theorem 1 shape on an arbitrary pair: a < b iff
/// sigma(a) < sigma(b). Not universally true; the sweep uses it to exhibit
/// that Theorem 1 needs the perfection hypothesis.
pub fn eval_t1_generic(a: &Factorization, b: &Factorization) -> PredicateReport {
    let (av, bv, sa, sb) = pair_values(a, b);
    let lt = av < bv;
    let slt = sa < sb;
    let ia = a.abundancy();
    let ib = b.abundancy();
    let i_sum = &ia + &ib;
    let ratio_sum = &sa / &bv + &sb / &av;
    PredicateReport::new(
        "T1-generic",
        vec![],
        lt == slt,
        vec![
            witness("a < b", lt),
            witness("sigma(a) < sigma(b)", slt),
            witness(
                "L8 key premise I(a)+I(b) < sigma(a)/b + sigma(b)/a",
                i_sum < ratio_sum,
            ),
            witness("I(a)+I(b)", rational_str(&i_sum)),
            witness("sigma(a)/b + sigma(b)/a", rational_str(&ratio_sum)),
        ],
    )
}

/// The four strict orderings of {q^k, sigma(q^k), n, sigma(n)} admitted for
/// an odd perfect number; `case_id = None` covers ties and unlisted orders.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderingCase {
    pub case_id: Option<u8>,
    pub chain: String,
}

/// Classifies the realized ordering into cases 1-4.
pub fn eval_l10_case(inst: &Instance) -> OrderingCase {
    let c = &inst.comps;
    let mut labeled: Vec<(&str, &Natural)> = vec![
        ("q^k", &c.q_pow_k),
        ("sigma(q^k)", &c.sigma_q_pow_k),
        ("n", &c.n),
        ("sigma(n)", &c.sigma_n),
    ];
    labeled.sort_by(|x, y| x.1.cmp(y.1));
    let distinct = labeled.windows(2).all(|w| w[0].1 != w[1].1);
    let mut chain = String::new();
    for (i, (name, _)) in labeled.iter().enumerate() {
        if i > 0 {
            let rel = if labeled[i - 1].1 == labeled[i].1 { " = " } else { " < " };
            chain.push_str(rel);
        }
        chain.push_str(name);
    }
    let case_id = if distinct {
        let order: Vec<&str> = labeled.iter().map(|(name, _)| *name).collect();
        match order.as_slice() {
            ["q^k", "sigma(q^k)", "n", "sigma(n)"] => Some(1),
            ["n", "sigma(n)", "q^k", "sigma(q^k)"] => Some(2),
            ["q^k", "n", "sigma(q^k)", "sigma(n)"] => Some(3),
            ["n", "q^k", "sigma(n)", "sigma(q^k)"] => Some(4),
            _ => None,
        }
    } else {
        None
    };
    OrderingCase { case_id, chain }
}

/// L10 as a report: holds iff the realized ordering is one of cases 1-4.
pub fn eval_l10(inst: &Instance) -> PredicateReport {
    let case = eval_l10_case(inst);
    PredicateReport::new(
        "L10",
        vec![],
        case.case_id.is_some(),
        vec![
            witness(
                "case",
                case.case_id.map_or("none".to_string(), |c| c.to_string()),
            ),
            witness("chain", &case.chain),
        ],
    )
}

/// L11: sigma(q^k)/n + sigma(n)/q^k > 2*(8/5)^(1/4), given perfection.
pub fn eval_l11(inst: &Instance, mode: EvalMode) -> PredicateReport {
    let c = &inst.comps;
    let ratio_sum = &c.ratio_sqk_over_n + &c.ratio_sn_over_qk;
    let ord = compare_root_exprs(
        &RootExpr::rational(ratio_sum.clone()),
        &constants::two_quartic_8_5(),
    )
    .expect("rational vs single radical is always decidable");
    // AM-GM: the ratio sum is at least 2*sqrt(I(q^k)*I(n)), their product.
    let half = &ratio_sum / Rational::from_integer(BigInt::from(2));
    let am_gm_ok =
        compare_to_root(&half, &(&c.i_q_pow_k * &c.i_n), 2) != Ordering::Less;
    let premises = inst.perfection_premise(mode).into_iter().collect();
    PredicateReport::new(
        "L11",
        premises,
        ord == Ordering::Greater,
        vec![
            witness("sigma(q^k)/n + sigma(n)/q^k", rational_str(&ratio_sum)),
            witness("vs 2*(8/5)^(1/4)", format!("{ord:?}")),
            witness("AM-GM: ratio sum >= 2*sqrt(I(q^k)I(n))", am_gm_ok),
        ],
    )
}

/// Second Theorem 2: for k = 1 exactly one of sigma(q^k) < n, sigma(n) < q^k.
pub fn eval_t2b(inst: &Instance, mode: EvalMode) -> PredicateReport {
    let c = &inst.comps;
    let left = c.sigma_q_pow_k < c.n;
    let right = c.sigma_n < c.q_pow_k;
    let mut premises: Vec<Premise> = inst.perfection_premise(mode).into_iter().collect();
    premises.push(premise("k = 1", inst.form.k().to_string(), inst.form.k() == 1));
    PredicateReport::new(
        "T2b",
        premises,
        left ^ right,
        vec![
            witness("sigma(q^k) < n", left),
            witness("sigma(n) < q^k", right),
        ],
    )
}

/// R6 (Acquaah-Konyagin): for k = 1, q < n*sqrt(3), checked as q^2 < 3n^2.
pub fn eval_r6(inst: &Instance, mode: EvalMode) -> PredicateReport {
    let q_sq = inst.form.q() * inst.form.q();
    let three_n_sq = Natural::from(3u32) * &inst.comps.n_sq;
    let mut premises: Vec<Premise> = inst.perfection_premise(mode).into_iter().collect();
    premises.push(premise("k = 1", inst.form.k().to_string(), inst.form.k() == 1));
    PredicateReport::new(
        "R6",
        premises,
        q_sq < three_n_sq,
        vec![witness("q^2", &q_sq), witness("3n^2", &three_n_sq)],
    )
}

/// Conjecture 1 status: k = 1 iff sigma(n) < q^k on this instance.
pub fn eval_conjecture1(inst: &Instance) -> PredicateReport {
    let c = &inst.comps;
    let k_is_1 = inst.form.k() == 1;
    let sn_lt_qk = c.sigma_n < c.q_pow_k;
    PredicateReport::new(
        "CONJ1",
        vec![],
        k_is_1 == sn_lt_qk,
        vec![
            witness("k = 1", k_is_1),
            witness("sigma(n) < q^k", sn_lt_qk),
            witness("is_perfect", c.is_perfect),
        ],
    )
}

/// R5: q*sigma(q) != n*sigma(n) for k = 1 forms.
pub fn eval_r5_exclusion(inst: &Instance) -> PredicateReport {
    let c = &inst.comps;
    let k_is_1 = inst.form.k() == 1;
    let lhs = inst.form.q() * &c.sigma_q_pow_k;
    let rhs = &c.n * &c.sigma_n;
    let premises = vec![premise("k = 1", inst.form.k().to_string(), k_is_1)];
    PredicateReport::new(
        "R5",
        premises,
        lhs != rhs,
        vec![witness("q*sigma(q)", &lhs), witness("n*sigma(n)", &rhs)],
    )
}

/// Every instance predicate in ID order, as the CLI reports them.
pub fn eval_all(inst: &Instance, mode: EvalMode) -> Vec<PredicateReport> {
    let t1 = eval_t1(inst);
    let qf = inst.q_factorization();
    let nf = inst.form.n_factorization().clone();
    let mut out = vec![
        eval_l1(inst),
        eval_l2(inst),
        eval_l3(inst),
        eval_l4(inst),
        eval_l5(inst),
        eval_l6(inst, mode),
        eval_l7_bound(inst.form.q()),
        t1.l8,
        eval_l10(inst),
        eval_l11(inst, mode),
        t1.t1,
        eval_t2b(inst, mode),
        t1.c1,
        eval_r2_r3(inst, mode),
        eval_r5_exclusion(inst),
        eval_r6(inst, mode),
        eval_r8(inst),
        eval_conjecture1(inst),
    ];
    if !inst.form.n_factorization().is_one() {
        out.push(eval_t2a(&qf, &nf));
        out.push(eval_r10(&qf, &nf));
    }
    out
}

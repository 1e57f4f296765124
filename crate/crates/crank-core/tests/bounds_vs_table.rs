//! Cross-checks of every asymptotic bound against the exact tables, plus
//! agreement between the exact and analytic certification routes where both
//! apply.

use crank_core::asymptotic::{
    delta_main_term, delta_series, equidist_error_bound, mk_main_term, mu, p_envelope,
    p_lower_bound, p_main_term, series_truncation_index,
};
use crank_core::certify::{
    certify_higher_turan_analytic, certify_log_concavity_analytic, check_higher_turan,
    check_log_concavity, y_k_exact, Status,
};
use crank_core::real::{decide, suggested_precision, RealInterval, Verdict, DEFAULT_MAX_DOUBLINGS};
use crank_core::{CrankParityTable, Rational};
use rayon::prelude::*;
use std::sync::OnceLock;

fn table() -> &'static CrankParityTable {
    static TABLE: OnceLock<CrankParityTable> = OnceLock::new();
    TABLE.get_or_init(|| CrankParityTable::build(2402).expect("table builds"))
}

#[test]
fn p_main_term_envelope_contains_exact_p() {
    let t = table();
    let failures: Vec<u64> = (1..=2000u64)
        .into_par_iter()
        .filter(|&n| {
            let v = decide(suggested_precision(n, 128), DEFAULT_MAX_DOUBLINGS, |p| {
                p_envelope(n, p).contains_integer(t.p(n))
            });
            v != Verdict::True
        })
        .collect();
    assert!(failures.is_empty(), "p envelope failed at {failures:?}");
}

#[test]
fn p_exceeds_its_lower_bound() {
    let t = table();
    let failures: Vec<u64> = (1..=2000u64)
        .into_par_iter()
        .filter(|&n| {
            let v = decide(suggested_precision(n, 128), DEFAULT_MAX_DOUBLINGS, |p| {
                let bound = p_lower_bound(n, p);
                if *t.p(n) > *bound.hi() {
                    Verdict::True
                } else if *t.p(n) <= *bound.lo() {
                    Verdict::False
                } else {
                    Verdict::Undecided
                }
            });
            v != Verdict::True
        })
        .collect();
    assert!(failures.is_empty(), "lower bound failed at {failures:?}");
}

#[test]
fn mk_main_term_is_monotone_on_sweep() {
    let mut prev = mk_main_term(10, 192);
    for n in 11..=1000u64 {
        let cur = mk_main_term(n, 192);
        assert_eq!(prev.cmp_lt(&cur), Verdict::True, "n = {n}");
        prev = cur;
    }
}

#[test]
fn mu_is_strictly_increasing_to_ten_thousand() {
    let failures: Vec<u64> = (1..10_000u64)
        .into_par_iter()
        .filter(|&n| mu(n + 1, 128).lo() <= mu(n, 128).hi())
        .collect();
    assert!(failures.is_empty(), "monotonicity failed at {failures:?}");
}

#[test]
fn equidist_bound_becomes_nonvacuous() {
    // first index where 11578 e^{−μ/4} drops below 1/2
    let half = Rational::from((1u32, 2u32));
    let first = (4..=1000u64)
        .find(|&n| {
            let b = equidist_error_bound(n, 128).unwrap();
            *b.hi() < half
        })
        .expect("bound eventually drops below 1/2");
    assert_eq!(first, 246);
    // stays below afterwards (μ is increasing, bound decreasing)
    for n in first..first + 50 {
        assert!(*equidist_error_bound(n, 128).unwrap().hi() < half);
    }
    let before = equidist_error_bound(first - 1, 128).unwrap();
    assert!(*before.lo() >= half);
}

#[test]
fn y_ratio_boundary_sharpness_from_exact_table() {
    let t = table();
    let one = Rational::from(1);
    assert!(y_k_exact(t, 94, 0).unwrap() < one);
    assert!(y_k_exact(t, 93, 0).unwrap() >= one);
    assert!(y_k_exact(t, 93, 1).unwrap() < one);
    assert!(y_k_exact(t, 92, 1).unwrap() >= one);
}

#[test]
fn analytic_proved_implies_exact_proved_on_overlap() {
    let t = table();
    let analytic = certify_log_concavity_analytic(2011, 2400, 192).unwrap();
    assert_eq!(analytic.status, Status::Proved);
    for k in [0u8, 1] {
        let exact = check_log_concavity(t, k, 2011, 2400).unwrap();
        assert_eq!(exact.status, Status::Proved, "k = {k}");
    }
    let analytic_turan = certify_higher_turan_analytic(2011, 2300, 192).unwrap();
    assert_eq!(analytic_turan.status, Status::Proved);
    for k in [0u8, 1] {
        let exact = check_higher_turan(t, k, 2011, 2300).unwrap();
        assert_eq!(exact.status, Status::Proved, "k = {k}");
    }
}

#[test]
fn expansion_first_term_matches_main_term_plus_reflection() {
    // The j = 1 term of the expansion is cosh(μ/2)-weighted; splitting the
    // cosh gives the main term plus the (−1)ⁿ π/(√6 μ) e^{−μ/2} reflection.
    for n in [3u64, 10, 57, 200] {
        let p = 192;
        let m = mu(n, p);
        let pref = RealInterval::from_u64_prec(6, p)
            .sqrt()
            .mul(&RealInterval::pi(p))
            .div(&m.mul_u64(3));
        let j1 = pref.mul(&m.halve().cosh());
        let j1 = if n % 2 == 0 { j1 } else { j1.neg() };
        let reflection = RealInterval::pi(p)
            .div(&RealInterval::from_u64_prec(6, p).sqrt().mul(&m))
            .mul(&m.halve().neg().exp());
        let reflection = if n % 2 == 0 {
            reflection
        } else {
            reflection.neg()
        };
        let recomposed = delta_main_term(n, p).unwrap().add(&reflection);
        // both routes enclose the same real number
        let mid = recomposed.mid();
        assert!(j1.lo() <= &mid && &mid <= j1.hi(), "n = {n}");
        let mid2 = j1.mid();
        assert!(
            recomposed.lo() <= &mid2 && &mid2 <= recomposed.hi(),
            "n = {n}"
        );
    }
}

#[test]
fn expansion_is_single_term_for_tiny_n() {
    assert_eq!(series_truncation_index(1), 1);
    assert_eq!(series_truncation_index(2), 1);
    // with one term the expansion equals the j = 1 contribution;
    // the full sum is still a valid enclosure target for Δ(1) = −1, Δ(2) = 2
    let t = table();
    for n in [1u64, 2] {
        let s = delta_series(n, 160);
        let main_side = crank_core::asymptotic::delta_series_envelope(n, 160);
        assert_eq!(
            main_side.contains_integer(t.delta(n)),
            Verdict::True,
            "n = {n}"
        );
        assert!(s.width() < crank_core::Float::with_val(64, 1e-20));
    }
}

#[test]
fn p_main_term_positive_and_g_is_half() {
    for n in [1u64, 7, 100, 1500] {
        let p = p_main_term(n, 160);
        assert!(p.is_certainly_positive());
        assert_eq!(p.halve(), mk_main_term(n, 160));
    }
}

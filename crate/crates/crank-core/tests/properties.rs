//! Property tests for the exact kernels and the interval layer.

use crank_core::dedekind::{dedekind_sum, dedekind_sum_direct, reciprocity_holds};
use crank_core::partitions::{brute_force_crank_counts, Partition};
use crank_core::real::{cos_pi, sin_pi, RealInterval};
use crank_core::series::{partition_table, partition_table_by_inversion};
use proptest::prelude::*;
use rug::{Integer, Rational};

fn gcd(a: u64, b: u64) -> u64 {
    Integer::from(a).gcd(&Integer::from(b)).to_u64().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dedekind_fast_equals_direct(h in 1u64..400, j in 2u64..400) {
        let s_fast = dedekind_sum(h as i64, j);
        let s_direct = dedekind_sum_direct(h as i64, j);
        prop_assert_eq!(s_fast, s_direct);
    }

    #[test]
    fn dedekind_reciprocity_random(h in 1u64..500, k in 1u64..500) {
        prop_assume!(gcd(h, k) == 1);
        prop_assert!(reciprocity_holds(h, k).unwrap());
    }

    #[test]
    fn dedekind_antisymmetry(h in 1u64..300, j in 2u64..300) {
        prop_assume!(h < j && gcd(h, j) == 1);
        prop_assert_eq!(dedekind_sum((j - h) as i64, j), -dedekind_sum(h as i64, j));
    }

    #[test]
    fn interval_ops_contain_exact_rationals(
        an in -2000i64..2000, ad in 1u64..1000,
        bn in -2000i64..2000, bd in 1u64..1000,
        prec in 64u32..256,
    ) {
        let a = Rational::from((an, ad as i64));
        let b = Rational::from((bn, bd as i64));
        let ia = RealInterval::from_rational(&a, prec);
        let ib = RealInterval::from_rational(&b, prec);
        prop_assert!(ia.add(&ib).contains_rational(&Rational::from(&a + &b)));
        prop_assert!(ia.sub(&ib).contains_rational(&Rational::from(&a - &b)));
        prop_assert!(ia.mul(&ib).contains_rational(&Rational::from(&a * &b)));
        if b != 0 {
            prop_assert!(ia.div(&ib).contains_rational(&Rational::from(&a / &b)));
        }
        prop_assert!(ia.pow_u32(2).contains_rational(&Rational::from(&a * &a)));
        // sqrt(a²) contains |a|
        let abs_a = Rational::from(a.abs_ref());
        prop_assert!(ia.pow_u32(2).sqrt().contains_rational(&abs_a));
    }

    #[test]
    fn interval_exp_ln_round_trip(n in 1u64..4000, prec in 96u32..256) {
        let x = RealInterval::from_u64_prec(n, prec);
        prop_assert!(x.ln().exp().contains_integer(&Integer::from(n)));
    }

    #[test]
    fn cos_sin_pythagoras(num in -4000i64..4000, den in 1i64..500, prec in 96u32..320) {
        let theta = Rational::from((num, den));
        let c = cos_pi(&theta, prec);
        let s = sin_pi(&theta, prec);
        let one = Rational::from(1);
        prop_assert!(c.pow_u32(2).add(&s.pow_u32(2)).contains_rational(&one));
        // |cos| ≤ 1 with outward rounding slack below 2^-40
        let tol = Rational::from((Integer::from(1), Integer::from(1) << 40));
        let bound = Rational::from(&one + &tol);
        prop_assert!(*c.abs().hi() <= bound);
        prop_assert!(*s.abs().hi() <= bound);
    }

    #[test]
    fn cosh_definition(num in -300i64..300, den in 1i64..60, prec in 96u32..256) {
        // cosh(x) enclosure contains (e^x + e^-x)/2 evaluated independently
        let x = RealInterval::from_rational(&Rational::from((num, den)), prec);
        let direct = x.exp().add(&x.neg().exp()).halve();
        let via = x.cosh();
        let probe = direct.mid();
        // midpoint of one route lies inside the other
        prop_assert!(via.lo() <= &probe && &probe <= via.hi());
    }

    #[test]
    fn crank_bounds(parts in proptest::collection::vec(1u64..30, 0..12)) {
        let p = Partition::new(parts).unwrap();
        let n = p.weight() as i64;
        let c = p.crank();
        prop_assert!(c.abs() <= n.max(0));
    }

    #[test]
    fn oracle_totals_match_partition_count(n in 0u64..22) {
        let (m0, m1) = brute_force_crank_counts(n, 60).unwrap();
        let p = partition_table(n as usize);
        prop_assert_eq!(Integer::from(&m0 + &m1), p[n as usize].clone());
    }

    #[test]
    fn pentagonal_recurrence_agrees_with_inversion(n in 0usize..250) {
        prop_assert_eq!(partition_table(n), partition_table_by_inversion(n));
    }
}

//! The Kloosterman-type exponential sums attached to the crank-parity
//! difference series.
//!
//! Â_j(n) = Σ_{0 ≤ h < 2j, gcd(h,2j)=1} exp(−πi·nh/j − πi(3s(h,2j) − 2s(h,j)))
//!
//! Every phase is an exact rational multiple of π, assembled in rational
//! arithmetic and reduced mod 2 before the single transcendental evaluation
//! per term, so the only inexactness is the directed-rounded cos/sin at the
//! end. Pairing h ↔ 2j−h conjugates the terms, hence the sum is real; the
//! imaginary enclosure collapses around zero and serves as a self-check.

use crate::dedekind::dedekind_sum;
use crate::real::{cos_pi, sin_pi, RealInterval};
use rug::{Integer, Rational};

/// Enclosure of Â_j(n), with the term count actually summed.
#[derive(Debug, Clone)]
pub struct ExpSumValue {
    pub real: RealInterval,
    pub imag: RealInterval,
    pub precision_bits: u32,
    pub term_count: usize,
}

impl ExpSumValue {
    /// Upper bound on |Â_j(n)| from the enclosure.
    pub fn modulus_upper_bound(&self) -> RealInterval {
        let r2 = self.real.abs().pow_u32(2);
        let i2 = self.imag.abs().pow_u32(2);
        r2.add(&i2).sqrt()
    }
}

/// n-independent phase offsets 3s(h,2j) − 2s(h,j) for the admissible h.
pub fn phase_offsets(j: u64) -> Vec<(u64, Rational)> {
    assert!(j >= 1);
    let two_j = 2 * j;
    let mut out = Vec::new();
    for h in 0..two_j {
        if Integer::from(h).gcd(&Integer::from(two_j)) != 1 {
            continue;
        }
        let offset = Rational::from(3u32) * dedekind_sum(h as i64, two_j)
            - Rational::from(2u32) * dedekind_sum(h as i64, j);
        out.push((h, offset));
    }
    out
}

/// Evaluates Â_j(n) at `precision_bits` working precision.
pub fn exp_sum(j: u64, n: u64, precision_bits: u32) -> ExpSumValue {
    assert!(j >= 1, "exp_sum requires j >= 1");
    let offsets = phase_offsets(j);
    let mut real = RealInterval::from_u64(0);
    let mut imag = RealInterval::from_u64(0);
    for (h, offset) in &offsets {
        // θ_h = −nh/j − (3s(h,2j) − 2s(h,j)); the term is exp(iπθ_h).
        let theta = -Rational::from((Integer::from(n) * *h, Integer::from(j))) - offset.clone();
        real = real.add(&cos_pi(&theta, precision_bits));
        imag = imag.add(&sin_pi(&theta, precision_bits));
    }
    ExpSumValue {
        real,
        imag,
        precision_bits,
        term_count: offsets.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Float;

    #[test]
    fn j1_is_parity_sign_exactly() {
        // Â_1(n) = exp(−πin) = (−1)^n: s(1,2) = s(1,1) = 0, so the phase is
        // the exact rational −n and the enclosure is a point.
        for n in 0..=20u64 {
            let v = exp_sum(1, n, 96);
            assert_eq!(v.term_count, 1);
            let expect = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(*v.real.lo(), expect);
            assert_eq!(*v.real.hi(), expect);
            assert_eq!(*v.imag.lo(), 0);
            assert_eq!(*v.imag.hi(), 0);
        }
    }

    #[test]
    fn term_count_is_totient_of_2j() {
        let totient = |m: u64| {
            (1..=m)
                .filter(|&h| Integer::from(h).gcd(&Integer::from(m)) == 1)
                .count()
        };
        for j in 1..=12u64 {
            let v = exp_sum(j, 7, 64);
            assert_eq!(v.term_count, totient(2 * j), "j = {j}");
        }
    }

    #[test]
    fn imaginary_part_encloses_zero() {
        for j in 1..=10u64 {
            for n in [0u64, 3, 11] {
                let v = exp_sum(j, n, 128);
                assert!(v.imag.contains_zero(), "j={j} n={n}");
                assert!(v.imag.width() < Float::with_val(64, 1e-30));
            }
        }
    }

    #[test]
    fn modulus_within_totient_bound() {
        for j in 1..=10u64 {
            let v = exp_sum(j, 5, 128);
            let bound = RealInterval::from_u64(2 * j);
            assert_eq!(
                v.modulus_upper_bound().cmp_le(&bound),
                crate::real::Verdict::True
            );
        }
    }

    #[test]
    fn doubling_precision_nests_and_agrees_tightly() {
        for (j, n) in [(2u64, 0u64), (5, 9), (13, 40)] {
            let coarse = exp_sum(j, n, 96);
            let fine = exp_sum(j, n, 192);
            assert!(coarse.real.encloses(&fine.real), "re j={j} n={n}");
            assert!(coarse.imag.encloses(&fine.imag), "im j={j} n={n}");
            // the two evaluations agree far below 1e-20
            let gap = coarse.real.sub(&fine.real).abs();
            assert!(*gap.hi() < Float::with_val(64, 1e-20), "j={j} n={n}");
        }
    }
}

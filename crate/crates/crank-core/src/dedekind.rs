//! Exact Dedekind sums.
//!
//! s(h, j) = Σ_{r=1}^{j−1} (r/j − ⌊r/j⌋ − 1/2)(hr/j − ⌊hr/j⌋ − 1/2) for j ≥ 2,
//! and s(h, 1) = 0. The sum depends only on h mod j, so h is reduced first.
//!
//! For gcd(h, j) = 1 no product hr/j is an integer, the defining sum agrees
//! with the classical sawtooth form, and the reciprocity law gives an
//! O(log j) Euclidean recursion. The direct O(j) summation is kept both as
//! the fallback for non-coprime arguments and as the oracle the fast path is
//! tested against.

use crate::error::{Error, Result};
use rug::{Integer, Rational};

/// Exact Dedekind sum by the defining formula, with the reciprocity fast
/// path when gcd(h, j) = 1.
pub fn dedekind_sum(h: i64, j: u64) -> Rational {
    assert!(j >= 1, "dedekind_sum requires j >= 1");
    if j == 1 {
        return Rational::new();
    }
    let h = h.rem_euclid(j as i64) as u64;
    if h == 0 {
        // Each factor (hr/j − ⌊hr/j⌋ − 1/2) is −1/2 and Σ (r/j − 1/2) = 0.
        return Rational::new();
    }
    if gcd(h, j) == 1 {
        reciprocity_recursion(h, j)
    } else {
        direct_sum(h, j)
    }
}

/// The literal defining sum, O(j) exact rational work.
pub fn dedekind_sum_direct(h: i64, j: u64) -> Rational {
    assert!(j >= 1);
    if j == 1 {
        return Rational::new();
    }
    let h = h.rem_euclid(j as i64) as u64;
    direct_sum(h, j)
}

fn direct_sum(h: u64, j: u64) -> Rational {
    let jj = Integer::from(j);
    let mut acc = Rational::new();
    for r in 1..j {
        // r/j − ⌊r/j⌋ − 1/2 = r/j − 1/2 since 0 < r < j.
        let left = Rational::from((Integer::from(2 * r) - &jj, Integer::from(2 * j)));
        // hr/j − ⌊hr/j⌋ − 1/2 = ((hr mod j)/j) − 1/2.
        let hr_mod = Integer::from(h) * r % &jj;
        let right = Rational::from((Integer::from(2u32) * hr_mod - &jj, Integer::from(2 * j)));
        acc += left * right;
    }
    acc
}

fn gcd(a: u64, b: u64) -> u64 {
    Integer::from(a).gcd(&Integer::from(b)).to_u64().unwrap()
}

/// s(h, k) for 0 < h < k, gcd(h, k) = 1, by
/// s(h, k) = −1/4 + (h² + k² + 1)/(12hk) − s(k mod h, h).
fn reciprocity_recursion(mut h: u64, mut k: u64) -> Rational {
    let mut acc = Rational::new();
    let mut sign = 1i32;
    loop {
        if k == 1 || h == 0 {
            return acc;
        }
        if h == 1 {
            // s(1, k) = (k−1)(k−2)/(12k), the closed form the recursion
            // bottoms out at.
            let kk = Integer::from(k);
            let num = Integer::from(&kk - 1u32) * Integer::from(&kk - 2u32);
            let term = Rational::from((num, Integer::from(12u32) * kk));
            return if sign > 0 { acc + term } else { acc - term };
        }
        let hh = Integer::from(h);
        let kk = Integer::from(k);
        let num = Integer::from(&hh * &hh) + Integer::from(&kk * &kk) + 1u32;
        let mut term = Rational::from((num, Integer::from(12u32) * &hh * kk));
        term -= Rational::from((1u32, 4u32));
        if sign > 0 {
            acc += term;
        } else {
            acc -= term;
        }
        sign = -sign;
        let next_h = k % h;
        k = h;
        h = next_h;
    }
}

/// Checks the classical reciprocity law
/// s(h, k) + s(k, h) = −1/4 + (h/k + k/h + 1/(hk))/12 in exact rationals.
pub fn reciprocity_holds(h: u64, k: u64) -> Result<bool> {
    if h == 0 || k == 0 || gcd(h, k) != 1 {
        return Err(Error::NotCoprime { h, k });
    }
    let lhs = dedekind_sum(h as i64, k) + dedekind_sum(k as i64, h);
    let hh = Integer::from(h);
    let kk = Integer::from(k);
    let num = Integer::from(&hh * &hh) + Integer::from(&kk * &kk) + 1u32;
    let rhs = Rational::from((num, Integer::from(12u32) * hh * kk)) - Rational::from((1u32, 4u32));
    Ok(lhs == rhs)
}

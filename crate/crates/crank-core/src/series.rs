//! Exact q-series coefficient computations.
//!
//! Everything here is integer arithmetic on truncated power series. The two
//! workhorses are Euler's pentagonal expansion of (q;q)∞ and Jacobi's cube
//! identity for (q;q)∞³; both are sparse (O(√N) terms up to qᴺ), so dividing
//! by them costs O(N·√N) big-integer additions via the usual coefficient
//! recurrence.

use rug::Integer;

/// Sparse series: sorted (exponent, coefficient) pairs with small coefficients.
pub type SparseSeries = Vec<(usize, i64)>;

/// p(0..=max_n) by the pentagonal number recurrence
/// p(n) = Σ_{k≥1} (−1)^{k+1} [p(n − k(3k−1)/2) + p(n − k(3k+1)/2)].
pub fn partition_table(max_n: usize) -> Vec<Integer> {
    let mut table: Vec<Integer> = Vec::with_capacity(max_n + 1);
    table.push(Integer::from(1));
    for i in 1..=max_n {
        let mut sum = Integer::new();
        let mut k = 1usize;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > i {
                break;
            }
            let positive = k % 2 == 1;
            if positive {
                sum += &table[i - g1];
            } else {
                sum -= &table[i - g1];
            }
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= i {
                if positive {
                    sum += &table[i - g2];
                } else {
                    sum -= &table[i - g2];
                }
            }
            k += 1;
        }
        table.push(sum);
    }
    table
}

/// (q^scale; q^scale)∞ = Σ_k (−1)^k q^{scale·k(3k−1)/2} truncated at max_n.
pub fn pentagonal_series(scale: usize, max_n: usize) -> SparseSeries {
    assert!(scale >= 1);
    let mut terms: SparseSeries = vec![(0, 1)];
    let mut k = 1usize;
    loop {
        let g1 = scale * (k * (3 * k - 1) / 2);
        if g1 > max_n {
            break;
        }
        let c = if k % 2 == 1 { -1 } else { 1 };
        terms.push((g1, c));
        let g2 = scale * (k * (3 * k + 1) / 2);
        if g2 <= max_n {
            terms.push((g2, c));
        }
        k += 1;
    }
    terms.sort_unstable_by_key(|&(e, _)| e);
    terms
}

/// (q;q)∞³ = Σ_{k≥0} (−1)^k (2k+1) q^{k(k+1)/2} truncated at max_n.
pub fn jacobi_cube_series(max_n: usize) -> SparseSeries {
    let mut terms: SparseSeries = Vec::new();
    let mut k = 0usize;
    loop {
        let e = k * (k + 1) / 2;
        if e > max_n {
            break;
        }
        let c = (2 * k + 1) as i64;
        terms.push((e, if k % 2 == 0 { c } else { -c }));
        k += 1;
    }
    terms
}

/// Coefficients 0..=max_n of `numerator / divisor` where the divisor is a
/// sparse series with constant term 1: c_n = a_n − Σ_{e≥1} d_e · c_{n−e}.
pub fn divide_by_sparse(
    numerator: &SparseSeries,
    divisor: &SparseSeries,
    max_n: usize,
) -> Vec<Integer> {
    assert_eq!(divisor.first(), Some(&(0, 1)), "divisor must start with 1");
    let mut numer_dense = vec![Integer::new(); max_n + 1];
    for &(e, c) in numerator {
        if e <= max_n {
            numer_dense[e] += c;
        }
    }
    let mut out: Vec<Integer> = Vec::with_capacity(max_n + 1);
    for n in 0..=max_n {
        let mut c = numer_dense[n].clone();
        for &(e, d) in divisor.iter().skip(1) {
            if e > n {
                break;
            }
            match d {
                1 => c -= &out[n - e],
                -1 => c += &out[n - e],
                _ => c -= Integer::from(d) * &out[n - e],
            }
        }
        out.push(c);
    }
    out
}

/// p(0..=max_n) as the inverse of the sparse pentagonal series. Independent
/// code path from `partition_table`, used for two-method agreement checks.
pub fn partition_table_by_inversion(max_n: usize) -> Vec<Integer> {
    divide_by_sparse(&vec![(0, 1)], &pentagonal_series(1, max_n), max_n)
}

/// Δ(0..=max_n) where Δ(n) = M₀(n) − M₁(n), via
/// Σ Δ(n)qⁿ = (q;q)∞³ / (q²;q²)∞² with the n = 1 correction.
///
/// The crank generating function is anomalous at q¹: the series coefficient
/// there is −3 while the true value from the crank definition is −1, so the
/// raw division result gets +2 added at n = 1. The correction is validated
/// against the brute-force oracle over its whole range, not just n = 1.
pub fn delta_table(max_n: usize) -> Vec<Integer> {
    let numer = jacobi_cube_series(max_n);
    let even_euler = pentagonal_series(2, max_n);
    // (q²;q²)∞² divides twice.
    let partial = divide_by_sparse(&numer, &even_euler, max_n);
    let mut delta = divide_dense_by_sparse(&partial, &even_euler, max_n);
    if max_n >= 1 {
        delta[1] += 2;
    }
    delta
}

fn divide_dense_by_sparse(
    numerator: &[Integer],
    divisor: &SparseSeries,
    max_n: usize,
) -> Vec<Integer> {
    assert_eq!(divisor.first(), Some(&(0, 1)));
    let mut out: Vec<Integer> = Vec::with_capacity(max_n + 1);
    for n in 0..=max_n {
        let mut c = numerator[n].clone();
        for &(e, d) in divisor.iter().skip(1) {
            if e > n {
                break;
            }
            match d {
                1 => c -= &out[n - e],
                -1 => c += &out[n - e],
                _ => c -= Integer::from(d) * &out[n - e],
            }
        }
        out.push(c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::brute_force_crank_counts;

    #[test]
    fn partition_values() {
        let p = partition_table(100);
        assert_eq!(p[0], 1);
        assert_eq!(p[1], 1);
        assert_eq!(p[4], 5);
        assert_eq!(p[10], 42);
        assert_eq!(p[100], Integer::from_str_radix("190569292", 10).unwrap());
    }

    #[test]
    fn two_method_agreement() {
        let a = partition_table(600);
        let b = partition_table_by_inversion(600);
        assert_eq!(a, b);
    }

    #[test]
    fn delta_small_values() {
        let d = delta_table(10);
        assert_eq!(d[0], 1);
        assert_eq!(d[1], -1);
        assert_eq!(d[2], 2);
        assert_eq!(d[3], -1);
        assert_eq!(d[4], 5);
    }

    #[test]
    fn delta_matches_oracle() {
        let d = delta_table(25);
        for n in 0..=25u64 {
            let (m0, m1) = brute_force_crank_counts(n, 60).unwrap();
            assert_eq!(d[n as usize], m0 - m1, "n = {n}");
        }
    }

    #[test]
    fn uncorrected_series_gives_minus_three_at_one() {
        let numer = jacobi_cube_series(4);
        let even = pentagonal_series(2, 4);
        let partial = divide_by_sparse(&numer, &even, 4);
        let raw = divide_dense_by_sparse(&partial, &even, 4);
        assert_eq!(raw[1], -3);
    }

    #[test]
    fn jacobi_cube_equals_triple_product_of_pentagonal() {
        // (q;q)³ expanded by convolving the pentagonal series three times.
        let n = 120usize;
        let e = pentagonal_series(1, n);
        let mut dense = vec![Integer::new(); n + 1];
        for &(a, ca) in &e {
            for &(b, cb) in &e {
                if a + b > n {
                    continue;
                }
                for &(c, cc) in &e {
                    if a + b + c <= n {
                        dense[a + b + c] += ca * cb * cc;
                    }
                }
            }
        }
        let sparse = jacobi_cube_series(n);
        let mut expect = vec![Integer::new(); n + 1];
        for &(ex, c) in &sparse {
            expect[ex] += c;
        }
        assert_eq!(dense, expect);
    }
}

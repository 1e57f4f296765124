//! Partitions, the crank statistic, and the brute-force counting oracle.

use crate::error::{Error, Result};
use rug::Integer;

/// Default cap for brute-force enumeration. p(60) ≈ 9.7·10⁵ partitions, so a
/// full sweep up to the cap stays in the seconds range.
pub const DEFAULT_ENUMERATION_CAP: u64 = 60;

/// An integer partition: positive parts stored in non-increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    /// Builds a partition from parts in any order; rejects zero parts.
    pub fn new(mut parts: Vec<u64>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::ZeroPart);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().sum()
    }

    /// The crank: the largest part if the partition contains no ones, and
    /// otherwise the number of parts larger than the number of ones minus
    /// the number of ones. The empty partition gets crank 0 by convention
    /// (this makes the count of even cranks at n = 0 equal to 1).
    pub fn crank(&self) -> i64 {
        crank_of_sorted_desc(&self.parts)
    }
}

fn crank_of_sorted_desc(parts: &[u64]) -> i64 {
    if parts.is_empty() {
        return 0;
    }
    let ones = parts.iter().rev().take_while(|&&p| p == 1).count() as u64;
    if ones == 0 {
        parts[0] as i64
    } else {
        let larger = parts.iter().take_while(|&&p| p > ones).count() as i64;
        larger - ones as i64
    }
}

/// Counts partitions of `n` with even and odd crank by full enumeration.
///
/// Exponential in n; this is the independent oracle that validates the
/// q-series tables, not a production path. Rejects `n` above `cap`.
pub fn brute_force_crank_counts(n: u64, cap: u64) -> Result<(Integer, Integer)> {
    if n > cap {
        return Err(Error::EnumerationCap { n, cap });
    }
    if n == 0 {
        // The empty partition has crank 0, counted even.
        return Ok((Integer::from(1), Integer::from(0)));
    }
    let mut even = 0u64;
    let mut odd = 0u64;
    let mut stack: Vec<u64> = Vec::with_capacity(n as usize);
    enumerate(n, n, &mut stack, &mut even, &mut odd);
    Ok((Integer::from(even), Integer::from(odd)))
}

fn enumerate(remaining: u64, max_part: u64, stack: &mut Vec<u64>, even: &mut u64, odd: &mut u64) {
    if remaining == 0 {
        if crank_of_sorted_desc(stack) % 2 == 0 {
            *even += 1;
        } else {
            *odd += 1;
        }
        return;
    }
    let mut m = max_part.min(remaining);
    while m >= 1 {
        stack.push(m);
        enumerate(remaining - m, m, stack, even, odd);
        stack.pop();
        m -= 1;
    }
}

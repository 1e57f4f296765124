//! The exact crank-parity table and its cache format.

use crate::error::{Error, Result};
use crate::series::{delta_table, partition_table};
use rug::Integer;
use std::io::{BufRead, BufReader, Read, Write};

/// Exact sequences p(n), Δ(n) = M₀(n) − M₁(n), M₀(n), M₁(n) for 0 ≤ n ≤ max_n.
///
/// Construction checks the defining identities and fails loudly if any is
/// violated; a finished table is immutable and safe to share across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrankParityTable {
    max_n: u64,
    p: Vec<Integer>,
    delta: Vec<Integer>,
    m0: Vec<Integer>,
    m1: Vec<Integer>,
}

impl CrankParityTable {
    /// Builds the table from the q-series fast paths.
    pub fn build(max_n: u64) -> Result<Self> {
        let p = partition_table(max_n as usize);
        let delta = delta_table(max_n as usize);
        Self::from_p_delta(p, delta)
    }

    /// Assembles and validates a table from p and Δ sequences.
    ///
    /// Checked at every index: p(n) and Δ(n) have equal parity, the derived
    /// counts M₀(n) = (p+Δ)/2 and M₁(n) = (p−Δ)/2 are nonnegative, and the
    /// sign alternation (−1)ⁿ·Δ(n) > 0 holds.
    pub fn from_p_delta(p: Vec<Integer>, delta: Vec<Integer>) -> Result<Self> {
        if p.is_empty() || p.len() != delta.len() {
            return Err(Error::InvariantViolation {
                n: 0,
                identity: format!(
                    "sequence lengths differ: p has {}, delta has {}",
                    p.len(),
                    delta.len()
                ),
            });
        }
        let max_n = (p.len() - 1) as u64;
        let mut m0 = Vec::with_capacity(p.len());
        let mut m1 = Vec::with_capacity(p.len());
        for n in 0..p.len() {
            let pn = &p[n];
            let dn = &delta[n];
            if pn.is_odd() != dn.is_odd() {
                return Err(Error::InvariantViolation {
                    n: n as u64,
                    identity: "delta(n) ≡ p(n) (mod 2)".into(),
                });
            }
            let sign_ok = if n % 2 == 0 { *dn > 0 } else { *dn < 0 };
            if !sign_ok {
                return Err(Error::InvariantViolation {
                    n: n as u64,
                    identity: "(-1)^n * delta(n) > 0".into(),
                });
            }
            let even: Integer = Integer::from(pn + dn) >> 1;
            let odd: Integer = Integer::from(pn - dn) >> 1;
            if even < 0 || odd < 0 {
                return Err(Error::InvariantViolation {
                    n: n as u64,
                    identity: "m0(n) >= 0 and m1(n) >= 0".into(),
                });
            }
            m0.push(even);
            m1.push(odd);
        }
        Ok(CrankParityTable {
            max_n,
            p,
            delta,
            m0,
            m1,
        })
    }

    pub fn max_n(&self) -> u64 {
        self.max_n
    }

    pub fn p(&self, n: u64) -> &Integer {
        &self.p[n as usize]
    }

    pub fn delta(&self, n: u64) -> &Integer {
        &self.delta[n as usize]
    }

    pub fn m0(&self, n: u64) -> &Integer {
        &self.m0[n as usize]
    }

    pub fn m1(&self, n: u64) -> &Integer {
        &self.m1[n as usize]
    }

    /// M_k(n) for k ∈ {0, 1}.
    pub fn mk(&self, k: u8, n: u64) -> &Integer {
        match k {
            0 => self.m0(n),
            1 => self.m1(n),
            _ => panic!("crank parity class k must be 0 or 1, got {k}"),
        }
    }

    pub fn covers(&self, from: u64, to: u64) -> bool {
        from <= to && to <= self.max_n
    }

    /// Writes the newline-delimited cache format:
    /// a header line `crank-parity-table v1 max_n=<N>`, then one line
    /// `n <p> <delta>` per index, in decimal.
    pub fn write_to<W: Write>(&self, w: &mut W) -> Result<()> {
        writeln!(w, "crank-parity-table v1 max_n={}", self.max_n)?;
        for n in 0..=self.max_n as usize {
            writeln!(w, "{} {} {}", n, self.p[n], self.delta[n])?;
        }
        Ok(())
    }

    /// Reads the cache format and revalidates all construction invariants.
    pub fn read_from<R: Read>(r: R) -> Result<Self> {
        let reader = BufReader::new(r);
        let mut lines = reader.lines();
        let header = lines.next().ok_or(Error::MalformedCache {
            line: 1,
            message: "empty file".into(),
        })??;
        let max_n = parse_header(&header).ok_or_else(|| Error::MalformedCache {
            line: 1,
            message: format!("bad header: {header:?}"),
        })?;
        let count = max_n as usize + 1;
        let mut p = Vec::with_capacity(count);
        let mut delta = Vec::with_capacity(count);
        for (i, line) in lines.enumerate() {
            let line = line?;
            if line.is_empty() {
                continue;
            }
            let lineno = i + 2;
            let mut fields = line.split_ascii_whitespace();
            let n: usize = fields.next().and_then(|s| s.parse().ok()).ok_or_else(|| {
                Error::MalformedCache {
                    line: lineno,
                    message: "missing index".into(),
                }
            })?;
            if n != p.len() {
                return Err(Error::MalformedCache {
                    line: lineno,
                    message: format!("expected index {}, found {}", p.len(), n),
                });
            }
            let pv = fields
                .next()
                .and_then(|s| Integer::from_str_radix(s, 10).ok())
                .ok_or_else(|| Error::MalformedCache {
                    line: lineno,
                    message: "missing or bad p value".into(),
                })?;
            let dv = fields
                .next()
                .and_then(|s| Integer::from_str_radix(s, 10).ok())
                .ok_or_else(|| Error::MalformedCache {
                    line: lineno,
                    message: "missing or bad delta value".into(),
                })?;
            p.push(pv);
            delta.push(dv);
        }
        if p.len() != count {
            return Err(Error::MalformedCache {
                line: p.len() + 1,
                message: format!("expected {} rows, found {}", count, p.len()),
            });
        }
        Self::from_p_delta(p, delta)
    }
}

fn parse_header(header: &str) -> Option<u64> {
    let rest = header.strip_prefix("crank-parity-table v1 max_n=")?;
    rest.trim().parse().ok()
}

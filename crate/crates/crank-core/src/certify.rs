//! Theorem certification: exact finite-range checks over the crank-parity
//! table, and analytic certificates from the asymptotic envelopes.
//!
//! Every rigorous comparison follows one discipline: exact integers or
//! rationals on one side, outward-rounded enclosures on the other, decided
//! as true / false / undecided, with undecided triggering precision doubling
//! (default cap 8) before a run is reported indeterminate. Certification
//! over a range parallelizes across n and reduces deterministically, so
//! parallel and serial runs produce identical certificates.

use crate::asymptotic::{
    equidist_error_bound, first_n_with_mu_at_least, mk_envelope, mu, mu_at_least, y_ratio_bounds,
    Y_BOUNDS_MU_THRESHOLD,
};
use crate::error::{Error, Result};
use crate::real::{decide, suggested_precision, RealInterval, Verdict, DEFAULT_MAX_DOUBLINGS};
use crate::table::CrankParityTable;
use rayon::prelude::*;
use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TheoremId {
    SignAlternation,
    DExcess,
    Convexity,
    LogConcavity,
    HigherTuran,
    EnvelopeContainment,
    Equidistribution,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    Exact,
    Analytic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Proved,
    ViolationsFound,
    Indeterminate,
}

/// Machine-readable verdict for one theorem on one range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub theorem: TheoremId,
    pub k: Option<u8>,
    pub n_from: u64,
    pub n_to: u64,
    pub method: Method,
    pub status: Status,
    pub violations: Vec<u64>,
    pub precision_bits: Option<u32>,
    pub hypothesis: Option<String>,
    pub notes: Vec<String>,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    theorem: TheoremId,
    k: Option<u8>,
    n_from: u64,
    n_to: u64,
    method: Method,
    precision_bits: Option<u32>,
    hypothesis: Option<String>,
    mut notes: Vec<String>,
    results: Vec<(u64, Verdict)>,
) -> Certificate {
    let mut violations: Vec<u64> = results
        .iter()
        .filter(|(_, v)| *v == Verdict::False)
        .map(|(n, _)| *n)
        .collect();
    violations.sort_unstable();
    let undecided: Vec<u64> = results
        .iter()
        .filter(|(_, v)| *v == Verdict::Undecided)
        .map(|(n, _)| *n)
        .collect();
    let status = if !violations.is_empty() {
        Status::ViolationsFound
    } else if !undecided.is_empty() {
        Status::Indeterminate
    } else {
        Status::Proved
    };
    if !undecided.is_empty() {
        notes.push(format!(
            "undecided at precision cap for n in {:?}",
            &undecided[..undecided.len().min(16)]
        ));
    }
    Certificate {
        theorem,
        k,
        n_from,
        n_to,
        method,
        status,
        violations,
        precision_bits,
        hypothesis,
        notes,
    }
}

fn vacuous(
    theorem: TheoremId,
    k: Option<u8>,
    n_from: u64,
    n_to: u64,
    method: Method,
) -> Certificate {
    Certificate {
        theorem,
        k,
        n_from,
        n_to,
        method,
        status: Status::Proved,
        violations: Vec::new(),
        precision_bits: None,
        hypothesis: None,
        notes: vec!["empty range: proved vacuously".into()],
    }
}

fn require_window(
    table: &CrankParityTable,
    from: u64,
    to: u64,
    min_from: u64,
    tail: u64,
) -> Result<()> {
    let max_ok = table.max_n().saturating_sub(tail);
    if from < min_from || to > max_ok {
        return Err(Error::RangeNotCovered {
            from,
            to,
            min: min_from,
            max: max_ok,
        });
    }
    Ok(())
}

/// Exact ratio Y_k(n) = M_k(n−1)·M_k(n+1) / M_k(n)².
pub fn y_k_exact(table: &CrankParityTable, n: u64, k: u8) -> Result<Rational> {
    assert!(k <= 1);
    if n > table.max_n() {
        return Err(Error::RangeNotCovered {
            from: n,
            to: n,
            min: 1,
            max: table.max_n(),
        });
    }
    let denom = table.mk(k, n);
    if denom.is_zero() {
        return Err(Error::ZeroDenominator { n, k });
    }
    if n < 1 || n + 1 > table.max_n() {
        return Err(Error::RangeNotCovered {
            from: n,
            to: n,
            min: 1,
            max: table.max_n().saturating_sub(1),
        });
    }
    let num = Integer::from(table.mk(k, n - 1) * table.mk(k, n + 1));
    let den = Integer::from(denom * denom);
    Ok(Rational::from((num, den)))
}

/// Exact check of (−1)ⁿ(M₀(n) − M₁(n)) > 0 over [from, to].
pub fn check_sign_alternation(table: &CrankParityTable, from: u64, to: u64) -> Result<Certificate> {
    if from > to {
        return Ok(vacuous(
            TheoremId::SignAlternation,
            None,
            from,
            to,
            Method::Exact,
        ));
    }
    require_window(table, from, to, 0, 0)?;
    let results: Vec<(u64, Verdict)> = (from..=to)
        .map(|n| {
            let d = table.delta(n);
            let ok = if n % 2 == 0 { *d > 0 } else { *d < 0 };
            (n, if ok { Verdict::True } else { Verdict::False })
        })
        .collect();
    Ok(assemble(
        TheoremId::SignAlternation,
        None,
        from,
        to,
        Method::Exact,
        None,
        Some("n >= 0".into()),
        Vec::new(),
        results,
    ))
}

/// Exact check of M_k(n−1) + M_k(n+1) > 2·M_k(n) over [from, to].
pub fn check_convexity(table: &CrankParityTable, k: u8, from: u64, to: u64) -> Result<Certificate> {
    assert!(k <= 1);
    if from > to {
        return Ok(vacuous(
            TheoremId::Convexity,
            Some(k),
            from,
            to,
            Method::Exact,
        ));
    }
    require_window(table, from, to, 1, 1)?;
    let results: Vec<(u64, Verdict)> = (from..=to)
        .map(|n| {
            let sum = Integer::from(table.mk(k, n - 1) + table.mk(k, n + 1));
            let twice = Integer::from(table.mk(k, n) * 2u32);
            (
                n,
                if sum > twice {
                    Verdict::True
                } else {
                    Verdict::False
                },
            )
        })
        .collect();
    Ok(assemble(
        TheoremId::Convexity,
        Some(k),
        from,
        to,
        Method::Exact,
        None,
        None,
        Vec::new(),
        results,
    ))
}

/// Exact check of M_k(n)² ≥ M_k(n−1)·M_k(n+1) over [from, to].
pub fn check_log_concavity(
    table: &CrankParityTable,
    k: u8,
    from: u64,
    to: u64,
) -> Result<Certificate> {
    assert!(k <= 1);
    if from > to {
        return Ok(vacuous(
            TheoremId::LogConcavity,
            Some(k),
            from,
            to,
            Method::Exact,
        ));
    }
    require_window(table, from, to, 1, 1)?;
    let results: Vec<(u64, Verdict)> = (from..=to)
        .map(|n| {
            let square = Integer::from(table.mk(k, n) * table.mk(k, n));
            let product = Integer::from(table.mk(k, n - 1) * table.mk(k, n + 1));
            (
                n,
                if square >= product {
                    Verdict::True
                } else {
                    Verdict::False
                },
            )
        })
        .collect();
    Ok(assemble(
        TheoremId::LogConcavity,
        Some(k),
        from,
        to,
        Method::Exact,
        None,
        None,
        Vec::new(),
        results,
    ))
}

/// Exact check of the order-3 Turán inequality
/// 4(M_k(n)² − M_k(n−1)M_k(n+1))(M_k(n+1)² − M_k(n)M_k(n+2))
///   ≥ (M_k(n)M_k(n+1) − M_k(n−1)M_k(n+2))²
/// over [from, to].
pub fn check_higher_turan(
    table: &CrankParityTable,
    k: u8,
    from: u64,
    to: u64,
) -> Result<Certificate> {
    assert!(k <= 1);
    if from > to {
        return Ok(vacuous(
            TheoremId::HigherTuran,
            Some(k),
            from,
            to,
            Method::Exact,
        ));
    }
    require_window(table, from, to, 1, 2)?;
    let results: Vec<(u64, Verdict)> = (from..=to)
        .into_par_iter()
        .map(|n| {
            let a = table.mk(k, n - 1);
            let b = table.mk(k, n);
            let c = table.mk(k, n + 1);
            let d = table.mk(k, n + 2);
            let first = Integer::from(b * b) - Integer::from(a * c);
            let second = Integer::from(c * c) - Integer::from(b * d);
            let lhs = 4u32 * first * second;
            let inner = Integer::from(b * c) - Integer::from(a * d);
            let rhs = Integer::from(&inner * &inner);
            (
                n,
                if lhs >= rhs {
                    Verdict::True
                } else {
                    Verdict::False
                },
            )
        })
        .collect();
    Ok(assemble(
        TheoremId::HigherTuran,
        Some(k),
        from,
        to,
        Method::Exact,
        None,
        None,
        Vec::new(),
        results,
    ))
}

/// Outcome of the d-excess check: the resolved threshold and the exact
/// verification certificate from the threshold up to the table end.
#[derive(Debug, Clone)]
pub struct DExcessCheck {
    pub d: u64,
    pub n0: u64,
    pub certificate: Certificate,
}

/// Resolves n₀(d) = ⌈(24/π²)·ln(7d/2)² + 1/24⌉ by escalating precision
/// until the two endpoint ceilings coincide. The argument is transcendental,
/// so ties cannot occur; the cap guards against silent wrong ceilings.
pub fn d_excess_threshold(d: u64) -> Result<u64> {
    assert!(d >= 1);
    let mut p = 64u32;
    for _ in 0..=DEFAULT_MAX_DOUBLINGS {
        let pi2 = RealInterval::pi(p).pow_u32(2);
        let coeff = RealInterval::from_u64_prec(24, p).div(&pi2);
        let log = RealInterval::from_rational(&Rational::from((7 * d, 2)), p).ln();
        let x = coeff.mul(&log.pow_u32(2)).add(&RealInterval::from_rational(
            &Rational::from((1u32, 24u32)),
            p,
        ));
        let lo_ceil = x.lo().clone().ceil();
        let hi_ceil = x.hi().clone().ceil();
        if lo_ceil == hi_ceil {
            let n0 = lo_ceil
                .to_integer()
                .expect("finite ceiling")
                .to_u64()
                .expect("threshold fits u64");
            return Ok(n0);
        }
        p = p.saturating_mul(2);
    }
    Err(Error::IndeterminateCeiling {
        d,
        doublings: DEFAULT_MAX_DOUBLINGS,
    })
}

/// Exact verification of (−1)ⁿ(M₀(n) − M₁(n)) > d for n₀(d) ≤ n ≤ table end.
pub fn check_d_excess(table: &CrankParityTable, d: u64) -> Result<DExcessCheck> {
    let n0 = d_excess_threshold(d)?;
    if n0 > table.max_n() {
        return Err(Error::RangeNotCovered {
            from: n0,
            to: table.max_n(),
            min: 0,
            max: table.max_n(),
        });
    }
    let bound = Integer::from(d);
    let results: Vec<(u64, Verdict)> = (n0..=table.max_n())
        .map(|n| {
            let signed = if n % 2 == 0 {
                table.delta(n).clone()
            } else {
                Integer::from(-table.delta(n))
            };
            (
                n,
                if signed > bound {
                    Verdict::True
                } else {
                    Verdict::False
                },
            )
        })
        .collect();
    let certificate = assemble(
        TheoremId::DExcess,
        None,
        n0,
        table.max_n(),
        Method::Exact,
        None,
        Some(format!("n >= ceil((24/pi^2) ln(7d/2)^2 + 1/24) = {n0}")),
        vec![format!("d = {d}")],
        results,
    );
    Ok(DExcessCheck { d, n0, certificate })
}

/// Rigorous check of the supporting lower bound
/// (−1)ⁿ(M₀(n) − M₁(n)) > (1/7)·μ(n)^{1/2}·e^{μ(n)/4} over [from, to].
pub fn check_d_excess_support(
    table: &CrankParityTable,
    from: u64,
    to: u64,
    base_prec: u32,
) -> Result<Certificate> {
    if from > to {
        return Ok(vacuous(TheoremId::DExcess, None, from, to, Method::Exact));
    }
    require_window(table, from, to, 1, 0)?;
    let results: Vec<(u64, Verdict)> = (from..=to)
        .into_par_iter()
        .map(|n| {
            let signed = if n % 2 == 0 {
                table.delta(n).clone()
            } else {
                Integer::from(-table.delta(n))
            };
            let v = decide(
                suggested_precision(n, base_prec),
                DEFAULT_MAX_DOUBLINGS,
                |p| {
                    let m = mu(n, p);
                    let bound = m.sqrt().mul(&m.div_u64(4).exp()).div_u64(7);
                    if signed > *bound.hi() {
                        Verdict::True
                    } else if signed <= *bound.lo() {
                        Verdict::False
                    } else {
                        Verdict::Undecided
                    }
                },
            );
            (n, v)
        })
        .collect();
    Ok(assemble(
        TheoremId::DExcess,
        None,
        from,
        to,
        Method::Exact,
        Some(base_prec),
        Some("n >= 1".into()),
        vec!["supporting bound (1/7) mu^(1/2) e^(mu/4)".into()],
        results,
    ))
}

fn gate_range_start(from: u64, threshold: u32, base_prec: u32) -> Result<()> {
    if from < 1 {
        return Err(Error::HypothesisNotMet {
            n: from,
            hypothesis: format!("mu(n) >= {threshold}"),
        });
    }
    match mu_at_least(from, threshold, base_prec) {
        Verdict::True => Ok(()),
        Verdict::False => Err(Error::HypothesisNotMet {
            n: from,
            hypothesis: format!("mu(n) >= {threshold}"),
        }),
        Verdict::Undecided => Err(Error::HypothesisUndecided {
            n: from,
            hypothesis: format!("mu(n) >= {threshold}"),
            precision: base_prec,
        }),
    }
}

fn mu_translation_note(threshold: u32) -> String {
    format!(
        "gated in mu-space; smallest n with mu(n) >= {threshold} is {}",
        first_n_with_mu_at_least(threshold)
    )
}

/// Analytic log-concavity certificate: for each n in [from, to], certifies
/// that the Y_k(n) upper bound is < 1 by interval arithmetic. Valid for both
/// crank parity classes simultaneously. Requires μ(from) ≥ 115.
pub fn certify_log_concavity_analytic(from: u64, to: u64, base_prec: u32) -> Result<Certificate> {
    gate_range_start(from, Y_BOUNDS_MU_THRESHOLD, base_prec)?;
    let one = Integer::from(1);
    let results: Vec<(u64, Verdict)> = (from..=to.max(from))
        .into_par_iter()
        .map(|n| {
            let v = decide(base_prec, DEFAULT_MAX_DOUBLINGS, |p| {
                match y_ratio_bounds(n, 0, p) {
                    Ok(env) => {
                        if *env.upper.hi() < one {
                            Verdict::True
                        } else if *env.upper.lo() >= one {
                            Verdict::False
                        } else {
                            Verdict::Undecided
                        }
                    }
                    Err(Error::HypothesisUndecided { .. }) => Verdict::Undecided,
                    Err(e) => unreachable!("mu increases with n past a certified gate: {e}"),
                }
            });
            (n, v)
        })
        .collect();
    Ok(assemble(
        TheoremId::LogConcavity,
        None,
        from,
        to,
        Method::Analytic,
        Some(base_prec),
        Some(format!("mu(n) >= {Y_BOUNDS_MU_THRESHOLD}")),
        vec![
            "bound extends to all n above this range".into(),
            mu_translation_note(Y_BOUNDS_MU_THRESHOLD),
        ],
        results,
    ))
}

/// Jia's criterion on enclosures of two consecutive ratio values:
/// certifies (√5−1)/2 ≤ u, u < v, v < 1 and u + √((1−u)³) > v, which
/// together imply 4(1−u)(1−v) − (1−uv)² > 0.
/// Returns `True` (proved), `False` (some hypothesis certified false) or
/// `Undecided`.
pub fn jia_criterion(u: &RealInterval, v: &RealInterval, prec: u32) -> Verdict {
    let one = RealInterval::from_u64_prec(1, prec);
    let golden = RealInterval::from_u64_prec(5, prec)
        .sqrt()
        .sub(&one)
        .halve();
    let floor_ok = golden.cmp_le(u);
    let ordered = u.cmp_lt(v);
    let below_one = v.cmp_lt(&one);
    let gap = u.add(&one.sub(u).clamp_nonnegative().pow_u32(3).sqrt());
    let gap_ok = gap.cmp_gt(v);
    floor_ok.and(ordered).and(below_one).and(gap_ok)
}

/// Interval evaluation of the order-3 Turán form at consecutive ratio
/// enclosures, in difference coordinates. With c = 1 − u and t = v − u,
///   4(1−u)(1−v) − (1−uv)² = 4c³ − c⁴ − 6c²t + 2c³t − t²(1−c)²,
/// which cancels the dominant dependency between u and v and stays decidable
/// down to the μ ≥ 115 edge, where the direct (u, v) box evaluation does not.
fn turan_form_positive(u: &RealInterval, v: &RealInterval, prec: u32) -> Verdict {
    let one = RealInterval::from_u64_prec(1, prec);
    let c = one.sub(u);
    let t = v.sub(u);
    let c2 = c.pow_u32(2);
    let c3 = c2.mul(&c);
    let c4 = c3.mul(&c);
    let f = c3
        .mul_u64(4)
        .sub(&c4)
        .sub(&c2.mul(&t).mul_u64(6))
        .add(&c3.mul(&t).mul_u64(2))
        .sub(&t.pow_u32(2).mul(&one.sub(&c).pow_u32(2)));
    if f.is_certainly_positive() {
        Verdict::True
    } else if *f.hi() <= 0 {
        Verdict::False
    } else {
        Verdict::Undecided
    }
}

/// Analytic order-3 Turán certificate on [from, to]: builds Y-ratio
/// envelopes at n and n+1, certifies the quartic form positive by interval
/// evaluation, and cross-checks with Jia's criterion; the two routes must
/// agree or the index is reported undecided. Requires μ(from) ≥ 115.
pub fn certify_higher_turan_analytic(from: u64, to: u64, base_prec: u32) -> Result<Certificate> {
    gate_range_start(from, Y_BOUNDS_MU_THRESHOLD, base_prec)?;
    let results: Vec<(u64, Verdict)> = (from..=to.max(from))
        .into_par_iter()
        .map(|n| {
            let v = decide(base_prec, DEFAULT_MAX_DOUBLINGS, |p| {
                let (u_env, v_env) = match (y_ratio_bounds(n, 0, p), y_ratio_bounds(n + 1, 0, p)) {
                    (Ok(a), Ok(b)) => (a, b),
                    (Err(Error::HypothesisUndecided { .. }), _)
                    | (_, Err(Error::HypothesisUndecided { .. })) => return Verdict::Undecided,
                    (Err(e), _) | (_, Err(e)) => {
                        unreachable!("mu increases with n past a certified gate: {e}")
                    }
                };
                let u = u_env.hull();
                let v = v_env.hull();
                let primary = turan_form_positive(&u, &v, p);
                let cross = jia_criterion(&u, &v, p);
                match (primary, cross) {
                    (Verdict::True, Verdict::True) => Verdict::True,
                    (Verdict::False, Verdict::False) => Verdict::False,
                    _ => Verdict::Undecided,
                }
            });
            (n, v)
        })
        .collect();
    Ok(assemble(
        TheoremId::HigherTuran,
        None,
        from,
        to,
        Method::Analytic,
        Some(base_prec),
        Some(format!("mu(n) >= {Y_BOUNDS_MU_THRESHOLD}")),
        vec![
            "bound extends to all n above this range".into(),
            "interval-box and Jia-chain routes agreed at every index".into(),
            mu_translation_note(Y_BOUNDS_MU_THRESHOLD),
        ],
        results,
    ))
}

/// Exact M₀(n) and M₁(n) inside the two-sided envelope G(n)(1 ± μ⁻⁶),
/// verified for every n in [from, to]. Requires μ(from) ≥ 88.
pub fn check_envelope_containment(
    table: &CrankParityTable,
    from: u64,
    to: u64,
    base_prec: u32,
) -> Result<Certificate> {
    if from > to {
        return Ok(vacuous(
            TheoremId::EnvelopeContainment,
            None,
            from,
            to,
            Method::Exact,
        ));
    }
    require_window(table, from, to, 1, 0)?;
    gate_range_start(from, crate::asymptotic::MK_ENVELOPE_MU_THRESHOLD, base_prec)?;
    let results: Vec<(u64, Verdict)> = (from..=to)
        .into_par_iter()
        .map(|n| {
            let v = decide(
                suggested_precision(n, base_prec),
                DEFAULT_MAX_DOUBLINGS,
                |p| match mk_envelope(n, p) {
                    Ok(env) => env
                        .contains_integer(table.m0(n))
                        .and(env.contains_integer(table.m1(n))),
                    Err(Error::HypothesisUndecided { .. }) => Verdict::Undecided,
                    Err(e) => unreachable!("mu increases with n past a certified gate: {e}"),
                },
            );
            (n, v)
        })
        .collect();
    Ok(assemble(
        TheoremId::EnvelopeContainment,
        None,
        from,
        to,
        Method::Exact,
        Some(base_prec),
        Some(format!(
            "mu(n) >= {}",
            crate::asymptotic::MK_ENVELOPE_MU_THRESHOLD
        )),
        vec![mu_translation_note(
            crate::asymptotic::MK_ENVELOPE_MU_THRESHOLD,
        )],
        results,
    ))
}

/// Exact |M_k(n)/p(n) − 1/2| ≤ 11578·e^{−μ/4} over [from, to]. The deviation
/// |Δ(n)|/(2p(n)) is the same exact rational for k = 0 and k = 1, so one
/// certificate covers both classes.
pub fn check_equidistribution(
    table: &CrankParityTable,
    from: u64,
    to: u64,
    base_prec: u32,
) -> Result<Certificate> {
    if from < 4 {
        return Err(Error::HypothesisNotMet {
            n: from,
            hypothesis: "n >= 4".into(),
        });
    }
    if from > to {
        return Ok(vacuous(
            TheoremId::Equidistribution,
            None,
            from,
            to,
            Method::Exact,
        ));
    }
    require_window(table, from, to, 4, 0)?;
    let results: Vec<(u64, Verdict)> = (from..=to)
        .into_par_iter()
        .map(|n| {
            let deviation = Rational::from((
                Integer::from(table.delta(n).abs_ref()),
                Integer::from(table.p(n) * 2u32),
            ));
            let v = decide(base_prec, DEFAULT_MAX_DOUBLINGS, |p| {
                let bound = equidist_error_bound(n, p).expect("n >= 4 checked");
                if *bound.lo() >= deviation {
                    Verdict::True
                } else if *bound.hi() < deviation {
                    Verdict::False
                } else {
                    Verdict::Undecided
                }
            });
            (n, v)
        })
        .collect();
    Ok(assemble(
        TheoremId::Equidistribution,
        None,
        from,
        to,
        Method::Exact,
        Some(base_prec),
        Some("n >= 4".into()),
        vec!["deviation |M_k/p - 1/2| is identical for k = 0 and k = 1".into()],
        results,
    ))
}

//! Enclosures for the asymptotic main terms and every explicit error bound.
//!
//! All values are outward-rounded intervals; constants (π, √3, √6, 6^¼) are
//! evaluated fresh at the working precision of each call, never cached as
//! decimal literals. Hypothesis gates distinguish "certainly below the
//! threshold" from "undecided at this precision" so callers can escalate.

use crate::error::{Error, Result};
use crate::expsum::exp_sum;
use crate::real::{decide, RealInterval, Verdict, DEFAULT_MAX_DOUBLINGS};
use rug::{Integer, Rational};

/// μ-threshold of the two-sided M_k(n) envelope.
pub const MK_ENVELOPE_MU_THRESHOLD: u32 = 88;

/// μ-threshold of the Y_k(n) ratio bounds.
pub const Y_BOUNDS_MU_THRESHOLD: u32 = 115;

/// Enclosure of μ(n) = π√(24n−1)/6.
pub fn mu(n: u64, prec: u32) -> RealInterval {
    assert!(n >= 1, "mu(n) requires n >= 1");
    RealInterval::from_u64_prec(24 * n - 1, prec)
        .sqrt()
        .mul(&RealInterval::pi(prec))
        .div_u64(6)
}

/// Certified "μ(n) ≥ threshold", escalating precision as needed.
pub fn mu_at_least(n: u64, threshold: u32, base_prec: u32) -> Verdict {
    decide(base_prec, DEFAULT_MAX_DOUBLINGS, |p| {
        let m = mu(n, p);
        if *m.lo() >= threshold {
            Verdict::True
        } else if *m.hi() < threshold {
            Verdict::False
        } else {
            Verdict::Undecided
        }
    })
}

/// Smallest n with μ(n) ≥ threshold, i.e. ⌈((6·threshold/π)² + 1)/24⌉.
/// The argument of the ceiling is transcendental, so the ceiling resolves at
/// finite precision.
pub fn first_n_with_mu_at_least(threshold: u32) -> u64 {
    let mut p = 64u32;
    for _ in 0..=2 * DEFAULT_MAX_DOUBLINGS {
        let scaled = RealInterval::from_u64_prec(6 * threshold as u64, p)
            .div(&RealInterval::pi(p))
            .pow_u32(2);
        let x = scaled.add_u64(1).div_u64(24);
        let lo_ceil = x.lo().clone().ceil();
        let hi_ceil = x.hi().clone().ceil();
        if lo_ceil == hi_ceil {
            return lo_ceil
                .to_integer()
                .expect("finite ceiling")
                .to_u64()
                .expect("fits u64");
        }
        p = p.saturating_mul(2);
    }
    unreachable!("mu threshold ceiling unresolved after escalation")
}

fn gate_mu(n: u64, prec: u32, threshold: u32) -> Result<RealInterval> {
    let m = mu(n, prec);
    let hypothesis = format!("mu(n) >= {threshold}");
    if *m.hi() < threshold {
        Err(Error::HypothesisNotMet { n, hypothesis })
    } else if *m.lo() >= threshold {
        Ok(m)
    } else {
        Err(Error::HypothesisUndecided {
            n,
            hypothesis,
            precision: prec,
        })
    }
}

/// Enclosure of the main term (−1)ⁿ·π/(√6·μ(n))·e^{μ(n)/2} of M₀(n) − M₁(n).
/// Requires n ≥ 3 (equivalently μ(n) ≥ 4).
pub fn delta_main_term(n: u64, prec: u32) -> Result<RealInterval> {
    if n < 3 {
        return Err(Error::HypothesisNotMet {
            n,
            hypothesis: "n >= 3 (mu(n) >= 4)".into(),
        });
    }
    let m = mu(n, prec);
    let den = RealInterval::from_u64_prec(6, prec).sqrt().mul(&m);
    let magnitude = RealInterval::pi(prec).div(&den).mul(&m.halve().exp());
    Ok(if n % 2 == 0 {
        magnitude
    } else {
        magnitude.neg()
    })
}

/// Enclosure of the error bound 63·μ(n)^{1/2}·e^{μ(n)/4}. Requires n ≥ 3.
pub fn delta_error_bound(n: u64, prec: u32) -> Result<RealInterval> {
    if n < 3 {
        return Err(Error::HypothesisNotMet {
            n,
            hypothesis: "n >= 3 (mu(n) >= 4)".into(),
        });
    }
    let m = mu(n, prec);
    Ok(m.sqrt().mul(&m.div_u64(4).exp()).mul_u64(63))
}

/// Number of terms of the cosh expansion: the largest J with every
/// 0 < j ≤ J satisfying j < √3·μ(n)/(2√π), i.e. 48j² < π(24n−1).
/// The comparison is between π and an exact rational, so it is always
/// decidable at finite precision.
pub fn series_truncation_index(n: u64) -> u64 {
    assert!(n >= 1);
    let mut j = 1u64;
    loop {
        let ratio = Rational::from((
            Integer::from(48u32) * Integer::from(j) * Integer::from(j),
            Integer::from(24 * n - 1),
        ));
        let verdict = decide(64, DEFAULT_MAX_DOUBLINGS, |p| {
            RealInterval::pi(p).cmp_gt(&RealInterval::from_rational(&ratio, p))
        });
        match verdict {
            Verdict::True => j += 1,
            Verdict::False => return j - 1,
            Verdict::Undecided => {
                unreachable!("pi comparison with rational undecided after escalation")
            }
        }
    }
}

/// Enclosure of the truncated cosh expansion of M₀(n) − M₁(n):
/// (√6π)/(3μ) · Σ_{0<j<√3μ/(2√π)} cosh(μ/(2j)) Â_j(n)/√j.
pub fn delta_series(n: u64, prec: u32) -> RealInterval {
    assert!(n >= 1);
    let m = mu(n, prec);
    let j_max = series_truncation_index(n);
    let mut sum = RealInterval::from_u64_prec(0, prec);
    for j in 1..=j_max {
        let a = exp_sum(j, n, prec);
        let term = m
            .div_u64(2 * j)
            .cosh()
            .mul(&a.real)
            .div(&RealInterval::from_u64_prec(j, prec).sqrt());
        sum = sum.add(&term);
    }
    let prefactor = RealInterval::from_u64_prec(6, prec)
        .sqrt()
        .mul(&RealInterval::pi(prec))
        .div(&m.mul_u64(3));
    sum.mul(&prefactor)
}

/// Enclosure of the expansion's error bound (95·6^{1/4}/√(2π))·μ(n)^{1/2}.
pub fn delta_series_error_bound(n: u64, prec: u32) -> RealInterval {
    assert!(n >= 1);
    let m = mu(n, prec);
    let sixth_quarter = RealInterval::from_u64_prec(6, prec).sqrt().sqrt();
    let sqrt_two_pi = RealInterval::pi(prec).mul_u64(2).sqrt();
    sixth_quarter.mul_u64(95).div(&sqrt_two_pi).mul(&m.sqrt())
}

fn p_shaped_main(n: u64, prec: u32, denominator: u32) -> RealInterval {
    let m = mu(n, prec);
    let one = RealInterval::from_u64_prec(1, prec);
    let den = RealInterval::from_u64_prec(3, prec)
        .sqrt()
        .mul(&m.pow_u32(2))
        .mul_u64(denominator as u64);
    let prefactor = RealInterval::pi(prec).pow_u32(2).div(&den);
    prefactor.mul(&one.sub(&one.div(&m))).mul(&m.exp())
}

/// Enclosure of the p(n) main term π²/(6√3·μ²)(1 − 1/μ)e^μ. Requires n ≥ 1.
pub fn p_main_term(n: u64, prec: u32) -> RealInterval {
    assert!(n >= 1);
    p_shaped_main(n, prec, 6)
}

/// Enclosure of the p(n) error bound 1313·e^{μ/2}.
pub fn p_error_bound(n: u64, prec: u32) -> RealInterval {
    assert!(n >= 1);
    mu(n, prec).halve().exp().mul_u64(1313)
}

/// Enclosure of the lower bound √3/(12n)·(1 − 1/√n)·e^μ < p(n). Requires n ≥ 1.
pub fn p_lower_bound(n: u64, prec: u32) -> RealInterval {
    assert!(n >= 1);
    let one = RealInterval::from_u64_prec(1, prec);
    let factor = one.sub(&one.div(&RealInterval::from_u64_prec(n, prec).sqrt()));
    RealInterval::from_u64_prec(3, prec)
        .sqrt()
        .div_u64(12 * n)
        .mul(&factor)
        .mul(&mu(n, prec).exp())
}

/// Enclosure of the shared main term of M₀(n) and M₁(n):
/// π²/(12√3·μ²)(1 − 1/μ)e^μ, i.e. half the p(n) main term.
pub fn mk_main_term(n: u64, prec: u32) -> RealInterval {
    assert!(n >= 1);
    p_shaped_main(n, prec, 12)
}

/// Enclosure of the equidistribution error bound 11578·e^{−μ/4}.
/// Requires n ≥ 4.
pub fn equidist_error_bound(n: u64, prec: u32) -> Result<RealInterval> {
    if n < 4 {
        return Err(Error::HypothesisNotMet {
            n,
            hypothesis: "n >= 4".into(),
        });
    }
    Ok(mu(n, prec).div_u64(4).neg().exp().mul_u64(11578))
}

/// What a certified two-sided bound is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnvelopeSubject {
    /// M₀(n) − M₁(n) against its main term ± explicit error.
    DeltaMainTerm,
    /// M_k(n) against G(n)(1 ± μ⁻⁶).
    Mk,
    /// p(n) against its main term ± explicit error.
    Pn,
    /// Y_k(n) = M_k(n−1)M_k(n+1)/M_k(n)² against the ratio bounds.
    Yk,
    /// M_k(n)/p(n) against 1/2 ± the equidistribution error.
    EquidistRatio,
}

/// A certified pair of enclosures bracketing a quantity, together with the
/// hypothesis under which the bracketing theorem applies.
#[derive(Debug, Clone)]
pub struct Envelope {
    pub subject: EnvelopeSubject,
    pub n: u64,
    pub k: Option<u8>,
    pub lower: RealInterval,
    pub upper: RealInterval,
    pub hypothesis: String,
}

impl Envelope {
    /// Certified "lower ≤ x ≤ upper" for an exact integer.
    pub fn contains_integer(&self, x: &Integer) -> Verdict {
        if *self.lower.hi() <= *x && *x <= *self.upper.lo() {
            Verdict::True
        } else if *x < *self.lower.lo() || *x > *self.upper.hi() {
            Verdict::False
        } else {
            Verdict::Undecided
        }
    }

    /// Certified "lower ≤ x ≤ upper" for an exact rational.
    pub fn contains_rational(&self, x: &Rational) -> Verdict {
        if *self.lower.hi() <= *x && *x <= *self.upper.lo() {
            Verdict::True
        } else if *x < *self.lower.lo() || *x > *self.upper.hi() {
            Verdict::False
        } else {
            Verdict::Undecided
        }
    }

    /// Certified "lower < x < upper" for an exact rational.
    pub fn strictly_contains_rational(&self, x: &Rational) -> Verdict {
        if *self.lower.hi() < *x && *x < *self.upper.lo() {
            Verdict::True
        } else if *x <= *self.lower.lo() || *x >= *self.upper.hi() {
            Verdict::False
        } else {
            Verdict::Undecided
        }
    }

    /// Hull [lower.lo, upper.hi]: a single interval certainly containing the
    /// bracketed quantity.
    pub fn hull(&self) -> RealInterval {
        RealInterval::from_endpoints(self.lower.lo().clone(), self.upper.hi().clone())
    }
}

/// Two-sided envelope G(n)(1 ± 1/μ⁶) for M_k(n), valid for μ(n) ≥ 88
/// (either crank parity class).
pub fn mk_envelope(n: u64, prec: u32) -> Result<Envelope> {
    let m = gate_mu(n, prec, MK_ENVELOPE_MU_THRESHOLD)?;
    let g = mk_main_term(n, prec);
    let one = RealInterval::from_u64_prec(1, prec);
    let margin = one.div(&m.pow_u32(6));
    Ok(Envelope {
        subject: EnvelopeSubject::Mk,
        n,
        k: None,
        lower: g.mul(&one.sub(&margin)),
        upper: g.mul(&one.add(&margin)),
        hypothesis: format!("mu(n) >= {MK_ENVELOPE_MU_THRESHOLD}"),
    })
}

/// Two-sided bounds on Y_k(n) = M_k(n−1)M_k(n+1)/M_k(n)², valid for
/// μ(n) ≥ 115:
///   upper: 1 − π⁴/(9μ³) + 4π⁴/(9μ⁴) − π⁴/(3μ⁵) + (π⁸/81 + 5)/μ⁶
///   lower: 1 − π⁴/(9μ³) + 4π⁴/(9μ⁴) − π⁴/(3μ⁵) − 60/μ⁶
pub fn y_ratio_bounds(n: u64, k: u8, prec: u32) -> Result<Envelope> {
    assert!(k <= 1);
    let m = gate_mu(n, prec, Y_BOUNDS_MU_THRESHOLD)?;
    let one = RealInterval::from_u64_prec(1, prec);
    let pi4 = RealInterval::pi(prec).pow_u32(4);
    let pi8 = RealInterval::pi(prec).pow_u32(8);
    let m3 = m.pow_u32(3);
    let m4 = m3.mul(&m);
    let m5 = m4.mul(&m);
    let m6 = m5.mul(&m);
    let base = one
        .sub(&pi4.div(&m3.mul_u64(9)))
        .add(&pi4.mul_u64(4).div(&m4.mul_u64(9)))
        .sub(&pi4.div(&m5.mul_u64(3)));
    let upper_offset = pi8
        .div_u64(81)
        .add(&RealInterval::from_u64_prec(5, prec))
        .div(&m6);
    let lower_offset = RealInterval::from_u64_prec(60, prec).div(&m6);
    Ok(Envelope {
        subject: EnvelopeSubject::Yk,
        n,
        k: Some(k),
        lower: base.sub(&lower_offset),
        upper: base.add(&upper_offset),
        hypothesis: format!("mu(n) >= {Y_BOUNDS_MU_THRESHOLD}"),
    })
}

/// Envelope main ± bound for M₀(n) − M₁(n). Requires n ≥ 3.
pub fn delta_envelope(n: u64, prec: u32) -> Result<Envelope> {
    let main = delta_main_term(n, prec)?;
    let bound = delta_error_bound(n, prec)?;
    Ok(Envelope {
        subject: EnvelopeSubject::DeltaMainTerm,
        n,
        k: None,
        lower: main.sub(&bound),
        upper: main.add(&bound),
        hypothesis: "n >= 3 (mu(n) >= 4)".into(),
    })
}

/// Envelope series ± bound for M₀(n) − M₁(n) from the cosh expansion.
pub fn delta_series_envelope(n: u64, prec: u32) -> Envelope {
    let series = delta_series(n, prec);
    let bound = delta_series_error_bound(n, prec);
    Envelope {
        subject: EnvelopeSubject::DeltaMainTerm,
        n,
        k: None,
        lower: series.sub(&bound),
        upper: series.add(&bound),
        hypothesis: "n >= 1".into(),
    }
}

/// Envelope main ± bound for p(n). Requires n ≥ 1.
pub fn p_envelope(n: u64, prec: u32) -> Envelope {
    let main = p_main_term(n, prec);
    let bound = p_error_bound(n, prec);
    Envelope {
        subject: EnvelopeSubject::Pn,
        n,
        k: None,
        lower: main.sub(&bound),
        upper: main.add(&bound),
        hypothesis: "n >= 1".into(),
    }
}

/// Envelope 1/2 ± 11578e^{−μ/4} for M_k(n)/p(n). Requires n ≥ 4.
pub fn equidist_envelope(n: u64, prec: u32) -> Result<Envelope> {
    let bound = equidist_error_bound(n, prec)?;
    let half = RealInterval::from_rational(&Rational::from((1u32, 2u32)), prec);
    Ok(Envelope {
        subject: EnvelopeSubject::EquidistRatio,
        n,
        k: None,
        lower: half.sub(&bound),
        upper: half.add(&bound),
        hypothesis: "n >= 4".into(),
    })
}

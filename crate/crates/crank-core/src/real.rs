//! Outward-rounded interval arithmetic over MPFR floats.
//!
//! Every endpoint operation is performed with an explicit directed rounding
//! mode, so an interval produced here always encloses the exact real result
//! of the operation applied to any points of the operand intervals. All
//! rigorous inequality checks in this crate reduce to comparisons between
//! such enclosures and exact integers or rationals (which `rug` compares
//! exactly, without conversion loss).

use rug::float::{Constant, Round};
use rug::ops::{DivAssignRound, MulAssignRound};
use rug::{Float, Integer, Rational};

/// Minimum working precision accepted anywhere in the crate.
pub const MIN_PRECISION: u32 = 64;

/// Default cap on precision doublings before a comparison is reported
/// indeterminate.
pub const DEFAULT_MAX_DOUBLINGS: u32 = 8;

/// Outcome of a certified comparison: `True` and `False` are rigorous,
/// `Undecided` means the enclosures overlap at the working precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    True,
    False,
    Undecided,
}

impl Verdict {
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (False, _) | (_, False) => False,
            (True, True) => True,
            _ => Undecided,
        }
    }

    pub fn negate(self) -> Verdict {
        match self {
            Verdict::True => Verdict::False,
            Verdict::False => Verdict::True,
            Verdict::Undecided => Verdict::Undecided,
        }
    }
}

/// Runs `eval` at `start` bits, doubling the precision until it returns a
/// decision or the doubling cap is hit.
pub fn decide<F>(start: u32, max_doublings: u32, mut eval: F) -> Verdict
where
    F: FnMut(u32) -> Verdict,
{
    let mut p = start.max(MIN_PRECISION);
    for _ in 0..=max_doublings {
        match eval(p) {
            Verdict::Undecided => p = p.saturating_mul(2),
            v => return v,
        }
    }
    Verdict::Undecided
}

/// μ(n) as a plain f64, for precision sizing only (never for certification).
pub fn mu_f64(n: u64) -> f64 {
    std::f64::consts::PI * (24.0 * n as f64 - 1.0).sqrt() / 6.0
}

/// Working precision for targets of size e^{μ(n)}: enough bits that the
/// absolute enclosure error stays below 1, plus guard room.
pub fn suggested_precision(n: u64, base: u32) -> u32 {
    let bits = (mu_f64(n) / std::f64::consts::LN_2).ceil() as u32 + 96;
    base.max(bits).max(MIN_PRECISION)
}

/// A closed interval `[lo, hi]` with outward-rounded endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct RealInterval {
    lo: Float,
    hi: Float,
}

impl RealInterval {
    fn assert_proper(self) -> Self {
        debug_assert!(
            self.lo.is_finite() && self.hi.is_finite() && self.lo <= self.hi,
            "improper interval [{:?}, {:?}]",
            self.lo,
            self.hi
        );
        self
    }

    pub fn from_endpoints(lo: Float, hi: Float) -> Self {
        RealInterval { lo, hi }.assert_proper()
    }

    /// Degenerate interval holding a value exactly representable at its own
    /// precision.
    pub fn point(value: Float) -> Self {
        let hi = value.clone();
        RealInterval { lo: value, hi }.assert_proper()
    }

    /// Exact embedding of an integer (the endpoint precision is widened to
    /// the integer's bit length, so no rounding occurs).
    pub fn from_integer(x: &Integer) -> Self {
        let prec = x.significant_bits().max(MIN_PRECISION);
        Self::point(Float::with_val(prec, x))
    }

    pub fn from_u64(x: u64) -> Self {
        Self::from_integer(&Integer::from(x))
    }

    pub fn from_i64(x: i64) -> Self {
        Self::from_integer(&Integer::from(x))
    }

    /// Exact small-integer constant carried at `prec` bits, so that
    /// subsequent unary operations (sqrt, exp, ...) run at full working
    /// precision rather than at the minimum.
    pub fn from_u64_prec(x: u64, prec: u32) -> Self {
        let prec = prec
            .max(MIN_PRECISION)
            .max(Integer::from(x).significant_bits());
        Self::point(Float::with_val(prec, x))
    }

    /// Outward-rounded embedding of a rational at `prec` bits.
    pub fn from_rational(x: &Rational, prec: u32) -> Self {
        let lo = Float::with_val_round(prec, x, Round::Down).0;
        let hi = Float::with_val_round(prec, x, Round::Up).0;
        RealInterval { lo, hi }.assert_proper()
    }

    /// Enclosure of π at `prec` bits.
    pub fn pi(prec: u32) -> Self {
        let lo = Float::with_val_round(prec, Constant::Pi, Round::Down).0;
        let hi = Float::with_val_round(prec, Constant::Pi, Round::Up).0;
        RealInterval { lo, hi }.assert_proper()
    }

    pub fn lo(&self) -> &Float {
        &self.lo
    }

    pub fn hi(&self) -> &Float {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.lo.prec().max(self.hi.prec())
    }

    pub fn width(&self) -> Float {
        Float::with_val_round(self.prec(), &self.hi - &self.lo, Round::Up).0
    }

    /// Midpoint, rounded to nearest. Display only; certification never
    /// consumes this.
    pub fn mid(&self) -> Float {
        let mut m = Float::with_val(self.prec(), &self.lo + &self.hi);
        m.div_assign_round(2u32, Round::Nearest);
        m
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= 0 && 0 <= self.hi
    }

    pub fn is_certainly_positive(&self) -> bool {
        self.lo > 0
    }

    pub fn is_certainly_negative(&self) -> bool {
        self.hi < 0
    }

    /// Interval containment (used by the precision-nesting soundness tests).
    pub fn encloses(&self, inner: &RealInterval) -> bool {
        self.lo <= inner.lo && inner.hi <= self.hi
    }

    pub fn contains_integer(&self, x: &Integer) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn contains_rational(&self, x: &Rational) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    fn op_prec(&self, other: &RealInterval) -> u32 {
        self.prec().max(other.prec())
    }

    pub fn neg(&self) -> Self {
        RealInterval {
            lo: Float::with_val(self.hi.prec(), -&self.hi),
            hi: Float::with_val(self.lo.prec(), -&self.lo),
        }
        .assert_proper()
    }

    pub fn abs(&self) -> Self {
        if self.lo >= 0 {
            self.clone()
        } else if self.hi <= 0 {
            self.neg()
        } else {
            let p = self.prec();
            let neg_lo = Float::with_val(p, -&self.lo);
            let hi = if neg_lo > self.hi {
                neg_lo
            } else {
                self.hi.clone()
            };
            RealInterval {
                lo: Float::with_val(p, 0),
                hi,
            }
            .assert_proper()
        }
    }

    pub fn add(&self, other: &RealInterval) -> Self {
        let p = self.op_prec(other);
        RealInterval {
            lo: Float::with_val_round(p, &self.lo + &other.lo, Round::Down).0,
            hi: Float::with_val_round(p, &self.hi + &other.hi, Round::Up).0,
        }
        .assert_proper()
    }

    pub fn sub(&self, other: &RealInterval) -> Self {
        let p = self.op_prec(other);
        RealInterval {
            lo: Float::with_val_round(p, &self.lo - &other.hi, Round::Down).0,
            hi: Float::with_val_round(p, &self.hi - &other.lo, Round::Up).0,
        }
        .assert_proper()
    }

    pub fn mul(&self, other: &RealInterval) -> Self {
        let p = self.op_prec(other);
        let pairs = [
            (&self.lo, &other.lo),
            (&self.lo, &other.hi),
            (&self.hi, &other.lo),
            (&self.hi, &other.hi),
        ];
        let mut lo: Option<Float> = None;
        let mut hi: Option<Float> = None;
        for (a, b) in pairs {
            let down = Float::with_val_round(p, a * b, Round::Down).0;
            let up = Float::with_val_round(p, a * b, Round::Up).0;
            lo = Some(match lo {
                Some(cur) if cur <= down => cur,
                _ => down,
            });
            hi = Some(match hi {
                Some(cur) if cur >= up => cur,
                _ => up,
            });
        }
        RealInterval {
            lo: lo.unwrap(),
            hi: hi.unwrap(),
        }
        .assert_proper()
    }

    /// Division; the divisor must not contain zero.
    pub fn div(&self, other: &RealInterval) -> Self {
        assert!(
            !other.contains_zero(),
            "interval division by an interval containing zero"
        );
        let p = self.op_prec(other);
        let pairs = [
            (&self.lo, &other.lo),
            (&self.lo, &other.hi),
            (&self.hi, &other.lo),
            (&self.hi, &other.hi),
        ];
        let mut lo: Option<Float> = None;
        let mut hi: Option<Float> = None;
        for (a, b) in pairs {
            let down = Float::with_val_round(p, a / b, Round::Down).0;
            let up = Float::with_val_round(p, a / b, Round::Up).0;
            lo = Some(match lo {
                Some(cur) if cur <= down => cur,
                _ => down,
            });
            hi = Some(match hi {
                Some(cur) if cur >= up => cur,
                _ => up,
            });
        }
        RealInterval {
            lo: lo.unwrap(),
            hi: hi.unwrap(),
        }
        .assert_proper()
    }

    pub fn add_u64(&self, k: u64) -> Self {
        self.add(&Self::from_u64(k))
    }

    pub fn sub_from_u64(&self, k: u64) -> Self {
        Self::from_u64(k).sub(self)
    }

    pub fn mul_u64(&self, k: u64) -> Self {
        self.mul(&Self::from_u64(k))
    }

    pub fn div_u64(&self, k: u64) -> Self {
        assert!(k != 0);
        let mut lo = self.lo.clone();
        lo.div_assign_round(k, Round::Down);
        let mut hi = self.hi.clone();
        hi.div_assign_round(k, Round::Up);
        RealInterval { lo, hi }.assert_proper()
    }

    /// Exact halving (binary scaling never rounds).
    pub fn halve(&self) -> Self {
        RealInterval {
            lo: Float::with_val(self.lo.prec(), &self.lo / 2u32),
            hi: Float::with_val(self.hi.prec(), &self.hi / 2u32),
        }
        .assert_proper()
    }

    /// Integer power by binary exponentiation over interval products.
    pub fn pow_u32(&self, e: u32) -> Self {
        let mut result = Self::from_u64(1);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn sqrt(&self) -> Self {
        assert!(self.lo >= 0, "interval sqrt of a negative interval");
        let p = self.prec();
        let mut lo = Float::with_val(p, &self.lo);
        lo.sqrt_round(Round::Down);
        let mut hi = Float::with_val(p, &self.hi);
        hi.sqrt_round(Round::Up);
        RealInterval { lo, hi }.assert_proper()
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let mut lo = Float::with_val(p, &self.lo);
        lo.exp_round(Round::Down);
        let mut hi = Float::with_val(p, &self.hi);
        hi.exp_round(Round::Up);
        RealInterval { lo, hi }.assert_proper()
    }

    pub fn ln(&self) -> Self {
        assert!(self.lo > 0, "interval ln requires a positive interval");
        let p = self.prec();
        let mut lo = Float::with_val(p, &self.lo);
        lo.ln_round(Round::Down);
        let mut hi = Float::with_val(p, &self.hi);
        hi.ln_round(Round::Up);
        RealInterval { lo, hi }.assert_proper()
    }

    pub fn cosh(&self) -> Self {
        let p = self.prec();
        let at = |x: &Float, r: Round| {
            let mut y = Float::with_val(p, x);
            y.cosh_round(r);
            y
        };
        let (lo, hi) = if self.lo >= 0 {
            (at(&self.lo, Round::Down), at(&self.hi, Round::Up))
        } else if self.hi <= 0 {
            (at(&self.hi, Round::Down), at(&self.lo, Round::Up))
        } else {
            let a = at(&self.lo, Round::Up);
            let b = at(&self.hi, Round::Up);
            (Float::with_val(p, 1), if a > b { a } else { b })
        };
        RealInterval { lo, hi }.assert_proper()
    }

    /// Replaces a possibly slightly-negative lower endpoint by zero.
    /// Only sound when the enclosed true value is known to be nonnegative.
    pub fn clamp_nonnegative(&self) -> Self {
        if self.lo >= 0 {
            self.clone()
        } else {
            RealInterval {
                lo: Float::with_val(self.lo.prec(), 0),
                hi: self.hi.clone().max(&Float::with_val(self.hi.prec(), 0)),
            }
            .assert_proper()
        }
    }

    /// Certified `self < other`.
    pub fn cmp_lt(&self, other: &RealInterval) -> Verdict {
        if self.hi < other.lo {
            Verdict::True
        } else if self.lo >= other.hi {
            Verdict::False
        } else {
            Verdict::Undecided
        }
    }

    /// Certified `self <= other`.
    pub fn cmp_le(&self, other: &RealInterval) -> Verdict {
        if self.hi <= other.lo {
            Verdict::True
        } else if self.lo > other.hi {
            Verdict::False
        } else {
            Verdict::Undecided
        }
    }

    pub fn cmp_gt(&self, other: &RealInterval) -> Verdict {
        other.cmp_lt(self)
    }

    pub fn cmp_ge(&self, other: &RealInterval) -> Verdict {
        other.cmp_le(self)
    }
}

/// Enclosure of cos(πθ) for an exact rational θ.
///
/// The phase is reduced with exact rational arithmetic into [0, 1/2], where
/// x ↦ cos(πx) is monotone and the lattice points 0, 1/2, 1 come out exact,
/// so the only rounding is the final transcendental evaluation at the two
/// endpoints.
pub fn cos_pi(theta: &Rational, prec: u32) -> RealInterval {
    let prec = prec.max(MIN_PRECISION);
    // Reduce mod 2 into [0, 2).
    let mut t = {
        let q = Rational::from(theta / 2u32).floor();
        theta - 2u32 * q
    };
    let one = Rational::from(1);
    let half = Rational::from((1u32, 2u32));
    // cos(π(2−t)) = cos(πt): fold [1, 2) onto (0, 1].
    if t > one {
        t = Rational::from(2u32) - t;
    }
    if t == 0 {
        return RealInterval::point(Float::with_val(prec, 1));
    }
    if t == one {
        return RealInterval::point(Float::with_val(prec, -1));
    }
    if t == half {
        return RealInterval::point(Float::with_val(prec, 0));
    }
    // cos(π(1−t)) = −cos(πt): fold (1/2, 1) onto (0, 1/2) with a sign flip.
    let mut negate = false;
    if t > half {
        t = one - t;
        negate = true;
    }
    // Now t ∈ (0, 1/2); πt lies strictly inside (0, π), where cos is
    // decreasing, so endpoint evaluation is a valid enclosure.
    let pi = RealInterval::pi(prec);
    let mut x_lo = pi.lo().clone();
    x_lo.mul_assign_round(&t, Round::Down);
    let mut x_hi = pi.hi().clone();
    x_hi.mul_assign_round(&t, Round::Up);
    let mut lo = x_hi;
    lo.cos_round(Round::Down);
    let mut hi = x_lo;
    hi.cos_round(Round::Up);
    let iv = RealInterval::from_endpoints(lo, hi);
    if negate {
        iv.neg()
    } else {
        iv
    }
}

/// Enclosure of sin(πθ) for an exact rational θ, via sin(πθ) = cos(π(θ − 1/2)).
pub fn sin_pi(theta: &Rational, prec: u32) -> RealInterval {
    let shifted = theta - Rational::from((1u32, 2u32));
    cos_pi(&shifted, prec)
}

//! Midpoint-radius interval arithmetic over dyadic bigfloats.
//!
//! Every operation is containment-monotone: if the inputs' intervals contain
//! the exact operand values, the output interval contains the exact result.
//! Midpoints are rounded toward zero at working precision with the rounding
//! error folded into the radius; radii are always rounded up.

use super::bigfloat::{Bf, Dir};
use num_bigint::BigInt;
use num_traits::Zero;
use std::cmp::Ordering;

/// Mantissa bits kept for radii. Radii only need an order of magnitude.
const RAD_BITS: u32 = 32;

#[derive(Clone, Debug)]
pub struct Ball {
    mid: Bf,
    rad: Bf, // >= 0
}

impl Ball {
    pub fn exact(mid: Bf) -> Ball {
        Ball { mid, rad: Bf::zero() }
    }

    pub fn from_i64(n: i64) -> Ball {
        Ball::exact(Bf::from_i64(n))
    }

    pub fn from_bigint(n: &BigInt) -> Ball {
        Ball::exact(Bf::from_bigint(n.clone()))
    }

    pub fn new(mid: Bf, rad: Bf) -> Ball {
        debug_assert!(!rad.is_negative());
        Ball { mid, rad }
    }

    pub fn zero() -> Ball {
        Ball::exact(Bf::zero())
    }

    pub fn one() -> Ball {
        Ball::exact(Bf::one())
    }

    pub fn mid(&self) -> &Bf {
        &self.mid
    }

    pub fn rad(&self) -> &Bf {
        &self.rad
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn lo(&self) -> Bf {
        self.mid.sub(&self.rad)
    }

    pub fn hi(&self) -> Bf {
        self.mid.add(&self.rad)
    }

    pub fn from_endpoints(lo: Bf, hi: Bf) -> Ball {
        debug_assert!(lo.cmp(&hi) != Ordering::Greater);
        // Halving is exact for dyadics, so mid/rad cover both ends exactly.
        let mid = lo.add(&hi).mul_pow2(-1);
        let rad = hi.sub(&lo).mul_pow2(-1).round(RAD_BITS, Dir::Ceil);
        Ball { mid, rad }
    }

    /// Compress the midpoint to `prec` bits, enlarging the radius accordingly.
    pub fn squash(&self, prec: u32) -> Ball {
        let (m, err) = self.mid.round_trunc(prec);
        let rad = self.rad.add(&err).round(RAD_BITS, Dir::Ceil);
        Ball { mid: m, rad }
    }

    pub fn neg(&self) -> Ball {
        Ball { mid: self.mid.neg(), rad: self.rad.clone() }
    }

    pub fn abs(&self) -> Ball {
        if !self.contains_zero() {
            return Ball { mid: self.mid.abs(), rad: self.rad.clone() };
        }
        // Interval straddles zero: |x| lies in [0, max(|lo|,|hi|)].
        let m = Bf::max(self.lo().abs(), self.hi().abs());
        Ball::from_endpoints(Bf::zero(), m)
    }

    /// Upper bound on |x| over the ball.
    pub fn mag_hi(&self) -> Bf {
        self.mid.abs().add(&self.rad).round(RAD_BITS, Dir::Ceil)
    }

    /// Lower bound on |x| over the ball (zero if the ball straddles zero).
    pub fn mag_lo(&self) -> Bf {
        let v = self.mid.abs().sub(&self.rad);
        if v.is_negative() {
            Bf::zero()
        } else {
            v.round(RAD_BITS, Dir::Floor)
        }
    }

    pub fn add(&self, other: &Ball, prec: u32) -> Ball {
        let mid = self.mid.add(&other.mid);
        let rad = self.rad.add(&other.rad);
        Ball { mid, rad }.squash(prec)
    }

    pub fn sub(&self, other: &Ball, prec: u32) -> Ball {
        self.add(&other.neg(), prec)
    }

    pub fn mul(&self, other: &Ball, prec: u32) -> Ball {
        let mid = self.mid.mul(&other.mid);
        let rad = if self.rad.is_zero() && other.rad.is_zero() {
            Bf::zero()
        } else {
            let t1 = self.mid.abs().mul(&other.rad);
            let t2 = other.mid.abs().mul(&self.rad);
            let t3 = self.rad.mul(&other.rad);
            t1.add(&t2).add(&t3).round(RAD_BITS, Dir::Ceil)
        };
        Ball { mid, rad }.squash(prec)
    }

    pub fn mul_i64(&self, k: i64, prec: u32) -> Ball {
        self.mul(&Ball::from_i64(k), prec)
    }

    pub fn mul_pow2(&self, e: i64) -> Ball {
        Ball { mid: self.mid.mul_pow2(e), rad: self.rad.mul_pow2(e) }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo().is_positive() && !self.hi().is_negative()
    }

    /// Multiplicative inverse; requires the ball to exclude zero.
    pub fn inv(&self, prec: u32) -> Ball {
        assert!(!self.contains_zero(), "inverse of a ball containing zero");
        let lo = self.lo();
        let hi = self.hi();
        let one = Bf::one();
        // 1/x is monotone decreasing on intervals excluding zero.
        let a = one.div(&hi, prec + 4, Dir::Floor);
        let b = one.div(&lo, prec + 4, Dir::Ceil);
        Ball::from_endpoints(a, b).squash(prec)
    }

    pub fn div(&self, other: &Ball, prec: u32) -> Ball {
        self.mul(&other.inv(prec), prec)
    }

    /// Square root; requires a nonnegative lower endpoint.
    pub fn sqrt(&self, prec: u32) -> Ball {
        let lo = self.lo();
        assert!(!lo.is_negative(), "sqrt of a ball reaching below zero");
        let a = lo.sqrt(prec + 4, Dir::Floor);
        let b = self.hi().sqrt(prec + 4, Dir::Ceil);
        Ball::from_endpoints(a, b).squash(prec)
    }

    /// Nonnegative integer power. Exact balls stay exact; otherwise the base
    /// must be nonnegative (monotone endpoint evaluation).
    pub fn powi(&self, n: u64, prec: u32) -> Ball {
        if n == 0 {
            return Ball::one();
        }
        if self.is_exact() {
            let mut acc = Ball::exact(self.mid.clone());
            let mut result = Ball::one();
            let mut k = n;
            loop {
                if k & 1 == 1 {
                    result = Ball::exact(result.mid().mul(acc.mid()));
                }
                k >>= 1;
                if k == 0 {
                    break;
                }
                acc = Ball::exact(acc.mid().mul(acc.mid()));
            }
            return result.squash(prec.max(4096));
        }
        let lo = self.lo();
        assert!(!lo.is_negative(), "inexact powi expects a nonnegative base");
        let a = lo.powi(n, prec + 4, Dir::Floor);
        let b = self.hi().powi(n, prec + 4, Dir::Ceil);
        Ball::from_endpoints(a, b).squash(prec)
    }

    /// x^(p/q) for nonnegative x, p >= 0, q >= 1, via monotone endpoints.
    pub fn pow_ratio(&self, p: u64, q: u32, prec: u32) -> Ball {
        assert!(q >= 1);
        if q == 1 {
            return self.powi(p, prec);
        }
        let lo = self.lo();
        assert!(!lo.is_negative(), "pow_ratio expects a nonnegative base");
        let a = lo.powi(p, prec + 8, Dir::Floor).nth_root(q, prec + 4, Dir::Floor);
        let b = self.hi().powi(p, prec + 8, Dir::Ceil).nth_root(q, prec + 4, Dir::Ceil);
        Ball::from_endpoints(a, b).squash(prec)
    }

    pub fn widen(&self, extra: &Bf) -> Ball {
        debug_assert!(!extra.is_negative());
        Ball { mid: self.mid.clone(), rad: self.rad.add(extra).round(RAD_BITS, Dir::Ceil) }
    }

    /// True if the two balls share no point.
    pub fn disjoint(&self, other: &Ball) -> bool {
        self.hi().cmp(&other.lo()) == Ordering::Less || other.hi().cmp(&self.lo()) == Ordering::Less
    }

    pub fn overlaps(&self, other: &Ball) -> bool {
        !self.disjoint(other)
    }

    /// Decide x < y if the intervals are disjoint; None when they overlap.
    pub fn try_lt(&self, other: &Ball) -> Option<bool> {
        if self.hi().cmp(&other.lo()) == Ordering::Less {
            Some(true)
        } else if other.hi().cmp(&self.lo()) != Ordering::Greater {
            Some(false)
        } else {
            None
        }
    }

    /// Decide x <= y when provable from the intervals; None when ambiguous.
    pub fn try_le(&self, other: &Ball) -> Option<bool> {
        if self.hi().cmp(&other.lo()) != Ordering::Greater {
            Some(true)
        } else if other.hi().cmp(&self.lo()) == Ordering::Less {
            Some(false)
        } else {
            None
        }
    }

    pub fn contains(&self, point: &Bf) -> bool {
        self.lo().cmp(point) != Ordering::Greater && self.hi().cmp(point) != Ordering::Less
    }

    pub fn contains_ball(&self, other: &Ball) -> bool {
        self.lo().cmp(&other.lo()) != Ordering::Greater && self.hi().cmp(&other.hi()) != Ordering::Less
    }

    /// Rational p/q as a ball at working precision.
    pub fn from_ratio(p: &BigInt, q: &BigInt, prec: u32) -> Ball {
        assert!(!q.is_zero());
        let pn = Bf::from_bigint(p.clone());
        let qn = Bf::from_bigint(q.clone());
        let a = pn.div(&qn, prec + 4, Dir::Floor);
        let b = pn.div(&qn, prec + 4, Dir::Ceil);
        Ball::from_endpoints(a, b).squash(prec)
    }

    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    pub fn rad_to_f64(&self) -> f64 {
        self.rad.to_f64()
    }

    /// Radius bounded by 2^e?
    pub fn rad_below_pow2(&self, e: i64) -> bool {
        self.rad.cmp(&Bf::pow2(e)) == Ordering::Less
    }
}

/// Working-precision context. `digits` is the user-facing decimal precision;
/// `prec` the internal binary precision including guard bits.
#[derive(Clone, Copy, Debug)]
pub struct Ctx {
    pub digits: u32,
    pub prec: u32,
}

impl Ctx {
    pub fn new(digits: u32) -> Ctx {
        let digits = digits.max(8);
        let prec = (digits as u64 * 3322 / 1000) as u32 + 32;
        Ctx { digits, prec }
    }

    pub fn double(&self) -> Ctx {
        Ctx::new(self.digits * 2)
    }
}

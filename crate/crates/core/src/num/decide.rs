//! Escalating-precision decision protocol.
//!
//! Predicates over computed intervals can be undecidable at the working
//! precision when the intervals overlap. Callers re-evaluate at doubled
//! precision, up to a fixed number of doublings, then give up loudly.

use super::ball::{Ball, Ctx};
use crate::error::{Error, Result};

/// Maximum number of precision doublings before declaring undecidability.
pub const MAX_DOUBLINGS: u32 = 4;

/// Run `f` at escalating precision until it returns a decision.
pub fn decide<T>(ctx: Ctx, what: &str, mut f: impl FnMut(Ctx) -> Option<T>) -> Result<T> {
    let mut c = ctx;
    for _ in 0..=MAX_DOUBLINGS {
        if let Some(v) = f(c) {
            return Ok(v);
        }
        c = c.double();
    }
    Err(Error::Undecidable { what: what.to_string(), digits: c.digits })
}

/// Decide a < b where both sides are recomputed at each precision.
pub fn decide_lt(
    ctx: Ctx,
    what: &str,
    lhs: impl Fn(Ctx) -> Ball,
    rhs: impl Fn(Ctx) -> Ball,
) -> Result<bool> {
    decide(ctx, what, |c| lhs(c).try_lt(&rhs(c)))
}

/// Decide a <= b where both sides are recomputed at each precision.
pub fn decide_le(
    ctx: Ctx,
    what: &str,
    lhs: impl Fn(Ctx) -> Ball,
    rhs: impl Fn(Ctx) -> Ball,
) -> Result<bool> {
    decide(ctx, what, |c| lhs(c).try_le(&rhs(c)))
}

/// Largest integer <= the value enclosed by `f`; undecidable when the
/// enclosure straddles an integer at every precision (e.g. the value is an
/// integer reached only in the limit). Exact integer enclosures decide
/// immediately.
pub fn decide_floor(ctx: Ctx, what: &str, f: impl Fn(Ctx) -> Ball) -> Result<num_bigint::BigInt> {
    decide(ctx, what, |c| {
        let b = f(c);
        let lo = floor_bf(&b.lo());
        let hi = floor_bf(&b.hi());
        if lo == hi {
            Some(lo)
        } else if b.is_exact() {
            Some(lo) // exact value: floor is determined
        } else {
            None
        }
    })
}

fn floor_bf(v: &crate::num::bigfloat::Bf) -> num_bigint::BigInt {
    use num_bigint::{BigInt, Sign};
    use num_traits::Zero;
    if v.is_zero() {
        return BigInt::zero();
    }
    let e = v.exp();
    if e >= 0 {
        return v.mantissa() << e as u64;
    }
    // Work on the magnitude so the shift semantics are unambiguous.
    let mag = v.mantissa().magnitude();
    let q = mag >> (-e) as u64;
    let exact = (&q << (-e) as u64) == *mag;
    if v.is_negative() {
        let qi = BigInt::from_biguint(Sign::Minus, q);
        if exact {
            qi
        } else {
            qi - 1
        }
    } else {
        BigInt::from_biguint(Sign::Plus, q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::bigfloat::Bf;
    use num_bigint::BigInt;

    #[test]
    fn floor_of_dyadics() {
        assert_eq!(floor_bf(&Bf::new(BigInt::from(7), -1)), BigInt::from(3)); // 3.5
        assert_eq!(floor_bf(&Bf::new(BigInt::from(-7), -1)), BigInt::from(-4)); // -3.5
        assert_eq!(floor_bf(&Bf::new(BigInt::from(4), 0)), BigInt::from(4));
        assert_eq!(floor_bf(&Bf::new(BigInt::from(-1), -3)), BigInt::from(-1)); // -0.125
    }

    #[test]
    fn escalation_decides_or_fails() {
        let ctx = Ctx::new(16);
        // sqrt(2)^2 vs 2: overlapping at any precision -> le holds decisively
        let r = decide_le(
            ctx,
            "2 <= sqrt(2)^2 + 0.5",
            |_c| Ball::from_i64(2),
            |c| {
                let s = Ball::from_i64(2).sqrt(c.prec);
                s.mul(&s, c.prec).add(&Ball::from_i64(1).div(&Ball::from_i64(2), c.prec), c.prec)
            },
        );
        assert_eq!(r.unwrap(), true);
        // Equality case never separates: x < x is undecidable for inexact x.
        let r2 = decide_lt(
            ctx,
            "sqrt2 < sqrt2",
            |c| Ball::from_i64(2).sqrt(c.prec),
            |c| Ball::from_i64(2).sqrt(c.prec),
        );
        assert!(matches!(r2, Err(Error::Undecidable { .. })));
    }
}

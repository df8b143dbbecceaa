//! Analytic inequalities used by the counting arguments: Minkowski's
//! discriminant lower bound, the degree-from-discriminant bound, the large
//! discriminant bound for huge degree, and the class number upper bound.

use crate::error::Result;
use crate::num::elementary::pi;
use crate::num::{decide_le, Ball, Ctx};
use num_bigint::BigInt;
use num_traits::One;

/// Minkowski bound: every degree-d field with r2 complex places has
/// |disc| >= ((pi/4)^r2 d^d / d!)^2. Exact rational for r2 = 0.
pub fn minkowski_min_disc(d: u32, r2: u32, ctx: Ctx) -> Ball {
    debug_assert!(2 * r2 <= d);
    let mut dd = BigInt::one();
    let mut fact = BigInt::one();
    for i in 1..=d {
        dd *= d;
        fact *= i;
    }
    let prec = ctx.prec;
    let rational = Ball::from_ratio(&(&dd * &dd), &(&fact * &fact), prec);
    if r2 == 0 {
        return rational;
    }
    let p = pi(prec).powi(2 * r2 as u64, prec);
    let quarter = Ball::from_bigint(&BigInt::from(4)).powi(2 * r2 as u64, prec);
    p.mul(&rational, prec).div(&quarter, prec)
}

/// Largest degree d with minkowski_min_disc(d, floor(d/2)) <= disc; realizes
/// the bound degree = O(log disc). Needs disc >= 1.
pub fn max_degree_for_disc(disc: &BigInt, ctx: Ctx) -> Result<u32> {
    debug_assert!(disc >= &BigInt::one());
    let target = Ball::from_bigint(disc);
    let mut d = 1u32;
    loop {
        let next = d + 1;
        let ok = decide_le(ctx, &format!("minkowski degree bound at d = {next}"), |c| {
            minkowski_min_disc(next, next / 2, c)
        }, |_| target.clone())?;
        if !ok {
            return Ok(d);
        }
        d = next;
    }
}

#[derive(Clone, Debug)]
pub struct OdlyzkoBound {
    pub applicable: bool,
    pub bound: BigInt,
}

/// Discriminant lower bound 55^r1 21^(2 r2), applicable for degree > 10^5.
pub fn odlyzko(d: u32, r1: u32, r2: u32) -> OdlyzkoBound {
    debug_assert_eq!(r1 + 2 * r2, d);
    let bound = BigInt::from(55).pow(r1) * BigInt::from(21).pow(2 * r2);
    OdlyzkoBound { applicable: d > 100_000, bound }
}

/// Class number bound h <= 100 (pi/12)^deg D.
pub fn h_bound(d_abs: &BigInt, deg: u32, ctx: Ctx) -> Ball {
    let prec = ctx.prec;
    let p = pi(prec).powi(deg as u64, prec);
    let twelve = Ball::from_bigint(&BigInt::from(12)).powi(deg as u64, prec);
    p.div(&twelve, prec).mul_i64(100, prec).mul(&Ball::from_bigint(d_abs), prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minkowski_quadratic_imaginary() {
        // ((pi/4) * 4 / 2)^2 = pi^2 / 4 = 2.467...
        let ctx = Ctx::new(20);
        let m = minkowski_min_disc(2, 1, ctx);
        let p = pi(ctx.prec);
        let closed = p.mul(&p, ctx.prec).div(&Ball::from_i64(4), ctx.prec);
        assert!(m.overlaps(&closed));
        // consistent with the smallest imaginary quadratic |D| = 3
        assert_eq!(m.try_lt(&Ball::from_i64(3)), Some(true));
    }

    #[test]
    fn minkowski_totally_real_exact() {
        let ctx = Ctx::new(20);
        // d = 2, r2 = 0: (4/2)^2 = 4
        let m = minkowski_min_disc(2, 0, ctx);
        assert!(m.is_exact());
        assert!(m.contains(&crate::num::Bf::from_i64(4)));
        // consistent with the smallest real quadratic D = 5
        assert_eq!(m.try_le(&Ball::from_i64(5)), Some(true));
    }

    #[test]
    fn degree_bound_growth() {
        let ctx = Ctx::new(20);
        assert_eq!(max_degree_for_disc(&BigInt::from(1), ctx).unwrap(), 1);
        assert_eq!(max_degree_for_disc(&BigInt::from(4), ctx).unwrap(), 2);
        let d1 = max_degree_for_disc(&BigInt::from(1000), ctx).unwrap();
        let d2 = max_degree_for_disc(&BigInt::from(1_000_000), ctx).unwrap();
        assert!(d1 >= 2 && d2 > d1, "d1 = {d1}, d2 = {d2}");
    }

    #[test]
    fn odlyzko_applicability() {
        let o = odlyzko(2, 0, 1);
        assert!(!o.applicable);
        assert_eq!(o.bound, BigInt::from(441));
        let o = odlyzko(100_001, 100_001, 0);
        assert!(o.applicable);
    }

    #[test]
    fn class_number_bound_value() {
        // 100 (pi/12)^2 10^4 = 68538.9...
        let ctx = Ctx::new(20);
        let b = h_bound(&BigInt::from(10_000), 2, ctx);
        assert_eq!(Ball::from_i64(68_538).try_lt(&b), Some(true));
        assert_eq!(b.try_lt(&Ball::from_i64(68_540)), Some(true));
    }
}

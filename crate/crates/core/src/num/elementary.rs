//! Rigorously bounded elementary constants and functions: pi, ln 2, exp, ln.
//!
//! Point evaluations return balls whose radius covers series truncation and
//! all rounding; ball arguments are handled by monotone endpoint evaluation.

use super::ball::Ball;
use super::bigfloat::{Bf, Dir};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::Mutex;

static PI_CACHE: Lazy<Mutex<HashMap<u32, Ball>>> = Lazy::new(|| Mutex::new(HashMap::new()));
static LN2_CACHE: Lazy<Mutex<HashMap<u32, Ball>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// Scaled arctangent: returns (S, err_units) with atan(1/k) in
/// (S +- err_units) * 2^-scale, via the alternating Taylor series evaluated
/// in integer arithmetic.
fn atan_inv_scaled(k: u64, scale: u32) -> (BigInt, u64) {
    let one_scaled = BigUint::one() << scale;
    let kk = BigUint::from(k) * BigUint::from(k);
    let mut kpow = BigUint::from(k); // k^(2i+1)
    let mut sum = BigInt::zero();
    let mut i: u64 = 0;
    loop {
        let denom = &kpow * BigUint::from(2 * i + 1);
        if denom > one_scaled {
            // All further terms contribute < 1 unit in total (alternating).
            return (sum, i + 1);
        }
        let term = BigInt::from(&one_scaled / &denom);
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        kpow *= &kk;
        i += 1;
    }
}

/// pi with radius below 2^-(prec+8), via Machin's formula.
pub fn pi(prec: u32) -> Ball {
    if let Some(v) = PI_CACHE.lock().unwrap().get(&prec) {
        return v.clone();
    }
    let scale = prec + 24;
    let (s5, n5) = atan_inv_scaled(5, scale);
    let (s239, n239) = atan_inv_scaled(239, scale);
    let mid = Bf::new(16 * s5 - 4 * s239, -(scale as i64));
    let err_units = 16 * (n5 + 1) + 4 * (n239 + 1);
    let rad = Bf::from_i64(err_units as i64).mul_pow2(-(scale as i64));
    let v = Ball::new(mid, rad.round(32, Dir::Ceil)).squash(prec);
    PI_CACHE.lock().unwrap().insert(prec, v.clone());
    v
}

/// Scaled atanh(1/k) for k >= 2: value in [S, S + err_units] * 2^-scale.
fn atanh_inv_scaled(k: u64, scale: u32) -> (BigUint, u64) {
    let one_scaled = BigUint::one() << scale;
    let kk = BigUint::from(k) * BigUint::from(k);
    let mut kpow = BigUint::from(k);
    let mut sum = BigUint::zero();
    let mut i: u64 = 0;
    loop {
        let denom = &kpow * BigUint::from(2 * i + 1);
        if denom > one_scaled {
            // Floors under-count by < 1 each; the tail is < 2 units.
            return (sum, i + 2);
        }
        sum += &one_scaled / &denom;
        kpow *= &kk;
        i += 1;
    }
}

/// ln 2 = 2 atanh(1/3).
pub fn ln2(prec: u32) -> Ball {
    if let Some(v) = LN2_CACHE.lock().unwrap().get(&prec) {
        return v.clone();
    }
    let scale = prec + 24;
    let (s, err) = atanh_inv_scaled(3, scale);
    let lo = Bf::new(BigInt::from(s) << 1u32, -(scale as i64));
    let hi = lo.add(&Bf::from_i64(2 * err as i64).mul_pow2(-(scale as i64)));
    let v = Ball::from_endpoints(lo, hi).squash(prec);
    LN2_CACHE.lock().unwrap().insert(prec, v.clone());
    v
}

/// ln of an exact positive dyadic point.
fn ln_point(x: &Bf, prec: u32) -> Ball {
    assert!(x.is_positive(), "ln of a nonpositive value");
    let work = prec + 16;
    // x = v * 2^t with v in [1/2, 1).
    let t = x.top();
    let v = x.mul_pow2(-t);
    // u = (v-1)/(v+1) in (-1/3, 0]; ln v = 2 atanh(u).
    let one = Ball::one();
    let vb = Ball::exact(v);
    let u = vb.sub(&one, work).div(&vb.add(&one, work), work);
    let u2 = u.mul(&u, work);
    // Sum_{i=0..N} u^(2i+1)/(2i+1); |u| <= 1/3 so each term gains >= 3.1 bits.
    let n_terms = (work as u64 * 100 / 316 + 4) as u32;
    let mut acc = Ball::zero();
    let mut upow = u.clone();
    for i in 0..n_terms {
        let term = upow.div(&Ball::from_i64((2 * i + 1) as i64), work);
        acc = acc.add(&term, work);
        upow = upow.mul(&u2, work);
    }
    // Tail bound: |u|^(2N+1)/((2N+1)(1-u^2)) <= 2^(-1.585(2N+1)), |u| <= 1/3.
    let tail_exp = -((2 * n_terms as i64 + 1) * 1585 / 1000) + 1;
    let atanh_u = acc.widen(&Bf::pow2(tail_exp));
    let ln_v = atanh_u.mul_pow2(1);
    let ln2v = ln2(work);
    ln_v.add(&ln2v.mul_i64(t, work), work).squash(prec)
}

/// ln over a ball (monotone endpoints); lower endpoint must be positive.
pub fn ln(x: &Ball, prec: u32) -> Ball {
    let lo = x.lo();
    assert!(lo.is_positive(), "ln of a ball reaching zero");
    if x.is_exact() {
        return ln_point(x.mid(), prec);
    }
    let a = ln_point(&lo, prec + 4);
    let b = ln_point(&x.hi(), prec + 4);
    Ball::from_endpoints(a.lo(), b.hi()).squash(prec)
}

/// Base-2 logarithm.
pub fn log2(x: &Ball, prec: u32) -> Ball {
    let work = prec + 8;
    ln(x, work).div(&ln2(work), work).squash(prec)
}

/// exp of an exact dyadic point.
fn exp_point(x: &Bf, prec: u32) -> Ball {
    let work = prec + 24;
    if x.is_zero() {
        return Ball::one();
    }
    // Reduce so |y| <= 1/2, with y = x / 2^j.
    let j = (x.top() + 1).max(0) as u32;
    let y = Ball::exact(x.mul_pow2(-(j as i64)));
    // Taylor sum with remainder <= 2|y|^(N+1)/(N+1)!.
    let mut acc = Ball::one();
    let mut term = Ball::one();
    // Stop once 2|y|^(N+1)/(N+1)! <= 2^-(work+7), using |y| <= 1/2.
    let mut i: u64 = 1;
    let mut logfact = 0f64;
    let n_terms = loop {
        logfact += ((i + 1) as f64).log2();
        if (i as f64 + 1.0) + logfact >= (work + 8) as f64 {
            break i;
        }
        i += 1;
    };
    for k in 1..=n_terms {
        term = term.mul(&y, work).div(&Ball::from_i64(k as i64), work);
        acc = acc.add(&term, work);
    }
    let mut r = acc.widen(&Bf::pow2(-(work as i64) - 6));
    for _ in 0..j {
        r = r.mul(&r, work);
    }
    r.squash(prec)
}

/// exp over a ball (monotone endpoints).
pub fn exp(x: &Ball, prec: u32) -> Ball {
    if x.is_exact() {
        return exp_point(x.mid(), prec);
    }
    let a = exp_point(&x.lo(), prec + 4);
    let b = exp_point(&x.hi(), prec + 4);
    Ball::from_endpoints(a.lo(), b.hi()).squash(prec)
}

/// x^y = exp(y ln x) for x with positive lower endpoint.
pub fn pow(x: &Ball, y: &Ball, prec: u32) -> Ball {
    let work = prec + 16;
    exp(&ln(x, work).mul(y, work), prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close_to(b: &Ball, v: f64, tol: f64) {
        assert!(
            (b.to_f64() - v).abs() <= tol,
            "ball {} != {} (rad {})",
            b.to_f64(),
            v,
            b.rad_to_f64()
        );
    }

    #[test]
    fn pi_matches_reference_and_is_tight() {
        let p = pi(200);
        // 40 digits frozen from an independent high-precision computation.
        assert_close_to(&p, 3.141592653589793, 1e-15);
        assert!(p.rad_below_pow2(-190));
        // Reference digits: 3.141592653589793238462643383279502884197
        let s = p.mid().to_decimal(30, Dir::Floor);
        assert!(s.starts_with("3.1415926535897932384626433832"), "{s}");
    }

    #[test]
    fn ln2_matches_reference() {
        let l = ln2(150);
        let s = l.mid().to_decimal(20, Dir::Floor);
        // 0.69314718055994530941...
        assert!(s.starts_with("6.931471805599453094"), "{s}");
        assert!(l.rad_below_pow2(-140));
    }

    #[test]
    fn ln_and_exp_roundtrip() {
        let prec = 150;
        let x = Ball::from_i64(10);
        let lx = ln(&x, prec);
        assert_close_to(&lx, core::f64::consts::LN_10, 1e-12);
        let back = exp(&lx, prec);
        assert!(back.contains(&Bf::from_i64(10)));
        assert!(back.rad_below_pow2(-120));
    }

    #[test]
    fn exp_one_matches_e() {
        let e = exp(&Ball::one(), 150);
        let s = e.mid().to_decimal(20, Dir::Floor);
        // 2.7182818284590452353...
        assert!(s.starts_with("2.718281828459045235"), "{s}");
    }

    #[test]
    fn log2_of_pow2_contains_integer() {
        let v = log2(&Ball::from_i64(1024), 120);
        assert!(v.contains(&Bf::from_i64(10)));
        assert!(v.rad_below_pow2(-100));
    }

    #[test]
    fn pow_rational_exponent() {
        let prec = 150;
        let y = Ball::from_i64(1).div(&Ball::from_i64(2), prec);
        let v = pow(&Ball::from_i64(9), &y, prec);
        assert!(v.contains(&Bf::from_i64(3)));
    }
}

//! Rigorous values of zeta, Dirichlet L, and Dedekind zeta attached to a
//! quadratic field or to Q. Every result is an enclosure; the L(1) value is
//! cross-checked between two independent routes before being returned.

use crate::error::{Error, Result};
use crate::fields::class_number::class_number_imaginary;
use crate::fields::quadratic::{BaseField, QuadraticField};
use crate::fields::splitting::kronecker;
use crate::num::elementary::pi;
use crate::num::zeta::{character_sum_bound, l_one_series, zeta};
use crate::num::{Ball, Bf, Ctx};

/// chi_D(n), the quadratic character attached to the field.
pub fn character(k: &QuadraticField, n: u64) -> i32 {
    kronecker(k.d, n as i64)
}

/// zeta(s) for integer s >= 2.
pub fn zeta_value(s: u32, ctx: Ctx) -> Result<Ball> {
    if s < 2 {
        return Err(Error::precondition("zeta(s) needs s >= 2 (s = 1 is the pole)"));
    }
    Ok(zeta(s, ctx.prec))
}

/// L(s, chi_D) for integer s >= 2.
pub fn l_value(k: &QuadraticField, s: u32, ctx: Ctx) -> Result<Ball> {
    if s < 2 {
        return Err(Error::precondition("use l_one for s = 1"));
    }
    Ok(crate::num::zeta::dirichlet_l(|n| character(k, n), k.abs_disc(), s, ctx.prec))
}

/// Dedekind zeta of the field at integer s >= 2. For Q this is zeta(s);
/// for a quadratic field, zeta(s) L(s, chi_D).
pub fn dedekind_zeta_value(k: &BaseField, s: u32, ctx: Ctx) -> Result<Ball> {
    match k {
        BaseField::Rational => zeta_value(s, ctx),
        BaseField::Quadratic(q) => {
            let z = zeta_value(s, ctx)?;
            let l = l_value(q, s, ctx)?;
            Ok(z.mul(&l, ctx.prec))
        }
    }
}

/// L(1, chi_D) by direct series with an Abel-summation tail bound. The
/// term count aims at the ctx target but is capped; the radius reports
/// whatever accuracy was actually achieved.
pub fn l_one_by_series_capped(k: &QuadraticField, ctx: Ctx, max_terms: u64) -> Result<Ball> {
    let q = k.abs_disc();
    let chi = |n: u64| character(k, n);
    let bound = character_sum_bound(&chi, q).max(1);
    // tail radius ~ 2 bound / (n + 1)
    let target_bits = ((ctx.digits as u64) * 3322 / 1000 + 4).min(40);
    let wanted = (2 * bound).saturating_mul(1u64 << target_bits);
    let n_terms = wanted.clamp(4 * q, max_terms.max(4 * q));
    Ok(l_one_series(chi, q, n_terms, ctx.prec))
}

pub fn l_one_by_series(k: &QuadraticField, ctx: Ctx) -> Result<Ball> {
    l_one_by_series_capped(k, ctx, 20_000_000)
}

/// L(1, chi_D) for D < 0 from the class number formula
/// L(1, chi) = 2 pi h / (w sqrt(|D|)), w = 6, 4, 2 for D = -3, -4, else.
pub fn l_one_by_class_number(k: &QuadraticField, ctx: Ctx) -> Result<Ball> {
    if k.d >= 0 {
        return Err(Error::unsupported("class number route needs an imaginary field"));
    }
    let h = class_number_imaginary(k)?;
    let w: i64 = match k.d {
        -3 => 6,
        -4 => 4,
        _ => 2,
    };
    let prec = ctx.prec;
    let num = pi(prec).mul_i64(2 * h as i64, prec);
    let den = Ball::from_i64(w).mul(&Ball::from_i64(k.abs_disc() as i64).sqrt(prec), prec);
    Ok(num.div(&den, prec))
}

/// L(1, chi_D): the series route, intersected with the class number route
/// when the field is imaginary. The two enclosures must overlap.
pub fn l_one(k: &QuadraticField, ctx: Ctx) -> Result<Ball> {
    // A capped series keeps the cross-check cheap; the class number route
    // then sharpens the interval for D < 0.
    let series = l_one_by_series_capped(k, ctx, 100_000)?;
    if k.d < 0 {
        let cnf = l_one_by_class_number(k, ctx)?;
        if series.disjoint(&cnf) {
            // Both routes carry proven error bounds; disjoint intervals
            // would mean a defect in one of them.
            panic!("L(1) enclosures are disjoint for D = {}", k.d);
        }
        Ok(intersect(&series, &cnf, ctx.prec))
    } else {
        Ok(series)
    }
}

fn intersect(a: &Ball, b: &Ball, prec: u32) -> Ball {
    let lo = Bf::max(a.lo(), b.lo());
    let hi = Bf::min(a.hi(), b.hi());
    Ball::from_endpoints(lo, hi).squash(prec)
}

/// Residue at s = 1 of the Dedekind zeta function of an imaginary
/// quadratic field: equals L(1, chi_D).
pub fn dedekind_residue(k: &QuadraticField, ctx: Ctx) -> Result<Ball> {
    l_one(k, ctx)
}

//! Growth bounds for the index [G : L] as the covolume budget x grows.
//!
//! Two regimes. The general regime turns the index bound into an explicit
//! power x^{C_1} by capping every ingredient through the discriminant
//! comparison: D_{l/k} <= x^{c_1}, a(k) <= c_2 log x, #T <= c_3 log x,
//! at most c_4 log x places carry a nontrivial boundary orbit, and
//! h_l <= x^{c_5}. The power-of-2 regime (n a power of 2, the base field
//! rational or imaginary quadratic, [l:k] <= 2) replaces h_l by the
//! n-torsion of the class group via the 2-rank, which genus theory caps by
//! the number of ramified primes; prime-counting through primorials then
//! yields the c^{log x / log log x} shape.
//!
//! All logarithms here are base 2, and x >= 16 so that log2 x >= 4 and
//! 2x <= x^{5/4}.

use crate::error::{Error, Result};
use crate::fields::sieve::is_prime_u64;
use crate::num::elementary::{log2, pow};
use crate::num::{decide_le, Ball, Ctx};
use num_bigint::BigInt;
use num_traits::One;

use super::bounds::comparison_case;
use crate::lie::GroupData;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthMode {
    General,
    PowerOfTwo,
}

/// The bound, the shape constant, and the derived constants for audit.
#[derive(Clone, Debug)]
pub struct GrowthBound {
    pub mode: GrowthMode,
    pub x: u64,
    pub value: Ball,
    /// General mode: the exponent C_1 with value = x^{C_1}. Power-of-2
    /// mode: the base c with value = c^{log2 x / log2 log2 x}.
    pub shape_constant: Ball,
    pub constants: Vec<(String, Ball)>,
}

/// q_v^{delta} <= f_v needs delta = r - eps log2 n > 0; for A2 this is
/// 2 - log2 3 = log2(4/3).
fn delta_forms(g: &GroupData, prec: u32) -> Result<Ball> {
    let log2n = log2(&Ball::from_i64(g.n as i64), prec);
    let d = Ball::from_i64(g.rank as i64).sub(&log2n.mul_i64(g.eps as i64, prec), prec);
    if !d.lo().is_positive() {
        return Err(Error::precondition(format!(
            "the local expansion exponent for {} is not positive",
            g.label()
        )));
    }
    Ok(d)
}

/// Largest m >= 0 with p_1 ... p_m <= x^{e(prec)}, decided rigorously with
/// precision escalation. The exponent is recomputed inside the comparison
/// so escalation sees a sharper cap.
fn max_omega<F>(ctx: Ctx, x: u64, exponent: F) -> Result<u32>
where
    F: Fn(Ctx) -> Ball,
{
    let mut primorial = BigInt::one();
    let mut p = 2u64;
    let mut m = 0u32;
    loop {
        let candidate = &primorial * BigInt::from(p);
        let cand2 = candidate.clone();
        let fits = decide_le(
            ctx,
            "primorial against the discriminant cap",
            move |c| Ball::from_bigint(&cand2).squash(c.prec),
            |c| pow(&Ball::from_i64(x as i64), &exponent(c), c.prec),
        )?;
        if !fits {
            return Ok(m);
        }
        m += 1;
        primorial = candidate;
        p += 1;
        while !is_prime_u64(p) {
            p += 1;
        }
        if m > 10_000 {
            return Err(Error::precondition("primorial cap ran away"));
        }
    }
}

pub fn index_growth_bounds(
    x: u64,
    g: &GroupData,
    mode: GrowthMode,
    ctx: Ctx,
) -> Result<GrowthBound> {
    if x < 16 {
        return Err(Error::precondition(format!("the budget x must be at least 16, got {x}")));
    }
    match mode {
        GrowthMode::General => general_bound(x, g, ctx),
        GrowthMode::PowerOfTwo => power_of_two_bound(x, g, ctx),
    }
}

fn rational(num: i64, den: i64, prec: u32) -> Ball {
    Ball::from_ratio(&BigInt::from(num), &BigInt::from(den), prec)
}

fn general_bound(x: u64, g: &GroupData, ctx: Ctx) -> Result<GrowthBound> {
    let prec = ctx.prec;
    let case = comparison_case(g);
    let (d1n, d1d) = case.delta1;
    let (d2n, d2d) = case.delta2;
    // c_1 = 5/(4 delta_2), c_2 = max(1/4, 5/(2 delta_1)): both exact.
    let c1 = rational(5 * d2d as i64, 4 * d2n as i64, prec);
    // 5/(2 delta_1) vs 1/4: compare 20 d1d and d1n exactly.
    let c2 = if 20 * d1d >= d1n {
        rational(5 * d1d as i64, 2 * d1n as i64, prec)
    } else {
        rational(1, 4, prec)
    };
    let df = delta_forms(g, prec)?;
    let c3 = rational(5, 4, prec).div(&df, prec);
    let c4 = c3.mul_pow2(1).add(&c1, prec);
    // h_l <= 100 D_l <= x^{7/4} (x^{5/4})^{t/delta_1 + 1/delta_2}
    let t = g.splitting_degree() as i64;
    let c5 = rational(7, 4, prec).add(
        &rational(5, 4, prec).mul(
            &rational(t * d1d as i64, d1n as i64, prec).add(&rational(d2d as i64, d2n as i64, prec), prec),
            prec,
        ),
        prec,
    );

    let log2n = log2(&Ball::from_i64(g.n as i64), prec);
    let log2r1 = log2(&Ball::from_i64(g.rank as i64 + 1), prec);
    let eps = g.eps as i64;
    let epsp = g.eps_prime as i64;

    // C_1 = (eps #S log2 n + 1)/4 + eps' c_5 + (eps + 3 eps') c_2 log2 n
    //       + eps c_3 log2 n + eps'' c_1 + c_4 log2(r+1), with #S = 1.
    let mut big_c = log2n
        .mul_i64(eps, prec)
        .add(&Ball::one(), prec)
        .mul(&rational(1, 4, prec), prec);
    big_c = big_c.add(&c5.mul_i64(epsp, prec), prec);
    big_c = big_c.add(&c2.mul(&log2n, prec).mul_i64(eps + 3 * epsp, prec), prec);
    big_c = big_c.add(&c3.mul(&log2n, prec).mul_i64(eps, prec), prec);
    if g.eps_dprime > 0 {
        big_c = big_c.add(&c1.mul_i64(g.eps_dprime as i64, prec), prec);
    }
    big_c = big_c.add(&c4.mul(&log2r1, prec), prec);

    let value = pow(&Ball::from_i64(x as i64), &big_c, prec);
    let constants = vec![
        ("delta_1".to_string(), rational(d1n as i64, d1d as i64, prec)),
        ("delta_2".to_string(), rational(d2n as i64, d2d as i64, prec)),
        ("delta_forms".to_string(), df),
        ("c_1".to_string(), c1),
        ("c_2".to_string(), c2),
        ("c_3".to_string(), c3),
        ("c_4".to_string(), c4),
        ("c_5".to_string(), c5),
        ("C_1".to_string(), big_c.clone()),
    ];
    Ok(GrowthBound { mode: GrowthMode::General, x, value, shape_constant: big_c, constants })
}

fn power_of_two_bound(x: u64, g: &GroupData, ctx: Ctx) -> Result<GrowthBound> {
    let n = g.n;
    if n & (n - 1) != 0 {
        return Err(Error::precondition(format!(
            "the power-of-2 regime needs n a power of 2, got n = {n} for {}",
            g.label()
        )));
    }
    let t = g.splitting_degree();
    if t > 2 {
        return Err(Error::unsupported(
            "the power-of-2 regime assumes [l:k] <= 2; triality forms are out",
        ));
    }
    let prec = ctx.prec;
    let case = comparison_case(g);
    let (d1n, d1d) = case.delta1;
    let (d2n, d2d) = case.delta2;
    let df = delta_forms(g, prec)?;

    // D_k <= x^{5/(4 delta_1)} so t_k <= max_omega of that cap.
    let m_k = max_omega(ctx, x, move |c| rational(5 * d1d as i64, 4 * d1n as i64, c.prec))?;
    // T-places: prod q_v^{delta} <= 2x <= x^{5/4}, q_v >= 2, at most two
    // places per rational prime: distinct primes multiply to at least the
    // square root, so the prime support fits under x^{5/(2 delta)}.
    let g2 = g.clone();
    let m_t = max_omega(ctx, x, move |c| {
        let dfc = delta_forms(&g2, c.prec).expect("positivity already checked");
        rational(5, 2, c.prec).div(&dfc, c.prec)
    })?;

    let (m_l, m_r, rho2_cap) = if t == 1 {
        // l = k: the 2-rank is at most t_k - 1 by genus theory.
        (m_k, 0u32, m_k.saturating_sub(1))
    } else {
        // l quadratic over k with [l:Q] <= 4: rank bound 2(t_l + t_k - 1).
        let m_l = max_omega(ctx, x, move |c| {
            let a = rational(5 * (t as i64) * d1d as i64, 4 * d1n as i64, c.prec);
            let b = rational(5 * d2d as i64, 4 * d2n as i64, c.prec);
            a.add(&b, c.prec)
        })?;
        let m_r = max_omega(ctx, x, move |c| rational(5 * d2d as i64, 4 * d2n as i64, c.prec))?;
        // 2 (t_l + t_k - 1)
        (m_l, m_r, 2 * (m_l + m_k).saturating_sub(1))
    };

    // a(k) <= 2, a(l) <= 2t; #T <= 2 m_T; nontrivial boundary orbits live
    // over T_1, R, T_2: at most 4 m_T + 2 m_R places.
    let a_k = 2u64;
    let a_l = 2 * t as u64;
    let t_count = 2 * m_t as u64;
    let m_xi = 4 * m_t as u64 + 2 * m_r as u64;

    let eps = g.eps as u64;
    let epsp = g.eps_prime as u64;
    let mut v = BigInt::from(n).pow((eps * (1 + a_k + t_count) + epsp * (rho2_cap as u64 + a_l)) as u32);
    v *= 2;
    v *= BigInt::from(g.rank + 1).pow(m_xi as u32);

    let mut value = Ball::from_bigint(&v);
    let mut rel_exp = Ball::zero();
    if g.eps_dprime > 0 {
        // outer D_r, r even: the relative discriminant survives as a power
        // of x and is reported separately.
        rel_exp = rational(5 * d2d as i64, 4 * d2n as i64, prec).mul_i64(g.eps_dprime as i64, prec);
        value = value.mul(&pow(&Ball::from_i64(x as i64), &rel_exp, prec), prec);
    }

    // The base c with value = c^{log2 x / log2 log2 x}.
    let lgv = log2(&value, prec);
    let lgx = log2(&Ball::from_i64(x as i64), prec);
    let lglgx = log2(&lgx, prec);
    let c_base = pow(
        &Ball::from_i64(2),
        &lgv.mul(&lglgx, prec).div(&lgx, prec),
        prec,
    );

    let constants = vec![
        ("delta_forms".to_string(), df),
        ("m_k".to_string(), Ball::from_i64(m_k as i64)),
        ("m_l".to_string(), Ball::from_i64(m_l as i64)),
        ("m_T".to_string(), Ball::from_i64(m_t as i64)),
        ("m_R".to_string(), Ball::from_i64(m_r as i64)),
        ("rho2_cap".to_string(), Ball::from_i64(rho2_cap as i64)),
        ("xi_places".to_string(), Ball::from_i64(m_xi as i64)),
        ("rel_disc_exponent".to_string(), rel_exp),
        ("shape_base".to_string(), c_base.clone()),
    ];
    Ok(GrowthBound { mode: GrowthMode::PowerOfTwo, x, value, shape_constant: c_base, constants })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{group_data, Family};

    #[test]
    fn small_x_rejected() {
        let ctx = Ctx::new(16);
        let g = group_data(Family::B, 2, 1, None).unwrap();
        assert!(index_growth_bounds(15, &g, GrowthMode::General, ctx).is_err());
        assert!(index_growth_bounds(16, &g, GrowthMode::General, ctx).is_ok());
    }

    #[test]
    fn odd_n_rejected_in_power_of_two_mode() {
        let ctx = Ctx::new(16);
        let a2 = group_data(Family::A, 2, 1, None).unwrap();
        assert!(index_growth_bounds(1 << 10, &a2, GrowthMode::PowerOfTwo, ctx).is_err());
        assert!(index_growth_bounds(1 << 10, &a2, GrowthMode::General, ctx).is_ok());
        // E6 has n = 3 as well
        let e6 = group_data(Family::E, 6, 1, None).unwrap();
        assert!(index_growth_bounds(1 << 10, &e6, GrowthMode::PowerOfTwo, ctx).is_err());
        // E8 has n = 1 = 2^0, which counts
        let e8 = group_data(Family::E, 8, 1, None).unwrap();
        assert!(index_growth_bounds(1 << 10, &e8, GrowthMode::PowerOfTwo, ctx).is_ok());
    }

    #[test]
    fn triality_rejected_in_power_of_two_mode() {
        let ctx = Ctx::new(16);
        let d4 = group_data(Family::D, 4, 3, None).unwrap();
        assert!(matches!(
            index_growth_bounds(1 << 10, &d4, GrowthMode::PowerOfTwo, ctx),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn both_modes_monotone_for_b2() {
        let ctx = Ctx::new(24);
        let g = group_data(Family::B, 2, 1, None).unwrap();
        for mode in [GrowthMode::General, GrowthMode::PowerOfTwo] {
            let mut prev: Option<Ball> = None;
            for e in [4u32, 8, 12, 16, 20] {
                let b = index_growth_bounds(1u64 << e, &g, mode, ctx).unwrap();
                if let Some(p) = &prev {
                    assert_eq!(p.try_le(&b.value), Some(true), "mode {mode:?} at 2^{e}");
                }
                prev = Some(b.value);
            }
        }
    }

    #[test]
    fn b2_power_of_two_beats_general() {
        let ctx = Ctx::new(24);
        let g = group_data(Family::B, 2, 1, None).unwrap();
        let x = 1u64 << 20;
        let gen = index_growth_bounds(x, &g, GrowthMode::General, ctx).unwrap();
        let p2 = index_growth_bounds(x, &g, GrowthMode::PowerOfTwo, ctx).unwrap();
        assert_eq!(p2.value.try_lt(&gen.value), Some(true));
    }

    #[test]
    fn outer_a2_general_constants() {
        let ctx = Ctx::new(24);
        let g = group_data(Family::A, 2, 2, None).unwrap();
        let b = index_growth_bounds(1 << 12, &g, GrowthMode::General, ctx).unwrap();
        // A2 case: delta_1 = 1/100, delta_2 = 1/2, so c_1 = 5/2, c_2 = 250.
        let c1 = b.constants.iter().find(|(k, _)| k == "c_1").unwrap();
        assert!(c1.1.overlaps(&rational(5, 2, ctx.prec)));
        let c2 = b.constants.iter().find(|(k, _)| k == "c_2").unwrap();
        assert!(c2.1.overlaps(&Ball::from_i64(250)));
        assert_eq!(Ball::zero().try_lt(&b.shape_constant), Some(true));
        // value = x^{C_1} > x
        assert_eq!(Ball::from_i64(1 << 12).try_lt(&b.value), Some(true));
    }

    #[test]
    fn power_of_two_counts_grow_slowly() {
        let ctx = Ctx::new(24);
        let g = group_data(Family::B, 2, 1, None).unwrap();
        let b1 = index_growth_bounds(1 << 10, &g, GrowthMode::PowerOfTwo, ctx).unwrap();
        let b2 = index_growth_bounds(1 << 30, &g, GrowthMode::PowerOfTwo, ctx).unwrap();
        let get = |b: &GrowthBound, k: &str| {
            b.constants
                .iter()
                .find(|(name, _)| name == k)
                .unwrap()
                .1
                .to_f64()
        };
        let mk1 = get(&b1, "m_k");
        let mk30 = get(&b2, "m_k");
        assert!(mk1 >= 1.0);
        assert!(mk30 > mk1);
        // prime-counting caps stay small even at 2^30 (B2 has delta_1 =
        // 1/10, so the discriminant cap is x^{12.5} and m_k ~ 55)
        assert!(mk30 < 80.0);
        assert!(get(&b2, "m_T") < 60.0);
    }

    #[test]
    fn determinism() {
        let ctx = Ctx::new(24);
        let g = group_data(Family::C, 4, 1, None).unwrap();
        let a = index_growth_bounds(1 << 16, &g, GrowthMode::General, ctx).unwrap();
        let b = index_growth_bounds(1 << 16, &g, GrowthMode::General, ctx).unwrap();
        assert_eq!(
            a.value.mid().to_decimal(20, crate::num::Dir::Floor),
            b.value.mid().to_decimal(20, crate::num::Dir::Floor)
        );
    }
}

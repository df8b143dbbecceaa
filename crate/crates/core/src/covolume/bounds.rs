//! Bounds on the index of a principal lattice in its normalizer and the
//! lower bound B for the covolume-side quantity used to control
//! discriminants.
//!
//! The index bound is
//!
//!   [G : L] <= n^{eps #S} * 2 h_l^{eps'} * n^{eps a(k) + eps' a(l) + eps #T}
//!              * (D_l / D_k^{[l:k]})^{eps''} * prod_v #Xi_v
//!
//! and is exact (a bigint) whenever h_l is exact. The quantity
//!
//!   B = D_k^{dim/2} * n^{-eps a(k) - eps' a(l)} * h_l^{-eps'}
//!       * D_{l/k}^{s'} * arch^{[k:Q]}
//!
//! is compared against D_k^{delta_1} D_{l/k}^{delta_2} with exponents
//! depending only on the type; groups that fail the comparison are the
//! finitely many exceptions.

use crate::error::{Error, Result};
use crate::num::{decide_le, Ball, Ctx};
use num_bigint::BigInt;
use num_traits::One;

use super::pair::{ExtensionPair, HValue};
use super::prasad::arch_factor_single;
use crate::lie::{Family, GroupData};

/// The index bound, kept exact when the class number is.
#[derive(Clone, Debug)]
pub struct IndexBound {
    pub value: Ball,
    pub exact: Option<BigInt>,
    pub h: HValue,
}

/// n^e as a bigint.
fn npow(n: u32, e: u64) -> BigInt {
    let mut acc = BigInt::one();
    for _ in 0..e {
        acc *= n;
    }
    acc
}

pub fn index_upper_bound(
    g: &GroupData,
    pair: &ExtensionPair,
    num_s: u32,
    num_t: u32,
    xi_orders: &[u32],
    ctx: Ctx,
) -> Result<IndexBound> {
    if g.splitting_degree() != pair.twist_degree {
        return Err(Error::precondition(format!(
            "group {} needs [l:k] = {} but the pair has [l:k] = {}",
            g.label(),
            g.splitting_degree(),
            pair.twist_degree
        )));
    }
    if num_s == 0 {
        return Err(Error::precondition("S contains at least the archimedean places"));
    }
    for &x in xi_orders {
        if x == 0 || x > g.rank + 1 {
            return Err(Error::precondition(format!(
                "a boundary-orbit order of {} is outside 1..={}",
                x,
                g.rank + 1
            )));
        }
    }
    let n = g.n;
    let eps = g.eps as u64;
    let epsp = g.eps_prime as u64;
    let a_k = pair.base.num_arch() as u64;
    let a_l = pair.ext_arch() as u64;

    // n^{eps #S} * 2 * n^{eps a(k) + eps' a(l) + eps #T} * rel^{eps''} * prod Xi
    let mut int_part = npow(n, eps * num_s as u64);
    int_part *= 2;
    int_part *= npow(n, eps * a_k + epsp * a_l + eps * num_t as u64);
    if g.eps_dprime > 0 {
        int_part *= pair.rel_disc().pow(g.eps_dprime);
    }
    for &x in xi_orders {
        int_part *= x;
    }

    let h = pair.h_value(ctx);
    match &h {
        HValue::Exact(hv) => {
            let total = &int_part * BigInt::from(*hv).pow(g.eps_prime);
            Ok(IndexBound { value: Ball::from_bigint(&total), exact: Some(total), h })
        }
        HValue::Bound(hb) => {
            let value = Ball::from_bigint(&int_part)
                .mul(&hb.powi(epsp, ctx.prec), ctx.prec);
            Ok(IndexBound { value, exact: None, h })
        }
    }
}

/// Which clause of the discriminant comparison applies, with the exponent
/// pair (delta_1, delta_2) as exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonCase {
    pub label: &'static str,
    /// delta_1 as (numerator, denominator)
    pub delta1: (u64, u64),
    /// delta_2 as (numerator, denominator)
    pub delta2: (u64, u64),
}

pub fn comparison_case(g: &GroupData) -> ComparisonCase {
    if g.rank >= 30 {
        return ComparisonCase {
            label: "high-rank",
            delta1: ((g.dim - 4) as u64, 2),
            delta2: (1, 1),
        };
    }
    if g.family == Family::A && g.rank == 2 {
        return ComparisonCase { label: "A2", delta1: (1, 100), delta2: (1, 2) };
    }
    let small = matches!(
        (g.family, g.rank),
        (Family::A, 3) | (Family::B, 2) | (Family::C, 2)
    );
    if small {
        return ComparisonCase { label: "A3/B2", delta1: (1, 10), delta2: (1, 1) };
    }
    ComparisonCase { label: "generic", delta1: (1, 1), delta2: (1, 1) }
}

/// The lower-bound quantity B, the case it was compared under, and whether
/// B >= D_k^{delta_1} * D_{l/k}^{delta_2} holds.
#[derive(Clone, Debug)]
pub struct LowerBoundReport {
    pub b: Ball,
    pub half_b: Ball,
    pub case: ComparisonCase,
    pub holds: bool,
    pub h: HValue,
}

pub fn b_lower_bound(g: &GroupData, pair: &ExtensionPair, ctx: Ctx) -> Result<LowerBoundReport> {
    if g.splitting_degree() != pair.twist_degree {
        return Err(Error::precondition(format!(
            "group {} needs [l:k] = {} but the pair has [l:k] = {}",
            g.label(),
            g.splitting_degree(),
            pair.twist_degree
        )));
    }
    let dk = pair.base.disc_bigint();
    let rel = pair.rel_disc();
    let n = g.n;
    let eps = g.eps as u64;
    let epsp = g.eps_prime as u64;
    let a_k = pair.base.num_arch() as u64;
    let a_l = pair.ext_arch() as u64;
    let h = pair.h_value(ctx);

    let disc_factor = Ball::from_bigint(&dk).pow_ratio(g.dim as u64, 2, ctx.prec);
    let n_div = npow(n, eps * a_k + epsp * a_l);
    let (sp, sq) = g.s_prime;
    let rel_factor = Ball::from_bigint(&rel).pow_ratio(sp as u64, sq, ctx.prec);
    let arch = arch_factor_single(g, ctx).powi(pair.base.degree() as u64, ctx.prec);

    let mut b = disc_factor
        .mul(&rel_factor, ctx.prec)
        .mul(&arch, ctx.prec)
        .div(&Ball::from_bigint(&n_div), ctx.prec);
    b = match &h {
        HValue::Exact(hv) => {
            b.div(&Ball::from_bigint(&BigInt::from(*hv).pow(g.eps_prime)), ctx.prec)
        }
        HValue::Bound(hb) => b.div(&hb.powi(epsp, ctx.prec), ctx.prec),
    };

    let case = comparison_case(g);
    let dk2 = dk.clone();
    let rel2 = rel.clone();
    let c1 = case.delta1;
    let c2 = case.delta2;
    let b2 = b.clone();
    let holds = decide_le(
        ctx,
        "discriminant comparison for B",
        move |c| {
            Ball::from_bigint(&dk2)
                .pow_ratio(c1.0, c1.1 as u32, c.prec)
                .mul(&Ball::from_bigint(&rel2).pow_ratio(c2.0, c2.1 as u32, c.prec), c.prec)
        },
        move |c| b2.squash(c.prec),
    )?;

    let half_b = b.mul_pow2(-1);
    Ok(LowerBoundReport { b, half_b, case, holds, h })
}

/// Covolume-based class number bound: h_l <= mu n^eps / mu_0 where mu_0 is
/// a positive lower bound for the minimal covolume.
pub fn class_number_bound(total: &Ball, g: &GroupData, mu0: &Ball, ctx: Ctx) -> Result<Ball> {
    if mu0.lo().is_negative() || mu0.lo().is_zero() {
        return Err(Error::precondition("the covolume floor mu_0 must be strictly positive"));
    }
    let n_eps = npow(g.n, g.eps as u64);
    Ok(total.mul(&Ball::from_bigint(&n_eps), ctx.prec).div(mu0, ctx.prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::quadratic::{BaseField, QuadraticField};
    use crate::lie::group_data;
    use crate::num::Bf;

    #[test]
    fn closed_form_split_a2() {
        // k = l = Q, #T = 0, trivial orbit orders: bound = 2 n^{eps(#S + 2)}
        let ctx = Ctx::new(16);
        let g = group_data(Family::A, 2, 1, None).unwrap();
        let pair = ExtensionPair::inner(BaseField::Rational);
        let b = index_upper_bound(&g, &pair, 1, 0, &[], ctx).unwrap();
        // 2 * 3^{1*(1+2)} = 54
        assert_eq!(b.exact, Some(BigInt::from(54)));
        assert!(b.value.is_exact());
    }

    #[test]
    fn closed_form_matches_formula_for_all_types() {
        let ctx = Ctx::new(16);
        let pair = ExtensionPair::inner(BaseField::Rational);
        for (fam, rank) in [
            (Family::A, 2),
            (Family::A, 5),
            (Family::B, 3),
            (Family::C, 4),
            (Family::D, 4),
            (Family::D, 5),
            (Family::E, 6),
            (Family::E, 7),
            (Family::E, 8),
            (Family::F, 4),
            (Family::G, 2),
        ] {
            let g = group_data(fam, rank, 1, None).unwrap();
            for num_s in 1..=3u32 {
                let b = index_upper_bound(&g, &pair, num_s, 0, &[], ctx).unwrap();
                let expect = BigInt::from(2) * npow(g.n, g.eps as u64 * (num_s as u64 + 2));
                assert_eq!(b.exact, Some(expect), "{} num_s={}", g.label(), num_s);
            }
        }
    }

    #[test]
    fn xi_orders_validated() {
        let ctx = Ctx::new(16);
        let g = group_data(Family::A, 2, 1, None).unwrap();
        let pair = ExtensionPair::inner(BaseField::Rational);
        assert!(index_upper_bound(&g, &pair, 1, 0, &[4], ctx).is_err());
        assert!(index_upper_bound(&g, &pair, 1, 0, &[0], ctx).is_err());
        assert!(index_upper_bound(&g, &pair, 0, 0, &[], ctx).is_err());
        let b = index_upper_bound(&g, &pair, 1, 0, &[3, 2], ctx).unwrap();
        assert_eq!(b.exact, Some(BigInt::from(54 * 6)));
    }

    #[test]
    fn outer_a2_index_with_exact_h() {
        let ctx = Ctx::new(16);
        let g = group_data(Family::A, 2, 2, None).unwrap();
        let pair = ExtensionPair::quadratic_over_q(QuadraticField::new(-4).unwrap());
        let b = index_upper_bound(&g, &pair, 1, 0, &[], ctx).unwrap();
        // n = 3, eps = 1, eps' = 1, eps'' = 0, a(k) = a(l) = 1, h = 1:
        // 3^1 * 2 * 3^{1+1} * 1 = 54
        let expect = BigInt::from(3) * 2 * 9;
        assert_eq!(b.exact, Some(expect));
        assert!(b.h.is_exact());
    }

    #[test]
    fn comparison_cases() {
        let a2 = group_data(Family::A, 2, 1, None).unwrap();
        assert_eq!(comparison_case(&a2).label, "A2");
        assert_eq!(comparison_case(&a2).delta1, (1, 100));
        assert_eq!(comparison_case(&a2).delta2, (1, 2));
        let a3 = group_data(Family::A, 3, 1, None).unwrap();
        assert_eq!(comparison_case(&a3).label, "A3/B2");
        assert_eq!(comparison_case(&a3).delta1, (1, 10));
        let b2 = group_data(Family::B, 2, 1, None).unwrap();
        assert_eq!(comparison_case(&b2).label, "A3/B2");
        let c2 = group_data(Family::C, 2, 1, None).unwrap();
        assert_eq!(comparison_case(&c2).label, "A3/B2");
        let e8 = group_data(Family::E, 8, 1, None).unwrap();
        assert_eq!(comparison_case(&e8).label, "generic");
        let a30 = group_data(Family::A, 30, 1, None).unwrap();
        let case = comparison_case(&a30);
        assert_eq!(case.label, "high-rank");
        // dim(A_30) = 30 * 32 = 960, so delta_1 = (960 - 4)/2
        assert_eq!(a30.dim, 960);
        assert_eq!(case.delta1, (956, 2));
    }

    #[test]
    fn g2_over_q_is_an_exception() {
        let ctx = Ctx::new(24);
        let g = group_data(Family::G, 2, 1, None).unwrap();
        let pair = ExtensionPair::inner(BaseField::Rational);
        let rep = b_lower_bound(&g, &pair, ctx).unwrap();
        // B = (120 / (2 pi)^8)^1 = about 4.9e-5 < 1 = D^1 rel^1
        assert!(!rep.holds);
        assert_eq!(rep.case.label, "generic");
        let tiny = Ball::from_ratio(&BigInt::from(1), &BigInt::from(10_000), ctx.prec);
        assert_eq!(rep.b.try_lt(&tiny), Some(true));
        assert_eq!(Ball::zero().try_lt(&rep.b), Some(true));
        // half_b is exactly half
        assert!(rep.half_b.mul_pow2(1).overlaps(&rep.b));
    }

    #[test]
    fn e8_over_q_passes() {
        let ctx = Ctx::new(32);
        let g = group_data(Family::E, 8, 1, None).unwrap();
        let pair = ExtensionPair::inner(BaseField::Rational);
        let rep = b_lower_bound(&g, &pair, ctx).unwrap();
        // arch factor for E8 is huge: prod m_i! / (2 pi)^{128}... in fact
        // 1! 7! 11! 13! 17! 19! 23! 29! dwarfs (2 pi)^{128}.
        assert!(rep.holds);
        assert_eq!(Ball::one().try_lt(&rep.b), Some(true));
    }

    #[test]
    fn g2_imaginary_quadratic_first_pass() {
        let ctx = Ctx::new(24);
        let g = group_data(Family::G, 2, 1, None).unwrap();
        // |D| = 31 fails, |D| = 35 passes
        let k31 = BaseField::Quadratic(QuadraticField::new(-31).unwrap());
        let rep31 = b_lower_bound(&g, &pair_of(k31), ctx).unwrap();
        assert!(!rep31.holds);
        let k35 = BaseField::Quadratic(QuadraticField::new(-35).unwrap());
        let rep35 = b_lower_bound(&g, &pair_of(k35), ctx).unwrap();
        assert!(rep35.holds);
    }

    fn pair_of(k: BaseField) -> ExtensionPair {
        ExtensionPair::inner(k)
    }

    #[test]
    fn class_number_bound_positive_floor() {
        let ctx = Ctx::new(16);
        let g = group_data(Family::A, 2, 1, None).unwrap();
        let total = Ball::from_i64(1);
        assert!(class_number_bound(&total, &g, &Ball::zero(), ctx).is_err());
        let mu0 = Ball::from_ratio(&BigInt::one(), &BigInt::from(100_000), ctx.prec);
        let out = class_number_bound(&total, &g, &mu0, ctx).unwrap();
        // n^eps = 3 for A2: 1 * 3 / 1e-5 = 3e5
        let expect = Ball::from_i64(300_000);
        assert!(out.overlaps(&expect));
    }
}

//! The principal covolume: the product of a discriminant power, a relative
//! discriminant power, an archimedean factor built from factorials and
//! powers of 2 pi, the Tamagawa number, and the Euler product.
//!
//!   mu = D_k^{dim/2} * D_{l/k}^{s/2} * (prod_i m_i! / (2 pi)^{m_i + 1})^{[k:Q]} * E
//!
//! Every factor is carried as a rigorous enclosure and reported separately
//! so downstream bounds can reuse them.

use crate::error::{Error, Result};
use crate::num::elementary::pi;
use crate::num::{Ball, Ctx};
use num_bigint::BigInt;
use num_traits::One;

use super::euler::{euler_product, LocalOverride};
use super::pair::ExtensionPair;
use crate::lie::GroupData;

/// The covolume with each factor of the product kept separate.
#[derive(Clone, Debug)]
pub struct VolumeBreakdown {
    /// D_k^{dim/2}
    pub disc_factor: Ball,
    /// D_{l/k}^{s/2}
    pub rel_factor: Ball,
    /// (prod_i m_i! / (2 pi)^{m_i+1})^{[k:Q]}
    pub arch_factor: Ball,
    /// Tamagawa number; 1 for the simply connected groups handled here.
    pub tamagawa: u32,
    /// The Euler product E, overrides applied.
    pub euler: Ball,
    /// The full product.
    pub total: Ball,
    /// Echo of the overrides that went into `euler`, for reports.
    pub num_overrides: usize,
}

fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// D_k^{dim/2} * D_{l/k}^{s/2} * arch^{[k:Q]}, without the Euler product.
/// Exposed separately because the lower bound B reuses exactly these
/// factors.
pub(crate) fn arch_factor_single(g: &GroupData, ctx: Ctx) -> Ball {
    let mut fact_prod = BigInt::one();
    let mut exp_sum = 0u64;
    for &m in &g.exponents {
        fact_prod *= factorial(m);
        exp_sum += (m + 1) as u64;
    }
    let two_pi = pi(ctx.prec).mul_pow2(1);
    let denom = two_pi.powi(exp_sum, ctx.prec);
    Ball::from_bigint(&fact_prod).div(&denom, ctx.prec)
}

pub fn principal_covolume(
    g: &GroupData,
    pair: &ExtensionPair,
    overrides: &[LocalOverride],
    ctx: Ctx,
) -> Result<VolumeBreakdown> {
    if g.splitting_degree() != pair.twist_degree {
        return Err(Error::precondition(format!(
            "group {} needs [l:k] = {} but the pair has [l:k] = {}",
            g.label(),
            g.splitting_degree(),
            pair.twist_degree
        )));
    }
    let euler = euler_product(g, pair, overrides, ctx)?;

    let dk = pair.base.disc_bigint();
    let disc_factor = Ball::from_bigint(&dk).pow_ratio(g.dim as u64, 2, ctx.prec);

    let rel = pair.rel_disc();
    let rel_factor = Ball::from_bigint(&rel).pow_ratio(g.s as u64, 2, ctx.prec);

    let arch_one = arch_factor_single(g, ctx);
    let arch_factor = arch_one.powi(pair.base.degree() as u64, ctx.prec);

    let total = disc_factor
        .mul(&rel_factor, ctx.prec)
        .mul(&arch_factor, ctx.prec)
        .mul(&euler, ctx.prec);

    Ok(VolumeBreakdown {
        disc_factor,
        rel_factor,
        arch_factor,
        tamagawa: 1,
        euler,
        total,
        num_overrides: overrides.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::quadratic::{BaseField, QuadraticField};
    use crate::lie::{group_data, Family};
    use crate::num::elementary::pi;
    use crate::num::Bf;

    #[test]
    fn split_a2_over_q() {
        let ctx = Ctx::new(32);
        let g = group_data(Family::A, 2, 1, None).unwrap();
        let pair = ExtensionPair::inner(BaseField::Rational);
        let v = principal_covolume(&g, &pair, &[], ctx).unwrap();
        // disc and rel factors are exactly 1
        assert!(v.disc_factor.is_exact() && v.disc_factor.contains(&Bf::one()));
        assert!(v.rel_factor.is_exact() && v.rel_factor.contains(&Bf::one()));
        // total = 2 zeta(2) zeta(3) / (2 pi)^5, about 4.0384e-4
        let z2 = crate::fields::values::zeta_value(2, ctx).unwrap();
        let z3 = crate::fields::values::zeta_value(3, ctx).unwrap();
        let two_pi = pi(ctx.prec).mul_pow2(1);
        let expect = z2
            .mul(&z3, ctx.prec)
            .mul_pow2(1)
            .div(&two_pi.powi(5, ctx.prec), ctx.prec);
        assert!(v.total.overlaps(&expect));
        assert!(v.total.rad_below_pow2(-60));
        // sanity window: 4.03e-4 < total < 4.04e-4
        let lo = Ball::from_ratio(&BigInt::from(403), &BigInt::from(1_000_000), ctx.prec);
        let hi = Ball::from_ratio(&BigInt::from(404), &BigInt::from(1_000_000), ctx.prec);
        assert_eq!(lo.try_lt(&v.total), Some(true));
        assert_eq!(v.total.try_lt(&hi), Some(true));
    }

    #[test]
    fn outer_a2_gaussian_is_one_ninety_sixth() {
        let ctx = Ctx::new(40);
        let g = group_data(Family::A, 2, 2, None).unwrap();
        let pair = ExtensionPair::quadratic_over_q(QuadraticField::new(-4).unwrap());
        let v = principal_covolume(&g, &pair, &[], ctx).unwrap();
        // rel factor = 4^{5/2} = 32 exactly
        assert!(v.rel_factor.is_exact());
        assert!(v.rel_factor.contains(&Bf::from_i64(32)));
        // total = 1/96 exactly; the enclosure must trap it tightly
        let target = Ball::from_ratio(&BigInt::one(), &BigInt::from(96), ctx.prec);
        assert!(v.total.overlaps(&target));
        assert!(v.total.rad_below_pow2(-100));
    }

    #[test]
    fn twist_mismatch_is_rejected() {
        let ctx = Ctx::new(16);
        let g = group_data(Family::A, 2, 2, None).unwrap();
        let pair = ExtensionPair::inner(BaseField::Rational);
        assert!(principal_covolume(&g, &pair, &[], ctx).is_err());
    }

    #[test]
    fn g2_over_imaginary_quadratic() {
        let ctx = Ctx::new(24);
        let g = group_data(Family::G, 2, 1, None).unwrap();
        let k = BaseField::Quadratic(QuadraticField::new(-3).unwrap());
        let pair = ExtensionPair::inner(k);
        let v = principal_covolume(&g, &pair, &[], ctx).unwrap();
        // disc factor = 3^7 = 2187 exactly
        assert!(v.disc_factor.is_exact());
        assert!(v.disc_factor.contains(&Bf::from_i64(2187)));
        // arch factor = (1! 5! / (2 pi)^8)^2 = (120 / (2 pi)^8)^2 > 0
        assert_eq!(Ball::zero().try_lt(&v.arch_factor), Some(true));
        assert_eq!(Ball::zero().try_lt(&v.total), Some(true));
    }
}

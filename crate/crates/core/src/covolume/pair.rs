//! The field pair (k, l) attached to a form: base field, splitting field,
//! relative discriminant, and the class number data for l (exact where an
//! imaginary quadratic field makes that possible, the analytic bound
//! otherwise).

use crate::error::{Error, Result};
use crate::fields::bounds::h_bound;
use crate::fields::class_number::class_number_imaginary;
use crate::fields::quadratic::{BaseField, QuadraticField};
use crate::num::{Ball, Ctx};
use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtField {
    /// Inner form: l = k.
    Same,
    /// Quadratic extension of Q, given by its own fundamental discriminant.
    QuadOverQ(QuadraticField),
    /// Anything else: absolute discriminant plus the archimedean place
    /// count a(l) (defaulted conservatively to the degree when unknown).
    General { abs_disc: u64, arch: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtensionPair {
    pub base: BaseField,
    pub ext: ExtField,
    /// [l:k], at most 3.
    pub twist_degree: u32,
}

/// Class number of l: exact when computable, otherwise the analytic upper
/// bound 100 (pi/12)^deg D_l.
#[derive(Clone, Debug)]
pub enum HValue {
    Exact(u64),
    Bound(Ball),
}

impl HValue {
    pub fn as_ball(&self, prec: u32) -> Ball {
        match self {
            HValue::Exact(h) => Ball::from_i64(*h as i64),
            HValue::Bound(b) => b.squash(prec),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, HValue::Exact(_))
    }
}

impl ExtensionPair {
    /// Inner form: l = k, [l:k] = 1, trivial relative discriminant.
    pub fn inner(base: BaseField) -> ExtensionPair {
        ExtensionPair { base, ext: ExtField::Same, twist_degree: 1 }
    }

    /// Quadratic splitting field over k = Q.
    pub fn quadratic_over_q(l: QuadraticField) -> ExtensionPair {
        ExtensionPair { base: BaseField::Rational, ext: ExtField::QuadOverQ(l), twist_degree: 2 }
    }

    /// General extension, validated: D_k^{[l:k]} must divide D_l.
    pub fn general(
        base: BaseField,
        ext_abs_disc: u64,
        twist_degree: u32,
        arch: Option<u32>,
    ) -> Result<ExtensionPair> {
        if !(2..=3).contains(&twist_degree) {
            return Err(Error::precondition(format!("[l:k] must be 2 or 3, got {twist_degree}")));
        }
        if ext_abs_disc == 0 {
            return Err(Error::precondition("extension discriminant must be nonzero"));
        }
        let dk_pow = BigInt::from(base.abs_disc()).pow(twist_degree);
        let dl = BigInt::from(ext_abs_disc);
        if (&dl % &dk_pow) != BigInt::zero() {
            return Err(Error::precondition(format!(
                "D_k^[l:k] = {dk_pow} does not divide D_l = {dl}"
            )));
        }
        let deg_l = twist_degree * base.degree();
        let arch = arch.unwrap_or(deg_l);
        if arch == 0 || arch > deg_l {
            return Err(Error::precondition(format!(
                "a(l) = {arch} is outside 1..={deg_l} for degree {deg_l}"
            )));
        }
        Ok(ExtensionPair { base, ext: ExtField::General { abs_disc: ext_abs_disc, arch }, twist_degree })
    }

    pub fn ext_abs_disc(&self) -> BigInt {
        match self.ext {
            ExtField::Same => self.base.disc_bigint(),
            ExtField::QuadOverQ(l) => BigInt::from(l.abs_disc()),
            ExtField::General { abs_disc, .. } => BigInt::from(abs_disc),
        }
    }

    /// D_{l/k} = D_l / D_k^{[l:k]}, a positive integer by construction.
    pub fn rel_disc(&self) -> BigInt {
        let dk_pow = self.base.disc_bigint().pow(self.twist_degree);
        let dl = self.ext_abs_disc();
        debug_assert!((&dl % &dk_pow).is_zero() || matches!(self.ext, ExtField::Same));
        match self.ext {
            ExtField::Same => BigInt::one(),
            _ => dl / dk_pow,
        }
    }

    pub fn ext_degree_over_q(&self) -> u32 {
        self.twist_degree * self.base.degree()
    }

    /// a(l) = r1(l) + r2(l), exact where the field is pinned down, the
    /// conservative maximum (the degree) otherwise.
    pub fn ext_arch(&self) -> u32 {
        match self.ext {
            ExtField::Same => self.base.num_arch(),
            ExtField::QuadOverQ(l) => l.num_arch(),
            ExtField::General { arch, .. } => arch,
        }
    }

    /// Exact h_l when l is Q or imaginary quadratic.
    pub fn h_exact(&self) -> Option<u64> {
        let quad = match self.ext {
            ExtField::Same => match self.base {
                BaseField::Rational => return Some(1),
                BaseField::Quadratic(k) => k,
            },
            ExtField::QuadOverQ(l) => l,
            ExtField::General { .. } => return None,
        };
        if quad.d < 0 {
            class_number_imaginary(&quad).ok()
        } else {
            None
        }
    }

    pub fn h_value(&self, ctx: Ctx) -> HValue {
        if let Some(h) = self.h_exact() {
            HValue::Exact(h)
        } else {
            HValue::Bound(h_bound(&self.ext_abs_disc(), self.ext_degree_over_q(), ctx))
        }
    }

    /// The splitting character chi_{l/k} when it is a Dirichlet character
    /// over Q, i.e. when k = Q and l is quadratic.
    pub fn quadratic_character_field(&self) -> Option<QuadraticField> {
        match (self.base, self.ext) {
            (BaseField::Rational, ExtField::QuadOverQ(l)) => Some(l),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inner_pair_is_trivial() {
        let p = ExtensionPair::inner(BaseField::Rational);
        assert_eq!(p.rel_disc(), BigInt::one());
        assert_eq!(p.h_exact(), Some(1));
        assert_eq!(p.ext_arch(), 1);
        assert_eq!(p.ext_degree_over_q(), 1);
    }

    #[test]
    fn gaussian_pair() {
        let l = QuadraticField::new(-4).unwrap();
        let p = ExtensionPair::quadratic_over_q(l);
        assert_eq!(p.rel_disc(), BigInt::from(4));
        assert_eq!(p.h_exact(), Some(1));
        assert_eq!(p.ext_arch(), 1);
        assert_eq!(p.ext_degree_over_q(), 2);
    }

    #[test]
    fn real_quadratic_needs_bound() {
        let k = BaseField::Quadratic(QuadraticField::new(5).unwrap());
        let p = ExtensionPair::inner(k);
        assert_eq!(p.h_exact(), None);
        let ctx = Ctx::new(16);
        match p.h_value(ctx) {
            HValue::Bound(b) => {
                // 100 (pi/12)^2 * 5 = 34.26...
                assert_eq!(Ball::from_i64(34).try_lt(&b), Some(true));
                assert_eq!(b.try_lt(&Ball::from_i64(35)), Some(true));
            }
            HValue::Exact(_) => panic!("real quadratic h should not be exact"),
        }
    }

    #[test]
    fn general_pair_divisibility() {
        let k = BaseField::Quadratic(QuadraticField::new(-4).unwrap());
        // quartic l with D_l = 16 * 9 = 144: rel disc 9
        let p = ExtensionPair::general(k, 144, 2, None).unwrap();
        assert_eq!(p.rel_disc(), BigInt::from(9));
        assert_eq!(p.ext_degree_over_q(), 4);
        assert_eq!(p.ext_arch(), 4); // conservative default
        assert!(p.h_exact().is_none());
        assert!(ExtensionPair::general(k, 15, 2, None).is_err());
        assert!(ExtensionPair::general(k, 144, 4, None).is_err());
        assert!(ExtensionPair::general(k, 144, 2, Some(5)).is_err());
    }
}

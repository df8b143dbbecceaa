//! The Euler-product factor of the principal covolume.
//!
//! Two independent routes compute each local factor: a zeta-side recipe
//! (local factors of Dedekind zeta and Hecke L values) and an order-side
//! recipe (q^dim over the order of the finite group of Lie type). The two
//! must agree exactly as rationals at every prime; `validate_local_factors`
//! checks that, and `euler_product` runs a short self-check before
//! assembling the global value.
//!
//! Local overrides replace the built-in factor at chosen places, for forms
//! whose parahoric data differs from the standard one at finitely many
//! places. Overrides are exact rationals and every local factor must
//! exceed 1.

use crate::error::{Error, Result};
use crate::fields::quadratic::BaseField;
use crate::fields::sieve::{is_prime_u64, spf_table};
use crate::fields::splitting::{kronecker_splitting, PlaceDescriptor, PlaceTag, Splitting};
use crate::fields::values::{dedekind_zeta_value, l_value, zeta_value};
use crate::lie::{finite_group_order, Family, GroupData};
use crate::num::{Ball, Ctx};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::pair::ExtensionPair;

/// Which built-in local recipe applies to (g, k, l).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Recipe {
    /// Inner (split) form: e_v = prod_i (1 - q_v^{-(m_i+1)})^{-1}.
    SplitForm,
    /// Outer form of A2 split by a quadratic extension of Q:
    /// e_p = (1 - p^{-2})^{-1} (1 - chi(p) p^{-3})^{-1}.
    OuterA2OverQ,
}

pub fn recipe_for(g: &GroupData, pair: &ExtensionPair) -> Result<Recipe> {
    if g.splitting_degree() != pair.twist_degree {
        return Err(Error::precondition(format!(
            "group {} splits over a degree-{} extension but the pair has [l:k] = {}",
            g.label(),
            g.splitting_degree(),
            pair.twist_degree
        )));
    }
    if g.is_inner() {
        return Ok(Recipe::SplitForm);
    }
    if g.family == Family::A && g.rank == 2 && pair.quadratic_character_field().is_some() {
        return Ok(Recipe::OuterA2OverQ);
    }
    Err(Error::unsupported(format!(
        "no built-in local factors for the outer form {} over this field pair; \
         only split forms and A2 twisted by a quadratic extension of Q are built in",
        g.label()
    )))
}

/// (1 - q^{-s})^{-1} = q^s / (q^s - 1) as an exact rational.
fn zeta_local(s: u32, q: u64) -> BigRational {
    let qs = BigInt::from(q).pow(s);
    BigRational::new(qs.clone(), qs - BigInt::one())
}

/// (1 + q^{-s})^{-1} = q^s / (q^s + 1) as an exact rational.
fn zeta_local_flipped(s: u32, q: u64) -> BigRational {
    let qs = BigInt::from(q).pow(s);
    BigRational::new(qs.clone(), qs + BigInt::one())
}

/// The built-in local factor at one place, by the zeta-side recipe.
/// `None` means the recipe does not cover this place (outer A2 at a
/// ramified prime) and an override is required if the place is to deviate.
pub fn recipe_local_factor(
    g: &GroupData,
    pair: &ExtensionPair,
    place: &PlaceDescriptor,
) -> Result<Option<BigRational>> {
    let recipe = recipe_for(g, pair)?;
    match recipe {
        Recipe::SplitForm => {
            let q = place.norm();
            let mut acc = BigRational::one();
            for &m in &g.exponents {
                acc *= zeta_local(m + 1, q);
            }
            Ok(Some(acc))
        }
        Recipe::OuterA2OverQ => {
            // the factor is indexed by the rational prime; the tag is advisory
            let l = pair.quadratic_character_field().expect("checked by recipe_for");
            let p = place.p;
            match kronecker_splitting(&BaseField::Quadratic(l), p) {
                Splitting::Split => Ok(Some(zeta_local(2, p) * zeta_local(3, p))),
                Splitting::Inert => Ok(Some(zeta_local(2, p) * zeta_local_flipped(3, p))),
                Splitting::Ramified => Ok(None),
            }
        }
    }
}

/// The same local factor from the finite-group side: q^dim / |G(F_q)|,
/// with the split order at split primes and the twisted order where the
/// quadratic extension is inert.
pub fn order_local_factor(
    g: &GroupData,
    pair: &ExtensionPair,
    place: &PlaceDescriptor,
) -> Result<Option<BigRational>> {
    let recipe = recipe_for(g, pair)?;
    match recipe {
        Recipe::SplitForm => {
            let q = place.norm();
            let split = GroupData { twist: 1, ..g.clone() };
            let order = finite_group_order(&split, q)?;
            Ok(Some(BigRational::new(BigInt::from(q).pow(g.dim), order)))
        }
        Recipe::OuterA2OverQ => {
            let l = pair.quadratic_character_field().expect("checked by recipe_for");
            let p = place.p;
            match kronecker_splitting(&BaseField::Quadratic(l), p) {
                Splitting::Split => {
                    let split = GroupData { twist: 1, ..g.clone() };
                    let order = finite_group_order(&split, p)?;
                    Ok(Some(BigRational::new(BigInt::from(p).pow(g.dim), order)))
                }
                Splitting::Inert => {
                    let order = finite_group_order(g, p)?;
                    Ok(Some(BigRational::new(BigInt::from(p).pow(g.dim), order)))
                }
                Splitting::Ramified => Ok(None),
            }
        }
    }
}

fn base_places_over(p: u64, field: &BaseField) -> Vec<PlaceDescriptor> {
    match kronecker_splitting(field, p) {
        Splitting::Split => match field {
            BaseField::Rational => vec![PlaceDescriptor { p, tag: PlaceTag::SplitPlus }],
            BaseField::Quadratic(_) => vec![
                PlaceDescriptor { p, tag: PlaceTag::SplitPlus },
                PlaceDescriptor { p, tag: PlaceTag::SplitMinus },
            ],
        },
        Splitting::Inert => vec![PlaceDescriptor { p, tag: PlaceTag::Inert }],
        Splitting::Ramified => vec![PlaceDescriptor { p, tag: PlaceTag::Ramified }],
    }
}

/// Check the zeta-side and order-side local factors agree exactly at every
/// place over every prime p <= limit. Returns the number of places checked.
pub fn validate_local_factors(g: &GroupData, pair: &ExtensionPair, limit: u64) -> Result<usize> {
    let recipe = recipe_for(g, pair)?;
    let mut checked = 0usize;
    for p in 2..=limit {
        if !is_prime_u64(p) {
            continue;
        }
        let places = match recipe {
            Recipe::SplitForm => base_places_over(p, &pair.base),
            // outer A2 factors are indexed by rational primes
            Recipe::OuterA2OverQ => vec![PlaceDescriptor { p, tag: PlaceTag::SplitPlus }],
        };
        for place in places {
            let a = recipe_local_factor(g, pair, &place)?;
            let b = order_local_factor(g, pair, &place)?;
            if a != b {
                return Err(Error::precondition(format!(
                    "local factor mismatch for {} at p = {}: zeta side {:?}, order side {:?}",
                    g.label(),
                    p,
                    a,
                    b
                )));
            }
            if a.is_some() {
                checked += 1;
            }
        }
    }
    Ok(checked)
}

/// One replaced local factor: the place and the exact new value.
#[derive(Clone, Debug)]
pub struct LocalOverride {
    pub place: PlaceDescriptor,
    pub factor: BigRational,
}

impl LocalOverride {
    pub fn new(place: PlaceDescriptor, num: i64, den: i64) -> Result<LocalOverride> {
        if den <= 0 || num <= 0 {
            return Err(Error::precondition("override factors must be positive rationals"));
        }
        let factor = BigRational::new(BigInt::from(num), BigInt::from(den));
        if factor <= BigRational::one() {
            return Err(Error::precondition(format!(
                "every local factor exceeds 1; override {factor} at p = {} does not",
                place.p
            )));
        }
        Ok(LocalOverride { place, factor })
    }
}

/// The truncated product of built-in local factors over all places above
/// primes p <= limit, as an exact rational.
pub fn truncated_euler_product(
    g: &GroupData,
    pair: &ExtensionPair,
    limit: u64,
) -> Result<BigRational> {
    let recipe = recipe_for(g, pair)?;
    let spf = spf_table(limit.max(2));
    let mut acc = BigRational::one();
    for p in 2..=limit {
        if u64::from(spf[p as usize]) != p {
            continue;
        }
        let places = match recipe {
            Recipe::SplitForm => base_places_over(p, &pair.base),
            Recipe::OuterA2OverQ => vec![PlaceDescriptor { p, tag: PlaceTag::SplitPlus }],
        };
        for place in places {
            if let Some(f) = recipe_local_factor(g, pair, &place)? {
                acc *= f;
            }
        }
    }
    Ok(acc)
}

/// The full Euler product as a rigorous enclosure: the built-in global
/// value (a product of zeta and L values), corrected by each override
/// replacing its built-in local factor.
pub fn euler_product(
    g: &GroupData,
    pair: &ExtensionPair,
    overrides: &[LocalOverride],
    ctx: Ctx,
) -> Result<Ball> {
    let recipe = recipe_for(g, pair)?;
    // Cheap standing self-check of the two local recipes.
    validate_local_factors(g, pair, 23)?;

    let global = match recipe {
        Recipe::SplitForm => {
            let mut acc = Ball::one();
            for &m in &g.exponents {
                let z = dedekind_zeta_value(&pair.base, m + 1, ctx)?;
                acc = acc.mul(&z, ctx.prec);
            }
            acc
        }
        Recipe::OuterA2OverQ => {
            let l = pair.quadratic_character_field().expect("checked by recipe_for");
            let z2 = zeta_value(2, ctx)?;
            let l3 = l_value(&l, 3, ctx)?;
            z2.mul(&l3, ctx.prec)
        }
    };

    // Replacement semantics: divide out the built-in factor, multiply the
    // override in. Both sides are exact rationals, so fold them into one
    // correction ratio first.
    let mut seen: Vec<PlaceDescriptor> = Vec::new();
    let mut correction = BigRational::one();
    for ov in overrides {
        if seen.contains(&ov.place) {
            return Err(Error::precondition(format!(
                "duplicate override at p = {}",
                ov.place.p
            )));
        }
        if !is_prime_u64(ov.place.p) {
            return Err(Error::precondition(format!("override at composite p = {}", ov.place.p)));
        }
        let tag_field = match recipe {
            Recipe::SplitForm => pair.base,
            Recipe::OuterA2OverQ => {
                BaseField::Quadratic(pair.quadratic_character_field().expect("checked above"))
            }
        };
        let want = kronecker_splitting(&tag_field, ov.place.p);
        let tag_ok = match ov.place.tag {
            PlaceTag::SplitPlus | PlaceTag::SplitMinus => want == Splitting::Split,
            PlaceTag::Inert => want == Splitting::Inert,
            PlaceTag::Ramified => want == Splitting::Ramified,
        };
        if !tag_ok {
            return Err(Error::precondition(format!(
                "override place tag {:?} at p = {} does not match the splitting {:?}",
                ov.place.tag, ov.place.p, want
            )));
        }
        if ov.factor <= BigRational::one() {
            return Err(Error::precondition("every local factor exceeds 1"));
        }
        seen.push(ov.place);
        correction *= &ov.factor;
        if let Some(builtin) = recipe_local_factor(g, pair, &ov.place)? {
            correction /= builtin;
        }
        // A `None` built-in factor (outer A2, ramified prime) contributes 1
        // to the global product, so there is nothing to divide out.
    }
    if correction == BigRational::one() {
        return Ok(global);
    }
    let corr = Ball::from_ratio(correction.numer(), correction.denom(), ctx.prec);
    Ok(global.mul(&corr, ctx.prec))
}

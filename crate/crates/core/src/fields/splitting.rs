//! Kronecker symbol, prime splitting in quadratic fields, and validated
//! sets of finite places defining squarefree ideals.

use crate::error::{Error, Result};
use crate::fields::quadratic::BaseField;
use num_bigint::BigInt;
use serde::Serialize;

/// Kronecker symbol (a|n), fully general in sign and parity.
pub fn kronecker(mut a: i64, mut n: i64) -> i32 {
    if n == 0 {
        return if a.unsigned_abs() == 1 { 1 } else { 0 };
    }
    if a % 2 == 0 && n % 2 == 0 {
        return 0;
    }
    let mut k = 1i32;
    let mut twos = 0u32;
    while n % 2 == 0 {
        n /= 2;
        twos += 1;
    }
    if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
        k = -k;
    }
    if n < 0 {
        n = -n;
        if a < 0 {
            k = -k;
        }
    }
    // n odd and positive from here; quadratic reciprocity loop.
    loop {
        a = a.rem_euclid(n);
        if a == 0 {
            return if n == 1 { k } else { 0 };
        }
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                k = -k;
            }
        }
        if a % 4 == 3 && n % 4 == 3 {
            k = -k;
        }
        std::mem::swap(&mut a, &mut n);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

/// Splitting of the rational prime p: ramified iff p | D, split iff
/// (D|p) = +1, inert iff (D|p) = -1. Over Q every prime is split by
/// convention (one place of norm p).
pub fn kronecker_splitting(k: &BaseField, p: u64) -> Splitting {
    match k {
        BaseField::Rational => Splitting::Split,
        BaseField::Quadratic(k) => {
            let d = k.d;
            if d.unsigned_abs() % p == 0 {
                Splitting::Ramified
            } else {
                match kronecker(d, p as i64) {
                    1 => Splitting::Split,
                    -1 => Splitting::Inert,
                    _ => unreachable!("({d}|{p}) = 0 only when p divides D"),
                }
            }
        }
    }
}

/// Tag of one prime-ideal descriptor. Split primes carry two places,
/// distinguished as plus/minus; over Q the single place above p is
/// recorded as SplitPlus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PlaceTag {
    SplitPlus,
    SplitMinus,
    Inert,
    Ramified,
}

impl PlaceTag {
    pub fn ideal_norm(&self, p: u64) -> u64 {
        match self {
            PlaceTag::Inert => p * p,
            _ => p,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PlaceDescriptor {
    pub p: u64,
    pub tag: PlaceTag,
}

impl PlaceDescriptor {
    pub fn norm(&self) -> u64 {
        self.tag.ideal_norm(self.p)
    }
}

/// An ordered set of pairwise distinct prime-ideal descriptors over a fixed
/// base field; equivalently a squarefree ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaceSet {
    pub field: BaseField,
    entries: Vec<PlaceDescriptor>,
}

impl PlaceSet {
    pub fn new(field: BaseField, mut entries: Vec<PlaceDescriptor>) -> Result<PlaceSet> {
        entries.sort();
        for w in entries.windows(2) {
            if w[0] == w[1] {
                return Err(Error::precondition(format!(
                    "duplicate place descriptor (p = {}, {:?})",
                    w[0].p, w[0].tag
                )));
            }
        }
        for e in &entries {
            if !crate::fields::sieve::is_prime_u64(e.p) {
                return Err(Error::precondition(format!("{} is not prime", e.p)));
            }
            let expected = kronecker_splitting(&field, e.p);
            let ok = match (expected, e.tag) {
                (Splitting::Split, PlaceTag::SplitPlus | PlaceTag::SplitMinus) => true,
                (Splitting::Inert, PlaceTag::Inert) => true,
                (Splitting::Ramified, PlaceTag::Ramified) => true,
                _ => false,
            };
            if !ok {
                return Err(Error::precondition(format!(
                    "tag {:?} does not match the splitting of {} in {}",
                    e.tag, e.p, field
                )));
            }
        }
        Ok(PlaceSet { field, entries })
    }

    pub fn empty(field: BaseField) -> PlaceSet {
        PlaceSet { field, entries: Vec::new() }
    }

    pub fn entries(&self) -> &[PlaceDescriptor] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Product of the entry norms: the norm of the squarefree ideal.
    pub fn norm(&self) -> BigInt {
        let mut n = BigInt::from(1);
        for e in &self.entries {
            n *= BigInt::from(e.norm());
        }
        n
    }
}

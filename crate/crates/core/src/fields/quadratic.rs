//! Quadratic fields keyed by fundamental discriminant, plus the rational
//! base field, and windowed enumeration of fundamental discriminants.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use serde::Serialize;
use std::fmt;

/// A quadratic field Q(sqrt(m)) identified by its fundamental discriminant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct QuadraticField {
    pub d: i64,
}

impl QuadraticField {
    pub fn new(d: i64) -> Result<QuadraticField> {
        if is_fundamental(d) {
            Ok(QuadraticField { d })
        } else {
            Err(Error::precondition(format!("{d} is not a fundamental discriminant")))
        }
    }

    pub fn r1(&self) -> u32 {
        if self.d > 0 {
            2
        } else {
            0
        }
    }

    pub fn r2(&self) -> u32 {
        if self.d > 0 {
            0
        } else {
            1
        }
    }

    /// Number of archimedean places r1 + r2.
    pub fn num_arch(&self) -> u32 {
        self.r1() + self.r2()
    }

    pub fn abs_disc(&self) -> u64 {
        self.d.unsigned_abs()
    }

    /// Squarefree m with the field equal to Q(sqrt(m)).
    pub fn radicand(&self) -> i64 {
        if self.d % 4 == 0 {
            self.d / 4
        } else {
            self.d
        }
    }
}

impl fmt::Display for QuadraticField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(sqrt({}))", self.radicand())
    }
}

/// The base field of a computation: the rationals or a quadratic field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BaseField {
    Rational,
    Quadratic(QuadraticField),
}

impl BaseField {
    /// Disc 0 (or 1) selects Q; anything else must be fundamental.
    pub fn from_disc(d: i64) -> Result<BaseField> {
        if d == 0 || d == 1 {
            Ok(BaseField::Rational)
        } else {
            Ok(BaseField::Quadratic(QuadraticField::new(d)?))
        }
    }

    /// Absolute discriminant D_k (1 for Q).
    pub fn abs_disc(&self) -> u64 {
        match self {
            BaseField::Rational => 1,
            BaseField::Quadratic(k) => k.abs_disc(),
        }
    }

    pub fn disc_signed(&self) -> i64 {
        match self {
            BaseField::Rational => 1,
            BaseField::Quadratic(k) => k.d,
        }
    }

    pub fn degree(&self) -> u32 {
        match self {
            BaseField::Rational => 1,
            BaseField::Quadratic(_) => 2,
        }
    }

    pub fn r1(&self) -> u32 {
        match self {
            BaseField::Rational => 1,
            BaseField::Quadratic(k) => k.r1(),
        }
    }

    pub fn r2(&self) -> u32 {
        match self {
            BaseField::Rational => 0,
            BaseField::Quadratic(k) => k.r2(),
        }
    }

    /// a(k) = r1 + r2.
    pub fn num_arch(&self) -> u32 {
        self.r1() + self.r2()
    }

    pub fn is_totally_real(&self) -> bool {
        self.r2() == 0
    }

    pub fn disc_bigint(&self) -> BigInt {
        BigInt::from(self.abs_disc())
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Rational => write!(f, "Q"),
            BaseField::Quadratic(k) => k.fmt(f),
        }
    }
}

fn is_squarefree_u64(mut n: u64) -> bool {
    if n == 0 {
        return false;
    }
    if n % 4 == 0 {
        return false;
    }
    if n % 2 == 0 {
        n /= 2;
    }
    let mut p = 3u64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        while n % p == 0 {
            n /= p;
        }
        p += 2;
    }
    true
}

/// Fundamental discriminant test: D = 1 mod 4 squarefree, or D = 4m with m
/// squarefree and m = 2 or 3 mod 4.
pub fn is_fundamental(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    if d.rem_euclid(4) == 1 {
        return is_squarefree_u64(d.unsigned_abs());
    }
    if d % 4 != 0 {
        return false;
    }
    let m = d / 4;
    let mr = m.rem_euclid(4);
    (mr == 2 || mr == 3) && is_squarefree_u64(m.unsigned_abs())
}

/// Squarefree flags for the window [lo, hi] (inclusive), via marking
/// multiples of prime squares. flags[i] covers lo + i.
fn squarefree_window(lo: u64, hi: u64) -> Vec<bool> {
    debug_assert!(lo >= 1 && lo <= hi);
    let len = (hi - lo + 1) as usize;
    let mut flags = vec![true; len];
    let mut q = 2u64;
    while q * q <= hi {
        let qq = q * q;
        let mut m = lo.div_ceil(qq) * qq;
        while m <= hi {
            flags[(m - lo) as usize] = false;
            m += qq;
        }
        q += 1;
    }
    flags
}

/// All fundamental discriminants with lo <= |D| <= hi, sorted by (|D|, D)
/// so the negative one of a pair comes first. Windowed so disjoint bands
/// concatenate to the full enumeration.
pub fn enumerate_fundamental_range(lo: u64, hi: u64) -> Result<Vec<QuadraticField>> {
    if lo < 1 || lo > hi {
        return Err(Error::precondition(format!("bad enumeration range [{lo}, {hi}]")));
    }
    let sf = squarefree_window(lo, hi);
    // Multiples of 4 in the window need the flag of n/4, which lives in the
    // quarter window [ceil(lo/4), hi/4].
    let qlo = lo.div_ceil(4).max(1);
    let qhi = hi / 4;
    let sf4 = if qlo <= qhi { squarefree_window(qlo, qhi) } else { Vec::new() };
    let at = |n: u64| sf[(n - lo) as usize];
    let at4 = |m: u64| sf4[(m - qlo) as usize];
    let mut out = Vec::new();
    for n in lo.max(2)..=hi {
        for d in [-(n as i64), n as i64] {
            let fundamental = if d.rem_euclid(4) == 1 {
                at(n)
            } else if d % 4 == 0 {
                let m = d / 4;
                let mr = m.rem_euclid(4);
                (mr == 2 || mr == 3) && at4(n / 4)
            } else {
                false
            };
            if fundamental {
                out.push(QuadraticField { d });
            }
        }
    }
    Ok(out)
}

/// All fundamental discriminants with |D| <= x.
pub fn enumerate_fundamental_discriminants(x: u64) -> Result<Vec<QuadraticField>> {
    if x < 1 {
        return Err(Error::precondition("enumeration bound must be >= 1"));
    }
    if x == 1 {
        return Ok(Vec::new());
    }
    enumerate_fundamental_range(1, x)
}

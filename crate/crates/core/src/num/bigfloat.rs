//! Arbitrary-precision dyadic floats: `mantissa * 2^exp` with exact BigInt
//! mantissas and explicit directed rounding.
//!
//! Values are kept canonical (odd mantissa, or zero with exp 0) so that equal
//! values have identical representations; every formatting and comparison
//! path is exact integer arithmetic, which keeps output byte-deterministic.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// Rounding direction for operations that cannot be exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dir {
    /// Toward negative infinity.
    Floor,
    /// Toward positive infinity.
    Ceil,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::Floor => Dir::Ceil,
            Dir::Ceil => Dir::Floor,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bf {
    mantissa: BigInt,
    exp: i64,
}

impl Bf {
    pub fn zero() -> Bf {
        Bf { mantissa: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Bf {
        Bf::from_i64(1)
    }

    pub fn new(mantissa: BigInt, exp: i64) -> Bf {
        let mut v = Bf { mantissa, exp };
        v.normalize();
        v
    }

    pub fn from_i64(n: i64) -> Bf {
        Bf::new(BigInt::from(n), 0)
    }

    pub fn from_bigint(n: BigInt) -> Bf {
        Bf::new(n, 0)
    }

    /// 2^e exactly.
    pub fn pow2(e: i64) -> Bf {
        Bf { mantissa: BigInt::one(), exp: e }
    }

    fn normalize(&mut self) {
        if self.mantissa.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.mantissa.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mantissa >>= tz;
            self.exp += tz as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.sign() == Sign::Minus
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.sign() == Sign::Plus
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exp(&self) -> i64 {
        self.exp
    }

    pub fn bits(&self) -> u64 {
        self.mantissa.magnitude().bits()
    }

    /// Position of the most significant bit: 2^(top-1) <= |v| < 2^top.
    /// Zero has no top; callers must check.
    pub fn top(&self) -> i64 {
        debug_assert!(!self.is_zero());
        self.exp + self.bits() as i64
    }

    pub fn neg(&self) -> Bf {
        Bf { mantissa: -&self.mantissa, exp: self.exp }
    }

    pub fn abs(&self) -> Bf {
        Bf { mantissa: self.mantissa.abs(), exp: self.exp }
    }

    /// Exact sum. The exponent gap determines the shift; callers that round
    /// afterwards keep mantissas small, so gaps stay bounded in practice.
    pub fn add(&self, other: &Bf) -> Bf {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (lo, hi) = if self.exp <= other.exp { (self, other) } else { (other, self) };
        let shift = (hi.exp - lo.exp) as u64;
        debug_assert!(shift < 1 << 34, "pathological exponent gap in exact add");
        Bf::new(&lo.mantissa + (&hi.mantissa << shift), lo.exp)
    }

    pub fn sub(&self, other: &Bf) -> Bf {
        self.add(&other.neg())
    }

    /// Exact product.
    pub fn mul(&self, other: &Bf) -> Bf {
        if self.is_zero() || other.is_zero() {
            return Bf::zero();
        }
        Bf { mantissa: &self.mantissa * &other.mantissa, exp: self.exp + other.exp }
    }

    pub fn mul_pow2(&self, e: i64) -> Bf {
        if self.is_zero() {
            return Bf::zero();
        }
        Bf { mantissa: self.mantissa.clone(), exp: self.exp + e }
    }

    pub fn cmp(&self, other: &Bf) -> Ordering {
        let sa = self.mantissa.sign();
        let sb = other.mantissa.sign();
        if sa != sb {
            return if sa == Sign::Minus || sb == Sign::Plus { Ordering::Less } else { Ordering::Greater };
        }
        if self.is_zero() {
            return Ordering::Equal;
        }
        let (ta, tb) = (self.top(), other.top());
        let mag = if ta != tb {
            ta.cmp(&tb)
        } else {
            // Same leading-bit position: align and compare exactly.
            let ea = self.exp.min(other.exp);
            let ma = self.mantissa.magnitude() << ((self.exp - ea) as u64);
            let mb = other.mantissa.magnitude() << ((other.exp - ea) as u64);
            ma.cmp(&mb)
        };
        if sa == Sign::Minus {
            mag.reverse()
        } else {
            mag
        }
    }

    pub fn min(a: Bf, b: Bf) -> Bf {
        if a.cmp(&b) == Ordering::Greater { b } else { a }
    }

    pub fn max(a: Bf, b: Bf) -> Bf {
        if a.cmp(&b) == Ordering::Less { b } else { a }
    }

    /// Round to at most `prec` mantissa bits in direction `dir`.
    pub fn round(&self, prec: u32, dir: Dir) -> Bf {
        let bits = self.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let drop = bits - prec as u64;
        let mag = self.mantissa.magnitude();
        let kept = mag >> drop;
        let exact = (&kept << drop) == *mag;
        let neg = self.is_negative();
        let bump = !exact
            && match dir {
                Dir::Ceil => !neg,
                Dir::Floor => neg,
            };
        let kept = if bump { kept + BigUint::one() } else { kept };
        let m = BigInt::from_biguint(if neg { Sign::Minus } else { Sign::Plus }, kept);
        Bf::new(m, self.exp + drop as i64)
    }

    /// Round toward zero to `prec` bits; returns the rounded value and a
    /// bound on the absolute error (zero when exact).
    pub fn round_trunc(&self, prec: u32) -> (Bf, Bf) {
        let bits = self.bits();
        if bits <= prec as u64 {
            return (self.clone(), Bf::zero());
        }
        let drop = bits - prec as u64;
        let mag = self.mantissa.magnitude();
        let kept = mag >> drop;
        let exact = (&kept << drop) == *mag;
        let m = BigInt::from_biguint(self.mantissa.sign(), kept);
        let err = if exact { Bf::zero() } else { Bf::pow2(self.exp + drop as i64) };
        (Bf::new(m, self.exp + drop as i64), err)
    }

    /// Directed quotient self/other with roughly `prec` significant bits.
    pub fn div(&self, other: &Bf, prec: u32, dir: Dir) -> Bf {
        assert!(!other.is_zero(), "division by zero");
        if self.is_zero() {
            return Bf::zero();
        }
        let neg = self.is_negative() != other.is_negative();
        let na = self.mantissa.magnitude();
        let nb = other.mantissa.magnitude();
        // Scale so the magnitude quotient carries prec+2 bits.
        let want = prec as i64 + 2;
        let t = (want + nb.bits() as i64 - na.bits() as i64).max(0) as u64;
        let scaled = na << t;
        let q = &scaled / nb;
        let exact = (&q * nb) == scaled;
        let up = !exact
            && match dir {
                Dir::Ceil => !neg,
                Dir::Floor => neg,
            };
        let q = if up { q + BigUint::one() } else { q };
        let m = BigInt::from_biguint(if neg { Sign::Minus } else { Sign::Plus }, q);
        Bf::new(m, self.exp - other.exp - t as i64)
    }

    /// Directed square root (self >= 0).
    pub fn sqrt(&self, prec: u32, dir: Dir) -> Bf {
        assert!(!self.is_negative(), "sqrt of negative value");
        if self.is_zero() {
            return Bf::zero();
        }
        let mag = self.mantissa.magnitude();
        let mut t = (2 * (prec as i64 + 2) - mag.bits() as i64).max(0) as u64;
        if (self.exp - t as i64) % 2 != 0 {
            t += 1;
        }
        let g = mag << t;
        let s = g.sqrt();
        let exact = (&s * &s) == g;
        let s = if dir == Dir::Ceil && !exact { s + BigUint::one() } else { s };
        Bf::new(BigInt::from_biguint(Sign::Plus, s), (self.exp - t as i64) / 2)
    }

    /// Directed q-th root (self >= 0, q >= 1).
    pub fn nth_root(&self, q: u32, prec: u32, dir: Dir) -> Bf {
        assert!(q >= 1);
        assert!(!self.is_negative(), "root of negative value");
        if self.is_zero() {
            return Bf::zero();
        }
        if q == 1 {
            return self.round(prec + 4, dir);
        }
        let mag = self.mantissa.magnitude();
        let want = (q as i64) * (prec as i64 + 2);
        let mut t = (want - mag.bits() as i64).max(0) as u64;
        let rem = (self.exp - t as i64).rem_euclid(q as i64);
        if rem != 0 {
            t += rem as u64; // decreasing the exponent by rem keeps divisibility
        }
        debug_assert_eq!((self.exp - t as i64).rem_euclid(q as i64), 0);
        let g = mag << t;
        let s = g.nth_root(q);
        let exact = s.pow(q) == g;
        let s = if dir == Dir::Ceil && !exact { s + BigUint::one() } else { s };
        Bf::new(BigInt::from_biguint(Sign::Plus, s), (self.exp - t as i64) / q as i64)
    }

    /// Directed nonnegative integer power (self >= 0).
    pub fn powi(&self, mut n: u64, prec: u32, dir: Dir) -> Bf {
        assert!(!self.is_negative(), "directed powi expects a nonnegative base");
        if n == 0 {
            return Bf::one();
        }
        if self.is_zero() {
            return Bf::zero();
        }
        let work = prec + 8;
        let mut base = self.round(work, dir);
        let mut acc = Bf::one();
        loop {
            if n & 1 == 1 {
                acc = acc.mul(&base).round(work, dir);
            }
            n >>= 1;
            if n == 0 {
                break;
            }
            base = base.mul(&base).round(work, dir);
        }
        acc
    }

    /// Decimal string with `sig` significant digits, rounded in `dir`
    /// (magnitude-directed: Ceil never understates the magnitude).
    /// Format: [-]d.ddd...e<exp10>, or "0".
    pub fn to_decimal(&self, sig: u32, dir: Dir) -> String {
        assert!(sig >= 1);
        if self.is_zero() {
            return "0".to_string();
        }
        let neg = self.is_negative();
        let mag_up = match (dir, neg) {
            (Dir::Ceil, false) | (Dir::Floor, true) => true,
            _ => false,
        };
        // Estimate the decimal exponent from the binary top, then correct.
        let top = self.top() - 1; // 2^top <= |v| < 2^(top+1)
        let mut e10 = (top as i128 * 301029995i128).div_euclid(1_000_000_000i128) as i64;
        loop {
            // scaled = |v| * 10^(sig-1-e10), want 10^(sig-1) <= scaled < 10^sig
            let k = sig as i64 - 1 - e10;
            let (num, shift) = {
                let m = self.mantissa.magnitude().clone();
                if k >= 0 {
                    (m * BigUint::from(10u32).pow(k as u32), self.exp)
                } else {
                    (m, self.exp) // divide by 10^-k below
                }
            };
            let ten_neg = if k < 0 { BigUint::from(10u32).pow((-k) as u32) } else { BigUint::one() };
            // value = num * 2^shift / ten_neg
            let (int, rem_nonzero) = if shift >= 0 {
                let scaled = num << shift as u64;
                let q = &scaled / &ten_neg;
                let exact = (&q * &ten_neg) == scaled;
                (q, !exact)
            } else {
                let den = ten_neg << (-shift) as u64;
                let q = &num / &den;
                let exact = (&q * &den) == num;
                (q, !exact)
            };
            let int = if mag_up && rem_nonzero { int + BigUint::one() } else { int };
            let s = int.to_string();
            let lo = BigUint::from(10u32).pow(sig - 1);
            let hi = BigUint::from(10u32).pow(sig);
            if int < lo {
                e10 -= 1;
                continue;
            }
            if int >= hi {
                // Rounding may carry to an extra digit (e.g. 999.9 -> 1000).
                if int == hi {
                    let s = format!("1{}", "0".repeat(sig as usize - 1));
                    return format_decimal(neg, &s, e10 + 1);
                }
                e10 += 1;
                continue;
            }
            return format_decimal(neg, &s, e10);
        }
    }

    /// Nearest f64 approximation (for diagnostics and non-rigorous seeding).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let r = self.round(64, Dir::Floor);
        let bits = r.bits();
        let drop = bits.saturating_sub(53);
        let m = (r.mantissa.magnitude() >> drop)
            .iter_u64_digits()
            .next()
            .unwrap_or(0) as f64;
        let sign = if r.is_negative() { -1.0 } else { 1.0 };
        sign * m * 2f64.powi((r.exp + drop as i64) as i32)
    }
}

fn format_decimal(neg: bool, digits: &str, e10: i64) -> String {
    let sign = if neg { "-" } else { "" };
    if digits.len() == 1 {
        format!("{sign}{digits}e{e10}")
    } else {
        format!("{sign}{}.{}e{e10}", &digits[..1], &digits[1..])
    }
}

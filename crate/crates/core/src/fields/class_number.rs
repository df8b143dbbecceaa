//! Class numbers of imaginary quadratic fields by counting reduced binary
//! quadratic forms, with a shared memo usable across enumeration runs.

use crate::error::{Error, Result};
use crate::fields::quadratic::QuadraticField;
use std::collections::HashMap;
use std::sync::Mutex;

/// h(D) for D < 0 fundamental: the number of reduced forms (a, b, c) with
/// b^2 - 4ac = D, |b| <= a <= c, and b >= 0 when |b| = a or a = c.
pub fn class_number_imaginary(k: &QuadraticField) -> Result<u64> {
    if k.d >= 0 {
        return Err(Error::unsupported(
            "exact class numbers are computed for imaginary quadratic fields only",
        ));
    }
    let abs_d = k.abs_disc();
    let mut h = 0u64;
    let mut b = abs_d % 2;
    while 3 * b * b <= abs_d {
        // 4ac = b^2 + |D|; b = D (mod 2) makes this divisible by 4.
        let t = (b * b + abs_d) / 4;
        let mut a = b.max(1);
        while a * a <= t {
            if t % a == 0 {
                let c = t / a;
                if b == 0 || a == b || a == c {
                    h += 1;
                } else {
                    h += 2;
                }
            }
            a += 1;
        }
        b += 2;
    }
    // Sanity: h <= 100 (pi/12)^2 |D|, checked against a rational lower
    // bound of the right side (pi > 3.14159265).
    let lhs = u128::from(h) * 1_200_000_000u128 * 1_200_000_000u128;
    let rhs = 100u128 * 314_159_265u128 * 314_159_265u128 * u128::from(abs_d);
    assert!(lhs <= rhs, "class number bound violated for D = {}", k.d);
    Ok(h)
}

/// Shared memo for class numbers; reads and writes never change results.
#[derive(Default)]
pub struct ClassNumberMemo {
    map: Mutex<HashMap<i64, u64>>,
}

impl ClassNumberMemo {
    pub fn new() -> ClassNumberMemo {
        ClassNumberMemo::default()
    }

    pub fn get(&self, k: &QuadraticField) -> Result<u64> {
        if let Some(&h) = self.map.lock().unwrap().get(&k.d) {
            return Ok(h);
        }
        let h = class_number_imaginary(k)?;
        self.map.lock().unwrap().insert(k.d, h);
        Ok(h)
    }

    pub fn preload(&self, d: i64, h: u64) {
        self.map.lock().unwrap().insert(d, h);
    }

    pub fn snapshot(&self) -> Vec<(i64, u64)> {
        let mut v: Vec<(i64, u64)> = self.map.lock().unwrap().iter().map(|(&d, &h)| (d, h)).collect();
        v.sort_by_key(|&(d, _)| (d.unsigned_abs(), d));
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(d: i64) -> u64 {
        class_number_imaginary(&QuadraticField::new(d).unwrap()).unwrap()
    }

    #[test]
    fn known_class_numbers() {
        assert_eq!(h(-3), 1);
        assert_eq!(h(-4), 1);
        assert_eq!(h(-7), 1);
        assert_eq!(h(-8), 1);
        assert_eq!(h(-23), 3);
        assert_eq!(h(-31), 3);
        assert_eq!(h(-35), 2);
        assert_eq!(h(-39), 4);
        assert_eq!(h(-40), 2);
        assert_eq!(h(-47), 5);
    }

    #[test]
    fn real_quadratic_rejected() {
        let k = QuadraticField::new(5).unwrap();
        assert!(class_number_imaginary(&k).is_err());
    }

    #[test]
    fn memo_agrees_with_direct() {
        let memo = ClassNumberMemo::new();
        for d in [-3i64, -4, -23, -47] {
            let k = QuadraticField::new(d).unwrap();
            assert_eq!(memo.get(&k).unwrap(), h(d));
            // second read comes out of the map
            assert_eq!(memo.get(&k).unwrap(), h(d));
        }
        assert_eq!(memo.snapshot().len(), 4);
    }
}

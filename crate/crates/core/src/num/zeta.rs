//! Rigorously error-bounded Dedekind zeta and Dirichlet L values.
//!
//! Integer arguments s >= 2 go through Euler-Maclaurin summation with the
//! classical same-sign remainder bound for totally monotone integrands: the
//! error after the j = J correction term is at most the first omitted term.
//! L(1, chi) uses the character series with an Abel-summation tail bound.

use super::ball::Ball;
use super::bigfloat::{Bf, Dir};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use std::sync::Mutex;

/// Exact Bernoulli numbers B_0, B_1, B_2, ... as (numerator, denominator).
static BERNOULLI: Lazy<Mutex<Vec<(BigInt, BigInt)>>> = Lazy::new(|| {
    Mutex::new(vec![(BigInt::one(), BigInt::one()), (BigInt::from(-1), BigInt::from(2))])
});

fn rat_add(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> (BigInt, BigInt) {
    (&a.0 * &b.1 + &b.0 * &a.1, &a.1 * &b.1)
}

fn rat_reduce(a: (BigInt, BigInt)) -> (BigInt, BigInt) {
    let g = num_integer::Integer::gcd(&a.0, &a.1);
    let (mut n, mut d) = (&a.0 / &g, &a.1 / &g);
    if d.is_negative() {
        n = -n;
        d = -d;
    }
    (n, d)
}

/// B_m as an exact rational, extending the cached table on demand via
/// sum_{j=0}^{m} C(m+1, j) B_j = 0.
pub fn bernoulli(m: usize) -> (BigInt, BigInt) {
    let mut tab = BERNOULLI.lock().unwrap();
    while tab.len() <= m {
        let k = tab.len(); // compute B_k
        let mut acc = (BigInt::zero(), BigInt::one());
        let mut binom = BigInt::one(); // C(k+1, j) built incrementally
        for (j, bj) in tab.iter().enumerate() {
            let term = (&binom * &bj.0, bj.1.clone());
            acc = rat_reduce(rat_add(&acc, &term));
            // C(k+1, j+1) = C(k+1, j) * (k+1-j) / (j+1)
            binom = binom * BigInt::from(k + 1 - j) / BigInt::from(j + 1);
        }
        let b = rat_reduce((-acc.0, acc.1 * BigInt::from(k + 1)));
        tab.push(b);
    }
    tab[m].clone()
}

fn ball_from_ratio(n: &BigInt, d: &BigInt, prec: u32) -> Ball {
    Ball::from_ratio(n, d, prec)
}

/// Upper bound (as an exact nonnegative rational) on the Euler-Maclaurin
/// remainder for f(x) = (x + a)^-s after J correction terms at cutoff N:
/// |B_{2J+2}|/(2J+2)! * prod_{i=0}^{2J} (s+i) * (N+a)^{-s-2J-1}.
fn em_remainder(s: u32, n_plus_a: &(BigInt, BigInt), j_max: u32) -> (BigInt, BigInt) {
    let (bn, bd) = bernoulli((2 * j_max + 2) as usize);
    let mut num = bn.abs();
    let mut den = bd.abs();
    let mut fact = BigInt::one();
    for i in 1..=(2 * j_max + 2) {
        fact *= BigInt::from(i);
    }
    den *= fact;
    for i in 0..=(2 * j_max) {
        num *= BigInt::from(s + i);
    }
    // multiply by (N+a)^-(s+2J+1)
    let e = s + 2 * j_max + 1;
    num *= n_plus_a.1.clone().pow(e);
    den *= n_plus_a.0.clone().pow(e);
    (num, den)
}

/// Hurwitz zeta(s, a) for integer s >= 2 and rational a = an/ad in (0, 1],
/// with a rigorous remainder enclosure.
pub fn hurwitz_zeta(s: u32, an: u64, ad: u64, prec: u32) -> Ball {
    assert!(s >= 2, "Hurwitz evaluation needs s >= 2");
    assert!(an >= 1 && ad >= 1 && an <= ad, "offset must lie in (0, 1]");
    let work = prec + 16;
    // Parameter selection (estimates only; the returned radius is rigorous).
    let target = prec as f64 + 10.0;
    let mut n_cut: u32 = (prec / 3).max(16);
    let (n_final, j_final) = loop {
        let mut found = None;
        for j in 1..=80u32 {
            // log2 |B_{2j+2}|/(2j+2)! ~ 1 - (2j+2) log2(2 pi)
            let mut lg = 1.0 - (2.0 * j as f64 + 2.0) * (2.0 * core::f64::consts::PI).log2();
            for i in 0..=(2 * j) {
                lg += ((s + i) as f64).log2();
            }
            lg -= ((s + 2 * j + 1) as f64) * (n_cut as f64).log2();
            if lg <= -target {
                found = Some(j);
                break;
            }
        }
        if let Some(j) = found {
            break (n_cut, j);
        }
        n_cut *= 2;
        assert!(n_cut < 1 << 24, "Euler-Maclaurin cutoff runaway");
    };
    let (n_cut, j_max) = (n_final, j_final);

    let ad_b = BigInt::from(ad);
    let an_b = BigInt::from(an);
    // S1 = sum_{n=0}^{N-1} (n + a)^-s = sum (ad / (n ad + an))^s
    let mut acc = Ball::zero();
    for n in 0..n_cut {
        let base_num = ad_b.clone().pow(s);
        let base_den = (BigInt::from(n) * &ad_b + &an_b).pow(s);
        acc = acc.add(&ball_from_ratio(&base_num, &base_den, work), work);
    }
    // N + a as a rational
    let npa = (BigInt::from(n_cut) * &ad_b + &an_b, ad_b.clone());
    // T1 = (N+a)^(1-s) / (s-1)
    let t1n = npa.1.clone().pow(s - 1);
    let t1d = npa.0.clone().pow(s - 1) * BigInt::from(s - 1);
    acc = acc.add(&ball_from_ratio(&t1n, &t1d, work), work);
    // T2 = (N+a)^-s / 2
    let t2n = npa.1.clone().pow(s);
    let t2d = npa.0.clone().pow(s) * BigInt::from(2);
    acc = acc.add(&ball_from_ratio(&t2n, &t2d, work), work);
    // Correction terms j = 1..J:
    // B_{2j}/(2j)! * prod_{i=0}^{2j-2}(s+i) * (N+a)^{-s-2j+1}
    let mut fact = BigInt::from(2); // (2j)! at j=1
    let mut rising = BigInt::from(s); // prod_{i=0}^{2j-2}(s+i) at j=1
    for j in 1..=j_max {
        if j > 1 {
            fact *= BigInt::from(2 * j - 1) * BigInt::from(2 * j);
            rising *= BigInt::from(s + 2 * j - 3) * BigInt::from(s + 2 * j - 2);
        }
        let (bn, bd) = bernoulli((2 * j) as usize);
        let e = s + 2 * j - 1;
        let tn = bn * &rising * npa.1.clone().pow(e);
        let td = bd * &fact * npa.0.clone().pow(e);
        acc = acc.add(&ball_from_ratio(&tn, &td, work), work);
    }
    // Remainder: same sign as first omitted term, bounded by it; widen both ways.
    let (rn, rd) = em_remainder(s, &npa, j_max);
    let rem = ball_from_ratio(&rn, &rd, work).mag_hi();
    acc.widen(&rem).squash(prec)
}

/// Riemann zeta(s) for integer s >= 2.
pub fn zeta(s: u32, prec: u32) -> Ball {
    hurwitz_zeta(s, 1, 1, prec)
}

/// Dirichlet L(s, chi) for integer s >= 2 and a periodic character given by
/// `chi` with modulus q: L = q^-s sum_{a=1}^{q} chi(a) zeta_H(s, a/q).
pub fn dirichlet_l<F: Fn(u64) -> i32>(chi: F, q: u64, s: u32, prec: u32) -> Ball {
    assert!(s >= 2);
    assert!(q >= 1 && q <= 200_000, "modulus out of supported range");
    let work = prec + 16;
    let mut acc = Ball::zero();
    for a in 1..=q {
        let c = chi(a);
        if c == 0 {
            continue;
        }
        let h = hurwitz_zeta(s, a, q, work);
        acc = if c > 0 { acc.add(&h, work) } else { acc.sub(&h, work) };
    }
    let qs = ball_from_ratio(&BigInt::one(), &BigInt::from(q).pow(s), work);
    acc.mul(&qs, work).squash(prec)
}

/// Largest absolute partial sum of chi over one period (exact, for the Abel
/// tail bound).
pub fn character_sum_bound<F: Fn(u64) -> i32>(chi: &F, q: u64) -> u64 {
    let mut s: i64 = 0;
    let mut best: i64 = 0;
    for n in 1..=q {
        s += chi(n) as i64;
        best = best.max(s.abs());
    }
    best as u64
}

/// L(1, chi) by direct character series with an Abel-summation tail bound:
/// |sum_{n>N} chi(n)/n| <= 2B/(N+1) where B bounds the partial sums of chi.
/// `n_terms` controls the attainable radius (~2B/N); the result is rigorous
/// for any choice.
pub fn l_one_series<F: Fn(u64) -> i32>(chi: F, q: u64, n_terms: u64, prec: u32) -> Ball {
    assert!(q >= 1);
    let b = character_sum_bound(&chi, q);
    let scale = prec + 40;
    let one_scaled = BigUint::one() << scale;
    let mut sum = BigInt::zero();
    for n in 1..=n_terms {
        let c = chi(n % q + if n % q == 0 { q } else { 0 }); // chi(n) via period
        if c == 0 {
            continue;
        }
        let t = BigInt::from(&one_scaled / BigUint::from(n));
        if c > 0 {
            sum += t;
        } else {
            sum -= t;
        }
    }
    let mid = Bf::new(sum, -(scale as i64));
    // Floor error: < 1 unit per nonzero term; tail: 2B/(N+1).
    let floor_err = Bf::from_i64(n_terms as i64).mul_pow2(-(scale as i64));
    let tail = Bf::from_i64(2 * b as i64)
        .div(&Bf::from_i64((n_terms + 1) as i64), 64, Dir::Ceil);
    let rad = floor_err.add(&tail).round(32, Dir::Ceil);
    Ball::new(mid, rad).squash(prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_table_is_exact() {
        assert_eq!(bernoulli(2), (BigInt::from(1), BigInt::from(6)));
        assert_eq!(bernoulli(4), (BigInt::from(-1), BigInt::from(30)));
        assert_eq!(bernoulli(3), (BigInt::zero(), BigInt::one()));
        assert_eq!(bernoulli(12), (BigInt::from(-691), BigInt::from(2730)));
    }

    #[test]
    fn zeta_two_matches_pi_squared_over_six() {
        let prec = 240;
        let z = zeta(2, prec);
        let pi = super::super::elementary::pi(prec);
        let target = pi.mul(&pi, prec).div(&Ball::from_i64(6), prec);
        assert!(z.overlaps(&target), "zeta(2) and pi^2/6 must agree");
        assert!(z.rad_below_pow2(-200));
    }

    #[test]
    fn zeta_three_matches_reference_digits() {
        // 1.202056903159594285399738161511449990765 (independent oracle)
        let z = zeta(3, 220);
        let s = z.mid().to_decimal(30, Dir::Floor);
        assert!(s.starts_with("1.2020569031595942853997381615"), "{s}");
    }

    #[test]
    fn dirichlet_l_catalan_reference() {
        // L(2, chi_-4) = Catalan = 0.9159655941772190150546035149323841107742
        let chi = |n: u64| match n % 4 {
            1 => 1,
            3 => -1,
            _ => 0,
        };
        let l = dirichlet_l(chi, 4, 2, 200);
        let s = l.mid().to_decimal(25, Dir::Floor);
        assert!(s.starts_with("9.159655941772190150546"), "{s}");
    }

    #[test]
    fn l_three_chi_minus_four_is_pi_cubed_over_32() {
        let chi = |n: u64| match n % 4 {
            1 => 1,
            3 => -1,
            _ => 0,
        };
        let prec = 200;
        let l = dirichlet_l(chi, 4, 3, prec);
        let pi = super::super::elementary::pi(prec);
        let target = pi.powi(3, prec).div(&Ball::from_i64(32), prec);
        assert!(l.overlaps(&target));
        assert!(l.rad_below_pow2(-180));
    }

    #[test]
    fn l_one_series_brackets_pi_over_four() {
        let chi = |n: u64| match n % 4 {
            1 => 1,
            3 => -1,
            _ => 0,
        };
        let prec = 120;
        let l = l_one_series(chi, 4, 200_000, prec);
        let pi = super::super::elementary::pi(prec);
        let target = pi.div(&Ball::from_i64(4), prec);
        assert!(l.overlaps(&target));
        // Radius should be around 2/(2e5) = 1e-5
        assert!(l.rad_below_pow2(-13));
    }

    #[test]
    fn precision_doubling_shrinks_zeta_radius() {
        let lo = zeta(2, 120);
        let hi = zeta(2, 240);
        assert!(hi.rad().cmp(lo.rad()) == std::cmp::Ordering::Less);
        assert!(lo.overlaps(&hi));
    }
}

//! Squarefree-ideal counting: a multiplicative sieve and an independent
//! subset-product oracle, which must agree exactly wherever both run.

use crate::error::{Error, Result};
use crate::fields::quadratic::BaseField;
use crate::fields::splitting::{kronecker_splitting, Splitting};

pub const SIEVE_GUARD: u64 = 10_000_000;
pub const ORACLE_GUARD: u64 = 1_000_000;

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    // deterministic Miller-Rabin for u64
    let d = (n - 1) >> (n - 1).trailing_zeros();
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if a % n == 0 {
            // the witness list reaches 37 but trial division stops at 31
            continue;
        }
        let mut x = 1u64;
        let mut base = a % n;
        let mut e = d;
        while e > 0 {
            if e & 1 == 1 {
                x = ((x as u128 * base as u128) % n as u128) as u64;
            }
            base = ((base as u128 * base as u128) % n as u128) as u64;
            e >>= 1;
        }
        if x == 1 || x == n - 1 {
            continue;
        }
        let mut r = d;
        while r != n - 1 {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            r <<= 1;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest-prime-factor table for 0..=x.
pub(crate) fn spf_table(x: u64) -> Vec<u32> {
    let n = (x + 1) as usize;
    let mut spf = vec![0u32; n];
    let mut primes: Vec<u32> = Vec::new();
    for i in 2..n {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u32);
        }
        for &p in &primes {
            let ip = i * p as usize;
            if p > spf[i] || ip >= n {
                break;
            }
            spf[ip] = p;
        }
    }
    spf
}

/// Count of squarefree ideals of norm exactly p^e, by splitting type.
fn local_count(split: Splitting, e: u32) -> u64 {
    match (split, e) {
        (Splitting::Split, 1) => 2,
        (Splitting::Split, 2) => 1,
        (Splitting::Inert, 2) => 1,
        (Splitting::Ramified, 1) => 1,
        _ => 0,
    }
}

/// Q_k(x): the number of squarefree ideals of O_k of norm <= x, the unit
/// ideal included. Multiplicative sieve over rational primes.
pub fn squarefree_ideal_count(k: &BaseField, x: u64) -> Result<u64> {
    if x < 1 {
        return Err(Error::precondition("norm bound must be >= 1"));
    }
    if x > SIEVE_GUARD {
        return Err(Error::precondition(format!("sieve guard exceeded: {x} > {SIEVE_GUARD}")));
    }
    let spf = spf_table(x);
    let mut total = 1u64; // unit ideal
    match k {
        BaseField::Rational => {
            // squarefree integers in [2, x]
            'outer_q: for n in 2..=x as usize {
                let mut m = n;
                while m > 1 {
                    let p = spf[m] as usize;
                    let mut e = 0;
                    while m % p == 0 {
                        m /= p;
                        e += 1;
                    }
                    if e > 1 {
                        continue 'outer_q;
                    }
                }
                total += 1;
            }
        }
        BaseField::Quadratic(_) => {
            let mut split_of = std::collections::HashMap::new();
            'outer: for n in 2..=x as usize {
                let mut m = n;
                let mut f = 1u64;
                while m > 1 {
                    let p = spf[m] as u64;
                    let mut e = 0u32;
                    while m as u64 % p == 0 {
                        m /= p as usize;
                        e += 1;
                    }
                    let split = *split_of.entry(p).or_insert_with(|| kronecker_splitting(k, p));
                    let c = local_count(split, e);
                    if c == 0 {
                        continue 'outer;
                    }
                    f *= c;
                }
                total += f;
            }
        }
    }
    // Guard against the explicit quadratic bound Q_k(x) <= zeta(2)^deg x^2,
    // checked against the rational lower bound 1.6449 < zeta(2).
    let deg = k.degree();
    let lhs = u128::from(total) * 10_000u128.pow(deg);
    let rhs = 16_449u128.pow(deg) * u128::from(x) * u128::from(x);
    assert!(lhs <= rhs, "squarefree count exceeded its explicit bound at x = {x}");
    Ok(total)
}

/// Norms of the prime ideals of O_k with norm <= x, ascending, with split
/// primes contributing two entries.
pub fn prime_ideal_norms(k: &BaseField, x: u64) -> Vec<u64> {
    let mut norms = Vec::new();
    let mut sieve = vec![true; (x + 1) as usize];
    for p in 2..=x {
        if !sieve[p as usize] {
            continue;
        }
        let mut m = p * p;
        while m <= x {
            sieve[m as usize] = false;
            m += p;
        }
        match k {
            BaseField::Rational => norms.push(p),
            BaseField::Quadratic(_) => match kronecker_splitting(k, p) {
                Splitting::Split => {
                    norms.push(p);
                    norms.push(p);
                }
                Splitting::Ramified => norms.push(p),
                Splitting::Inert => {
                    if let Some(sq) = p.checked_mul(p) {
                        if sq <= x {
                            norms.push(sq);
                        }
                    }
                }
            },
        }
    }
    norms.sort_unstable();
    norms
}

fn subset_products(norms: &[u64], start: usize, budget: u64) -> u64 {
    let mut count = 1; // the empty product at this node
    for j in start..norms.len() {
        if norms[j] > budget {
            break;
        }
        count += subset_products(norms, j + 1, budget / norms[j]);
    }
    count
}

/// Independent brute force: enumerate prime-ideal norms and count distinct
/// subset products of norm <= x. Ground truth for the sieve.
pub fn squarefree_ideal_count_oracle(k: &BaseField, x: u64) -> Result<u64> {
    if x < 1 {
        return Err(Error::precondition("norm bound must be >= 1"));
    }
    if x > ORACLE_GUARD {
        return Err(Error::precondition(format!("oracle guard exceeded: {x} > {ORACLE_GUARD}")));
    }
    let norms = prime_ideal_norms(k, x);
    Ok(subset_products(&norms, 0, x))
}

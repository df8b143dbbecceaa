//! Structural data for absolutely simple groups: Coxeter exponents,
//! dimensions, center orders, and the twist bookkeeping used by the volume
//! and index bounds.
//!
//! Invariants enforced here: dim = rank + 2 * sum(exponents); the order of
//! G(F_q) for a split form is a monic polynomial in q of degree dim.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn parse(s: &str) -> Result<Family> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            other => Err(Error::precondition(format!("unknown family {other:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        };
        write!(f, "{c}")
    }
}

/// Degree of the twist: 1 for inner forms; 2, 3, 6 for the outer forms that
/// admit them.
pub type Twist = u8;

#[derive(Clone, Debug, Serialize)]
pub struct GroupData {
    pub family: Family,
    pub rank: u32,
    pub twist: Twist,
    /// Coxeter exponents m_1 <= ... not sorted for D (kept in standard order).
    pub exponents: Vec<u32>,
    pub dim: u32,
    /// Order parameter of the center of the simply connected form.
    pub n: u32,
    pub eps: u32,
    pub eps_prime: u32,
    pub eps_dprime: u32,
    /// Splitting-field degree parameter: 0 for inner forms; for outer forms
    /// either built in (2A2, triality D4) or supplied by the caller.
    pub s: u32,
    /// s' as a rational (num, den): s/2 for most types, s/2 - 1 for outer
    /// even-rank D.
    pub s_prime: (u32, u32),
}

impl GroupData {
    pub fn label(&self) -> String {
        if self.twist == 1 {
            format!("{}{}", self.family, self.rank)
        } else {
            format!("{}{}{}", self.twist, self.family, self.rank)
        }
    }

    /// Number of positive roots = sum of exponents.
    pub fn positive_roots(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn center_order(&self) -> u64 {
        (self.n as u64).pow(self.eps)
    }

    pub fn is_inner(&self) -> bool {
        self.twist == 1
    }

    /// Splitting-field degree [l:k] determined by the twist.
    pub fn splitting_degree(&self) -> u32 {
        match self.twist {
            1 => 1,
            2 => 2,
            3 | 6 => 3,
            _ => unreachable!(),
        }
    }
}

fn exponents(family: Family, rank: u32) -> Vec<u32> {
    match family {
        Family::A => (1..=rank).collect(),
        Family::B | Family::C => (0..rank).map(|i| 2 * i + 1).collect(),
        Family::D => {
            let mut v: Vec<u32> = (0..rank - 1).map(|i| 2 * i + 1).collect();
            v.push(rank - 1);
            v
        }
        Family::E => match rank {
            6 => vec![1, 4, 5, 7, 8, 11],
            7 => vec![1, 5, 7, 9, 11, 13, 17],
            8 => vec![1, 7, 11, 13, 17, 19, 23, 29],
            _ => unreachable!(),
        },
        Family::F => vec![1, 5, 7, 11],
        Family::G => vec![1, 5],
    }
}

fn validate_type(family: Family, rank: u32) -> Result<()> {
    let ok = match family {
        Family::A | Family::B | Family::C => rank >= 2,
        Family::D => rank >= 4,
        Family::E => (6..=8).contains(&rank),
        Family::F => rank == 4,
        Family::G => rank == 2,
    };
    if ok {
        Ok(())
    } else if family == Family::D && (rank == 2 || rank == 3) {
        Err(Error::precondition(format!(
            "D{rank} is rejected; use the equivalent low-rank type instead"
        )))
    } else {
        Err(Error::precondition(format!("({family}, {rank}) is not a supported simple type of rank >= 2")))
    }
}

fn validate_twist(family: Family, rank: u32, twist: Twist) -> Result<()> {
    let ok = match twist {
        1 => true,
        2 => matches!(family, Family::A | Family::D) || (family == Family::E && rank == 6),
        3 | 6 => family == Family::D && rank == 4,
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::precondition(format!("twist {twist} is not defined for type {family}{rank}")))
    }
}

/// Construct the structural data for (family, rank, twist). Outer forms with
/// no built-in splitting parameter require `s_config`; built-ins reject a
/// conflicting override.
pub fn group_data(family: Family, rank: u32, twist: Twist, s_config: Option<u32>) -> Result<GroupData> {
    validate_type(family, rank)?;
    validate_twist(family, rank, twist)?;
    let exps = exponents(family, rank);
    let dim = rank + 2 * exps.iter().sum::<u32>();
    let n = match family {
        Family::A => rank + 1,
        Family::B | Family::C => 2,
        Family::D => {
            if rank % 2 == 0 {
                2
            } else {
                4
            }
        }
        Family::E => match rank {
            6 => 3,
            7 => 2,
            _ => 1,
        },
        Family::F | Family::G => 1,
    };
    let eps = if family == Family::D && rank % 2 == 0 { 2 } else { 1 };
    let eps_prime = if twist == 1 { eps } else { 1 };
    let eps_dprime = if family == Family::D && rank % 2 == 0 && twist != 1 { 1 } else { 0 };
    let s = if twist == 1 {
        if let Some(s) = s_config {
            if s != 0 {
                return Err(Error::precondition(format!(
                    "inner forms have splitting parameter 0, got {s}"
                )));
            }
        }
        0
    } else if family == Family::A && rank == 2 && twist == 2 {
        if matches!(s_config, Some(s) if s != 5) {
            return Err(Error::precondition("the outer A2 splitting parameter is fixed at 5"));
        }
        5
    } else if family == Family::D && rank == 4 && (twist == 3 || twist == 6) {
        if matches!(s_config, Some(s) if s != 7) {
            return Err(Error::precondition(
                "the triality D4 splitting parameter is fixed at 7 (s' = 5/2)",
            ));
        }
        7
    } else {
        match s_config {
            Some(s) if s >= 5 => s,
            Some(s) => {
                return Err(Error::precondition(format!(
                    "outer splitting parameter must be >= 5, got {s}"
                )))
            }
            None => {
                return Err(Error::precondition(format!(
                    "outer form {family}{rank} (twist {twist}) needs an explicit splitting parameter"
                )))
            }
        }
    };
    let s_prime = if family == Family::D && rank % 2 == 0 && twist != 1 {
        // s/2 - 1
        if s % 2 == 0 {
            (s / 2 - 1, 1)
        } else {
            (s - 2, 2)
        }
    } else if s % 2 == 0 {
        (s / 2, 1)
    } else {
        (s, 2)
    };
    Ok(GroupData {
        family,
        rank,
        twist,
        exponents: exps,
        dim,
        n,
        eps,
        eps_prime,
        eps_dprime,
        s,
        s_prime,
    })
}

/// Check dim = rank + 2 * sum(exponents) by recomputation.
pub fn verify_dimension(g: &GroupData) -> bool {
    g.dim == g.rank + 2 * g.positive_roots()
}

/// Dense polynomial with BigInt coefficients, index = degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly(pub Vec<BigInt>);

impl IntPoly {
    pub fn x_pow(n: usize) -> IntPoly {
        let mut v = vec![BigInt::zero(); n + 1];
        v[n] = BigInt::one();
        IntPoly(v)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] += a * b;
            }
        }
        IntPoly(out)
    }

    pub fn degree(&self) -> usize {
        let mut d = self.0.len() - 1;
        while d > 0 && self.0[d].is_zero() {
            d -= 1;
        }
        d
    }

    pub fn leading(&self) -> &BigInt {
        &self.0[self.degree()]
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.0.iter().rev() {
            acc = acc * q + c;
        }
        acc
    }
}

/// Order of the group of F_q points of the simply connected form, as a
/// polynomial in q. Split forms: q^N prod (q^(m_i + 1) - 1). Twisted A_r:
/// q^N prod_{i=2}^{r+1} (q^i - (-1)^i). Other twists are out of scope.
pub fn finite_group_order_poly(g: &GroupData) -> Result<IntPoly> {
    let n_pos = g.positive_roots() as usize;
    let mut poly = IntPoly::x_pow(n_pos);
    match (g.twist, g.family) {
        (1, _) => {
            for &m in &g.exponents {
                let d = (m + 1) as usize;
                let mut f = vec![BigInt::zero(); d + 1];
                f[d] = BigInt::one();
                f[0] = BigInt::from(-1);
                poly = poly.mul(&IntPoly(f));
            }
        }
        (2, Family::A) => {
            for i in 2..=(g.rank + 1) as usize {
                let mut f = vec![BigInt::zero(); i + 1];
                f[i] = BigInt::one();
                f[0] = if i % 2 == 0 { BigInt::from(-1) } else { BigInt::one() };
                poly = poly.mul(&IntPoly(f));
            }
        }
        _ => {
            return Err(Error::unsupported(format!(
                "finite group order is implemented for split forms and twisted A only, not {}",
                g.label()
            )))
        }
    }
    Ok(poly)
}

/// |G(F_q)| evaluated at a prime power q.
pub fn finite_group_order(g: &GroupData, q: u64) -> Result<BigInt> {
    let poly = finite_group_order_poly(g)?;
    Ok(poly.eval(&BigInt::from(q)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gd(f: Family, r: u32, t: Twist) -> GroupData {
        group_data(f, r, t, None).unwrap()
    }

    #[test]
    fn split_a2_matches_table() {
        let g = gd(Family::A, 2, 1);
        assert_eq!(g.dim, 8);
        assert_eq!(g.exponents, vec![1, 2]);
        assert_eq!(g.n, 3);
        assert_eq!(g.eps, 1);
        assert_eq!(g.eps_prime, 1);
        assert_eq!(g.s, 0);
        assert_eq!(g.center_order(), 3);
    }

    #[test]
    fn e8_matches_table() {
        let g = gd(Family::E, 8, 1);
        assert_eq!(g.dim, 248);
        assert_eq!(g.exponents, vec![1, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(g.n, 1);
    }

    #[test]
    fn triality_d4_parameters() {
        let g = group_data(Family::D, 4, 6, None).unwrap();
        assert_eq!(g.eps, 2);
        assert_eq!(g.eps_prime, 1);
        assert_eq!(g.eps_dprime, 1);
        assert_eq!(g.n, 2);
        assert_eq!(g.s, 7);
        assert_eq!(g.s_prime, (5, 2));
        assert_eq!(g.exponents, vec![1, 3, 5, 3]);
        assert_eq!(g.dim, 28);
    }

    #[test]
    fn outer_a2_built_in() {
        let g = group_data(Family::A, 2, 2, None).unwrap();
        assert_eq!(g.s, 5);
        assert_eq!(g.s_prime, (5, 2));
        assert_eq!(g.eps_prime, 1);
    }

    #[test]
    fn low_rank_d_rejected() {
        assert!(group_data(Family::D, 2, 1, None).is_err());
        assert!(group_data(Family::D, 3, 1, None).is_err());
        assert!(group_data(Family::A, 1, 1, None).is_err());
    }

    #[test]
    fn outer_forms_need_config() {
        assert!(group_data(Family::D, 6, 2, None).is_err());
        assert!(group_data(Family::D, 6, 2, Some(4)).is_err());
        let g = group_data(Family::D, 7, 2, Some(5)).unwrap();
        assert_eq!(g.s, 5);
        assert_eq!(g.s_prime, (5, 2)); // odd rank D: s' = s/2
        let g = group_data(Family::D, 6, 2, Some(5)).unwrap();
        assert_eq!(g.s_prime, (3, 2)); // even rank outer D: s/2 - 1
        let g = group_data(Family::D, 8, 2, Some(6)).unwrap();
        assert_eq!(g.s_prime, (2, 1));
    }

    #[test]
    fn sl3_f2_and_su3_f3_orders() {
        let split = gd(Family::A, 2, 1);
        assert_eq!(finite_group_order(&split, 2).unwrap(), BigInt::from(168));
        let tw = group_data(Family::A, 2, 2, None).unwrap();
        assert_eq!(finite_group_order(&tw, 3).unwrap(), BigInt::from(6048));
    }

    #[test]
    fn order_polynomial_is_monic_of_degree_dim() {
        for (f, r, t) in [
            (Family::A, 2, 1),
            (Family::A, 5, 2),
            (Family::B, 3, 1),
            (Family::C, 4, 1),
            (Family::D, 5, 1),
            (Family::E, 7, 1),
            (Family::G, 2, 1),
        ] {
            let g = group_data(f, r, t, if t == 2 && !(f == Family::A && r == 2) { Some(5) } else { None })
                .unwrap();
            let p = finite_group_order_poly(&g).unwrap();
            assert_eq!(p.degree() as u32, g.dim, "{}", g.label());
            assert!(p.leading().is_one());
        }
    }

    #[test]
    fn dim_identity_across_ranks() {
        for r in 2..=30 {
            for f in [Family::A, Family::B, Family::C, Family::D] {
                if f == Family::D && r < 4 {
                    continue;
                }
                let g = gd(f, r, 1);
                assert!(verify_dimension(&g));
            }
        }
        for (f, r) in [(Family::E, 6), (Family::E, 7), (Family::E, 8), (Family::F, 4), (Family::G, 2)] {
            assert!(verify_dimension(&gd(f, r, 1)));
        }
    }
}

//! Central binomials against |PGL(2,p)|, and a factorization scan over
//! primes.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::is_prime;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithmeticError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("scan limit must be at least 7, got {0}")]
    LimitTooSmall(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisibilityRecord {
    pub p: u64,
    /// `C(p+1, (p+1)/2)`.
    pub binomial: BigUint,
    /// `p(p-1)(p+1)`.
    pub pgl_order: BigUint,
    pub divides: bool,
}

/// `C(n, k)`, built as a running product where each partial value is itself
/// a binomial coefficient, so every division is exact.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        // acc = C(n-k+i-1, i-1). After cancelling gcd(num, i), the
        // remaining denominator is coprime to num and so divides acc.
        let num = n - k + i;
        let g = num.gcd(&i);
        acc = acc / (i / g) * (num / g);
    }
    acc
}

pub fn binomial_divides_pgl(p: u64) -> Result<DivisibilityRecord, ArithmeticError> {
    if p.is_multiple_of(2) || !is_prime(p) {
        return Err(ArithmeticError::NotOddPrime(p));
    }
    let binomial = binomial(p + 1, p.div_ceil(2));
    let big = BigUint::from(p);
    let pgl_order = &big * (&big - 1u32) * (&big + 1u32);
    let divides = (&pgl_order % &binomial).is_zero();
    Ok(DivisibilityRecord {
        p,
        binomial,
        pgl_order,
        divides,
    })
}

/// `|PGL(2,p)|` as `(p^2-1)(p^2-p)/(p-1)`.
pub fn pgl_order_via_gl(p: u64) -> BigUint {
    let p = BigUint::from(p);
    let p2 = &p * &p;
    (&p2 - 1u32) * (&p2 - &p) / (&p - 1u32)
}

fn allowed(m: u64) -> bool {
    if matches!(m, 6 | 14 | 22) {
        return true;
    }
    if !m.is_multiple_of(2) || m < 22 {
        return false;
    }
    let mut r = m / 2;
    while r.is_multiple_of(11) {
        r /= 11;
    }
    r == 1
}

/// Primes `p <= limit` with `p = 2, 3 (mod 5)` for which both `p - 1` and
/// `p + 1` lie in `{6, 14, 22} u {2 * 11^k : k >= 1}`.
pub fn minimal_simple_scan(limit: u64) -> Result<Vec<u64>, ArithmeticError> {
    if limit < 7 {
        return Err(ArithmeticError::LimitTooSmall(limit));
    }
    Ok((2..=limit)
        .filter(|&p| matches!(p % 5, 2 | 3))
        .filter(|&p| allowed(p - 1) && allowed(p + 1))
        .filter(|&p| is_prime(p))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_records() {
        let r = binomial_divides_pgl(5).unwrap();
        assert_eq!(
            (r.binomial, r.pgl_order, r.divides),
            (20u32.into(), 120u32.into(), true)
        );
        let r = binomial_divides_pgl(7).unwrap();
        assert_eq!(
            (r.binomial, r.pgl_order, r.divides),
            (70u32.into(), 336u32.into(), false)
        );
        let r = binomial_divides_pgl(13).unwrap();
        assert_eq!(
            (r.binomial, r.pgl_order, r.divides),
            (3432u32.into(), 2184u32.into(), false)
        );
        assert!(binomial_divides_pgl(9).is_err());
        assert!(binomial_divides_pgl(2).is_err());
    }

    #[test]
    fn binomial_against_pascal() {
        let mut row = vec![BigUint::one()];
        for n in 1..=80u64 {
            let mut next = vec![BigUint::one(); n as usize + 1];
            for k in 1..n as usize {
                next[k] = &row[k - 1] + &row[k];
            }
            row = next;
            for k in 0..=n {
                assert_eq!(binomial(n, k), row[k as usize], "C({n},{k})");
            }
        }
    }

    #[test]
    fn scan_examples() {
        assert!(minimal_simple_scan(7).unwrap().is_empty());
        assert!(minimal_simple_scan(23).unwrap().is_empty());
        assert!(minimal_simple_scan(6).is_err());
        assert!(allowed(242) && allowed(22) && allowed(6) && !allowed(24) && !allowed(44));
    }
}

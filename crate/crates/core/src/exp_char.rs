//! The exponential characterization: with `q = ord_p(3)`, a prime `p > 3` is
//! a Cantor prime exactly when `K = (3^q - 1) / (2p)` is a sum of distinct
//! powers of 3, i.e. every base-3 digit of `K` is 0 or 1.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{self, factor_u64, is_prime_u64, pow_mod};
use crate::error::{CantorError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExponentialWitness {
    #[serde(with = "crate::decimal::u64_str")]
    pub p: u64,
    pub q: u64,
    #[serde(rename = "K", with = "crate::decimal")]
    pub k: BigUint,
    /// Descending `d_1 > ... > d_n` with `K = sum 3^{d_i}`; empty unless satisfied.
    pub offsets: Vec<u64>,
    pub satisfied: bool,
}

fn require_prime_above_three(p: u64) -> Result<()> {
    if p == 3 {
        return Err(CantorError::DivisibleByThree(3));
    }
    if !is_prime_u64(p) {
        return Err(CantorError::NotPrime(BigUint::from(p)));
    }
    if p == 2 {
        return Err(CantorError::BadArgument("p must be an odd prime other than 3".into()));
    }
    Ok(())
}

/// Least `q >= 1` with `3^q = 1 (mod p)`, found by stripping prime factors
/// of `p - 1` from the group order.
pub fn multiplicative_order_of_3(p: u64) -> Result<u64> {
    require_prime_above_three(p)?;
    let mut order = p - 1;
    for (f, _) in factor_u64(p - 1) {
        while order % f == 0 && pow_mod(3, order / f, p) == 1 {
            order /= f;
        }
    }
    Ok(order)
}

// Nine trits per chunk would do, but 3^40 is the largest power of 3 in a u64.
const CHUNK_TRITS: u32 = 40;
const CHUNK: u64 = 12_157_665_459_056_928_801; // 3^40

fn chunk_has_digit_two(mut chunk: u64, trits: u32) -> bool {
    for _ in 0..trits {
        if chunk % 3 == 2 {
            return true;
        }
        chunk /= 3;
    }
    false
}

/// True iff every base-3 digit of `k` is 0 or 1. Returns false for `k = 0`
/// (the empty sum is not a valid `K`). Stops at the first digit 2 found
/// scanning upward from the least significant trit.
pub fn is_zero_one_ternary(k: &BigUint) -> bool {
    if k.is_zero() {
        return false;
    }
    let chunk = BigUint::from(CHUNK);
    let mut rest = k.clone();
    while !rest.is_zero() {
        let (quot, rem) = rest.div_rem(&chunk);
        let rem = rem.to_u64().expect("remainder below 3^40");
        if chunk_has_digit_two(rem, CHUNK_TRITS) {
            return false;
        }
        rest = quot;
    }
    true
}

fn zero_one_offsets(k: &BigUint) -> Vec<u64> {
    let trits = k.to_radix_le(3);
    (0..trits.len() as u64).rev().filter(|&i| trits[i as usize] == 1).collect()
}

/// Solves `2pK + 1 = 3^q` for `K` and records whether `K` is 0/1-ternary.
pub fn extract_k(p: u64) -> Result<ExponentialWitness> {
    let q = multiplicative_order_of_3(p)?;
    let exponent = u32::try_from(q)
        .map_err(|_| CantorError::BadArgument(format!("ord_{p}(3) = {q} is too large to expand")))?;
    let power = BigUint::from(3u32).pow(exponent);
    let (k, rem) = (&power - 1u32).div_rem(&BigUint::from(2 * p));
    if !rem.is_zero() {
        return Err(CantorError::Invariant(format!("2p = {} does not divide 3^{q} - 1", 2 * p)));
    }
    if k >= power {
        return Err(CantorError::Invariant(format!("K >= 3^q for p = {p}")));
    }
    let satisfied = is_zero_one_ternary(&k);
    let offsets = if satisfied { zero_one_offsets(&k) } else { Vec::new() };
    if satisfied && offsets.last() != Some(&0) {
        return Err(CantorError::Invariant(format!("K for p = {p} is 0/1-ternary but K mod 3 != 1")));
    }
    Ok(ExponentialWitness { p, q, k, offsets, satisfied })
}

/// Same verdict as `extract_k(p).satisfied`, but rejects most primes from
/// the low trits of `K` alone. For `m <= q`, `3^q = 0 (mod 3^m)` gives
/// `K = -(2p)^{-1} (mod 3^m)`, so a digit 2 among those trits settles it
/// without expanding `3^q`.
pub fn is_cantor_by_exponential_equation(p: u64) -> Result<bool> {
    let q = multiplicative_order_of_3(p)?;
    if q > CHUNK_TRITS as u64 {
        let inv = arith::inv_mod((2 * p) % CHUNK, CHUNK).expect("2p is a unit mod 3^40");
        let low = (CHUNK - inv) % CHUNK;
        if chunk_has_digit_two(low, CHUNK_TRITS) {
            return Ok(false);
        }
        let mut m = 1000u64;
        while m < q {
            let modulus = BigUint::from(3u32).pow(m as u32);
            let two_p = BigUint::from(2 * p);
            let inv = two_p.modinv(&modulus).expect("2p is a unit mod 3^m");
            let low = (&modulus - inv) % &modulus;
            let trits = low.to_radix_le(3);
            if trits.contains(&2) {
                return Ok(false);
            }
            m = m.saturating_mul(10);
        }
    }
    Ok(extract_k(p)?.satisfied)
}

/// `2pK + 1 == 3^q`, exactly.
pub fn satisfies_exponential_equation(p: u64, k: &BigUint, q: u64) -> bool {
    let Ok(q) = u32::try_from(q) else { return false };
    BigUint::from(2 * p) * k + BigUint::one() == BigUint::from(3u32).pow(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(multiplicative_order_of_3(13), Ok(3));
        assert_eq!(multiplicative_order_of_3(757), Ok(9));
        assert_eq!(multiplicative_order_of_3(5), Ok(4));
        assert_eq!(multiplicative_order_of_3(3), Err(CantorError::DivisibleByThree(3)));
        assert_eq!(multiplicative_order_of_3(9), Err(CantorError::NotPrime(BigUint::from(9u32))));
    }

    #[test]
    fn order_matches_naive_stepping() {
        for p in crate::primality::primes_up_to(3000).into_iter().filter(|&p| p > 3) {
            let mut x = 3 % p;
            let mut naive = 1;
            while x != 1 {
                x = x * 3 % p;
                naive += 1;
            }
            assert_eq!(multiplicative_order_of_3(p), Ok(naive), "p = {p}");
        }
    }

    #[test]
    fn witnesses() {
        let w = extract_k(13).unwrap();
        assert_eq!((w.q, w.k.clone(), w.satisfied), (3, BigUint::one(), true));
        assert_eq!(w.offsets, vec![0]);

        let w = extract_k(757).unwrap();
        assert_eq!((w.q, w.k.clone(), w.satisfied), (9, BigUint::from(13u32), true));
        assert_eq!(w.offsets, vec![2, 1, 0]);

        let w = extract_k(5).unwrap();
        assert_eq!((w.q, w.k.clone(), w.satisfied), (4, BigUint::from(8u32), false));
        assert!(w.offsets.is_empty());
    }

    #[test]
    fn zero_one_ternary() {
        assert!(is_zero_one_ternary(&BigUint::from(13u32)));
        assert!(is_zero_one_ternary(&BigUint::from(1u32)));
        assert!(!is_zero_one_ternary(&BigUint::from(8u32)));
        assert!(!is_zero_one_ternary(&BigUint::zero()));
        // 3^100 + 1 crosses several chunks; 2 * 3^100 + 1 hides its 2 high up
        let p100 = BigUint::from(3u32).pow(100u32);
        assert!(is_zero_one_ternary(&(&p100 + 1u32)));
        assert!(!is_zero_one_ternary(&(&p100 * 2u32 + 1u32)));
    }

    #[test]
    fn exponential_examples() {
        assert_eq!(is_cantor_by_exponential_equation(13), Ok(true));
        assert_eq!(is_cantor_by_exponential_equation(757), Ok(true));
        assert_eq!(is_cantor_by_exponential_equation(1009), Ok(false));
        assert_eq!(is_cantor_by_exponential_equation(797_161), Ok(true));
    }

    #[test]
    fn shortcut_agrees_with_full_extraction() {
        for p in crate::primality::primes_up_to(5000).into_iter().filter(|&p| p > 3) {
            assert_eq!(
                is_cantor_by_exponential_equation(p).unwrap(),
                extract_k(p).unwrap().satisfied,
                "p = {p}"
            );
        }
    }

    #[test]
    fn equation_holds() {
        let w = extract_k(1093).unwrap();
        assert!(satisfies_exponential_equation(1093, &w.k, w.q));
        assert!(!satisfies_exponential_equation(1093, &(w.k + 1u32), w.q));
    }
}

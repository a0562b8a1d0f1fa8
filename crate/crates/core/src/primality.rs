//! Primality for machine words and for the multi-hundred-digit values met in
//! the repunit searches.
//!
//! Everything below 2^64 is decided by a deterministic Miller-Rabin witness
//! set and reported as [`PrimalityStatus::Prime`]. Larger inputs go through
//! trial division and then `rounds` Miller-Rabin rounds with bases drawn from
//! a ChaCha stream seeded by [`PrimalityConfig::seed`], so repeated runs give
//! identical verdicts.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith;

pub const DEFAULT_MR_ROUNDS: u32 = 64;
pub const DEFAULT_SEED: u64 = 0x00C4_A470_3313;
const TRIAL_DIVISION_BOUND: u64 = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimalityConfig {
    pub rounds: u32,
    pub seed: u64,
}

impl Default for PrimalityConfig {
    fn default() -> Self {
        PrimalityConfig { rounds: DEFAULT_MR_ROUNDS, seed: DEFAULT_SEED }
    }
}

impl PrimalityConfig {
    pub fn with_rounds(rounds: u32) -> Self {
        PrimalityConfig { rounds, ..Default::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PrimalityStatus {
    Prime,
    ProbablePrime { rounds: u32 },
    Composite {
        /// A non-trivial divisor, when trial division found one.
        #[serde(with = "crate::decimal::option")]
        witness: Option<BigUint>,
    },
}

impl PrimalityStatus {
    /// Prime or probable prime.
    pub fn is_positive(&self) -> bool {
        !matches!(self, PrimalityStatus::Composite { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            PrimalityStatus::Prime => "prime",
            PrimalityStatus::ProbablePrime { .. } => "probable_prime",
            PrimalityStatus::Composite { .. } => "composite",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimalityVerdict {
    #[serde(with = "crate::decimal")]
    pub n: BigUint,
    pub status: PrimalityStatus,
}

pub fn is_prime(n: &BigUint) -> PrimalityVerdict {
    is_prime_with(n, &PrimalityConfig::default())
}

pub fn is_prime_with(n: &BigUint, config: &PrimalityConfig) -> PrimalityVerdict {
    let status = match n.to_u64() {
        Some(small) => small_status(small),
        None => big_status(n, config),
    };
    PrimalityVerdict { n: n.clone(), status }
}

/// Shorthand for "prime or probable prime" under the default configuration.
pub fn is_probably_prime(n: &BigUint) -> bool {
    is_prime(n).status.is_positive()
}

fn small_status(n: u64) -> PrimalityStatus {
    if arith::is_prime_u64(n) {
        PrimalityStatus::Prime
    } else {
        PrimalityStatus::Composite { witness: arith::smallest_factor_u64(n).map(BigUint::from) }
    }
}

fn big_status(n: &BigUint, config: &PrimalityConfig) -> PrimalityStatus {
    if let Some(d) = trial_divisor(n, TRIAL_DIVISION_BOUND) {
        return PrimalityStatus::Composite { witness: Some(BigUint::from(d)) };
    }
    if miller_rabin(n, config) {
        PrimalityStatus::ProbablePrime { rounds: config.rounds }
    } else {
        PrimalityStatus::Composite { witness: None }
    }
}

/// Remainder of `n` modulo a word-sized `m`, one pass over the limbs.
pub(crate) fn rem_u64(limbs: &[u64], m: u64) -> u64 {
    limbs.iter().rev().fold(0u128, |acc, &limb| ((acc << 64) | limb as u128) % m as u128) as u64
}

/// Smallest prime `<= bound` dividing `n` (excluding `n` itself).
pub fn trial_divisor(n: &BigUint, bound: u64) -> Option<u64> {
    let limbs = n.to_u64_digits();
    primes_up_to(bound)
        .into_iter()
        .find(|&p| rem_u64(&limbs, p) == 0 && *n != BigUint::from(p))
}

/// Like [`trial_divisor`] but over a caller-supplied prime table.
pub fn trial_divisor_in(n: &BigUint, primes: &[u64]) -> Option<u64> {
    let limbs = n.to_u64_digits();
    primes.iter().copied().find(|&p| rem_u64(&limbs, p) == 0 && *n != BigUint::from(p))
}

fn random_base(rng: &mut ChaCha8Rng, n: &BigUint) -> BigUint {
    // uniform enough in [2, n - 2] for witness selection
    let span = n - 3u32;
    let limbs: Vec<u64> = (0..n.to_u64_digits().len() + 1).map(|_| rng.gen()).collect();
    BigUint::from_slice(&limbs_to_u32(&limbs)) % span + 2u32
}

fn limbs_to_u32(limbs: &[u64]) -> Vec<u32> {
    limbs.iter().flat_map(|&l| [l as u32, (l >> 32) as u32]).collect()
}

/// Miller-Rabin on an odd `n > 2^64`: base 2 first, then `rounds - 1` seeded random bases.
fn miller_rabin(n: &BigUint, config: &PrimalityConfig) -> bool {
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    for round in 0..config.rounds.max(1) {
        let a = if round == 0 { BigUint::from(2u32) } else { random_base(&mut rng, n) };
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        let mut passed = false;
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                passed = true;
                break;
            }
            if x == one {
                break;
            }
        }
        if !passed {
            return false;
        }
    }
    true
}

/// All primes `<= limit`, ascending, from an odd-only bit sieve.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    // bit i stands for the odd number 2i + 1
    let odd_count = (limit as usize).div_ceil(2);
    let mut composite = vec![0u64; odd_count.div_ceil(64)];
    let is_set = |bits: &[u64], i: usize| bits[i / 64] >> (i % 64) & 1 == 1;
    let mut i = 1usize;
    while (2 * i + 1) * (2 * i + 1) <= limit as usize {
        if !is_set(&composite, i) {
            let p = 2 * i + 1;
            let mut j = p * p / 2;
            while j < odd_count {
                composite[j / 64] |= 1 << (j % 64);
                j += p;
            }
        }
        i += 1;
    }
    let mut primes = Vec::with_capacity(estimate_prime_count(limit));
    primes.push(2);
    primes.extend((1..odd_count).filter(|&i| !is_set(&composite, i)).map(|i| 2 * i as u64 + 1));
    primes
}

fn estimate_prime_count(limit: u64) -> usize {
    let x = limit as f64;
    (1.26 * x / x.ln().max(1.0)) as usize + 8
}

/// `n mod 4` without a full division.
pub(crate) fn mod4(n: &BigUint) -> u8 {
    if n.is_zero() {
        0
    } else {
        (n.to_u64_digits()[0] & 3) as u8
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Pow;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn paper_sized_examples() {
        assert_eq!(is_prime(&big(757)).status, PrimalityStatus::Prime);
        assert_eq!(is_prime(&big(2)).status, PrimalityStatus::Prime);
        assert_eq!(
            is_prime(&big(9841)).status,
            PrimalityStatus::Composite { witness: Some(big(13)) }
        );
        assert!(!is_prime(&big(0)).status.is_positive());
        assert!(!is_prime(&big(1)).status.is_positive());
    }

    #[test]
    fn sieve_examples() {
        assert_eq!(primes_up_to(10), vec![2, 3, 5, 7]);
        assert!(primes_up_to(1).is_empty());
        assert!(primes_up_to(0).is_empty());
        assert_eq!(primes_up_to(2), vec![2]);
        let fifty = primes_up_to(50);
        assert_eq!(fifty.len(), 15);
        assert_eq!(*fifty.last().unwrap(), 47);
        assert_eq!(primes_up_to(1_000_000).len(), 78_498);
    }

    #[test]
    fn big_repunits() {
        // (3^71 - 1)/2 is prime, (3^11 - 1)/2 = 23 * 3851
        let r71 = (big(3).pow(71u32) - 1u32) / 2u32;
        assert_eq!(is_prime(&r71).status, PrimalityStatus::ProbablePrime { rounds: 64 });
        let r73 = (big(3).pow(73u32) - 1u32) / 2u32;
        assert!(!is_prime(&r73).status.is_positive());
        let m127 = (big(2).pow(127u32)) - 1u32;
        assert!(is_prime_with(&m127, &PrimalityConfig::with_rounds(8)).status.is_positive());
        let carmichael_like = big(4_294_967_291) * big(4_294_967_279) * big(2_147_483_647);
        assert_eq!(
            is_prime(&carmichael_like).status,
            PrimalityStatus::Composite { witness: None }
        );
    }

    #[test]
    fn deterministic_across_calls() {
        let n = (big(3).pow(103u32) - 1u32) / 2u32;
        let cfg = PrimalityConfig::with_rounds(5);
        assert_eq!(is_prime_with(&n, &cfg), is_prime_with(&n, &cfg));
    }

    #[test]
    fn trial_division_skips_self() {
        assert_eq!(trial_divisor(&big(757), 1000), None);
        assert_eq!(trial_divisor(&big(9841), 1000), Some(13));
        assert_eq!(trial_divisor_in(&big(121), &[2, 3, 5, 7, 11]), Some(11));
    }
}

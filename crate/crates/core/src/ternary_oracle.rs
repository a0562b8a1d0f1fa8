//! Ground-truth Cantor membership from the base-3 expansion of `1/p`.
//!
//! Two routes live here. The digit oracle runs base-3 long division on
//! `1/p` over exactly one repetend. The staged exclusion walks the chain of
//! interval conditions `3^k * D in (2p, 3p)`, where `D` starts at 1 and
//! becomes `3^k * D - 2p` after every confirmed 2-digit. Both use exact
//! integer arithmetic only.

use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::arith::is_prime_u64;
use crate::error::{CantorError, Result};

/// One full repetend of `1/p` in base 3.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TernaryPeriod {
    #[serde(with = "crate::decimal::u64_str")]
    pub p: u64,
    pub digits: Vec<u8>,
    pub period: u64,
}

impl TernaryPeriod {
    /// The repetend read as a base-3 integer `B`, so that `1/p = B / (3^period - 1)`.
    pub fn block_value(&self) -> BigUint {
        BigUint::from_radix_be(&self.digits, 3).expect("digits are base-3")
    }

    pub fn count_of(&self, digit: u8) -> usize {
        self.digits.iter().filter(|&&d| d == digit).count()
    }

    pub fn is_cantor(&self) -> bool {
        self.digits.iter().all(|&d| d != 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExclusionStage {
    FailsFirstDigit,
    FailsSecondDigit,
    /// The `n`-th non-zero digit (n >= 3) is the first 1.
    FailsAtDigit(u32),
    Passes,
}

impl ExclusionStage {
    fn from_failing_index(n: u32) -> Self {
        match n {
            1 => ExclusionStage::FailsFirstDigit,
            2 => ExclusionStage::FailsSecondDigit,
            n => ExclusionStage::FailsAtDigit(n),
        }
    }

    /// Index of the failing non-zero digit, `None` for `Passes`.
    pub fn failing_index(&self) -> Option<u32> {
        match *self {
            ExclusionStage::FailsFirstDigit => Some(1),
            ExclusionStage::FailsSecondDigit => Some(2),
            ExclusionStage::FailsAtDigit(n) => Some(n),
            ExclusionStage::Passes => None,
        }
    }
}

impl fmt::Display for ExclusionStage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExclusionStage::FailsFirstDigit => f.write_str("fails_first_digit"),
            ExclusionStage::FailsSecondDigit => f.write_str("fails_second_digit"),
            ExclusionStage::FailsAtDigit(n) => write!(f, "fails_at_digit({n})"),
            ExclusionStage::Passes => f.write_str("passes"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExclusionVerdict {
    #[serde(with = "crate::decimal::u64_str")]
    pub p: u64,
    pub stage: ExclusionStage,
    /// Gaps `k_i` between consecutive confirmed 2-digits, the first measured
    /// from the radix point.
    pub witness_exponents: Vec<u64>,
}

fn require_prime_above_three(p: u64) -> Result<()> {
    if p == 3 {
        return Err(CantorError::DivisibleByThree(p));
    }
    if !is_prime_u64(p) {
        return Err(CantorError::NotPrime(BigUint::from(p)));
    }
    if p == 2 {
        return Err(CantorError::BadArgument("p = 2 has no characterization; use the digit oracle".into()));
    }
    Ok(())
}

fn long_division<T>(p: T) -> Vec<u8>
where
    T: Copy + PartialEq + From<u8> + std::ops::Mul<Output = T> + std::ops::Div<Output = T> + std::ops::Rem<Output = T>,
    u8: TryFrom<T>,
{
    let one = T::from(1);
    let three = T::from(3);
    let mut digits = Vec::new();
    let mut r = one;
    loop {
        let scaled = three * r;
        digits.push(u8::try_from(scaled / p).unwrap_or(u8::MAX));
        r = scaled % p;
        if r == one {
            return digits;
        }
    }
}

/// Base-3 long division of `1/p` until the remainder returns to 1.
pub fn ternary_digits_of_reciprocal(p: u64) -> Result<TernaryPeriod> {
    require_prime_above_three(p)?;
    let digits = if p <= u64::MAX / 3 { long_division(p) } else { long_division(p as u128) };
    let period = digits.len() as u64;
    Ok(TernaryPeriod { p, digits, period })
}

/// Whether `1/p` lies in the middle-third Cantor set.
///
/// `p = 3` yields true through `1/3 = 0.0222...`; `p = 2` yields false
/// (`1/2 = 0.111...`). The scan stops at the first digit 1.
pub fn is_reciprocal_in_cantor_set(p: u64) -> Result<bool> {
    if !is_prime_u64(p) {
        return Err(CantorError::NotPrime(BigUint::from(p)));
    }
    match p {
        2 => return Ok(false),
        3 => return Ok(true),
        _ => {}
    }
    let p_wide = p as u128;
    let mut r: u128 = 1;
    loop {
        let scaled = 3 * r;
        if scaled / p_wide == 1 {
            return Ok(false);
        }
        r = scaled % p_wide;
        if r == 1 {
            return Ok(true);
        }
    }
}

/// Smallest `k >= 1` with `3^k * scale > lo`, kept only when `3^k * scale < hi`.
fn scaled_power_in_open_interval(scale: u128, lo: u128, hi: u128) -> Option<u32> {
    let mut k = 0u32;
    let mut value = scale;
    while value <= lo {
        value = value.checked_mul(3)?;
        k += 1;
    }
    (k >= 1 && value < hi).then_some(k)
}

/// The exponent `k` with `lo < 3^k < hi`, if any.
pub fn power_of_3_in_open_interval(lo: u128, hi: u128) -> Result<Option<u32>> {
    if lo == 0 || lo >= hi {
        return Err(CantorError::BadInterval { lo, hi });
    }
    Ok(scaled_power_in_open_interval(1, lo, hi))
}

/// Walks the interval chain: the `n`-th non-zero digit of `1/p` is a 2 exactly
/// when some `3^{k_n}` scales the running residual `D` into `(2p, 3p)`.
/// The chain closes once the residual returns to 1, after one full period.
pub fn exclusion_stage(p: u64) -> Result<ExclusionVerdict> {
    require_prime_above_three(p)?;
    let two_p = 2 * p as u128;
    let three_p = 3 * p as u128;
    let mut residual: u128 = 1;
    let mut witness_exponents = Vec::new();
    let mut nonzero_index = 1u32;
    loop {
        let k = if residual == 1 {
            power_of_3_in_open_interval(two_p, three_p)?
        } else {
            scaled_power_in_open_interval(residual, two_p, three_p)
        };
        let Some(k) = k else {
            return Ok(ExclusionVerdict {
                p,
                stage: ExclusionStage::from_failing_index(nonzero_index),
                witness_exponents,
            });
        };
        witness_exponents.push(k as u64);
        residual = residual * 3u128.pow(k) - two_p;
        if residual == 1 {
            return Ok(ExclusionVerdict { p, stage: ExclusionStage::Passes, witness_exponents });
        }
        nonzero_index += 1;
    }
}

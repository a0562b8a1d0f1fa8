//! Base-3 repunits and the prime-index cyclotomic values `Phi_s(3^{s^j})`.
//!
//! `Phi_s(3^r)` with `r = s^j` is written `1 0..0 1 0..0 1` in base 3 with
//! `s` ones spaced `r` apart, so it has exactly `r(s - 1) + 1` trits. The
//! inverse search in [`find_cantor_form`] only looks at pairs matching the
//! trit count of `p`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{Pow, Zero};
use serde::Serialize;

use crate::arith::is_prime_u64;
use crate::error::{CantorError, Result};
use crate::primality::{is_probably_prime, mod4};

pub const DEFAULT_TRIT_BUDGET: u64 = 300_000;

/// Upper bound on `(s - 1) * s^j`, the trit length of a constructed value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TritBudget(pub u64);

impl Default for TritBudget {
    fn default() -> Self {
        TritBudget(DEFAULT_TRIT_BUDGET)
    }
}

impl TritBudget {
    pub fn check(&self, s: u64, j: u32) -> Result<u64> {
        let exceeded = |needed: String| CantorError::BudgetExceeded { needed, budget: self.0 };
        let needed = s
            .checked_pow(j)
            .and_then(|r| r.checked_mul(s.saturating_sub(1)))
            .ok_or_else(|| exceeded(format!("({s}-1)*{s}^{j}")))?;
        if needed > self.0 {
            return Err(exceeded(needed.to_string()));
        }
        Ok(needed)
    }
}

/// The index pair `(s, j)` of a form `Phi_s(3^{s^j})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FormIndex {
    pub s: u64,
    pub j: u32,
}

impl FormIndex {
    pub fn new(s: u64, j: u32) -> Self {
        FormIndex { s, j }
    }

    /// `r = s^j`, if it fits.
    pub fn stride(&self) -> Option<u64> {
        self.s.checked_pow(self.j)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclotomicForm {
    pub s: u64,
    pub j: u32,
    #[serde(with = "crate::decimal")]
    pub value: BigUint,
    pub residue_mod4: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepunitFactorization {
    pub r: u64,
    pub s: u64,
    #[serde(with = "crate::decimal")]
    pub r_r: BigUint,
    #[serde(with = "crate::decimal")]
    pub cofactor: BigUint,
    #[serde(with = "crate::decimal")]
    pub r_q: BigUint,
}

fn pow3(e: u64) -> Result<BigUint> {
    let e = u32::try_from(e).map_err(|_| CantorError::BadArgument(format!("exponent {e} too large")))?;
    Ok(BigUint::from(3u32).pow(e))
}

/// `R_q = (3^q - 1) / 2`.
pub fn repunit3(q: u64) -> Result<BigUint> {
    if q == 0 {
        return Err(CantorError::BadArgument("repunit length must be at least 1".into()));
    }
    Ok((pow3(q)? - 1u32) >> 1)
}

/// `R_{rs} = R_r * (3^{(s-1)r} + ... + 3^r + 1)`, with the product checked.
pub fn repunit_split(r: u64, s: u64) -> Result<RepunitFactorization> {
    if r == 0 || s == 0 {
        return Err(CantorError::BadArgument("r and s must be at least 1".into()));
    }
    let q = r
        .checked_mul(s)
        .ok_or_else(|| CantorError::BadArgument(format!("r*s overflows for ({r}, {s})")))?;
    let r_r = repunit3(r)?;
    let r_q = repunit3(q)?;
    let (cofactor, rem) = r_q.div_rem(&r_r);
    if !rem.is_zero() {
        return Err(CantorError::Invariant(format!("R_{r} does not divide R_{q}")));
    }
    Ok(RepunitFactorization { r, s, r_r, cofactor, r_q })
}

/// `Phi_s(y) = (y^s - 1) / (y - 1)` for prime `s`.
pub fn phi_prime_at(s: u64, y: &BigUint) -> Result<BigUint> {
    if !is_prime_u64(s) {
        return Err(CantorError::NotPrime(BigUint::from(s)));
    }
    if *y < BigUint::from(2u32) {
        return Err(CantorError::BadArgument("evaluation point must be at least 2".into()));
    }
    let s = u32::try_from(s).map_err(|_| CantorError::BadArgument(format!("index {s} too large")))?;
    Ok((y.pow(s) - 1u32) / (y - 1u32))
}

fn require_odd_prime(s: u64) -> Result<()> {
    if !is_prime_u64(s) {
        return Err(CantorError::NotPrime(BigUint::from(s)));
    }
    if s == 2 {
        return Err(CantorError::BadArgument("s must be an odd prime".into()));
    }
    Ok(())
}

/// Builds `Phi_s(3^{s^j})` as `(3^{rs} - 1) / (3^r - 1)` with `r = s^j`.
pub fn cantor_form_value(s: u64, j: u32, budget: TritBudget) -> Result<CyclotomicForm> {
    require_odd_prime(s)?;
    budget.check(s, j)?;
    let r = s.pow(j);
    let value = (pow3(r * s)? - 1u32) / (pow3(r)? - 1u32);
    let residue_mod4 = mod4(&value);
    Ok(CyclotomicForm { s, j, value, residue_mod4 })
}

/// `Phi_s(3^{s^j}) mod 4` without building the value. Defined for any `s >= 1`.
///
/// `3^e mod 4` only depends on the parity of `e`, and `y^2 = 1 (mod 4)` for
/// odd `y`, so the `s` terms pair up.
pub fn residue_mod4(s: u64, j: u32) -> u8 {
    // parity of s^j
    let exponent_odd = j == 0 || s % 2 == 1;
    let y: u64 = if exponent_odd { 3 } else { 1 };
    let even_terms = s.div_ceil(2) % 4; // y^0, y^2, ...
    let odd_terms = (s / 2) % 4; // y^1, y^3, ...
    ((even_terms + odd_terms * y) % 4) as u8
}

/// Number of base-3 digits of `n > 0`.
pub fn trit_count(n: &BigUint) -> u64 {
    n.to_radix_le(3).len() as u64
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `Some(j)` when `r = s^j`.
fn exact_log(r: u64, s: u64) -> Option<u32> {
    let mut j = 0;
    let mut acc = 1u64;
    while acc < r {
        acc = acc.checked_mul(s)?;
        j += 1;
    }
    (acc == r).then_some(j)
}

/// All `(s, j)` with odd prime `s` whose form has exactly `trits` base-3 digits.
pub fn forms_with_trit_count(trits: u64) -> Vec<FormIndex> {
    if trits < 3 {
        return Vec::new();
    }
    let span = trits - 1;
    divisors(span)
        .into_iter()
        .map(|d| d + 1)
        .filter(|&s| s > 2 && is_prime_u64(s))
        .filter_map(|s| exact_log(span / (s - 1), s).map(|j| FormIndex::new(s, j)))
        .collect()
}

/// The `(s, j)` with `Phi_s(3^{s^j}) = p`, if any.
pub fn find_cantor_form(p: &BigUint) -> Result<Option<FormIndex>> {
    if *p <= BigUint::from(3u32) {
        return Err(CantorError::BadArgument("p must exceed 3".into()));
    }
    if !is_probably_prime(p) {
        return Err(CantorError::NotPrime(p.clone()));
    }
    let trits = trit_count(p);
    for index in forms_with_trit_count(trits) {
        let r = index.stride().expect("stride is bounded by the trit count");
        let value = (pow3(r * index.s)? - 1u32) / (pow3(r)? - 1u32);
        if value == *p {
            return Ok(Some(index));
        }
    }
    Ok(None)
}

/// A prime `p > 3` of the form `Phi_s(3^{s^j})` with `p = 1 (mod 4)`.
pub fn is_cantor_by_cyclotomic_form(p: &BigUint) -> Result<bool> {
    Ok(find_cantor_form(p)?.is_some() && mod4(p) == 1)
}

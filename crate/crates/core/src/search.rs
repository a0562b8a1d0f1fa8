//! Bounded searches over prime-valued forms: `Phi_s(3)` across prime `s`,
//! and the deep forms `Phi_s(3^{s^j})` for fixed `s`.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::is_prime_u64;
use crate::cyclotomic::{cantor_form_value, repunit3, TritBudget};
use crate::error::{CantorError, Result};
use crate::primality::{is_prime_with, mod4, primes_up_to, trial_divisor_in, PrimalityConfig, PrimalityStatus};

/// Exponents `s` with `Phi_s(3)` prime as published, starting at 7.
const KNOWN_POSITIVE_EXPONENTS: [u64; 17] = [
    7, 13, 71, 103, 541, 1091, 1367, 1627, 4177, 9011, 9551, 36913, 43063, 49681, 57917, 483611, 877843,
];

pub const DEFAULT_PREFILTER_BOUND: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub primality: PrimalityConfig,
    pub trit_budget: TritBudget,
    /// Trial-division bound applied to deep forms (`j >= 1`).
    pub prefilter_bound: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            primality: PrimalityConfig::default(),
            trit_budget: TritBudget::default(),
            prefilter_bound: DEFAULT_PREFILTER_BOUND,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchRecord {
    pub s: u64,
    pub j: u32,
    /// Number of base-3 digits of the probed value.
    pub digits3: u64,
    pub verdict: PrimalityStatus,
    pub value_mod4: u8,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SearchRecord {
    pub fn is_positive(&self) -> bool {
        self.verdict.is_positive()
    }

    pub fn elapsed_ms(&self) -> u128 {
        self.elapsed.as_millis()
    }
}

pub fn known_positive_exponents() -> Vec<u64> {
    KNOWN_POSITIVE_EXPONENTS.to_vec()
}

fn probe_repunit(s: u64, config: &SearchConfig) -> Result<SearchRecord> {
    let start = Instant::now();
    let value = repunit3(s)?;
    let verdict = is_prime_with(&value, &config.primality).status;
    Ok(SearchRecord { s, j: 0, digits3: s, verdict, value_mod4: mod4(&value), elapsed: start.elapsed() })
}

/// One record per prime `s <= max_s`, probing `Phi_s(3) = (3^s - 1)/2`.
/// Candidates run in parallel; output is ascending in `s`.
pub fn search_repunit_prime_exponents(max_s: u64, config: &SearchConfig) -> Vec<SearchRecord> {
    let exponents = primes_up_to(max_s);
    // largest operands first so the pool stays busy
    let mut records: Vec<SearchRecord> = exponents
        .par_iter()
        .rev()
        .map(|&s| probe_repunit(s, config).expect("prime exponents are at least 2"))
        .collect();
    records.sort_by_key(|r| r.s);
    records
}

/// Sequential, ascending variant of [`search_repunit_prime_exponents`] that
/// hands each record to `emit` as soon as it is decided. Restart a long run
/// by passing the last emitted `s` plus one as `min_s`.
pub fn stream_repunit_prime_exponents<F>(min_s: u64, max_s: u64, config: &SearchConfig, mut emit: F)
where
    F: FnMut(&SearchRecord),
{
    for s in primes_up_to(max_s).into_iter().filter(|&s| s >= min_s) {
        let record = probe_repunit(s, config).expect("prime exponents are at least 2");
        emit(&record);
    }
}

fn deep_verdict(value: &BigUint, j: u32, table: &[u64], config: &SearchConfig) -> PrimalityStatus {
    if j >= 1 && value.to_u64().is_none() {
        if let Some(d) = trial_divisor_in(value, table) {
            return PrimalityStatus::Composite { witness: Some(BigUint::from(d)) };
        }
    }
    is_prime_with(value, &config.primality).status
}

/// Verdicts on `Phi_s(3^{s^j})` for `0 <= j <= max_j`, ascending in `j`.
pub fn search_deep_forms(s: u64, max_j: u32, config: &SearchConfig) -> Result<Vec<SearchRecord>> {
    if !is_prime_u64(s) {
        return Err(CantorError::NotPrime(BigUint::from(s)));
    }
    if s == 2 {
        return Err(CantorError::BadArgument("s must be an odd prime".into()));
    }
    config.trit_budget.check(s, max_j)?;
    let table = primes_up_to(config.prefilter_bound.saturating_sub(1));
    let mut records: Vec<SearchRecord> = (0..=max_j)
        .into_par_iter()
        .map(|j| {
            let start = Instant::now();
            let form = cantor_form_value(s, j, config.trit_budget)?;
            let verdict = deep_verdict(&form.value, j, &table, config);
            Ok(SearchRecord {
                s,
                j,
                digits3: (s - 1) * s.pow(j) + 1,
                verdict,
                value_mod4: form.residue_mod4,
                elapsed: start.elapsed(),
            })
        })
        .collect::<Result<_>>()?;
    records.sort_by_key(|r| r.j);
    Ok(records)
}

//! Runs all three characterizations side by side and turns any mismatch into
//! a hard error.

use std::str::FromStr;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::is_prime_u64;
use crate::cyclotomic::{find_cantor_form, is_cantor_by_cyclotomic_form, FormIndex};
use crate::error::{CantorError, DisagreementDump, Result};
use crate::exp_char::{extract_k, is_cantor_by_exponential_equation, multiplicative_order_of_3};
use crate::primality::primes_up_to;
use crate::ternary_oracle::{exclusion_stage, is_reciprocal_in_cantor_set, ExclusionStage, ExclusionVerdict};

const DUMP_DIGITS: usize = 64;
const DUMP_MAX_PERIOD: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CantorCertificate {
    #[serde(with = "crate::decimal::u64_str")]
    pub p: u64,
    pub is_cantor: bool,
    pub small_special: bool,
    pub q: Option<u64>,
    #[serde(rename = "K", with = "crate::decimal::option")]
    pub k: Option<BigUint>,
    pub offsets: Option<Vec<u64>>,
    #[serde(serialize_with = "form_as_pair")]
    pub form: Option<FormIndex>,
    pub exclusion: Option<ExclusionVerdict>,
    pub agreement: bool,
}

fn form_as_pair<S: serde::Serializer>(form: &Option<FormIndex>, ser: S) -> std::result::Result<S::Ok, S::Error> {
    match form {
        Some(f) => ser.collect_seq([f.s, f.j as u64]),
        None => ser.serialize_none(),
    }
}

impl CantorCertificate {
    fn trivial(p: u64, is_cantor: bool) -> Self {
        CantorCertificate {
            p,
            is_cantor,
            small_special: p == 3,
            q: None,
            k: None,
            offsets: None,
            form: None,
            exclusion: None,
            agreement: true,
        }
    }
}

fn leading_digits(p: u64, count: usize) -> Vec<u8> {
    let mut r = 1u128;
    let mut digits = Vec::with_capacity(count);
    for _ in 0..count {
        let scaled = 3 * r;
        digits.push((scaled / p as u128) as u8);
        r = scaled % p as u128;
        if r == 1 {
            break;
        }
    }
    digits
}

fn disagreement(p: u64, digit_oracle: bool, exponential: bool, cyclotomic: bool) -> CantorError {
    let q = multiplicative_order_of_3(p).ok();
    let k = q.filter(|&q| q <= DUMP_MAX_PERIOD).and_then(|_| extract_k(p).ok()).map(|w| w.k);
    let form = find_cantor_form(&BigUint::from(p)).ok().flatten().map(|f| (f.s, f.j));
    CantorError::Disagreement(Box::new(DisagreementDump {
        p,
        digit_oracle,
        exponential,
        cyclotomic,
        digits: leading_digits(p, DUMP_DIGITS),
        q,
        k,
        form,
    }))
}

/// Certificate for one prime. `p = 3` is marked `small_special` and `p = 2`
/// certifies as non-Cantor; neither carries witnesses.
pub fn certify(p: u64) -> Result<CantorCertificate> {
    if !is_prime_u64(p) {
        return Err(CantorError::NotPrime(BigUint::from(p)));
    }
    if p <= 3 {
        return Ok(CantorCertificate::trivial(p, is_reciprocal_in_cantor_set(p)?));
    }

    let oracle = is_reciprocal_in_cantor_set(p)?;
    let exclusion = exclusion_stage(p)?;
    let exponential = is_cantor_by_exponential_equation(p)?;
    let cyclotomic = is_cantor_by_cyclotomic_form(&BigUint::from(p))?;
    let staged = exclusion.stage == ExclusionStage::Passes;
    if oracle != exponential || oracle != cyclotomic || oracle != staged {
        return Err(disagreement(p, oracle, exponential, cyclotomic));
    }
    let q = multiplicative_order_of_3(p)?;

    if !oracle {
        return Ok(CantorCertificate {
            p,
            is_cantor: false,
            small_special: false,
            q: Some(q),
            k: None,
            offsets: None,
            form: None,
            exclusion: Some(exclusion),
            agreement: true,
        });
    }

    let witness = extract_k(p)?;
    let form = find_cantor_form(&BigUint::from(p))?;
    if witness.q != q || !witness.satisfied || form.is_none() {
        return Err(disagreement(p, oracle, witness.satisfied, form.is_some()));
    }
    // one offset per 2-digit in the repetend
    if witness.offsets.len() != exclusion.witness_exponents.len()
        || exclusion.witness_exponents.iter().sum::<u64>() != q
    {
        return Err(CantorError::Invariant(format!(
            "p = {p}: offsets {:?} do not match digit gaps {:?}",
            witness.offsets, exclusion.witness_exponents
        )));
    }
    Ok(CantorCertificate {
        p,
        is_cantor: true,
        small_special: false,
        q: Some(q),
        k: Some(witness.k),
        offsets: Some(witness.offsets),
        form,
        exclusion: Some(exclusion),
        agreement: true,
    })
}

/// Certificates for every Cantor prime `<= limit`, ascending.
pub fn enumerate_cantor_primes(limit: u64) -> Result<Vec<CantorCertificate>> {
    let primes = primes_up_to(limit);
    let mut found: Vec<CantorCertificate> = primes
        .par_iter()
        .map(|&p| certify(p))
        .filter(|c| c.as_ref().map_or(true, |c| c.is_cantor))
        .collect::<Result<_>>()?;
    found.sort_by_key(|c| c.p);
    Ok(found)
}

/// Which exclusion stages an [`exclusion_report`] keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StageFilter {
    First,
    Second,
    /// Any failure at the third non-zero digit or later.
    Later,
    /// Failure at exactly this non-zero digit.
    Exact(u32),
    Passes,
}

impl StageFilter {
    pub fn matches(&self, stage: ExclusionStage) -> bool {
        match (self, stage.failing_index()) {
            (StageFilter::Passes, None) => true,
            (StageFilter::First, Some(1)) | (StageFilter::Second, Some(2)) => true,
            (StageFilter::Later, Some(n)) => n >= 3,
            (StageFilter::Exact(want), Some(n)) => *want == n,
            _ => false,
        }
    }
}

impl FromStr for StageFilter {
    type Err = CantorError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "1" => Ok(StageFilter::First),
            "2" => Ok(StageFilter::Second),
            "n" | "N" => Ok(StageFilter::Later),
            "passes" | "pass" => Ok(StageFilter::Passes),
            other => match other.parse::<u32>() {
                Ok(n) if n >= 3 => Ok(StageFilter::Exact(n)),
                _ => Err(CantorError::BadArgument(format!("unknown stage '{other}' (expected 1, 2, n, passes or an integer >= 3)"))),
            },
        }
    }
}

/// Primes `5 <= p <= limit` whose staged exclusion matches `filter`, ascending.
pub fn exclusion_report(limit: u64, filter: StageFilter) -> Result<Vec<u64>> {
    let primes: Vec<u64> = primes_up_to(limit).into_iter().filter(|&p| p > 3).collect();
    let stages: Vec<ExclusionVerdict> = primes.par_iter().map(|&p| exclusion_stage(p)).collect::<Result<_>>()?;
    Ok(stages.into_iter().filter(|v| filter.matches(v.stage)).map(|v| v.p).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certify_757() {
        let c = certify(757).unwrap();
        assert!(c.is_cantor && c.agreement && !c.small_special);
        assert_eq!(c.q, Some(9));
        assert_eq!(c.k, Some(BigUint::from(13u32)));
        assert_eq!(c.form, Some(FormIndex::new(3, 1)));
        assert_eq!(c.offsets, Some(vec![2, 1, 0]));
    }

    #[test]
    fn certify_1093() {
        let c = certify(1093).unwrap();
        assert!(c.is_cantor);
        assert_eq!(c.q, Some(7));
        assert_eq!(c.k, Some(BigUint::from(1u32)));
        assert_eq!(c.form, Some(FormIndex::new(7, 0)));
    }

    #[test]
    fn certify_991() {
        let c = certify(991).unwrap();
        assert!(!c.is_cantor);
        assert_eq!(c.exclusion.unwrap().stage, ExclusionStage::FailsSecondDigit);
    }

    #[test]
    fn certify_small_and_bad() {
        let c = certify(3).unwrap();
        assert!(c.is_cantor && c.small_special);
        let c = certify(2).unwrap();
        assert!(!c.is_cantor && !c.small_special);
        assert_eq!(certify(756), Err(CantorError::NotPrime(BigUint::from(756u32))));
    }

    #[test]
    fn small_enumerations() {
        let ps = |limit| enumerate_cantor_primes(limit).unwrap().into_iter().map(|c| c.p).collect::<Vec<_>>();
        assert_eq!(ps(12), vec![3]);
        assert!(ps(2).is_empty());
        assert_eq!(ps(2000), vec![3, 13, 757, 1093]);
    }

    #[test]
    fn exclusion_lists() {
        assert_eq!(exclusion_report(50, StageFilter::First).unwrap(), vec![5, 7, 17, 19, 23, 41, 43, 47]);
        // frozen from an independent rational-interval computation
        let second = exclusion_report(1009, StageFilter::Second).unwrap();
        assert_eq!(
            second,
            vec![
                11, 31, 37, 97, 101, 103, 113, 277, 281, 283, 293, 307, 311, 331, 337, 353, 821, 823, 827, 829,
                839, 853, 857, 859, 863, 877, 881, 883, 887, 907, 911, 919, 929, 937, 991, 997, 1009
            ]
        );
        for p in [37, 113, 331, 337, 353, 991, 997, 1009] {
            assert!(second.contains(&p));
        }
        assert!(exclusion_report(4, StageFilter::First).unwrap().is_empty());
        assert!(exclusion_report(4, StageFilter::Later).unwrap().is_empty());
        assert_eq!(exclusion_report(2000, StageFilter::Passes).unwrap(), vec![13, 757, 1093]);
    }

    #[test]
    fn stage_filters_parse() {
        assert_eq!("1".parse::<StageFilter>(), Ok(StageFilter::First));
        assert_eq!("n".parse::<StageFilter>(), Ok(StageFilter::Later));
        assert_eq!("4".parse::<StageFilter>(), Ok(StageFilter::Exact(4)));
        assert!("0".parse::<StageFilter>().is_err());
        assert!(StageFilter::Later.matches(ExclusionStage::FailsAtDigit(5)));
        assert!(!StageFilter::Later.matches(ExclusionStage::FailsSecondDigit));
    }
}

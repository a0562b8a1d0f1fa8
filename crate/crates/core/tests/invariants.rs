//! Whole-range sweeps of the cross-module invariants.

use cantor_core::*;
use num_bigint::BigUint;
use num_traits::{One, Pow};

fn odd_primes_below(limit: u64) -> Vec<u64> {
    primes_up_to(limit - 1).into_iter().filter(|&p| p > 3).collect()
}

#[test]
fn period_is_order_and_block_reconstructs() {
    for p in odd_primes_below(100_000) {
        let t = ternary_digits_of_reciprocal(p).unwrap();
        let q = multiplicative_order_of_3(p).unwrap();
        assert_eq!(t.period, q, "p = {p}");
        assert_eq!(t.digits.len() as u64, t.period);
        assert!(t.digits.iter().all(|&d| d < 3));
        if p < 20_000 {
            let lhs = t.block_value() * p;
            assert_eq!(lhs, BigUint::from(3u32).pow(q as u32) - 1u32, "p = {p}");
        }
    }
}

/// Positions (1-based) of the non-zero digits of `1/p`, read off the repetend.
fn nonzero_positions(digits: &[u8]) -> Vec<(usize, u8)> {
    digits.iter().enumerate().filter(|(_, &d)| d != 0).map(|(i, &d)| (i + 1, d)).collect()
}

#[test]
fn interval_chain_tracks_digits() {
    for p in odd_primes_below(100_000) {
        let v = exclusion_stage(p).unwrap();
        let digits = ternary_digits_of_reciprocal(p).unwrap().digits;
        let nz = nonzero_positions(&digits);
        let first_one = nz.iter().position(|&(_, d)| d == 1);
        match (v.stage.failing_index(), first_one) {
            (None, None) => {}
            (Some(n), Some(i)) => assert_eq!(n as usize, i + 1, "p = {p}"),
            other => panic!("p = {p}: stage/digit mismatch {other:?}"),
        }
        // witnesses are the gaps between consecutive 2-digits
        let mut last = 0usize;
        for (k, &(pos, d)) in v.witness_exponents.iter().zip(&nz) {
            assert_eq!(d, 2);
            assert_eq!(*k as usize, pos - last, "p = {p}");
            last = pos;
        }
        assert_eq!(
            v.stage == ExclusionStage::Passes,
            is_reciprocal_in_cantor_set(p).unwrap(),
            "p = {p}"
        );
    }
}

#[test]
fn exponential_equation_is_exact() {
    for p in odd_primes_below(100_000) {
        let w = extract_k(p).unwrap();
        let lhs = BigUint::from(2 * p) * &w.k + BigUint::one();
        assert_eq!(lhs, BigUint::from(3u32).pow(w.q as u32), "p = {p}");
        assert_eq!(w.satisfied, is_cantor_by_exponential_equation(p).unwrap(), "p = {p}");
        if w.satisfied {
            assert!(w.offsets.windows(2).all(|d| d[0] > d[1]));
            assert_eq!(w.offsets.last(), Some(&0));
            let rebuilt: BigUint = w.offsets.iter().map(|&d| BigUint::from(3u32).pow(d as u32)).sum();
            assert_eq!(rebuilt, w.k);
            let twos = ternary_digits_of_reciprocal(p).unwrap().digits.iter().filter(|&&d| d == 2).count();
            assert_eq!(w.offsets.len(), twos);
        } else {
            assert!(w.offsets.is_empty());
        }
    }
}

#[test]
fn primality_agrees_with_sieve() {
    let limit = 1_000_000u64;
    let primes = primes_up_to(limit);
    let mut next = primes.iter().peekable();
    for n in 0..=limit {
        let expected = next.peek().is_some_and(|&&p| p == n);
        if expected {
            next.next();
        }
        let v = is_prime(&BigUint::from(n));
        assert!(!matches!(v.status, PrimalityStatus::ProbablePrime { .. }));
        assert_eq!(v.status.is_positive(), expected, "n = {n}");
    }
}

#[test]
fn composites_carry_a_real_divisor() {
    for n in [4u64, 9841, 121, 1_000_001, 999_999_999_989 * 3] {
        let PrimalityStatus::Composite { witness: Some(w) } = is_prime(&BigUint::from(n)).status else {
            panic!("{n} should be composite with a witness");
        };
        assert!(w > BigUint::one() && w < BigUint::from(n));
        assert_eq!(BigUint::from(n) % w, BigUint::from(0u32));
    }
}

#[test]
fn form_round_trip() {
    let budget = TritBudget::default();
    for s in [3u64, 5, 7, 11, 13] {
        let mut j = 0;
        while (s - 1) * s.pow(j) <= 60 {
            let form = cantor_form_value(s, j, budget).unwrap();
            if is_prime(&form.value).status.is_positive() {
                assert_eq!(find_cantor_form(&form.value), Ok(Some(FormIndex::new(s, j))), "({s}, {j})");
                assert_eq!(is_cantor_by_cyclotomic_form(&form.value), Ok(true));
            }
            j += 1;
        }
    }
}

#[test]
fn consistency_of_residues_within_budget() {
    let budget = TritBudget(20_000);
    for s in primes_up_to(97).into_iter().skip(1) {
        for j in 0..=6u32 {
            if let Ok(form) = cantor_form_value(s, j, budget) {
                assert_eq!(form.residue_mod4, residue_mod4(s, j), "({s}, {j})");
                assert_eq!(form.value.clone() % 4u32, BigUint::from(residue_mod4(s, j)));
            }
        }
    }
}

#[test]
fn big_cantor_form_is_recognized() {
    let v = cantor_form_value(71, 0, TritBudget::default()).unwrap().value;
    assert_eq!(find_cantor_form(&v), Ok(Some(FormIndex::new(71, 0))));
    assert_eq!(is_cantor_by_cyclotomic_form(&v), Ok(true));
}

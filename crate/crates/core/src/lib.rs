//! Cantor primes: primes `p` whose reciprocal lies in the middle-third Cantor
//! set, i.e. `1/p` has a base-3 expansion using only the digits 0 and 2.
//!
//! Three independent tests decide the property for a prime `p > 3`:
//!
//! - [`ternary_oracle`] expands `1/p` in base 3 and looks for a digit 1;
//! - [`exp_char`] checks that `K` in `2pK + 1 = 3^q`, `q = ord_p(3)`, is a
//!   sum of distinct powers of 3;
//! - [`cyclotomic`] checks that `p = Phi_s(3^{s^j})` for an odd prime `s`
//!   and `p = 1 (mod 4)`.
//!
//! [`enumeration`] runs all three and refuses to continue if they disagree.
//! [`search`] probes prime-valued forms at sizes far beyond the enumeration
//! range, and [`oeis_io`] compares results against OEIS b-files.

pub mod arith;
pub mod cyclotomic;
mod decimal;
pub mod enumeration;
pub mod error;
pub mod exp_char;
pub mod oeis_io;
pub mod primality;
pub mod search;
pub mod ternary_oracle;

pub use cyclotomic::{
    cantor_form_value, find_cantor_form, is_cantor_by_cyclotomic_form, phi_prime_at, repunit3, repunit_split,
    residue_mod4, CyclotomicForm, FormIndex, RepunitFactorization, TritBudget,
};
pub use enumeration::{certify, enumerate_cantor_primes, exclusion_report, CantorCertificate, StageFilter};
pub use error::{CantorError, DisagreementDump, Result};
pub use exp_char::{
    extract_k, is_cantor_by_exponential_equation, is_zero_one_ternary, multiplicative_order_of_3,
    ExponentialWitness,
};
pub use oeis_io::{cross_check, parse_bfile, serialize_bfile, CrossCheckReport, SequenceEntry};
pub use primality::{is_prime, is_prime_with, primes_up_to, PrimalityConfig, PrimalityStatus, PrimalityVerdict};
pub use search::{
    known_positive_exponents, search_deep_forms, search_repunit_prime_exponents, stream_repunit_prime_exponents,
    SearchConfig, SearchRecord,
};
pub use ternary_oracle::{
    exclusion_stage, is_reciprocal_in_cantor_set, power_of_3_in_open_interval, ternary_digits_of_reciprocal,
    ExclusionStage, ExclusionVerdict, TernaryPeriod,
};

//! Serde helpers emitting big naturals as decimal strings.

use num_bigint::BigUint;
use serde::Serializer;

pub fn serialize<S: Serializer>(n: &BigUint, ser: S) -> Result<S::Ok, S::Error> {
    ser.collect_str(n)
}

pub mod option {
    use super::*;

    pub fn serialize<S: Serializer>(n: &Option<BigUint>, ser: S) -> Result<S::Ok, S::Error> {
        match n {
            Some(n) => ser.collect_str(n),
            None => ser.serialize_none(),
        }
    }
}

pub mod u64_str {
    use serde::Serializer;

    pub fn serialize<S: Serializer>(n: &u64, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(n)
    }
}

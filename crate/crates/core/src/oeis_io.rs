//! OEIS b-file reading and comparison against computed sequences.
//!
//! A b-file is plain text: `#` comment lines, blank lines, and data lines of
//! the form `index value`. Indices may be zero or negative but must increase.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{CantorError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceEntry {
    pub index: i64,
    #[serde(with = "crate::decimal")]
    pub value: BigUint,
}

impl SequenceEntry {
    pub fn new(index: i64, value: impl Into<BigUint>) -> Self {
        SequenceEntry { index, value: value.into() }
    }
}

fn parse_natural(token: &str) -> Option<BigUint> {
    let digits = token.strip_prefix('+').unwrap_or(token);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigUint::parse_bytes(digits.as_bytes(), 10)
}

pub fn parse_bfile(text: &str) -> Result<Vec<SequenceEntry>> {
    let mut entries: Vec<SequenceEntry> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_number = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let (Some(index), Some(value), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(CantorError::MalformedLine(line_number));
        };
        let index: i64 = index.parse().map_err(|_| CantorError::MalformedLine(line_number))?;
        let value = parse_natural(value).ok_or(CantorError::MalformedLine(line_number))?;
        if entries.last().is_some_and(|prev| prev.index >= index) {
            return Err(CantorError::NonMonotonicIndex(line_number));
        }
        entries.push(SequenceEntry { index, value });
    }
    Ok(entries)
}

pub fn serialize_bfile(entries: &[SequenceEntry]) -> String {
    let mut out = String::new();
    for e in entries {
        writeln!(out, "{} {}", e.index, e.value).expect("writing to a String");
    }
    out
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    #[serde(serialize_with = "decimal_seq")]
    pub only_expected: Vec<BigUint>,
    #[serde(serialize_with = "decimal_seq")]
    pub only_computed: Vec<BigUint>,
}

fn decimal_seq<S: serde::Serializer>(values: &[BigUint], ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.collect_seq(values.iter().map(|v| v.to_string()))
}

impl CrossCheckReport {
    pub fn is_agreement(&self) -> bool {
        self.only_expected.is_empty() && self.only_computed.is_empty()
    }
}

/// Values `<= range_cap` present on exactly one side, each side ascending.
pub fn cross_check(expected: &[SequenceEntry], computed: &[BigUint], range_cap: &BigUint) -> CrossCheckReport {
    let left: BTreeSet<&BigUint> = expected.iter().map(|e| &e.value).filter(|v| *v <= range_cap).collect();
    let right: BTreeSet<&BigUint> = computed.iter().filter(|v| *v <= range_cap).collect();
    CrossCheckReport {
        only_expected: left.difference(&right).map(|v| (*v).clone()).collect(),
        only_computed: right.difference(&left).map(|v| (*v).clone()).collect(),
    }
}

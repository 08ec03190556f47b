//! Bounded exhaustive search for `A^x + B^y = C^z` with `x, y, z >= 3`.
//!
//! All powers `base^exp` with `1 <= base <= N` and `3 <= exp <= K` go into a
//! hash table keyed by value. Every unordered pair of table entries is then
//! summed and the sum looked up in the same table.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bealcore::{self, BealError, IntValue};

pub const MIN_EXPONENT: u32 = 3;
/// Refuse to build tables with more entries than this.
pub const MAX_TABLE_ENTRIES: u64 = 10_000_000;
/// Refuse tables whose values would need more than this many bits in total.
pub const MAX_TABLE_BITS: u64 = 1 << 33;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("max base must be at least 1")]
    BaseTooSmall,
    #[error("max exponent must be at least {MIN_EXPONENT}")]
    ExponentTooSmall,
    #[error("power table would hold {entries} entries (limit {MAX_TABLE_ENTRIES})")]
    TableTooLarge { entries: u64 },
    #[error("power table values would need about {bits} bits (limit {MAX_TABLE_BITS})")]
    TableMemory { bits: u64 },
    #[error(transparent)]
    Power(#[from] BealError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    max_base: u32,
    max_exponent: u32,
}

impl SearchBounds {
    pub fn new(max_base: u32, max_exponent: u32) -> Result<SearchBounds, SearchError> {
        if max_base < 1 {
            return Err(SearchError::BaseTooSmall);
        }
        if max_exponent < MIN_EXPONENT {
            return Err(SearchError::ExponentTooSmall);
        }
        Ok(SearchBounds {
            max_base,
            max_exponent,
        })
    }

    pub fn max_base(&self) -> u32 {
        self.max_base
    }

    pub fn max_exponent(&self) -> u32 {
        self.max_exponent
    }

    pub fn table_entries(&self) -> u64 {
        self.max_base as u64 * (self.max_exponent - MIN_EXPONENT + 1) as u64
    }

    /// Upper bound on the total size of all table values, in bits.
    pub fn table_bits(&self) -> u64 {
        let base_bits = (u32::BITS - self.max_base.leading_zeros()) as u64;
        let k = self.max_exponent as u64;
        (self.max_base as u64)
            .saturating_mul(base_bits)
            .saturating_mul(k * (k + 1) / 2)
    }
}

#[derive(Debug, Clone)]
pub struct PowerTable {
    by_value: HashMap<BigUint, Vec<(u32, u32)>>,
    /// Every `(base, exp, value)`, sorted by `(base, exp)`.
    entries: Vec<(u32, u32, BigUint)>,
}

impl PowerTable {
    pub fn get(&self, value: &BigUint) -> Option<&[(u32, u32)]> {
        self.by_value.get(value).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn distinct_values(&self) -> usize {
        self.by_value.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BigUint, &[(u32, u32)])> {
        self.by_value.iter().map(|(k, v)| (k, v.as_slice()))
    }
}

pub fn build_power_table(bounds: &SearchBounds) -> Result<PowerTable, SearchError> {
    let entries_count = bounds.table_entries();
    if entries_count > MAX_TABLE_ENTRIES {
        return Err(SearchError::TableTooLarge {
            entries: entries_count,
        });
    }
    // Largest entry first, so the digit guard trips before any work is done.
    bealcore::pow_exact(&IntValue::from(bounds.max_base as u64), bounds.max_exponent)?;
    let bits = bounds.table_bits();
    if bits > MAX_TABLE_BITS {
        return Err(SearchError::TableMemory { bits });
    }

    let entries: Vec<(u32, u32, BigUint)> = (1..=bounds.max_base)
        .into_par_iter()
        .flat_map_iter(|base| {
            let b = BigUint::from(base);
            (MIN_EXPONENT..=bounds.max_exponent).map(move |exp| (base, exp, b.pow(exp)))
        })
        .collect();
    let mut by_value: HashMap<BigUint, Vec<(u32, u32)>> = HashMap::new();
    for (base, exp, value) in &entries {
        by_value
            .entry(value.clone())
            .or_default()
            .push((*base, *exp));
    }
    Ok(PowerTable { by_value, entries })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Solution {
    #[serde(rename = "A")]
    pub a: u32,
    #[serde(rename = "B")]
    pub b: u32,
    #[serde(rename = "C")]
    pub c: u32,
    pub x: u32,
    pub y: u32,
    pub z: u32,
    /// Smallest prime dividing `A`, `B` and `C`.
    pub common_prime: Option<u32>,
}

impl Solution {
    pub fn claim(&self) -> bealcore::BealClaim {
        let v = |n: u32| IntValue::from(n as u64);
        bealcore::BealClaim::new(v(self.a), v(self.b), v(self.c), self.x, self.y, self.z)
            .expect("search exponents are >= 3")
    }

    pub fn key(&self) -> (u32, u32, u32, u32, u32, u32) {
        (self.a, self.b, self.c, self.x, self.y, self.z)
    }
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{};{},{},{})",
            self.a, self.b, self.c, self.x, self.y, self.z
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    /// Every hit with `A <= B`, sorted by `(A, B, C, x, y, z)`.
    pub solutions: Vec<Solution>,
    /// Hits whose bases share no prime.
    pub violations: Vec<Solution>,
}

fn common_prime(a: u32, b: u32, c: u32) -> Option<u32> {
    let (a, b, c) = (a as u64, b as u64, c as u64);
    bealcore::common_prime_factor(&a.into(), &b.into(), &c.into())
        .map(|p| u32::try_from(p).expect("divides a u32"))
}

pub fn search_with_table(table: &PowerTable) -> SearchResult {
    let entries = &table.entries;
    let mut solutions: Vec<Solution> = (0..entries.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let (a, x, ref av) = entries[i];
            // j >= i with entries sorted by (base, exp) gives A <= B, and
            // x <= y when A == B.
            entries[i..].iter().flat_map(move |(b, y, bv)| {
                let sum = av + bv;
                table
                    .get(&sum)
                    .unwrap_or(&[])
                    .iter()
                    .map(move |&(c, z)| Solution {
                        a,
                        b: *b,
                        c,
                        x,
                        y: *y,
                        z,
                        common_prime: common_prime(a, *b, c),
                    })
                    .collect::<Vec<_>>()
            })
        })
        .collect();
    solutions.sort();
    let violations = solutions
        .iter()
        .filter(|s| s.common_prime.is_none())
        .copied()
        .collect();
    SearchResult {
        solutions,
        violations,
    }
}

pub fn search_solutions(bounds: &SearchBounds) -> Result<SearchResult, SearchError> {
    Ok(search_with_table(&build_power_table(bounds)?))
}

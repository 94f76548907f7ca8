//! Exact arithmetic core: divisor sums, the weight function `g_k`, and
//! `p_k(n)` tables built by three mutually independent methods.
//!
//! `p_k(n)` counts partitions of `n` with no part divisible by `k`; by
//! Glaisher's identity it also counts partitions where every part appears at
//! most `k - 1` times. The three construction routes are
//!
//! - [`build_table_recurrence`]: `n p_k(n) = sum_{l=1}^{n} g_k(l) p_k(n-l)`,
//! - [`build_table_series`]: exact coefficients of the truncated product
//!   `prod (1 - q^{kn}) / (1 - q^n)`,
//! - [`brute_force_count`]: plain enumeration, feasible for small `n`.
//!
//! All values are arbitrary-precision integers; nothing here ever rounds.

mod brute;
pub mod cache;
mod series;

pub use brute::{brute_force_count, CountMode, BRUTE_FORCE_LIMIT};
pub use series::build_table_series;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision nonnegative integer; the value type for all partition
/// counts and divisor sums.
pub type Nat = BigUint;

/// The modulus class of a partition table: a finite `k >= 2`, or infinity.
///
/// `Infinity` behaves as "`k > n` for every `n` in any table built", so
/// `g_inf(n) = sigma(n)` and the table holds the unrestricted partition
/// numbers `p(n)`. Keeping it a distinct variant (rather than a very large
/// finite `k`) rules out accidental drift between the two conventions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KIndex {
    Finite(usize),
    Infinity,
}

impl KIndex {
    /// A finite modulus class; rejects `k < 2`.
    pub fn finite(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidK(k.to_string()));
        }
        Ok(KIndex::Finite(k))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, KIndex::Finite(_))
    }

    /// Whether `k` divides `n`. Infinity divides nothing.
    pub fn divides(&self, n: usize) -> bool {
        match self {
            KIndex::Finite(k) => n % k == 0,
            KIndex::Infinity => false,
        }
    }
}

impl fmt::Display for KIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KIndex::Finite(k) => write!(f, "{k}"),
            KIndex::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for KIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "inf" {
            return Ok(KIndex::Infinity);
        }
        let k: usize = s.parse().map_err(|_| Error::InvalidK(s.to_string()))?;
        KIndex::finite(k)
    }
}

impl Serialize for KIndex {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            KIndex::Finite(k) => ser.serialize_u64(*k as u64),
            KIndex::Infinity => ser.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for KIndex {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let v = serde_json::Value::deserialize(de)?;
        match v {
            serde_json::Value::Number(n) => {
                let k = n.as_u64().ok_or_else(|| D::Error::custom("k must be a nonnegative integer"))?;
                KIndex::finite(k as usize).map_err(D::Error::custom)
            }
            serde_json::Value::String(s) => s.parse().map_err(D::Error::custom),
            _ => Err(D::Error::custom("k must be an integer or \"inf\"")),
        }
    }
}

/// Immutable exact table of `p_k(0..=n_max)` for one modulus class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionTable {
    k: KIndex,
    values: Vec<Nat>,
}

impl PartitionTable {
    pub(crate) fn from_parts(k: KIndex, values: Vec<Nat>) -> Self {
        debug_assert!(!values.is_empty());
        PartitionTable { k, values }
    }

    pub fn k(&self) -> KIndex {
        self.k
    }

    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }

    /// `p_k(n)`; panics if `n` is beyond the table.
    pub fn value(&self, n: usize) -> &Nat {
        &self.values[n]
    }

    pub fn values(&self) -> &[Nat] {
        &self.values
    }

    /// Range check used by the scanners.
    pub fn check_in_range(&self, what: &'static str, n: usize) -> Result<()> {
        if n > self.n_max() {
            return Err(Error::Range {
                what,
                got: n.to_string(),
                allowed: format!("0..={}", self.n_max()),
            });
        }
        Ok(())
    }
}

/// Sum of the positive divisors of `n`, by trial division up to `sqrt(n)`.
///
/// Rejects `n = 0`: the convention `sigma(x) = 0` for non-integer `x` lives
/// inside [`g_k`], not here.
pub fn sigma(n: usize) -> Result<Nat> {
    if n == 0 {
        return Err(Error::Range {
            what: "sigma argument",
            got: "0".into(),
            allowed: "n >= 1".into(),
        });
    }
    Ok(Nat::from(sigma_u128(n)))
}

fn sigma_u128(n: usize) -> u128 {
    let n = n as u128;
    let mut sum = 0u128;
    let mut d = 1u128;
    while d * d <= n {
        if n % d == 0 {
            sum += d;
            let q = n / d;
            if q != d {
                sum += q;
            }
        }
        d += 1;
    }
    sum
}

/// `g_k(n) = sigma(n) - k sigma(n/k)`, with `sigma(n/k) = 0` when `k` does
/// not divide `n`. For `k = inf` this is just `sigma(n)`.
///
/// Always strictly positive for `n >= 1`: mapping each divisor `d` of `n/k`
/// to `kd` hits distinct divisors of `n` and misses the divisor 1.
pub fn g_k(k: KIndex, n: usize) -> Result<Nat> {
    if n == 0 {
        return Err(Error::Range {
            what: "g_k argument",
            got: "0".into(),
            allowed: "n >= 1".into(),
        });
    }
    Ok(Nat::from(g_u128(k, n)))
}

fn g_u128(k: KIndex, n: usize) -> u128 {
    let s = sigma_u128(n);
    match k {
        KIndex::Finite(k) if n % k == 0 => {
            let sub = (k as u128) * sigma_u128(n / k);
            debug_assert!(s > sub, "g_k must be positive");
            s - sub
        }
        _ => s,
    }
}

/// Builds `p_k(0..=n_max)` from the weighted convolution recurrence
/// `n p_k(n) = sum_{l=1}^{n} g_k(l) p_k(n-l)`, starting at `p_k(0) = 1`.
///
/// Every division by `n` must be exact; a nonzero remainder can only come
/// from an arithmetic bug, so it panics rather than producing a bad table.
pub fn build_table_recurrence(k: KIndex, n_max: usize) -> PartitionTable {
    // g values fit u128 comfortably for any table size we can build.
    let g: Vec<u128> = (1..=n_max).map(|l| g_u128(k, l)).collect();

    let mut values: Vec<Nat> = Vec::with_capacity(n_max + 1);
    values.push(Nat::one());
    for n in 1..=n_max {
        let mut acc = Nat::zero();
        for l in 1..=n {
            acc += &values[n - l] * g[l - 1];
        }
        let (q, r) = num_integer::Integer::div_rem(&acc, &Nat::from(n));
        assert!(
            r.is_zero(),
            "recurrence division not exact at k={k}, n={n}: this is an internal arithmetic bug"
        );
        values.push(q);
    }
    PartitionTable::from_parts(k, values)
}

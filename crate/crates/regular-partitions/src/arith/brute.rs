//! Brute-force partition enumeration, the third (and dumbest) route to
//! `p_k(n)`. Also covers the Glaisher-conjugate count: partitions where each
//! part appears at most `k - 1` times.

use super::{KIndex, Nat};
use crate::error::{Error, Result};

/// Enumeration stays feasible up to here; larger `n` is rejected.
pub const BRUTE_FORCE_LIMIT: usize = 60;

/// Which restricted family to count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMode {
    /// No part divisible by `k`.
    ForbiddenMultiples,
    /// Every part appears at most `k - 1` times.
    BoundedMultiplicity,
}

/// Counts the partitions of `n` under `mode` by explicit enumeration.
/// For `k = inf` both modes count all partitions.
pub fn brute_force_count(k: KIndex, n: usize, mode: CountMode) -> Result<Nat> {
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::OracleLimit {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let count = match mode {
        CountMode::ForbiddenMultiples => count_forbidden(k, n, n),
        CountMode::BoundedMultiplicity => count_bounded(k, n, n),
    };
    Ok(Nat::from(count))
}

fn count_forbidden(k: KIndex, remaining: usize, max_part: usize) -> u64 {
    if remaining == 0 {
        return 1;
    }
    let mut total = 0;
    for part in 1..=remaining.min(max_part) {
        if k.divides(part) {
            continue;
        }
        total += count_forbidden(k, remaining - part, part);
    }
    total
}

fn count_bounded(k: KIndex, remaining: usize, part: usize) -> u64 {
    if remaining == 0 {
        return 1;
    }
    if part == 0 {
        return 0;
    }
    let mut max_mult = remaining / part;
    if let KIndex::Finite(k) = k {
        max_mult = max_mult.min(k - 1);
    }
    let mut total = 0;
    for mult in 0..=max_mult {
        total += count_bounded(k, remaining - mult * part, part - 1);
    }
    total
}

/// Convenience for tests: the brute-force count as u64.
#[cfg(test)]
pub(crate) fn brute_u64(k: KIndex, n: usize, mode: CountMode) -> u64 {
    use num_traits::ToPrimitive;
    brute_force_count(k, n, mode)
        .expect("within oracle limit")
        .to_u64()
        .expect("oracle counts fit u64")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stated_examples() {
        let k2 = KIndex::Finite(2);
        // 5+1, 3+3, 3+1+1+1, 1^6
        assert_eq!(brute_u64(k2, 6, CountMode::ForbiddenMultiples), 4);
        // 6, 5+1, 4+2, 3+2+1
        assert_eq!(brute_u64(k2, 6, CountMode::BoundedMultiplicity), 4);
        let k3 = KIndex::Finite(3);
        assert_eq!(brute_u64(k3, 0, CountMode::ForbiddenMultiples), 1);
        assert_eq!(brute_u64(k3, 0, CountMode::BoundedMultiplicity), 1);
    }

    #[test]
    fn rejects_beyond_limit() {
        let err = brute_force_count(KIndex::Infinity, BRUTE_FORCE_LIMIT + 1, CountMode::ForbiddenMultiples);
        assert!(matches!(err, Err(Error::OracleLimit { .. })));
    }

    #[test]
    fn infinity_counts_all_partitions() {
        assert_eq!(brute_u64(KIndex::Infinity, 8, CountMode::ForbiddenMultiples), 22);
        assert_eq!(brute_u64(KIndex::Infinity, 8, CountMode::BoundedMultiplicity), 22);
    }
}

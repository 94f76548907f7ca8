//! Truncated generating-function product, the second independent route to
//! `p_k(n)`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::{KIndex, PartitionTable};

/// Builds `p_k(0..=n_max)` as the coefficients of
/// `prod_{n>=1} (1 - q^{kn}) / (1 - q^n)` truncated at `q^{n_max}`,
/// by exact polynomial arithmetic.
///
/// Division by `(1 - q^n)` is the prefix recurrence `c[i] += c[i - n]`;
/// multiplication by `(1 - q^{kn})` is `c[i] -= c[i - kn]` applied from the
/// top. No divisor sums are involved, which keeps this path independent of
/// the sigma-based recurrence it cross-checks.
pub fn build_table_series(k: KIndex, n_max: usize) -> PartitionTable {
    let mut c: Vec<BigInt> = vec![BigInt::zero(); n_max + 1];
    c[0] = BigInt::one();

    for n in 1..=n_max {
        for i in n..=n_max {
            let add = c[i - n].clone();
            c[i] += add;
        }
    }
    if let KIndex::Finite(k) = k {
        let mut m = k;
        while m <= n_max {
            for i in (m..=n_max).rev() {
                let sub = c[i - m].clone();
                c[i] -= sub;
            }
            m += k;
        }
    }

    let values: Vec<BigUint> = c
        .into_iter()
        .map(|v| {
            v.to_biguint()
                .expect("series coefficients of a partition generating function are nonnegative")
        })
        .collect();
    PartitionTable::from_parts(k, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Nat;

    #[test]
    fn series_small_tables() {
        // Expected values from brute-force enumeration.
        let t2 = build_table_series(KIndex::Finite(2), 5);
        let expect: Vec<Nat> = [1u32, 1, 1, 2, 2, 3].iter().map(|&v| Nat::from(v)).collect();
        assert_eq!(t2.values(), expect);

        let t3 = build_table_series(KIndex::Finite(3), 4);
        let expect: Vec<Nat> = [1u32, 1, 2, 2, 4].iter().map(|&v| Nat::from(v)).collect();
        assert_eq!(t3.values(), expect);

        let tinf = build_table_series(KIndex::Infinity, 0);
        assert_eq!(tinf.values(), [Nat::from(1u32)]);
    }

    #[test]
    fn series_equals_recurrence() {
        for k in [KIndex::Finite(2), KIndex::Finite(7), KIndex::Infinity] {
            let a = build_table_series(k, 80);
            let b = crate::arith::build_table_recurrence(k, 80);
            assert_eq!(a, b, "series and recurrence disagree for k={k}");
        }
    }
}

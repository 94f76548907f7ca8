//! Certified verification of the explicit analytic bounds: the upper bound
//! on `g_k`, two lower bounds on `p_k`, and the sign of the final bracket
//! expression that closes the induction. Every comparison against a
//! transcendental quantity goes through [`RigorousReal`] enclosures, with
//! working precision escalated until the comparison is decided; a reported
//! pass or fail is therefore a certificate, not a float rounding accident.

pub mod interval;

pub use interval::RigorousReal;

use std::sync::atomic::{AtomicU32, Ordering};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{g_k, KIndex, PartitionTable};
use crate::bo::DeltaSign;
use crate::error::{Error, Result};

/// Enclosure evaluations start here...
pub const START_PRECISION_BITS: u32 = 128;
/// ...and double on an undecided sign until this hard cap, at which point the
/// check aborts with a precision-exhaustion error instead of looping.
pub const MAX_PRECISION_BITS: u32 = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckOutcome {
    Pass,
    Fail,
}

/// Summary of one certified scan, serialized as
/// `{check, range, result, first_failure?, max_precision_bits_used}`.
#[derive(Debug, Clone, Serialize)]
pub struct BoundsReport {
    pub check: &'static str,
    pub range: String,
    pub result: CheckOutcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<usize>,
    pub max_precision_bits_used: u32,
}

impl BoundsReport {
    pub fn passed(&self) -> bool {
        self.result == CheckOutcome::Pass
    }
}

fn rational(n: usize) -> BigRational {
    BigRational::from(BigInt::from(n))
}

/// Runs `decide` at escalating precision until it returns a verdict.
fn escalate<T>(mut decide: impl FnMut(u32) -> Result<Option<T>>) -> Result<(T, u32)> {
    let mut bits = START_PRECISION_BITS;
    loop {
        if let Some(v) = decide(bits)? {
            return Ok((v, bits));
        }
        bits *= 2;
        if bits > MAX_PRECISION_BITS {
            return Err(Error::PrecisionExhausted {
                bits: MAX_PRECISION_BITS,
            });
        }
    }
}

fn track_max(max_bits: &AtomicU32, bits: u32) {
    max_bits.fetch_max(bits, Ordering::Relaxed);
}

/// Verifies `g_k(n) <= n (1 + ln n)` for all `1 <= n <= n_max`.
///
/// A pass at `n` requires the exact integer to sit at or below a certified
/// lower bound of the right-hand side; a certified violation requires it to
/// exceed a certified upper bound. Anything in between escalates precision.
pub fn check_g_bound(k: KIndex, n_max: usize) -> Result<BoundsReport> {
    if n_max < 1 {
        return Err(Error::Range {
            what: "g bound horizon",
            got: n_max.to_string(),
            allowed: ">= 1".into(),
        });
    }
    let max_bits = AtomicU32::new(0);
    let failures: Vec<usize> = (1..=n_max)
        .into_par_iter()
        .map(|n| -> Result<Option<usize>> {
            let g = BigRational::from(BigInt::from(g_k(k, n)?));
            let (ok, bits) = escalate(|bits| {
                let rhs = RigorousReal::ln(&rational(n), bits)?
                    .add(&RigorousReal::from_int(1))
                    .scale(&rational(n));
                if &g <= rhs.lo() {
                    Ok(Some(true))
                } else if &g > rhs.hi() {
                    Ok(Some(false))
                } else {
                    Ok(None)
                }
            })?;
            track_max(&max_bits, bits);
            Ok((!ok).then_some(n))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    Ok(BoundsReport {
        check: "g_bound",
        range: format!("k={k}, n=1..={n_max}"),
        result: if failures.is_empty() { CheckOutcome::Pass } else { CheckOutcome::Fail },
        first_failure: failures.into_iter().min(),
        max_precision_bits_used: max_bits.load(Ordering::Relaxed),
    })
}

/// Which lower bound on `p_k(n)` to verify.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LowerBoundVariant {
    /// Strict: `p_k(n) > 2^(sqrt(2n/3 + 1/4) - 3/2)`, checked against a
    /// certified enclosure of the real power.
    StrictReal,
    /// Non-strict with a floored exponent:
    /// `p_k(n) >= 2^floor(sqrt(2n/3 + 1/4) - 1/2)`, checked in exact integer
    /// arithmetic only.
    FlooredExponent,
}

/// Largest `m >= 0` with `3 m (m + 1) <= 2n`, which is exactly
/// `floor(sqrt(2n/3 + 1/4) - 1/2)` for `n >= 1`.
pub(crate) fn floored_exponent(n: usize) -> usize {
    let target = 2 * n as u128;
    let mut m = ((2.0 * n as f64 / 3.0).sqrt()) as usize;
    while 3 * (m as u128) * (m as u128 + 1) > target {
        m -= 1;
    }
    while 3 * (m as u128 + 1) * (m as u128 + 2) <= target {
        m += 1;
    }
    m
}

/// Verifies the chosen lower bound for `1 <= n <= n_max` against `table`.
pub fn check_p_lower_bound(
    table: &PartitionTable,
    n_max: usize,
    variant: LowerBoundVariant,
) -> Result<BoundsReport> {
    table.check_in_range("p lower bound horizon", n_max)?;
    let max_bits = AtomicU32::new(0);
    let failures: Vec<usize> = (1..=n_max)
        .into_par_iter()
        .map(|n| -> Result<Option<usize>> {
            let p = BigRational::from(BigInt::from(table.value(n).clone()));
            let ok = match variant {
                LowerBoundVariant::FlooredExponent => {
                    let m = floored_exponent(n);
                    let bound = BigInt::one() << m;
                    BigInt::from(table.value(n).clone()) >= bound
                }
                LowerBoundVariant::StrictReal => {
                    // exponent = sqrt(2n/3 + 1/4) - 3/2
                    let arg = BigRational::new(BigInt::from(2 * n), BigInt::from(3))
                        + BigRational::new(BigInt::one(), BigInt::from(4));
                    let (ok, bits) = escalate(|bits| {
                        let exponent = RigorousReal::sqrt(&arg, bits)?
                            .add(&RigorousReal::exact(BigRational::new(
                                BigInt::from(-3),
                                BigInt::from(2),
                            )));
                        let power = exponent.exp2(bits);
                        if &p > power.hi() {
                            Ok(Some(true))
                        } else if &p <= power.lo() {
                            Ok(Some(false))
                        } else {
                            Ok(None)
                        }
                    })?;
                    track_max(&max_bits, bits);
                    ok
                }
            };
            Ok((!ok).then_some(n))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    Ok(BoundsReport {
        check: match variant {
            LowerBoundVariant::StrictReal => "p_lower_bound_strict",
            LowerBoundVariant::FlooredExponent => "p_lower_bound_floored",
        },
        range: format!("k={}, n=1..={n_max}", table.k()),
        result: if failures.is_empty() { CheckOutcome::Pass } else { CheckOutcome::Fail },
        first_failure: failures.into_iter().min(),
        max_precision_bits_used: max_bits.load(Ordering::Relaxed),
    })
}

/// Enclosure of the final bracket
/// `-48 a^2 (1 + ln 2a) + 2^(sqrt(2(a-1)/3 + 1/4) - 3/2)` at the given
/// precision.
pub fn final_expression_enclosure(a: usize, bits: u32) -> Result<RigorousReal> {
    let ln2a = RigorousReal::ln(&rational(2 * a), bits)?;
    let negative_part = ln2a
        .add(&RigorousReal::from_int(1))
        .scale(&rational(48 * a * a))
        .neg();
    let arg = BigRational::new(BigInt::from(2 * (a - 1)), BigInt::from(3))
        + BigRational::new(BigInt::one(), BigInt::from(4));
    let exponent = RigorousReal::sqrt(&arg, bits)?.add(&RigorousReal::exact(BigRational::new(
        BigInt::from(-3),
        BigInt::from(2),
    )));
    Ok(negative_part.add(&exponent.exp2(bits)))
}

/// Certified sign of the final bracket at `a` (requires `a >= 2`).
pub fn final_expression_sign(a: usize) -> Result<(DeltaSign, u32)> {
    if a < 2 {
        return Err(Error::Range {
            what: "final expression argument",
            got: a.to_string(),
            allowed: ">= 2".into(),
        });
    }
    escalate(|bits| Ok(final_expression_enclosure(a, bits)?.sign()))
}

/// Linear scan for the smallest `a >= 2` with a certified positive bracket.
pub fn smallest_positive_a(search_to: usize) -> Result<Option<usize>> {
    for a in 2..=search_to {
        if final_expression_sign(a)?.0 == DeltaSign::Positive {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// Verifies that the bracket is certified positive for every
/// `a_from <= a <= a_to` (with `a_from >= 1470`) and certified nondecreasing
/// between consecutive scan points.
pub fn final_expression_scan(a_from: usize, a_to: usize) -> Result<BoundsReport> {
    if a_from < 1470 {
        return Err(Error::Range {
            what: "final expression scan start",
            got: a_from.to_string(),
            allowed: ">= 1470".into(),
        });
    }
    if a_to < a_from {
        return Err(Error::Range {
            what: "final expression scan end",
            got: a_to.to_string(),
            allowed: format!(">= {a_from}"),
        });
    }

    let max_bits = AtomicU32::new(0);
    const CHUNK: usize = 1024;
    let starts: Vec<usize> = (a_from..=a_to).step_by(CHUNK).collect();
    let failures: Vec<usize> = starts
        .into_par_iter()
        .map(|s| -> Result<Vec<usize>> {
            let e = (s + CHUNK - 1).min(a_to);
            let mut bad = Vec::new();
            let mut prev: Option<(usize, RigorousReal)> = if s > a_from {
                Some((s - 1, final_expression_enclosure(s - 1, START_PRECISION_BITS)?))
            } else {
                None
            };
            if let Some((pa, _)) = prev {
                debug_assert_eq!(pa + 1, s);
            }
            for a in s..=e {
                let (sign_and_enc, bits) = escalate(|bits| {
                    let enc = final_expression_enclosure(a, bits)?;
                    Ok(enc.sign().map(|sg| (sg, enc)))
                })?;
                track_max(&max_bits, bits);
                let (sign, mut cur) = sign_and_enc;
                if sign != DeltaSign::Positive {
                    bad.push(a);
                }
                if let Some((pa, pv)) = prev.take() {
                    // nondecreasing: prev.hi <= cur.lo certifies it; escalate
                    // both points jointly while undecided.
                    let mut pv = pv;
                    let mut bits = START_PRECISION_BITS;
                    loop {
                        if pv.hi() <= cur.lo() {
                            break;
                        }
                        if cur.hi() < pv.lo() {
                            bad.push(a);
                            break;
                        }
                        bits *= 2;
                        if bits > MAX_PRECISION_BITS {
                            return Err(Error::PrecisionExhausted {
                                bits: MAX_PRECISION_BITS,
                            });
                        }
                        track_max(&max_bits, bits);
                        pv = final_expression_enclosure(pa, bits)?;
                        cur = final_expression_enclosure(a, bits)?;
                    }
                }
                prev = Some((a, cur));
            }
            Ok(bad)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    Ok(BoundsReport {
        check: "final_expression_scan",
        range: format!("a={a_from}..={a_to}"),
        result: if failures.is_empty() { CheckOutcome::Pass } else { CheckOutcome::Fail },
        first_failure: failures.into_iter().min(),
        max_precision_bits_used: max_bits.load(Ordering::Relaxed),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::build_table_recurrence;

    #[test]
    fn g_bound_holds_with_equality_at_one() {
        // n = 1: g = 1 and the bound is exactly 1.
        let rep = check_g_bound(KIndex::Infinity, 1).unwrap();
        assert!(rep.passed());
        let rep = check_g_bound(KIndex::Finite(2), 2000).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn p_lower_bounds_hold() {
        let t = build_table_recurrence(KIndex::Finite(2), 400);
        let rep = check_p_lower_bound(&t, 400, LowerBoundVariant::StrictReal).unwrap();
        assert!(rep.passed(), "{rep:?}");
        let rep = check_p_lower_bound(&t, 400, LowerBoundVariant::FlooredExponent).unwrap();
        assert!(rep.passed(), "{rep:?}");

        // p(1) = 1 meets the floored bound with equality (exponent 0).
        let t1 = build_table_recurrence(KIndex::Infinity, 2);
        let rep = check_p_lower_bound(&t1, 1, LowerBoundVariant::FlooredExponent).unwrap();
        assert!(rep.passed());
    }

    #[test]
    fn p2_at_100_clears_strict_bound() {
        let t = build_table_recurrence(KIndex::Finite(2), 101);
        assert_eq!(t.value(100).to_string(), "444793");
        let rep = check_p_lower_bound(&t, 100, LowerBoundVariant::StrictReal).unwrap();
        assert!(rep.passed());
    }

    #[test]
    fn floored_exponent_is_the_floor() {
        // floor(sqrt(2n/3 + 1/4) - 1/2) recomputed via certified sqrt.
        for n in 1..=500 {
            let m = floored_exponent(n);
            let arg = BigRational::new(BigInt::from(2 * n), BigInt::from(3))
                + BigRational::new(BigInt::one(), BigInt::from(4));
            let s = RigorousReal::sqrt(&arg, 128).unwrap();
            let half = BigRational::new(BigInt::one(), BigInt::from(2));
            let lo = s.lo() - &half;
            let hi = s.hi() - &half;
            assert!(BigRational::from(BigInt::from(m)) <= lo);
            assert!(hi < BigRational::from(BigInt::from(m + 1)));
        }
    }

    #[test]
    fn floored_bound_dominates_strict_bound() {
        // floor of the strict-real exponent is exactly floored_exponent - 1, so
        // the floored power of two is always the larger lower bound.
        for n in 1..=2000 {
            let m = floored_exponent(n) as u128;
            // largest j with 3 (j+1)(j+2) <= 2n is m - 1 (m >= 1 for n >= 2)
            if n >= 2 {
                assert!(3 * m * (m + 1) <= 2 * n as u128);
                assert!(3 * (m + 1) * (m + 2) > 2 * n as u128);
            }
        }
    }

    #[test]
    fn final_expression_signs() {
        let (s, _) = final_expression_sign(1470).unwrap();
        assert_eq!(s, DeltaSign::Positive);
        let (s, _) = final_expression_sign(1469).unwrap();
        assert_eq!(s, DeltaSign::Negative);
        let (s, _) = final_expression_sign(2).unwrap();
        assert_eq!(s, DeltaSign::Negative);
        assert!(final_expression_sign(1).is_err());
    }

    #[test]
    fn smallest_positive_is_1470() {
        assert_eq!(smallest_positive_a(2000).unwrap(), Some(1470));
    }

    #[test]
    fn sign_is_stable_under_doubled_precision() {
        for a in [2, 700, 1469, 1470, 5000] {
            let coarse = final_expression_enclosure(a, 128).unwrap().sign();
            let fine = final_expression_enclosure(a, 256).unwrap().sign();
            assert_eq!(coarse, fine, "a={a}");
        }
    }

    #[test]
    fn scan_validates_preconditions() {
        assert!(final_expression_scan(1469, 1500).is_err());
        assert!(final_expression_scan(1470, 1469).is_err());
        let rep = final_expression_scan(1470, 1470).unwrap();
        assert!(rep.passed());
    }

    #[test]
    fn short_scan_passes() {
        let rep = final_expression_scan(1470, 2500).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert!(rep.max_precision_bits_used <= 128);
    }
}

//! Bessenrodt–Ono classification for k-regular partition functions.
//!
//! For a pair `1 < a <= b` the quantity of interest is
//! `delta_k(a, b) = p_k(a) p_k(b) - p_k(a+b)`. The inequality `delta_k > 0`
//! holds for all but finitely many pairs (plus, for `k = 2`, one infinite
//! family); this module enumerates the exceptions, checks the explicit
//! threshold table for `2 <= k <= 6`, runs the `E_k = E_inf`, `F_k = F_inf`
//! stabilization scan for `k >= 10`, and drives the exhaustive induction
//! campaign.

mod campaign;

pub use campaign::{
    induction_campaign, CampaignKReport, CampaignOptions, CampaignReport, KClass,
    RegionFindings, VerificationParams,
};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::arith::{KIndex, PartitionTable};
use crate::error::{Error, Result};

/// A normalized pair `1 < a <= b`. Construction sorts the two entries, so
/// `delta` is symmetric by construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pair {
    a: usize,
    b: usize,
}

impl Pair {
    pub fn new(x: usize, y: usize) -> Result<Self> {
        let (a, b) = if x <= y { (x, y) } else { (y, x) };
        if a < 2 {
            return Err(Error::Range {
                what: "pair entry",
                got: a.to_string(),
                allowed: "both entries >= 2".into(),
            });
        }
        Ok(Pair { a, b })
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn sum(&self) -> usize {
        self.a + self.b
    }
}

impl std::fmt::Display for Pair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

impl Serialize for Pair {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(2))?;
        seq.serialize_element(&self.a)?;
        seq.serialize_element(&self.b)?;
        seq.end()
    }
}

/// Exact trichotomy of a delta value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DeltaSign {
    Positive,
    Zero,
    Negative,
}

/// `p_k(a) p_k(b) - p_k(a+b)` as an exact integer, with its sign.
pub fn delta(table: &PartitionTable, pair: Pair) -> Result<(BigInt, DeltaSign)> {
    table.check_in_range("pair sum", pair.sum())?;
    let prod = table.value(pair.a) * table.value(pair.b);
    let value = BigInt::from(prod) - BigInt::from(table.value(pair.sum()).clone());
    let sign = match value.sign() {
        num_bigint::Sign::Plus => DeltaSign::Positive,
        num_bigint::Sign::NoSign => DeltaSign::Zero,
        num_bigint::Sign::Minus => DeltaSign::Negative,
    };
    Ok((value, sign))
}

/// Scan-time sign evaluation over one table.
///
/// A machine-precision log pre-filter skips the exact product when the margin
/// `ln p(a) + ln p(b) - ln p(a+b)` clears [`LOG_FILTER_MARGIN`]; anything
/// closer falls through to the exact big-integer comparison, so the filter is
/// a speedup, never a correctness decision.
pub(crate) struct DeltaScanner<'t> {
    table: &'t PartitionTable,
    ln_p: Vec<f64>,
}

/// Safety margin (natural-log units) below which the exact check is mandatory.
pub(crate) const LOG_FILTER_MARGIN: f64 = 1.0;

impl<'t> DeltaScanner<'t> {
    pub fn new(table: &'t PartitionTable) -> Self {
        let ln_p = table.values().iter().map(ln_biguint).collect();
        DeltaScanner { table, ln_p }
    }

    pub fn sign(&self, a: usize, b: usize) -> DeltaSign {
        let margin = self.ln_p[a] + self.ln_p[b] - self.ln_p[a + b];
        if margin >= LOG_FILTER_MARGIN {
            return DeltaSign::Positive;
        }
        self.sign_exact(a, b)
    }

    pub fn sign_exact(&self, a: usize, b: usize) -> DeltaSign {
        let prod = self.table.value(a) * self.table.value(b);
        match prod.cmp(self.table.value(a + b)) {
            std::cmp::Ordering::Greater => DeltaSign::Positive,
            std::cmp::Ordering::Equal => DeltaSign::Zero,
            std::cmp::Ordering::Less => DeltaSign::Negative,
        }
    }
}

/// Natural log of a big integer, accurate to ~1e-11 even for huge values —
/// far inside the filter margin.
fn ln_biguint(v: &crate::arith::Nat) -> f64 {
    use num_traits::ToPrimitive;
    let bits = v.bits();
    if bits <= 53 {
        return (v.to_u64().unwrap() as f64).ln();
    }
    let shift = bits - 53;
    let top = (v >> shift).to_u64().unwrap() as f64;
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// An infinite exception family `(a0, b)` for all `b >= b_from`, certified to
/// the scan horizon. Only recorded when `p_k(a0) = 1`, in which case
/// `delta(a0, b) < 0` is literally `p_k(b) < p_k(a0 + b)`, the property the
/// growth scan verified for all `b <= verified_to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InfiniteFamily {
    pub a0: usize,
    pub b_from: usize,
    pub sign: DeltaSign,
    pub verified_to: usize,
}

/// The classified exception sets for one `k` up to a pair-sum bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExceptionReport {
    pub k: KIndex,
    pub search_bound: usize,
    /// Pairs with `delta_k = 0`, lexicographically sorted.
    pub equality_pairs: Vec<Pair>,
    /// Pairs with `delta_k < 0`, lexicographically sorted; pairs covered by a
    /// verified infinite family are reported through that family instead.
    pub reversed_pairs: Vec<Pair>,
    pub infinite_families: Vec<InfiniteFamily>,
}

impl ExceptionReport {
    /// Finite-set equality, the comparison the stabilization scan makes.
    pub fn finite_sets_equal(&self, other: &ExceptionReport) -> bool {
        self.equality_pairs == other.equality_pairs && self.reversed_pairs == other.reversed_pairs
    }

    /// Re-derives every stored claim against `table`; used to keep reports
    /// honest in tests.
    pub fn verify_against(&self, table: &PartitionTable) -> Result<()> {
        for &p in &self.equality_pairs {
            let (_, s) = delta(table, p)?;
            if s != DeltaSign::Zero {
                return Err(Error::Config(format!("stored equality pair {p} re-checks as {s:?}")));
            }
        }
        for &p in &self.reversed_pairs {
            let (_, s) = delta(table, p)?;
            if s != DeltaSign::Negative {
                return Err(Error::Config(format!("stored reversed pair {p} re-checks as {s:?}")));
            }
        }
        for fam in &self.infinite_families {
            if !table.value(fam.a0).eq(&crate::arith::Nat::from(1u32)) {
                return Err(Error::Config(format!("family a0={} has p_k(a0) != 1", fam.a0)));
            }
            for b in fam.b_from..=fam.verified_to {
                let (_, s) = delta(table, Pair::new(fam.a0, b)?)?;
                if s != fam.sign {
                    return Err(Error::Config(format!(
                        "family ({}, b>={}) fails at b={b}",
                        fam.a0, fam.b_from
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Scans all normalized pairs with `a + b <= sum_bound` and classifies the
/// exceptions.
///
/// For every `a0 >= 2` with `p_k(a0) = 1`, the scan first tries to certify
/// the infinite family `(a0, b)`: if `p_k(n + a0) > p_k(n)` for all
/// `a0 <= n <= sum_bound - a0`, the family is recorded with sign `Negative`
/// and its pairs are excluded from the finite lists.
pub fn enumerate_exceptions(table: &PartitionTable, sum_bound: usize) -> Result<ExceptionReport> {
    if sum_bound < 4 {
        return Err(Error::Range {
            what: "sum_bound",
            got: sum_bound.to_string(),
            allowed: ">= 4".into(),
        });
    }
    table.check_in_range("sum_bound", sum_bound)?;

    let one = crate::arith::Nat::from(1u32);
    let mut infinite_families = Vec::new();
    for a0 in 2..=sum_bound / 2 {
        if table.value(a0) != &one {
            continue;
        }
        let growth_holds = (a0..=sum_bound - a0).all(|n| table.value(n + a0) > table.value(n));
        if growth_holds {
            infinite_families.push(InfiniteFamily {
                a0,
                b_from: a0,
                sign: DeltaSign::Negative,
                verified_to: sum_bound - a0,
            });
        }
    }
    let family_a0s: Vec<usize> = infinite_families.iter().map(|f| f.a0).collect();

    let scanner = DeltaScanner::new(table);
    let per_a: Vec<(Vec<Pair>, Vec<Pair>)> = (2..=sum_bound / 2)
        .into_par_iter()
        .map(|a| {
            let mut eq = Vec::new();
            let mut rev = Vec::new();
            if family_a0s.contains(&a) {
                return (eq, rev);
            }
            for b in a..=sum_bound - a {
                match scanner.sign(a, b) {
                    DeltaSign::Zero => eq.push(Pair { a, b }),
                    DeltaSign::Negative => rev.push(Pair { a, b }),
                    DeltaSign::Positive => {}
                }
            }
            (eq, rev)
        })
        .collect();

    let mut equality_pairs = Vec::new();
    let mut reversed_pairs = Vec::new();
    for (eq, rev) in per_a {
        equality_pairs.extend(eq);
        reversed_pairs.extend(rev);
    }

    Ok(ExceptionReport {
        k: table.k(),
        search_bound: sum_bound,
        equality_pairs,
        reversed_pairs,
        infinite_families,
    })
}

/// Result of the explicit threshold check for one `k` in `2..=6`.
#[derive(Debug, Clone, Serialize)]
pub struct ThresholdReport {
    pub k: KIndex,
    pub n_k: usize,
    pub m_k: usize,
    pub sum_bound: usize,
    /// Pairs with `a, b >= n_k`, `m_k <= a+b <= sum_bound` and `delta <= 0`.
    pub violations: Vec<(Pair, DeltaSign)>,
}

impl ThresholdReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verifies `delta_k(a, b) > 0` for all `a, b >= n_k` with
/// `m_k <= a + b <= sum_bound`, where `(n_k, m_k)` is the threshold entry
/// for `k` (defined for `2 <= k <= 6`).
pub fn check_thresholds(table: &PartitionTable, sum_bound: usize) -> Result<ThresholdReport> {
    let k = match table.k() {
        KIndex::Finite(k) if (2..=6).contains(&k) => k,
        other => {
            return Err(Error::Range {
                what: "threshold k",
                got: other.to_string(),
                allowed: "2..=6".into(),
            })
        }
    };
    table.check_in_range("sum_bound", sum_bound)?;
    let (n_k, m_k) = VerificationParams::threshold_for(k).expect("k in 2..=6");

    let scanner = DeltaScanner::new(table);
    let mut violations: Vec<(Pair, DeltaSign)> = (n_k..=sum_bound / 2)
        .into_par_iter()
        .flat_map_iter(|a| {
            let scanner = &scanner;
            let lo = a.max(m_k.saturating_sub(a));
            (lo..=sum_bound - a).filter_map(move |b| match scanner.sign(a, b) {
                DeltaSign::Positive => None,
                s => Some((Pair { a, b }, s)),
            })
        })
        .collect();
    violations.sort_by_key(|(p, _)| *p);

    Ok(ThresholdReport {
        k: table.k(),
        n_k,
        m_k,
        sum_bound,
        violations,
    })
}

/// Per-k outcome of the stabilization scan.
#[derive(Debug, Clone, Serialize)]
pub struct StabilizationEntry {
    pub k: usize,
    pub matches: bool,
    /// Pairs present for this k but absent from the reference sets, and vice
    /// versa; empty when `matches`.
    pub extra_equality: Vec<Pair>,
    pub missing_equality: Vec<Pair>,
    pub extra_reversed: Vec<Pair>,
    pub missing_reversed: Vec<Pair>,
}

/// Outcome of comparing `E_k`/`F_k` against `E_inf`/`F_inf` over a k-range.
#[derive(Debug, Clone, Serialize)]
pub struct StabilizationReport {
    pub sum_bound: usize,
    pub reference: ExceptionReport,
    pub per_k: Vec<StabilizationEntry>,
}

impl StabilizationReport {
    pub fn all_match(&self) -> bool {
        self.per_k.iter().all(|e| e.matches)
    }
}

fn set_diff(a: &[Pair], b: &[Pair]) -> Vec<Pair> {
    a.iter().filter(|p| !b.contains(p)).copied().collect()
}

/// For each `k` in `k_from..=k_to` (both at least 10), compares the finite
/// exception sets at `sum_bound` against those of `p_inf`.
pub fn stabilization_scan(
    k_from: usize,
    k_to: usize,
    sum_bound: usize,
    store: &crate::arith::cache::TableStore,
) -> Result<StabilizationReport> {
    if k_from < 10 {
        return Err(Error::Range {
            what: "stabilization k_from",
            got: k_from.to_string(),
            allowed: ">= 10".into(),
        });
    }
    if k_to < k_from {
        return Err(Error::Range {
            what: "stabilization k_to",
            got: k_to.to_string(),
            allowed: format!(">= {k_from}"),
        });
    }
    if sum_bound < 20 {
        return Err(Error::Range {
            what: "stabilization sum_bound",
            got: sum_bound.to_string(),
            allowed: ">= 20".into(),
        });
    }

    let inf_table = store.get(KIndex::Infinity, sum_bound)?;
    let reference = enumerate_exceptions(&inf_table, sum_bound)?;

    let per_k: Vec<StabilizationEntry> = (k_from..=k_to)
        .into_par_iter()
        .map(|k| -> Result<StabilizationEntry> {
            let table = store.get(KIndex::Finite(k), sum_bound)?;
            let rep = enumerate_exceptions(&table, sum_bound)?;
            let extra_equality = set_diff(&rep.equality_pairs, &reference.equality_pairs);
            let missing_equality = set_diff(&reference.equality_pairs, &rep.equality_pairs);
            let extra_reversed = set_diff(&rep.reversed_pairs, &reference.reversed_pairs);
            let missing_reversed = set_diff(&reference.reversed_pairs, &rep.reversed_pairs);
            let matches = extra_equality.is_empty()
                && missing_equality.is_empty()
                && extra_reversed.is_empty()
                && missing_reversed.is_empty()
                && rep.infinite_families.is_empty();
            Ok(StabilizationEntry {
                k,
                matches,
                extra_equality,
                missing_equality,
                extra_reversed,
                missing_reversed,
            })
        })
        .collect::<Result<_>>()?;

    Ok(StabilizationReport {
        sum_bound,
        reference,
        per_k,
    })
}

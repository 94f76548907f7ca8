//! The exhaustive induction campaign: verify `delta_k(a, b) > 0` for all
//! `a, b >= A` with `B <= a + b <= N0`, for every `k` in a class, reporting
//! anything nonpositive. Pairs outside the `(A, B)` frontier are scanned too
//! and reported separately as the below-threshold region, where the known
//! exception sets are expected to reappear.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use super::{DeltaScanner, DeltaSign, Pair};
use crate::arith::cache::TableStore;
use crate::arith::KIndex;
use crate::error::Result;
use crate::golden;

/// Which parameter set drives the campaign. The `k = 2` and `k = 3` cases
/// need their own `(A, B, N0)`; everything above 3 shares one set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum KClass {
    K2,
    K3,
    KGt3,
}

/// Campaign constants for one k-class, plus the `(n_k, m_k)` threshold table
/// for `2 <= k <= 6`.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationParams {
    pub k_class: KClass,
    /// A: both pair entries must be at least this.
    pub a_min: usize,
    /// B: the pair sum must be at least this.
    pub b_min: usize,
    /// N0: the verification horizon.
    pub n0: usize,
    /// `k -> (n_k, m_k)` for `2 <= k <= 6`.
    pub thresholds: BTreeMap<usize, (usize, usize)>,
}

impl VerificationParams {
    pub fn for_class(k_class: KClass) -> Self {
        let (a_min, b_min, n0) = match k_class {
            KClass::K2 => (3, 22, 3662),
            KClass::K3 => (2, 17, 3776),
            KClass::KGt3 => (2, 10, 2938),
        };
        VerificationParams {
            k_class,
            a_min,
            b_min,
            n0,
            thresholds: golden::thresholds().clone(),
        }
    }

    pub fn k2() -> Self {
        Self::for_class(KClass::K2)
    }

    pub fn k3() -> Self {
        Self::for_class(KClass::K3)
    }

    pub fn k_gt3() -> Self {
        Self::for_class(KClass::KGt3)
    }

    /// `(n_k, m_k)` for `2 <= k <= 6`.
    pub fn threshold_for(k: usize) -> Option<(usize, usize)> {
        golden::thresholds().get(&k).copied()
    }

    /// The finite k values this class covers, capped at `k_max` and at the
    /// effective horizon (beyond it `p_k` agrees with `p_inf` on the whole
    /// scanned range, so larger k add nothing).
    pub fn k_values(&self, k_max: usize, n0_effective: usize) -> Vec<usize> {
        match self.k_class {
            KClass::K2 => (k_max >= 2).then_some(2).into_iter().collect(),
            KClass::K3 => (k_max >= 3).then_some(3).into_iter().collect(),
            KClass::KGt3 => (4..=k_max.min(n0_effective)).collect(),
        }
    }
}

/// Knobs for one campaign run.
#[derive(Debug, Clone, Copy, Default)]
pub struct CampaignOptions {
    pub k_max: usize,
    pub n0_override: Option<usize>,
    /// Soft resource limit. When exceeded the campaign stops between k
    /// values and returns a partial report; re-running resumes cheaply from
    /// cached tables.
    pub time_budget: Option<Duration>,
}

/// Nonpositive pairs found in one region of the `(a, b)` plane.
#[derive(Debug, Clone, Default, Serialize)]
pub struct RegionFindings {
    /// Every scanned pair with `delta_k <= 0`, sorted.
    pub violations: Vec<(Pair, DeltaSign)>,
    /// Violations not present in the known exception sets; these falsify the
    /// expectation and must be empty for a pass.
    pub unexpected: Vec<Pair>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CampaignKReport {
    pub k: usize,
    pub pairs_scanned: u64,
    /// How many pairs fell through the log pre-filter to the exact check.
    pub exact_checks: u64,
    /// Pairs with `a, b >= A` and `a + b >= B`.
    pub main_region: RegionFindings,
    /// Everything else with `1 < a <= b`.
    pub below_threshold: RegionFindings,
}

#[derive(Debug, Clone, Serialize)]
pub struct CampaignReport {
    pub k_class: KClass,
    pub a_min: usize,
    pub b_min: usize,
    pub n0_effective: usize,
    pub k_max: usize,
    /// True when the time budget ran out; `per_k` then holds only the
    /// completed k values.
    pub aborted: bool,
    pub per_k: Vec<CampaignKReport>,
}

impl CampaignReport {
    pub fn unexpected_total(&self) -> usize {
        self.per_k
            .iter()
            .map(|r| r.main_region.unexpected.len() + r.below_threshold.unexpected.len())
            .sum()
    }

    pub fn passed(&self) -> bool {
        !self.aborted && self.unexpected_total() == 0
    }
}

/// Runs the campaign for `params.k_class` up to `opts.k_max`, scanning all
/// normalized pairs with `a + b <= N0` (or the override) per k.
pub fn induction_campaign(
    params: &VerificationParams,
    opts: &CampaignOptions,
    store: &TableStore,
) -> Result<CampaignReport> {
    let n0_effective = opts.n0_override.unwrap_or(params.n0);
    let started = Instant::now();

    let mut per_k = Vec::new();
    let mut aborted = false;
    for k in params.k_values(opts.k_max, n0_effective) {
        if let Some(budget) = opts.time_budget {
            if started.elapsed() >= budget {
                aborted = true;
                break;
            }
        }
        per_k.push(scan_one_k(params, k, n0_effective, store)?);
    }

    Ok(CampaignReport {
        k_class: params.k_class,
        a_min: params.a_min,
        b_min: params.b_min,
        n0_effective,
        k_max: opts.k_max,
        aborted,
        per_k,
    })
}

fn scan_one_k(
    params: &VerificationParams,
    k: usize,
    n0: usize,
    store: &TableStore,
) -> Result<CampaignKReport> {
    let kindex = KIndex::Finite(k);
    let table = store.get(kindex, n0)?;
    let scanner = DeltaScanner::new(&table);
    let expected = golden::expected_exceptions(kindex);

    struct AChunk {
        pairs: u64,
        exact: u64,
        main: Vec<(Pair, DeltaSign)>,
        below: Vec<(Pair, DeltaSign)>,
    }

    let chunks: Vec<AChunk> = (2..=n0 / 2)
        .into_par_iter()
        .map(|a| {
            let mut out = AChunk {
                pairs: 0,
                exact: 0,
                main: Vec::new(),
                below: Vec::new(),
            };
            for b in a..=n0 - a {
                out.pairs += 1;
                let (sign, was_exact) = scanner.sign_counted(a, b);
                if was_exact {
                    out.exact += 1;
                }
                if sign != DeltaSign::Positive {
                    let pair = Pair { a, b };
                    if a >= params.a_min && a + b >= params.b_min {
                        out.main.push((pair, sign));
                    } else {
                        out.below.push((pair, sign));
                    }
                }
            }
            out
        })
        .collect();

    let mut report = CampaignKReport {
        k,
        pairs_scanned: 0,
        exact_checks: 0,
        main_region: RegionFindings::default(),
        below_threshold: RegionFindings::default(),
    };
    for c in chunks {
        report.pairs_scanned += c.pairs;
        report.exact_checks += c.exact;
        report.main_region.violations.extend(c.main);
        report.below_threshold.violations.extend(c.below);
    }
    for region in [&mut report.main_region, &mut report.below_threshold] {
        region.unexpected = region
            .violations
            .iter()
            .map(|(p, _)| *p)
            .filter(|p| !expected.contains_nonpositive(*p))
            .collect();
    }
    Ok(report)
}

impl DeltaScanner<'_> {
    /// Like `sign`, but also reports whether the exact path ran.
    pub(crate) fn sign_counted(&self, a: usize, b: usize) -> (DeltaSign, bool) {
        let margin = self.ln_p[a] + self.ln_p[b] - self.ln_p[a + b];
        if margin >= super::LOG_FILTER_MARGIN {
            return (DeltaSign::Positive, false);
        }
        (self.sign_exact(a, b), true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_carry_the_fixed_constants() {
        let p = VerificationParams::k_gt3();
        assert_eq!((p.a_min, p.b_min, p.n0), (2, 10, 2938));
        let p = VerificationParams::k2();
        assert_eq!((p.a_min, p.b_min, p.n0), (3, 22, 3662));
        let p = VerificationParams::k3();
        assert_eq!((p.a_min, p.b_min, p.n0), (2, 17, 3776));
        assert_eq!(
            p.thresholds,
            BTreeMap::from([(2, (3, 22)), (3, (2, 17)), (4, (2, 9)), (5, (2, 9)), (6, (2, 9))])
        );
    }

    #[test]
    fn scaled_campaign_has_no_unexpected_violations() {
        let store = TableStore::in_memory();
        let opts = CampaignOptions {
            k_max: 20,
            n0_override: Some(150),
            time_budget: None,
        };
        for params in [VerificationParams::k2(), VerificationParams::k3(), VerificationParams::k_gt3()] {
            let rep = induction_campaign(&params, &opts, &store).unwrap();
            assert!(rep.passed(), "{:?}: {} unexpected", params.k_class, rep.unexpected_total());
            for kr in &rep.per_k {
                assert!(kr.main_region.violations.is_empty(), "k={}: {:?}", kr.k, kr.main_region.violations);
            }
        }
    }

    #[test]
    fn k2_below_threshold_matches_known_exceptions() {
        // With a horizon of 100, the nonpositive pairs for k = 2 are exactly
        // the known exception sets: the finite E_2/F_2 lists plus the family
        // (2, b) for 2 <= b <= 98.
        let store = TableStore::in_memory();
        let opts = CampaignOptions {
            k_max: 2,
            n0_override: Some(100),
            time_budget: None,
        };
        let rep = induction_campaign(&VerificationParams::k2(), &opts, &store).unwrap();
        assert_eq!(rep.per_k.len(), 1);
        let kr = &rep.per_k[0];
        assert!(kr.main_region.violations.is_empty());
        assert!(kr.below_threshold.unexpected.is_empty());

        let golden = golden::bo_exceptions(KIndex::Finite(2)).unwrap();
        let mut expected: Vec<Pair> = golden
            .equality
            .iter()
            .chain(golden.reversed.iter())
            .copied()
            .filter(|p| p.sum() <= 100)
            .collect();
        expected.extend((2..=98).map(|b| Pair::new(2, b).unwrap()));
        expected.sort();
        let mut found: Vec<Pair> = kr
            .below_threshold
            .violations
            .iter()
            .map(|(p, _)| *p)
            .collect();
        found.sort();
        assert_eq!(found, expected);
    }

    #[test]
    fn budget_abort_is_partial_and_resumable() {
        let dir = tempfile::tempdir().unwrap();
        let store = TableStore::with_dir(dir.path());
        let opts = CampaignOptions {
            k_max: 12,
            n0_override: Some(120),
            time_budget: Some(Duration::ZERO),
        };
        let rep = induction_campaign(&VerificationParams::k_gt3(), &opts, &store).unwrap();
        assert!(rep.aborted);
        assert!(rep.per_k.is_empty());

        let opts = CampaignOptions {
            time_budget: None,
            ..opts
        };
        let rep = induction_campaign(&VerificationParams::k_gt3(), &opts, &store).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.per_k.len(), 9);
    }
}

//! Log-concavity of `p_k`: defects, failure enumeration, the printed failure
//! grid, and the large-k stabilization conjecture scan.
//!
//! `p_k` is log-concave at `n` when `p_k(n)^2 >= p_k(n-1) p_k(n+1)`; the
//! defect is the exact difference. `N_k` is the smallest index past which no
//! failures occur — estimated here from a finite scan, so it always carries a
//! horizon caveat.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::cache::TableStore;
use crate::arith::{KIndex, PartitionTable};
use crate::error::{Error, Result};

/// `p_k(n)^2 - p_k(n-1) p_k(n+1)`, exact. Requires `1 <= n <= n_max - 1`.
pub fn logconc_defect(table: &PartitionTable, n: usize) -> Result<BigInt> {
    if n == 0 || n + 1 > table.n_max() {
        return Err(Error::Range {
            what: "log-concavity index",
            got: n.to_string(),
            allowed: format!("1..={}", table.n_max().saturating_sub(1)),
        });
    }
    let square = BigInt::from(table.value(n) * table.value(n));
    let cross = BigInt::from(table.value(n - 1) * table.value(n + 1));
    Ok(square - cross)
}

/// Failure indices of one table up to a horizon.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LogConcavityReport {
    pub k: KIndex,
    pub n_max: usize,
    /// Indices `1 <= n <= n_max` with negative defect, sorted.
    pub failures: Vec<usize>,
    /// `1 + max(failures)`, or 1 when there are none.
    #[serde(rename = "estimated_N_k")]
    pub estimated_n_k: usize,
    /// Always true: minimality past `n_max` is not established by a scan.
    pub horizon_caveat: bool,
}

/// Scans `1..=n_max` (which must leave room for `p_k(n_max + 1)`) and
/// collects every index with a negative defect.
pub fn enumerate_failures(table: &PartitionTable, n_max: usize) -> Result<LogConcavityReport> {
    if n_max + 1 > table.n_max() {
        return Err(Error::Range {
            what: "log-concavity horizon",
            got: n_max.to_string(),
            allowed: format!("1..={}", table.n_max().saturating_sub(1)),
        });
    }
    let failures: Vec<usize> = (1..=n_max)
        .into_par_iter()
        .filter(|&n| {
            let square = table.value(n) * table.value(n);
            let cross = table.value(n - 1) * table.value(n + 1);
            square < cross
        })
        .collect();
    let estimated_n_k = failures.last().map_or(1, |&n| n + 1);
    Ok(LogConcavityReport {
        k: table.k(),
        n_max,
        failures,
        estimated_n_k,
        horizon_caveat: true,
    })
}

/// The failure set of `p_inf`: all odd `1 <= n <= 25`.
pub fn stable_failure_set() -> Vec<usize> {
    (1..=25).step_by(2).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjectureEntry {
    pub k: usize,
    /// Whether the failures up to the horizon equal the odd numbers 1..=25.
    pub matches_stable_set: bool,
    /// The actual failures; only informative when `matches_stable_set` is
    /// false.
    pub failures: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjectureScanReport {
    pub k_from: usize,
    pub k_to: usize,
    pub n_max: usize,
    pub entries: Vec<ConjectureEntry>,
    /// k values >= 30 whose failure set differs from the stable set; any
    /// entry here contradicts the stabilization conjecture within the
    /// horizon.
    pub contradictions: Vec<usize>,
}

impl ConjectureScanReport {
    pub fn conjecture_holds(&self) -> bool {
        self.contradictions.is_empty()
    }
}

/// For each `k` in range, compares the failure set against the stable set
/// (odd `1..=25`) and flags any `k >= 30` mismatch.
pub fn conjecture_scan(
    k_from: usize,
    k_to: usize,
    n_max: usize,
    store: &TableStore,
) -> Result<ConjectureScanReport> {
    if k_from < 2 {
        return Err(Error::Range {
            what: "conjecture k_from",
            got: k_from.to_string(),
            allowed: ">= 2".into(),
        });
    }
    if n_max < 100 {
        return Err(Error::Range {
            what: "conjecture n_max",
            got: n_max.to_string(),
            allowed: ">= 100".into(),
        });
    }
    let stable = stable_failure_set();
    let entries: Vec<ConjectureEntry> = (k_from..=k_to)
        .into_par_iter()
        .map(|k| -> Result<ConjectureEntry> {
            let table = store.get(KIndex::Finite(k), n_max + 1)?;
            let rep = enumerate_failures(&table, n_max)?;
            let matches = rep.failures == stable;
            Ok(ConjectureEntry {
                k,
                matches_stable_set: matches,
                failures: rep.failures,
            })
        })
        .collect::<Result<_>>()?;
    let contradictions = entries
        .iter()
        .filter(|e| e.k >= 30 && !e.matches_stable_set)
        .map(|e| e.k)
        .collect();
    Ok(ConjectureScanReport {
        k_from,
        k_to,
        n_max,
        entries,
        contradictions,
    })
}

/// A bullet grid of log-concavity failures: rows `n = 1..=n_max`, columns
/// `k = k_from..=k_to`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table3Grid {
    pub k_from: usize,
    pub k_to: usize,
    pub n_max: usize,
    /// `cells[n - 1][k - k_from]` is true when `p_k` fails at `n`.
    pub cells: Vec<Vec<bool>>,
}

impl Table3Grid {
    pub fn cell(&self, n: usize, k: usize) -> bool {
        self.cells[n - 1][k - self.k_from]
    }

    /// First differing cell `(n, k)` between two grids of equal shape.
    pub fn diff(&self, other: &Table3Grid) -> Option<(usize, usize)> {
        for n in 1..=self.n_max {
            for k in self.k_from..=self.k_to {
                if self.cell(n, k) != other.cell(n, k) {
                    return Some((n, k));
                }
            }
        }
        None
    }

    /// CSV form: header `n,k_from,...,k_to`; cells `1` (failure) or empty.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n");
        for k in self.k_from..=self.k_to {
            out.push(',');
            out.push_str(&k.to_string());
        }
        out.push('\n');
        for n in 1..=self.n_max {
            out.push_str(&n.to_string());
            for k in self.k_from..=self.k_to {
                out.push(',');
                if self.cell(n, k) {
                    out.push('1');
                }
            }
            out.push('\n');
        }
        out
    }

    /// Markdown form with bullet cells, mirroring the usual printed layout.
    pub fn to_markdown(&self) -> String {
        let mut out = String::from("| n \\ k |");
        for k in self.k_from..=self.k_to {
            out.push_str(&format!(" {k} |"));
        }
        out.push('\n');
        out.push_str("|---|");
        for _ in self.k_from..=self.k_to {
            out.push_str("---|");
        }
        out.push('\n');
        for n in 1..=self.n_max {
            out.push_str(&format!("| {n} |"));
            for k in self.k_from..=self.k_to {
                out.push_str(if self.cell(n, k) { " • |" } else { "   |" });
            }
            out.push('\n');
        }
        out
    }

    pub fn parse_csv(text: &str) -> Result<Table3Grid> {
        let bad = |msg: String| Error::Config(format!("grid csv: {msg}"));
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| bad("empty".into()))?;
        let ks: Vec<usize> = header
            .split(',')
            .skip(1)
            .map(|s| s.parse().map_err(|_| bad(format!("bad k column {s:?}"))))
            .collect::<Result<_>>()?;
        if ks.is_empty() {
            return Err(bad("no k columns".into()));
        }
        let (k_from, k_to) = (ks[0], *ks.last().unwrap());
        let mut cells = Vec::new();
        for (i, line) in lines.enumerate() {
            if line.is_empty() {
                continue;
            }
            let mut cols = line.split(',');
            let n: usize = cols
                .next()
                .unwrap()
                .parse()
                .map_err(|_| bad(format!("bad n on data row {}", i + 1)))?;
            if n != i + 1 {
                return Err(bad(format!("row {} labeled n={n}", i + 1)));
            }
            let row: Vec<bool> = cols.map(|c| c == "1").collect();
            if row.len() != ks.len() {
                return Err(bad(format!("row n={n} has {} cells", row.len())));
            }
            cells.push(row);
        }
        let n_max = cells.len();
        Ok(Table3Grid {
            k_from,
            k_to,
            n_max,
            cells,
        })
    }
}

/// Computes the failure grid for `k_from..=k_to`, `n = 1..=n_max`.
pub fn emit_table3(
    k_from: usize,
    k_to: usize,
    n_max: usize,
    store: &TableStore,
) -> Result<Table3Grid> {
    if k_from < 2 || k_to < k_from {
        return Err(Error::Range {
            what: "grid k range",
            got: format!("{k_from}..={k_to}"),
            allowed: "2 <= k_from <= k_to".into(),
        });
    }
    let columns: Vec<Vec<bool>> = (k_from..=k_to)
        .into_par_iter()
        .map(|k| -> Result<Vec<bool>> {
            let table = store.get(KIndex::Finite(k), n_max + 1)?;
            Ok((1..=n_max)
                .map(|n| {
                    let square = table.value(n) * table.value(n);
                    square < table.value(n - 1) * table.value(n + 1)
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    let cells: Vec<Vec<bool>> = (0..n_max)
        .map(|row| columns.iter().map(|col| col[row]).collect())
        .collect();
    Ok(Table3Grid {
        k_from,
        k_to,
        n_max,
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::build_table_recurrence;

    #[test]
    fn defect_examples() {
        let tinf = build_table_recurrence(KIndex::Infinity, 10);
        // p(2)^2 - p(1) p(3) = 4 - 3
        assert_eq!(logconc_defect(&tinf, 2).unwrap(), BigInt::from(1));
        assert!(logconc_defect(&tinf, 3).unwrap() < BigInt::from(0));
        let t2 = build_table_recurrence(KIndex::Finite(2), 10);
        assert!(logconc_defect(&t2, 2).unwrap() < BigInt::from(0));
        assert!(logconc_defect(&tinf, 0).is_err());
        assert!(logconc_defect(&tinf, 10).is_err());
    }

    #[test]
    fn failure_sets_match_known_results() {
        let tinf = build_table_recurrence(KIndex::Infinity, 101);
        let rep = enumerate_failures(&tinf, 100).unwrap();
        assert_eq!(rep.failures, stable_failure_set());
        assert_eq!(rep.estimated_n_k, 26);
        assert!(rep.horizon_caveat);

        let t3 = build_table_recurrence(KIndex::Finite(3), 101);
        let rep = enumerate_failures(&t3, 100).unwrap();
        let odd_to_57: Vec<usize> = (1..=57).step_by(2).collect();
        assert_eq!(rep.failures, odd_to_57);
        assert_eq!(rep.estimated_n_k, 58);

        let t2 = build_table_recurrence(KIndex::Finite(2), 46);
        let rep = enumerate_failures(&t2, 45).unwrap();
        assert_eq!(rep.failures, vec![2, 4, 8, 11, 13, 14, 16, 17, 19, 20, 23, 26, 29, 32]);
    }

    #[test]
    fn failures_recheck_against_defects() {
        let t = build_table_recurrence(KIndex::Finite(5), 80);
        let rep = enumerate_failures(&t, 79).unwrap();
        for n in 1..=79 {
            let neg = logconc_defect(&t, n).unwrap() < BigInt::from(0);
            assert_eq!(neg, rep.failures.contains(&n), "n={n}");
        }
    }

    #[test]
    fn no_even_failures_for_p() {
        let t = build_table_recurrence(KIndex::Infinity, 101);
        let rep = enumerate_failures(&t, 100).unwrap();
        assert!(rep.failures.iter().all(|n| n % 2 == 1));
    }

    #[test]
    fn conjecture_scan_behaviour() {
        let store = TableStore::in_memory();
        let rep = conjecture_scan(31, 31, 100, &store).unwrap();
        assert!(rep.entries[0].matches_stable_set);
        assert!(rep.conjecture_holds());

        // k = 2 has even failures, so it mismatches, but it does not
        // contradict the conjecture (which only speaks about k >= 30).
        let rep = conjecture_scan(2, 2, 100, &store).unwrap();
        assert!(!rep.entries[0].matches_stable_set);
        assert!(rep.conjecture_holds());

        assert!(conjecture_scan(1, 5, 100, &store).is_err());
        assert!(conjecture_scan(2, 5, 50, &store).is_err());
    }

    #[test]
    fn grid_round_trips_through_csv() {
        let store = TableStore::in_memory();
        let grid = emit_table3(2, 8, 20, &store).unwrap();
        let parsed = Table3Grid::parse_csv(&grid.to_csv()).unwrap();
        assert_eq!(grid, parsed);
        assert_eq!(grid.diff(&parsed), None);
    }
}

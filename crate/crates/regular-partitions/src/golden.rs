//! Bundled reference tables.
//!
//! The files under `data/` were transcribed once from the published tables
//! and reviewed by hand; the scanners are diffed against them, never the
//! other way around. `reproduce` exits nonzero whenever a computation stops
//! matching this data.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::arith::KIndex;
use crate::bo::Pair;
use crate::logconc::Table3Grid;

const BO_EXCEPTIONS_TSV: &str = include_str!("../data/bo_exceptions.tsv");
const THRESHOLDS_CSV: &str = include_str!("../data/thresholds.csv");
const TABLE3_CSV: &str = include_str!("../data/table3.csv");

/// Reference exception sets for one k: the finite lists plus any infinite
/// families `(a0, b)` for all `b >= b0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenExceptions {
    pub k: KIndex,
    pub equality: Vec<Pair>,
    pub reversed: Vec<Pair>,
    /// `(a0, b_from)` per family; only k = 2 has one.
    pub reversed_families: Vec<(usize, usize)>,
}

impl GoldenExceptions {
    /// Whether `p` is a known nonpositive pair (member of a finite list or of
    /// a family).
    pub fn contains_nonpositive(&self, p: Pair) -> bool {
        self.equality.contains(&p)
            || self.reversed.contains(&p)
            || self
                .reversed_families
                .iter()
                .any(|&(a0, b_from)| p.a() == a0 && p.b() >= b_from)
    }
}

fn parse_bo_exceptions() -> BTreeMap<String, GoldenExceptions> {
    let mut map: BTreeMap<String, GoldenExceptions> = BTreeMap::new();
    for line in BO_EXCEPTIONS_TSV.lines() {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut cols = line.split('\t');
        let k_str = cols.next().expect("k column");
        let set = cols.next().expect("set column");
        let entries = cols.next().expect("entries column");
        let k: KIndex = k_str.parse().expect("valid k in golden data");
        let rec = map.entry(k_str.to_string()).or_insert_with(|| GoldenExceptions {
            k,
            equality: Vec::new(),
            reversed: Vec::new(),
            reversed_families: Vec::new(),
        });
        for entry in entries.split(' ') {
            let (family, entry) = match entry.strip_suffix('+') {
                Some(stripped) => (true, stripped),
                None => (false, entry),
            };
            let (a, b) = entry.split_once(',').expect("a,b entry");
            let a: usize = a.parse().expect("a");
            let b: usize = b.parse().expect("b");
            if family {
                rec.reversed_families.push((a, b));
            } else {
                let pair = Pair::new(a, b).expect("normalized golden pair");
                match set {
                    "E" => rec.equality.push(pair),
                    "F" => rec.reversed.push(pair),
                    other => panic!("unknown set tag {other:?} in golden data"),
                }
            }
        }
    }
    for rec in map.values_mut() {
        rec.equality.sort();
        rec.reversed.sort();
    }
    map
}

fn exceptions_map() -> &'static BTreeMap<String, GoldenExceptions> {
    static MAP: OnceLock<BTreeMap<String, GoldenExceptions>> = OnceLock::new();
    MAP.get_or_init(parse_bo_exceptions)
}

/// The transcribed exception sets: available for `2 <= k <= 10` and `inf`.
pub fn bo_exceptions(k: KIndex) -> Option<&'static GoldenExceptions> {
    exceptions_map().get(&k.to_string())
}

/// The exception sets expected for any `k`: the transcribed ones where they
/// exist, and the stabilized (`k = inf`) sets for every finite `k > 10`.
pub fn expected_exceptions(k: KIndex) -> &'static GoldenExceptions {
    bo_exceptions(k).unwrap_or_else(|| {
        bo_exceptions(KIndex::Infinity).expect("inf sets are always bundled")
    })
}

/// `k -> (n_k, m_k)` for `2 <= k <= 6`.
pub fn thresholds() -> &'static BTreeMap<usize, (usize, usize)> {
    static MAP: OnceLock<BTreeMap<usize, (usize, usize)>> = OnceLock::new();
    MAP.get_or_init(|| {
        let mut map = BTreeMap::new();
        for line in THRESHOLDS_CSV.lines().skip(1) {
            if line.is_empty() {
                continue;
            }
            let mut cols = line.split(',');
            let k: usize = cols.next().unwrap().parse().expect("k");
            let n_k: usize = cols.next().unwrap().parse().expect("n_k");
            let m_k: usize = cols.next().unwrap().parse().expect("m_k");
            map.insert(k, (n_k, m_k));
        }
        map
    })
}

/// The transcribed log-concavity failure grid (`2 <= k <= 20`, `1 <= n <= 45`).
pub fn table3() -> &'static Table3Grid {
    static GRID: OnceLock<Table3Grid> = OnceLock::new();
    GRID.get_or_init(|| Table3Grid::parse_csv(TABLE3_CSV).expect("bundled grid parses"))
}

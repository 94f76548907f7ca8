//! Output formatting: JSON via serde, plus markdown emitters that mirror the
//! usual printed layout of the exception and threshold tables.

use serde::Serialize;

use crate::bo::{ExceptionReport, StabilizationReport, ThresholdReport};

/// The three output formats the CLI speaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Markdown,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}

fn pair_list(pairs: &[crate::bo::Pair]) -> String {
    if pairs.is_empty() {
        return "-".to_string();
    }
    pairs
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// One row per k: `| k | E_k | F_k |`, families first in the F column.
pub fn exception_table_markdown(reports: &[ExceptionReport]) -> String {
    let mut out = String::from("| k | Elements of E_k | Elements of F_k |\n|---|---|---|\n");
    for rep in reports {
        let mut f_entries: Vec<String> = rep
            .infinite_families
            .iter()
            .map(|fam| format!("({}, b), b >= {}", fam.a0, fam.b_from))
            .collect();
        f_entries.extend(rep.reversed_pairs.iter().map(|p| p.to_string()));
        let f_col = if f_entries.is_empty() {
            "-".to_string()
        } else {
            f_entries.join(", ")
        };
        out.push_str(&format!(
            "| {} | {} | {} |\n",
            rep.k,
            pair_list(&rep.equality_pairs),
            f_col
        ));
    }
    out
}

pub fn threshold_table_markdown(reports: &[ThresholdReport]) -> String {
    let mut out = String::from("| k | n_k | m_k | scanned to | violations |\n|---|---|---|---|---|\n");
    for rep in reports {
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} |\n",
            rep.k,
            rep.n_k,
            rep.m_k,
            rep.sum_bound,
            if rep.violations.is_empty() {
                "none".to_string()
            } else {
                rep.violations
                    .iter()
                    .map(|(p, s)| format!("{p} {s:?}"))
                    .collect::<Vec<_>>()
                    .join(", ")
            }
        ));
    }
    out
}

pub fn stabilization_markdown(report: &StabilizationReport) -> String {
    let mut out = format!(
        "stabilization scan, sum bound {}\n\n| k | E_k = E_inf and F_k = F_inf |\n|---|---|\n",
        report.sum_bound
    );
    for e in &report.per_k {
        if e.matches {
            out.push_str(&format!("| {} | yes |\n", e.k));
        } else {
            out.push_str(&format!(
                "| {} | NO (extra E: {}; missing E: {}; extra F: {}; missing F: {}) |\n",
                e.k,
                pair_list(&e.extra_equality),
                pair_list(&e.missing_equality),
                pair_list(&e.extra_reversed),
                pair_list(&e.missing_reversed),
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{build_table_recurrence, KIndex};
    use crate::bo::enumerate_exceptions;

    #[test]
    fn markdown_table_includes_family_row() {
        let t = build_table_recurrence(KIndex::Finite(2), 60);
        let rep = enumerate_exceptions(&t, 60).unwrap();
        let md = exception_table_markdown(&[rep]);
        assert!(md.contains("(2, b), b >= 2"));
        assert!(md.contains("(4, 15)"));
    }

    #[test]
    fn json_round_trips_exception_report() {
        let t = build_table_recurrence(KIndex::Finite(4), 40);
        let rep = enumerate_exceptions(&t, 40).unwrap();
        let json = to_json(&rep);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["k"], 4);
        assert_eq!(v["search_bound"], 40);
        assert_eq!(v["reversed_pairs"][0][0], 2);
        assert_eq!(v["reversed_pairs"][0][1], 4);
    }
}

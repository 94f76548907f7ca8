//! Enumerate the Bessenrodt-Ono exception sets E_k and F_k for small k and
//! for the plain partition function, and diff them against the bundled
//! reference tables.
//!
//! Run with: cargo run --example bo_exceptions

use regular_partitions::report::exception_table_markdown;
use regular_partitions::{build_table_recurrence, enumerate_exceptions, golden, KIndex};

fn main() {
    let sum_bound = 200;
    let ks: Vec<KIndex> = (2..=10)
        .map(KIndex::Finite)
        .chain([KIndex::Infinity])
        .collect();

    let mut reports = Vec::new();
    for &k in &ks {
        let table = build_table_recurrence(k, sum_bound);
        let rep = enumerate_exceptions(&table, sum_bound).unwrap();
        reports.push(rep);
    }

    println!("Exception sets up to pair sum {sum_bound}:\n");
    print!("{}", exception_table_markdown(&reports));

    for rep in &reports {
        let gold = golden::bo_exceptions(rep.k).unwrap();
        assert_eq!(rep.equality_pairs, gold.equality, "E_{} drifted", rep.k);
        assert_eq!(rep.reversed_pairs, gold.reversed, "F_{} drifted", rep.k);
        let fams: Vec<(usize, usize)> = rep.infinite_families.iter().map(|f| (f.a0, f.b_from)).collect();
        assert_eq!(fams, gold.reversed_families);
    }
    println!("\nall sets match the bundled reference tables");

    // The one infinite family: for k = 2, p_2(2) = 1 turns delta(2, b) into
    // p_2(b) - p_2(b + 2), which the growth scan certifies negative.
    let k2 = reports.iter().find(|r| r.k == KIndex::Finite(2)).unwrap();
    let fam = &k2.infinite_families[0];
    println!(
        "k=2 family: ({}, b) for all b >= {}, verified to b = {}",
        fam.a0, fam.b_from, fam.verified_to
    );
}

//! Log-concavity failures of p_k: the failure grid for small k, estimated
//! thresholds N_k, and the stabilization conjecture scan for large k.
//!
//! Run with: cargo run --example log_concavity

use regular_partitions::logconc::{conjecture_scan, emit_table3, enumerate_failures};
use regular_partitions::{golden, KIndex, TableStore};

fn main() {
    let store = TableStore::in_memory();

    // The printed failure grid, diffed against the bundled reference.
    let grid = emit_table3(2, 20, 45, &store).unwrap();
    print!("{}", grid.to_markdown());
    assert_eq!(grid.diff(golden::table3()), None);
    println!("\ngrid matches the bundled reference cell-for-cell\n");

    // Estimated N_k for a few k.
    for k in [KIndex::Finite(2), KIndex::Finite(3), KIndex::Finite(7), KIndex::Infinity] {
        let table = store.get(k, 201).unwrap();
        let rep = enumerate_failures(&table, 200).unwrap();
        println!(
            "k = {k:>3}: {} failures, estimated N_k = {} (horizon {})",
            rep.failures.len(),
            rep.estimated_n_k,
            rep.n_max
        );
    }

    // For p_inf the failures are the odd numbers 1..=25 and N_inf = 26; the
    // conjecture says every k >= 30 looks the same.
    let scan = conjecture_scan(30, 60, 400, &store).unwrap();
    assert!(scan.conjecture_holds());
    assert!(scan.entries.iter().all(|e| e.matches_stable_set));
    println!("\nconjecture scan 30..=60 at horizon 400: every failure set is odd 1..=25");
}

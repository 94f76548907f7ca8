//! The stabilization phenomenon: for every k >= 10 the exception sets of p_k
//! coincide with those of the plain partition function.
//!
//! Run with: cargo run --example stabilization

use regular_partitions::bo::stabilization_scan;
use regular_partitions::report::stabilization_markdown;
use regular_partitions::TableStore;

fn main() {
    let store = TableStore::in_memory();
    let rep = stabilization_scan(10, 40, 300, &store).unwrap();

    print!("{}", stabilization_markdown(&rep));
    println!();
    println!(
        "reference sets: E_inf = {:?}, F_inf = {:?}",
        rep.reference
            .equality_pairs
            .iter()
            .map(|p| (p.a(), p.b()))
            .collect::<Vec<_>>(),
        rep.reference
            .reversed_pairs
            .iter()
            .map(|p| (p.a(), p.b()))
            .collect::<Vec<_>>(),
    );
    assert!(rep.all_match());
    println!("E_k = E_inf and F_k = F_inf for every scanned k");

    // Below 10 the sets genuinely differ; k = 9 is missing (2, 7).
    let store = TableStore::in_memory();
    let t9 = store.get(regular_partitions::KIndex::Finite(9), 300).unwrap();
    let rep9 = regular_partitions::enumerate_exceptions(&t9, 300).unwrap();
    assert_ne!(rep9.equality_pairs, rep.reference.equality_pairs);
    println!("while k = 9 still differs: E_9 lacks (2, 7)");
}

//! Build a p_k table by the recurrence, the truncated generating-function
//! product, and brute-force enumeration, and watch the three agree. Also
//! demonstrates the on-disk cache round-trip.
//!
//! Run with: cargo run --example tables_three_ways

use regular_partitions::arith::cache::{load_table, save_table};
use regular_partitions::{
    brute_force_count, build_table_recurrence, build_table_series, CountMode, KIndex,
};

fn main() {
    let k = KIndex::Finite(4);
    let n_max = 30;

    let by_recurrence = build_table_recurrence(k, n_max);
    let by_series = build_table_series(k, n_max);
    assert_eq!(by_recurrence, by_series);

    println!("p_{k}(n) for n = 0..={n_max}, three ways:");
    println!("{:>4} {:>12} {:>12} {:>12}", "n", "recurrence", "series", "brute");
    for n in 0..=n_max {
        let brute = brute_force_count(k, n, CountMode::ForbiddenMultiples).unwrap();
        assert_eq!(&brute, by_recurrence.value(n));
        println!(
            "{n:>4} {:>12} {:>12} {brute:>12}",
            by_recurrence.value(n),
            by_series.value(n)
        );
    }

    // Glaisher's identity: forbidden multiples of k == multiplicities < k.
    for n in 0..=n_max {
        let a = brute_force_count(k, n, CountMode::ForbiddenMultiples).unwrap();
        let b = brute_force_count(k, n, CountMode::BoundedMultiplicity).unwrap();
        assert_eq!(a, b, "Glaisher identity at n={n}");
    }
    println!("\nGlaisher identity holds on the whole range.");

    // Cache round-trip.
    let dir = std::env::temp_dir().join("regpart-example-cache");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pk_4_30.rpkt");
    save_table(&by_recurrence, &path).unwrap();
    let loaded = load_table(k, n_max, &path).unwrap();
    assert_eq!(loaded, by_recurrence);
    println!("cache round-trip ok: {}", path.display());
}

//! Certified analytic bound checks: every sign decision below is backed by a
//! rational enclosure, so a pass is a proof at the stated range, not a float
//! comparison.
//!
//! Run with: cargo run --example analytic_bounds

use regular_partitions::bounds::{
    check_g_bound, check_p_lower_bound, final_expression_scan, final_expression_sign,
    smallest_positive_a, LowerBoundVariant,
};
use regular_partitions::{build_table_recurrence, KIndex};

fn main() {
    // g_k(n) <= n (1 + ln n); equality at n = 1.
    for k in [KIndex::Finite(2), KIndex::Infinity] {
        let rep = check_g_bound(k, 3000).unwrap();
        println!("{:<24} {:<18} {}", rep.check, rep.range, if rep.passed() { "pass" } else { "FAIL" });
    }

    // Two lower bounds for p_k(n): the strict real-exponent one and the
    // non-strict floored-exponent one (checked in pure integer arithmetic).
    for k in [KIndex::Finite(2), KIndex::Finite(10)] {
        let table = build_table_recurrence(k, 800);
        for variant in [LowerBoundVariant::StrictReal, LowerBoundVariant::FlooredExponent] {
            let rep = check_p_lower_bound(&table, 800, variant).unwrap();
            println!("{:<24} {:<18} {}", rep.check, rep.range, if rep.passed() { "pass" } else { "FAIL" });
        }
    }

    // The bracket -48 a^2 (1 + ln 2a) + 2^(sqrt(2(a-1)/3 + 1/4) - 3/2)
    // changes sign exactly once in the scanned range.
    let first = smallest_positive_a(2000).unwrap().unwrap();
    println!("\nsmallest a with a certified positive bracket: {first}");
    let (sign_before, _) = final_expression_sign(first - 1).unwrap();
    println!("sign at {}: {:?}", first - 1, sign_before);

    let rep = final_expression_scan(1470, 25_000).unwrap();
    println!(
        "scan {}: {} (max working precision {} bits)",
        rep.range,
        if rep.passed() { "positive and nondecreasing throughout" } else { "FAILED" },
        rep.max_precision_bits_used
    );
}

//! The brute-force oracle suite: at n = 5 the group B_5 has only 3840
//! elements, so stabilizer-chain answers — orders, intersections, the
//! normal subgroup catalog — can be replayed against plain enumeration.
//!
//! Run with `cargo run --example oracle_suite`.

use bn_strings::oracle::{all_match, run_oracle_suite, DEFAULT_ORACLE_SEED};

fn main() {
    let comparisons = run_oracle_suite(5, DEFAULT_ORACLE_SEED).unwrap();
    for comparison in &comparisons {
        println!(
            "{} {:<28} {}",
            if comparison.matches { "ok  " } else { "FAIL" },
            comparison.name,
            comparison.detail
        );
    }
    println!();
    println!(
        "{} comparisons, all match: {}",
        comparisons.len(),
        all_match(&comparisons)
    );
}

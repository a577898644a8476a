//! Verifying the high-rank family at n = 10 (rank 6, inside Sym(20)) and
//! comparing the two C-string decision procedures: the full pairwise
//! intersection scan and the inductive interval criterion.
//!
//! Run with `cargo run --example verify_high_rank`.

use bn_strings::families::{thm13_candidate, Family};
use bn_strings::verify::{verify_theorem, CandidateVerifier, Method};
use std::time::Instant;

fn main() {
    let candidate = thm13_candidate(10).unwrap();
    let verifier = CandidateVerifier::new(&candidate);

    for method in [Method::Full, Method::Inductive] {
        let started = Instant::now();
        let verdict = verifier.is_cstring(method).unwrap();
        println!(
            "{:<9} method: C-string = {} ({:.2?})",
            method.to_string(),
            verdict.is_cstring,
            started.elapsed()
        );
    }
    println!();

    // The full pipeline adds ambient identification, parabolic
    // fingerprints, identities, and the unravelled decision.
    let report = verify_theorem(Family::Thm13, 10).unwrap();
    println!(
        "family {} at n = {}: order {}, schlafli {}, all passed: {}",
        report.family,
        report.n,
        report.group_order,
        report.schlafli,
        report.all_passed()
    );
    for timing in &report.timings {
        println!("  {:<18} {:>8.2} ms", timing.phase, timing.seconds * 1000.0);
    }
}

//! The unravelled decision across the interesting boundary cases: the
//! rank-4 family fails at n = 5 (one quotient stays a C-string) and
//! succeeds for larger odd n, while the high-rank family succeeds at even
//! n but has its own surprise at n = 9.
//!
//! Run with `cargo run --example unravelled_boundary`.

use bn_strings::bn::BnContext;
use bn_strings::families::{thm12_candidate, thm13_candidate, Family};
use bn_strings::report::UnravelDocument;
use bn_strings::verify::{verify_theorem, CandidateVerifier};

fn main() {
    // n = 5: the central quotient B_5 / ⟨omega_0⟩ carries the image tuple
    // to another C-string, so the tuple is not unravelled.
    let report = verify_theorem(Family::Thm12, 5).unwrap();
    print!("{}", UnravelDocument::from_report(&report).render_text());
    println!();

    // n = 7: every quotient collapses or loses the C-string property.
    let report = verify_theorem(Family::Thm12, 7).unwrap();
    print!("{}", UnravelDocument::from_report(&report).render_text());
    println!();

    // Checking a single quotient directly, without the full pipeline.
    let candidate = thm12_candidate(5).unwrap();
    let verifier = CandidateVerifier::new(&candidate);
    let ctx = BnContext::new(5).unwrap();
    for entry in ctx.normal_subgroup_catalog() {
        let verdict = verifier.quotient_check(&entry.group).unwrap();
        println!(
            "thm12 n=5 modulo {:<17} {}",
            entry.label.to_string(),
            verdict.token()
        );
    }
    println!();

    // The high-rank family at odd n = 9: the verdict is computed and
    // reported like any other, it just isn't covered by the even-n claim.
    let candidate = thm13_candidate(9).unwrap();
    let verifier = CandidateVerifier::new(&candidate);
    let ctx = BnContext::new(9).unwrap();
    let unravelled = verifier.unravelled(&ctx).unwrap();
    println!("thm13 n=9 unravelled: {}", unravelled.unravelled);
    for check in &unravelled.checks {
        println!(
            "  modulo {:<17} {}",
            check.label.to_string(),
            check.verdict.token()
        );
    }
}

//! End-to-end verification of the rank-4 family at n = 7: ambient group
//! identification, the C-string property by both methods, parabolic
//! fingerprints, identity checks, and the unravelled decision — rendered
//! as the same text report the command-line tool prints.
//!
//! Run with `cargo run --example verify_rank4`.

use bn_strings::families::Family;
use bn_strings::report::ReportDocument;
use bn_strings::verify::verify_theorem;

fn main() {
    let report = verify_theorem(Family::Thm12, 7).unwrap();
    let doc = ReportDocument::from_report(&report, true);
    print!("{}", doc.render_text());
}

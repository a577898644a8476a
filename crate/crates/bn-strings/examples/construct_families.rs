//! Building the two involution families, inspecting their generators, and
//! replaying the algebraic identities that pin down each construction.
//!
//! Run with `cargo run --example construct_families`.

use bn_strings::families::{identity_checks, thm12_candidate, thm13_candidate, Family};
use bn_strings::verify::SchlafliSymbol;

fn main() {
    // The rank-4 family lives in B_n for odd n ≥ 5.
    let rank4 = thm12_candidate(7).unwrap();
    println!(
        "{} at n = {}: rank {}, degree {}",
        rank4.family,
        rank4.n,
        rank4.rank,
        rank4.degree()
    );
    for (i, t) in rank4.generators.iter().enumerate() {
        println!("  t_{} = {}", i + 1, t.format_cycles());
    }
    println!("  group order {}", rank4.group().order());
    println!("  schlafli {}", SchlafliSymbol::of(&rank4));
    println!();

    // The high-rank family lives in B_n for n ≥ 8, with rank n − 4.
    let high = thm13_candidate(9).unwrap();
    println!(
        "{} at n = {}: rank {}, degree {}",
        high.family,
        high.n,
        high.rank,
        high.degree()
    );
    for (i, t) in high.generators.iter().enumerate() {
        println!("  t_{} = {}", i, t.format_cycles());
    }
    println!("  group order {}", high.group().order());
    println!("  schlafli {}", SchlafliSymbol::of(&high));
    println!();

    // Each family carries a set of exact identities — closed forms for
    // generators, orders of distinguished words, membership of witness
    // products — that double as regression checks on the construction.
    for (family, n) in [(Family::Thm12, 7), (Family::Thm13, 9)] {
        println!("identities for {family} at n = {n}:");
        for check in identity_checks(family, n).unwrap() {
            println!(
                "  {:<40} {}",
                check.name,
                if check.holds { "holds" } else { "FAILS" }
            );
        }
        println!();
    }
}

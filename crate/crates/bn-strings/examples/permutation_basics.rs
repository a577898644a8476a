//! Core permutation arithmetic: parsing cycle notation, composing under the
//! right action, conjugation, powers, and cycle structure.
//!
//! Run with `cargo run --example permutation_basics`.

use bn_strings::perm::Permutation;

fn main() {
    let degree = 10;

    let a = Permutation::parse_cycles("(1,2,3)", degree).unwrap();
    let b = Permutation::parse_cycles("(3,4)", degree).unwrap();

    // Permutations act on the right: (x)(ab) = ((x)a)b, so `a.compose(&b)`
    // applies `a` first.
    let ab = a.compose(&b);
    let ba = b.compose(&a);
    println!("a      = {}", a.format_cycles());
    println!("b      = {}", b.format_cycles());
    println!("ab     = {}", ab.format_cycles());
    println!("ba     = {}", ba.format_cycles());
    println!("(1)ab  = {}", ab.apply(1));
    println!();

    // Conjugation relabels points: a^h moves (x)h to (x a)h.
    let h = Permutation::parse_cycles("(1,5)(2,6)(3,7)(4,8)", degree).unwrap();
    println!("a^h    = {}", a.conjugate(&h).format_cycles());
    println!();

    // Orders and powers.
    let c = Permutation::parse_cycles("(1,2)(3,4,5)(6,7,8,9,10)", degree).unwrap();
    println!("c      = {}", c.format_cycles());
    println!("|c|    = {}", c.order());
    println!("c^15   = {}", c.power(15).format_cycles());
    println!("c^-1   = {}", c.inverse().format_cycles());
    println!();

    // Cycle structure and parity.
    let cycles = c.cycles();
    println!("cycle type of c: {:?}", cycles.cycle_type());
    println!("c is odd: {}", c.is_odd());
    println!("moved points of c: {:?}", c.moved_points());

    // Involutions square to the identity.
    let t = Permutation::transposition(degree, 2, 9);
    println!();
    println!("t      = {}, involution: {}", t.format_cycles(), t.is_involution());
    println!("t t    = {}", t.compose(&t).format_cycles());
}

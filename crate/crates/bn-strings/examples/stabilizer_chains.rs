//! Working with permutation groups through stabilizer chains: orders,
//! membership, orbits, centers, derived subgroups, and intersections —
//! all without listing elements.
//!
//! Run with `cargo run --example stabilizer_chains`.

use bn_strings::group::PermutationGroup;
use bn_strings::perm::Permutation;

fn main() {
    let degree = 8;

    // Sym(5) acting on {1..5} inside Sym(8).
    let sym5 = PermutationGroup::from_generators(
        degree,
        vec![
            Permutation::parse_cycles("(1,2)", degree).unwrap(),
            Permutation::parse_cycles("(1,2,3,4,5)", degree).unwrap(),
        ],
    )
    .unwrap();
    println!("|Sym(5)| = {}", sym5.order());
    println!("orbit of 1: {:?}", sym5.orbit(1));

    // Membership is a stabilizer-chain sift, not a search.
    let even = Permutation::parse_cycles("(1,2,3)", degree).unwrap();
    let outside = Permutation::parse_cycles("(6,7)", degree).unwrap();
    println!("contains (1,2,3): {}", sym5.contains(&even));
    println!("contains (6,7):   {}", sym5.contains(&outside));
    println!();

    // The derived subgroup of Sym(5) is Alt(5); the center is trivial.
    let derived = sym5.derived_subgroup();
    println!("|[Sym(5), Sym(5)]| = {}", derived.order());
    println!("center is trivial: {}", sym5.center().is_trivial());
    println!();

    // A dihedral group of order 8 on {3..6} — it sticks out of Sym(5)'s
    // support, so the intersection is a proper piece of both.
    let dih8 = PermutationGroup::from_generators(
        degree,
        vec![
            Permutation::parse_cycles("(3,4,5,6)", degree).unwrap(),
            Permutation::parse_cycles("(3,5)", degree).unwrap(),
        ],
    )
    .unwrap();
    println!("|Dih8| = {}, center order = {}", dih8.order(), dih8.center().order());

    // Intersections run by backtrack search over the chains.
    let meet = sym5.intersection(&dih8).unwrap();
    println!("|Sym(5) ∩ Dih8| = {}", meet.order());
    for g in meet.iter_elements() {
        println!("  {}", g.format_cycles());
    }
    println!();

    // Joins, normality, and normal closures.
    let join = sym5.join(&dih8).unwrap();
    println!("|⟨Sym(5) ∪ Dih8⟩| = {} (all of Sym(6))", join.order());
    println!("Alt(5) normal in Sym(5): {}", derived.is_normal_in(&sym5));
    let closure = sym5
        .normal_closure(&[Permutation::parse_cycles("(1,2,3)", degree).unwrap()])
        .unwrap();
    println!("normal closure of (1,2,3) in Sym(5) has order {}", closure.order());
}

//! The hyperoctahedral group B_n realized inside Sym(2n), its sign
//! characters, and its complete catalog of proper nontrivial normal
//! subgroups — cross-checked against brute-force enumeration at n = 5.
//!
//! Run with `cargo run --example hyperoctahedral_catalog`.

use bn_strings::bn::{bn_order, BnContext};

fn main() {
    let ctx = BnContext::new(5).unwrap();
    println!("B_5 ⊂ Sym({}), order {}", ctx.degree(), ctx.group().order());
    assert_eq!(ctx.group().order(), bn_order(5));

    println!("generators:");
    for (i, beta) in ctx.betas().iter().enumerate() {
        println!("  beta_{i} = {}", beta.format_cycles());
    }
    println!("omega_0 = {} (central)", ctx.omega0().format_cycles());
    println!();

    // Three Z/2 characters cut out the index-2 kernels.
    let beta0 = ctx.beta(0).clone();
    let beta1 = ctx.beta(1).clone();
    println!("character values on beta_0 and beta_1:");
    for chi in [
        ctx.pair_sign_character(),
        ctx.total_sign_character(),
        ctx.product_sign_character(),
    ] {
        println!(
            "  {:<12} beta_0 → {:>5}, beta_1 → {:>5}",
            chi.name(),
            chi.evaluate(&beta0),
            chi.evaluate(&beta1)
        );
    }
    println!();

    // The seven proper nontrivial normal subgroups, by index.
    println!("normal subgroup catalog:");
    for entry in ctx.normal_subgroup_catalog() {
        println!(
            "  {:<17} order {:>5}, index {:>4}, normal: {}",
            entry.label.to_string(),
            entry.group.order(),
            entry.expected_index,
            entry.group.is_normal_in(ctx.group())
        );
    }
    println!();

    // At n = 5 the whole lattice is small enough to enumerate outright,
    // which confirms the catalog is complete.
    let all = ctx.group().normal_subgroups_bruteforce().unwrap();
    let proper_nontrivial = all
        .iter()
        .filter(|h| !h.is_trivial() && h.order() < ctx.group().order())
        .count();
    println!(
        "brute force finds {} normal subgroups, {} proper nontrivial — catalog has {}",
        all.len(),
        proper_nontrivial,
        ctx.normal_subgroup_catalog().len()
    );
}

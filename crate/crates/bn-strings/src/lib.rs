//! String C-groups and unravelled regular polytopes in the hyperoctahedral
//! groups `B_n`.
//!
//! A tuple of involutions generating a group is a C-string when distant
//! generators commute and the parabolic subgroups satisfy the intersection
//! property `G_J ∩ G_K = G_{J∩K}`; these tuples present the automorphism
//! groups of abstract regular polytopes. This crate constructs two such
//! families inside `B_n ⊂ Sym(2n)` — a rank-4 family for odd `n ≥ 5` and a
//! rank-`(n−4)` family for `n ≥ 8` — verifies the C-string property by two
//! independent methods, and decides whether each tuple is unravelled: that
//! is, whether its image collapses or stops being a C-string in every
//! proper quotient of `B_n`.
//!
//! The layers, bottom up: [`perm`] (permutation arithmetic), [`group`]
//! (stabilizer chains), [`bn`] (the ambient `B_n` and its normal subgroup
//! catalog), [`families`] (the constructions and their identities),
//! [`verify`] (the decisions), [`genfile`] and [`report`] (interchange
//! formats), [`oracle`] (brute-force cross-checks), and [`cli`] (the
//! command-line tool).

pub mod bn;
pub mod cli;
pub mod families;
pub mod genfile;
pub mod group;
pub mod oracle;
pub mod perm;
pub mod report;
pub mod verify;

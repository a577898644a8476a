//! Brute-force oracles: the fast group machinery re-checked against plain
//! element enumeration at small `n`. Stabilizer-chain orders are compared
//! with exhaustive counts, backtrack intersections with set intersections,
//! and the normal-subgroup catalog with a from-scratch enumeration. Each
//! comparison is recorded individually so the CLI and the test suite share
//! one code path.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bn::{BnContext, BnError};
use crate::families::{thm12_candidate, FamilyError};
use crate::group::{GroupError, PermutationGroup, BRUTE_FORCE_CAP};
use crate::perm::Permutation;

/// Seed used when the caller does not supply one; fixed so oracle runs are
/// reproducible.
pub const DEFAULT_ORACLE_SEED: u64 = 0x5eed;

/// How many random subgroups the order oracle draws.
pub const RANDOM_SUBGROUPS: usize = 20;

/// How many subgroup pairs the intersection oracle checks.
pub const INTERSECTION_PAIRS: usize = 20;

/// Errors from running the oracle suite.
#[derive(Debug, Error)]
pub enum OracleError {
    #[error("brute-force oracles need |B_n| ≤ {cap}, but |B_{n}| = {order}")]
    TooLarge { n: usize, order: u128, cap: usize },
    #[error(transparent)]
    Bn(#[from] BnError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// One oracle comparison: a fast-path value against its brute-force twin.
#[derive(Clone, Debug)]
pub struct OracleComparison {
    pub name: String,
    pub matches: bool,
    pub detail: String,
}

pub fn all_match(comparisons: &[OracleComparison]) -> bool {
    comparisons.iter().all(|c| c.matches)
}

/// Runs the full suite over `B_n`. The group itself must be small enough
/// to enumerate; random draws are reproducible from the seed.
pub fn run_oracle_suite(n: usize, seed: u64) -> Result<Vec<OracleComparison>, OracleError> {
    let ctx = BnContext::new(n)?;
    let ambient_order = ctx.group().order();
    if ambient_order > BRUTE_FORCE_CAP as u128 {
        return Err(OracleError::TooLarge {
            n,
            order: ambient_order,
            cap: BRUTE_FORCE_CAP,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();

    let mut random_groups = Vec::new();
    for i in 0..RANDOM_SUBGROUPS {
        let gens: Vec<Permutation> = (0..(i % 3) + 1)
            .map(|_| ctx.group().random_element(&mut rng))
            .collect();
        let sub = PermutationGroup::from_generators(ctx.degree(), gens)?;
        let count = sub.elements(BRUTE_FORCE_CAP)?.len() as u128;
        out.push(OracleComparison {
            name: format!("random-subgroup-{i:02}-order"),
            matches: sub.order() == count,
            detail: format!("chain order {} vs enumerated count {count}", sub.order()),
        });
        random_groups.push(sub);
    }

    if n % 2 == 1 {
        let candidate = thm12_candidate(n)?;
        for mask in 1u32..16 {
            let indices: Vec<usize> = (1..=4).filter(|i| mask >> (i - 1) & 1 == 1).collect();
            let gens: Vec<Permutation> = indices
                .iter()
                .map(|&i| candidate.generators[i - 1].clone())
                .collect();
            let sub = PermutationGroup::from_generators(ctx.degree(), gens)?;
            let count = sub.elements(BRUTE_FORCE_CAP)?.len() as u128;
            let set = indices
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(",");
            out.push(OracleComparison {
                name: format!("thm12-parabolic-{{{set}}}-order"),
                matches: sub.order() == count,
                detail: format!("chain order {} vs enumerated count {count}", sub.order()),
            });
        }
    }

    for i in 0..INTERSECTION_PAIRS {
        let a = &random_groups[i % random_groups.len()];
        let b = &random_groups[(i * 7 + 3) % random_groups.len()];
        let fast = a.intersection_backtrack(b)?;
        let slow = a.intersection_elements_bruteforce(b, BRUTE_FORCE_CAP)?;
        let matches =
            fast.order() == slow.len() as u128 && slow.iter().all(|e| fast.contains(e));
        out.push(OracleComparison {
            name: format!("intersection-pair-{i:02}"),
            matches,
            detail: format!(
                "backtrack order {} vs set-intersection count {}",
                fast.order(),
                slow.len()
            ),
        });
    }

    let catalog = ctx.normal_subgroup_catalog();
    let all_normal = ctx.group().normal_subgroups_bruteforce()?;
    let proper: Vec<&PermutationGroup> = all_normal
        .iter()
        .filter(|g| g.order() > 1 && g.order() < ambient_order)
        .collect();
    let every_entry_found = catalog
        .iter()
        .all(|entry| proper.iter().any(|g| g.equals(&entry.group)));
    let every_subgroup_listed = proper
        .iter()
        .all(|g| catalog.iter().any(|entry| entry.group.equals(g)));
    out.push(OracleComparison {
        name: "normal-subgroup-catalog".to_owned(),
        matches: proper.len() == catalog.len() && every_entry_found && every_subgroup_listed,
        detail: format!(
            "{} proper nontrivial normal subgroups enumerated vs {} catalog entries",
            proper.len(),
            catalog.len()
        ),
    });

    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn the_suite_passes_at_n5() {
        let comparisons = run_oracle_suite(5, DEFAULT_ORACLE_SEED).unwrap();
        assert!(comparisons.len() >= RANDOM_SUBGROUPS + 15 + INTERSECTION_PAIRS + 1);
        for c in &comparisons {
            assert!(c.matches, "{} failed: {}", c.name, c.detail);
        }
        let catalog = comparisons.last().unwrap();
        assert_eq!(catalog.name, "normal-subgroup-catalog");
        assert!(catalog.detail.contains("7 proper nontrivial"));
    }

    #[test]
    fn seeds_are_reproducible() {
        let a = run_oracle_suite(5, 42).unwrap();
        let b = run_oracle_suite(5, 42).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.name, y.name);
            assert_eq!(x.detail, y.detail);
        }
    }

    #[test]
    fn oversized_groups_are_refused() {
        assert!(matches!(
            run_oracle_suite(7, DEFAULT_ORACLE_SEED),
            Err(OracleError::TooLarge { n: 7, .. })
        ));
    }
}

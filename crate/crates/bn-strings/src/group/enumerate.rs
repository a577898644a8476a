//! Brute-force enumeration: element closures, conjugacy classes, and the
//! normal subgroup lattice of a small group. Everything here works on
//! explicit element lists and is deliberately independent of the stabilizer
//! chain, so that chain-based results can be checked against it.

use std::collections::{HashMap, HashSet};

use crate::perm::Permutation;

use super::{GroupError, PermutationGroup};

/// Breadth-first closure of a generator list. Elements come out in
/// discovery order starting from the identity; errors once more than `cap`
/// elements are found.
pub(super) fn closure_elements(
    degree: usize,
    generators: &[Permutation],
    cap: usize,
) -> Result<Vec<Permutation>, GroupError> {
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut order: Vec<Permutation> = Vec::new();
    let identity = Permutation::identity(degree);
    seen.insert(identity.clone());
    order.push(identity);
    let mut head = 0;
    while head < order.len() {
        let current = order[head].clone();
        head += 1;
        for g in generators {
            let next = current.compose(g);
            if seen.insert(next.clone()) {
                if order.len() >= cap {
                    return Err(GroupError::CapExceeded(cap));
                }
                order.push(next);
            }
        }
    }
    Ok(order)
}

/// Conjugacy classes of the group, as sorted element lists. Classes are
/// ordered by their least element. Each class is closed by repeatedly
/// conjugating with the generators, which suffices because the generators
/// generate.
pub(super) fn conjugacy_classes(group: &PermutationGroup, cap: usize) -> Result<Vec<Vec<Permutation>>, GroupError> {
    let elements = group.elements(cap)?;
    let mut sorted = elements;
    sorted.sort_unstable();
    let mut assigned: HashSet<Permutation> = HashSet::new();
    let mut classes = Vec::new();
    for e in &sorted {
        if assigned.contains(e) {
            continue;
        }
        let mut class = vec![e.clone()];
        let mut class_set: HashSet<Permutation> = class.iter().cloned().collect();
        let mut head = 0;
        while head < class.len() {
            let current = class[head].clone();
            head += 1;
            for g in group.generators() {
                let c = current.conjugate(g);
                if class_set.insert(c.clone()) {
                    class.push(c);
                }
            }
        }
        class.sort_unstable();
        for x in &class {
            assigned.insert(x.clone());
        }
        classes.push(class);
    }
    Ok(classes)
}

/// Replaces an element list's worth of generators by a short generating
/// set: each element is sifted against a growing chain and kept only when
/// it is new. The resulting set has at most `log2(order)` members.
fn reduce_generators(degree: usize, elements: &[Permutation]) -> Vec<Permutation> {
    let mut gens: Vec<Permutation> = Vec::new();
    let mut chain = super::chain::StabilizerChain::build(degree, &gens);
    for e in elements {
        if !e.is_identity() && !chain.contains(e) {
            gens.push(e.clone());
            chain = super::chain::StabilizerChain::build(degree, &gens);
        }
    }
    gens
}

/// All normal subgroups of `group`, the trivial group and the whole group
/// included, sorted by order with ties broken by the sorted element lists.
///
/// The atoms are the normal closures of single conjugacy classes; the full
/// lattice is the closure of the atoms under joins. Membership structures
/// here are plain element sets, so the outcome is independent of every
/// chain-based code path.
pub(super) fn normal_subgroups(
    group: &PermutationGroup,
    cap: usize,
) -> Result<Vec<PermutationGroup>, GroupError> {
    let degree = group.degree();
    let classes = conjugacy_classes(group, cap)?;

    // Element sets of the atomic normal subgroups, one per nontrivial class.
    let mut atom_sets: Vec<Vec<Permutation>> = Vec::new();
    for class in &classes {
        if class.len() == 1 && class[0].is_identity() {
            continue;
        }
        let gens = reduce_generators(degree, class);
        let mut elems = closure_elements(degree, &gens, cap)?;
        elems.sort_unstable();
        atom_sets.push(elems);
    }

    let mut known: HashMap<Vec<Permutation>, Vec<Permutation>> = HashMap::new();
    let trivial = vec![Permutation::identity(degree)];
    known.insert(trivial.clone(), Vec::new());

    // Close under joins: union the generator-reduced sets and re-close.
    let mut worklist: Vec<Vec<Permutation>> = vec![trivial];
    for atom in &atom_sets {
        if !known.contains_key(atom) {
            known.insert(atom.clone(), reduce_generators(degree, atom));
            worklist.push(atom.clone());
        }
    }
    let mut head = 0;
    while head < worklist.len() {
        let current = worklist[head].clone();
        head += 1;
        for atom in &atom_sets {
            if atom.iter().all(|a| current.binary_search(a).is_ok()) {
                continue;
            }
            let mut gens = known[&current].clone();
            gens.extend(reduce_generators(degree, atom));
            let mut joined = closure_elements(degree, &gens, cap)?;
            joined.sort_unstable();
            if !known.contains_key(&joined) {
                known.insert(joined.clone(), reduce_generators(degree, &joined));
                worklist.push(joined);
            }
        }
    }

    let mut keyed: Vec<Vec<Permutation>> = known.keys().cloned().collect();
    keyed.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    keyed
        .into_iter()
        .map(|elems| {
            let gens = known.remove(&elems).expect("every key is present once");
            PermutationGroup::from_generators(degree, gens)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(text: &str, degree: usize) -> Permutation {
        Permutation::parse_cycles(text, degree).unwrap()
    }

    #[test]
    fn closure_of_a_single_cycle() {
        let elems = closure_elements(5, &[perm("(1,2,3,4,5)", 5)], 100).unwrap();
        assert_eq!(elems.len(), 5);
        assert_eq!(elems[0], Permutation::identity(5));
    }

    #[test]
    fn conjugacy_classes_of_sym3() {
        let g = PermutationGroup::from_generators(3, vec![perm("(1,2)", 3), perm("(2,3)", 3)])
            .unwrap();
        let classes = conjugacy_classes(&g, 100).unwrap();
        let sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
    }

    #[test]
    fn reduced_generators_still_generate() {
        let g = PermutationGroup::from_generators(4, vec![perm("(1,2)", 4), perm("(2,3)", 4), perm("(3,4)", 4)])
            .unwrap();
        let elems = g.elements(100).unwrap();
        let gens = reduce_generators(4, &elems);
        assert!(gens.len() <= 5);
        let rebuilt = PermutationGroup::from_generators(4, gens).unwrap();
        assert_eq!(rebuilt.order(), 24);
    }

    #[test]
    fn normal_subgroups_of_alt4() {
        let a4 = PermutationGroup::from_generators(
            4,
            vec![perm("(1,2,3)", 4), perm("(2,3,4)", 4)],
        )
        .unwrap();
        let subs = normal_subgroups(&a4, 1000).unwrap();
        let orders: Vec<u128> = subs.iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![1, 4, 12]);
    }

    #[test]
    fn normal_subgroups_of_a_cyclic_group() {
        let c6 = PermutationGroup::from_generators(6, vec![perm("(1,2,3,4,5,6)", 6)]).unwrap();
        let subs = normal_subgroups(&c6, 100).unwrap();
        let orders: Vec<u128> = subs.iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![1, 2, 3, 6]);
    }
}

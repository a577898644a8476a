//! Backtrack searches over a stabilizer chain: subgroup intersection and
//! centralizers. Both walk the chain of one group depth-first, choosing an
//! image for one base point per level, and prune with problem-specific
//! constraints plus the growing result subgroup `K` (a branch whose image
//! is not minimal in its `K`-orbit only reproduces cosets already found).

use crate::perm::Permutation;

use super::chain::StabilizerChain;
use super::PermutationGroup;

/// The result subgroup found so far. Its chain shares the searched chain's
/// base, level by level, so level `i` is the pointwise stabilizer of the
/// first `i` base points.
struct Growing {
    degree: usize,
    hint: Vec<usize>,
    gens: Vec<Permutation>,
    chain: StabilizerChain,
}

impl Growing {
    fn new(degree: usize, hint: Vec<usize>) -> Self {
        let chain = StabilizerChain::build_with_base_hint(degree, &[], &hint);
        Growing {
            degree,
            hint,
            gens: Vec::new(),
            chain,
        }
    }

    fn contains(&self, p: &Permutation) -> bool {
        self.chain.contains(p)
    }

    fn add(&mut self, p: Permutation) {
        self.gens.push(p);
        self.chain = StabilizerChain::build_with_base_hint(self.degree, &self.gens, &self.hint);
    }

    /// Smallest point in the orbit of `point` under the generators of chain
    /// level `depth` (the stabilizer of the base prefix).
    fn level_orbit_min(&self, depth: usize, point: usize) -> usize {
        let levels = self.chain.levels();
        if depth >= levels.len() {
            return point;
        }
        let gens = &levels[depth].gens;
        let mut seen = vec![false; self.degree + 1];
        let mut queue = vec![point];
        seen[point] = true;
        let mut min = point;
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for g in gens {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    min = min.min(y);
                    queue.push(y);
                }
            }
        }
        min
    }
}

/// Intersection of two permutation groups of the same degree by backtrack
/// search over the smaller group's chain, pruned level by level through a
/// chain of the other group rebuilt on the same base.
pub(super) fn intersection_backtrack(
    a: &PermutationGroup,
    b: &PermutationGroup,
) -> PermutationGroup {
    let degree = a.degree();
    let (top, other) = if a.order() <= b.order() { (a, b) } else { (b, a) };
    let top_chain = top.chain();
    let base = top_chain.base();
    let other_chain = StabilizerChain::build_with_base_hint(degree, other.generators(), &base);

    let mut k = Growing::new(degree, base);
    for g in top.generators() {
        if other_chain.contains(g) && !k.contains(g) {
            k.add(g.clone());
        }
    }

    let identity = Permutation::identity(degree);
    dfs_intersect(0, &identity, &identity, top_chain, &other_chain, &mut k);

    PermutationGroup::from_generators(degree, k.gens)
        .expect("intersection generators share the ambient degree")
}

/// `partial` is the product of the representatives chosen so far (deepest
/// first), and `shifted` is `partial` pushed through the inverses of the
/// other chain's representatives, so that the other chain's feasibility
/// check at each level is a single point lookup.
fn dfs_intersect(
    depth: usize,
    partial: &Permutation,
    shifted: &Permutation,
    top: &StabilizerChain,
    other: &StabilizerChain,
    k: &mut Growing,
) {
    let levels = top.levels();
    if depth == levels.len() {
        let (residue, _) = other.strip_from(depth, shifted.clone());
        if residue.is_identity() && !partial.is_identity() && !k.contains(partial) {
            k.add(partial.clone());
        }
        return;
    }

    let level = &levels[depth];
    let on_spine = partial.is_identity();
    let mut points = level.orbit.clone();
    points.sort_unstable();
    for x in points {
        let y = partial.apply(x);
        if on_spine && k.level_orbit_min(depth, y) < y {
            continue;
        }
        let y_shifted = shifted.apply(x);
        let other_level = &other.levels()[depth];
        let Some(v) = other_level.reps[y_shifted].as_ref() else {
            continue;
        };
        let u = level.reps[x].as_ref().expect("orbit representative");
        let next_partial = u.compose(partial);
        let next_shifted = u.compose(shifted).compose(&v.inverse());
        dfs_intersect(depth + 1, &next_partial, &next_shifted, top, other, k);
    }
}

/// Elements of `group` commuting with every permutation in `constraints`,
/// found by backtrack search with forced-image propagation: once a point's
/// image is decided, commutation forces the image of its translates under
/// each constraint, and any clash prunes the branch.
pub(super) fn centralizer_of_set(
    group: &PermutationGroup,
    constraints: &[Permutation],
) -> PermutationGroup {
    let degree = group.degree();
    let zs: Vec<&Permutation> = constraints.iter().filter(|z| !z.is_identity()).collect();
    if zs.is_empty() {
        return group.clone();
    }
    let chain = group.chain();
    let base = chain.base();
    let mut k = Growing::new(degree, base);
    for g in group.generators() {
        if zs.iter().all(|z| g.commutes_with(z)) && !k.contains(g) {
            k.add(g.clone());
        }
    }

    let mut state = Assignment {
        img: vec![0; degree + 1],
        pre: vec![0; degree + 1],
        trail: Vec::new(),
    };
    let identity = Permutation::identity(degree);
    dfs_centralize(0, &identity, chain, &zs, &mut state, &mut k);

    PermutationGroup::from_generators(degree, k.gens)
        .expect("centralizer generators share the ambient degree")
}

/// Partial bijection on points, with a trail for undoing on backtrack.
struct Assignment {
    img: Vec<usize>,
    pre: Vec<usize>,
    trail: Vec<usize>,
}

impl Assignment {
    /// Records `u -> v` and everything it forces; `false` means a clash.
    fn assign(&mut self, u: usize, v: usize, zs: &[&Permutation]) -> bool {
        let mut queue = vec![(u, v)];
        while let Some((u, v)) = queue.pop() {
            if self.img[u] == v {
                continue;
            }
            if self.img[u] != 0 || (self.pre[v] != 0 && self.pre[v] != u) {
                return false;
            }
            self.img[u] = v;
            self.pre[v] = u;
            self.trail.push(u);
            for z in zs {
                queue.push((z.apply(u), z.apply(v)));
            }
        }
        true
    }

    fn rewind(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let u = self.trail.pop().expect("trail entry");
            let v = self.img[u];
            self.img[u] = 0;
            self.pre[v] = 0;
        }
    }
}

fn dfs_centralize(
    depth: usize,
    partial: &Permutation,
    chain: &StabilizerChain,
    zs: &[&Permutation],
    state: &mut Assignment,
    k: &mut Growing,
) {
    let levels = chain.levels();
    if depth == levels.len() {
        if !partial.is_identity()
            && zs.iter().all(|z| partial.commutes_with(z))
            && !k.contains(partial)
        {
            k.add(partial.clone());
        }
        return;
    }

    let level = &levels[depth];
    let on_spine = partial.is_identity();
    let forced = state.img[level.base];
    let mut points = level.orbit.clone();
    points.sort_unstable();
    for x in points {
        let y = partial.apply(x);
        if forced != 0 && y != forced {
            continue;
        }
        if state.pre[y] != 0 && state.pre[y] != level.base {
            continue;
        }
        if on_spine && k.level_orbit_min(depth, y) < y {
            continue;
        }
        let mark = state.trail.len();
        if state.assign(level.base, y, zs) {
            let u = level.reps[x].as_ref().expect("orbit representative");
            let next_partial = u.compose(partial);
            dfs_centralize(depth + 1, &next_partial, chain, zs, state, k);
        }
        state.rewind(mark);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn perm(text: &str, degree: usize) -> Permutation {
        Permutation::parse_cycles(text, degree).unwrap()
    }

    fn group(degree: usize, gens: &[&str]) -> PermutationGroup {
        let gens: Vec<Permutation> = gens.iter().map(|g| perm(g, degree)).collect();
        PermutationGroup::from_generators(degree, gens).unwrap()
    }

    fn assert_matches_bruteforce(a: &PermutationGroup, b: &PermutationGroup) {
        let meet = intersection_backtrack(a, b);
        let expected = a.intersection_elements_bruteforce(b, 100_000).unwrap();
        assert_eq!(meet.order(), expected.len() as u128);
        for e in &expected {
            assert!(meet.contains(e));
        }
    }

    #[test]
    fn intersection_of_point_stabilizers() {
        // Stab(1) ∩ Stab(2) in Sym(5) is Sym({3,4,5}).
        let a = group(5, &["(2,3)", "(3,4)", "(4,5)"]);
        let b = group(5, &["(1,3)", "(3,4)", "(4,5)"]);
        let meet = intersection_backtrack(&a, &b);
        assert_eq!(meet.order(), 6);
        assert_matches_bruteforce(&a, &b);
    }

    #[test]
    fn intersection_can_be_trivial() {
        let a = group(6, &["(1,2,3)"]);
        let b = group(6, &["(4,5,6)"]);
        let meet = intersection_backtrack(&a, &b);
        assert_eq!(meet.order(), 1);
    }

    #[test]
    fn intersection_of_alternating_and_dihedral() {
        let a5 = group(5, &["(1,2,3)", "(3,4,5)"]);
        let d10 = group(5, &["(1,2,3,4,5)", "(2,5)(3,4)"]);
        let meet = intersection_backtrack(&a5, &d10);
        assert_eq!(meet.order(), 10);
        assert_matches_bruteforce(&a5, &d10);
    }

    #[test]
    fn random_intersections_match_bruteforce() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let sym7 = group(7, &["(1,2)", "(1,2,3,4,5,6,7)"]);
        for _ in 0..12 {
            let a = PermutationGroup::from_generators(
                7,
                vec![sym7.random_element(&mut rng), sym7.random_element(&mut rng)],
            )
            .unwrap();
            let b = PermutationGroup::from_generators(
                7,
                vec![sym7.random_element(&mut rng), sym7.random_element(&mut rng)],
            )
            .unwrap();
            assert_matches_bruteforce(&a, &b);
        }
    }

    #[test]
    fn centralizer_of_a_transposition_in_sym4() {
        let s4 = group(4, &["(1,2)", "(2,3)", "(3,4)"]);
        let c = centralizer_of_set(&s4, &[perm("(1,2)", 4)]);
        assert_eq!(c.order(), 4);
        assert!(c.contains(&perm("(1,2)", 4)));
        assert!(c.contains(&perm("(3,4)", 4)));
    }

    #[test]
    fn centralizer_of_all_generators_is_the_center() {
        let d8 = group(4, &["(1,2,3,4)", "(1,3)"]);
        let z = centralizer_of_set(&d8, d8.generators());
        assert_eq!(z.order(), 2);
        assert!(z.contains(&perm("(1,3)(2,4)", 4)));

        let s5 = group(5, &["(1,2)", "(1,2,3,4,5)"]);
        let z = centralizer_of_set(&s5, s5.generators());
        assert_eq!(z.order(), 1);
    }

    #[test]
    fn centralizer_agrees_with_bruteforce() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let s6 = group(6, &["(1,2)", "(1,2,3,4,5,6)"]);
        for _ in 0..8 {
            let z = s6.random_element(&mut rng);
            let c = centralizer_of_set(&s6, std::slice::from_ref(&z));
            let expected: Vec<Permutation> = s6
                .elements(1000)
                .unwrap()
                .into_iter()
                .filter(|e| e.commutes_with(&z))
                .collect();
            assert_eq!(c.order(), expected.len() as u128);
            for e in &expected {
                assert!(c.contains(e));
            }
        }
    }
}

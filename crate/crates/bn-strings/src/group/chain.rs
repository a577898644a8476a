//! Deterministic stabilizer chains (Schreier–Sims).
//!
//! A chain fixes a sequence of base points; level `i` holds the strong
//! generators fixing the first `i` base points together with the orbit and
//! transversal of base point `i` under them. Base points are chosen
//! deterministically: prescribed hint points first (in order), then always
//! the smallest point moved by the offending element, and orbits are grown
//! breadth-first with generators applied in list order, so two builds from
//! the same input produce identical chains.

use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    /// 1-based base point of this level.
    pub base: usize,
    /// Strong generators fixing the base points of all earlier levels.
    pub gens: Vec<Permutation>,
    /// Orbit of `base` under `gens`, in breadth-first discovery order;
    /// `orbit[0] == base`.
    pub orbit: Vec<usize>,
    /// `reps[x]` maps `base` to `x`; indexed by 1-based point.
    pub reps: Vec<Option<Permutation>>,
}

impl Level {
    fn new(degree: usize, base: usize) -> Self {
        Level {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            reps: vec![None; degree + 1],
        }
    }

    fn recompute_orbit(&mut self, degree: usize) {
        self.orbit.clear();
        self.reps = vec![None; degree + 1];
        self.orbit.push(self.base);
        self.reps[self.base] = Some(Permutation::identity(degree));
        let mut head = 0;
        while head < self.orbit.len() {
            let x = self.orbit[head];
            head += 1;
            let rep_x = self.reps[x].clone().expect("orbit point has a representative");
            for g in &self.gens {
                let y = g.apply(x);
                if self.reps[y].is_none() {
                    self.reps[y] = Some(rep_x.compose(g));
                    self.orbit.push(y);
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    pub fn build(degree: usize, generators: &[Permutation]) -> Self {
        Self::build_with_base_hint(degree, generators, &[])
    }

    /// Builds a chain whose base starts with the given points in the given
    /// order (duplicates ignored), extended as needed. Hint points that no
    /// generator moves still get a (trivial) level, which keeps two chains
    /// with a shared hint aligned level by level.
    pub fn build_with_base_hint(
        degree: usize,
        generators: &[Permutation],
        hint: &[usize],
    ) -> Self {
        let gens: Vec<Permutation> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        for g in &gens {
            assert_eq!(g.degree(), degree, "generator degree mismatch");
        }

        let mut chain = StabilizerChain {
            degree,
            levels: Vec::new(),
        };
        for &b in hint {
            assert!(b >= 1 && b <= degree, "hint point out of range");
            if !chain.levels.iter().any(|lvl| lvl.base == b) {
                chain.levels.push(Level::new(degree, b));
            }
        }
        // Every generator must move some base point.
        for g in &gens {
            if chain
                .levels
                .iter()
                .all(|lvl| g.apply(lvl.base) == lvl.base)
            {
                let b = g.smallest_moved_point().expect("non-identity generator");
                chain.levels.push(Level::new(degree, b));
            }
        }
        // Level l holds the generators fixing the bases of levels 0..l.
        for g in &gens {
            chain.distribute_generator(g.clone());
        }
        for lvl in &mut chain.levels {
            lvl.recompute_orbit(degree);
        }

        chain.schreier_sims();
        chain
    }

    /// Adds `g` to every level whose base-point prefix it fixes.
    fn distribute_generator(&mut self, g: Permutation) {
        for l in 0..self.levels.len() {
            let fixes_prefix = self.levels[..l]
                .iter()
                .all(|lvl| g.apply(lvl.base) == lvl.base);
            if fixes_prefix {
                self.levels[l].gens.push(g.clone());
            } else {
                break;
            }
        }
    }

    fn schreier_sims(&mut self) {
        if self.levels.is_empty() {
            return;
        }
        let degree = self.degree;
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let level_idx = i as usize;
            self.levels[level_idx].recompute_orbit(degree);

            let mut new_gen: Option<(Permutation, usize)> = None;
            'scan: for oi in 0..self.levels[level_idx].orbit.len() {
                let x = self.levels[level_idx].orbit[oi];
                let rep_x = self.levels[level_idx].reps[x]
                    .clone()
                    .expect("orbit point has a representative");
                for si in 0..self.levels[level_idx].gens.len() {
                    let s = self.levels[level_idx].gens[si].clone();
                    let y = s.apply(x);
                    let rep_y = self.levels[level_idx].reps[y]
                        .clone()
                        .expect("orbit is closed under generators");
                    let schreier = rep_x.compose(&s).compose(&rep_y.inverse());
                    if schreier.is_identity() {
                        continue;
                    }
                    let (residue, j) = self.strip_from(level_idx + 1, schreier);
                    if residue.is_identity() {
                        continue;
                    }
                    new_gen = Some((residue, j));
                    break 'scan;
                }
            }

            match new_gen {
                None => i -= 1,
                Some((residue, j)) => {
                    if j == self.levels.len() {
                        let b = residue
                            .smallest_moved_point()
                            .expect("non-identity residue");
                        self.levels.push(Level::new(degree, b));
                    }
                    for l in level_idx + 1..=j {
                        self.levels[l].gens.push(residue.clone());
                        self.levels[l].recompute_orbit(degree);
                    }
                    i = j as isize;
                }
            }
        }
    }

    /// Strips `p` through the levels starting at `start`. Returns the
    /// residue and the number of levels passed plus `start`; the residue is
    /// the identity exactly when `p` lies in the group of level `start`.
    pub fn strip_from(&self, start: usize, mut p: Permutation) -> (Permutation, usize) {
        for l in start..self.levels.len() {
            let x = p.apply(self.levels[l].base);
            match &self.levels[l].reps[x] {
                None => return (p, l),
                Some(rep) => p = p.compose(&rep.inverse()),
            }
        }
        let end = self.levels.len();
        (p, end)
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        assert_eq!(p.degree(), self.degree, "degree mismatch");
        let (residue, _) = self.strip_from(0, p.clone());
        residue.is_identity()
    }

    pub fn order(&self) -> u128 {
        self.levels
            .iter()
            .map(|lvl| lvl.orbit.len() as u128)
            .product()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|lvl| lvl.base).collect()
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// Iterates over all group elements, deterministically. Elements come
    /// out as products of one transversal representative per level, so no
    /// element set is ever materialized.
    pub fn iter_elements(&self) -> ChainElements<'_> {
        ChainElements::new(self)
    }

    /// Uniformly random element: one uniformly random transversal
    /// representative per level.
    pub fn random_element<R: rand::Rng>(&self, rng: &mut R) -> Permutation {
        let mut result = Permutation::identity(self.degree);
        for lvl in self.levels.iter().rev() {
            let x = lvl.orbit[rng.gen_range(0..lvl.orbit.len())];
            let rep = lvl.reps[x].as_ref().expect("orbit representative");
            result = result.compose(rep);
        }
        result
    }
}

/// Deterministic iterator over the elements of a stabilizer chain.
///
/// An element of the group factors uniquely as `t_k * ... * t_1` with `t_i`
/// a transversal representative of level `i` (applied deepest level first);
/// the iterator walks these products odometer-style with the first level
/// moving fastest.
pub(crate) struct ChainElements<'a> {
    chain: &'a StabilizerChain,
    indices: Vec<usize>,
    /// `partials[l]` is the product of the chosen representatives of levels
    /// `l..k` (the suffix product); the current element is `partials[0]`.
    partials: Vec<Permutation>,
    done: bool,
}

impl<'a> ChainElements<'a> {
    fn new(chain: &'a StabilizerChain) -> Self {
        let k = chain.levels.len();
        let mut it = ChainElements {
            chain,
            indices: vec![0; k],
            partials: vec![Permutation::identity(chain.degree); k],
            done: false,
        };
        it.recompute_partials_from(k);
        it
    }

    /// Recomputes `partials[0..from]` downward after the indices at or above
    /// `from` changed (`from == k` rebuilds everything).
    fn recompute_partials_from(&mut self, from: usize) {
        let k = self.chain.levels.len();
        let mut l = from.min(k);
        while l > 0 {
            l -= 1;
            let lvl = &self.chain.levels[l];
            let x = lvl.orbit[self.indices[l]];
            let rep = lvl.reps[x].as_ref().expect("orbit representative");
            let suffix = if l + 1 < k {
                self.partials[l + 1].clone()
            } else {
                Permutation::identity(self.chain.degree)
            };
            self.partials[l] = suffix.compose(rep);
        }
    }
}

impl<'a> Iterator for ChainElements<'a> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let k = self.chain.levels.len();
        let current = if k == 0 {
            Permutation::identity(self.chain.degree)
        } else {
            self.partials[0].clone()
        };
        // Advance the odometer, lowest level fastest.
        let mut l = 0;
        loop {
            if l == k {
                self.done = true;
                break;
            }
            self.indices[l] += 1;
            if self.indices[l] < self.chain.levels[l].orbit.len() {
                self.recompute_partials_from(l + 1);
                break;
            }
            self.indices[l] = 0;
            l += 1;
        }
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn perm(text: &str, degree: usize) -> Permutation {
        Permutation::parse_cycles(text, degree).unwrap()
    }

    #[test]
    fn symmetric_group_order() {
        for n in 2..=8usize {
            let gens: Vec<Permutation> = (1..n)
                .map(|i| Permutation::transposition(n, i, i + 1))
                .collect();
            let chain = StabilizerChain::build(n, &gens);
            let expected: u128 = (1..=n as u128).product();
            assert_eq!(chain.order(), expected, "Sym({n})");
        }
    }

    #[test]
    fn trivial_group() {
        let chain = StabilizerChain::build(5, &[]);
        assert_eq!(chain.order(), 1);
        assert!(chain.contains(&Permutation::identity(5)));
        assert!(!chain.contains(&perm("(1,2)", 5)));
        assert_eq!(chain.iter_elements().count(), 1);
    }

    #[test]
    fn membership_in_alternating_group() {
        // A_5 generated by two 3-cycles.
        let gens = vec![perm("(1,2,3)", 5), perm("(3,4,5)", 5)];
        let chain = StabilizerChain::build(5, &gens);
        assert_eq!(chain.order(), 60);
        assert!(chain.contains(&perm("(1,2)(3,4)", 5)));
        assert!(!chain.contains(&perm("(1,2)", 5)));
    }

    #[test]
    fn iterator_yields_each_element_once() {
        let gens = vec![perm("(1,2,3,4)", 4), perm("(1,2)", 4)];
        let chain = StabilizerChain::build(4, &gens);
        assert_eq!(chain.order(), 24);
        let elems: Vec<Permutation> = chain.iter_elements().collect();
        assert_eq!(elems.len(), 24);
        let set: HashSet<_> = elems.iter().cloned().collect();
        assert_eq!(set.len(), 24);
        for e in &elems {
            assert!(chain.contains(e));
        }
    }

    #[test]
    fn base_hint_is_respected() {
        let gens = vec![perm("(1,2,3,4)", 4), perm("(1,2)", 4)];
        let chain = StabilizerChain::build_with_base_hint(4, &gens, &[3, 1]);
        let base = chain.base();
        assert!(base.len() >= 2);
        assert_eq!(&base[..2], &[3, 1]);
        assert_eq!(chain.order(), 24);
    }

    #[test]
    fn hint_points_fixed_by_the_group_get_trivial_levels() {
        let gens = vec![perm("(2,3)", 5)];
        let chain = StabilizerChain::build_with_base_hint(5, &gens, &[1, 2]);
        assert_eq!(chain.order(), 2);
        assert_eq!(chain.levels()[0].orbit, vec![1]);
    }

    #[test]
    fn deterministic_construction() {
        let gens = vec![perm("(1,2,3)", 6), perm("(4,5,6)", 6), perm("(1,4)(2,5)(3,6)", 6)];
        let a = StabilizerChain::build(6, &gens);
        let b = StabilizerChain::build(6, &gens);
        assert_eq!(a.base(), b.base());
        let ea: Vec<Permutation> = a.iter_elements().collect();
        let eb: Vec<Permutation> = b.iter_elements().collect();
        assert_eq!(ea, eb);
    }
}

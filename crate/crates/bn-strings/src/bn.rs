//! The hyperoctahedral group `B_n` realized inside `Sym(2n)`: the standard
//! generators, the block structure `{i, n+i}`, sign characters and their
//! kernels, the central involution, the normal 2-subgroups `M_1`/`M_2`, and
//! the catalog of proper nontrivial normal subgroups used by the unravelled
//! decision.

use std::fmt;

use thiserror::Error;

use crate::group::{GroupError, PermutationGroup, Z2Character};
use crate::perm::Permutation;

/// Errors from `B_n`-specific computations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum BnError {
    #[error("n must be at least {min}, got {n}")]
    UnsupportedN { n: usize, min: usize },
    #[error("permutation does not map blocks to blocks (point {point} and its partner land in different blocks)")]
    NotBlockPreserving { point: usize },
}

/// `|B_n| = 2^n * n!`.
pub fn bn_order(n: usize) -> u128 {
    let factorial: u128 = (1..=n as u128).product();
    factorial << n
}

/// `B_n` as a concrete subgroup of `Sym(2n)`, generated by
/// `b_0 = (1, n+1)` and `b_i = (i, i+1)(n+i, n+i+1)` for `1 <= i < n`,
/// acting on the blocks `{i, n+i}`.
#[derive(Debug)]
pub struct BnContext {
    n: usize,
    degree: usize,
    betas: Vec<Permutation>,
    group: PermutationGroup,
}

impl BnContext {
    /// Builds the context and verifies the structural facts everything else
    /// leans on: the group order is `2^n * n!`, and the block transposition
    /// `eta_i = (i, n+i)` equals `b_0` conjugated by `b_1 b_2 .. b_{i-1}`.
    pub fn new(n: usize) -> Result<Self, BnError> {
        if n < 2 {
            return Err(BnError::UnsupportedN { n, min: 2 });
        }
        let degree = 2 * n;
        let mut betas = Vec::with_capacity(n);
        betas.push(Permutation::transposition(degree, 1, n + 1));
        for i in 1..n {
            betas.push(
                Permutation::from_cycles(degree, &[&[i, i + 1], &[n + i, n + i + 1]])
                    .expect("beta cycles are disjoint and in range"),
            );
        }
        let group = PermutationGroup::from_generators(degree, betas.clone())
            .expect("generators share the degree");
        assert_eq!(group.order(), bn_order(n), "order of <betas> is 2^n * n!");

        let ctx = BnContext {
            n,
            degree,
            betas,
            group,
        };
        for i in 1..=n {
            let word = Permutation::product(degree, &ctx.betas[1..i]);
            assert_eq!(
                ctx.eta(i),
                ctx.beta(0).conjugate(&word),
                "eta_{i} is beta_0 conjugated along the string"
            );
        }
        Ok(ctx)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Degree of the ambient symmetric group, `2n`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Generator `b_i`, `0 <= i < n`.
    pub fn beta(&self, i: usize) -> &Permutation {
        &self.betas[i]
    }

    pub fn betas(&self) -> &[Permutation] {
        &self.betas
    }

    /// The full group `<b_0, .., b_{n-1}>`.
    pub fn group(&self) -> &PermutationGroup {
        &self.group
    }

    /// The block transposition `(i, n+i)`, `1 <= i <= n`.
    pub fn eta(&self, i: usize) -> Permutation {
        assert!(i >= 1 && i <= self.n, "eta index {i} outside 1..={}", self.n);
        Permutation::transposition(self.degree, i, self.n + i)
    }

    /// The central involution `(1,n+1)(2,n+2)..(n,2n)`.
    pub fn omega0(&self) -> Permutation {
        let etas: Vec<Permutation> = (1..=self.n).map(|i| self.eta(i)).collect();
        Permutation::product(self.degree, &etas)
    }

    /// The permutation of `{1..n}` induced on the blocks `{i, n+i}`.
    /// Errors when `p` fails to map some block onto a block, which certifies
    /// `p` lies outside `B_n`.
    pub fn block_permutation(&self, p: &Permutation) -> Result<Permutation, BnError> {
        block_permutation_impl(self.n, p)
    }

    /// Parity of the induced block permutation.
    pub fn pair_sign(&self, p: &Permutation) -> Result<bool, BnError> {
        Ok(self.block_permutation(p)?.is_odd())
    }

    /// Parity of `p` itself in `Sym(2n)`.
    pub fn total_sign(&self, p: &Permutation) -> bool {
        p.is_odd()
    }

    /// XOR of the pair sign and the total sign.
    pub fn product_sign(&self, p: &Permutation) -> Result<bool, BnError> {
        Ok(self.pair_sign(p)? ^ self.total_sign(p))
    }

    pub fn pair_sign_character(&self) -> Z2Character {
        let n = self.n;
        Z2Character::new("pair-sign", move |p| {
            block_permutation_impl(n, p)
                .expect("pair sign is only defined on block-preserving permutations")
                .is_odd()
        })
    }

    pub fn total_sign_character(&self) -> Z2Character {
        Z2Character::new("total-sign", |p| p.is_odd())
    }

    pub fn product_sign_character(&self) -> Z2Character {
        let n = self.n;
        Z2Character::new("product-sign", move |p| {
            let pair = block_permutation_impl(n, p)
                .expect("product sign is only defined on block-preserving permutations")
                .is_odd();
            pair ^ p.is_odd()
        })
    }

    /// `M_1 = <(i, n+i) | 1 <= i <= n>`, order `2^n`.
    pub fn m1(&self) -> PermutationGroup {
        let gens: Vec<Permutation> = (1..=self.n).map(|i| self.eta(i)).collect();
        let g = PermutationGroup::from_generators(self.degree, gens)
            .expect("eta degrees match");
        assert_eq!(g.order(), 1u128 << self.n, "M1 has order 2^n");
        g
    }

    /// `M_2 = <(1, n+1)(i, n+i) | 1 < i <= n>`, order `2^{n-1}`.
    pub fn m2(&self) -> PermutationGroup {
        let eta1 = self.eta(1);
        let gens: Vec<Permutation> = (2..=self.n).map(|i| eta1.compose(&self.eta(i))).collect();
        let g = PermutationGroup::from_generators(self.degree, gens)
            .expect("generator degrees match");
        assert_eq!(g.order(), 1u128 << (self.n - 1), "M2 has order 2^{{n-1}}");
        g
    }

    /// True when `g` equals `<b_0, .., b_{n-1}>` as a subgroup of `Sym(2n)`.
    pub fn identify_bn(&self, g: &PermutationGroup) -> bool {
        g.degree() == self.degree && self.group.equals(g)
    }

    /// The proper nontrivial normal subgroups of `B_n` for `n >= 5`: the
    /// kernels of the three sign characters, their common kernel of index 4
    /// (the kernel of a second character restricted to the first kernel),
    /// `<omega_0>`, `M_2`, and `M_1`. Each entry is verified normal with the
    /// expected index; entries that coincide are merged, keeping the first
    /// label.
    pub fn normal_subgroup_catalog(&self) -> Vec<NormalSubgroupEntry> {
        assert!(self.n >= 5, "catalog requires n >= 5, got {}", self.n);
        let pair = self.pair_sign_character();
        let total = self.total_sign_character();

        let ker_pair = self
            .group
            .kernel_of_character(&pair)
            .expect("pair sign is a character of B_n");
        let ker_total = self
            .group
            .kernel_of_character(&total)
            .expect("total sign is a character of B_n");
        let ker_product = self
            .group
            .kernel_of_character(&self.product_sign_character())
            .expect("product sign is a character of B_n");
        let index4 = ker_pair
            .kernel_of_character(&total)
            .expect("total sign is a character of the pair-sign kernel");
        let omega = PermutationGroup::from_generators(self.degree, vec![self.omega0()])
            .expect("omega_0 has the ambient degree");

        let order = self.group.order();
        let candidates = [
            (CatalogLabel::KerPairSign, ker_pair, 2u128),
            (CatalogLabel::KerTotalSign, ker_total, 2),
            (CatalogLabel::KerProductSign, ker_product, 2),
            (CatalogLabel::Index4Kernel, index4, 4),
            (CatalogLabel::Omega0, omega, order / 2),
            (CatalogLabel::M2, self.m2(), order >> (self.n - 1)),
            (CatalogLabel::M1, self.m1(), order >> self.n),
        ];

        let mut entries: Vec<NormalSubgroupEntry> = Vec::new();
        for (label, group, expected_index) in candidates {
            assert!(
                group.is_normal_in(&self.group),
                "catalog entry {label} must be normal in B_n"
            );
            assert_eq!(
                group.order() * expected_index,
                order,
                "catalog entry {label} has the wrong index"
            );
            if entries.iter().all(|e| !e.group.equals(&group)) {
                entries.push(NormalSubgroupEntry {
                    label,
                    group,
                    expected_index,
                });
            }
        }
        entries
    }
}

fn block_permutation_impl(n: usize, p: &Permutation) -> Result<Permutation, BnError> {
    assert_eq!(p.degree(), 2 * n, "degree mismatch");
    let block_of = |point: usize| if point > n { point - n } else { point };
    let mut images = Vec::with_capacity(n);
    for i in 1..=n {
        let target = block_of(p.apply(i));
        if block_of(p.apply(n + i)) != target {
            return Err(BnError::NotBlockPreserving { point: i });
        }
        images.push(target);
    }
    Permutation::from_images(&images).map_err(|_| BnError::NotBlockPreserving { point: 1 })
}

/// Labels for the normal-subgroup catalog, stable across releases — they
/// appear verbatim in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CatalogLabel {
    KerPairSign,
    KerTotalSign,
    KerProductSign,
    Index4Kernel,
    Omega0,
    M2,
    M1,
}

impl CatalogLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            CatalogLabel::KerPairSign => "ker-pair-sign",
            CatalogLabel::KerTotalSign => "ker-total-sign",
            CatalogLabel::KerProductSign => "ker-product-sign",
            CatalogLabel::Index4Kernel => "index4-kernel",
            CatalogLabel::Omega0 => "omega0",
            CatalogLabel::M2 => "M2",
            CatalogLabel::M1 => "M1",
        }
    }
}

impl fmt::Display for CatalogLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One labeled proper nontrivial normal subgroup of `B_n`.
pub struct NormalSubgroupEntry {
    pub label: CatalogLabel,
    pub group: PermutationGroup,
    pub expected_index: u128,
}

/// True when the given involutions satisfy the Coxeter presentation of a
/// symmetric group — `(g_i g_j)` of order 3 for adjacent indices, 2 for
/// distant ones — and generate a group of order `(k+1)!` for `k` generators,
/// which together force the group to be `Sym(k+1)`.
pub fn identify_sym_by_presentation(gens: &[Permutation]) -> Result<bool, GroupError> {
    if gens.is_empty() {
        return Ok(false);
    }
    let degree = gens[0].degree();
    for g in gens {
        if !g.is_involution() {
            return Ok(false);
        }
    }
    for (i, a) in gens.iter().enumerate() {
        for (j, b) in gens.iter().enumerate().skip(i + 1) {
            let expected = if j - i == 1 { 3 } else { 2 };
            if a.compose(b).order() != expected {
                return Ok(false);
            }
        }
    }
    let group = PermutationGroup::from_generators(degree, gens.to_vec())?;
    let expected: u128 = (1..=(gens.len() + 1) as u128).product();
    Ok(group.order() == expected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::BRUTE_FORCE_CAP;
    use rand::SeedableRng;

    fn perm(text: &str, degree: usize) -> Permutation {
        Permutation::parse_cycles(text, degree).unwrap()
    }

    #[test]
    fn betas_for_n5_match_the_defining_formulas() {
        let ctx = BnContext::new(5).unwrap();
        assert_eq!(*ctx.beta(0), perm("(1,6)", 10));
        assert_eq!(*ctx.beta(1), perm("(1,2)(6,7)", 10));
        assert_eq!(*ctx.beta(2), perm("(2,3)(7,8)", 10));
        assert_eq!(*ctx.beta(3), perm("(3,4)(8,9)", 10));
        assert_eq!(*ctx.beta(4), perm("(4,5)(9,10)", 10));
    }

    #[test]
    fn group_order_is_2n_pow_times_factorial() {
        for n in 2..=9 {
            let ctx = BnContext::new(n).unwrap();
            assert_eq!(ctx.group().order(), bn_order(n), "n={n}");
        }
        assert_eq!(bn_order(5), 3840);
        assert_eq!(bn_order(7), 645_120);
        assert_eq!(bn_order(9), 185_794_560);
    }

    #[test]
    fn order_matches_bruteforce_enumeration_at_n5() {
        let ctx = BnContext::new(5).unwrap();
        let elems = ctx.group().elements(BRUTE_FORCE_CAP).unwrap();
        assert_eq!(elems.len(), 3840);
    }

    #[test]
    fn rejects_n_below_two() {
        assert_eq!(
            BnContext::new(1).unwrap_err(),
            BnError::UnsupportedN { n: 1, min: 2 }
        );
    }

    #[test]
    fn omega0_is_central() {
        for n in 5..=10 {
            let ctx = BnContext::new(n).unwrap();
            let w = ctx.omega0();
            for b in ctx.betas() {
                assert!(w.commutes_with(b), "omega_0 commutes with betas, n={n}");
            }
            assert!(w.is_involution());
        }
    }

    #[test]
    fn omega0_and_eta_literals_at_n5() {
        let ctx = BnContext::new(5).unwrap();
        assert_eq!(ctx.omega0(), perm("(1,6)(2,7)(3,8)(4,9)(5,10)", 10));
        assert_eq!(ctx.eta(1), *ctx.beta(0));
        assert_eq!(ctx.eta(3), perm("(3,8)", 10));
    }

    #[test]
    fn block_permutations_of_the_generators() {
        let ctx = BnContext::new(5).unwrap();
        assert!(ctx.block_permutation(ctx.beta(0)).unwrap().is_identity());
        assert_eq!(
            ctx.block_permutation(ctx.beta(1)).unwrap(),
            perm("(1,2)", 5)
        );
        assert!(ctx.block_permutation(&ctx.omega0()).unwrap().is_identity());
        assert_eq!(
            ctx.block_permutation(&perm("(1,2)", 10)).unwrap_err(),
            BnError::NotBlockPreserving { point: 1 }
        );
    }

    #[test]
    fn block_permutation_is_a_homomorphism() {
        let ctx = BnContext::new(6).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..32 {
            let p = ctx.group().random_element(&mut rng);
            let q = ctx.group().random_element(&mut rng);
            let lhs = ctx.block_permutation(&p.compose(&q)).unwrap();
            let rhs = ctx
                .block_permutation(&p)
                .unwrap()
                .compose(&ctx.block_permutation(&q).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn sign_values_on_the_generators() {
        let ctx = BnContext::new(5).unwrap();
        assert!(!ctx.pair_sign(ctx.beta(0)).unwrap());
        assert!(ctx.total_sign(ctx.beta(0)));
        assert!(ctx.product_sign(ctx.beta(0)).unwrap());
        for i in 1..5 {
            assert!(ctx.pair_sign(ctx.beta(i)).unwrap());
            assert!(!ctx.total_sign(ctx.beta(i)));
            assert!(ctx.product_sign(ctx.beta(i)).unwrap());
        }
    }

    #[test]
    fn sign_characters_are_homomorphisms() {
        let ctx = BnContext::new(5).unwrap();
        let chars = [
            ctx.pair_sign_character(),
            ctx.total_sign_character(),
            ctx.product_sign_character(),
        ];
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..32 {
            let p = ctx.group().random_element(&mut rng);
            let q = ctx.group().random_element(&mut rng);
            for chi in &chars {
                assert_eq!(
                    chi.evaluate(&p.compose(&q)),
                    chi.evaluate(&p) ^ chi.evaluate(&q),
                    "{:?}",
                    chi
                );
            }
        }
    }

    #[test]
    fn m1_and_m2_structure() {
        let ctx = BnContext::new(5).unwrap();
        let m1 = ctx.m1();
        let m2 = ctx.m2();
        assert_eq!(m1.order(), 32);
        assert_eq!(m2.order(), 16);
        assert!(m2.is_subgroup_of(&m1));
        assert!(m1.is_normal_in(ctx.group()));
        assert!(m2.is_normal_in(ctx.group()));
        assert!(!m2.contains(&ctx.omega0()));

        let even = BnContext::new(8).unwrap();
        assert!(even.m2().contains(&even.omega0()));
    }

    #[test]
    fn m1_acts_trivially_on_blocks() {
        let ctx = BnContext::new(5).unwrap();
        for e in ctx.m1().elements(100).unwrap() {
            assert!(ctx.block_permutation(&e).unwrap().is_identity());
        }
    }

    #[test]
    fn catalog_orders_and_indices_at_n5() {
        let ctx = BnContext::new(5).unwrap();
        let catalog = ctx.normal_subgroup_catalog();
        let labels: Vec<&str> = catalog.iter().map(|e| e.label.as_str()).collect();
        assert_eq!(
            labels,
            vec![
                "ker-pair-sign",
                "ker-total-sign",
                "ker-product-sign",
                "index4-kernel",
                "omega0",
                "M2",
                "M1"
            ]
        );
        let orders: Vec<u128> = catalog.iter().map(|e| e.group.order()).collect();
        assert_eq!(orders, vec![1920, 1920, 1920, 960, 2, 16, 32]);
        let indices: Vec<u128> = catalog.iter().map(|e| e.expected_index).collect();
        assert_eq!(indices, vec![2, 2, 2, 4, 1920, 240, 120]);
        for (i, a) in catalog.iter().enumerate() {
            for b in &catalog[i + 1..] {
                assert!(!a.group.equals(&b.group), "{} vs {}", a.label, b.label);
            }
        }
    }

    #[test]
    fn catalog_matches_bruteforce_normal_subgroups_at_n5() {
        let ctx = BnContext::new(5).unwrap();
        let catalog = ctx.normal_subgroup_catalog();
        let all = ctx.group().normal_subgroups_bruteforce().unwrap();
        let proper: Vec<&PermutationGroup> = all
            .iter()
            .filter(|s| s.order() != 1 && s.order() != ctx.group().order())
            .collect();
        assert_eq!(proper.len(), catalog.len());
        for sub in &proper {
            let hits = catalog.iter().filter(|e| e.group.equals(sub)).count();
            assert_eq!(hits, 1, "bruteforce subgroup of order {}", sub.order());
        }
    }

    #[test]
    fn index4_entry_is_the_derived_subgroup() {
        let ctx = BnContext::new(5).unwrap();
        let catalog = ctx.normal_subgroup_catalog();
        let index4 = catalog
            .iter()
            .find(|e| e.label == CatalogLabel::Index4Kernel)
            .unwrap();
        let derived = ctx.group().derived_subgroup();
        assert!(index4.group.equals(&derived));
    }

    #[test]
    fn identify_bn_accepts_only_the_beta_group() {
        let ctx = BnContext::new(5).unwrap();
        let same = PermutationGroup::from_generators(10, ctx.betas().to_vec()).unwrap();
        assert!(ctx.identify_bn(&same));
        let sym10 = PermutationGroup::from_generators(
            10,
            vec![perm("(1,2)", 10), perm("(1,2,3,4,5,6,7,8,9,10)", 10)],
        )
        .unwrap();
        assert!(!ctx.identify_bn(&sym10));
    }

    #[test]
    fn sym_presentation_identification() {
        let adjacent: Vec<Permutation> =
            (1..5).map(|i| Permutation::transposition(5, i, i + 1)).collect();
        assert!(identify_sym_by_presentation(&adjacent).unwrap());

        let reordered = vec![
            adjacent[0].clone(),
            adjacent[2].clone(),
            adjacent[1].clone(),
            adjacent[3].clone(),
        ];
        assert!(!identify_sym_by_presentation(&reordered).unwrap());

        let not_involution = vec![perm("(1,2,3)", 5)];
        assert!(!identify_sym_by_presentation(&not_involution).unwrap());
        assert!(!identify_sym_by_presentation(&[]).unwrap());
    }
}

//! The two generator families under study, their defining formulas, the
//! closed-form identities they satisfy, and the coset witnesses used to
//! cross-check quotient failures.
//!
//! Both families live in `B_n <= Sym(2n)` and are handed to the verifier as
//! [`CStringCandidate`]s: tuples of involutions in which generators two or
//! more steps apart commute. Whether a candidate actually has the
//! intersection property is decided elsewhere; this module only builds and
//! validates the raw material.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bn::{BnContext, CatalogLabel};
use crate::group::PermutationGroup;
use crate::perm::Permutation;

/// Errors from building candidates or family generators.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("n must be odd and ≥ 5")]
    Thm12Domain,
    #[error("n must be ≥ 8")]
    Thm13Domain,
    #[error("unknown family `{0}` (expected thm12, thm13, or custom)")]
    UnknownFamily(String),
    #[error("a candidate needs at least one generator")]
    Empty,
    #[error("generator {index} has degree {found}, expected {expected}")]
    WrongDegree {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("generator {index} is not an involution")]
    NotAnInvolution { index: usize },
    #[error("generators {i} and {j} are two or more steps apart but do not commute")]
    StringConditionViolated { i: usize, j: usize },
    #[error("no coset witness is associated with {0}")]
    NoWitnessForLabel(CatalogLabel),
}

/// Which construction a candidate came from. `thm12` is the rank-4 family
/// defined for odd `n >= 5`; `thm13` is the rank-`(n-4)` family defined for
/// `n >= 8`; `custom` marks candidates read from generator files.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Thm12,
    Thm13,
    Custom,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Thm12 => "thm12",
            Family::Thm13 => "thm13",
            Family::Custom => "custom",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "thm12" => Ok(Family::Thm12),
            "thm13" => Ok(Family::Thm13),
            "custom" => Ok(Family::Custom),
            other => Err(FamilyError::UnknownFamily(other.to_string())),
        }
    }
}

/// A tuple of involutions `t_1, .., t_r` in `Sym(2n)` in which generators
/// two or more steps apart commute. Construction validates exactly those
/// two properties; the intersection property is the verifier's business.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CStringCandidate {
    pub family: Family,
    pub n: usize,
    pub rank: usize,
    pub generators: Vec<Permutation>,
}

impl CStringCandidate {
    pub fn new(
        family: Family,
        n: usize,
        generators: Vec<Permutation>,
    ) -> Result<Self, FamilyError> {
        if generators.is_empty() {
            return Err(FamilyError::Empty);
        }
        let degree = 2 * n;
        for (idx, g) in generators.iter().enumerate() {
            if g.degree() != degree {
                return Err(FamilyError::WrongDegree {
                    index: idx + 1,
                    expected: degree,
                    found: g.degree(),
                });
            }
            if !g.is_involution() {
                return Err(FamilyError::NotAnInvolution { index: idx + 1 });
            }
        }
        for i in 0..generators.len() {
            for j in i + 2..generators.len() {
                if !generators[i].commutes_with(&generators[j]) {
                    return Err(FamilyError::StringConditionViolated { i: i + 1, j: j + 1 });
                }
            }
        }
        Ok(CStringCandidate {
            family,
            n,
            rank: generators.len(),
            generators,
        })
    }

    pub fn degree(&self) -> usize {
        2 * self.n
    }

    /// The group generated by the full tuple.
    pub fn group(&self) -> PermutationGroup {
        PermutationGroup::from_generators(self.degree(), self.generators.clone())
            .expect("candidate generators share the degree")
    }
}

fn perm_from(degree: usize, cycles: Vec<Vec<usize>>) -> Permutation {
    let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
    Permutation::from_cycles(degree, &refs).expect("family cycles are disjoint and in range")
}

/// Generators `t_1, t_2, t_3, t_4` of the rank-4 family, defined for odd
/// `n >= 5`.
pub fn thm12_generators(n: usize) -> Result<Vec<Permutation>, FamilyError> {
    if n < 5 || n % 2 == 0 {
        return Err(FamilyError::Thm12Domain);
    }
    let d = 2 * n;

    let mut c1 = Vec::new();
    for i in 0..=(n - 3) / 2 {
        c1.push(vec![1 + 2 * i, 2 + 2 * i]);
        c1.push(vec![n + 1 + 2 * i, n + 2 + 2 * i]);
    }
    let t1 = perm_from(d, c1);

    let mut c2 = Vec::new();
    for i in 1..=(n - 3) / 2 {
        c2.push(vec![2 + 2 * i, 3 + 2 * i]);
        c2.push(vec![n + 2 + 2 * i, n + 3 + 2 * i]);
    }
    let t2 = perm_from(d, c2);

    let t3 = perm_from(
        d,
        vec![
            vec![1, 3],
            vec![2, 4],
            vec![n + 1, n + 3],
            vec![n + 2, n + 4],
        ],
    );

    let mut c4 = vec![vec![1, 2], vec![n + 1, n + 2]];
    for i in 1..=n - 2 {
        c4.push(vec![2 + i, n + 2 + i]);
    }
    let t4 = perm_from(d, c4);

    Ok(vec![t1, t2, t3, t4])
}

/// Generators `t_1, .., t_m` (`m = n - 4`) of the high-rank family, defined
/// for `n >= 8`.
pub fn thm13_generators(n: usize) -> Result<Vec<Permutation>, FamilyError> {
    if n < 8 {
        return Err(FamilyError::Thm13Domain);
    }
    let d = 2 * n;
    let m = n - 4;

    let mut c1 = vec![
        vec![2, 3],
        vec![n + 2, n + 3],
        vec![4, 5],
        vec![n + 4, n + 5],
    ];
    for i in 6..=n {
        c1.push(vec![i, n + i]);
    }
    let t1 = perm_from(d, c1);

    let mut c2 = vec![
        vec![1, 2],
        vec![n + 1, n + 2],
        vec![3, 4],
        vec![n + 3, n + 4],
        vec![5, 6],
        vec![n + 5, n + 6],
    ];
    for i in 7..=n {
        c2.push(vec![i, n + i]);
    }
    let t2 = perm_from(d, c2);

    let t3 = perm_from(
        d,
        vec![
            vec![2, 3],
            vec![n + 2, n + 3],
            vec![6, 7],
            vec![n + 6, n + 7],
        ],
    );

    let mut gens = vec![t1, t2, t3];
    for k in 4..=m {
        gens.push(perm_from(
            d,
            vec![vec![k + 3, k + 4], vec![n + k + 3, n + k + 4]],
        ));
    }
    Ok(gens)
}

/// Builds the rank-4 family as a validated candidate.
pub fn thm12_candidate(n: usize) -> Result<CStringCandidate, FamilyError> {
    CStringCandidate::new(Family::Thm12, n, thm12_generators(n)?)
}

/// Builds the high-rank family as a validated candidate.
pub fn thm13_candidate(n: usize) -> Result<CStringCandidate, FamilyError> {
    CStringCandidate::new(Family::Thm13, n, thm13_generators(n)?)
}

/// The extra involution `t_0 = t_4^(t_3 t_4 t_2 t_3) * t_2` of the high-rank
/// family, asserted against its closed form
/// `(1,2)(n+1,n+2)(3,4)(n+3,n+4)(5,n+5)..(n,2n)`.
pub fn t0(n: usize) -> Result<Permutation, FamilyError> {
    let ts = thm13_generators(n)?;
    let (t2, t3, t4) = (&ts[1], &ts[2], &ts[3]);
    let conjugator = t3.compose(t4).compose(t2).compose(t3);
    Ok(t4.conjugate(&conjugator).compose(t2))
}

/// What [`t0`]'s word multiplies out to: `(1,2)(3,4)` on both blocks and a
/// flip of every remaining block pair.
pub fn t0_closed_form(n: usize) -> Result<Permutation, FamilyError> {
    if n < 8 {
        return Err(FamilyError::Thm13Domain);
    }
    let mut cycles = vec![
        vec![1, 2],
        vec![n + 1, n + 2],
        vec![3, 4],
        vec![n + 3, n + 4],
    ];
    for i in 5..=n {
        cycles.push(vec![i, n + i]);
    }
    Ok(perm_from(2 * n, cycles))
}

/// A pair `(g, h)` with `g` in the parabolic subgroup indexed by `j_set`,
/// `h` in the one indexed by `k_set`, and `g * h` in a designated normal
/// subgroup `N` of `B_n` — so the images of `g` and `h^{-1}` coincide in
/// `B_n / N` and land in both parabolic images.
#[derive(Clone, Debug)]
pub struct QuotientWitness {
    pub j_set: Vec<usize>,
    pub k_set: Vec<usize>,
    pub g: Permutation,
    pub h: Permutation,
}

/// Coset witnesses for the rank-4 family: `g` in `G_{2,3,4}` and `h` in
/// `G_{1,2,3}` with `g * h` in the normal subgroup named by `label`
/// (`M1`, `M2`, or `omega0`). All memberships are verified on construction.
pub fn witnesses_thm12(n: usize, label: CatalogLabel) -> Result<QuotientWitness, FamilyError> {
    let ts = thm12_generators(n)?;
    let ctx = BnContext::new(n).expect("n >= 5");
    let d = 2 * n;

    let (g, h) = match label {
        CatalogLabel::M1 | CatalogLabel::M2 => {
            let g = ts[2].compose(&ts[3]).power(2);
            let closed = perm_from(
                d,
                vec![
                    vec![1, n + 2],
                    vec![2, n + 1],
                    vec![3, n + 4],
                    vec![4, n + 3],
                ],
            );
            assert_eq!(g, closed, "witness word must match its closed form");
            let h = perm_from(
                d,
                vec![
                    vec![1, 2],
                    vec![3, 4],
                    vec![n + 1, n + 2],
                    vec![n + 3, n + 4],
                ],
            );
            (g, h)
        }
        CatalogLabel::Omega0 => {
            let mut cg: Vec<Vec<usize>> = (1..=5).map(|i| vec![i, n + i]).collect();
            for j in 1..=(n - 5) / 2 {
                cg.push(vec![4 + 2 * j, n + 5 + 2 * j]);
                cg.push(vec![5 + 2 * j, n + 4 + 2 * j]);
            }
            let g = perm_from(d, cg);

            let mut ch: Vec<Vec<usize>> = Vec::new();
            for j in 1..=(n - 5) / 2 {
                ch.push(vec![4 + 2 * j, 5 + 2 * j]);
                ch.push(vec![n + 4 + 2 * j, n + 5 + 2 * j]);
            }
            let h = perm_from(d, ch);
            (g, h)
        }
        other => return Err(FamilyError::NoWitnessForLabel(other)),
    };

    let g234 = PermutationGroup::from_generators(d, ts[1..4].to_vec()).expect("degrees match");
    let g123 = PermutationGroup::from_generators(d, ts[0..3].to_vec()).expect("degrees match");
    assert!(g234.contains(&g), "witness g must lie in G_{{2,3,4}}");
    assert!(g123.contains(&h), "witness h must lie in G_{{1,2,3}}");

    let product = g.compose(&h);
    let in_n = match label {
        CatalogLabel::M1 => ctx.m1().contains(&product),
        CatalogLabel::M2 => ctx.m2().contains(&product),
        CatalogLabel::Omega0 => product == ctx.omega0(),
        _ => unreachable!(),
    };
    assert!(in_n, "witness product must lie in the named normal subgroup");

    Ok(QuotientWitness {
        j_set: vec![2, 3, 4],
        k_set: vec![1, 2, 3],
        g,
        h,
    })
}

/// Coset witness for the high-rank family: `g = t_3 (t_3 t_4)^3` in
/// `G_{3,4}` and a word `h` in `G_{1,2,3}` with `g * h = omega_0`, which
/// lies in `<omega_0>` and `M_1` for every `n >= 8` and additionally in
/// `M_2` for even `n`.
pub fn witnesses_thm13(n: usize) -> Result<QuotientWitness, FamilyError> {
    let ts = thm13_generators(n)?;
    let ctx = BnContext::new(n).expect("n >= 8");
    let d = 2 * n;
    let (t1, t2, t3, t4) = (&ts[0], &ts[1], &ts[2], &ts[3]);

    let g = t3.compose(&t3.compose(t4).power(3));
    assert_eq!(
        g,
        perm_from(d, vec![vec![6, 7], vec![n + 6, n + 7]]),
        "witness g must match its closed form"
    );

    let h = t1
        .compose(t2)
        .power(2)
        .compose(t1)
        .compose(&t3.compose(t2).compose(t1).power(3))
        .compose(&t3.conjugate(t2))
        .compose(&t1.compose(t3).compose(t2).power(4));
    let mut ch: Vec<Vec<usize>> = (1..=5).map(|i| vec![i, n + i]).collect();
    ch.push(vec![6, n + 7]);
    ch.push(vec![7, n + 6]);
    for i in 8..=n {
        ch.push(vec![i, n + i]);
    }
    assert_eq!(h, perm_from(d, ch), "witness h must match its closed form");

    let g34 = PermutationGroup::from_generators(d, vec![t3.clone(), t4.clone()])
        .expect("degrees match");
    let g123 = PermutationGroup::from_generators(d, ts[0..3].to_vec()).expect("degrees match");
    assert!(g34.contains(&g), "witness g must lie in G_{{3,4}}");
    assert!(g123.contains(&h), "witness h must lie in G_{{1,2,3}}");
    assert_eq!(g.compose(&h), ctx.omega0(), "witness product must be omega_0");

    Ok(QuotientWitness {
        j_set: vec![3, 4],
        k_set: vec![1, 2, 3],
        g,
        h,
    })
}

/// One named closed-form identity, recorded as holding or not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub holds: bool,
}

impl IdentityCheck {
    fn new(name: &'static str, holds: bool) -> Self {
        IdentityCheck { name, holds }
    }
}

/// Evaluates every closed-form identity the family's generators are supposed
/// to satisfy and reports each outcome by name. Custom candidates have none.
pub fn identity_checks(family: Family, n: usize) -> Result<Vec<IdentityCheck>, FamilyError> {
    match family {
        Family::Thm12 => thm12_identity_checks(n),
        Family::Thm13 => thm13_identity_checks(n),
        Family::Custom => Ok(Vec::new()),
    }
}

fn thm12_identity_checks(n: usize) -> Result<Vec<IdentityCheck>, FamilyError> {
    let ts = thm12_generators(n)?;
    let ctx = BnContext::new(n).expect("n >= 5");
    let d = 2 * n;
    let mut checks = Vec::new();

    let odd: Vec<&Permutation> = (0..=(n - 3) / 2).map(|i| ctx.beta(1 + 2 * i)).collect();
    checks.push(IdentityCheck::new(
        "t1-is-odd-beta-product",
        ts[0] == Permutation::product(d, odd),
    ));

    let even: Vec<&Permutation> = (1..=(n - 3) / 2).map(|i| ctx.beta(2 + 2 * i)).collect();
    checks.push(IdentityCheck::new(
        "t2-is-even-beta-product",
        ts[1] == Permutation::product(d, even),
    ));

    let conj = ctx
        .beta(1)
        .conjugate(ctx.beta(2))
        .compose(&ctx.beta(2).conjugate(ctx.beta(3)));
    checks.push(IdentityCheck::new(
        "t3-is-conjugated-beta-product",
        ts[2] == conj,
    ));

    let w = Permutation::product(d, &ts);
    checks.push(IdentityCheck::new(
        "coxeter-word-is-single-cycle",
        w.cycles().cycles().len() == 1 && w.cycles().cycles()[0].len() == d,
    ));
    checks.push(IdentityCheck::new(
        "coxeter-word-power-is-central-flip",
        w.power(n as i64) == ctx.omega0(),
    ));

    let m_witness = witnesses_thm12(n, CatalogLabel::M2)?;
    let m_product = m_witness.g.compose(&m_witness.h);
    let four_flips: Vec<Permutation> = (1..=4).map(|i| ctx.eta(i)).collect();
    checks.push(IdentityCheck::new(
        "m-witness-product-is-four-flips",
        m_product == Permutation::product(d, &four_flips),
    ));
    checks.push(IdentityCheck::new(
        "m-witness-product-in-m2",
        ctx.m2().contains(&m_product),
    ));

    let o_witness = witnesses_thm12(n, CatalogLabel::Omega0)?;
    checks.push(IdentityCheck::new(
        "omega-witness-product-is-central-flip",
        o_witness.g.compose(&o_witness.h) == ctx.omega0(),
    ));

    Ok(checks)
}

fn thm13_identity_checks(n: usize) -> Result<Vec<IdentityCheck>, FamilyError> {
    let ts = thm13_generators(n)?;
    let ctx = BnContext::new(n).expect("n >= 8");
    let d = 2 * n;
    let m = n - 4;
    let (t1, t2, t3, t4) = (&ts[0], &ts[1], &ts[2], &ts[3]);
    let mut checks = Vec::new();

    checks.push(IdentityCheck::new(
        "t3t4-closed-form",
        t3.compose(t4)
            == perm_from(
                d,
                vec![
                    vec![2, 3],
                    vec![n + 2, n + 3],
                    vec![6, 8, 7],
                    vec![n + 6, n + 8, n + 7],
                ],
            ),
    ));

    let long_word = Permutation::product(d, &ts).compose(t3).compose(t4);
    checks.push(IdentityCheck::new(
        "long-word-power-is-central-flip",
        long_word.power(n as i64) == ctx.omega0(),
    ));

    // With only four generators the truncated word collapses (its two t_3
    // factors cancel), so these two identities start at rank 5.
    if m >= 5 {
        let short_word = Permutation::product(d, &ts[..m - 1]).compose(t3).compose(t4);
        let short_power = short_word.power(n as i64 - 1);
        let first_flips: Vec<Permutation> = (1..n).map(|i| ctx.eta(i)).collect();
        checks.push(IdentityCheck::new(
            "truncated-word-power-closed-form",
            short_power == Permutation::product(d, &first_flips),
        ));
        checks.push(IdentityCheck::new(
            "word-powers-product-is-last-flip",
            short_power.compose(&long_word.power(n as i64)) == ctx.eta(n),
        ));
    }
    let family_group = PermutationGroup::from_generators(d, ts.clone())
        .expect("family generators share the degree");
    checks.push(IdentityCheck::new(
        "last-flip-lies-in-group",
        family_group.contains(&ctx.eta(n)),
    ));

    let beta2 = t3.compose(t4).power(3);
    let beta6 = t3.compose(&beta2);
    checks.push(IdentityCheck::new(
        "t3-is-beta2-beta6",
        *t3 == ctx.beta(2).compose(ctx.beta(6)),
    ));
    checks.push(IdentityCheck::new(
        "tail-generators-are-betas",
        (4..=m).all(|i| ts[i - 1] == *ctx.beta(i + 3)),
    ));

    let eta_n = ctx.eta(n);
    let descending: Vec<&Permutation> = ts[2..].iter().rev().collect();
    let eta6 = eta_n.conjugate(&Permutation::product(d, descending));
    let beta1 = beta6.conjugate(&Permutation::product(
        d,
        [t2, t3, t1, t2, t1, t2, t3],
    ));
    let beta3 = beta6.conjugate(&Permutation::product(d, [t2, t3, t1, t2, t1, t3]));
    let beta4 = beta6.conjugate(&Permutation::product(d, [t2, t1, t2, t1, t3, t2]));
    let beta5 = beta6.conjugate(&Permutation::product(d, [t2, t3, &eta6]));
    let spine: Vec<&Permutation> = ts[2..]
        .iter()
        .rev()
        .chain([t2, t1, t2, t1, t2])
        .collect();
    let beta0 = eta_n.conjugate(&Permutation::product(d, spine));
    checks.push(IdentityCheck::new(
        "beta-recovery-by-conjugation",
        beta2 == *ctx.beta(2)
            && beta6 == *ctx.beta(6)
            && beta1 == *ctx.beta(1)
            && beta3 == *ctx.beta(3)
            && beta4 == *ctx.beta(4)
            && beta5 == *ctx.beta(5)
            && eta6 == ctx.eta(6)
            && beta0 == *ctx.beta(0),
    ));

    let t1_decomp = ctx
        .beta(2)
        .compose(ctx.beta(4))
        .compose(&Permutation::product(
            d,
            &(6..=n).map(|i| ctx.eta(i)).collect::<Vec<_>>(),
        ));
    checks.push(IdentityCheck::new("t1-beta-decomposition", *t1 == t1_decomp));

    let t2_decomp = ctx
        .beta(1)
        .compose(ctx.beta(3))
        .compose(ctx.beta(5))
        .compose(&Permutation::product(
            d,
            &(7..=n).map(|i| ctx.eta(i)).collect::<Vec<_>>(),
        ));
    checks.push(IdentityCheck::new("t2-beta-decomposition", *t2 == t2_decomp));

    let t0_perm = t0(n)?;
    checks.push(IdentityCheck::new(
        "t0-word-matches-closed-form",
        t0_perm == t0_closed_form(n)?,
    ));
    checks.push(IdentityCheck::new(
        "t0-beta2-product-has-order-4",
        t0_perm.compose(ctx.beta(2)).order() == 4,
    ));
    checks.push(IdentityCheck::new(
        "t0-t2-product-is-crossed-block-flip",
        t0_perm.compose(t2) == perm_from(d, vec![vec![5, n + 6], vec![6, n + 5]]),
    ));
    checks.push(IdentityCheck::new(
        "t0-commutes-with-tail-betas",
        (6..=m + 3).all(|j| t0_perm.commutes_with(ctx.beta(j))),
    ));

    let witness = witnesses_thm13(n)?;
    checks.push(IdentityCheck::new(
        "omega-witness-product-is-central-flip",
        witness.g.compose(&witness.h) == ctx.omega0(),
    ));
    checks.push(IdentityCheck::new(
        "omega-witness-g-is-beta6",
        witness.g == *ctx.beta(6),
    ));

    Ok(checks)
}

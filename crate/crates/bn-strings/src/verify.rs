//! Deciding whether a candidate tuple is a C-string, what its Schläfli
//! symbol is, and how its generator images behave modulo each normal
//! subgroup in the catalog — including the unravelled decision, which
//! quantifies over all of them.
//!
//! Two independent verification methods are provided. The full method walks
//! every incomparable pair of index subsets `J, K` and checks
//! `G_J ∩ G_K = G_{J∩K}` directly; the inductive method recurses on
//! contiguous sub-tuples and checks a single head/tail intersection per
//! interval. They must agree, and tests hold them to that.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::bn::{bn_order, BnContext, CatalogLabel};
use crate::families::{
    identity_checks, thm12_candidate, thm13_candidate, witnesses_thm12, witnesses_thm13,
    CStringCandidate, Family, FamilyError, IdentityCheck, QuotientWitness,
};
use crate::group::{GroupError, PermutationGroup, BRUTE_FORCE_CAP};
use crate::perm::Permutation;

/// Largest rank the all-pairs scans accept; `2^rank` subset groups and all
/// their incomparable pairings are materialized, so this is a hard guard,
/// not a tunable.
pub const FULL_METHOD_MAX_RANK: usize = 12;

/// Largest element-order histogram a [`fingerprint`] will enumerate.
pub const DEFAULT_HISTOGRAM_CAP: u128 = BRUTE_FORCE_CAP as u128;

/// Note attached to every [`UnravelledReport`].
pub const CATALOG_ASSUMPTION: &str = "quotient verdicts range over the seven-entry \
     normal-subgroup catalog; its completeness is verified by exhaustive \
     enumeration at n = 5 and assumed for larger n";

/// Largest side a pair check will walk element-by-element.
const PAIR_STREAM_LIMIT: u128 = 10_000_000;

/// Largest subgroup index a pair check will cover by a coset transversal.
const TRANSVERSAL_INDEX_CAP: u128 = 256;

/// Pair checks run in parallel within fixed chunks of this size, so the
/// first violation found is the same regardless of thread count.
const PAIR_CHUNK: usize = 64;

/// Errors from verification-level preconditions.
#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("the tuple does not generate B_{n} inside Sym({degree})")]
    NotHyperoctahedral { n: usize, degree: usize },
    #[error("the designated subgroup is not normal in the tuple's group")]
    NotNormal,
    #[error("rank {rank} exceeds the all-pairs scan limit of {max}")]
    RankTooLargeForPairScan { rank: usize, max: usize },
    #[error("family {0} has no theorem-level verification")]
    UnsupportedFamily(Family),
    #[error("unknown method {0:?} (expected \"full\", \"inductive\", or \"both\")")]
    UnknownMethod(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// Which of the two independent C-string checks produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Full,
    Inductive,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Full => "full",
            Method::Inductive => "inductive",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "full" => Ok(Method::Full),
            "inductive" => Ok(Method::Inductive),
            other => Err(VerifyError::UnknownMethod(other.to_owned())),
        }
    }
}

/// Which methods a verification run executes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MethodSelection {
    Full,
    Inductive,
    #[default]
    Both,
}

impl MethodSelection {
    pub fn methods(self) -> &'static [Method] {
        match self {
            MethodSelection::Full => &[Method::Full],
            MethodSelection::Inductive => &[Method::Inductive],
            MethodSelection::Both => &[Method::Full, Method::Inductive],
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            MethodSelection::Full => "full",
            MethodSelection::Inductive => "inductive",
            MethodSelection::Both => "both",
        }
    }
}

impl fmt::Display for MethodSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MethodSelection {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "full" => Ok(MethodSelection::Full),
            "inductive" => Ok(MethodSelection::Inductive),
            "both" => Ok(MethodSelection::Both),
            other => Err(VerifyError::UnknownMethod(other.to_owned())),
        }
    }
}

/// The orders of the products of consecutive generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchlafliSymbol {
    entries: Vec<u64>,
}

impl SchlafliSymbol {
    pub fn of(candidate: &CStringCandidate) -> Self {
        let gens = &candidate.generators;
        let entries = (1..gens.len())
            .map(|i| gens[i - 1].compose(&gens[i]).order())
            .collect();
        SchlafliSymbol { entries }
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }
}

impl fmt::Display for SchlafliSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

/// An element certifying `G_J ∩ G_K > G_{J∩K}` (or the same statement with
/// every group joined with a normal subgroup, for quotient checks). Index
/// sets are sorted and 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailureWitness {
    pub j_set: Vec<usize>,
    pub k_set: Vec<usize>,
    pub element: Permutation,
}

impl FailureWitness {
    /// Re-verifies the three defining memberships before the witness is
    /// allowed into a report.
    fn checked(
        j_set: Vec<usize>,
        k_set: Vec<usize>,
        element: Permutation,
        in_j: &PermutationGroup,
        in_k: &PermutationGroup,
        outside: &PermutationGroup,
    ) -> Self {
        assert!(
            in_j.contains(&element) && in_k.contains(&element) && !outside.contains(&element),
            "a failure witness must lie in both sides and outside the expected intersection"
        );
        FailureWitness {
            j_set,
            k_set,
            element,
        }
    }
}

/// Outcome of one C-string check.
#[derive(Clone, Debug)]
pub struct CStringVerdict {
    pub is_cstring: bool,
    pub method: Method,
    pub failure_witness: Option<FailureWitness>,
}

/// How generator images degenerate modulo a normal subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CollapseWitness {
    /// `t_i` lies in the subgroup, so its image is trivial.
    TrivialImage { index: usize },
    /// `t_i` and `t_j` fall into the same coset, so their images coincide.
    EqualImages { left: usize, right: usize },
}

/// Verdict on the generator images in `G/N`, with the evidence embedded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientVerdict {
    Collapsed(CollapseWitness),
    NotCString(FailureWitness),
    IsCString,
}

impl QuotientVerdict {
    /// Stable token used in reports.
    pub fn token(&self) -> &'static str {
        match self {
            QuotientVerdict::Collapsed(_) => "collapsed",
            QuotientVerdict::NotCString(_) => "quotient-not-cstring",
            QuotientVerdict::IsCString => "quotient-is-cstring",
        }
    }
}

/// One catalog entry's quotient verdict.
#[derive(Clone, Debug)]
pub struct QuotientCheck {
    pub label: CatalogLabel,
    pub expected_index: u128,
    pub verdict: QuotientVerdict,
}

/// The unravelled decision: one verdict per catalog entry, plus the overall
/// call. The tuple is unravelled exactly when no quotient stays a C-string.
#[derive(Clone, Debug)]
pub struct UnravelledReport {
    pub checks: Vec<QuotientCheck>,
    pub unravelled: bool,
    pub assumption: &'static str,
}

impl UnravelledReport {
    /// Labels whose quotients remain C-strings — the obstructions.
    pub fn offending(&self) -> Vec<CatalogLabel> {
        self.checks
            .iter()
            .filter(|c| matches!(c.verdict, QuotientVerdict::IsCString))
            .map(|c| c.label)
            .collect()
    }
}

/// A computable isomorphism-invariant proxy: equal orders, center orders,
/// derived-subgroup orders, and (for small groups) element-order
/// histograms. Distinct fingerprints prove non-isomorphism; equal ones are
/// reported as consistency, never as isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub order: u128,
    pub center_order: u128,
    pub derived_order: u128,
    pub element_orders: Option<BTreeMap<u64, u128>>,
}

/// Computes the fingerprint, enumerating the element-order histogram only
/// when the order is at most `histogram_cap`.
pub fn fingerprint(group: &PermutationGroup, histogram_cap: u128) -> Fingerprint {
    let order = group.order();
    let element_orders = (order <= histogram_cap).then(|| {
        let mut histogram: BTreeMap<u64, u128> = BTreeMap::new();
        for e in group.iter_elements() {
            *histogram.entry(e.order()).or_insert(0) += 1;
        }
        histogram
    });
    Fingerprint {
        order,
        center_order: group.center().order(),
        derived_order: group.derived_subgroup().order(),
        element_orders,
    }
}

/// `Sym(k)` on `{1..k}`, generated by adjacent transpositions.
pub fn symmetric_reference(k: usize) -> PermutationGroup {
    let degree = k.max(1);
    let gens = (1..k)
        .map(|i| Permutation::transposition(degree, i, i + 1))
        .collect();
    PermutationGroup::from_generators(degree, gens).expect("transpositions share the degree")
}

/// `Z_2 × Sym(k)`: adjacent transpositions on `{1..k}` and one disjoint
/// transposition `(k+1, k+2)`.
pub fn z2_sym_reference(k: usize) -> PermutationGroup {
    let degree = k + 2;
    let mut gens: Vec<Permutation> = (1..k)
        .map(|i| Permutation::transposition(degree, i, i + 1))
        .collect();
    gens.push(Permutation::transposition(degree, k + 1, k + 2));
    PermutationGroup::from_generators(degree, gens).expect("transpositions share the degree")
}

/// `Dih_8 × Sym(k)`: the order-8 dihedral group on `{1..4}` times adjacent
/// transpositions on `{5..k+4}`.
pub fn dih8_sym_reference(k: usize) -> PermutationGroup {
    let degree = k + 4;
    let mut gens = vec![
        Permutation::from_cycles(degree, &[&[1, 2, 3, 4]]).expect("4-cycle fits the degree"),
        Permutation::transposition(degree, 1, 3),
    ];
    gens.extend((5..degree).map(|i| Permutation::transposition(degree, i, i + 1)));
    PermutationGroup::from_generators(degree, gens).expect("generators share the degree")
}

/// One parabolic subgroup fingerprinted against a named reference group.
#[derive(Clone, Debug)]
pub struct ParabolicComparison {
    pub indices: Vec<usize>,
    pub fingerprint: Fingerprint,
    pub reference: String,
    pub consistent: bool,
}

/// Caches the parabolic subgroups `G_J` of one candidate and answers the
/// C-string, quotient, and unravelled questions about it.
pub struct CandidateVerifier<'a> {
    candidate: &'a CStringCandidate,
    parabolics: std::cell::RefCell<BTreeMap<Vec<usize>, Arc<PermutationGroup>>>,
}

impl<'a> CandidateVerifier<'a> {
    pub fn new(candidate: &'a CStringCandidate) -> Self {
        CandidateVerifier {
            candidate,
            parabolics: std::cell::RefCell::new(BTreeMap::new()),
        }
    }

    pub fn candidate(&self) -> &CStringCandidate {
        self.candidate
    }

    /// The parabolic subgroup `G_J` for a set of 1-based generator indices;
    /// the empty set yields the trivial group.
    pub fn subgroup(&self, indices: &[usize]) -> Result<Arc<PermutationGroup>, GroupError> {
        let mut key = indices.to_vec();
        key.sort_unstable();
        key.dedup();
        assert!(
            key.iter().all(|&i| i >= 1 && i <= self.candidate.rank),
            "generator indices are 1-based and bounded by the rank"
        );
        if let Some(hit) = self.parabolics.borrow().get(&key) {
            return Ok(hit.clone());
        }
        let degree = self.candidate.degree();
        let group = if key.is_empty() {
            PermutationGroup::trivial(degree)
        } else {
            let gens = key
                .iter()
                .map(|&i| self.candidate.generators[i - 1].clone())
                .collect();
            PermutationGroup::from_generators(degree, gens)?
        };
        let group = Arc::new(group);
        self.parabolics.borrow_mut().insert(key, group.clone());
        Ok(group)
    }

    /// The group generated by the whole tuple.
    pub fn full_group(&self) -> Result<Arc<PermutationGroup>, GroupError> {
        let all: Vec<usize> = (1..=self.candidate.rank).collect();
        self.subgroup(&all)
    }

    pub fn schlafli(&self) -> SchlafliSymbol {
        SchlafliSymbol::of(self.candidate)
    }

    /// Runs one C-string check.
    pub fn is_cstring(&self, method: Method) -> Result<CStringVerdict, VerifyError> {
        let failure_witness = match method {
            Method::Full => {
                self.guard_rank()?;
                self.scan_pairs(&incomparable_pairs(self.candidate.rank), None)?
            }
            Method::Inductive => {
                let mut memo = BTreeMap::new();
                self.inductive_range(1, self.candidate.rank, &mut memo)?
            }
        };
        Ok(CStringVerdict {
            is_cstring: failure_witness.is_none(),
            method,
            failure_witness,
        })
    }

    /// Classifies the generator images modulo `normal` without building a
    /// quotient representation: images collapse, or fail the intersection
    /// property (witnessed), or form a C-string. Passing the trivial group
    /// reproduces the full C-string check.
    pub fn quotient_check(
        &self,
        normal: &PermutationGroup,
    ) -> Result<QuotientVerdict, VerifyError> {
        if normal.degree() != self.candidate.degree() {
            return Err(GroupError::DegreeMismatch {
                expected: self.candidate.degree(),
                found: normal.degree(),
            }
            .into());
        }
        self.guard_rank()?;
        let full = self.full_group()?;
        if !normal.is_normal_in(&full) {
            return Err(VerifyError::NotNormal);
        }
        let ts = &self.candidate.generators;
        for (i, t) in ts.iter().enumerate() {
            if normal.contains(t) {
                return Ok(QuotientVerdict::Collapsed(CollapseWitness::TrivialImage {
                    index: i + 1,
                }));
            }
        }
        for i in 0..ts.len() {
            for j in i + 1..ts.len() {
                if normal.coset_equal(&ts[i], &ts[j]) {
                    return Ok(QuotientVerdict::Collapsed(CollapseWitness::EqualImages {
                        left: i + 1,
                        right: j + 1,
                    }));
                }
            }
        }
        match self.scan_pairs(&incomparable_pairs(self.candidate.rank), Some(normal))? {
            Some(witness) => Ok(QuotientVerdict::NotCString(witness)),
            None => Ok(QuotientVerdict::IsCString),
        }
    }

    /// Runs the quotient check against every catalog entry. Requires the
    /// tuple to generate the full `B_n` the context describes.
    pub fn unravelled(&self, ctx: &BnContext) -> Result<UnravelledReport, VerifyError> {
        let full = self.full_group()?;
        if !ctx.identify_bn(&full) {
            return Err(VerifyError::NotHyperoctahedral {
                n: ctx.n(),
                degree: ctx.degree(),
            });
        }
        let mut checks = Vec::new();
        for entry in ctx.normal_subgroup_catalog() {
            let verdict = self.quotient_check(&entry.group)?;
            checks.push(QuotientCheck {
                label: entry.label,
                expected_index: entry.expected_index,
                verdict,
            });
        }
        let unravelled = checks
            .iter()
            .all(|c| !matches!(c.verdict, QuotientVerdict::IsCString));
        Ok(UnravelledReport {
            checks,
            unravelled,
            assumption: CATALOG_ASSUMPTION,
        })
    }

    fn guard_rank(&self) -> Result<(), VerifyError> {
        if self.candidate.rank > FULL_METHOD_MAX_RANK {
            return Err(VerifyError::RankTooLargeForPairScan {
                rank: self.candidate.rank,
                max: FULL_METHOD_MAX_RANK,
            });
        }
        Ok(())
    }

    /// Walks the pairs in order, evaluating each fixed-size chunk in
    /// parallel and returning the first violation in pair order. With
    /// `normal` present, every membership test happens in the joined groups
    /// `⟨G_J ∪ N⟩`, which decide the quotient question by correspondence.
    fn scan_pairs(
        &self,
        pairs: &[(Vec<usize>, Vec<usize>)],
        normal: Option<&PermutationGroup>,
    ) -> Result<Option<FailureWitness>, VerifyError> {
        let mut joined: BTreeMap<Vec<usize>, Arc<PermutationGroup>> = BTreeMap::new();
        for chunk in pairs.chunks(PAIR_CHUNK) {
            let mut tasks = Vec::with_capacity(chunk.len());
            for (j, k) in chunk {
                let meet = intersect_sorted(j, k);
                let side_j = self.subgroup(j)?;
                let side_k = self.subgroup(k)?;
                let side_meet = self.subgroup(&meet)?;
                let (memb_j, memb_k, expected) = match normal {
                    None => (side_j.clone(), side_k.clone(), side_meet.clone()),
                    Some(n) => (
                        self.joined_with(&mut joined, j, n)?,
                        self.joined_with(&mut joined, k, n)?,
                        self.joined_with(&mut joined, &meet, n)?,
                    ),
                };
                tasks.push(PairTask {
                    j: j.clone(),
                    k: k.clone(),
                    side_j,
                    side_k,
                    side_meet,
                    memb_j,
                    memb_k,
                    expected,
                });
            }
            let outcomes: Vec<Option<Permutation>> = tasks
                .par_iter()
                .map(|t| {
                    pair_violation(
                        &t.side_j, &t.side_k, &t.side_meet, &t.memb_j, &t.memb_k, &t.expected,
                    )
                })
                .collect::<Result<_, GroupError>>()?;
            for (task, outcome) in tasks.iter().zip(outcomes) {
                if let Some(element) = outcome {
                    return Ok(Some(FailureWitness::checked(
                        task.j.clone(),
                        task.k.clone(),
                        element,
                        &task.memb_j,
                        &task.memb_k,
                        &task.expected,
                    )));
                }
            }
        }
        Ok(None)
    }

    fn joined_with(
        &self,
        cache: &mut BTreeMap<Vec<usize>, Arc<PermutationGroup>>,
        indices: &[usize],
        normal: &PermutationGroup,
    ) -> Result<Arc<PermutationGroup>, GroupError> {
        if let Some(hit) = cache.get(indices) {
            return Ok(hit.clone());
        }
        let group = Arc::new(self.subgroup(indices)?.join(normal)?);
        cache.insert(indices.to_vec(), group.clone());
        Ok(group)
    }

    /// The head/tail recursion: an interval is a C-string when both
    /// one-shorter sub-intervals are and the head meets the tail in exactly
    /// the shared middle. Intervals of rank at most 2 are dihedral as soon
    /// as the generators are distinct.
    fn inductive_range(
        &self,
        a: usize,
        b: usize,
        memo: &mut BTreeMap<(usize, usize), Option<FailureWitness>>,
    ) -> Result<Option<FailureWitness>, VerifyError> {
        if let Some(hit) = memo.get(&(a, b)) {
            return Ok(hit.clone());
        }
        let ts = &self.candidate.generators;
        let result = if b - a < 2 {
            if a < b && ts[a - 1] == ts[b - 1] {
                let in_j = self.subgroup(&[a])?;
                let in_k = self.subgroup(&[b])?;
                let outside = self.subgroup(&[])?;
                Some(FailureWitness::checked(
                    vec![a],
                    vec![b],
                    ts[a - 1].clone(),
                    &in_j,
                    &in_k,
                    &outside,
                ))
            } else {
                None
            }
        } else if let Some(w) = self.inductive_range(a, b - 1, memo)? {
            Some(w)
        } else if let Some(w) = self.inductive_range(a + 1, b, memo)? {
            Some(w)
        } else {
            let j: Vec<usize> = (a..b).collect();
            let k: Vec<usize> = (a + 1..=b).collect();
            let meet: Vec<usize> = (a + 1..b).collect();
            let side_j = self.subgroup(&j)?;
            let side_k = self.subgroup(&k)?;
            let side_meet = self.subgroup(&meet)?;
            pair_violation(&side_j, &side_k, &side_meet, &side_j, &side_k, &side_meet)?
                .map(|x| FailureWitness::checked(j, k, x, &side_j, &side_k, &side_meet))
        };
        memo.insert((a, b), result.clone());
        Ok(result)
    }
}

struct PairTask {
    j: Vec<usize>,
    k: Vec<usize>,
    side_j: Arc<PermutationGroup>,
    side_k: Arc<PermutationGroup>,
    side_meet: Arc<PermutationGroup>,
    memb_j: Arc<PermutationGroup>,
    memb_k: Arc<PermutationGroup>,
    expected: Arc<PermutationGroup>,
}

/// Decides `memb_j ∩ memb_k = expected` given that `expected` contains the
/// shared parabolic `side_meet` and each `side_*` is contained in the
/// matching `memb_*`. Returns a violating element if one exists.
///
/// Because `side_meet ⊆ expected` and `side_meet ⊆ memb_j ∩ memb_k`, a
/// violation exists iff one of the parabolic sides holds an element of the
/// other membership group outside `expected` — and it is enough to test one
/// representative per `side_meet`-coset. The cheapest of the four resulting
/// strategies (stream either side, traverse either side's cosets) is
/// chosen; when none is affordable the generic intersection machinery
/// decides instead.
fn pair_violation(
    side_j: &PermutationGroup,
    side_k: &PermutationGroup,
    side_meet: &PermutationGroup,
    memb_j: &PermutationGroup,
    memb_k: &PermutationGroup,
    expected: &PermutationGroup,
) -> Result<Option<Permutation>, GroupError> {
    let index_j = side_j.order() / side_meet.order();
    let index_k = side_k.order() / side_meet.order();
    let mut options: Vec<(u128, u8)> = Vec::new();
    if index_j <= TRANSVERSAL_INDEX_CAP {
        options.push((index_j * index_j, 0));
    }
    if index_k <= TRANSVERSAL_INDEX_CAP {
        options.push((index_k * index_k, 1));
    }
    if side_j.order() <= PAIR_STREAM_LIMIT {
        options.push((side_j.order(), 2));
    }
    if side_k.order() <= PAIR_STREAM_LIMIT {
        options.push((side_k.order(), 3));
    }
    options.sort_unstable();
    match options.first() {
        Some(&(_, 0)) => Ok(transversal_violation(
            side_j, side_meet, index_j, memb_k, expected,
        )),
        Some(&(_, 1)) => Ok(transversal_violation(
            side_k, side_meet, index_k, memb_j, expected,
        )),
        Some(&(_, 2)) => Ok(stream_violation(side_j, memb_k, expected)),
        Some(&(_, 3)) => Ok(stream_violation(side_k, memb_j, expected)),
        _ => match memb_j.intersection_equals(memb_k, expected)? {
            Ok(()) => Ok(None),
            Err(element) => Ok(Some(element)),
        },
    }
}

fn stream_violation(
    source: &PermutationGroup,
    other: &PermutationGroup,
    expected: &PermutationGroup,
) -> Option<Permutation> {
    source
        .iter_elements()
        .find(|e| other.contains(e) && !expected.contains(e))
}

fn transversal_violation(
    source: &PermutationGroup,
    meet: &PermutationGroup,
    index: u128,
    other: &PermutationGroup,
    expected: &PermutationGroup,
) -> Option<Permutation> {
    coset_transversal(source, meet, index as usize)
        .into_iter()
        .find(|r| other.contains(r) && !expected.contains(r))
}

/// Right-coset representatives of `subgroup` in `group`, found by breadth-
/// first closure under right multiplication by the generators.
fn coset_transversal(
    group: &PermutationGroup,
    subgroup: &PermutationGroup,
    index: usize,
) -> Vec<Permutation> {
    let mut reps = vec![Permutation::identity(group.degree())];
    let mut next = 0;
    while next < reps.len() {
        let rep = reps[next].clone();
        next += 1;
        for gen in group.generators() {
            let candidate = rep.compose(gen);
            let seen = reps
                .iter()
                .any(|r| subgroup.contains(&candidate.compose(&r.inverse())));
            if !seen {
                reps.push(candidate);
            }
        }
    }
    assert_eq!(
        reps.len(),
        index,
        "a transversal must have exactly one representative per coset"
    );
    reps
}

/// All unordered pairs of index subsets with neither side contained in the
/// other, sorted by total size and then lexicographically — comparable
/// pairs satisfy the intersection property for free.
fn incomparable_pairs(rank: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    assert!(rank <= FULL_METHOD_MAX_RANK, "guarded by callers");
    let subsets: Vec<Vec<usize>> = (1u32..(1u32 << rank))
        .map(|mask| (1..=rank).filter(|i| mask >> (i - 1) & 1 == 1).collect())
        .collect();
    let mut pairs = Vec::new();
    for (a, j) in subsets.iter().enumerate() {
        for k in &subsets[a + 1..] {
            if is_subset(j, k) || is_subset(k, j) {
                continue;
            }
            if j <= k {
                pairs.push((j.clone(), k.clone()));
            } else {
                pairs.push((k.clone(), j.clone()));
            }
        }
    }
    pairs.sort_by(|(j1, k1), (j2, k2)| {
        (j1.len() + k1.len(), j1, k1).cmp(&(j2.len() + k2.len(), j2, k2))
    });
    pairs
}

fn is_subset(inner: &[usize], outer: &[usize]) -> bool {
    inner.iter().all(|x| outer.binary_search(x).is_ok())
}

fn intersect_sorted(j: &[usize], k: &[usize]) -> Vec<usize> {
    j.iter()
        .filter(|x| k.binary_search(x).is_ok())
        .copied()
        .collect()
}

/// Whether the tuple was checked against the order of the `B_n` it is
/// supposed to generate.
#[derive(Clone, Copy, Debug)]
pub struct AmbientBn {
    pub n: usize,
    pub expected_order: u128,
    pub matches: bool,
}

/// Wall-clock duration of one verification phase.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseTiming {
    pub phase: &'static str,
    pub seconds: f64,
}

fn lap(timings: &mut Vec<PhaseTiming>, clock: &mut std::time::Instant, phase: &'static str) {
    timings.push(PhaseTiming {
        phase,
        seconds: clock.elapsed().as_secs_f64(),
    });
    *clock = std::time::Instant::now();
}

/// Everything one verification run establishes, with named sub-checks
/// recorded rather than asserted.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub family: Family,
    pub n: usize,
    pub rank: usize,
    pub degree: usize,
    pub group_order: u128,
    pub ambient: Option<AmbientBn>,
    pub schlafli: SchlafliSymbol,
    pub cstring: Vec<CStringVerdict>,
    pub parabolics: Vec<ParabolicComparison>,
    pub identities: Vec<IdentityCheck>,
    pub unravelled: Option<UnravelledReport>,
    pub expected_unravelled: Option<bool>,
    pub timings: Vec<PhaseTiming>,
}

impl VerificationReport {
    /// True when every asserted sub-check passed: the ambient group
    /// matches, every executed method says C-string, every fingerprint is
    /// consistent, every identity holds, and the unravelled verdict agrees
    /// with the family's claim where the family makes one.
    pub fn all_passed(&self) -> bool {
        self.ambient.map_or(true, |a| a.matches)
            && !self.cstring.is_empty()
            && self.cstring.iter().all(|v| v.is_cstring)
            && self.parabolics.iter().all(|p| p.consistent)
            && self.identities.iter().all(|c| c.holds)
            && match (&self.unravelled, self.expected_unravelled) {
                (Some(report), Some(expected)) => report.unravelled == expected,
                _ => true,
            }
    }
}

/// Knobs for [`verify_theorem_with`] and [`verify_candidate_with`].
#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    pub method: MethodSelection,
    pub skip_unravel: bool,
}

/// Verifies one family instance end to end: construction, ambient order,
/// Schläfli symbol, the C-string property by the selected methods,
/// parabolic fingerprints, the closed-form identities, the coset witnesses,
/// and the unravelled decision.
pub fn verify_theorem(family: Family, n: usize) -> Result<VerificationReport, VerifyError> {
    verify_theorem_with(family, n, &VerifyOptions::default())
}

pub fn verify_theorem_with(
    family: Family,
    n: usize,
    options: &VerifyOptions,
) -> Result<VerificationReport, VerifyError> {
    let mut timings = Vec::new();
    let mut clock = std::time::Instant::now();
    let candidate = match family {
        Family::Thm12 => thm12_candidate(n)?,
        Family::Thm13 => thm13_candidate(n)?,
        Family::Custom => return Err(VerifyError::UnsupportedFamily(family)),
    };
    let ctx = BnContext::new(n).expect("family preconditions bound n from below");
    let verifier = CandidateVerifier::new(&candidate);
    let group = verifier.full_group()?;
    let ambient = AmbientBn {
        n,
        expected_order: bn_order(n),
        matches: ctx.identify_bn(&group),
    };
    lap(&mut timings, &mut clock, "construction");
    let mut cstring = Vec::new();
    for &method in options.method.methods() {
        cstring.push(verifier.is_cstring(method)?);
        match method {
            Method::Full => lap(&mut timings, &mut clock, "cstring-full"),
            Method::Inductive => lap(&mut timings, &mut clock, "cstring-inductive"),
        }
    }
    let parabolics = match family {
        Family::Thm12 => thm12_parabolics(&verifier, n)?,
        Family::Thm13 => thm13_parabolics(&verifier, n)?,
        Family::Custom => unreachable!("rejected above"),
    };
    lap(&mut timings, &mut clock, "parabolics");
    let mut identities = identity_checks(family, n)?;
    identities.extend(structural_checks(family, n, &verifier, &ctx)?);
    lap(&mut timings, &mut clock, "identities");
    let unravelled = if options.skip_unravel {
        None
    } else {
        let report = verifier.unravelled(&ctx)?;
        lap(&mut timings, &mut clock, "unravel");
        Some(report)
    };
    let expected_unravelled = match family {
        Family::Thm12 => Some(n > 5),
        Family::Thm13 => (n % 2 == 0).then_some(true),
        Family::Custom => unreachable!("rejected above"),
    };
    Ok(VerificationReport {
        family,
        n,
        rank: candidate.rank,
        degree: candidate.degree(),
        group_order: group.order(),
        ambient: Some(ambient),
        schlafli: verifier.schlafli(),
        cstring,
        parabolics,
        identities,
        unravelled,
        expected_unravelled,
        timings,
    })
}

/// Verifies a tuple that came from outside the two families: order,
/// Schläfli symbol, and the C-string property. No ambient identification,
/// identities, or unravelled decision are attempted.
pub fn verify_candidate(candidate: &CStringCandidate) -> Result<VerificationReport, VerifyError> {
    verify_candidate_with(candidate, &VerifyOptions::default())
}

pub fn verify_candidate_with(
    candidate: &CStringCandidate,
    options: &VerifyOptions,
) -> Result<VerificationReport, VerifyError> {
    let mut timings = Vec::new();
    let mut clock = std::time::Instant::now();
    let verifier = CandidateVerifier::new(candidate);
    let group = verifier.full_group()?;
    lap(&mut timings, &mut clock, "construction");
    let mut cstring = Vec::new();
    for &method in options.method.methods() {
        cstring.push(verifier.is_cstring(method)?);
        match method {
            Method::Full => lap(&mut timings, &mut clock, "cstring-full"),
            Method::Inductive => lap(&mut timings, &mut clock, "cstring-inductive"),
        }
    }
    Ok(VerificationReport {
        family: candidate.family,
        n: candidate.n,
        rank: candidate.rank,
        degree: candidate.degree(),
        group_order: group.order(),
        ambient: None,
        schlafli: verifier.schlafli(),
        cstring,
        parabolics: Vec::new(),
        identities: Vec::new(),
        unravelled: None,
        expected_unravelled: None,
        timings,
    })
}

fn compare_parabolic(
    verifier: &CandidateVerifier<'_>,
    indices: Vec<usize>,
    reference_group: &PermutationGroup,
    reference: String,
) -> Result<ParabolicComparison, GroupError> {
    let parabolic = verifier.subgroup(&indices)?;
    let fp = fingerprint(&parabolic, DEFAULT_HISTOGRAM_CAP);
    let consistent = fp == fingerprint(reference_group, DEFAULT_HISTOGRAM_CAP);
    Ok(ParabolicComparison {
        indices,
        fingerprint: fp,
        reference,
        consistent,
    })
}

fn thm12_parabolics(
    verifier: &CandidateVerifier<'_>,
    n: usize,
) -> Result<Vec<ParabolicComparison>, GroupError> {
    Ok(vec![
        compare_parabolic(
            verifier,
            vec![1, 2, 3],
            &symmetric_reference(n),
            format!("Sym({n})"),
        )?,
        compare_parabolic(
            verifier,
            vec![2, 3, 4],
            &z2_sym_reference(5),
            "Z2 x Sym(5)".to_owned(),
        )?,
    ])
}

fn thm13_parabolics(
    verifier: &CandidateVerifier<'_>,
    n: usize,
) -> Result<Vec<ParabolicComparison>, GroupError> {
    let m = n - 4;
    let mut out = Vec::new();
    for k in 4..=m {
        out.push(compare_parabolic(
            verifier,
            (4..=k).collect(),
            &symmetric_reference(k - 2),
            format!("Sym({})", k - 2),
        )?);
        out.push(compare_parabolic(
            verifier,
            (3..=k).collect(),
            &z2_sym_reference(k - 1),
            format!("Z2 x Sym({})", k - 1),
        )?);
        out.push(compare_parabolic(
            verifier,
            (2..=k).collect(),
            &dih8_sym_reference(k),
            format!("Dih8 x Sym({k})"),
        )?);
    }
    Ok(out)
}

/// Family-specific subgroup facts that go beyond the closed-form
/// identities: the structure of the tail parabolic's center, the head/tail
/// meet, and whether each coset witness actually defeats its quotient
/// (i.e. its image escapes the image of the shared parabolic).
fn structural_checks(
    family: Family,
    n: usize,
    verifier: &CandidateVerifier<'_>,
    ctx: &BnContext,
) -> Result<Vec<IdentityCheck>, VerifyError> {
    let catalog = ctx.normal_subgroup_catalog();
    let entry = |label: CatalogLabel| -> &PermutationGroup {
        &catalog
            .iter()
            .find(|e| e.label == label)
            .expect("the catalog always carries all seven labels")
            .group
    };
    let mut checks = Vec::new();
    match family {
        Family::Thm12 => {
            let ts = &verifier.candidate().generators;
            let tail = verifier.subgroup(&[2, 3, 4])?;
            let word = ts[1].compose(&ts[2]).compose(&ts[3]).power(5);
            let center = tail.center();
            checks.push(IdentityCheck {
                name: "tail-parabolic-center-is-fifth-power",
                holds: center.order() == 2 && center.contains(&word) && !word.is_identity(),
            });
            let head = verifier.subgroup(&[1, 2, 3])?;
            let middle = verifier.subgroup(&[2, 3])?;
            let meet = head.intersection(&tail)?;
            checks.push(IdentityCheck {
                name: "head-tail-intersection-is-middle-dihedral",
                holds: meet.order() == 12 && meet.equals(&middle),
            });
            for (name, label) in [
                ("m1-witness-defeats-quotient", CatalogLabel::M1),
                ("m2-witness-defeats-quotient", CatalogLabel::M2),
            ] {
                let witness = witnesses_thm12(n, label)?;
                checks.push(IdentityCheck {
                    name,
                    holds: witness_defeats(verifier, &witness, entry(label))?,
                });
            }
            if n > 5 {
                let witness = witnesses_thm12(n, CatalogLabel::Omega0)?;
                checks.push(IdentityCheck {
                    name: "omega0-witness-defeats-quotient",
                    holds: witness_defeats(verifier, &witness, entry(CatalogLabel::Omega0))?,
                });
            }
        }
        Family::Thm13 => {
            let witness = witnesses_thm13(n)?;
            checks.push(IdentityCheck {
                name: "omega0-witness-defeats-quotient",
                holds: witness_defeats(verifier, &witness, entry(CatalogLabel::Omega0))?,
            });
        }
        Family::Custom => {}
    }
    Ok(checks)
}

/// A coset witness defeats its quotient when `g` and `h` certify membership
/// in the two parabolic images while `g`'s image stays outside the image of
/// the shared parabolic — exactly the intersection-property failure.
fn witness_defeats(
    verifier: &CandidateVerifier<'_>,
    witness: &QuotientWitness,
    normal: &PermutationGroup,
) -> Result<bool, VerifyError> {
    let in_j = verifier.subgroup(&witness.j_set)?;
    let in_k = verifier.subgroup(&witness.k_set)?;
    let meet = intersect_sorted(&witness.j_set, &witness.k_set);
    let core = verifier.subgroup(&meet)?.join(normal)?;
    Ok(in_j.contains(&witness.g)
        && in_k.contains(&witness.h)
        && normal.contains(&witness.g.compose(&witness.h))
        && !core.contains(&witness.g))
}

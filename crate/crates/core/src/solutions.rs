//! Chains, upper bounds, maximal elements, undominated sets, top cycles
//! and the Schwartz/GOCHA choice sets.
//!
//! Conventions in force here: `(u, v)` means "u weakly dominates v", so a
//! set is undominated when no edge enters it from outside, the minimal
//! undominated sets are the source components of the condensation, and a
//! top cycle is an undominated cycle with singletons admitted as
//! degenerate (trivial) cycles.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::quotient::{equivalence_classes, QuotientError};
use crate::relation::{IndexSet, Relation, RelationError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolutionsError {
    #[error("operation requires a nonempty universe")]
    EmptyUniverse,
    #[error("operation requires a nonempty subset")]
    EmptySubset,
    #[error("index {index} out of range for a universe of {n} elements")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("set is not a chain: {0} and {1} are incomparable")]
    NotAChain(usize, usize),
}

impl From<QuotientError> for SolutionsError {
    fn from(_: QuotientError) -> Self {
        SolutionsError::EmptyUniverse
    }
}

impl From<RelationError> for SolutionsError {
    fn from(e: RelationError) -> Self {
        match e {
            RelationError::IndexOutOfRange { index, n } => {
                SolutionsError::IndexOutOfRange { index, n }
            }
            _ => SolutionsError::EmptyUniverse,
        }
    }
}

fn check_members(r: &Relation, set: &IndexSet) -> Result<(), SolutionsError> {
    let n = r.n();
    for &i in set {
        if i >= n {
            return Err(SolutionsError::IndexOutOfRange { index: i, n });
        }
    }
    Ok(())
}

/// Which direction of the relation holds between two chain members.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PairDirection {
    Forward,
    Backward,
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparabilityWitness {
    pub lo: usize,
    pub hi: usize,
    pub direction: PairDirection,
}

/// A set whose members are pairwise comparable, together with the
/// direction witnessing each comparison. The empty set is a chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Chain {
    pub members: IndexSet,
    pub order_witness: Vec<ComparabilityWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainVerdict {
    Chain(Chain),
    Incomparable(usize, usize),
}

/// Decides whether `set` is a chain of `r`, returning either the direction
/// witnesses or the first incomparable pair.
pub fn check_chain(r: &Relation, set: &IndexSet) -> Result<ChainVerdict, SolutionsError> {
    check_members(r, set)?;
    let mut witnesses = Vec::new();
    let members: Vec<usize> = set.iter().copied().collect();
    for (i, &lo) in members.iter().enumerate() {
        for &hi in &members[i + 1..] {
            let fwd = r.contains(lo, hi);
            let bwd = r.contains(hi, lo);
            let direction = match (fwd, bwd) {
                (true, true) => PairDirection::Both,
                (true, false) => PairDirection::Forward,
                (false, true) => PairDirection::Backward,
                (false, false) => return Ok(ChainVerdict::Incomparable(lo, hi)),
            };
            witnesses.push(ComparabilityWitness { lo, hi, direction });
        }
    }
    Ok(ChainVerdict::Chain(Chain {
        members: set.clone(),
        order_witness: witnesses,
    }))
}

pub fn is_chain(r: &Relation, set: &IndexSet) -> Result<bool, SolutionsError> {
    Ok(matches!(check_chain(r, set)?, ChainVerdict::Chain(_)))
}

/// All upper bounds of the chain `c`: every `x` with `x R y` (strictly,
/// `x P(R) y`) for each `y` in `c`. The bound may lie inside `c`; the
/// empty chain is bounded by the entire universe.
pub fn upper_bounds(r: &Relation, c: &IndexSet, strict: bool) -> Result<IndexSet, SolutionsError> {
    match check_chain(r, c)? {
        ChainVerdict::Chain(_) => {}
        ChainVerdict::Incomparable(x, y) => return Err(SolutionsError::NotAChain(x, y)),
    }
    let strict_part;
    let rel = if strict {
        strict_part = r.asymmetric_part();
        &strict_part
    } else {
        r
    };
    Ok((0..r.n())
        .filter(|&x| c.iter().all(|&y| rel.contains(x, y)))
        .collect())
}

/// Elements no other element strictly dominates.
pub fn maximal_elements(r: &Relation) -> IndexSet {
    let p = r.asymmetric_part();
    (0..r.n())
        .filter(|&x| !(0..r.n()).any(|y| p.contains(y, x)))
        .collect()
}

/// `None` when no outside element dominates a member of `set`; otherwise
/// the offending `(outsider, member)` pair.
pub fn domination_witness(
    r: &Relation,
    set: &IndexSet,
) -> Result<Option<(usize, usize)>, SolutionsError> {
    if set.is_empty() {
        return Err(SolutionsError::EmptySubset);
    }
    check_members(r, set)?;
    for y in 0..r.n() {
        if set.contains(&y) {
            continue;
        }
        for &x in set {
            if r.contains(y, x) {
                return Ok(Some((y, x)));
            }
        }
    }
    Ok(None)
}

pub fn is_undominated(r: &Relation, set: &IndexSet) -> Result<bool, SolutionsError> {
    Ok(domination_witness(r, set)?.is_none())
}

/// The minimal undominated sets: exactly the source components of the
/// condensation, in ascending order of their smallest member.
pub fn minimal_undominated_sets(r: &Relation) -> Result<Vec<IndexSet>, SolutionsError> {
    let partition = equivalence_classes(r)?;
    let mut has_incoming = vec![false; partition.class_count()];
    for (u, v) in r.pairs() {
        let (cu, cv) = (partition.class_of(u), partition.class_of(v));
        if cu != cv {
            has_incoming[cv] = true;
        }
    }
    Ok(partition
        .classes()
        .iter()
        .zip(&has_incoming)
        .filter(|(_, &incoming)| !incoming)
        .map(|(class, _)| class.clone())
        .collect())
}

/// A recorded path `from = path[0] -> ... -> path.last() = to` whose every
/// step is a pair of the underlying relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathCert {
    pub from: usize,
    pub to: usize,
    pub path: Vec<usize>,
}

/// A top cycle plus the evidence for it: either full mutual-reachability
/// path certificates, or a `trivial` marker for a singleton that cannot
/// reach itself.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleWitness {
    pub set: IndexSet,
    pub trivial: bool,
    pub closure_cert: Vec<PathCert>,
}

/// Breadth-first parents within `allowed`, rooted at `from`.
fn bfs_parents(r: &Relation, allowed: &IndexSet, from: usize) -> BTreeMap<usize, usize> {
    let mut parent = BTreeMap::new();
    let mut queue = VecDeque::new();
    queue.push_back(from);
    while let Some(u) = queue.pop_front() {
        for v in r.successors(u) {
            if v != from && allowed.contains(&v) && !parent.contains_key(&v) {
                parent.insert(v, u);
                queue.push_back(v);
            }
        }
    }
    parent
}

fn path_from_parents(parents: &BTreeMap<usize, usize>, from: usize, to: usize) -> Vec<usize> {
    let mut rev = vec![to];
    let mut cur = to;
    while cur != from {
        cur = parents[&cur];
        rev.push(cur);
    }
    rev.reverse();
    rev
}

fn certify(r: &Relation, set: &IndexSet) -> CycleWitness {
    if set.len() == 1 {
        let x = *set.iter().next().expect("nonempty");
        return if r.contains(x, x) {
            CycleWitness {
                set: set.clone(),
                trivial: false,
                closure_cert: vec![PathCert { from: x, to: x, path: vec![x, x] }],
            }
        } else {
            CycleWitness { set: set.clone(), trivial: true, closure_cert: Vec::new() }
        };
    }
    let parents: BTreeMap<usize, BTreeMap<usize, usize>> = set
        .iter()
        .map(|&x| (x, bfs_parents(r, set, x)))
        .collect();
    let mut certs = Vec::new();
    for &x in set {
        for &y in set {
            let path = if x != y {
                path_from_parents(&parents[&x], x, y)
            } else if r.contains(x, x) {
                vec![x, x]
            } else {
                // Route a loop through the first in-component successor.
                let w = r
                    .successors(x)
                    .find(|v| set.contains(v))
                    .expect("strongly connected components of size >= 2 have internal edges");
                let mut path = vec![x];
                path.extend(path_from_parents(&parents[&w], w, x));
                path
            };
            certs.push(PathCert { from: x, to: y, path });
        }
    }
    CycleWitness { set: set.clone(), trivial: false, closure_cert: certs }
}

/// The minimal undominated sets, each certified as a top cycle.
pub fn top_cycles(r: &Relation) -> Result<Vec<CycleWitness>, SolutionsError> {
    Ok(minimal_undominated_sets(r)?
        .iter()
        .map(|set| certify(r, set))
        .collect())
}

/// Top cycles of the strict (asymmetric) part.
pub fn strong_top_cycles(r: &Relation) -> Result<Vec<CycleWitness>, SolutionsError> {
    top_cycles(&r.asymmetric_part())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SchwartzVariant {
    /// Union of the minimal undominated sets of the relation as given.
    Gocha,
    /// Union of the minimal undominated sets of the asymmetric part.
    Strict,
}

pub fn schwartz(r: &Relation, variant: SchwartzVariant) -> Result<IndexSet, SolutionsError> {
    let sets = match variant {
        SchwartzVariant::Gocha => minimal_undominated_sets(r)?,
        SchwartzVariant::Strict => minimal_undominated_sets(&r.asymmetric_part())?,
    };
    Ok(sets.into_iter().flatten().collect())
}

/// The choice set on a subset: the Schwartz set of the relation restricted
/// to it, mapped back to the original indices. Always nonempty.
pub fn gocha_choice(r: &Relation, subset: &IndexSet) -> Result<IndexSet, SolutionsError> {
    if subset.is_empty() {
        return Err(SolutionsError::EmptySubset);
    }
    let restricted = r.restrict(subset)?;
    let chosen = schwartz(&restricted, SchwartzVariant::Gocha)?;
    let original: Vec<usize> = subset.iter().copied().collect();
    Ok(chosen.into_iter().map(|i| original[i]).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DebKind {
    UndominatedElement,
    StrongTopCycle,
    Violation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DebEntry {
    pub set: IndexSet,
    pub kind: DebKind,
}

/// Decomposition of the minimal undominated sets into undominated
/// elements and strong top cycles, evaluated against both the strict
/// dominance relation and the relation as literally given.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DebReport {
    pub strict: Vec<DebEntry>,
    pub literal: Vec<DebEntry>,
}

impl DebReport {
    pub fn strict_violations(&self) -> Vec<&IndexSet> {
        self.strict
            .iter()
            .filter(|e| e.kind == DebKind::Violation)
            .map(|e| &e.set)
            .collect()
    }

    pub fn literal_violations(&self) -> Vec<&IndexSet> {
        self.literal
            .iter()
            .filter(|e| e.kind == DebKind::Violation)
            .map(|e| &e.set)
            .collect()
    }
}

pub fn deb_decompose(r: &Relation) -> Result<DebReport, SolutionsError> {
    let strict_part = r.asymmetric_part();
    let strict_closure = strict_part.transitive_closure();
    let strict_sources = minimal_undominated_sets(&strict_part)?;

    let classify = |set: &IndexSet| -> DebKind {
        if set.len() == 1 {
            return DebKind::UndominatedElement;
        }
        let mutual = set.iter().all(|&x| {
            set.iter()
                .all(|&y| x == y || (strict_closure.contains(x, y) && strict_closure.contains(y, x)))
        });
        let is_strict_source = strict_sources.contains(set);
        if mutual && is_strict_source {
            DebKind::StrongTopCycle
        } else {
            DebKind::Violation
        }
    };

    let strict = strict_sources
        .iter()
        .map(|set| DebEntry { set: set.clone(), kind: classify(set) })
        .collect();
    let literal = minimal_undominated_sets(r)?
        .iter()
        .map(|set| DebEntry { set: set.clone(), kind: classify(set) })
        .collect();
    Ok(DebReport { strict, literal })
}

/// Everything the solution concepts produce for one relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolutionReport {
    pub maximal: IndexSet,
    pub minimal_undominated: Vec<IndexSet>,
    pub top_cycles: Vec<IndexSet>,
    pub strong_top_cycles: Vec<IndexSet>,
    pub schwartz_gocha: IndexSet,
    pub schwartz_strict: IndexSet,
}

pub fn solve(r: &Relation) -> Result<SolutionReport, SolutionsError> {
    let minimal_undominated = minimal_undominated_sets(r)?;
    let strong: Vec<IndexSet> = minimal_undominated_sets(&r.asymmetric_part())?;
    Ok(SolutionReport {
        maximal: maximal_elements(r),
        top_cycles: minimal_undominated.clone(),
        schwartz_gocha: minimal_undominated.iter().flatten().copied().collect(),
        schwartz_strict: strong.iter().flatten().copied().collect(),
        strong_top_cycles: strong,
        minimal_undominated,
    })
}

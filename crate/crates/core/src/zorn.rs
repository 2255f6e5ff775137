//! Finite constructive counterparts of chain-extension arguments: a
//! bounded-increment fixed-point combinator, tower iteration under a
//! choice function, conforming chains over a partial order, hypothesis
//! checking by exhaustive chain enumeration, and direct top-cycle
//! extraction from a maximal element of the strict closure order.

use serde::Serialize;
use thiserror::Error;

use crate::quotient::{ChoiceError, ChoiceFunction};
use crate::relation::{IndexSet, Relation};
use crate::solutions::{domination_witness, upper_bounds, SolutionsError};

/// Largest universe for which `check_hypothesis` will enumerate chains.
pub const DEFAULT_CHAIN_GUARD: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZornError {
    #[error("operation requires a nonempty universe")]
    EmptyUniverse,
    #[error("step function is not expansive: element {0} was dropped")]
    NotExpansive(usize),
    #[error("step function added more than one element: {0:?}")]
    StepTooLarge(Vec<usize>),
    #[error("step function produced out-of-range element {index} (universe of {n})")]
    StepOutOfRange { index: usize, n: usize },
    #[error("no fixed point reached within {0} applications")]
    CapExceeded(usize),
    #[error("choice function picked {chosen}, which is not a candidate")]
    ChoiceContract { chosen: usize },
    #[error("chain extender returned {candidate}, which is not a strict upper bound")]
    ExtenderContract { candidate: usize },
    #[error("relation is not a partial order")]
    NotPartialOrder,
    #[error("universe of {n} elements exceeds the chain-enumeration guard of {guard}")]
    GuardExceeded { n: usize, guard: usize },
    #[error(transparent)]
    Choice(#[from] ChoiceError),
    #[error(transparent)]
    Solutions(#[from] SolutionsError),
}

/// One tower iteration: the set before the step, the candidate pool the
/// step drew from, and the element added (absent on the terminal step).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TowerStep {
    pub current: IndexSet,
    pub candidate_set: IndexSet,
    pub added: Option<usize>,
}

/// Trace of a chain-extension / top-cycle-extraction run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZornRun {
    pub steps: Vec<TowerStep>,
    pub terminal_chain: IndexSet,
    pub pivot: Option<usize>,
    pub extracted: IndexSet,
}

/// Iterates an expansive step function that grows its argument by at most
/// one element until it stabilizes. The side conditions are enforced per
/// step rather than trusted.
pub fn rudin_fixed_point<G>(
    universe_n: usize,
    start: &IndexSet,
    cap: usize,
    mut step: G,
) -> Result<IndexSet, ZornError>
where
    G: FnMut(&IndexSet) -> IndexSet,
{
    for &i in start {
        if i >= universe_n {
            return Err(ZornError::StepOutOfRange { index: i, n: universe_n });
        }
    }
    let mut current = start.clone();
    for _ in 0..=cap {
        let next = step(&current);
        if let Some(&lost) = current.difference(&next).next() {
            return Err(ZornError::NotExpansive(lost));
        }
        let added: Vec<usize> = next.difference(&current).copied().collect();
        match added.len() {
            0 => return Ok(current),
            1 => {
                if added[0] >= universe_n {
                    return Err(ZornError::StepOutOfRange { index: added[0], n: universe_n });
                }
                current = next;
            }
            _ => return Err(ZornError::StepTooLarge(added)),
        }
    }
    Err(ZornError::CapExceeded(cap))
}

/// Grows a chain from the empty set: at each step the choice function
/// picks one new upper bound of the current chain, until none remain
/// outside it. The terminal chain has no upper bound outside itself.
pub fn extend_chain(r: &Relation, f: &dyn ChoiceFunction) -> Result<ZornRun, ZornError> {
    let mut current = IndexSet::new();
    let mut steps = Vec::new();
    loop {
        let bounds = upper_bounds(r, &current, false)?;
        let candidates: IndexSet = bounds.difference(&current).copied().collect();
        if candidates.is_empty() {
            steps.push(TowerStep { current: current.clone(), candidate_set: candidates, added: None });
            break;
        }
        let chosen = f.select(&candidates)?;
        if !candidates.contains(&chosen) {
            return Err(ZornError::ChoiceContract { chosen });
        }
        steps.push(TowerStep {
            current: current.clone(),
            candidate_set: candidates,
            added: Some(chosen),
        });
        current.insert(chosen);
    }
    Ok(ZornRun { steps, terminal_chain: current, pivot: None, extracted: IndexSet::new() })
}

/// The step function `extend_chain` iterates, exposed so the fixed-point
/// combinator can replay the same tower.
pub fn chain_extension_step<'a>(
    r: &'a Relation,
    f: &'a dyn ChoiceFunction,
) -> impl FnMut(&IndexSet) -> IndexSet + 'a {
    move |current| {
        let Ok(bounds) = upper_bounds(r, current, false) else {
            return current.clone();
        };
        let candidates: IndexSet = bounds.difference(current).copied().collect();
        match f.select(&candidates) {
            Ok(chosen) if candidates.contains(&chosen) => {
                let mut next = current.clone();
                next.insert(chosen);
                next
            }
            _ => current.clone(),
        }
    }
}

/// A chain where every member was produced by applying the extender to
/// the set of members strictly below it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConformingChain {
    /// Members in insertion order, which is strictly increasing.
    pub sequence: Vec<usize>,
    /// For each member, the set of members strictly below it.
    pub below: Vec<IndexSet>,
}

impl ConformingChain {
    /// Replays the extender on every recorded predecessor set and checks
    /// it reproduces the member that was added.
    pub fn replay<F>(&self, mut extender: F) -> bool
    where
        F: FnMut(&IndexSet) -> Option<usize>,
    {
        self.sequence
            .iter()
            .zip(&self.below)
            .all(|(&x, q)| extender(q) == Some(x))
    }
}

/// Builds a conforming chain over a partial order by repeatedly applying
/// a partial extender that maps a chain to one of its strict upper bounds
/// (returning `None` where no strict upper bound exists). The last member
/// is maximal in the order.
pub fn conforming_chain<F>(po: &Relation, mut extender: F) -> Result<ConformingChain, ZornError>
where
    F: FnMut(&IndexSet) -> Option<usize>,
{
    if !po.classify().is_partial_order {
        return Err(ZornError::NotPartialOrder);
    }
    let strict = po.asymmetric_part();
    let mut members = IndexSet::new();
    let mut sequence = Vec::new();
    let mut below = Vec::new();
    while let Some(candidate) = extender(&members) {
        let is_strict_bound = candidate < po.n()
            && !members.contains(&candidate)
            && members.iter().all(|&y| strict.contains(candidate, y));
        if !is_strict_bound {
            return Err(ZornError::ExtenderContract { candidate });
        }
        below.push(members.clone());
        sequence.push(candidate);
        members.insert(candidate);
    }
    Ok(ConformingChain { sequence, below })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisCheck {
    pub holds: bool,
    /// A chain with an empty upper-bound set, when one exists.
    pub unbounded_chain: Option<IndexSet>,
}

pub fn check_hypothesis(r: &Relation) -> Result<HypothesisCheck, ZornError> {
    check_hypothesis_guarded(r, DEFAULT_CHAIN_GUARD)
}

/// Decides whether every chain (the empty one and singletons included)
/// has at least one upper bound. Chains are enumerated depth-first with
/// comparability pruning; still exponential in the worst case, so the
/// universe size is guarded.
pub fn check_hypothesis_guarded(r: &Relation, guard: usize) -> Result<HypothesisCheck, ZornError> {
    let n = r.n();
    if n > guard.min(64) {
        return Err(ZornError::GuardExceeded { n, guard });
    }
    if n == 0 {
        // The empty chain has no upper bound in an empty universe.
        return Ok(HypothesisCheck { holds: false, unbounded_chain: Some(IndexSet::new()) });
    }
    let mut comparable = vec![0u64; n];
    let mut bounders = vec![0u64; n]; // bounders[y] = { x : x R y }
    for x in 0..n {
        for y in 0..n {
            if r.contains(x, y) {
                bounders[y] |= 1 << x;
                if x != y {
                    comparable[x] |= 1 << y;
                    comparable[y] |= 1 << x;
                }
            }
        }
    }
    let full = if n == 64 { !0u64 } else { (1u64 << n) - 1 };

    fn dfs(
        n: usize,
        first: usize,
        chain: u64,
        bounds: u64,
        comparable: &[u64],
        bounders: &[u64],
    ) -> Option<u64> {
        for j in first..n {
            // Every current member must be comparable with j.
            if chain & !comparable[j] != 0 {
                continue;
            }
            let extended = chain | 1 << j;
            let narrowed = bounds & bounders[j];
            if narrowed == 0 {
                return Some(extended);
            }
            if let Some(witness) = dfs(n, j + 1, extended, narrowed, comparable, bounders) {
                return Some(witness);
            }
        }
        None
    }

    match dfs(n, 0, 0, full, &comparable, &bounders) {
        Some(mask) => Ok(HypothesisCheck {
            holds: false,
            unbounded_chain: Some((0..n).filter(|&i| mask >> i & 1 != 0).collect()),
        }),
        None => Ok(HypothesisCheck { holds: true, unbounded_chain: None }),
    }
}

/// Result of the direct extraction: the maximal pivot of the strict
/// closure order and the top cycle grown around it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TopCycleExtraction {
    pub pivot: usize,
    pub cycle: IndexSet,
}

/// Picks the minimum-index element with no strict-closure dominator; if
/// that element is undominated its singleton is returned, otherwise the
/// set of elements mutually closure-connected with it. The result is
/// always a source component, hence a top cycle.
pub fn find_top_cycle(r: &Relation) -> Result<TopCycleExtraction, ZornError> {
    let n = r.n();
    if n == 0 {
        return Err(ZornError::EmptyUniverse);
    }
    let closure = r.transitive_closure();
    let strict = closure.asymmetric_part();
    let pivot = (0..n)
        .find(|&x| !(0..n).any(|y| strict.contains(y, x)))
        .expect("a finite partial order has a maximal element");
    let singleton: IndexSet = [pivot].into_iter().collect();
    if domination_witness(r, &singleton)?.is_none() {
        return Ok(TopCycleExtraction { pivot, cycle: singleton });
    }
    let mut cycle: IndexSet = (0..n)
        .filter(|&y| closure.contains(pivot, y) && closure.contains(y, pivot))
        .collect();
    cycle.insert(pivot);
    Ok(TopCycleExtraction { pivot, cycle })
}

/// Outcome of running the hypothesis check and the top-cycle machinery
/// side by side on one relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub hypothesis: bool,
    pub unbounded_chain: Option<IndexSet>,
    pub top_cycles: Vec<IndexSet>,
    pub extraction_is_top_cycle: bool,
    /// True when a top cycle exists and the extraction produced one.
    pub conclusion: bool,
    pub run: ZornRun,
}

pub fn verify_theorem(r: &Relation) -> Result<TheoremReport, ZornError> {
    verify_theorem_guarded(r, DEFAULT_CHAIN_GUARD)
}

pub fn verify_theorem_guarded(r: &Relation, guard: usize) -> Result<TheoremReport, ZornError> {
    let hypothesis = check_hypothesis_guarded(r, guard)?;
    let cycles: Vec<IndexSet> = crate::solutions::top_cycles(r)?
        .into_iter()
        .map(|w| w.set)
        .collect();
    let extraction = find_top_cycle(r)?;
    let mut run = extend_chain(r, &crate::quotient::MinIndexChoice)?;
    run.pivot = Some(extraction.pivot);
    run.extracted = extraction.cycle.clone();
    let extraction_is_top_cycle = cycles.contains(&extraction.cycle);
    Ok(TheoremReport {
        hypothesis: hypothesis.holds,
        unbounded_chain: hypothesis.unbounded_chain,
        conclusion: !cycles.is_empty() && extraction_is_top_cycle,
        top_cycles: cycles,
        extraction_is_top_cycle,
        run,
    })
}

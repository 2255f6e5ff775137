//! Finite binary relations over a labeled ground set, with the basic
//! derived relations (asymmetric part, transitive closure) and property
//! classification.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::bits::BitMatrix;

/// Set of element indices. `BTreeSet` keeps iteration ascending, which is
/// what every min-index tie-break and deterministic printout relies on.
pub type IndexSet = BTreeSet<usize>;

/// Default cap on the universe size; the dense bit matrix is quadratic.
pub const DEFAULT_MAX_ELEMENTS: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RelationError {
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("{n} elements exceed the configured cap of {cap}")]
    TooManyElements { n: usize, cap: usize },
    #[error("pair ({u}, {v}) out of range for a universe of {n} elements")]
    PairOutOfRange { u: usize, v: usize, n: usize },
    #[error("index {index} out of range for a universe of {n} elements")]
    IndexOutOfRange { index: usize, n: usize },
}

/// The ground set: an ordered list of distinct labels. The position of a
/// label is its element index, and that index order is the canonical
/// tie-break order everywhere downstream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementSet {
    labels: Vec<String>,
}

impl ElementSet {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self, RelationError> {
        Self::with_cap(labels, DEFAULT_MAX_ELEMENTS)
    }

    pub fn with_cap<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        cap: usize,
    ) -> Result<Self, RelationError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() > cap {
            return Err(RelationError::TooManyElements { n: labels.len(), cap });
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(RelationError::DuplicateLabel(l.clone()));
            }
        }
        Ok(ElementSet { labels })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// A binary relation: a ground set plus a set of ordered index pairs,
/// stored as a dense adjacency bit matrix. `(u, v)` is drawn `u -> v` and
/// read "u weakly dominates v". Immutable after construction.
#[derive(Clone, PartialEq, Eq)]
pub struct Relation {
    universe: Arc<ElementSet>,
    adj: BitMatrix,
}

impl Relation {
    pub fn new(
        universe: ElementSet,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, RelationError> {
        let n = universe.len();
        let mut adj = BitMatrix::new(n);
        for (u, v) in pairs {
            if u >= n || v >= n {
                return Err(RelationError::PairOutOfRange { u, v, n });
            }
            adj.set(u, v);
        }
        Ok(Relation { universe: Arc::new(universe), adj })
    }

    /// Convenience constructor used pervasively by tests and fixtures.
    pub fn from_labels(labels: &[&str], pairs: &[(usize, usize)]) -> Result<Self, RelationError> {
        Self::new(ElementSet::new(labels.iter().copied())?, pairs.iter().copied())
    }

    fn derived(&self, adj: BitMatrix) -> Relation {
        Relation { universe: Arc::clone(&self.universe), adj }
    }

    pub fn universe(&self) -> &ElementSet {
        &self.universe
    }

    pub fn n(&self) -> usize {
        self.universe.len()
    }

    #[inline]
    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.adj.get(u, v)
    }

    /// All pairs in ascending `(u, v)` order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|u| self.adj.row_ones(u).map(move |v| (u, v)))
            .collect()
    }

    pub fn pair_count(&self) -> usize {
        self.adj.count_ones()
    }

    /// Successors of `u`: all `v` with `(u, v)` in the relation.
    pub fn successors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj.row_ones(u)
    }

    /// The asymmetric part `P(R)`: pairs whose reverse is absent.
    pub fn asymmetric_part(&self) -> Relation {
        let mut adj = self.adj.clone();
        for u in 0..self.n() {
            for v in self.adj.row_ones(u) {
                if self.adj.get(v, u) {
                    adj.clear(u, v);
                }
            }
        }
        self.derived(adj)
    }

    /// The transitive closure: `(x, y)` present iff some path
    /// `x = x_0 -> x_1 -> ... -> x_k = y` with `k >= 1` runs through the
    /// relation. `(x, x)` therefore appears only when `x` lies on a cycle
    /// or carries a loop; there is no implicit reflexive padding.
    pub fn transitive_closure(&self) -> Relation {
        let mut adj = self.adj.clone();
        adj.close_transitively();
        self.derived(adj)
    }

    /// `P(closure(R))` with the diagonal added: always a partial order.
    pub fn strict_closure_order(&self) -> Relation {
        let mut adj = self.transitive_closure().asymmetric_part().adj;
        for i in 0..self.n() {
            adj.set(i, i);
        }
        self.derived(adj)
    }

    /// The relation induced on `keep`, reindexed to `0..keep.len()` with
    /// labels carried over in ascending original-index order.
    pub fn restrict(&self, keep: &IndexSet) -> Result<Relation, RelationError> {
        let n = self.n();
        for &i in keep {
            if i >= n {
                return Err(RelationError::IndexOutOfRange { index: i, n });
            }
        }
        let ordered: Vec<usize> = keep.iter().copied().collect();
        let universe = ElementSet::new(ordered.iter().map(|&i| self.universe.label(i)))
            .expect("restricting preserves label distinctness");
        let mut adj = BitMatrix::new(ordered.len());
        for (iu, &u) in ordered.iter().enumerate() {
            for (iv, &v) in ordered.iter().enumerate() {
                if self.adj.get(u, v) {
                    adj.set(iu, iv);
                }
            }
        }
        Ok(Relation { universe: Arc::new(universe), adj })
    }

    /// Checks reflexivity, transitivity, antisymmetry and totality per
    /// the standard definitions; every failed flag carries a concrete
    /// counterexample.
    pub fn classify(&self) -> PropertyReport {
        let n = self.n();
        let mut report = PropertyReport {
            reflexive: true,
            transitive: true,
            antisymmetric: true,
            total: true,
            is_partial_order: false,
            is_total_order: false,
            missing_loop: None,
            broken_triple: None,
            symmetric_pair: None,
            incomparable_pair: None,
        };
        for x in 0..n {
            if !self.adj.get(x, x) {
                report.reflexive = false;
                report.missing_loop = Some(x);
                break;
            }
        }
        'transitive: for x in 0..n {
            for z in self.adj.row_ones(x) {
                for y in self.adj.row_ones(z) {
                    if !self.adj.get(x, y) {
                        report.transitive = false;
                        report.broken_triple = Some((x, z, y));
                        break 'transitive;
                    }
                }
            }
        }
        'antisymmetric: for x in 0..n {
            for y in self.adj.row_ones(x) {
                if y != x && self.adj.get(y, x) {
                    report.antisymmetric = false;
                    report.symmetric_pair = Some((x, y));
                    break 'antisymmetric;
                }
            }
        }
        'total: for x in 0..n {
            for y in x + 1..n {
                if !self.adj.get(x, y) && !self.adj.get(y, x) {
                    report.total = false;
                    report.incomparable_pair = Some((x, y));
                    break 'total;
                }
            }
        }
        report.is_partial_order = report.reflexive && report.transitive && report.antisymmetric;
        report.is_total_order = report.is_partial_order && report.total;
        report
    }
}

impl std::fmt::Debug for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Relation(labels={:?}, pairs={:?})",
            self.universe.labels(),
            self.pairs()
        )
    }
}

/// Property flags plus a witness for each failed property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub reflexive: bool,
    pub transitive: bool,
    pub antisymmetric: bool,
    pub total: bool,
    pub is_partial_order: bool,
    pub is_total_order: bool,
    /// `x` with `(x, x)` absent.
    pub missing_loop: Option<usize>,
    /// `(x, z, y)` with `(x, z)` and `(z, y)` present but `(x, y)` absent.
    pub broken_triple: Option<(usize, usize, usize)>,
    /// Distinct `(x, y)` present in both directions.
    pub symmetric_pair: Option<(usize, usize)>,
    /// Distinct `(x, y)` present in neither direction.
    pub incomparable_pair: Option<(usize, usize)>,
}

/// Shared fixtures referenced throughout the test suites.
pub mod fixtures {
    use super::Relation;

    /// `{(a,b),(b,c),(c,a)}` on `{a,b,c}`: a 3-cycle.
    pub fn cyc3() -> Relation {
        Relation::from_labels(&["a", "b", "c"], &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    /// `{(a,b),(a,c)}` on `{a,b,c}`: `a` dominates both others.
    pub fn po() -> Relation {
        Relation::from_labels(&["a", "b", "c"], &[(0, 1), (0, 2)]).unwrap()
    }

    /// `{(a,b),(b,a)}` on `{a,b}`: one symmetric pair.
    pub fn sym2() -> Relation {
        Relation::from_labels(&["a", "b"], &[(0, 1), (1, 0)]).unwrap()
    }

    /// `{(a,b),(b,a),(c,b)}` on `{a,b,c}`: a symmetric pair plus one strict edge.
    pub fn mix() -> Relation {
        Relation::from_labels(&["a", "b", "c"], &[(0, 1), (1, 0), (2, 1)]).unwrap()
    }

    /// The empty relation on `{a,b}`.
    pub fn empty2() -> Relation {
        Relation::from_labels(&["a", "b"], &[]).unwrap()
    }
}

//! Equivalence classes under mutual closure-reachability, the induced
//! partial order on the class space, and choice functions built by pulling
//! a class-level selector back through the canonical projection.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::bits::BitMatrix;
use crate::relation::{ElementSet, IndexSet, Relation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuotientError {
    #[error("operation requires a nonempty universe")]
    EmptyUniverse,
    #[error("class {class} does not exist ({classes} classes)")]
    NoSuchClass { class: usize, classes: usize },
    #[error("class {class} has no member inside the restriction set")]
    EmptyIntersection { class: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChoiceError {
    #[error("choice function applied to the empty set")]
    EmptySet,
    #[error("set is outside this choice function's domain")]
    OutOfDomain,
    #[error("class selector returned class {0}, which has no member in the argument")]
    ForeignClass(usize),
}

/// The partition of the ground set into equivalence classes: two elements
/// share a class iff they are equal or mutually reachable through the
/// relation. Class ids are assigned by ascending minimum member index, so
/// they are independent of traversal order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    class_of: Vec<usize>,
    classes: Vec<IndexSet>,
}

impl Partition {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[IndexSet] {
        &self.classes
    }

    pub fn class(&self, id: usize) -> Result<&IndexSet, QuotientError> {
        self.classes.get(id).ok_or(QuotientError::NoSuchClass {
            class: id,
            classes: self.classes.len(),
        })
    }

    /// The canonical projection: the class id of an element.
    pub fn class_of(&self, element: usize) -> usize {
        self.class_of[element]
    }

    /// Image of a set under the canonical projection.
    pub fn project(&self, set: &IndexSet) -> IndexSet {
        set.iter().map(|&x| self.class_of[x]).collect()
    }

    /// Minimum-index member of a class, optionally restricted to `within`.
    pub fn representative(
        &self,
        class: usize,
        within: Option<&IndexSet>,
    ) -> Result<usize, QuotientError> {
        let members = self.class(class)?;
        match within {
            None => Ok(*members.iter().next().expect("classes are nonempty")),
            Some(allowed) => members
                .iter()
                .copied()
                .find(|x| allowed.contains(x))
                .ok_or(QuotientError::EmptyIntersection { class }),
        }
    }
}

/// Tarjan's strongly connected components with an explicit frame stack,
/// so path graphs thousands of elements deep cannot overflow the call
/// stack.
fn tarjan_components(r: &Relation) -> Vec<Vec<usize>> {
    let n = r.n();
    let succ: Vec<Vec<usize>> = (0..n).map(|u| r.successors(u).collect()).collect();
    let mut order = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut frames: Vec<(usize, usize)> = Vec::new();
    let mut next_order = 0usize;
    let mut components = Vec::new();

    for root in 0..n {
        if order[root] != usize::MAX {
            continue;
        }
        order[root] = next_order;
        low[root] = next_order;
        next_order += 1;
        stack.push(root);
        on_stack[root] = true;
        frames.push((root, 0));

        while let Some(frame) = frames.last_mut() {
            let (v, child) = *frame;
            if child < succ[v].len() {
                frame.1 += 1;
                let w = succ[v][child];
                if order[w] == usize::MAX {
                    order[w] = next_order;
                    low[w] = next_order;
                    next_order += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(order[w]);
                }
            } else {
                frames.pop();
                if let Some(&mut (parent, _)) = frames.last_mut() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == order[v] {
                    let mut component = Vec::new();
                    loop {
                        let w = stack.pop().expect("component stack underflow");
                        on_stack[w] = false;
                        component.push(w);
                        if w == v {
                            break;
                        }
                    }
                    components.push(component);
                }
            }
        }
    }
    components
}

/// The equivalence classes of the relation: exactly the strongly connected
/// components of its digraph, with off-cycle elements in singleton classes.
pub fn equivalence_classes(r: &Relation) -> Result<Partition, QuotientError> {
    let n = r.n();
    if n == 0 {
        return Err(QuotientError::EmptyUniverse);
    }
    let mut classes: Vec<IndexSet> = tarjan_components(r)
        .into_iter()
        .map(|c| c.into_iter().collect())
        .collect();
    classes.sort_by_key(|c| *c.iter().next().expect("components are nonempty"));
    let mut class_of = vec![usize::MAX; n];
    for (id, class) in classes.iter().enumerate() {
        for &x in class {
            class_of[x] = id;
        }
    }
    Ok(Partition { class_of, classes })
}

/// The quotient relation: a partial order on class ids. Two distinct
/// classes are related iff some member of the first reaches some member of
/// the second; the diagonal is always present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientRelation {
    partition: Partition,
    pairs: BTreeSet<(usize, usize)>,
}

impl QuotientRelation {
    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn class_count(&self) -> usize {
        self.partition.class_count()
    }

    pub fn contains(&self, cu: usize, cv: usize) -> bool {
        self.pairs.contains(&(cu, cv))
    }

    pub fn pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.pairs
    }

    /// Class ids maximal within `among`: no other id in `among` sits
    /// strictly above them.
    pub fn maximal_within(&self, among: &IndexSet) -> IndexSet {
        among
            .iter()
            .copied()
            .filter(|&c| !among.iter().any(|&d| d != c && self.contains(d, c)))
            .collect()
    }

    /// Off-diagonal covering pairs: related pairs with no third class
    /// strictly between them. This is the condensation's Hasse diagram.
    pub fn covering_pairs(&self) -> Vec<(usize, usize)> {
        let m = self.class_count();
        let mut covers = Vec::new();
        for &(u, v) in &self.pairs {
            if u == v {
                continue;
            }
            let skipped = (0..m)
                .any(|w| w != u && w != v && self.contains(u, w) && self.contains(w, v));
            if !skipped {
                covers.push((u, v));
            }
        }
        covers
    }

    /// The quotient as a plain relation on synthetic class labels
    /// `c0, c1, ...`, mainly so it can be fed back through `classify`.
    pub fn as_relation(&self) -> Relation {
        let labels: Vec<String> = (0..self.class_count()).map(|i| format!("c{i}")).collect();
        let universe = ElementSet::new(labels).expect("synthetic class labels are distinct");
        Relation::new(universe, self.pairs.iter().copied()).expect("class pairs are in range")
    }
}

pub fn quotient_relation(r: &Relation) -> Result<QuotientRelation, QuotientError> {
    let partition = equivalence_classes(r)?;
    let m = partition.class_count();
    let mut adj = BitMatrix::new(m);
    for (u, v) in r.pairs() {
        let (cu, cv) = (partition.class_of(u), partition.class_of(v));
        if cu != cv {
            adj.set(cu, cv);
        }
    }
    adj.close_transitively();
    let mut pairs: BTreeSet<(usize, usize)> = (0..m)
        .flat_map(|cu| adj.row_ones(cu).map(move |cv| (cu, cv)))
        .collect();
    for c in 0..m {
        pairs.insert((c, c));
    }
    Ok(QuotientRelation { partition, pairs })
}

/// A choice function: selects a member from every nonempty set in its
/// domain. Implementations must be stateless and re-entrant.
pub trait ChoiceFunction: Send + Sync {
    fn select(&self, set: &IndexSet) -> Result<usize, ChoiceError>;
}

/// Picks the smallest index. Total on all nonempty sets.
#[derive(Debug, Clone, Copy, Default)]
pub struct MinIndexChoice;

impl ChoiceFunction for MinIndexChoice {
    fn select(&self, set: &IndexSet) -> Result<usize, ChoiceError> {
        set.iter().next().copied().ok_or(ChoiceError::EmptySet)
    }
}

/// Maximum universe size for extensional choice tables.
pub const MAX_TABLE_ELEMENTS: usize = 16;

/// An extensional choice function: one stored selection per nonempty
/// subset. Exponential in the universe size, so capped at 16 elements;
/// meant for small test scaffolding.
#[derive(Debug, Clone)]
pub struct ChoiceTable {
    n: usize,
    table: Vec<usize>,
}

impl ChoiceTable {
    /// Tabulates `chooser` over every nonempty subset of `0..n`,
    /// validating the membership contract as it goes.
    pub fn tabulate(n: usize, chooser: &dyn ChoiceFunction) -> Result<Self, ChoiceError> {
        if n > MAX_TABLE_ELEMENTS {
            return Err(ChoiceError::OutOfDomain);
        }
        let mut table = vec![usize::MAX; 1 << n];
        for (mask, slot) in table.iter_mut().enumerate().skip(1) {
            let set: IndexSet = (0..n).filter(|&i| mask >> i & 1 != 0).collect();
            let picked = chooser.select(&set)?;
            if !set.contains(&picked) {
                return Err(ChoiceError::OutOfDomain);
            }
            *slot = picked;
        }
        Ok(ChoiceTable { n, table })
    }

    fn mask_of(&self, set: &IndexSet) -> Option<usize> {
        let mut mask = 0usize;
        for &x in set {
            if x >= self.n {
                return None;
            }
            mask |= 1 << x;
        }
        Some(mask)
    }
}

impl ChoiceFunction for ChoiceTable {
    fn select(&self, set: &IndexSet) -> Result<usize, ChoiceError> {
        if set.is_empty() {
            return Err(ChoiceError::EmptySet);
        }
        let mask = self.mask_of(set).ok_or(ChoiceError::OutOfDomain)?;
        Ok(self.table[mask])
    }
}

/// A choice function on elements obtained from one on class ids:
/// project the argument, select a class, then take that class's
/// representative inside the argument.
pub struct PullbackChoice {
    partition: Partition,
    class_choice: Box<dyn ChoiceFunction>,
}

impl PullbackChoice {
    pub fn new(partition: Partition, class_choice: Box<dyn ChoiceFunction>) -> Self {
        PullbackChoice { partition, class_choice }
    }
}

impl ChoiceFunction for PullbackChoice {
    fn select(&self, set: &IndexSet) -> Result<usize, ChoiceError> {
        if set.is_empty() {
            return Err(ChoiceError::EmptySet);
        }
        let projected = self.partition.project(set);
        let class = self.class_choice.select(&projected)?;
        self.partition
            .representative(class, Some(set))
            .map_err(|_| ChoiceError::ForeignClass(class))
    }
}

/// Class-level selector used by [`derive_choice`]: among the classes
/// present, pick the one maximal in the quotient order restricted to
/// them, breaking ties by smallest class id.
pub struct QuotientMaximalChoice {
    quotient: QuotientRelation,
}

impl ChoiceFunction for QuotientMaximalChoice {
    fn select(&self, classes: &IndexSet) -> Result<usize, ChoiceError> {
        if classes.is_empty() {
            return Err(ChoiceError::EmptySet);
        }
        self.quotient
            .maximal_within(classes)
            .into_iter()
            .next()
            .ok_or(ChoiceError::OutOfDomain)
    }
}

/// The default choice function for a relation: select the maximal class
/// of the quotient order among those present, then pull the selection
/// back to an element of the argument.
pub fn derive_choice(r: &Relation) -> Result<PullbackChoice, QuotientError> {
    let quotient = quotient_relation(r)?;
    let partition = quotient.partition().clone();
    Ok(PullbackChoice::new(
        partition,
        Box::new(QuotientMaximalChoice { quotient }),
    ))
}

//! Independent brute-force reference implementations.
//!
//! Deliberately naive: subset loops, explicit path lists, pair scans. These
//! functions never call the fast-path operations they exist to check, so a
//! reviewer can audit them in isolation. Budgets are hard limits.

use thiserror::Error;

use crate::relation::{IndexSet, Relation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("universe of {n} elements exceeds the oracle budget of {max_n}")]
    BudgetExceeded { n: usize, max_n: usize },
}

/// Hard input-size limit for the brute-force routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_n: usize,
}

impl OracleBudget {
    /// Budget for subset-enumeration routines.
    pub fn subsets() -> Self {
        OracleBudget { max_n: 12 }
    }

    /// Budget for chain enumeration inside hypothesis checks.
    pub fn chains() -> Self {
        OracleBudget { max_n: 6 }
    }

    fn admit(&self, r: &Relation) -> Result<usize, OracleError> {
        let n = r.n();
        if n > self.max_n {
            Err(OracleError::BudgetExceeded { n, max_n: self.max_n })
        } else {
            Ok(n)
        }
    }
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget::subsets()
    }
}

/// Asymmetric part by direct pair scan, kept here so the strict-variant
/// comparisons stay off the fast path.
pub fn naive_asymmetric_part(r: &Relation) -> Relation {
    let n = r.n();
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if r.contains(u, v) && !r.contains(v, u) {
                pairs.push((u, v));
            }
        }
    }
    Relation::new(r.universe().clone(), pairs).expect("pairs come from a valid relation")
}

/// Transitive closure as the union of k-step path relations, k = 1..n,
/// each step extending the previous one by a single edge.
pub fn brute_closure(r: &Relation, budget: OracleBudget) -> Result<Relation, OracleError> {
    let n = budget.admit(r)?;
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (u, row) in succ.iter_mut().enumerate() {
        for v in 0..n {
            if r.contains(u, v) {
                row.push(v);
            }
        }
    }
    let mut reached = vec![vec![false; n]; n];
    let mut step: Vec<(usize, usize)> = Vec::new();
    for u in 0..n {
        for &v in &succ[u] {
            reached[u][v] = true;
            step.push((u, v));
        }
    }
    for _ in 2..=n {
        let mut in_next = vec![vec![false; n]; n];
        let mut next = Vec::new();
        for &(x, z) in &step {
            for &y in &succ[z] {
                if !in_next[x][y] {
                    in_next[x][y] = true;
                    next.push((x, y));
                }
            }
        }
        for &(x, y) in &next {
            reached[x][y] = true;
        }
        step = next;
    }
    let mut pairs = Vec::new();
    for (u, row) in reached.iter().enumerate() {
        for (v, &hit) in row.iter().enumerate() {
            if hit {
                pairs.push((u, v));
            }
        }
    }
    Ok(Relation::new(r.universe().clone(), pairs).expect("paths stay in range"))
}

fn members(mask: u32, n: usize) -> IndexSet {
    (0..n).filter(|&i| mask >> i & 1 != 0).collect()
}

fn is_undominated_mask(r: &Relation, mask: u32, n: usize) -> bool {
    for y in 0..n {
        if mask >> y & 1 != 0 {
            continue;
        }
        for x in 0..n {
            if mask >> x & 1 != 0 && r.contains(y, x) {
                return false;
            }
        }
    }
    true
}

/// Every inclusion-minimal nonempty subset with no incoming edge from
/// outside, found by enumerating all nonempty subsets.
pub fn brute_minimal_undominated(
    r: &Relation,
    budget: OracleBudget,
) -> Result<Vec<IndexSet>, OracleError> {
    let n = budget.admit(r)?;
    let mut undominated: Vec<u32> = Vec::new();
    for mask in 1..1u32 << n {
        if is_undominated_mask(r, mask, n) {
            undominated.push(mask);
        }
    }
    let mut minimal: Vec<IndexSet> = undominated
        .iter()
        .filter(|&&m| !undominated.iter().any(|&other| other != m && other & m == other))
        .map(|&m| members(m, n))
        .collect();
    minimal.sort();
    Ok(minimal)
}

/// All subsets (including the empty one) whose members are pairwise
/// comparable, in ascending bitmask order.
pub fn brute_chains(r: &Relation, budget: OracleBudget) -> Result<Vec<IndexSet>, OracleError> {
    let n = budget.admit(r)?;
    let mut chains = Vec::new();
    for mask in 0..1u32 << n {
        let set = members(mask, n);
        let mut comparable = true;
        for &x in &set {
            for &y in &set {
                if x < y && !r.contains(x, y) && !r.contains(y, x) {
                    comparable = false;
                }
            }
        }
        if comparable {
            chains.push(set);
        }
    }
    Ok(chains)
}

/// All undominated subsets that are cycles under the adopted convention:
/// mutual closure connectivity for sets of two or more, singletons
/// admitted as degenerate cycles.
pub fn brute_top_cycles(r: &Relation, budget: OracleBudget) -> Result<Vec<IndexSet>, OracleError> {
    let n = budget.admit(r)?;
    let closure = brute_closure(r, budget)?;
    let mut cycles = Vec::new();
    for mask in 1..1u32 << n {
        if !is_undominated_mask(r, mask, n) {
            continue;
        }
        let set = members(mask, n);
        let mutual = set.iter().all(|&x| {
            set.iter()
                .all(|&y| x == y || (closure.contains(x, y) && closure.contains(y, x)))
        });
        if set.len() == 1 || mutual {
            cycles.push(set);
        }
    }
    cycles.sort();
    Ok(cycles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::fixtures::*;

    fn sets(v: Vec<IndexSet>) -> Vec<Vec<usize>> {
        v.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    #[test]
    fn closure_of_empty() {
        let c = brute_closure(&empty2(), OracleBudget::subsets()).unwrap();
        assert_eq!(c.pairs(), vec![]);
    }

    #[test]
    fn closure_single_composition() {
        let r = Relation::from_labels(&["a", "b", "c"], &[(0, 1), (1, 2)]).unwrap();
        let c = brute_closure(&r, OracleBudget::subsets()).unwrap();
        assert_eq!(c.pairs(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn closure_of_cycle_hits_every_pair() {
        // Hand path check: a->b->c->a yields (a,a), and so on around.
        let c = brute_closure(&cyc3(), OracleBudget::subsets()).unwrap();
        assert_eq!(c.pair_count(), 9);
    }

    #[test]
    fn minimal_undominated_no_edges() {
        let got = brute_minimal_undominated(&empty2(), OracleBudget::subsets()).unwrap();
        assert_eq!(sets(got), vec![vec![0], vec![1]]);
    }

    #[test]
    fn minimal_undominated_mix() {
        // 7-subset hand enumeration: only {c} has no incoming edge.
        let got = brute_minimal_undominated(&mix(), OracleBudget::subsets()).unwrap();
        assert_eq!(sets(got), vec![vec![2]]);
    }

    #[test]
    fn minimal_undominated_cycle() {
        let got = brute_minimal_undominated(&cyc3(), OracleBudget::subsets()).unwrap();
        assert_eq!(sets(got), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn chains_of_empty_relation() {
        let got = brute_chains(&empty2(), OracleBudget::chains()).unwrap();
        assert_eq!(sets(got), vec![vec![], vec![0], vec![1]]);
    }

    #[test]
    fn chains_of_cycle_include_full_set() {
        // Every pair is comparable around the cycle, so {a,b,c} qualifies.
        let got = brute_chains(&cyc3(), OracleBudget::chains()).unwrap();
        assert_eq!(
            sets(got),
            vec![
                vec![],
                vec![0],
                vec![1],
                vec![0, 1],
                vec![2],
                vec![0, 2],
                vec![1, 2],
                vec![0, 1, 2],
            ]
        );
    }

    #[test]
    fn chains_single_edge() {
        let r = Relation::from_labels(&["a", "b", "c"], &[(0, 1)]).unwrap();
        let got = brute_chains(&r, OracleBudget::chains()).unwrap();
        assert_eq!(sets(got), vec![vec![], vec![0], vec![1], vec![0, 1], vec![2]]);
    }

    #[test]
    fn top_cycles_of_cycle() {
        let got = brute_top_cycles(&cyc3(), OracleBudget::subsets()).unwrap();
        assert_eq!(sets(got), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn top_cycles_of_po() {
        let got = brute_top_cycles(&po(), OracleBudget::subsets()).unwrap();
        assert_eq!(sets(got), vec![vec![0]]);
    }

    #[test]
    fn top_cycles_of_sym2() {
        let got = brute_top_cycles(&sym2(), OracleBudget::subsets()).unwrap();
        assert_eq!(sets(got), vec![vec![0, 1]]);
    }

    #[test]
    fn budget_is_enforced() {
        let labels: Vec<String> = (0..13).map(|i| format!("x{i}")).collect();
        let labels_ref: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
        let r = Relation::from_labels(&labels_ref, &[]).unwrap();
        let err = brute_minimal_undominated(&r, OracleBudget::subsets()).unwrap_err();
        assert_eq!(err, OracleError::BudgetExceeded { n: 13, max_n: 12 });
    }
}

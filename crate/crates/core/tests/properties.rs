//! Structural invariants, checked by proptest over random relations plus
//! seeded exhaustive-ish loops where the invariant calls for them.

use proptest::prelude::*;

use relkit::oracle::{brute_chains, brute_closure, OracleBudget};
use relkit::quotient::{derive_choice, equivalence_classes, quotient_relation, ChoiceFunction};
use relkit::relation::{ElementSet, IndexSet, Relation};
use relkit::rng::{generated_labels, random_partial_order, random_relation, SplitMix64};
use relkit::solutions::{
    is_undominated, maximal_elements, schwartz, strong_top_cycles, top_cycles, SchwartzVariant,
};
use relkit::verify::enumerate_relations;

fn relation_from_bits(n: usize, bits: &[bool]) -> Relation {
    let universe = ElementSet::new(generated_labels(n)).unwrap();
    let pairs = bits
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| (i / n, i % n));
    Relation::new(universe, pairs).unwrap()
}

fn arb_relation(max_n: usize) -> impl Strategy<Value = Relation> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n)
            .prop_map(move |bits| relation_from_bits(n, &bits))
    })
}

/// Kosaraju's two-pass DFS, the independent component oracle. It shares
/// nothing with the Tarjan fast path beyond the relation accessors.
fn kosaraju_components(r: &Relation) -> Vec<Vec<usize>> {
    let n = r.n();
    let mut visited = vec![false; n];
    let mut finish_order = Vec::new();
    fn forward(r: &Relation, u: usize, visited: &mut [bool], out: &mut Vec<usize>) {
        visited[u] = true;
        for v in r.successors(u) {
            if !visited[v] {
                forward(r, v, visited, out);
            }
        }
        out.push(u);
    }
    for u in 0..n {
        if !visited[u] {
            forward(r, u, &mut visited, &mut finish_order);
        }
    }
    let mut assigned = vec![false; n];
    let mut components = Vec::new();
    fn backward(r: &Relation, u: usize, assigned: &mut [bool], comp: &mut Vec<usize>) {
        assigned[u] = true;
        comp.push(u);
        for v in 0..r.n() {
            if r.contains(v, u) && !assigned[v] {
                backward(r, v, assigned, comp);
            }
        }
    }
    for &u in finish_order.iter().rev() {
        if !assigned[u] {
            let mut comp = Vec::new();
            backward(r, u, &mut assigned, &mut comp);
            components.push(comp);
        }
    }
    components
}

proptest! {
    #[test]
    fn closure_contains_relation_and_is_idempotent(r in arb_relation(7)) {
        let closure = r.transitive_closure();
        for (u, v) in r.pairs() {
            prop_assert!(closure.contains(u, v));
        }
        prop_assert_eq!(closure.transitive_closure().pairs(), closure.pairs());
        prop_assert!(closure.classify().transitive);
    }

    #[test]
    fn closure_matches_path_enumeration(r in arb_relation(6)) {
        let brute = brute_closure(&r, OracleBudget::subsets()).unwrap();
        prop_assert_eq!(r.transitive_closure().pairs(), brute.pairs());
    }

    #[test]
    fn asymmetric_part_is_a_strict_subrelation(r in arb_relation(7)) {
        let p = r.asymmetric_part();
        for (u, v) in p.pairs() {
            prop_assert!(r.contains(u, v));
            prop_assert!(!p.contains(v, u));
        }
        prop_assert_eq!(p.asymmetric_part().pairs(), p.pairs());
    }

    #[test]
    fn strict_closure_order_is_a_partial_order(r in arb_relation(7)) {
        prop_assert!(r.strict_closure_order().classify().is_partial_order);
    }

    #[test]
    fn restriction_composes(r in arb_relation(7), keep_bits in proptest::collection::vec(any::<bool>(), 7), sub_bits in proptest::collection::vec(any::<bool>(), 7)) {
        let outer: IndexSet = (0..r.n()).filter(|&i| keep_bits[i]).collect();
        let inner: IndexSet = outer.iter().copied().filter(|&i| sub_bits[i]).collect();
        let direct = r.restrict(&inner).unwrap();
        let ranks: Vec<usize> = outer.iter().copied().collect();
        let inner_reindexed: IndexSet = inner
            .iter()
            .map(|&b| ranks.iter().position(|&a| a == b).unwrap())
            .collect();
        let staged = r.restrict(&outer).unwrap().restrict(&inner_reindexed).unwrap();
        prop_assert_eq!(direct, staged);
    }

    #[test]
    fn classes_follow_the_mutual_reachability_definition(r in arb_relation(7)) {
        let partition = equivalence_classes(&r).unwrap();
        let closure = r.transitive_closure();
        for x in 0..r.n() {
            for y in 0..r.n() {
                let same = partition.class_of(x) == partition.class_of(y);
                let related = x == y || (closure.contains(x, y) && closure.contains(y, x));
                prop_assert_eq!(same, related, "x={} y={} in {:?}", x, y, r);
            }
        }
    }

    #[test]
    fn class_count_matches_kosaraju(r in arb_relation(8)) {
        let partition = equivalence_classes(&r).unwrap();
        prop_assert_eq!(partition.class_count(), kosaraju_components(&r).len());
    }

    #[test]
    fn representative_round_trips(r in arb_relation(7)) {
        let partition = equivalence_classes(&r).unwrap();
        let mut covered = vec![false; r.n()];
        for id in 0..partition.class_count() {
            let rep = partition.representative(id, None).unwrap();
            prop_assert_eq!(partition.class_of(rep), id);
            for &x in partition.class(id).unwrap() {
                prop_assert!(!covered[x]);
                covered[x] = true;
            }
        }
        prop_assert!(covered.into_iter().all(|c| c));
    }

    #[test]
    fn top_cycles_are_minimally_undominated(r in arb_relation(6)) {
        for witness in top_cycles(&r).unwrap() {
            prop_assert!(is_undominated(&r, &witness.set).unwrap());
            for &x in &witness.set {
                let mut shrunk = witness.set.clone();
                shrunk.remove(&x);
                if !shrunk.is_empty() {
                    prop_assert!(!is_undominated(&r, &shrunk).unwrap());
                }
            }
        }
    }

    #[test]
    fn certificates_walk_real_paths(r in arb_relation(6)) {
        for witness in top_cycles(&r).unwrap() {
            for cert in &witness.closure_cert {
                prop_assert_eq!(cert.path[0], cert.from);
                prop_assert_eq!(*cert.path.last().unwrap(), cert.to);
                for step in cert.path.windows(2) {
                    prop_assert!(r.contains(step[0], step[1]));
                }
            }
        }
    }

    #[test]
    fn strict_schwartz_is_maximal_union_strong_cycles(r in arb_relation(8)) {
        let strict = schwartz(&r, SchwartzVariant::Strict).unwrap();
        let mut union: IndexSet = maximal_elements(&r);
        for w in strong_top_cycles(&r).unwrap() {
            union.extend(w.set.iter().copied());
        }
        prop_assert_eq!(strict, union);
    }

    #[test]
    fn hypothesis_agrees_with_chain_enumeration(r in arb_relation(6)) {
        // Independent route: list every chain, then look for upper bounds
        // by direct column scans.
        let has_bound = |chain: &IndexSet| {
            (0..r.n()).any(|x| chain.iter().all(|&y| r.contains(x, y)))
        };
        let brute_holds = brute_chains(&r, OracleBudget::chains())
            .unwrap()
            .iter()
            .all(has_bound);
        let check = relkit::zorn::check_hypothesis(&r).unwrap();
        prop_assert_eq!(check.holds, brute_holds);
        if let Some(witness) = &check.unbounded_chain {
            prop_assert!(relkit::solutions::is_chain(&r, witness).unwrap());
            prop_assert!(!has_bound(witness));
        }
    }

    #[test]
    fn derived_choice_picks_members(r in arb_relation(6), mask in 1u64..64) {
        let subset: IndexSet = (0..r.n()).filter(|&i| mask >> i & 1 != 0).collect();
        prop_assume!(!subset.is_empty());
        let chooser = derive_choice(&r).unwrap();
        let picked = chooser.select(&subset).unwrap();
        prop_assert!(subset.contains(&picked));
    }
}

#[test]
fn strict_schwartz_equivalence_exhaustive_small() {
    for n in 1..=4 {
        for r in enumerate_relations(n) {
            let strict = schwartz(&r, SchwartzVariant::Strict).unwrap();
            let mut union: IndexSet = maximal_elements(&r);
            for w in strong_top_cycles(&r).unwrap() {
                union.extend(w.set.iter().copied());
            }
            assert_eq!(strict, union, "mismatch on {r:?}");
        }
    }
}

#[test]
fn quotient_partial_order_random_n8() {
    let mut rng = SplitMix64::new(0x51AB_2E11);
    for _ in 0..10_000 {
        let density = rng.next_f64();
        let r = random_relation(8, density, &mut rng);
        let q = quotient_relation(&r).unwrap();
        assert!(q.as_relation().classify().is_partial_order, "failed on {r:?}");
    }
}

#[test]
fn class_count_matches_kosaraju_random_n8() {
    let mut rng = SplitMix64::new(0xC0C0);
    for _ in 0..10_000 {
        let density = rng.next_f64();
        let r = random_relation(8, density, &mut rng);
        assert_eq!(
            equivalence_classes(&r).unwrap().class_count(),
            kosaraju_components(&r).len(),
            "failed on {r:?}"
        );
    }
}

#[test]
fn partial_orders_have_singleton_classes_and_closure_quotient() {
    let mut rng = SplitMix64::new(0x9A57);
    for _ in 0..1000 {
        let density = rng.next_f64();
        let po = random_partial_order(7, density, &mut rng);
        let q = quotient_relation(&po).unwrap();
        assert_eq!(q.class_count(), po.n());
        // With singleton classes ordered by their members, the quotient
        // pairs are exactly the closure plus the diagonal.
        let closure = po.transitive_closure();
        let mut expected: std::collections::BTreeSet<(usize, usize)> =
            closure.pairs().into_iter().collect();
        for i in 0..po.n() {
            expected.insert((i, i));
        }
        assert_eq!(q.pairs(), &expected);
    }
}

#[test]
fn pullback_contract_exhaustive_n_le_4() {
    // Every relation on up to 3 elements, plus a seeded sample at n = 4,
    // against every nonempty subset.
    let mut relations: Vec<Relation> = Vec::new();
    for n in 1..=3 {
        relations.extend(enumerate_relations(n));
    }
    let mut rng = SplitMix64::new(0xF00D);
    for _ in 0..500 {
        let density = rng.next_f64();
        relations.push(random_relation(4, density, &mut rng));
    }
    for r in &relations {
        let chooser = derive_choice(r).unwrap();
        let n = r.n();
        for mask in 1..1usize << n {
            let subset: IndexSet = (0..n).filter(|&i| mask >> i & 1 != 0).collect();
            let picked = chooser.select(&subset).unwrap();
            assert!(subset.contains(&picked), "f({subset:?}) = {picked} on {r:?}");
        }
    }
}

//! The oracle verification sweep: every fast-path operation is replayed
//! against the brute-force module over an exhaustive enumeration of small
//! universes plus seeded random instances, and every structural invariant
//! that should hold unconditionally is asserted along the way.

use std::collections::BTreeSet;

use crate::oracle::{self, OracleBudget};
use crate::quotient::{derive_choice, quotient_relation, ChoiceFunction, MinIndexChoice};
use crate::relation::{ElementSet, IndexSet, Relation};
use crate::rng::{generated_labels, random_relation, SplitMix64};
use crate::solutions::{
    deb_decompose, minimal_undominated_sets, schwartz, top_cycles, upper_bounds, SchwartzVariant,
};
use crate::zorn::{
    chain_extension_step, check_hypothesis_guarded, extend_chain, find_top_cycle,
    rudin_fixed_point,
};

#[derive(Debug, Clone)]
pub struct SweepConfig {
    /// Universe sizes 1..=min(3, max_n) are enumerated exhaustively;
    /// sizes 4..=max_n get `random_per_n` seeded instances each.
    pub max_n: usize,
    pub random_per_n: usize,
    pub seed: u64,
    /// Hypothesis checking enumerates chains, so it only runs on
    /// universes up to this size.
    pub hypothesis_max_n: usize,
}

impl SweepConfig {
    pub fn new(max_n: usize, random_per_n: usize, seed: u64) -> Self {
        SweepConfig { max_n, random_per_n, seed, hypothesis_max_n: 6 }
    }
}

#[derive(Debug, Clone)]
pub struct Violation {
    pub check: &'static str,
    pub relation: String,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct StageStats {
    pub label: String,
    pub instances: u64,
    pub violations: u64,
}

#[derive(Debug, Clone, Default)]
pub struct SweepReport {
    pub stages: Vec<StageStats>,
    pub instances: u64,
    pub checks: u64,
    pub violations: Vec<Violation>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn set_of_sets(sets: &[IndexSet]) -> BTreeSet<Vec<usize>> {
    sets.iter().map(|s| s.iter().copied().collect()).collect()
}

struct Checker {
    budget: OracleBudget,
    hypothesis_max_n: usize,
    checks: u64,
    violations: Vec<Violation>,
}

impl Checker {
    fn flag(&mut self, check: &'static str, r: &Relation, detail: String) {
        self.violations.push(Violation { check, relation: format!("{r:?}"), detail });
    }

    fn run(&mut self, r: &Relation) -> u64 {
        let before = self.violations.len();

        // Transitive closure against explicit path extension.
        self.checks += 1;
        let fast_closure = r.transitive_closure();
        let brute_closure = oracle::brute_closure(r, self.budget).expect("within budget");
        if fast_closure.pairs() != brute_closure.pairs() {
            self.flag(
                "closure_oracle",
                r,
                format!("fast {:?} vs brute {:?}", fast_closure.pairs(), brute_closure.pairs()),
            );
        }

        // Minimal undominated sets against subset enumeration.
        self.checks += 1;
        let fast_min = minimal_undominated_sets(r).expect("nonempty universe");
        let brute_min = oracle::brute_minimal_undominated(r, self.budget).expect("within budget");
        if set_of_sets(&fast_min) != set_of_sets(&brute_min) {
            self.flag(
                "minimal_undominated_oracle",
                r,
                format!("fast {fast_min:?} vs brute {brute_min:?}"),
            );
        }

        // Top cycles against the subset filter.
        self.checks += 1;
        let fast_cycles: Vec<IndexSet> =
            top_cycles(r).expect("nonempty universe").into_iter().map(|w| w.set).collect();
        let brute_cycles = oracle::brute_top_cycles(r, self.budget).expect("within budget");
        if set_of_sets(&fast_cycles) != set_of_sets(&brute_cycles) {
            self.flag(
                "top_cycles_oracle",
                r,
                format!("fast {fast_cycles:?} vs brute {brute_cycles:?}"),
            );
        }

        // Both Schwartz variants against the oracle unions.
        self.checks += 1;
        let gocha = schwartz(r, SchwartzVariant::Gocha).expect("nonempty universe");
        let brute_gocha: IndexSet = brute_min.iter().flatten().copied().collect();
        if gocha != brute_gocha {
            self.flag("schwartz_gocha_oracle", r, format!("fast {gocha:?} vs brute {brute_gocha:?}"));
        }
        self.checks += 1;
        let strict = schwartz(r, SchwartzVariant::Strict).expect("nonempty universe");
        let naive_p = oracle::naive_asymmetric_part(r);
        let brute_strict: IndexSet = oracle::brute_minimal_undominated(&naive_p, self.budget)
            .expect("within budget")
            .into_iter()
            .flatten()
            .collect();
        if strict != brute_strict {
            self.flag(
                "schwartz_strict_oracle",
                r,
                format!("fast {strict:?} vs brute {brute_strict:?}"),
            );
        }

        // Nonemptiness of both variants.
        self.checks += 1;
        if gocha.is_empty() || strict.is_empty() {
            self.flag("schwartz_nonempty", r, format!("gocha {gocha:?}, strict {strict:?}"));
        }

        // The quotient relation must classify as a partial order.
        self.checks += 1;
        let quotient = quotient_relation(r).expect("nonempty universe");
        let props = quotient.as_relation().classify();
        if !props.is_partial_order {
            self.flag("quotient_partial_order", r, format!("{props:?}"));
        }

        // Extraction lands in the top cycles, unconditionally.
        self.checks += 1;
        let extraction = find_top_cycle(r).expect("nonempty universe");
        if !fast_cycles.contains(&extraction.cycle) {
            self.flag(
                "extraction_membership",
                r,
                format!("extracted {:?} not among {fast_cycles:?}", extraction.cycle),
            );
        }

        // When every chain is bounded, a top cycle must exist.
        if r.n() <= self.hypothesis_max_n {
            self.checks += 1;
            let hypothesis = check_hypothesis_guarded(r, self.hypothesis_max_n)
                .expect("within hypothesis guard");
            if hypothesis.holds && fast_cycles.is_empty() {
                self.flag("theorem_conclusion", r, "bounded chains but no top cycle".into());
            }
        }

        // Chain extension: step count, terminal bounds, fixed-point replay.
        self.checks += 1;
        let run = extend_chain(r, &MinIndexChoice).expect("min-index choice is total");
        let additions = run.steps.iter().filter(|s| s.added.is_some()).count();
        if additions > r.n() {
            self.flag("extend_chain_steps", r, format!("{additions} additions"));
        }
        let bounds =
            upper_bounds(r, &run.terminal_chain, false).expect("terminal chain is a chain");
        if bounds.difference(&run.terminal_chain).next().is_some() {
            self.flag(
                "extend_chain_terminal",
                r,
                format!("outside bounds remain for {:?}", run.terminal_chain),
            );
        }
        self.checks += 1;
        let replayed = rudin_fixed_point(
            r.n(),
            &IndexSet::new(),
            r.n().max(1),
            chain_extension_step(r, &MinIndexChoice),
        )
        .expect("extension step respects the side conditions");
        if replayed != run.terminal_chain {
            self.flag(
                "fixed_point_replay",
                r,
                format!("rudin {replayed:?} vs tower {:?}", run.terminal_chain),
            );
        }

        // Strict-variant Deb decomposition never reports violations.
        self.checks += 1;
        let deb = deb_decompose(r).expect("nonempty universe");
        if !deb.strict_violations().is_empty() {
            self.flag("deb_strict", r, format!("{:?}", deb.strict_violations()));
        }

        // Derived choice honors the membership contract.
        self.checks += 1;
        let chooser = derive_choice(r).expect("nonempty universe");
        let n = r.n();
        let subsets: Vec<IndexSet> = if n <= 4 {
            (1..1usize << n)
                .map(|mask| (0..n).filter(|&i| mask >> i & 1 != 0).collect())
                .collect()
        } else {
            let mut fixed: Vec<IndexSet> =
                (0..n).map(|i| [i].into_iter().collect()).collect();
            fixed.push((0..n).collect());
            fixed.push((0..n).step_by(2).collect());
            fixed
        };
        for subset in &subsets {
            match chooser.select(subset) {
                Ok(picked) if subset.contains(&picked) => {}
                other => {
                    self.flag("choice_contract", r, format!("on {subset:?}: {other:?}"));
                    break;
                }
            }
        }

        (self.violations.len() - before) as u64
    }
}

/// Every relation on `n` elements, in ascending bitmask order.
pub fn enumerate_relations(n: usize) -> impl Iterator<Item = Relation> {
    let count: u64 = 1 << (n * n);
    (0..count).map(move |mask| {
        let universe = ElementSet::new(generated_labels(n)).expect("labels distinct");
        let pairs = (0..n * n)
            .filter(|&bit| mask >> bit & 1 != 0)
            .map(|bit| (bit / n, bit % n));
        Relation::new(universe, pairs).expect("pairs in range")
    })
}

pub fn run_sweep(config: &SweepConfig) -> SweepReport {
    let mut checker = Checker {
        budget: OracleBudget::subsets(),
        hypothesis_max_n: config.hypothesis_max_n,
        checks: 0,
        violations: Vec::new(),
    };
    let mut report = SweepReport::default();

    for n in 1..=config.max_n.min(3) {
        let mut stage = StageStats { label: format!("n={n} exhaustive"), ..Default::default() };
        for r in enumerate_relations(n) {
            stage.instances += 1;
            stage.violations += checker.run(&r);
        }
        report.instances += stage.instances;
        report.stages.push(stage);
    }

    let mut root = SplitMix64::new(config.seed);
    for n in 4..=config.max_n {
        let mut lane = root.split();
        let mut stage = StageStats {
            label: format!("n={n} random x{}", config.random_per_n),
            ..Default::default()
        };
        for _ in 0..config.random_per_n {
            let mut gen = lane.split();
            let density = gen.next_f64();
            let r = random_relation(n, density, &mut gen);
            stage.instances += 1;
            stage.violations += checker.run(&r);
        }
        report.instances += stage.instances;
        report.stages.push(stage);
    }

    report.checks = checker.checks;
    report.violations = checker.violations;
    report
}

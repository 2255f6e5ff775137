//! Analysis of finite binary relations: basic derived relations, the
//! quotient space under mutual reachability, tournament-style solution
//! sets (maximal elements, minimal undominated sets, top cycles,
//! Schwartz/GOCHA), and constructive chain-extension procedures, all
//! validated against brute-force oracles.
//!
//! A pair `(u, v)` is read "u weakly dominates v" throughout; every value
//! is immutable after construction and every operation is a pure function
//! of its inputs.

pub mod bits;
pub mod oracle;
pub mod quotient;
pub mod relation;
pub mod rng;
pub mod solutions;
pub mod verify;
pub mod zorn;

pub use quotient::{
    derive_choice, equivalence_classes, quotient_relation, ChoiceError, ChoiceFunction,
    ChoiceTable, MinIndexChoice, Partition, PullbackChoice, QuotientError, QuotientRelation,
};
pub use relation::{ElementSet, IndexSet, PropertyReport, Relation, RelationError};
pub use solutions::{
    check_chain, deb_decompose, domination_witness, gocha_choice, is_chain, is_undominated,
    maximal_elements, minimal_undominated_sets, schwartz, solve, strong_top_cycles, top_cycles,
    upper_bounds, Chain, ChainVerdict, CycleWitness, DebKind, DebReport, SchwartzVariant,
    SolutionReport, SolutionsError,
};
pub use zorn::{
    check_hypothesis, check_hypothesis_guarded, conforming_chain, extend_chain, find_top_cycle,
    rudin_fixed_point, verify_theorem, verify_theorem_guarded, ConformingChain, HypothesisCheck,
    TheoremReport, TopCycleExtraction, TowerStep, ZornError, ZornRun,
};

//! Regular signed k-SAT over ordered truth-value sets.
//!
//! Literals are inequalities `x <= a` or `x >= a` with exact rational bounds
//! in `[0, 1]`. The crate provides formula semantics ([`formula`]), uniform
//! random formulas and monotone couplings ([`sampler`]), complete and
//! polynomial deciders ([`solver`]), bicycle and snake certificates
//! ([`certificates`]) and closed-form bounds ([`analytics`]).

pub mod analytics;
pub mod certificates;
pub mod error;
pub mod formula;
pub mod rng;
pub mod sampler;
pub mod solver;
pub mod threshold;

pub use certificates::{
    find_bicycle, find_snake, verify_bicycle, verify_snake, Bicycle, SearchOutcome, Snake,
};
pub use error::Error;
pub use formula::{
    complement_literal, eval_formula, eval_literal, occurrence_profile, signs_disjoint, Clause,
    Formula, Interpretation, Literal, OccurrenceProfile, Relation, TruthValueSpec,
};
pub use solver::{
    count_tight_satisfying, decide, solve_2rsat_scc, solve_complete, solve_complete_with_budget,
    CandidateDomain, Decider, ImplicationDigraph, SolveResult,
};
pub use threshold::Threshold;

//! Graphical degree sequences and the smallest degree sum that forces a
//! realization containing a given subgraph.
//!
//! The crate is organized bottom-up:
//!
//! - [`seq`]: degree sequences, Erdős–Gallai, laying off, enumeration.
//! - [`graph`], [`pattern`], [`embed`]: labeled simple graphs, named graph
//!   families with a small text syntax, and subgraph containment.
//! - [`realize`]: labeled realizations of a sequence.
//! - [`potential`], [`rules`]: "potentially H-graphic" decisions with
//!   witnesses, the sufficient-condition predicates, and 2-switch search.
//! - [`sigma`]: closed-form thresholds, the extremal construction, the
//!   brute-force threshold oracle and the lower-bound verification report.
//!
//! Paths follow the `P_k` convention: `Path(k)` has `k` edges and `k + 1`
//! vertices.

pub mod embed;
pub mod error;
pub mod graph;
pub mod pattern;
pub mod potential;
pub mod realize;
pub mod rules;
pub mod seq;
pub mod sigma;

pub use embed::{contains, validate_u, Embedding};
pub use error::{Error, Result};
pub use graph::{SimpleGraph, Vertex};
pub use pattern::PatternSpec;
pub use potential::{
    edge_excluded_realization, is_potentially, is_potentially_clique_top, PotentialWitness, SearchMode,
};
pub use realize::{realizations, realize};
pub use rules::{sufficient_condition, RuleTag, SufficientRule};
pub use seq::{enumerate_graphical, is_graphical, is_graphical_recursive, layoff, DegreeSequence};
pub use sigma::{
    closed_form_sigma, extremal_construction, extremal_sequence, sigma_bruteforce, verify_theorem, FormulaFamily,
    Report, SigmaResult,
};

/// Search budgets shared by the exhaustive routines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Largest `n` for which full realization enumeration runs.
    pub max_realization_n: usize,
    /// Lifts `max_realization_n`.
    pub accept_cost: bool,
    /// Largest `n` accepted by the brute-force threshold oracle.
    pub max_sigma_n: usize,
    /// Search nodes allowed per backtracking search.
    pub node_budget: u64,
    /// States the 2-switch breadth-first search may visit.
    pub switch_states: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_realization_n: 10,
            accept_cost: false,
            max_sigma_n: 8,
            node_budget: 100_000_000,
            switch_states: 1_000_000,
        }
    }
}

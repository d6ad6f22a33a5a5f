//! Ground truth and instances: the exhaustive oracle, the tree catalog and
//! host/pattern generators.

use thiserror::Error;

pub mod catalog;
pub mod explore;
pub mod generators;
pub mod oracle;
pub mod rng;

pub use catalog::{enumerate_oriented_trees, enumerate_oriented_trees_bounded, TreeCatalog};
pub use generators::{
    gen_blowup_cycle, gen_girth6_digon_host, gen_oriented_girth6_host, gen_random_digraph, gen_random_tree,
    gen_two_clique_host, HostConstraint, TreeKind,
};
pub use explore::{explore_trial, sample_host, ExploreProblem, Finding, HostSource, TrialOutcome};
pub use oracle::{oracle_embed, Decision, OracleResult};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabError {
    #[error("k = {k} is too small, need at least {min}")]
    KTooSmall { k: usize, min: usize },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("no stored incidence data for order {0}")]
    UnsupportedOrder(usize),
    #[error("unknown kind `{0}`")]
    BadKind(String),
    #[error("could not build n = {n}, m = {m} after {retries} attempts")]
    InfeasibleAfterRetries { n: usize, m: usize, retries: u64 },
    #[error("k = {k} outside the enumeration bound 1..={bound}")]
    BoundExceeded { k: usize, bound: usize },
}

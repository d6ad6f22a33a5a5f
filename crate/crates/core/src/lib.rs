pub mod cycles;
pub mod density;
pub mod digraph;
pub mod embed;
pub mod io;
pub mod lab;
pub mod tree;

pub use cycles::{CycleMode, CycleWitness, FourCycleType};
pub use digraph::{DegreeProfile, Digraph, DigraphError, Side};
pub use tree::{OrientedTree, StrippingSequence, TreeError};
pub use density::{corollary6_pipeline, peel_to_pseudo_semidegree, HalfInt, PeelTrace};
pub use embed::{
    check_hypotheses, embed_tree, validate_embedding, EmbedError, EmbedMode, EmbedOptions, EmbedReport, EmbedStatus,
    HypothesisReport, Move,
};
pub use lab::{oracle_embed, OracleResult, TreeCatalog};

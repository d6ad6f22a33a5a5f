//! The constructive embedder: core subtree first, then growth along the
//! stripping sequence with the direct move, Case A (`q = 2`) and Case B
//! (`q = 1`), then bounded backtracking.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

mod engine;
mod hypotheses;
mod validate;

pub use engine::{AccessStats, BacktrackOutcome, EmbedState, StepContext};
pub use hypotheses::{check_hypotheses, check_mode, HypothesisReport};
pub use validate::{validate_embedding, Violation};

use crate::digraph::Digraph;
use crate::lab::oracle::{oracle_embed, Decision};
use crate::tree::OrientedTree;

pub const DEFAULT_FALLBACK_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EmbedMode {
    /// Any oriented tree; host 𝒞₄-free with `δ⁰ ≥ k/2`.
    General,
    /// Antidirected trees; host 𝒞₄*-free with `δ̄⁰ ≥ k/2`.
    Antidirected,
    /// Out-arborescences rooted at a vertex of maximum total degree.
    Arborescence,
}

impl EmbedMode {
    pub fn name(self) -> &'static str {
        match self {
            EmbedMode::General => "general",
            EmbedMode::Antidirected => "antidirected",
            EmbedMode::Arborescence => "arborescence",
        }
    }
}

impl fmt::Display for EmbedMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EmbedMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "general" => Ok(EmbedMode::General),
            "antidirected" => Ok(EmbedMode::Antidirected),
            "arborescence" => Ok(EmbedMode::Arborescence),
            other => Err(format!("unknown mode `{other}` (general, antidirected, arborescence)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("tree does not fit mode {mode}: {reason}")]
    ModeMismatch { mode: EmbedMode, reason: String },
    #[error("core embedding got stuck at tree vertex {0}")]
    CoreStepStuck(usize),
    #[error("produced map is not an embedding: {0}")]
    InvalidCertificate(Violation),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbedOptions {
    pub fallback_budget: u64,
    /// Treat any backtracking under holding hypotheses as a violation.
    pub assert_constructive: bool,
    /// Recorded in the report; the embedder itself is deterministic.
    pub seed: u64,
    /// Run the exhaustive oracle with this budget when everything else fails.
    pub oracle: Option<u64>,
}

impl Default for EmbedOptions {
    fn default() -> Self {
        EmbedOptions { fallback_budget: DEFAULT_FALLBACK_BUDGET, assert_constructive: false, seed: 0, oracle: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EmbedStatus {
    Embedded,
    /// The oracle covered the whole search space.
    NotEmbeddable,
    FallbackExhausted,
    /// Hypotheses hold and yet the constructive moves were not enough.
    HypothesisViolation,
}

impl EmbedStatus {
    pub fn name(self) -> &'static str {
        match self {
            EmbedStatus::Embedded => "embedded",
            EmbedStatus::NotEmbeddable => "not_embeddable",
            EmbedStatus::FallbackExhausted => "fallback_exhausted",
            EmbedStatus::HypothesisViolation => "hypothesis_violation",
        }
    }
}

impl fmt::Display for EmbedStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One move of the engine. Leaf placements are `(tree vertex, host vertex)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    Core { anchor: usize, image: usize, vertices: usize },
    Direct { u: usize, from: usize, to: usize, leaves: Vec<(usize, usize)> },
    CaseA { u: usize, w: usize, w1: usize, h: usize, from: usize, to: usize, leaves: Vec<(usize, usize)> },
    CaseB { u: usize, x: usize, from: usize, to: usize, leaves: Vec<(usize, usize)> },
    /// Search over the whole tree; `oracle` marks a certificate found by the
    /// exhaustive oracle after the bounded search ran out.
    Backtrack { nodes: u64, oracle: bool },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveRecord {
    #[serde(flatten)]
    pub action: Move,
    /// Number of embedded tree vertices after the move.
    pub image_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbedReport {
    pub status: EmbedStatus,
    /// `(tree vertex, host vertex)` pairs, by tree vertex.
    pub embedding: Option<Vec<(usize, usize)>>,
    pub moves: Vec<MoveRecord>,
    pub hypotheses: HypothesisReport,
    pub seed: u64,
    /// Whether the engine ran on the reversed pair.
    pub mirrored: bool,
    pub fallback_nodes: u64,
    /// States the constructive argument says cannot occur under the
    /// hypotheses.
    pub anomalies: Vec<String>,
    #[serde(skip)]
    pub access: AccessStats,
}

impl EmbedReport {
    pub fn backtracked(&self) -> bool {
        self.moves.iter().any(|m| matches!(m.action, Move::Backtrack { .. }))
    }

    pub fn count(&self, pred: impl Fn(&Move) -> bool) -> usize {
        self.moves.iter().filter(|m| pred(&m.action)).count()
    }

    /// The map as a vector indexed by tree vertex.
    pub fn map(&self) -> Option<Vec<usize>> {
        self.embedding.as_ref().map(|e| e.iter().map(|&(_, h)| h).collect())
    }
}

/// The anchor the engine works from and whether the pair gets reversed.
fn anchor_and_mirror(tree: &OrientedTree, mode: EmbedMode) -> (usize, bool) {
    if mode == EmbedMode::Arborescence {
        return (tree.out_arborescence_root().expect("checked by check_mode"), false);
    }
    let t = tree.anchor_vertex();
    (t, tree.out_degree(t) < tree.in_degree(t))
}

/// Runs the full pipeline on `tree` and `host`.
pub fn embed_tree(
    tree: &OrientedTree,
    host: &Digraph,
    mode: EmbedMode,
    options: &EmbedOptions,
) -> Result<EmbedReport, EmbedError> {
    let hypotheses = check_hypotheses(tree, host, mode)?;
    let (t, mirrored) = anchor_and_mirror(tree, mode);
    let (rtree, rhost);
    let (work_tree, work_host) = if mirrored {
        rtree = tree.reverse();
        rhost = host.reverse();
        (&rtree, &rhost)
    } else {
        (tree, host)
    };
    let seq = work_tree.stripping_sequence_from(t);
    let mut state = EmbedState::new(work_tree, work_host, mode, seq);
    let mut moves = Vec::new();
    let mut anomalies = Vec::new();
    let holds = hypotheses.all_hold;

    let mut constructive = match state.embed_core() {
        Ok(m) => {
            moves.push(MoveRecord { action: m, image_size: state.image_size() });
            true
        }
        Err(EmbedError::CoreStepStuck(x)) => {
            if holds {
                anomalies.push(format!("core embedding stuck at tree vertex {x}"));
            }
            false
        }
        Err(e) => return Err(e),
    };
    if constructive {
        for i in 0..state.step_count() {
            let ctx = state.context(i);
            let mut action = state.extend_direct(&ctx);
            if action.is_none() {
                let q = state.candidates(&ctx).len();
                action = match q {
                    2 => state.repair_case_a(i, &ctx),
                    1 => state.repair_case_b(i, &ctx),
                    _ => None,
                };
                if holds && action.is_none() {
                    anomalies.push(format!("step {} (u = {}): direct move failed, q = {q}, repair failed", i + 1, ctx.u));
                }
            }
            match action {
                Some(m) => moves.push(MoveRecord { action: m, image_size: state.image_size() }),
                None => {
                    constructive = false;
                    break;
                }
            }
        }
    }

    let mut fallback_nodes = 0;
    let mut map = if constructive { Some(state.placement().to_vec()) } else { None };
    let mut oracle_said_no = false;
    if map.is_none() {
        let outcome = state.backtrack(options.fallback_budget);
        fallback_nodes = outcome.nodes;
        if outcome.found {
            map = Some(state.placement().to_vec());
            moves.push(MoveRecord {
                action: Move::Backtrack { nodes: outcome.nodes, oracle: false },
                image_size: state.image_size(),
            });
        } else if let Some(budget) = options.oracle {
            let r = oracle_embed(work_tree, work_host, budget);
            match r.decision {
                Decision::Yes(f) => {
                    moves.push(MoveRecord {
                        action: Move::Backtrack { nodes: r.nodes_expanded, oracle: true },
                        image_size: f.len(),
                    });
                    map = Some(f);
                }
                Decision::No => oracle_said_no = true,
                Decision::Unknown => {}
            }
        }
    }

    if let Some(f) = &map {
        // reversing both tree and host keeps the identity map valid
        validate_embedding(tree, host, f).map_err(EmbedError::InvalidCertificate)?;
    }
    let backtracked = moves.iter().any(|m| matches!(m.action, Move::Backtrack { .. }));
    let status = match &map {
        Some(_) if holds && options.assert_constructive && backtracked => EmbedStatus::HypothesisViolation,
        Some(_) => EmbedStatus::Embedded,
        None if holds => EmbedStatus::HypothesisViolation,
        None if oracle_said_no => EmbedStatus::NotEmbeddable,
        None => EmbedStatus::FallbackExhausted,
    };
    Ok(EmbedReport {
        status,
        embedding: map.map(|f| f.into_iter().enumerate().collect()),
        moves,
        hypotheses,
        seed: options.seed,
        mirrored,
        fallback_nodes,
        anomalies,
        access: state.access(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::{gen_girth6_digon_host, gen_two_clique_host};

    #[test]
    fn star_into_complete() {
        let t = OrientedTree::out_star(4).unwrap();
        let r = embed_tree(&t, &Digraph::complete(5), EmbedMode::General, &EmbedOptions::default()).unwrap();
        assert_eq!(r.status, EmbedStatus::Embedded);
        assert_eq!(r.moves.len(), 1);
        assert!(matches!(r.moves[0].action, Move::Core { vertices: 5, .. }));
    }

    #[test]
    fn six_arc_path_into_heawood() {
        let t = OrientedTree::path(&[true, true, false, true, false, false]).unwrap();
        let d = gen_girth6_digon_host(2).unwrap();
        let opts = EmbedOptions { assert_constructive: true, ..Default::default() };
        let r = embed_tree(&t, &d, EmbedMode::General, &opts).unwrap();
        assert_eq!(r.status, EmbedStatus::Embedded);
        assert!(!r.backtracked());
        assert!(matches!(r.moves[0].action, Move::Core { vertices: 5, .. }));
        assert!(validate_embedding(&t, &d, &r.map().unwrap()).is_ok());
    }

    #[test]
    fn spider_into_two_cliques_is_refuted_by_the_oracle() {
        let t = OrientedTree::spider(&[2, 2, 2]).unwrap();
        let d = gen_two_clique_host(6).unwrap();
        let opts = EmbedOptions { oracle: Some(1_000_000), ..Default::default() };
        let r = embed_tree(&t, &d, EmbedMode::General, &opts).unwrap();
        assert_eq!(r.status, EmbedStatus::NotEmbeddable);
        assert!(r.embedding.is_none());
        let plain = embed_tree(&t, &d, EmbedMode::General, &EmbedOptions::default()).unwrap();
        assert_eq!(plain.status, EmbedStatus::FallbackExhausted);
    }

    #[test]
    fn in_heavy_trees_are_mirrored() {
        let t = OrientedTree::in_star(3).unwrap();
        let r = embed_tree(&t, &Digraph::complete(4), EmbedMode::General, &EmbedOptions::default()).unwrap();
        assert!(r.mirrored);
        assert_eq!(r.status, EmbedStatus::Embedded);
    }

    #[test]
    fn report_json_shape() {
        let t = OrientedTree::directed_path(2).unwrap();
        let r = embed_tree(&t, &Digraph::complete(3), EmbedMode::General, &EmbedOptions::default()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["status"], "embedded");
        assert_eq!(v["moves"][0]["move"], "core");
        assert_eq!(v["embedding"][2][0], 2);
        assert!(v["hypotheses"]["profile"]["delta_zero"].is_number());
    }
}

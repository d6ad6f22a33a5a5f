//! Peeling to high pseudo-semidegree and the dense antidirected pipeline.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cycles::{find_forbidden_cycle, CycleMode, CycleWitness};
use crate::digraph::{Digraph, Side};
use crate::embed::{embed_tree, EmbedError, EmbedMode, EmbedOptions, EmbedReport};
use crate::tree::OrientedTree;

/// A threshold `d = twice / 2`, so half-integers compare exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfInt {
    pub twice: usize,
}

impl HalfInt {
    /// `k/2`.
    pub fn half(k: usize) -> Self {
        HalfInt { twice: k }
    }

    pub fn whole(d: usize) -> Self {
        HalfInt { twice: 2 * d }
    }

    /// `x < d`.
    pub fn exceeds(self, x: usize) -> bool {
        2 * x < self.twice
    }

    pub fn ceil(self) -> usize {
        self.twice.div_ceil(2)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice.is_multiple_of(2) {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}.5", self.twice / 2)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeelEvent {
    pub vertex: usize,
    pub side: Side,
    pub arcs_removed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeelTrace {
    pub threshold: HalfInt,
    pub events: Vec<PeelEvent>,
}

impl PeelTrace {
    pub fn arcs_removed(&self) -> usize {
        self.events.iter().map(|e| e.arcs_removed).sum()
    }
}

/// Removes every out-arc (in-arc) at a vertex whose positive outdegree
/// (indegree) is below `d`, until no such vertex is left. Vertices are
/// scanned in ascending order, out-side first, repeatedly.
pub fn peel_to_pseudo_semidegree(d: &Digraph, threshold: HalfInt) -> (Digraph, PeelTrace) {
    let order: Vec<(usize, Side)> = (0..d.n()).flat_map(|v| [(v, Side::Out), (v, Side::In)]).collect();
    peel_in_order(d, threshold, &order)
}

/// Peeling that scans `(vertex, side)` pairs in the given order on every
/// pass; the fixed point does not depend on it.
pub fn peel_in_order(d: &Digraph, threshold: HalfInt, order: &[(usize, Side)]) -> (Digraph, PeelTrace) {
    let n = d.n();
    let mut out = vec![FixedBitSet::with_capacity(n); n];
    let mut deg = [vec![0usize; n], vec![0usize; n]];
    for &(u, v) in d.arcs() {
        out[u].insert(v);
        deg[0][u] += 1;
        deg[1][v] += 1;
    }
    let idx = |s: Side| if s == Side::Out { 0 } else { 1 };
    let mut events = Vec::new();
    loop {
        let mut changed = false;
        for &(v, side) in order {
            let c = deg[idx(side)][v];
            if c == 0 || !threshold.exceeds(c) {
                continue;
            }
            for &w in d.neighbours(v, side) {
                let (a, b) = if side == Side::Out { (v, w) } else { (w, v) };
                if out[a].contains(b) {
                    out[a].set(b, false);
                    deg[0][a] -= 1;
                    deg[1][b] -= 1;
                }
            }
            events.push(PeelEvent { vertex: v, side, arcs_removed: c });
            changed = true;
        }
        if !changed {
            break;
        }
    }
    let kept = d.arcs().iter().copied().filter(|&(u, v)| out[u].contains(v));
    let peeled = Digraph::new(n, kept).expect("subset of a valid arc set");
    (peeled, PeelTrace { threshold, events })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    Antidirected,
    MaxDegree,
    ArcCount,
    C4StarFree,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::Antidirected => "antidirected",
            Condition::MaxDegree => "max_degree",
            Condition::ArcCount => "arc_count",
            Condition::C4StarFree => "c4_star_free",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("condition failed: {condition}")]
    ConditionFailed { condition: Condition, witness: Option<CycleWitness> },
    #[error(transparent)]
    Embed(#[from] EmbedError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub trace: PeelTrace,
    pub peeled_arcs: usize,
    /// The embedding report on the peeled subdigraph; its map is valid in the
    /// original host as well.
    pub report: EmbedReport,
}

/// Antidirected `T` with `Δ^tot(T) ≤ k/2` into a 𝒞₄*-free host with more
/// than `(k-1)n` arcs: peel to pseudo-semidegree `k/2`, then embed.
pub fn corollary6_pipeline(d: &Digraph, t: &OrientedTree, options: &EmbedOptions) -> Result<PipelineReport, PipelineError> {
    let k = t.k();
    let fail = |condition| Err(PipelineError::ConditionFailed { condition, witness: None });
    if !t.is_antidirected() {
        return fail(Condition::Antidirected);
    }
    if 2 * t.max_total_degree() > k {
        return fail(Condition::MaxDegree);
    }
    if d.arc_count() <= (k - 1) * d.n() {
        return fail(Condition::ArcCount);
    }
    if let Some(w) = find_forbidden_cycle(d, CycleMode::NonDirectedC4) {
        return Err(PipelineError::ConditionFailed { condition: Condition::C4StarFree, witness: Some(w) });
    }
    let (peeled, trace) = peel_to_pseudo_semidegree(d, HalfInt::half(k));
    assert!(peeled.arc_count() > 0, "more than (k-1)n arcs always survive peeling");
    let report = embed_tree(t, &peeled, EmbedMode::Antidirected, options)?;
    if let Some(f) = report.map() {
        crate::embed::validate_embedding(t, d, &f).map_err(EmbedError::InvalidCertificate)?;
    }
    Ok(PipelineReport { trace, peeled_arcs: peeled.arc_count(), report })
}

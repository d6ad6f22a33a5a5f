//! Working state of one embedding attempt and the moves acting on it.
//!
//! The tree is grown along a stripping sequence `T_1 ⊂ … ⊂ T_r`. Notation per
//! step follows the growth `T_i → T_{i+1}`: `u` is the vertex receiving its
//! leaves back, `v` its unique neighbour in `T_i`, `⋄` the side with
//! `u ∈ N^⋄(v)`, and `T' = T_i − u`.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::{EmbedError, EmbedMode, Move};
use crate::digraph::{Digraph, Side};
use crate::tree::{OrientedTree, StrippingSequence};

pub(crate) const NONE: usize = usize::MAX;

/// Neighbourhood reads made by the engine, for checking that antidirected
/// embeddings only ever look at one side of each host vertex.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AccessStats {
    pub reads: u64,
    /// Reads of `N^s(h)` where the tree vertex at `h` has no neighbour on
    /// side `s`.
    pub off_side_reads: u64,
}

/// Per-step quantities.
#[derive(Debug, Clone)]
pub struct StepContext {
    pub u: usize,
    pub v: usize,
    pub diamond: Side,
    pub leaves: Vec<usize>,
    pub d_plus: usize,
    pub d_minus: usize,
}

impl StepContext {
    pub fn d_u(&self) -> usize {
        self.leaves.len()
    }
}

pub struct EmbedState<'a> {
    tree: &'a OrientedTree,
    host: &'a Digraph,
    mode: EmbedMode,
    oriented_host: bool,
    seq: StrippingSequence,
    place: Vec<usize>,
    owner: Vec<usize>,
    access: AccessStats,
}

impl<'a> EmbedState<'a> {
    pub fn new(tree: &'a OrientedTree, host: &'a Digraph, mode: EmbedMode, seq: StrippingSequence) -> Self {
        EmbedState {
            tree,
            host,
            mode,
            oriented_host: host.is_oriented(),
            seq,
            place: vec![NONE; tree.n()],
            owner: vec![NONE; host.n()],
            access: AccessStats::default(),
        }
    }

    /// A state with the given partial map already in place.
    pub fn with_placement(
        tree: &'a OrientedTree,
        host: &'a Digraph,
        mode: EmbedMode,
        seq: StrippingSequence,
        placement: &[(usize, usize)],
    ) -> Self {
        let mut s = Self::new(tree, host, mode, seq);
        for &(x, h) in placement {
            s.put(x, h);
        }
        s
    }

    pub fn sequence(&self) -> &StrippingSequence {
        &self.seq
    }

    pub fn access(&self) -> AccessStats {
        self.access
    }

    pub fn image_size(&self) -> usize {
        self.place.iter().filter(|&&h| h != NONE).count()
    }

    pub fn placement(&self) -> &[usize] {
        &self.place
    }

    pub fn is_complete(&self) -> bool {
        self.place.iter().all(|&h| h != NONE)
    }

    fn put(&mut self, x: usize, h: usize) {
        debug_assert!(self.owner[h] == NONE && self.place[x] == NONE);
        self.place[x] = h;
        self.owner[h] = x;
    }

    fn take(&mut self, x: usize) -> usize {
        let h = self.place[x];
        self.place[x] = NONE;
        self.owner[h] = NONE;
        h
    }

    fn clear(&mut self) {
        self.place.fill(NONE);
        self.owner.fill(NONE);
    }

    fn tree_degree(&self, x: usize, side: Side) -> usize {
        match side {
            Side::Out => self.tree.out_degree(x),
            Side::In => self.tree.in_degree(x),
        }
    }

    /// `N^side(h)`, read on behalf of tree vertex `x` (placed, or about to be,
    /// at `h`).
    fn read(&mut self, x: usize, h: usize, side: Side) -> &'a [usize] {
        self.access.reads += 1;
        if self.tree_degree(x, side) == 0 {
            self.access.off_side_reads += 1;
        }
        self.host.neighbours(h, side)
    }

    /// Is `b ∈ N^side(a)`, asked on behalf of tree vertex `x` at `a`.
    fn has(&mut self, x: usize, a: usize, side: Side, b: usize) -> bool {
        self.access.reads += 1;
        if self.tree_degree(x, side) == 0 {
            self.access.off_side_reads += 1;
        }
        self.host.neighbour_bits(a, side).contains(b)
    }

    /// Host vertex `h` could take tree vertex `x` as far as degrees go.
    fn dominates(&self, h: usize, x: usize) -> bool {
        self.host.out_degree(h) >= self.tree.out_degree(x) && self.host.in_degree(h) >= self.tree.in_degree(x)
    }

    fn anchor_ok(&self, h: usize) -> bool {
        !(self.mode == EmbedMode::Arborescence && self.oriented_host && 2 * self.host.out_degree(h) < self.tree.k())
    }

    // ---- core -----------------------------------------------------------

    /// Placement order of the core: `t`, `t'`, the neighbours of `t'`, the
    /// rest of `N(t)`, then breadth-first. Each entry is `(vertex, parent)`.
    fn core_order(&self) -> Vec<(usize, usize)> {
        let t = self.seq.anchor;
        let mut in_core = vec![false; self.tree.n()];
        for &x in &self.seq.core {
            in_core[x] = true;
        }
        let nbrs = self.tree.neighbours(t);
        let t1 = nbrs
            .iter()
            .copied()
            .find(|&y| !self.tree.is_leaf(y))
            .unwrap_or_else(|| *nbrs.first().expect("tree has an arc"));
        debug_assert!(2 * self.tree.degree(t1) <= self.tree.k() + 1);
        let mut order = vec![(t, NONE), (t1, t)];
        let mut seen = vec![false; self.tree.n()];
        seen[t] = true;
        seen[t1] = true;
        for &y in self.tree.neighbours(t1) {
            if !seen[y] && in_core[y] {
                seen[y] = true;
                order.push((y, t1));
            }
        }
        for &y in nbrs {
            if !seen[y] {
                seen[y] = true;
                order.push((y, t));
            }
        }
        let mut i = 2;
        while i < order.len() {
            let x = order[i].0;
            for &y in self.tree.neighbours(x) {
                if !seen[y] && in_core[y] {
                    seen[y] = true;
                    order.push((y, x));
                }
            }
            i += 1;
        }
        debug_assert_eq!(order.len(), self.seq.core.len());
        order
    }

    /// Embeds `T_1` greedily: `t` goes to a vertex of maximum outdegree, every
    /// later vertex to the smallest unused vertex on the right side of its
    /// parent's image. Anchor images are tried in turn.
    pub fn embed_core(&mut self) -> Result<Move, EmbedError> {
        let t = self.seq.anchor;
        let order = self.core_order();
        let max_out = self.host.degree_profile().max_out;
        let mut anchors: Vec<usize> = (0..self.host.n()).filter(|&a| self.host.out_degree(a) == max_out).collect();
        anchors.extend((0..self.host.n()).filter(|&a| self.host.out_degree(a) != max_out));
        let mut stuck = t;
        for a in anchors {
            if !self.dominates(a, t) || !self.anchor_ok(a) {
                continue;
            }
            self.clear();
            self.put(t, a);
            match self.greedy(&order[1..]) {
                Ok(()) => return Ok(Move::Core { anchor: t, image: a, vertices: order.len() }),
                Err(x) => stuck = x,
            }
        }
        self.clear();
        Err(EmbedError::CoreStepStuck(stuck))
    }

    fn greedy(&mut self, order: &[(usize, usize)]) -> Result<(), usize> {
        for &(x, p) in order {
            let side = self.tree.side(p, x);
            let pool = self.read(p, self.place[p], side);
            let h = pool.iter().copied().find(|&h| self.owner[h] == NONE && self.dominates(h, x)).ok_or(x)?;
            self.put(x, h);
        }
        Ok(())
    }

    // ---- steps ----------------------------------------------------------

    pub fn step_count(&self) -> usize {
        self.seq.steps.len()
    }

    /// Context of step `i` (0-based: `T_{i+1} → T_{i+2}` in 1-based naming).
    pub fn context(&self, i: usize) -> StepContext {
        let step = &self.seq.steps[i];
        let u = step.vertex;
        let mask = self.seq.subtree_mask(self.tree.n(), i + 1);
        let v = *self
            .tree
            .neighbours(u)
            .iter()
            .find(|&&y| mask[y])
            .expect("u keeps a neighbour in T_i");
        let d_plus = step.leaves.iter().filter(|&&h| self.tree.side(u, h) == Side::Out).count();
        StepContext {
            u,
            v,
            diamond: self.tree.side(v, u),
            leaves: step.leaves.clone(),
            d_plus,
            d_minus: step.leaves.len() - d_plus,
        }
    }

    /// `h` is unused by `T' = T_i − u`.
    fn free_of_rest(&self, h: usize, u: usize) -> bool {
        self.owner[h] == NONE || self.owner[h] == u
    }

    /// `Q = N^⋄(ṽ) ∖ f(V(T'))`, ascending.
    pub fn candidates(&mut self, ctx: &StepContext) -> Vec<usize> {
        let pool = self.read(ctx.v, self.place[ctx.v], ctx.diamond);
        pool.iter().copied().filter(|&a| self.free_of_rest(a, ctx.u)).collect()
    }

    /// Disjoint unused slots for `leaves` of the vertex `x` sitting at `a`:
    /// vertices adjacent on one side only go first.
    fn leaf_slots(&mut self, x: usize, a: usize, leaves: &[usize]) -> Option<Vec<(usize, usize)>> {
        let (outs, ins): (Vec<usize>, Vec<usize>) = leaves.iter().partition(|&&h| self.tree.side(x, h) == Side::Out);
        let free_out: Vec<usize> = if outs.is_empty() {
            Vec::new()
        } else {
            self.read(x, a, Side::Out).iter().copied().filter(|&h| self.owner[h] == NONE).collect()
        };
        let free_in: Vec<usize> = if ins.is_empty() {
            Vec::new()
        } else {
            self.read(x, a, Side::In).iter().copied().filter(|&h| self.owner[h] == NONE).collect()
        };
        let in_bits = self.host.neighbour_bits(a, Side::In);
        let out_bits = self.host.neighbour_bits(a, Side::Out);
        let mut taken = Vec::with_capacity(leaves.len());
        let mut used = Vec::new();
        let pick = |pool: &[usize], other: &FixedBitSet, want: usize, used: &mut Vec<usize>| {
            let mut got: Vec<usize> = pool.iter().copied().filter(|h| !other.contains(*h) && !used.contains(h)).take(want).collect();
            if got.len() < want {
                let extra: Vec<usize> = pool
                    .iter()
                    .copied()
                    .filter(|h| other.contains(*h) && !used.contains(h))
                    .take(want - got.len())
                    .collect();
                got.extend(extra);
            }
            used.extend(&got);
            got
        };
        // the opposite side only matters when both sides need slots
        let nothing = FixedBitSet::new();
        let got_out = pick(&free_out, if ins.is_empty() { &nothing } else { in_bits }, outs.len(), &mut used);
        let got_in = pick(&free_in, if outs.is_empty() { &nothing } else { out_bits }, ins.len(), &mut used);
        if got_out.len() < outs.len() || got_in.len() < ins.len() {
            return None;
        }
        taken.extend(outs.into_iter().zip(got_out));
        taken.extend(ins.into_iter().zip(got_in));
        Some(taken)
    }

    fn place_leaves(&mut self, slots: &[(usize, usize)]) {
        for &(h, b) in slots {
            self.put(h, b);
        }
    }

    /// Tries every `a ∈ Q` as the image of `u` and places the leaves of `u`
    /// next to it.
    pub fn extend_direct(&mut self, ctx: &StepContext) -> Option<Move> {
        let from = self.place[ctx.u];
        for a in self.candidates(ctx) {
            self.take(ctx.u);
            self.put(ctx.u, a);
            if let Some(slots) = self.leaf_slots(ctx.u, a, &ctx.leaves) {
                self.place_leaves(&slots);
                return Some(Move::Direct { u: ctx.u, from, to: a, leaves: slots });
            }
            self.take(ctx.u);
            self.put(ctx.u, from);
        }
        None
    }

    /// The side `N_ũ` on which placing the leaves of `u` at `ũ` fails.
    pub fn failing_side(&mut self, ctx: &StepContext) -> Side {
        let primary = if ctx.d_plus >= ctx.d_minus { Side::Out } else { Side::In };
        let here = self.place[ctx.u];
        let free = self.read(ctx.u, here, primary).iter().filter(|&&h| self.owner[h] == NONE).count();
        if free < ctx.d_u() {
            primary
        } else {
            primary.flip()
        }
    }

    /// A penultimate vertex of `T_{i+1}` other than `u`, farthest from `v`
    /// (ties: smallest id), with its leaves.
    pub fn far_penultimate(&self, i: usize, ctx: &StepContext) -> Option<(usize, Vec<usize>)> {
        let mask = self.seq.subtree_mask(self.tree.n(), i + 2);
        let dist = self.tree.distances_from(ctx.v);
        self.tree
            .penultimate_in(&mask)
            .into_iter()
            .filter(|&w| w != ctx.u)
            .max_by_key(|&w| (dist[w], std::cmp::Reverse(w)))
            .map(|w| (w, self.tree.leaf_neighbours_in(&mask, w)))
    }

    /// Case A: keep `u` at `ũ`, move a leaf `w₁` of `w` whose image lies in
    /// `N_ũ` to an unused vertex of `N_w̃`, and put a leaf `h` of `u` on the
    /// failing side at the old image of `w₁`.
    pub fn repair_case_a(&mut self, i: usize, ctx: &StepContext) -> Option<Move> {
        let s_u = self.failing_side(ctx);
        let (w, big_w) = self.far_penultimate(i, ctx)?;
        let h = *ctx.leaves.iter().find(|&&h| self.tree.side(ctx.u, h) == s_u)?;
        let rest: Vec<usize> = ctx.leaves.iter().copied().filter(|&y| y != h).collect();
        let hu = self.place[ctx.u];
        let hw = self.place[w];
        for &w1 in &big_w {
            let old = self.place[w1];
            if !self.has(ctx.u, hu, s_u, old) {
                continue;
            }
            let s_w = self.tree.side(w, w1);
            let targets: Vec<usize> = self.read(w, hw, s_w).iter().copied().filter(|&b| self.owner[b] == NONE).collect();
            for b in targets {
                self.take(w1);
                self.put(w1, b);
                self.put(h, old);
                if let Some(slots) = self.leaf_slots(ctx.u, hu, &rest) {
                    self.place_leaves(&slots);
                    return Some(Move::CaseA { u: ctx.u, w, w1, h, from: old, to: b, leaves: slots });
                }
                self.take(h);
                self.take(w1);
                self.put(w1, old);
            }
        }
        None
    }

    /// Case B: swap the images of `u` and a vertex `x ∈ N^⋄(v)`, `x ≠ v₁`,
    /// with `x̃ ∈ N_ũ`, then hang the leaves of `u` at its new image.
    pub fn repair_case_b(&mut self, i: usize, ctx: &StepContext) -> Option<Move> {
        let s_u = self.failing_side(ctx);
        let v1 = self.far_penultimate(i, ctx).and_then(|(w, _)| self.tree.path_between(ctx.v, w).get(1).copied());
        let mask = self.seq.subtree_mask(self.tree.n(), i + 1);
        let hu = self.place[ctx.u];
        let xs: Vec<usize> = self
            .tree
            .neighbours(ctx.v)
            .iter()
            .copied()
            .filter(|&x| mask[x] && x != ctx.u && Some(x) != v1 && self.tree.side(ctx.v, x) == ctx.diamond)
            .collect();
        for x in xs {
            let hx = self.place[x];
            if !self.has(ctx.u, hu, s_u, hx) {
                continue;
            }
            self.take(ctx.u);
            self.take(x);
            self.put(ctx.u, hx);
            self.put(x, hu);
            let nbrs: Vec<usize> = self.tree.neighbours(x).iter().copied().filter(|&z| mask[z]).collect();
            let mut ok = self.anchor_ok(self.place[self.seq.anchor]);
            for z in nbrs {
                let s = self.tree.side(x, z);
                ok = ok && self.has(x, hu, s, self.place[z]);
            }
            if ok {
                if let Some(slots) = self.leaf_slots(ctx.u, hx, &ctx.leaves) {
                    self.place_leaves(&slots);
                    return Some(Move::CaseB { u: ctx.u, x, from: hu, to: hx, leaves: slots });
                }
            }
            self.take(ctx.u);
            self.take(x);
            self.put(ctx.u, hu);
            self.put(x, hx);
        }
        None
    }

    // ---- fallback -------------------------------------------------------

    /// Parent-first order of the whole tree: the core order, then each
    /// step's leaves.
    fn full_order(&self) -> Vec<(usize, usize)> {
        let mut order = self.core_order();
        for step in &self.seq.steps {
            order.extend(step.leaves.iter().map(|&h| (h, step.vertex)));
        }
        order
    }

    /// Backtracking over the whole tree from scratch, expanding at most
    /// `budget` nodes. Returns the node count and whether an embedding was
    /// found; `exhausted` reports a complete search.
    pub fn backtrack(&mut self, budget: u64) -> BacktrackOutcome {
        let order = self.full_order();
        self.clear();
        let mut nodes = 0;
        let result = self.search(&order, 0, budget, &mut nodes);
        if result != SearchResult::Found {
            self.clear();
        }
        BacktrackOutcome { nodes, found: result == SearchResult::Found, exhausted: result == SearchResult::Exhausted }
    }

    fn search(&mut self, order: &[(usize, usize)], depth: usize, budget: u64, nodes: &mut u64) -> SearchResult {
        if depth == order.len() {
            return SearchResult::Found;
        }
        let (x, p) = order[depth];
        let pool: Vec<usize> = if p == NONE {
            (0..self.host.n()).filter(|&a| self.anchor_ok(a)).collect()
        } else {
            let side = self.tree.side(p, x);
            self.read(p, self.place[p], side).to_vec()
        };
        for h in pool {
            if self.owner[h] != NONE || !self.dominates(h, x) {
                continue;
            }
            if *nodes >= budget {
                return SearchResult::OutOfBudget;
            }
            *nodes += 1;
            self.put(x, h);
            match self.search(order, depth + 1, budget, nodes) {
                SearchResult::Exhausted => {
                    self.take(x);
                }
                other => return other,
            }
        }
        SearchResult::Exhausted
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SearchResult {
    Found,
    Exhausted,
    OutOfBudget,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BacktrackOutcome {
    pub nodes: u64,
    pub found: bool,
    pub exhausted: bool,
}

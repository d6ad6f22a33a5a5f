//! Oriented trees and the nested-subtree machinery the embedder grows along.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::digraph::Side;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("a tree needs at least one arc")]
    EmptyTree,
    #[error("underlying graph is not connected")]
    NotConnected,
    #[error("underlying graph has a cycle")]
    HasCycle,
    #[error("vertex {vertex} out of range for a tree on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
}

/// An oriented tree on vertices `0..n` with `k = n - 1` arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedTree {
    n: usize,
    arcs: Vec<(usize, usize)>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    adj: Vec<Vec<usize>>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl OrientedTree {
    /// Builds a tree whose vertex set is `0..=max id`.
    pub fn new(arcs: &[(usize, usize)]) -> Result<Self, TreeError> {
        let n = arcs.iter().map(|&(u, v)| u.max(v) + 1).max().ok_or(TreeError::EmptyTree)?;
        Self::with_vertex_count(n, arcs)
    }

    pub fn with_vertex_count(n: usize, arcs: &[(usize, usize)]) -> Result<Self, TreeError> {
        if arcs.is_empty() {
            return Err(TreeError::EmptyTree);
        }
        let mut parent: Vec<usize> = (0..n).collect();
        for &(u, v) in arcs {
            for x in [u, v] {
                if x >= n {
                    return Err(TreeError::VertexOutOfRange { vertex: x, n });
                }
            }
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a == b {
                return Err(TreeError::HasCycle);
            }
            parent[a] = b;
        }
        if arcs.len() + 1 != n {
            return Err(TreeError::NotConnected);
        }
        let mut sorted = arcs.to_vec();
        sorted.sort_unstable();
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &sorted {
            out_adj[u].push(v);
            in_adj[v].push(u);
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in in_adj.iter_mut().chain(adj.iter_mut()) {
            list.sort_unstable();
        }
        Ok(OrientedTree { n, arcs: sorted, out_adj, in_adj, adj })
    }

    /// Oriented path `0 - 1 - ... - k`; edge `i` points forward when `forward[i]`.
    pub fn path(forward: &[bool]) -> Result<Self, TreeError> {
        let arcs: Vec<_> = forward
            .iter()
            .enumerate()
            .map(|(i, &f)| if f { (i, i + 1) } else { (i + 1, i) })
            .collect();
        Self::new(&arcs)
    }

    pub fn directed_path(k: usize) -> Result<Self, TreeError> {
        Self::path(&vec![true; k])
    }

    /// Path whose arcs alternate, starting with a forward arc.
    pub fn alternating_path(k: usize) -> Result<Self, TreeError> {
        Self::path(&(0..k).map(|i| i % 2 == 0).collect::<Vec<_>>())
    }

    /// Star with centre 0 and arcs pointing away from it.
    pub fn out_star(k: usize) -> Result<Self, TreeError> {
        Self::new(&(1..=k).map(|v| (0, v)).collect::<Vec<_>>())
    }

    pub fn in_star(k: usize) -> Result<Self, TreeError> {
        Self::new(&(1..=k).map(|v| (v, 0)).collect::<Vec<_>>())
    }

    /// Spider with centre 0 and one leg per entry of `legs`, arcs pointing away
    /// from the centre.
    pub fn spider(legs: &[usize]) -> Result<Self, TreeError> {
        let mut arcs = Vec::new();
        let mut next = 1;
        for &len in legs {
            let mut prev = 0;
            for _ in 0..len {
                arcs.push((prev, next));
                prev = next;
                next += 1;
            }
        }
        Self::new(&arcs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of arcs.
    pub fn k(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn out_neighbours(&self, x: usize) -> &[usize] {
        &self.out_adj[x]
    }

    pub fn in_neighbours(&self, x: usize) -> &[usize] {
        &self.in_adj[x]
    }

    pub fn neighbours(&self, x: usize) -> &[usize] {
        &self.adj[x]
    }

    pub fn out_degree(&self, x: usize) -> usize {
        self.out_adj[x].len()
    }

    pub fn in_degree(&self, x: usize) -> usize {
        self.in_adj[x].len()
    }

    pub fn degree(&self, x: usize) -> usize {
        self.adj[x].len()
    }

    pub fn is_leaf(&self, x: usize) -> bool {
        self.adj[x].len() == 1
    }

    /// Direction of the arc joining adjacent `x` and `y`, seen from `x`.
    pub fn side(&self, x: usize, y: usize) -> Side {
        if self.out_adj[x].binary_search(&y).is_ok() {
            Side::Out
        } else {
            debug_assert!(self.in_adj[x].binary_search(&y).is_ok(), "{x} and {y} not adjacent");
            Side::In
        }
    }

    pub fn max_total_degree(&self) -> usize {
        (0..self.n).map(|x| self.degree(x)).max().unwrap_or(0)
    }

    pub fn max_out_degree(&self) -> usize {
        (0..self.n).map(|x| self.out_degree(x)).max().unwrap_or(0)
    }

    pub fn reverse(&self) -> OrientedTree {
        let arcs: Vec<_> = self.arcs.iter().map(|&(u, v)| (v, u)).collect();
        Self::with_vertex_count(self.n, &arcs).expect("reversal keeps a tree a tree")
    }

    /// Every vertex is a source or a sink.
    pub fn is_antidirected(&self) -> bool {
        (0..self.n).all(|x| self.in_degree(x) == 0 || self.out_degree(x) == 0)
    }

    /// The root if every arc points away from a single source.
    pub fn out_arborescence_root(&self) -> Option<usize> {
        let mut root = None;
        for x in 0..self.n {
            match self.in_degree(x) {
                0 if root.is_none() => root = Some(x),
                1 => {}
                _ => return None,
            }
        }
        root
    }

    /// Sizes of the two colour classes of the underlying bipartition, the class
    /// of vertex 0 first.
    pub fn bipartition_sizes(&self) -> (usize, usize) {
        let dist = self.distances_from(0);
        let even = dist.iter().filter(|&&d| d % 2 == 0).count();
        (even, self.n - even)
    }

    /// Underlying distances from `x` to every vertex.
    pub fn distances_from(&self, x: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[x] = 0;
        let mut queue = VecDeque::from([x]);
        while let Some(y) = queue.pop_front() {
            for &z in &self.adj[y] {
                if dist[z] == usize::MAX {
                    dist[z] = dist[y] + 1;
                    queue.push_back(z);
                }
            }
        }
        dist
    }

    pub fn distance(&self, a: usize, b: usize) -> usize {
        self.distances_from(a)[b]
    }

    /// The unique path from `a` to `b`, both ends included.
    pub fn path_between(&self, a: usize, b: usize) -> Vec<usize> {
        let mut parent = vec![usize::MAX; self.n];
        parent[b] = b;
        let mut queue = VecDeque::from([b]);
        while let Some(y) = queue.pop_front() {
            for &z in &self.adj[y] {
                if parent[z] == usize::MAX {
                    parent[z] = y;
                    queue.push_back(z);
                }
            }
        }
        let mut path = vec![a];
        let mut cur = a;
        while cur != b {
            cur = parent[cur];
            path.push(cur);
        }
        path
    }

    pub fn diameter(&self) -> usize {
        let far = |x: usize| {
            let d = self.distances_from(x);
            let m = *d.iter().max().unwrap();
            (d.iter().position(|&y| y == m).unwrap(), m)
        };
        far(far(0).0).1
    }

    /// Penultimate vertices of the whole tree.
    pub fn penultimate_vertices(&self) -> Vec<usize> {
        self.penultimate_in(&vec![true; self.n])
    }

    pub(crate) fn degree_in(&self, mask: &[bool], x: usize) -> usize {
        self.adj[x].iter().filter(|&&y| mask[y]).count()
    }

    /// Penultimate vertices of the subtree induced by `mask`: non-leaves all of
    /// whose neighbours but at most one are leaves.
    pub fn penultimate_in(&self, mask: &[bool]) -> Vec<usize> {
        (0..self.n)
            .filter(|&x| mask[x] && self.degree_in(mask, x) >= 2)
            .filter(|&x| {
                let non_leaves = self.adj[x]
                    .iter()
                    .filter(|&&y| mask[y] && self.degree_in(mask, y) != 1)
                    .count();
                non_leaves <= 1
            })
            .collect()
    }

    /// Leaf neighbours of `x` in the subtree induced by `mask`.
    pub fn leaf_neighbours_in(&self, mask: &[bool], x: usize) -> Vec<usize> {
        self.adj[x]
            .iter()
            .copied()
            .filter(|&y| mask[y] && self.degree_in(mask, y) == 1)
            .collect()
    }

    /// A vertex of maximum total degree, preferring `deg⁺ ≥ deg⁻`, then the
    /// smallest id.
    pub fn anchor_vertex(&self) -> usize {
        let best = self.max_total_degree();
        (0..self.n)
            .filter(|&x| self.degree(x) == best)
            .min_by_key(|&x| (self.out_degree(x) < self.in_degree(x), x))
            .expect("a tree has vertices")
    }

    /// Vertices within distance two of `c`, ascending.
    fn ball2(&self, c: usize) -> Vec<usize> {
        let d = self.distances_from(c);
        (0..self.n).filter(|&x| d[x] <= 2).collect()
    }

    /// A maximal subtree of diameter at most four containing `t` and all its
    /// neighbours, as an ascending vertex list.
    ///
    /// Such subtrees are exactly radius-2 balls around `t` or a neighbour of
    /// `t`; the largest one is taken (ties: `t` itself, then smallest centre).
    pub fn core_subtree(&self, t: usize) -> Vec<usize> {
        std::iter::once(t)
            .chain(self.adj[t].iter().copied())
            .map(|c| (c, self.ball2(c)))
            .min_by_key(|(c, ball)| (std::cmp::Reverse(ball.len()), *c != t, *c))
            .map(|(_, ball)| ball)
            .unwrap()
    }

    /// The chain from the core subtree around `anchor_vertex()` up to the
    /// whole tree.
    pub fn stripping_sequence(&self) -> StrippingSequence {
        self.stripping_sequence_from(self.anchor_vertex())
    }

    /// Strips leaf sets of penultimate vertices until only the core subtree of
    /// `t` is left. A penultimate vertex is eligible when it has leaves and all
    /// of them lie outside the core; among eligible vertices the one of
    /// minimum degree is stripped (ties: farthest from `t`, then smallest id).
    pub fn stripping_sequence_from(&self, t: usize) -> StrippingSequence {
        let core = self.core_subtree(t);
        let mut in_core = vec![false; self.n];
        for &x in &core {
            in_core[x] = true;
        }
        let dist_t = self.distances_from(t);
        let mut mask = vec![true; self.n];
        let mut remaining = self.n - core.len();
        let mut steps = Vec::new();
        while remaining > 0 {
            let (u, leaves) = self
                .penultimate_in(&mask)
                .into_iter()
                .map(|u| (u, self.leaf_neighbours_in(&mask, u)))
                .filter(|(_, leaves)| !leaves.is_empty() && leaves.iter().all(|&h| !in_core[h]))
                .min_by_key(|&(u, _)| (self.degree_in(&mask, u), std::cmp::Reverse(dist_t[u]), u))
                .expect("an eligible penultimate vertex exists while the core is not reached");
            for &h in &leaves {
                mask[h] = false;
            }
            remaining -= leaves.len();
            steps.push(StripStep { vertex: u, leaves });
        }
        steps.reverse();
        StrippingSequence { anchor: t, core, steps }
    }
}

/// One growth step `T_i → T_{i+1}`: re-attach `leaves` to `vertex`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StripStep {
    pub vertex: usize,
    pub leaves: Vec<usize>,
}

/// Nested subtrees `T_1 ⊂ T_2 ⊂ … ⊂ T_r = T`. `T_1` is `core`; `steps[i-1]`
/// turns `T_i` into `T_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrippingSequence {
    pub anchor: usize,
    pub core: Vec<usize>,
    pub steps: Vec<StripStep>,
}

impl StrippingSequence {
    /// Number of subtrees `r`.
    pub fn len(&self) -> usize {
        self.steps.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Membership mask of `T_i`, 1-based.
    pub fn subtree_mask(&self, n: usize, i: usize) -> Vec<bool> {
        assert!(i >= 1 && i <= self.len());
        let mut mask = vec![false; n];
        for &x in &self.core {
            mask[x] = true;
        }
        for step in &self.steps[..i - 1] {
            for &h in &step.leaves {
                mask[h] = true;
            }
        }
        mask
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mask_of(n: usize, xs: &[usize]) -> Vec<bool> {
        let mut m = vec![false; n];
        xs.iter().for_each(|&x| m[x] = true);
        m
    }

    #[test]
    fn build_examples() {
        let p = OrientedTree::new(&[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p.max_total_degree(), 2);
        let s = OrientedTree::new(&[(0, 1), (2, 1)]).unwrap();
        assert!(s.is_antidirected());
        assert_eq!(OrientedTree::new(&[(0, 1), (1, 2), (2, 0)]), Err(TreeError::HasCycle));
        assert_eq!(OrientedTree::new(&[]), Err(TreeError::EmptyTree));
        assert_eq!(OrientedTree::new(&[(0, 1), (2, 3)]), Err(TreeError::NotConnected));
        assert_eq!(OrientedTree::new(&[(0, 1), (1, 0)]), Err(TreeError::HasCycle));
        assert_eq!(
            OrientedTree::with_vertex_count(2, &[(0, 2)]),
            Err(TreeError::VertexOutOfRange { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn antidirected_examples() {
        assert!(OrientedTree::alternating_path(4).unwrap().is_antidirected());
        assert!(!OrientedTree::directed_path(2).unwrap().is_antidirected());
        assert!(OrientedTree::out_star(5).unwrap().is_antidirected());
    }

    #[test]
    fn arborescence_roots() {
        assert_eq!(OrientedTree::directed_path(2).unwrap().out_arborescence_root(), Some(0));
        assert_eq!(OrientedTree::in_star(3).unwrap().out_arborescence_root(), None);
        assert_eq!(OrientedTree::out_star(3).unwrap().out_arborescence_root(), Some(0));
        // in-arborescence of T is the out-arborescence of its reverse
        assert_eq!(OrientedTree::in_star(3).unwrap().reverse().out_arborescence_root(), Some(0));
    }

    #[test]
    fn penultimate_examples() {
        assert_eq!(OrientedTree::directed_path(3).unwrap().penultimate_vertices(), vec![1, 2]);
        assert_eq!(OrientedTree::out_star(4).unwrap().penultimate_vertices(), vec![0]);
        // legs 0-1-2, 0-3-4, 0-5-6
        let spider = OrientedTree::spider(&[2, 2, 2]).unwrap();
        assert_eq!(spider.penultimate_vertices(), vec![1, 3, 5]);
        assert!(OrientedTree::directed_path(1).unwrap().penultimate_vertices().is_empty());
    }

    #[test]
    fn anchor_examples() {
        assert_eq!(OrientedTree::in_star(4).unwrap().anchor_vertex(), 0);
        // balanced double star, centres 0 and 1; 0 has two in-leaves, 1 two out-leaves
        let ds = OrientedTree::new(&[(0, 1), (2, 0), (3, 0), (1, 4), (1, 5)]).unwrap();
        assert_eq!(ds.anchor_vertex(), 1);
        // both centres prefer-able: smaller id wins
        let ds2 = OrientedTree::new(&[(0, 1), (0, 2), (3, 0), (1, 4), (5, 1)]).unwrap();
        assert_eq!(ds2.anchor_vertex(), 0);
        // path with arcs F B F F: vertex 1 is a sink, 2 a source
        let p = OrientedTree::path(&[true, false, true, true]).unwrap();
        assert_eq!(p.anchor_vertex(), 2);
    }

    #[test]
    fn core_subtree_examples() {
        let small = OrientedTree::spider(&[2, 2, 2]).unwrap();
        assert_eq!(small.core_subtree(0), (0..7).collect::<Vec<_>>());
        let ds = OrientedTree::new(&[(0, 1), (2, 0), (3, 0), (1, 4), (1, 5)]).unwrap();
        assert_eq!(ds.core_subtree(1).len(), 6);
        let p6 = OrientedTree::directed_path(6).unwrap();
        let t = p6.anchor_vertex();
        assert_eq!(t, 1);
        let core = p6.core_subtree(t);
        assert_eq!(core, vec![0, 1, 2, 3, 4]);
        assert!(core.contains(&t));
    }

    #[test]
    fn core_subtree_is_maximal() {
        // 0 has a leaf 1 and a long tail 2-3-4-5-6
        let t = OrientedTree::new(&[(0, 1), (0, 2), (2, 3), (3, 4), (4, 5), (5, 6)]).unwrap();
        assert_eq!(t.anchor_vertex(), 0);
        assert_eq!(t.core_subtree(0), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn star_has_trivial_sequence() {
        let s = OrientedTree::out_star(5).unwrap().stripping_sequence();
        assert_eq!(s.len(), 1);
        assert_eq!(s.core.len(), 6);
    }

    #[test]
    fn long_legged_spider_strips_leg_by_leg() {
        let sp = OrientedTree::spider(&[3, 3, 3]).unwrap();
        let s = sp.stripping_sequence();
        assert_eq!(s.anchor, 0);
        assert_eq!(s.len(), 4);
        assert_eq!(s.core, vec![0, 1, 2, 4, 5, 7, 8]);
        for step in &s.steps {
            assert_eq!(step.leaves.len(), 1);
        }
        assert_eq!(s.subtree_mask(sp.n(), 4), vec![true; sp.n()]);
    }

    #[test]
    fn penultimate_in_subtree() {
        let p = OrientedTree::directed_path(4).unwrap();
        let m = mask_of(5, &[0, 1, 2]);
        assert_eq!(p.penultimate_in(&m), vec![1]);
        assert_eq!(p.leaf_neighbours_in(&m, 1), vec![0, 2]);
    }

    #[test]
    fn paths_and_distances() {
        let sp = OrientedTree::spider(&[2, 2]).unwrap();
        assert_eq!(sp.path_between(2, 4), vec![2, 1, 0, 3, 4]);
        assert_eq!(sp.distance(2, 4), 4);
        assert_eq!(sp.diameter(), 4);
        assert_eq!(sp.side(0, 1), Side::Out);
        assert_eq!(sp.side(1, 0), Side::In);
        assert_eq!(OrientedTree::alternating_path(4).unwrap().bipartition_sizes(), (3, 2));
    }
}

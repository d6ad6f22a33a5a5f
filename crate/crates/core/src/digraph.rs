//! Simple digraphs on dense vertex ids and the degree statistics used by the
//! embedding theorems.
//!
//! Vertices are `0..n`. Loops and parallel arcs are rejected; a pair of
//! opposite arcs (a digon) is allowed. Adjacency is kept both as sorted lists
//! (for ordered iteration) and as bitsets (for membership and intersection).

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised while validating an arc list.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DigraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(usize, usize),
    #[error("vertex {vertex} out of range for a digraph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
}

/// Which neighbourhood of a vertex is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Out,
    In,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Out => Side::In,
            Side::In => Side::Out,
        }
    }
}

/// An immutable simple digraph.
#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    out_bits: Vec<FixedBitSet>,
    in_bits: Vec<FixedBitSet>,
    und_bits: Vec<FixedBitSet>,
}

impl std::fmt::Debug for Digraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Digraph")
            .field("n", &self.n)
            .field("arcs", &self.arcs)
            .finish()
    }
}

impl Digraph {
    /// Validates `arcs` and builds the adjacency structures.
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, DigraphError> {
        let mut out_bits = vec![FixedBitSet::with_capacity(n); n];
        let mut list = Vec::new();
        for (u, v) in arcs {
            for x in [u, v] {
                if x >= n {
                    return Err(DigraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(DigraphError::SelfLoop(u));
            }
            if out_bits[u].put(v) {
                return Err(DigraphError::DuplicateArc(u, v));
            }
            list.push((u, v));
        }
        Ok(Self::from_checked(n, list))
    }

    /// Complete digraph on `n` vertices (every ordered pair is an arc).
    pub fn complete(n: usize) -> Self {
        let arcs = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)));
        Self::from_checked(n, arcs.collect())
    }

    /// Digraph on `n` vertices with no arcs.
    pub fn empty(n: usize) -> Self {
        Self::from_checked(n, Vec::new())
    }

    fn from_checked(n: usize, mut arcs: Vec<(usize, usize)>) -> Self {
        arcs.sort_unstable();
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        let mut out_bits = vec![FixedBitSet::with_capacity(n); n];
        let mut in_bits = vec![FixedBitSet::with_capacity(n); n];
        for &(u, v) in &arcs {
            out_adj[u].push(v);
            in_adj[v].push(u);
            out_bits[u].insert(v);
            in_bits[v].insert(u);
        }
        for list in &mut in_adj {
            list.sort_unstable();
        }
        let und_bits = out_bits
            .iter()
            .zip(&in_bits)
            .map(|(o, i)| {
                let mut u = o.clone();
                u.union_with(i);
                u
            })
            .collect();
        Digraph { n, arcs, out_adj, in_adj, out_bits, in_bits, und_bits }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out_bits[u].contains(v)
    }

    /// True if `u` and `v` are joined by an arc in either direction.
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.und_bits[u].contains(v)
    }

    pub fn out_neighbours(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    pub fn in_neighbours(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    pub fn neighbours(&self, v: usize, side: Side) -> &[usize] {
        match side {
            Side::Out => &self.out_adj[v],
            Side::In => &self.in_adj[v],
        }
    }

    pub fn neighbour_bits(&self, v: usize, side: Side) -> &FixedBitSet {
        match side {
            Side::Out => &self.out_bits[v],
            Side::In => &self.in_bits[v],
        }
    }

    /// Neighbours of `v` in the underlying undirected graph, as a bitset.
    pub fn underlying_bits(&self, v: usize) -> &FixedBitSet {
        &self.und_bits[v]
    }

    /// Neighbours of `v` in the underlying undirected graph, ascending.
    pub fn underlying_neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.und_bits[v].ones()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_adj[v].len()
    }

    pub fn degree(&self, v: usize, side: Side) -> usize {
        self.neighbours(v, side).len()
    }

    /// Number of distinct neighbours of `v` (a digon partner counts once).
    pub fn total_degree(&self, v: usize) -> usize {
        self.und_bits[v].count_ones(..)
    }

    /// Every arc turned around.
    pub fn reverse(&self) -> Digraph {
        Self::from_checked(self.n, self.arcs.iter().map(|&(u, v)| (v, u)).collect())
    }

    /// True iff no digon is present.
    pub fn is_oriented(&self) -> bool {
        self.arcs.iter().all(|&(u, v)| !self.has_arc(v, u))
    }

    /// The subdigraph on the same vertex set keeping the arcs accepted by `keep`.
    pub fn filter_arcs(&self, mut keep: impl FnMut(usize, usize) -> bool) -> Digraph {
        let arcs = self.arcs.iter().copied().filter(|&(u, v)| keep(u, v)).collect();
        Self::from_checked(self.n, arcs)
    }

    /// Shortest path length between `u` and `v` ignoring orientation, or `None`
    /// if they lie in different components.
    pub fn underlying_distance(&self, u: usize, v: usize) -> Option<usize> {
        if u == v {
            return Some(0);
        }
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = VecDeque::from([u]);
        dist[u] = 0;
        while let Some(x) = queue.pop_front() {
            for y in self.und_bits[x].ones() {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    if y == v {
                        return Some(dist[y]);
                    }
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// Length of a shortest cycle in the underlying simple graph (digons do
    /// not count as cycles), or `None` if the underlying graph is a forest.
    pub fn underlying_girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        for root in 0..self.n {
            dist.fill(usize::MAX);
            dist[root] = 0;
            parent[root] = usize::MAX;
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                for y in self.und_bits[x].ones() {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        queue.push_back(y);
                    } else if parent[x] != y {
                        let len = dist[x] + dist[y] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        DegreeProfile::of(self)
    }
}

/// Every degree statistic the embedding theorems quantify over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DegreeProfile {
    /// δ⁺: minimum outdegree.
    #[serde(rename = "delta_plus")]
    pub min_out: usize,
    /// δ⁻: minimum indegree.
    #[serde(rename = "delta_minus")]
    pub min_in: usize,
    /// δ⁰ = min(δ⁺, δ⁻).
    #[serde(rename = "delta_zero")]
    pub semidegree: usize,
    /// δ̄⁰: smallest positive side-degree; 0 for an arcless digraph.
    #[serde(rename = "pseudo_delta_zero")]
    pub pseudo_semidegree: usize,
    #[serde(rename = "Delta_plus")]
    pub max_out: usize,
    #[serde(rename = "Delta_minus")]
    pub max_in: usize,
    /// Maximum degree of the underlying simple graph.
    #[serde(rename = "Delta_tot")]
    pub max_total: usize,
    /// Largest m with some vertex of outdegree ≥ m and some vertex of
    /// indegree ≥ m, i.e. min(Δ⁺, Δ⁻).
    #[serde(rename = "Delta_pm")]
    pub max_pm: usize,
}

impl DegreeProfile {
    pub fn of(d: &Digraph) -> Self {
        if d.n() == 0 {
            return Self::default();
        }
        let outs = (0..d.n()).map(|v| d.out_degree(v));
        let ins = (0..d.n()).map(|v| d.in_degree(v));
        let min_out = outs.clone().min().unwrap_or(0);
        let min_in = ins.clone().min().unwrap_or(0);
        let max_out = outs.clone().max().unwrap_or(0);
        let max_in = ins.clone().max().unwrap_or(0);
        let pseudo_semidegree = outs.chain(ins).filter(|&x| x > 0).min().unwrap_or(0);
        let max_total = (0..d.n()).map(|v| d.total_degree(v)).max().unwrap_or(0);
        DegreeProfile {
            min_out,
            min_in,
            semidegree: min_out.min(min_in),
            pseudo_semidegree,
            max_out,
            max_in,
            max_total,
            max_pm: max_out.min(max_in),
        }
    }

    /// The profile of the reversed digraph.
    pub fn mirrored(&self) -> Self {
        DegreeProfile {
            min_out: self.min_in,
            min_in: self.min_out,
            max_out: self.max_in,
            max_in: self.max_out,
            ..*self
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn directed_cycle(n: usize) -> Digraph {
        Digraph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn single_arc_profile() {
        let d = Digraph::new(2, [(0, 1)]).unwrap();
        let p = d.degree_profile();
        assert_eq!(p.pseudo_semidegree, 1);
        assert_eq!(p.semidegree, 0);
    }

    #[test]
    fn complete_on_three() {
        let d = Digraph::new(3, [(0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1)]).unwrap();
        let p = d.degree_profile();
        assert_eq!(p.semidegree, 2);
        assert_eq!(p.max_pm, 2);
        assert_eq!(d, Digraph::complete(3));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Digraph::new(2, [(0, 0)]), Err(DigraphError::SelfLoop(0)));
        assert_eq!(Digraph::new(2, [(0, 1), (0, 1)]), Err(DigraphError::DuplicateArc(0, 1)));
        assert_eq!(
            Digraph::new(2, [(0, 2)]),
            Err(DigraphError::VertexOutOfRange { vertex: 2, n: 2 })
        );
        assert!(Digraph::new(2, [(0, 1), (1, 0)]).is_ok());
    }

    #[test]
    fn empty_profiles_are_zero() {
        assert_eq!(Digraph::empty(0).degree_profile(), DegreeProfile::default());
        let p = Digraph::empty(4).degree_profile();
        assert_eq!(p, DegreeProfile::default());
    }

    #[test]
    fn blown_up_triangle_profile() {
        // classes {0,1}, {2,3}, {4,5}
        let mut arcs = Vec::new();
        for c in 0..3 {
            for a in 0..2 {
                for b in 0..2 {
                    arcs.push((2 * c + a, 2 * ((c + 1) % 3) + b));
                }
            }
        }
        let d = Digraph::new(6, arcs).unwrap();
        let p = d.degree_profile();
        assert_eq!((p.min_out, p.min_in, p.max_pm), (2, 2, 2));
        assert_eq!(d.underlying_distance(0, 1), Some(2));
        assert_eq!(d.underlying_distance(0, 0), Some(0));
    }

    #[test]
    fn reverse_cycle_and_digons() {
        let c4 = directed_cycle(4);
        let r = c4.reverse();
        assert!(r.has_arc(1, 0) && !r.has_arc(0, 1));
        assert_eq!(r.reverse(), c4);
        let digons = Digraph::new(3, [(0, 1), (1, 0), (1, 2), (2, 1)]).unwrap();
        assert_eq!(digons.reverse(), digons);
    }

    #[test]
    fn orientedness() {
        assert!(directed_cycle(4).is_oriented());
        assert!(Digraph::empty(3).is_oriented());
        assert!(!Digraph::complete(3).is_oriented());
    }

    #[test]
    fn distances_ignore_orientation() {
        let d = Digraph::new(4, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(d.underlying_distance(0, 2), Some(2));
        assert_eq!(d.underlying_distance(2, 0), Some(2));
        assert_eq!(d.underlying_distance(0, 3), None);
    }

    #[test]
    fn girth_of_small_graphs() {
        assert_eq!(directed_cycle(5).underlying_girth(), Some(5));
        assert_eq!(Digraph::complete(2).underlying_girth(), None);
        assert_eq!(Digraph::complete(4).underlying_girth(), Some(3));
    }
}

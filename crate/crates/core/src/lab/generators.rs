//! Host and pattern generators: the extremal constructions, girth-6 incidence
//! hosts and seeded random families.

use std::str::FromStr;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::Rng;

use super::rng::{stream, LabRng};
use super::LabError;
use crate::cycles::{self, realizations_by, FourCycleType};
use crate::digraph::Digraph;
use crate::tree::OrientedTree;

/// Two disjoint complete digraphs on `clique` vertices plus a vertex joined
/// by digons to everything. Vertex `0` is the universal vertex.
pub fn two_clique_host_with_clique_size(clique: usize) -> Digraph {
    let n = 2 * clique + 1;
    let mut arcs = Vec::new();
    for v in 1..n {
        arcs.push((0, v));
        arcs.push((v, 0));
    }
    for side in 0..2 {
        let base = 1 + side * clique;
        for a in base..base + clique {
            for b in base..base + clique {
                if a != b {
                    arcs.push((a, b));
                }
            }
        }
    }
    Digraph::new(n, arcs).expect("construction is simple")
}

/// The two-cliques-plus-universal-vertex host for `k`-arc trees, with cliques
/// of size `⌈k/2⌉` so that `δ⁰ ≥ k/2` and `Δ± ≥ k`.
pub fn gen_two_clique_host(k: usize) -> Result<Digraph, LabError> {
    if k < 4 {
        return Err(LabError::KTooSmall { k, min: 4 });
    }
    Ok(two_clique_host_with_clique_size(k.div_ceil(2)))
}

/// Directed cycle of length `len` with every vertex replaced by an
/// independent set of size `s`. Class `i` is `i*s .. (i+1)*s`.
pub fn gen_blowup_cycle(len: usize, s: usize) -> Result<Digraph, LabError> {
    if len < 3 || s < 1 {
        return Err(LabError::BadParams(format!("blow-up needs len >= 3 and s >= 1, got len={len} s={s}")));
    }
    let mut arcs = Vec::with_capacity(len * s * s);
    for c in 0..len {
        let next = (c + 1) % len;
        for a in 0..s {
            for b in 0..s {
                arcs.push((c * s + a, next * s + b));
            }
        }
    }
    Ok(Digraph::new(len * s, arcs).expect("construction is simple"))
}

/// Perfect difference sets modulo `q² + q + 1`; translates of the set are the
/// lines of the projective plane of order `q`.
const DIFFERENCE_SETS: [(usize, &[usize]); 3] = [(2, &[0, 1, 3]), (3, &[0, 1, 3, 9]), (4, &[0, 1, 4, 14, 16])];

pub fn difference_set(q: usize) -> Result<&'static [usize], LabError> {
    DIFFERENCE_SETS
        .iter()
        .find(|(order, _)| *order == q)
        .map(|(_, set)| *set)
        .ok_or(LabError::UnsupportedOrder(q))
}

/// Point-line incidence edges of the plane of order `q`: points are
/// `0..N`, lines `N..2N` with `N = q² + q + 1`. Edges are grouped into `q+1`
/// perfect matchings: matching `j` joins line `i` to point `set[j] + i`.
type Matchings = Vec<Vec<(usize, usize)>>;

fn incidence_matchings(q: usize) -> Result<(usize, Matchings), LabError> {
    let set = difference_set(q)?;
    let n = q * q + q + 1;
    let matchings = set
        .iter()
        .map(|&d| (0..n).map(|i| ((d + i) % n, n + i)).collect())
        .collect();
    Ok((n, matchings))
}

/// Incidence graph of the projective plane of order `q ∈ {2,3,4}` with every
/// edge doubled into a digon: `2(q²+q+1)` vertices, underlying girth 6,
/// `δ⁰ = Δ± = q + 1`.
pub fn gen_girth6_digon_host(q: usize) -> Result<Digraph, LabError> {
    let (n, matchings) = incidence_matchings(q)?;
    let arcs = matchings.into_iter().flatten().flat_map(|(p, l)| [(p, l), (l, p)]);
    Ok(Digraph::new(2 * n, arcs).expect("construction is simple"))
}

/// An orientation of the same incidence graph with no digons: half of the
/// matchings point from points to lines, the rest back, so every outdegree is
/// `⌊(q+1)/2⌋` or `⌈(q+1)/2⌉`. With `hub`, point 0 additionally gets all its
/// arcs pointing out (outdegree `q+1`).
pub fn gen_oriented_girth6_host(q: usize, hub: bool) -> Result<Digraph, LabError> {
    let (n, matchings) = incidence_matchings(q)?;
    let forward = q.div_ceil(2);
    let mut arcs = Vec::new();
    for (j, m) in matchings.into_iter().enumerate() {
        for (p, l) in m {
            if j < forward || (hub && p == 0) {
                arcs.push((p, l));
            } else {
                arcs.push((l, p));
            }
        }
    }
    Ok(Digraph::new(2 * n, arcs).expect("construction is simple"))
}

/// Shapes for [`gen_random_tree`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeKind {
    Any,
    Antidirected,
    OutArborescence,
    Path,
    Spider,
}

impl FromStr for TreeKind {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self, LabError> {
        Ok(match s {
            "any" => TreeKind::Any,
            "antidirected" => TreeKind::Antidirected,
            "out_arborescence" | "arborescence" => TreeKind::OutArborescence,
            "path" => TreeKind::Path,
            "spider" => TreeKind::Spider,
            other => return Err(LabError::BadKind(other.to_string())),
        })
    }
}

/// Leg lengths of the spider with `k` arcs and three legs as equal as
/// possible, longest first.
pub fn balanced_spider_legs(k: usize) -> Vec<usize> {
    (0..3).map(|i| k / 3 + usize::from(i < k % 3)).filter(|&l| l > 0).collect()
}

fn random_underlying_tree(k: usize, rng: &mut LabRng) -> Vec<(usize, usize)> {
    let n = k + 1;
    if n == 2 {
        return vec![(0, 1)];
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    super::catalog::reference::prufer_decode(&code, n)
}

fn random_orientation(edges: &[(usize, usize)], rng: &mut LabRng) -> Vec<(usize, usize)> {
    edges.iter().map(|&(a, b)| if rng.gen_bool(0.5) { (a, b) } else { (b, a) }).collect()
}

/// A seeded random tree with `k` arcs of the requested shape.
pub fn gen_random_tree(k: usize, kind: TreeKind, seed: u64) -> Result<OrientedTree, LabError> {
    if k == 0 {
        return Err(LabError::BadParams("trees need k >= 1".into()));
    }
    let mut rng = stream(seed, 0);
    let arcs = match kind {
        TreeKind::Any => {
            let edges = random_underlying_tree(k, &mut rng);
            random_orientation(&edges, &mut rng)
        }
        TreeKind::Path => {
            let forward: Vec<bool> = (0..k).map(|_| rng.gen_bool(0.5)).collect();
            OrientedTree::path(&forward).unwrap().arcs().to_vec()
        }
        TreeKind::Spider => {
            let shape = OrientedTree::spider(&balanced_spider_legs(k)).unwrap();
            random_orientation(shape.arcs(), &mut rng)
        }
        TreeKind::Antidirected => {
            let edges = random_underlying_tree(k, &mut rng);
            let shape = OrientedTree::new(&edges).unwrap();
            let dist = shape.distances_from(0);
            let sources_even = rng.gen_bool(0.5);
            edges
                .iter()
                .map(|&(a, b)| if dist[a].is_multiple_of(2) == sources_even { (a, b) } else { (b, a) })
                .collect()
        }
        TreeKind::OutArborescence => {
            let edges = random_underlying_tree(k, &mut rng);
            let shape = OrientedTree::new(&edges).unwrap();
            let best = shape.max_total_degree();
            let root = (0..shape.n()).find(|&x| shape.degree(x) == best).unwrap();
            let dist = shape.distances_from(root);
            edges.iter().map(|&(a, b)| if dist[a] < dist[b] { (a, b) } else { (b, a) }).collect()
        }
    };
    Ok(OrientedTree::new(&arcs).expect("generated arcs form a tree"))
}

/// Host constraint for [`gen_random_digraph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HostConstraint {
    None,
    C4Free,
    C4StarFree,
}

impl FromStr for HostConstraint {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self, LabError> {
        Ok(match s {
            "none" => HostConstraint::None,
            "c4_free" => HostConstraint::C4Free,
            "c4_star_free" => HostConstraint::C4StarFree,
            other => return Err(LabError::BadKind(other.to_string())),
        })
    }
}

pub const RANDOM_DIGRAPH_RETRIES: u64 = 64;

struct ArcSet {
    out: Vec<FixedBitSet>,
    und: Vec<FixedBitSet>,
    arcs: Vec<(usize, usize)>,
}

impl ArcSet {
    fn new(n: usize) -> Self {
        ArcSet { out: vec![FixedBitSet::with_capacity(n); n], und: vec![FixedBitSet::with_capacity(n); n], arcs: Vec::new() }
    }

    fn add(&mut self, u: usize, v: usize) {
        self.out[u].insert(v);
        self.und[u].insert(v);
        self.und[v].insert(u);
        self.arcs.push((u, v));
    }

    fn remove_last(&mut self) {
        let (u, v) = self.arcs.pop().unwrap();
        self.out[u].set(v, false);
        if !self.out[v].contains(u) {
            self.und[u].set(v, false);
            self.und[v].set(u, false);
        }
    }

    /// Underlying 4-cycles through the edge {u, v}, as cyclic tuples.
    fn cycles_through(&self, u: usize, v: usize) -> Vec<[usize; 4]> {
        let mut out = Vec::new();
        for x in self.und[v].ones().filter(|&x| x != u) {
            for y in self.und[x].intersection(&self.und[u]).filter(|&y| y != v && y != x) {
                out.push([u, v, x, y]);
            }
        }
        out
    }

    fn allows(&mut self, u: usize, v: usize, constraint: HostConstraint) -> bool {
        match constraint {
            HostConstraint::None => true,
            HostConstraint::C4Free => self.und[u].contains(v) || self.cycles_through(u, v).is_empty(),
            HostConstraint::C4StarFree => {
                self.add(u, v);
                let out = &self.out;
                let ok = self.cycles_through(u, v).into_iter().all(|cyc| {
                    let real = realizations_by(|a, b| out[a].contains(b), cyc);
                    FourCycleType::ALL[1..].iter().all(|&t| real[t.index()].is_none())
                });
                self.remove_last();
                ok
            }
        }
    }
}

/// A seeded random digraph with `n` vertices and `m` arcs satisfying the
/// constraint. Arcs are offered in random order and kept when the constraint
/// survives; a fresh stream is tried when the offer list runs dry.
pub fn gen_random_digraph(n: usize, m: usize, constraint: HostConstraint, seed: u64) -> Result<Digraph, LabError> {
    let all: Vec<(usize, usize)> = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect();
    if m > all.len() {
        return Err(LabError::InfeasibleAfterRetries { n, m, retries: 0 });
    }
    for attempt in 0..RANDOM_DIGRAPH_RETRIES {
        let mut rng = stream(seed, attempt);
        let mut offers = all.clone();
        offers.shuffle(&mut rng);
        let mut set = ArcSet::new(n);
        for (u, v) in offers {
            if set.arcs.len() == m {
                break;
            }
            if set.allows(u, v, constraint) {
                set.add(u, v);
            }
        }
        if set.arcs.len() == m {
            let d = Digraph::new(n, set.arcs).expect("arcs are distinct");
            let ok = match constraint {
                HostConstraint::None => true,
                HostConstraint::C4Free => cycles::is_c4_free(&d),
                HostConstraint::C4StarFree => cycles::is_c4_star_free(&d),
            };
            assert!(ok, "generator produced a digraph violating {constraint:?}");
            return Ok(d);
        }
    }
    Err(LabError::InfeasibleAfterRetries { n, m, retries: RANDOM_DIGRAPH_RETRIES })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::{cycle_types_present, is_c4_free, is_c4_star_free};

    #[test]
    fn two_clique_sizes() {
        let d = gen_two_clique_host(10).unwrap();
        assert_eq!(d.n(), 11);
        assert_eq!((d.out_degree(0), d.in_degree(0)), (10, 10));
        assert_eq!(d.reverse(), d);
        assert!(matches!(gen_two_clique_host(3), Err(LabError::KTooSmall { .. })));
        // cliques of ⌊k/2⌋-1 vertices: 9 vertices for k = 10, universal degree 8
        let literal = two_clique_host_with_clique_size(10 / 2 - 1);
        assert_eq!(literal.n(), 9);
        assert_eq!(literal.out_degree(0), 8);
        assert_eq!(literal.degree_profile().semidegree, 4);
    }

    #[test]
    fn two_clique_has_every_cycle_type() {
        for k in [6, 8, 10, 12] {
            let d = gen_two_clique_host(k).unwrap();
            assert!(!is_c4_free(&d));
            assert_eq!(cycle_types_present(&d), FourCycleType::ALL.to_vec());
        }
    }

    #[test]
    fn blowup_shape() {
        let d = gen_blowup_cycle(3, 2).unwrap();
        assert_eq!((d.n(), d.arc_count()), (6, 12));
        let p = d.degree_profile();
        assert_eq!((p.min_out, p.max_out, p.min_in, p.max_in), (2, 2, 2, 2));
        assert!(gen_blowup_cycle(2, 2).is_err());
        assert!(gen_blowup_cycle(3, 0).is_err());
    }

    #[test]
    fn difference_sets_are_perfect() {
        for q in 2..=4 {
            let set = difference_set(q).unwrap();
            let n = q * q + q + 1;
            let mut seen = vec![0; n];
            for &a in set {
                for &b in set {
                    if a != b {
                        seen[(a + n - b) % n] += 1;
                    }
                }
            }
            assert_eq!(seen[0], 0);
            assert!(seen[1..].iter().all(|&c| c == 1), "q={q}");
        }
        assert_eq!(difference_set(5), Err(LabError::UnsupportedOrder(5)));
    }

    #[test]
    fn girth6_hosts() {
        for (q, n) in [(2, 14), (3, 26), (4, 42)] {
            let d = gen_girth6_digon_host(q).unwrap();
            assert_eq!(d.n(), n);
            assert_eq!(d.arc_count(), n * (q + 1));
            let p = d.degree_profile();
            assert_eq!((p.semidegree, p.max_pm, p.max_out), (q + 1, q + 1, q + 1));
            assert_eq!(d.underlying_girth(), Some(6));
            assert!(is_c4_free(&d));
        }
    }

    #[test]
    fn oriented_girth6_hosts() {
        let d = gen_oriented_girth6_host(4, true).unwrap();
        assert!(d.is_oriented() && is_c4_free(&d));
        let p = d.degree_profile();
        assert_eq!((p.min_out, p.max_out), (2, 5));
        assert_eq!(d.out_degree(0), 5);
        let plain = gen_oriented_girth6_host(3, false).unwrap();
        let p = plain.degree_profile();
        assert_eq!((p.min_out, p.max_out, p.min_in, p.max_in), (2, 2, 2, 2));
    }

    #[test]
    fn random_trees_have_their_shape() {
        for seed in 0..20 {
            assert!(gen_random_tree(7, TreeKind::Antidirected, seed).unwrap().is_antidirected());
            let arb = gen_random_tree(7, TreeKind::OutArborescence, seed).unwrap();
            let root = arb.out_arborescence_root().unwrap();
            assert_eq!(arb.degree(root), arb.max_total_degree());
            assert_eq!(gen_random_tree(7, TreeKind::Path, seed).unwrap().max_total_degree(), 2);
            assert_eq!(gen_random_tree(7, TreeKind::Any, seed).unwrap().k(), 7);
        }
        let sp = gen_random_tree(6, TreeKind::Spider, 3).unwrap();
        assert_eq!(sp.degree(0), 3);
        assert_eq!(sp.diameter(), 4);
        assert_eq!(balanced_spider_legs(10), vec![4, 3, 3]);
        assert_eq!(balanced_spider_legs(8), vec![3, 3, 2]);
        assert!(matches!("tree".parse::<TreeKind>(), Err(LabError::BadKind(_))));
        assert_eq!(gen_random_tree(9, TreeKind::Any, 5).unwrap(), gen_random_tree(9, TreeKind::Any, 5).unwrap());
    }

    #[test]
    fn random_digraphs_respect_constraints() {
        for seed in 0..10 {
            let d = gen_random_digraph(10, 14, HostConstraint::C4Free, seed).unwrap();
            assert_eq!(d.arc_count(), 14);
            assert!(is_c4_free(&d));
            let e = gen_random_digraph(10, 25, HostConstraint::C4StarFree, seed).unwrap();
            assert!(is_c4_star_free(&e));
            assert_eq!(e, gen_random_digraph(10, 25, HostConstraint::C4StarFree, seed).unwrap());
        }
        assert_eq!(gen_random_digraph(5, 20, HostConstraint::None, 1).unwrap(), Digraph::complete(5));
        assert!(matches!(
            gen_random_digraph(5, 21, HostConstraint::None, 1),
            Err(LabError::InfeasibleAfterRetries { .. })
        ));
        assert!(matches!(
            gen_random_digraph(4, 12, HostConstraint::C4Free, 1),
            Err(LabError::InfeasibleAfterRetries { .. })
        ));
    }
}

//! Benchmark fixtures shared by the criterion targets.

use oritree::lab::{gen_girth6_digon_host, gen_random_digraph, gen_random_tree, HostConstraint, TreeKind};
use oritree::{Digraph, OrientedTree};

/// Random hosts of increasing order with about `2n` arcs.
pub fn random_hosts(constraint: HostConstraint) -> Vec<Digraph> {
    [16, 32, 64, 128].iter().map(|&n| gen_random_digraph(n, 2 * n, constraint, n as u64).unwrap()).collect()
}

/// Trees with `k` arcs paired with the incidence host of order `q`.
pub fn theorem_instances(q: usize, k: usize, count: u64) -> (Digraph, Vec<OrientedTree>) {
    let host = gen_girth6_digon_host(q).unwrap();
    let trees = (0..count).map(|s| gen_random_tree(k, TreeKind::Any, s).unwrap()).collect();
    (host, trees)
}

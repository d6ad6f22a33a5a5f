//! Exhaustive embedding search, used as ground truth.
//!
//! Tree vertices are placed in breadth-first order from a vertex of maximum
//! total degree. A host vertex is a candidate for a tree vertex only if it
//! dominates it in both outdegree and indegree and sits on the correct side of
//! the image of the tree parent.

use serde::{Deserialize, Serialize};

use crate::digraph::Digraph;
use crate::embed::validate_embedding;
use crate::tree::OrientedTree;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "decision", content = "embedding", rename_all = "snake_case")]
pub enum Decision {
    /// An embedding, indexed by tree vertex.
    Yes(Vec<usize>),
    /// The whole search space was covered without finding one.
    No,
    /// The budget ran out first.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    #[serde(flatten)]
    pub decision: Decision,
    pub nodes_expanded: u64,
    pub budget: u64,
}

impl OracleResult {
    pub fn is_yes(&self) -> bool {
        matches!(self.decision, Decision::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        self.decision == Decision::No
    }
}

struct Search<'a> {
    tree: &'a OrientedTree,
    host: &'a Digraph,
    /// (vertex, parent) in placement order; the first entry has no parent.
    order: Vec<(usize, usize)>,
    image: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
    budget: u64,
}

enum Outcome {
    Found,
    Exhausted,
    OutOfBudget,
}

impl Search<'_> {
    fn dominates(&self, h: usize, x: usize) -> bool {
        self.host.out_degree(h) >= self.tree.out_degree(x) && self.host.in_degree(h) >= self.tree.in_degree(x)
    }

    fn run(&mut self, depth: usize) -> Outcome {
        if depth == self.order.len() {
            return Outcome::Found;
        }
        let (x, p) = self.order[depth];
        let candidates: Vec<usize> = if depth == 0 {
            (0..self.host.n()).collect()
        } else {
            self.host.neighbours(self.image[p], self.tree.side(p, x)).to_vec()
        };
        for h in candidates {
            if self.used[h] || !self.dominates(h, x) {
                continue;
            }
            if self.nodes >= self.budget {
                return Outcome::OutOfBudget;
            }
            self.nodes += 1;
            self.image[x] = h;
            self.used[h] = true;
            match self.run(depth + 1) {
                Outcome::Exhausted => {}
                other => return other,
            }
            self.used[h] = false;
        }
        Outcome::Exhausted
    }
}

/// Decides whether `tree` embeds in `host`, expanding at most `budget` nodes.
pub fn oracle_embed(tree: &OrientedTree, host: &Digraph, budget: u64) -> OracleResult {
    let finish = |decision, nodes| OracleResult { decision, nodes_expanded: nodes, budget };
    if tree.n() > host.n() {
        return finish(Decision::No, 0);
    }
    let best = tree.max_total_degree();
    let root = (0..tree.n()).find(|&x| tree.degree(x) == best).unwrap();
    let mut order = vec![(root, usize::MAX)];
    let mut seen = vec![false; tree.n()];
    seen[root] = true;
    let mut i = 0;
    while i < order.len() {
        let x = order[i].0;
        for &y in tree.neighbours(x) {
            if !seen[y] {
                seen[y] = true;
                order.push((y, x));
            }
        }
        i += 1;
    }
    let mut search = Search {
        tree,
        host,
        order,
        image: vec![usize::MAX; tree.n()],
        used: vec![false; host.n()],
        nodes: 0,
        budget,
    };
    match search.run(0) {
        Outcome::Found => {
            debug_assert!(validate_embedding(tree, host, &search.image).is_ok());
            finish(Decision::Yes(search.image), search.nodes)
        }
        Outcome::Exhausted => finish(Decision::No, search.nodes),
        Outcome::OutOfBudget => finish(Decision::Unknown, search.nodes),
    }
}

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::digraph::Digraph;
use crate::tree::OrientedTree;

/// First reason a vertex map fails to be an embedding.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    #[error("map has {found} entries, tree has {expected} vertices")]
    WrongLength { expected: usize, found: usize },
    #[error("tree vertex {vertex} mapped to {image}, outside the host")]
    OutOfRange { vertex: usize, image: usize },
    #[error("tree vertices {first} and {second} share host vertex {image}")]
    Injectivity { first: usize, second: usize, image: usize },
    #[error("tree arc ({tail}, {head}) mapped to missing host arc ({image_tail}, {image_head})")]
    ArcDirection { tail: usize, head: usize, image_tail: usize, image_head: usize },
}

/// Checks that `f` (indexed by tree vertex) is injective and arc-preserving.
pub fn validate_embedding(tree: &OrientedTree, host: &Digraph, f: &[usize]) -> Result<(), Violation> {
    if f.len() != tree.n() {
        return Err(Violation::WrongLength { expected: tree.n(), found: f.len() });
    }
    let mut seen = vec![usize::MAX; host.n()];
    for (x, &h) in f.iter().enumerate() {
        if h >= host.n() {
            return Err(Violation::OutOfRange { vertex: x, image: h });
        }
        if seen[h] != usize::MAX {
            return Err(Violation::Injectivity { first: seen[h], second: x, image: h });
        }
        seen[h] = x;
    }
    for &(x, y) in tree.arcs() {
        if !host.has_arc(f[x], f[y]) {
            return Err(Violation::ArcDirection { tail: x, head: y, image_tail: f[x], image_head: f[y] });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_and_rejects() {
        let t = OrientedTree::out_star(2).unwrap();
        let d = Digraph::new(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(validate_embedding(&t, &d, &[0, 1, 2]), Ok(()));
        assert_eq!(
            validate_embedding(&t, &d, &[0, 1, 1]),
            Err(Violation::Injectivity { first: 1, second: 2, image: 1 })
        );
        // (0,1) -> (1,2) is fine, (0,2) -> (1,0) is not
        assert_eq!(
            validate_embedding(&t, &d, &[1, 2, 0]),
            Err(Violation::ArcDirection { tail: 0, head: 2, image_tail: 1, image_head: 0 })
        );
        assert!(matches!(validate_embedding(&t, &d, &[0, 1]), Err(Violation::WrongLength { .. })));
        assert!(matches!(validate_embedding(&t, &d, &[0, 1, 7]), Err(Violation::OutOfRange { .. })));
    }
}

//! All oriented trees with `k` arcs up to isomorphism.
//!
//! Trees are grown one leaf at a time and deduplicated by a canonical string:
//! the AHU encoding with arc-direction labels, rooted at a centre and
//! minimized over the (one or two) centres.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::LabError;
use crate::tree::OrientedTree;

pub const DEFAULT_BOUND: usize = 8;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub canonical: String,
    pub arcs: Vec<(usize, usize)>,
}

/// Pairwise non-isomorphic trees with `k` arcs, sorted by canonical form.
#[derive(Debug, Clone)]
pub struct TreeCatalog {
    pub k: usize,
    pub trees: Vec<OrientedTree>,
    pub canonical: Vec<String>,
}

impl TreeCatalog {
    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn entries(&self) -> Vec<CatalogEntry> {
        self.trees
            .iter()
            .zip(&self.canonical)
            .map(|(t, c)| CatalogEntry { canonical: c.clone(), arcs: t.arcs().to_vec() })
            .collect()
    }
}

fn encode_rooted(t: &OrientedTree, x: usize, parent: usize) -> String {
    let mut parts: Vec<String> = t
        .neighbours(x)
        .iter()
        .filter(|&&y| y != parent)
        .map(|&y| {
            let label = if t.out_neighbours(x).binary_search(&y).is_ok() { 'o' } else { 'i' };
            format!("{label}{}", encode_rooted(t, y, x))
        })
        .collect();
    parts.sort_unstable();
    format!("({})", parts.concat())
}

/// Vertices of minimum eccentricity.
pub fn centres(t: &OrientedTree) -> Vec<usize> {
    let ecc: Vec<usize> = (0..t.n()).map(|x| *t.distances_from(x).iter().max().unwrap()).collect();
    let best = *ecc.iter().min().unwrap();
    (0..t.n()).filter(|&x| ecc[x] == best).collect()
}

/// Isomorphism-invariant string for an oriented tree.
pub fn canonical_form(t: &OrientedTree) -> String {
    centres(t)
        .into_iter()
        .map(|c| encode_rooted(t, c, usize::MAX))
        .min()
        .unwrap()
}

pub fn enumerate_oriented_trees(k: usize) -> Result<TreeCatalog, LabError> {
    enumerate_oriented_trees_bounded(k, DEFAULT_BOUND)
}

pub fn enumerate_oriented_trees_bounded(k: usize, bound: usize) -> Result<TreeCatalog, LabError> {
    if k == 0 || k > bound {
        return Err(LabError::BoundExceeded { k, bound });
    }
    let mut level: BTreeMap<String, OrientedTree> = BTreeMap::new();
    let seed = OrientedTree::new(&[(0, 1)]).unwrap();
    level.insert(canonical_form(&seed), seed);
    for _ in 1..k {
        let mut next = BTreeMap::new();
        for t in level.values() {
            let fresh = t.n();
            for x in 0..t.n() {
                for arc in [(x, fresh), (fresh, x)] {
                    let mut arcs = t.arcs().to_vec();
                    arcs.push(arc);
                    let grown = OrientedTree::new(&arcs).unwrap();
                    next.entry(canonical_form(&grown)).or_insert(grown);
                }
            }
        }
        level = next;
    }
    let (canonical, trees) = level.into_iter().unzip();
    Ok(TreeCatalog { k, trees, canonical })
}

/// Independent enumeration for cross-checking: every labelled tree (Prüfer
/// codes) in every orientation, deduplicated by explicit isomorphism tests.
pub mod reference {
    use super::*;

    pub fn prufer_decode(code: &[usize], n: usize) -> Vec<(usize, usize)> {
        let mut degree = vec![1; n];
        for &c in code {
            degree[c] += 1;
        }
        let mut edges = Vec::with_capacity(n - 1);
        for &c in code {
            let leaf = (0..n).find(|&x| degree[x] == 1).unwrap();
            edges.push((leaf, c));
            degree[leaf] -= 1;
            degree[c] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&x| degree[x] == 1).collect();
        edges.push((rest[0], rest[1]));
        edges
    }

    fn signature(t: &OrientedTree) -> Vec<(usize, usize)> {
        let mut s: Vec<_> = (0..t.n()).map(|x| (t.out_degree(x), t.in_degree(x))).collect();
        s.sort_unstable();
        s
    }

    /// Backtracking search for an arc-preserving bijection.
    pub fn isomorphic(a: &OrientedTree, b: &OrientedTree) -> bool {
        if a.n() != b.n() || signature(a) != signature(b) {
            return false;
        }
        fn extend(a: &OrientedTree, b: &OrientedTree, map: &mut Vec<usize>, used: &mut Vec<bool>, x: usize) -> bool {
            if x == a.n() {
                return true;
            }
            for y in 0..b.n() {
                if used[y] || a.out_degree(x) != b.out_degree(y) || a.in_degree(x) != b.in_degree(y) {
                    continue;
                }
                let consistent = (0..x).all(|z| {
                    let az = (a.out_neighbours(z).contains(&x), a.in_neighbours(z).contains(&x));
                    let bz = (b.out_neighbours(map[z]).contains(&y), b.in_neighbours(map[z]).contains(&y));
                    az == bz
                });
                if consistent {
                    map[x] = y;
                    used[y] = true;
                    if extend(a, b, map, used, x + 1) {
                        return true;
                    }
                    used[y] = false;
                }
            }
            false
        }
        extend(a, b, &mut vec![0; a.n()], &mut vec![false; b.n()], 0)
    }

    /// Representatives of all isomorphism classes of oriented trees with `k`
    /// arcs.
    pub fn brute_force_classes(k: usize) -> Vec<OrientedTree> {
        let n = k + 1;
        let mut reps: Vec<OrientedTree> = Vec::new();
        let codes: Vec<Vec<usize>> = if n == 2 {
            vec![vec![]]
        } else {
            (0..n.pow((n - 2) as u32))
                .map(|mut c| {
                    (0..n - 2)
                        .map(|_| {
                            let d = c % n;
                            c /= n;
                            d
                        })
                        .collect()
                })
                .collect()
        };
        for code in codes {
            let edges = if n == 2 { vec![(0, 1)] } else { prufer_decode(&code, n) };
            for mask in 0u32..(1 << k) {
                let arcs: Vec<_> = edges
                    .iter()
                    .enumerate()
                    .map(|(i, &(a, b))| if mask >> i & 1 == 1 { (b, a) } else { (a, b) })
                    .collect();
                let t = OrientedTree::with_vertex_count(n, &arcs).unwrap();
                if !reps.iter().any(|r| isomorphic(r, &t)) {
                    reps.push(t);
                }
            }
        }
        reps
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_oriented_trees(1).unwrap().len(), 1);
        assert_eq!(enumerate_oriented_trees(2).unwrap().len(), 3);
    }

    #[test]
    fn canonical_form_ignores_labels() {
        let a = OrientedTree::new(&[(0, 1), (1, 2), (3, 1)]).unwrap();
        let b = OrientedTree::new(&[(2, 0), (1, 0), (0, 3)]).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
        let c = OrientedTree::out_star(3).unwrap();
        assert_ne!(canonical_form(&a), canonical_form(&c));
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(enumerate_oriented_trees(9), Err(LabError::BoundExceeded { k: 9, bound: 8 })));
        assert!(enumerate_oriented_trees(0).is_err());
    }

    #[test]
    fn prufer_round() {
        // code [3, 3] on 4 vertices is the star at 3
        let mut e = reference::prufer_decode(&[3, 3], 4);
        e.sort_unstable();
        assert_eq!(e, vec![(0, 3), (1, 3), (2, 3)]);
    }
}

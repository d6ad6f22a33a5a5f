use serde::{Deserialize, Serialize};

use super::{EmbedError, EmbedMode};
use crate::cycles::{find_forbidden_cycle, CycleMode, CycleWitness};
use crate::digraph::{DegreeProfile, Digraph};
use crate::tree::OrientedTree;

/// Evaluation of one mode's hypotheses on a (tree, host) pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub mode: EmbedMode,
    pub k: usize,
    pub host_oriented: bool,
    pub profile: DegreeProfile,
    pub tree_max_total_degree: usize,
    pub tree_max_out_degree: usize,
    pub degree_condition: bool,
    /// A host vertex whose degree breaks the degree condition.
    pub degree_witness: Option<usize>,
    pub max_degree_condition: bool,
    pub cycle_condition: bool,
    pub cycle_witness: Option<CycleWitness>,
    pub all_hold: bool,
}

/// Checks that the tree has the shape the mode is about.
pub fn check_mode(tree: &OrientedTree, mode: EmbedMode) -> Result<(), EmbedError> {
    match mode {
        EmbedMode::General => Ok(()),
        EmbedMode::Antidirected if tree.is_antidirected() => Ok(()),
        EmbedMode::Antidirected => Err(EmbedError::ModeMismatch { mode, reason: "tree is not antidirected".into() }),
        EmbedMode::Arborescence => match tree.out_arborescence_root() {
            Some(r) if tree.degree(r) == tree.max_total_degree() => Ok(()),
            Some(_) => Err(EmbedError::ModeMismatch {
                mode,
                reason: "root is not a vertex of maximum total degree".into(),
            }),
            None => Err(EmbedError::ModeMismatch { mode, reason: "tree is not an out-arborescence".into() }),
        },
    }
}

/// Exact evaluation of the mode's conditions. Half-integral bounds `x ≥ k/2`
/// are compared as `2x ≥ k`.
pub fn check_hypotheses(tree: &OrientedTree, host: &Digraph, mode: EmbedMode) -> Result<HypothesisReport, EmbedError> {
    check_mode(tree, mode)?;
    let k = tree.k();
    let p = host.degree_profile();
    let oriented = host.is_oriented();
    let n = host.n();
    let low = |ok: &dyn Fn(usize) -> bool| (0..n).find(|&v| !ok(v));

    let (degree_condition, degree_witness) = match mode {
        EmbedMode::General => (2 * p.semidegree >= k, low(&|v| 2 * host.out_degree(v).min(host.in_degree(v)) >= k)),
        EmbedMode::Antidirected => {
            let fine = |d: usize| d == 0 || 2 * d >= k;
            let holds = host.arc_count() > 0 && 2 * p.pseudo_semidegree >= k;
            (holds, low(&|v| fine(host.out_degree(v)) && fine(host.in_degree(v))))
        }
        EmbedMode::Arborescence => {
            let plain = 2 * p.min_out >= k;
            let oriented_variant = oriented && 2 * p.min_out + 2 >= k && 2 * p.max_out >= k;
            let need = if oriented_variant { k.saturating_sub(2) } else { k };
            (plain || oriented_variant, low(&|v| 2 * host.out_degree(v) >= need))
        }
    };
    let degree_witness = if degree_condition { None } else { degree_witness };

    let max_degree_condition = match mode {
        EmbedMode::General => {
            // a star only needs Δ± ≥ k
            p.max_pm > tree.max_total_degree() || (tree.max_total_degree() == k && p.max_pm >= k)
        }
        EmbedMode::Antidirected => p.max_pm > tree.max_total_degree(),
        EmbedMode::Arborescence => p.max_out > tree.max_out_degree(),
    };

    let cycle_mode = match mode {
        EmbedMode::Antidirected => CycleMode::NonDirectedC4,
        _ => CycleMode::AllC4,
    };
    let cycle_witness = find_forbidden_cycle(host, cycle_mode);
    let cycle_condition = cycle_witness.is_none();

    Ok(HypothesisReport {
        mode,
        k,
        host_oriented: oriented,
        profile: p,
        tree_max_total_degree: tree.max_total_degree(),
        tree_max_out_degree: tree.max_out_degree(),
        degree_condition,
        degree_witness,
        max_degree_condition,
        cycle_condition,
        cycle_witness,
        all_hold: degree_condition && max_degree_condition && cycle_condition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::FourCycleType;
    use crate::lab::{gen_blowup_cycle, gen_girth6_digon_host};

    #[test]
    fn heawood_and_a_six_arc_path() {
        let t = OrientedTree::path(&[true, false, false, true, true, false]).unwrap();
        let r = check_hypotheses(&t, &gen_girth6_digon_host(2).unwrap(), EmbedMode::General).unwrap();
        assert!(r.degree_condition && r.max_degree_condition && r.cycle_condition && r.all_hold);
    }

    #[test]
    fn blowup_fails_the_cycle_condition() {
        let t = OrientedTree::alternating_path(4).unwrap();
        let r = check_hypotheses(&t, &gen_blowup_cycle(3, 2).unwrap(), EmbedMode::Antidirected).unwrap();
        assert!(!r.cycle_condition && !r.all_hold);
        assert_ne!(r.cycle_witness.unwrap().kind, FourCycleType::Directed);
    }

    #[test]
    fn directed_c4_is_too_sparse_for_a_star() {
        let c4 = Digraph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let r = check_hypotheses(&OrientedTree::out_star(4).unwrap(), &c4, EmbedMode::General).unwrap();
        assert!(!r.degree_condition);
        assert_eq!(r.degree_witness, Some(0));
        assert!(!r.cycle_condition);
    }

    #[test]
    fn mode_mismatch() {
        let d = Digraph::complete(4);
        let p = OrientedTree::directed_path(2).unwrap();
        assert!(matches!(check_hypotheses(&p, &d, EmbedMode::Antidirected), Err(EmbedError::ModeMismatch { .. })));
        assert!(check_hypotheses(&p.reverse(), &d, EmbedMode::Arborescence).is_err());
        // a directed path is an arborescence but its root is a leaf
        assert!(check_hypotheses(&p, &d, EmbedMode::Arborescence).is_err());
        assert!(check_hypotheses(&OrientedTree::out_star(3).unwrap(), &d, EmbedMode::Arborescence).is_ok());
    }

    #[test]
    fn oriented_arborescence_variant() {
        // oriented hub host: δ⁺ = 2, Δ⁺ = 5; fine for k = 6 only via the oriented clause
        let d = crate::lab::gen_oriented_girth6_host(4, true).unwrap();
        let t = OrientedTree::spider(&[2, 2, 2]).unwrap();
        let r = check_hypotheses(&t, &d, EmbedMode::Arborescence).unwrap();
        assert!(r.degree_condition && r.max_degree_condition && r.all_hold);
        let big = OrientedTree::spider(&[3, 3, 2]).unwrap();
        assert!(!check_hypotheses(&big, &d, EmbedMode::Arborescence).unwrap().degree_condition);
    }
}

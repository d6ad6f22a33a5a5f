//! Searches for counterexample candidates to the open problems: hosts that
//! avoid a chosen family of small subdigraphs and meet the degree bounds, but
//! miss some tree according to the oracle.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::oracle::{oracle_embed, Decision};
use super::rng::stream;
use super::LabError;
use crate::cycles::{four_cycle_census, FourCycleType};
use crate::digraph::{Digraph, Side};
use crate::tree::OrientedTree;

/// Which hosts are sampled and which degree bounds they must meet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "problem", rename_all = "snake_case")]
pub enum ExploreProblem {
    /// No 4-cycle of the listed classes; `2δ⁰ ≥ k`, `Δ± ≥ k`.
    ForbiddenFamily { forbid: Vec<FourCycleType> },
    /// No orientation of `K_{2,s}`; `2δ⁰ ≥ k`, `Δ± ≥ k`.
    K2s { s: usize },
    /// Oriented, underlying girth at least `2ℓ+1`; `ℓδ⁰ ≥ k`, `δ⁰ ≥ Δ^tot(T)`.
    Girth { ell: usize },
}

impl ExploreProblem {
    pub fn name(&self) -> &'static str {
        match self {
            ExploreProblem::ForbiddenFamily { .. } => "forbidden_family",
            ExploreProblem::K2s { .. } => "k2s",
            ExploreProblem::Girth { .. } => "girth",
        }
    }

    fn oriented(&self) -> bool {
        matches!(self, ExploreProblem::Girth { .. })
    }

    /// Smallest semidegree meeting the bound for `k`-arc trees.
    pub fn min_semidegree(&self, k: usize) -> usize {
        match self {
            ExploreProblem::Girth { ell } => k.div_ceil(*ell),
            _ => k.div_ceil(2),
        }
    }

    /// Whether `d` avoids the forbidden configurations.
    pub fn admits(&self, d: &Digraph) -> bool {
        match self {
            ExploreProblem::ForbiddenFamily { forbid } => {
                let census = four_cycle_census(d);
                FourCycleType::ALL.iter().zip(census).all(|(t, c)| c == 0 || !forbid.contains(t))
            }
            ExploreProblem::K2s { s } => (0..d.n()).all(|u| {
                (u + 1..d.n()).all(|v| d.underlying_bits(u).intersection(d.underlying_bits(v)).count() < *s)
            }),
            ExploreProblem::Girth { ell } => {
                d.is_oriented() && d.underlying_girth().is_none_or(|g| g > 2 * ell)
            }
        }
    }

    /// The semidegree bound and the maximum-degree bound for this pair.
    pub fn degree_bounds(&self, d: &Digraph, t: &OrientedTree) -> (bool, bool) {
        let p = d.degree_profile();
        let k = t.k();
        match self {
            ExploreProblem::Girth { ell } => (ell * p.semidegree >= k, p.semidegree >= t.max_total_degree()),
            _ => (2 * p.semidegree >= k, p.max_pm >= k),
        }
    }
}

impl fmt::Display for ExploreProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExploreProblem::ForbiddenFamily { forbid } => {
                let names: Vec<&str> = forbid.iter().map(|t| t.name()).collect();
                write!(f, "forbidden_family[{}]", names.join(","))
            }
            ExploreProblem::K2s { s } => write!(f, "k2s[s={s}]"),
            ExploreProblem::Girth { ell } => write!(f, "girth[>{}]", 2 * ell),
        }
    }
}

/// Where hosts come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HostSource {
    /// Degree-driven random growth under the problem's constraint.
    Random,
    /// Blown-up directed cycles with classes of size `⌈k/2⌉`.
    Blowup,
    /// Oriented point-line incidence graphs of the planes of order 2 to 4.
    Incidence,
}

impl HostSource {
    pub fn name(self) -> &'static str {
        match self {
            HostSource::Random => "random",
            HostSource::Blowup => "blowup",
            HostSource::Incidence => "incidence",
        }
    }
}

impl FromStr for HostSource {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self, LabError> {
        match s {
            "random" => Ok(HostSource::Random),
            "blowup" => Ok(HostSource::Blowup),
            "incidence" => Ok(HostSource::Incidence),
            other => Err(LabError::BadKind(other.to_string())),
        }
    }
}

/// Grows a host on `n` vertices by adding random arcs at vertices still
/// below the semidegree target, keeping only arcs the problem admits; then
/// tries to push one vertex to out- and indegree `hub`. `None` if the target
/// is not reached.
pub fn sample_host(problem: &ExploreProblem, n: usize, target: usize, hub: usize, seed: u64) -> Option<Digraph> {
    let mut rng = stream(seed, 0);
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    let mut has = vec![vec![false; n]; n];
    let mut try_add = |u: usize, v: usize, arcs: &mut Vec<(usize, usize)>| -> bool {
        if u == v || has[u][v] || (problem.oriented() && has[v][u]) {
            return false;
        }
        arcs.push((u, v));
        let d = Digraph::new(n, arcs.iter().copied()).unwrap();
        if problem.admits(&d) {
            has[u][v] = true;
            true
        } else {
            arcs.pop();
            false
        }
    };
    let mut stalls = 0;
    while stalls < 8 * n {
        let d = Digraph::new(n, arcs.iter().copied()).unwrap();
        let deficient: Vec<(usize, Side)> = (0..n)
            .flat_map(|v| [(v, Side::Out), (v, Side::In)])
            .filter(|&(v, s)| d.degree(v, s) < target)
            .collect();
        let Some(&(v, side)) = deficient.choose(&mut rng) else { break };
        let w = rng.gen_range(0..n);
        let (a, b) = if side == Side::Out { (v, w) } else { (w, v) };
        if try_add(a, b, &mut arcs) {
            stalls = 0;
        } else {
            stalls += 1;
        }
    }
    let mut others: Vec<usize> = (1..n).collect();
    others.shuffle(&mut rng);
    for &w in &others {
        let d = Digraph::new(n, arcs.iter().copied()).unwrap();
        if d.out_degree(0) < hub {
            try_add(0, w, &mut arcs);
        }
    }
    others.shuffle(&mut rng);
    for &w in &others {
        let d = Digraph::new(n, arcs.iter().copied()).unwrap();
        if d.in_degree(0) < hub {
            try_add(w, 0, &mut arcs);
        }
    }
    let d = Digraph::new(n, arcs).unwrap();
    (d.degree_profile().semidegree >= target).then_some(d)
}

/// A host/tree pair meeting the semidegree bound that the oracle rejects.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub trial: u64,
    pub host_seed: u64,
    pub tree: Vec<(usize, usize)>,
    pub host_n: usize,
    pub host: Vec<(usize, usize)>,
    /// Also meets the maximum-degree bound, so it answers the problem.
    pub counterexample: bool,
    pub oracle_nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub host_found: bool,
    pub pairs_tested: usize,
    pub oracle_unknown: usize,
    pub findings: Vec<Finding>,
}

/// One exploration trial: get a host, then oracle-test every tree against it.
pub fn explore_trial(
    problem: &ExploreProblem,
    source: HostSource,
    n: usize,
    trees: &[OrientedTree],
    seed: u64,
    trial: u64,
    budget: u64,
) -> TrialOutcome {
    let Some(k) = trees.first().map(|t| t.k()) else { return TrialOutcome::default() };
    let host_seed = stream(seed, trial).gen::<u64>();
    let host = match source {
        HostSource::Random => sample_host(problem, n, problem.min_semidegree(k), k, host_seed),
        HostSource::Blowup => super::gen_blowup_cycle(3 + (trial % 4) as usize, k.div_ceil(2))
            .ok()
            .filter(|d| problem.admits(d)),
        HostSource::Incidence => super::gen_oriented_girth6_host(2 + (trial % 3) as usize, trial % 2 == 1)
            .ok()
            .filter(|d| problem.admits(d)),
    };
    let Some(host) = host else { return TrialOutcome::default() };
    let mut out = TrialOutcome { host_found: true, ..Default::default() };
    for t in trees {
        let (semi, max_deg) = problem.degree_bounds(&host, t);
        if !semi {
            continue;
        }
        out.pairs_tested += 1;
        let r = oracle_embed(t, &host, budget);
        match r.decision {
            Decision::No => out.findings.push(Finding {
                trial,
                host_seed,
                tree: t.arcs().to_vec(),
                host_n: host.n(),
                host: host.arcs().to_vec(),
                counterexample: max_deg,
                oracle_nodes: r.nodes_expanded,
            }),
            Decision::Unknown => out.oracle_unknown += 1,
            Decision::Yes(_) => {}
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::{enumerate_oriented_trees, gen_blowup_cycle, gen_two_clique_host};

    #[test]
    fn sampled_hosts_meet_their_constraints() {
        let problems = [
            ExploreProblem::ForbiddenFamily { forbid: vec![FourCycleType::Directed] },
            ExploreProblem::ForbiddenFamily { forbid: FourCycleType::ALL.to_vec() },
            ExploreProblem::K2s { s: 3 },
            ExploreProblem::Girth { ell: 2 },
        ];
        for p in &problems {
            let mut found = 0;
            // girth five with semidegree two needs at least 19 vertices
            let target = if p.oriented() { 1 } else { 2 };
            for seed in 0..10 {
                if let Some(d) = sample_host(p, 10, target, 4, seed) {
                    assert!(p.admits(&d), "{p}");
                    assert!(d.degree_profile().semidegree >= target);
                    found += 1;
                }
            }
            assert!(found > 0, "{p}");
        }
    }

    #[test]
    fn admits() {
        let blow = gen_blowup_cycle(3, 2).unwrap();
        assert!(ExploreProblem::ForbiddenFamily { forbid: vec![FourCycleType::Directed] }.admits(&blow));
        assert!(!ExploreProblem::ForbiddenFamily { forbid: vec![FourCycleType::Alternating] }.admits(&blow));
        let two = gen_two_clique_host(6).unwrap();
        assert!(ExploreProblem::K2s { s: 3 }.admits(&two));
        assert!(!ExploreProblem::K2s { s: 2 }.admits(&two));
        assert!(!ExploreProblem::Girth { ell: 2 }.admits(&blow));
    }

    #[test]
    fn blowup_obstruction_is_found() {
        let problem = ExploreProblem::ForbiddenFamily { forbid: vec![FourCycleType::Directed] };
        let trees = enumerate_oriented_trees(4).unwrap().trees;
        let out = explore_trial(&problem, HostSource::Blowup, 0, &trees, 1, 0, 1_000_000);
        assert!(out.host_found);
        let alt = OrientedTree::alternating_path(4).unwrap();
        let canon = crate::lab::catalog::canonical_form(&alt);
        assert!(out
            .findings
            .iter()
            .any(|f| crate::lab::catalog::canonical_form(&OrientedTree::new(&f.tree).unwrap()) == canon));
        assert!(out.findings.iter().all(|f| !f.counterexample));
    }
}

//! Oriented 4-cycles: classification, detection and the two forbidden-cycle
//! predicates used as host conditions.
//!
//! A 4-cycle is written as a cyclic tuple `(v1, v2, v3, v4)`; each of its four
//! edges is traversed *forward* when the arc points from `v_i` to `v_{i+1}`.
//! Up to rotation and reflection there are exactly four arc patterns.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::digraph::Digraph;

/// Orientation class of a 4-cycle. The derived order is the canonical
/// reporting order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FourCycleType {
    /// FFFF
    Directed,
    /// FFFB
    ThreeOne,
    /// FFBB
    TwoTwoBlock,
    /// FBFB
    Alternating,
}

impl FourCycleType {
    pub const ALL: [FourCycleType; 4] = [
        FourCycleType::Directed,
        FourCycleType::ThreeOne,
        FourCycleType::TwoTwoBlock,
        FourCycleType::Alternating,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FourCycleType::Directed => "directed",
            FourCycleType::ThreeOne => "three_one",
            FourCycleType::TwoTwoBlock => "two_two_block",
            FourCycleType::Alternating => "alternating",
        }
    }

    pub(crate) fn index(self) -> usize {
        self as usize
    }
}

impl std::str::FromStr for FourCycleType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        FourCycleType::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown 4-cycle type `{s}` (directed, three_one, two_two_block, alternating)"))
    }
}

impl fmt::Display for FourCycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which cycles count as forbidden.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CycleMode {
    /// Every oriented 4-cycle.
    AllC4,
    /// Every oriented 4-cycle that is not directed.
    NonDirectedC4,
}

/// Class of a 4-cycle given whether each edge is traversed forward.
pub fn classify_cycle(forward: [bool; 4]) -> FourCycleType {
    let f = forward.iter().filter(|&&x| x).count();
    match f {
        0 | 4 => FourCycleType::Directed,
        1 | 3 => FourCycleType::ThreeOne,
        _ => {
            // two forward edges: adjacent in the cyclic order or opposite
            if forward[0] == forward[2] {
                FourCycleType::Alternating
            } else {
                FourCycleType::TwoTwoBlock
            }
        }
    }
}

/// A 4-cycle present in a digraph together with the arcs realizing its class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleWitness {
    pub vertices: [usize; 4],
    pub arcs: [(usize, usize); 4],
    #[serde(rename = "type")]
    pub kind: FourCycleType,
}

impl fmt::Display for CycleWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.vertices;
        write!(f, "{} {a} {b} {c} {d}", self.kind)
    }
}

/// For a cyclic tuple, the realizing arcs of each class (first realizing arc
/// pattern in forward-first order), indexed by [`FourCycleType`].
pub(crate) fn realizations(d: &Digraph, cyc: [usize; 4]) -> [Option<[(usize, usize); 4]>; 4] {
    realizations_by(|a, b| d.has_arc(a, b), cyc)
}

pub(crate) fn realizations_by(
    has_arc: impl Fn(usize, usize) -> bool,
    cyc: [usize; 4],
) -> [Option<[(usize, usize); 4]>; 4] {
    let mut found = [None; 4];
    for pattern in 0u8..16 {
        let mut arcs = [(0, 0); 4];
        let mut forward = [false; 4];
        let mut ok = true;
        for i in 0..4 {
            let (a, b) = (cyc[i], cyc[(i + 1) % 4]);
            let fwd = pattern & (8 >> i) == 0;
            let arc = if fwd { (a, b) } else { (b, a) };
            if !has_arc(arc.0, arc.1) {
                ok = false;
                break;
            }
            arcs[i] = arc;
            forward[i] = fwd;
        }
        if ok {
            let slot = &mut found[classify_cycle(forward).index()];
            if slot.is_none() {
                *slot = Some(arcs);
            }
        }
    }
    found
}

fn pick(mode: CycleMode, cyc: [usize; 4], real: &[Option<[(usize, usize); 4]>; 4]) -> Option<CycleWitness> {
    FourCycleType::ALL
        .into_iter()
        .filter(|&t| mode == CycleMode::AllC4 || t != FourCycleType::Directed)
        .find_map(|t| real[t.index()].map(|arcs| CycleWitness { vertices: cyc, arcs, kind: t }))
}

/// Visits every 4-cycle of the underlying graph once, as the canonical tuple
/// `(v1, v2, v3, v4)` with `v1` smallest and `v2 < v4`, in lexicographic order.
/// Stops early when `visit` returns `false`.
fn for_each_underlying_c4(d: &Digraph, mut visit: impl FnMut([usize; 4]) -> bool) {
    for v1 in 0..d.n() {
        let n1 = d.underlying_bits(v1);
        for v2 in n1.ones().filter(|&x| x > v1) {
            for v3 in d.underlying_bits(v2).ones().filter(|&x| x > v1) {
                // common neighbours of the opposite pair (v1, v3)
                for v4 in d.underlying_bits(v3).intersection(n1).filter(|&x| x > v2) {
                    if !visit([v1, v2, v3, v4]) {
                        return;
                    }
                }
            }
        }
    }
}

/// The lexicographically least forbidden 4-cycle, if any. On a single tuple
/// realizing several classes the first in canonical order is reported.
pub fn find_forbidden_cycle(d: &Digraph, mode: CycleMode) -> Option<CycleWitness> {
    let mut out = None;
    for_each_underlying_c4(d, |cyc| {
        out = pick(mode, cyc, &realizations(d, cyc));
        out.is_none()
    });
    out
}

pub fn is_c4_free(d: &Digraph) -> bool {
    find_forbidden_cycle(d, CycleMode::AllC4).is_none()
}

pub fn is_c4_star_free(d: &Digraph) -> bool {
    find_forbidden_cycle(d, CycleMode::NonDirectedC4).is_none()
}

/// Number of underlying 4-cycles realizing each class, indexed in canonical
/// order. A cycle realizing several classes (possible with digons) is counted
/// once per class.
pub fn four_cycle_census(d: &Digraph) -> [usize; 4] {
    let mut counts = [0; 4];
    for_each_underlying_c4(d, |cyc| {
        for (c, r) in counts.iter_mut().zip(realizations(d, cyc)) {
            *c += r.is_some() as usize;
        }
        true
    });
    counts
}

/// Classes occurring at least once.
pub fn cycle_types_present(d: &Digraph) -> Vec<FourCycleType> {
    let census = four_cycle_census(d);
    FourCycleType::ALL.into_iter().filter(|t| census[t.index()] > 0).collect()
}

/// Brute-force reference used to cross-check the fast path: all 4-subsets,
/// all three cyclic orders, classification by dihedral canonical form.
pub mod reference {
    use super::*;

    fn canonical(pattern: [bool; 4]) -> [bool; 4] {
        let mut best = pattern;
        for r in 0..4 {
            let rot: [bool; 4] = std::array::from_fn(|i| pattern[(i + r) % 4]);
            // walking the cycle backwards flips every edge
            let refl: [bool; 4] = std::array::from_fn(|i| !rot[3 - i]);
            best = best.min(rot).min(refl);
        }
        best
    }

    pub fn classify(pattern: [bool; 4]) -> FourCycleType {
        let reps = [
            ([true, true, true, true], FourCycleType::Directed),
            ([true, true, true, false], FourCycleType::ThreeOne),
            ([true, true, false, false], FourCycleType::TwoTwoBlock),
            ([true, false, true, false], FourCycleType::Alternating),
        ];
        let c = canonical(pattern);
        reps.into_iter()
            .find(|(p, _)| canonical(*p) == c)
            .map(|(_, t)| t)
            .expect("every pattern is in one of four classes")
    }

    /// Every (tuple, class) realized in `d`, tuples in canonical form.
    pub fn all_realized(d: &Digraph) -> Vec<([usize; 4], FourCycleType)> {
        let n = d.n();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for e in c + 1..n {
                        for cyc in [[a, b, c, e], [a, b, e, c], [a, c, b, e]] {
                            for mask in 0u8..16 {
                                let fwd: [bool; 4] = std::array::from_fn(|i| mask >> i & 1 == 1);
                                let ok = (0..4).all(|i| {
                                    let (x, y) = (cyc[i], cyc[(i + 1) % 4]);
                                    if fwd[i] { d.has_arc(x, y) } else { d.has_arc(y, x) }
                                });
                                if ok {
                                    out.push((cyc, classify(fwd)));
                                }
                            }
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Least forbidden (tuple, class) pair under `mode`.
    pub fn find_forbidden_cycle(d: &Digraph, mode: CycleMode) -> Option<([usize; 4], FourCycleType)> {
        all_realized(d)
            .into_iter()
            .find(|(_, t)| mode == CycleMode::AllC4 || *t != FourCycleType::Directed)
    }

    /// True iff the underlying simple graph has a 4-cycle, checked on vertex
    /// 4-subsets only.
    pub fn underlying_has_c4(d: &Digraph) -> bool {
        let n = d.n();
        let adj = |x: usize, y: usize| d.has_arc(x, y) || d.has_arc(y, x);
        (0..n).any(|a| {
            (a + 1..n).any(|b| {
                (b + 1..n).any(|c| {
                    (c + 1..n).any(|e| {
                        [[a, b, c, e], [a, b, e, c], [a, c, b, e]]
                            .iter()
                            .any(|q| (0..4).all(|i| adj(q[i], q[(i + 1) % 4])))
                    })
                })
            })
        })
    }
}

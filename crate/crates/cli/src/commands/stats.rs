use std::path::Path;

use oritree::cycles::{find_forbidden_cycle, four_cycle_census};
use oritree::{CycleMode, CycleWitness, DegreeProfile, FourCycleType};
use serde::Serialize;

use super::load_digraph;
use crate::output::{envelope, print_json, yes_no, Format};
use crate::{exit, Common};

/// Above this order only witnesses are reported, not full censuses.
const CENSUS_LIMIT: usize = 200;

#[derive(Serialize)]
struct Stats {
    n: usize,
    m: usize,
    oriented: bool,
    profile: DegreeProfile,
    c4_free: bool,
    c4_star_free: bool,
    census: Option<[usize; 4]>,
    witness: Option<CycleWitness>,
}

pub fn run(path: &Path, common: &Common) -> anyhow::Result<u8> {
    let d = load_digraph(path)?;
    let any = find_forbidden_cycle(&d, CycleMode::AllC4);
    let non_directed = find_forbidden_cycle(&d, CycleMode::NonDirectedC4);
    let s = Stats {
        n: d.n(),
        m: d.arc_count(),
        oriented: d.is_oriented(),
        profile: d.degree_profile(),
        c4_free: any.is_none(),
        c4_star_free: non_directed.is_none(),
        census: (d.n() <= CENSUS_LIMIT).then(|| four_cycle_census(&d)),
        witness: non_directed.or(any),
    };
    match common.format {
        Format::Json => print_json(&envelope("stats", common.seed, &s)),
        Format::Text => {
            let p = &s.profile;
            println!(
                "n={} m={} oriented={} delta_plus={} delta_minus={} Delta_plus={} Delta_minus={} Delta_tot={}",
                s.n,
                s.m,
                yes_no(s.oriented),
                p.min_out,
                p.min_in,
                p.max_out,
                p.max_in,
                p.max_total
            );
            println!(
                "delta0={} pseudo={} Delta_pm={} c4_free={}",
                p.semidegree,
                p.pseudo_semidegree,
                p.max_pm,
                yes_no(s.c4_free)
            );
            let mut line = format!("c4_star_free={} c4_free={}", yes_no(s.c4_star_free), yes_no(s.c4_free));
            if let Some(c) = s.census {
                for (t, count) in FourCycleType::ALL.iter().zip(c) {
                    line += &format!(" {t}={count}");
                }
            }
            println!("{line}");
            if let Some(w) = &s.witness {
                println!("witness: {w}");
            }
        }
    }
    Ok(exit::OK)
}

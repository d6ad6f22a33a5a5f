use oritree::density::{peel_to_pseudo_semidegree, HalfInt, PeelTrace};
use oritree::io::write_digraph;
use serde::Serialize;

use super::load_digraph;
use crate::output::{envelope, print_json, write_file, Format};
use crate::{exit, PeelArgs};

#[derive(Serialize)]
struct PeelReport {
    n: usize,
    arcs_before: usize,
    arcs_after: usize,
    pseudo_semidegree: usize,
    trace: PeelTrace,
}

pub fn run(a: &PeelArgs) -> anyhow::Result<u8> {
    let d = load_digraph(&a.digraph)?;
    let (p, trace) = peel_to_pseudo_semidegree(&d, HalfInt::half(a.k));
    let report = PeelReport {
        n: d.n(),
        arcs_before: d.arc_count(),
        arcs_after: p.arc_count(),
        pseudo_semidegree: p.degree_profile().pseudo_semidegree,
        trace,
    };
    let doc = envelope("peel", a.common.seed, &report);
    if let Some(out) = &a.out {
        write_file(out, &write_digraph(&p))?;
    }
    if let Some(path) = &a.trace {
        write_file(path, &serde_json::to_string_pretty(&doc)?)?;
    }
    match a.common.format {
        Format::Json => print_json(&doc),
        Format::Text => {
            println!(
                "threshold={} arcs {} -> {} events={} pseudo={}",
                report.trace.threshold,
                report.arcs_before,
                report.arcs_after,
                report.trace.events.len(),
                report.pseudo_semidegree
            );
            if a.out.is_none() {
                print!("{}", write_digraph(&p));
            }
        }
    }
    Ok(exit::OK)
}

use std::path::Path;

use oritree::embed::{Move, MoveRecord};
use oritree::{check_hypotheses, embed_tree, EmbedMode, EmbedOptions, EmbedReport, EmbedStatus, HypothesisReport};

use super::{load_digraph, load_tree};
use crate::output::{envelope, print_json, write_file, yes_no, Format};
use crate::{exit, Common, EmbedArgs};

fn hypothesis_line(h: &HypothesisReport) -> String {
    let mut s = format!(
        "hypotheses ({}): degree={} max_degree={} cycle={}",
        h.mode,
        yes_no(h.degree_condition),
        yes_no(h.max_degree_condition),
        yes_no(h.cycle_condition)
    );
    if let Some(v) = h.degree_witness {
        s += &format!(" degree_witness={v}");
    }
    if let Some(w) = &h.cycle_witness {
        s += &format!(" cycle_witness=[{w}]");
    }
    s
}

pub fn check(tree: &Path, digraph: &Path, mode: EmbedMode, common: &Common) -> anyhow::Result<u8> {
    let t = load_tree(tree)?;
    let d = load_digraph(digraph)?;
    let h = check_hypotheses(&t, &d, mode)?;
    match common.format {
        Format::Json => print_json(&envelope("check", common.seed, &h)),
        Format::Text => {
            println!("{}", hypothesis_line(&h));
            println!("all_hold={}", yes_no(h.all_hold));
        }
    }
    Ok(exit::OK)
}

pub fn status_code(status: EmbedStatus) -> u8 {
    match status {
        EmbedStatus::Embedded => exit::OK,
        EmbedStatus::HypothesisViolation => exit::VIOLATION,
        EmbedStatus::NotEmbeddable | EmbedStatus::FallbackExhausted => exit::NOT_EMBEDDED,
    }
}

fn move_counts(moves: &[MoveRecord]) -> [usize; 5] {
    let mut c = [0; 5];
    for m in moves {
        c[match m.action {
            Move::Core { .. } => 0,
            Move::Direct { .. } => 1,
            Move::CaseA { .. } => 2,
            Move::CaseB { .. } => 3,
            Move::Backtrack { .. } => 4,
        }] += 1;
    }
    c
}

fn print_text(r: &EmbedReport) {
    let note = match r.status {
        EmbedStatus::NotEmbeddable => " (oracle-confirmed)",
        _ => "",
    };
    println!("status: {}{note}", r.status);
    println!("{}", hypothesis_line(&r.hypotheses));
    let [core, direct, a, b, back] = move_counts(&r.moves);
    println!("moves: core={core} direct={direct} case_a={a} case_b={b} backtrack={back} fallback_nodes={}", r.fallback_nodes);
    if r.mirrored {
        println!("mirrored: yes");
    }
    for a in &r.anomalies {
        println!("anomaly: {a}");
    }
    if let Some(f) = &r.embedding {
        let pairs: Vec<String> = f.iter().map(|(x, h)| format!("{x}->{h}")).collect();
        println!("embedding: {}", pairs.join(" "));
    }
}

pub fn run(args: &EmbedArgs) -> anyhow::Result<u8> {
    let t = load_tree(&args.tree)?;
    let d = load_digraph(&args.digraph)?;
    let options = EmbedOptions {
        fallback_budget: args.budget,
        assert_constructive: args.assert_constructive,
        seed: args.common.seed,
        oracle: args.oracle.then_some(args.budget),
    };
    let r = embed_tree(&t, &d, args.mode, &options)?;
    let doc = envelope("embed", args.common.seed, &r);
    if let Some(out) = &args.out {
        write_file(out, &serde_json::to_string_pretty(&doc)?)?;
    }
    match args.common.format {
        Format::Json => print_json(&doc),
        Format::Text => print_text(&r),
    }
    Ok(status_code(r.status))
}

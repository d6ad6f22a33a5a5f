use std::collections::BTreeMap;

use anyhow::bail;
use oritree::lab::rng::stream;
use oritree::lab::{enumerate_oriented_trees, gen_girth6_digon_host, gen_oriented_girth6_host, gen_random_tree, TreeKind};
use oritree::{check_hypotheses, embed_tree, Digraph, EmbedMode, EmbedOptions, EmbedStatus, OrientedTree};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::output::{envelope, print_json, write_file, Format};
use crate::pool::pool;
use crate::{exit, TreeSource, VerifyArgs};

struct Host {
    name: String,
    digraph: Digraph,
}

/// Hosts meeting the semidegree bound for `k`: the digon incidence graphs of
/// the planes of order q with `2(q+1) ≥ k`, plus, for out-arborescences with
/// `k ≤ 6`, the oriented order-4 graph with a hub.
fn host_family(mode: EmbedMode, k: usize) -> anyhow::Result<Vec<Host>> {
    let q_min = k.div_ceil(2).saturating_sub(1).max(2);
    if q_min > 4 {
        bail!("k = {k} is beyond the available host families (k <= 10)");
    }
    let mut hosts: Vec<Host> = (q_min..=4)
        .map(|q| Host { name: format!("girth6_digon(q={q})"), digraph: gen_girth6_digon_host(q).unwrap() })
        .collect();
    if mode == EmbedMode::Arborescence && k <= 6 {
        hosts.push(Host { name: "girth6_oriented_hub(q=4)".into(), digraph: gen_oriented_girth6_host(4, true).unwrap() });
    }
    Ok(hosts)
}

fn fits_mode(t: &OrientedTree, mode: EmbedMode) -> bool {
    oritree::embed::check_mode(t, mode).is_ok()
}

#[derive(Serialize, Clone)]
struct Failure {
    trial: u64,
    tree_seed: Option<u64>,
    tree: Vec<(usize, usize)>,
    host: String,
    status: EmbedStatus,
    anomalies: Vec<String>,
}

enum Trial {
    Skipped,
    Ran { status: EmbedStatus, backtracked: bool, failure: Option<Failure> },
}

#[derive(Serialize)]
struct Summary {
    mode: EmbedMode,
    k: usize,
    trees: &'static str,
    trials: u64,
    hypotheses_held: usize,
    skipped: usize,
    statuses: BTreeMap<&'static str, usize>,
    backtracked: usize,
    failures: Vec<Failure>,
}

pub fn run(args: &VerifyArgs) -> anyhow::Result<u8> {
    let (mode, k, seed) = (args.mode, args.k, args.common.seed);
    if k == 0 {
        bail!("k must be at least 1");
    }
    let hosts = host_family(mode, k)?;
    let kind = match mode {
        EmbedMode::General => TreeKind::Any,
        EmbedMode::Antidirected => TreeKind::Antidirected,
        EmbedMode::Arborescence => TreeKind::OutArborescence,
    };
    // (tree, seed it was drawn with)
    let trees: Vec<(OrientedTree, Option<u64>)> = match args.trees {
        TreeSource::Random => (0..args.trials)
            .map(|i| {
                let s = stream(seed, i).gen::<u64>();
                (gen_random_tree(k, kind, s).unwrap(), Some(s))
            })
            .collect(),
        TreeSource::Catalog | TreeSource::Paths => enumerate_oriented_trees(k)?
            .trees
            .into_iter()
            .filter(|t| fits_mode(t, mode) && (args.trees == TreeSource::Catalog || t.max_total_degree() <= 2))
            .take(args.trials as usize)
            .map(|t| (t, None))
            .collect(),
    };
    let options = EmbedOptions {
        fallback_budget: args.budget,
        assert_constructive: args.assert_constructive,
        seed,
        oracle: None,
    };
    let results: Vec<Trial> = pool()?.install(|| {
        trees
            .par_iter()
            .enumerate()
            .map(|(i, (t, tree_seed))| {
                let host = &hosts[i % hosts.len()];
                if !fits_mode(t, mode) {
                    return Trial::Skipped;
                }
                let h = check_hypotheses(t, &host.digraph, mode).expect("mode checked");
                if !h.all_hold {
                    return Trial::Skipped;
                }
                let r = embed_tree(t, &host.digraph, mode, &options).expect("mode checked");
                let failure = (r.status != EmbedStatus::Embedded).then(|| Failure {
                    trial: i as u64,
                    tree_seed: *tree_seed,
                    tree: t.arcs().to_vec(),
                    host: host.name.clone(),
                    status: r.status,
                    anomalies: r.anomalies.clone(),
                });
                Trial::Ran { status: r.status, backtracked: r.backtracked(), failure }
            })
            .collect()
    });

    let mut summary = Summary {
        mode,
        k,
        trees: match args.trees {
            TreeSource::Random => "random",
            TreeSource::Catalog => "catalog",
            TreeSource::Paths => "paths",
        },
        trials: trees.len() as u64,
        hypotheses_held: 0,
        skipped: 0,
        statuses: BTreeMap::new(),
        backtracked: 0,
        failures: Vec::new(),
    };
    for r in results {
        match r {
            Trial::Skipped => summary.skipped += 1,
            Trial::Ran { status, backtracked, failure } => {
                summary.hypotheses_held += 1;
                *summary.statuses.entry(status.name()).or_default() += 1;
                summary.backtracked += backtracked as usize;
                summary.failures.extend(failure);
            }
        }
    }
    let doc = envelope("verify", seed, &summary);
    if let Some(out) = &args.out {
        write_file(out, &serde_json::to_string_pretty(&doc)?)?;
    }
    match args.common.format {
        Format::Json => print_json(&doc),
        Format::Text => {
            println!(
                "verify mode={} k={} trees={} trials={} seed={}",
                mode, k, summary.trees, summary.trials, seed
            );
            println!("hypotheses held: {}  skipped: {}", summary.hypotheses_held, summary.skipped);
            for (s, c) in &summary.statuses {
                let pct = 100.0 * *c as f64 / summary.hypotheses_held.max(1) as f64;
                println!("  {s}: {c} ({pct:.1}%)");
            }
            println!("backtracked: {}", summary.backtracked);
            for f in &summary.failures {
                println!(
                    "FAIL trial={} tree_seed={} host={} status={}",
                    f.trial,
                    f.tree_seed.map_or("-".to_string(), |s| s.to_string()),
                    f.host,
                    f.status
                );
            }
        }
    }
    Ok(if summary.failures.is_empty() { exit::OK } else { exit::VIOLATION })
}

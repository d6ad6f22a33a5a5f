use anyhow::bail;
use oritree::lab::{enumerate_oriented_trees, explore_trial, ExploreProblem, Finding, HostSource, TrialOutcome};
use rayon::prelude::*;
use serde::Serialize;

use crate::output::{envelope, print_json, write_file, Format};
use crate::pool::pool;
use crate::{exit, ExploreArgs, Problem};

/// Largest tree size tried; every catalog tree is oracle-tested per host.
const MAX_K: usize = 6;

#[derive(Serialize)]
struct Log {
    #[serde(flatten)]
    problem: ExploreProblem,
    hosts: HostSource,
    k: usize,
    n: usize,
    trials: u64,
    trees: usize,
    hosts_found: usize,
    pairs_tested: usize,
    oracle_unknown: usize,
    counterexamples: usize,
    findings: Vec<Finding>,
}

pub fn run(args: &ExploreArgs) -> anyhow::Result<u8> {
    if args.k == 0 || args.k > MAX_K {
        bail!("k must be between 1 and {MAX_K}");
    }
    let problem = match args.problem {
        Problem::ForbiddenFamily => ExploreProblem::ForbiddenFamily { forbid: args.forbid.clone() },
        Problem::K2s if args.s >= 2 => ExploreProblem::K2s { s: args.s },
        Problem::Girth if args.ell >= 1 => ExploreProblem::Girth { ell: args.ell },
        Problem::K2s => bail!("--s must be at least 2"),
        Problem::Girth => bail!("--ell must be at least 1"),
    };
    let trees = enumerate_oriented_trees(args.k)?.trees;
    let seed = args.common.seed;
    let outcomes: Vec<TrialOutcome> = pool()?.install(|| {
        (0..args.trials)
            .into_par_iter()
            .map(|i| explore_trial(&problem, args.hosts, args.n, &trees, seed, i, args.budget))
            .collect()
    });
    let mut log = Log {
        problem,
        hosts: args.hosts,
        k: args.k,
        n: args.n,
        trials: args.trials,
        trees: trees.len(),
        hosts_found: 0,
        pairs_tested: 0,
        oracle_unknown: 0,
        counterexamples: 0,
        findings: Vec::new(),
    };
    for o in outcomes {
        log.hosts_found += o.host_found as usize;
        log.pairs_tested += o.pairs_tested;
        log.oracle_unknown += o.oracle_unknown;
        log.findings.extend(o.findings);
    }
    log.counterexamples = log.findings.iter().filter(|f| f.counterexample).count();
    let doc = envelope("explore", seed, &log);
    if let Some(out) = &args.out {
        write_file(out, &serde_json::to_string_pretty(&doc)?)?;
    }
    match args.common.format {
        Format::Json => print_json(&doc),
        Format::Text => {
            println!("explore {} hosts={} k={} n={} trials={} seed={}", log.problem, log.hosts.name(), log.k, log.n, log.trials, seed);
            println!(
                "hosts found: {}  pairs tested: {}  oracle unknown: {}",
                log.hosts_found, log.pairs_tested, log.oracle_unknown
            );
            println!("non-embeddable pairs: {}  counterexample candidates: {}", log.findings.len(), log.counterexamples);
            for f in &log.findings {
                let tree: Vec<String> = f.tree.iter().map(|(a, b)| format!("{a}>{b}")).collect();
                println!(
                    "  trial={} host_seed={} host_n={} host_m={} counterexample={} tree=[{}]",
                    f.trial,
                    f.host_seed,
                    f.host_n,
                    f.host.len(),
                    f.counterexample,
                    tree.join(" ")
                );
            }
        }
    }
    Ok(exit::OK)
}

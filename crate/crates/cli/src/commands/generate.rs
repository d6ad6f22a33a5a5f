use anyhow::{bail, Context};
use oritree::cycles::{is_c4_free, is_c4_star_free};
use oritree::io::{parse_digraph, parse_tree, write_digraph, write_tree};
use oritree::lab::generators::{balanced_spider_legs, two_clique_host_with_clique_size};
use oritree::lab::{
    gen_blowup_cycle, gen_girth6_digon_host, gen_oriented_girth6_host, gen_random_digraph, gen_random_tree,
    HostConstraint,
};
use oritree::{Digraph, OrientedTree};
use serde_json::json;

use crate::output::{envelope, print_json, write_file, Format};
use crate::{exit, GenerateArgs, Kind};

enum Instance {
    Digraph(Digraph),
    Tree(OrientedTree),
}

fn need(v: Option<usize>, flag: &str, kind: &str) -> anyhow::Result<usize> {
    v.with_context(|| format!("{kind} needs --{flag}"))
}

fn build(a: &GenerateArgs) -> anyhow::Result<Instance> {
    let seed = a.common.seed;
    Ok(match a.kind {
        Kind::TwoClique => {
            let clique = match (a.clique, a.k) {
                (Some(c), _) => c,
                (None, Some(k)) if k >= 4 => k / 2 - 1,
                (None, Some(k)) => bail!("two_clique needs k >= 4, got {k}"),
                (None, None) => bail!("two_clique needs --k or --clique"),
            };
            if clique == 0 {
                bail!("clique size must be at least 1");
            }
            Instance::Digraph(two_clique_host_with_clique_size(clique))
        }
        Kind::Blowup => Instance::Digraph(gen_blowup_cycle(need(a.len, "len", "blowup")?, need(a.s, "s", "blowup")?)?),
        Kind::Girth6 => {
            let q = need(a.q, "q", "girth6")?;
            Instance::Digraph(if a.oriented { gen_oriented_girth6_host(q, a.hub)? } else { gen_girth6_digon_host(q)? })
        }
        Kind::RandomDigraph => Instance::Digraph(gen_random_digraph(
            need(a.n, "n", "random_digraph")?,
            need(a.m, "m", "random_digraph")?,
            a.constraint,
            seed,
        )?),
        Kind::RandomTree => Instance::Tree(gen_random_tree(need(a.k, "k", "random_tree")?, a.tree_kind, seed)?),
        Kind::Spider => {
            let legs = if a.legs.is_empty() { balanced_spider_legs(need(a.k, "k", "spider")?) } else { a.legs.clone() };
            Instance::Tree(OrientedTree::spider(&legs)?)
        }
        Kind::Complete => Instance::Digraph(Digraph::complete(need(a.n, "n", "complete")?)),
    })
}

/// Re-reads the serialized text and re-checks constructive guarantees.
fn revalidate(a: &GenerateArgs, inst: &Instance, text: &str) -> anyhow::Result<()> {
    match inst {
        Instance::Digraph(d) => {
            anyhow::ensure!(&parse_digraph(text)? == d, "round trip changed the digraph");
            let ok = match a.constraint {
                _ if a.kind != Kind::RandomDigraph => true,
                HostConstraint::None => true,
                HostConstraint::C4Free => is_c4_free(d),
                HostConstraint::C4StarFree => is_c4_star_free(d),
            };
            anyhow::ensure!(ok, "generated digraph violates its constraint");
            if a.kind == Kind::Girth6 {
                anyhow::ensure!(d.underlying_girth() == Some(6), "generated host does not have girth 6");
            }
        }
        Instance::Tree(t) => {
            anyhow::ensure!(parse_tree(text)?.arcs() == t.arcs(), "round trip changed the tree");
        }
    }
    Ok(())
}

pub fn run(a: &GenerateArgs) -> anyhow::Result<u8> {
    let inst = build(a)?;
    let text = match &inst {
        Instance::Digraph(d) => write_digraph(d),
        Instance::Tree(t) => write_tree(t),
    };
    revalidate(a, &inst, &text)?;
    let (n, m) = match &inst {
        Instance::Digraph(d) => (d.n(), d.arc_count()),
        Instance::Tree(t) => (t.n(), t.k()),
    };
    match &a.out {
        Some(path) => {
            write_file(path, &text)?;
            let kind = format!("{:?}", a.kind);
            match a.common.format {
                Format::Json => print_json(&envelope(
                    "generate",
                    a.common.seed,
                    json!({ "kind": kind, "n": n, "m": m, "path": path }),
                )),
                Format::Text => println!("wrote {} (n={n} m={m})", path.display()),
            }
        }
        None => print!("{text}"),
    }
    Ok(exit::OK)
}

use std::fs;
use std::path::Path;

use anyhow::Context;
use oritree::io::write_tree;
use oritree::lab::enumerate_oriented_trees;
use serde_json::json;

use crate::output::{envelope, print_json, write_file, Format};
use crate::{exit, Common};

pub fn run(k: usize, out: Option<&Path>, common: &Common) -> anyhow::Result<u8> {
    let cat = enumerate_oriented_trees(k)?;
    let entries = cat.entries();
    if let Some(dir) = out {
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
        let mut index = Vec::new();
        for (i, (t, e)) in cat.trees.iter().zip(&entries).enumerate() {
            let file = format!("tree_{k}_{i:05}.txt");
            write_file(&dir.join(&file), &write_tree(t))?;
            index.push(json!({ "file": file, "canonical": e.canonical }));
        }
        let doc = envelope("catalog", common.seed, json!({ "k": k, "count": cat.len(), "entries": index }));
        write_file(&dir.join("index.json"), &serde_json::to_string_pretty(&doc)?)?;
    }
    match common.format {
        Format::Json => print_json(&envelope("catalog", common.seed, json!({ "k": k, "count": cat.len(), "entries": entries }))),
        Format::Text => {
            println!("k={k} count={}", cat.len());
            if out.is_none() {
                for e in &entries {
                    println!("{}", e.canonical);
                }
            }
        }
    }
    Ok(exit::OK)
}

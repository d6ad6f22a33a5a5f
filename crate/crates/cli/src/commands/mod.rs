pub mod catalog;
pub mod embed;
pub mod explore;
pub mod generate;
pub mod peel;
pub mod stats;
pub mod verify;

use std::path::Path;

use anyhow::Context;
use oritree::io::{parse_digraph, parse_tree};
use oritree::{Digraph, OrientedTree};

use crate::output::read_file;

pub fn load_digraph(path: &Path) -> anyhow::Result<Digraph> {
    parse_digraph(&read_file(path)?).with_context(|| format!("{}", path.display()))
}

pub fn load_tree(path: &Path) -> anyhow::Result<OrientedTree> {
    parse_tree(&read_file(path)?).with_context(|| format!("{}", path.display()))
}

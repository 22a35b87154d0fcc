//! Whitespace-separated edge-list files.
//!
//! One `u v` pair of non-negative integers per line. Blank lines and lines
//! starting with `#` are skipped.

use std::collections::BTreeSet;
use std::path::Path;

use super::Graph;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub graph: Graph,
    pub self_loops_dropped: usize,
    /// External id of each dense vertex, when ids were remapped.
    pub id_map: Option<Vec<u64>>,
}

/// Loads an edge list keeping external ids as vertex ids, so the graph spans
/// `0..=max_id`.
pub fn load_edge_list(path: impl AsRef<Path>) -> Result<LoadedGraph> {
    read(path.as_ref(), false)
}

/// Loads an edge list and compacts the ids that occur into `0..n`, in
/// ascending order of external id.
pub fn load_edge_list_remapped(path: impl AsRef<Path>) -> Result<LoadedGraph> {
    read(path.as_ref(), true)
}

fn read(path: &Path, remap: bool) -> Result<LoadedGraph> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let loaded = parse_edge_list(&text, remap)?;
    if loaded.self_loops_dropped > 0 {
        log::warn!(
            "{}: dropped {} self-loop(s)",
            path.display(),
            loaded.self_loops_dropped
        );
    }
    Ok(loaded)
}

pub fn parse_edge_list(text: &str, remap: bool) -> Result<LoadedGraph> {
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let pair = match (fields.next(), fields.next(), fields.next()) {
            (Some(u), Some(v), None) => u.parse::<u64>().ok().zip(v.parse::<u64>().ok()),
            _ => None,
        };
        let Some(pair) = pair else {
            return Err(Error::Format {
                line: i + 1,
                message: format!("expected two non-negative integers, found {line:?}"),
            });
        };
        pairs.push(pair);
    }
    if pairs.is_empty() {
        return Err(Error::EmptyGraph);
    }

    let (n, id_map, lookup): (usize, Option<Vec<u64>>, Box<dyn Fn(u64) -> usize>) = if remap {
        let ids: Vec<u64> = pairs
            .iter()
            .flat_map(|&(u, v)| [u, v])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let table = ids.clone();
        let lookup = move |x: u64| table.binary_search(&x).expect("id collected above");
        (ids.len(), Some(ids), Box::new(lookup))
    } else {
        let max_id = pairs.iter().map(|&(u, v)| u.max(v)).max().unwrap_or(0);
        let n = usize::try_from(max_id)
            .ok()
            .and_then(|m| m.checked_add(1))
            .ok_or_else(|| Error::Data(format!("vertex id {max_id} too large")))?;
        (n, None, Box::new(|x: u64| x as usize))
    };

    let mut self_loops_dropped = 0;
    let mut edges = Vec::with_capacity(pairs.len());
    for (u, v) in pairs {
        if u == v {
            self_loops_dropped += 1;
        } else {
            edges.push((lookup(u), lookup(v)));
        }
    }
    Ok(LoadedGraph {
        graph: Graph::from_edges(n, edges)?,
        self_loops_dropped,
        id_map,
    })
}

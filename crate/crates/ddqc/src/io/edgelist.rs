//! Plain-text edge lists: whitespace-separated integer pairs, one edge per
//! line, `#` comment lines ignored. Node ids are remapped to dense integers
//! in order of first appearance. A comment containing `nodes <count>` (also
//! matches the common `# Nodes: N Edges: M` header) declares the node count,
//! which is how isolated nodes survive a round trip; without a declaration
//! the graph has exactly the nodes that appear on some edge.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, SanitizeStats};

/// Parses an edge list, collapsing directed duplicates and self-loops.
/// `declared_nodes` (e.g. from a manifest) widens the graph with trailing
/// isolated nodes; the larger of the hint and any in-file declaration wins.
pub fn parse_edge_list<R: BufRead>(
    reader: R,
    declared_nodes: Option<usize>,
) -> Result<(Graph, SanitizeStats)> {
    let mut remap: HashMap<u64, NodeId> = HashMap::new();
    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
    let mut declared = declared_nodes;

    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some(n) = scan_node_declaration(comment) {
                declared = Some(declared.map_or(n, |d| d.max(n)));
            }
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let a = tokens.next().expect("non-empty line has a first token");
        let b = tokens
            .next()
            .ok_or_else(|| Error::parse(lineno, "expected two node ids"))?;
        if tokens.next().is_some() {
            return Err(Error::parse(lineno, "expected exactly two node ids"));
        }
        let u = intern(&mut remap, parse_id(a, lineno)?, lineno)?;
        let v = intern(&mut remap, parse_id(b, lineno)?, lineno)?;
        edges.push((u, v));
    }

    let node_count = declared.map_or(remap.len(), |d| d.max(remap.len()));
    Graph::sanitized(node_count, edges)
}

/// Reads an edge list from a file.
pub fn read_edge_list(path: &Path) -> Result<(Graph, SanitizeStats)> {
    read_edge_list_declared(path, None)
}

/// Reads an edge list, widening to `declared_nodes` if given.
pub fn read_edge_list_declared(
    path: &Path,
    declared_nodes: Option<usize>,
) -> Result<(Graph, SanitizeStats)> {
    let file = File::open(path)?;
    parse_edge_list(BufReader::new(file), declared_nodes)
}

/// Writes a graph as an edge list with a `# nodes N edges M` header so
/// isolated nodes are preserved on reload. Edges are emitted in sorted
/// order; output is byte-stable for a given graph.
pub fn write_edge_list<W: Write>(mut w: W, g: &Graph) -> Result<()> {
    writeln!(w, "# nodes {} edges {}", g.node_count(), g.edge_count())?;
    for (u, v) in g.edges() {
        writeln!(w, "{} {}", u, v)?;
    }
    Ok(())
}

/// Writes a graph as an edge-list file.
pub fn write_edge_list_file(path: &Path, g: &Graph) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_edge_list(&mut w, g)?;
    w.flush()?;
    Ok(())
}

fn parse_id(token: &str, lineno: usize) -> Result<u64> {
    token
        .parse::<u64>()
        .map_err(|_| Error::parse(lineno, format!("invalid node id '{}'", token)))
}

fn intern(remap: &mut HashMap<u64, NodeId>, raw: u64, lineno: usize) -> Result<NodeId> {
    if let Some(&id) = remap.get(&raw) {
        return Ok(id);
    }
    let next = NodeId::try_from(remap.len())
        .map_err(|_| Error::parse(lineno, "too many distinct node ids"))?;
    remap.insert(raw, next);
    Ok(next)
}

/// Looks for `nodes <count>` inside a comment, tolerating a trailing colon
/// and any case (`# Nodes: 75879 Edges: 508837`).
fn scan_node_declaration(comment: &str) -> Option<usize> {
    let mut tokens = comment.split_whitespace();
    while let Some(tok) = tokens.next() {
        if tok.trim_end_matches(':').eq_ignore_ascii_case("nodes") {
            return tokens.next()?.trim_end_matches(',').parse().ok();
        }
    }
    None
}

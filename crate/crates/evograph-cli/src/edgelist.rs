//! Plain-text snapshot format.
//!
//! One undirected edge per line as two whitespace-separated node numbers;
//! isolated nodes as `N <node>` lines; `#` starts a comment; blank lines are
//! ignored. Duplicate and reversed edge lines collapse to one edge.
//! Self-loop lines are rejected with their position.
//!
//! The canonical written form is: `N` lines for isolated nodes in ascending
//! order, then edges sorted by `(min endpoint, max endpoint)`, one canonical
//! byte rendering per graph.

use std::fs;
use std::path::Path;

use evograph::{NodeId, Snapshot};

use crate::error::CliError;

/// Parses one snapshot file; `time_index` is assigned by the caller.
pub fn load_snapshot(path: &Path, time_index: usize) -> Result<Snapshot, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_snapshot(&text, time_index).map_err(|(line, message)| CliError::Format {
        path: path.to_path_buf(),
        line,
        message,
    })
}

/// Parses snapshot text; errors carry the 1-based line number.
pub fn parse_snapshot(text: &str, time_index: usize) -> Result<Snapshot, (usize, String)> {
    let mut g = Snapshot::new(time_index);
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let first = fields.next().expect("nonempty line has a field");
        if first == "N" {
            let id = fields
                .next()
                .ok_or((line_no, "expected a node number after N".to_string()))?;
            let id = parse_node(id, line_no)?;
            if fields.next().is_some() {
                return Err((line_no, "too many fields on an N line".to_string()));
            }
            g.add_node(id);
            continue;
        }
        let u = parse_node(first, line_no)?;
        let v = fields
            .next()
            .ok_or((line_no, "expected two node numbers".to_string()))?;
        let v = parse_node(v, line_no)?;
        if fields.next().is_some() {
            return Err((line_no, "too many fields on an edge line".to_string()));
        }
        if u == v {
            return Err((line_no, format!("self-loop at node {u} is not allowed")));
        }
        g.add_edge(u, v);
    }
    if g.is_empty() {
        return Err((0, "snapshot file declares no nodes or edges".to_string()));
    }
    Ok(g)
}

fn parse_node(token: &str, line_no: usize) -> Result<NodeId, (usize, String)> {
    token
        .parse::<u64>()
        .map(NodeId)
        .map_err(|_| (line_no, format!("not a node number: {token:?}")))
}

/// Renders the canonical byte form of a snapshot.
pub fn render_snapshot(g: &Snapshot) -> String {
    let mut out = String::new();
    for v in g.nodes() {
        if g.degree(v).expect("node of g") == 0 {
            out.push_str(&format!("N {v}\n"));
        }
    }
    for e in g.edges() {
        let (u, v) = e.endpoints();
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Writes the canonical form to a file.
pub fn save_snapshot(g: &Snapshot, path: &Path) -> Result<(), CliError> {
    fs::write(path, render_snapshot(g)).map_err(|e| CliError::io(path, e))
}

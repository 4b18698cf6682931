//! JSON file format for decorated graphs.
//!
//! ```json
//! {
//!   "edges": [{"head": 1, "m": 1, "tail": 0}],
//!   "ell": 5,
//!   "vertices": [{"genus": 2, "id": 0}, {"genus": null, "id": 1}]
//! }
//! ```
//!
//! `m` is the value of `M` on the tail → head dart. Vertex ids may be any
//! distinct integers; they are renumbered in increasing order.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cochain::OneCochain;
use crate::decorated::DecoratedGraph;
use crate::error::{Error, Result};
use crate::graph::Multigraph;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileEdge {
    head: i64,
    m: i64,
    tail: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileVertex {
    genus: Option<u32>,
    id: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileGraph {
    edges: Vec<FileEdge>,
    ell: u32,
    vertices: Vec<FileVertex>,
}

pub fn parse(text: &str) -> Result<DecoratedGraph> {
    let file: FileGraph = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if file.ell < 2 {
        return Err(Error::BadModulus(file.ell));
    }
    if file.vertices.is_empty() {
        return Err(Error::NoVertices);
    }
    let mut index = BTreeMap::new();
    for v in &file.vertices {
        if index.insert(v.id, 0usize).is_some() {
            return Err(Error::Invalid(format!("duplicate vertex id {}", v.id)));
        }
    }
    for (i, slot) in index.values_mut().enumerate() {
        *slot = i;
    }
    let mut genus = vec![None; file.vertices.len()];
    for v in &file.vertices {
        genus[index[&v.id]] = v.genus;
    }
    let lookup = |id: i64| {
        index
            .get(&id)
            .copied()
            .ok_or_else(|| Error::Invalid(format!("edge refers to unknown vertex {id}")))
    };
    let mut edges = Vec::with_capacity(file.edges.len());
    let mut m = Vec::with_capacity(file.edges.len());
    for e in &file.edges {
        if e.m < 0 || e.m >= file.ell as i64 {
            return Err(Error::Invalid(format!("m = {} out of range 0..{}", e.m, file.ell)));
        }
        edges.push((lookup(e.tail)?, lookup(e.head)?));
        m.push(e.m);
    }
    let graph = Multigraph::new(file.vertices.len(), &edges)?;
    let m = OneCochain::on(&graph, file.ell, &m)?;
    DecoratedGraph::new(graph, m, Some(genus))
}

/// Pretty JSON with vertices numbered `0..n` and edges sorted by
/// `(tail, head, m)`, followed by a newline.
pub fn to_json(d: &DecoratedGraph) -> String {
    let g = d.graph();
    let mut edges: Vec<FileEdge> = g
        .edges()
        .map(|e| {
            let (t, h) = g.ends(e);
            FileEdge {
                head: h as i64,
                m: d.m().on_edge(e) as i64,
                tail: t as i64,
            }
        })
        .collect();
    edges.sort_by_key(|e| (e.tail, e.head, e.m));
    let file = FileGraph {
        edges,
        ell: d.ell(),
        vertices: d
            .genus()
            .iter()
            .enumerate()
            .map(|(id, &genus)| FileVertex { genus, id: id as i64 })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("plain data serialises");
    s.push('\n');
    s
}

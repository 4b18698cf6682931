//! Isomorphism-class enumeration of small multigraphs.

use std::collections::BTreeMap;

use super::canon::{canonical_form, relabel, CanonicalCode, DEFAULT_VERTEX_BOUND};
use super::{separating_edges, Multigraph};
use crate::error::{Error, Result};

pub const MAX_ENUMERATION_EDGES: usize = 8;
const MAX_CONNECTED_EDGES: usize = 7;

fn canonical(g: &Multigraph) -> (CanonicalCode, Multigraph) {
    let form = canonical_form(g, None, DEFAULT_VERTEX_BOUND).expect("enumerated graphs stay within the vertex bound");
    let (graph, _) = relabel(g, &form.order, None);
    (form.code, graph)
}

fn with_edges(g: &Multigraph, extra_vertices: usize, extra: &[(usize, usize)]) -> Multigraph {
    let mut edges = g.edge_list();
    edges.extend_from_slice(extra);
    Multigraph::new(g.num_vertices() + extra_vertices, &edges).expect("augmentation keeps the graph connected")
}

fn finish(levels: Vec<BTreeMap<CanonicalCode, Multigraph>>) -> Vec<Multigraph> {
    let mut all: Vec<(usize, usize, CanonicalCode, Multigraph)> = levels
        .into_iter()
        .flat_map(|lvl| lvl.into_iter())
        .map(|(code, g)| (g.num_edges(), g.num_vertices(), code, g))
        .collect();
    all.sort_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)));
    all.into_iter().map(|(_, _, _, g)| g).collect()
}

/// All connected, loopless, bridgeless multigraphs with at least two
/// vertices and `1..=max_edges` edges, one per isomorphism class, ordered by
/// edge count, vertex count and canonical code.
///
/// Built by ear augmentation: every such graph is a cycle or arises from a
/// smaller one by attaching a path (an ear) between two of its vertices.
pub fn enumerate_base_graphs(max_edges: usize) -> Result<Vec<Multigraph>> {
    if max_edges > MAX_ENUMERATION_EDGES {
        return Err(Error::SizeBound {
            what: "edges for base graph enumeration",
            size: max_edges as u128,
            bound: MAX_ENUMERATION_EDGES as u128,
        });
    }
    let mut levels: Vec<BTreeMap<CanonicalCode, Multigraph>> = vec![BTreeMap::new(); max_edges + 1];
    for (n, level) in levels.iter_mut().enumerate().skip(2) {
        let cycle: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let g = Multigraph::new(n, &cycle)?;
        let (code, g) = canonical(&g);
        level.insert(code, g);
    }
    for e in 2..=max_edges {
        let current: Vec<Multigraph> = levels[e].values().cloned().collect();
        for g in current {
            let n = g.num_vertices();
            for len in 1..=(max_edges - e) {
                for u in 0..n {
                    for v in u..n {
                        if u == v && len < 2 {
                            continue;
                        }
                        // path u → w_1 → … → w_{len-1} → v
                        let inner: Vec<usize> = (n..n + len - 1).collect();
                        let mut stops = vec![u];
                        stops.extend(&inner);
                        stops.push(v);
                        let ear: Vec<(usize, usize)> = stops.windows(2).map(|w| (w[0], w[1])).collect();
                        let h = with_edges(&g, len - 1, &ear);
                        let (code, h) = canonical(&h);
                        levels[e + len].entry(code).or_insert(h);
                    }
                }
            }
        }
    }
    let out = finish(levels);
    debug_assert!(out.iter().all(|g| separating_edges(g).is_empty()));
    Ok(out)
}

/// All connected multigraphs with `0..=max_edges` edges (loops only when
/// `allow_loops`), one per isomorphism class, including the single point.
pub fn enumerate_connected_graphs(max_edges: usize, allow_loops: bool) -> Result<Vec<Multigraph>> {
    if max_edges > MAX_CONNECTED_EDGES {
        return Err(Error::SizeBound {
            what: "edges for connected graph enumeration",
            size: max_edges as u128,
            bound: MAX_CONNECTED_EDGES as u128,
        });
    }
    let mut levels: Vec<BTreeMap<CanonicalCode, Multigraph>> = vec![BTreeMap::new(); max_edges + 1];
    let (code, p) = canonical(&Multigraph::point());
    levels[0].insert(code, p);
    for e in 0..max_edges {
        let current: Vec<Multigraph> = levels[e].values().cloned().collect();
        for g in current {
            let n = g.num_vertices();
            for u in 0..n {
                // pendant edge to a new vertex
                let h = with_edges(&g, 1, &[(u, n)]);
                let (code, h) = canonical(&h);
                levels[e + 1].entry(code).or_insert(h);
                for v in u..n {
                    if u == v && !allow_loops {
                        continue;
                    }
                    let h = with_edges(&g, 0, &[(u, v)]);
                    let (code, h) = canonical(&h);
                    levels[e + 1].entry(code).or_insert(h);
                }
            }
        }
    }
    Ok(finish(levels))
}

//! Canonical codes for small (optionally labelled) multigraphs.
//!
//! The code is the lexicographic minimum of an adjacency encoding over every
//! vertex ordering compatible with the sorted `(degree, loops)` sequence,
//! which is itself part of the code. Graphs here have at most a handful of
//! vertices, so exhaustive search with prefix pruning is plenty.

use super::{Multigraph, VertexId};
use crate::error::{Error, Result};

pub const DEFAULT_VERTEX_BOUND: usize = 8;

/// Per-edge labels on forward darts together with the rule that gives the
/// label of the reversed dart.
#[derive(Clone, Copy)]
pub struct EdgeLabels<'a> {
    pub values: &'a [u32],
    pub reverse: &'a dyn Fn(u32) -> u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(Vec<u32>);

impl CanonicalCode {
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// Big-endian byte string; byte order agrees with the code order.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.0.iter().flat_map(|x| x.to_be_bytes()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    pub code: CanonicalCode,
    /// `order[position] = vertex` for the minimizing ordering.
    pub order: Vec<VertexId>,
}

pub fn canonical_code(g: &Multigraph, labels: Option<EdgeLabels<'_>>) -> Result<CanonicalCode> {
    canonical_form(g, labels, DEFAULT_VERTEX_BOUND).map(|f| f.code)
}

pub fn canonical_form(
    g: &Multigraph,
    labels: Option<EdgeLabels<'_>>,
    vertex_bound: usize,
) -> Result<CanonicalForm> {
    let n = g.num_vertices();
    if n > vertex_bound {
        return Err(Error::SizeBound {
            what: "vertices for canonical code",
            size: n as u128,
            bound: vertex_bound as u128,
        });
    }
    if let Some(l) = labels {
        if l.values.len() != g.num_edges() {
            return Err(Error::LengthMismatch {
                expected: g.num_edges(),
                got: l.values.len(),
            });
        }
    }
    // cells[u][v]: sorted labels of darts u → v; loops normalized on the diagonal
    let mut cells = vec![vec![Vec::<u32>::new(); n]; n];
    for e in g.edges() {
        let (t, h) = g.ends(e);
        let (fwd, rev) = match labels {
            Some(l) => (l.values[e], (l.reverse)(l.values[e])),
            None => (0, 0),
        };
        if t == h {
            cells[t][t].push(fwd.min(rev));
        } else {
            cells[t][h].push(fwd);
            cells[h][t].push(rev);
        }
    }
    for row in cells.iter_mut() {
        for c in row.iter_mut() {
            c.sort_unstable();
        }
    }
    let inv: Vec<(u32, u32)> = g
        .vertices()
        .map(|v| (g.degree(v) as u32, cells[v][v].len() as u32))
        .collect();
    let mut target = inv.clone();
    target.sort_unstable_by(|a, b| b.cmp(a));

    let mut header = vec![n as u32, g.num_edges() as u32, labels.is_some() as u32];
    for &(d, l) in &target {
        header.push(d);
        header.push(l);
    }
    let mut search = Search {
        n,
        cells: &cells,
        labelled: labels.is_some(),
        inv: &inv,
        target: &target,
        cur: header,
        order: Vec::with_capacity(n),
        used: vec![false; n],
        best: None,
    };
    search.dfs();
    let (code, order) = search.best.expect("at least one ordering exists");
    Ok(CanonicalForm {
        code: CanonicalCode(code),
        order,
    })
}

struct Search<'a> {
    n: usize,
    cells: &'a [Vec<Vec<u32>>],
    labelled: bool,
    inv: &'a [(u32, u32)],
    target: &'a [(u32, u32)],
    cur: Vec<u32>,
    order: Vec<VertexId>,
    used: Vec<bool>,
    best: Option<(Vec<u32>, Vec<VertexId>)>,
}

impl Search<'_> {
    fn push_cell(&mut self, u: VertexId, v: VertexId) {
        let c = &self.cells[u][v];
        self.cur.push(c.len() as u32);
        if self.labelled {
            self.cur.extend_from_slice(c);
        }
    }

    fn dfs(&mut self) {
        let pos = self.order.len();
        if pos == self.n {
            if self.best.as_ref().is_none_or(|(best, _)| self.cur < *best) {
                self.best = Some((self.cur.clone(), self.order.clone()));
            }
            return;
        }
        for v in 0..self.n {
            if self.used[v] || self.inv[v] != self.target[pos] {
                continue;
            }
            let mark = self.cur.len();
            for q in 0..pos {
                let u = self.order[q];
                self.push_cell(u, v);
            }
            self.push_cell(v, v);
            // all codes of one graph have the same length, so a prefix that
            // already exceeds the best can be dropped
            let viable = match &self.best {
                None => true,
                Some((best, _)) => self.cur[..] <= best[..self.cur.len()],
            };
            if viable {
                self.used[v] = true;
                self.order.push(v);
                self.dfs();
                self.order.pop();
                self.used[v] = false;
            }
            self.cur.truncate(mark);
        }
    }
}

/// Vertex permutations preserving every edge multiplicity (including loop
/// counts). `perm[v]` is the image of `v`.
pub fn vertex_automorphisms(g: &Multigraph) -> Vec<Vec<VertexId>> {
    let n = g.num_vertices();
    let mut mult = vec![vec![0u32; n]; n];
    for e in g.edges() {
        let (t, h) = g.ends(e);
        mult[t][h] += 1;
        if t != h {
            mult[h][t] += 1;
        }
    }
    let mut out = Vec::new();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        v: usize,
        n: usize,
        mult: &[Vec<u32>],
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if v == n {
            out.push(perm.clone());
            return;
        }
        for w in 0..n {
            if used[w] {
                continue;
            }
            let ok = (0..v).all(|u| mult[u][v] == mult[perm[u]][w]) && mult[v][v] == mult[w][w];
            if ok {
                used[w] = true;
                perm[v] = w;
                rec(v + 1, n, mult, perm, used, out);
                used[w] = false;
            }
        }
        perm[v] = usize::MAX;
    }
    rec(0, n, &mult, &mut perm, &mut used, &mut out);
    out
}

/// Rebuilds `g` with vertex `order[p]` renamed to `p`. Edges are oriented
/// from the lower to the higher position (loops so that the forward label is
/// the smaller of the two dart labels) and sorted by `(tail, head, label)`.
/// Labels are carried along, reversed where an edge flips.
pub fn relabel(
    g: &Multigraph,
    order: &[VertexId],
    labels: Option<EdgeLabels<'_>>,
) -> (Multigraph, Vec<u32>) {
    let mut pos = vec![0; g.num_vertices()];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    let mut edges: Vec<(VertexId, VertexId, u32)> = g
        .edges()
        .map(|e| {
            let (t, h) = g.ends(e);
            let (pt, ph) = (pos[t], pos[h]);
            let (fwd, rev) = match labels {
                Some(l) => (l.values[e], (l.reverse)(l.values[e])),
                None => (0, 0),
            };
            if pt == ph {
                (pt, ph, fwd.min(rev))
            } else if pt < ph {
                (pt, ph, fwd)
            } else {
                (ph, pt, rev)
            }
        })
        .collect();
    edges.sort_unstable();
    let pairs: Vec<(VertexId, VertexId)> = edges.iter().map(|&(t, h, _)| (t, h)).collect();
    let graph = Multigraph::new(g.num_vertices(), &pairs).expect("relabelling preserves connectivity");
    (graph, edges.into_iter().map(|(_, _, l)| l).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn neg5(x: u32) -> u32 {
        (5 - x % 5) % 5
    }

    #[test]
    fn labelled_vines_over_z5() {
        let g = Multigraph::vine(2);
        let code = |vals: &[u32]| {
            canonical_code(
                &g,
                Some(EdgeLabels {
                    values: vals,
                    reverse: &neg5,
                }),
            )
            .unwrap()
        };
        assert_eq!(code(&[1, 2]), code(&[2, 1]));
        assert_ne!(code(&[1, 1]), code(&[1, 4]));
        // vertex swap negates: (1,1) ≅ (4,4)
        assert_eq!(code(&[1, 1]), code(&[4, 4]));
    }

    #[test]
    fn isomorphic_relabellings_agree() {
        let a = Multigraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let b = Multigraph::new(4, &[(2, 3), (3, 1), (1, 0), (0, 2), (3, 0)]).unwrap();
        assert_eq!(canonical_code(&a, None).unwrap(), canonical_code(&b, None).unwrap());
        let c = Multigraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 1)]).unwrap();
        assert_ne!(canonical_code(&a, None).unwrap(), canonical_code(&c, None).unwrap());
    }

    #[test]
    fn bound_is_enforced() {
        let g = Multigraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(canonical_form(&g, None, 2), Err(Error::SizeBound { .. })));
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(vertex_automorphisms(&Multigraph::vine(3)).len(), 2);
        let tri = Multigraph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(vertex_automorphisms(&tri).len(), 6);
        let path = Multigraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(vertex_automorphisms(&path).len(), 2);
    }
}

//! Connected multigraphs with loops and parallel edges, stored as darts.
//!
//! Edge `e` owns darts `2e` (tail → head, the forward dart) and `2e + 1`
//! (head → tail). Conjugation is `d ^ 1`, a fixed-point-free involution.

mod canon;
mod enumerate;

pub use canon::{
    canonical_code, canonical_form, relabel, vertex_automorphisms, CanonicalCode, CanonicalForm, EdgeLabels,
    DEFAULT_VERTEX_BOUND,
};
pub use enumerate::{enumerate_base_graphs, enumerate_connected_graphs, MAX_ENUMERATION_EDGES};

use std::collections::VecDeque;

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;
pub type DartId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    num_vertices: usize,
    /// Tail vertex of every dart.
    tails: Vec<VertexId>,
    /// Outgoing darts per vertex, ascending.
    out: Vec<Vec<DartId>>,
}

impl Multigraph {
    /// Builds a connected multigraph from `(tail, head)` pairs; edge ids are
    /// positions in `edges`.
    pub fn new(num_vertices: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        if num_vertices == 0 {
            return Err(Error::NoVertices);
        }
        let mut tails = Vec::with_capacity(2 * edges.len());
        for &(t, h) in edges {
            for v in [t, h] {
                if v >= num_vertices {
                    return Err(Error::VertexOutOfRange {
                        vertex: v,
                        count: num_vertices,
                    });
                }
            }
            tails.push(t);
            tails.push(h);
        }
        let mut out = vec![Vec::new(); num_vertices];
        for (d, &t) in tails.iter().enumerate() {
            out[t].push(d);
        }
        let g = Multigraph {
            num_vertices,
            tails,
            out,
        };
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    /// The graph with one vertex and no edges.
    pub fn point() -> Self {
        Multigraph::new(1, &[]).expect("a point is connected")
    }

    /// Two vertices joined by `n` parallel edges, all oriented 0 → 1.
    pub fn vine(n: usize) -> Self {
        Multigraph::new(2, &vec![(0, 1); n]).expect("vine is connected for n >= 1")
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.tails.len() / 2
    }

    pub fn num_darts(&self) -> usize {
        self.tails.len()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.num_vertices
    }

    pub fn edges(&self) -> std::ops::Range<EdgeId> {
        0..self.num_edges()
    }

    #[inline]
    pub fn tail(&self, d: DartId) -> VertexId {
        self.tails[d]
    }

    #[inline]
    pub fn head(&self, d: DartId) -> VertexId {
        self.tails[d ^ 1]
    }

    #[inline]
    pub fn conj(d: DartId) -> DartId {
        d ^ 1
    }

    #[inline]
    pub fn forward_dart(e: EdgeId) -> DartId {
        2 * e
    }

    #[inline]
    pub fn edge_of(d: DartId) -> EdgeId {
        d / 2
    }

    #[inline]
    pub fn is_forward(d: DartId) -> bool {
        d.is_multiple_of(2)
    }

    /// `(tail, head)` of the forward dart of `e`.
    pub fn ends(&self, e: EdgeId) -> (VertexId, VertexId) {
        (self.tails[2 * e], self.tails[2 * e + 1])
    }

    pub fn edge_list(&self) -> Vec<(VertexId, VertexId)> {
        self.edges().map(|e| self.ends(e)).collect()
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        let (t, h) = self.ends(e);
        t == h
    }

    pub fn outgoing(&self, v: VertexId) -> &[DartId] {
        &self.out[v]
    }

    /// Number of half-edges at `v`; a loop counts twice.
    pub fn degree(&self, v: VertexId) -> usize {
        self.out[v].len()
    }

    pub fn loop_count(&self, v: VertexId) -> usize {
        self.out[v].iter().filter(|&&d| Self::is_forward(d) && self.head(d) == v).count()
    }

    pub fn check_edge(&self, e: EdgeId) -> Result<()> {
        if e >= self.num_edges() {
            return Err(Error::UnknownEdge(e));
        }
        Ok(())
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.num_vertices];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &d in &self.out[v] {
                let w = self.head(d);
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.num_vertices
    }

    pub fn betti1(&self) -> usize {
        self.num_edges() + 1 - self.num_vertices
    }
}

/// Result of contracting an edge set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contraction {
    pub graph: Multigraph,
    /// Old vertex → new vertex.
    pub vertex_map: Vec<VertexId>,
    /// New edge → old edge; orientation is preserved.
    pub edge_map: Vec<EdgeId>,
}

impl Contraction {
    /// Old edge → new edge, `None` for contracted edges.
    pub fn surviving(&self, old_edges: usize) -> Vec<Option<EdgeId>> {
        let mut inv = vec![None; old_edges];
        for (new, &old) in self.edge_map.iter().enumerate() {
            inv[old] = Some(new);
        }
        inv
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut x = x;
        while self.parent[x] != r {
            let next = self.parent[x];
            self.parent[x] = r;
            x = next;
        }
        r
    }

    /// Returns false if already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // keep the smaller root so class representatives are minimal ids
        if ra < rb {
            self.parent[rb] = ra;
        } else {
            self.parent[ra] = rb;
        }
        true
    }
}

/// Contracts the edges in `f`. New vertices are numbered by the smallest old
/// vertex of each class; surviving edges keep their relative order. Loops
/// created by the contraction are kept.
pub fn contract_edges(g: &Multigraph, f: &[EdgeId]) -> Result<Contraction> {
    let mut contract = vec![false; g.num_edges()];
    for &e in f {
        g.check_edge(e)?;
        contract[e] = true;
    }
    let mut uf = UnionFind::new(g.num_vertices());
    for e in g.edges().filter(|&e| contract[e]) {
        let (t, h) = g.ends(e);
        uf.union(t, h);
    }
    let mut new_id = vec![usize::MAX; g.num_vertices()];
    let mut next = 0;
    let mut vertex_map = vec![0; g.num_vertices()];
    for v in g.vertices() {
        let r = uf.find(v);
        if new_id[r] == usize::MAX {
            new_id[r] = next;
            next += 1;
        }
        vertex_map[v] = new_id[r];
    }
    let mut edges = Vec::new();
    let mut edge_map = Vec::new();
    for e in g.edges().filter(|&e| !contract[e]) {
        let (t, h) = g.ends(e);
        edges.push((vertex_map[t], vertex_map[h]));
        edge_map.push(e);
    }
    let graph = Multigraph::new(next, &edges).expect("contraction of a connected graph is connected");
    Ok(Contraction {
        graph,
        vertex_map,
        edge_map,
    })
}

/// Separating edges (bridges), ascending. Loops are never separating.
pub fn separating_edges(g: &Multigraph) -> Vec<EdgeId> {
    let n = g.num_vertices();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut bridges = Vec::new();
    let mut clock = 0;
    // iterative DFS; frames carry the dart we entered through so a parallel
    // edge back to the parent still counts as a back edge
    let mut stack: Vec<(VertexId, Option<DartId>, usize)> = vec![(0, None, 0)];
    disc[0] = clock;
    low[0] = clock;
    clock += 1;
    while let Some(&mut (v, via, ref mut idx)) = stack.last_mut() {
        if *idx < g.out[v].len() {
            let d = g.out[v][*idx];
            *idx += 1;
            if Some(Multigraph::conj(d)) == via {
                continue;
            }
            let w = g.head(d);
            if disc[w] == usize::MAX {
                disc[w] = clock;
                low[w] = clock;
                clock += 1;
                stack.push((w, Some(d), 0));
            } else {
                low[v] = low[v].min(disc[w]);
            }
        } else {
            stack.pop();
            if let (Some(d), Some(&(parent, _, _))) = (via, stack.last()) {
                low[parent] = low[parent].min(low[v]);
                if low[v] > disc[parent] {
                    bridges.push(Multigraph::edge_of(d));
                }
            }
        }
    }
    bridges.sort_unstable();
    bridges
}

/// Spanning tree chosen greedily in increasing edge id.
pub fn spanning_tree(g: &Multigraph) -> Vec<EdgeId> {
    spanning_tree_with(g, &[])
}

/// Spanning tree containing the (acyclic) `forced` edges, then greedy by id.
pub fn spanning_tree_with(g: &Multigraph, forced: &[EdgeId]) -> Vec<EdgeId> {
    let mut uf = UnionFind::new(g.num_vertices());
    let mut tree = Vec::with_capacity(g.num_vertices() - 1);
    for e in forced.iter().copied().chain(g.edges()) {
        let (t, h) = g.ends(e);
        if uf.union(t, h) {
            tree.push(e);
        }
    }
    tree.sort_unstable();
    tree
}

/// A rooted spanning tree: parent dart (parent → child) per vertex.
pub(crate) struct RootedTree {
    pub parent_dart: Vec<Option<DartId>>,
    /// Vertices in BFS order from the root 0.
    pub order: Vec<VertexId>,
    pub depth: Vec<usize>,
}

pub(crate) fn root_tree(g: &Multigraph, t: &[EdgeId]) -> Result<RootedTree> {
    let n = g.num_vertices();
    let mut in_tree = vec![false; g.num_edges()];
    for &e in t {
        g.check_edge(e)?;
        if in_tree[e] {
            return Err(Error::NotSpanningTree);
        }
        in_tree[e] = true;
    }
    if t.len() + 1 != n {
        return Err(Error::NotSpanningTree);
    }
    let mut parent_dart = vec![None; n];
    let mut depth = vec![0; n];
    let mut seen = vec![false; n];
    let mut order = vec![0];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        for &d in &g.out[v] {
            if !in_tree[Multigraph::edge_of(d)] {
                continue;
            }
            let w = g.head(d);
            if !seen[w] {
                seen[w] = true;
                parent_dart[w] = Some(d);
                depth[w] = depth[v] + 1;
                order.push(w);
            }
        }
    }
    if order.len() != n {
        return Err(Error::NotSpanningTree);
    }
    Ok(RootedTree {
        parent_dart,
        order,
        depth,
    })
}

/// A closed path, as a sequence of darts.
pub type Circuit = Vec<DartId>;

/// One circuit per non-tree edge: its forward dart followed by the tree path
/// from its head back to its tail. Loops give length-one circuits.
pub fn fundamental_circuits(g: &Multigraph, t: &[EdgeId]) -> Result<Vec<Circuit>> {
    let tree = root_tree(g, t)?;
    let mut in_tree = vec![false; g.num_edges()];
    for &e in t {
        in_tree[e] = true;
    }
    let mut circuits = Vec::new();
    for e in g.edges().filter(|&e| !in_tree[e]) {
        let d = Multigraph::forward_dart(e);
        let (tail, head) = (g.tail(d), g.head(d));
        // tree path head → tail: climb from head up to the common ancestor,
        // then descend to tail
        let mut up = Vec::new();
        let mut down = Vec::new();
        let (mut a, mut b) = (head, tail);
        while a != b {
            if tree.depth[a] >= tree.depth[b] {
                let pd = tree.parent_dart[a].expect("non-root has a parent");
                up.push(Multigraph::conj(pd));
                a = g.tail(pd);
            } else {
                let pd = tree.parent_dart[b].expect("non-root has a parent");
                down.push(pd);
                b = g.tail(pd);
            }
        }
        let mut circuit = vec![d];
        circuit.extend(up);
        circuit.extend(down.into_iter().rev());
        circuits.push(circuit);
    }
    Ok(circuits)
}

/// Connected, and every circuit is a loop.
pub fn is_tree_like(g: &Multigraph) -> bool {
    let non_loops = g.edges().filter(|&e| !g.is_loop(e)).count();
    non_loops == separating_edges(g).len()
}

/// Contracts loops and separating edges (repeatedly, though one pass
/// suffices since contraction never creates new bridges).
pub fn contract_loops_and_bridges(g: &Multigraph) -> Contraction {
    let mut f: Vec<EdgeId> = g.edges().filter(|&e| g.is_loop(e)).collect();
    f.extend(separating_edges(g));
    let c = contract_edges(g, &f).expect("edge ids come from the graph");
    // contracting bridges can turn nothing else into a loop, but parallel
    // edges never arise from it either; loops may only come from the input
    debug_assert!(c.graph.edges().all(|e| !c.graph.is_loop(e)));
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Multigraph {
        Multigraph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn barbell() -> Multigraph {
        // two 2-vines joined by edge 4
        Multigraph::new(4, &[(0, 1), (0, 1), (2, 3), (2, 3), (1, 2)]).unwrap()
    }

    #[test]
    fn rejects_disconnected_and_bad_ids() {
        assert_eq!(Multigraph::new(2, &[]), Err(Error::Disconnected));
        assert!(matches!(Multigraph::new(2, &[(0, 2)]), Err(Error::VertexOutOfRange { .. })));
        assert_eq!(Multigraph::new(0, &[]), Err(Error::NoVertices));
    }

    #[test]
    fn darts_and_conjugation() {
        let g = Multigraph::new(2, &[(0, 1), (1, 1)]).unwrap();
        for d in 0..g.num_darts() {
            assert_ne!(Multigraph::conj(d), d);
            assert_eq!(Multigraph::conj(Multigraph::conj(d)), d);
            assert_eq!(g.head(d), g.tail(Multigraph::conj(d)));
        }
        assert!(g.is_loop(1));
        assert_eq!(g.degree(1), 3);
        assert_eq!(g.loop_count(1), 1);
    }

    #[test]
    fn contraction_examples() {
        let c = contract_edges(&triangle(), &[0]).unwrap();
        assert_eq!(c.graph.num_vertices(), 2);
        assert_eq!(c.graph.num_edges(), 2);
        assert!(c.graph.edges().all(|e| !c.graph.is_loop(e)));
        assert_eq!(c.edge_map, vec![1, 2]);

        let c = contract_edges(&Multigraph::vine(2), &[0]).unwrap();
        assert_eq!(c.graph.num_vertices(), 1);
        assert_eq!(c.graph.num_edges(), 1);
        assert!(c.graph.is_loop(0));

        let g = barbell();
        let c = contract_edges(&g, &[]).unwrap();
        assert_eq!(c.graph, g);
        assert_eq!(c.vertex_map, vec![0, 1, 2, 3]);
        assert_eq!(c.edge_map, vec![0, 1, 2, 3, 4]);

        assert_eq!(contract_edges(&g, &[9]), Err(Error::UnknownEdge(9)));
    }

    #[test]
    fn bridges() {
        let path = Multigraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(separating_edges(&path), vec![0, 1]);
        for n in 2..6 {
            assert!(separating_edges(&Multigraph::vine(n)).is_empty());
        }
        assert_eq!(separating_edges(&barbell()), vec![4]);
        let with_loop = Multigraph::new(2, &[(0, 1), (1, 1)]).unwrap();
        assert_eq!(separating_edges(&with_loop), vec![0]);
    }

    #[test]
    fn trees() {
        let path = Multigraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(spanning_tree(&path), vec![0, 1]);
        assert_eq!(spanning_tree(&Multigraph::vine(2)), vec![0]);
        let g = barbell();
        let t = spanning_tree(&g);
        assert_eq!(t.len(), g.num_vertices() - 1);
        assert!(t.contains(&4));
    }

    #[test]
    fn circuits() {
        let g = Multigraph::vine(2);
        let c = fundamental_circuits(&g, &[0]).unwrap();
        // e2 forward (0 → 1) then ē1 (1 → 0)
        assert_eq!(c, vec![vec![2, 1]]);
        let lp = Multigraph::new(1, &[(0, 0)]).unwrap();
        assert_eq!(fundamental_circuits(&lp, &[]).unwrap(), vec![vec![0]]);
        let tri = triangle();
        let c = fundamental_circuits(&tri, &spanning_tree(&tri)).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].len(), 3);
        for w in c[0].windows(2) {
            assert_eq!(tri.head(w[0]), tri.tail(w[1]));
        }
        assert_eq!(tri.head(*c[0].last().unwrap()), tri.tail(c[0][0]));
        assert_eq!(fundamental_circuits(&tri, &[0]), Err(Error::NotSpanningTree));
    }

    #[test]
    fn betti_and_tree_like() {
        assert_eq!(Multigraph::new(3, &[(0, 1), (1, 2)]).unwrap().betti1(), 0);
        assert_eq!(Multigraph::vine(4).betti1(), 3);
        assert_eq!(Multigraph::vine(3).betti1(), 2);
        assert!(is_tree_like(&Multigraph::new(1, &[(0, 0)]).unwrap()));
        assert!(!is_tree_like(&Multigraph::vine(2)));
        assert!(is_tree_like(&Multigraph::new(3, &[(0, 1), (1, 2), (2, 2)]).unwrap()));
    }
}

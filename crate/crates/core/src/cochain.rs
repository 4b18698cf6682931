//! Z/ℓ-valued cochains on a multigraph.
//!
//! Cochains carry only their level and values; operators take the graph as
//! an argument. A 1-cochain (odd on darts) and an even function are both
//! stored by their value on the forward dart of each edge.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{fundamental_circuits, root_tree, spanning_tree, DartId, EdgeId, Multigraph, VertexId};
use crate::modular::{self, check_modulus, Residue};

fn reduce_all(values: &[i64], ell: u32) -> Vec<u32> {
    values.iter().map(|&v| modular::reduce(v, ell)).collect()
}

fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::LengthMismatch { expected, got });
    }
    Ok(())
}

/// A function `V → Z/ℓ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ZeroCochain {
    ell: u32,
    values: Vec<u32>,
}

impl ZeroCochain {
    pub fn new(ell: u32, values: &[i64]) -> Result<Self> {
        check_modulus(ell)?;
        Ok(ZeroCochain {
            ell,
            values: reduce_all(values, ell),
        })
    }

    /// Checks that there is one value per vertex of `g`.
    pub fn on(g: &Multigraph, ell: u32, values: &[i64]) -> Result<Self> {
        check_len(g.num_vertices(), values.len())?;
        Self::new(ell, values)
    }

    pub fn zero(num_vertices: usize, ell: u32) -> Self {
        ZeroCochain {
            ell,
            values: vec![0; num_vertices],
        }
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn get(&self, v: VertexId) -> u32 {
        self.values[v]
    }

    pub fn residue(&self, v: VertexId) -> Residue {
        Residue::new(self.values[v] as i64, self.ell)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&x| x == 0)
    }
}

/// An antisymmetric function on darts: `b(ē) = −b(e)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OneCochain {
    ell: u32,
    values: Vec<u32>,
}

impl OneCochain {
    /// Values given on the forward dart of each edge.
    pub fn new(ell: u32, values: &[i64]) -> Result<Self> {
        check_modulus(ell)?;
        Ok(OneCochain {
            ell,
            values: reduce_all(values, ell),
        })
    }

    pub fn on(g: &Multigraph, ell: u32, values: &[i64]) -> Result<Self> {
        check_len(g.num_edges(), values.len())?;
        Self::new(ell, values)
    }

    pub(crate) fn from_reduced(ell: u32, values: Vec<u32>) -> Self {
        OneCochain { ell, values }
    }

    /// Values given on every dart; rejects input that is not antisymmetric.
    pub fn from_darts(g: &Multigraph, ell: u32, darts: &[i64]) -> Result<Self> {
        check_modulus(ell)?;
        check_len(g.num_darts(), darts.len())?;
        let r = reduce_all(darts, ell);
        for e in g.edges() {
            let d = Multigraph::forward_dart(e);
            if r[d] != modular::neg(r[Multigraph::conj(d)], ell) {
                return Err(Error::Symmetry { dart: d, kind: "odd" });
            }
        }
        Ok(OneCochain {
            ell,
            values: g.edges().map(|e| r[Multigraph::forward_dart(e)]).collect(),
        })
    }

    pub fn zero(num_edges: usize, ell: u32) -> Self {
        OneCochain {
            ell,
            values: vec![0; num_edges],
        }
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    /// Forward-dart values, one per edge.
    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn on_edge(&self, e: EdgeId) -> u32 {
        self.values[e]
    }

    pub fn at_dart(&self, d: DartId) -> u32 {
        let v = self.values[Multigraph::edge_of(d)];
        if Multigraph::is_forward(d) {
            v
        } else {
            modular::neg(v, self.ell)
        }
    }

    pub fn residue(&self, d: DartId) -> Residue {
        Residue::new(self.at_dart(d) as i64, self.ell)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&x| x == 0)
    }

    pub fn scale(&self, c: u32) -> Self {
        OneCochain {
            ell: self.ell,
            values: self.values.iter().map(|&x| modular::mul(x, c, self.ell)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        OneCochain {
            ell: self.ell,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&x, &y)| modular::add(x, y, self.ell))
                .collect(),
        }
    }

    /// Restriction along an edge injection (new edge → old edge).
    pub fn pull_back(&self, edge_map: &[EdgeId]) -> Self {
        OneCochain {
            ell: self.ell,
            values: edge_map.iter().map(|&e| self.values[e]).collect(),
        }
    }
}

/// A symmetric function on darts: `a(ē) = a(e)`, i.e. a function on edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EvenFunction {
    ell: u32,
    values: Vec<u32>,
}

impl EvenFunction {
    pub fn new(ell: u32, values: &[i64]) -> Result<Self> {
        check_modulus(ell)?;
        Ok(EvenFunction {
            ell,
            values: reduce_all(values, ell),
        })
    }

    pub fn on(g: &Multigraph, ell: u32, values: &[i64]) -> Result<Self> {
        check_len(g.num_edges(), values.len())?;
        Self::new(ell, values)
    }

    pub(crate) fn from_reduced(ell: u32, values: Vec<u32>) -> Self {
        EvenFunction { ell, values }
    }

    pub fn from_darts(g: &Multigraph, ell: u32, darts: &[i64]) -> Result<Self> {
        check_modulus(ell)?;
        check_len(g.num_darts(), darts.len())?;
        let r = reduce_all(darts, ell);
        for e in g.edges() {
            let d = Multigraph::forward_dart(e);
            if r[d] != r[Multigraph::conj(d)] {
                return Err(Error::Symmetry { dart: d, kind: "even" });
            }
        }
        Ok(EvenFunction {
            ell,
            values: g.edges().map(|e| r[Multigraph::forward_dart(e)]).collect(),
        })
    }

    pub fn zero(num_edges: usize, ell: u32) -> Self {
        EvenFunction {
            ell,
            values: vec![0; num_edges],
        }
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn on_edge(&self, e: EdgeId) -> u32 {
        self.values[e]
    }

    pub fn at_dart(&self, d: DartId) -> u32 {
        self.values[Multigraph::edge_of(d)]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&x| x == 0)
    }

    /// Pointwise negation, the inverse in the ghost group.
    pub fn inverse(&self) -> Self {
        EvenFunction {
            ell: self.ell,
            values: self.values.iter().map(|&x| modular::neg(x, self.ell)).collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Self {
        EvenFunction {
            ell: self.ell,
            values: self.values.iter().map(|&x| modular::mul(x, c, self.ell)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        EvenFunction {
            ell: self.ell,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&x, &y)| modular::add(x, y, self.ell))
                .collect(),
        }
    }

    /// The odd cochain `e ↦ a(e)·b(e)`.
    pub fn times(&self, b: &OneCochain) -> OneCochain {
        OneCochain {
            ell: self.ell,
            values: self
                .values
                .iter()
                .zip(b.values())
                .map(|(&x, &y)| modular::mul(x, y, self.ell))
                .collect(),
        }
    }

    pub fn support(&self) -> Vec<EdgeId> {
        (0..self.values.len()).filter(|&e| self.values[e] != 0).collect()
    }

    pub fn pull_back(&self, edge_map: &[EdgeId]) -> Self {
        EvenFunction {
            ell: self.ell,
            values: edge_map.iter().map(|&e| self.values[e]).collect(),
        }
    }
}

/// `δa(e) = a(head e) − a(tail e)`.
pub fn delta(g: &Multigraph, a: &ZeroCochain) -> OneCochain {
    let ell = a.ell();
    OneCochain {
        ell,
        values: g
            .edges()
            .map(|e| {
                let (t, h) = g.ends(e);
                modular::sub(a.get(h), a.get(t), ell)
            })
            .collect(),
    }
}

/// `∂b(v) = Σ b(d)` over darts `d` with head `v`.
pub fn boundary(g: &Multigraph, b: &OneCochain) -> ZeroCochain {
    let ell = b.ell();
    let mut values = vec![0u32; g.num_vertices()];
    for d in 0..g.num_darts() {
        let h = g.head(d);
        values[h] = modular::add(values[h], b.at_dart(d), ell);
    }
    ZeroCochain { ell, values }
}

pub fn pair0(a1: &ZeroCochain, a2: &ZeroCochain) -> Residue {
    let ell = a1.ell();
    let s = a1
        .values()
        .iter()
        .zip(a2.values())
        .fold(0, |acc, (&x, &y)| modular::add(acc, modular::mul(x, y, ell), ell));
    Residue::new(s as i64, ell)
}

/// Sum over unoriented edges of `b₁(e)·b₂(e)`; the product does not depend
/// on the dart chosen.
pub fn pair1(b1: &OneCochain, b2: &OneCochain) -> Residue {
    let ell = b1.ell();
    let s = b1
        .values()
        .iter()
        .zip(b2.values())
        .fold(0, |acc, (&x, &y)| modular::add(acc, modular::mul(x, y, ell), ell));
    Residue::new(s as i64, ell)
}

/// One cut per tree edge `e`: the coboundary of the indicator of the
/// component of `t ∖ {e}` containing the head of `e`. It takes the value 1 on
/// `e` and vanishes on the other tree edges. Ordered by tree edge id.
pub fn cut_basis(g: &Multigraph, t: &[EdgeId], ell: u32) -> Result<Vec<OneCochain>> {
    check_modulus(ell)?;
    let tree = root_tree(g, t)?;
    let mut sorted = t.to_vec();
    sorted.sort_unstable();
    // subtree membership: the side of e away from the root is a subtree
    let n = g.num_vertices();
    let mut cuts = Vec::with_capacity(sorted.len());
    for &e in &sorted {
        let child = {
            let (a, b) = g.ends(e);
            if tree.parent_dart[a].map(Multigraph::edge_of) == Some(e) {
                a
            } else {
                b
            }
        };
        let mut below = vec![false; n];
        below[child] = true;
        for &v in &tree.order {
            if let Some(pd) = tree.parent_dart[v] {
                if below[g.tail(pd)] {
                    below[v] = true;
                }
            }
        }
        let (_, head) = g.ends(e);
        let sign: i64 = if head == child { 1 } else { -1 };
        let indicator: Vec<i64> = (0..n).map(|v| if below[v] { sign } else { 0 }).collect();
        cuts.push(delta(g, &ZeroCochain::new(ell, &indicator)?));
    }
    Ok(cuts)
}

/// Whether every fundamental circuit sum of `b` vanishes.
pub fn in_image_delta(g: &Multigraph, b: &OneCochain) -> bool {
    let t = spanning_tree(g);
    let circuits = fundamental_circuits(g, &t).expect("spanning_tree returns a spanning tree");
    let ell = b.ell();
    circuits
        .iter()
        .all(|c| c.iter().fold(0, |acc, &d| modular::add(acc, b.at_dart(d), ell)) == 0)
}

/// The potential `a` with `δa = b` and `a(0) = 0`.
pub fn solve_delta(g: &Multigraph, b: &OneCochain) -> Result<ZeroCochain> {
    let ell = b.ell();
    let tree = root_tree(g, &spanning_tree(g))?;
    let mut a = vec![0u32; g.num_vertices()];
    for &v in &tree.order {
        if let Some(pd) = tree.parent_dart[v] {
            a[v] = modular::add(a[g.tail(pd)], b.at_dart(pd), ell);
        }
    }
    let a = ZeroCochain { ell, values: a };
    if delta(g, &a) != *b {
        return Err(Error::NotInImage);
    }
    Ok(a)
}

/// Some `M` with `∂M = d`, supported on the lowest-id spanning tree.
pub fn solve_boundary(g: &Multigraph, d: &ZeroCochain) -> Result<OneCochain> {
    let ell = d.ell();
    let total = d.values().iter().fold(0, |acc, &x| modular::add(acc, x, ell));
    if total != 0 {
        return Err(Error::DegreeObstruction(total));
    }
    check_len(g.num_vertices(), d.values().len())?;
    let tree = root_tree(g, &spanning_tree(g))?;
    let mut acc = vec![0u32; g.num_vertices()];
    let mut values = vec![0u32; g.num_edges()];
    for &v in tree.order.iter().rev() {
        if let Some(pd) = tree.parent_dart[v] {
            // dart pd points into v
            let x = modular::sub(d.get(v), acc[v], ell);
            let p = g.tail(pd);
            acc[p] = modular::sub(acc[p], x, ell);
            let e = Multigraph::edge_of(pd);
            values[e] = if Multigraph::is_forward(pd) { x } else { modular::neg(x, ell) };
        }
    }
    Ok(OneCochain { ell, values })
}

/// All vertex potentials normalised by `a(0) = 0`, as the image of δ: the
/// `ℓ^{#V−1}` elements of `im δ`, in lexicographic order of the potential.
pub fn image_delta(g: &Multigraph, ell: u32) -> Vec<OneCochain> {
    let n = g.num_vertices();
    let count = (ell as usize).pow((n - 1) as u32);
    let mut out = Vec::with_capacity(count);
    let mut x = vec![0i64; n];
    for mut code in 0..count {
        for v in (1..n).rev() {
            x[v] = (code % ell as usize) as i64;
            code /= ell as usize;
        }
        out.push(delta(g, &ZeroCochain::new(ell, &x).expect("modulus checked by caller")));
    }
    out
}

//! Decorated dual graphs `(Γ, M)` and their contractions.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::cochain::{boundary, OneCochain, ZeroCochain};
use crate::error::{Error, Result};
use crate::graph::{
    canonical_form, contract_edges, relabel, CanonicalCode, EdgeId, EdgeLabels, Multigraph, VertexId,
};
use crate::modular::{self, check_modulus};

/// A multigraph with a level `ℓ`, a multiplicity index `M ∈ C¹(Γ; Z/ℓ)` and
/// optional genus labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoratedGraph {
    graph: Multigraph,
    m: OneCochain,
    genus: Vec<Option<u32>>,
}

/// A decorated graph obtained by contracting edges of another one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoratedContraction {
    pub decorated: DecoratedGraph,
    /// Old vertex → new vertex.
    pub vertex_map: Vec<VertexId>,
    /// New edge → old edge.
    pub edge_map: Vec<EdgeId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumInfo {
    pub codimension: usize,
    pub betti1: usize,
    pub genus_sum: Option<u32>,
}

impl DecoratedGraph {
    pub fn new(graph: Multigraph, m: OneCochain, genus: Option<Vec<Option<u32>>>) -> Result<Self> {
        check_modulus(m.ell())?;
        if m.values().len() != graph.num_edges() {
            return Err(Error::LengthMismatch {
                expected: graph.num_edges(),
                got: m.values().len(),
            });
        }
        let genus = genus.unwrap_or_else(|| vec![None; graph.num_vertices()]);
        if genus.len() != graph.num_vertices() {
            return Err(Error::LengthMismatch {
                expected: graph.num_vertices(),
                got: genus.len(),
            });
        }
        Ok(DecoratedGraph { graph, m, genus })
    }

    /// Builds from edges `(tail, head)` and the values of `M` on the
    /// tail → head darts.
    pub fn from_edges(ell: u32, num_vertices: usize, edges: &[(VertexId, VertexId)], m: &[i64]) -> Result<Self> {
        let graph = Multigraph::new(num_vertices, edges)?;
        let m = OneCochain::on(&graph, ell, m)?;
        Self::new(graph, m, None)
    }

    /// The vine with all edges oriented `0 → 1` carrying `m`.
    pub fn vine(ell: u32, m: &[i64]) -> Result<Self> {
        let graph = Multigraph::vine(m.len());
        let m = OneCochain::on(&graph, ell, m)?;
        Self::new(graph, m, None)
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn ell(&self) -> u32 {
        self.m.ell()
    }

    pub fn m(&self) -> &OneCochain {
        &self.m
    }

    pub fn genus(&self) -> &[Option<u32>] {
        &self.genus
    }

    pub fn with_genus(mut self, genus: Vec<u32>) -> Result<Self> {
        if genus.len() != self.graph.num_vertices() {
            return Err(Error::LengthMismatch {
                expected: self.graph.num_vertices(),
                got: genus.len(),
            });
        }
        self.genus = genus.into_iter().map(Some).collect();
        Ok(self)
    }

    pub fn has_genus(&self) -> bool {
        self.genus.iter().all(Option::is_some)
    }

    /// No edge carries `M ≡ 0`.
    pub fn is_faithful(&self) -> bool {
        self.m.values().iter().all(|&x| x != 0)
    }

    pub(crate) fn require_faithful(&self) -> Result<()> {
        match self.m.values().iter().position(|&x| x == 0) {
            Some(e) => Err(Error::NotFaithful(e)),
            None => Ok(()),
        }
    }

    /// Contracts `f`, restricting `M`. Genus labels, when all present, merge
    /// as the sum of the merged labels plus the first Betti number of the
    /// contracted part.
    pub fn contract(&self, f: &[EdgeId]) -> Result<DecoratedContraction> {
        let c = contract_edges(&self.graph, f)?;
        let m = self.m.pull_back(&c.edge_map);
        let n = c.graph.num_vertices();
        let genus = if self.has_genus() {
            let mut sum = vec![0i64; n];
            for v in self.graph.vertices() {
                sum[c.vertex_map[v]] += self.genus[v].unwrap_or(0) as i64 - 1;
            }
            for &e in f {
                let (t, _) = self.graph.ends(e);
                sum[c.vertex_map[t]] += 1;
            }
            // per class: Σ g + #F − #V + 1
            sum.into_iter().map(|s| Some((s + 1) as u32)).collect()
        } else {
            vec![None; n]
        };
        Ok(DecoratedContraction {
            decorated: DecoratedGraph { graph: c.graph, m, genus },
            vertex_map: c.vertex_map,
            edge_map: c.edge_map,
        })
    }

    /// Contracts every edge with `M ≡ 0`.
    pub fn gamma0(&self) -> DecoratedContraction {
        let f: Vec<EdgeId> = self.graph.edges().filter(|&e| self.m.on_edge(e) == 0).collect();
        self.contract(&f).expect("edge ids come from the graph")
    }

    fn exponent_of(&self, p: u32) -> Result<u32> {
        let ell = self.ell();
        if !modular::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        match modular::valuation(ell, p) {
            Some(e) if e > 0 => Ok(e),
            _ => Err(Error::PrimeNotDividing { p, ell }),
        }
    }

    /// Contracts every edge with `p^k | M(e)`; `M ≡ 0` edges always go.
    pub fn gamma_nu(&self, p: u32, k: u32) -> Result<DecoratedContraction> {
        let ep = self.exponent_of(p)?;
        if k == 0 || k > ep {
            return Err(Error::ExponentOutOfRange { k, max: ep });
        }
        let f: Vec<EdgeId> = self
            .graph
            .edges()
            .filter(|&e| match modular::valuation(self.m.on_edge(e), p) {
                None => true,
                Some(v) => v >= k,
            })
            .collect();
        self.contract(&f)
    }

    /// `Γ_p = Γ(ν_p^{e_p})`.
    pub fn gamma_p(&self, p: u32) -> Result<DecoratedContraction> {
        let ep = self.exponent_of(p)?;
        self.gamma_nu(p, ep)
    }

    /// Order `ℓ / gcd(M(e), ℓ)` of the local stabiliser at `e`.
    pub fn stabilizer_order(&self, e: EdgeId) -> Result<u32> {
        self.graph.check_edge(e)?;
        let ell = self.ell();
        Ok(ell / modular::gcd(self.m.on_edge(e) as u64, ell as u64) as u32)
    }

    /// `∂M`.
    pub fn multidegree(&self) -> ZeroCochain {
        boundary(&self.graph, &self.m)
    }

    /// Whether `∂M(v) ≡ k(2g_v − 2 + N_v)` holds at every vertex for the
    /// given labels.
    pub fn satisfies_multidegree(&self, k: i64, genus: &[u32]) -> bool {
        let ell = self.ell();
        let dm = self.multidegree();
        self.graph.vertices().all(|v| {
            let rhs = k * (2 * genus[v] as i64 - 2 + self.graph.degree(v) as i64);
            modular::reduce(rhs, ell) == dm.get(v)
        })
    }

    /// Smallest genus labels solving the multidegree congruence for `k`,
    /// raised where needed so that every vertex is stable
    /// (`2g − 2 + N > 0`). `None` when some vertex has no solution.
    pub fn genus_labeling(&self, k: i64) -> Option<Vec<u32>> {
        let ell = self.ell();
        let k = modular::reduce(k, ell) as i64;
        let dm = self.multidegree();
        self.graph
            .vertices()
            .map(|v| {
                let n = self.graph.degree(v) as i64;
                let ok = |g: u32| modular::reduce(k * (2 * g as i64 - 2 + n), ell) == dm.get(v);
                // solutions are periodic with period dividing ℓ
                let first = (0..ell).find(|&g| ok(g))?;
                if 2 * first as i64 - 2 + n > 0 {
                    return Some(first);
                }
                (first + 1..=first + ell).find(|&g| ok(g) && 2 * g as i64 - 2 + n > 0)
            })
            .collect()
    }

    pub fn is_stable(&self) -> bool {
        self.graph.vertices().all(|v| match self.genus[v] {
            Some(g) => 2 * g as i64 - 2 + self.graph.degree(v) as i64 > 0,
            None => false,
        })
    }

    /// `Σ g_v + b₁(Γ)`.
    pub fn total_genus(&self) -> Result<u32> {
        let mut s = 0;
        for (v, g) in self.genus.iter().enumerate() {
            s += g.ok_or(Error::MissingGenus(v))?;
        }
        Ok(s + self.graph.betti1() as u32)
    }

    pub fn stratum_info(&self) -> StratumInfo {
        StratumInfo {
            codimension: self.graph.num_edges(),
            betti1: self.graph.betti1(),
            genus_sum: self.genus.iter().copied().sum(),
        }
    }

    /// The image of `M ↦ cM`.
    pub fn scaled(&self, c: u32) -> Self {
        DecoratedGraph {
            graph: self.graph.clone(),
            m: self.m.scale(c),
            genus: self.genus.clone(),
        }
    }

    /// Canonical code of `(Γ, M)` up to isomorphism; a reversed dart carries
    /// `−M`. Genus labels are ignored.
    pub fn canonical_code(&self) -> Result<CanonicalCode> {
        Ok(self.canonical()?.1)
    }

    /// The canonical representative of the isomorphism class together with
    /// its code. Genus labels are dropped.
    pub fn canonical(&self) -> Result<(DecoratedGraph, CanonicalCode)> {
        let ell = self.ell();
        let reverse = move |x: u32| modular::neg(x, ell);
        let labels = EdgeLabels {
            values: self.m.values(),
            reverse: &reverse,
        };
        let form = canonical_form(&self.graph, Some(labels), crate::graph::DEFAULT_VERTEX_BOUND)?;
        let (graph, values) = relabel(&self.graph, &form.order, Some(labels));
        let m = OneCochain::from_reduced(ell, values);
        let genus = vec![None; graph.num_vertices()];
        Ok((DecoratedGraph { graph, m, genus }, form.code))
    }

    /// `M` on a two-vertex graph as a sorted tuple, normalised by
    /// orientation to the lexicographically smaller of `M` and `−M`.
    pub fn vine_notation(&self) -> Option<Vec<u32>> {
        if self.graph.num_vertices() != 2 || self.graph.edges().any(|e| self.graph.is_loop(e)) {
            return None;
        }
        let ell = self.ell();
        let mut fwd: Vec<u32> = self
            .graph
            .edges()
            .map(|e| {
                let x = self.m.on_edge(e);
                if self.graph.ends(e).0 == 0 {
                    x
                } else {
                    modular::neg(x, ell)
                }
            })
            .collect();
        let mut bwd: Vec<u32> = fwd.iter().map(|&x| modular::neg(x, ell)).collect();
        fwd.sort_unstable();
        bwd.sort_unstable();
        Some(fwd.min(bwd))
    }
}

/// `ℓ^{2g}`, the number of `ℓ`-th roots of a line bundle on a genus `g`
/// curve.
pub fn root_count(g: u32, ell: u32) -> BigUint {
    BigUint::from(ell).pow(2 * g)
}

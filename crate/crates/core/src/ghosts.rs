//! Ghost automorphisms: lifting, the ghost group and its quasireflections,
//! ages and the smoothness criteria.

use std::fmt;

use num_bigint::BigUint;
use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::cochain::{cut_basis, in_image_delta, EvenFunction};
use crate::decorated::{DecoratedContraction, DecoratedGraph};
use crate::error::{Error, Result};
use crate::graph::{
    contract_edges, contract_loops_and_bridges, is_tree_like, separating_edges, spanning_tree, spanning_tree_with,
    EdgeId, Multigraph, VertexId,
};
use crate::modular::{self, rank_mod_prime, require_prime, solve_mod_prime};

/// Largest group expanded element by element.
pub const EXPANSION_BOUND: u128 = 10_000_000;
/// Largest potential space searched for the minimal age.
pub const SEARCH_BOUND: u128 = 1_000_000_000_000;

fn check_bound(what: &'static str, ell: u32, rank: usize, bound: u128) -> Result<()> {
    let size = (ell as u128).checked_pow(rank as u32).unwrap_or(u128::MAX);
    if size > bound {
        return Err(Error::SizeBound { what, size, bound });
    }
    Ok(())
}

fn check_length(d: &DecoratedGraph, a: &EvenFunction) -> Result<()> {
    if a.values().len() != d.graph().num_edges() {
        return Err(Error::LengthMismatch {
            expected: d.graph().num_edges(),
            got: a.values().len(),
        });
    }
    if a.ell() != d.ell() {
        return Err(Error::ModulusMismatch(a.ell(), d.ell()));
    }
    Ok(())
}

/// Whether `a` lifts to an automorphism of the root: `aM ∈ im δ`.
pub fn lifts(a: &EvenFunction, d: &DecoratedGraph) -> Result<bool> {
    require_prime(d.ell())?;
    d.require_faithful()?;
    check_length(d, a)?;
    Ok(in_image_delta(d.graph(), &a.times(d.m())))
}

/// A subgroup of even functions on the edges of `Γ₀`, given by an
/// independent generating family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GhostGroup {
    gamma0: DecoratedContraction,
    generators: Vec<EvenFunction>,
}

impl GhostGroup {
    /// `Γ₀` with its maps back to the input graph.
    pub fn gamma0(&self) -> &DecoratedContraction {
        &self.gamma0
    }

    pub fn generators(&self) -> &[EvenFunction] {
        &self.generators
    }

    pub fn ell(&self) -> u32 {
        self.gamma0.decorated.ell()
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn order(&self) -> BigUint {
        BigUint::from(self.ell()).pow(self.rank() as u32)
    }

    /// Membership for an even function on the edges of `Γ₀`.
    pub fn contains(&self, a: &EvenFunction) -> bool {
        let rows: Vec<Vec<u32>> = self.generators.iter().map(|g| g.values().to_vec()).collect();
        solve_mod_prime(&rows, a.values(), self.ell()).is_some()
    }

    /// Every element, in lexicographic order of the coefficient vector.
    pub fn elements(&self) -> Result<Vec<EvenFunction>> {
        let ell = self.ell();
        check_bound("ghost group elements", ell, self.rank(), EXPANSION_BOUND)?;
        let edges = self.gamma0.decorated.graph().num_edges();
        let mut out = vec![EvenFunction::zero(edges, ell)];
        // out is ordered by coefficient vectors with the last generator
        // varying fastest once every generator has been folded in
        for g in &self.generators {
            let mut next = Vec::with_capacity(out.len() * ell as usize);
            for base in &out {
                let mut cur = base.clone();
                for _ in 0..ell {
                    next.push(cur.clone());
                    cur = cur.add(g);
                }
            }
            out = next;
        }
        Ok(out)
    }
}

/// All even functions `a` on `Γ₀` with `aM ∈ im δ₀`, generated by the cut
/// basis divided pointwise by `M`.
pub fn ghost_group(d: &DecoratedGraph) -> Result<GhostGroup> {
    let ell = d.ell();
    require_prime(ell)?;
    let gamma0 = d.gamma0();
    let g0 = &gamma0.decorated;
    let inv: Vec<u32> = g0
        .m()
        .values()
        .iter()
        .map(|&x| modular::inverse(x, ell).expect("faithful values are units"))
        .collect();
    let t = spanning_tree(g0.graph());
    let generators = cut_basis(g0.graph(), &t, ell)?
        .into_iter()
        .map(|cut| {
            let vals: Vec<u32> = cut
                .values()
                .iter()
                .zip(&inv)
                .map(|(&c, &i)| modular::mul(c, i, ell))
                .collect();
            EvenFunction::from_reduced(ell, vals)
        })
        .collect();
    Ok(GhostGroup { gamma0, generators })
}

/// The subgroup generated by quasireflections: functions supported on one
/// separating edge of `Γ₀`.
pub fn qr_subgroup(d: &DecoratedGraph) -> Result<GhostGroup> {
    let ell = d.ell();
    require_prime(ell)?;
    let gamma0 = d.gamma0();
    let edges = gamma0.decorated.graph().num_edges();
    let generators = separating_edges(gamma0.decorated.graph())
        .into_iter()
        .map(|e| {
            let mut v = vec![0; edges];
            v[e] = 1;
            EvenFunction::from_reduced(ell, v)
        })
        .collect();
    Ok(GhostGroup { gamma0, generators })
}

/// `Σ rep(a(e)) / ℓ` over the edges on which `a` is defined. Functions in a
/// ghost group vanish on loops, so loops never contribute.
pub fn age(a: &EvenFunction) -> Ratio<u64> {
    let s: u64 = a.values().iter().map(|&x| x as u64).sum();
    Ratio::new(s, a.ell() as u64)
}

/// Minimal age over the non-trivial ghost automorphisms of a stratum;
/// `Infinite` when there are none.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StratumAge {
    Finite(Ratio<u64>),
    Infinite,
}

impl StratumAge {
    pub fn is_junior(self) -> bool {
        matches!(self, StratumAge::Finite(r) if r < Ratio::from_integer(1))
    }
}

impl fmt::Display for StratumAge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StratumAge::Finite(r) => write!(f, "{r}"),
            StratumAge::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for StratumAge {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumAgeReport {
    pub age: StratumAge,
    /// `Γ₀` with loops and separating edges contracted.
    pub reduced: DecoratedGraph,
    /// A minimal-age element on the edges of `reduced`.
    pub reduced_witness: Option<EvenFunction>,
    /// The same element on the edges of the input, zero elsewhere.
    pub witness: Option<EvenFunction>,
}

/// `Γ₀` with loops and separating edges contracted, and its edge map back
/// to the input graph.
pub fn reduced_gamma0(d: &DecoratedGraph) -> (DecoratedGraph, Vec<EdgeId>) {
    let c0 = d.gamma0();
    let c1 = contract_loops_and_bridges(c0.decorated.graph());
    let m = c0.decorated.m().pull_back(&c1.edge_map);
    let edge_map = c1.edge_map.iter().map(|&e| c0.edge_map[e]).collect();
    let reduced = DecoratedGraph::new(c1.graph, m, None).expect("contraction keeps lengths consistent");
    (reduced, edge_map)
}

/// Depth-first search over vertex potentials `x` (root fixed at 0) of a
/// loopless faithful graph, minimising `Σ rep(δx(e)·M(e)⁻¹)` among `x ≠ 0`.
/// Only totals strictly below `limit` are reported.
struct AgeSearch<'a> {
    ell: u32,
    order: Vec<VertexId>,
    /// Edges closing at each BFS position: (other vertex, edge, incoming).
    closing: Vec<Vec<(VertexId, EdgeId, bool)>>,
    inv: Vec<u32>,
    x: Vec<u32>,
    best: u64,
    best_x: Option<Vec<u32>>,
    g: &'a Multigraph,
}

impl<'a> AgeSearch<'a> {
    fn new(d: &'a DecoratedGraph, limit: u64) -> Self {
        let g = d.graph();
        let ell = d.ell();
        let n = g.num_vertices();
        let mut order = vec![0];
        let mut pos = vec![usize::MAX; n];
        pos[0] = 0;
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            i += 1;
            for &dart in g.outgoing(v) {
                let w = g.head(dart);
                if pos[w] == usize::MAX {
                    pos[w] = order.len();
                    order.push(w);
                }
            }
        }
        let mut closing = vec![Vec::new(); n];
        for e in g.edges() {
            let (t, h) = g.ends(e);
            if pos[t] < pos[h] {
                closing[pos[h]].push((t, e, true));
            } else if pos[h] < pos[t] {
                closing[pos[t]].push((h, e, false));
            }
        }
        let inv = d
            .m()
            .values()
            .iter()
            .map(|&x| modular::inverse(x, ell).expect("faithful values are units"))
            .collect();
        AgeSearch {
            ell,
            order,
            closing,
            inv,
            x: vec![0; n],
            best: limit,
            best_x: None,
            g,
        }
    }

    fn run(&mut self) {
        self.descend(1, 0, false);
    }

    fn descend(&mut self, i: usize, partial: u64, nonzero: bool) {
        if partial >= self.best {
            return;
        }
        if i == self.order.len() {
            if nonzero {
                self.best = partial;
                self.best_x = Some(self.x.clone());
            }
            return;
        }
        let v = self.order[i];
        for val in 0..self.ell {
            self.x[v] = val;
            let mut s = partial;
            for &(w, e, incoming) in &self.closing[i] {
                // δx(e) = x(head) − x(tail)
                let dx = if incoming {
                    modular::sub(val, self.x[w], self.ell)
                } else {
                    modular::sub(self.x[w], val, self.ell)
                };
                s += modular::mul(dx, self.inv[e], self.ell) as u64;
            }
            self.descend(i + 1, s, nonzero || val != 0);
        }
        self.x[v] = 0;
    }

    fn element(&self, x: &[u32]) -> EvenFunction {
        let vals = self
            .g
            .edges()
            .map(|e| {
                let (t, h) = self.g.ends(e);
                modular::mul(modular::sub(x[h], x[t], self.ell), self.inv[e], self.ell)
            })
            .collect();
        EvenFunction::from_reduced(self.ell, vals)
    }
}

/// Reduced graph, its edge map and the best `(Σ rep a, a)` found.
type SearchOutcome = (DecoratedGraph, Vec<EdgeId>, Option<(u64, EvenFunction)>);

fn search(d: &DecoratedGraph, limit: u64) -> Result<SearchOutcome> {
    let ell = d.ell();
    require_prime(ell)?;
    let (reduced, edge_map) = reduced_gamma0(d);
    check_bound("age search space", ell, reduced.graph().num_vertices() - 1, SEARCH_BOUND)?;
    let mut s = AgeSearch::new(&reduced, limit);
    s.run();
    let found = s.best_x.clone().map(|x| (s.best, s.element(&x)));
    Ok((reduced, edge_map, found))
}

/// Minimal age of a non-trivial element of `G(Γ₀′)`, where `Γ₀′` is `Γ₀`
/// with loops and separating edges contracted.
pub fn stratum_age(d: &DecoratedGraph) -> Result<StratumAgeReport> {
    let (reduced, edge_map, found) = search(d, u64::MAX)?;
    let ell = d.ell();
    Ok(match found {
        None => StratumAgeReport {
            age: StratumAge::Infinite,
            reduced,
            reduced_witness: None,
            witness: None,
        },
        Some((sum, a)) => {
            let mut full = vec![0u32; d.graph().num_edges()];
            for (e, &old) in edge_map.iter().enumerate() {
                full[old] = a.on_edge(e);
            }
            StratumAgeReport {
                age: StratumAge::Finite(Ratio::new(sum, ell as u64)),
                reduced,
                reduced_witness: Some(a),
                witness: Some(EvenFunction::from_reduced(ell, full)),
            }
        }
    })
}

/// Whether some ghost automorphism has age in `(0, 1)`.
pub fn is_junior(d: &DecoratedGraph) -> Result<bool> {
    Ok(search(d, d.ell() as u64)?.2.is_some())
}

/// Whether the ghost group is generated by quasireflections: every `Γ_p`
/// is tree-like (for prime `ℓ`, `Γ_p = Γ₀`).
pub fn generated_by_qr(d: &DecoratedGraph) -> bool {
    modular::factorize(d.ell()).into_iter().all(|(p, _)| {
        let gp = d.gamma_p(p).expect("p divides ℓ");
        is_tree_like(gp.decorated.graph())
    })
}

/// The sequences `α_p^k` and `β_p^k` for `k = 1..=e_p` (index `k − 1`).
pub fn alpha_beta(d: &DecoratedGraph, p: u32) -> Result<(Vec<u32>, Vec<u32>)> {
    let ell = d.ell();
    let ep = match modular::valuation(ell, p) {
        Some(e) if e > 0 && modular::is_prime(p) => e,
        _ => return Err(Error::PrimeNotDividing { p, ell }),
    };
    // chain[j] = (#V, #E_sep) of Γ(ν_p^j), with Γ(ν_p^0) the point
    let mut chain = vec![(1u32, 0u32)];
    for j in 1..=ep {
        let g = d.gamma_nu(p, j)?.decorated;
        chain.push((g.graph().num_vertices() as u32, separating_edges(g.graph()).len() as u32));
    }
    let mut alpha = Vec::with_capacity(ep as usize);
    let mut beta = Vec::with_capacity(ep as usize);
    for k in 1..=ep {
        let hi = chain[(ep - k + 1) as usize];
        let lo = chain[(ep - k) as usize];
        alpha.push(hi.0 - lo.0);
        beta.push(hi.1 - lo.1);
    }
    Ok((alpha, beta))
}

/// `|G| = ∏_p ∏_k p^{k·α_p^k}`, valid for any level.
pub fn ghost_group_order(d: &DecoratedGraph) -> BigUint {
    let mut order = BigUint::from(1u32);
    for (p, _) in modular::factorize(d.ell()) {
        let (alpha, _) = alpha_beta(d, p).expect("p divides ℓ");
        for (i, &a) in alpha.iter().enumerate() {
            order *= BigUint::from(p).pow((i as u32 + 1) * a);
        }
    }
    order
}

/// `|QR| = ∏_p ∏_k p^{k·β_p^k}`.
pub fn qr_order(d: &DecoratedGraph) -> BigUint {
    let mut order = BigUint::from(1u32);
    for (p, _) in modular::factorize(d.ell()) {
        let (_, beta) = alpha_beta(d, p).expect("p divides ℓ");
        for (i, &b) in beta.iter().enumerate() {
            order *= BigUint::from(p).pow((i as u32 + 1) * b);
        }
    }
    order
}

/// A contraction of `Γ₀` onto an `n`-vine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VineWitness {
    /// Vertices of `Γ₀` on the side not containing vertex 0.
    pub side: Vec<VertexId>,
    /// Edges of `Γ₀` joining the two sides.
    pub crossing: Vec<EdgeId>,
    pub n: usize,
    /// The vine itself, with `M` restricted.
    pub vine: DecoratedGraph,
}

/// Unless `Γ₀` is tree-like, splits it along the lowest non-loop,
/// non-separating edge `e`: removing `e` from a spanning tree through `e`
/// leaves two subtrees, and contracting everything inside each gives a vine
/// with at least two edges.
pub fn vine_witness(d: &DecoratedGraph) -> Option<VineWitness> {
    let c0 = d.gamma0();
    let g0 = &c0.decorated;
    let g = g0.graph();
    let bridges = separating_edges(g);
    let e = g.edges().find(|&e| !g.is_loop(e) && bridges.binary_search(&e).is_err())?;
    let tree = spanning_tree_with(g, &[e]);
    let rest: Vec<EdgeId> = tree.iter().copied().filter(|&f| f != e).collect();
    let halves = contract_edges(g, &rest).expect("tree edges belong to the graph");
    let side_id = halves.vertex_map[0];
    let side: Vec<VertexId> = g.vertices().filter(|&v| halves.vertex_map[v] != side_id).collect();
    let crossing: Vec<EdgeId> = g
        .edges()
        .filter(|&f| {
            let (t, h) = g.ends(f);
            (halves.vertex_map[t] == side_id) != (halves.vertex_map[h] == side_id)
        })
        .collect();
    let inside: Vec<EdgeId> = g.edges().filter(|f| crossing.binary_search(f).is_err()).collect();
    let vine = g0.contract(&inside).expect("edge ids come from the graph").decorated;
    Some(VineWitness {
        side,
        n: crossing.len(),
        crossing,
        vine,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportReport {
    /// `a` is nonzero on every edge.
    pub supported: bool,
    pub support_size: usize,
    pub age: Ratio<u64>,
    pub inverse: EvenFunction,
    pub inverse_age: Ratio<u64>,
}

impl SupportReport {
    /// `age a + age a⁻¹` equals the support size.
    pub fn inverse_identity_holds(&self) -> bool {
        self.age + self.inverse_age == Ratio::from_integer(self.support_size as u64)
    }
}

/// Support data of an element of the ghost group of a faithful graph.
pub fn supported_check(a: &EvenFunction, d: &DecoratedGraph) -> Result<SupportReport> {
    d.require_faithful()?;
    check_length(d, a)?;
    let support_size = a.support().len();
    let inverse = a.inverse();
    Ok(SupportReport {
        supported: support_size == d.graph().num_edges(),
        support_size,
        age: age(a),
        inverse_age: age(&inverse),
        inverse,
    })
}

/// A cover of `E(Γ₀)` by edge sets, each standing for the contraction of
/// `Γ₀` that keeps exactly those edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverDecomposition {
    pub parts: Vec<DecoratedContraction>,
    /// Generators of each part's ghost group, extended by zero to `Γ₀`.
    pub generators: Vec<Vec<EvenFunction>>,
    ell: u32,
}

impl CoverDecomposition {
    /// Writes `a` (on the edges of `Γ₀`) as a sum of one element per part.
    pub fn decompose(&self, a: &EvenFunction) -> Option<Vec<EvenFunction>> {
        let flat: Vec<Vec<u32>> = self.generators.iter().flatten().map(|g| g.values().to_vec()).collect();
        let coeffs = solve_mod_prime(&flat, a.values(), self.ell)?;
        let mut coeffs = coeffs.into_iter();
        Some(
            self.generators
                .iter()
                .map(|gens| {
                    gens.iter().fold(EvenFunction::zero(a.values().len(), self.ell), |acc, g| {
                        acc.add(&g.scale(coeffs.next().expect("one coefficient per generator")))
                    })
                })
                .collect(),
        )
    }
}

/// For a faithful `d`, checks that the ghost group splits as the direct sum
/// of the parts' ghost groups: the parts must cover every edge, and the rank
/// `#V − 1` must equal the sum of the parts' ranks and be attained. Returns
/// `None` when the rank condition fails.
pub fn cover_decompose(d: &DecoratedGraph, parts: &[Vec<EdgeId>]) -> Result<Option<CoverDecomposition>> {
    let ell = d.ell();
    require_prime(ell)?;
    d.require_faithful()?;
    let g = d.graph();
    let mut covered = vec![false; g.num_edges()];
    for part in parts {
        for &e in part {
            g.check_edge(e)?;
            covered[e] = true;
        }
    }
    if let Some(e) = covered.iter().position(|&c| !c) {
        return Err(Error::NotCovering(e));
    }
    let mut contractions = Vec::with_capacity(parts.len());
    let mut generators = Vec::with_capacity(parts.len());
    let mut rank_sum = 0;
    for part in parts {
        let drop: Vec<EdgeId> = g.edges().filter(|e| !part.contains(e)).collect();
        let c = d.contract(&drop)?;
        let group = ghost_group(&c.decorated)?;
        rank_sum += group.rank();
        let extended: Vec<EvenFunction> = group
            .generators()
            .iter()
            .map(|gen| {
                let mut v = vec![0u32; g.num_edges()];
                for (e, &old) in c.edge_map.iter().enumerate() {
                    v[old] = gen.on_edge(e);
                }
                EvenFunction::from_reduced(ell, v)
            })
            .collect();
        generators.push(extended);
        contractions.push(c);
    }
    let total = g.num_vertices() - 1;
    let flat: Vec<Vec<u32>> = generators.iter().flatten().map(|g| g.values().to_vec()).collect();
    if rank_sum != total || rank_mod_prime(&flat, ell) != total {
        return Ok(None);
    }
    Ok(Some(CoverDecomposition {
        parts: contractions,
        generators,
        ell,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn even(ell: u32, v: &[i64]) -> EvenFunction {
        EvenFunction::new(ell, v).unwrap()
    }

    fn finite(n: u64, d: u64) -> StratumAge {
        StratumAge::Finite(Ratio::new(n, d))
    }

    #[test]
    fn lift_examples() {
        let d = DecoratedGraph::vine(3, &[1, 1]).unwrap();
        assert!(lifts(&even(3, &[1, 1]), &d).unwrap());
        assert!(!lifts(&even(3, &[1, 2]), &d).unwrap());
        assert!(lifts(&even(3, &[0, 0]), &d).unwrap());
        let bad = DecoratedGraph::vine(3, &[1, 0]).unwrap();
        assert_eq!(lifts(&even(3, &[1, 1]), &bad), Err(Error::NotFaithful(1)));
    }

    #[test]
    fn group_examples() {
        let d = DecoratedGraph::vine(5, &[1, 2]).unwrap();
        let g = ghost_group(&d).unwrap();
        let mut elems: Vec<Vec<u32>> = g.elements().unwrap().iter().map(|a| a.values().to_vec()).collect();
        elems.sort();
        let mut expect: Vec<Vec<u32>> = (0..5).map(|c| vec![c, 3 * c % 5]).collect();
        expect.sort();
        assert_eq!(elems, expect);

        let lp = DecoratedGraph::from_edges(5, 1, &[(0, 0)], &[2]).unwrap();
        assert_eq!(ghost_group(&lp).unwrap().order(), BigUint::from(1u32));

        let path = DecoratedGraph::from_edges(3, 3, &[(0, 1), (1, 2)], &[1, 2]).unwrap();
        let g = ghost_group(&path).unwrap();
        let q = qr_subgroup(&path).unwrap();
        assert_eq!(g.order(), q.order());
        assert_eq!(g.order(), BigUint::from(9u32));
        assert_eq!(qr_subgroup(&DecoratedGraph::vine(5, &[1, 1, 1]).unwrap()).unwrap().rank(), 0);
    }

    #[test]
    fn barbell_quasireflection() {
        let edges = [(0, 1), (0, 1), (1, 2), (2, 3), (2, 3)];
        let d = DecoratedGraph::from_edges(5, 4, &edges, &[1, 1, 1, 1, 1]).unwrap();
        let q = qr_subgroup(&d).unwrap();
        assert_eq!(q.generators(), &[even(5, &[0, 0, 1, 0, 0])]);
        let g = ghost_group(&d).unwrap();
        assert!(q.generators().iter().all(|a| g.contains(a)));
    }

    #[test]
    fn ages() {
        assert_eq!(age(&even(3, &[1, 1])), Ratio::new(2, 3));
        assert_eq!(age(&even(5, &[1, 1, 2])), Ratio::new(4, 5));
        assert_eq!(age(&even(5, &[0, 0])), Ratio::from_integer(0));
    }

    #[test]
    fn stratum_ages() {
        let senior = DecoratedGraph::vine(5, &[1, 4]).unwrap();
        assert_eq!(stratum_age(&senior).unwrap().age, finite(1, 1));
        assert!(!is_junior(&senior).unwrap());
        let junior = DecoratedGraph::vine(5, &[1, 3]).unwrap();
        let r = stratum_age(&junior).unwrap();
        assert_eq!(r.age, finite(3, 5));
        assert!(r.age.is_junior());
        assert!(is_junior(&junior).unwrap());
        let w = r.witness.unwrap();
        assert!(lifts(&w, &junior).unwrap());
        assert_eq!(age(&w), Ratio::new(3, 5));
        let v3 = DecoratedGraph::vine(5, &[1, 1, 3]).unwrap();
        assert_eq!(stratum_age(&v3).unwrap().age, finite(4, 5));
        let tree = DecoratedGraph::from_edges(5, 3, &[(0, 1), (1, 2), (2, 2)], &[1, 2, 3]).unwrap();
        assert_eq!(stratum_age(&tree).unwrap().age, StratumAge::Infinite);
        assert_eq!(stratum_age(&DecoratedGraph::vine(3, &[1, 1]).unwrap()).unwrap().age, finite(2, 3));
        assert!(stratum_age(&DecoratedGraph::vine(4, &[1, 1]).unwrap()).is_err());
    }

    #[test]
    fn qr_generation() {
        for ell in [2, 3, 5, 7] {
            assert!(!generated_by_qr(&DecoratedGraph::vine(ell, &[1, 1]).unwrap()));
        }
        let path = DecoratedGraph::from_edges(5, 3, &[(0, 1), (1, 2)], &[1, 2]).unwrap();
        assert!(generated_by_qr(&path));
        // Γ₂ contracts both edges, Γ₃ keeps the 2-vine
        let d = DecoratedGraph::vine(6, &[2, 2]).unwrap();
        assert_eq!(d.gamma_p(2).unwrap().decorated.graph().num_vertices(), 1);
        assert_eq!(d.gamma_p(3).unwrap().decorated.graph().num_edges(), 2);
        assert!(!generated_by_qr(&d));
    }

    #[test]
    fn alpha_beta_examples() {
        let d = DecoratedGraph::vine(5, &[1, 2]).unwrap();
        assert_eq!(alpha_beta(&d, 5).unwrap(), (vec![1], vec![0]));
        let d = DecoratedGraph::vine(4, &[1, 1]).unwrap();
        assert_eq!(alpha_beta(&d, 2).unwrap(), (vec![0, 1], vec![0, 0]));
        assert_eq!(ghost_group_order(&d), BigUint::from(4u32));
        let d = DecoratedGraph::vine(4, &[2, 2]).unwrap();
        assert_eq!(alpha_beta(&d, 2).unwrap(), (vec![1, 0], vec![0, 0]));
        assert_eq!(ghost_group_order(&d), BigUint::from(2u32));
        assert!(alpha_beta(&d, 3).is_err());
        let tree = DecoratedGraph::from_edges(12, 3, &[(0, 1), (1, 2)], &[2, 3]).unwrap();
        for p in [2, 3] {
            let (a, b) = alpha_beta(&tree, p).unwrap();
            assert_eq!(a, b);
        }
        assert_eq!(qr_order(&tree), ghost_group_order(&tree));
        assert_eq!(qr_order(&tree), BigUint::from(24u32));
    }

    #[test]
    fn vine_witnesses() {
        let d = DecoratedGraph::vine(5, &[1, 2]).unwrap();
        let w = vine_witness(&d).unwrap();
        assert_eq!((w.n, w.side.clone()), (2, vec![1]));
        let theta = DecoratedGraph::vine(5, &[1, 2, 3]).unwrap();
        assert_eq!(vine_witness(&theta).unwrap().n, 3);
        let tree = DecoratedGraph::from_edges(5, 2, &[(0, 1), (1, 1)], &[1, 2]).unwrap();
        assert!(vine_witness(&tree).is_none());
        let square = DecoratedGraph::from_edges(5, 4, &[(0, 1), (1, 2), (2, 3), (3, 0)], &[1, 1, 1, 1]).unwrap();
        let w = vine_witness(&square).unwrap();
        assert_eq!(w.n, 2);
        assert_eq!(w.vine.graph().num_vertices(), 2);
    }

    #[test]
    fn support_identity() {
        let d = DecoratedGraph::vine(5, &[1, 3]).unwrap();
        let r = supported_check(&even(5, &[1, 3]), &d).unwrap();
        assert!(r.supported);
        assert_eq!(r.inverse.values(), &[4, 2]);
        assert_eq!((r.age, r.inverse_age), (Ratio::new(4, 5), Ratio::new(6, 5)));
        assert!(r.inverse_identity_holds());
        let r = supported_check(&even(5, &[1, 0]), &d).unwrap();
        assert!(!r.supported);
        let d = DecoratedGraph::vine(3, &[1, 1]).unwrap();
        let r = supported_check(&even(3, &[1, 1]), &d).unwrap();
        assert_eq!(r.age + r.inverse_age, Ratio::from_integer(2));
    }

    #[test]
    fn covers() {
        let chain = DecoratedGraph::from_edges(5, 3, &[(0, 1), (0, 1), (1, 2), (1, 2)], &[1, 2, 3, 4]).unwrap();
        let cover = cover_decompose(&chain, &[vec![0, 1], vec![2, 3]]).unwrap().unwrap();
        let group = ghost_group(&chain).unwrap();
        for a in group.elements().unwrap() {
            let parts = cover.decompose(&a).unwrap();
            let sum = parts.iter().fold(EvenFunction::zero(4, 5), |acc, p| acc.add(p));
            assert_eq!(sum, a);
        }
        // two 2-vines of rank 1 cannot carry the rank 3 group of a 4-cycle
        let square = DecoratedGraph::from_edges(5, 4, &[(0, 1), (1, 2), (2, 3), (3, 0)], &[1, 2, 3, 4]).unwrap();
        assert!(cover_decompose(&square, &[vec![0, 1], vec![2, 3]]).unwrap().is_none());
        assert!(cover_decompose(&square, &[vec![0, 1]]).is_err());
        let whole = cover_decompose(&square, &[vec![0, 1, 2, 3]]).unwrap().unwrap();
        assert_eq!(whole.generators[0].len(), 3);
    }
}

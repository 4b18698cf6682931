//! Enumeration of junior strata for prime levels, up to isomorphism of
//! decorated graphs.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::cochain::{EvenFunction, OneCochain};
use crate::decorated::{DecoratedContraction, DecoratedGraph};
use crate::error::{Error, Result};
use crate::ghosts::{is_junior, reduced_gamma0, stratum_age, StratumAge};
use crate::graph::{
    enumerate_base_graphs, separating_edges, vertex_automorphisms, CanonicalCode, EdgeId, Multigraph, UnionFind,
    VertexId, MAX_ENUMERATION_EDGES,
};
use crate::modular;

/// Largest number of raw decorations `(ℓ − 1)^{#E}` scanned per graph.
pub const DECORATION_BOUND: u128 = 10_000_000;

/// One isomorphism class of faithful decorations of a fixed graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecorationClass {
    pub decorated: DecoratedGraph,
    /// Number of decorations of the graph isomorphic to this one.
    pub orbit_size: u64,
}

/// Parallel classes `u < v` with their edges, in increasing `(u, v)`.
fn parallel_classes(g: &Multigraph) -> Vec<((VertexId, VertexId), Vec<EdgeId>)> {
    let mut classes: BTreeMap<(VertexId, VertexId), Vec<EdgeId>> = BTreeMap::new();
    for e in g.edges() {
        let (t, h) = g.ends(e);
        classes.entry((t.min(h), t.max(h))).or_default().push(e);
    }
    classes.into_iter().collect()
}

/// Non-decreasing sequences of length `len` over `1..ell`.
fn multisets(len: usize, ell: u32) -> Vec<Vec<u32>> {
    fn rec(len: usize, lo: u32, ell: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for x in lo..ell {
            cur.push(x);
            rec(len, x, ell, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, 1, ell, &mut Vec::with_capacity(len), &mut out);
    out
}

fn multinomial(values: &[u32]) -> u64 {
    let mut result: u64 = 1;
    let mut placed: u64 = 0;
    let mut i = 0;
    while i < values.len() {
        let j = (i..values.len()).find(|&j| values[j] != values[i]).unwrap_or(values.len());
        for c in 1..=(j - i) as u64 {
            placed += 1;
            result = result * placed / c;
        }
        i = j;
    }
    result
}

fn check_base(g: &Multigraph) -> Result<()> {
    if let Some(e) = g.edges().find(|&e| g.is_loop(e)) {
        return Err(Error::HasLoop(e));
    }
    if let Some(&e) = separating_edges(g).first() {
        return Err(Error::HasBridge(e));
    }
    Ok(())
}

/// Every faithful decoration of a loopless, bridgeless `g` up to the
/// automorphisms of `g` (which act on darts, a reversed dart negating `M`).
/// Each parallel class `u < v` carries a sorted multiset of values on its
/// `u → v` darts; a decoration is kept when its multiset vector is minimal
/// among its images under the vertex automorphisms.
pub fn enumerate_decorations(g: &Multigraph, ell: u32) -> Result<Vec<DecorationClass>> {
    modular::require_prime(ell)?;
    check_base(g)?;
    let raw = ((ell - 1) as u128).checked_pow(g.num_edges() as u32).unwrap_or(u128::MAX);
    if raw > DECORATION_BOUND {
        return Err(Error::SizeBound {
            what: "decorations",
            size: raw,
            bound: DECORATION_BOUND,
        });
    }
    let classes = parallel_classes(g);
    let index: BTreeMap<(VertexId, VertexId), usize> =
        classes.iter().enumerate().map(|(i, (k, _))| (*k, i)).collect();
    let autos = vertex_automorphisms(g);
    let choices: Vec<Vec<Vec<u32>>> = classes.iter().map(|(_, es)| multisets(es.len(), ell)).collect();

    let image = |form: &[Vec<u32>], perm: &[VertexId]| -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); form.len()];
        for (i, ((u, v), _)) in classes.iter().enumerate() {
            let (a, b) = (perm[*u], perm[*v]);
            let vals = if a < b {
                form[i].clone()
            } else {
                let mut n: Vec<u32> = form[i].iter().map(|&x| modular::neg(x, ell)).collect();
                n.sort_unstable();
                n
            };
            out[index[&(a.min(b), a.max(b))]] = vals;
        }
        out
    };

    let mut out = Vec::new();
    let mut pick = vec![0usize; classes.len()];
    loop {
        let form: Vec<Vec<u32>> = pick.iter().zip(&choices).map(|(&p, c)| c[p].clone()).collect();
        let images: BTreeSet<Vec<Vec<u32>>> = autos.iter().map(|perm| image(&form, perm)).collect();
        if images.first() == Some(&form) {
            let arrangements: u64 = form.iter().map(|vals| multinomial(vals)).product();
            let mut m = vec![0i64; g.num_edges()];
            for (((u, _), edges), vals) in classes.iter().zip(&form) {
                for (&e, &x) in edges.iter().zip(vals) {
                    m[e] = if g.ends(e).0 == *u { x as i64 } else { -(x as i64) };
                }
            }
            let m = OneCochain::on(g, ell, &m)?;
            out.push(DecorationClass {
                decorated: DecoratedGraph::new(g.clone(), m, None)?,
                orbit_size: images.len() as u64 * arrangements,
            });
        }
        // advance the mixed-radix counter
        let mut i = pick.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
        }
    }
}

/// If some vertex `v₁` has exactly two neighbours and a single edge `e` to
/// one of them, returns the contractions of `d` by `e′` (the lowest edge
/// from `v₁` to the other neighbour) and by `T ∖ {e′}`, for a spanning tree
/// `T` through `e′` avoiding `e`.
pub fn reduce_step(d: &DecoratedGraph) -> Option<(DecoratedContraction, DecoratedContraction)> {
    let g = d.graph();
    for v1 in g.vertices() {
        let mut nbrs: BTreeMap<VertexId, Vec<EdgeId>> = BTreeMap::new();
        for &dart in g.outgoing(v1) {
            let w = g.head(dart);
            if w != v1 {
                nbrs.entry(w).or_default().push(Multigraph::edge_of(dart));
            }
        }
        if nbrs.len() != 2 {
            continue;
        }
        let pairs: Vec<(VertexId, Vec<EdgeId>)> = nbrs.into_iter().collect();
        let Some(single) = pairs.iter().position(|(_, es)| es.len() == 1) else {
            continue;
        };
        let e = pairs[single].1[0];
        let e_prime = *pairs[1 - single].1.iter().min().expect("neighbour has an edge");
        let mut uf = UnionFind::new(g.num_vertices());
        let mut tree = Vec::new();
        for f in std::iter::once(e_prime).chain(g.edges()) {
            let (t, h) = g.ends(f);
            if f != e && uf.union(t, h) {
                tree.push(f);
            }
        }
        if tree.len() + 1 != g.num_vertices() {
            continue;
        }
        let rest: Vec<EdgeId> = tree.into_iter().filter(|&f| f != e_prime).collect();
        let first = d.contract(&[e_prime]).expect("edge ids come from the graph");
        let second = d.contract(&rest).expect("edge ids come from the graph");
        return Some((first, second));
    }
    None
}

/// Whether contracting some edge set of `d0` (followed by contracting loops
/// and separating edges) gives `d1`, up to isomorphism. Both sides are first
/// reduced the same way.
pub fn contracts_to(d0: &DecoratedGraph, d1: &DecoratedGraph) -> Result<bool> {
    if d0.ell() != d1.ell() {
        return Ok(false);
    }
    let (r0, _) = reduced_gamma0(d0);
    let (r1, _) = reduced_gamma0(d1);
    let target = r1.canonical_code()?;
    let edges = r0.graph().num_edges();
    if r1.graph().num_edges() > edges {
        return Ok(false);
    }
    if edges > 20 {
        return Err(Error::SizeBound {
            what: "edges for contraction search",
            size: edges as u128,
            bound: 20,
        });
    }
    for mask in 0u32..(1 << edges) {
        let f: Vec<EdgeId> = (0..edges).filter(|&e| mask >> e & 1 == 1).collect();
        let c = r0.contract(&f)?;
        let (r, _) = reduced_gamma0(&c.decorated);
        if r.graph().num_edges() == r1.graph().num_edges()
            && r.graph().num_vertices() == r1.graph().num_vertices()
            && r.canonical_code()? == target
        {
            return Ok(true);
        }
    }
    Ok(false)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Largest edge count scanned; defaults to `ℓ − 1`.
    pub max_edges: Option<usize>,
    /// Permits `ℓ = 11`.
    pub allow_large: bool,
}

/// A junior stratum, represented by its canonical decorated graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumClass {
    pub decorated: DecoratedGraph,
    pub code: CanonicalCode,
    pub vine: Option<Vec<u32>>,
    pub age: StratumAge,
    pub codimension: usize,
    /// Residues `k` for which the multidegree condition can be met.
    pub admissible_k: Vec<u32>,
    /// A ghost automorphism of minimal age.
    pub witness: EvenFunction,
    pub orbit_size: u64,
    /// No single-edge contraction is junior.
    pub maximal: bool,
    /// Minimal genus labels for the `k` the class was requested for.
    pub genus: Option<Vec<u32>>,
}

impl StratumClass {
    pub fn total_genus(&self) -> Option<u32> {
        let genus = self.genus.as_ref()?;
        Some(genus.iter().sum::<u32>() + self.decorated.graph().betti1() as u32)
    }
}

/// Validates the level and returns the effective edge bound.
pub fn check_level(ell: u32, opts: ClassifyOptions) -> Result<usize> {
    match ell {
        2 | 3 | 5 | 7 => {}
        11 if opts.allow_large => {}
        _ => return Err(Error::UnsupportedLevel(ell)),
    }
    let max_edges = opts.max_edges.unwrap_or(ell as usize - 1);
    if max_edges > MAX_ENUMERATION_EDGES {
        return Err(Error::SizeBound {
            what: "edges for classification",
            size: max_edges as u128,
            bound: MAX_ENUMERATION_EDGES as u128,
        });
    }
    Ok(max_edges)
}

fn has_junior_contraction(d: &DecoratedGraph) -> Result<bool> {
    for e in d.graph().edges() {
        let c = d.contract(&[e])?;
        let (r, _) = reduced_gamma0(&c.decorated);
        if r.graph().num_edges() > 0 && is_junior(&r)? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn classes_of(g: &Multigraph, ell: u32) -> Result<Vec<StratumClass>> {
    let mut out = Vec::new();
    for class in enumerate_decorations(g, ell)? {
        if !is_junior(&class.decorated)? {
            continue;
        }
        let (canon, code) = class.decorated.canonical()?;
        let report = stratum_age(&canon)?;
        let admissible_k = (0..ell).filter(|&k| canon.genus_labeling(k as i64).is_some()).collect();
        out.push(StratumClass {
            vine: canon.vine_notation(),
            age: report.age,
            codimension: canon.graph().num_edges(),
            admissible_k,
            witness: report.witness.expect("junior strata have a witness"),
            orbit_size: class.orbit_size,
            maximal: !has_junior_contraction(&canon)?,
            genus: None,
            code,
            decorated: canon,
        });
    }
    Ok(out)
}

type ClassCache = Mutex<HashMap<(u32, usize), Arc<Vec<StratumClass>>>>;

fn cache() -> &'static ClassCache {
    static CACHE: OnceLock<ClassCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Every junior class with at most `max_edges` edges, for all `k`, sorted
/// by codimension, vertex count and canonical code. Results are memoised
/// per level and edge bound for the lifetime of the process.
pub fn junior_classes(ell: u32, opts: ClassifyOptions) -> Result<Arc<Vec<StratumClass>>> {
    let max_edges = check_level(ell, opts)?;
    if let Some(hit) = cache().lock().expect("cache lock").get(&(ell, max_edges)) {
        return Ok(Arc::clone(hit));
    }
    let all = Arc::new(junior_classes_uncached(ell, max_edges)?);
    cache()
        .lock()
        .expect("cache lock")
        .insert((ell, max_edges), Arc::clone(&all));
    Ok(all)
}

fn junior_classes_uncached(ell: u32, max_edges: usize) -> Result<Vec<StratumClass>> {
    let bases = enumerate_base_graphs(max_edges)?;
    let per_graph: Vec<Result<Vec<StratumClass>>> = bases.par_iter().map(|g| classes_of(g, ell)).collect();
    let mut all = Vec::new();
    for r in per_graph {
        all.extend(r?);
    }
    all.sort_by(|a, b| {
        (a.codimension, a.decorated.graph().num_vertices(), &a.code).cmp(&(
            b.codimension,
            b.decorated.graph().num_vertices(),
            &b.code,
        ))
    });
    Ok(all)
}

/// Junior classes whose multidegree condition is solvable for `k`, with
/// minimal genus labels attached.
pub fn classify_junior(ell: u32, k: i64, opts: ClassifyOptions) -> Result<Vec<StratumClass>> {
    let all = junior_classes(ell, opts)?;
    let k = modular::reduce(k, ell);
    Ok(all
        .iter()
        .filter(|c| c.admissible_k.contains(&k))
        .map(|c| {
            let mut c = c.clone();
            c.genus = c.decorated.genus_labeling(k as i64);
            c
        })
        .collect())
}

/// The closure-maximal classes of `classify_junior`.
pub fn maximal_classes(ell: u32, k: i64, opts: ClassifyOptions) -> Result<Vec<StratumClass>> {
    Ok(classify_junior(ell, k, opts)?.into_iter().filter(|c| c.maximal).collect())
}

/// Compares `classify_junior(ℓ, k)` with the image of
/// `classify_junior(ℓ, 1)` under `M ↦ kM`, class by class including the
/// maximality flags.
pub fn twist_symmetry(ell: u32, k: i64, opts: ClassifyOptions) -> Result<bool> {
    let k = modular::reduce(k, ell);
    if k == 0 {
        return Err(Error::Invalid("the symmetry needs k ≢ 0".into()));
    }
    let direct: BTreeSet<(CanonicalCode, bool)> = classify_junior(ell, k as i64, opts)?
        .into_iter()
        .map(|c| (c.code, c.maximal))
        .collect();
    let mut image = BTreeSet::new();
    for c in classify_junior(ell, 1, opts)? {
        image.insert((c.decorated.scaled(k).canonical_code()?, c.maximal));
    }
    Ok(direct == image)
}

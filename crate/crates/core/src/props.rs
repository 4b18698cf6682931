//! Seeded invariant suites, grouped by scope.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classify::{contracts_to, maximal_classes, twist_symmetry, reduce_step, ClassifyOptions};
use crate::cochain::{
    boundary, cut_basis, delta, image_delta, in_image_delta, pair0, pair1, solve_boundary, solve_delta, EvenFunction,
    OneCochain, ZeroCochain,
};
use crate::decorated::DecoratedGraph;
use crate::ghosts::{
    age, alpha_beta, generated_by_qr, ghost_group, is_junior, lifts, qr_subgroup, reduced_gamma0, stratum_age,
    supported_check, StratumAge,
};
use crate::graph::{
    canonical_code, contract_edges, is_tree_like, separating_edges, spanning_tree, EdgeId, Multigraph,
};
use crate::modular;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    Graph,
    Cochain,
    Decorated,
    Ghosts,
    Classify,
}

impl Scope {
    pub const ALL: [Scope; 5] = [Scope::Graph, Scope::Cochain, Scope::Decorated, Scope::Ghosts, Scope::Classify];
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scope::Graph => "graph",
            Scope::Cochain => "cochain",
            Scope::Decorated => "decorated",
            Scope::Ghosts => "ghosts",
            Scope::Classify => "classify",
        })
    }
}

impl FromStr for Scope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Scope::ALL
            .into_iter()
            .find(|sc| sc.to_string() == s)
            .ok_or_else(|| format!("unknown scope `{s}` (graph, cochain, decorated, ghosts, classify)"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub scope: Scope,
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    /// Description of the first failing case.
    pub first_failure: Option<String>,
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

struct Tally {
    scope: Scope,
    name: &'static str,
    cases: usize,
    failures: usize,
    first_failure: Option<String>,
}

impl Tally {
    fn new(scope: Scope, name: &'static str) -> Self {
        Tally {
            scope,
            name,
            cases: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn check(&mut self, ok: bool, case: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(case());
            }
        }
    }

    fn finish(self) -> PropertyResult {
        PropertyResult {
            scope: self.scope,
            name: self.name,
            cases: self.cases,
            failures: self.failures,
            first_failure: self.first_failure,
        }
    }
}

/// A random connected multigraph: a random tree plus extra edges, random
/// orientations, shuffled edge order.
pub fn random_graph(rng: &mut impl Rng, max_vertices: usize, max_extra: usize, loops: bool) -> Multigraph {
    let n = rng.random_range(1..=max_vertices);
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.random_range(0..v), v)).collect();
    for _ in 0..rng.random_range(0..=max_extra) {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v || loops {
            edges.push((u, v));
        }
    }
    for e in edges.iter_mut() {
        if rng.random_bool(0.5) {
            *e = (e.1, e.0);
        }
    }
    edges.shuffle(rng);
    Multigraph::new(n, &edges).expect("tree plus edges is connected")
}

fn random_values(rng: &mut impl Rng, len: usize, ell: u32) -> Vec<i64> {
    (0..len).map(|_| rng.random_range(0..ell) as i64).collect()
}

fn random_decorated(rng: &mut impl Rng, ell: u32, max_vertices: usize, max_extra: usize) -> DecoratedGraph {
    let g = random_graph(rng, max_vertices, max_extra, true);
    let m = random_values(rng, g.num_edges(), ell);
    let m = OneCochain::on(&g, ell, &m).expect("lengths match");
    DecoratedGraph::new(g, m, None).expect("lengths match")
}

fn permuted(g: &Multigraph, perm: &[usize]) -> Multigraph {
    let edges: Vec<(usize, usize)> = g.edge_list().iter().map(|&(t, h)| (perm[t], perm[h])).collect();
    Multigraph::new(g.num_vertices(), &edges).expect("permutation keeps connectivity")
}

/// Every even function on `edges` edges, as the brute-force reference.
fn all_even(edges: usize, ell: u32) -> Vec<EvenFunction> {
    let total = (ell as usize).pow(edges as u32);
    (0..total)
        .map(|mut code| {
            let mut v = vec![0i64; edges];
            for x in v.iter_mut() {
                *x = (code % ell as usize) as i64;
                code /= ell as usize;
            }
            EvenFunction::new(ell, &v).expect("modulus at least 2")
        })
        .collect()
}

const PRIMES: [u32; 3] = [2, 3, 5];

fn graph_props(rng: &mut ChaCha8Rng) -> Vec<PropertyResult> {
    let mut betti = Tally::new(Scope::Graph, "single contraction keeps b1");
    let mut parallel = Tally::new(Scope::Graph, "parallel partner becomes a loop");
    let mut sep = Tally::new(Scope::Graph, "separating edges stable under contraction");
    let mut tree = Tally::new(Scope::Graph, "spanning tree has V-1 edges and all bridges");
    let mut canon = Tally::new(Scope::Graph, "canonical code invariant under relabelling");
    let mut like = Tally::new(Scope::Graph, "tree-like iff #E_sep = #V - 1 non-loop count");
    for _ in 0..200 {
        let g = random_graph(rng, 6, 5, true);
        let bridges = separating_edges(&g);
        let t = spanning_tree(&g);
        tree.check(
            t.len() + 1 == g.num_vertices() && bridges.iter().all(|b| t.contains(b)),
            || format!("{:?}", g.edge_list()),
        );
        let non_loops = g.edges().filter(|&e| !g.is_loop(e)).count();
        like.check(
            is_tree_like(&g) == (bridges.len() == non_loops),
            || format!("{:?}", g.edge_list()),
        );
        let mut perm: Vec<usize> = g.vertices().collect();
        perm.shuffle(rng);
        let h = permuted(&g, &perm);
        canon.check(
            canonical_code(&g, None).ok() == canonical_code(&h, None).ok(),
            || format!("{:?} under {perm:?}", g.edge_list()),
        );
        let candidates: Vec<EdgeId> = g.edges().filter(|&e| !g.is_loop(e)).collect();
        let Some(&e) = candidates.get(rng.random_range(0..candidates.len().max(1))) else {
            continue;
        };
        let c = contract_edges(&g, &[e]).expect("edge from graph");
        betti.check(c.graph.betti1() == g.betti1(), || format!("{:?} / {e}", g.edge_list()));
        let (a, b) = g.ends(e);
        for f in g.edges().filter(|&f| f != e) {
            let (x, y) = g.ends(f);
            if (x, y) == (a, b) || (x, y) == (b, a) {
                let nf = c.edge_map.iter().position(|&o| o == f).expect("f survives");
                parallel.check(c.graph.is_loop(nf), || format!("{:?} / {e}", g.edge_list()));
            }
        }
        let new_bridges: BTreeSet<EdgeId> = separating_edges(&c.graph).into_iter().map(|n| c.edge_map[n]).collect();
        let old: BTreeSet<EdgeId> = bridges.iter().copied().filter(|&b| b != e).collect();
        sep.check(new_bridges == old, || format!("{:?} / {e}", g.edge_list()));
    }
    vec![betti.finish(), parallel.finish(), sep.finish(), tree.finish(), canon.finish(), like.finish()]
}

fn cochain_props(rng: &mut ChaCha8Rng) -> Vec<PropertyResult> {
    let mut adj = Tally::new(Scope::Cochain, "adjointness <da,b> = <a,db>");
    let mut size = Tally::new(Scope::Cochain, "|im delta| = l^(V-1)");
    let mut member = Tally::new(Scope::Cochain, "circuit test agrees with solvability");
    let mut cuts = Tally::new(Scope::Cochain, "cuts lie in im delta");
    let mut restricted = Tally::new(Scope::Cochain, "im delta of a contraction = C1 cap im delta");
    let mut solve = Tally::new(Scope::Cochain, "solve_boundary inverts boundary");
    for i in 0..1000 {
        let ell = [2, 3, 4, 5, 6, 7][i % 6];
        let g = random_graph(rng, 5, 4, true);
        let a = ZeroCochain::on(&g, ell, &random_values(rng, g.num_vertices(), ell)).expect("lengths");
        let b = OneCochain::on(&g, ell, &random_values(rng, g.num_edges(), ell)).expect("lengths");
        adj.check(pair1(&delta(&g, &a), &b) == pair0(&a, &boundary(&g, &b)), || {
            format!("l={ell} {:?} a={:?} b={:?}", g.edge_list(), a.values(), b.values())
        });
        member.check(in_image_delta(&g, &b) == solve_delta(&g, &b).is_ok(), || {
            format!("l={ell} {:?} b={:?}", g.edge_list(), b.values())
        });
        let db = boundary(&g, &b);
        let back = solve_boundary(&g, &db).map(|m| boundary(&g, &m));
        solve.check(back.as_ref() == Ok(&db), || format!("l={ell} {:?} d={:?}", g.edge_list(), db.values()));
        if i % 5 == 0 {
            let basis = cut_basis(&g, &spanning_tree(&g), ell).expect("spanning tree");
            cuts.check(basis.iter().all(|c| in_image_delta(&g, c)), || format!("{:?}", g.edge_list()));
        }
    }
    for i in 0..200 {
        let ell = PRIMES[i % 3];
        let g = random_graph(rng, 4, 3, true);
        let image: BTreeSet<OneCochain> = image_delta(&g, ell).into_iter().collect();
        size.check(
            image.len() == (ell as usize).pow(g.num_vertices() as u32 - 1),
            || format!("l={ell} {:?}", g.edge_list()),
        );
        let f: Vec<EdgeId> = g.edges().filter(|_| rng.random_bool(0.4)).collect();
        let c = contract_edges(&g, &f).expect("edges from graph");
        // extend by zero along the contracted edges
        let extend = |b: &OneCochain| {
            let mut v = vec![0i64; g.num_edges()];
            for (n, &o) in c.edge_map.iter().enumerate() {
                v[o] = b.on_edge(n) as i64;
            }
            OneCochain::on(&g, ell, &v).expect("lengths")
        };
        let small: BTreeSet<OneCochain> = image_delta(&c.graph, ell).iter().map(extend).collect();
        let cap: BTreeSet<OneCochain> = image.into_iter().filter(|b| f.iter().all(|&e| b.on_edge(e) == 0)).collect();
        restricted.check(small == cap, || format!("l={ell} {:?} contract {f:?}", g.edge_list()));
    }
    vec![adj.finish(), size.finish(), member.finish(), cuts.finish(), restricted.finish(), solve.finish()]
}

fn decorated_props(rng: &mut ChaCha8Rng) -> Vec<PropertyResult> {
    let mut faithful = Tally::new(Scope::Decorated, "gamma0 is faithful");
    let mut prime_p = Tally::new(Scope::Decorated, "gamma_p = gamma0 for prime level");
    let mut chain = Tally::new(Scope::Decorated, "nu-chain contracts monotonically");
    let mut stab = Tally::new(Scope::Decorated, "stabilizer order 1 iff M = 0");
    let mut labels = Tally::new(Scope::Decorated, "genus labels satisfy multidegree and stability");
    let mut codim = Tally::new(Scope::Decorated, "codimension = #E");
    for i in 0..300 {
        let ell = [2, 3, 4, 5, 6, 7, 8, 9, 12][i % 9];
        let d = random_decorated(rng, ell, 5, 4);
        let g0 = d.gamma0().decorated;
        faithful.check(g0.is_faithful(), || format!("l={ell} {:?}", d.m().values()));
        codim.check(d.stratum_info().codimension == d.graph().num_edges(), String::new);
        stab.check(
            d.graph()
                .edges()
                .all(|e| (d.stabilizer_order(e).expect("edge") == 1) == (d.m().on_edge(e) == 0)),
            || format!("l={ell} {:?}", d.m().values()),
        );
        if modular::is_prime(ell) {
            prime_p.check(d.gamma_p(ell).expect("p = l").decorated == g0, || {
                format!("l={ell} {:?}", d.m().values())
            });
            for k in 0..ell as i64 {
                if let Some(g) = d.genus_labeling(k) {
                    let ok = d.satisfies_multidegree(k, &g) && d.clone().with_genus(g).expect("lengths").is_stable();
                    labels.check(ok, || format!("l={ell} k={k} {:?} {:?}", d.graph().edge_list(), d.m().values()));
                }
            }
        }
        for (p, ep) in modular::factorize(ell) {
            let sizes: Vec<usize> = (1..=ep)
                .map(|k| d.gamma_nu(p, k).expect("k in range").decorated.graph().num_edges())
                .collect();
            chain.check(sizes.windows(2).all(|w| w[0] <= w[1]), || {
                format!("l={ell} p={p} {:?}", d.m().values())
            });
        }
    }
    vec![faithful.finish(), prime_p.finish(), chain.finish(), stab.finish(), labels.finish(), codim.finish()]
}

fn ghosts_props(rng: &mut ChaCha8Rng) -> Vec<PropertyResult> {
    let mut group = Tally::new(Scope::Ghosts, "ghost group = brute-force lift set");
    let mut qr = Tally::new(Scope::Ghosts, "QR inside G, equal iff tree-like");
    let mut inverse_checks = Tally::new(Scope::Ghosts, "age a + age a^-1 = support size");
    let mut support_sub = Tally::new(Scope::Ghosts, "contraction group = elements supported on it");
    let mut min_age = Tally::new(Scope::Ghosts, "stratum age = brute-force minimum");
    let mut composite = Tally::new(Scope::Ghosts, "alpha/beta sums and QR generation");
    for i in 0..150 {
        let ell = PRIMES[i % 3];
        let d = random_decorated(rng, ell, 4, 3);
        let show = || format!("l={ell} {:?} M={:?}", d.graph().edge_list(), d.m().values());
        let gg = ghost_group(&d).expect("prime level");
        let g0 = &gg.gamma0().decorated;
        let elems: BTreeSet<EvenFunction> = gg.elements().expect("small").into_iter().collect();
        let brute: BTreeSet<EvenFunction> = all_even(g0.graph().num_edges(), ell)
            .into_iter()
            .filter(|a| lifts(a, g0).expect("faithful"))
            .collect();
        group.check(elems == brute, show);
        let q = qr_subgroup(&d).expect("prime level");
        let inside = q.generators().iter().all(|a| gg.contains(a));
        qr.check(inside && ((q.rank() == gg.rank()) == is_tree_like(g0.graph())), show);
        for a in &elems {
            let r = supported_check(a, g0).expect("faithful");
            inverse_checks.check(r.inverse_identity_holds(), || format!("{} a={:?}", show(), a.values()));
        }
        let f: Vec<EdgeId> = g0.graph().edges().filter(|_| rng.random_bool(0.4)).collect();
        let c = g0.contract(&f).expect("edges from graph");
        let sub: BTreeSet<EvenFunction> = ghost_group(&c.decorated)
            .expect("prime")
            .elements()
            .expect("small")
            .into_iter()
            .map(|a| {
                let mut v = vec![0i64; g0.graph().num_edges()];
                for (n, &o) in c.edge_map.iter().enumerate() {
                    v[o] = a.on_edge(n) as i64;
                }
                EvenFunction::new(ell, &v).expect("modulus")
            })
            .collect();
        let supported: BTreeSet<EvenFunction> = elems
            .iter()
            .filter(|a| f.iter().all(|&e| a.on_edge(e) == 0))
            .cloned()
            .collect();
        support_sub.check(sub == supported, show);
        let (reduced, _) = reduced_gamma0(&d);
        let brute_min = ghost_group(&reduced)
            .expect("prime")
            .elements()
            .expect("small")
            .iter()
            .filter(|a| !a.is_zero())
            .map(age)
            .min()
            .map_or(StratumAge::Infinite, StratumAge::Finite);
        let fast = stratum_age(&d).expect("small").age;
        min_age.check(fast == brute_min && is_junior(&d).expect("small") == fast.is_junior(), show);
    }
    for i in 0..150 {
        let ell = [4, 6, 8, 12][i % 4];
        let d = random_decorated(rng, ell, 4, 3);
        let mut ok = true;
        let mut all_equal = true;
        for (p, _) in modular::factorize(ell) {
            let (alpha, beta) = alpha_beta(&d, p).expect("p | l");
            let gp = d.gamma_p(p).expect("p | l").decorated;
            ok &= alpha.iter().sum::<u32>() as usize == gp.graph().num_vertices() - 1;
            ok &= beta.iter().sum::<u32>() as usize == separating_edges(gp.graph()).len();
            ok &= alpha.iter().zip(&beta).all(|(a, b)| a >= b);
            all_equal &= alpha == beta;
        }
        composite.check(ok && all_equal == generated_by_qr(&d), || {
            format!("l={ell} {:?} M={:?}", d.graph().edge_list(), d.m().values())
        });
    }
    vec![group.finish(), qr.finish(), inverse_checks.finish(), support_sub.finish(), min_age.finish(), composite.finish()]
}

fn classify_props() -> Vec<PropertyResult> {
    let opts = ClassifyOptions::default();
    let mut sym = Tally::new(Scope::Classify, "k-symmetry M -> kM");
    for ell in [3u32, 5] {
        for k in 1..ell as i64 {
            sym.check(twist_symmetry(ell, k, opts).unwrap_or(false), || format!("l={ell} k={k}"));
        }
    }
    let mut sound = Tally::new(Scope::Classify, "witness lifts with the reported age");
    let mut antichain = Tally::new(Scope::Classify, "maximal classes form an antichain");
    let mut config = Tally::new(Scope::Classify, "two-neighbour reduction is never maximal");
    for ell in [3u32, 5] {
        let all = crate::classify::classify_junior(ell, 1, opts).unwrap_or_default();
        for c in &all {
            let ok = lifts(&c.witness, &c.decorated).unwrap_or(false)
                && StratumAge::Finite(age(&c.witness)) == c.age
                && c.age.is_junior();
            sound.check(ok, || format!("l={ell} {:?}", c.decorated.m().values()));
            if let Some((a, b)) = reduce_step(&c.decorated) {
                let dominated = [a, b].iter().any(|x| {
                    let (r, _) = reduced_gamma0(&x.decorated);
                    r.graph().num_edges() > 0 && is_junior(&r).unwrap_or(false)
                });
                config.check(dominated && !c.maximal, || format!("l={ell} {:?}", c.decorated.m().values()));
            }
        }
        let max = maximal_classes(ell, 1, opts).unwrap_or_default();
        for a in &max {
            for b in &max {
                if a.code != b.code {
                    antichain.check(!contracts_to(&a.decorated, &b.decorated).unwrap_or(true), || {
                        format!("l={ell} {:?} -> {:?}", a.decorated.m().values(), b.decorated.m().values())
                    });
                }
            }
        }
    }
    vec![sym.finish(), sound.finish(), antichain.finish(), config.finish()]
}

/// Runs the suites for `scope` (all scopes when `None`) from `seed`. Each
/// scope draws from its own stream, so results do not depend on which other
/// scopes run.
pub fn run_props(seed: u64, scope: Option<Scope>) -> Vec<PropertyResult> {
    let scopes: Vec<Scope> = match scope {
        Some(s) => vec![s],
        None => Scope::ALL.to_vec(),
    };
    let mut out = Vec::new();
    for s in scopes {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (s as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        out.extend(match s {
            Scope::Graph => graph_props(&mut rng),
            Scope::Cochain => cochain_props(&mut rng),
            Scope::Decorated => decorated_props(&mut rng),
            Scope::Ghosts => ghosts_props(&mut rng),
            Scope::Classify => classify_props(),
        });
    }
    out
}

//! Brute-force reference implementations, deliberately independent of the
//! library: plain edge lists, exhaustive enumeration, no spanning trees.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use num_rational::Ratio;

pub type Edges = Vec<(usize, usize)>;

/// Every vector in `(Z/ell)^len`, lexicographically.
pub fn vectors(len: usize, ell: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..ell).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

pub fn neg(x: u32, ell: u32) -> u32 {
    (ell - x % ell) % ell
}

pub fn inv(x: u32, ell: u32) -> u32 {
    (1..ell).find(|y| x * y % ell == 1).expect("unit")
}

pub fn delta(edges: &[(usize, usize)], x: &[u32], ell: u32) -> Vec<u32> {
    edges.iter().map(|&(t, h)| (x[h] + ell - x[t]) % ell).collect()
}

/// `∂b(v)`: incoming minus outgoing.
pub fn boundary(n: usize, edges: &[(usize, usize)], b: &[u32], ell: u32) -> Vec<u32> {
    let mut out = vec![0; n];
    for (&(t, h), &x) in edges.iter().zip(b) {
        out[h] = (out[h] + x) % ell;
        out[t] = (out[t] + neg(x, ell)) % ell;
    }
    out
}

pub fn image(n: usize, edges: &[(usize, usize)], ell: u32) -> HashSet<Vec<u32>> {
    vectors(n, ell).iter().map(|x| delta(edges, x, ell)).collect()
}

pub fn components(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut label: Vec<usize> = (0..n).collect();
    let mut changed = true;
    while changed {
        changed = false;
        for &(t, h) in edges {
            let m = label[t].min(label[h]);
            for v in [t, h] {
                if label[v] != m {
                    label[v] = m;
                    changed = true;
                }
            }
        }
    }
    label.iter().collect::<HashSet<_>>().len()
}

pub fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    components(n, edges) == 1
}

/// Non-loop edges whose removal disconnects.
pub fn bridges(n: usize, edges: &[(usize, usize)]) -> Vec<bool> {
    let c = components(n, edges);
    (0..edges.len())
        .map(|i| {
            let (t, h) = edges[i];
            if t == h {
                return false;
            }
            let rest: Edges = edges.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &e)| e).collect();
            components(n, &rest) > c
        })
        .collect()
}

/// Contracts the marked edges; returns the vertex count, the new index of
/// each old vertex and the surviving edges (with their old ids).
pub fn contract(n: usize, edges: &[(usize, usize)], drop: &[bool]) -> (usize, Vec<usize>, Edges, Vec<usize>) {
    let mut label: Vec<usize> = (0..n).collect();
    let mut changed = true;
    while changed {
        changed = false;
        for (i, &(t, h)) in edges.iter().enumerate() {
            if drop[i] {
                let m = label[t].min(label[h]);
                for v in [t, h] {
                    if label[v] != m {
                        label[v] = m;
                        changed = true;
                    }
                }
            }
        }
    }
    let reps: BTreeSet<usize> = label.iter().copied().collect();
    let reps: Vec<usize> = reps.into_iter().collect();
    let map: Vec<usize> = label.iter().map(|l| reps.binary_search(l).unwrap()).collect();
    let mut kept = Vec::new();
    let mut ids = Vec::new();
    for (i, &(t, h)) in edges.iter().enumerate() {
        if !drop[i] {
            kept.push((map[t], map[h]));
            ids.push(i);
        }
    }
    (reps.len(), map, kept, ids)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Minimum over all vertex relabellings of the sorted edge list.
pub fn canon_graph(n: usize, edges: &[(usize, usize)]) -> (usize, Edges) {
    let best = permutations(n)
        .into_iter()
        .map(|p| {
            let mut e: Edges = edges
                .iter()
                .map(|&(t, h)| (p[t].min(p[h]), p[t].max(p[h])))
                .collect();
            e.sort_unstable();
            e
        })
        .min()
        .unwrap();
    (n, best)
}

/// Same for decorated graphs: an edge flip negates its label.
pub fn canon_decorated(n: usize, edges: &[(usize, usize)], m: &[u32], ell: u32) -> (usize, Vec<(usize, usize, u32)>) {
    let best = permutations(n)
        .into_iter()
        .map(|p| {
            let mut e: Vec<(usize, usize, u32)> = edges
                .iter()
                .zip(m)
                .map(|(&(t, h), &x)| {
                    let (a, b) = (p[t], p[h]);
                    if a == b {
                        (a, a, x.min(neg(x, ell)))
                    } else if a < b {
                        (a, b, x)
                    } else {
                        (b, a, neg(x, ell))
                    }
                })
                .collect();
            e.sort_unstable();
            e
        })
        .min()
        .unwrap();
    (n, best)
}

/// Isomorphism classes of connected multigraphs with `1..=max_edges` edges
/// (plus the single vertex), loops optional.
pub fn connected_graphs(max_edges: usize, loops: bool) -> Vec<(usize, Edges)> {
    let mut out = graphs(max_edges + 1, max_edges, loops, is_connected);
    out.insert(0, (1, vec![]));
    out
}

/// Loopless, bridgeless, connected, at least two vertices.
pub fn base_graphs(max_edges: usize) -> Vec<(usize, Edges)> {
    graphs(max_edges, max_edges, false, |n, e| {
        n >= 2 && is_connected(n, e) && !bridges(n, e).contains(&true)
    })
}

fn graphs(max_vertices: usize, max_edges: usize, loops: bool, keep: impl Fn(usize, &[(usize, usize)]) -> bool) -> Vec<(usize, Edges)> {
    let mut seen = BTreeSet::new();
    for n in 1..=max_vertices {
        let slots: Edges = (0..n)
            .flat_map(|u| (u..n).map(move |v| (u, v)))
            .filter(|&(u, v)| loops || u != v)
            .collect();
        for e in 1..=max_edges {
            for multiset in multisets(slots.len(), e) {
                let edges: Edges = multiset.iter().map(|&i| slots[i]).collect();
                if keep(n, &edges) {
                    seen.insert(canon_graph(n, &edges));
                }
            }
        }
    }
    seen.into_iter().collect()
}

/// Non-decreasing index sequences of length `k` over `0..n`.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn age(a: &[u32], ell: u32) -> Ratio<u64> {
    Ratio::new(a.iter().map(|&x| x as u64).sum(), ell as u64)
}

/// Everything the exhaustive recomputation says about one decoration.
pub struct Ghosts {
    /// Edge ids (of the input) surviving in `Γ₀`.
    pub faithful: Vec<usize>,
    /// Elements on the faithful edges.
    pub group: BTreeSet<Vec<u32>>,
    pub qr: BTreeSet<Vec<u32>>,
    /// Minimal age on the non-loop, non-bridge edges of `Γ₀`.
    pub stratum_age: Option<Ratio<u64>>,
    pub n0: usize,
    pub edges0: Edges,
}

pub fn ghosts(n: usize, edges: &[(usize, usize)], m: &[u32], ell: u32) -> Ghosts {
    let zero: Vec<bool> = m.iter().map(|&x| x == 0).collect();
    let (n0, _, edges0, faithful) = contract(n, edges, &zero);
    let m0: Vec<u32> = faithful.iter().map(|&i| m[i]).collect();
    let img = image(n0, &edges0, ell);
    let group: BTreeSet<Vec<u32>> = vectors(edges0.len(), ell)
        .into_iter()
        .filter(|a| {
            let am: Vec<u32> = a.iter().zip(&m0).map(|(x, y)| x * y % ell).collect();
            img.contains(&am)
        })
        .collect();
    let br = bridges(n0, &edges0);
    let qr = group
        .iter()
        .filter(|a| a.iter().zip(&br).all(|(&x, &b)| b || x == 0))
        .cloned()
        .collect();
    let core: Vec<usize> = (0..edges0.len())
        .filter(|&i| edges0[i].0 != edges0[i].1 && !br[i])
        .collect();
    let stratum_age = group
        .iter()
        .map(|a| core.iter().map(|&i| a[i]).collect::<Vec<u32>>())
        .filter(|r| r.iter().any(|&x| x != 0))
        .map(|r| age(&r, ell))
        .min();
    Ghosts {
        faithful,
        group,
        qr,
        stratum_age,
        n0,
        edges0,
    }
}

/// Junior test for a faithful decoration of a loopless bridgeless graph:
/// some nonzero `a` with `Σ rep a < ℓ` and `aM` a coboundary, checked by
/// propagating a potential.
pub fn min_junior_age(n: usize, edges: &[(usize, usize)], m: &[u32], ell: u32) -> Option<Ratio<u64>> {
    let mut best: Option<Vec<u32>> = None;
    let e = edges.len();
    let mut a = vec![0u32; e];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        i: usize,
        left: u32,
        a: &mut Vec<u32>,
        n: usize,
        edges: &[(usize, usize)],
        m: &[u32],
        ell: u32,
        best: &mut Option<Vec<u32>>,
    ) {
        if i == a.len() {
            if a.iter().all(|&x| x == 0) {
                return;
            }
            let am: Vec<u32> = a.iter().zip(m).map(|(x, y)| x * y % ell).collect();
            if coboundary(n, edges, &am, ell) {
                let s: u32 = a.iter().sum();
                if best.as_ref().is_none_or(|b| s < b.iter().sum()) {
                    *best = Some(a.clone());
                }
            }
            return;
        }
        for x in 0..=left.min(ell - 1) {
            a[i] = x;
            rec(i + 1, left - x, a, n, edges, m, ell, best);
        }
        a[i] = 0;
    }
    rec(0, ell - 1, &mut a, n, edges, m, ell, &mut best);
    best.map(|b| age(&b, ell))
}

/// Whether `b` is `δx` for some potential, by relaxation from vertex 0.
pub fn coboundary(n: usize, edges: &[(usize, usize)], b: &[u32], ell: u32) -> bool {
    let mut x: Vec<Option<u32>> = vec![None; n];
    x[0] = Some(0);
    let mut changed = true;
    while changed {
        changed = false;
        for (&(t, h), &v) in edges.iter().zip(b) {
            match (x[t], x[h]) {
                (Some(a), None) => {
                    x[h] = Some((a + v) % ell);
                    changed = true;
                }
                (None, Some(c)) => {
                    x[t] = Some((c + ell - v) % ell);
                    changed = true;
                }
                _ => {}
            }
        }
    }
    edges
        .iter()
        .zip(b)
        .all(|(&(t, h), &v)| (x[h].unwrap() + ell - x[t].unwrap()) % ell == v)
}

/// Some `k(2g − 2 + N_v) ≡ ∂M(v)` is solvable at every vertex.
pub fn admissible(n: usize, edges: &[(usize, usize)], m: &[u32], ell: u32, k: u32) -> bool {
    let dm = boundary(n, edges, m, ell);
    (0..n).all(|v| {
        let deg = edges.iter().map(|&(t, h)| (t == v) as u32 + (h == v) as u32).sum::<u32>();
        (0..ell).any(|g| (k * (2 * g + deg + 2 * ell - 2)) % ell == dm[v])
    })
}

/// Contract one edge, then every loop and bridge. Returns the faithful
/// remainder.
pub fn contract_and_reduce(n: usize, edges: &[(usize, usize)], m: &[u32], e: usize) -> (usize, Edges, Vec<u32>) {
    let drop: Vec<bool> = (0..edges.len()).map(|i| i == e).collect();
    let (mut n, _, mut edges, ids) = contract(n, edges, &drop);
    let mut m: Vec<u32> = ids.iter().map(|&i| m[i]).collect();
    loop {
        let br = bridges(n, &edges);
        let drop: Vec<bool> = edges.iter().zip(&br).map(|(&(t, h), &b)| t == h || b).collect();
        if !drop.contains(&true) {
            return (n, edges, m);
        }
        let (n2, _, e2, ids) = contract(n, &edges, &drop);
        m = ids.iter().map(|&i| m[i]).collect();
        n = n2;
        edges = e2;
    }
}

/// Decorations of a loopless graph in `(1..ℓ)^E`, sorted within each
/// parallel class (u < v).
pub fn decorations(edges: &[(usize, usize)], ell: u32) -> Vec<Vec<u32>> {
    let mut classes: Vec<((usize, usize), Vec<usize>)> = Vec::new();
    for (i, &e) in edges.iter().enumerate() {
        match classes.iter_mut().find(|(k, _)| *k == e) {
            Some((_, v)) => v.push(i),
            None => classes.push((e, vec![i])),
        }
    }
    let mut out = vec![vec![0u32; edges.len()]];
    for (_, ids) in &classes {
        let mut next = Vec::new();
        for base in &out {
            for ms in multisets(ell as usize - 1, ids.len()) {
                let mut d = base.clone();
                for (&i, &x) in ids.iter().zip(&ms) {
                    d[i] = x as u32 + 1;
                }
                next.push(d);
            }
        }
        out = next;
    }
    out
}

pub type DecoratedCode = (usize, Vec<(usize, usize, u32)>);

pub struct OracleClass {
    pub code: DecoratedCode,
    pub age: Ratio<u64>,
    pub maximal: bool,
    pub admissible: Vec<u32>,
}

/// All junior classes of faithful decorations on base graphs with at most
/// `max_edges` edges.
pub fn junior_classes(ell: u32, max_edges: usize) -> Vec<OracleClass> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (n, edges) in base_graphs(max_edges) {
        for m in decorations(&edges, ell) {
            let Some(age) = min_junior_age(n, &edges, &m, ell) else {
                continue;
            };
            let code = canon_decorated(n, &edges, &m, ell);
            if !seen.insert(code.clone()) {
                continue;
            }
            let maximal = (0..edges.len()).all(|e| {
                let (n1, e1, m1) = contract_and_reduce(n, &edges, &m, e);
                e1.is_empty() || min_junior_age(n1, &e1, &m1, ell).is_none()
            });
            let admissible = (0..ell).filter(|&k| admissible(n, &edges, &m, ell, k)).collect();
            out.push(OracleClass {
                code,
                age,
                maximal,
                admissible,
            });
        }
    }
    out
}

/// Orders of the ghost group and its quasireflection subgroup at any level:
/// `a(e) ∈ Z/r_e` with `r_e = ℓ / gcd(M(e), ℓ)` and `aM ∈ im δ`; the
/// quasireflections are the elements living on a single edge.
pub fn composite_orders(edges: &[(usize, usize)], m: &[u32], ell: u32, img: &HashSet<Vec<u32>>) -> (u64, u64) {
    let gcd = |mut a: u32, mut b: u32| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    let r: Vec<u32> = m.iter().map(|&x| ell / gcd(x, ell)).collect();
    let mut order = 0;
    let mut single = vec![1u64; edges.len()];
    let mut a = vec![0u32; edges.len()];
    loop {
        let am: Vec<u32> = a.iter().zip(m).map(|(x, y)| x * y % ell).collect();
        if img.contains(&am) {
            order += 1;
            let nz: Vec<usize> = (0..a.len()).filter(|&i| a[i] != 0).collect();
            if nz.len() == 1 {
                single[nz[0]] += 1;
            }
        }
        let Some(i) = (0..a.len()).find(|&i| a[i] + 1 < r[i]) else { break };
        a[i] += 1;
        a[..i].iter_mut().for_each(|x| *x = 0);
    }
    (order, single.iter().product())
}

/// Every `Γ_p` (edges with `p^{e_p} | M` contracted) has only loops and
/// bridges.
pub fn tree_like_at_every_prime(n: usize, edges: &[(usize, usize)], m: &[u32], ell: u32) -> bool {
    let mut rest = ell;
    let mut p = 2;
    let mut prime_powers = Vec::new();
    while rest > 1 {
        if rest.is_multiple_of(p) {
            let mut q = 1;
            while rest.is_multiple_of(p) {
                rest /= p;
                q *= p;
            }
            prime_powers.push(q);
        }
        p += 1;
    }
    prime_powers.into_iter().all(|q| {
        let drop: Vec<bool> = m.iter().map(|&x| x % q == 0).collect();
        let (n1, _, e1, _) = contract(n, edges, &drop);
        let br = bridges(n1, &e1);
        e1.iter().zip(&br).all(|(&(t, h), &b)| t == h || b)
    })
}

/// `(left, right)` with `left ∪ right = E`, both proper and non-empty, each
/// unordered pair once.
pub fn two_part_covers(edges: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    // per edge: 0 left only, 1 right only, 2 both
    for code in 0..3usize.pow(edges as u32) {
        let mut c = code;
        let (mut l, mut r) = (Vec::new(), Vec::new());
        for e in 0..edges {
            match c % 3 {
                0 => l.push(e),
                1 => r.push(e),
                _ => {
                    l.push(e);
                    r.push(e);
                }
            }
            c /= 3;
        }
        if l.len() == edges || r.len() == edges {
            continue;
        }
        let key = if l <= r { (l.clone(), r.clone()) } else { (r.clone(), l.clone()) };
        if seen.insert(key) {
            out.push((l, r));
        }
    }
    out
}

pub fn add(x: &[u32], y: &[u32], ell: u32) -> Vec<u32> {
    x.iter().zip(y).map(|(a, b)| (a + b) % ell).collect()
}

/// Whether the ghost group of a faithful decoration is the direct sum of
/// the groups of the two contractions keeping `left` and `right`.
pub fn cover_splits(n: usize, edges: &[(usize, usize)], m: &[u32], ell: u32, left: &[usize], right: &[usize]) -> bool {
    let full = ghosts(n, edges, m, ell).group;
    let part = |keep: &[usize]| -> BTreeSet<Vec<u32>> {
        let drop: Vec<bool> = (0..edges.len()).map(|e| !keep.contains(&e)).collect();
        let (n1, _, kept, ids) = contract(n, edges, &drop);
        let m1: Vec<u32> = ids.iter().map(|&i| m[i]).collect();
        ghosts(n1, &kept, &m1, ell)
            .group
            .iter()
            .map(|a| {
                let mut v = vec![0; edges.len()];
                for (j, &i) in ids.iter().enumerate() {
                    v[i] = a[j];
                }
                v
            })
            .collect()
    };
    let (l, r) = (part(left), part(right));
    let sums: BTreeSet<Vec<u32>> = l.iter().flat_map(|x| r.iter().map(move |y| add(x, y, ell))).collect();
    l.len() * r.len() == full.len() && sums == full
}

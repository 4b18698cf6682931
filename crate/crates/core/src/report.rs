//! Analysis reports and classification tables.

use std::fmt::Write as _;

use serde::Serialize;

use crate::classify::StratumClass;
use crate::decorated::{root_count, DecoratedGraph};
use crate::error::Result;
use crate::ghosts::{
    alpha_beta, generated_by_qr, ghost_group_order, qr_order, stratum_age, vine_witness, StratumAge,
};
use crate::graph::{is_tree_like, separating_edges};
use crate::modular;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub edges: usize,
    pub separating_edges: usize,
    pub tree_like: bool,
}

impl GraphSummary {
    fn of(d: &DecoratedGraph) -> Self {
        let g = d.graph();
        GraphSummary {
            vertices: g.num_vertices(),
            edges: g.num_edges(),
            separating_edges: separating_edges(g).len(),
            tree_like: is_tree_like(g),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeSummary {
    pub p: u32,
    pub exponent: u32,
    pub gamma_p: GraphSummary,
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VineSummary {
    pub side: Vec<usize>,
    pub crossing: Vec<usize>,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenusSummary {
    pub k: u32,
    pub genus: Option<Vec<u32>>,
    pub total_genus: Option<u32>,
}

/// Everything the ghost side says about one decorated graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub input: serde_json::Value,
    pub ell: u32,
    pub codimension: usize,
    pub gamma0: GraphSummary,
    pub primes: Vec<PrimeSummary>,
    /// Ghost group generated by quasireflections (every `Γ_p` tree-like).
    pub smooth_ghost_side: bool,
    pub ghost_group_order: String,
    pub qr_order: String,
    /// Prime levels only.
    pub stratum_age: Option<StratumAge>,
    pub junior: Option<bool>,
    pub witness: Option<Vec<u32>>,
    pub multidegree: Vec<u32>,
    pub admissible_k: Vec<u32>,
    pub genus_labeling: Option<GenusSummary>,
    pub vine_witness: Option<VineSummary>,
    pub total_genus: Option<u32>,
    pub root_count: Option<String>,
}

pub fn analyze(d: &DecoratedGraph, k: Option<i64>) -> Result<AnalysisReport> {
    let ell = d.ell();
    let g0 = d.gamma0().decorated;
    let mut primes = Vec::new();
    for (p, e) in modular::factorize(ell) {
        let (alpha, beta) = alpha_beta(d, p)?;
        primes.push(PrimeSummary {
            p,
            exponent: e,
            gamma_p: GraphSummary::of(&d.gamma_p(p)?.decorated),
            alpha,
            beta,
        });
    }
    let (age, witness) = if modular::is_prime(ell) {
        let r = stratum_age(d)?;
        (Some(r.age), r.witness.map(|w| w.values().to_vec()))
    } else {
        (None, None)
    };
    let genus_labeling = k.map(|k| {
        let k = modular::reduce(k, ell);
        let genus = d.genus_labeling(k as i64);
        let total_genus = genus
            .as_ref()
            .map(|g| g.iter().sum::<u32>() + d.graph().betti1() as u32);
        GenusSummary { k, genus, total_genus }
    });
    let total_genus = d.total_genus().ok();
    Ok(AnalysisReport {
        input: serde_json::from_str(&crate::format::to_json(d)).expect("serialised graph is valid JSON"),
        ell,
        codimension: d.stratum_info().codimension,
        gamma0: GraphSummary::of(&g0),
        primes,
        smooth_ghost_side: generated_by_qr(d),
        ghost_group_order: ghost_group_order(d).to_string(),
        qr_order: qr_order(d).to_string(),
        junior: age.map(StratumAge::is_junior),
        stratum_age: age,
        witness,
        multidegree: d.multidegree().values().to_vec(),
        admissible_k: (0..ell).filter(|&k| d.genus_labeling(k as i64).is_some()).collect(),
        genus_labeling,
        vine_witness: vine_witness(d).map(|w| VineSummary {
            side: w.side,
            crossing: w.crossing,
            n: w.n,
        }),
        root_count: total_genus.map(|g| root_count(g, ell).to_string()),
        total_genus,
    })
}

fn list(values: &[u32]) -> String {
    let inner: Vec<String> = values.iter().map(u32::to_string).collect();
    format!("({})", inner.join(","))
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let opt = |x: Option<String>| x.unwrap_or_else(|| "-".into());
        let _ = writeln!(s, "level            {}", self.ell);
        let _ = writeln!(s, "codimension      {}", self.codimension);
        let _ = writeln!(
            s,
            "gamma0           {} vertices, {} edges, {} separating, tree-like {}",
            self.gamma0.vertices, self.gamma0.edges, self.gamma0.separating_edges, self.gamma0.tree_like
        );
        for p in &self.primes {
            let _ = writeln!(
                s,
                "gamma_{:<10} {} vertices, {} edges, tree-like {}, alpha {}, beta {}",
                p.p,
                p.gamma_p.vertices,
                p.gamma_p.edges,
                p.gamma_p.tree_like,
                list(&p.alpha),
                list(&p.beta)
            );
        }
        let _ = writeln!(s, "smooth (ghosts)  {}", self.smooth_ghost_side);
        let _ = writeln!(s, "|G|              {}", self.ghost_group_order);
        let _ = writeln!(s, "|QR|             {}", self.qr_order);
        let _ = writeln!(s, "stratum age      {}", opt(self.stratum_age.map(|a| a.to_string())));
        let _ = writeln!(s, "junior           {}", opt(self.junior.map(|j| j.to_string())));
        let _ = writeln!(s, "witness          {}", opt(self.witness.as_deref().map(list)));
        let _ = writeln!(s, "multidegree      {}", list(&self.multidegree));
        let _ = writeln!(s, "admissible k     {}", list(&self.admissible_k));
        if let Some(g) = &self.genus_labeling {
            let _ = writeln!(
                s,
                "genus (k={})      {}",
                g.k,
                opt(g.genus.as_deref().map(|v| format!("{} total {}", list(v), g.total_genus.unwrap_or(0))))
            );
        }
        let _ = writeln!(
            s,
            "vine witness     {}",
            opt(self
                .vine_witness
                .as_ref()
                .map(|v| format!("n={} side {:?} crossing {:?}", v.n, v.side, v.crossing)))
        );
        let _ = writeln!(s, "total genus      {}", opt(self.total_genus.map(|g| g.to_string())));
        let _ = writeln!(s, "roots l^(2g)     {}", opt(self.root_count.clone()));
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
struct ClassRow {
    index: usize,
    vertices: usize,
    edges: Vec<[u32; 3]>,
    vine: Option<Vec<u32>>,
    age: StratumAge,
    codimension: usize,
    admissible_k: Vec<u32>,
    witness: Vec<u32>,
    orbit_size: u64,
    maximal: bool,
    genus: Option<Vec<u32>>,
    total_genus: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
struct ClassTable {
    ell: u32,
    k: u32,
    max_edges: usize,
    selection: &'static str,
    count: usize,
    classes: Vec<ClassRow>,
}

fn rows(classes: &[StratumClass]) -> Vec<ClassRow> {
    classes
        .iter()
        .enumerate()
        .map(|(index, c)| {
            let g = c.decorated.graph();
            ClassRow {
                index,
                vertices: g.num_vertices(),
                edges: g
                    .edges()
                    .map(|e| {
                        let (t, h) = g.ends(e);
                        [t as u32, h as u32, c.decorated.m().on_edge(e)]
                    })
                    .collect(),
                vine: c.vine.clone(),
                age: c.age,
                codimension: c.codimension,
                admissible_k: c.admissible_k.clone(),
                witness: c.witness.values().to_vec(),
                orbit_size: c.orbit_size,
                maximal: c.maximal,
                genus: c.genus.clone(),
                total_genus: c.total_genus(),
            }
        })
        .collect()
}

/// Deterministic JSON table; `all` records whether non-maximal classes are
/// included.
pub fn classes_json(ell: u32, k: u32, max_edges: usize, all: bool, classes: &[StratumClass]) -> String {
    let table = ClassTable {
        ell,
        k,
        max_edges,
        selection: if all { "all" } else { "maximal" },
        count: classes.len(),
        classes: rows(classes),
    };
    let mut s = serde_json::to_string_pretty(&table).expect("table serialises");
    s.push('\n');
    s
}

pub fn classes_tsv(classes: &[StratumClass]) -> String {
    let mut s = String::from("index\tvertices\tedges\tvine\tage\tcodim\tadmissible_k\twitness\torbit\tmaximal\tgenus\n");
    for r in rows(classes) {
        let edges: Vec<String> = r.edges.iter().map(|[t, h, m]| format!("{t}-{h}:{m}")).collect();
        let _ = writeln!(
            s,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.index,
            r.vertices,
            edges.join(" "),
            r.vine.as_deref().map_or_else(|| "-".into(), list),
            r.age,
            r.codimension,
            list(&r.admissible_k),
            list(&r.witness),
            r.orbit_size,
            r.maximal,
            r.genus.as_deref().map_or_else(|| "-".into(), list),
        );
    }
    s
}

//! Finite samples of the 2-adjacency graph: one vertex per Schubert class,
//! one edge per verified family or tower witness, pointing from the family
//! knot to the knot it is adjacent to.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::adjacency::{
    verify_grid, verify_two_adjacency, AdjacencyWitness, CosmeticFlag, FamilyParams, TwistUnit,
};
use crate::braid::BraidWord;
use crate::diagram::plat_closure;
use crate::error::{Error, Result};
use crate::invariants::{jones_polynomial, FingerprintPolicy};
use crate::json::{from_number, to_number};
use crate::poly::LaurentPolynomial;
use crate::twobridge::{word_to_fraction, Fraction};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotVertex {
    pub id: usize,
    pub fraction: Fraction,
    pub jones: LaurentPolynomial,
    pub names: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    KBetaFamily,
    Tower,
}

/// Enough to rebuild the witness: the base word and the family parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeParams {
    pub beta: BraidWord,
    pub m: i64,
    pub n: i64,
    #[serde(default)]
    pub unit: TwistUnit,
}

impl EdgeParams {
    pub fn family(&self) -> FamilyParams {
        FamilyParams { m: self.m, n: self.n, unit: self.unit }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjEdge {
    pub src: usize,
    pub dst: usize,
    pub n: u32,
    pub construction: Construction,
    pub params: EdgeParams,
    pub cosmetic: CosmeticFlag,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub bases: Vec<BraidWord>,
    pub grid: Vec<FamilyParams>,
    pub tower_depth: usize,
    pub tower_params: Option<FamilyParams>,
    pub alexander_cap: Option<usize>,
}

impl Provenance {
    fn current() -> Self {
        Provenance {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyGraph {
    vertices: Vec<KnotVertex>,
    by_fraction: HashMap<Fraction, usize>,
    edges: Vec<AdjEdge>,
    pub provenance: Provenance,
}

impl Default for AdjacencyGraph {
    fn default() -> Self {
        Self::new()
    }
}

impl AdjacencyGraph {
    pub fn new() -> Self {
        AdjacencyGraph {
            vertices: Vec::new(),
            by_fraction: HashMap::new(),
            edges: Vec::new(),
            provenance: Provenance::current(),
        }
    }

    pub fn vertices(&self) -> &[KnotVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[AdjEdge] {
        &self.edges
    }

    pub fn vertex_of(&self, f: &Fraction) -> Option<usize> {
        self.by_fraction.get(f).copied()
    }

    /// Vertex for a class given by its fraction and Jones polynomial.
    pub fn insert_class(&mut self, fraction: Fraction, jones: LaurentPolynomial) -> Result<usize> {
        if let Some(&id) = self.by_fraction.get(&fraction) {
            if self.vertices[id].jones != jones {
                return Err(Error::JonesMismatch { p: fraction.p().clone(), q: fraction.q().clone() });
            }
            return Ok(id);
        }
        let id = self.vertices.len();
        self.by_fraction.insert(fraction.clone(), id);
        self.vertices.push(KnotVertex { id, fraction, jones, names: Vec::new() });
        Ok(id)
    }

    /// Vertex for the closure of a knot word, created on first sight.
    pub fn insert_knot(&mut self, w: &BraidWord) -> Result<usize> {
        let d = plat_closure(w)?;
        if !d.is_knot() {
            return Err(Error::NotAKnot { components: d.component_count() });
        }
        self.insert_class(word_to_fraction(w)?, jones_polynomial(&d)?)
    }

    pub fn add_name(&mut self, id: usize, name: &str) {
        let names = &mut self.vertices[id].names;
        if !names.iter().any(|n| n == name) {
            names.push(name.to_string());
        }
    }

    /// Adds the edge certified by a witness. Returns the edge index, or
    /// `None` when the same edge is already present.
    pub fn insert_witness(
        &mut self,
        witness: &AdjacencyWitness,
        construction: Construction,
        allow_loops: bool,
    ) -> std::result::Result<Option<usize>, String> {
        if !witness.verdict {
            return Err(issue_text(witness));
        }
        let class = |fp: &crate::invariants::Fingerprint| match (&fp.fraction, &fp.jones) {
            (Some(f), Some(j)) => Ok((f.clone(), j.clone())),
            _ => Err("verified closure without fraction or Jones polynomial".to_string()),
        };
        let (sf, sj) = class(&witness.family_fingerprint)?;
        let (df, dj) = class(&witness.base_fingerprint)?;
        if sf == df && !allow_loops {
            return Err(format!("family knot {} equals its target; loops not enabled", sf));
        }
        let src = self.insert_class(sf, sj).map_err(|e| e.to_string())?;
        let dst = self.insert_class(df, dj).map_err(|e| e.to_string())?;
        let params = EdgeParams {
            beta: witness.base_word.clone(),
            m: witness.params.m,
            n: witness.params.n,
            unit: witness.params.unit,
        };
        if self.edges.iter().any(|e| e.src == src && e.dst == dst && e.params == params) {
            return Ok(None);
        }
        self.edges.push(AdjEdge { src, dst, n: 2, construction, params, cosmetic: witness.cosmetic_flag });
        Ok(Some(self.edges.len() - 1))
    }

    /// Length of the longest directed path ending at `dst`, following
    /// edges that are not loops.
    pub fn longest_path_into(&self, dst: usize) -> usize {
        let n = self.vertices.len();
        let mut best: Vec<Option<usize>> = vec![None; n];
        if dst >= n {
            return 0;
        }
        best[dst] = Some(0);
        for _ in 0..n {
            let mut changed = false;
            for e in self.edges.iter().filter(|e| e.src != e.dst) {
                if let Some(d) = best[e.dst] {
                    if best[e.src].is_none_or(|s| s < d + 1) && d < n {
                        best[e.src] = Some(d + 1);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        best.into_iter().flatten().max().unwrap_or(0)
    }
}

fn issue_text(w: &AdjacencyWitness) -> String {
    w.issues.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Clone)]
pub struct BuildConfig {
    pub bases: Vec<BraidWord>,
    pub grid: Vec<FamilyParams>,
    pub tower_depth: usize,
    pub tower_params: FamilyParams,
    pub allow_loops: bool,
    pub policy: FingerprintPolicy,
}

impl BuildConfig {
    pub fn new(bases: Vec<BraidWord>) -> Self {
        BuildConfig {
            bases,
            grid: Vec::new(),
            tower_depth: 0,
            tower_params: FamilyParams { m: 1, n: 1, unit: TwistUnit::Half },
            allow_loops: false,
            policy: FingerprintPolicy::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BuildFailure {
    pub beta: BraidWord,
    pub params: Option<FamilyParams>,
    pub construction: Construction,
    pub level: usize,
    pub reason: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct BuildReport {
    pub verified: usize,
    pub failures: Vec<BuildFailure>,
    /// Verified witnesses in insertion order.
    #[serde(skip)]
    pub witnesses: Vec<AdjacencyWitness>,
}

/// Verifies every grid cell for every base, and the tower from every base,
/// keeping only edges with a true verdict. Cells run in parallel; results
/// are merged in grid order.
pub fn build_family_graph(config: &BuildConfig) -> (AdjacencyGraph, BuildReport) {
    let mut graph = AdjacencyGraph::new();
    graph.provenance.bases = config.bases.clone();
    graph.provenance.grid = config.grid.clone();
    graph.provenance.tower_depth = config.tower_depth;
    graph.provenance.tower_params = (config.tower_depth > 0).then_some(config.tower_params);
    graph.provenance.alexander_cap = Some(config.policy.alexander_cap);
    let mut report = BuildReport::default();

    for base in &config.bases {
        let fail = |params, construction, level, reason: String| BuildFailure {
            beta: base.clone(),
            params,
            construction,
            level,
            reason,
        };
        match graph.insert_knot(base) {
            Ok(id) => graph.add_name(id, &base.to_string()),
            Err(e) => {
                report.failures.push(fail(None, Construction::KBetaFamily, 0, e.to_string()));
                continue;
            }
        }
        let results = verify_grid(base, &config.grid, &config.policy);
        for (params, result) in config.grid.iter().zip(results) {
            let outcome = result.map_err(|e| e.to_string()).and_then(|w| {
                graph.insert_witness(&w, Construction::KBetaFamily, config.allow_loops)?;
                Ok(w)
            });
            match outcome {
                Ok(w) => {
                    report.verified += 1;
                    report.witnesses.push(w);
                }
                Err(reason) => {
                    report.failures.push(fail(Some(*params), Construction::KBetaFamily, 0, reason))
                }
            }
        }

        let mut beta = base.clone();
        for level in 0..config.tower_depth {
            let p = config.tower_params;
            let outcome = verify_two_adjacency(&beta, p, &config.policy)
                .map_err(|e| e.to_string())
                .and_then(|w| {
                    graph.insert_witness(&w, Construction::Tower, config.allow_loops)?;
                    Ok(w)
                });
            match outcome {
                Ok(w) => {
                    beta = w.family_word.clone();
                    report.verified += 1;
                    report.witnesses.push(w);
                }
                Err(reason) => {
                    report.failures.push(fail(Some(p), Construction::Tower, level, reason));
                    break;
                }
            }
        }
    }
    (graph, report)
}

/// Graphviz digraph; loops are drawn bi-directed.
pub fn export_dot(g: &AdjacencyGraph) -> String {
    let mut out = String::from("digraph gamma2 {\n");
    for v in &g.vertices {
        let _ = writeln!(out, "  v{} [label=\"{}\"];", v.id, v.fraction);
    }
    for e in &g.edges {
        let attrs = if e.src == e.dst { ", dir=both" } else { "" };
        let _ = writeln!(out, "  v{} -> v{} [label=\"n={}\"{}];", e.src, e.dst, e.n, attrs);
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize, Deserialize)]
struct VertexRepr {
    id: usize,
    p: serde_json::Number,
    q: serde_json::Number,
    jones: LaurentPolynomial,
    #[serde(default)]
    names: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    version: u64,
    vertices: Vec<VertexRepr>,
    edges: Vec<AdjEdge>,
    #[serde(default)]
    provenance: Provenance,
}

pub fn export_json(g: &AdjacencyGraph) -> String {
    let repr = GraphRepr {
        version: SCHEMA_VERSION,
        vertices: g
            .vertices
            .iter()
            .map(|v| VertexRepr {
                id: v.id,
                p: to_number(v.fraction.p()),
                q: to_number(v.fraction.q()),
                jones: v.jones.clone(),
                names: v.names.clone(),
            })
            .collect(),
        edges: g.edges.clone(),
        provenance: g.provenance.clone(),
    };
    serde_json::to_string_pretty(&repr).expect("graph serializes")
}

pub fn import_json(text: &str) -> Result<AdjacencyGraph> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::GraphJson(e.to_string()))?;
    match value.get("version").and_then(|v| v.as_u64()) {
        Some(SCHEMA_VERSION) => {}
        Some(v) => return Err(Error::SchemaVersion(v)),
        None => return Err(Error::GraphJson("missing version".into())),
    }
    let repr: GraphRepr = serde_json::from_value(value).map_err(|e| Error::GraphJson(e.to_string()))?;
    let mut g = AdjacencyGraph {
        vertices: Vec::new(),
        by_fraction: HashMap::new(),
        edges: Vec::new(),
        provenance: repr.provenance,
    };
    for (i, v) in repr.vertices.into_iter().enumerate() {
        if v.id != i {
            return Err(Error::GraphJson(format!("vertex ids must be 0..n, found {} at {}", v.id, i)));
        }
        let p = from_number(&v.p).ok_or_else(|| Error::GraphJson(format!("bad p {}", v.p)))?;
        let q = from_number(&v.q).ok_or_else(|| Error::GraphJson(format!("bad q {}", v.q)))?;
        let fraction = Fraction::new(p.clone(), q.clone())?;
        if *fraction.p() != p || *fraction.q() != q {
            return Err(Error::GraphJson(format!("fraction {}/{} is not canonical", p, q)));
        }
        if g.by_fraction.insert(fraction.clone(), i).is_some() {
            return Err(Error::GraphJson(format!("duplicate vertex {}", fraction)));
        }
        g.vertices.push(KnotVertex { id: i, fraction, jones: v.jones, names: v.names });
    }
    let mut seen = HashSet::new();
    for e in repr.edges {
        if e.src >= g.vertices.len() || e.dst >= g.vertices.len() {
            return Err(Error::GraphJson(format!("edge {} -> {} has an unknown endpoint", e.src, e.dst)));
        }
        if !seen.insert((e.src, e.dst, e.params.clone())) {
            return Err(Error::GraphJson(format!("duplicate edge {} -> {}", e.src, e.dst)));
        }
        g.edges.push(e);
    }
    Ok(g)
}

/// Rebuilds the witness behind each edge and checks that it still holds
/// and still joins the same two classes. `stride` picks every k-th edge.
pub fn reverify(g: &AdjacencyGraph, policy: &FingerprintPolicy, stride: usize) -> Vec<(usize, Result<bool>)> {
    g.edges
        .iter()
        .enumerate()
        .step_by(stride.max(1))
        .map(|(i, e)| {
            let check = verify_two_adjacency(&e.params.beta, e.params.family(), policy).map(|w| {
                w.verdict
                    && w.family_fingerprint.fraction.as_ref() == Some(&g.vertices[e.src].fraction)
                    && w.base_fingerprint.fraction.as_ref() == Some(&g.vertices[e.dst].fraction)
            });
            (i, check)
        })
        .collect()
}

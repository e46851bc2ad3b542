//! Weighted adjacency graphs of b-manifolds.
//!
//! A vertex stands for a connected component of `M ∖ Z`, an edge for a
//! connected component of the exceptional hypersurface `Z`, joining the two
//! components it separates. Each edge carries the modular weight of its
//! component, a covector in `t*`. Self-loops and parallel edges are allowed.
//!
//! For a connected b-symplectic manifold with an effective Hamiltonian torus
//! action the weights are either all zero or all nonzero; a graph mixing the two
//! is rejected by [`classify`]. When they are all nonzero, weights of edges
//! meeting at a vertex are negative multiples of one another, every vertex has
//! degree at most two, and the graph is a line or an even cycle; see
//! [`validate_nonzero_structure`].

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Signed;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{kernel_lattice, Covector, KernelLattice, LatticeError};
use crate::rational::Rational;
use crate::report::ValidationReport;
use crate::unionfind::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("torus dimension must be at least 1")]
    ZeroTorusDim,
    #[error("graph has no vertices")]
    NoVertices,
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate edge id {0:?}")]
    DuplicateEdge(String),
    #[error("edge {edge:?} references unknown vertex {vertex:?}")]
    UnknownVertex { edge: String, vertex: String },
    #[error("weight of edge {edge:?} has dimension {found}, torus dimension is {expected}")]
    WeightDimension { edge: String, expected: usize, found: usize },
    #[error("graph is disconnected ({components} components); M is assumed connected")]
    Disconnected { components: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdjacencyError {
    #[error(
        "mixed modular weights: zero on {zero:?}, nonzero on {nonzero:?}; the modular weights of a \
         connected b-symplectic manifold with an effective Hamiltonian torus action are all zero or all nonzero"
    )]
    MixedWeights { zero: Vec<String>, nonzero: Vec<String> },
    #[error("operation requires all modular weights to be nonzero")]
    NotAllNonzero,
    #[error("graph has no exceptional components")]
    NoEdges,
    #[error("edges {first:?} and {second:?} have different weight kernels")]
    KernelsDiffer { first: String, second: String },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Vertex or edge identifier. JSON accepts strings or integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Id(pub String);

impl<'de> Deserialize<'de> for Id {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Int(i64),
        }
        Ok(match Raw::deserialize(d)? {
            Raw::Text(s) => Id(s),
            Raw::Int(n) => Id(n.to_string()),
        })
    }
}

impl From<&str> for Id {
    fn from(s: &str) -> Self {
        Id(s.to_string())
    }
}

impl std::fmt::Display for Id {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: Id,
    /// The two separated components; the first is the side with positive
    /// transverse coordinate in log charts.
    pub ends: [Id; 2],
    pub weight: Covector,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.ends[0] == self.ends[1]
    }

    pub fn is_incident(&self, v: &Id) -> bool {
        self.ends[0] == *v || self.ends[1] == *v
    }
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    torus_dim: usize,
    vertices: Vec<Id>,
    edges: Vec<Edge>,
}

/// A validated weighted adjacency graph. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphFile", into = "GraphFile")]
pub struct WeightedAdjacencyGraph {
    torus_dim: usize,
    vertices: Vec<Id>,
    edges: Vec<Edge>,
}

impl TryFrom<GraphFile> for WeightedAdjacencyGraph {
    type Error = GraphError;

    fn try_from(f: GraphFile) -> Result<Self, GraphError> {
        Self::new(f.torus_dim, f.vertices, f.edges)
    }
}

impl From<WeightedAdjacencyGraph> for GraphFile {
    fn from(g: WeightedAdjacencyGraph) -> Self {
        GraphFile {
            torus_dim: g.torus_dim,
            vertices: g.vertices,
            edges: g.edges,
        }
    }
}

impl WeightedAdjacencyGraph {
    pub fn new(torus_dim: usize, vertices: Vec<Id>, edges: Vec<Edge>) -> Result<Self, GraphError> {
        if torus_dim == 0 {
            return Err(GraphError::ZeroTorusDim);
        }
        if vertices.is_empty() {
            return Err(GraphError::NoVertices);
        }
        let mut index = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex(v.0.clone()));
            }
        }
        let mut seen = BTreeSet::new();
        let mut uf = UnionFind::new(vertices.len());
        for e in &edges {
            if !seen.insert(e.id.clone()) {
                return Err(GraphError::DuplicateEdge(e.id.0.clone()));
            }
            if e.weight.dim() != torus_dim {
                return Err(GraphError::WeightDimension {
                    edge: e.id.0.clone(),
                    expected: torus_dim,
                    found: e.weight.dim(),
                });
            }
            let mut ends = [0; 2];
            for (slot, v) in ends.iter_mut().zip(&e.ends) {
                *slot = *index.get(v).ok_or_else(|| GraphError::UnknownVertex {
                    edge: e.id.0.clone(),
                    vertex: v.0.clone(),
                })?;
            }
            uf.union(ends[0], ends[1]);
        }
        let components = uf.count_among(0..vertices.len());
        if components != 1 {
            return Err(GraphError::Disconnected { components });
        }
        Ok(Self {
            torus_dim,
            vertices,
            edges,
        })
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn torus_dim(&self) -> usize {
        self.torus_dim
    }

    pub fn vertices(&self) -> &[Id] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: &Id) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == *id)
    }

    pub fn has_vertex(&self, id: &Id) -> bool {
        self.vertices.contains(id)
    }

    pub fn weight(&self, id: &Id) -> Option<&Covector> {
        self.edge(id).map(|e| &e.weight)
    }

    /// Edges touching `v`; a self-loop is listed once.
    pub fn incident_edges(&self, v: &Id) -> Vec<&Edge> {
        self.edges.iter().filter(|e| e.is_incident(v)).collect()
    }

    /// Number of edge ends at `v` (a self-loop counts twice).
    pub fn degree(&self, v: &Id) -> usize {
        self.edges
            .iter()
            .map(|e| e.ends.iter().filter(|end| *end == v).count())
            .sum()
    }

    /// `true` when `Z` is empty.
    pub fn is_symplectic(&self) -> bool {
        self.edges.is_empty()
    }

    /// The edge with the lexicographically smallest id.
    pub fn reference_edge(&self) -> Option<&Edge> {
        self.edges.iter().min_by(|a, b| a.id.cmp(&b.id))
    }
}

/// Whether the modular weights vanish identically or nowhere.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum ModularWeightClass {
    AllZero {
        /// Set when there are no exceptional components at all.
        symplectic: bool,
    },
    AllNonzero {
        reference_edge: Id,
        /// Shared kernel `t_Z`; `None` when some weights are not proportional.
        common_kernel: Option<KernelLattice>,
        /// `w_e = λ_e · w_ref`; `None` when some weights are not proportional.
        #[serde(serialize_with = "serialize_scalars")]
        edge_scalars: Option<BTreeMap<Id, Rational>>,
    },
}

fn serialize_scalars<S: serde::Serializer>(
    scalars: &Option<BTreeMap<Id, Rational>>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match scalars {
        None => s.serialize_none(),
        Some(map) => {
            use serde::ser::SerializeMap;
            let mut m = s.serialize_map(Some(map.len()))?;
            for (k, v) in map {
                m.serialize_entry(&k.0, &v.to_string())?;
            }
            m.end()
        }
    }
}

impl ModularWeightClass {
    pub fn is_all_nonzero(&self) -> bool {
        matches!(self, ModularWeightClass::AllNonzero { .. })
    }
}

pub fn classify(g: &WeightedAdjacencyGraph) -> Result<ModularWeightClass, AdjacencyError> {
    let mut edges: Vec<&Edge> = g.edges.iter().collect();
    edges.sort_by(|a, b| a.id.cmp(&b.id));
    let (zero, nonzero): (Vec<&Edge>, Vec<&Edge>) = edges.iter().partition(|e| e.weight.is_zero());
    if !zero.is_empty() && !nonzero.is_empty() {
        return Err(AdjacencyError::MixedWeights {
            zero: zero.iter().map(|e| e.id.0.clone()).collect(),
            nonzero: nonzero.iter().map(|e| e.id.0.clone()).collect(),
        });
    }
    if nonzero.is_empty() {
        return Ok(ModularWeightClass::AllZero {
            symplectic: g.is_symplectic(),
        });
    }
    let reference = nonzero[0];
    let scalars: Option<BTreeMap<Id, Rational>> = nonzero
        .iter()
        .map(|e| e.weight.ratio_to(&reference.weight).map(|l| (e.id.clone(), l)))
        .collect();
    let common_kernel = match scalars {
        Some(_) => Some(kernel_lattice(&reference.weight)?),
        None => None,
    };
    Ok(ModularWeightClass::AllNonzero {
        reference_edge: reference.id.clone(),
        common_kernel,
        edge_scalars: scalars,
    })
}

/// Checks the structure forced by nonzero modular weights:
/// (i) degrees at most two, (ii) weights at a common vertex are negative
/// multiples, (iii) the graph is a line or an even cycle, (iv) one shared kernel.
pub fn validate_nonzero_structure(g: &WeightedAdjacencyGraph) -> Result<ValidationReport, AdjacencyError> {
    if !classify(g)?.is_all_nonzero() {
        return Err(AdjacencyError::NotAllNonzero);
    }
    let mut report = ValidationReport::default();

    let high_degree: Vec<String> = g
        .vertices
        .iter()
        .filter(|v| g.degree(v) > 2)
        .map(|v| v.0.clone())
        .collect();
    report.push("i", "every vertex has degree at most 2", high_degree.clone());

    let mut bad_pairs = Vec::new();
    for v in &g.vertices {
        let inc = g.incident_edges(v);
        for (i, a) in inc.iter().enumerate() {
            for b in &inc[i + 1..] {
                let negative = b.weight.ratio_to(&a.weight).is_some_and(|l| l.is_negative());
                if !negative {
                    bad_pairs.push(format!("{}:{}/{}", v, a.id, b.id));
                }
            }
        }
    }
    report.push("ii", "weights of edges sharing a vertex are negative multiples", bad_pairs);

    let (nv, ne) = (g.vertices.len(), g.edges.len());
    let shape_ok = high_degree.is_empty() && (ne + 1 == nv || (ne == nv && nv % 2 == 0));
    let shape_offending = if shape_ok {
        Vec::new()
    } else if ne == nv && high_degree.is_empty() {
        vec![format!("cycle with {nv} vertices")]
    } else {
        vec![format!("{nv} vertices, {ne} edges")]
    };
    report.push("iii", "graph is a line or a cycle with an even number of vertices", shape_offending);

    let kernel_offending = match common_kernel(g) {
        Ok(_) => Vec::new(),
        Err(AdjacencyError::KernelsDiffer { first, second }) => vec![first, second],
        Err(e) => return Err(e),
    };
    report.push("iv", "all edge weights share one kernel t_Z", kernel_offending);
    Ok(report)
}

/// The kernel lattice shared by every edge weight.
pub fn common_kernel(g: &WeightedAdjacencyGraph) -> Result<KernelLattice, AdjacencyError> {
    let mut edges: Vec<&Edge> = g.edges.iter().collect();
    edges.sort_by(|a, b| a.id.cmp(&b.id));
    let first = edges.first().ok_or(AdjacencyError::NoEdges)?;
    let kernel = kernel_lattice(&first.weight)?;
    for e in &edges[1..] {
        if kernel_lattice(&e.weight)? != kernel {
            return Err(AdjacencyError::KernelsDiffer {
                first: first.id.0.clone(),
                second: e.id.0.clone(),
            });
        }
    }
    Ok(kernel)
}

/// Graph of the form `v0 – e0 – v1 – … – vn` with the given weights.
pub fn path_graph(torus_dim: usize, weights: &[Covector]) -> Result<WeightedAdjacencyGraph, GraphError> {
    let vertices: Vec<Id> = (0..=weights.len()).map(|i| Id(format!("v{i}"))).collect();
    let edges = weights
        .iter()
        .enumerate()
        .map(|(i, w)| Edge {
            id: Id(format!("e{i}")),
            ends: [vertices[i].clone(), vertices[i + 1].clone()],
            weight: w.clone(),
        })
        .collect();
    WeightedAdjacencyGraph::new(torus_dim, vertices, edges)
}

/// Cycle `v0 – e0 – v1 – … – e(n-1) – v0` with one edge per weight.
pub fn cycle_graph(torus_dim: usize, weights: &[Covector]) -> Result<WeightedAdjacencyGraph, GraphError> {
    let n = weights.len();
    let vertices: Vec<Id> = (0..n).map(|i| Id(format!("v{i}"))).collect();
    let edges = weights
        .iter()
        .enumerate()
        .map(|(i, w)| Edge {
            id: Id(format!("e{i}")),
            ends: [vertices[i].clone(), vertices[(i + 1) % n].clone()],
            weight: w.clone(),
        })
        .collect();
    WeightedAdjacencyGraph::new(torus_dim, vertices, edges)
}

/// Sign pattern of `w_e / w_ref` along every edge, for nonzero proportional weights.
pub fn scalar_signs(g: &WeightedAdjacencyGraph) -> Option<BTreeMap<Id, bool>> {
    match classify(g).ok()? {
        ModularWeightClass::AllNonzero {
            edge_scalars: Some(s), ..
        } => Some(s.into_iter().map(|(k, v)| (k, v.is_positive())).collect()),
        _ => None,
    }
}

/// A random connected graph whose weights mix zero and nonzero covectors.
pub fn random_mixed_graph<R: Rng>(rng: &mut R) -> WeightedAdjacencyGraph {
    let k = rng.random_range(1..=3);
    let mut weights: Vec<Covector> = (0..rng.random_range(2..=6)).map(|_| random_covector(rng, k, false)).collect();
    let zero = rng.random_range(0..weights.len());
    let nonzero = (zero + rng.random_range(1..weights.len())) % weights.len();
    weights[zero] = Covector::zero(k);
    weights[nonzero] = random_covector(rng, k, true);
    random_shape(rng, k, weights)
}

/// A random graph with all weights zero, or a random line or even cycle whose
/// weights are alternating multiples of one primitive covector.
pub fn random_pure_graph<R: Rng>(rng: &mut R, nonzero: bool) -> WeightedAdjacencyGraph {
    let k = rng.random_range(1..=3);
    if !nonzero {
        let weights = vec![Covector::zero(k); rng.random_range(1..=6)];
        return random_shape(rng, k, weights);
    }
    let base = random_covector(rng, k, true);
    let cycle = rng.random_bool(0.5);
    let n = if cycle { 2 * rng.random_range(1..=3) } else { rng.random_range(1..=5) };
    let weights: Vec<Covector> = (0..n)
        .map(|i| {
            let m = Rational::from_integer(rng.random_range(1..=3).into());
            base.scale(&if i % 2 == 0 { m } else { -m })
        })
        .collect();
    if cycle {
        cycle_graph(k, &weights).expect("cycle")
    } else {
        path_graph(k, &weights).expect("path")
    }
}

fn random_covector<R: Rng>(rng: &mut R, k: usize, nonzero: bool) -> Covector {
    loop {
        let c: Vec<i64> = (0..k).map(|_| rng.random_range(-3..=3)).collect();
        if !nonzero || c.iter().any(|&x| x != 0) {
            return Covector::from_ints(&c);
        }
    }
}

/// Random connected multigraph with one edge per weight: a random spanning
/// tree first, remaining edges between arbitrary vertices.
fn random_shape<R: Rng>(rng: &mut R, k: usize, weights: Vec<Covector>) -> WeightedAdjacencyGraph {
    let nv = rng.random_range(1..=weights.len().min(5) + 1);
    let vertices: Vec<Id> = (0..nv).map(|i| Id(format!("v{i}"))).collect();
    let edges = weights
        .into_iter()
        .enumerate()
        .map(|(i, weight)| {
            let ends = if i + 1 < nv {
                [vertices[rng.random_range(0..=i)].clone(), vertices[i + 1].clone()]
            } else {
                [vertices[rng.random_range(0..nv)].clone(), vertices[rng.random_range(0..nv)].clone()]
            };
            Edge {
                id: Id(format!("e{i}")),
                ends,
                weight,
            }
        })
        .collect();
    WeightedAdjacencyGraph::new(k, vertices, edges).expect("spanning tree keeps the graph connected")
}

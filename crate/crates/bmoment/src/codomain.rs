//! The extended codomain `R_G = t* × V ⊔ t_Z* × E` of a b-moment map.
//!
//! Interior strata are copies of `t*`, one per vertex of the weighted
//! adjacency graph. Exceptional strata are copies of `t_Z*`, one per edge,
//! sitting "at infinity": along a log chart the coordinate
//! `r = ⟨X_e, ξ⟩` tends to `−∞` as the moment approaches the exceptional
//! component, while `η`, the restriction of `ξ` to `t_Z`, stays finite.
//!
//! `t_Z*` is written in the dual of the kernel basis returned by
//! [`common_kernel`], so `η_j = ⟨b_j, ξ⟩`.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::adjacency::{common_kernel, validate_nonzero_structure, AdjacencyError, Id, WeightedAdjacencyGraph};
use crate::lattice::{
    is_unimodular_completion, pairing, primitive_complement, reconstruct, Covector, KernelLattice, LatticeError,
    LatticeVector,
};
use crate::rational::{self, Rational};
use crate::report::ValidationReport;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CodomainError {
    #[error(transparent)]
    Adjacency(#[from] AdjacencyError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("graph fails the nonzero-weight structure conditions {failed:?}")]
    InvalidGraph { failed: Vec<String>, report: ValidationReport },
    #[error("no log chart for edge {0:?}")]
    MissingChart(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("vertex {vertex:?} is not an end of edge {edge:?}")]
    NotIncident { vertex: String, edge: String },
    #[error("point has dimension {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("direction {direction} is not a valid log-chart direction for edge {edge:?}: {reason}")]
    BadDirection {
        edge: String,
        direction: LatticeVector,
        reason: &'static str,
    },
}

/// A point of `R_G`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ExtendedPoint {
    Interior { vertex: Id, xi: Covector },
    Exceptional { edge: Id, eta: Covector },
}

impl ExtendedPoint {
    pub fn interior(vertex: impl Into<Id>, xi: Covector) -> Self {
        ExtendedPoint::Interior {
            vertex: vertex.into(),
            xi,
        }
    }

    pub fn exceptional(edge: impl Into<Id>, eta: Covector) -> Self {
        ExtendedPoint::Exceptional { edge: edge.into(), eta }
    }
}

impl From<String> for Id {
    fn from(s: String) -> Self {
        Id(s)
    }
}

/// Log coordinates next to one side of an exceptional component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LogChart {
    pub edge: Id,
    /// The vertex on this side of the component.
    pub side: Id,
    /// Primitive `X_e` with `⟨X_e, w_e⟩ > 0`, completing the kernel basis to a `ℤ`-basis.
    pub direction: LatticeVector,
    /// The modular period `c_e = ⟨X_e, w_e⟩`.
    #[serde(with = "rational::serde_rational")]
    pub period: Rational,
    /// `+1` on the first end of the edge, `−1` on the second.
    pub sign: i8,
}

impl LogChart {
    /// Transverse coordinate `u = sign · exp(r / c_e)`; `u → 0` at the component.
    pub fn transverse(&self, r: f64) -> f64 {
        f64::from(self.sign) * (r / rational::to_f64(&self.period)).exp()
    }

    /// Inverse of [`LogChart::transverse`] on this side.
    pub fn log_coordinate(&self, u: f64) -> f64 {
        rational::to_f64(&self.period) * u.abs().ln()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct EdgeChart {
    direction: LatticeVector,
    period: Rational,
}

/// `R_G` for a graph whose weights are all nonzero and pass the structure checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedCodomain {
    graph: WeightedAdjacencyGraph,
    kernel: KernelLattice,
    charts: BTreeMap<Id, EdgeChart>,
}

impl ExtendedCodomain {
    pub fn new(graph: WeightedAdjacencyGraph) -> Result<Self, CodomainError> {
        let report = validate_nonzero_structure(&graph)?;
        if !report.passed() {
            return Err(CodomainError::InvalidGraph {
                failed: report.failed_conditions().iter().map(|s| s.to_string()).collect(),
                report,
            });
        }
        let kernel = common_kernel(&graph)?;
        let mut charts = BTreeMap::new();
        for e in graph.edges() {
            let direction = primitive_complement(&e.weight)?;
            let period = pairing(&direction, &e.weight)?;
            charts.insert(e.id.clone(), EdgeChart { direction, period });
        }
        Ok(Self { graph, kernel, charts })
    }

    /// Replaces the chart direction of one edge by another admissible choice.
    pub fn with_direction(mut self, edge: &Id, direction: LatticeVector) -> Result<Self, CodomainError> {
        let weight = self
            .graph
            .weight(edge)
            .ok_or_else(|| CodomainError::MissingChart(edge.0.clone()))?;
        let bad = |reason| CodomainError::BadDirection {
            edge: edge.0.clone(),
            direction: direction.clone(),
            reason,
        };
        let period = pairing(&direction, weight)?;
        if !period.is_positive() {
            return Err(bad("does not pair positively with the weight"));
        }
        if !is_unimodular_completion(self.kernel.basis(), &direction) {
            return Err(bad("does not complete the kernel basis to a lattice basis"));
        }
        self.charts.insert(edge.clone(), EdgeChart { direction, period });
        Ok(self)
    }

    pub fn graph(&self) -> &WeightedAdjacencyGraph {
        &self.graph
    }

    pub fn kernel(&self) -> &KernelLattice {
        &self.kernel
    }

    pub fn torus_dim(&self) -> usize {
        self.graph.torus_dim()
    }

    /// Chart on the side of `vertex` next to `edge`.
    pub fn chart(&self, edge: &Id, vertex: &Id) -> Result<LogChart, CodomainError> {
        let e = self
            .graph
            .edge(edge)
            .ok_or_else(|| CodomainError::MissingChart(edge.0.clone()))?;
        let sign = if e.ends[0] == *vertex {
            1
        } else if e.ends[1] == *vertex {
            -1
        } else {
            return Err(CodomainError::NotIncident {
                vertex: vertex.0.clone(),
                edge: edge.0.clone(),
            });
        };
        let c = &self.charts[edge];
        Ok(LogChart {
            edge: edge.clone(),
            side: vertex.clone(),
            direction: c.direction.clone(),
            period: c.period.clone(),
            sign,
        })
    }

    /// Both side charts of `edge`, first end first.
    pub fn charts(&self, edge: &Id) -> Result<[LogChart; 2], CodomainError> {
        let e = self
            .graph
            .edge(edge)
            .ok_or_else(|| CodomainError::MissingChart(edge.0.clone()))?;
        let mut a = self.chart(edge, &e.ends[0])?;
        let mut b = self.chart(edge, &e.ends[1])?;
        a.sign = 1;
        b.sign = -1;
        Ok([a, b])
    }

    pub fn direction(&self, edge: &Id) -> Result<&LatticeVector, CodomainError> {
        self.charts
            .get(edge)
            .map(|c| &c.direction)
            .ok_or_else(|| CodomainError::MissingChart(edge.0.clone()))
    }

    pub fn period(&self, edge: &Id) -> Result<&Rational, CodomainError> {
        self.charts
            .get(edge)
            .map(|c| &c.period)
            .ok_or_else(|| CodomainError::MissingChart(edge.0.clone()))
    }

    /// Splits `ξ ∈ t*` into `(η, r)` with `η = ξ|_{t_Z}` and `r = ⟨X_e, ξ⟩`.
    pub fn decompose(&self, xi: &Covector, edge: &Id) -> Result<(Covector, Rational), CodomainError> {
        self.check_dim(xi.dim(), self.torus_dim())?;
        let x = self.direction(edge)?;
        Ok((self.kernel.restrict(xi)?, pairing(x, xi)?))
    }

    /// The unique `ξ` with the given chart coordinates.
    pub fn reconstruct(&self, eta: &Covector, r: &Rational, edge: &Id) -> Result<Covector, CodomainError> {
        self.check_dim(eta.dim(), self.kernel.rank())?;
        let x = self.direction(edge)?;
        Ok(reconstruct(&self.kernel, x, eta, r).expect("kernel basis and chart direction form a lattice basis"))
    }

    /// The exceptional point reached as `r → −∞` at fixed `η`.
    pub fn limit_at_infinity(&self, eta: &Covector, edge: &Id) -> Result<ExtendedPoint, CodomainError> {
        self.check_dim(eta.dim(), self.kernel.rank())?;
        self.direction(edge)?;
        Ok(ExtendedPoint::exceptional(edge.clone(), eta.clone()))
    }

    /// Checks that the point's stratum exists and its coordinates have the right dimension.
    pub fn check_point(&self, p: &ExtendedPoint) -> Result<(), CodomainError> {
        match p {
            ExtendedPoint::Interior { vertex, xi } => {
                if !self.graph.has_vertex(vertex) {
                    return Err(CodomainError::UnknownVertex(vertex.0.clone()));
                }
                self.check_dim(xi.dim(), self.torus_dim())
            }
            ExtendedPoint::Exceptional { edge, eta } => {
                self.direction(edge)?;
                self.check_dim(eta.dim(), self.kernel.rank())
            }
        }
    }

    /// Kernel coordinates `α` of `X ∈ t_Z ⊗ ℚ`, so that `⟨X, ξ⟩ = Σ α_j η_j`.
    pub(crate) fn kernel_coordinates(&self, x: &LatticeVector) -> Option<Vec<Rational>> {
        self.kernel.coordinates_of(x)
    }

    /// `m` in `X = X' + m·X_e` with `X' ∈ t_Z ⊗ ℚ`.
    pub(crate) fn transverse_component(&self, x: &LatticeVector, edge: &Id) -> Result<Rational, CodomainError> {
        let w = self
            .graph
            .weight(edge)
            .ok_or_else(|| CodomainError::MissingChart(edge.0.clone()))?;
        Ok(pairing(x, w)? / self.period(edge)?)
    }

    fn check_dim(&self, found: usize, expected: usize) -> Result<(), CodomainError> {
        if found == expected {
            Ok(())
        } else {
            Err(CodomainError::DimensionMismatch { expected, found })
        }
    }
}

/// `true` when `⟨X, w⟩` vanishes for the weight `w`.
pub(crate) fn in_kernel(x: &LatticeVector, w: &Covector) -> bool {
    pairing(x, w).map(|p| p.is_zero()).unwrap_or(false)
}

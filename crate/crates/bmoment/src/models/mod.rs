//! Desk-scale b-symplectic manifolds with Hamiltonian torus actions.
//!
//! Each family is a product of [`Surface`]s. The `j`-th circle of the torus
//! rotates exactly one surface, so the moment map is the list of that
//! surface's Hamiltonians and every fixed point of the torus is a product of
//! rotation fixed points with arbitrary points of the surfaces nobody rotates.

mod analysis;
mod level;
mod sampling;
pub mod surface;
mod tolerance;

pub use analysis::{
    estimate_weight, fixed_points, gradient_check, hessian_indices, modular_weight_estimate, stratified_weights,
    stratified_weights_at, symplectic_cut, verify_leaf_image, vertex_fixed_point_distance, CriticalComponent,
    CutResult, FixedPointOutcome, GeneratorFit, HessianIndices, LeafImageReport, NotCircleAction, WeightEstimate,
};
pub use level::{level_connectivity, Axis, LevelGrid};
pub use sampling::{convexity_check, hausdorff_distance, image_sample, ConvexityReport, MomentSample, MomentSampleSet};
pub use tolerance::Tolerances;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::adjacency::{Edge, Id, WeightedAdjacencyGraph};
use crate::bpolytope::{BPolytope, HalfSpace};
use crate::codomain::ExtendedCodomain;
use crate::lattice::Covector;
use crate::rational::{self, int, Rational};
use surface::{Curve, Surface, SurfacePoint, Window};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("point has {found} surface factors, expected {expected}")]
    PointShape { expected: usize, found: usize },
    #[error("point is outside the coordinate domain of factor {factor}")]
    OutsideDomain { factor: usize },
    #[error("unknown exceptional component {0:?}")]
    UnknownComponent(String),
    #[error("component name {0:?} is ambiguous; qualify it as f<factor>.<name>")]
    AmbiguousComponent(String),
    #[error("operation needs {needed}, family {family} does not provide it")]
    Unsupported { family: &'static str, needed: &'static str },
    #[error(
        "weight fit for generator {generator} did not converge: estimates {estimates:?} spread more than {tolerance}"
    )]
    NonConvergent {
        generator: usize,
        estimates: Vec<f64>,
        tolerance: f64,
    },
    #[error(
        "component {component:?} has modular weight zero (estimate {estimate:e}); the level ⟨X, μ⟩ = −N is never \
         reached next to it, so no symplectic cut exists there. A zero weight leaves the moment map bounded near \
         the component, which is why weights cannot be zero on one component and nonzero on another"
    )]
    ZeroWeightCut { component: String, estimate: f64 },
    #[error("cut level {level} leaves no room below the cap at {cap}")]
    EmptyCut { level: f64, cap: f64 },
    #[error("the leaf-image comparison needs all modular weights to vanish")]
    NotAllZero,
    #[error("base point lies at distance {distance:e} from the corner, below {minimum:e}")]
    NearCorner { distance: f64, minimum: f64 },
    #[error("level set {level} is empty on the grid")]
    EmptyLevel { level: f64 },
    #[error("need at least two finite samples, found {0}")]
    InsufficientSamples(usize),
}

/// Leaf polytope `Δ_L = Π [lo_i, hi_i]`, realised by a product of round spheres.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Leaf {
    #[serde(with = "interval_list")]
    pub intervals: Vec<(Rational, Rational)>,
}

impl Default for Leaf {
    fn default() -> Self {
        Self {
            intervals: vec![(int(0), int(1))],
        }
    }
}

mod interval_list {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[(Rational, Rational)], s: S) -> Result<S::Ok, S::Error> {
        let text: Vec<[String; 2]> = v.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect();
        text.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(Rational, Rational)>, D::Error> {
        let text: Vec<[String; 2]> = Vec::deserialize(d)?;
        text.iter()
            .map(|[a, b]| {
                let a = rational::parse_rational(a).map_err(serde::de::Error::custom)?;
                let b = rational::parse_rational(b).map_err(serde::de::Error::custom)?;
                Ok((a, b))
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BSurface {
    #[default]
    BSphere,
    BTorus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// `L × S¹ × (−ε, ε)` near a component of `Z`, cut at `|t| = ε`; moment `(μ_L, c log|t|)`.
    LocalModel {
        #[serde(default)]
        leaf: Leaf,
        #[serde(with = "rational::serde_rational")]
        c: Rational,
        #[serde(with = "rational::serde_rational")]
        eps: Rational,
    },
    BTorus,
    BSphere,
    /// A b-surface times a round sphere; the circle rotates the sphere only.
    ZeroWeightProduct {
        #[serde(default)]
        surface: BSurface,
    },
    /// `(ℝ², (1/x) dy∧dx)` with the flow of `x ∂_y`: an ℝ-action, not a circle action.
    RActionCounterexample,
    /// `T² × T²` with two b-tori meeting in a corner; the circle rotates the first.
    CSymplecticProduct,
}

/// A cut `⟨X_e, μ⟩ ≥ −level` next to one exceptional component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cut {
    pub component: String,
    #[serde(with = "rational::serde_rational")]
    pub level: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifoldSpec {
    #[serde(flatten)]
    pub family: Family,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cuts: Vec<Cut>,
}

/// One surface factor and the circle generator rotating it, if any.
#[derive(Debug, Clone, PartialEq)]
pub struct Factor {
    pub surface: Surface,
    pub generator: Option<usize>,
}

/// A point of a product manifold, one chart point per factor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifoldPoint {
    pub factors: Vec<SurfacePoint>,
}

/// Moment value; components are `±∞` on a component of `Z` with nonzero weight.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentValue {
    pub values: Vec<f64>,
    pub on_z: bool,
}

/// An exceptional component: a curve of one factor times the other factors.
#[derive(Debug, Clone, PartialEq)]
pub struct Component {
    pub name: String,
    pub factor: usize,
    pub curve: Curve,
}

impl From<Family> for ManifoldSpec {
    fn from(family: Family) -> Self {
        Self { family, cuts: vec![] }
    }
}

impl ManifoldSpec {
    pub fn local_model(intervals: &[(Rational, Rational)], c: Rational, eps: Rational) -> Self {
        Family::LocalModel {
            leaf: Leaf {
                intervals: intervals.to_vec(),
            },
            c,
            eps,
        }
        .into()
    }

    pub fn b_torus() -> Self {
        Family::BTorus.into()
    }

    pub fn b_sphere() -> Self {
        Family::BSphere.into()
    }

    pub fn zero_weight_product(surface: BSurface) -> Self {
        Family::ZeroWeightProduct { surface }.into()
    }

    pub fn r_action_counterexample() -> Self {
        Family::RActionCounterexample.into()
    }

    pub fn c_symplectic_product() -> Self {
        Family::CSymplecticProduct.into()
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        let spec: Self = serde_json::from_str(text).map_err(|e| e.to_string())?;
        spec.check().map_err(|e| e.to_string())?;
        Ok(spec)
    }

    pub fn family_name(&self) -> &'static str {
        match self.family {
            Family::LocalModel { .. } => "local_model",
            Family::BTorus => "b_torus",
            Family::BSphere => "b_sphere",
            Family::ZeroWeightProduct { .. } => "zero_weight_product",
            Family::RActionCounterexample => "r_action_counterexample",
            Family::CSymplecticProduct => "c_symplectic_product",
        }
    }

    /// Validates parameters and cut components.
    pub fn check(&self) -> Result<(), ModelError> {
        if let Family::LocalModel { leaf, c, eps } = &self.family {
            let zero = int(0);
            if *c <= zero || *eps <= zero {
                return Err(ModelError::Parameter("c and eps must be positive".into()));
            }
            if leaf.intervals.iter().any(|(a, b)| a >= b) {
                return Err(ModelError::Parameter("leaf intervals must have lo < hi".into()));
            }
        }
        for cut in &self.cuts {
            self.component(&cut.component)?;
        }
        Ok(())
    }

    pub fn factors(&self) -> Vec<Factor> {
        let f = |surface, generator| Factor { surface, generator };
        match &self.family {
            Family::LocalModel { leaf, c, eps } => {
                let m = leaf.intervals.len();
                let mut out: Vec<Factor> = leaf
                    .intervals
                    .iter()
                    .enumerate()
                    .map(|(j, (lo, hi))| {
                        f(
                            Surface::RoundSphere {
                                lo: rational::to_f64(lo),
                                hi: rational::to_f64(hi),
                            },
                            Some(j),
                        )
                    })
                    .collect();
                out.push(f(
                    Surface::CappedCylinder {
                        c: rational::to_f64(c),
                        eps: rational::to_f64(eps),
                    },
                    Some(m),
                ));
                out
            }
            Family::BTorus => vec![f(Surface::BTorus { phase: 0.0 }, Some(0))],
            Family::BSphere => vec![f(Surface::BSphere, Some(0))],
            Family::ZeroWeightProduct { surface } => {
                let b = match surface {
                    BSurface::BSphere => Surface::BSphere,
                    BSurface::BTorus => Surface::BTorus { phase: 0.0 },
                };
                vec![f(b, None), f(Surface::RoundSphere { lo: -1.0, hi: 1.0 }, Some(0))]
            }
            Family::RActionCounterexample => vec![f(Surface::Plane, Some(0))],
            Family::CSymplecticProduct => vec![
                f(Surface::BTorus { phase: 0.0 }, Some(0)),
                f(
                    Surface::BTorus {
                        phase: std::f64::consts::FRAC_PI_2,
                    },
                    None,
                ),
            ],
        }
    }

    pub fn torus_dim(&self) -> usize {
        self.factors().iter().filter(|f| f.generator.is_some()).count()
    }

    pub fn dimension(&self) -> usize {
        2 * self.factors().len()
    }

    pub fn coordinate_names(&self) -> Vec<String> {
        self.factors()
            .iter()
            .enumerate()
            .flat_map(|(i, f)| f.surface.coordinate_names().map(|n| format!("{n}{}", i + 1)))
            .collect()
    }

    /// Exceptional components; names are qualified when several factors have curves.
    pub fn components(&self) -> Vec<Component> {
        let factors = self.factors();
        let with_curves = factors.iter().filter(|f| !f.surface.curves().is_empty()).count();
        factors
            .iter()
            .enumerate()
            .flat_map(|(i, f)| {
                f.surface.curves().into_iter().map(move |curve| Component {
                    name: if with_curves > 1 {
                        format!("f{}.{}", i + 1, curve.name)
                    } else {
                        curve.name.to_string()
                    },
                    factor: i,
                    curve,
                })
            })
            .collect()
    }

    pub fn component(&self, name: &str) -> Result<Component, ModelError> {
        self.components()
            .into_iter()
            .find(|c| c.name == name)
            .ok_or_else(|| ModelError::UnknownComponent(name.to_string()))
    }

    /// The single factor carrying `Z`, for b-symplectic families.
    fn b_factor(&self) -> Option<usize> {
        let factors = self.factors();
        let mut it = factors
            .iter()
            .enumerate()
            .filter(|(_, f)| !f.surface.curves().is_empty())
            .map(|(i, _)| i);
        let first = it.next()?;
        it.next().is_none().then_some(first)
    }

    /// Exact modular weight of a component, from the analytic log coefficient.
    pub fn exact_weight(&self, component: &Component) -> Covector {
        let k = self.torus_dim();
        let mut w = Covector::zero(k);
        let factor = &self.factors()[component.factor];
        if let Some(j) = factor.generator {
            let c = match &self.family {
                Family::LocalModel { c, .. } => c.clone(),
                _ => rational::from_f64(component.curve.coefficient).expect("finite coefficient"),
            };
            let mut coords = w.coords().to_vec();
            coords[j] = c;
            w = Covector::new(coords);
        }
        w
    }

    /// Weighted adjacency graph; `None` for the c-symplectic family, whose
    /// exceptional set has a corner.
    pub fn graph(&self) -> Option<WeightedAdjacencyGraph> {
        let b = self.b_factor()?;
        let factors = self.factors();
        let sides = factors[b].surface.sides();
        let vertices: Vec<Id> = sides.iter().map(|s| Id::from(*s)).collect();
        let edges = self
            .components()
            .iter()
            .map(|c| Edge {
                id: Id(c.name.clone()),
                ends: [vertices[c.curve.ends[0]].clone(), vertices[c.curve.ends[1]].clone()],
                weight: self.exact_weight(c),
            })
            .collect();
        Some(WeightedAdjacencyGraph::new(self.torus_dim(), vertices, edges).expect("built-in graphs are valid"))
    }

    /// Cut level `c log ε` of the local model as an exact rational of its `f64` value.
    pub fn cap_level(&self) -> Option<Rational> {
        match &self.family {
            Family::LocalModel { .. } => {
                let f = self.factors().last().expect("cylinder").surface.cap_level();
                rational::from_f64(f)
            }
            _ => None,
        }
    }

    /// The known b-polytope of a family with nonzero weights.
    pub fn b_polytope(&self) -> Option<BPolytope> {
        let graph = self.graph()?;
        let codomain = ExtendedCodomain::new(graph).ok()?;
        let k = self.torus_dim();
        let unit = |j: usize, s: i64| -> Vec<i64> {
            let mut v = vec![0; k];
            v[j] = s;
            v
        };
        let halfspaces = match &self.family {
            Family::BSphere => vec![
                HalfSpace::vertex_local("north", &[-1], int(0)),
                HalfSpace::vertex_local("south", &[-1], int(0)),
            ],
            Family::BTorus => vec![],
            Family::LocalModel { leaf, .. } => {
                let n = self.cap_level()?;
                let mut hs = Vec::new();
                for (j, (lo, hi)) in leaf.intervals.iter().enumerate() {
                    hs.push(HalfSpace::global(&unit(j, 1), hi.clone()));
                    hs.push(HalfSpace::global(&unit(j, -1), -lo.clone()));
                }
                for v in ["plus", "minus"] {
                    hs.push(HalfSpace::vertex_local(v, &unit(k - 1, 1), n.clone()));
                }
                hs
            }
            _ => return None,
        };
        BPolytope::new(codomain, halfspaces).ok()
    }

    /// Vertex of the adjacency graph containing the point, `None` on `Z`.
    pub fn stratum(&self, p: &ManifoldPoint) -> Option<Id> {
        let b = self.b_factor()?;
        let surface = &self.factors()[b].surface;
        surface.side(&p.factors[b]).map(|i| Id::from(surface.sides()[i]))
    }

    pub fn check_point(&self, p: &ManifoldPoint) -> Result<(), ModelError> {
        let factors = self.factors();
        if p.factors.len() != factors.len() {
            return Err(ModelError::PointShape {
                expected: factors.len(),
                found: p.factors.len(),
            });
        }
        for (i, (f, x)) in factors.iter().zip(&p.factors).enumerate() {
            if !f.surface.in_domain(x) {
                return Err(ModelError::OutsideDomain { factor: i });
            }
        }
        Ok(())
    }

    pub fn moment_eval(&self, p: &ManifoldPoint) -> Result<MomentValue, ModelError> {
        self.check_point(p)?;
        Ok(self.moment_unchecked(p))
    }

    pub(crate) fn moment_unchecked(&self, p: &ManifoldPoint) -> MomentValue {
        let mut values = vec![0.0; self.torus_dim()];
        let mut on_z = false;
        for (f, x) in self.factors().iter().zip(&p.factors) {
            if let Some(j) = f.generator {
                values[j] = f.surface.hamiltonian(x);
                on_z |= !values[j].is_finite();
            }
        }
        MomentValue { values, on_z }
    }

    /// `H_X = Σ X_j μ_j`, with zero coefficients never touching divergent components.
    pub(crate) fn hamiltonian(&self, x: &[f64], p: &ManifoldPoint) -> f64 {
        self.factors()
            .iter()
            .zip(&p.factors)
            .filter_map(|(f, pt)| f.generator.map(|j| (j, f, pt)))
            .filter(|(j, _, _)| x[*j] != 0.0)
            .map(|(j, f, pt)| x[j] * f.surface.hamiltonian(pt))
            .sum()
    }

    /// Sampling windows per factor after applying the cuts.
    pub(crate) fn windows(&self, depth: f64) -> Result<Vec<Window>, ModelError> {
        let factors = self.factors();
        let mut windows: Vec<Window> = factors.iter().map(|f| f.surface.default_window(depth)).collect();
        for cut in &self.cuts {
            let comp = self.component(&cut.component)?;
            let level = rational::to_f64(&cut.level);
            let w = &mut windows[comp.factor];
            // ⟨X_e, μ⟩ = sign(c)·H near the component.
            if comp.curve.coefficient > 0.0 {
                w.lo = w.lo.max(-level);
            } else {
                w.hi = w.hi.min(level);
            }
            if w.lo >= w.hi {
                return Err(ModelError::EmptyCut {
                    level,
                    cap: factors[comp.factor].surface.cap_level(),
                });
            }
        }
        Ok(windows)
    }

    /// A point away from `Z` and from every fixed point.
    pub fn generic_point(&self) -> ManifoldPoint {
        ManifoldPoint {
            factors: self
                .factors()
                .iter()
                .map(|f| {
                    let [a, b] = f.surface.generic_point();
                    SurfacePoint::main(a, b)
                })
                .collect(),
        }
    }

    /// The built-in families with default parameters.
    pub fn builtins() -> BTreeMap<&'static str, ManifoldSpec> {
        BTreeMap::from([
            ("local_model", ManifoldSpec::local_model(&[(int(0), int(1))], int(1), int(1))),
            ("b_torus", ManifoldSpec::b_torus()),
            ("b_sphere", ManifoldSpec::b_sphere()),
            ("zero_weight_product", ManifoldSpec::zero_weight_product(BSurface::BSphere)),
            ("r_action_counterexample", ManifoldSpec::r_action_counterexample()),
            ("c_symplectic_product", ManifoldSpec::c_symplectic_product()),
        ])
    }
}

impl ManifoldPoint {
    pub fn main(coords: &[[f64; 2]]) -> Self {
        Self {
            factors: coords.iter().map(|&[a, b]| SurfacePoint::main(a, b)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adjacency::{classify, ModularWeightClass};
    use crate::codomain::ExtendedPoint;
    use crate::rational::rat;

    #[test]
    fn local_model_moment() {
        let spec = ManifoldSpec::local_model(&[(int(0), int(1))], int(1), int(1));
        // Sphere height 0.3 needs z = −0.4.
        let p = ManifoldPoint::main(&[[-0.4, 1.0], [(-2.0f64).exp(), 0.7]]);
        let m = spec.moment_eval(&p).unwrap();
        assert!((m.values[0] - 0.3).abs() < 1e-12);
        assert!((m.values[1] + 2.0).abs() < 1e-12);
        assert!(!m.on_z);
        assert_eq!(spec.stratum(&p), Some(Id::from("plus")));
    }

    #[test]
    fn b_torus_and_plane_moments() {
        let p = ManifoldPoint::main(&[[std::f64::consts::FRAC_PI_2, 0.0]]);
        assert!(ManifoldSpec::b_torus().moment_eval(&p).unwrap().values[0].abs() < 1e-15);
        let p = ManifoldPoint::main(&[[2.0, 5.0]]);
        assert_eq!(ManifoldSpec::r_action_counterexample().moment_eval(&p).unwrap().values, vec![2.0]);
    }

    #[test]
    fn divergence_flag_on_z() {
        let m = ManifoldSpec::b_sphere()
            .moment_eval(&ManifoldPoint::main(&[[0.0, 1.0]]))
            .unwrap();
        assert!(m.on_z && m.values[0] == f64::INFINITY);
        let m = ManifoldSpec::zero_weight_product(BSurface::BSphere)
            .moment_eval(&ManifoldPoint::main(&[[0.0, 1.0], [0.5, 0.0]]))
            .unwrap();
        assert!(!m.on_z);
    }

    #[test]
    fn domain_errors() {
        let spec = ManifoldSpec::b_sphere();
        assert!(matches!(
            spec.moment_eval(&ManifoldPoint::main(&[[1.5, 0.0]])),
            Err(ModelError::OutsideDomain { factor: 0 })
        ));
        assert!(matches!(
            spec.moment_eval(&ManifoldPoint::main(&[[0.5, 0.0], [0.0, 0.0]])),
            Err(ModelError::PointShape { .. })
        ));
    }

    #[test]
    fn graphs_of_families() {
        let g = ManifoldSpec::b_torus().graph().unwrap();
        assert!(classify(&g).unwrap().is_all_nonzero());
        assert_eq!(g.edges().len(), 2);
        let g = ManifoldSpec::zero_weight_product(BSurface::BTorus).graph().unwrap();
        assert!(matches!(classify(&g).unwrap(), ModularWeightClass::AllZero { .. }));
        let g = ManifoldSpec::local_model(&[(int(0), int(1))], rat(3, 2), int(1)).graph().unwrap();
        assert_eq!(g.edges()[0].weight, Covector::new(vec![int(0), rat(3, 2)]));
        assert!(ManifoldSpec::c_symplectic_product().graph().is_none());
    }

    #[test]
    fn builtin_polytopes_are_valid() {
        for spec in [
            ManifoldSpec::b_sphere(),
            ManifoldSpec::b_torus(),
            ManifoldSpec::local_model(&[(int(0), int(1)), (int(-1), int(2))], int(2), rat(1, 2)),
        ] {
            let p = spec.b_polytope().unwrap();
            assert!(p.validate().passed(), "{spec:?}");
        }
        assert!(ManifoldSpec::zero_weight_product(BSurface::BSphere).b_polytope().is_none());
    }

    #[test]
    fn local_model_polytope_contains_sample_point() {
        let spec = ManifoldSpec::local_model(&[(int(0), int(1))], int(1), int(1));
        let p = spec.b_polytope().unwrap();
        let xi = Covector::new(vec![rat(1, 2), int(-1)]);
        assert!(p.contains(&ExtendedPoint::interior("minus", xi)).unwrap());
    }

    #[test]
    fn spec_json() {
        let spec = ManifoldSpec::from_json(
            r#"{"family":"local_model","leaf":{"intervals":[["0","1"]]},"c":"1/1","eps":"1/1"}"#,
        )
        .unwrap();
        assert_eq!(spec, ManifoldSpec::local_model(&[(int(0), int(1))], int(1), int(1)));
        let spec = ManifoldSpec::from_json(r#"{"family":"b_sphere","cuts":[{"component":"equator","level":"3"}]}"#)
            .unwrap();
        assert_eq!(spec.cuts.len(), 1);
        assert!(ManifoldSpec::from_json(r#"{"family":"klein_bottle"}"#).is_err());
        assert!(ManifoldSpec::from_json(r#"{"family":"b_sphere","cuts":[{"component":"nope","level":"3"}]}"#).is_err());
        let text = serde_json::to_string(&ManifoldSpec::zero_weight_product(BSurface::BTorus)).unwrap();
        assert_eq!(text, r#"{"family":"zero_weight_product","surface":"b_torus"}"#);
    }

    #[test]
    fn c_symplectic_components_are_qualified() {
        let names: Vec<String> = ManifoldSpec::c_symplectic_product()
            .components()
            .into_iter()
            .map(|c| c.name)
            .collect();
        assert_eq!(names, vec!["f1.theta_0", "f1.theta_pi", "f2.theta_0", "f2.theta_pi"]);
    }
}

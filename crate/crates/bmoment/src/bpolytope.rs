//! b-polytopes: finite intersections of half-spaces in the extended codomain.
//!
//! There are two kinds of half-space. A [`HalfSpace::VertexLocal`] constraint
//! has a normal `X ∉ t_Z` and lives on a single interior stratum `t* × {v}`.
//! A [`HalfSpace::Global`] constraint has a normal `X ∈ t_Z` and cuts every
//! stratum: interior strata through `ξ`, exceptional strata through `η`.
//!
//! An exceptional point `(η, e)` is in the closure of the interior strata next
//! to `e` along `r = ⟨X_e, ξ⟩ → −∞`. Writing a vertex-local normal as
//! `X = X' + m·X_e` with `X' ∈ t_Z ⊗ ℚ`, the constraint `⟨X, ξ⟩ ≤ b` holds
//! eventually exactly when `m > 0`; that sign decides membership.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Signed;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::adjacency::{Edge, Id, WeightedAdjacencyGraph};
use crate::codomain::{in_kernel, CodomainError, ExtendedCodomain, ExtendedPoint};
use crate::lattice::{pairing, Covector, LatticeVector};
use crate::polyhedron::{Inequality, Polyhedron};
use crate::rational::{self, int, Rational};
use crate::report::ValidationReport;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BPolytopeError {
    #[error(transparent)]
    Codomain(#[from] CodomainError),
    #[error("half-space {index}: {reason}")]
    BadHalfSpace { index: usize, reason: String },
    #[error("not a b-polytope; failed conditions {failed:?}")]
    Invalid { failed: Vec<String>, report: ValidationReport },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum HalfSpace {
    /// `⟨X, ξ⟩ ≤ b` on `t* × {v}` only; requires `X ∉ t_Z`.
    VertexLocal {
        vertex: Id,
        normal: LatticeVector,
        #[serde(with = "rational::serde_rational")]
        bound: Rational,
    },
    /// `⟨X, ·⟩ ≤ b` on every stratum; requires `X ∈ t_Z`.
    Global {
        normal: LatticeVector,
        #[serde(with = "rational::serde_rational")]
        bound: Rational,
    },
}

impl HalfSpace {
    pub fn vertex_local(vertex: impl Into<Id>, normal: &[i64], bound: Rational) -> Self {
        HalfSpace::VertexLocal {
            vertex: vertex.into(),
            normal: LatticeVector::new(normal.to_vec()),
            bound,
        }
    }

    pub fn global(normal: &[i64], bound: Rational) -> Self {
        HalfSpace::Global {
            normal: LatticeVector::new(normal.to_vec()),
            bound,
        }
    }

    pub fn normal(&self) -> &LatticeVector {
        match self {
            HalfSpace::VertexLocal { normal, .. } | HalfSpace::Global { normal, .. } => normal,
        }
    }

    pub fn bound(&self) -> &Rational {
        match self {
            HalfSpace::VertexLocal { bound, .. } | HalfSpace::Global { bound, .. } => bound,
        }
    }

    fn inequality(&self) -> Inequality {
        Inequality::new(self.normal().to_rationals(), self.bound().clone())
    }
}

/// A vertex of one interior stratum.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PolytopeVertex {
    pub vertex: Id,
    pub xi: Covector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BPolytope {
    codomain: ExtendedCodomain,
    halfspaces: Vec<HalfSpace>,
}

impl BPolytope {
    /// Checks the type invariants of every half-space; validity as a
    /// b-polytope is a separate question, see [`BPolytope::validate`].
    pub fn new(codomain: ExtendedCodomain, halfspaces: Vec<HalfSpace>) -> Result<Self, BPolytopeError> {
        let g = codomain.graph();
        for (index, h) in halfspaces.iter().enumerate() {
            let bad = |reason: String| BPolytopeError::BadHalfSpace { index, reason };
            if h.normal().dim() != g.torus_dim() {
                return Err(bad(format!(
                    "normal {} has dimension {}, torus dimension is {}",
                    h.normal(),
                    h.normal().dim(),
                    g.torus_dim()
                )));
            }
            match h {
                HalfSpace::VertexLocal { vertex, normal, .. } => {
                    if !g.has_vertex(vertex) {
                        return Err(bad(format!("unknown vertex {vertex:?}")));
                    }
                    if g.incident_edges(vertex).iter().all(|e| in_kernel(normal, &e.weight)) {
                        return Err(bad(format!("vertex-local normal {normal} lies in t_Z")));
                    }
                }
                HalfSpace::Global { normal, .. } => {
                    if let Some(e) = g.edges().iter().find(|e| !in_kernel(normal, &e.weight)) {
                        return Err(bad(format!("global normal {normal} pairs nonzero with the weight of {}", e.id)));
                    }
                }
            }
        }
        Ok(Self { codomain, halfspaces })
    }

    pub fn from_json(codomain: ExtendedCodomain, text: &str) -> Result<Self, String> {
        let hs: Vec<HalfSpace> = serde_json::from_str(text).map_err(|e| e.to_string())?;
        Self::new(codomain, hs).map_err(|e| e.to_string())
    }

    pub fn codomain(&self) -> &ExtendedCodomain {
        &self.codomain
    }

    pub fn graph(&self) -> &WeightedAdjacencyGraph {
        self.codomain.graph()
    }

    pub fn halfspaces(&self) -> &[HalfSpace] {
        &self.halfspaces
    }

    fn globals(&self) -> impl Iterator<Item = &HalfSpace> {
        self.halfspaces.iter().filter(|h| matches!(h, HalfSpace::Global { .. }))
    }

    fn locals_at<'a>(&'a self, v: &'a Id) -> impl Iterator<Item = &'a HalfSpace> + 'a {
        self.halfspaces
            .iter()
            .filter(move |h| matches!(h, HalfSpace::VertexLocal { vertex, .. } if vertex == v))
    }

    /// The ordinary polyhedron `P ∩ (t* × {v})` in `t*`.
    pub fn stratum(&self, v: &Id) -> Polyhedron {
        let constraints = self.globals().chain(self.locals_at(v)).map(HalfSpace::inequality).collect();
        Polyhedron::new(self.graph().torus_dim(), constraints)
    }

    /// The polyhedron cut out by the global half-spaces on `t_Z*`, in kernel-dual coordinates.
    pub fn exceptional_stratum(&self) -> Polyhedron {
        let constraints = self
            .globals()
            .map(|h| {
                let alpha = self
                    .codomain
                    .kernel_coordinates(h.normal())
                    .expect("global normals lie in t_Z");
                Inequality::new(alpha, h.bound().clone())
            })
            .collect();
        Polyhedron::new(self.codomain.kernel().rank(), constraints)
    }

    pub fn contains(&self, p: &ExtendedPoint) -> Result<bool, BPolytopeError> {
        self.codomain.check_point(p)?;
        Ok(match p {
            ExtendedPoint::Interior { vertex, xi } => self.stratum(vertex).contains(xi.coords()),
            ExtendedPoint::Exceptional { edge, eta } => {
                if !self.exceptional_stratum().contains(eta.coords()) {
                    return Ok(false);
                }
                let e = self.graph().edge(edge).expect("checked");
                let ends: BTreeSet<&Id> = e.ends.iter().collect();
                for v in ends {
                    for h in self.locals_at(v) {
                        if !self.codomain.transverse_component(h.normal(), edge)?.is_positive() {
                            return Ok(false);
                        }
                    }
                }
                true
            }
        })
    }

    /// Checks (i) nonempty strata, (ii) recession cones spanned by the
    /// incident weight directions, (iii) every exceptional stratum met.
    pub fn validate(&self) -> ValidationReport {
        let g = self.graph();
        let mut report = ValidationReport::default();

        let empty: Vec<String> = g
            .vertices()
            .iter()
            .filter(|v| self.stratum(v).is_empty())
            .map(|v| v.0.clone())
            .collect();
        report.push("i", "every interior stratum is nonempty", empty);

        let mismatched: Vec<String> = g
            .vertices()
            .iter()
            .filter(|v| self.recession_cone(v) != self.expected_recession_cone(v))
            .map(|v| v.0.clone())
            .collect();
        report.push(
            "ii",
            "each stratum is unbounded exactly along the directions of the adjacent exceptional strata",
            mismatched,
        );

        let exceptional = self.exceptional_stratum();
        let base_ok = !exceptional.is_empty() && exceptional.is_bounded();
        let unmet: Vec<String> = g
            .edges()
            .iter()
            .filter(|e| !base_ok || !self.reaches(e))
            .map(|e| e.id.0.clone())
            .collect();
        report.push(
            "iii",
            "the polytope meets every exceptional stratum in a nonempty bounded set",
            unmet,
        );

        if report.passed() && self.vertices_unchecked().is_empty() {
            report.notes.push("no vertices".to_string());
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().passed()
    }

    fn reaches(&self, e: &Edge) -> bool {
        e.ends.iter().all(|v| {
            self.locals_at(v).all(|h| {
                self.codomain
                    .transverse_component(h.normal(), &e.id)
                    .is_ok_and(|m| m.is_positive())
            })
        })
    }

    /// Primitive generators of the recession cone of stratum `v`; a line
    /// contributes both of its directions.
    pub fn recession_cone(&self, v: &Id) -> BTreeSet<Vec<i64>> {
        let (rays, lines) = self.stratum(v).recession_cone();
        let mut out = BTreeSet::new();
        for r in rays {
            out.insert(Covector::new(r).primitive_ray().expect("nonzero ray"));
        }
        for l in lines {
            let l = Covector::new(l);
            out.insert(l.primitive_ray().expect("nonzero line"));
            out.insert(l.neg().primitive_ray().expect("nonzero line"));
        }
        out
    }

    /// Primitive directions `−w_e` for the edges at `v`, along which the
    /// moment image runs off towards the exceptional strata.
    pub fn expected_recession_cone(&self, v: &Id) -> BTreeSet<Vec<i64>> {
        self.graph()
            .incident_edges(v)
            .iter()
            .map(|e| e.weight.neg().primitive_ray().expect("nonzero weight"))
            .collect()
    }

    /// Vertices of every interior stratum, by double description.
    pub fn vertices(&self) -> Result<Vec<PolytopeVertex>, BPolytopeError> {
        self.require_valid()?;
        Ok(self.vertices_unchecked())
    }

    /// Same as [`BPolytope::vertices`], by solving every `k`-subset of constraints.
    pub fn vertices_brute_force(&self) -> Result<Vec<PolytopeVertex>, BPolytopeError> {
        self.require_valid()?;
        Ok(self.collect_vertices(Polyhedron::vertices_brute_force))
    }

    fn vertices_unchecked(&self) -> Vec<PolytopeVertex> {
        self.collect_vertices(Polyhedron::vertices)
    }

    fn collect_vertices(&self, enumerate: fn(&Polyhedron) -> Vec<Vec<Rational>>) -> Vec<PolytopeVertex> {
        let mut out: Vec<PolytopeVertex> = self
            .graph()
            .vertices()
            .iter()
            .flat_map(|v| {
                enumerate(&self.stratum(v)).into_iter().map(|xi| PolytopeVertex {
                    vertex: v.clone(),
                    xi: Covector::new(xi),
                })
            })
            .collect();
        out.sort();
        out
    }

    fn require_valid(&self) -> Result<(), BPolytopeError> {
        let report = self.validate();
        if report.passed() {
            Ok(())
        } else {
            Err(BPolytopeError::Invalid {
                failed: report.failed_conditions().iter().map(|s| s.to_string()).collect(),
                report,
            })
        }
    }

    /// Cuts the strata next to `edge` at `r = ⟨X_e, ξ⟩ ≥ −N`.
    pub fn truncate(&self, edge: &Id, n: &Rational) -> Result<BTreeMap<Id, Polyhedron>, BPolytopeError> {
        let e = self
            .graph()
            .edge(edge)
            .ok_or_else(|| CodomainError::MissingChart(edge.0.clone()))?;
        let cut = self.cut_inequality(edge, n)?;
        Ok(e.ends
            .iter()
            .map(|v| (v.clone(), self.stratum(v).with_constraint(cut.clone())))
            .collect())
    }

    /// Every stratum cut at level `−N` next to each of its edges.
    pub fn truncate_all(&self, n: &Rational) -> Result<BTreeMap<Id, Polyhedron>, BPolytopeError> {
        let mut out = BTreeMap::new();
        for v in self.graph().vertices() {
            let mut p = self.stratum(v);
            for e in self.graph().incident_edges(v) {
                p = p.with_constraint(self.cut_inequality(&e.id, n)?);
            }
            out.insert(v.clone(), p);
        }
        Ok(out)
    }

    /// `−⟨X_e, ξ⟩ ≤ N`.
    pub fn cut_inequality(&self, edge: &Id, n: &Rational) -> Result<Inequality, BPolytopeError> {
        let x = self.codomain.direction(edge)?;
        Ok(Inequality::new(x.to_rationals().into_iter().map(|c| -c).collect(), n.clone()))
    }
}

/// Validity report for a list of half-spaces over a codomain.
pub fn is_b_polytope(halfspaces: Vec<HalfSpace>, codomain: ExtendedCodomain) -> Result<ValidationReport, BPolytopeError> {
    Ok(BPolytope::new(codomain, halfspaces)?.validate())
}

/// A random valid b-polytope over a path graph with one or two edges in `t* ≅ ℚ^k`.
///
/// Every stratum is `Δ × (−∞, ·]` in chart coordinates: global half-spaces bound
/// `η`, vertex-local ones have a positive transverse component. Used to exercise
/// the vertex enumerators against each other.
pub fn random_b_polytope<R: Rng>(rng: &mut R, k: usize, max_halfspaces: usize) -> BPolytope {
    let weight = loop {
        let w: Vec<i64> = (0..k).map(|_| rng.random_range(-3..=3)).collect();
        if w.iter().any(|&x| x != 0) {
            break Covector::from_ints(&w);
        }
    };
    let two_edges = rng.random_bool(0.3);
    let weights = if two_edges {
        vec![weight.clone(), weight.scale(&int(-rng.random_range(1..=2)))]
    } else {
        vec![weight]
    };
    let graph = crate::adjacency::path_graph(k, &weights).expect("path graph");
    let codomain = ExtendedCodomain::new(graph).expect("valid nonzero path");
    let kernel: Vec<LatticeVector> = codomain.kernel().basis().to_vec();
    let half = |rng: &mut R, lo: i64, hi: i64| rational::rat(rng.random_range(lo..=hi), 2);

    let eta0: Vec<Rational> = kernel.iter().map(|_| half(rng, -4, 4)).collect();
    let mut halfspaces = Vec::new();
    let kernel_combination = |rng: &mut R| -> LatticeVector {
        let mut x = LatticeVector::zero(k);
        for b in &kernel {
            x = x.scaled_add(1, b, rng.random_range(-2..=2));
        }
        x
    };
    let eta_pairing = |x: &LatticeVector| -> Rational {
        let alpha = codomain.kernel().coordinates_of(x).expect("kernel vector");
        crate::linalg::dot(&alpha, &eta0)
    };

    for (j, b) in kernel.iter().enumerate() {
        for s in [1, -1] {
            let normal = LatticeVector::zero(k).scaled_add(1, b, s);
            let bound = int(s) * &eta0[j] + half(rng, 0, 4);
            halfspaces.push(HalfSpace::Global { normal, bound });
        }
    }
    let budget = max_halfspaces.saturating_sub(halfspaces.len());
    let ends = codomain.graph().vertices().len();
    let leaves: Vec<Id> = [0, ends - 1].iter().map(|&i| Id(format!("v{i}"))).collect();
    let per_leaf = (budget / 2).clamp(1, 3);
    for v in &leaves {
        let edge = codomain.graph().incident_edges(v)[0].id.clone();
        let xe = codomain.direction(&edge).expect("chart").clone();
        let r0 = half(rng, -6, 6);
        let xi0 = codomain
            .reconstruct(&Covector::new(eta0.clone()), &r0, &edge)
            .expect("chart coordinates");
        for _ in 0..rng.random_range(1..=per_leaf) {
            let normal = kernel_combination(rng).scaled_add(1, &xe, rng.random_range(1..=2));
            let bound = pairing(&normal, &xi0).expect("dims") + half(rng, 0, 4);
            halfspaces.push(HalfSpace::VertexLocal {
                vertex: v.clone(),
                normal,
                bound,
            });
        }
    }
    let remaining = max_halfspaces.saturating_sub(halfspaces.len());
    for _ in 0..rng.random_range(0..=remaining) {
        if kernel.is_empty() {
            break;
        }
        let normal = kernel_combination(rng);
        if normal.is_zero() {
            continue;
        }
        let bound = eta_pairing(&normal) + half(rng, 0, 4);
        halfspaces.push(HalfSpace::Global { normal, bound });
    }
    BPolytope::new(codomain, halfspaces).expect("type invariants hold by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adjacency::{cycle_graph, path_graph};
    use crate::rational::{int, rat};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cv(c: &[i64]) -> Covector {
        Covector::from_ints(c)
    }

    fn b_sphere() -> BPolytope {
        let codomain = ExtendedCodomain::new(path_graph(1, &[cv(&[-1])]).unwrap()).unwrap();
        BPolytope::new(
            codomain,
            vec![
                HalfSpace::vertex_local("v0", &[-1], int(0)),
                HalfSpace::vertex_local("v1", &[-1], int(0)),
            ],
        )
        .unwrap()
    }

    /// `[0,1] × (−∞, n]` on both sides of a single component with weight `(0,1)`.
    fn local_model(n: i64) -> BPolytope {
        let codomain = ExtendedCodomain::new(path_graph(2, &[cv(&[0, 1])]).unwrap()).unwrap();
        BPolytope::new(
            codomain,
            vec![
                HalfSpace::global(&[-1, 0], int(0)),
                HalfSpace::global(&[1, 0], int(1)),
                HalfSpace::vertex_local("v0", &[0, 1], int(n)),
                HalfSpace::vertex_local("v1", &[0, 1], int(n)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn interior_membership_in_one_dimension() {
        let p = b_sphere();
        assert!(p.contains(&ExtendedPoint::interior("v0", cv(&[2]))).unwrap());
        assert!(!p.contains(&ExtendedPoint::interior("v0", cv(&[-1]))).unwrap());
        assert!(p.contains(&ExtendedPoint::exceptional("e0", cv(&[]))).unwrap());
    }

    #[test]
    fn local_model_membership() {
        let p = local_model(0);
        let xi = Covector::new(vec![rat(1, 2), int(-1)]);
        assert!(p.contains(&ExtendedPoint::interior("v0", xi)).unwrap());
        assert!(p.contains(&ExtendedPoint::exceptional("e0", Covector::new(vec![rat(1, 2)]))).unwrap());
        assert!(!p.contains(&ExtendedPoint::exceptional("e0", Covector::new(vec![rat(3, 2)]))).unwrap());
    }

    #[test]
    fn exceptional_point_against_wrong_sign() {
        let codomain = ExtendedCodomain::new(path_graph(2, &[cv(&[0, 1])]).unwrap()).unwrap();
        let p = BPolytope::new(codomain, vec![HalfSpace::vertex_local("v0", &[1, -1], int(0))]).unwrap();
        assert!(!p.contains(&ExtendedPoint::exceptional("e0", cv(&[0]))).unwrap());
    }

    #[test]
    fn vertices_of_examples() {
        let got = b_sphere().vertices().unwrap();
        assert_eq!(
            got,
            vec![
                PolytopeVertex { vertex: "v0".into(), xi: cv(&[0]) },
                PolytopeVertex { vertex: "v1".into(), xi: cv(&[0]) },
            ]
        );
        let got = local_model(3).vertices().unwrap();
        let v0: Vec<Covector> = got.iter().filter(|v| v.vertex.0 == "v0").map(|v| v.xi.clone()).collect();
        assert_eq!(v0, vec![cv(&[0, 3]), cv(&[1, 3])]);
        assert_eq!(local_model(3).vertices_brute_force().unwrap(), got);
    }

    #[test]
    fn b_torus_without_halfspaces() {
        let codomain = ExtendedCodomain::new(cycle_graph(1, &[cv(&[-1]), cv(&[1])]).unwrap()).unwrap();
        let p = BPolytope::new(codomain, vec![]).unwrap();
        let report = p.validate();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.notes, vec!["no vertices".to_string()]);
        assert!(p.vertices().unwrap().is_empty());
        assert_eq!(p.recession_cone(&"v0".into()), BTreeSet::from([vec![-1], vec![1]]));
    }

    #[test]
    fn recession_cones_point_away_from_weights() {
        assert_eq!(b_sphere().recession_cone(&"v0".into()), BTreeSet::from([vec![1]]));
        assert_eq!(local_model(0).recession_cone(&"v0".into()), BTreeSet::from([vec![0, -1]]));
        assert!(local_model(0).validate().passed());
    }

    #[test]
    fn bounded_stratum_is_invalid() {
        let codomain = ExtendedCodomain::new(path_graph(1, &[cv(&[-1])]).unwrap()).unwrap();
        let p = BPolytope::new(
            codomain,
            vec![
                HalfSpace::vertex_local("v0", &[-1], int(0)),
                HalfSpace::vertex_local("v0", &[1], int(1)),
                HalfSpace::vertex_local("v1", &[-1], int(0)),
            ],
        )
        .unwrap();
        let report = p.validate();
        assert!(report.failed_conditions().contains(&"ii"));
        assert!(matches!(p.vertices(), Err(BPolytopeError::Invalid { .. })));
    }

    #[test]
    fn unbounded_globals_fail_condition_iii() {
        let codomain = ExtendedCodomain::new(path_graph(2, &[cv(&[0, 1])]).unwrap()).unwrap();
        let p = BPolytope::new(
            codomain,
            vec![
                HalfSpace::global(&[-1, 0], int(0)),
                HalfSpace::vertex_local("v0", &[0, 1], int(0)),
                HalfSpace::vertex_local("v1", &[0, 1], int(0)),
            ],
        )
        .unwrap();
        assert!(p.validate().failed_conditions().contains(&"iii"));
    }

    #[test]
    fn type_invariants() {
        let codomain = ExtendedCodomain::new(path_graph(2, &[cv(&[0, 1])]).unwrap()).unwrap();
        assert!(BPolytope::new(codomain.clone(), vec![HalfSpace::global(&[0, 1], int(0))]).is_err());
        assert!(BPolytope::new(codomain.clone(), vec![HalfSpace::vertex_local("v0", &[1, 0], int(0))]).is_err());
        assert!(BPolytope::new(codomain, vec![HalfSpace::vertex_local("nope", &[0, 1], int(0))]).is_err());
    }

    #[test]
    fn truncation() {
        let p = local_model(0);
        let cut = p.truncate(&"e0".into(), &int(5)).unwrap();
        let q = &cut[&Id::from("v0")];
        assert!(q.is_bounded());
        assert_eq!(q.vertices(), vec![vec![int(0), int(-5)], vec![int(0), int(0)], vec![int(1), int(-5)], vec![int(1), int(0)]]);

        let s = b_sphere().truncate(&"e0".into(), &int(4)).unwrap();
        assert_eq!(s[&Id::from("v1")].vertices(), vec![vec![int(0)], vec![int(4)]]);
    }

    #[test]
    fn json_round_trip() {
        let text = r#"[{"type":"vertex_local","vertex":"v0","normal":[0,1],"bound":"-1/2"},{"type":"global","normal":[1,0],"bound":"1"}]"#;
        let hs: Vec<HalfSpace> = serde_json::from_str(text).unwrap();
        assert_eq!(hs[0], HalfSpace::vertex_local("v0", &[0, 1], rat(-1, 2)));
        assert_eq!(serde_json::to_string(&hs).unwrap(), text);
    }

    #[test]
    fn random_instances_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for i in 0..30 {
            let k = 1 + i % 3;
            let p = random_b_polytope(&mut rng, k, 10);
            assert!(p.halfspaces().len() <= 10);
            assert!(p.validate().passed(), "{:?}\n{:?}", p.halfspaces(), p.validate());
        }
    }
}

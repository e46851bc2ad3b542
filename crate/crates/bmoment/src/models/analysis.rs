use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use super::sampling::{hausdorff_distance, image_sample, sample_with_pin};
use super::surface::{Chart, Surface, SurfacePoint};
use super::{Family, ManifoldPoint, ManifoldSpec, ModelError, Tolerances};
use crate::adjacency::{classify, Id, ModularWeightClass};
use crate::lattice::{primitive_complement, LatticeVector};
use crate::rational::{self, Rational};

/// Log-coefficient fit for one circle generator.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneratorFit {
    pub generator: usize,
    /// Two-scale estimates at `y = 10⁻³, 10⁻⁴, 10⁻⁵`, positive side then negative side.
    pub estimates: Vec<f64>,
    pub spread: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightEstimate {
    pub component: String,
    /// The estimated modular weight, one coefficient per generator.
    pub coefficients: Vec<f64>,
    pub fits: Vec<GeneratorFit>,
}

const FIT_SCALES: [f64; 3] = [1e-3, 1e-4, 1e-5];

/// Estimates the modular weight of a component from the moment map alone.
///
/// Along a transversal `y` to the component, `H_X = c log|y| + g` with `g`
/// smooth, so `(H_X(y/2) − H_X(y)) / log(1/2) → c`. Fits at three scales on
/// both sides must agree; the smallest two are combined by Richardson
/// extrapolation.
pub fn modular_weight_estimate(spec: &ManifoldSpec, component: &str, tol: &Tolerances) -> Result<WeightEstimate, ModelError> {
    let comp = spec.component(component)?;
    let mut est = estimate_weight(spec, comp.factor, comp.curve.value, &spec.generic_point(), tol)?;
    est.component = comp.name;
    Ok(est)
}

/// Weight fit along the first coordinate of `factor` through `value`, other
/// coordinates taken from `base`.
pub fn estimate_weight(
    spec: &ManifoldSpec,
    factor: usize,
    value: f64,
    base: &ManifoldPoint,
    tol: &Tolerances,
) -> Result<WeightEstimate, ModelError> {
    let k = spec.torus_dim();
    let at = |d: f64| {
        let mut p = base.clone();
        p.factors[factor] = SurfacePoint::main(value + d, base.factors[factor].coords[1]);
        p
    };
    let mut fits = Vec::with_capacity(k);
    for j in 0..k {
        let mut x = vec![0.0; k];
        x[j] = 1.0;
        let h = |d: f64| spec.hamiltonian(&x, &at(d));
        let mut estimates = Vec::new();
        let mut sides = Vec::new();
        for s in [1.0, -1.0] {
            let e: Vec<f64> = FIT_SCALES
                .iter()
                .map(|&y| (h(s * y / 2.0) - h(s * y)) / 0.5f64.ln())
                .collect();
            sides.push(e[2] + (e[2] - e[1]) / 99.0);
            estimates.extend(e);
        }
        let spread = estimates.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
            - estimates.iter().cloned().fold(f64::INFINITY, f64::min);
        if !(spread <= tol.weight_spread) {
            return Err(ModelError::NonConvergent {
                generator: j,
                estimates,
                tolerance: tol.weight_spread,
            });
        }
        fits.push(GeneratorFit {
            generator: j,
            estimates,
            spread,
            value: (sides[0] + sides[1]) / 2.0,
        });
    }
    Ok(WeightEstimate {
        component: String::new(),
        coefficients: fits.iter().map(|f| f.value).collect(),
        fits,
    })
}

/// Weights of the c-symplectic product on its two b-type strata, measured at
/// base points at distance `distance` from the corner where they meet.
pub fn stratified_weights_at(
    spec: &ManifoldSpec,
    distance: f64,
    tol: &Tolerances,
) -> Result<BTreeMap<String, WeightEstimate>, ModelError> {
    if spec.family != Family::CSymplecticProduct {
        return Err(ModelError::Unsupported {
            family: spec.family_name(),
            needed: "two b-type strata meeting in a corner",
        });
    }
    if distance < tol.corner_distance {
        return Err(ModelError::NearCorner {
            distance,
            minimum: tol.corner_distance,
        });
    }
    let comps = spec.components();
    let first = comps.iter().find(|c| c.factor == 0).expect("first b-torus");
    let second = comps.iter().find(|c| c.factor == 1).expect("second b-torus");
    let mut out = BTreeMap::new();
    // On Z₁ × T², the corner is where the second factor meets its own curve.
    let base = ManifoldPoint::main(&[[first.curve.value, 0.0], [second.curve.value + distance, 0.0]]);
    let mut e = estimate_weight(spec, 0, first.curve.value, &base, tol)?;
    e.component = first.name.clone();
    out.insert("z1_x_t2".to_string(), e);
    let base = ManifoldPoint::main(&[[first.curve.value + distance, 0.0], [second.curve.value, 0.0]]);
    let mut e = estimate_weight(spec, 1, second.curve.value, &base, tol)?;
    e.component = second.name.clone();
    out.insert("t1_x_z2".to_string(), e);
    Ok(out)
}

/// [`stratified_weights_at`] with base points as far from the corner as possible.
pub fn stratified_weights(spec: &ManifoldSpec, tol: &Tolerances) -> Result<BTreeMap<String, WeightEstimate>, ModelError> {
    stratified_weights_at(spec, FRAC_PI_2, tol)
}

/// A connected set of fixed points, sampled.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalComponent {
    pub label: String,
    /// Dimension of the fixed-point component.
    pub dimension: usize,
    pub moment: Vec<f64>,
    /// Vertex of the adjacency graph, when the whole component lies in one stratum.
    pub stratum: Option<Id>,
    pub points: Vec<ManifoldPoint>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NotCircleAction {
    pub message: String,
    /// Sampled points where the generating field vanishes.
    pub vanishing_points: usize,
    /// Smallest `|dH|` seen at those points.
    pub min_gradient: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum FixedPointOutcome {
    Fixed { components: Vec<CriticalComponent> },
    NotCircleAction(NotCircleAction),
}

fn fd_gradient(f: impl Fn([f64; 2]) -> f64, p: [f64; 2]) -> [f64; 2] {
    let mut g = [0.0; 2];
    for i in 0..2 {
        let h = 1e-5 * p[i].abs().max(1.0);
        let (mut a, mut b) = (p, p);
        a[i] += h;
        b[i] -= h;
        g[i] = (f(a) - f(b)) / (2.0 * h);
    }
    g
}

fn norm(v: [f64; 2]) -> f64 {
    v[0].hypot(v[1])
}

/// Critical points of one surface's Hamiltonian: grid search over each chart,
/// then Newton refinement on finite-difference derivatives.
fn surface_critical_points(surface: &Surface, tol: &Tolerances) -> Vec<SurfacePoint> {
    const NODES: usize = 25;
    let mut found: Vec<SurfacePoint> = Vec::new();
    for (chart, [bx, by]) in surface.search_charts() {
        let h = |p: [f64; 2]| surface.hamiltonian(&SurfacePoint { chart, coords: p });
        let grad = |p: [f64; 2]| norm(fd_gradient(h, p));
        let node = |i: usize, j: usize| {
            [
                bx[0] + (bx[1] - bx[0]) * i as f64 / (NODES - 1) as f64,
                by[0] + (by[1] - by[0]) * j as f64 / (NODES - 1) as f64,
            ]
        };
        let values: Vec<Vec<f64>> = (0..NODES).map(|i| (0..NODES).map(|j| grad(node(i, j))).collect()).collect();
        for i in 1..NODES - 1 {
            for j in 1..NODES - 1 {
                let v = values[i][j];
                if !v.is_finite() {
                    continue;
                }
                let local_min = (i - 1..=i + 1)
                    .flat_map(|a| (j - 1..=j + 1).map(move |b| (a, b)))
                    .all(|(a, b)| !(values[a][b] < v));
                if !local_min {
                    continue;
                }
                let Some(p) = newton(&h, node(i, j)) else { continue };
                let inside = p[0] >= bx[0] && p[0] <= bx[1] && p[1] >= by[0] && p[1] <= by[1];
                let point = SurfacePoint { chart, coords: p };
                if inside
                    && surface.in_domain(&point)
                    && grad(p) < tol.critical_gradient
                    && !found
                        .iter()
                        .any(|q| q.chart == chart && norm([q.coords[0] - p[0], q.coords[1] - p[1]]) < 1e-6)
                {
                    found.push(point);
                }
            }
        }
    }
    found
}

fn newton(h: &impl Fn([f64; 2]) -> f64, mut p: [f64; 2]) -> Option<[f64; 2]> {
    for _ in 0..30 {
        let g = fd_gradient(h, p);
        if norm(g) < 1e-13 {
            return Some(p);
        }
        let mut j = [[0.0; 2]; 2];
        for c in 0..2 {
            let s = 1e-4 * p[c].abs().max(1.0);
            let (mut a, mut b) = (p, p);
            a[c] += s;
            b[c] -= s;
            let (ga, gb) = (fd_gradient(h, a), fd_gradient(h, b));
            for r in 0..2 {
                j[r][c] = (ga[r] - gb[r]) / (2.0 * s);
            }
        }
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        let scale = j.iter().flatten().map(|x| x.abs()).fold(0.0, f64::max);
        if !det.is_finite() || det.abs() <= 1e-10 * scale * scale || scale == 0.0 {
            return None;
        }
        let dx = (j[1][1] * g[0] - j[0][1] * g[1]) / det;
        let dy = (j[0][0] * g[1] - j[1][0] * g[0]) / det;
        p = [p[0] - dx, p[1] - dy];
        if dx.abs() + dy.abs() < 1e-15 {
            return Some(p);
        }
    }
    p.iter().all(|x| x.is_finite()).then_some(p)
}

fn chart_label(surface: &Surface, p: &SurfacePoint) -> String {
    match p.chart {
        Chart::North => "north_pole".into(),
        Chart::South => "south_pole".into(),
        Chart::CapPlus => "cap_plus".into(),
        Chart::CapMinus => "cap_minus".into(),
        Chart::Main => {
            let names = surface.coordinate_names();
            format!("{}={:.6},{}={:.6}", names[0], p.coords[0], names[1], p.coords[1])
        }
    }
}

/// Fixed points of the torus action, or a diagnostic for a non-periodic flow.
pub fn fixed_points(spec: &ManifoldSpec, tol: &Tolerances) -> FixedPointOutcome {
    let factors = spec.factors();
    if let Some(f) = factors.iter().find(|f| f.generator.is_some() && !f.surface.is_circle_action()) {
        return not_circle_action(&f.surface);
    }
    // Per factor: rotation fixed points, or a small cloud if nothing rotates it.
    let choices: Vec<Vec<(String, SurfacePoint)>> = factors
        .iter()
        .map(|f| {
            if f.generator.is_some() {
                surface_critical_points(&f.surface, tol)
                    .into_iter()
                    .map(|p| (chart_label(&f.surface, &p), p))
                    .collect()
            } else {
                let [bx, by] = f.surface.search_charts()[0].1;
                let mut cloud = Vec::new();
                for a in [0.25, 0.5, 0.75] {
                    for b in [0.25, 0.5, 0.75] {
                        let p = SurfacePoint::main(bx[0] + a * (bx[1] - bx[0]), by[0] + b * (by[1] - by[0]));
                        cloud.push((String::new(), p));
                    }
                }
                cloud
            }
        })
        .collect();
    let acting: Vec<usize> = (0..factors.len()).filter(|&i| factors[i].generator.is_some()).collect();
    let idle: Vec<usize> = (0..factors.len()).filter(|&i| factors[i].generator.is_none()).collect();
    let mut components = Vec::new();
    for combo in cartesian(&acting.iter().map(|&i| choices[i].len()).collect::<Vec<_>>()) {
        let label = acting
            .iter()
            .zip(&combo)
            .map(|(&i, &c)| format!("f{}:{}", i + 1, choices[i][c].0))
            .collect::<Vec<_>>()
            .join(" ");
        let mut points = Vec::new();
        for rest in cartesian(&idle.iter().map(|&i| choices[i].len()).collect::<Vec<_>>()) {
            let mut factors_pt = vec![SurfacePoint::main(0.0, 0.0); factors.len()];
            for (&i, &c) in acting.iter().zip(&combo) {
                factors_pt[i] = choices[i][c].1;
            }
            for (&i, &c) in idle.iter().zip(&rest) {
                factors_pt[i] = choices[i][c].1;
            }
            points.push(ManifoldPoint { factors: factors_pt });
        }
        let strata: Vec<Option<Id>> = points.iter().map(|p| spec.stratum(p)).collect();
        let stratum = if strata.windows(2).all(|w| w[0] == w[1]) {
            strata[0].clone()
        } else {
            None
        };
        components.push(CriticalComponent {
            label,
            dimension: 2 * idle.len(),
            moment: spec.moment_unchecked(&points[0]).values,
            stratum,
            points,
        });
    }
    FixedPointOutcome::Fixed { components }
}

fn cartesian(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &n in sizes {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..n).map(move |i| {
                    let mut v = prefix.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
    }
    out
}

fn not_circle_action(surface: &Surface) -> FixedPointOutcome {
    let [bx, by] = surface.search_charts()[0].1;
    const NODES: usize = 41;
    let mut vanishing = 0;
    let mut min_gradient = f64::INFINITY;
    for i in 0..NODES {
        for j in 0..NODES {
            let p = [
                bx[0] + (bx[1] - bx[0]) * i as f64 / (NODES - 1) as f64,
                by[0] + (by[1] - by[0]) * j as f64 / (NODES - 1) as f64,
            ];
            if norm(surface.field(p)) < 1e-12 {
                vanishing += 1;
                let g = fd_gradient(|q| surface.hamiltonian(&SurfacePoint::main(q[0], q[1])), p);
                min_gradient = min_gradient.min(norm(g));
            }
        }
    }
    let names = surface.coordinate_names();
    FixedPointOutcome::NotCircleAction(NotCircleAction {
        message: format!(
            "the generating field vanishes along {{{} = 0}} ({vanishing} grid points), but there dH = d{} \
             never vanishes (min |dH| = {min_gradient}); a fixed point of a circle action would be critical for H, \
             so this flow is an R-action and no fixed points are reported",
            names[0], names[0]
        ),
        vanishing_points: vanishing,
        min_gradient,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HessianIndices {
    pub spectrum: Vec<f64>,
    pub index: usize,
    pub coindex: usize,
    pub nullity: usize,
    pub condition: f64,
    pub ill_conditioned: bool,
}

/// Signature of the Hessian of `H_X` at a critical point, by central differences.
pub fn hessian_indices(spec: &ManifoldSpec, point: &ManifoldPoint, x: &[f64], tol: &Tolerances) -> Result<HessianIndices, ModelError> {
    spec.check_point(point)?;
    let n = 2 * point.factors.len();
    let get = |p: &ManifoldPoint, i: usize| p.factors[i / 2].coords[i % 2];
    let shifted = |moves: &[(usize, f64)]| {
        let mut p = point.clone();
        for &(i, d) in moves {
            p.factors[i / 2].coords[i % 2] += d;
        }
        spec.hamiltonian(x, &p)
    };
    let steps: Vec<f64> = (0..n).map(|i| tol.hessian_step * get(point, i).abs().max(1.0)).collect();
    let f0 = spec.hamiltonian(x, point);
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        let hi = steps[i];
        m[(i, i)] = (shifted(&[(i, hi)]) - 2.0 * f0 + shifted(&[(i, -hi)])) / (hi * hi);
        for j in 0..i {
            let hj = steps[j];
            let v = (shifted(&[(i, hi), (j, hj)]) - shifted(&[(i, hi), (j, -hj)]) - shifted(&[(i, -hi), (j, hj)])
                + shifted(&[(i, -hi), (j, -hj)]))
                / (4.0 * hi * hj);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    let mut spectrum: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    spectrum.sort_by(f64::total_cmp);
    let largest = spectrum.iter().map(|l| l.abs()).fold(0.0, f64::max);
    let threshold = tol.nullity * largest;
    let nonzero: Vec<f64> = spectrum.iter().copied().filter(|l| l.abs() > threshold).collect();
    let smallest = nonzero.iter().map(|l| l.abs()).fold(f64::INFINITY, f64::min);
    let condition = if nonzero.is_empty() { 1.0 } else { largest / smallest };
    Ok(HessianIndices {
        index: nonzero.iter().filter(|&&l| l < 0.0).count(),
        coindex: nonzero.iter().filter(|&&l| l > 0.0).count(),
        nullity: n - nonzero.len(),
        ill_conditioned: condition > tol.condition,
        condition,
        spectrum,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LeafImageReport {
    pub component: String,
    pub samples: usize,
    pub hausdorff: f64,
}

/// Hausdorff distance between sampled images of `M` and of one symplectic
/// leaf inside `Z`, for families whose modular weights all vanish.
pub fn verify_leaf_image(spec: &ManifoldSpec, n: usize, seed: u64, tol: &Tolerances) -> Result<LeafImageReport, ModelError> {
    let graph = spec.graph().ok_or(ModelError::NotAllZero)?;
    match classify(&graph) {
        Ok(ModularWeightClass::AllZero { symplectic: false }) => {}
        _ => return Err(ModelError::NotAllZero),
    }
    let comp = spec.components().into_iter().next().ok_or(ModelError::NotAllZero)?;
    let leaf_point = SurfacePoint::main(comp.curve.value, 0.0);
    let m = image_sample(spec, n, seed, tol)?;
    let l = sample_with_pin(spec, n, seed ^ 0x9e37_79b9_7f4a_7c15, tol, Some((comp.factor, leaf_point)))?;
    Ok(LeafImageReport {
        component: comp.name,
        samples: n,
        hausdorff: hausdorff_distance(&m.finite_moments(), &l.finite_moments()),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CutResult {
    pub spec: ManifoldSpec,
    pub component: String,
    #[serde(with = "rational::serde_rational")]
    pub level: Rational,
    /// `X_e`; the cut keeps `⟨X_e, μ⟩ ≥ −level`.
    pub direction: LatticeVector,
    pub weight_estimate: Vec<f64>,
}

impl CutResult {
    /// `min ⟨X_e, μ⟩` over finite samples.
    pub fn min_level(&self, samples: &super::MomentSampleSet) -> f64 {
        let x: Vec<f64> = self.direction.coords().iter().map(|&c| c as f64).collect();
        samples
            .samples
            .iter()
            .filter(|s| s.is_finite())
            .map(|s| s.moment.iter().zip(&x).map(|(m, c)| m * c).sum::<f64>())
            .fold(f64::INFINITY, f64::min)
    }
}

/// Cuts the manifold at `⟨X_e, μ⟩ = −level` next to a component.
pub fn symplectic_cut(
    spec: &ManifoldSpec,
    component: &str,
    level: &Rational,
    tol: &Tolerances,
) -> Result<CutResult, ModelError> {
    if *level <= rational::int(0) {
        return Err(ModelError::Parameter("cut level must be positive".into()));
    }
    let comp = spec.component(component)?;
    let est = modular_weight_estimate(spec, component, tol)?;
    let largest = est.coefficients.iter().map(|c| c.abs()).fold(0.0, f64::max);
    if largest < tol.weight {
        return Err(ModelError::ZeroWeightCut {
            component: comp.name,
            estimate: largest,
        });
    }
    let direction = primitive_complement(&spec.exact_weight(&comp)).expect("nonzero weight");
    let mut cut = spec.clone();
    cut.cuts.push(super::Cut {
        component: comp.name.clone(),
        level: level.clone(),
    });
    cut.windows(tol.sample_depth)?;
    Ok(CutResult {
        spec: cut,
        component: comp.name,
        level: level.clone(),
        direction,
        weight_estimate: est.coefficients,
    })
}

/// Distance from a first coordinate to the nearest place where `H` is
/// singular or not smooth, capped at 1.
fn singular_gap(surface: &Surface, t: f64) -> f64 {
    let mut walls: Vec<f64> = surface.curves().iter().map(|c| c.value).collect();
    if let Surface::CappedCylinder { eps, .. } = surface {
        walls.extend([*eps, -eps]);
    }
    let periodic = matches!(surface, Surface::BTorus { .. });
    walls
        .iter()
        .map(|w| {
            let d = (t - w).abs();
            if periodic {
                let d = d.rem_euclid(std::f64::consts::TAU);
                d.min(std::f64::consts::TAU - d)
            } else {
                d
            }
        })
        .fold(1.0, f64::min)
        .max(1e-12)
}

/// Largest relative error between finite-difference gradients of the
/// Hamiltonians and the contractions `ι_V ω`, over `n` sampled points.
pub fn gradient_check(spec: &ManifoldSpec, n: usize, seed: u64, tol: &Tolerances) -> Result<f64, ModelError> {
    let samples = image_sample(spec, n, seed, tol)?;
    let factors = spec.factors();
    let mut worst: f64 = 0.0;
    for s in samples.samples.iter().filter(|s| s.is_finite()) {
        for (i, f) in factors.iter().enumerate() {
            if f.generator.is_none() {
                continue;
            }
            let x = [s.coords[2 * i], s.coords[2 * i + 1]];
            let h = |p: [f64; 2]| f.surface.hamiltonian(&SurfacePoint::main(p[0], p[1]));
            let gap = singular_gap(&f.surface, x[0]);
            let mut fd = [0.0; 2];
            for c in 0..2 {
                let step = if c == 0 { 1e-4 * gap } else { 1e-6 * x[1].abs().max(1.0) };
                let (mut a, mut b) = (x, x);
                a[c] += step;
                b[c] -= step;
                fd[c] = (h(a) - h(b)) / (2.0 * step);
            }
            let an = f.surface.contraction(x);
            let err = norm([fd[0] - an[0], fd[1] - an[1]]) / norm(an);
            worst = worst.max(err);
        }
    }
    Ok(worst)
}

/// Largest distance between a b-polytope vertex and the moment of a fixed
/// point in the same stratum, taken symmetrically; `∞` if either side has a
/// point with no partner.
pub fn vertex_fixed_point_distance(spec: &ManifoldSpec, tol: &Tolerances) -> Result<f64, ModelError> {
    let polytope = spec.b_polytope().ok_or(ModelError::Unsupported {
        family: spec.family_name(),
        needed: "a b-polytope",
    })?;
    let vertices: Vec<(Id, Vec<f64>)> = polytope
        .vertices()
        .map_err(|e| ModelError::Parameter(e.to_string()))?
        .into_iter()
        .map(|v| (v.vertex, v.xi.to_f64()))
        .collect();
    let FixedPointOutcome::Fixed { components } = fixed_points(spec, tol) else {
        return Ok(f64::INFINITY);
    };
    let fixed: Vec<(Id, Vec<f64>)> = components
        .into_iter()
        .filter_map(|c| c.stratum.map(|s| (s, c.moment)))
        .collect();
    let directed = |a: &[(Id, Vec<f64>)], b: &[(Id, Vec<f64>)]| {
        a.iter()
            .map(|(s, x)| {
                b.iter()
                    .filter(|(t, _)| t == s)
                    .map(|(_, y)| x.iter().zip(y).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    if vertices.is_empty() && fixed.is_empty() {
        return Ok(0.0);
    }
    Ok(directed(&vertices, &fixed).max(directed(&fixed, &vertices)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::BSurface;
    use crate::rational::{int, rat};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn local_model_weight() {
        let spec = ManifoldSpec::local_model(&[(int(0), int(1))], int(1), int(1));
        let e = modular_weight_estimate(&spec, "z", &tol()).unwrap();
        assert!(e.coefficients[0].abs() < 1e-9);
        assert!((e.coefficients[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn b_torus_weights_have_opposite_signs() {
        let spec = ManifoldSpec::b_torus();
        let a = modular_weight_estimate(&spec, "theta_0", &tol()).unwrap().coefficients[0];
        let b = modular_weight_estimate(&spec, "theta_pi", &tol()).unwrap().coefficients[0];
        assert!((a + 1.0).abs() < 1e-6 && (b - 1.0).abs() < 1e-6, "{a} {b}");
    }

    #[test]
    fn zero_weight_product_weight_vanishes() {
        let spec = ManifoldSpec::zero_weight_product(BSurface::BSphere);
        let e = modular_weight_estimate(&spec, "equator", &tol()).unwrap();
        assert_eq!(e.coefficients, vec![0.0]);
    }

    #[test]
    fn b_sphere_fixed_points() {
        let FixedPointOutcome::Fixed { components } = fixed_points(&ManifoldSpec::b_sphere(), &tol()) else {
            panic!("circle action expected");
        };
        assert_eq!(components.len(), 2);
        for c in &components {
            assert!(c.moment[0].abs() < 1e-12);
            let h = hessian_indices(&ManifoldSpec::b_sphere(), &c.points[0], &[1.0], &tol()).unwrap();
            assert_eq!((h.index, h.coindex, h.nullity), (0, 2, 0));
        }
        let strata: Vec<_> = components.iter().map(|c| c.stratum.clone().unwrap().0).collect();
        assert_eq!(strata, vec!["north", "south"]);
    }

    #[test]
    fn b_torus_has_no_fixed_points() {
        let out = fixed_points(&ManifoldSpec::b_torus(), &tol());
        assert_eq!(out, FixedPointOutcome::Fixed { components: vec![] });
    }

    #[test]
    fn r_action_diagnostic() {
        let FixedPointOutcome::NotCircleAction(d) = fixed_points(&ManifoldSpec::r_action_counterexample(), &tol()) else {
            panic!("diagnostic expected");
        };
        assert_eq!(d.vanishing_points, 41);
        assert!((d.min_gradient - 1.0).abs() < 1e-9);
        assert!(d.message.contains("{x = 0}"));
    }

    #[test]
    fn zero_weight_product_poles() {
        let spec = ManifoldSpec::zero_weight_product(BSurface::BSphere);
        let FixedPointOutcome::Fixed { components } = fixed_points(&spec, &tol()) else {
            panic!()
        };
        assert_eq!(components.len(), 2);
        for c in components {
            assert_eq!(c.dimension, 2);
            let h = hessian_indices(&spec, &c.points[4], &[1.0], &tol()).unwrap();
            let expected = if c.moment[0] > 0.0 { (2, 0, 2) } else { (0, 2, 2) };
            assert_eq!((h.index, h.coindex, h.nullity), expected, "{}", c.label);
        }
    }

    #[test]
    fn local_model_vertices_match_fixed_points() {
        let spec = ManifoldSpec::local_model(&[(int(0), int(1))], int(1), rat(1, 2));
        assert!(vertex_fixed_point_distance(&spec, &tol()).unwrap() < 1e-6);
        assert!(vertex_fixed_point_distance(&ManifoldSpec::b_sphere(), &tol()).unwrap() < 1e-6);
    }

    #[test]
    fn cuts() {
        let spec = ManifoldSpec::b_sphere();
        let cut = symplectic_cut(&spec, "equator", &int(3), &tol()).unwrap();
        let s = image_sample(&cut.spec, 2000, 4, &tol()).unwrap();
        assert!(cut.min_level(&s) >= -3.0 - 1e-6);
        assert!(s.samples.iter().all(|x| x.moment[0] <= 3.0 + 1e-9));
        let zwp = ManifoldSpec::zero_weight_product(BSurface::BSphere);
        assert!(matches!(
            symplectic_cut(&zwp, "equator", &int(3), &tol()),
            Err(ModelError::ZeroWeightCut { .. })
        ));
        let lm = ManifoldSpec::local_model(&[(int(0), int(1))], int(1), int(1));
        let cut = symplectic_cut(&lm, "z", &int(5), &tol()).unwrap();
        let s = image_sample(&cut.spec, 2000, 4, &tol()).unwrap();
        assert!(cut.min_level(&s) >= -5.0 - 1e-6);
    }

    #[test]
    fn c_symplectic_strata() {
        let w = stratified_weights(&ManifoldSpec::c_symplectic_product(), &tol()).unwrap();
        assert!((w["z1_x_t2"].coefficients[0].abs() - 1.0).abs() < 1e-6);
        assert_eq!(w["t1_x_z2"].coefficients[0], 0.0);
        assert!(matches!(
            stratified_weights_at(&ManifoldSpec::c_symplectic_product(), 1e-3, &tol()),
            Err(ModelError::NearCorner { .. })
        ));
    }

    #[test]
    fn gradients_match_contractions() {
        for spec in ManifoldSpec::builtins().values() {
            let err = gradient_check(spec, 100, 3, &tol()).unwrap();
            assert!(err < 1e-5, "{} {err}", spec.family_name());
        }
    }

    #[test]
    fn leaf_image() {
        let spec = ManifoldSpec::zero_weight_product(BSurface::BSphere);
        let r = verify_leaf_image(&spec, 1000, 5, &tol()).unwrap();
        assert!(r.hausdorff < 0.05);
        assert_eq!(verify_leaf_image(&ManifoldSpec::b_sphere(), 100, 5, &tol()), Err(ModelError::NotAllZero));
    }
}

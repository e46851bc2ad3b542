use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::surface::SurfacePoint;
use super::{ManifoldPoint, ManifoldSpec, ModelError, Tolerances};
use crate::adjacency::Id;

/// One sampled point with its moment value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentSample {
    /// Main-chart coordinates, two per surface factor.
    pub coords: Vec<f64>,
    pub moment: Vec<f64>,
    /// Set when the point lies on a component of `Z` where the moment diverges.
    pub on_z: bool,
    pub stratum: Option<Id>,
}

impl MomentSample {
    pub fn is_finite(&self) -> bool {
        !self.on_z && self.moment.iter().all(|x| x.is_finite())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentSampleSet {
    pub family: String,
    pub seed: u64,
    pub coordinate_names: Vec<String>,
    pub samples: Vec<MomentSample>,
}

/// Additive recurrence with the generalized golden ratio in `d` dimensions.
fn rd_direction(d: usize) -> Vec<f64> {
    let mut phi = 2.0f64;
    for _ in 0..64 {
        phi = (1.0 + phi).powf(1.0 / (d as f64 + 1.0));
    }
    (1..=d).map(|i| phi.powi(-(i as i32)).fract()).collect()
}

/// `n` quasi-uniform points of `[0,1)^d`, shifted by a seeded random offset.
fn quasi_random(d: usize, n: usize, seed: u64) -> impl IndexedParallelIterator<Item = Vec<f64>> {
    let alpha = rd_direction(d);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shift: Vec<f64> = (0..d).map(|_| rng.random::<f64>()).collect();
    (0..n).into_par_iter().map(move |i| {
        alpha
            .iter()
            .zip(&shift)
            .map(|(a, s)| (s + (i as f64 + 1.0) * a).fract())
            .collect()
    })
}

/// Samples the moment image; bit-identical for equal `(spec, n, seed, tolerances)`.
pub fn image_sample(spec: &ManifoldSpec, n: usize, seed: u64, tol: &Tolerances) -> Result<MomentSampleSet, ModelError> {
    sample_with_pin(spec, n, seed, tol, None)
}

/// As [`image_sample`], optionally holding one factor at a fixed point.
pub(crate) fn sample_with_pin(
    spec: &ManifoldSpec,
    n: usize,
    seed: u64,
    tol: &Tolerances,
    pin: Option<(usize, SurfacePoint)>,
) -> Result<MomentSampleSet, ModelError> {
    if n == 0 {
        return Err(ModelError::Parameter("samples must be ≥ 1".into()));
    }
    spec.check()?;
    let factors = spec.factors();
    let windows = spec.windows(tol.sample_depth)?;
    let samples = quasi_random(2 * factors.len(), n, seed)
        .map(|u| {
            let points: Vec<SurfacePoint> = factors
                .iter()
                .enumerate()
                .map(|(i, f)| match pin {
                    Some((j, p)) if j == i => p,
                    _ => {
                        let [a, b] = f.surface.sample([u[2 * i], u[2 * i + 1]], windows[i]);
                        SurfacePoint::main(a, b)
                    }
                })
                .collect();
            let point = ManifoldPoint { factors: points };
            let m = spec.moment_unchecked(&point);
            MomentSample {
                coords: point
                    .factors
                    .iter()
                    .zip(&factors)
                    .flat_map(|(p, f)| f.surface.to_main(p))
                    .collect(),
                moment: m.values,
                on_z: m.on_z,
                stratum: spec.stratum(&point),
            }
        })
        .collect();
    Ok(MomentSampleSet {
        family: spec.family_name().to_string(),
        seed,
        coordinate_names: spec.coordinate_names(),
        samples,
    })
}

impl MomentSampleSet {
    /// A sample set from bare moment values, for test fixtures.
    pub fn from_points(points: Vec<Vec<f64>>) -> Self {
        Self {
            family: "points".into(),
            seed: 0,
            coordinate_names: vec![],
            samples: points
                .into_iter()
                .map(|moment| MomentSample {
                    coords: vec![],
                    moment,
                    on_z: false,
                    stratum: None,
                })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn finite_moments(&self) -> Vec<Vec<f64>> {
        self.samples
            .iter()
            .filter(|s| s.is_finite())
            .map(|s| s.moment.clone())
            .collect()
    }

    /// CSV with columns `coords..., mu_1..mu_k, z_flag`.
    pub fn to_csv(&self) -> String {
        let k = self.samples.first().map_or(0, |s| s.moment.len());
        let mut out = String::new();
        let header: Vec<String> = self
            .coordinate_names
            .iter()
            .cloned()
            .chain((1..=k).map(|j| format!("mu_{j}")))
            .chain(std::iter::once("z_flag".to_string()))
            .collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for s in &self.samples {
            for x in s.coords.iter().chain(&s.moment) {
                write!(out, "{x},").expect("string write");
            }
            writeln!(out, "{}", u8::from(s.on_z)).expect("string write");
        }
        out
    }

    /// Per-component ranges, `Z` hits and stratum counts.
    pub fn summary(&self) -> serde_json::Value {
        let k = self.samples.first().map_or(0, |s| s.moment.len());
        let finite = self.finite_moments();
        let range = |f: fn(f64, f64) -> f64| -> Vec<Option<f64>> {
            (0..k).map(|j| finite.iter().map(|m| m[j]).reduce(f)).collect()
        };
        let mut strata: BTreeMap<String, usize> = BTreeMap::new();
        for s in &self.samples {
            let key = s.stratum.as_ref().map_or_else(|| "z".to_string(), |v| v.0.clone());
            *strata.entry(key).or_default() += 1;
        }
        serde_json::json!({
            "family": self.family,
            "seed": self.seed,
            "samples": self.samples.len(),
            "min": range(f64::min),
            "max": range(f64::max),
            "z_hits": self.samples.iter().filter(|s| s.on_z).count(),
            "strata": strata,
        })
    }
}

/// Uniform grid of buckets for fixed-radius neighbour queries.
struct Buckets<'a> {
    cell: f64,
    points: &'a [Vec<f64>],
    map: HashMap<Vec<i64>, Vec<usize>>,
}

impl<'a> Buckets<'a> {
    fn new(points: &'a [Vec<f64>], cell: f64) -> Self {
        let mut map: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            map.entry(Self::key(p, cell)).or_default().push(i);
        }
        Self { cell, points, map }
    }

    fn key(p: &[f64], cell: f64) -> Vec<i64> {
        p.iter().map(|x| (x / cell).floor() as i64).collect()
    }

    /// Distance to the nearest point if it is within one cell width.
    fn nearest_within(&self, q: &[f64]) -> Option<f64> {
        let base = Self::key(q, self.cell);
        let d = base.len();
        let mut best: Option<f64> = None;
        let mut offset = vec![-1i64; d];
        loop {
            let key: Vec<i64> = base.iter().zip(&offset).map(|(b, o)| b + o).collect();
            for &i in self.map.get(&key).into_iter().flatten() {
                let dist = distance(q, &self.points[i]);
                if dist <= self.cell && best.is_none_or(|b| dist < b) {
                    best = Some(dist);
                }
            }
            let mut j = 0;
            while j < d && offset[j] == 1 {
                offset[j] = -1;
                j += 1;
            }
            if j == d {
                return best;
            }
            offset[j] += 1;
        }
    }
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexityReport {
    pub pairs: usize,
    pub violations: usize,
    pub delta: f64,
    /// Largest midpoint-to-sample distance among the pairs that passed.
    pub worst_distance: f64,
}

/// Midpoint test: for `m` seeded random pairs from one stratum, the midpoint
/// must lie within `delta` of some sample of that stratum.
pub fn convexity_check(samples: &MomentSampleSet, m: usize, delta: f64, seed: u64) -> Result<ConvexityReport, ModelError> {
    let mut groups: BTreeMap<Option<Id>, Vec<Vec<f64>>> = BTreeMap::new();
    for s in samples.samples.iter().filter(|s| s.is_finite()) {
        groups.entry(s.stratum.clone()).or_default().push(s.moment.clone());
    }
    let finite: usize = groups.values().map(Vec::len).sum();
    let groups: Vec<Vec<Vec<f64>>> = groups.into_values().filter(|g| g.len() >= 2).collect();
    let total: usize = groups.iter().map(Vec::len).sum();
    if total < 2 {
        return Err(ModelError::InsufficientSamples(finite));
    }
    let buckets: Vec<Buckets> = groups.iter().map(|g| Buckets::new(g, delta)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0;
    let mut worst: f64 = 0.0;
    for _ in 0..m {
        let mut pick = rng.random_range(0..total);
        let g = groups
            .iter()
            .position(|g| {
                if pick < g.len() {
                    true
                } else {
                    pick -= g.len();
                    false
                }
            })
            .expect("index within total");
        let a = &groups[g][pick];
        let b = &groups[g][rng.random_range(0..groups[g].len())];
        let mid: Vec<f64> = a.iter().zip(b).map(|(x, y)| (x + y) / 2.0).collect();
        match buckets[g].nearest_within(&mid) {
            Some(d) => worst = worst.max(d),
            None => violations += 1,
        }
    }
    Ok(ConvexityReport {
        pairs: m,
        violations,
        delta,
        worst_distance: worst,
    })
}

/// Symmetric Hausdorff distance between two finite point sets.
pub fn hausdorff_distance(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    if a.is_empty() || b.is_empty() {
        return f64::INFINITY;
    }
    if a[0].len() == 1 {
        let sorted = |s: &[Vec<f64>]| {
            let mut v: Vec<f64> = s.iter().map(|p| p[0]).collect();
            v.sort_by(f64::total_cmp);
            v
        };
        let (sa, sb) = (sorted(a), sorted(b));
        let directed = |from: &[f64], to: &[f64]| {
            from.iter()
                .map(|x| {
                    let i = to.partition_point(|y| y < x);
                    let right = to.get(i).map_or(f64::INFINITY, |y| y - x);
                    let left = if i > 0 { x - to[i - 1] } else { f64::INFINITY };
                    right.min(left)
                })
                .fold(0.0, f64::max)
        };
        return directed(&sa, &sb).max(directed(&sb, &sa));
    }
    let directed = |from: &[Vec<f64>], to: &[Vec<f64>]| {
        from.par_iter()
            .map(|p| to.iter().map(|q| distance(p, q)).fold(f64::INFINITY, f64::min))
            .reduce(|| 0.0, f64::max)
    };
    directed(a, b).max(directed(b, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::BSurface;
    use crate::rational::int;

    #[test]
    fn rd_sequence_is_well_spread() {
        let pts: Vec<Vec<f64>> = quasi_random(2, 1000, 3).collect();
        let mut counts = [0usize; 4];
        for p in &pts {
            counts[usize::from(p[0] >= 0.5) * 2 + usize::from(p[1] >= 0.5)] += 1;
        }
        assert!(counts.iter().all(|&c| (230..=270).contains(&c)), "{counts:?}");
    }

    #[test]
    fn sampling_is_deterministic() {
        let spec = ManifoldSpec::local_model(&[(int(0), int(1))], int(1), int(1));
        let tol = Tolerances::default();
        let a = image_sample(&spec, 500, 9, &tol).unwrap();
        let b = image_sample(&spec, 500, 9, &tol).unwrap();
        assert_eq!(a.to_csv(), b.to_csv());
        assert_ne!(a.to_csv(), image_sample(&spec, 500, 10, &tol).unwrap().to_csv());
    }

    #[test]
    fn sample_ranges() {
        let tol = Tolerances::default();
        let s = image_sample(&ManifoldSpec::zero_weight_product(BSurface::BSphere), 2000, 1, &tol).unwrap();
        assert!(s.samples.iter().all(|x| (-1.0..=1.0).contains(&x.moment[0])));
        let s = image_sample(&ManifoldSpec::b_sphere(), 2000, 1, &tol).unwrap();
        assert!(s.samples.iter().all(|x| x.moment[0] >= 0.0));
        let s = image_sample(&ManifoldSpec::local_model(&[(int(0), int(1))], int(1), int(1)), 2000, 1, &tol).unwrap();
        assert!(s.samples.iter().all(|x| (0.0..=1.0).contains(&x.moment[0]) && x.moment[1] <= 0.0));
    }

    #[test]
    fn zero_samples_rejected() {
        let err = image_sample(&ManifoldSpec::b_sphere(), 0, 1, &Tolerances::default()).unwrap_err();
        assert_eq!(err.to_string(), "invalid parameter: samples must be ≥ 1");
    }

    #[test]
    fn csv_header() {
        let s = image_sample(&ManifoldSpec::b_sphere(), 2, 1, &Tolerances::default()).unwrap();
        assert!(s.to_csv().starts_with("z1,theta1,mu_1,z_flag\n"));
        assert_eq!(s.to_csv().lines().count(), 3);
    }

    #[test]
    fn convexity_of_interval_and_power_against_clusters() {
        let interval = MomentSampleSet::from_points((0..=400).map(|i| vec![-1.0 + i as f64 / 200.0]).collect());
        assert_eq!(convexity_check(&interval, 500, 0.05, 1).unwrap().violations, 0);
        let clusters = MomentSampleSet::from_points(
            (0..400).map(|i| vec![if i % 2 == 0 { 0.0 } else { 3.0 } + (i as f64) / 400.0]).collect(),
        );
        assert!(convexity_check(&clusters, 500, 0.05, 1).unwrap().violations > 0);
        assert!(convexity_check(&MomentSampleSet::from_points(vec![vec![0.0]]), 5, 0.05, 1).is_err());
    }

    #[test]
    fn hausdorff_examples() {
        let a = vec![vec![0.0], vec![1.0]];
        let b = vec![vec![0.0], vec![0.5]];
        assert_eq!(hausdorff_distance(&a, &b), 0.5);
        let a2 = vec![vec![0.0, 0.0], vec![3.0, 4.0]];
        let b2 = vec![vec![0.0, 0.0]];
        assert_eq!(hausdorff_distance(&a2, &b2), 5.0);
    }
}

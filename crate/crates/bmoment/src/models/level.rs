//! Connected components of level sets on a grid.
//!
//! For a model manifold the grid lives on the orbit space: a rotated surface
//! contributes only its first coordinate (the orbits are circles or points),
//! other surfaces contribute both coordinates. Level sets of a moment map are
//! invariant, so they are connected exactly when their images in the orbit
//! space are.

use std::f64::consts::TAU;

use rayon::prelude::*;

use super::surface::{Surface, SurfacePoint};
use super::{ManifoldPoint, ManifoldSpec, ModelError};
use crate::unionfind::UnionFind;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub lo: f64,
    pub hi: f64,
    pub nodes: usize,
    pub periodic: bool,
}

impl Axis {
    pub fn interval(lo: f64, hi: f64, nodes: usize) -> Self {
        Self {
            lo,
            hi,
            nodes,
            periodic: false,
        }
    }

    pub fn circle(nodes: usize) -> Self {
        Self {
            lo: 0.0,
            hi: TAU,
            nodes,
            periodic: true,
        }
    }

    fn value(&self, i: usize) -> f64 {
        if self.periodic {
            self.lo + (self.hi - self.lo) * i as f64 / self.nodes as f64
        } else if self.nodes == 1 {
            (self.lo + self.hi) / 2.0
        } else {
            self.lo + (self.hi - self.lo) * i as f64 / (self.nodes - 1) as f64
        }
    }
}

/// Function values on a rectangular grid, reusable for many levels.
#[derive(Debug, Clone)]
pub struct LevelGrid {
    axes: Vec<Axis>,
    values: Vec<f64>,
    /// Twice the largest difference between neighbouring finite values.
    band: f64,
}

impl LevelGrid {
    pub fn from_fn(axes: Vec<Axis>, f: impl Fn(&[f64]) -> f64 + Sync) -> Self {
        let total: usize = axes.iter().map(|a| a.nodes).product();
        let values: Vec<f64> = (0..total)
            .into_par_iter()
            .map(|flat| {
                let mut rest = flat;
                let x: Vec<f64> = axes
                    .iter()
                    .map(|a| {
                        let i = rest % a.nodes;
                        rest /= a.nodes;
                        a.value(i)
                    })
                    .collect();
                f(&x)
            })
            .collect();
        let mut grid = Self { axes, values, band: 0.0 };
        let mut max_step: f64 = 0.0;
        grid.for_each_neighbour_pair(|a, b| {
            let d = (grid.values[a] - grid.values[b]).abs();
            if d.is_finite() {
                max_step = max_step.max(d);
            }
        });
        grid.band = 2.0 * max_step;
        grid
    }

    pub fn band(&self) -> f64 {
        self.band
    }

    fn for_each_neighbour_pair(&self, mut visit: impl FnMut(usize, usize)) {
        let total = self.values.len();
        let mut stride = 1;
        for a in &self.axes {
            for flat in 0..total {
                let i = (flat / stride) % a.nodes;
                if i + 1 < a.nodes {
                    visit(flat, flat + stride);
                } else if a.periodic && a.nodes > 2 {
                    visit(flat, flat - i * stride);
                }
            }
            stride *= a.nodes;
        }
    }

    /// Number of connected components of `{|f − h| < band}`.
    pub fn components(&self, h: f64) -> Result<usize, ModelError> {
        let marked: Vec<bool> = self.values.iter().map(|v| (v - h).abs() < self.band).collect();
        if !marked.iter().any(|&m| m) {
            return Err(ModelError::EmptyLevel { level: h });
        }
        let mut uf = UnionFind::new(self.values.len());
        self.for_each_neighbour_pair(|a, b| {
            if marked[a] && marked[b] {
                uf.union(a, b);
            }
        });
        Ok(uf.count_among((0..self.values.len()).filter(|&i| marked[i])))
    }

    /// Orbit-space grid of `H_X = Σ X_j μ_j` with `resolution` nodes per axis.
    pub fn for_spec(spec: &ManifoldSpec, x: &[f64], resolution: usize) -> Self {
        let factors = spec.factors();
        let mut axes = Vec::new();
        for f in &factors {
            let first = match f.surface {
                Surface::RoundSphere { .. } | Surface::BSphere => Axis::interval(-1.0, 1.0, resolution),
                Surface::BTorus { .. } => Axis::circle(resolution),
                Surface::CappedCylinder { eps, .. } => Axis::interval(-eps, eps, resolution),
                Surface::Plane => Axis::interval(-2.0, 2.0, resolution),
            };
            axes.push(first);
            if f.generator.is_none() {
                axes.push(match f.surface {
                    Surface::Plane => Axis::interval(-2.0, 2.0, resolution),
                    _ => Axis::circle(resolution),
                });
            }
        }
        Self::from_fn(axes, |coords| {
            let mut it = coords.iter();
            let point = ManifoldPoint {
                factors: factors
                    .iter()
                    .map(|f| {
                        let a = *it.next().expect("axis");
                        let b = if f.generator.is_none() { *it.next().expect("axis") } else { 0.0 };
                        SurfacePoint::main(a, b)
                    })
                    .collect(),
            };
            spec.hamiltonian(x, &point)
        })
    }
}

/// Components of the level set `{μ_1 + … + μ_k = h}` on an orbit-space grid.
pub fn level_connectivity(spec: &ManifoldSpec, h: f64, resolution: usize) -> Result<usize, ModelError> {
    let ones = vec![1.0; spec.torus_dim()];
    LevelGrid::for_spec(spec, &ones, resolution).components(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::BSurface;

    #[test]
    fn double_well_has_two_components() {
        let axes = vec![Axis::interval(-1.5, 1.5, 200), Axis::interval(-1.5, 1.5, 200)];
        let grid = LevelGrid::from_fn(axes, |p| (p[0] * p[0] - 1.0).powi(2) + p[1] * p[1]);
        assert_eq!(grid.components(0.5).unwrap(), 2);
        assert_eq!(grid.components(1.5).unwrap(), 1);
    }

    #[test]
    fn periodic_axis_closes_up() {
        // cos on a circle: the level 0 set is two points, joined by nothing.
        let grid = LevelGrid::from_fn(vec![Axis::circle(400)], |p| p[0].cos());
        assert_eq!(grid.components(0.0).unwrap(), 2);
        // Near the maximum the marked band wraps through angle 0.
        assert_eq!(grid.components(1.0).unwrap(), 1);
    }

    #[test]
    fn zero_weight_product_levels() {
        let spec = ManifoldSpec::zero_weight_product(BSurface::BSphere);
        assert_eq!(level_connectivity(&spec, 0.0, 40).unwrap(), 1);
        assert_eq!(level_connectivity(&spec, 1.0, 40).unwrap(), 1);
        assert!(level_connectivity(&spec, 5.0, 40).is_err());
    }
}

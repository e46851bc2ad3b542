//! Two-dimensional building blocks. Every example manifold is a product of
//! these surfaces, with each circle factor of the torus rotating one surface.
//!
//! A surface has a main chart used for sampling and output, plus extra charts
//! around points where the rotation has fixed points and the main chart
//! degenerates (sphere poles, the collapsed circle of a capped cylinder).
//! Forms are written `ω = f dx¹∧dx²` in main coordinates and the Hamiltonian
//! of the rotation field `V` satisfies `dH = ι_V ω`.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

/// Which chart a set of surface coordinates refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Chart {
    Main,
    /// Around `z = 1`, with `z = 1 − (p² + q²)/2`.
    North,
    /// Around `z = −1`, with `z = −1 + (p² + q²)/2`.
    South,
    /// Around the collapsed circle on the `t > 0` side.
    CapPlus,
    /// Around the collapsed circle on the `t < 0` side.
    CapMinus,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfacePoint {
    pub chart: Chart,
    pub coords: [f64; 2],
}

impl SurfacePoint {
    pub fn main(a: f64, b: f64) -> Self {
        Self {
            chart: Chart::Main,
            coords: [a, b],
        }
    }
}

/// An exceptional curve `{x¹ = value}` of a b-surface.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub name: &'static str,
    pub value: f64,
    /// Log coefficient of the rotation Hamiltonian at the curve.
    pub coefficient: f64,
    /// Index into [`Surface::sides`] of the side with positive defining function, then the other.
    pub ends: [usize; 2],
}

/// Range of Hamiltonian values sampled on each side of a b-surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Surface {
    /// `S²` with `ω = ((hi − lo)/2) dφ∧dz` and height Hamiltonian in `[lo, hi]`.
    RoundSphere { lo: f64, hi: f64 },
    /// `S²` with `ω = (1/z) dz∧dθ`, `H = −log|z|`, exceptional equator.
    BSphere,
    /// `T²` with `ω = dθ∧dα / sin(θ + phase)`, `H = −log|tan((θ + phase)/2)|`.
    BTorus { phase: f64 },
    /// `{|t| ≤ ε} × S¹` with `ω = (c/t) dρ∧dt`, `H = c log|t|`, cut at `|t| = ε`.
    CappedCylinder { c: f64, eps: f64 },
    /// `ℝ²` with `ω = (1/x) dy∧dx` and the non-periodic field `x ∂_y`, `H = x`.
    Plane,
}

impl Surface {
    pub fn coordinate_names(&self) -> [&'static str; 2] {
        match self {
            Surface::RoundSphere { .. } => ["z", "phi"],
            Surface::BSphere => ["z", "theta"],
            Surface::BTorus { .. } => ["theta", "alpha"],
            Surface::CappedCylinder { .. } => ["t", "rho"],
            Surface::Plane => ["x", "y"],
        }
    }

    /// Names of the components of the complement of the exceptional curves.
    pub fn sides(&self) -> &'static [&'static str] {
        match self {
            Surface::RoundSphere { .. } => &["sphere"],
            Surface::BSphere => &["north", "south"],
            Surface::BTorus { .. } => &["upper", "lower"],
            Surface::CappedCylinder { .. } => &["plus", "minus"],
            Surface::Plane => &["x_pos", "x_neg"],
        }
    }

    pub fn curves(&self) -> Vec<Curve> {
        match *self {
            Surface::RoundSphere { .. } => vec![],
            Surface::BSphere => vec![Curve {
                name: "equator",
                value: 0.0,
                coefficient: -1.0,
                ends: [0, 1],
            }],
            Surface::BTorus { phase } => vec![
                Curve {
                    name: "theta_0",
                    value: -phase,
                    coefficient: -1.0,
                    ends: [0, 1],
                },
                Curve {
                    name: "theta_pi",
                    value: PI - phase,
                    coefficient: 1.0,
                    ends: [1, 0],
                },
            ],
            Surface::CappedCylinder { c, .. } => vec![Curve {
                name: "z",
                value: 0.0,
                coefficient: c,
                ends: [0, 1],
            }],
            Surface::Plane => vec![Curve {
                name: "x0",
                value: 0.0,
                coefficient: 0.0,
                ends: [0, 1],
            }],
        }
    }

    /// `true` when the first coordinate is an angle.
    pub fn first_periodic(&self) -> bool {
        matches!(self, Surface::BTorus { .. })
    }

    /// `true` for the rotation field of a genuine circle action.
    pub fn is_circle_action(&self) -> bool {
        !matches!(self, Surface::Plane)
    }

    /// Value of the cut level `c log ε` of a capped cylinder, zero otherwise.
    pub fn cap_level(&self) -> f64 {
        match *self {
            Surface::CappedCylinder { c, eps } => c * eps.ln(),
            _ => 0.0,
        }
    }

    /// Main coordinates of a point given in any chart.
    pub fn to_main(&self, p: &SurfacePoint) -> [f64; 2] {
        let [a, b] = p.coords;
        let s = a * a + b * b;
        let angle = b.atan2(a).rem_euclid(TAU);
        match (self, p.chart) {
            (_, Chart::Main) => p.coords,
            (Surface::RoundSphere { .. } | Surface::BSphere, Chart::North) => [1.0 - s / 2.0, angle],
            (Surface::RoundSphere { .. } | Surface::BSphere, Chart::South) => [-1.0 + s / 2.0, angle],
            (Surface::CappedCylinder { c, eps }, Chart::CapPlus) => [eps * (-s / (2.0 * c)).exp(), angle],
            (Surface::CappedCylinder { c, eps }, Chart::CapMinus) => [-eps * (-s / (2.0 * c)).exp(), angle],
            _ => [f64::NAN, f64::NAN],
        }
    }

    /// `true` when the point lies in the domain of its chart.
    pub fn in_domain(&self, p: &SurfacePoint) -> bool {
        let [a, b] = p.coords;
        if !(a.is_finite() && b.is_finite()) {
            return false;
        }
        let s = a * a + b * b;
        match (self, p.chart) {
            (Surface::RoundSphere { .. } | Surface::BSphere, Chart::Main) => a.abs() <= 1.0,
            (Surface::RoundSphere { .. } | Surface::BSphere, Chart::North | Chart::South) => s < 2.0,
            (Surface::CappedCylinder { eps, .. }, Chart::Main) => a.abs() <= eps * (1.0 + 1e-12),
            (Surface::CappedCylinder { .. }, Chart::CapPlus | Chart::CapMinus) => true,
            (Surface::BTorus { .. } | Surface::Plane, Chart::Main) => true,
            _ => false,
        }
    }

    /// The rotation Hamiltonian; `±∞` on an exceptional curve with nonzero coefficient.
    pub fn hamiltonian(&self, p: &SurfacePoint) -> f64 {
        let [a, b] = p.coords;
        match (*self, p.chart) {
            (Surface::RoundSphere { lo, hi }, chart) => {
                let z = match chart {
                    Chart::Main => a,
                    _ => self.to_main(p)[0],
                };
                (lo + (hi - lo) * (1.0 + z) / 2.0).clamp(lo, hi)
            }
            (Surface::BSphere, Chart::Main) => -a.abs().ln(),
            (Surface::BSphere, Chart::North | Chart::South) => -(1.0 - (a * a + b * b) / 2.0).ln(),
            (Surface::BTorus { phase }, _) => -((a + phase) / 2.0).tan().abs().ln(),
            (Surface::CappedCylinder { c, eps }, Chart::Main) => {
                self.cap_level() + c * (a.abs() / eps).min(1.0).ln()
            }
            (Surface::CappedCylinder { .. }, _) => self.cap_level() - (a * a + b * b) / 2.0,
            (Surface::Plane, _) => a,
            _ => f64::NAN,
        }
    }

    /// Density `f` of `ω = f dx¹∧dx²` in main coordinates.
    pub fn density(&self, x: [f64; 2]) -> f64 {
        match *self {
            Surface::RoundSphere { lo, hi } => -(hi - lo) / 2.0,
            Surface::BSphere => 1.0 / x[0],
            Surface::BTorus { phase } => 1.0 / (x[0] + phase).sin(),
            Surface::CappedCylinder { c, .. } => -c / x[0],
            Surface::Plane => -1.0 / x[0],
        }
    }

    /// The rotation field in main coordinates.
    pub fn field(&self, x: [f64; 2]) -> [f64; 2] {
        match self {
            Surface::Plane => [0.0, x[0]],
            _ => [0.0, 1.0],
        }
    }

    /// `ι_V ω` in main coordinates, the analytic gradient of the Hamiltonian.
    pub fn contraction(&self, x: [f64; 2]) -> [f64; 2] {
        let f = self.density(x);
        let v = self.field(x);
        [-f * v[1], f * v[0]]
    }

    /// Index into [`Surface::sides`] of the point, or `None` on an exceptional curve.
    pub fn side(&self, p: &SurfacePoint) -> Option<usize> {
        match p.chart {
            Chart::North | Chart::CapPlus => return Some(0),
            Chart::South | Chart::CapMinus => return Some(usize::from(!matches!(self, Surface::RoundSphere { .. }))),
            Chart::Main => {}
        }
        let x = p.coords[0];
        match *self {
            Surface::RoundSphere { .. } => Some(0),
            Surface::BSphere | Surface::CappedCylinder { .. } | Surface::Plane => {
                (x != 0.0).then_some(usize::from(x < 0.0))
            }
            Surface::BTorus { phase } => {
                let s = (x + phase).rem_euclid(TAU);
                if s == 0.0 || s == PI {
                    None
                } else {
                    Some(usize::from(s > PI))
                }
            }
        }
    }

    /// Extra charts, each with a coordinate box, searched for critical points.
    pub fn search_charts(&self) -> Vec<(Chart, [[f64; 2]; 2])> {
        let unit = [[-0.5, 0.5], [-0.5, 0.5]];
        match *self {
            Surface::RoundSphere { .. } | Surface::BSphere => vec![
                (Chart::Main, [[-0.99, 0.99], [0.0, TAU]]),
                (Chart::North, unit),
                (Chart::South, unit),
            ],
            Surface::BTorus { .. } => vec![(Chart::Main, [[0.0, TAU], [0.0, TAU]])],
            Surface::CappedCylinder { eps, .. } => vec![
                (Chart::Main, [[-0.99 * eps, 0.99 * eps], [0.0, TAU]]),
                (Chart::CapPlus, unit),
                (Chart::CapMinus, unit),
            ],
            Surface::Plane => vec![(Chart::Main, [[-2.0, 2.0], [-2.0, 2.0]])],
        }
    }

    /// Default sampling window of the Hamiltonian on each side.
    pub fn default_window(&self, depth: f64) -> Window {
        match self {
            Surface::BSphere => Window { lo: 0.0, hi: depth },
            Surface::BTorus { .. } => Window { lo: -depth, hi: depth },
            Surface::CappedCylinder { .. } => Window {
                lo: self.cap_level() - depth,
                hi: self.cap_level(),
            },
            _ => Window { lo: 0.0, hi: 0.0 },
        }
    }

    /// Main coordinates of the point with Hamiltonian `h` on side `side` and angle `angle`.
    fn invert(&self, side: usize, h: f64, angle: f64) -> [f64; 2] {
        let sign = if side == 0 { 1.0 } else { -1.0 };
        match *self {
            Surface::BSphere => [sign * (-h).exp(), angle],
            Surface::BTorus { phase } => {
                let s = 2.0 * (-h).exp().atan();
                let s = if side == 0 { s } else { TAU - s };
                [s - phase, angle]
            }
            Surface::CappedCylinder { c, eps } => [sign * eps * ((h - self.cap_level()) / c).exp(), angle],
            _ => [f64::NAN, f64::NAN],
        }
    }

    /// Maps `u ∈ [0,1)²` to main coordinates. b-surfaces are sampled uniformly in
    /// the Hamiltonian over `window` on each side, which is uniform for the
    /// Liouville measure restricted to the window.
    pub fn sample(&self, u: [f64; 2], window: Window) -> [f64; 2] {
        let angle = TAU * u[1];
        match *self {
            Surface::RoundSphere { .. } => [2.0 * u[0] - 1.0, angle],
            Surface::Plane => [4.0 * u[0] - 2.0, 4.0 * u[1] - 2.0],
            _ => {
                let side = usize::from(u[0] >= 0.5);
                let s = (2.0 * u[0]).fract();
                self.invert(side, window.lo + (window.hi - window.lo) * s, angle)
            }
        }
    }

    /// A point of the curve with the given main second coordinate.
    pub fn on_curve(&self, curve: &Curve, second: f64) -> [f64; 2] {
        [curve.value, second]
    }

    /// A point away from every exceptional curve and every fixed point.
    pub fn generic_point(&self) -> [f64; 2] {
        match *self {
            Surface::RoundSphere { .. } | Surface::BSphere => [0.5, 1.0],
            Surface::BTorus { phase } => [PI / 2.0 - phase, 1.0],
            Surface::CappedCylinder { eps, .. } => [eps / 2.0, 1.0],
            Surface::Plane => [1.0, 1.0],
        }
    }
}

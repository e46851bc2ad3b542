use serde::Serialize;

/// Numerical tolerances and step sizes of the model checks.
///
/// Tolerances scale with `BMOMENT_TOLERANCE_SCALE` when built by
/// [`Tolerances::from_env`]; step sizes and sampling depth do not.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Accuracy expected of a fitted log coefficient.
    pub weight: f64,
    /// Largest spread of the fits at different scales before giving up.
    pub weight_spread: f64,
    /// Relative finite-difference step for Hessians.
    pub hessian_step: f64,
    /// Eigenvalues below this fraction of the largest count as zero.
    pub nullity: f64,
    /// Condition number above which a Hessian is flagged.
    pub condition: f64,
    /// Largest gradient norm accepted at a refined critical point.
    pub critical_gradient: f64,
    /// Distance at which a polytope vertex matches a fixed-point moment.
    pub vertex_match: f64,
    /// Density radius of the midpoint convexity test.
    pub hull_delta: f64,
    /// Relative error allowed between finite-difference and analytic gradients.
    pub gradient: f64,
    /// Slack allowed below a symplectic cut level.
    pub cut_slack: f64,
    /// Smallest distance of a weight-fit base point to a corner of `Z`.
    pub corner_distance: f64,
    /// Hausdorff distance expected between leaf and manifold images.
    pub hausdorff: f64,
    /// Width of the sampled Hamiltonian window on each side of `Z`.
    pub sample_depth: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            weight: 1e-3,
            weight_spread: 1e-2,
            hessian_step: 1e-4,
            nullity: 1e-4,
            condition: 1e8,
            critical_gradient: 1e-8,
            vertex_match: 1e-6,
            hull_delta: 0.05,
            gradient: 1e-5,
            cut_slack: 1e-6,
            corner_distance: 1e-2,
            hausdorff: 0.05,
            sample_depth: 12.0,
        }
    }
}

impl Tolerances {
    pub const ENV_VAR: &'static str = "BMOMENT_TOLERANCE_SCALE";

    /// Defaults multiplied by `scale`.
    pub fn scaled(scale: f64) -> Self {
        let d = Self::default();
        Self {
            weight: d.weight * scale,
            weight_spread: d.weight_spread * scale,
            nullity: d.nullity * scale,
            critical_gradient: d.critical_gradient * scale,
            vertex_match: d.vertex_match * scale,
            hull_delta: d.hull_delta * scale,
            gradient: d.gradient * scale,
            cut_slack: d.cut_slack * scale,
            corner_distance: d.corner_distance * scale,
            hausdorff: d.hausdorff * scale,
            ..d
        }
    }

    /// Defaults scaled by the environment variable, if set.
    pub fn from_env() -> Result<Self, String> {
        match std::env::var(Self::ENV_VAR) {
            Err(_) => Ok(Self::default()),
            Ok(text) => match text.trim().parse::<f64>() {
                Ok(s) if s.is_finite() && s > 0.0 => Ok(Self::scaled(s)),
                _ => Err(format!("{} must be a positive number, got {text:?}", Self::ENV_VAR)),
            },
        }
    }
}

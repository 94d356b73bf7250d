//! On-axis field of two coaxial filamentary rings carrying opposite
//! currents (anti-Helmholtz pair).
//!
//! The rings have radius `R` and sit at `z = ±ηR`. The ring at `+ηR`
//! carries `+I`, the one at `−ηR` carries `−I`, so `B_z(0) = 0` and the
//! field grows linearly through the midpoint.

use crate::constants::MU0;
use crate::error::{require_finite, require_positive, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingPairConfig {
    loop_radius: f64,
    current: f64,
    eta: f64,
}

impl RingPairConfig {
    /// `loop_radius` in m, `current` in A, `eta` dimensionless.
    pub fn new(loop_radius: f64, current: f64, eta: f64) -> Result<Self> {
        Ok(RingPairConfig {
            loop_radius: require_positive("ring-pair loop radius", loop_radius)?,
            current: require_finite("ring-pair current", current)?,
            eta: require_positive("ring-pair eta", eta)?,
        })
    }

    /// Rings at the gradient-maximizing placement η = ½.
    pub fn optimal(loop_radius: f64, current: f64) -> Result<Self> {
        Self::new(loop_radius, current, optimal_eta())
    }

    pub fn loop_radius(&self) -> f64 {
        self.loop_radius
    }

    pub fn current(&self) -> f64 {
        self.current
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// Axial positions of the two rings.
    pub fn ring_positions(&self) -> (f64, f64) {
        let z = self.eta * self.loop_radius;
        (z, -z)
    }

    pub fn with_current(self, current: f64) -> Result<Self> {
        Self::new(self.loop_radius, current, self.eta)
    }

    pub fn with_loop_radius(self, loop_radius: f64) -> Result<Self> {
        Self::new(loop_radius, self.current, self.eta)
    }
}

/// B_z on the axis, T.
pub fn axial_field(z: f64, cfg: &RingPairConfig) -> f64 {
    let r = cfg.loop_radius;
    let zr = cfg.eta * r;
    let r2 = r * r;
    let upper = ((z - zr).powi(2) + r2).powf(-1.5);
    let lower = ((z + zr).powi(2) + r2).powf(-1.5);
    0.5 * MU0 * cfg.current * r2 * (upper - lower)
}

/// ∂B_z/∂z on the axis, T/m.
pub fn axial_gradient(z: f64, cfg: &RingPairConfig) -> f64 {
    let r = cfg.loop_radius;
    let zr = cfg.eta * r;
    let r2 = r * r;
    let upper = (z - zr) * ((z - zr).powi(2) + r2).powf(-2.5);
    let lower = (z + zr) * ((z + zr).powi(2) + r2).powf(-2.5);
    -1.5 * MU0 * cfg.current * r2 * (upper - lower)
}

/// Placement factor η/(1+η²)^{5/2}; the gradient at the midpoint is
/// `3μ0 I / R²` times this.
pub fn placement_factor(eta: f64) -> f64 {
    eta * (1.0 + eta * eta).powf(-2.5)
}

/// Closed-form gradient at z = 0: 3μ0 I η / (R²(1+η²)^{5/2}).
pub fn gradient_at_origin(cfg: &RingPairConfig) -> f64 {
    3.0 * MU0 * cfg.current / (cfg.loop_radius * cfg.loop_radius) * placement_factor(cfg.eta)
}

/// η maximizing [`placement_factor`]. Its derivative is proportional to
/// 1 − 4η², so the optimum is exactly ½.
pub const fn optimal_eta() -> f64 {
    0.5
}

//! Fixed SI constants. These are literals, not configuration, so regression
//! values stay bit-stable.

use std::f64::consts::PI;

/// Vacuum permeability, H/m (4π×10⁻⁷ in this model).
pub const MU0: f64 = 4.0 * PI * 1e-7;
/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Boltzmann constant, J/K.
pub const KB: f64 = 1.380_649e-23;
/// Standard gravity, m/s².
pub const G_ACCEL: f64 = 9.806_65;
/// Superconducting flux quantum h/2e, Wb.
pub const PHI0: f64 = 2.068e-15;

/// Critical field of aluminium, T.
pub const ALUMINIUM_CRITICAL_FIELD: f64 = 9.78e-3;

/// The constant set every formula in this crate consumes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub mu0: f64,
    pub hbar: f64,
    pub kb: f64,
    pub g_accel: f64,
    pub phi0: f64,
}

impl PhysicalConstants {
    pub const SI: PhysicalConstants = PhysicalConstants { mu0: MU0, hbar: HBAR, kb: KB, g_accel: G_ACCEL, phi0: PHI0 };
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::SI
    }
}

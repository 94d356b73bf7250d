//! A magnetized microsphere in a harmonic trap, displaced by the field
//! gradient of an anti-Helmholtz ring pair.
//!
//! The sphere's moment is `B_r V/μ0` and the trap force is `−ρVω²z`, so
//! force balance reads
//!
//! ```text
//! (B_r/μ0)·∂B_z/∂z(z_eq) − ρ ω² z_eq = 0
//! ```
//!
//! and the volume `V` drops out: the extent does not depend on the sphere
//! radius. The superposition extent is `Δz = 2 z_eq`.

use crate::constants::MU0;
use crate::error::{require_positive, Error, Result};
use crate::materials::{dipole_field, magnet_moment, MagnetSphere, Vec3};
use crate::numerics::{expand_bracket, solve_bracketed, RootConfig, BRACKET_GROWTH};
use crate::ringfield::{axial_gradient, gradient_at_origin, RingPairConfig};
use crate::units::AngularFrequency;

/// Roots are searched up to this many loop radii.
pub const MAX_EXTENT_IN_RADII: f64 = 1e4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scheme1Config {
    pub magnet: MagnetSphere,
    pub rings: RingPairConfig,
    trap_omega: AngularFrequency,
}

impl Scheme1Config {
    pub fn new(magnet: MagnetSphere, rings: RingPairConfig, trap_omega: AngularFrequency) -> Result<Self> {
        require_positive("trap angular frequency", trap_omega.0)?;
        Ok(Scheme1Config { magnet, rings, trap_omega })
    }

    pub fn trap_omega(&self) -> AngularFrequency {
        self.trap_omega
    }

    /// B_r/(μ0 ρ ω²): converts a field gradient into a displacement.
    fn compliance(&self) -> f64 {
        let w = self.trap_omega.0;
        self.magnet.remanence() / (MU0 * self.magnet.density() * w * w)
    }
}

/// Force-balance residual in terms of the extent, m.
///
/// `Δz/2 − (B_r/(μ0ρω²))·∂B_z/∂z(Δz/2)`; with η = ½ this is
/// `(3 I B_r R²/(2ρω²))·[(x−R/2)/((x−R/2)²+R²)^{5/2} − (x+R/2)/((x+R/2)²+R²)^{5/2}] + x`
/// at `x = Δz/2`. Zero at the physical extent, negative at `Δz = 0` for
/// positive current.
pub fn residual(delta_z: f64, cfg: &Scheme1Config) -> f64 {
    let half = 0.5 * delta_z;
    half - cfg.compliance() * axial_gradient(half, &cfg.rings)
}

/// Extent with the gradient frozen at its midpoint value:
/// `Δz = 2(B_r/(μ0ρω²))·∂B_z/∂z(0) = 6 I B_r η(1+η²)^{−5/2}/(ρω²R²)`.
pub fn linearized_extent(cfg: &Scheme1Config) -> f64 {
    2.0 * cfg.compliance() * gradient_at_origin(&cfg.rings)
}

/// Result of [`solve_superposition_extent`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtentSolution {
    /// Δz, m. Signed like the current.
    pub delta_z: f64,
    pub linearized: f64,
    /// Sign changes of the residual on a log grid out to the search limit.
    /// More than one means additional equilibria exist beyond the reported
    /// branch.
    pub sign_changes: usize,
}

/// Smallest positive root of [`residual`] (the branch continuous from the
/// undriven equilibrium). Negative current mirrors the solution.
pub fn solve_superposition_extent(cfg: &Scheme1Config) -> Result<f64> {
    solve_superposition_extent_with(cfg, &RootConfig::default())
}

pub fn solve_superposition_extent_with(cfg: &Scheme1Config, root_cfg: &RootConfig) -> Result<f64> {
    let linear = linearized_extent(cfg);
    if linear == 0.0 {
        return Ok(0.0);
    }
    let sign = linear.signum();
    let pos = if sign < 0.0 { cfg.with_current(-cfg.rings.current())? } else { *cfg };
    let f = |dz: f64| residual(dz, &pos);

    let radius = pos.rings.loop_radius();
    let max_span = MAX_EXTENT_IN_RADII * radius;
    let step = (linear.abs() / 16.0).min(radius / 16.0);
    let (lo, hi) = expand_bracket(f, 0.0, step, BRACKET_GROWTH, max_span)?;
    let root = solve_bracketed(f, lo, hi, root_cfg)?;
    Ok(sign * root.x)
}

/// Extent plus diagnostics.
pub fn superposition_extent(cfg: &Scheme1Config) -> Result<ExtentSolution> {
    let delta_z = solve_superposition_extent(cfg)?;
    Ok(ExtentSolution {
        delta_z,
        linearized: linearized_extent(cfg),
        sign_changes: count_residual_sign_changes(cfg, 400),
    })
}

/// Sign changes of the residual over a log grid from 10⁻³ of the
/// linearized extent to the search limit.
pub fn count_residual_sign_changes(cfg: &Scheme1Config, points: usize) -> usize {
    let linear = linearized_extent(cfg).abs();
    if linear == 0.0 || points < 2 {
        return 0;
    }
    let sign = cfg.rings.current().signum();
    let lo = (1e-3 * linear).ln();
    let hi = (MAX_EXTENT_IN_RADII * cfg.rings.loop_radius()).ln();
    let mut changes = 0;
    let mut prev = residual(0.0, cfg) * sign;
    for k in 0..points {
        let dz = (lo + (hi - lo) * k as f64 / (points - 1) as f64).exp();
        let r = residual(sign * dz, cfg) * sign;
        if (prev < 0.0 && r >= 0.0) || (prev > 0.0 && r <= 0.0) {
            changes += 1;
        }
        prev = r;
    }
    changes
}

impl Scheme1Config {
    pub fn with_current(self, current: f64) -> Result<Self> {
        Ok(Scheme1Config { rings: self.rings.with_current(current)?, ..self })
    }
}

/// Worst-case margin `B_c − |B|` of the magnet's field at the ring wires,
/// over the given sphere displacements along z.
///
/// Probes sit at `(R, 0, ±ηR)`; by axisymmetry one point per ring covers
/// the whole circumference. Positive means every ring stays below its
/// critical field.
pub fn critical_field_check(cfg: &Scheme1Config, critical_field: f64, sphere_offsets_z: &[f64]) -> Result<f64> {
    let moment = magnet_moment(&cfg.magnet);
    let radius = cfg.rings.loop_radius();
    let (z_up, z_down) = cfg.rings.ring_positions();
    let mut worst = f64::INFINITY;
    let offsets: &[f64] = if sphere_offsets_z.is_empty() { &[0.0] } else { sphere_offsets_z };
    for &z0 in offsets {
        for zr in [z_up, z_down] {
            let b = dipole_field(moment, Vec3::new(radius, 0.0, zr - z0))?;
            worst = worst.min(critical_field - b.norm());
        }
    }
    if worst.is_finite() {
        Ok(worst)
    } else {
        Err(Error::domain("critical field check produced a non-finite field"))
    }
}

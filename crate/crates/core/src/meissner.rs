//! Superconducting sphere between two antiparallel point dipoles.
//!
//! Geometry: sphere of radius γ at the origin, dipole `+m ẑ` at `z = d₊`,
//! dipole `−m ẑ` at `z = −d₋`. The dipole scalar potential is expanded in
//! Legendre polynomials about the sphere centre,
//!
//! ```text
//! Φ_m(r, θ) = −(μ0 m/4π) Σ (n+1) rⁿ Pₙ(cos θ) Sₙ,   Sₙ = d₊^{−(n+2)} + (−1/d₋)^{n+2}
//! ```
//!
//! and the induced exterior potential `Σ Cₙ r^{−(n+1)} Pₙ` is fixed by the
//! perfect-Meissner condition `B_r(γ, θ) = 0`. Fields on the main path are
//! `B = −∇Φ` (μ0 is inside Φ). The susceptibility model used for the
//! no-backaction comparison takes χ = −1.

use std::f64::consts::PI;

use crate::constants::{G_ACCEL, MU0};
use crate::error::{require_non_negative, require_positive, Error, Result};
use crate::materials::{dipole_field, Vec3};
use crate::numerics::legendre_table;
use crate::units::AngularFrequency;

/// Finite-element stiffness reported for the same geometry, N/m. Kept for
/// comparison output only.
pub const COMSOL_REFERENCE_STIFFNESS: f64 = 0.32;

/// Stiffness with backaction over stiffness without, for `d ≫ γ`: 4992/3072.
pub const BACKACTION_RATIO: f64 = 13.0 / 8.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DipolePairTrap {
    moment: f64,
    d_plus: f64,
    d_minus: f64,
    sphere_radius: f64,
    sphere_mass: f64,
}

impl DipolePairTrap {
    /// `moment` in A·m², distances and radius in m, `sphere_mass` in kg.
    pub fn new(moment: f64, d_plus: f64, d_minus: f64, sphere_radius: f64, sphere_mass: f64) -> Result<Self> {
        let trap = DipolePairTrap {
            moment: require_non_negative("dipole moment", moment)?,
            d_plus: require_positive("d_plus", d_plus)?,
            d_minus: require_positive("d_minus", d_minus)?,
            sphere_radius: require_non_negative("sphere radius", sphere_radius)?,
            sphere_mass: require_non_negative("sphere mass", sphere_mass)?,
        };
        if trap.sphere_radius >= d_plus.min(d_minus) {
            return Err(Error::InvalidParameter {
                name: "sphere radius",
                value: sphere_radius,
                reason: "must be smaller than both dipole distances",
            });
        }
        Ok(trap)
    }

    /// Dipoles a distance `gap` apart with the sphere displaced by `delta`
    /// towards the upper dipole: `d₊ = gap/2 − δ`, `d₋ = gap/2 + δ`.
    pub fn centered(moment: f64, gap: f64, delta: f64, sphere_radius: f64, sphere_mass: f64) -> Result<Self> {
        Self::new(moment, 0.5 * gap - delta, 0.5 * gap + delta, sphere_radius, sphere_mass)
    }

    /// Sphere mass from a density.
    pub fn sphere_mass_for_density(sphere_radius: f64, density: f64) -> f64 {
        4.0 / 3.0 * PI * sphere_radius.powi(3) * density
    }

    pub fn moment(&self) -> f64 {
        self.moment
    }

    pub fn d_plus(&self) -> f64 {
        self.d_plus
    }

    pub fn d_minus(&self) -> f64 {
        self.d_minus
    }

    pub fn gap(&self) -> f64 {
        self.d_plus + self.d_minus
    }

    /// Offset δ = (d₋ − d₊)/2 of the sphere towards the upper dipole.
    pub fn delta(&self) -> f64 {
        0.5 * (self.d_minus - self.d_plus)
    }

    pub fn sphere_radius(&self) -> f64 {
        self.sphere_radius
    }

    pub fn sphere_mass(&self) -> f64 {
        self.sphere_mass
    }

    fn prefactor(&self) -> f64 {
        MU0 * self.moment / (4.0 * PI)
    }

    /// Sₙ = (1/d₊)^{n+2} + (−1/d₋)^{n+2}.
    fn s_n(&self, n: usize) -> f64 {
        let k = (n + 2) as i32;
        (1.0 / self.d_plus).powi(k) + (-1.0 / self.d_minus).powi(k)
    }

    /// Scale of the dipole field over the sphere region: the on-axis field
    /// of one dipole at the nearer sphere pole.
    pub fn field_scale(&self) -> f64 {
        let near = (self.d_plus - self.sphere_radius).min(self.d_minus - self.sphere_radius);
        MU0 * self.moment / (2.0 * PI * near.powi(3))
    }
}

/// Truncation of the Legendre sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub n_max: usize,
    /// The last retained terms must not exceed this fraction of the summed
    /// term magnitudes.
    pub tail_rel_bound: f64,
}

impl SeriesControl {
    pub fn new(n_max: usize, tail_rel_bound: f64) -> Result<Self> {
        if n_max < 2 {
            return Err(Error::InvalidParameter { name: "n_max", value: n_max as f64, reason: "must be >= 2" });
        }
        require_positive("tail_rel_bound", tail_rel_bound)?;
        Ok(SeriesControl { n_max, tail_rel_bound })
    }
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl { n_max: 60, tail_rel_bound: 1e-12 }
    }
}

/// Sums `terms`, failing when the last two terms are not small against the
/// accumulated magnitude.
fn checked_sum(terms: impl Iterator<Item = f64>, series: &SeriesControl) -> Result<f64> {
    let mut sum = 0.0;
    let mut magnitude = 0.0;
    let mut last = [0.0f64; 2];
    for t in terms {
        sum += t;
        magnitude += t.abs();
        last = [last[1], t];
    }
    let tail = last[0].abs().max(last[1].abs());
    let bound = series.tail_rel_bound * magnitude;
    if tail > bound {
        return Err(Error::SeriesNotConverged { n_max: series.n_max, last_term: tail, bound });
    }
    Ok(sum)
}

/// Net dipole scalar potential at `(r, θ)` by the truncated Legendre series.
/// Valid inside the ball `r < min(d₊, d₋)`.
pub fn potential_dipoles(r: f64, theta: f64, trap: &DipolePairTrap, series: &SeriesControl) -> Result<f64> {
    let limit = trap.d_plus.min(trap.d_minus);
    if !(r >= 0.0 && r < limit) {
        return Err(Error::domain(format!("r = {r:e} outside the series domain [0, {limit:e})")));
    }
    let p = legendre_table(series.n_max, theta.cos())?;
    let terms = (0..=series.n_max).map(|n| (n as f64 + 1.0) * r.powi(n as i32) * p[n] * trap.s_n(n));
    Ok(-trap.prefactor() * checked_sum(terms, series)?)
}

/// Net dipole scalar potential from the point-dipole closed form
/// `Φ± = ±(μ0/4π) m·p±/|p±|³`.
pub fn potential_dipoles_closed(r: f64, theta: f64, trap: &DipolePairTrap) -> f64 {
    let (x, z) = (r * theta.sin(), r * theta.cos());
    let k = trap.prefactor();
    let up = z - trap.d_plus;
    let down = z + trap.d_minus;
    let phi_plus = k * up / (x * x + up * up).powf(1.5);
    let phi_minus = -k * down / (x * x + down * down).powf(1.5);
    phi_plus + phi_minus
}

/// Exterior coefficient Cₙ = −(μ0 m/4π) n γ^{2n+1} Sₙ.
pub fn coefficient_cn(n: usize, trap: &DipolePairTrap) -> f64 {
    -trap.prefactor() * n as f64 * trap.sphere_radius.powi(2 * n as i32 + 1) * trap.s_n(n)
}

/// On-axis field of the two dipoles alone, T (z component):
/// `−(μ0 m/2π)[(z−d₊)⁻³ + (z+d₋)⁻³]`.
pub fn axial_field_dipoles(z: f64, trap: &DipolePairTrap) -> Result<f64> {
    let a = z - trap.d_plus;
    let b = z + trap.d_minus;
    if a == 0.0 || b == 0.0 {
        return Err(Error::domain(format!("z = {z:e} is at a dipole")));
    }
    Ok(-2.0 * trap.prefactor() * (a.powi(-3) + b.powi(-3)))
}

/// On-axis field induced by the sphere, T, for `|z| > γ`:
/// `±(μ0 m/2π) γ³[(γ² − z d₊)⁻³ + (γ² + z d₋)⁻³]` with the sign of z.
pub fn axial_field_induced(z: f64, trap: &DipolePairTrap) -> Result<f64> {
    let g = trap.sphere_radius;
    if z.abs() <= g {
        return Err(Error::domain(format!("z = {z:e} is inside the sphere of radius {g:e}")));
    }
    let g2 = g * g;
    let val = 2.0 * trap.prefactor() * g.powi(3) * ((g2 - z * trap.d_plus).powi(-3) + (g2 + z * trap.d_minus).powi(-3));
    Ok(if z > 0.0 { val } else { -val })
}

/// On-axis induced field by its Legendre series, for comparison with the
/// closed form.
pub fn axial_field_induced_series(z: f64, trap: &DipolePairTrap, series: &SeriesControl) -> Result<f64> {
    let g = trap.sphere_radius;
    if z.abs() <= g {
        return Err(Error::domain(format!("z = {z:e} is inside the sphere of radius {g:e}")));
    }
    // θ = 0 for z > 0 (B_z = B_r), θ = π for z < 0 (B_z = −B_r, Pₙ(−1) = (−1)ⁿ).
    let r = z.abs();
    let s = z.signum();
    let terms = (1..=series.n_max).map(|n| {
        let parity = if z < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
        (n * (n + 1)) as f64 * g.powi(2 * n as i32 + 1) / r.powi(n as i32 + 2) * parity * trap.s_n(n)
    });
    Ok(-s * trap.prefactor() * checked_sum(terms, series)?)
}

/// On-axis dipole field by its Legendre series (inside `|z| < min(d₊, d₋)`).
pub fn axial_field_dipoles_series(z: f64, trap: &DipolePairTrap, series: &SeriesControl) -> Result<f64> {
    let limit = trap.d_plus.min(trap.d_minus);
    if z.abs() >= limit {
        return Err(Error::domain(format!("z = {z:e} outside the series domain")));
    }
    // B_z(z) = −∂Φ/∂z on the axis, Pₙ(±1) = (±1)ⁿ.
    let terms = (1..=series.n_max).map(|n| (n * (n + 1)) as f64 * z.powi(n as i32 - 1) * trap.s_n(n));
    Ok(trap.prefactor() * checked_sum(terms, series)?)
}

/// Net axial field: dipoles plus induced outside the sphere, exactly zero
/// for `|z| ≤ γ`.
pub fn total_axial_field(z: f64, trap: &DipolePairTrap) -> Result<f64> {
    if z.abs() <= trap.sphere_radius {
        return Ok(0.0);
    }
    Ok(axial_field_dipoles(z, trap)? + axial_field_induced(z, trap)?)
}

/// Total radial field on the sphere surface at polar angle `theta`, from
/// the dipole and induced series. Zero up to rounding by construction of
/// the Cₙ.
pub fn surface_radial_field(theta: f64, trap: &DipolePairTrap, series: &SeriesControl) -> Result<f64> {
    let g = trap.sphere_radius;
    let p = legendre_table(series.n_max, theta.cos())?;
    let k = trap.prefactor();
    let mut total = 0.0;
    for (n, &pn) in p.iter().enumerate().skip(1) {
        let nf = n as f64;
        let dipole = k * nf * (nf + 1.0) * g.powi(n as i32 - 1) * pn * trap.s_n(n);
        let induced = (nf + 1.0) * coefficient_cn(n, trap) / g.powi(n as i32 + 2) * pn;
        total += dipole + induced;
    }
    Ok(total)
}

/// Axial force on the sphere, N (z component).
pub fn force_on_sphere(trap: &DipolePairTrap) -> f64 {
    let g = trap.sphere_radius;
    let g2 = g * g;
    let (dp, dm) = (trap.d_plus, trap.d_minus);
    let cross = (g2 + dp * dm).powi(4);
    let bracket = 2.0 * dm / (g2 - dm * dm).powi(4) - 2.0 * dp / (g2 - dp * dp).powi(4) + dm / cross - dp / cross;
    1.5 * MU0 * trap.moment * trap.moment / (2.0 * PI) * g.powi(3) * bracket
}

/// Linear stiffness for a dipole gap `d` including backaction,
/// `384(μ0m²/π)γ³[(14d²+8γ²)/(d²−4γ²)⁵ − (d²+4γ²)⁻⁴]`.
pub fn stiffness_full(gap: f64, trap: &DipolePairTrap) -> Result<f64> {
    let g = trap.sphere_radius;
    if gap <= 2.0 * g {
        return Err(Error::domain(format!("gap {gap:e} must exceed the sphere diameter {:e}", 2.0 * g)));
    }
    let (d2, g2) = (gap * gap, g * g);
    let bracket = (14.0 * d2 + 8.0 * g2) / (d2 - 4.0 * g2).powi(5) - (d2 + 4.0 * g2).powi(-4);
    Ok(384.0 * MU0 * trap.moment * trap.moment / PI * g.powi(3) * bracket)
}

fn warn_if_close(gap: f64, trap: &DipolePairTrap) {
    if gap < 10.0 * trap.sphere_radius {
        log::warn!("gap {gap:e} m is under 10 sphere radii; the d >> 2γ stiffness is inaccurate");
    }
}

/// Leading-order stiffness with backaction, 4992 μ0 m² γ³ / (π d⁸).
pub fn stiffness_asymptotic(gap: f64, trap: &DipolePairTrap) -> f64 {
    warn_if_close(gap, trap);
    4992.0 * MU0 * trap.moment * trap.moment * trap.sphere_radius.powi(3) / (PI * gap.powi(8))
}

/// Leading-order stiffness ignoring backaction (χ = −1 susceptibility
/// model), 3072 μ0 m² γ³ / (π d⁸).
pub fn stiffness_no_backaction(gap: f64, trap: &DipolePairTrap) -> f64 {
    warn_if_close(gap, trap);
    3072.0 * MU0 * trap.moment * trap.moment * trap.sphere_radius.powi(3) / (PI * gap.powi(8))
}

/// Force without backaction, `(χV/μ0) B ∂B/∂z` with χ = −1, at height `z`
/// in a symmetric trap of gap `d`. Fields come from `B = −μ0∇Φ` of the
/// Cartesian dipole potential (the on-axis field of each point dipole).
pub fn force_no_backaction(z: f64, gap: f64, trap: &DipolePairTrap) -> Result<f64> {
    let half = 0.5 * gap;
    let b = |z: f64| -> Result<f64> {
        let up = dipole_field(trap.moment, Vec3::new(0.0, 0.0, z - half))?;
        let down = dipole_field(-trap.moment, Vec3::new(0.0, 0.0, z + half))?;
        Ok(up.z + down.z)
    };
    let v = 4.0 / 3.0 * PI * trap.sphere_radius.powi(3);
    // On the axis each dipole gives ±k/|u|³; both slopes are 3k/u⁴ for |z| < d/2.
    let k = MU0 * trap.moment / (2.0 * PI);
    let db = 3.0 * k * ((z - half).powi(-4) + (z + half).powi(-4));
    Ok(-v / MU0 * b(z)? * db)
}

/// Gravitational sag −m_SC g/k and trap angular frequency √(k/m_SC).
/// A massless sphere has zero sag and unbounded frequency.
pub fn equilibrium_sag_and_frequency(trap: &DipolePairTrap, stiffness: f64) -> Result<(f64, AngularFrequency)> {
    if !(stiffness > 0.0) {
        return Err(Error::unstable(format!("stiffness {stiffness:e} N/m is not positive")));
    }
    let mass = trap.sphere_mass;
    let sag = -mass * G_ACCEL / stiffness;
    let omega = if mass > 0.0 { (stiffness / mass).sqrt() } else { f64::INFINITY };
    Ok((sag, AngularFrequency(omega)))
}

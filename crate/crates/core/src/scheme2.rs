//! A thin superconducting ring levitated coaxially above a fixed magnet
//! sphere (point dipole), and the state-dependent displacement produced by
//! a persistent current `±I` in the ring.
//!
//! With `x = h/R` the equilibrium height solves
//!
//! ```text
//! α = 6x / (1 + x²)⁴,    α = 16π² r² g ρ R⁵ (ln(8R/r) − 2) / (μ0 m²)
//! ```
//!
//! The right-hand side peaks at `x = 1/√7` with value ≈ 1.3293; stable
//! levitation needs `α` below that and lives on the branch `x > 1/√7`.

use std::f64::consts::PI;

use crate::constants::{G_ACCEL, MU0, PHI0};
use crate::error::{require_positive, Error, Result};
use crate::materials::{magnet_moment, MagnetSphere, SCRing};
use crate::numerics::{expand_bracket, solve_bracketed, RootConfig, BRACKET_GROWTH};
use crate::units::{AngularFrequency, Frequency};

/// Stability bound on α used to accept a configuration.
pub const STABILITY_BOUND: f64 = 1.329;

/// x at which 6x/(1+x²)⁴ peaks.
pub fn marginal_height_ratio() -> f64 {
    1.0 / 7f64.sqrt()
}

/// 6x/(1+x²)⁴.
pub fn levitation_profile(x: f64) -> f64 {
    6.0 * x / (1.0 + x * x).powi(4)
}

/// Peak of [`levitation_profile`], 6·7^{−1/2}·(8/7)^{−4} ≈ 1.32933.
pub fn profile_peak() -> f64 {
    levitation_profile(marginal_height_ratio())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scheme2Config {
    /// Fixed magnet at the origin, moment along +z.
    pub magnet: MagnetSphere,
    /// Levitated coaxial ring.
    pub ring: SCRing,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevitationSolution {
    /// Equilibrium height above the magnet centre; `None` when unstable.
    pub height: Option<f64>,
    pub trap_freq: Option<Frequency>,
    pub stability_alpha: f64,
    pub stable: bool,
}

fn log_factor(loop_radius: f64, wire_radius: f64) -> Result<f64> {
    let lf = (8.0 * loop_radius / wire_radius).ln() - 2.0;
    if lf > 0.0 {
        Ok(lf)
    } else {
        Err(Error::domain(format!("ln(8R/r) - 2 = {lf:.4} <= 0 for R = {loop_radius:e}, r = {wire_radius:e}")))
    }
}

/// α for a ring of radius `loop_radius` with the given wire radius and
/// density above a dipole of moment `magnet_moment`.
pub fn stability_parameter_for(loop_radius: f64, wire_radius: f64, density: f64, moment: f64) -> Result<f64> {
    let lf = log_factor(loop_radius, wire_radius)?;
    Ok(16.0 * PI * PI * wire_radius * wire_radius * G_ACCEL * density * loop_radius.powi(5) * lf
        / (MU0 * moment * moment))
}

/// Dimensionless α; the ring levitates stably only while α < 1.329.
pub fn stability_parameter(cfg: &Scheme2Config) -> Result<f64> {
    stability_parameter_for(
        cfg.ring.loop_radius(),
        cfg.ring.wire_radius(),
        cfg.ring.density(),
        magnet_moment(&cfg.magnet),
    )
}

/// Largest loop radius with α below the stability bound, for a fixed wire
/// radius, ring density and magnet. α increases monotonically with R.
pub fn critical_radius(magnet: &MagnetSphere, wire_radius: f64, density: f64) -> Result<f64> {
    require_positive("wire radius", wire_radius)?;
    require_positive("ring density", density)?;
    let moment = magnet_moment(magnet);
    let f = |r: f64| stability_parameter_for(r, wire_radius, density, moment).map_or(f64::NAN, |a| a - STABILITY_BOUND);
    let root = solve_bracketed(
        f,
        10.0 * wire_radius,
        1e4 * wire_radius,
        &RootConfig { rel_tol: 1e-14, abs_tol: 1e-20, max_iter: 200 },
    )?;
    Ok(root.x)
}

/// Height ratio `x = h/R > 1/√7` with `6x/(1+x²)⁴ = α`.
///
/// Accepts any `0 < α ≤ profile_peak()`; [`equilibrium_height`] additionally
/// enforces the 1.329 stability bound.
pub fn stable_height_ratio(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::domain(format!("alpha = {alpha:e} must be > 0")));
    }
    let x0 = marginal_height_ratio();
    let peak = profile_peak();
    if alpha > peak {
        return Err(Error::unstable(format!("alpha = {alpha:.6} exceeds the profile peak {peak:.6}")));
    }
    if alpha == peak {
        return Ok(x0);
    }
    let f = |x: f64| alpha - levitation_profile(x);
    let (lo, hi) = expand_bracket(f, x0, 0.05, BRACKET_GROWTH, 1e9)?;
    let root = solve_bracketed(f, lo, hi, &RootConfig { rel_tol: 1e-14, abs_tol: 1e-16, max_iter: 200 })?;
    Ok(root.x)
}

/// Equilibrium height h, m. Fails with [`Error::Unstable`] when α ≥ 1.329.
pub fn equilibrium_height(cfg: &Scheme2Config) -> Result<f64> {
    let alpha = stability_parameter(cfg)?;
    if alpha >= STABILITY_BOUND {
        return Err(Error::unstable(format!(
            "alpha = {alpha:.6} >= stability bound {STABILITY_BOUND} (R = {:e} m)",
            cfg.ring.loop_radius()
        )));
    }
    Ok(stable_height_ratio(alpha)? * cfg.ring.loop_radius())
}

/// Vertical trap frequency at height `h`,
/// `ν = √(3μ0 m² (7x²−1) / (128π⁴ r² ρ R⁶ (ln(8R/r)−2)(1+x²)⁵))`, `x = h/R`.
pub fn trap_frequency_hz(cfg: &Scheme2Config, h: f64) -> Result<Frequency> {
    let big_r = cfg.ring.loop_radius();
    let r = cfg.ring.wire_radius();
    let x = h / big_r;
    let lever = 7.0 * x * x - 1.0;
    if lever < -1e-12 {
        return Err(Error::unstable(format!("h/R = {x:.6} is below 1/sqrt(7)")));
    }
    let lf = log_factor(big_r, r)?;
    let m = magnet_moment(&cfg.magnet);
    let num = 3.0 * MU0 * m * m * lever.max(0.0);
    let den = 128.0 * PI.powi(4) * r * r * cfg.ring.density() * big_r.powi(6) * lf * (1.0 + x * x).powi(5);
    Ok(Frequency((num / den).sqrt()))
}

/// Height, frequency and α in one call. Unstable configurations are
/// reported with `stable == false` rather than as an error.
pub fn levitate(cfg: &Scheme2Config) -> Result<LevitationSolution> {
    let alpha = stability_parameter(cfg)?;
    match equilibrium_height(cfg) {
        Ok(h) => Ok(LevitationSolution {
            height: Some(h),
            trap_freq: Some(trap_frequency_hz(cfg, h)?),
            stability_alpha: alpha,
            stable: true,
        }),
        Err(Error::Unstable(_)) => {
            Ok(LevitationSolution { height: None, trap_freq: None, stability_alpha: alpha, stable: false })
        }
        Err(e) => Err(e),
    }
}

/// Δz = 3μ0 m I R² / (2 r² ρ ω² h⁴) for `Δz ≪ h` (equal to twice the
/// equilibrium shift `z_eq`). Signed like the ring current.
pub fn superposition_extent(cfg: &Scheme2Config, h: f64, omega: AngularFrequency) -> Result<f64> {
    require_positive("height", h)?;
    require_positive("angular frequency", omega.0)?;
    let m = magnet_moment(&cfg.magnet);
    let big_r = cfg.ring.loop_radius();
    let r = cfg.ring.wire_radius();
    let w = omega.0;
    let dz =
        3.0 * MU0 * m * cfg.ring.current() * big_r * big_r / (2.0 * r * r * cfg.ring.density() * w * w * h.powi(4));
    if dz.abs() > 0.1 * h {
        log::warn!("superposition extent {dz:e} m exceeds h/10 = {:e} m; small-shift formula is unreliable", 0.1 * h);
    }
    Ok(dz)
}

/// Mass of the torus, 2π² R r² ρ.
pub fn ring_mass(ring: &SCRing) -> f64 {
    2.0 * PI * PI * ring.loop_radius() * ring.wire_radius().powi(2) * ring.density()
}

/// Self-inductance μ0 R (ln(8R/r) − 2).
pub fn ring_inductance(ring: &SCRing) -> Result<f64> {
    Ok(MU0 * ring.loop_radius() * log_factor(ring.loop_radius(), ring.wire_radius())?)
}

/// Magnetic moment I π R² (signed by the circulation).
pub fn ring_moment(ring: &SCRing) -> f64 {
    ring.current() * PI * ring.loop_radius().powi(2)
}

/// Current for `p` flux quanta threading a loop of radius `loop_radius`,
/// from pΦ0 = μ0 I π R / 2.
pub fn flux_quantization_current(p: f64, loop_radius: f64) -> Result<f64> {
    require_positive("loop radius", loop_radius)?;
    Ok(2.0 * p * PHI0 / (MU0 * PI * loop_radius))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::central_diff;
    use approx::assert_relative_eq;

    fn table2(loop_radius: f64) -> Scheme2Config {
        Scheme2Config {
            magnet: MagnetSphere::new(12e-6, 1.2, 7500.0).unwrap(),
            ring: SCRing::new(loop_radius, 5e-6, 2700.0, 1e-6).unwrap(),
        }
    }

    #[test]
    fn peak_value() {
        assert_relative_eq!(profile_peak(), 1.32933, max_relative = 1e-5);
        // The peak is a stationary point.
        let slope = central_diff(levitation_profile, marginal_height_ratio(), 1e-6);
        assert!(slope.abs() < 1e-9);
    }

    #[test]
    fn alpha_at_table_two_radii() {
        let a_edge = stability_parameter(&table2(183.4e-6)).unwrap();
        assert!((a_edge - 1.33).abs() < 0.005, "{a_edge}");
        let a_180 = stability_parameter(&table2(180e-6)).unwrap();
        assert!((a_180 - 1.206).abs() < 0.002, "{a_180}");
    }

    #[test]
    fn alpha_scales_inverse_square_in_moment() {
        let base = stability_parameter(&table2(180e-6)).unwrap();
        let mut cfg = table2(180e-6);
        // Doubling B_r doubles the moment.
        cfg.magnet = MagnetSphere::new(12e-6, 2.4, 7500.0).unwrap();
        assert_relative_eq!(base / stability_parameter(&cfg).unwrap(), 4.0, max_relative = 1e-13);
    }

    #[test]
    fn alpha_log_factor_domain() {
        // A valid ring always has 8R/r > 8 > e², so only the raw form can
        // reach the domain edge.
        let m = magnet_moment(&MagnetSphere::new(12e-6, 1.2, 7500.0).unwrap());
        assert!(matches!(stability_parameter_for(5e-6, 6e-6, 2700.0, m), Err(Error::Domain(_))));
        assert!(stability_parameter_for(5e-6, 5.4e-6, 2700.0, m).unwrap() > 0.0);
    }

    #[test]
    fn critical_radius_near_183_micron() {
        let cfg = table2(1e-4);
        let rc = critical_radius(&cfg.magnet, 5e-6, 2700.0).unwrap();
        assert!((rc - 183.4e-6).abs() < 0.3e-6, "{rc}");
        let alpha = stability_parameter(&table2(rc)).unwrap();
        assert!((alpha - STABILITY_BOUND).abs() < 1e-9);
    }

    #[test]
    fn quadrupled_moment_allows_sixteen_times_the_radius_factor() {
        let weak = MagnetSphere::new(12e-6, 1.2, 7500.0).unwrap();
        let strong = MagnetSphere::new(12e-6, 4.8, 7500.0).unwrap();
        let g = |r: f64| r.powi(5) * ((8.0 * r / 5e-6).ln() - 2.0);
        let r1 = critical_radius(&weak, 5e-6, 2700.0).unwrap();
        let r2 = critical_radius(&strong, 5e-6, 2700.0).unwrap();
        assert_relative_eq!(g(r2) / g(r1), 16.0, max_relative = 1e-9);
    }

    #[test]
    fn marginal_ratio_at_peak() {
        assert_relative_eq!(stable_height_ratio(profile_peak()).unwrap(), 0.3779645, max_relative = 1e-6);
        // At the 1.329 bound the root is still close to the marginal point.
        let x = stable_height_ratio(STABILITY_BOUND).unwrap();
        assert!(x > marginal_height_ratio() && x < 0.39, "{x}");
        assert!(stable_height_ratio(1.4).is_err());
    }

    #[test]
    fn light_ring_floats_high() {
        let x1 = stable_height_ratio(1e-3).unwrap();
        let x2 = stable_height_ratio(1e-6).unwrap();
        assert!(x1 > 2.0 && x2 > x1 * 2.0);
    }

    #[test]
    fn table_two_height_and_frequency() {
        let cfg = table2(180e-6);
        let h = equilibrium_height(&cfg).unwrap();
        assert!((h - 92.7e-6).abs() < 0.2e-6, "{h}");
        let nu = trap_frequency_hz(&cfg, h).unwrap();
        assert!((nu.hz() - 21.3).abs() < 0.2, "{nu}");
        let sol = levitate(&cfg).unwrap();
        assert!(sol.stable);
        assert_eq!(sol.height, Some(h));
    }

    #[test]
    fn unstable_beyond_the_edge() {
        let cfg = table2(183.4e-6);
        assert!(matches!(equilibrium_height(&cfg), Err(Error::Unstable(_))));
        let sol = levitate(&cfg).unwrap();
        assert!(!sol.stable);
        assert!(sol.height.is_none());
    }

    #[test]
    fn frequency_zero_at_marginal_height() {
        let cfg = table2(180e-6);
        let h = marginal_height_ratio() * 180e-6;
        assert!(trap_frequency_hz(&cfg, h).unwrap().hz() < 1e-4);
        assert!(matches!(trap_frequency_hz(&cfg, 0.3 * 180e-6), Err(Error::Unstable(_))));
    }

    #[test]
    fn frequency_linear_in_moment() {
        let cfg = table2(180e-6);
        let mut strong = cfg;
        strong.magnet = MagnetSphere::new(12e-6, 3.6, 7500.0).unwrap();
        let a = trap_frequency_hz(&cfg, 90e-6).unwrap().hz();
        let b = trap_frequency_hz(&strong, 90e-6).unwrap().hz();
        assert_relative_eq!(b / a, 3.0, max_relative = 1e-13);
    }

    #[test]
    fn extent_with_fem_inputs() {
        let cfg = table2(183.4e-6);
        let dz = superposition_extent(&cfg, 71.8e-6, Frequency(15.0).to_angular()).unwrap();
        assert_relative_eq!(dz, 27.5e-9, max_relative = 2e-3);
    }

    #[test]
    fn extent_on_analytic_branch() {
        let cfg = table2(180e-6);
        let h = equilibrium_height(&cfg).unwrap();
        let nu = trap_frequency_hz(&cfg, h).unwrap();
        let dz = superposition_extent(&cfg, h, nu.to_angular()).unwrap();
        assert_relative_eq!(dz, 4.7e-9, max_relative = 0.01);
        assert!(dz * 1.5 >= 7e-9);
    }

    #[test]
    fn extent_zero_without_current() {
        let mut cfg = table2(180e-6);
        cfg.ring = cfg.ring.with_current(0.0).unwrap();
        assert_eq!(superposition_extent(&cfg, 90e-6, AngularFrequency(100.0)).unwrap(), 0.0);
    }

    #[test]
    fn extent_matches_frequency_form() {
        // z_eq = 3μ0 m I R²/(16π² r² ρ ν² h⁴) and Δz = 2 z_eq.
        let cfg = table2(182e-6);
        let nu: f64 = 17.0;
        let h: f64 = 80e-6;
        let m = magnet_moment(&cfg.magnet);
        let z_eq = 3.0 * MU0 * m * 1e-6 * 182e-6f64.powi(2) / (16.0 * PI * PI * 25e-12 * 2700.0 * nu * nu * h.powi(4));
        let dz = superposition_extent(&cfg, h, Frequency(nu).to_angular()).unwrap();
        assert_relative_eq!(dz, 2.0 * z_eq, max_relative = 1e-13);
    }

    #[test]
    fn ring_bulk_properties() {
        let ring = table2(183.4e-6).ring;
        assert_relative_eq!(ring_mass(&ring), 2.445e-10, max_relative = 1e-3);
        assert_relative_eq!(ring_mass(&table2(180e-6).ring), 2.40e-10, max_relative = 2e-3);
        let thick = SCRing::new(183.4e-6, 10e-6, 2700.0, 1e-6).unwrap();
        assert_relative_eq!(ring_mass(&thick) / ring_mass(&ring), 4.0, max_relative = 1e-14);

        assert_relative_eq!(ring_inductance(&ring).unwrap(), 8.49e-10, max_relative = 1e-3);
        assert_relative_eq!(ring_inductance(&table2(180e-6).ring).unwrap(), 8.28e-10, max_relative = 1e-3);

        assert_relative_eq!(ring_moment(&ring), 1.057e-13, max_relative = 1e-3);
        assert_eq!(ring_moment(&ring.with_current(0.0).unwrap()), 0.0);
        assert_eq!(ring_moment(&ring.with_current(-1e-6).unwrap()), -ring_moment(&ring));
    }

    #[test]
    fn flux_quantum_current() {
        assert_eq!(flux_quantization_current(0.0, 183.4e-6).unwrap(), 0.0);
        let i = flux_quantization_current(1.0, 183.4e-6).unwrap();
        assert_relative_eq!(i, 5.71e-6, max_relative = 1e-3);
        let i2 = flux_quantization_current(1.0, 366.8e-6).unwrap();
        assert_relative_eq!(i / i2, 2.0, max_relative = 1e-14);
        assert!(flux_quantization_current(1.0, 0.0).is_err());
    }

    #[test]
    fn inductance_increases_with_radius() {
        let mut prev = 0.0;
        for k in 0..50 {
            let l = ring_inductance(&table2(20e-6 + k as f64 * 5e-6).ring).unwrap();
            assert!(l > prev);
            prev = l;
        }
    }

    #[test]
    fn approach_to_the_edge() {
        let rc = critical_radius(&table2(1e-4).magnet, 5e-6, 2700.0).unwrap();
        let mut prev_nu = f64::INFINITY;
        let mut prev_dz = 0.0;
        for k in 0..=20 {
            let r = 178e-6 + (rc * (1.0 - 1e-9) - 178e-6) * k as f64 / 20.0;
            let cfg = table2(r);
            let h = equilibrium_height(&cfg).unwrap();
            let nu = trap_frequency_hz(&cfg, h).unwrap().hz();
            let dz = superposition_extent(&cfg, h, Frequency(nu).to_angular()).unwrap();
            assert!(nu < prev_nu);
            assert!(dz > prev_dz);
            prev_nu = nu;
            prev_dz = dz;
        }
        // At the bound the root sits just above the marginal point, so the
        // frequency has dropped to about a quarter of its 178 µm value.
        let first = trap_frequency_hz(&table2(178e-6), equilibrium_height(&table2(178e-6)).unwrap()).unwrap().hz();
        assert!(prev_nu < 0.3 * first, "{prev_nu} vs {first}");
    }

    proptest::proptest! {
        #[test]
        fn equilibrium_satisfies_its_equation(alpha in 1e-4f64..1.3289) {
            let x = stable_height_ratio(alpha).unwrap();
            proptest::prop_assert!(x > marginal_height_ratio());
            proptest::prop_assert!((alpha - levitation_profile(x)).abs() <= 1e-12);
        }
    }
}

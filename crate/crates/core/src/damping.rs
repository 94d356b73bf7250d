//! Residual-gas damping of a levitated oscillator in the molecular-flow
//! regime.

use std::f64::consts::PI;

use crate::constants::KB;
use crate::error::{require_positive, Result};
use crate::materials::GasEnvironment;
use crate::units::AngularFrequency;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorDampingSpec {
    density: f64,
    radius: f64,
    omega: AngularFrequency,
    env: GasEnvironment,
}

impl OscillatorDampingSpec {
    /// `density` in kg/m³, `radius` (the wire radius for a torus) in m.
    pub fn new(density: f64, radius: f64, omega: AngularFrequency, env: GasEnvironment) -> Result<Self> {
        require_positive("oscillator angular frequency", omega.0)?;
        Ok(OscillatorDampingSpec {
            density: require_positive("oscillator density", density)?,
            radius: require_positive("oscillator radius", radius)?,
            omega,
            env,
        })
    }

    pub fn density(&self) -> f64 {
        self.density
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn omega(&self) -> AngularFrequency {
        self.omega
    }

    pub fn env(&self) -> &GasEnvironment {
        &self.env
    }
}

/// Mean thermal speed scale √(3kT/M) of the gas, m/s.
pub fn thermal_speed(env: &GasEnvironment) -> f64 {
    (3.0 * KB * env.temperature() / env.molecule_mass()).sqrt()
}

/// Quality factor Q = (π/6)(ρ r ω / P)√(3kT/M).
pub fn gas_q(spec: &OscillatorDampingSpec) -> f64 {
    PI / 6.0 * spec.density * spec.radius * spec.omega.0 / spec.env.pressure() * thermal_speed(&spec.env)
}

/// Energy-loss rate γ = ω/Q, 1/s.
pub fn damping_rate(spec: &OscillatorDampingSpec) -> f64 {
    spec.omega.0 / gas_q(spec)
}

/// Q from the ratio of oscillator volume to mean drag force, for an
/// oscillation of amplitude `amplitude`: (π/4) ρ ω² A V/F̄.
pub fn q_from_drag(density: f64, omega: AngularFrequency, amplitude: f64, volume_over_drag: f64) -> f64 {
    PI / 4.0 * density * omega.0 * omega.0 * amplitude * volume_over_drag
}

/// V/F̄ in the molecular-flow limit, (2r/3)√(3kT/M) / (P ω A), m³/N.
/// Holds for a sphere of radius `radius` and for a torus of wire radius
/// `radius`.
pub fn volume_over_drag(radius: f64, env: &GasEnvironment, omega: AngularFrequency, amplitude: f64) -> f64 {
    2.0 * radius / 3.0 * thermal_speed(env) / (env.pressure() * omega.0 * amplitude)
}

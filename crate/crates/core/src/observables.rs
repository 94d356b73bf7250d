//! Quantum-scale figures of merit for a levitated oscillator.

use std::f64::consts::PI;

use crate::constants::HBAR;
use crate::error::{require_positive, Error, Result};
use crate::units::{AngularFrequency, Frequency};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorState {
    mass: f64,
    omega: AngularFrequency,
}

impl OscillatorState {
    pub fn new(mass: f64, omega: AngularFrequency) -> Result<Self> {
        require_positive("oscillator angular frequency", omega.0)?;
        Ok(OscillatorState { mass: require_positive("oscillator mass", mass)?, omega })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn omega(&self) -> AngularFrequency {
        self.omega
    }
}

/// Zero-point amplitude δz = √(ħ / 2Mω), m.
pub fn zero_point_motion(state: &OscillatorState) -> f64 {
    (HBAR / (2.0 * state.mass * state.omega.0)).sqrt()
}

/// Superposition size in units of the zero-point amplitude of `state`.
pub fn chi_ratio(delta_z: f64, state: &OscillatorState) -> f64 {
    delta_z / zero_point_motion(state)
}

/// Δz/δz for an already known zero-point amplitude.
pub fn chi_from_zpm(delta_z: f64, zpm: f64) -> Result<f64> {
    if !(zpm > 0.0) || !zpm.is_finite() {
        return Err(Error::domain(format!("zero-point amplitude {zpm:e} must be positive")));
    }
    Ok(delta_z / zpm)
}

/// ω = √(k/m).
pub fn stiffness_to_omega(stiffness: f64, mass: f64) -> Result<AngularFrequency> {
    require_positive("mass", mass)?;
    if !(stiffness > 0.0) {
        return Err(Error::unstable(format!("stiffness {stiffness:e} N/m is not positive")));
    }
    Ok(AngularFrequency((stiffness / mass).sqrt()))
}

/// ν = ω / 2π.
pub fn omega_to_nu(omega: AngularFrequency) -> Frequency {
    Frequency(omega.0 / (2.0 * PI))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn yig_zero_point_motion() {
        let mass = 4.0 / 3.0 * PI * 25e-6f64.powi(3) * 5110.0;
        let s = OscillatorState::new(mass, AngularFrequency(2.0 * PI * 10.0)).unwrap();
        assert_relative_eq!(zero_point_motion(&s), 5.01e-14, max_relative = 2e-3);
    }

    #[test]
    fn torus_zero_point_motion() {
        let s = OscillatorState::new(2.44e-10, AngularFrequency(2.0 * PI * 10.0)).unwrap();
        assert_relative_eq!(zero_point_motion(&s), 5.87e-14, max_relative = 2e-3);
    }

    #[test]
    fn chi_values() {
        assert_relative_eq!(chi_from_zpm(100e-9, 5e-14).unwrap(), 2.0e6, max_relative = 1e-12);
        assert_relative_eq!(chi_from_zpm(7.62e-7, 5.01e-14).unwrap(), 1.52e7, max_relative = 1e-3);
        assert!(chi_from_zpm(1e-9, 0.0).is_err());
        let s = OscillatorState::new(2.44e-10, AngularFrequency(2.0 * PI * 10.0)).unwrap();
        assert_eq!(chi_ratio(0.0, &s), 0.0);
        assert_relative_eq!(chi_ratio(100e-9, &s), 100e-9 / zero_point_motion(&s), max_relative = 1e-15);
    }

    #[test]
    fn conversions() {
        let w = stiffness_to_omega(0.343, 3.59e-8).unwrap();
        assert_relative_eq!(w.0, 3091.0, max_relative = 1e-3);
        assert_relative_eq!(omega_to_nu(AngularFrequency(2.0 * PI * 7.0)).0, 7.0, max_relative = 1e-15);
        assert!(matches!(stiffness_to_omega(-1.0, 1.0), Err(Error::Unstable(_))));
        assert!(OscillatorState::new(-1.0, AngularFrequency(1.0)).is_err());
        let nu = Frequency(13.7);
        assert_relative_eq!(omega_to_nu(nu.to_angular()).0, 13.7, max_relative = 1e-15);
        let m = 3.3e-10;
        let s1 = OscillatorState::new(m, AngularFrequency(50.0)).unwrap();
        let s4 = OscillatorState::new(4.0 * m, AngularFrequency(50.0)).unwrap();
        assert_relative_eq!(zero_point_motion(&s1) / zero_point_motion(&s4), 2.0, max_relative = 1e-15);
    }

    proptest::proptest! {
        #[test]
        fn zpm_scaling(m in 1e-18f64..1e-3, w in 1.0f64..1e7, k in 0.1f64..10.0) {
            let a = zero_point_motion(&OscillatorState::new(m, AngularFrequency(w)).unwrap());
            let b = zero_point_motion(&OscillatorState::new(k * m, AngularFrequency(w)).unwrap());
            let c = zero_point_motion(&OscillatorState::new(m, AngularFrequency(k * w)).unwrap());
            proptest::prop_assert!((a / b - k.sqrt()).abs() <= 1e-13 * k.sqrt());
            proptest::prop_assert!((a / c - k.sqrt()).abs() <= 1e-13 * k.sqrt());
            let back = a * (2.0 * m * w).sqrt() / HBAR.sqrt();
            proptest::prop_assert!((back - 1.0).abs() <= 1e-15 * 2.0);
        }

        #[test]
        fn chi_scale_invariant(dz in 1e-12f64..1e-3, zpm in 1e-16f64..1e-10, s in 1e-3f64..1e3) {
            let a = chi_from_zpm(dz, zpm).unwrap();
            let b = chi_from_zpm(s * dz, s * zpm).unwrap();
            proptest::prop_assert!((a - b).abs() <= 1e-14 * a);
        }
    }
}

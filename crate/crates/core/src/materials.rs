//! Material and geometry types, and the external field of a uniformly
//! magnetized sphere.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};

use crate::constants::{ALUMINIUM_CRITICAL_FIELD, MU0};
use crate::error::{require_finite, require_non_negative, require_positive, Error, Result};

/// Cartesian vector, SI units of whatever it carries.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(self.y * o.z - self.z * o.y, self.z * o.x - self.x * o.z, self.x * o.y - self.y * o.x)
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

/// A uniformly magnetized sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MagnetSphere {
    radius: f64,
    remanence: f64,
    density: f64,
}

impl MagnetSphere {
    /// `radius` in m, `remanence` (B_r) in T, `density` in kg/m³.
    pub fn new(radius: f64, remanence: f64, density: f64) -> Result<Self> {
        Ok(MagnetSphere {
            radius: require_positive("magnet radius", radius)?,
            remanence: require_non_negative("magnet remanence", remanence)?,
            density: require_positive("magnet density", density)?,
        })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn remanence(&self) -> f64 {
        self.remanence
    }

    pub fn density(&self) -> f64 {
        self.density
    }

    pub fn volume(&self) -> f64 {
        4.0 / 3.0 * PI * self.radius.powi(3)
    }

    pub fn mass(&self) -> f64 {
        self.density * self.volume()
    }

    /// Same sphere with a different radius.
    pub fn with_radius(self, radius: f64) -> Result<Self> {
        MagnetSphere::new(radius, self.remanence, self.density)
    }
}

/// Dipole moment B_r·V/μ0 of a uniformly magnetized sphere, A·m².
pub fn magnet_moment(sphere: &MagnetSphere) -> f64 {
    sphere.remanence * sphere.volume() / MU0
}

/// A thin superconducting ring (flux qubit loop).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SCRing {
    loop_radius: f64,
    wire_radius: f64,
    density: f64,
    current: f64,
    critical_field: f64,
}

impl SCRing {
    /// `loop_radius` R and `wire_radius` r in m, `density` in kg/m³,
    /// `current` in A (sign gives the circulation).
    pub fn new(loop_radius: f64, wire_radius: f64, density: f64, current: f64) -> Result<Self> {
        let loop_radius = require_positive("ring loop radius", loop_radius)?;
        let wire_radius = require_positive("ring wire radius", wire_radius)?;
        if wire_radius >= loop_radius {
            return Err(Error::InvalidParameter {
                name: "ring wire radius",
                value: wire_radius,
                reason: "must be smaller than the loop radius",
            });
        }
        Ok(SCRing {
            loop_radius,
            wire_radius,
            density: require_positive("ring density", density)?,
            current: require_finite("ring current", current)?,
            critical_field: ALUMINIUM_CRITICAL_FIELD,
        })
    }

    pub fn with_critical_field(mut self, bc: f64) -> Result<Self> {
        self.critical_field = require_positive("ring critical field", bc)?;
        Ok(self)
    }

    pub fn with_current(mut self, current: f64) -> Result<Self> {
        self.current = require_finite("ring current", current)?;
        Ok(self)
    }

    pub fn with_loop_radius(self, loop_radius: f64) -> Result<Self> {
        SCRing::new(loop_radius, self.wire_radius, self.density, self.current)?.with_critical_field(self.critical_field)
    }

    pub fn loop_radius(&self) -> f64 {
        self.loop_radius
    }

    pub fn wire_radius(&self) -> f64 {
        self.wire_radius
    }

    pub fn density(&self) -> f64 {
        self.density
    }

    pub fn current(&self) -> f64 {
        self.current
    }

    pub fn critical_field(&self) -> f64 {
        self.critical_field
    }
}

/// Gas surrounding an oscillator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GasEnvironment {
    pressure: f64,
    temperature: f64,
    molecule_mass: f64,
}

impl GasEnvironment {
    /// Helium at 10⁻⁶ Pa and 0.3 K.
    pub const HELIUM_300MK: GasEnvironment =
        GasEnvironment { pressure: 1e-6, temperature: 0.3, molecule_mass: 6.65e-27 };

    /// `pressure` in Pa, `temperature` in K, `molecule_mass` in kg.
    pub fn new(pressure: f64, temperature: f64, molecule_mass: f64) -> Result<Self> {
        Ok(GasEnvironment {
            pressure: require_positive("gas pressure", pressure)?,
            temperature: require_positive("gas temperature", temperature)?,
            molecule_mass: require_positive("gas molecule mass", molecule_mass)?,
        })
    }

    pub fn pressure(&self) -> f64 {
        self.pressure
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn molecule_mass(&self) -> f64 {
        self.molecule_mass
    }
}

impl Default for GasEnvironment {
    fn default() -> Self {
        Self::HELIUM_300MK
    }
}

/// Field of a point dipole `moment` ẑ (A·m²) at the origin, evaluated at
/// `point`. Exact outside a uniformly magnetized sphere.
pub fn dipole_field(moment: f64, point: Vec3) -> Result<Vec3> {
    let r = point.norm();
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::domain("dipole field requested at the dipole location"));
    }
    let rhat = point * (1.0 / r);
    let mhat = Vec3::new(0.0, 0.0, 1.0);
    let scale = MU0 / (4.0 * PI) * moment / r.powi(3);
    Ok((rhat * (3.0 * mhat.dot(rhat)) - mhat) * scale)
}

//! Angular and ordinary frequency kept apart at the type level.

use std::f64::consts::TAU;
use std::fmt;

/// Angular frequency in rad/s.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct AngularFrequency(pub f64);

/// Ordinary frequency in Hz.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Frequency(pub f64);

impl AngularFrequency {
    pub fn rad_per_s(self) -> f64 {
        self.0
    }

    pub fn to_hz(self) -> Frequency {
        Frequency(self.0 / TAU)
    }
}

impl Frequency {
    pub fn hz(self) -> f64 {
        self.0
    }

    pub fn to_angular(self) -> AngularFrequency {
        AngularFrequency(self.0 * TAU)
    }
}

impl From<Frequency> for AngularFrequency {
    fn from(f: Frequency) -> Self {
        f.to_angular()
    }
}

impl From<AngularFrequency> for Frequency {
    fn from(w: AngularFrequency) -> Self {
        w.to_hz()
    }
}

impl fmt::Display for AngularFrequency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} rad/s", self.0)
    }
}

impl fmt::Display for Frequency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} Hz", self.0)
    }
}

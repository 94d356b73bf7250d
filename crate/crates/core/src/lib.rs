//! Numerical models for two magneto-mechanical superposition schemes and the
//! Meissner backaction of a superconducting sphere in an anti-Helmholtz
//! dipole trap.
//!
//! * [`ringfield`] and [`scheme1`]: a magnetized microsphere in a harmonic
//!   trap, pushed by the field gradient of two coaxial current rings.
//! * [`scheme2`]: a superconducting ring levitated above a fixed magnet
//!   sphere, displaced by its own state-dependent moment.
//! * [`meissner`]: exact axial fields, force and stiffness of a
//!   superconducting sphere between two antiparallel point dipoles.
//! * [`damping`] and [`observables`]: gas-limited Q and quantum figures of
//!   merit.
//!
//! Everything is SI. Angular frequency ([`AngularFrequency`], rad/s) and
//! ordinary frequency ([`Frequency`], Hz) are separate types.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constants;
pub mod damping;
mod error;
pub mod materials;
pub mod meissner;
pub mod numerics;
pub mod observables;
pub mod ringfield;
pub mod scheme1;
pub mod scheme2;
pub mod units;

pub use constants::PhysicalConstants;
pub use error::{Error, Result};
pub use materials::{dipole_field, magnet_moment, GasEnvironment, MagnetSphere, SCRing, Vec3};
pub use units::{AngularFrequency, Frequency};

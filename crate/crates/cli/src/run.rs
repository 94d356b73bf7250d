//! Evaluation of a [`RunConfig`] over its sweep points.

use std::collections::BTreeMap;

use magsup_core::damping::{gas_q, OscillatorDampingSpec};
use magsup_core::materials::{GasEnvironment, MagnetSphere, SCRing};
use magsup_core::meissner::{self, DipolePairTrap};
use magsup_core::observables::{chi_ratio, zero_point_motion, OscillatorState};
use magsup_core::ringfield::RingPairConfig;
use magsup_core::scheme1::{self, Scheme1Config};
use magsup_core::scheme2::{self, Scheme2Config};
use magsup_core::Frequency;
use rayon::prelude::*;
use thiserror::Error;

use crate::config::{RunConfig, Scheme};

#[derive(Debug, Error)]
pub enum RunError {
    #[error("could not start worker pool: {0}")]
    ThreadPool(#[from] rayon::ThreadPoolBuildError),
}

/// Output column: name and SI unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Column {
    pub name: &'static str,
    pub unit: &'static str,
}

const fn col(name: &'static str, unit: &'static str) -> Column {
    Column { name, unit }
}

const SCHEME1_OUT: &[Column] = &[
    col("delta_z", "m"),
    col("delta_z_linear", "m"),
    col("chi", "1"),
    col("q", "1"),
    col("field_margin", "T"),
    col("zpm", "m"),
];

const SCHEME2_OUT: &[Column] = &[
    col("alpha", "1"),
    col("h", "m"),
    col("nu_z", "Hz"),
    col("delta_z", "m"),
    col("chi", "1"),
    col("q", "1"),
    col("mass", "kg"),
    col("inductance", "H"),
    col("m_sc", "A*m^2"),
    col("zpm", "m"),
];

const MEISSNER_OUT: &[Column] = &[
    col("k_full", "N/m"),
    col("k_asym", "N/m"),
    col("k_nobackaction", "N/m"),
    col("ratio", "1"),
    col("delta_eq", "m"),
    col("omega_z", "rad/s"),
    col("force", "N"),
];

const QFACTOR_OUT: &[Column] = &[col("q", "1")];

pub fn output_columns(scheme: Scheme) -> &'static [Column] {
    match scheme {
        Scheme::Scheme1 => SCHEME1_OUT,
        Scheme::Scheme2 => SCHEME2_OUT,
        Scheme::Meissner => MEISSNER_OUT,
        Scheme::QFactor => QFACTOR_OUT,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub index: usize,
    pub inputs: Vec<f64>,
    /// One entry per output column; `None` where evaluation stopped early.
    pub outputs: Vec<Option<f64>>,
    /// `operation: message` of the first failure.
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub config: RunConfig,
    pub input_columns: Vec<&'static str>,
    pub output_columns: &'static [Column],
    pub rows: Vec<Row>,
}

impl SweepResult {
    pub fn error_count(&self) -> usize {
        self.rows.iter().filter(|r| r.error.is_some()).count()
    }

    /// Value of output `name` in each row.
    pub fn output(&self, name: &str) -> Vec<Option<f64>> {
        let Some(i) = self.output_columns.iter().position(|c| c.name == name) else {
            return Vec::new();
        };
        self.rows.iter().map(|r| r.outputs[i]).collect()
    }

    /// Value of input `key` in each row.
    pub fn input(&self, key: &str) -> Vec<f64> {
        let Some(i) = self.input_columns.iter().position(|c| *c == key) else {
            return Vec::new();
        };
        self.rows.iter().map(|r| r.inputs[i]).collect()
    }
}

/// Collects outputs in column order and stops at the first error.
struct Recorder {
    values: Vec<Option<f64>>,
    error: Option<String>,
}

impl Recorder {
    fn new(n: usize) -> Self {
        Recorder { values: vec![None; n], error: None }
    }

    fn set(&mut self, slot: usize, v: f64) {
        self.values[slot] = Some(v);
    }

    fn fail(&mut self, op: &str, e: impl std::fmt::Display) {
        self.error = Some(format!("{op}: {e}"));
    }
}

/// Unwraps a core result or records the failing operation and returns.
macro_rules! attempt {
    ($rec:expr, $op:literal, $e:expr) => {
        match $e {
            Ok(v) => v,
            Err(err) => {
                $rec.fail($op, err);
                return;
            }
        }
    };
}

fn eval_scheme1(p: &BTreeMap<String, f64>, rec: &mut Recorder) {
    let omega = Frequency(p["trap.nu_z"]).to_angular();
    let magnet =
        attempt!(rec, "MagnetSphere::new", MagnetSphere::new(p["magnet.radius"], p["magnet.Br"], p["magnet.rho"]));
    let rings = attempt!(rec, "RingPairConfig::new", RingPairConfig::new(p["rings.R"], p["rings.I"], p["rings.eta"]));
    let cfg = attempt!(rec, "Scheme1Config::new", Scheme1Config::new(magnet, rings, omega));
    let dz = attempt!(rec, "solve_superposition_extent", scheme1::solve_superposition_extent(&cfg));
    rec.set(0, dz);
    rec.set(1, scheme1::linearized_extent(&cfg));
    let state = attempt!(rec, "OscillatorState::new", OscillatorState::new(magnet.mass(), omega));
    rec.set(2, chi_ratio(dz, &state));
    rec.set(5, zero_point_motion(&state));
    let env = attempt!(rec, "GasEnvironment::new", GasEnvironment::new(p["gas.P"], p["gas.T"], p["gas.Mg"]));
    let damping = attempt!(
        rec,
        "OscillatorDampingSpec::new",
        OscillatorDampingSpec::new(magnet.density(), magnet.radius(), omega, env)
    );
    rec.set(3, gas_q(&damping));
    let offsets = [0.0, 0.5 * dz, -0.5 * dz];
    let margin = attempt!(rec, "critical_field_check", scheme1::critical_field_check(&cfg, p["rings.Bc"], &offsets));
    rec.set(4, margin);
}

fn eval_scheme2(p: &BTreeMap<String, f64>, rec: &mut Recorder) {
    let magnet =
        attempt!(rec, "MagnetSphere::new", MagnetSphere::new(p["magnet.radius"], p["magnet.Br"], p["magnet.rho"]));
    let ring = attempt!(rec, "SCRing::new", SCRing::new(p["ring.R"], p["ring.r"], p["ring.rho"], p["ring.I"]));
    let cfg = Scheme2Config { magnet, ring };
    let mass = scheme2::ring_mass(&ring);
    rec.set(6, mass);
    rec.set(8, scheme2::ring_moment(&ring));
    let inductance = attempt!(rec, "ring_inductance", scheme2::ring_inductance(&ring));
    rec.set(7, inductance);
    let alpha = attempt!(rec, "stability_parameter", scheme2::stability_parameter(&cfg));
    rec.set(0, alpha);
    let h = attempt!(rec, "equilibrium_height", scheme2::equilibrium_height(&cfg));
    rec.set(1, h);
    let nu = attempt!(rec, "trap_frequency_hz", scheme2::trap_frequency_hz(&cfg, h));
    rec.set(2, nu.hz());
    let omega = nu.to_angular();
    let dz = attempt!(rec, "superposition_extent", scheme2::superposition_extent(&cfg, h, omega));
    rec.set(3, dz);
    let state = attempt!(rec, "OscillatorState::new", OscillatorState::new(mass, omega));
    rec.set(4, chi_ratio(dz, &state));
    rec.set(9, zero_point_motion(&state));
    let env = attempt!(rec, "GasEnvironment::new", GasEnvironment::new(p["gas.P"], p["gas.T"], p["gas.Mg"]));
    let damping = attempt!(
        rec,
        "OscillatorDampingSpec::new",
        OscillatorDampingSpec::new(ring.density(), ring.wire_radius(), omega, env)
    );
    rec.set(5, gas_q(&damping));
}

fn eval_meissner(p: &BTreeMap<String, f64>, rec: &mut Recorder) {
    let gamma = p["sphere.gamma"];
    let gap = p["trap.d"];
    let mass = DipolePairTrap::sphere_mass_for_density(gamma, p["sphere.rho"]);
    let trap = attempt!(
        rec,
        "DipolePairTrap::centered",
        DipolePairTrap::centered(p["dipole.m"], gap, p["trap.delta"], gamma, mass)
    );
    let k_full = attempt!(rec, "stiffness_full", meissner::stiffness_full(gap, &trap));
    let k_nb = meissner::stiffness_no_backaction(gap, &trap);
    rec.set(0, k_full);
    rec.set(1, meissner::stiffness_asymptotic(gap, &trap));
    rec.set(2, k_nb);
    rec.set(3, k_full / k_nb);
    rec.set(6, meissner::force_on_sphere(&trap));
    let (sag, omega) =
        attempt!(rec, "equilibrium_sag_and_frequency", meissner::equilibrium_sag_and_frequency(&trap, k_full));
    rec.set(4, sag);
    rec.set(5, omega.0);
}

fn eval_qfactor(p: &BTreeMap<String, f64>, rec: &mut Recorder) {
    let env = attempt!(rec, "GasEnvironment::new", GasEnvironment::new(p["gas.P"], p["gas.T"], p["gas.Mg"]));
    let omega = Frequency(p["osc.nu_z"]).to_angular();
    let spec =
        attempt!(rec, "OscillatorDampingSpec::new", OscillatorDampingSpec::new(p["osc.rho"], p["osc.r"], omega, env));
    rec.set(0, gas_q(&spec));
}

/// Evaluates one parameter set.
pub fn evaluate(scheme: Scheme, params: &BTreeMap<String, f64>) -> (Vec<Option<f64>>, Option<String>) {
    let mut rec = Recorder::new(output_columns(scheme).len());
    match scheme {
        Scheme::Scheme1 => eval_scheme1(params, &mut rec),
        Scheme::Scheme2 => eval_scheme2(params, &mut rec),
        Scheme::Meissner => eval_meissner(params, &mut rec),
        Scheme::QFactor => eval_qfactor(params, &mut rec),
    }
    (rec.values, rec.error)
}

/// Evaluates every sweep point. Rows are independent and come back in
/// sweep order whatever the thread count; `threads = None` uses the
/// global pool.
pub fn run(config: &RunConfig, threads: Option<usize>) -> Result<SweepResult, RunError> {
    let input_columns: Vec<&'static str> = config.scheme.keys().iter().map(|k| k.key).collect();
    let points = config.points();
    let scheme = config.scheme;
    let eval_all = || -> Vec<Row> {
        points
            .par_iter()
            .enumerate()
            .map(|(index, p)| {
                let (outputs, error) = evaluate(scheme, p);
                let inputs = input_columns.iter().map(|k| p[*k]).collect();
                Row { index, inputs, outputs, error }
            })
            .collect()
    };
    let rows = match threads {
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build()?.install(eval_all),
        None => eval_all(),
    };
    for r in rows.iter().filter(|r| r.error.is_some()) {
        log::debug!("row {}: {}", r.index, r.error.as_deref().unwrap_or(""));
    }
    Ok(SweepResult { config: config.clone(), input_columns, output_columns: output_columns(scheme), rows })
}

//! JSON request formats for the CLI subcommands.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fs::File;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, ensure, Context, Result};
use boussinesq_core::scattering::{GaussianBump, InitialData, ReflectionTable, SyntheticProfile};
use boussinesq_core::spectrum::{validate_spectrum, SolitonSpectrum};
use boussinesq_core::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::csvio;

/// Reads a JSON request; relative paths inside it resolve against the file's directory.
pub fn load<T: DeserializeOwned + Resolve>(path: &Path) -> Result<T> {
    let file = File::open(path).with_context(|| format!("opening config {}", path.display()))?;
    let mut value: T =
        serde_json::from_reader(file).with_context(|| format!("parsing config {}", path.display()))?;
    value.resolve(path.parent().unwrap_or(Path::new(".")));
    Ok(value)
}

/// Rebases relative file paths.
pub trait Resolve {
    fn resolve(&mut self, _base: &Path) {}
}

fn rebase(path: &mut PathBuf, base: &Path) {
    if path.is_relative() {
        *path = base.join(&*path);
    }
}

/// A single number, an explicit list or `count` evenly spaced values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NumberSet {
    One(f64),
    List(Vec<f64>),
    Range { start: f64, stop: f64, count: usize },
}

impl NumberSet {
    pub fn values(&self) -> Result<Vec<f64>> {
        let v = match self {
            NumberSet::One(x) => vec![*x],
            NumberSet::List(xs) => xs.clone(),
            NumberSet::Range { start, stop, count } => {
                ensure!(*count >= 1, "range needs count >= 1");
                if *count == 1 {
                    vec![*start]
                } else {
                    (0..*count).map(|j| start + (stop - start) * j as f64 / (*count - 1) as f64).collect()
                }
            }
        };
        ensure!(!v.is_empty(), "empty list of values");
        ensure!(v.iter().all(|x| x.is_finite()), "values must be finite");
        Ok(v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialDataConfig {
    Gaussian { amplitude: f64, v_amplitude: f64, center: f64, width: f64, support_radius: f64 },
    /// CSV with columns `x,u0,u1`.
    Tabulated { path: PathBuf },
    SeededSoliton { k: f64, c_re: f64, c_im: f64, support_radius: f64 },
    Zero { support_radius: f64 },
}

impl Resolve for InitialDataConfig {
    fn resolve(&mut self, base: &Path) {
        if let InitialDataConfig::Tabulated { path } = self {
            rebase(path, base);
        }
    }
}

impl InitialDataConfig {
    pub fn build(&self) -> Result<InitialData> {
        Ok(match self {
            InitialDataConfig::Gaussian { amplitude, v_amplitude, center, width, support_radius } => {
                InitialData::gaussian(*amplitude, *v_amplitude, *center, *width, *support_radius)?
            }
            InitialDataConfig::Tabulated { path } => {
                let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
                let (xs, u0, u1) = csvio::read_initial_data(file)?;
                InitialData::tabulated(&xs, &u0, &u1)?
            }
            InitialDataConfig::SeededSoliton { k, c_re, c_im, support_radius } => {
                InitialData::seeded_soliton(*k, Complex64::new(*c_re, *c_im), *support_radius)?
            }
            InitialDataConfig::Zero { support_radius } => {
                ensure!(*support_radius > 0.0, "support radius must be positive");
                InitialData::zero(*support_radius)
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BreatherConfig {
    pub re: f64,
    pub im: f64,
    pub c_re: f64,
    pub c_im: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolitonConfig {
    pub k: f64,
    pub c_re: f64,
    pub c_im: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpectrumConfig {
    pub breathers: Vec<BreatherConfig>,
    pub solitons: Vec<SolitonConfig>,
}

impl SpectrumConfig {
    /// The spectrum, rejected unless every admissibility condition holds.
    pub fn build(&self) -> Result<SolitonSpectrum> {
        let mut spec = SolitonSpectrum::empty();
        for b in &self.breathers {
            spec = spec.with_breather(Complex64::new(b.re, b.im), Complex64::new(b.c_re, b.c_im));
        }
        for s in &self.solitons {
            spec = spec.with_soliton(s.k, Complex64::new(s.c_re, s.c_im));
        }
        let report = validate_spectrum(&spec);
        if !report.passed() {
            let msgs: Vec<String> = report.failures().map(|f| format!("{} ({})", f.name, f.detail)).collect();
            bail!("invalid spectrum: {}", msgs.join("; "));
        }
        Ok(spec)
    }
}

/// Full arc from `i` to `e^{2 pi i / 3}`.
pub const SYNTHETIC_ARC: (f64, f64) = (FRAC_PI_2, 2.0 * PI / 3.0);
/// Data tables stop short of the exclusion disk around `omega`.
pub const DATA_ARC: (f64, f64) = (FRAC_PI_2, 2.0 * PI / 3.0 - 0.02);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ReflectionConfig {
    Zero,
    Bump {
        #[serde(default = "default_bump_amplitude")]
        amplitude: f64,
        #[serde(default = "default_bump_center")]
        center: f64,
        #[serde(default = "default_bump_width")]
        width: f64,
        #[serde(default = "default_bump_phase0")]
        phase0: f64,
        #[serde(default = "default_bump_phase_slope")]
        phase_slope: f64,
        #[serde(default = "default_synthetic_nodes")]
        nodes: usize,
    },
    Data {
        initial_data: InitialDataConfig,
        #[serde(default = "default_data_nodes")]
        nodes: usize,
    },
}

fn default_bump_amplitude() -> f64 {
    GaussianBump::default().amplitude
}
fn default_bump_center() -> f64 {
    GaussianBump::default().center
}
fn default_bump_width() -> f64 {
    GaussianBump::default().width
}
fn default_bump_phase0() -> f64 {
    GaussianBump::default().phase0
}
fn default_bump_phase_slope() -> f64 {
    GaussianBump::default().phase_slope
}
fn default_synthetic_nodes() -> usize {
    96
}
fn default_data_nodes() -> usize {
    48
}

impl Default for ReflectionConfig {
    fn default() -> Self {
        ReflectionConfig::Zero
    }
}

impl Resolve for ReflectionConfig {
    fn resolve(&mut self, base: &Path) {
        if let ReflectionConfig::Data { initial_data, .. } = self {
            initial_data.resolve(base);
        }
    }
}

impl ReflectionConfig {
    pub fn build(&self) -> Result<Arc<ReflectionTable>> {
        let table = match self {
            ReflectionConfig::Zero => ReflectionTable::zero(SYNTHETIC_ARC, 16)?,
            ReflectionConfig::Bump { amplitude, center, width, phase0, phase_slope, nodes } => {
                let bump = GaussianBump {
                    amplitude: *amplitude,
                    center: *center,
                    width: *width,
                    phase0: *phase0,
                    phase_slope: *phase_slope,
                };
                ReflectionTable::synthetic(SyntheticProfile::Bump(bump), SYNTHETIC_ARC, *nodes)?
            }
            ReflectionConfig::Data { initial_data, nodes } => {
                ReflectionTable::from_data(&initial_data.build()?, DATA_ARC, *nodes)?
            }
        };
        Ok(Arc::new(table))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolitonRequest {
    pub spectrum: SpectrumConfig,
    pub x: NumberSet,
    pub t: NumberSet,
}

impl Resolve for SolitonRequest {}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchConfig {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScatterRequest {
    pub initial_data: InitialDataConfig,
    /// Angles on the unit circle where `r1`, `r2` are tabulated.
    #[serde(default)]
    pub arc_angles: Option<NumberSet>,
    /// Rectangle in which zeros of `s11` are located, with residue constants.
    #[serde(default)]
    pub search: Option<SearchConfig>,
}

impl Resolve for ScatterRequest {
    fn resolve(&mut self, base: &Path) {
        self.initial_data.resolve(base);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModulateRequest {
    pub zeta: NumberSet,
    #[serde(default)]
    pub spectrum: SpectrumConfig,
    #[serde(default)]
    pub reflection: ReflectionConfig,
}

impl Resolve for ModulateRequest {
    fn resolve(&mut self, base: &Path) {
        self.reflection.resolve(base);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AsymRequest {
    pub zeta: NumberSet,
    pub t: NumberSet,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    #[serde(default)]
    pub spectrum: SpectrumConfig,
    #[serde(default)]
    pub reflection: ReflectionConfig,
}

fn default_epsilon() -> f64 {
    boussinesq_core::asymptotics::formulas::DEFAULT_EPSILON
}

impl Resolve for AsymRequest {
    fn resolve(&mut self, base: &Path) {
        self.reflection.resolve(base);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompareRequest {
    pub zeta: f64,
    pub t: NumberSet,
    #[serde(default)]
    pub spectrum: SpectrumConfig,
    #[serde(default)]
    pub reflection: ReflectionConfig,
}

impl Resolve for CompareRequest {
    fn resolve(&mut self, base: &Path) {
        self.reflection.resolve(base);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlotRequest {
    /// CSV produced by another subcommand.
    pub input: PathBuf,
    pub x: String,
    pub y: Vec<String>,
    #[serde(default)]
    pub title: String,
}

impl Resolve for PlotRequest {
    fn resolve(&mut self, base: &Path) {
        rebase(&mut self.input, base);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_sets_parse_in_all_forms() {
        let one: NumberSet = serde_json::from_str("2.5").unwrap();
        let list: NumberSet = serde_json::from_str("[1, 2]").unwrap();
        let range: NumberSet = serde_json::from_str(r#"{"start": 0, "stop": 1, "count": 3}"#).unwrap();
        assert_eq!(one.values().unwrap(), vec![2.5]);
        assert_eq!(list.values().unwrap(), vec![1.0, 2.0]);
        assert_eq!(range.values().unwrap(), vec![0.0, 0.5, 1.0]);
        assert!(NumberSet::List(vec![]).values().is_err());
    }

    #[test]
    fn inadmissible_soliton_is_rejected() {
        let cfg = SpectrumConfig { breathers: vec![], solitons: vec![SolitonConfig { k: 0.5, c_re: 1.0, c_im: 0.0 }] };
        let err = cfg.build().unwrap_err().to_string();
        assert!(err.contains("soliton[0]"), "{err}");
    }

    #[test]
    fn reflection_defaults_fill_in() {
        let cfg: ReflectionConfig = serde_json::from_str(r#"{"kind": "bump"}"#).unwrap();
        let table = cfg.build().unwrap();
        assert_eq!(table.len(), 96);
        let zero: ReflectionConfig = serde_json::from_str(r#"{"kind": "zero"}"#).unwrap();
        assert!(zero.build().unwrap().r1(1.8).norm() == 0.0);
    }

    #[test]
    fn unknown_fields_are_errors() {
        let r: Result<InitialDataConfig, _> = serde_json::from_str(r#"{"family": "zero", "support_radius": 3, "oops": 1}"#);
        assert!(r.is_err());
    }

    #[test]
    fn tabulated_path_resolves_against_config_dir() {
        let mut cfg = InitialDataConfig::Tabulated { path: "data.csv".into() };
        cfg.resolve(Path::new("/tmp/cfg"));
        assert_eq!(cfg, InitialDataConfig::Tabulated { path: "/tmp/cfg/data.csv".into() });
    }
}

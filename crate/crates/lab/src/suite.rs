//! The full invariant suite behind `bsq-lab verify`.

use std::time::Instant;

use boussinesq_core::scattering::InitialData;
use boussinesq_core::spectrum::{admissible_real_constant, SolitonSpectrum};
use boussinesq_core::Complex64;
use serde::{Deserialize, Serialize};

use crate::checks::{self, zeta_grid};
use crate::report::VerificationReport;
use crate::residual::GridSpec;

/// Deliberate corruption used to confirm that the suite notices failures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Perturbs `beta21` by a relative `1e-6 |q|`.
    BetaIdentity,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub fault: Option<Fault>,
    /// Count known deviations as failures.
    pub strict: bool,
    /// Skip the zero search on seeded data, the slowest check.
    pub quick: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { seed: 20_240_611, fault: None, strict: false, quick: false }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteOutcome {
    pub reports: Vec<VerificationReport>,
    pub strict: bool,
    pub runtime_ms: f64,
}

impl SuiteOutcome {
    /// Reports that make the run fail; known deviations count only when strict.
    pub fn failures(&self) -> impl Iterator<Item = &VerificationReport> {
        self.reports.iter().filter(move |r| !r.passed && (self.strict || !r.known_deviation))
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }
}

/// `q` values for the model-problem identities.
pub fn model_q_values() -> Vec<Complex64> {
    vec![
        Complex64::new(0.5, 0.0),
        Complex64::new(1.0, 2.0),
        Complex64::new(0.0, -3.0),
        Complex64::new(10.0, 0.0),
        Complex64::new(-0.01, 0.02),
    ]
}

pub fn gaussian_data() -> InitialData {
    InitialData::gaussian(0.4, 0.0, 0.0, 1.5, 12.0).expect("valid gaussian data")
}

pub fn spectral_reports(seed: u64) -> Vec<VerificationReport> {
    let mut out = vec![
        checks::kernel_sums(seed, 1000),
        checks::phase_symmetries(seed.wrapping_add(1), 200),
        checks::region_mirror(seed.wrapping_add(2), 200),
    ];
    out.extend(checks::saddle_suite(&zeta_grid(1.01, 10.0, 50)));
    let nus: Vec<f64> = (0..200).map(|j| -2.0 + (2.0 - 1e-4) * j as f64 / 199.0).collect();
    out.push(checks::gamma_modulus_identity(&nus));
    out.push(checks::gamma_classical_values());
    out
}

pub fn soliton_reports() -> Vec<VerificationReport> {
    let k = 1.3;
    let c = admissible_real_constant(k, 0.1);
    let xs: Vec<f64> = (0..401).map(|j| -20.0 + 0.1 * j as f64).collect();
    let ts = [0.0, 5.0, 10.0];
    let two = SolitonSpectrum::empty().with_soliton(1.3, c).with_soliton(1.8, admissible_real_constant(1.8, 0.1));
    let mixed = checks::msol_spectra().pop().expect("mixed").1;
    let coarse: Vec<f64> = (0..81).map(|j| -20.0 + 0.5 * j as f64).collect();
    let grid = GridSpec::new(-10.0, 10.0, 41, vec![0.0, 3.0]).expect("valid grid");
    vec![
        checks::one_soliton_exactness(k, c, &xs, &ts),
        checks::soliton_reality(&two, &coarse, &ts),
        checks::soliton_reality(&mixed, &coarse, &ts),
        checks::soliton_decay(k, c),
        checks::pde_residual_order(&two, &grid, &[0.1, 0.05], 10.0),
    ]
}

pub fn scattering_reports(quick: bool) -> Vec<VerificationReport> {
    let data = gaussian_data();
    let mut out = vec![
        checks::zero_data_trivial(5.0),
        checks::scattering_determinants(&data),
        checks::reflection_at_unit_roots(&data),
        checks::table_symmetry(&data, 32),
    ];
    if !quick {
        let k = 1.3;
        let c = admissible_real_constant(k, 0.1);
        let start = Instant::now();
        let trip = checks::scattering_round_trip(k, c, 30.0);
        let ms = start.elapsed().as_secs_f64() * 1e3;
        match trip {
            Ok(trip) => {
                let nearest = trip.zeros.iter().map(|z| (z - k).norm()).fold(f64::INFINITY, f64::min);
                out.push(
                    VerificationReport::new("scattering: seeded zero of s11 near k = 1.3", nearest, 1e-2, ms)
                        .with_detail(format!("{} zero(s)", trip.zeros.len())),
                );
                out.push(VerificationReport::new("scattering: seeded residue constant (relative)", trip.c_relative_error, 0.05, ms));
                out.push(VerificationReport::new("scattering: round trip runtime (s)", ms / 1e3, 60.0, ms));
            }
            Err(e) => out.push(VerificationReport::errored("scattering: seeded round trip", 1e-2, ms, e)),
        }
    }
    out
}

pub fn asymptotic_reports(seed: u64, fault: Option<Fault>) -> Vec<VerificationReport> {
    let mut out = checks::delta_suite(2.0);
    out.push(checks::hat_delta_symmetry(seed, 20));
    out.push(checks::script_p_symmetries());
    let xs: Vec<f64> = (0..101).map(|j| -10.0 + 0.2 * j as f64).collect();
    out.extend(checks::msol_suite(seed, &xs, &[0.0, 1.0, 2.0], 10));
    out.push(checks::radiation_equivalence(&[1.5, 2.0, 3.0], &[10.0, 100.0, 1000.0]));
    let qs = model_q_values();
    out.push(checks::model_constants(&qs, fault == Some(Fault::BetaIdentity)));
    out.push(checks::model_modulus(&qs));
    out.push(checks::positivity_preservation());
    out.push(checks::routes_agree());
    let spec = checks::reduction_spectrum();
    out.push(crate::report::timed("near soliton: reduced vs full multi-soliton", 1e-6, || {
        checks::reduction_defect(&spec, 50.0, 10.0, 21).map(|d| (d, "t = 50, |x - zeta0 t| <= 10".to_string()))
    }));
    out.push(crate::report::timed("near soliton: x0 without reflection is the bare x0", 1e-12, || {
        checks::phase_shift_defect(&spec, 50.0).map(|d| (d, String::new()))
    }));
    out.push(checks::trivial_limits());
    out
}

pub fn run_invariant_suite(config: &SuiteConfig) -> SuiteOutcome {
    let start = Instant::now();
    let mut reports = spectral_reports(config.seed);
    reports.extend(soliton_reports());
    reports.extend(scattering_reports(config.quick));
    reports.extend(asymptotic_reports(config.seed, config.fault));
    reports.push(checks::csv_round_trip(config.seed, 2000));
    SuiteOutcome { reports, strict: config.strict, runtime_ms: start.elapsed().as_secs_f64() * 1e3 }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fault_injection_is_detected() {
        let clean = checks::model_constants(&model_q_values(), false);
        let faulty = checks::model_constants(&model_q_values(), true);
        assert!(clean.passed, "{clean}");
        assert!(!faulty.passed && !faulty.known_deviation);
    }

    #[test]
    fn deviations_only_fail_strict_runs() {
        let dev = VerificationReport::new("x", 1.0, 0.1, 0.0).known_deviation();
        let mut outcome = SuiteOutcome { reports: vec![dev], strict: false, runtime_ms: 0.0 };
        assert!(outcome.passed());
        outcome.strict = true;
        assert!(!outcome.passed());
    }
}

//! Reflection coefficients tabulated on an arc of the unit circle.
//!
//! Values are sampled at first-kind Chebyshev nodes in the angle and stored
//! together with their Chebyshev interpolants, so `ln(1 + r1 r2)` and its angular
//! derivative are available at any angle of the arc.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_6};

use num_complex::Complex64;

use crate::error::{CoreError, Result};
use crate::numeric::chebyshev::{chebyshev_nodes, ChebSeries};
use crate::numeric::quadrature::{uniform_panels, GaussLegendre};
use crate::scattering::data::InitialData;
use crate::scattering::eigen::{map_k_grid, reflection_coefficients, EXCLUSION_RADIUS, VANDERMONDE_FLOOR};
use crate::spectral::{distance_to_sixth_roots, r_tilde, SpectralPoint};

pub const MIN_NODES: usize = 8;

/// `r1(phi) = a s^2 exp(-((phi - center)/width)^2) exp(i (phase0 + phase_slope phi))`
/// with `s = (phi - pi/2)/(pi/6)`; `r2` follows from the conjugation symmetry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianBump {
    pub amplitude: f64,
    pub center: f64,
    pub width: f64,
    pub phase0: f64,
    pub phase_slope: f64,
}

impl Default for GaussianBump {
    fn default() -> Self {
        Self { amplitude: 0.6, center: 1.85, width: 0.08, phase0: 0.3, phase_slope: 0.7 }
    }
}

impl GaussianBump {
    pub fn r1(&self, phi: f64) -> Complex64 {
        let s = (phi - FRAC_PI_2) / FRAC_PI_6;
        let g = (-((phi - self.center) / self.width).powi(2)).exp();
        Complex64::from_polar(self.amplitude * s * s * g, self.phase0 + self.phase_slope * phi)
    }

    /// `r2(k) = r~(k) conj(r1(1/conj k))`, and `1/conj k = k` on the circle.
    pub fn r2(&self, phi: f64) -> Complex64 {
        r_tilde(Complex64::from_polar(1.0, phi)) * self.r1(phi).conj()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SyntheticProfile {
    Zero,
    Bump(GaussianBump),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReflectionTable {
    /// Angular interval `[start, end]` covered by the nodes.
    pub arc: (f64, f64),
    pub arc_nodes: Vec<f64>,
    pub r1_values: Vec<Complex64>,
    pub r2_values: Vec<Complex64>,
    /// `d/dphi ln(1 + r1 r2)` at each node.
    pub dlog_values: Vec<Complex64>,
    pub zero_flag: bool,
    r1_series: ChebSeries,
    r2_series: ChebSeries,
    log_series: ChebSeries,
    dlog_series: ChebSeries,
}

fn check_arc(arc: (f64, f64), n: usize) -> Result<()> {
    if !(arc.0 < arc.1) || !arc.0.is_finite() || !arc.1.is_finite() {
        return Err(CoreError::InvalidTable(format!("arc [{}, {}] is empty", arc.0, arc.1)));
    }
    if n < MIN_NODES {
        return Err(CoreError::InvalidTable(format!("{n} nodes requested, at least {MIN_NODES} needed")));
    }
    Ok(())
}

fn check_nodes(nodes: &[f64], exclusion: f64) -> Result<()> {
    for &phi in nodes {
        if distance_to_sixth_roots(Complex64::from_polar(1.0, phi)) < exclusion {
            return Err(CoreError::NodePlacement { angle: phi });
        }
    }
    Ok(())
}

impl ReflectionTable {
    /// Builds a table from values at `chebyshev_nodes(arc.0, arc.1, n)`.
    pub fn from_node_values(arc: (f64, f64), r1: Vec<Complex64>, r2: Vec<Complex64>) -> Result<Self> {
        let n = r1.len();
        check_arc(arc, n)?;
        if r2.len() != n {
            return Err(CoreError::InvalidTable("r1 and r2 have different lengths".into()));
        }
        let nodes = chebyshev_nodes(arc.0, arc.1, n);
        let zero_flag = r1.iter().chain(&r2).all(|v| *v == Complex64::new(0.0, 0.0));
        let logs: Vec<Complex64> = r1.iter().zip(&r2).map(|(a, b)| (1.0 + a * b).ln()).collect();
        let log_series = ChebSeries::from_samples(arc.0, arc.1, &logs);
        let dlog_series = log_series.derivative();
        let dlog_values = nodes.iter().map(|&p| dlog_series.eval(p)).collect();
        Ok(Self {
            arc,
            r1_series: ChebSeries::from_samples(arc.0, arc.1, &r1),
            r2_series: ChebSeries::from_samples(arc.0, arc.1, &r2),
            log_series,
            dlog_series,
            arc_nodes: nodes,
            r1_values: r1,
            r2_values: r2,
            dlog_values,
            zero_flag,
        })
    }

    pub fn zero(arc: (f64, f64), n: usize) -> Result<Self> {
        Self::synthetic(SyntheticProfile::Zero, arc, n)
    }

    pub fn synthetic(profile: SyntheticProfile, arc: (f64, f64), n: usize) -> Result<Self> {
        check_arc(arc, n)?;
        let nodes = chebyshev_nodes(arc.0, arc.1, n);
        check_nodes(&nodes, VANDERMONDE_FLOOR)?;
        let (r1, r2) = match profile {
            SyntheticProfile::Zero => (vec![Complex64::new(0.0, 0.0); n], vec![Complex64::new(0.0, 0.0); n]),
            SyntheticProfile::Bump(b) => (nodes.iter().map(|&p| b.r1(p)).collect(), nodes.iter().map(|&p| b.r2(p)).collect()),
        };
        Self::from_node_values(arc, r1, r2)
    }

    /// Table computed from initial data by direct scattering at every node.
    pub fn from_data(data: &InitialData, arc: (f64, f64), n: usize) -> Result<Self> {
        check_arc(arc, n)?;
        let nodes = chebyshev_nodes(arc.0, arc.1, n);
        check_nodes(&nodes, EXCLUSION_RADIUS)?;
        let ks: Vec<Complex64> = nodes.iter().map(|&p| Complex64::from_polar(1.0, p)).collect();
        let values = map_k_grid(&ks, |k| reflection_coefficients(data, SpectralPoint::new(k)?));
        let mut r1 = Vec::with_capacity(n);
        let mut r2 = Vec::with_capacity(n);
        for v in values {
            let (a, b) = v?;
            r1.push(a);
            r2.push(b);
        }
        let mut table = Self::from_node_values(arc, r1, r2)?;
        table.zero_flag = data.is_zero();
        Ok(table)
    }

    pub fn len(&self) -> usize {
        self.arc_nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arc_nodes.is_empty()
    }

    pub fn contains(&self, phi: f64) -> bool {
        self.arc.0 <= phi && phi <= self.arc.1
    }

    /// Interpolated `r1` at angle `phi`; extrapolates outside the arc.
    pub fn r1(&self, phi: f64) -> Complex64 {
        if self.zero_flag {
            return Complex64::new(0.0, 0.0);
        }
        self.r1_series.eval(phi)
    }

    pub fn r2(&self, phi: f64) -> Complex64 {
        if self.zero_flag {
            return Complex64::new(0.0, 0.0);
        }
        self.r2_series.eval(phi)
    }

    /// `ln(1 + r1 r2)` at angle `phi`.
    pub fn log_one_plus(&self, phi: f64) -> Complex64 {
        if self.zero_flag {
            return Complex64::new(0.0, 0.0);
        }
        self.log_series.eval(phi)
    }

    /// `d/dphi ln(1 + r1 r2)` at angle `phi`.
    pub fn dlog(&self, phi: f64) -> Complex64 {
        if self.zero_flag {
            return Complex64::new(0.0, 0.0);
        }
        self.dlog_series.eval(phi)
    }

    /// Largest `|r2 - r~ conj(r1)|` over the nodes.
    pub fn symmetry_defect(&self) -> f64 {
        self.arc_nodes
            .iter()
            .zip(self.r1_values.iter().zip(&self.r2_values))
            .map(|(&p, (a, b))| (b - r_tilde(Complex64::from_polar(1.0, p)) * a.conj()).norm())
            .fold(0.0, f64::max)
    }

    /// Smallest real part of `1 + r1 r2` over nodes with angle in `[lo, hi]`
    /// together with the largest imaginary part there.
    pub fn one_plus_product_range(&self, lo: f64, hi: f64) -> (f64, f64) {
        let mut min_re = f64::INFINITY;
        let mut max_im: f64 = 0.0;
        for ((&p, a), b) in self.arc_nodes.iter().zip(&self.r1_values).zip(&self.r2_values) {
            if p >= lo && p <= hi {
                let v = 1.0 + a * b;
                min_re = min_re.min(v.re);
                max_im = max_im.max(v.im.abs());
            }
        }
        (min_re, max_im)
    }

    /// `|int dlog - (log(end) - log(start))|` with Gauss-Legendre quadrature.
    pub fn fundamental_theorem_defect(&self) -> f64 {
        let gl = GaussLegendre::new(24);
        let integral: Complex64 = uniform_panels(self.arc.0, self.arc.1, 16)
            .into_iter()
            .map(|(a, b)| gl.mapped(a, b).map(|(x, w)| self.dlog(x) * w).sum::<Complex64>())
            .sum();
        (integral - (self.log_one_plus(self.arc.1) - self.log_one_plus(self.arc.0))).norm()
    }

    /// Magnitude of the trailing Chebyshev coefficients of `ln(1 + r1 r2)`.
    pub fn resolution_indicator(&self) -> f64 {
        self.log_series.tail_magnitude()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const ARC: (f64, f64) = (FRAC_PI_2, 2.0 * PI / 3.0);

    #[test]
    fn zero_profile_is_flagged() {
        let t = ReflectionTable::zero(ARC, 16).unwrap();
        assert!(t.zero_flag);
        assert!(t.r1_values.iter().chain(&t.r2_values).chain(&t.dlog_values).all(|v| v.norm() == 0.0));
        assert_eq!(t.log_one_plus(1.9), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn bump_profile_keeps_the_logarithm_real_and_positive() {
        let t = ReflectionTable::synthetic(SyntheticProfile::Bump(GaussianBump::default()), ARC, 96).unwrap();
        assert!(!t.zero_flag);
        assert!(t.symmetry_defect() < 1e-15);
        let (min_re, max_im) = t.one_plus_product_range(ARC.0, ARC.1);
        assert!(min_re > 1.0 - 1e-15, "min Re(1 + r1 r2) = {min_re}");
        assert!(max_im < 1e-15);
        assert!(t.fundamental_theorem_defect() < 1e-8);
        assert!(t.resolution_indicator() < 1e-12);
        let phi = 1.87;
        let b = GaussianBump::default();
        assert!((t.r1(phi) - b.r1(phi)).norm() < 1e-12);
        assert!((t.log_one_plus(phi) - (1.0 + b.r1(phi) * b.r2(phi)).ln()).norm() < 1e-12);
    }

    #[test]
    fn bad_arcs_and_node_counts_are_rejected() {
        assert!(ReflectionTable::zero((2.0, 1.0), 16).is_err());
        assert!(ReflectionTable::zero(ARC, 4).is_err());
        let data = InitialData::gaussian(0.2, 0.0, 0.0, 1.0, 6.0).unwrap();
        let err = ReflectionTable::from_data(&data, ARC, 16).unwrap_err();
        assert!(matches!(err, CoreError::NodePlacement { .. }));
    }

    #[test]
    fn data_table_satisfies_the_conjugation_symmetry() {
        let data = InitialData::gaussian(0.3, 0.1, 0.0, 1.0, 8.0).unwrap();
        let t = ReflectionTable::from_data(&data, (FRAC_PI_2, 2.0 * PI / 3.0 - 0.02), 16).unwrap();
        assert!(t.symmetry_defect() < 1e-6, "{}", t.symmetry_defect());
        let (min_re, _) = t.one_plus_product_range(FRAC_PI_2, 2.0);
        assert!(min_re > 1.0);
    }
}

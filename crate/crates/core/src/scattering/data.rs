//! Compactly supported initial data `(u0, u1)` and the derived `v0 = int u1`.

use crate::error::{CoreError, Result};
use crate::numeric::quadrature::{uniform_panels, GaussLegendre};
use crate::numeric::spline::CubicSpline;
use crate::soliton::OneSolitonParameters;
use num_complex::Complex64;

/// Default width of the smooth cutoff that brings data to zero at the support radius.
pub const DEFAULT_TAPER_WIDTH: f64 = 5.0;

/// Values of the data needed by the Lax generator at one point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DataSample {
    pub u0: f64,
    pub u0x: f64,
    pub v0: f64,
}

#[derive(Debug, Clone)]
pub enum Profile {
    /// `u0 = amplitude g`, `v0 = v_amplitude g` with `g = exp(-((x - center)/width)^2)`.
    Gaussian { amplitude: f64, v_amplitude: f64, center: f64, width: f64 },
    /// Cubic-spline interpolation of sampled `u0` and `u1`.
    Tabulated { u0: CubicSpline, u1: CubicSpline },
    /// One-soliton profile at `t = 0`: `u0 = A sech^2(kappa (x - x0))`, `u1 = -velocity u0'`.
    SeededSoliton { params: OneSolitonParameters },
}

#[derive(Debug, Clone)]
pub struct InitialData {
    pub profile: Profile,
    pub support_radius: f64,
    /// Width of the cutoff applied to analytic profiles; tabulated data is not tapered.
    pub taper_width: f64,
}

/// Smooth step: 0 for `s <= 0`, 1 for `s >= 1`, `C^inf` in between.
fn smooth_step(s: f64) -> (f64, f64) {
    if s <= 0.0 {
        return (0.0, 0.0);
    }
    if s >= 1.0 {
        return (1.0, 0.0);
    }
    let f = |u: f64| (-1.0 / u).exp();
    let fp = |u: f64| (-1.0 / u).exp() / (u * u);
    let (a, b) = (f(s), f(1.0 - s));
    let (da, db) = (fp(s), -fp(1.0 - s));
    let sum = a + b;
    (a / sum, (da * sum - a * (da + db)) / (sum * sum))
}

impl InitialData {
    pub fn gaussian(amplitude: f64, v_amplitude: f64, center: f64, width: f64, support_radius: f64) -> Result<Self> {
        if !(width > 0.0) || !(support_radius > 0.0) {
            return Err(CoreError::InvalidData("width and support radius must be positive".into()));
        }
        Ok(Self {
            profile: Profile::Gaussian { amplitude, v_amplitude, center, width },
            support_radius,
            taper_width: DEFAULT_TAPER_WIDTH.min(support_radius / 2.0),
        })
    }

    /// Truncated one-soliton with real pole `k` and residue constant `c`.
    pub fn seeded_soliton(k: f64, c: Complex64, support_radius: f64) -> Result<Self> {
        let params = OneSolitonParameters::new(k, c)?;
        if !(support_radius > 0.0) {
            return Err(CoreError::InvalidData("support radius must be positive".into()));
        }
        Ok(Self {
            profile: Profile::SeededSoliton { params },
            support_radius,
            taper_width: DEFAULT_TAPER_WIDTH.min(support_radius / 2.0),
        })
    }

    /// Data from samples `(x, u0, u1)` with strictly increasing `x`.
    pub fn tabulated(xs: &[f64], u0: &[f64], u1: &[f64]) -> Result<Self> {
        let s0 = CubicSpline::new(xs, u0)
            .ok_or_else(|| CoreError::InvalidData("need >= 2 strictly increasing x nodes with matching u0".into()))?;
        let s1 = CubicSpline::new(xs, u1)
            .ok_or_else(|| CoreError::InvalidData("u1 column does not match the x nodes".into()))?;
        let support_radius = xs[0].abs().max(xs[xs.len() - 1].abs());
        Ok(Self { profile: Profile::Tabulated { u0: s0, u1: s1 }, support_radius, taper_width: 0.0 })
    }

    pub fn zero(support_radius: f64) -> Self {
        Self {
            profile: Profile::Gaussian { amplitude: 0.0, v_amplitude: 0.0, center: 0.0, width: 1.0 },
            support_radius,
            taper_width: 0.0,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.profile, Profile::Gaussian { amplitude, v_amplitude, .. } if amplitude == 0.0 && v_amplitude == 0.0)
    }

    fn taper(&self, x: f64) -> (f64, f64) {
        if self.taper_width <= 0.0 {
            return if x.abs() <= self.support_radius { (1.0, 0.0) } else { (0.0, 0.0) };
        }
        let (v, d) = smooth_step((self.support_radius - x.abs()) / self.taper_width);
        (v, -x.signum() * d / self.taper_width)
    }

    pub fn sample(&self, x: f64) -> DataSample {
        if x.abs() > self.support_radius {
            return DataSample::default();
        }
        match &self.profile {
            Profile::Gaussian { amplitude, v_amplitude, center, width } => {
                let (chi, dchi) = self.taper(x);
                let s = (x - center) / width;
                let g = (-s * s).exp();
                let dg = -2.0 * s / width * g;
                DataSample {
                    u0: amplitude * chi * g,
                    u0x: amplitude * (dchi * g + chi * dg),
                    v0: v_amplitude * chi * g,
                }
            }
            Profile::Tabulated { u0, u1 } => {
                let (v, d) = u0.eval_with_derivative(x);
                DataSample { u0: v, u0x: d, v0: u1.integral_to(x) }
            }
            Profile::SeededSoliton { params } => {
                let (chi, dchi) = self.taper(x);
                let arg = params.kappa * (x - params.x0);
                let sech2 = 1.0 / arg.cosh().powi(2);
                let u = params.amplitude * sech2;
                let du = -2.0 * params.kappa * params.amplitude * sech2 * arg.tanh();
                let u0 = chi * u;
                DataSample { u0, u0x: dchi * u + chi * du, v0: -params.velocity * u0 }
            }
        }
    }

    /// `u1(x) = v0'(x)`.
    pub fn u1(&self, x: f64) -> f64 {
        if x.abs() > self.support_radius {
            return 0.0;
        }
        match &self.profile {
            Profile::Gaussian { v_amplitude, center, width, .. } => {
                let (chi, dchi) = self.taper(x);
                let s = (x - center) / width;
                let g = (-s * s).exp();
                v_amplitude * (dchi * g + chi * (-2.0 * s / width * g))
            }
            Profile::Tabulated { u1, .. } => u1.eval_with_derivative(x).0,
            Profile::SeededSoliton { params } => -params.velocity * self.sample(x).u0x,
        }
    }

    /// `int u1 dx` over the support by Gauss-Legendre quadrature.
    pub fn mass_of_u1(&self) -> f64 {
        let gl = GaussLegendre::new(20);
        let r = self.support_radius;
        uniform_panels(-r, r, 200)
            .into_iter()
            .map(|(a, b)| gl.mapped(a, b).map(|(x, w)| w * self.u1(x)).sum::<f64>())
            .sum()
    }

    /// `|v0|` just inside the right edge of the support.
    pub fn v0_tail(&self) -> f64 {
        self.sample(self.support_radius).v0.abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::admissible_real_constant;

    #[test]
    fn smooth_step_is_monotone_with_matching_derivative() {
        let mut prev = 0.0;
        for i in 1..100 {
            let s = i as f64 / 100.0;
            let (v, d) = smooth_step(s);
            assert!(v >= prev);
            prev = v;
            let h = 1e-6;
            let fd = (smooth_step(s + h).0 - smooth_step(s - h).0) / (2.0 * h);
            assert!((fd - d).abs() < 1e-6);
        }
    }

    #[test]
    fn gaussian_derivative_matches_difference_quotient() {
        let d = InitialData::gaussian(0.3, 0.1, 0.5, 1.2, 8.0).unwrap();
        for &x in &[-5.5, -0.2, 1.0, 6.9] {
            let h = 1e-6;
            let fd = (d.sample(x + h).u0 - d.sample(x - h).u0) / (2.0 * h);
            assert!((fd - d.sample(x).u0x).abs() < 1e-8);
            let fv = (d.sample(x + h).v0 - d.sample(x - h).v0) / (2.0 * h);
            assert!((fv - d.u1(x)).abs() < 1e-8);
        }
        assert!(d.mass_of_u1().abs() < 1e-12);
        assert_eq!(d.sample(8.5), DataSample::default());
    }

    #[test]
    fn seeded_soliton_is_centered_at_its_shift() {
        let k = 1.3;
        let d = InitialData::seeded_soliton(k, admissible_real_constant(k, 0.1), 30.0).unwrap();
        let Profile::SeededSoliton { params } = &d.profile else { unreachable!() };
        assert!((params.x0 + 7.11).abs() < 0.01, "x0 = {}", params.x0);
        assert!((d.sample(params.x0).u0 - params.amplitude).abs() < 1e-12);
        assert!(d.mass_of_u1().abs() < 1e-12);
    }

    #[test]
    fn tabulated_data_integrates_u1() {
        let xs: Vec<f64> = (0..=400).map(|i| -10.0 + 0.05 * i as f64).collect();
        let u0: Vec<f64> = xs.iter().map(|x| (-x * x).exp()).collect();
        let u1: Vec<f64> = xs.iter().map(|x| -2.0 * x * (-x * x).exp()).collect();
        let d = InitialData::tabulated(&xs, &u0, &u1).unwrap();
        assert!((d.sample(0.5).v0 - (-0.25f64).exp()).abs() < 1e-5);
        assert!(d.mass_of_u1().abs() < 1e-6);
        assert!(InitialData::tabulated(&[0.0, 0.0], &[1.0, 1.0], &[0.0, 0.0]).is_err());
    }
}

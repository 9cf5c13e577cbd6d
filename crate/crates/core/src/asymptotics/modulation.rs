//! Modulation data for one ray `x = zeta t`: the scalar factor `delta` carried
//! by the arc from `i` to the saddle `k1`, the diagonal `Delta-hat`, the
//! soliton product `P`, the exponent `nu` and the phase `arg d0`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{CoreError, Result};
use crate::numeric::quadrature::{graded_panels, uniform_panels, GaussLegendre};
use crate::scattering::table::ReflectionTable;
use crate::spectral::{phi, saddle_points, SaddleSet, OMEGA, OMEGA2};
use crate::spectrum::SolitonSpectrum;

/// `delta` is not evaluated closer than this to the integration arc.
pub const CONTOUR_GUARD: f64 = 1e-6;
/// Entries of `Delta-hat` smaller than this in modulus are rejected.
pub const HAT_DELTA_FLOOR: f64 = 1e-12;

/// Gauss-Legendre layout for the `delta` integral over the arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArcQuadrature {
    pub panels: usize,
    pub order: usize,
}

impl Default for ArcQuadrature {
    fn default() -> Self {
        Self { panels: 8, order: 24 }
    }
}

impl ArcQuadrature {
    pub fn doubled(self) -> Self {
        Self { panels: 2 * self.panels, order: self.order }
    }
}

#[derive(Debug, Clone)]
pub struct ModulationContext {
    pub zeta: f64,
    pub saddle: SaddleSet,
    pub k1: Complex64,
    /// `arg k1` in `(pi/2, 2 pi/3)`.
    pub theta1: f64,
    /// `-ln(1 + r1(k1) r2(k1)) / (2 pi)`, non-positive.
    pub nu: f64,
    /// `arg d0 + nu ln t`, the part of the phase independent of `t`.
    pub arg_d0_static: f64,
    pub table: Arc<ReflectionTable>,
    pub spectrum: SolitonSpectrum,
    /// Arc points `s_j` and weights `w_j ln(1 + r1 r2)(s_j) ds/dphi`.
    arc_points: Vec<(Complex64, Complex64)>,
}

fn circle(phi: f64) -> Complex64 {
    Complex64::from_polar(1.0, phi)
}

impl ModulationContext {
    pub fn new(zeta: f64, table: Arc<ReflectionTable>, spectrum: &SolitonSpectrum) -> Result<Self> {
        Self::with_quadrature(zeta, table, spectrum, ArcQuadrature::default())
    }

    pub fn with_quadrature(
        zeta: f64,
        table: Arc<ReflectionTable>,
        spectrum: &SolitonSpectrum,
        quad: ArcQuadrature,
    ) -> Result<Self> {
        let saddle = saddle_points(zeta)?;
        let theta1 = saddle.arg_k1();
        let slack = 1e-9;
        if !table.zero_flag && (table.arc.0 > FRAC_PI_2 + slack || table.arc.1 < theta1 - slack) {
            return Err(CoreError::InvalidTable(format!(
                "table arc [{}, {}] does not cover [pi/2, arg k1 = {theta1}]",
                table.arc.0, table.arc.1
            )));
        }
        let mut ctx = Self {
            zeta,
            saddle,
            k1: saddle.k1,
            theta1,
            nu: 0.0,
            arg_d0_static: 0.0,
            spectrum: spectrum.clone(),
            arc_points: Vec::new(),
            table,
        };
        if ctx.table.zero_flag {
            return Ok(ctx);
        }
        ctx.nu = -ctx.table.log_one_plus(theta1).re / TAU;
        let gl = GaussLegendre::new(quad.order);
        for (a, b) in uniform_panels(FRAC_PI_2, theta1, quad.panels) {
            for (p, w) in gl.mapped(a, b) {
                let s = circle(p);
                ctx.arc_points.push((s, ctx.table.log_one_plus(p) * Complex64::i() * s * w));
            }
        }
        ctx.arg_d0_static = ctx.arg_d0_static_part();
        Ok(ctx)
    }

    pub fn is_reflectionless(&self) -> bool {
        self.table.zero_flag
    }

    /// Distance from `k` to the closed arc `{e^{i phi}, pi/2 <= phi <= theta1}`.
    pub fn distance_to_arc(&self, k: Complex64) -> f64 {
        let a = k.arg();
        if (FRAC_PI_2..=self.theta1).contains(&a) {
            return (k.norm() - 1.0).abs();
        }
        (k - Complex64::i()).norm().min((k - self.k1).norm())
    }

    /// `delta(zeta, k) = exp(-(2 pi i)^{-1} int_i^{k1} ln(1 + r1 r2)(s) / (s - k) ds)`.
    pub fn delta(&self, k: Complex64) -> Result<Complex64> {
        if self.is_reflectionless() {
            return Ok(Complex64::new(1.0, 0.0));
        }
        let distance = self.distance_to_arc(k);
        if distance < CONTOUR_GUARD {
            return Err(CoreError::NearContour { distance });
        }
        let sum: Complex64 = self.arc_points.iter().map(|&(s, w)| w / (s - k)).sum();
        Ok((-sum / Complex64::new(0.0, TAU)).exp())
    }

    /// `(Delta-hat_11, Delta-hat_22, Delta-hat_33)` at `k`.
    pub fn hat_delta_diag(&self, k: Complex64) -> Result<[Complex64; 3]> {
        if self.is_reflectionless() {
            let one = Complex64::new(1.0, 0.0);
            return Ok([one, one, one]);
        }
        let d33 = |q: Complex64| -> Result<Complex64> {
            Ok(self.delta(OMEGA * q)? * self.delta(1.0 / (OMEGA2 * q))?
                / (self.delta(OMEGA2 * q)? * self.delta(1.0 / (OMEGA * q))?))
        };
        let out = [d33(OMEGA * k)?, d33(OMEGA2 * k)?, d33(k)?];
        for v in out {
            if v.norm() < HAT_DELTA_FLOOR || !v.is_finite() {
                return Err(CoreError::NearZeroDenominator { what: "Delta-hat entry".into(), value: v.norm() });
            }
        }
        Ok(out)
    }

    /// Product over the poles whose exponentials grow along the ray.
    pub fn script_p(&self, k: Complex64) -> Complex64 {
        self.script_p_over(&self.spectrum, k)
    }

    /// Same product restricted to the poles of `spectrum`.
    pub fn script_p_over(&self, spectrum: &SolitonSpectrum, k: Complex64) -> Complex64 {
        let mut p = Complex64::new(1.0, 0.0);
        for b in &spectrum.breathers {
            let k0 = b.lambda;
            if phi(3, 1, self.zeta, k0).re < 0.0 {
                let kb = k0.conj();
                p *= (k - k0) * (k - 1.0 / k0) * (k - OMEGA2 * kb) * (k - OMEGA / kb)
                    / ((k - kb) * (k - 1.0 / kb) * (k - OMEGA * k0) * (k - OMEGA2 / k0));
            }
        }
        for s in &spectrum.real_solitons {
            let k0 = Complex64::new(s.k, 0.0);
            if phi(2, 1, self.zeta, k0).re < 0.0 {
                p *= (k - OMEGA2 * k0) * (k - OMEGA / k0) / ((k - OMEGA * k0) * (k - OMEGA2 / k0));
            }
        }
        p
    }

    /// `arg d0` at time `t`.
    pub fn arg_d0(&self, t: f64) -> f64 {
        self.arg_d0_static - self.nu * t.ln()
    }

    fn arg_d0_static_part(&self) -> f64 {
        let k1 = self.k1;
        let zs = self.saddle.z_star;
        let inv = 1.0 / k1;
        let head = ((1.0 / (OMEGA2 * k1) - k1) * (1.0 / (OMEGA * k1) - k1) / (3.0 * (inv - k1).powi(2) * zs * zs))
            .norm()
            .ln();
        // The log factor is singular at s = k1; grade panels toward theta1.
        let gl = GaussLegendre::new(20);
        let mut integral = 0.0;
        for (a, b) in graded_panels(FRAC_PI_2, self.theta1, 40) {
            for (p, w) in gl.mapped(a, b) {
                let s = circle(p);
                let ratio = (k1 - s).powi(2) * (1.0 / (OMEGA2 * k1) - s) * (1.0 / (OMEGA * k1) - s)
                    / ((inv - s).powi(2) * (OMEGA * k1 - s) * (OMEGA2 * k1 - s));
                integral += w * ratio.norm().ln() * self.table.dlog(p).re;
            }
        }
        self.nu * head + integral / TAU
    }

    /// `|delta|` on the unit circle away from the arc: `exp(-(4 pi)^{-1} int ln(1 + r1 r2) dphi)`.
    pub fn delta_modulus_on_circle(&self) -> f64 {
        if self.is_reflectionless() {
            return 1.0;
        }
        let gl = GaussLegendre::new(24);
        let integral: f64 = uniform_panels(FRAC_PI_2, self.theta1, 16)
            .into_iter()
            .map(|(a, b)| gl.mapped(a, b).map(|(p, w)| w * self.table.log_one_plus(p).re).sum::<f64>())
            .sum();
        (-integral / (2.0 * TAU)).exp()
    }

    /// `exp(nu arg(k1)/2 - (2 pi)^{-1} int (arg s / 2) d ln(1 + r1 r2))`, kept for
    /// comparison with [`Self::delta_modulus_on_circle`]; the two differ in general.
    pub fn delta_modulus_alternative(&self) -> f64 {
        if self.is_reflectionless() {
            return 1.0;
        }
        let gl = GaussLegendre::new(24);
        let integral: f64 = uniform_panels(FRAC_PI_2, self.theta1, 16)
            .into_iter()
            .map(|(a, b)| gl.mapped(a, b).map(|(p, w)| w * 0.5 * p * self.table.dlog(p).re).sum::<f64>())
            .sum();
        (self.nu * self.theta1 / 2.0 - integral / TAU).exp()
    }

    /// Modulated breather constant `c Delta-hat_33 / Delta-hat_11` at `lambda`.
    pub fn breather_factor(&self, lambda: Complex64) -> Result<Complex64> {
        let d = self.hat_delta_diag(lambda)?;
        Ok(d[2] / d[0])
    }

    /// Factor applied to the constant of the conjugate pole `conj(lambda)`.
    pub fn conjugate_factor(&self, lambda: Complex64) -> Result<Complex64> {
        let d = self.hat_delta_diag(lambda.conj())?;
        Ok(d[1] / d[2])
    }

    /// Modulated real-pole constant `c Delta-hat_22 / Delta-hat_11` at `k`.
    pub fn real_factor(&self, k: f64) -> Result<Complex64> {
        let d = self.hat_delta_diag(Complex64::new(k, 0.0))?;
        Ok(d[1] / d[0])
    }

    /// `P(lambda)/P(omega lambda)` over the dropped poles `others`: extra factor
    /// for a breather kept in a reduced spectrum.
    pub fn reduced_breather_factor(&self, others: &SolitonSpectrum, lambda: Complex64) -> Complex64 {
        self.script_p_over(others, lambda) / self.script_p_over(others, OMEGA * lambda)
    }

    /// `P(omega^2 k)/P(omega k)` over the dropped poles `others`: extra factor for
    /// a real pole kept in a reduced spectrum.
    pub fn reduced_real_factor(&self, others: &SolitonSpectrum, k: f64) -> Complex64 {
        let k = Complex64::new(k, 0.0);
        self.script_p_over(others, OMEGA2 * k) / self.script_p_over(others, OMEGA * k)
    }
}

/// Standard deviation of `|delta|` over sample angles on the circle, which all
/// must be at least `margin` away from the arc.
pub fn delta_modulus_spread(ctx: &ModulationContext, angles: &[f64]) -> Result<(f64, f64)> {
    let values: Vec<f64> = angles.iter().map(|&a| ctx.delta(circle(a)).map(|d| d.norm())).collect::<Result<_>>()?;
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / values.len() as f64;
    Ok((mean, var.sqrt()))
}

/// Angles spread over the unit circle outside `[pi/2, theta1]`.
pub fn off_arc_angles(theta1: f64, count: usize) -> Vec<f64> {
    let start = theta1 + 0.05;
    let end = FRAC_PI_2 + TAU - 0.05;
    (0..count).map(|j| start + (end - start) * j as f64 / (count - 1).max(1) as f64).map(|a| if a > PI { a - TAU } else { a }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scattering::table::{GaussianBump, SyntheticProfile};
    use crate::spectrum::admissible_real_constant;

    fn bump_table() -> Arc<ReflectionTable> {
        Arc::new(
            ReflectionTable::synthetic(SyntheticProfile::Bump(GaussianBump::default()), (FRAC_PI_2, 2.0 * PI / 3.0), 96)
                .unwrap(),
        )
    }

    #[test]
    fn zero_reflection_is_trivial() {
        let table = Arc::new(ReflectionTable::zero((FRAC_PI_2, 2.0 * PI / 3.0), 16).unwrap());
        let ctx = ModulationContext::new(2.0, table, &SolitonSpectrum::empty()).unwrap();
        assert_eq!(ctx.nu, 0.0);
        assert_eq!(ctx.arg_d0(100.0), 0.0);
        assert_eq!(ctx.delta(Complex64::new(0.3, 0.2)).unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(ctx.hat_delta_diag(Complex64::new(1.3, 0.0)).unwrap(), [Complex64::new(1.0, 0.0); 3]);
        assert_eq!(ctx.script_p(Complex64::new(0.5, 0.5)), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn delta_modulus_is_constant_off_the_arc() {
        let ctx = ModulationContext::new(2.0, bump_table(), &SolitonSpectrum::empty()).unwrap();
        assert!(ctx.nu < 0.0);
        let (mean, spread) = delta_modulus_spread(&ctx, &off_arc_angles(ctx.theta1, 7)).unwrap();
        assert!(spread < 1e-8, "spread {spread:e}");
        assert!((mean - ctx.delta_modulus_on_circle()).abs() < 1e-8);
    }

    #[test]
    fn delta_quadrature_converges() {
        let spec = SolitonSpectrum::empty();
        let a = ModulationContext::new(2.0, bump_table(), &spec).unwrap();
        let b = ModulationContext::with_quadrature(2.0, bump_table(), &spec, ArcQuadrature::default().doubled()).unwrap();
        for k in [Complex64::new(0.2, 0.3), Complex64::new(-1.1, 0.8), circle(0.3) * 1.05] {
            assert!((a.delta(k).unwrap() - b.delta(k).unwrap()).norm() < 1e-10);
        }
    }

    #[test]
    fn delta_near_the_arc_is_rejected() {
        let ctx = ModulationContext::new(2.0, bump_table(), &SolitonSpectrum::empty()).unwrap();
        let on = circle(0.5 * (FRAC_PI_2 + ctx.theta1));
        assert!(matches!(ctx.delta(on), Err(CoreError::NearContour { .. })));
    }

    #[test]
    fn hat_delta_conjugation_symmetries() {
        let ctx = ModulationContext::new(1.7, bump_table(), &SolitonSpectrum::empty()).unwrap();
        for k in [Complex64::new(1.3, 0.2), Complex64::new(-0.4, 0.7), Complex64::new(2.1, -0.9)] {
            let d = ctx.hat_delta_diag(k).unwrap();
            let c = ctx.hat_delta_diag(k.conj()).unwrap();
            assert!(((d[0] / d[2]).conj() - c[2] / c[1]).norm() < 1e-9);
            assert!(((d[0] / d[1]).conj() - c[0] / c[1]).norm() < 1e-9);
        }
    }

    #[test]
    fn script_p_symmetries() {
        let spec = SolitonSpectrum::empty().with_soliton(4.0, admissible_real_constant(4.0, 0.1));
        let ctx = ModulationContext::new(1.5, bump_table(), &spec).unwrap();
        let k = Complex64::new(0.4, 0.9);
        let p = ctx.script_p(k);
        assert!((p - Complex64::new(1.0, 0.0)).norm() > 1e-3, "faster soliton must contribute");
        assert!((p * ctx.script_p(k.conj()).conj() - 1.0).norm() < 1e-12);
        assert!((p - ctx.script_p(1.0 / k)).norm() < 1e-12);
        let slow = ModulationContext::new(3.0, bump_table(), &spec).unwrap();
        assert_eq!(slow.script_p(k), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn uncovered_arc_is_rejected() {
        let table = Arc::new(
            ReflectionTable::synthetic(SyntheticProfile::Bump(GaussianBump::default()), (FRAC_PI_2, 1.7), 32).unwrap(),
        );
        assert!(matches!(
            ModulationContext::new(1.5, table, &SolitonSpectrum::empty()),
            Err(CoreError::InvalidTable(_))
        ));
    }
}

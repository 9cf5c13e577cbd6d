//! Soliton, radiation and leading-order terms of the `x/t > 1` asymptotics.
//!
//! All terms take the modulation context at a fixed `zeta`; the context is not
//! re-evaluated at `x/t` when `x` or `t` vary.

use std::f64::consts::{FRAC_PI_4, PI, TAU};
use std::sync::Arc;

use num_complex::Complex64;

use crate::asymptotics::modulation::ModulationContext;
use crate::asymptotics::msol::{field_from_msol, MSolSystem, ModulatedSpectrum};
use crate::error::{CoreError, Result};
use crate::numeric::gamma::gamma;
use crate::numeric::linalg::m3_inverse;
use crate::scattering::table::ReflectionTable;
use crate::soliton::{real_sample, u_multisoliton, FieldSample, OneSolitonParameters, Provenance};
use crate::spectral::{phi, OMEGA, OMEGA2, SQRT_3};
use crate::spectrum::{velocities, SolitonSpectrum};

/// Half-width of the soliton bands excluded from the leading-wave formula.
pub const DEFAULT_EPSILON: f64 = 0.05;
/// `zeta0` must match a soliton velocity to this tolerance.
pub const DIRECTION_TOLERANCE: f64 = 1e-8;
/// Step of the Richardson derivative in the residue-system route.
pub const MSOL_DERIVATIVE_STEP: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SolitonRoute {
    /// Determinant formula with modulated constants.
    #[default]
    Determinant,
    /// `-i sqrt(3) d/dx` of the row-sum coefficient of `M_sol`.
    ResidueSystem,
}

/// Modulated multi-soliton `u_sol(x, t)`.
pub fn u_sol(x: f64, t: f64, spec: &SolitonSpectrum, ctx: &ModulationContext, route: SolitonRoute) -> Result<FieldSample> {
    let modulated = ModulatedSpectrum::modulated(spec, ctx)?;
    let value = match route {
        SolitonRoute::Determinant => {
            let s = u_multisoliton(x, t, &modulated.as_spectrum())?;
            Complex64::new(s.u, s.imag)
        }
        SolitonRoute::ResidueSystem => field_from_msol(x, t, &modulated, MSOL_DERIVATIVE_STEP)?,
    };
    Ok(real_sample(x, t, value, Provenance::ModulatedSoliton))
}

/// `(r1(k1), r2(k1))`.
fn saddle_reflection(ctx: &ModulationContext) -> (Complex64, Complex64) {
    (ctx.table.r1(ctx.theta1), ctx.table.r2(ctx.theta1))
}

/// The two terms of `u_rad` coming from the upper and lower entries of the
/// middle matrix; for real data they are complex conjugates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiationTerms {
    pub upper: Complex64,
    pub lower: Complex64,
}

impl RadiationTerms {
    pub fn value(&self) -> Complex64 {
        self.upper + self.lower
    }

    /// Amplitude of the oscillation `upper + lower`.
    pub fn envelope(&self) -> f64 {
        self.upper.norm() + self.lower.norm()
    }
}

pub fn radiation_terms(x: f64, t: f64, spec: &SolitonSpectrum, ctx: &ModulationContext) -> Result<RadiationTerms> {
    let zero = Complex64::new(0.0, 0.0);
    let nu = ctx.nu;
    if ctx.is_reflectionless() || nu == 0.0 {
        return Ok(RadiationTerms { upper: zero, lower: zero });
    }
    let (r1, r2) = saddle_reflection(ctx);
    if r1.norm() == 0.0 || r2.norm() == 0.0 {
        return Err(CoreError::InconsistentTable { nu });
    }
    let k1 = ctx.k1;
    let i = Complex64::i();
    let phase21 = phi(2, 1, ctx.zeta, k1) * t;
    let arg_d0 = ctx.arg_d0(t);
    let upper = Complex64::from_polar(1.0, FRAC_PI_4) * (-phase21).exp()
        / (Complex64::from_polar(1.0, arg_d0) * r2 * gamma(Complex64::new(0.0, nu))?);
    let lower = Complex64::from_polar(1.0, -FRAC_PI_4) * phase21.exp()
        / (Complex64::from_polar(1.0, -arg_d0) * r1 * gamma(Complex64::new(0.0, -nu))?);

    let system = MSolSystem::solve(x, t, &ModulatedSpectrum::modulated(spec, ctx)?)?;
    let m = system.matrix(k1)?;
    let m_inv = m3_inverse(&m).ok_or_else(|| CoreError::Singular("M_sol at the saddle point".into()))?;
    let w = [OMEGA2 * i / k1 - OMEGA * i * k1, OMEGA * i / k1 - OMEGA2 * i * k1, i / k1 - i * k1];
    // (1,1,1) M e_a and e_b^T M^{-1} w for the two nonzero middle entries.
    let left = |col: usize| m[0][col] + m[1][col] + m[2][col];
    let right = |row: usize| m_inv[row][0] * w[0] + m_inv[row][1] * w[1] + m_inv[row][2] * w[2];
    let prefactor = (3.0 * TAU).sqrt() * (-PI * nu / 2.0).exp() * k1.im / ctx.saddle.scale();
    Ok(RadiationTerms {
        upper: prefactor * left(0) * upper * right(1),
        lower: prefactor * left(1) * lower * right(0),
    })
}

/// Radiation coefficient `u_rad(x, t)`; the radiation term is `u_rad / sqrt(t)`.
pub fn u_rad(x: f64, t: f64, spec: &SolitonSpectrum, ctx: &ModulationContext) -> Result<FieldSample> {
    let terms = radiation_terms(x, t, spec, ctx)?;
    Ok(real_sample(x, t, terms.value(), Provenance::AsymptoticRadiation))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeadingWave {
    pub amplitude: f64,
    pub phase: f64,
    /// `amplitude cos(phase) / sqrt(t)`.
    pub u_leading: f64,
    /// Soliton velocity within `epsilon` of `zeta`, where the formula does not apply.
    pub nearby_soliton: Option<f64>,
}

/// Decaying oscillation `A cos(alpha) / sqrt(t)` away from soliton directions.
pub fn sector2_leading(t: f64, ctx: &ModulationContext, spec: &SolitonSpectrum, epsilon: f64) -> Result<LeadingWave> {
    let nearby_soliton =
        velocities(spec).into_iter().map(|g| g.zeta).find(|&v| (v - ctx.zeta).abs() < epsilon);
    let nu = ctx.nu;
    let scale = ctx.saddle.scale();
    let k1 = ctx.k1;
    let amplitude = 2.0 * SQRT_3 * (-nu).max(0.0).sqrt() * (-1.0 - 2.0 * (2.0 * ctx.theta1).cos()).sqrt() * k1.im / scale;
    if ctx.is_reflectionless() || nu == 0.0 {
        return Ok(LeadingWave { amplitude: 0.0, phase: 0.0, u_leading: 0.0, nearby_soliton });
    }
    let (_, r2) = saddle_reflection(ctx);
    let p_ratio = ctx.script_p(OMEGA * k1) / ctx.script_p(OMEGA2 * k1);
    let phase = 3.0 * FRAC_PI_4
        + r2.arg()
        + gamma(Complex64::new(0.0, nu))?.arg()
        + ctx.arg_d0(t)
        + p_ratio.arg()
        + t * phi(2, 1, ctx.zeta, k1).im;
    Ok(LeadingWave { amplitude, phase, u_leading: amplitude * phase.cos() / t.sqrt(), nearby_soliton })
}

/// `A sech^2` parameters of a lone real soliton in its own direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SechParameters {
    pub k: f64,
    pub amplitude: f64,
    pub velocity: f64,
    /// Phase shift from the `Delta-hat`-modulated constant alone.
    pub x0_stated: f64,
    /// Phase shift including the `P` factor of the faster poles.
    pub x0_corrected: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NearSolitonPrediction {
    /// Reduced multi-soliton plus `u_rad / sqrt(t)`.
    pub sample: FieldSample,
    pub u_reduced: f64,
    pub u_rad_over_sqrt_t: f64,
    /// Poles travelling at `zeta0` with their modulated constants.
    pub reduced: SolitonSpectrum,
    pub sech: Option<SechParameters>,
}

fn split_by_velocity(zeta0: f64, spec: &SolitonSpectrum) -> Result<(SolitonSpectrum, SolitonSpectrum)> {
    let group = velocities(spec)
        .into_iter()
        .find(|g| (g.zeta - zeta0).abs() <= DIRECTION_TOLERANCE)
        .ok_or(CoreError::NotSolitonDirection { zeta0 })?;
    let mut kept = SolitonSpectrum::empty();
    let mut others = SolitonSpectrum::empty();
    for (j, b) in spec.breathers.iter().enumerate() {
        let target = if group.breathers.contains(&j) { &mut kept } else { &mut others };
        target.breathers.push(*b);
    }
    for (j, s) in spec.real_solitons.iter().enumerate() {
        let target = if group.solitons.contains(&j) { &mut kept } else { &mut others };
        target.real_solitons.push(*s);
    }
    Ok((kept, others))
}

/// Constants of the poles in `kept`, modulated by `Delta-hat` and, if
/// `with_p`, by the `P` factors of the poles in `others`.
fn reduced_constants(
    ctx: &ModulationContext,
    kept: &SolitonSpectrum,
    others: &SolitonSpectrum,
    with_p: bool,
) -> Result<SolitonSpectrum> {
    let mut out = SolitonSpectrum::empty();
    for b in &kept.breathers {
        let mut c = b.c * ctx.breather_factor(b.lambda)?;
        if with_p {
            c *= ctx.reduced_breather_factor(others, b.lambda);
        }
        out = out.with_breather(b.lambda, c);
    }
    for s in &kept.real_solitons {
        let mut c = s.c * ctx.real_factor(s.k)?;
        if with_p {
            c *= ctx.reduced_real_factor(others, s.k);
        }
        out = out.with_soliton(s.k, c);
    }
    Ok(out)
}

/// Prediction in the direction `zeta0` of a group of solitons, with the
/// modulation evaluated at `x/t`.
pub fn near_soliton(
    zeta0: f64,
    x: f64,
    t: f64,
    spec: &SolitonSpectrum,
    table: Arc<ReflectionTable>,
) -> Result<NearSolitonPrediction> {
    let (kept, others) = split_by_velocity(zeta0, spec)?;
    let ctx = ModulationContext::new(x / t, table.clone(), spec)?;
    let reduced = reduced_constants(&ctx, &kept, &others, true)?;
    let reduced_field = u_multisoliton(x, t, &reduced)?;
    let radiation = u_rad(x, t, spec, &ctx)?;
    let u_rad_over_sqrt_t = radiation.u / t.sqrt();
    let value = Complex64::new(reduced_field.u + u_rad_over_sqrt_t, reduced_field.imag + radiation.imag / t.sqrt());

    let sech = match (kept.breathers.len(), kept.real_solitons.as_slice()) {
        (0, [only]) => {
            let own = ModulationContext::new(only.velocity(), table, spec)?;
            let stated = reduced_constants(&own, &kept, &others, false)?.real_solitons[0].c;
            let corrected = reduced_constants(&own, &kept, &others, true)?.real_solitons[0].c;
            let p_stated = OneSolitonParameters::new(only.k, stated)?;
            let p_corrected = OneSolitonParameters::new(only.k, corrected)?;
            Some(SechParameters {
                k: only.k,
                amplitude: p_stated.amplitude,
                velocity: p_stated.velocity,
                x0_stated: p_stated.x0,
                x0_corrected: p_corrected.x0,
            })
        }
        _ => None,
    };
    Ok(NearSolitonPrediction {
        sample: real_sample(x, t, value, Provenance::AsymptoticLeading),
        u_reduced: reduced_field.u,
        u_rad_over_sqrt_t,
        reduced,
        sech,
    })
}

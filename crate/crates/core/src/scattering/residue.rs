//! Residue constants `c_{k0}` at simple zeros of `s11`.
//!
//! Two independent routes are provided. The compact-support route reads the
//! constant off the scattering matrix at `k0`. The eigenfunction route fits the
//! proportionality between columns of `Y` (or the cross product `w` of `Y^A`
//! and `X^A` columns) and the first column of `X` over several `x` values, and
//! reports how well a single constant explains all of them.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{CoreError, Result};
use crate::numeric::linalg::M3;
use crate::scattering::data::InitialData;
use crate::scattering::eigen::{eigenfunction_values, scattering_columns, Anchor, Equation, Frame};
use crate::numeric::ode::OdeOptions;
use crate::spectral::SpectralPoint;

/// `|s11'(k0)|` below this makes the residue constant undefined.
pub const DERIVATIVE_FLOOR: f64 = 1e-12;
/// Zeros with `|Im k0|` below this are treated as real.
pub const REAL_AXIS_TOLERANCE: f64 = 1e-8;
/// Default bound on the relative least-squares residual of the eigenfunction route.
pub const DEFAULT_CONSISTENCY_TOLERANCE: f64 = 1e-3;

const CAUCHY_RADIUS: f64 = 0.05;
const CAUCHY_NODES: usize = 16;

/// Derivative at `k0` of `entry(k)` by the Cauchy integral on a circle.
pub fn cauchy_derivative<F>(entry: F, k0: Complex64, radius: f64, nodes: usize) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..nodes {
        let e = Complex64::from_polar(radius, TAU * (j as f64 + 0.5) / nodes as f64);
        acc += entry(k0 + e)? / e;
    }
    Ok(acc / nodes as f64)
}

fn s_entry(data: &InitialData, eq: Equation, row: usize, col: usize, k: Complex64) -> Result<Complex64> {
    let frame = Frame::new(SpectralPoint::new(k)?)?;
    Ok(scattering_columns(&frame, data, eq, &[col])?[row][col])
}

/// `s11'(k0)`.
pub fn s11_derivative(data: &InitialData, k0: Complex64) -> Result<Complex64> {
    cauchy_derivative(|k| s_entry(data, Equation::Direct, 0, 0, k), k0, CAUCHY_RADIUS, CAUCHY_NODES)
}

fn checked(value: Complex64) -> Result<Complex64> {
    if value.norm() < DERIVATIVE_FLOOR {
        return Err(CoreError::DegenerateZero { value: value.norm() });
    }
    Ok(value)
}

pub fn is_real_zero(k0: Complex64) -> bool {
    k0.im.abs() < REAL_AXIS_TOLERANCE
}

/// `-s12(k0)/s11'(k0)` for real `k0`, `-s13(k0)/s11'(k0)` otherwise.
pub fn residue_constant_compact(data: &InitialData, k0: SpectralPoint) -> Result<Complex64> {
    let k = k0.value();
    let dot = checked(s11_derivative(data, k)?)?;
    let col = if is_real_zero(k) { 1 } else { 2 };
    Ok(-s_entry(data, Equation::Direct, 0, col, k)? / dot)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidueFit {
    pub c: Complex64,
    /// `||lhs - c rhs|| / ||lhs||` over all sampled `x` and components.
    pub relative_residual: f64,
    /// Standard deviation of the per-`x` ratios divided by `|c|`.
    pub spread: f64,
    pub xs: Vec<f64>,
}

/// Sample points spread over the left two thirds of the support.
pub fn default_fit_points(data: &InitialData) -> Vec<f64> {
    let r = data.support_radius;
    vec![-r / 3.0, -r / 6.0, 0.0, r / 6.0]
}

fn cross_w(ya: &M3, xa: &M3) -> [Complex64; 3] {
    [
        ya[1][0] * xa[2][1] - ya[2][0] * xa[1][1],
        ya[2][0] * xa[0][1] - ya[0][0] * xa[2][1],
        ya[0][0] * xa[1][1] - ya[1][0] * xa[0][1],
    ]
}

/// Residue constant from the eigenfunction relations, fitted over `xs`.
pub fn residue_constant_general(
    data: &InitialData,
    k0: SpectralPoint,
    xs: &[f64],
    tolerance: f64,
) -> Result<ResidueFit> {
    let k = k0.value();
    let frame = Frame::new(k0)?;
    let opts = OdeOptions { rtol: 1e-12, atol: 1e-15, ..OdeOptions::default() };
    let x_vals = eigenfunction_values(&frame, data, Equation::Direct, Anchor::Right, xs, &opts)?;
    let real = is_real_zero(k);
    let (lhs, other): (Vec<[Complex64; 3]>, usize) = if real {
        let dot = checked(cauchy_derivative(
            |q| s_entry(data, Equation::Adjoint, 1, 1, q),
            k,
            CAUCHY_RADIUS,
            CAUCHY_NODES,
        )?)?;
        let y = eigenfunction_values(&frame, data, Equation::Direct, Anchor::Left, xs, &opts)?;
        (y.iter().map(|m| [m[0][1] / dot, m[1][1] / dot, m[2][1] / dot]).collect(), 1)
    } else {
        let dot = checked(s11_derivative(data, k)?)?;
        let ya = eigenfunction_values(&frame, data, Equation::Adjoint, Anchor::Left, xs, &opts)?;
        let xa = eigenfunction_values(&frame, data, Equation::Adjoint, Anchor::Right, xs, &opts)?;
        (ya.iter().zip(&xa).map(|(a, b)| cross_w(a, b).map(|v| v / dot)).collect(), 2)
    };
    let mut num = Complex64::new(0.0, 0.0);
    let mut den = 0.0;
    let mut rhs_all = Vec::with_capacity(xs.len());
    let mut ratios = Vec::with_capacity(xs.len());
    for ((&x, m), l) in xs.iter().zip(&x_vals).zip(&lhs) {
        let scale = ((frame.l[0] - frame.l[other]) * x).exp();
        let r = [m[0][0] * scale, m[1][0] * scale, m[2][0] * scale];
        let mut pn = Complex64::new(0.0, 0.0);
        let mut pd = 0.0;
        for i in 0..3 {
            num += r[i].conj() * l[i];
            den += r[i].norm_sqr();
            pn += r[i].conj() * l[i];
            pd += r[i].norm_sqr();
        }
        ratios.push(pn / pd);
        rhs_all.push(r);
    }
    if den == 0.0 {
        return Err(CoreError::NearZeroDenominator { what: "first column of X".into(), value: 0.0 });
    }
    let c = num / den;
    let mut err = 0.0;
    let mut norm = 0.0;
    for (l, r) in lhs.iter().zip(&rhs_all) {
        for i in 0..3 {
            err += (l[i] - c * r[i]).norm_sqr();
            norm += l[i].norm_sqr();
        }
    }
    let relative_residual = (err / norm.max(f64::MIN_POSITIVE)).sqrt();
    let mean = ratios.iter().sum::<Complex64>() / ratios.len() as f64;
    let var = ratios.iter().map(|q| (q - mean).norm_sqr()).sum::<f64>() / ratios.len() as f64;
    let spread = var.sqrt() / c.norm().max(f64::MIN_POSITIVE);
    if relative_residual > tolerance {
        return Err(CoreError::DefinitionMismatch { spread: relative_residual, tolerance });
    }
    Ok(ResidueFit { c, relative_residual, spread, xs: xs.to_vec() })
}

/// Both routes at one zero, for cross-checking.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidueComparison {
    pub k0: Complex64,
    pub compact: Complex64,
    pub general: ResidueFit,
}

impl ResidueComparison {
    pub fn relative_gap(&self) -> f64 {
        (self.compact - self.general.c).norm() / self.compact.norm()
    }
}

pub fn residue_constants(data: &InitialData, k0: SpectralPoint) -> Result<ResidueComparison> {
    let compact = residue_constant_compact(data, k0)?;
    let general =
        residue_constant_general(data, k0, &default_fit_points(data), DEFAULT_CONSISTENCY_TOLERANCE)?;
    Ok(ResidueComparison { k0: k0.value(), compact, general })
}

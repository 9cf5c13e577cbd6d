//! Jost-type eigenfunctions and the scattering matrices `s`, `s^A`.
//!
//! The Volterra equations are integrated in the interaction picture. With
//! `E(x) = diag(exp(x l_j))`, the direct solutions satisfy `X = E Z E^{-1}` where
//! `Z' = (E^{-1} U E) Z`, and the adjoint solutions `X^A = E^{-1} T E` where
//! `T' = -(E U^T E^{-1}) T`. The generator `U = P^{-1} N P` has rank one, so the
//! right-hand side costs one dot product per column.
//!
//! `Z` started at `+R` (identity) gives `X`; its value at `-R` is `s`. Started
//! at `-R` it gives `Y`. The adjoint pair works the same way.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{CoreError, Result};
use crate::numeric::linalg::{m3_det, m3_identity, m3_inverse, m3_max_abs, m3_sub, M3};
use crate::numeric::ode::{integrate, OdeOptions, OdeStats};
use crate::numeric::quadrature::{uniform_panels, GaussLegendre};
use crate::scattering::data::{DataSample, InitialData};
use crate::spectral::{distance_to_sixth_roots, l_value, SpectralPoint};

/// `P(k)` is treated as singular this close to a sixth root of unity.
pub const VANDERMONDE_FLOOR: f64 = 1e-10;
/// Reflection coefficients are not evaluated inside disks of this radius around
/// the sixth roots of unity, except at `k = +-1` where the residue ratio is used.
pub const EXCLUSION_RADIUS: f64 = 1e-2;
/// `|s11|` or `|s^A11|` below this is reported as a possible spectral singularity.
pub const DENOMINATOR_FLOOR: f64 = 1e-10;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Which Lax equation is integrated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Equation {
    Direct,
    Adjoint,
}

/// End of the support where the solution equals the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Anchor {
    /// `X`, `X^A`: identity for `x >= R`.
    Right,
    /// `Y`, `Y^A`: identity for `x <= -R`.
    Left,
}

/// Spectral quantities at a fixed `k` that the generator needs.
#[derive(Debug, Clone, Copy)]
pub struct Frame {
    pub k: Complex64,
    pub l: [Complex64; 3],
    /// Third column of `P(k)^{-1}`; `U = inv_col * row^T`.
    inv_col: [Complex64; 3],
}

impl Frame {
    pub fn new(k: SpectralPoint) -> Result<Self> {
        let kv = k.value();
        let radius = distance_to_sixth_roots(kv);
        let singular = || CoreError::SingularVandermonde { re: kv.re, im: kv.im, radius };
        if radius < VANDERMONDE_FLOOR {
            return Err(singular());
        }
        let l = [l_value(1, kv), l_value(2, kv), l_value(3, kv)];
        let inv = m3_inverse(&vandermonde(&l)).ok_or_else(singular)?;
        Ok(Self { k: kv, l, inv_col: [inv[0][2], inv[1][2], inv[2][2]] })
    }

    pub fn vandermonde(&self) -> M3 {
        vandermonde(&self.l)
    }

    /// `b_j = n1 + n2 l_j` where `(n1, n2, 0)` is the only nonzero row of `N`.
    fn row(&self, s: DataSample) -> [Complex64; 3] {
        let n1 = Complex64::new(-s.u0x / 4.0, -s.v0 / (4.0 * crate::spectral::SQRT_3));
        let n2 = Complex64::new(-s.u0 / 2.0, 0.0);
        [n1 + n2 * self.l[0], n1 + n2 * self.l[1], n1 + n2 * self.l[2]]
    }

    pub fn generator(&self, s: DataSample) -> M3 {
        let b = self.row(s);
        let mut u = [[ZERO; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                u[i][j] = self.inv_col[i] * b[j];
            }
        }
        u
    }

    fn diag_exp(&self, x: f64, sign: f64) -> [Complex64; 3] {
        [(self.l[0] * x * sign).exp(), (self.l[1] * x * sign).exp(), (self.l[2] * x * sign).exp()]
    }

    /// Right-hand side of the interaction-picture ODE for a stack of 3-vectors.
    fn rhs(&self, data: &InitialData, eq: Equation, x: f64, y: &[Complex64], dy: &mut [Complex64]) {
        let s = data.sample(x);
        if s == DataSample::default() {
            dy.iter_mut().for_each(|d| *d = ZERO);
            return;
        }
        let b = self.row(s);
        let plus = self.diag_exp(x, 1.0);
        let minus = self.diag_exp(x, -1.0);
        // Direct: Z' = (minus.*a)(plus.*b)^T Z.  Adjoint: T' = -(plus.*b)(minus.*a)^T T.
        let (left, right, sign) = match eq {
            Equation::Direct => (
                [minus[0] * self.inv_col[0], minus[1] * self.inv_col[1], minus[2] * self.inv_col[2]],
                [plus[0] * b[0], plus[1] * b[1], plus[2] * b[2]],
                1.0,
            ),
            Equation::Adjoint => (
                [plus[0] * b[0], plus[1] * b[1], plus[2] * b[2]],
                [minus[0] * self.inv_col[0], minus[1] * self.inv_col[1], minus[2] * self.inv_col[2]],
                -1.0,
            ),
        };
        for (col, out) in y.chunks_exact(3).zip(dy.chunks_exact_mut(3)) {
            let dot = (right[0] * col[0] + right[1] * col[1] + right[2] * col[2]) * sign;
            for i in 0..3 {
                out[i] = left[i] * dot;
            }
        }
    }

    /// Interaction-picture matrix to eigenfunction at `x`.
    fn to_eigenfunction(&self, eq: Equation, x: f64, z: &M3) -> M3 {
        let sign = match eq {
            Equation::Direct => 1.0,
            Equation::Adjoint => -1.0,
        };
        let mut out = *z;
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    out[i][j] *= ((self.l[i] - self.l[j]) * (x * sign)).exp();
                }
            }
        }
        out
    }
}

fn vandermonde(l: &[Complex64; 3]) -> M3 {
    let one = Complex64::new(1.0, 0.0);
    [[one, one, one], l.to_owned(), [l[0] * l[0], l[1] * l[1], l[2] * l[2]]]
}

/// `U(x, k) = P(k)^{-1} N(x) P(k)`.
pub fn build_generator(x: f64, k: SpectralPoint, data: &InitialData) -> Result<M3> {
    Ok(Frame::new(k)?.generator(data.sample(x)))
}

pub fn default_ode_options() -> OdeOptions {
    OdeOptions::default()
}

fn ode_options_for(tol: f64) -> OdeOptions {
    let base = OdeOptions::default();
    OdeOptions { rtol: (tol * 1e-2).clamp(1e-13, base.rtol), atol: (tol * 1e-4).clamp(1e-15, base.atol), ..base }
}

fn start_of(anchor: Anchor, data: &InitialData) -> f64 {
    match anchor {
        Anchor::Right => data.support_radius,
        Anchor::Left => -data.support_radius,
    }
}

/// Propagates the selected columns of the interaction-picture solution from the
/// anchor to each point of `xs` (visited in the given order, which must move
/// away from the anchor). Columns not requested are left zero.
fn propagate_path(
    frame: &Frame,
    data: &InitialData,
    eq: Equation,
    anchor: Anchor,
    columns: &[usize],
    xs: &[f64],
    opts: &OdeOptions,
) -> Result<(Vec<M3>, OdeStats)> {
    let r = data.support_radius;
    let mut state: Vec<Complex64> = Vec::with_capacity(3 * columns.len());
    for &c in columns {
        let mut e = [ZERO; 3];
        e[c] = Complex64::new(1.0, 0.0);
        state.extend_from_slice(&e);
    }
    let mut pos = start_of(anchor, data);
    let mut stats = OdeStats::default();
    let mut out = Vec::with_capacity(xs.len());
    for &x in xs {
        let target = x.clamp(-r, r);
        if target != pos && !data.is_zero() {
            let (y, st) = integrate(|t, y, dy| frame.rhs(data, eq, t, y, dy), pos, target, &state, opts)?;
            state = y;
            stats.accepted += st.accepted;
            stats.rejected += st.rejected;
            pos = target;
        }
        let mut m = [[ZERO; 3]; 3];
        for (slot, &c) in columns.iter().enumerate() {
            for i in 0..3 {
                m[i][c] = state[3 * slot + i];
            }
        }
        out.push(m);
    }
    Ok((out, stats))
}

/// `s` (direct) or `s^A` (adjoint) restricted to the given columns.
pub fn scattering_columns(frame: &Frame, data: &InitialData, eq: Equation, columns: &[usize]) -> Result<M3> {
    let (m, _) = propagate_path(
        frame,
        data,
        eq,
        Anchor::Right,
        columns,
        &[-data.support_radius],
        &default_ode_options(),
    )?;
    Ok(m[0])
}

/// `s11(k)`, integrating only the first column.
pub fn s11(data: &InitialData, k: Complex64) -> Result<Complex64> {
    let frame = Frame::new(SpectralPoint::new(k)?)?;
    Ok(scattering_columns(&frame, data, Equation::Direct, &[0])?[0][0])
}

#[derive(Debug, Clone, Copy)]
pub struct ScatteringMatrices {
    pub k: Complex64,
    pub s: M3,
    pub sa: M3,
}

impl ScatteringMatrices {
    pub fn det_s(&self) -> Complex64 {
        m3_det(&self.s)
    }

    pub fn det_sa(&self) -> Complex64 {
        m3_det(&self.sa)
    }
}

pub fn scattering_matrices(data: &InitialData, k: SpectralPoint) -> Result<ScatteringMatrices> {
    let frame = Frame::new(k)?;
    let all = [0, 1, 2];
    Ok(ScatteringMatrices {
        k: frame.k,
        s: scattering_columns(&frame, data, Equation::Direct, &all)?,
        sa: scattering_columns(&frame, data, Equation::Adjoint, &all)?,
    })
}

/// The four eigenfunctions tabulated on a set of `x` values at one `k`.
#[derive(Debug, Clone)]
pub struct EigenfunctionSet {
    pub k: Complex64,
    pub xs: Vec<f64>,
    pub x: Vec<M3>,
    pub xa: Vec<M3>,
    pub y: Vec<M3>,
    pub ya: Vec<M3>,
    /// Largest `|det - 1|` over all four functions and all points.
    pub det_drift: f64,
}

/// Eigenfunction values at arbitrary `xs` for one equation and anchor.
pub fn eigenfunction_values(
    frame: &Frame,
    data: &InitialData,
    eq: Equation,
    anchor: Anchor,
    xs: &[f64],
    opts: &OdeOptions,
) -> Result<Vec<M3>> {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    match anchor {
        Anchor::Right => order.sort_by(|&a, &b| xs[b].total_cmp(&xs[a])),
        Anchor::Left => order.sort_by(|&a, &b| xs[a].total_cmp(&xs[b])),
    }
    let sorted: Vec<f64> = order.iter().map(|&i| xs[i]).collect();
    let (zs, _) = propagate_path(frame, data, eq, anchor, &[0, 1, 2], &sorted, opts)?;
    let mut out = vec![[[ZERO; 3]; 3]; xs.len()];
    for (slot, &i) in order.iter().enumerate() {
        out[i] = frame.to_eigenfunction(eq, xs[i], &zs[slot]);
    }
    Ok(out)
}

pub fn solve_eigenfunctions(data: &InitialData, k: SpectralPoint, xs: &[f64], tol: f64) -> Result<EigenfunctionSet> {
    if !(tol > 0.0) {
        return Err(CoreError::InvalidData("tolerance must be positive".into()));
    }
    let frame = Frame::new(k)?;
    let opts = ode_options_for(tol);
    let x = eigenfunction_values(&frame, data, Equation::Direct, Anchor::Right, xs, &opts)?;
    let xa = eigenfunction_values(&frame, data, Equation::Adjoint, Anchor::Right, xs, &opts)?;
    let y = eigenfunction_values(&frame, data, Equation::Direct, Anchor::Left, xs, &opts)?;
    let ya = eigenfunction_values(&frame, data, Equation::Adjoint, Anchor::Left, xs, &opts)?;
    let det_drift = [&x, &xa, &y, &ya]
        .iter()
        .flat_map(|v| v.iter())
        .map(|m| (m3_det(m) - 1.0).norm())
        .fold(0.0, f64::max);
    Ok(EigenfunctionSet { k: frame.k, xs: xs.to_vec(), x, xa, y, ya, det_drift })
}

/// Residual of the Volterra integral equation at `x`, with the integral taken by
/// composite Gauss-Legendre quadrature over eigenfunction values at the nodes.
///
/// Direct/Right: `X(x) - I + int_x^R e^{(x-s)L} U X(s) e^{-(x-s)L} ds`.
/// Direct/Left: `Y(x) - I - int_{-R}^x (same kernel) Y`.
/// The adjoint variants use `-L` and `U^T` with the opposite overall sign.
pub fn volterra_residual(data: &InitialData, k: SpectralPoint, eq: Equation, anchor: Anchor, x: f64) -> Result<f64> {
    let frame = Frame::new(k)?;
    let r = data.support_radius;
    let x = x.clamp(-r, r);
    let (a, b) = match anchor {
        Anchor::Right => (x, r),
        Anchor::Left => (-r, x),
    };
    let opts = ode_options_for(1e-10);
    let gl = GaussLegendre::new(12);
    let panels = (((b - a) / 0.5).ceil() as usize).max(1);
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for (pa, pb) in uniform_panels(a, b, panels) {
        for (s, w) in gl.mapped(pa, pb) {
            nodes.push(s);
            weights.push(w);
        }
    }
    let mut probe = nodes.clone();
    probe.push(x);
    let values = eigenfunction_values(&frame, data, eq, anchor, &probe, &opts)?;
    let here = values[values.len() - 1];
    let lsign = match eq {
        Equation::Direct => 1.0,
        Equation::Adjoint => -1.0,
    };
    let mut integral = [[ZERO; 3]; 3];
    for ((&s, &w), m) in nodes.iter().zip(&weights).zip(&values) {
        let u = frame.generator(data.sample(s));
        let u = match eq {
            Equation::Direct => u,
            Equation::Adjoint => crate::numeric::linalg::m3_transpose(&u),
        };
        let um = crate::numeric::linalg::m3_mul(&u, m);
        for i in 0..3 {
            for j in 0..3 {
                let conj = ((frame.l[i] - frame.l[j]) * (lsign * (x - s))).exp();
                integral[i][j] += um[i][j] * conj * w;
            }
        }
    }
    // Sign of the integral term in `F(x) = I + sign * int`.
    let sign = match (eq, anchor) {
        (Equation::Direct, Anchor::Right) => -1.0,
        (Equation::Direct, Anchor::Left) => 1.0,
        (Equation::Adjoint, Anchor::Right) => 1.0,
        (Equation::Adjoint, Anchor::Left) => -1.0,
    };
    let mut expected = m3_identity();
    for i in 0..3 {
        for j in 0..3 {
            expected[i][j] += integral[i][j] * sign;
        }
    }
    Ok(m3_max_abs(&m3_sub(&here, &expected)))
}

/// Residue ratio `Res s_12 / Res s_11` (and its adjoint counterpart) at a simple
/// pole `center` of the scattering matrices, by the trapezoid rule on a circle.
pub fn residue_ratio(data: &InitialData, center: Complex64) -> Result<(Complex64, Complex64)> {
    const RADIUS: f64 = 0.02;
    const NODES: usize = 24;
    let mut acc = [[ZERO; 2]; 2];
    for j in 0..NODES {
        let e = Complex64::from_polar(1.0, std::f64::consts::TAU * (j as f64 + 0.5) / NODES as f64);
        let frame = Frame::new(SpectralPoint::new(center + e * RADIUS)?)?;
        let s = scattering_columns(&frame, data, Equation::Direct, &[0, 1])?;
        let sa = scattering_columns(&frame, data, Equation::Adjoint, &[0, 1])?;
        let w = e * RADIUS / NODES as f64;
        acc[0][0] += s[0][0] * w;
        acc[0][1] += s[0][1] * w;
        acc[1][0] += sa[0][0] * w;
        acc[1][1] += sa[0][1] * w;
    }
    for (i, row) in acc.iter().enumerate() {
        if row[0].norm() < DENOMINATOR_FLOOR {
            return Err(CoreError::NearZeroDenominator {
                what: if i == 0 { "residue of s11" } else { "residue of sA11" }.into(),
                value: row[0].norm(),
            });
        }
    }
    Ok((acc[0][1] / acc[0][0], acc[1][1] / acc[1][0]))
}

/// `(r1, r2) = (s12/s11, s^A12/s^A11)`; at `k = +-1` the ratio of residues.
pub fn reflection_coefficients(data: &InitialData, k: SpectralPoint) -> Result<(Complex64, Complex64)> {
    let kv = k.value();
    for center in [1.0, -1.0] {
        if (kv - center).norm() < 1e-12 {
            return residue_ratio(data, Complex64::new(center, 0.0));
        }
    }
    let radius = distance_to_sixth_roots(kv);
    if radius < EXCLUSION_RADIUS {
        return Err(CoreError::SingularVandermonde { re: kv.re, im: kv.im, radius });
    }
    let frame = Frame::new(k)?;
    let s = scattering_columns(&frame, data, Equation::Direct, &[0, 1])?;
    let sa = scattering_columns(&frame, data, Equation::Adjoint, &[0, 1])?;
    for (what, v) in [("s11", s[0][0]), ("sA11", sa[0][0])] {
        if v.norm() < DENOMINATOR_FLOOR {
            return Err(CoreError::NearZeroDenominator { what: what.into(), value: v.norm() });
        }
    }
    Ok((s[0][1] / s[0][0], sa[0][1] / sa[0][0]))
}

/// Applies `f` to every point of a k-grid in parallel; solves are independent.
pub fn map_k_grid<T, F>(ks: &[Complex64], f: F) -> Vec<Result<T>>
where
    T: Send,
    F: Fn(Complex64) -> Result<T> + Sync,
{
    ks.par_iter().map(|&k| f(k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::OMEGA;

    fn bump() -> InitialData {
        InitialData::gaussian(0.3, 0.0, 0.0, 1.0, 8.0).unwrap()
    }

    fn point(k: Complex64) -> SpectralPoint {
        SpectralPoint::new(k).unwrap()
    }

    #[test]
    fn generator_vanishes_for_zero_data_and_is_trace_free() {
        let k = point(Complex64::new(0.7, 0.4));
        let u = build_generator(0.3, k, &InitialData::zero(5.0)).unwrap();
        assert_eq!(m3_max_abs(&u), 0.0);
        let data = InitialData::gaussian(0.5, 0.2, 0.1, 1.3, 6.0).unwrap();
        for &(x, re, im) in &[(0.3, 0.7, 0.4), (-1.1, -2.0, 0.3), (2.0, 0.1, -1.5)] {
            let u = build_generator(x, point(Complex64::new(re, im)), &data).unwrap();
            let tr = u[0][0] + u[1][1] + u[2][2];
            assert!(tr.norm() < 1e-14 * m3_max_abs(&u).max(1.0), "trace {tr}");
        }
    }

    #[test]
    fn generator_matches_dense_similarity() {
        let data = InitialData::gaussian(0.5, 0.2, 0.1, 1.3, 6.0).unwrap();
        let k = point(Complex64::new(0.4, 1.1));
        let frame = Frame::new(k).unwrap();
        let s = data.sample(0.7);
        let p = frame.vandermonde();
        let mut n = [[ZERO; 3]; 3];
        n[2][0] = Complex64::new(-s.u0x / 4.0, -s.v0 / (4.0 * crate::spectral::SQRT_3));
        n[2][1] = Complex64::new(-s.u0 / 2.0, 0.0);
        use crate::numeric::linalg::m3_mul;
        let dense = m3_mul(&m3_inverse(&p).unwrap(), &m3_mul(&n, &p));
        assert!(m3_max_abs(&m3_sub(&dense, &frame.generator(s))) < 1e-14);
    }

    #[test]
    fn sixth_roots_are_rejected() {
        let err = Frame::new(point(OMEGA)).unwrap_err();
        assert!(matches!(err, CoreError::SingularVandermonde { .. }));
        let err = reflection_coefficients(&bump(), point(Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0 - 0.005)));
        assert!(matches!(err, Err(CoreError::SingularVandermonde { .. })));
    }

    #[test]
    fn zero_data_gives_identity_everywhere() {
        let data = InitialData::zero(5.0);
        let k = point(Complex64::from_polar(1.0, 1.9));
        let sm = scattering_matrices(&data, k).unwrap();
        assert_eq!(m3_max_abs(&m3_sub(&sm.s, &m3_identity())), 0.0);
        assert_eq!(m3_max_abs(&m3_sub(&sm.sa, &m3_identity())), 0.0);
        let set = solve_eigenfunctions(&data, k, &[-3.0, 0.0, 4.0], 1e-10).unwrap();
        for m in set.x.iter().chain(&set.xa).chain(&set.y).chain(&set.ya) {
            assert_eq!(m3_max_abs(&m3_sub(m, &m3_identity())), 0.0);
        }
        let (r1, r2) = reflection_coefficients(&data, k).unwrap();
        assert_eq!((r1, r2), (ZERO, ZERO));
    }

    #[test]
    fn bump_data_is_unimodular_with_conjugate_symmetry() {
        let data = bump();
        let k = Complex64::new(0.6, 0.5);
        let sm = scattering_matrices(&data, point(k)).unwrap();
        assert!((sm.det_s() - 1.0).norm() < 1e-8);
        assert!((sm.det_sa() - 1.0).norm() < 1e-8);
        let mirror = scattering_matrices(&data, point(1.0 / k.conj())).unwrap();
        assert!((sm.sa[0][0] - mirror.s[0][0].conj()).norm() < 1e-7);
        // s11(k) = s11(omega / k)
        let rotated = s11(&data, OMEGA / k).unwrap();
        assert!((rotated - sm.s[0][0]).norm() < 1e-7);
    }

    #[test]
    fn eigenfunctions_satisfy_the_integral_equations() {
        let data = InitialData::gaussian(0.4, 0.15, 0.3, 1.0, 6.0).unwrap();
        let k = point(Complex64::from_polar(1.0, 1.8));
        let set = solve_eigenfunctions(&data, k, &[-5.0, -1.7, 0.2, 2.9, 7.0], 1e-10).unwrap();
        assert!(set.det_drift < 1e-10, "drift {}", set.det_drift);
        assert!(m3_max_abs(&m3_sub(&set.x[4], &m3_identity())) == 0.0);
        for eq in [Equation::Direct, Equation::Adjoint] {
            for anchor in [Anchor::Right, Anchor::Left] {
                for &x in &[-4.1, -0.6, 1.3] {
                    let res = volterra_residual(&data, k, eq, anchor, x).unwrap();
                    assert!(res < 1e-9, "{eq:?} {anchor:?} x={x}: {res:e}");
                }
            }
        }
    }

    #[test]
    fn reflection_limits_at_plus_minus_one() {
        let data = bump();
        for center in [1.0, -1.0] {
            let (r1, r2) = reflection_coefficients(&data, point(Complex64::new(center, 0.0))).unwrap();
            assert!((r1 - 1.0).norm() < 1e-6, "r1({center}) = {r1}");
            assert!((r2 + 1.0).norm() < 1e-6, "r2({center}) = {r2}");
        }
    }

    #[test]
    fn unit_circle_relation_holds() {
        let data = InitialData::gaussian(0.3, 0.1, 0.0, 1.0, 8.0).unwrap();
        let r = |k: Complex64| reflection_coefficients(&data, point(k)).unwrap();
        for &phi in &[0.4, 1.3, 2.5] {
            let k = Complex64::from_polar(1.0, phi);
            let a = r(1.0 / (OMEGA * k)).0;
            let b = r(OMEGA * k).1;
            let c = r(OMEGA * OMEGA * k).0 * r(1.0 / k).1;
            assert!((a + b + c).norm() < 1e-6, "phi={phi}: {}", (a + b + c).norm());
        }
    }

    #[test]
    fn parallel_map_preserves_order() {
        let data = bump();
        let ks: Vec<Complex64> = (0..6).map(|i| Complex64::from_polar(1.0, 1.6 + 0.08 * i as f64)).collect();
        let par = map_k_grid(&ks, |k| s11(&data, k));
        for (k, v) in ks.iter().zip(par) {
            assert_eq!(v.unwrap(), s11(&data, *k).unwrap());
        }
    }
}

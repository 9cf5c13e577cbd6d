//! Spectral kernels `l_j`, `z_j`, phase functions `Phi_ij`, the saddle
//! points for rays `x = zeta t`, `zeta > 1`, and the region bookkeeping of the spectral plane.
//!
//! Indices `j` run over `1..=3`; `omega = e^{2 pi i / 3}`.

use std::f64::consts::{FRAC_PI_4, FRAC_PI_6, PI};

use num_complex::{Complex, Complex64};

use crate::error::{CoreError, Result};
use crate::numeric::Real;

pub const SQRT_3: f64 = 1.732_050_807_568_877_2;
pub const OMEGA: Complex64 = Complex64::new(-0.5, SQRT_3 / 2.0);
pub const OMEGA2: Complex64 = Complex64::new(-0.5, -SQRT_3 / 2.0);

/// Sixth roots of unity, where two of the `l_j` coincide.
pub const SIXTH_ROOTS: [Complex64; 6] = [
    Complex64::new(1.0, 0.0),
    Complex64::new(0.5, SQRT_3 / 2.0),
    Complex64::new(-0.5, SQRT_3 / 2.0),
    Complex64::new(-1.0, 0.0),
    Complex64::new(-0.5, -SQRT_3 / 2.0),
    Complex64::new(0.5, -SQRT_3 / 2.0),
];

/// `omega^j` for any integer `j`.
pub fn omega_pow(j: i64) -> Complex64 {
    match j.rem_euclid(3) {
        0 => Complex64::new(1.0, 0.0),
        1 => OMEGA,
        _ => OMEGA2,
    }
}

pub fn omega_generic<T: Real>() -> Complex<T> {
    let half = T::from_f64(0.5);
    Complex::new(-half, T::from_f64(3.0).sqrt() * half)
}

/// Nonzero spectral parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint(Complex64);

impl SpectralPoint {
    pub fn new(k: Complex64) -> Result<Self> {
        if k.re == 0.0 && k.im == 0.0 {
            return Err(CoreError::ZeroSpectralParameter);
        }
        Ok(Self(k))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }
}

impl TryFrom<Complex64> for SpectralPoint {
    type Error = CoreError;
    fn try_from(k: Complex64) -> Result<Self> {
        Self::new(k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseTriple {
    pub l: [Complex64; 3],
    pub z: [Complex64; 3],
}

/// `l_j(k)` for `j in 1..=3`; `k != 0` is the caller's responsibility.
pub fn l_value(j: usize, k: Complex64) -> Complex64 {
    let q = omega_pow(j as i64) * k;
    Complex64::i() * (q + q.inv()) / (2.0 * SQRT_3)
}

/// `z_j(k)` for `j in 1..=3`.
pub fn z_value(j: usize, k: Complex64) -> Complex64 {
    let q = omega_pow(j as i64) * k;
    let q2 = q * q;
    Complex64::i() * (q2 + q2.inv()) / (4.0 * SQRT_3)
}

/// `(l_j(k), z_j(k))` over any [`Real`]; used by the extended-precision evaluator.
pub fn lz_generic<T: Real>(j: usize, k: Complex<T>) -> (Complex<T>, Complex<T>) {
    let one = Complex::new(T::one(), T::zero());
    let w = omega_generic::<T>();
    let wj = match j % 3 {
        0 => one,
        1 => w,
        _ => w * w,
    };
    let q = wj * k;
    let qi = one / q;
    let i_unit = Complex::new(T::zero(), T::one());
    let s3 = T::from_f64(3.0).sqrt();
    let two = T::from_f64(2.0);
    let l = i_unit * (q + qi) / Complex::new(two * s3, T::zero());
    let z = i_unit * (q * q + qi * qi) / Complex::new(two * two * s3, T::zero());
    (l, z)
}

pub fn lz_eval(k: SpectralPoint) -> PhaseTriple {
    let k = k.value();
    PhaseTriple {
        l: [l_value(1, k), l_value(2, k), l_value(3, k)],
        z: [z_value(1, k), z_value(2, k), z_value(3, k)],
    }
}

/// `Phi_ij(zeta, k)` together with the differences that define `theta_ij`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseValue {
    pub phi: Complex64,
    pub l_diff: Complex64,
    pub z_diff: Complex64,
}

impl PhaseValue {
    /// `theta_ij(x, t, k) = x (l_i - l_j) + t (z_i - z_j)`.
    pub fn theta(&self, x: f64, t: f64) -> Complex64 {
        self.l_diff * x + self.z_diff * t
    }
}

pub fn phase(i: usize, j: usize, zeta: f64, k: SpectralPoint) -> Result<PhaseValue> {
    if !(1 <= j && j < i && i <= 3) {
        return Err(CoreError::InvalidIndexPair { i, j });
    }
    let k = k.value();
    let l_diff = l_value(i, k) - l_value(j, k);
    let z_diff = z_value(i, k) - z_value(j, k);
    Ok(PhaseValue { phi: l_diff * zeta + z_diff, l_diff, z_diff })
}

/// `Phi_ij(zeta, k)` without index validation, for internal hot paths.
pub fn phi(i: usize, j: usize, zeta: f64, k: Complex64) -> Complex64 {
    (l_value(i, k) - l_value(j, k)) * zeta + (z_value(i, k) - z_value(j, k))
}

/// `theta_ij(x, t, k)`.
pub fn theta(i: usize, j: usize, x: f64, t: f64, k: Complex64) -> Complex64 {
    (l_value(i, k) - l_value(j, k)) * x + (z_value(i, k) - z_value(j, k)) * t
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaddleSet {
    pub zeta: f64,
    pub k1: Complex64,
    pub k2: Complex64,
    pub k3: Complex64,
    pub k4: Complex64,
    /// Branch fixed by `-i k1 z_star > 0`.
    pub z_star: Complex64,
    /// Second Taylor coefficient of `Phi_21(zeta, .)` at `k1`; `z_star^2 = 2 i` times it.
    pub phi21_coefficient: Complex64,
}

impl SaddleSet {
    pub fn arg_k1(&self) -> f64 {
        self.k1.arg()
    }

    /// `-i k1 z_star`, real and positive.
    pub fn scale(&self) -> f64 {
        (-Complex64::i() * self.k1 * self.z_star).re
    }
}

pub fn saddle_points(zeta: f64) -> Result<SaddleSet> {
    if !(zeta > 1.0) || !zeta.is_finite() {
        return Err(CoreError::OutOfSector { zeta });
    }
    let root = (8.0 + zeta * zeta).sqrt();
    let sqrt2 = std::f64::consts::SQRT_2;
    let k1 = Complex64::new((zeta - root) / 4.0, sqrt2 * (4.0 - zeta * zeta + zeta * root).sqrt() / 4.0);
    let k3 = (zeta + root + sqrt2 * (-4.0 + zeta * zeta + zeta * root).sqrt()) / 4.0;
    let coefficient = (4.0 - 3.0 * k1 * zeta - k1.powi(3) * zeta) / (4.0 * k1.powi(4));
    let mut z_star = sqrt2 * Complex64::from_polar(1.0, FRAC_PI_4) * coefficient.sqrt();
    if (-Complex64::i() * k1 * z_star).re <= 0.0 {
        z_star = -z_star;
    }
    Ok(SaddleSet {
        zeta,
        k1,
        k2: k1.conj(),
        k3: Complex64::new(k3, 0.0),
        k4: Complex64::new(1.0 / k3, 0.0),
        z_star,
        phi21_coefficient: coefficient,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionTag {
    DReg,
    DSing,
    D2Real,
    Other,
}

/// Membership in the open set `D_2`.
pub fn in_d2(k: Complex64) -> bool {
    let r = k.norm();
    let a = k.arg();
    (r > 1.0 && a.abs() < FRAC_PI_6) || (r < 1.0 && r > 0.0 && a.abs() > PI - FRAC_PI_6)
}

pub fn classify_region(k: Complex64) -> RegionTag {
    if k.im == 0.0 {
        let x = k.re;
        return if (-1.0 < x && x < 0.0) || x > 1.0 { RegionTag::D2Real } else { RegionTag::Other };
    }
    if !in_d2(k) {
        return RegionTag::Other;
    }
    let outside = k.norm() > 1.0;
    if outside == (k.im > 0.0) {
        RegionTag::DReg
    } else {
        RegionTag::DSing
    }
}

/// Orbit of `k0` under `k -> omega k`, conjugation and inversion (12 points,
/// 6 when `k0` is real or unimodular).
pub fn symmetry_orbit(k0: SpectralPoint) -> Vec<Complex64> {
    let k0 = k0.value();
    let mut out: Vec<Complex64> = Vec::with_capacity(12);
    for base in [k0, k0.inv(), k0.conj(), k0.conj().inv()] {
        for j in 0..3 {
            let p = omega_pow(j) * base;
            if !out.iter().any(|q| (q - p).norm() <= 1e-12 * p.norm()) {
                out.push(p);
            }
        }
    }
    out
}

/// `r~(k) = (omega^2 - k^2) / (1 - omega^2 k^2)`.
pub fn r_tilde(k: Complex64) -> Complex64 {
    (OMEGA2 - k * k) / (1.0 - OMEGA2 * k * k)
}

pub fn distance_to_sixth_roots(k: Complex64) -> f64 {
    SIXTH_ROOTS.iter().map(|r| (k - r).norm()).fold(f64::INFINITY, f64::min)
}

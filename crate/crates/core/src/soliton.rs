//! Exact multi-soliton and breather fields `u = 6 d^2/dx^2 ln det(I - B)`.
//!
//! Rows and columns of `B` are indexed by the poles in the order
//! `lambda_1..lambda_nb, conj(lambda_1)..conj(lambda_nb), k_1..k_ns`:
//!
//! | block        | row kernel           | column kernel        | weight           |
//! |--------------|----------------------|----------------------|------------------|
//! | breather     | `l_1, z_1` at lambda | `l_3, z_3` at lambda | `c~_lambda`      |
//! | conjugate    | `l_3, z_3` at conj   | `l_2, z_2` at conj   | `conj(c~_lambda)`|
//! | real soliton | `l_1, z_1` at k      | `l_2, z_2` at k      | `c~_k`           |
//!
//! `B_jl = W_j V_l / (L_j - L'_l)` with `W_j = exp(x L_j + t Z_j)` and
//! `V_l = C_l exp(-x L'_l - t Z'_l)`, so `dB/dx = W V^T`.
//!
//! Every evaluation is equilibrated: with `a_j = ln|W_j|`, `b_j = ln|V_j|`,
//! `sigma_j = max(0, a_j + b_j)` and `kappa_j = min(0, a_j + b_j) / 2`,
//! `I - B = D_1 S D_2` where `S_jl = delta_jl e^{-sigma_j} - W^_j V^_l / (L_j - L'_l)`
//! and `|W^_j| = |V^_j| = e^{kappa_j}`. Then `ln det(I - B) = sum sigma + ln det S`
//! and all entries of `S` are bounded by the inverse pole separations.
//!
//! The evaluator is generic over [`Real`] so the PDE residual can be taken in
//! double-double arithmetic.

use num_complex::{Complex, Complex64};

use crate::error::{CoreError, Result};
use crate::numeric::linalg::{condition_number_1, CMatrix, Lu};
use crate::numeric::real::{cexp, from_c64, to_c64};
use crate::numeric::Real;
use crate::spectral::{lz_generic, omega_generic, OMEGA2, SQRT_3};
use crate::spectrum::{reality_weight, SolitonSpectrum, COINCIDENCE_TOLERANCE};

/// Tolerance on the imaginary part of a field value before it is discarded.
pub const REALITY_TOLERANCE: f64 = 1e-9;
/// Richardson base step relative to the narrowest soliton width.
const RICHARDSON_RELATIVE_STEP: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    ExactSoliton,
    ModulatedSoliton,
    AsymptoticLeading,
    AsymptoticRadiation,
    Residual,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::ExactSoliton => "exact_soliton",
            Provenance::ModulatedSoliton => "modulated_soliton",
            Provenance::AsymptoticLeading => "asymptotic_leading",
            Provenance::AsymptoticRadiation => "asymptotic_radiation",
            Provenance::Residual => "residual",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample {
    pub x: f64,
    pub t: f64,
    pub u: f64,
    /// Imaginary part of the complex evaluation before it was dropped.
    pub imag: f64,
    pub provenance: Provenance,
}

/// How `d^2/dx^2 ln det(I - B)` is obtained from the analytic first derivative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SecondDerivative {
    /// Order-4 Richardson combination of central differences at `h` and `h/2`.
    Richardson,
    /// Closed form through the adjoint solve `(I - B)^{-T} V`.
    Analytic,
}

/// `c~_lambda = i (lambda^2 - 1) c / (2 sqrt(3) lambda^2)`.
pub fn breather_weight(lambda: Complex64, c: Complex64) -> Complex64 {
    Complex64::i() * (lambda * lambda - 1.0) / (2.0 * SQRT_3 * lambda * lambda) * c
}

/// `c~_k = i (k^2 - omega^2) omega^2 c / (2 sqrt(3) k^2)`.
pub fn soliton_weight(k: f64, c: Complex64) -> Complex64 {
    let k2 = k * k;
    Complex64::i() * (k2 - OMEGA2) * OMEGA2 / (2.0 * SQRT_3 * k2) * c
}

/// Unscaled kernel at one `(x, t)`; entries may overflow far from the solitons.
#[derive(Debug, Clone)]
pub struct SolitonKernel<T: Real> {
    pub b: CMatrix<T>,
    pub w: Vec<Complex<T>>,
    pub v: Vec<Complex<T>>,
}

#[derive(Debug, Clone)]
struct ColumnNode<T: Real> {
    l: Complex<T>,
    z: Complex<T>,
    weight: Complex<T>,
    /// `ln |weight|` and `weight / |weight|`.
    ln_abs: T,
    phase: Complex<T>,
}

/// Pole data of `B`, independent of `(x, t)`.
#[derive(Debug, Clone)]
pub struct KernelNodes<T: Real> {
    rows: Vec<(Complex<T>, Complex<T>)>,
    cols: Vec<ColumnNode<T>>,
    /// `1 / (L_j - L'_l)`, row-major.
    inv_gap: Vec<Complex<T>>,
    length_scale: f64,
}

struct Equilibrated<T: Real> {
    s: CMatrix<T>,
    w_hat: Vec<Complex<T>>,
    v_hat: Vec<Complex<T>>,
    sigma_sum: T,
}

fn c_real<T: Real>(v: T) -> Complex<T> {
    Complex::new(v, T::zero())
}

fn cmax<T: Real>(a: T, b: T) -> T {
    if a > b {
        a
    } else {
        b
    }
}

fn cmin<T: Real>(a: T, b: T) -> T {
    if a < b {
        a
    } else {
        b
    }
}

impl<T: Real> KernelNodes<T> {
    pub fn new(spec: &SolitonSpectrum) -> Result<Self> {
        let sep = spec.min_pole_separation();
        if sep <= COINCIDENCE_TOLERANCE {
            return Err(CoreError::DegenerateKernel { separation: sep });
        }
        let omega = omega_generic::<T>();
        let i_unit = Complex::new(T::zero(), T::one());
        let two_sqrt3 = T::from_f64(2.0) * T::from_f64(3.0).sqrt();
        let one = c_real(T::one());
        let mut rows = Vec::new();
        let mut cols = Vec::new();
        let mut push_col = |l: Complex<T>, z: Complex<T>, weight: Complex<T>| {
            let n2 = weight.re * weight.re + weight.im * weight.im;
            let abs = n2.sqrt();
            cols.push(ColumnNode { l, z, weight, ln_abs: abs.ln(), phase: weight / c_real(abs) });
        };
        let weights: Vec<Complex<T>> = spec
            .breathers
            .iter()
            .map(|b| {
                let lam = from_c64::<T>(b.lambda);
                i_unit * (lam * lam - one) / (c_real(two_sqrt3) * lam * lam) * from_c64::<T>(b.c)
            })
            .collect();
        for (b, wgt) in spec.breathers.iter().zip(&weights) {
            let lam = from_c64::<T>(b.lambda);
            rows.push(lz_generic(1, lam));
            let (l, z) = lz_generic(3, lam);
            push_col(l, z, *wgt);
        }
        for (b, wgt) in spec.breathers.iter().zip(&weights) {
            let lam_bar = from_c64::<T>(b.lambda.conj());
            rows.push(lz_generic(3, lam_bar));
            let (l, z) = lz_generic(2, lam_bar);
            push_col(l, z, wgt.conj());
        }
        for s in &spec.real_solitons {
            let k = c_real(T::from_f64(s.k));
            rows.push(lz_generic(1, k));
            let (l, z) = lz_generic(2, k);
            let w2 = omega * omega;
            let weight = i_unit * (k * k - w2) * w2 / (c_real(two_sqrt3) * k * k) * from_c64::<T>(s.c);
            push_col(l, z, weight);
        }
        for c in &cols {
            if !(c.ln_abs.to_f64() > f64::NEG_INFINITY) {
                return Err(CoreError::InvalidSpectrum("zero residue constant".into()));
            }
        }
        let n = rows.len();
        let mut inv_gap = Vec::with_capacity(n * n);
        let mut max_rate: f64 = 0.0;
        for (j, row) in rows.iter().enumerate() {
            for col in &cols {
                let gap = row.0 - col.l;
                let g = to_c64(gap).norm();
                if g <= COINCIDENCE_TOLERANCE {
                    return Err(CoreError::DegenerateKernel { separation: g });
                }
                inv_gap.push(one / gap);
            }
            max_rate = max_rate.max(to_c64(row.0 - cols[j].l).re.abs());
        }
        let length_scale = if max_rate > 0.0 { (1.0 / max_rate).clamp(0.1, 10.0) } else { 1.0 };
        Ok(Self { rows, cols, inv_gap, length_scale })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Narrowest decay length of the diagonal exponentials, clamped to [0.1, 10].
    pub fn length_scale(&self) -> f64 {
        self.length_scale
    }

    fn row_exponent(&self, j: usize, x: T, t: T) -> Complex<T> {
        let (l, z) = self.rows[j];
        l * c_real(x) + z * c_real(t)
    }

    fn col_exponent(&self, j: usize, x: T, t: T) -> Complex<T> {
        let c = &self.cols[j];
        -(c.l * c_real(x) + c.z * c_real(t))
    }

    pub fn raw_kernel(&self, x: T, t: T) -> SolitonKernel<T> {
        let n = self.dim();
        let w: Vec<_> = (0..n).map(|j| cexp(self.row_exponent(j, x, t))).collect();
        let v: Vec<_> = (0..n).map(|j| self.cols[j].weight * cexp(self.col_exponent(j, x, t))).collect();
        let mut b = CMatrix::zeros(n);
        for j in 0..n {
            for l in 0..n {
                b.set(j, l, w[j] * v[l] * self.inv_gap[j * n + l]);
            }
        }
        SolitonKernel { b, w, v }
    }

    fn equilibrate(&self, x: T, t: T) -> Equilibrated<T> {
        let n = self.dim();
        let mut w_hat = Vec::with_capacity(n);
        let mut v_hat = Vec::with_capacity(n);
        let mut sigma = Vec::with_capacity(n);
        let mut sigma_sum = T::zero();
        let half = T::from_f64(0.5);
        for j in 0..n {
            let e = self.row_exponent(j, x, t);
            let f = self.col_exponent(j, x, t);
            let col = &self.cols[j];
            let total = e.re + col.ln_abs + f.re;
            let s = cmax(T::zero(), total);
            let kappa = cmin(T::zero(), total) * half;
            w_hat.push(cexp(Complex::new(kappa, e.im)));
            v_hat.push(col.phase * cexp(Complex::new(kappa, f.im)));
            sigma.push(s);
            sigma_sum = sigma_sum + s;
        }
        let mut s = CMatrix::zeros(n);
        for j in 0..n {
            for l in 0..n {
                let mut entry = -(w_hat[j] * v_hat[l] * self.inv_gap[j * n + l]);
                if j == l {
                    entry = entry + c_real((-sigma[j]).exp());
                }
                s.set(j, l, entry);
            }
        }
        Equilibrated { s, w_hat, v_hat, sigma_sum }
    }

    /// `ln det(I - B)` (imaginary part modulo `2 pi`).
    pub fn log_det(&self, x: T, t: T) -> Result<Complex64> {
        let eq = self.equilibrate(x, t);
        if self.dim() == 0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let lu = Lu::factor(&eq.s)?;
        Ok(lu.ln_det() + eq.sigma_sum.to_f64())
    }

    /// `d/dx ln det(I - B) = -V^T (I - B)^{-1} W`.
    pub fn first_derivative(&self, x: T, t: T) -> Result<Complex<T>> {
        if self.dim() == 0 {
            return Ok(c_real(T::zero()));
        }
        let eq = self.equilibrate(x, t);
        let lu = Lu::factor(&eq.s)?;
        let y = lu.solve(&eq.w_hat);
        Ok(-dot(&eq.v_hat, &y))
    }

    /// `d^2/dx^2 ln det(I - B) = (L' o V)^T y - (V^T y)^2 - z^T (L o W)` with
    /// `y = (I - B)^{-1} W` and `z = (I - B)^{-T} V`.
    pub fn second_derivative(&self, x: T, t: T) -> Result<Complex<T>> {
        if self.dim() == 0 {
            return Ok(c_real(T::zero()));
        }
        let eq = self.equilibrate(x, t);
        let lu = Lu::factor(&eq.s)?;
        let y = lu.solve(&eq.w_hat);
        let z = lu.solve_transpose(&eq.v_hat);
        let mut first = c_real(T::zero());
        let mut third = c_real(T::zero());
        for j in 0..self.dim() {
            first = first + self.cols[j].l * eq.v_hat[j] * y[j];
            third = third + z[j] * self.rows[j].0 * eq.w_hat[j];
        }
        let vy = dot(&eq.v_hat, &y);
        Ok(first - vy * vy - third)
    }

    /// 1-norm condition number of the equilibrated matrix.
    pub fn condition_number(&self, x: T, t: T) -> Result<f64> {
        if self.dim() == 0 {
            return Ok(1.0);
        }
        let eq = self.equilibrate(x, t);
        let lu = Lu::factor(&eq.s)?;
        Ok(condition_number_1(&eq.s, &lu))
    }

    /// `6 d^2/dx^2 ln det(I - B)` as a complex number.
    pub fn field(&self, x: T, t: T, method: SecondDerivative) -> Result<Complex<T>> {
        let six = c_real(T::from_f64(6.0));
        match method {
            SecondDerivative::Analytic => Ok(six * self.second_derivative(x, t)?),
            SecondDerivative::Richardson => {
                let h = T::from_f64(RICHARDSON_RELATIVE_STEP * self.length_scale);
                let two = T::from_f64(2.0);
                let central = |h: T| -> Result<Complex<T>> {
                    let d = self.first_derivative(x + h, t)? - self.first_derivative(x - h, t)?;
                    Ok(d / c_real(two * h))
                };
                let coarse = central(h)?;
                let fine = central(h / two)?;
                let four = c_real(T::from_f64(4.0));
                let three = c_real(T::from_f64(3.0));
                Ok(six * (four * fine - coarse) / three)
            }
        }
    }
}

fn dot<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    a.iter().zip(b).fold(c_real(T::zero()), |acc, (x, y)| acc + *x * *y)
}

/// Unscaled `B`, `W`, `V` at `(x, t)`.
pub fn assemble_kernel(x: f64, t: f64, spec: &SolitonSpectrum) -> Result<SolitonKernel<f64>> {
    Ok(KernelNodes::<f64>::new(spec)?.raw_kernel(x, t))
}

/// Field sample from a complex evaluation; the imaginary part is kept as a diagnostic.
pub fn real_sample(x: f64, t: f64, value: Complex64, provenance: Provenance) -> FieldSample {
    FieldSample { x, t, u: value.re, imag: value.im, provenance }
}

/// Multi-soliton field with the default Richardson second derivative.
pub fn u_multisoliton(x: f64, t: f64, spec: &SolitonSpectrum) -> Result<FieldSample> {
    let nodes = KernelNodes::<f64>::new(spec)?;
    let u = nodes.field(x, t, SecondDerivative::Richardson)?;
    Ok(real_sample(x, t, u, Provenance::ExactSoliton))
}

/// Parameters of `A sech^2(kappa (x - x0 - velocity t))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OneSolitonParameters {
    pub amplitude: f64,
    pub kappa: f64,
    pub velocity: f64,
    pub x0: f64,
    /// Imaginary part of the logarithm defining `x0`; zero for admissible constants.
    pub x0_imag: f64,
}

impl OneSolitonParameters {
    pub fn new(k: f64, c: Complex64) -> Result<Self> {
        if !((-1.0 < k && k < 0.0) || k > 1.0) {
            return Err(CoreError::InvalidSpectrum(format!("k = {k} is outside (-1,0) u (1,inf)")));
        }
        if c.norm() == 0.0 {
            return Err(CoreError::InvalidSpectrum("residue constant c = 0 leaves x0 undefined".into()));
        }
        let gap = k - 1.0 / k;
        let amplitude = 0.375 * gap * gap;
        let arg = reality_weight(k, c) / (SQRT_3 * k * (k * k - 1.0));
        let log = arg.ln();
        let scale = 2.0 * k / (k * k - 1.0);
        Ok(Self {
            amplitude,
            kappa: gap.abs() / 4.0,
            velocity: 0.5 * (k + 1.0 / k),
            x0: scale * log.re,
            x0_imag: scale * log.im,
        })
    }

    pub fn eval<T: Real>(&self, x: T, t: T) -> T {
        let arg = T::from_f64(self.kappa) * (x - T::from_f64(self.x0) - T::from_f64(self.velocity) * t);
        // sech^2(a) = 4 e^{-2|a|} / (1 + e^{-2|a|})^2
        let e = (-(arg.abs() * T::from_f64(2.0))).exp();
        let d = T::one() + e;
        T::from_f64(self.amplitude) * T::from_f64(4.0) * e / (d * d)
    }
}

pub fn one_soliton_closed_form(x: f64, t: f64, k1: f64, c: Complex64) -> Result<FieldSample> {
    let p = OneSolitonParameters::new(k1, c)?;
    Ok(FieldSample { x, t, u: p.eval(x, t), imag: 0.0, provenance: Provenance::ExactSoliton })
}

/// `l_1(k) - l_2(k)` for real `k`, equal to `-(k - 1/k) / 2`.
pub fn real_rate(k: f64) -> f64 {
    let d = lz_generic::<f64>(1, Complex64::new(k, 0.0)).0 - lz_generic::<f64>(2, Complex64::new(k, 0.0)).0;
    d.re
}

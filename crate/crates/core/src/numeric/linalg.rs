//! Dense complex linear algebra: LU with partial pivoting over any [`Real`]
//! and fixed-size 3x3 helpers for the scattering problem.

use num_complex::{Complex, Complex64};

use super::real::{norm_sqr_f64, Real};
use crate::error::{CoreError, Result};

/// Row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<T: Real> {
    pub n: usize,
    pub data: Vec<Complex<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![Complex::new(T::zero(), T::zero()); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Complex::new(T::one(), T::zero());
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex<T>) {
        self.data[i * self.n + j] = v;
    }

    pub fn mul_vec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        (0..self.n)
            .map(|i| {
                let mut acc = Complex::new(T::zero(), T::zero());
                for j in 0..self.n {
                    acc = acc + self.get(i, j) * v[j];
                }
                acc
            })
            .collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| norm_sqr_f64(*z).sqrt()).fold(0.0, f64::max)
    }
}

/// LU factorization `P A = L U` with partial pivoting.
#[derive(Debug, Clone)]
pub struct Lu<T: Real> {
    n: usize,
    lu: Vec<Complex<T>>,
    perm: Vec<usize>,
    swaps: usize,
}

impl<T: Real> Lu<T> {
    pub fn factor(a: &CMatrix<T>) -> Result<Self> {
        let n = a.n;
        let mut lu = a.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut swaps = 0;
        for col in 0..n {
            let (piv, best) = (col..n)
                .map(|r| (r, norm_sqr_f64(lu[r * n + col])))
                .fold((col, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if !(best > 0.0) {
                return Err(CoreError::Singular(format!("zero pivot in column {col}")));
            }
            if piv != col {
                for j in 0..n {
                    lu.swap(piv * n + j, col * n + j);
                }
                perm.swap(piv, col);
                swaps += 1;
            }
            let d = lu[col * n + col];
            for r in col + 1..n {
                let f = lu[r * n + col] / d;
                lu[r * n + col] = f;
                for j in col + 1..n {
                    let v = lu[col * n + j];
                    lu[r * n + j] = lu[r * n + j] - f * v;
                }
            }
        }
        Ok(Self { n, lu, perm, swaps })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Solves `A x = b`.
    pub fn solve(&self, b: &[Complex<T>]) -> Vec<Complex<T>> {
        let n = self.n;
        let mut x: Vec<Complex<T>> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let v = x[j];
                x[i] = x[i] - self.lu[i * n + j] * v;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let v = x[j];
                x[i] = x[i] - self.lu[i * n + j] * v;
            }
            x[i] = x[i] / self.lu[i * n + i];
        }
        x
    }

    /// Solves `A^T x = b` (plain transpose, no conjugation).
    pub fn solve_transpose(&self, b: &[Complex<T>]) -> Vec<Complex<T>> {
        let n = self.n;
        // A^T = U^T L^T P, so solve U^T y = b, L^T z = y, x = P^T z.
        let mut y: Vec<Complex<T>> = b.to_vec();
        for i in 0..n {
            for j in 0..i {
                let v = y[j];
                y[i] = y[i] - self.lu[j * n + i] * v;
            }
            y[i] = y[i] / self.lu[i * n + i];
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let v = y[j];
                y[i] = y[i] - self.lu[j * n + i] * v;
            }
        }
        let mut x = vec![Complex::new(T::zero(), T::zero()); n];
        for (i, &p) in self.perm.iter().enumerate() {
            x[p] = y[i];
        }
        x
    }

    pub fn det(&self) -> Complex<T> {
        let mut d = Complex::new(T::one(), T::zero());
        for i in 0..self.n {
            d = d * self.lu[i * self.n + i];
        }
        if self.swaps % 2 == 1 {
            -d
        } else {
            d
        }
    }

    /// `ln det A` in double precision (branch: sum of principal logs plus i*pi per swap).
    pub fn ln_det(&self) -> Complex64 {
        let mut acc = Complex64::new(0.0, std::f64::consts::PI * (self.swaps % 2) as f64);
        for i in 0..self.n {
            let z = self.lu[i * self.n + i];
            acc += Complex64::new(z.re.to_f64(), z.im.to_f64()).ln();
        }
        acc
    }

    pub fn inverse(&self) -> CMatrix<T> {
        let n = self.n;
        let mut inv = CMatrix::zeros(n);
        let mut e = vec![Complex::new(T::zero(), T::zero()); n];
        for j in 0..n {
            e.iter_mut().for_each(|v| *v = Complex::new(T::zero(), T::zero()));
            e[j] = Complex::new(T::one(), T::zero());
            let col = self.solve(&e);
            for i in 0..n {
                inv.set(i, j, col[i]);
            }
        }
        inv
    }
}

/// 1-norm condition number, computed from the explicit inverse (small systems only).
pub fn condition_number_1<T: Real>(a: &CMatrix<T>, lu: &Lu<T>) -> f64 {
    let norm1 = |m: &CMatrix<T>| {
        (0..m.n)
            .map(|j| (0..m.n).map(|i| norm_sqr_f64(m.get(i, j)).sqrt()).sum::<f64>())
            .fold(0.0, f64::max)
    };
    norm1(a) * norm1(&lu.inverse())
}

pub type M3 = [[Complex64; 3]; 3];

pub fn m3_identity() -> M3 {
    let o = Complex64::new(0.0, 0.0);
    let l = Complex64::new(1.0, 0.0);
    [[l, o, o], [o, l, o], [o, o, l]]
}

pub fn m3_mul(a: &M3, b: &M3) -> M3 {
    let mut c = [[Complex64::new(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
        }
    }
    c
}

pub fn m3_det(a: &M3) -> Complex64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

pub fn m3_inverse(a: &M3) -> Option<M3> {
    let d = m3_det(a);
    if d.norm() == 0.0 {
        return None;
    }
    let mut inv = [[Complex64::new(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
            let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
            inv[i][j] = (a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0]) / d;
        }
    }
    Some(inv)
}

pub fn m3_transpose(a: &M3) -> M3 {
    let mut t = *a;
    for i in 0..3 {
        for j in 0..3 {
            t[i][j] = a[j][i];
        }
    }
    t
}

pub fn m3_sub(a: &M3, b: &M3) -> M3 {
    let mut c = *a;
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] -= b[i][j];
        }
    }
    c
}

pub fn m3_max_abs(a: &M3) -> f64 {
    a.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
}

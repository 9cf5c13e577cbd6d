//! Chebyshev series on an interval: first-kind nodes, coefficients from
//! samples, Clenshaw evaluation and term-wise differentiation.

use std::f64::consts::PI;

use num_complex::Complex64;

/// First-kind Chebyshev nodes on [a, b], in increasing order.
pub fn chebyshev_nodes(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|j| {
            let x = -((2 * j + 1) as f64 * PI / (2 * n) as f64).cos();
            0.5 * (a + b) + 0.5 * (b - a) * x
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChebSeries {
    pub a: f64,
    pub b: f64,
    pub coeffs: Vec<Complex64>,
}

impl ChebSeries {
    /// Interpolant through values sampled at [`chebyshev_nodes`]`(a, b, n)`.
    pub fn from_samples(a: f64, b: f64, values: &[Complex64]) -> Self {
        let n = values.len();
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
        for (m, c) in coeffs.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, &v) in values.iter().enumerate() {
                // Increasing node order flips the sign of odd terms.
                let theta = (2 * j + 1) as f64 * PI / (2 * n) as f64;
                let sign = if m % 2 == 1 { -1.0 } else { 1.0 };
                acc += v * (sign * (m as f64 * theta).cos());
            }
            *c = acc * (2.0 / n as f64);
        }
        if n > 0 {
            coeffs[0] *= 0.5;
        }
        Self { a, b, coeffs }
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        let s = (2.0 * x - self.a - self.b) / (self.b - self.a);
        let mut b1 = Complex64::new(0.0, 0.0);
        let mut b2 = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().skip(1).rev() {
            let b0 = c + b1 * (2.0 * s) - b2;
            b2 = b1;
            b1 = b0;
        }
        self.coeffs.first().copied().unwrap_or_default() + b1 * s - b2
    }

    pub fn derivative(&self) -> Self {
        let n = self.coeffs.len();
        let mut d = vec![Complex64::new(0.0, 0.0); n.max(1)];
        if n >= 2 {
            for m in (0..n - 1).rev() {
                let next2 = if m + 2 < n { d[m + 2] } else { Complex64::new(0.0, 0.0) };
                d[m] = next2 + self.coeffs[m + 1] * (2.0 * (m + 1) as f64);
            }
            d[0] *= 0.5;
            let scale = 2.0 / (self.b - self.a);
            d.iter_mut().for_each(|v| *v *= scale);
            d.truncate(n - 1);
        } else {
            d = vec![Complex64::new(0.0, 0.0)];
        }
        Self { a: self.a, b: self.b, coeffs: d }
    }

    /// Magnitude of the trailing quarter of the coefficients, a cheap
    /// resolution indicator.
    pub fn tail_magnitude(&self) -> f64 {
        let n = self.coeffs.len();
        self.coeffs[(3 * n) / 4..].iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

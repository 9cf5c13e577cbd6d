//! Complex log-Gamma by the Lanczos approximation (g = 7, nine terms) with
//! the reflection formula for `Re z < 1/2`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{CoreError, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Distance from a non-positive integer below which `z` is treated as a pole.
const POLE_GUARD: f64 = 1e-14;

/// `ln Gamma(z)`. The imaginary part is correct modulo `2 pi`, which is all
/// that `exp` and `arg` consumers need.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if z.re <= 0.0 && z.im.abs() < POLE_GUARD && (z.re - z.re.round()).abs() < POLE_GUARD {
        return Err(CoreError::GammaPole { re: z.re, im: z.im });
    }
    if z.re < 0.5 {
        // Gamma(z) Gamma(1 - z) = pi / sin(pi z)
        let s = (z * PI).sin();
        return Ok(Complex64::new(PI.ln(), 0.0) - s.ln() - ln_gamma_lanczos(Complex64::new(1.0, 0.0) - z));
    }
    Ok(ln_gamma_lanczos(z))
}

fn ln_gamma_lanczos(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut series = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        series += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + series.ln()
}

pub fn gamma(z: Complex64) -> Result<Complex64> {
    ln_gamma(z).map(|v| v.exp())
}

/// `|Gamma(i nu)|` for real `nu != 0` from the reflection identity.
pub fn abs_gamma_imaginary(nu: f64) -> f64 {
    (2.0 * PI).sqrt() / (nu.abs().sqrt() * ((-PI * nu).exp() - (PI * nu).exp()).abs().sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn classical_values() {
        assert!(ln_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-15);
        assert!(ln_gamma(c(2.0, 0.0)).unwrap().norm() < 1e-15);
        let half = ln_gamma(c(0.5, 0.0)).unwrap();
        assert!((half.re - PI.sqrt().ln()).abs() < 1e-14);
        let g5 = gamma(c(5.0, 0.0)).unwrap();
        assert!((g5.re - 24.0).abs() < 1e-12);
        let gm = gamma(c(-0.5, 0.0)).unwrap();
        assert!((gm.re + 2.0 * PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn recurrence_holds_off_axis() {
        for &z in &[c(0.3, 2.0), c(-2.7, 0.4), c(10.0, -30.0), c(0.1, -45.0)] {
            let lhs = gamma(z + 1.0).unwrap();
            let rhs = z * gamma(z).unwrap();
            assert!(((lhs - rhs) / rhs).norm() < 1e-12, "z = {z}");
        }
    }

    #[test]
    fn modulus_identity_on_imaginary_axis() {
        for &nu in &[-2.0, -0.3, -1e-4] {
            let g = gamma(c(0.0, nu)).unwrap();
            assert!((g.norm() / abs_gamma_imaginary(nu) - 1.0).abs() < 1e-12, "nu = {nu}");
        }
    }

    #[test]
    fn poles_are_rejected() {
        assert!(matches!(ln_gamma(c(0.0, 0.0)), Err(CoreError::GammaPole { .. })));
        assert!(matches!(ln_gamma(c(-3.0, 0.0)), Err(CoreError::GammaPole { .. })));
    }
}

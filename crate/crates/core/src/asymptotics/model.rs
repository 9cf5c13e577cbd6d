//! Moment constants of the parabolic-cylinder model problem.

use std::f64::consts::{FRAC_PI_4, PI, TAU};

use num_complex::Complex64;

use crate::error::Result;
use crate::numeric::gamma::gamma;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelConstants {
    pub q: Complex64,
    /// `-ln(1 + |q|^2) / (2 pi)`, never positive.
    pub nu: f64,
    pub beta12: Complex64,
    pub beta21: Complex64,
}

impl ModelConstants {
    /// `beta12 beta21 - nu`, zero up to roundoff.
    pub fn product_defect(&self) -> f64 {
        (self.beta12 * self.beta21 - self.nu).norm()
    }
}

pub fn model_rh_constants(q: Complex64) -> Result<ModelConstants> {
    let nu = -(q.norm_sqr()).ln_1p() / TAU;
    if q == Complex64::new(0.0, 0.0) || nu == 0.0 {
        let zero = Complex64::new(0.0, 0.0);
        return Ok(ModelConstants { q, nu, beta12: zero, beta21: zero });
    }
    let root = TAU.sqrt();
    let beta12 = root * Complex64::from_polar(1.0, FRAC_PI_4) * (1.5 * PI * nu).exp()
        / (q * gamma(Complex64::new(0.0, nu))?);
    let beta21 = root * Complex64::from_polar(1.0, -FRAC_PI_4) * (-2.5 * PI * nu).exp()
        / (-q.conj() * gamma(Complex64::new(0.0, -nu))?);
    Ok(ModelConstants { q, nu, beta12, beta21 })
}

/// `|beta12|` from the closed-form modulus of `Gamma(i nu)`.
pub fn beta12_modulus(q: Complex64) -> f64 {
    let nu = -(q.norm_sqr()).ln_1p() / TAU;
    if nu == 0.0 {
        return 0.0;
    }
    (1.5 * PI * nu).exp() * (-nu).sqrt() * ((-PI * nu).exp() - (PI * nu).exp()).sqrt() / q.norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn samples() -> [Complex64; 4] {
        [Complex64::new(0.5, 0.0), Complex64::new(1.0, 2.0), Complex64::new(0.0, -3.0), Complex64::new(10.0, 0.0)]
    }

    #[test]
    fn product_equals_nu() {
        for q in samples() {
            let m = model_rh_constants(q).unwrap();
            assert!(m.product_defect() < 1e-12, "q={q}: {:e}", m.product_defect());
            assert!(m.nu < 0.0);
        }
    }

    #[test]
    fn modulus_matches_closed_form() {
        for q in samples() {
            let m = model_rh_constants(q).unwrap();
            let closed = beta12_modulus(q);
            assert!((m.beta12.norm() - closed).abs() < 1e-12 * closed.max(1.0));
        }
    }

    #[test]
    fn zero_q_gives_zero_constants() {
        let m = model_rh_constants(Complex64::new(0.0, 0.0)).unwrap();
        assert_eq!(m.nu, 0.0);
        assert_eq!(m.beta12 * m.beta21, Complex64::new(0.0, 0.0));
    }
}

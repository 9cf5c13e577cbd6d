//! Finite-difference residual of `u_tt = u_xx + (u^2)_xx + u_xxxx`.

use std::time::Instant;

use boussinesq_core::numeric::Real;

use crate::report::VerificationReport;

/// Sixth-order central stencil for the second derivative as `(numerator,
/// denominator)` pairs (multiply by `1/h^2`). Kept rational so the weights sum
/// to zero exactly in extended precision.
pub const D2: [(f64, f64); 7] = [(1.0, 90.0), (-3.0, 20.0), (3.0, 2.0), (-49.0, 18.0), (3.0, 2.0), (-3.0, 20.0), (1.0, 90.0)];
/// Sixth-order central stencil for the fourth derivative (multiply by `1/h^4`).
pub const D4: [(f64, f64); 9] = [
    (7.0, 240.0),
    (-2.0, 5.0),
    (169.0, 60.0),
    (-122.0, 15.0),
    (91.0, 8.0),
    (-122.0, 15.0),
    (169.0, 60.0),
    (-2.0, 5.0),
    (7.0, 240.0),
];

fn weight<T: Real>((num, den): (f64, f64)) -> T {
    T::from_f64(num) / T::from_f64(den)
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GridError {
    #[error("grid needs at least 9 x nodes, got {0}")]
    TooFewNodes(usize),
    #[error("x range [{0}, {1}] is empty")]
    EmptyRange(f64, f64),
    #[error("t values must be strictly increasing")]
    TimesNotIncreasing,
    #[error("stencil step h = {0} must be positive and finite")]
    BadStep(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub n_x: usize,
    pub t_values: Vec<f64>,
}

impl GridSpec {
    pub fn new(x_min: f64, x_max: f64, n_x: usize, t_values: Vec<f64>) -> Result<Self, GridError> {
        if n_x < 9 {
            return Err(GridError::TooFewNodes(n_x));
        }
        if !(x_min < x_max) {
            return Err(GridError::EmptyRange(x_min, x_max));
        }
        if t_values.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(GridError::TimesNotIncreasing);
        }
        Ok(Self { x_min, x_max, n_x, t_values })
    }

    pub fn xs(&self) -> Vec<f64> {
        let step = (self.x_max - self.x_min) / (self.n_x - 1) as f64;
        (0..self.n_x).map(|j| self.x_min + step * j as f64).collect()
    }

    /// Nodes whose 9-point stencil at spacing `h` stays inside the grid's x range.
    fn interior(&self, h: f64) -> impl Iterator<Item = f64> + '_ {
        let margin = 4.0 * h;
        self.xs().into_iter().filter(move |&x| x - margin >= self.x_min - 1e-12 && x + margin <= self.x_max + 1e-12)
    }
}

/// Pointwise residual at `(x, t)` with step `h`, evaluated in the field's precision.
pub fn residual_at<T: Real, F: Fn(T, T) -> T>(field: &F, x: f64, t: f64, h: f64) -> f64 {
    let (xt, tt, ht) = (T::from_f64(x), T::from_f64(t), T::from_f64(h));
    let shift = |j: i32| T::from_f64(j as f64) * ht;
    let mut u_xx = T::zero();
    let mut sq_xx = T::zero();
    let mut u_tt = T::zero();
    for (j, &w) in D2.iter().enumerate() {
        let w = weight::<T>(w);
        let off = shift(j as i32 - 3);
        let u = field(xt + off, tt);
        u_xx = u_xx + w * u;
        sq_xx = sq_xx + w * u * u;
        u_tt = u_tt + w * field(xt, tt + off);
    }
    let mut u_xxxx = T::zero();
    for (j, &w) in D4.iter().enumerate() {
        u_xxxx = u_xxxx + weight::<T>(w) * field(xt + shift(j as i32 - 4), tt);
    }
    let h2 = ht * ht;
    let r = (u_tt - u_xx - sq_xx) / h2 - u_xxxx / (h2 * h2);
    r.to_f64().abs()
}

/// Residual maxima at `h` and `h/2` and the observed order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualStudy {
    pub h: f64,
    pub residual: f64,
    pub residual_half: f64,
    /// `log2(residual / residual_half)`.
    pub order: f64,
}

impl ResidualStudy {
    pub fn ratio(&self) -> f64 {
        self.residual / self.residual_half
    }

    /// Reported as the reduction factor `residual_half / residual` against
    /// `2^-min_order`; a residual that is already zero counts as converged.
    pub fn report(&self, name: &str, min_order: f64, runtime_ms: f64) -> VerificationReport {
        let factor = if self.residual == 0.0 { 0.0 } else { self.residual_half / self.residual };
        VerificationReport::new(name, factor, (-min_order).exp2(), runtime_ms)
    }
}

pub fn max_residual<T: Real, F: Fn(T, T) -> T + Sync>(field: &F, grid: &GridSpec, h: f64) -> Result<f64, GridError> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(GridError::BadStep(h));
    }
    let mut worst: f64 = 0.0;
    let mut any = false;
    for &t in &grid.t_values {
        for x in grid.interior(h) {
            worst = worst.max(residual_at(field, x, t, h));
            any = true;
        }
    }
    if !any {
        return Err(GridError::TooFewNodes(0));
    }
    Ok(worst)
}

/// Residual at `h` and `h/2` over the grid interior.
pub fn pde_residual<T: Real, F: Fn(T, T) -> T + Sync>(field: &F, grid: &GridSpec, h: f64) -> Result<ResidualStudy, GridError> {
    let residual = max_residual(field, grid, h)?;
    let residual_half = max_residual(field, grid, h / 2.0)?;
    Ok(ResidualStudy { h, residual, residual_half, order: (residual / residual_half).log2() })
}

/// Residual study packaged as a report.
pub fn pde_residual_report<T: Real, F: Fn(T, T) -> T + Sync>(
    name: &str,
    field: &F,
    grid: &GridSpec,
    h: f64,
    min_order: f64,
) -> Result<VerificationReport, GridError> {
    let start = Instant::now();
    let study = pde_residual(field, grid, h)?;
    Ok(study.report(name, min_order, start.elapsed().as_secs_f64() * 1e3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use boussinesq_core::numeric::Dd;
    use boussinesq_core::soliton::OneSolitonParameters;
    use boussinesq_core::spectrum::admissible_real_constant;

    #[test]
    fn stencils_are_consistent() {
        let w2: Vec<Dd> = D2.iter().map(|&w| weight::<Dd>(w)).collect();
        let w4: Vec<Dd> = D4.iter().map(|&w| weight::<Dd>(w)).collect();
        let moment = |ws: &[Dd], center: f64, p: i32| -> f64 {
            ws.iter().enumerate().fold(Dd::from(0.0), |acc, (j, &w)| acc + w * Dd::from((j as f64 - center).powi(p))).to_f64()
        };
        assert!(moment(&w2, 3.0, 0).abs() < 1e-30 && (moment(&w2, 3.0, 2) - 2.0).abs() < 1e-30);
        assert!(moment(&w4, 4.0, 0).abs() < 1e-30 && (moment(&w4, 4.0, 4) - 24.0).abs() < 1e-29);
        assert!(moment(&w4, 4.0, 2).abs() < 1e-29 && moment(&w2, 3.0, 4).abs() < 1e-29);
    }

    #[test]
    fn zero_field_has_zero_residual() {
        let grid = GridSpec::new(-1.0, 1.0, 11, vec![0.0]).unwrap();
        let study = pde_residual(&|_: f64, _: f64| 0.0, &grid, 0.05).unwrap();
        assert_eq!(study.residual, 0.0);
        assert!(study.report("zero", 4.0, 0.0).passed);
    }

    #[test]
    fn one_soliton_converges_at_high_order() {
        let p = OneSolitonParameters::new(1.8, admissible_real_constant(1.8, 0.1)).unwrap();
        let grid = GridSpec::new(-6.0, 6.0, 25, vec![0.0, 2.0]).unwrap();
        let study = pde_residual(&|x: Dd, t: Dd| p.eval(x, t), &grid, 0.1).unwrap();
        assert!(study.order >= 4.0, "{study:?}");
    }

    #[test]
    fn grid_validation() {
        assert_eq!(GridSpec::new(0.0, 1.0, 5, vec![0.0]), Err(GridError::TooFewNodes(5)));
        assert_eq!(GridSpec::new(0.0, 1.0, 9, vec![1.0, 0.5]), Err(GridError::TimesNotIncreasing));
        let grid = GridSpec::new(0.0, 1.0, 9, vec![0.0]).unwrap();
        assert!(matches!(max_residual(&|_: f64, _: f64| 0.0, &grid, 0.0), Err(GridError::BadStep(_))));
    }
}

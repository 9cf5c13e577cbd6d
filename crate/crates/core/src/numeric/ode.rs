//! Adaptive Dormand-Prince 5(4) integrator for complex vector ODEs.

use num_complex::Complex64;

use crate::error::{CoreError, Result};

#[derive(Debug, Clone, Copy)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
    /// Initial step magnitude; zero means one hundredth of the interval.
    pub initial_step: f64,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self { rtol: 1e-11, atol: 1e-13, max_steps: 200_000, initial_step: 0.0 }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct OdeStats {
    pub accepted: usize,
    pub rejected: usize,
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Integrates `y' = f(x, y)` from `x0` to `x1` (either direction).
pub fn integrate<F>(mut f: F, x0: f64, x1: f64, y0: &[Complex64], opts: &OdeOptions) -> Result<(Vec<Complex64>, OdeStats)>
where
    F: FnMut(f64, &[Complex64], &mut [Complex64]),
{
    let n = y0.len();
    let mut y = y0.to_vec();
    let mut stats = OdeStats::default();
    let span = x1 - x0;
    if span == 0.0 {
        return Ok((y, stats));
    }
    let dir = span.signum();
    let mut h = if opts.initial_step > 0.0 { opts.initial_step } else { span.abs() / 100.0 };
    let mut x = x0;
    let mut k = vec![vec![Complex64::new(0.0, 0.0); n]; 7];
    let mut tmp = vec![Complex64::new(0.0, 0.0); n];
    let mut y5 = vec![Complex64::new(0.0, 0.0); n];
    f(x, &y, &mut k[0]);
    let mut fsal_valid = true;

    while (x1 - x) * dir > 0.0 {
        if stats.accepted + stats.rejected >= opts.max_steps {
            return Err(CoreError::StepBudget { x, step: h });
        }
        let last = (x + dir * h - x1) * dir >= 0.0;
        let step = if last { (x1 - x).abs() } else { h };
        let hs = dir * step;
        if !fsal_valid {
            f(x, &y, &mut k[0]);
        }
        for s in 1..7 {
            for i in 0..n {
                let mut acc = y[i];
                for (j, kj) in k.iter().enumerate().take(s) {
                    if A[s][j] != 0.0 {
                        acc += kj[i] * (hs * A[s][j]);
                    }
                }
                tmp[i] = acc;
            }
            let (head, tail) = k.split_at_mut(s);
            let _ = head;
            f(x + C[s] * hs, &tmp, &mut tail[0]);
        }
        let mut err_norm = 0.0f64;
        for i in 0..n {
            let mut s5 = y[i];
            let mut e = Complex64::new(0.0, 0.0);
            for s in 0..7 {
                s5 += k[s][i] * (hs * B5[s]);
                e += k[s][i] * (hs * (B5[s] - B4[s]));
            }
            y5[i] = s5;
            let scale = opts.atol + opts.rtol * y[i].norm().max(s5.norm());
            err_norm = err_norm.max(e.norm() / scale);
        }
        if !err_norm.is_finite() {
            return Err(CoreError::StepBudget { x, step });
        }
        if err_norm <= 1.0 {
            x = if last { x1 } else { x + hs };
            y.copy_from_slice(&y5);
            // First-same-as-last: stage 7 was evaluated at the new point.
            let (first, rest) = k.split_at_mut(1);
            first[0].copy_from_slice(&rest[5]);
            fsal_valid = true;
            stats.accepted += 1;
        } else {
            stats.rejected += 1;
            fsal_valid = true;
        }
        let factor = if err_norm == 0.0 { 5.0 } else { (0.9 * err_norm.powf(-0.2)).clamp(0.2, 5.0) };
        h = step * factor;
        if h < 1e-14 * (1.0 + x.abs()) {
            return Err(CoreError::StepBudget { x, step: h });
        }
    }
    Ok((y, stats))
}

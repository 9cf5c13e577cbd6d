//! Zeros of `s11` in a rectangle of `D2` by the argument principle.
//!
//! Each cell's zero count is the winding of `f` along its boundary, sampled
//! adaptively so that consecutive phase increments stay below
//! [`ZeroSearchOptions::max_phase_step`]. Cells with one zero are refined by the
//! secant method from the first moment `(2 pi i)^{-1} \oint k dlog f`; cells with
//! more are split into quadrants until they reach the minimal size.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{CoreError, Result};
use crate::scattering::data::InitialData;
use crate::scattering::eigen::{s11, EXCLUSION_RADIUS};
use crate::spectral::{distance_to_sixth_roots, in_d2};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchRect {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl SearchRect {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self> {
        if !(re_min < re_max && im_min < im_max) {
            return Err(CoreError::Search(format!(
                "empty rectangle [{re_min}, {re_max}] x [{im_min}, {im_max}]"
            )));
        }
        Ok(Self { re_min, re_max, im_min, im_max })
    }

    pub fn width(&self) -> f64 {
        self.re_max - self.re_min
    }

    pub fn height(&self) -> f64 {
        self.im_max - self.im_min
    }

    pub fn size(&self) -> f64 {
        self.width().max(self.height())
    }

    /// Corners in counterclockwise order from the lower left.
    pub fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.re_min, self.im_min),
            Complex64::new(self.re_max, self.im_min),
            Complex64::new(self.re_max, self.im_max),
            Complex64::new(self.re_min, self.im_max),
        ]
    }

    pub fn contains(&self, k: Complex64, pad: f64) -> bool {
        k.re >= self.re_min - pad && k.re <= self.re_max + pad && k.im >= self.im_min - pad && k.im <= self.im_max + pad
    }

    /// Quadrants split at the fraction `t` of each side.
    fn split(&self, t: f64) -> [SearchRect; 4] {
        let xm = self.re_min + t * self.width();
        let ym = self.im_min + t * self.height();
        [
            SearchRect { re_min: self.re_min, re_max: xm, im_min: self.im_min, im_max: ym },
            SearchRect { re_min: xm, re_max: self.re_max, im_min: self.im_min, im_max: ym },
            SearchRect { re_min: xm, re_max: self.re_max, im_min: ym, im_max: self.im_max },
            SearchRect { re_min: self.re_min, re_max: xm, im_min: ym, im_max: self.im_max },
        ]
    }

    /// Every boundary sample lies in `D2` away from the sixth roots of unity.
    pub fn check_in_d2(&self) -> Result<()> {
        let c = self.corners();
        for e in 0..4 {
            for j in 0..64 {
                let k = c[e] + (c[(e + 1) % 4] - c[e]) * (j as f64 / 64.0);
                if !in_d2(k) || distance_to_sixth_roots(k) < EXCLUSION_RADIUS {
                    return Err(CoreError::Search(format!("rectangle leaves D2 near k = {k}")));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ZeroSearchOptions {
    /// Quadrant splits allowed below the initial rectangle.
    pub max_depth: usize,
    /// Cells smaller than this still holding several zeros signal a multiple zero.
    pub min_cell: f64,
    /// Initial samples per edge before adaptive refinement.
    pub edge_samples: usize,
    pub max_phase_step: f64,
    /// Target for `|f|` at an accepted zero.
    pub residual_target: f64,
}

impl Default for ZeroSearchOptions {
    fn default() -> Self {
        Self { max_depth: 12, min_cell: 1e-4, edge_samples: 12, max_phase_step: 0.4, residual_target: 1e-9 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocatedZero {
    pub k: Complex64,
    /// `|f(k)|` at the returned point.
    pub residual: f64,
    /// Winding number on a small circle around `k`; always 1 for a returned zero.
    pub winding: i64,
}

/// Winding number of `f` along a closed polygon together with the moment
/// `(2 pi i)^{-1} \oint k f'/f dk`.
#[derive(Debug, Clone, Copy)]
pub struct Winding {
    pub count: i64,
    pub moment: Complex64,
}

const MAX_BISECTIONS: usize = 40;

fn edge_winding<F>(f: &F, vertices: &[Complex64], opts: &ZeroSearchOptions) -> Result<Winding>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    let n = opts.edge_samples.max(2);
    let mut points: Vec<Complex64> = Vec::with_capacity(vertices.len() * n);
    for e in 0..vertices.len() {
        let (a, b) = (vertices[e], vertices[(e + 1) % vertices.len()]);
        for j in 0..n {
            points.push(a + (b - a) * (j as f64 / n as f64));
        }
    }
    let values: Vec<Complex64> = points.par_iter().map(|&k| f(k)).collect::<Result<_>>()?;
    let mut total_arg = 0.0;
    let mut moment = Complex64::new(0.0, 0.0);
    for i in 0..points.len() {
        let j = (i + 1) % points.len();
        let mut stack = vec![(points[i], values[i], points[j], values[j], 0usize)];
        while let Some((ka, fa, kb, fb, depth)) = stack.pop() {
            if fa.norm() == 0.0 || fb.norm() == 0.0 {
                return Err(CoreError::Search(format!("function vanishes on the contour near {ka}")));
            }
            let step = (fb / fa).ln();
            if step.im.abs() > opts.max_phase_step {
                if depth >= MAX_BISECTIONS {
                    return Err(CoreError::Search(format!("phase not resolved on the contour near {ka}")));
                }
                let km = 0.5 * (ka + kb);
                let fm = f(km)?;
                // Pushed in reverse so the first half is processed first.
                stack.push((km, fm, kb, fb, depth + 1));
                stack.push((ka, fa, km, fm, depth + 1));
                continue;
            }
            total_arg += step.im;
            moment += 0.5 * (ka + kb) * step;
        }
    }
    let count = total_arg / TAU;
    let rounded = count.round();
    if (count - rounded).abs() > 0.1 {
        return Err(CoreError::Search(format!("non-integer winding {count}")));
    }
    Ok(Winding { count: rounded as i64, moment: moment / Complex64::new(0.0, TAU) })
}

pub fn winding_on_rect<F>(f: &F, rect: &SearchRect, opts: &ZeroSearchOptions) -> Result<Winding>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    edge_winding(f, &rect.corners(), opts)
}

pub fn winding_on_circle<F>(f: &F, center: Complex64, radius: f64, opts: &ZeroSearchOptions) -> Result<Winding>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    let vertices: Vec<Complex64> =
        (0..16).map(|j| center + Complex64::from_polar(radius, TAU * j as f64 / 16.0)).collect();
    let opts = ZeroSearchOptions { edge_samples: 2, ..*opts };
    edge_winding(f, &vertices, &opts)
}

/// Total winding over an `nx` by `ny` grid of cells covering `rect`.
pub fn count_on_grid<F>(f: &F, rect: &SearchRect, nx: usize, ny: usize, opts: &ZeroSearchOptions) -> Result<i64>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    let mut total = 0;
    for i in 0..nx {
        for j in 0..ny {
            let cell = SearchRect {
                re_min: rect.re_min + rect.width() * i as f64 / nx as f64,
                re_max: rect.re_min + rect.width() * (i + 1) as f64 / nx as f64,
                im_min: rect.im_min + rect.height() * j as f64 / ny as f64,
                im_max: rect.im_min + rect.height() * (j + 1) as f64 / ny as f64,
            };
            total += winding_on_rect(f, &cell, opts)?.count;
        }
    }
    Ok(total)
}

fn secant<F>(f: &F, guess: Complex64, scale: f64, target: f64) -> Result<(Complex64, f64)>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let mut k0 = guess;
    let mut k1 = guess + Complex64::new(1e-3 * scale, 0.0);
    let mut f0 = f(k0)?;
    let mut f1 = f(k1)?;
    for _ in 0..60 {
        if f1.norm() < target * 1e-4 {
            break;
        }
        let denom = f1 - f0;
        if denom.norm() == 0.0 {
            break;
        }
        let k2 = k1 - f1 * (k1 - k0) / denom;
        k0 = k1;
        f0 = f1;
        k1 = k2;
        f1 = f(k1)?;
        if (k1 - k0).norm() <= 1e-14 * k1.norm().max(1.0) {
            break;
        }
    }
    if f0.norm() < f1.norm() {
        return Ok((k0, f0.norm()));
    }
    Ok((k1, f1.norm()))
}

fn search_cell<F>(f: &F, rect: SearchRect, count: i64, depth: usize, opts: &ZeroSearchOptions) -> Result<Vec<LocatedZero>>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    if count == 0 {
        return Ok(Vec::new());
    }
    if count < 0 {
        return Err(CoreError::Search(format!("negative winding {count} (pole inside the cell?)")));
    }
    if count == 1 {
        let w = winding_on_rect(f, &rect, opts)?;
        let (k, residual) = secant(f, w.moment, rect.size(), opts.residual_target)?;
        if residual <= opts.residual_target && rect.contains(k, 1e-9 * rect.size()) {
            let radius = (0.25 * rect.size()).min(1e-3);
            let local = winding_on_circle(f, k, radius, opts)?;
            if local.count != 1 {
                return Err(CoreError::MultipleZero { re: k.re, im: k.im, winding: local.count });
            }
            return Ok(vec![LocatedZero { k, residual, winding: local.count }]);
        }
    }
    if depth >= opts.max_depth || rect.size() < opts.min_cell {
        let c = 0.5 * (rect.corners()[0] + rect.corners()[2]);
        if count > 1 {
            return Err(CoreError::MultipleZero { re: c.re, im: c.im, winding: count });
        }
        return Err(CoreError::Search(format!("refinement did not converge in the cell around {c}")));
    }
    for &t in &[0.5, 0.472_135_955, 0.531_9] {
        let children = rect.split(t);
        let counts: Vec<Result<i64>> = children.iter().map(|c| winding_on_rect(f, c, opts).map(|w| w.count)).collect();
        if counts.iter().any(|c| c.is_err()) {
            continue;
        }
        let counts: Vec<i64> = counts.into_iter().map(|c| c.unwrap()).collect();
        if counts.iter().sum::<i64>() != count {
            continue;
        }
        let mut found = Vec::new();
        for (child, c) in children.into_iter().zip(counts) {
            found.extend(search_cell(f, child, c, depth + 1, opts)?);
        }
        return Ok(found);
    }
    Err(CoreError::Search(format!("zero count {count} not reproduced by any subdivision of {rect:?}")))
}

/// All zeros of an analytic `f` inside `rect`.
pub fn locate_zeros_of<F>(f: &F, rect: &SearchRect, opts: &ZeroSearchOptions) -> Result<Vec<LocatedZero>>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    let total = winding_on_rect(f, rect, opts)?.count;
    let mut zeros = search_cell(f, *rect, total, 0, opts)?;
    if zeros.len() as i64 != total {
        return Err(CoreError::Search(format!("found {} zeros, winding says {total}", zeros.len())));
    }
    zeros.sort_by(|a, b| a.k.re.total_cmp(&b.k.re).then(a.k.im.total_cmp(&b.k.im)));
    Ok(zeros)
}

/// Zeros of `s11` in a rectangle contained in `D2`.
pub fn locate_zeros(data: &InitialData, rect: &SearchRect, opts: &ZeroSearchOptions) -> Result<Vec<LocatedZero>> {
    rect.check_in_d2()?;
    if data.is_zero() {
        return Ok(Vec::new());
    }
    let f = |k: Complex64| s11(data, k);
    locate_zeros_of(&f, rect, opts)
}

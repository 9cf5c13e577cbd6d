//! Asymptotic predictions along a ray `x = zeta t`, set against the exact
//! field where one is available.

use std::sync::Arc;

use anyhow::Result;
use boussinesq_core::asymptotics::{radiation_terms, u_sol, ModulationContext, SolitonRoute};
use boussinesq_core::scattering::ReflectionTable;
use boussinesq_core::soliton::u_multisoliton;
use boussinesq_core::spectrum::SolitonSpectrum;
use serde::Serialize;

use crate::csvio::{Cell, Table};

/// Largest deviation accepted on reflectionless rows, where the prediction is exact.
pub const REFLECTIONLESS_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareRow {
    pub t: f64,
    pub x: f64,
    pub u_sol: f64,
    pub u_rad_over_sqrt_t: f64,
    pub predicted: f64,
    /// Multi-soliton field; only exact when the reflection vanishes.
    pub exact: Option<f64>,
    pub deviation: Option<f64>,
    /// Amplitude of the radiation term, `envelope / sqrt(t)`.
    pub radiation_envelope: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareOutcome {
    pub zeta: f64,
    pub reflectionless: bool,
    pub rows: Vec<CompareRow>,
    /// Least-squares slope of `ln(envelope / sqrt t)` against `ln t`; about `-1/2`.
    pub envelope_slope: Option<f64>,
}

impl CompareOutcome {
    pub fn max_deviation(&self) -> Option<f64> {
        self.rows.iter().filter_map(|r| r.deviation).reduce(f64::max)
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new(&["zeta", "t", "x", "u_sol", "u_rad_over_sqrt_t", "predicted", "exact", "deviation", "status"]);
        for r in &self.rows {
            let opt = |v: Option<f64>| v.map(Cell::Num).unwrap_or_else(|| Cell::Text(String::new()));
            let status = match r.deviation {
                Some(d) if d <= REFLECTIONLESS_TOLERANCE => "exact_match",
                Some(_) => "deviation",
                None => "prediction_only",
            };
            t.push(vec![
                self.zeta.into(),
                r.t.into(),
                r.x.into(),
                r.u_sol.into(),
                r.u_rad_over_sqrt_t.into(),
                r.predicted.into(),
                opt(r.exact),
                opt(r.deviation),
                status.into(),
            ]);
        }
        t
    }
}

/// Slope of the least-squares line through `(x, y)`; `None` for fewer than two points.
pub fn fit_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

pub fn compare_asymptotics(
    spec: &SolitonSpectrum,
    table: Arc<ReflectionTable>,
    zeta: f64,
    times: &[f64],
) -> Result<CompareOutcome> {
    let ctx = ModulationContext::new(zeta, table, spec)?;
    let reflectionless = ctx.is_reflectionless();
    let mut rows = Vec::with_capacity(times.len());
    for &t in times {
        let x = zeta * t;
        let sol = u_sol(x, t, spec, &ctx, SolitonRoute::Determinant)?.u;
        let terms = radiation_terms(x, t, spec, &ctx)?;
        let rad = terms.value().re / t.sqrt();
        let predicted = sol + rad;
        let exact = if reflectionless { Some(u_multisoliton(x, t, spec)?.u) } else { None };
        rows.push(CompareRow {
            t,
            x,
            u_sol: sol,
            u_rad_over_sqrt_t: rad,
            predicted,
            exact,
            deviation: exact.map(|e| (predicted - e).abs()),
            radiation_envelope: terms.envelope() / t.sqrt(),
        });
    }
    let points: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.radiation_envelope > 0.0)
        .map(|r| (r.t.ln(), r.radiation_envelope.ln()))
        .collect();
    Ok(CompareOutcome { zeta, reflectionless, rows, envelope_slope: fit_slope(&points) })
}

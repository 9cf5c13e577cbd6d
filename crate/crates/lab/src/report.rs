//! Pass/fail records shared by the suite, the CLI and the acceptance target.

use std::fmt;
use std::time::Instant;

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check_name: String,
    pub measured: f64,
    pub tolerance: f64,
    /// `measured <= tolerance`; NaN never passes.
    pub passed: bool,
    pub runtime_ms: f64,
    /// Set for checks that fail for a documented reason outside the code.
    pub known_deviation: bool,
    pub detail: String,
}

impl VerificationReport {
    pub fn new(name: &str, measured: f64, tolerance: f64, runtime_ms: f64) -> Self {
        Self {
            check_name: name.to_string(),
            measured,
            tolerance,
            passed: measured <= tolerance,
            runtime_ms,
            known_deviation: false,
            detail: String::new(),
        }
    }

    /// A check that could not be evaluated at all.
    pub fn errored(name: &str, tolerance: f64, runtime_ms: f64, error: impl fmt::Display) -> Self {
        let mut r = Self::new(name, f64::NAN, tolerance, runtime_ms);
        r.detail = format!("error: {error}");
        r
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    pub fn known_deviation(mut self) -> Self {
        self.known_deviation = true;
        self
    }

    pub fn status(&self) -> &'static str {
        match (self.passed, self.known_deviation) {
            (true, _) => "PASS",
            (false, true) => "DEVIATION",
            (false, false) => "FAIL",
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<9} {:<58} measured {:>10.3e}  tol {:>9.2e}  {:>9.1} ms",
            self.status(),
            self.check_name,
            self.measured,
            self.tolerance,
            self.runtime_ms
        )?;
        if !self.detail.is_empty() {
            write!(f, "  ({})", self.detail)?;
        }
        Ok(())
    }
}

/// Runs `body`, timing it; errors become a failed report.
pub fn timed<E: fmt::Display>(
    name: &str,
    tolerance: f64,
    body: impl FnOnce() -> Result<(f64, String), E>,
) -> VerificationReport {
    let start = Instant::now();
    let out = body();
    let ms = start.elapsed().as_secs_f64() * 1e3;
    match out {
        Ok((measured, detail)) => VerificationReport::new(name, measured, tolerance, ms).with_detail(detail),
        Err(e) => VerificationReport::errored(name, tolerance, ms, e),
    }
}

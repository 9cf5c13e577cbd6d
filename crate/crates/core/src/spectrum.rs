//! Discrete scattering data: breather poles in `D_reg` and real poles in
//! `(-1, 0) u (1, inf)`, each carrying a residue constant.

use num_complex::Complex64;

use crate::spectral::{classify_region, RegionTag, OMEGA, OMEGA2};

/// Poles closer than this are considered coincident.
pub const COINCIDENCE_TOLERANCE: f64 = 1e-8;
/// Velocities closer than this belong to the same group.
pub const VELOCITY_GROUPING: f64 = 1e-10;
/// Slack allowed in the reality condition `i (omega^2 k^2 - omega) c >= 0`.
pub const REALITY_SLACK: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Breather {
    pub lambda: Complex64,
    pub c: Complex64,
}

impl Breather {
    /// Constant attached to the conjugate pole `conj(lambda)`.
    pub fn d_constant(&self) -> Complex64 {
        conjugate_pole_constant(self.lambda, self.c)
    }

    pub fn velocity(&self) -> Complex64 {
        breather_velocity(self.lambda)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealSoliton {
    pub k: f64,
    pub c: Complex64,
}

impl RealSoliton {
    pub fn velocity(&self) -> f64 {
        soliton_velocity(self.k)
    }

    /// `i (omega^2 k^2 - omega) c`, real and nonnegative for a regular soliton.
    pub fn reality_weight(&self) -> Complex64 {
        reality_weight(self.k, self.c)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SolitonSpectrum {
    pub breathers: Vec<Breather>,
    pub real_solitons: Vec<RealSoliton>,
}

impl SolitonSpectrum {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.breathers.is_empty() && self.real_solitons.is_empty()
    }

    pub fn with_soliton(mut self, k: f64, c: Complex64) -> Self {
        self.real_solitons.push(RealSoliton { k, c });
        self
    }

    pub fn with_breather(mut self, lambda: Complex64, c: Complex64) -> Self {
        self.breathers.push(Breather { lambda, c });
        self
    }

    /// Every pole in the spectral plane, breathers first.
    pub fn poles(&self) -> Vec<Complex64> {
        self.breathers
            .iter()
            .map(|b| b.lambda)
            .chain(self.real_solitons.iter().map(|s| Complex64::new(s.k, 0.0)))
            .collect()
    }

    /// Smallest distance between two listed poles (infinity for fewer than two).
    pub fn min_pole_separation(&self) -> f64 {
        let p = self.poles();
        let mut best = f64::INFINITY;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                best = best.min((p[i] - p[j]).norm());
            }
        }
        best
    }
}

/// `d = (conj(lambda)^2 - 1) / (omega^2 (omega^2 - conj(lambda)^2)) * conj(c)`.
pub fn conjugate_pole_constant(lambda: Complex64, c: Complex64) -> Complex64 {
    let lb = lambda.conj();
    (lb * lb - 1.0) / (OMEGA2 * (OMEGA2 - lb * lb)) * c.conj()
}

pub fn reality_weight(k: f64, c: Complex64) -> Complex64 {
    Complex64::i() * (OMEGA2 * k * k - OMEGA) * c
}

/// Residue constant of modulus `magnitude` satisfying the reality condition.
pub fn admissible_real_constant(k: f64, magnitude: f64) -> Complex64 {
    let phase = (Complex64::i() * (OMEGA2 * k * k - OMEGA)).arg();
    Complex64::from_polar(magnitude, -phase)
}

/// `(k + 1/k) / 2`.
pub fn soliton_velocity(k: f64) -> f64 {
    0.5 * (k + 1.0 / k)
}

/// Velocity of the breather generated by `lambda`; real up to rounding.
pub fn breather_velocity(lambda: Complex64) -> Complex64 {
    let m2 = lambda.norm_sqr();
    let lb = lambda.conj();
    (1.0 + m2) * (lambda * lambda + OMEGA * lb * lb) / (2.0 * m2 * (OMEGA * lambda + lb))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<ValidationCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ValidationCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, name: String, passed: bool, detail: String) {
        self.checks.push(ValidationCheck { name, passed, detail });
    }
}

pub fn validate_spectrum(spec: &SolitonSpectrum) -> ValidationReport {
    let mut report = ValidationReport::default();
    for (i, b) in spec.breathers.iter().enumerate() {
        let region = classify_region(b.lambda);
        report.push(
            format!("breather[{i}] in D_reg"),
            region == RegionTag::DReg,
            format!("lambda = {}, region {:?}", b.lambda, region),
        );
        report.push(format!("breather[{i}] constant nonzero"), b.c.norm() > 0.0, format!("c = {}", b.c));
    }
    for (i, s) in spec.real_solitons.iter().enumerate() {
        let region = classify_region(Complex64::new(s.k, 0.0));
        report.push(
            format!("soliton[{i}] in (-1,0) u (1,inf)"),
            region == RegionTag::D2Real,
            format!("k = {}", s.k),
        );
        report.push(format!("soliton[{i}] constant nonzero"), s.c.norm() > 0.0, format!("c = {}", s.c));
        let w = s.reality_weight();
        let scale = w.norm().max(1.0);
        report.push(
            format!("soliton[{i}] reality condition"),
            w.re >= -REALITY_SLACK * scale && w.im.abs() <= REALITY_SLACK * scale,
            format!("i(w^2 k^2 - w) c = {w}"),
        );
    }
    let sep = spec.min_pole_separation();
    report.push(
        "poles distinct".into(),
        sep > COINCIDENCE_TOLERANCE,
        format!("minimum separation {sep:e}"),
    );
    report
}

/// Solitons sharing one asymptotic velocity.
#[derive(Debug, Clone, PartialEq)]
pub struct VelocityGroup {
    pub zeta: f64,
    /// Breather indices travelling at `zeta`.
    pub breathers: Vec<usize>,
    /// Real-soliton indices travelling at `zeta`.
    pub solitons: Vec<usize>,
}

/// Velocities in `(1, inf)`, grouped and sorted increasingly.
pub fn velocities(spec: &SolitonSpectrum) -> Vec<VelocityGroup> {
    let mut groups: Vec<VelocityGroup> = Vec::new();
    let mut insert = |zeta: f64, breather: Option<usize>, soliton: Option<usize>| {
        if !(zeta > 1.0) {
            return;
        }
        let idx = match groups.iter().position(|g| (g.zeta - zeta).abs() <= VELOCITY_GROUPING) {
            Some(i) => i,
            None => {
                groups.push(VelocityGroup { zeta, breathers: vec![], solitons: vec![] });
                groups.len() - 1
            }
        };
        let g = &mut groups[idx];
        g.breathers.extend(breather);
        g.solitons.extend(soliton);
    };
    for (i, b) in spec.breathers.iter().enumerate() {
        insert(b.velocity().re, Some(i), None);
    }
    for (i, s) in spec.real_solitons.iter().enumerate() {
        insert(s.velocity(), None, Some(i));
    }
    groups.sort_by(|a, b| a.zeta.partial_cmp(&b.zeta).unwrap());
    groups
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissible_constant_passes_validation() {
        let spec = SolitonSpectrum::empty().with_soliton(1.3, admissible_real_constant(1.3, 0.1));
        let report = validate_spectrum(&spec);
        assert!(report.passed(), "{report:?}");
        let w = spec.real_solitons[0].reality_weight();
        assert!(w.re > 0.0 && w.im.abs() < 1e-15);
    }

    #[test]
    fn bad_poles_fail() {
        let inside = SolitonSpectrum::empty().with_soliton(0.5, Complex64::new(1.0, 0.0));
        assert!(!validate_spectrum(&inside).passed());
        let sing = SolitonSpectrum::empty().with_breather(Complex64::new(1.2, -0.01), Complex64::new(1.0, 0.0));
        assert!(!validate_spectrum(&sing).passed());
        let twice = SolitonSpectrum::empty()
            .with_soliton(1.3, admissible_real_constant(1.3, 0.1))
            .with_soliton(1.3, admissible_real_constant(1.3, 0.2));
        let report = validate_spectrum(&twice);
        assert!(report.failures().any(|c| c.name == "poles distinct"));
    }

    #[test]
    fn velocity_values() {
        assert!((soliton_velocity(1.3) - 1.034_615_384_615_384_6).abs() < 1e-15);
        let v = breather_velocity(Complex64::new(1.2, 0.01));
        assert!(v.im.abs() < 1e-12 && v.re.abs() > 1.0, "{v}");
        let spec = SolitonSpectrum::empty()
            .with_soliton(1.8, admissible_real_constant(1.8, 0.1))
            .with_soliton(1.3, admissible_real_constant(1.3, 0.1))
            .with_soliton(-0.5, admissible_real_constant(-0.5, 0.1));
        let groups = velocities(&spec);
        assert_eq!(groups.len(), 2);
        assert!(groups[0].zeta < groups[1].zeta);
        assert_eq!(groups[0].solitons, vec![1]);
    }
}

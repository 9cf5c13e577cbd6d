//! Pole-only Riemann-Hilbert problem for `M_sol`.
//!
//! Every row of `M_sol` is `e_i^T + sum_a Y_a e_{col(a)}^T / (k - p_a)` over the
//! orbit poles `p_a`. Column `col(a)` of `M_sol` has a simple pole at `p_a` whose
//! residue is `C_a` times column `rel(a)` evaluated there. Evaluating that
//! condition at every pole gives the dense system
//! `Y_a - C_a sum_{b: col(b) = rel(a)} Y_b / (p_a - p_b) = C_a e_{rel(a)}`,
//! solved for all three rows at once (one right-hand side per row).
//!
//! A breather `lambda` contributes twelve poles (its orbit under rotation by
//! `omega`, inversion and conjugation), a real pole six.

use num_complex::Complex64;

use crate::asymptotics::modulation::ModulationContext;
use crate::error::{CoreError, Result};
use crate::numeric::linalg::{condition_number_1, m3_det, m3_mul, CMatrix, Lu, M3};
use crate::spectral::{theta, OMEGA, OMEGA2, SQRT_3};
use crate::spectrum::{conjugate_pole_constant, SolitonSpectrum};

/// `M_sol` is not evaluated closer than this to a pole.
pub const POLE_GUARD: f64 = 1e-8;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulatedBreather {
    pub lambda: Complex64,
    /// Constant in the residue condition at `lambda`.
    pub c: Complex64,
    /// Constant in the residue condition at `conj(lambda)`.
    pub d: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulatedSoliton {
    pub k: f64,
    pub c: Complex64,
}

/// Residue constants after modulation by `Delta-hat` (and optionally `P`).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ModulatedSpectrum {
    pub breathers: Vec<ModulatedBreather>,
    pub solitons: Vec<ModulatedSoliton>,
}

impl ModulatedSpectrum {
    /// Constants with no modulation.
    pub fn bare(spec: &SolitonSpectrum) -> Self {
        Self {
            breathers: spec
                .breathers
                .iter()
                .map(|b| ModulatedBreather { lambda: b.lambda, c: b.c, d: b.d_constant() })
                .collect(),
            solitons: spec.real_solitons.iter().map(|s| ModulatedSoliton { k: s.k, c: s.c }).collect(),
        }
    }

    /// Constants modulated by `Delta-hat` at `ctx.zeta`. The conjugate-pole
    /// constants are modulated independently with `Delta-hat_22 / Delta-hat_33`
    /// at `conj(lambda)`.
    pub fn modulated(spec: &SolitonSpectrum, ctx: &ModulationContext) -> Result<Self> {
        let mut out = Self::default();
        for b in &spec.breathers {
            out.breathers.push(ModulatedBreather {
                lambda: b.lambda,
                c: b.c * ctx.breather_factor(b.lambda)?,
                d: b.d_constant() * ctx.conjugate_factor(b.lambda)?,
            });
        }
        for s in &spec.real_solitons {
            out.solitons.push(ModulatedSoliton { k: s.k, c: s.c * ctx.real_factor(s.k)? });
        }
        Ok(out)
    }

    /// Same constants as a plain spectrum, for the determinant formula.
    pub fn as_spectrum(&self) -> SolitonSpectrum {
        let mut spec = SolitonSpectrum::empty();
        for b in &self.breathers {
            spec = spec.with_breather(b.lambda, b.c);
        }
        for s in &self.solitons {
            spec = spec.with_soliton(s.k, s.c);
        }
        spec
    }

    /// Spectrum whose conjugate constants follow from `c` by the standard relation.
    pub fn from_spectrum(spec: &SolitonSpectrum) -> Self {
        let mut out = Self::bare(spec);
        for b in &mut out.breathers {
            b.d = conjugate_pole_constant(b.lambda, b.c);
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pole {
    pub at: Complex64,
    /// Column (0-based) carrying the pole.
    pub column: usize,
    /// Column the residue is proportional to.
    pub related: usize,
    pub coefficient: Complex64,
}

/// Orbit poles at `(x, t)`.
pub fn orbit_poles(x: f64, t: f64, spec: &ModulatedSpectrum) -> Vec<Pole> {
    let mut poles = Vec::with_capacity(12 * spec.breathers.len() + 6 * spec.solitons.len());
    let mut push = |at: Complex64, column: usize, related: usize, coefficient: Complex64| {
        poles.push(Pole { at, column: column - 1, related: related - 1, coefficient })
    };
    for b in &spec.breathers {
        let k0 = b.lambda;
        let kb = k0.conj();
        let e = b.c * (-theta(3, 1, x, t, k0)).exp();
        let f = b.d * theta(3, 2, x, t, kb).exp();
        let (k02, kb2) = (k0 * k0, kb * kb);
        push(k0, 3, 1, e);
        push(OMEGA * k0, 2, 3, OMEGA * e);
        push(OMEGA2 * k0, 1, 2, OMEGA2 * e);
        push(1.0 / k0, 3, 2, -e / k02);
        push(OMEGA2 / k0, 1, 3, -OMEGA2 / k02 * e);
        push(OMEGA / k0, 2, 1, -OMEGA / k02 * e);
        push(kb, 2, 3, f);
        push(OMEGA * kb, 1, 2, OMEGA * f);
        push(OMEGA2 * kb, 3, 1, OMEGA2 * f);
        push(1.0 / kb, 1, 3, -f / kb2);
        push(OMEGA2 / kb, 2, 1, -OMEGA2 / kb2 * f);
        push(OMEGA / kb, 3, 2, -OMEGA / kb2 * f);
    }
    for s in &spec.solitons {
        let k0 = Complex64::new(s.k, 0.0);
        let g = s.c * (-theta(2, 1, x, t, k0)).exp();
        let k02 = k0 * k0;
        push(k0, 2, 1, g);
        push(OMEGA * k0, 1, 3, OMEGA * g);
        push(OMEGA2 * k0, 3, 2, OMEGA2 * g);
        push(1.0 / k0, 1, 2, -g / k02);
        push(OMEGA2 / k0, 2, 3, -OMEGA2 / k02 * g);
        push(OMEGA / k0, 3, 1, -OMEGA / k02 * g);
    }
    poles
}

/// Solved pole system at one `(x, t)`.
#[derive(Debug, Clone)]
pub struct MSolSystem {
    pub x: f64,
    pub t: f64,
    pub poles: Vec<Pole>,
    /// `residues[a][i]`: residue of row `i` of `M_sol` at pole `a`.
    pub residues: Vec<[Complex64; 3]>,
    /// 1-norm condition number of the pole system.
    pub condition: f64,
}

impl MSolSystem {
    pub fn solve(x: f64, t: f64, spec: &ModulatedSpectrum) -> Result<Self> {
        let poles = orbit_poles(x, t, spec);
        let n = poles.len();
        if n == 0 {
            return Ok(Self { x, t, poles, residues: Vec::new(), condition: 1.0 });
        }
        let mut a = CMatrix::<f64>::identity(n);
        for (i, p) in poles.iter().enumerate() {
            for (j, q) in poles.iter().enumerate() {
                if q.column == p.related {
                    let v = a.get(i, j) - p.coefficient / (p.at - q.at);
                    a.set(i, j, v);
                }
            }
        }
        let lu = Lu::factor(&a).map_err(|_| CoreError::Singular("pole system for M_sol is singular".into()))?;
        let condition = condition_number_1(&a, &lu);
        let mut residues = vec![[ZERO; 3]; n];
        for row in 0..3 {
            let rhs: Vec<Complex64> =
                poles.iter().map(|p| if p.related == row { p.coefficient } else { ZERO }).collect();
            for (slot, v) in lu.solve(&rhs).into_iter().enumerate() {
                residues[slot][row] = v;
            }
        }
        Ok(Self { x, t, poles, residues, condition })
    }

    /// `M_sol(k)`.
    pub fn matrix(&self, k: Complex64) -> Result<M3> {
        let mut m = crate::numeric::linalg::m3_identity();
        for (p, y) in self.poles.iter().zip(&self.residues) {
            let gap = k - p.at;
            if gap.norm() < POLE_GUARD {
                return Err(CoreError::EvaluationPoint { distance: gap.norm() });
            }
            for row in 0..3 {
                m[row][p.column] += y[row] / gap;
            }
        }
        Ok(m)
    }

    /// `lim k ((1,1,1) M_sol(k))_3 - k`, the coefficient of `1/k` in the third entry of the row sum.
    pub fn row_sum_coefficient(&self) -> Complex64 {
        self.poles
            .iter()
            .zip(&self.residues)
            .filter(|(p, _)| p.column == 2)
            .map(|(_, y)| y[0] + y[1] + y[2])
            .sum()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct MSolEvaluation {
    pub m: M3,
    pub row3_limit: Complex64,
    pub det: Complex64,
    pub condition: f64,
}

/// `M_sol(x, t, k)` with constants modulated at `ctx.zeta`; `k = None` means infinity.
pub fn msol_solve(
    x: f64,
    t: f64,
    spec: &SolitonSpectrum,
    ctx: &ModulationContext,
    k: Option<Complex64>,
) -> Result<MSolEvaluation> {
    let system = MSolSystem::solve(x, t, &ModulatedSpectrum::modulated(spec, ctx)?)?;
    let m = match k {
        Some(k) => system.matrix(k)?,
        None => crate::numeric::linalg::m3_identity(),
    };
    Ok(MSolEvaluation { m, row3_limit: system.row_sum_coefficient(), det: m3_det(&m), condition: system.condition })
}

/// `u = -i sqrt(3) d/dx` of the row-sum coefficient, by Richardson extrapolation
/// of central differences with steps `h` and `h/2`. The constants stay frozen.
pub fn field_from_msol(x: f64, t: f64, spec: &ModulatedSpectrum, h: f64) -> Result<Complex64> {
    let coef = |xx: f64| MSolSystem::solve(xx, t, spec).map(|s| s.row_sum_coefficient());
    let central = |step: f64| -> Result<Complex64> { Ok((coef(x + step)? - coef(x - step)?) / (2.0 * step)) };
    let derivative = (4.0 * central(h / 2.0)? - central(h)?) / 3.0;
    Ok(Complex64::new(0.0, -SQRT_3) * derivative)
}

/// Symmetry defects of `M_sol` at `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetryDefects {
    pub det: f64,
    /// `|M(k) - A M(omega k) A^{-1}|`.
    pub rotation: f64,
    /// `|M(k) - B M(1/k) B|`.
    pub inversion: f64,
    /// `|(1,1,1) M(k) - (1,1,1) M(1/k) B|`, the same relation for the row sum only.
    pub inversion_row_sum: f64,
    /// `|B M(1/k) B - B M(0) B M(k)|`: the inversion relation once the
    /// normalization `B M(0) B` at infinity is accounted for.
    pub inversion_normalized: f64,
}

const ROTATE: M3 = {
    let o = Complex64 { re: 0.0, im: 0.0 };
    let l = Complex64 { re: 1.0, im: 0.0 };
    [[o, o, l], [l, o, o], [o, l, o]]
};

const SWAP: M3 = {
    let o = Complex64 { re: 0.0, im: 0.0 };
    let l = Complex64 { re: 1.0, im: 0.0 };
    [[o, l, o], [l, o, o], [o, o, l]]
};

fn max_diff(a: &M3, b: &M3) -> f64 {
    let mut d: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            d = d.max((a[i][j] - b[i][j]).norm());
        }
    }
    d
}

pub fn symmetry_defects(system: &MSolSystem, k: Complex64) -> Result<SymmetryDefects> {
    let m = system.matrix(k)?;
    let rotated = m3_mul(&m3_mul(&ROTATE, &system.matrix(OMEGA * k)?), &crate::numeric::linalg::m3_transpose(&ROTATE));
    let inv = system.matrix(1.0 / k)?;
    let inverted = m3_mul(&m3_mul(&SWAP, &inv), &SWAP);
    let row_sum = |a: &M3| [a[0][0] + a[1][0] + a[2][0], a[0][1] + a[1][1] + a[2][1], a[0][2] + a[1][2] + a[2][2]];
    let lhs = row_sum(&m);
    let rhs = row_sum(&m3_mul(&inv, &SWAP));
    let inversion_row_sum = (0..3).map(|j| (lhs[j] - rhs[j]).norm()).fold(0.0, f64::max);
    let at_zero = m3_mul(&m3_mul(&SWAP, &system.matrix(Complex64::new(0.0, 0.0))?), &SWAP);
    Ok(SymmetryDefects {
        det: (m3_det(&m) - 1.0).norm(),
        rotation: max_diff(&m, &rotated),
        inversion: max_diff(&m, &inverted),
        inversion_row_sum,
        inversion_normalized: max_diff(&inverted, &m3_mul(&at_zero, &m)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::soliton::{u_multisoliton, KernelNodes, SecondDerivative};
    use crate::spectrum::admissible_real_constant;

    fn spectra() -> Vec<SolitonSpectrum> {
        let k = 1.3;
        let c = admissible_real_constant(k, 0.1);
        let lam = Complex64::new(1.2, 0.3);
        let cl = Complex64::new(0.5, 0.2);
        vec![
            SolitonSpectrum::empty().with_soliton(k, c),
            SolitonSpectrum::empty().with_breather(lam, cl),
            SolitonSpectrum::empty().with_breather(lam, cl).with_soliton(k, c),
        ]
    }

    #[test]
    fn empty_spectrum_gives_identity() {
        let s = MSolSystem::solve(0.3, 2.0, &ModulatedSpectrum::default()).unwrap();
        assert_eq!(s.matrix(Complex64::new(0.2, 0.7)).unwrap(), crate::numeric::linalg::m3_identity());
        assert_eq!(s.row_sum_coefficient(), ZERO);
    }

    #[test]
    fn field_matches_the_determinant_formula() {
        for spec in spectra() {
            let modulated = ModulatedSpectrum::bare(&spec);
            let nodes = KernelNodes::<f64>::new(&spec).unwrap();
            for &x in &[-3.0, 0.0, 2.5] {
                let a = field_from_msol(x, 1.0, &modulated, 1e-3).unwrap();
                let b = nodes.field(x, 1.0, SecondDerivative::Analytic).unwrap();
                assert!((a - b).norm() < 1e-8, "x={x}: {a} vs {b}");
                assert!((a.re - u_multisoliton(x, 1.0, &spec).unwrap().u).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn unit_determinant_and_rotation_symmetry() {
        for spec in spectra() {
            let s = MSolSystem::solve(0.3, 1.0, &ModulatedSpectrum::bare(&spec)).unwrap();
            for k in [Complex64::new(0.7, 0.4), Complex64::new(2.0, -1.0), Complex64::new(-0.3, 0.9)] {
                let d = symmetry_defects(&s, k).unwrap();
                assert!(d.det < 1e-10, "det {:e}", d.det);
                assert!(d.rotation < 1e-9, "rotation {:e}", d.rotation);
                assert!(d.inversion_row_sum < 1e-9, "row sum {:e}", d.inversion_row_sum);
                assert!(d.inversion_normalized < 1e-9, "normalized {:e}", d.inversion_normalized);
            }
        }
    }

    #[test]
    fn evaluation_at_a_pole_is_rejected() {
        let spec = &spectra()[0];
        let s = MSolSystem::solve(0.0, 0.0, &ModulatedSpectrum::bare(spec)).unwrap();
        assert!(matches!(s.matrix(Complex64::new(1.3, 0.0)), Err(CoreError::EvaluationPoint { .. })));
    }
}

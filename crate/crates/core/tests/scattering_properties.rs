use std::f64::consts::{FRAC_PI_2, PI};

use boussinesq_core::scattering::eigen::residue_ratio;
use boussinesq_core::scattering::zeros::count_on_grid;
use boussinesq_core::scattering::{
    locate_zeros, reflection_coefficients, s11, scattering_matrices, InitialData, ReflectionTable, SearchRect,
    ZeroSearchOptions,
};
use boussinesq_core::spectral::SpectralPoint;
use boussinesq_core::spectrum::admissible_real_constant;
use boussinesq_core::{Complex64, CoreError};
use proptest::prelude::*;

const DATA_ARC: (f64, f64) = (FRAC_PI_2, 2.0 * PI / 3.0 - 0.02);

fn bump() -> InitialData {
    InitialData::gaussian(0.4, 0.0, 0.0, 1.5, 12.0).unwrap()
}

fn point(k: Complex64) -> SpectralPoint {
    SpectralPoint::new(k).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn scattering_matrices_are_unimodular(
        amplitude in -0.5f64..0.5,
        v_amplitude in -0.3f64..0.3,
        radius in 0.5f64..2.5,
        angle in 0.2f64..1.4,
    ) {
        let data = InitialData::gaussian(amplitude, v_amplitude, 0.0, 0.6, 3.0).unwrap();
        let m = scattering_matrices(&data, point(Complex64::from_polar(radius, angle))).unwrap();
        prop_assert!((m.det_s() - 1.0).norm() <= 1e-8, "det s = {}", m.det_s());
        prop_assert!((m.det_sa() - 1.0).norm() <= 1e-8, "det sA = {}", m.det_sa());
    }
}

#[test]
fn zero_data_has_trivial_scattering() {
    let data = InitialData::zero(5.0);
    let m = scattering_matrices(&data, point(Complex64::new(0.3, 0.9))).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            let id = if i == j { 1.0 } else { 0.0 };
            assert!((m.s[i][j] - id).norm() < 1e-13 && (m.sa[i][j] - id).norm() < 1e-13);
        }
    }
    let (r1, r2) = reflection_coefficients(&data, point(Complex64::from_polar(1.0, 1.8))).unwrap();
    assert!(r1.norm() < 1e-13 && r2.norm() < 1e-13);
}

#[test]
fn reflection_coefficients_at_plus_minus_one() {
    let data = bump();
    for center in [1.0, -1.0] {
        let (r1, r2) = residue_ratio(&data, Complex64::new(center, 0.0)).unwrap();
        assert!((r1 - 1.0).norm() <= 1e-6, "r1({center}) = {r1}");
        assert!((r2 + 1.0).norm() <= 1e-6, "r2({center}) = {r2}");
    }
}

#[test]
fn reflection_table_satisfies_the_conjugation_symmetry() {
    let table = ReflectionTable::from_data(&bump(), DATA_ARC, 32).unwrap();
    assert!(table.symmetry_defect() <= 1e-6, "{}", table.symmetry_defect());
}

#[test]
fn reflection_decays_along_the_imaginary_axis() {
    let data = InitialData::gaussian(0.4, 0.0, 0.0, 0.2, 1.0).unwrap();
    let moduli: Vec<f64> = [5.0, 10.0, 20.0]
        .iter()
        .map(|&s| reflection_coefficients(&data, point(Complex64::new(0.0, s))).unwrap().0.norm())
        .collect();
    assert!(moduli.windows(2).all(|w| w[1] < w[0]), "{moduli:?}");
}

#[test]
fn tabulated_and_analytic_data_scatter_alike() {
    let data = InitialData::gaussian(0.3, 0.1, 0.0, 0.8, 4.0).unwrap();
    let xs: Vec<f64> = (0..=800).map(|j| -4.0 + 0.01 * j as f64).collect();
    let u0: Vec<f64> = xs.iter().map(|&x| data.sample(x).u0).collect();
    let u1: Vec<f64> = xs.iter().map(|&x| data.u1(x)).collect();
    let table = InitialData::tabulated(&xs, &u0, &u1).unwrap();
    for k in [Complex64::new(1.6, 0.2), Complex64::new(0.4, 0.7)] {
        let (a, b) = (s11(&data, k).unwrap(), s11(&table, k).unwrap());
        assert!((a - b).norm() <= 1e-5, "k {k}: {a} vs {b}");
    }
}

#[test]
fn seeded_zero_count_is_stable_under_cell_halving() {
    let k = 1.3;
    let data = InitialData::seeded_soliton(k, admissible_real_constant(k, 0.1), 20.0).unwrap();
    let rect = SearchRect::new(1.05, 2.0, -0.3, 0.2).unwrap();
    let opts = ZeroSearchOptions::default();
    let f = |z: Complex64| s11(&data, z);
    let coarse = count_on_grid(&f, &rect, 1, 1, &opts).unwrap();
    let fine = count_on_grid(&f, &rect, 2, 2, &opts).unwrap();
    assert_eq!(coarse, 1);
    assert_eq!(fine, coarse);
    let zeros = locate_zeros(&data, &rect, &opts).unwrap();
    assert_eq!(zeros.len(), 1);
    assert!((zeros[0].k - k).norm() < 1e-2, "{:?}", zeros[0]);
}

#[test]
fn search_rectangles_must_lie_in_d2() {
    assert!(SearchRect::new(2.0, 1.0, 0.0, 1.0).is_err());
    let straddling = SearchRect::new(0.5, 2.0, -0.2, 0.2).unwrap();
    assert!(straddling.check_in_d2().is_err());
}

#[test]
fn sixth_roots_are_excluded() {
    let k = Complex64::from_polar(1.0, PI / 3.0) + 1e-4;
    assert!(matches!(reflection_coefficients(&bump(), point(k)), Err(CoreError::SingularVandermonde { .. })));
}

#[test]
fn invalid_data_is_rejected() {
    assert!(InitialData::gaussian(1.0, 0.0, 0.0, 0.0, 3.0).is_err());
    assert!(InitialData::tabulated(&[0.0, 0.0], &[1.0, 1.0], &[0.0, 0.0]).is_err());
    assert!(InitialData::seeded_soliton(0.5, Complex64::new(1.0, 0.0), 5.0).is_err());
}

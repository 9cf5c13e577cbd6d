use boussinesq_core::spectral::{
    classify_region, l_value, lz_eval, omega_pow, phase, phi, saddle_points, symmetry_orbit, z_value, RegionTag,
    SpectralPoint, OMEGA, OMEGA2,
};
use boussinesq_core::{Complex64, CoreError};
use proptest::prelude::*;

fn point() -> impl Strategy<Value = Complex64> {
    (0.1f64..5.0, -3.14f64..3.14).prop_map(|(r, a)| Complex64::from_polar(r, a))
}

/// Central difference of `Phi_21(zeta, .)` at `k`, relative to the size of its
/// two terms divided by `|k|`.
fn phi21_relative_slope(zeta: f64, k: Complex64) -> f64 {
    let h = 1e-5 * k.norm();
    let slope = (phi(2, 1, zeta, k + h) - phi(2, 1, zeta, k - h)) / (2.0 * h);
    let terms = phase(2, 1, zeta, SpectralPoint::new(k).unwrap()).unwrap();
    slope.norm() * k.norm() / (zeta * terms.l_diff.norm() + terms.z_diff.norm())
}

proptest! {
    #[test]
    fn kernels_sum_to_zero(k in point()) {
        let p = lz_eval(SpectralPoint::new(k).unwrap());
        let scale_l = p.l.iter().map(|v| v.norm()).fold(1.0, f64::max);
        let scale_z = p.z.iter().map(|v| v.norm()).fold(1.0, f64::max);
        prop_assert!((p.l[0] + p.l[1] + p.l[2]).norm() <= 1e-13 * scale_l);
        prop_assert!((p.z[0] + p.z[1] + p.z[2]).norm() <= 1e-13 * scale_z);
    }

    #[test]
    fn rotation_by_omega_shifts_the_index(k in point()) {
        for j in 1..=3usize {
            let next = j % 3 + 1;
            let scale = l_value(next, k).norm().max(1.0);
            prop_assert!((l_value(j, OMEGA * k) - l_value(next, k)).norm() <= 1e-13 * scale);
            let scale = z_value(next, k).norm().max(1.0);
            prop_assert!((z_value(j, OMEGA * k) - z_value(next, k)).norm() <= 1e-13 * scale);
        }
    }

    #[test]
    fn phases_are_rotations_of_phi21(k in point(), zeta in 1.01f64..10.0) {
        let p31 = phi(3, 1, zeta, k);
        let p32 = phi(3, 2, zeta, k);
        let scale = p31.norm().max(p32.norm()).max(1.0);
        prop_assert!((p31 + phi(2, 1, zeta, OMEGA2 * k)).norm() <= 1e-13 * scale);
        prop_assert!((p32 - phi(2, 1, zeta, OMEGA * k)).norm() <= 1e-13 * scale);
    }

    #[test]
    fn theta_is_phi_along_the_ray(k in point(), zeta in 1.01f64..10.0, t in 0.1f64..50.0) {
        let value = phase(2, 1, zeta, SpectralPoint::new(k).unwrap()).unwrap();
        let scale = value.phi.norm().max(1.0) * t;
        prop_assert!((value.theta(zeta * t, t) - value.phi * t).norm() <= 1e-12 * scale);
    }

    #[test]
    fn saddle_points_are_critical(zeta in 1.01f64..10.0) {
        let s = saddle_points(zeta).unwrap();
        for k in [s.k1, s.k2, s.k3, s.k4] {
            prop_assert!(phi21_relative_slope(zeta, k) <= 1e-8, "zeta {zeta} k {k}");
        }
        let h = 1e-5;
        let k1_slope = (phi(2, 1, zeta, s.k1 + h) - phi(2, 1, zeta, s.k1 - h)) / (2.0 * h);
        prop_assert!(k1_slope.norm() <= 1e-6);
        prop_assert!((s.k1.norm() - 1.0).abs() <= 1e-12);
        prop_assert!((s.k3 * s.k4 - 1.0).norm() <= 1e-14);
        prop_assert!((s.k2 - s.k1.conj()).norm() == 0.0);
        prop_assert!(s.scale() > 0.0);
        prop_assert!((s.z_star * s.z_star - 2.0 * Complex64::i() * s.phi21_coefficient).norm() <= 1e-12 * s.z_star.norm_sqr());
    }

    #[test]
    fn conjugation_swaps_the_halves_of_d2(k in point()) {
        let mirrored = classify_region(k.conj());
        match classify_region(k) {
            RegionTag::DReg => prop_assert_eq!(mirrored, RegionTag::DSing),
            RegionTag::DSing => prop_assert_eq!(mirrored, RegionTag::DReg),
            _ => {}
        }
    }
}

#[test]
fn saddle_k1_moves_across_the_upper_arc() {
    let args: Vec<f64> = [1.01, 1.5, 2.0, 4.0, 10.0].iter().map(|&z| saddle_points(z).unwrap().arg_k1()).collect();
    assert!(args.iter().all(|&a| a > std::f64::consts::FRAC_PI_2 && a < 2.0 * std::f64::consts::PI / 3.0));
    assert!(args.windows(2).all(|w| w[0] != w[1]));
}

#[test]
fn orbits_have_twelve_or_six_points() {
    assert_eq!(symmetry_orbit(SpectralPoint::new(Complex64::new(1.7, 0.4)).unwrap()).len(), 12);
    assert_eq!(symmetry_orbit(SpectralPoint::new(Complex64::new(1.7, 0.0)).unwrap()).len(), 6);
    assert_eq!(symmetry_orbit(SpectralPoint::new(Complex64::from_polar(1.0, 0.4)).unwrap()).len(), 6);
}

#[test]
fn omega_powers_cycle() {
    for j in -6..6 {
        assert!((omega_pow(j) * omega_pow(1) - omega_pow(j + 1)).norm() < 1e-15);
    }
}

#[test]
fn invalid_inputs_are_rejected() {
    assert_eq!(SpectralPoint::new(Complex64::new(0.0, 0.0)), Err(CoreError::ZeroSpectralParameter));
    let k = SpectralPoint::new(Complex64::new(1.0, 1.0)).unwrap();
    assert!(matches!(phase(1, 2, 2.0, k), Err(CoreError::InvalidIndexPair { i: 1, j: 2 })));
    assert!(matches!(saddle_points(1.0), Err(CoreError::OutOfSector { .. })));
    assert!(matches!(saddle_points(f64::NAN), Err(CoreError::OutOfSector { .. })));
}

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::Arc;

use boussinesq_core::asymptotics::formulas::DEFAULT_EPSILON;
use boussinesq_core::asymptotics::modulation::{delta_modulus_spread, off_arc_angles};
use boussinesq_core::asymptotics::{
    model_rh_constants, near_soliton, radiation_terms, sector2_leading, u_rad, u_sol, ModulationContext, SolitonRoute,
};
use boussinesq_core::scattering::{GaussianBump, ReflectionTable, SyntheticProfile};
use boussinesq_core::soliton::u_multisoliton;
use boussinesq_core::spectrum::{admissible_real_constant, soliton_velocity, SolitonSpectrum};
use boussinesq_core::{Complex64, CoreError};
use proptest::prelude::*;

const ARC: (f64, f64) = (FRAC_PI_2, 2.0 * PI / 3.0);

fn bump_table() -> Arc<ReflectionTable> {
    Arc::new(ReflectionTable::synthetic(SyntheticProfile::Bump(GaussianBump::default()), ARC, 96).unwrap())
}

fn zero_table() -> Arc<ReflectionTable> {
    Arc::new(ReflectionTable::zero(ARC, 16).unwrap())
}

fn mixed_spectrum() -> SolitonSpectrum {
    SolitonSpectrum::empty()
        .with_breather(Complex64::new(1.2, 0.3), Complex64::new(0.5, 0.2))
        .with_soliton(1.3, admissible_real_constant(1.3, 0.1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn model_constants_multiply_to_nu(re in -10.0f64..10.0, im in -10.0f64..10.0) {
        prop_assume!(re.hypot(im) > 1e-3);
        let m = model_rh_constants(Complex64::new(re, im)).unwrap();
        prop_assert!(m.nu <= 0.0);
        prop_assert!(m.product_defect() <= 1e-12 * m.nu.abs().max(1.0), "{}", m.product_defect());
    }

    #[test]
    fn delta_modulus_is_constant_off_the_arc(zeta in 1.05f64..6.0) {
        let ctx = ModulationContext::new(zeta, bump_table(), &SolitonSpectrum::empty()).unwrap();
        let (mean, spread) = delta_modulus_spread(&ctx, &off_arc_angles(ctx.theta1, 24)).unwrap();
        prop_assert!(spread <= 1e-8, "spread {spread}");
        prop_assert!((mean - ctx.delta_modulus_on_circle()).abs() <= 1e-8);
    }
}

#[test]
fn reflectionless_u_sol_is_the_multisoliton() {
    let spec = mixed_spectrum();
    let ctx = ModulationContext::new(1.1, zero_table(), &spec).unwrap();
    assert!(ctx.is_reflectionless());
    for x in [-4.0, 0.0, 3.0] {
        let exact = u_multisoliton(x, 1.0, &spec).unwrap().u;
        let det = u_sol(x, 1.0, &spec, &ctx, SolitonRoute::Determinant).unwrap().u;
        let residue = u_sol(x, 1.0, &spec, &ctx, SolitonRoute::ResidueSystem).unwrap().u;
        assert!((det - exact).abs() <= 1e-12, "x {x}");
        assert!((residue - exact).abs() <= 1e-7, "x {x}");
    }
}

#[test]
fn determinant_and_residue_routes_agree_with_reflection() {
    let spec = mixed_spectrum();
    let ctx = ModulationContext::new(1.1, bump_table(), &spec).unwrap();
    for x in [-2.0, 0.0, 1.5] {
        let a = u_sol(x, 1.0, &spec, &ctx, SolitonRoute::Determinant).unwrap().u;
        let b = u_sol(x, 1.0, &spec, &ctx, SolitonRoute::ResidueSystem).unwrap().u;
        assert!((a - b).abs() <= 1e-7, "x {x}: {a} vs {b}");
    }
}

#[test]
fn radiation_without_solitons_is_the_leading_wave() {
    let spec = SolitonSpectrum::empty();
    for zeta in [1.5, 3.0] {
        let ctx = ModulationContext::new(zeta, bump_table(), &spec).unwrap();
        let mut envelopes = Vec::new();
        for t in [10.0, 100.0, 1000.0] {
            let rad = u_rad(zeta * t, t, &spec, &ctx).unwrap();
            let lead = sector2_leading(t, &ctx, &spec, DEFAULT_EPSILON).unwrap();
            assert!((rad.u - lead.amplitude * lead.phase.cos()).abs() <= 1e-8);
            assert!(rad.imag.abs() <= 1e-8);
            envelopes.push(radiation_terms(zeta * t, t, &spec, &ctx).unwrap().envelope());
        }
        // The envelope before the 1/sqrt(t) factor does not depend on t.
        assert!(envelopes.windows(2).all(|w| (w[0] - w[1]).abs() <= 1e-10 * w[0]), "{envelopes:?}");
    }
}

#[test]
fn zero_table_gives_trivial_modulation() {
    let spec = SolitonSpectrum::empty();
    let ctx = ModulationContext::new(2.0, zero_table(), &spec).unwrap();
    assert_eq!(ctx.nu, 0.0);
    assert_eq!(ctx.delta(Complex64::new(0.2, 0.3)).unwrap(), Complex64::new(1.0, 0.0));
    assert_eq!(u_rad(100.0, 50.0, &spec, &ctx).unwrap().u, 0.0);
    assert_eq!(u_sol(100.0, 50.0, &spec, &ctx, SolitonRoute::Determinant).unwrap().u, 0.0);
}

#[test]
fn near_soliton_reduction_matches_the_full_field() {
    let spec = SolitonSpectrum::empty()
        .with_soliton(2.0, admissible_real_constant(2.0, 0.1))
        .with_soliton(4.0, admissible_real_constant(4.0, 0.1));
    let zeta0 = soliton_velocity(2.0);
    let t = 50.0;
    for offset in [-8.0, -2.0, 0.0, 3.0, 9.0] {
        let x = zeta0 * t + offset;
        let p = near_soliton(zeta0, x, t, &spec, zero_table()).unwrap();
        let full = u_multisoliton(x, t, &spec).unwrap().u;
        assert!((p.sample.u - full).abs() <= 1e-6, "offset {offset}: {} vs {full}", p.sample.u);
    }
}

#[test]
fn out_of_sector_requests_fail() {
    assert!(matches!(
        ModulationContext::new(0.5, bump_table(), &SolitonSpectrum::empty()),
        Err(CoreError::OutOfSector { .. })
    ));
    let spec = SolitonSpectrum::empty().with_soliton(2.0, admissible_real_constant(2.0, 0.1));
    assert!(matches!(near_soliton(3.0, 150.0, 50.0, &spec, zero_table()), Err(CoreError::NotSolitonDirection { .. })));
}

#[test]
fn delta_refuses_points_on_the_arc() {
    let ctx = ModulationContext::new(2.0, bump_table(), &SolitonSpectrum::empty()).unwrap();
    let on_arc = Complex64::from_polar(1.0, 0.5 * (FRAC_PI_2 + ctx.theta1));
    assert!(matches!(ctx.delta(on_arc), Err(CoreError::NearContour { .. })));
}

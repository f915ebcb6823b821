mod common;

use std::f64::consts::PI;

use common::{brute_lambda, random_even_symbol4, random_spectrum, random_symbol4};
use imethod_core::estimates::sample_rng;
use imethod_core::multilinear::*;
use imethod_core::nls::energy_i;
use imethod_core::spectral::Grid;
use num_complex::Complex64;
use proptest::prelude::*;

#[test]
fn lambda4_matches_direct_sum() {
    let g = Grid::new(1, 8, 2.0 * PI).unwrap();
    for seed in 0..5 {
        let mut rng = sample_rng(seed, 0);
        let s = random_spectrum(g, 0.5, &mut rng);
        let m = random_symbol4(&mut rng);
        let fast = lambda4_complex(&m, [&s, &s, &s, &s]).unwrap();
        let slow = brute_lambda(&m, &s);
        assert!(
            (fast - slow).norm() <= 1e-12 * (1.0 + slow.norm()),
            "{fast} vs {slow}"
        );
    }
}

#[test]
fn lambda6_extended_matches_five_fold_sum() {
    let g = Grid::new(1, 8, 2.0 * PI).unwrap();
    for seed in 0..10 {
        let mut rng = sample_rng(100 + seed, 0);
        let s = random_spectrum(g, 0.5, &mut rng);
        let m = random_symbol4(&mut rng);
        let fast = lambda6_extended(&m, &s, Lambda6Range::Full).unwrap();
        let slow = brute_lambda(&extend(&m), &s).re;
        assert!(
            (fast - slow).abs() <= 1e-10 * slow.abs().max(1e-300),
            "{fast} vs {slow}"
        );
    }
}

#[test]
fn energy_splits_into_quadratic_and_quartic_parts() {
    for (dim, modes) in [(1, 32), (2, 8)] {
        let g = Grid::new(dim, modes, 2.0 * PI).unwrap();
        for seed in 0..20 {
            let s = random_spectrum(g, 1.0, &mut sample_rng(seed, dim as u64));
            let e = energy_i(&s.inverse_transform(), 2.0, 0.6).unwrap();
            let gap = energy_identity_gap(&s, 2.0, 0.6).unwrap();
            assert!(gap < 1e-9 * (1.0 + e), "d = {dim}: gap {gap}, E = {e}");
        }
    }
}

#[test]
fn plateau_gives_quarter_and_no_gap() {
    let spec = ResonanceSpec::with_default_theta(8.0, 0.6).unwrap();
    for i in 0..1000u64 {
        let mut rng = sample_rng(9, i);
        let mut v = || {
            use rand::Rng;
            [
                rng.random_range(-4.0..4.0),
                rng.random_range(-4.0..4.0),
                rng.random_range(-4.0..4.0),
            ]
        };
        let t = FrequencyTuple::quartet(v(), v(), v());
        if t.max_norm() > spec.n {
            continue;
        }
        assert!((sigma4_tilde(&t, &spec).unwrap().re - 0.25).abs() < 1e-12);
    }
    let g = Grid::new(1, 32, 2.0 * PI).unwrap();
    let s = imethod_core::spectral::data::random_band(g, 0.0, 8.0, 0.0, &mut sample_rng(3, 3));
    assert!(pointwise_gap(&s, &spec).unwrap() < 1e-13);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn symmetrization_keeps_lambda_for_even_symbols(seed in 0u64..10_000) {
        let g = Grid::new(1, 8, 2.0 * PI).unwrap();
        let mut rng = sample_rng(seed, 1);
        let s = random_spectrum(g, 0.5, &mut rng);
        let m = random_even_symbol4(&mut rng);
        let a = lambda4(&m, [&s, &s, &s, &s]).unwrap();
        let b = lambda4(&symmetrize(&m).unwrap(), [&s, &s, &s, &s]).unwrap();
        prop_assert!((a - b).abs() <= 1e-10 * (1.0 + a.abs()));
    }

    #[test]
    fn increment_symbol_forms_agree(
        x1 in prop::array::uniform3(-40.0f64..40.0),
        x2 in prop::array::uniform3(-40.0f64..40.0),
        x3 in prop::array::uniform3(-40.0f64..40.0),
    ) {
        let spec = ResonanceSpec::new(8.0, 0.6, 0.2).unwrap();
        let t = FrequencyTuple::quartet(x1, x2, x3);
        let (l, r) = increment_symbol4_forms(&t, &spec).unwrap();
        prop_assert!((l - r).norm() <= 1e-12 * (1.0 + r.norm().max(alpha4(&t).unwrap().abs())));
    }

    #[test]
    fn alpha4_is_alternating_sum(
        x1 in prop::array::uniform3(-100.0f64..100.0),
        x2 in prop::array::uniform3(-100.0f64..100.0),
        x3 in prop::array::uniform3(-100.0f64..100.0),
    ) {
        let t = FrequencyTuple::quartet(x1, x2, x3);
        let a = alpha4(&t).unwrap();
        let b = alternating_square_sum(&t).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * t.max_norm().powi(2).max(1.0));
    }
}

#[test]
fn symmetrization_of_odd_symbol_changes_lambda() {
    // the conjugating swap turns Lambda(M) into Lambda(M(-.)), so odd symbols are not preserved
    let g = Grid::new(1, 8, 2.0 * PI).unwrap();
    let mut rng = sample_rng(77, 0);
    let s = random_spectrum(g, 0.0, &mut rng);
    let m = SymbolK::new(4, "odd", |xi| Complex64::new(xi[0][0], 0.0));
    let a = lambda4(&m, [&s, &s, &s, &s]).unwrap();
    let b = lambda4(&symmetrize(&m).unwrap(), [&s, &s, &s, &s]).unwrap();
    assert!((a - b).abs() > 1e-8);
}

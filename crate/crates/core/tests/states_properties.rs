mod common;

use common::{reference_eigenvalues, rng};
use qbcap_core::sampling::{random_bell_triple, random_density_matrix, random_x_state_params};
use qbcap_core::states::{
    bell_diagonal, bell_diagonal_eigenvalues, bloch_coefficients, example2, is_entangled,
    partial_transpose_min_eigenvalue, werner, x_state, DensityMatrix,
};
use qbcap_core::ComplexMatrix;

#[test]
fn bell_diagonal_bloch_round_trip() {
    let mut r = rng(10);
    for _ in 0..500 {
        let [c1, c2, c3] = random_bell_triple(&mut r);
        let b = bloch_coefficients(&bell_diagonal(c1, c2, c3).unwrap()).unwrap();
        assert!(b.a3.abs() < 1e-11 && b.b3.abs() < 1e-11);
        let want = [[c1, 0.0, 0.0], [0.0, c2, 0.0], [0.0, 0.0, c3]];
        for (got, want) in b.t.iter().flatten().zip(want.iter().flatten()) {
            assert!((got - want).abs() < 1e-11);
        }
    }
}

#[test]
fn bell_diagonal_spectrum_matches_closed_form() {
    let mut r = rng(11);
    for _ in 0..500 {
        let [c1, c2, c3] = random_bell_triple(&mut r);
        let rho = bell_diagonal(c1, c2, c3).unwrap();
        let mut want = bell_diagonal_eigenvalues(c1, c2, c3);
        want.sort_by(f64::total_cmp);
        for (got, want) in rho.spectrum().iter().zip(want) {
            assert!((got - want.max(0.0)).abs() < 1e-12);
        }
    }
}

#[test]
fn x_state_closed_form_spectrum() {
    let mut r = rng(12);
    for _ in 0..500 {
        let p = random_x_state_params(&mut r);
        let rho = x_state(&p).unwrap();
        let reference = reference_eigenvalues(rho.matrix());
        for ((got, closed), reference) in rho.spectrum().iter().zip(p.closed_form_spectrum()).zip(reference) {
            assert!((got - closed.max(0.0)).abs() < 1e-11);
            assert!((closed - reference).abs() < 1e-11);
        }
    }
}

#[test]
fn x_state_bloch_form() {
    let mut r = rng(13);
    for _ in 0..500 {
        let p = random_x_state_params(&mut r);
        let rho = x_state(&p).unwrap();
        let b = bloch_coefficients(&rho).unwrap();
        assert!((b.a3 - (p.rho11 + p.rho22 - p.rho33 - p.rho44)).abs() < 1e-11);
        assert!((b.b3 - (p.rho11 + p.rho33 - p.rho22 - p.rho44)).abs() < 1e-11);
        assert!((b.c3() - (p.rho11 + p.rho44 - p.rho22 - p.rho33)).abs() < 1e-11);
        assert!((b.c1() - 2.0 * (p.rho14 + p.rho23).re).abs() < 1e-11);
        assert!((b.c2() - 2.0 * (p.rho23 - p.rho14).re).abs() < 1e-11);
        assert!(b.to_matrix().max_abs_diff(rho.matrix()) < 1e-11);
    }
}

#[test]
fn x_state_inequality_agrees_with_ppt() {
    let mut r = rng(14);
    let mut entangled = 0;
    for _ in 0..500 {
        let p = random_x_state_params(&mut r);
        let rho = x_state(&p).unwrap();
        let ppt = is_entangled(&rho).unwrap();
        assert_eq!(ppt, p.entangled_by_inequality(), "{p:?}");
        entangled += ppt as usize;
    }
    // both verdicts occur in the sample
    assert!(entangled > 0 && entangled < 500);
}

#[test]
fn x_state_boundary_is_separable() {
    // rho11 rho44 = |rho23|^2 exactly: partial transpose is singular, not negative.
    let mut p = qbcap_core::XStateParams::diagonal(0.25, 0.25, 0.25, 0.25);
    p.rho23 = common::c(0.25, 0.0);
    let rho = x_state(&p).unwrap();
    assert!(!p.entangled_by_inequality());
    assert!(!is_entangled(&rho).unwrap());
}

#[test]
fn werner_threshold() {
    let below = werner(1.0 / 3.0 - 1e-6).unwrap();
    let above = werner(1.0 / 3.0 + 1e-6).unwrap();
    assert!(!is_entangled(&below).unwrap());
    assert!(is_entangled(&above).unwrap());
    // partial transpose minimum is (1 - 3a)/4
    for a in [0.0, 0.2, 0.5, 0.9] {
        let m = partial_transpose_min_eigenvalue(&werner(a).unwrap()).unwrap();
        assert!((m - (1.0 - 3.0 * a).min(1.0 + a) / 4.0).abs() < 1e-12);
    }
}

#[test]
fn constructors_produce_valid_states() {
    let mut r = rng(15);
    let check = |rho: &DensityMatrix| {
        let m = rho.matrix();
        assert!(m.is_hermitian(1e-10));
        assert!((m.trace().re - 1.0).abs() < 1e-10);
        assert!(rho.spectrum()[0] >= 0.0);
        // the cached spectrum is the spectrum of the matrix
        for (a, b) in rho.spectrum().iter().zip(reference_eigenvalues(m)) {
            assert!((a - b.max(0.0)).abs() < 1e-11);
        }
    };
    for i in 0..=20 {
        check(&werner(i as f64 / 20.0).unwrap());
        check(&example2(i as f64 / 40.0).unwrap());
    }
    for _ in 0..100 {
        let [c1, c2, c3] = random_bell_triple(&mut r);
        check(&bell_diagonal(c1, c2, c3).unwrap());
        check(&x_state(&random_x_state_params(&mut r)).unwrap());
        check(&random_density_matrix(2, 2, &mut r));
    }
}

#[test]
fn example2_is_the_x_state_family() {
    for i in 0..=10 {
        let x = i as f64 / 20.0;
        let mut p = qbcap_core::XStateParams::diagonal((1.0 - x) / 3.0, 1.0 / 3.0, 1.0 / 3.0, x / 3.0);
        p.rho23 = common::c(1.0 / 3.0, 0.0);
        let a = x_state(&p).unwrap();
        let b = example2(x).unwrap();
        assert!(a.matrix().max_abs_diff(b.matrix()) < 1e-15);
        for (got, want) in b.spectrum().iter().zip({
            let mut v = [0.0, x / 3.0, (1.0 - x) / 3.0, 2.0 / 3.0];
            v.sort_by(f64::total_cmp);
            v
        }) {
            assert!((got - want).abs() < 1e-12);
        }
        let reduced = b.reduced_a().unwrap();
        let want = ComplexMatrix::from_diagonal(&[(2.0 - x) / 3.0, (1.0 + x) / 3.0]);
        assert!(reduced.matrix().max_abs_diff(&want) < 1e-15);
    }
}

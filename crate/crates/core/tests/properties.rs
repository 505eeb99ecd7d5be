use four_tangle::cli::StateFile;
use four_tangle::fonts::{FontIndex, FontTable};
use four_tangle::invariants::{quartic_invariants, ThreeQubitInvariants};
use four_tangle::state::{mat2, Builtin, LocalOperator, Qubit, QubitPermutation, StateVector};
use four_tangle::verify::{residual, transformation_residual, ToleranceConfig};
use num_complex::Complex64;
use proptest::prelude::*;

fn amp(s: &StateVector, i1: usize, i2: usize, i3: usize, i4: usize) -> Complex64 {
    s.amplitude(i1 * 8 + (i2 % 2) * 4 + (i3 % 2) * 2 + (i4 % 2))
}

fn det2(p: Complex64, q: Complex64, r: Complex64, t: Complex64) -> Complex64 {
    p * t - q * r
}

/// Cayley hyperdeterminant of `a[i1 i2 i3]`, written out term by term.
fn cayley(a: impl Fn(usize, usize, usize) -> Complex64) -> Complex64 {
    let d1 = (a(0, 0, 0) * a(1, 1, 1)).powi(2)
        + (a(0, 0, 1) * a(1, 1, 0)).powi(2)
        + (a(0, 1, 0) * a(1, 0, 1)).powi(2)
        + (a(1, 0, 0) * a(0, 1, 1)).powi(2);
    let d2 = a(0, 0, 0) * a(1, 1, 1) * a(0, 1, 1) * a(1, 0, 0)
        + a(0, 0, 0) * a(1, 1, 1) * a(1, 0, 1) * a(0, 1, 0)
        + a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 0) * a(0, 0, 1)
        + a(0, 1, 1) * a(1, 0, 0) * a(1, 0, 1) * a(0, 1, 0)
        + a(0, 1, 1) * a(1, 0, 0) * a(1, 1, 0) * a(0, 0, 1)
        + a(1, 0, 1) * a(0, 1, 0) * a(1, 1, 0) * a(0, 0, 1);
    let d3 = a(0, 0, 0) * a(1, 1, 0) * a(1, 0, 1) * a(0, 1, 1)
        + a(1, 1, 1) * a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 0);
    d1 - 2.0 * d2 + 4.0 * d3
}

fn complex() -> impl Strategy<Value = Complex64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn state4() -> impl Strategy<Value = StateVector> {
    prop::collection::vec(complex(), 16).prop_map(|v| StateVector::new(4, v).unwrap())
}

fn scale() -> impl Strategy<Value = Complex64> {
    (-1.0f64..=1.0, 0.0f64..std::f64::consts::TAU)
        .prop_map(|(e, phi)| Complex64::from_polar(10f64.powf(e), phi))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn displayed_determinants_match_generalized_fonts(s in state4()) {
        let t = FontTable::new(&s).unwrap();
        for i2 in 0..2 {
            for i4 in 0..2 {
                // D^{0 i2 0 i4}
                let lit = det2(
                    amp(&s, 0, i2, 0, i4), amp(&s, 0, i2 + 1, 1, i4 + 1),
                    amp(&s, 1, i2, 0, i4), amp(&s, 1, i2 + 1, 1, i4 + 1),
                );
                prop_assert_eq!(lit, t.four_way[i2][0][i4]);
            }
            for i3 in 0..2 {
                // D_{(A3)i3}^{0 i2 0}
                let lit = det2(
                    amp(&s, 0, i2, i3, 0), amp(&s, 0, i2 + 1, i3, 1),
                    amp(&s, 1, i2, i3, 0), amp(&s, 1, i2 + 1, i3, 1),
                );
                prop_assert_eq!(lit, t.spectator_a3[i3][i2][0]);
            }
            for i4 in 0..2 {
                // D_{(A4)i4}^{0 i2 0}
                let lit = det2(
                    amp(&s, 0, i2, 0, i4), amp(&s, 0, i2 + 1, 1, i4),
                    amp(&s, 1, i2, 0, i4), amp(&s, 1, i2 + 1, 1, i4),
                );
                prop_assert_eq!(lit, t.spectator_a4[i4][i2][0]);
            }
        }
        for i3 in 0..2 {
            for i4 in 0..2 {
                let lit = det2(
                    amp(&s, 0, 0, i3, i4), amp(&s, 0, 1, i3, i4),
                    amp(&s, 1, 0, i3, i4), amp(&s, 1, 1, i3, i4),
                );
                prop_assert_eq!(lit, t.two_way[i3][i4]);
            }
        }
    }

    #[test]
    fn i3_is_the_cayley_hyperdeterminant_of_each_slice(s in state4()) {
        let inv = ThreeQubitInvariants::new(&s).unwrap();
        for i4 in 0..2 {
            let oracle = cayley(|a, b, c| amp(&s, a, b, c, i4));
            prop_assert!(residual(inv.i3[i4], oracle, 1e-12) < 1e-10);
        }
    }

    #[test]
    fn fonts_negate_under_a1_flip(s in state4()) {
        let flipped = s
            .apply_local(&LocalOperator::new(mat2::pauli_x(), Qubit::A1).unwrap())
            .unwrap();
        let (a, b) = (FontTable::new(&s).unwrap(), FontTable::new(&flipped).unwrap());
        for idx in FontIndex::all() {
            prop_assert!((a.get(idx) + b.get(idx)).norm() < 1e-12);
        }
    }

    #[test]
    fn fonts_are_quadratic(s in state4(), c in scale()) {
        let (a, b) = (FontTable::new(&s).unwrap(), FontTable::new(&s.scaled(c)).unwrap());
        for idx in FontIndex::all() {
            prop_assert!(residual(b.get(idx), a.get(idx) * c * c, 1e-12) < 1e-12);
        }
    }

    #[test]
    fn invariant_degrees(s in state4(), c in scale()) {
        let a = ThreeQubitInvariants::new(&s).unwrap();
        let b = ThreeQubitInvariants::new(&s.scaled(c)).unwrap();
        let r = |x: Complex64, y: Complex64, d: i32| residual(y, x * c.powi(d), 1e-12);
        for k in 0..2 {
            prop_assert!(r(a.i3[k], b.i3[k], 4) < 1e-10);
            prop_assert!(r(a.p[k], b.p[k], 4) < 1e-10);
        }
        prop_assert!(r(a.t, b.t, 4) < 1e-10);
        prop_assert!(r(a.i48(), b.i48(), 8) < 1e-10);
        prop_assert!(r(a.j(), b.j(), 12) < 1e-10);
        prop_assert!(r(a.discriminant(), b.discriminant(), 24) < 1e-10);
    }

    #[test]
    fn transformation_law_holds(s in state4(), y in (complex(), 0.0f64..5.0)) {
        let y = y.0 * y.1;
        let tol = ToleranceConfig::default();
        prop_assert!(transformation_residual(&s, y, &tol).unwrap() < 1e-10);
    }

    #[test]
    fn quartic_forms_reproduce_i48_and_j(s in state4()) {
        let inv = ThreeQubitInvariants::new(&s).unwrap();
        let q = quartic_invariants(&inv.quartic());
        prop_assert!((q.s - inv.i48()).norm() < 1e-12);
        prop_assert!((q.t_cubic - inv.j()).norm() < 1e-12);
    }

    #[test]
    fn permutation_round_trip(s in state4(), p in Just(vec![0usize, 1, 2, 3]).prop_shuffle()) {
        let perm = QubitPermutation::new(p).unwrap();
        prop_assert_eq!(s.permute_qubits(&perm).unwrap().permute_qubits(&perm.inverse()).unwrap(), s);
    }

    #[test]
    fn tau4_ignores_global_phase(seed in any::<u64>(), theta in 0.0f64..std::f64::consts::TAU) {
        let s = four_tangle::state::random_state(4, seed).unwrap();
        let t0 = four_tangle::invariants::tau4(&s).unwrap();
        let t1 = four_tangle::invariants::tau4(&s.scaled(Complex64::from_polar(1.0, theta))).unwrap();
        prop_assert!((t0 - t1).abs() <= 1e-9 * t0.max(1e-12));
    }

    #[test]
    fn state_file_round_trip(s in state4()) {
        let text = serde_json::to_string(&StateFile::from_state(&s, Some("x".into()))).unwrap();
        let back: StateFile = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_state().unwrap(), s);
    }
}

#[test]
fn t_and_p_vanish_into_the_transformed_ghz_form() {
    // for GHZ only the y^2 term of the transformed invariant survives
    let inv = ThreeQubitInvariants::new(&Builtin::Ghz4.state()).unwrap();
    assert_eq!(inv.i3, [Complex64::new(0.0, 0.0); 2]);
    assert!((inv.t - Complex64::new(1.0 / 24.0, 0.0)).norm() < 1e-15);
}

#[test]
fn builtins_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    for b in Builtin::ALL {
        let path = dir.path().join(format!("{}.json", b.name()));
        four_tangle::cli::write_state_file(&path, &b.state(), Some(b.name().into())).unwrap();
        let (s, label) = four_tangle::cli::read_state_file(&path).unwrap();
        assert_eq!(s, b.state());
        assert_eq!(label.as_deref(), Some(b.name()));
    }
}

#[test]
fn documented_example_file_is_w4() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/w4.json");
    let (s, _) = four_tangle::cli::read_state_file(path.as_ref()).unwrap();
    assert_eq!(s, Builtin::W4.state());
    assert_eq!(s.amplitude(0b0001), Complex64::new(0.5, 0.0));
}

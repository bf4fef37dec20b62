use std::sync::Arc;

use maxfun::{builtin_family, BuiltinFamily, MaxFunction, Polynomial, ScalarFunction};
use proptest::prelude::*;

fn random_poly_family(coeff_sets: &[Vec<f64>]) -> MaxFunction {
    let members: Vec<Arc<dyn ScalarFunction>> = coeff_sets
        .iter()
        .map(|c| Arc::new(Polynomial::new(c.clone(), (-10.0, 10.0))) as Arc<dyn ScalarFunction>)
        .collect();
    MaxFunction::new(members, (-2.0, 2.0)).unwrap()
}

proptest! {
    #[test]
    fn max_dominates_members_with_equality(
        coeffs in prop::collection::vec(
            prop::collection::vec(-5.0..5.0f64, 1..5), 1..6),
        t in -2.0..2.0f64,
    ) {
        let f = random_poly_family(&coeffs);
        let (v, argmax) = f.eval_max(t).unwrap();
        prop_assert!(!argmax.is_empty());
        for j in 1..=f.len() {
            prop_assert!(v >= f.member(j).eval(t));
        }
        for &j in &argmax {
            prop_assert_eq!(v, f.member(j).eval(t));
        }
    }

    #[test]
    fn active_set_partitions_members(
        coeffs in prop::collection::vec(
            prop::collection::vec(-5.0..5.0f64, 1..5), 1..6),
        x in -2.0..2.0f64,
    ) {
        let f = random_poly_family(&coeffs);
        let tol = 1e-10;
        let a = f.active_set(x, tol).unwrap();
        for j in 1..=f.len() {
            let v = f.member(j).eval(x);
            if a.indices.contains(&j) {
                prop_assert!((v - a.gamma).abs() <= tol);
            } else {
                prop_assert!(v < a.gamma - tol);
            }
        }
    }
}

#[test]
fn two_piece_second_quotients_split() {
    // 2 (f_max(eps) - f_max(0)) / eps^2 tends to -2 from the left and -4
    // from the right: the second derivative of the max does not exist at 0.
    let f = builtin_family(BuiltinFamily::TwoPieceC1);
    for i in 10..=20 {
        let eps = (-(i as f64)).exp2();
        let right = 2.0 * f.value(eps).unwrap() / (eps * eps);
        let left = 2.0 * f.value(-eps).unwrap() / (eps * eps);
        assert!((left + 2.0).abs() < 1e-9, "left quotient {left}");
        assert!((right + 4.0).abs() < 1e-9, "right quotient {right}");
    }
}

#[test]
fn curvature_is_nonpositive_at_verified_maximizers() {
    // Families of concave members: every quadratic model at the maximizer
    // must report curvature below the rounding tolerance.
    let cases: Vec<(Vec<Vec<f64>>, f64)> = vec![
        (vec![vec![0.0, 0.0, -2.0]], 0.0),
        (vec![vec![0.0, 0.0, -1.0], vec![0.0, 0.0, -2.0]], 0.0),
        (vec![vec![-0.25, 1.0, -1.0], vec![0.0, 0.0, -3.0]], 0.0),
    ];
    for (coeffs, x) in cases {
        let f = random_poly_family(&coeffs);
        let m = f.quadratic_model(x).unwrap();
        assert!(m.curvature <= 1e-10, "M = {}", m.curvature);
    }
}

#[test]
fn c3_members_with_matching_curvature_fit_cubically() {
    let f = random_poly_family(&[vec![0.0, 0.0, -1.0, 1.0], vec![0.0, 0.0, -1.0, -1.0]]);
    let grid: Vec<f64> = (2..=12)
        .flat_map(|i| {
            let e = (-(i as f64)).exp2();
            [e, -e]
        })
        .collect();
    let rep = f.expansion_residual(0.0, &grid).unwrap();
    assert!(rep.fitted_order >= 3.0 - 0.3, "{}", rep.fitted_order);
}

use nalgebra::DMatrix;
use num_complex::Complex64;
use solvers::{
    gamma, hinf_norm, numerical_radius, passivity_margin, random_system, LtiSystem,
};

/// Transfer evaluation through an explicit inverse: independent of the
/// library's linear-solve path.
fn oracle_transfer(sys: &LtiSystem, omega: f64) -> DMatrix<Complex64> {
    let n = sys.a.nrows();
    let shifted = DMatrix::from_diagonal_element(n, n, Complex64::new(0.0, omega)) - &sys.a;
    &sys.c * shifted.try_inverse().unwrap() * &sys.b + &sys.d
}

fn oracle_sigma(sys: &LtiSystem, omega: f64) -> f64 {
    oracle_transfer(sys, omega).svd(false, false).singular_values.max()
}

/// Dense sweep plus golden-section refinement around the best grid cell.
fn oracle_hinf(sys: &LtiSystem, points: usize) -> f64 {
    let wbar = 10.0 * (1.0 + sys.a.norm());
    let mut best = (0usize, f64::NEG_INFINITY);
    let grid: Vec<f64> = (0..points)
        .map(|i| -wbar + 2.0 * wbar * i as f64 / (points - 1) as f64)
        .collect();
    for (i, &w) in grid.iter().enumerate() {
        let s = oracle_sigma(sys, w);
        if s > best.1 {
            best = (i, s);
        }
    }
    // The tail beyond the window cannot beat the interior maximum.
    let tail = sys.d.clone().svd(false, false).singular_values.max()
        + sys.b.norm() * sys.c.norm() / (wbar - sys.a.norm());
    assert!(tail < best.1, "window too small: tail bound {tail} vs {}", best.1);

    let (mut a, mut b) = (
        grid[best.0.saturating_sub(1)],
        grid[(best.0 + 1).min(points - 1)],
    );
    let inv = 0.618_033_988_749_894_9;
    let (mut x1, mut x2) = (b - inv * (b - a), a + inv * (b - a));
    let (mut f1, mut f2) = (oracle_sigma(sys, x1), oracle_sigma(sys, x2));
    for _ in 0..120 {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv * (b - a);
            f1 = oracle_sigma(sys, x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv * (b - a);
            f2 = oracle_sigma(sys, x2);
        }
    }
    best.1.max(f1).max(f2)
}

#[test]
fn hinf_matches_dense_oracle_on_seed_42() {
    let sys = random_system(42, 6, 2, 2);
    let rep = hinf_norm(&sys, 1e-8).unwrap();
    let oracle = oracle_hinf(&sys, 100_000);
    assert!(
        (rep.optimum - oracle).abs() <= 1e-6 * (1.0 + oracle),
        "{} vs oracle {oracle}",
        rep.optimum
    );
    assert!(
        rep.empirical_order.is_nan() || rep.empirical_order >= 1.5,
        "order {}",
        rep.empirical_order
    );
    assert!(!rep.iterations.is_empty());
}

fn oracle_numrad(a: &DMatrix<Complex64>, points: usize) -> f64 {
    let lmax = |theta: f64| {
        let phase = Complex64::from_polar(0.5, theta);
        let h = a * phase + a.adjoint() * phase.conj();
        h.symmetric_eigen().eigenvalues.max()
    };
    let step = 2.0 * std::f64::consts::PI / points as f64;
    let mut best = (0usize, f64::NEG_INFINITY);
    for i in 0..points {
        let v = lmax(i as f64 * step);
        if v > best.1 {
            best = (i, v);
        }
    }
    let (mut lo, mut hi) = ((best.0 as f64 - 1.0) * step, (best.0 as f64 + 1.0) * step);
    for _ in 0..120 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if lmax(m1) >= lmax(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    best.1.max(lmax(0.5 * (lo + hi)))
}

#[test]
fn numerical_radius_matches_dense_oracle_on_seed_7() {
    let a = eigfamily::random_complex_matrix(7, 10);
    let rep = numerical_radius(&a, 1e-8).unwrap();
    let oracle = oracle_numrad(&a, 100_000);
    assert!(
        (rep.optimum - oracle).abs() <= 1e-6 * (1.0 + oracle),
        "{} vs oracle {oracle}",
        rep.optimum
    );
}

#[test]
fn numerical_radius_certificates_from_random_unit_vectors() {
    use rand::{Rng, SeedableRng};
    let a = eigfamily::random_complex_matrix(11, 8);
    let r = numerical_radius(&a, 1e-8).unwrap().optimum;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(123);
    for _ in 0..100 {
        let v = nalgebra::DVector::from_fn(8, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let v = &v / Complex64::new(v.norm(), 0.0);
        let rayleigh = (v.adjoint() * &a * &v)[(0, 0)].norm();
        assert!(r + 1e-8 >= rayleigh);
    }
}

/// Brute-force gamma over a wide tangent-spaced frequency grid with the
/// omega -> inf limit appended.
fn oracle_gamma(sys: &LtiSystem, xi: f64) -> f64 {
    let sh = sys.shifted(xi).unwrap();
    let scale = 1.0 + sh.a.norm();
    let lmin = |g: DMatrix<Complex64>| (g.adjoint() + &g).symmetric_eigen().eigenvalues.min();
    let limit = lmin(sh.d.clone());
    let mut best = limit;
    let n = 4000;
    for i in 1..n {
        let u = -1.0 + 2.0 * i as f64 / n as f64;
        let w = scale * (std::f64::consts::FRAC_PI_2 * u).tan();
        if let Ok(g) = sh.transfer_eval(w) {
            best = best.min(lmin(g));
        }
    }
    best
}

#[test]
fn passivity_margin_matches_brute_force_oracle() {
    let m = |x: f64| DMatrix::from_element(1, 1, Complex64::new(x, 0.0));
    let sys = LtiSystem::new(m(-1.0), m(1.0), m(1.0), m(1.0)).unwrap();
    let res = passivity_margin(&sys, 1e-6).unwrap();

    // Outer bisection on the brute-force gamma.
    let (mut lo, mut hi) = (0.0f64, 4.0f64);
    assert!(oracle_gamma(&sys, lo) > 0.0 && oracle_gamma(&sys, hi) < 0.0);
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        if oracle_gamma(&sys, mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let oracle_xi = 0.5 * (lo + hi);
    assert!((res.margin - oracle_xi).abs() <= 1e-4, "{} vs {oracle_xi}", res.margin);

    let delta = 1e-5;
    assert!(gamma(&sys, res.margin - delta, 1e-8).unwrap().0 > 0.0);
    assert!(gamma(&sys, res.margin + delta, 1e-8).unwrap().0 < 0.0);
}

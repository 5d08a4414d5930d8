use proptest::prelude::*;
use qpoisson::polys::*;
use qpoisson::qcore::{qpoch_inf, QBase, TruncationPolicy};
use qpoisson::{standard, Complex64, Error};

fn qb(q: f64) -> QBase {
    QBase::new(q).unwrap()
}

fn ps(v: &[f64], q: f64) -> ParamSet {
    ParamSet::new(v, qb(q)).unwrap()
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * b.norm().max(1.0)
}

#[test]
fn parameter_validation() {
    let q = qb(0.5);
    assert!(ParamSet::new(&[1.0, 0.3, 0.2, 0.1], q).is_err());
    assert!(ParamSet::new(&[0.4, 0.3, 0.2, f64::NAN], q).is_err());
    assert!(ParamSet::new(&[0.4, 0.3, 0.2, 0.1, 0.1], q).is_err());
    assert!(Angle::from_x(1.5).is_err());
    let lambda = standard::lambda();
    assert!(matches!(MuParams::new(&[0.3, 0.2, 0.25, 0.15], &lambda), Err(Error::ConstraintViolated { .. })));
}

#[test]
fn low_degree_polynomials() {
    let lambda = standard::lambda();
    let q = lambda.q().get();
    let [a, b, cc, d] = standard::LAMBDA;
    for &x in &[-0.9, -0.2, 0.37, 0.8] {
        assert_eq!(aw_poly(0, x, &lambda).unwrap(), Complex64::new(1.0, 0.0));
        let e2 = a * b * cc * d;
        let p1 = 1.0
            + (1.0 - 1.0 / q) * (1.0 - e2) * (1.0 - 2.0 * a * x + a * a) / ((1.0 - q) * (1.0 - a * b) * (1.0 - a * cc) * (1.0 - a * d)) * q;
        assert!(close(aw_poly(1, x, &lambda).unwrap(), Complex64::new(p1, 0.0), 1e-14), "x={x}");
    }
}

#[test]
fn norm_with_vanishing_parameters() {
    let q = qb(0.5);
    let zero = ps(&[0.0, 0.0, 0.0, 0.0], 0.5);
    let want = qpoch_inf(Complex64::new(q.get(), 0.0), q, &TruncationPolicy::default()).unwrap().value.re / (2.0 * std::f64::consts::PI);
    assert!((aw_norm0(&zero).unwrap() - want).abs() < 1e-14 * want);
}

#[test]
fn norm_ratio_matches_products() {
    let lambda = standard::lambda();
    let [a, b, cc, d] = standard::LAMBDA;
    let q = 0.5f64;
    let e2 = a * b * cc * d;
    let p = |x: f64, n: usize| (0..n).map(|j| 1.0 - x * q.powi(j as i32)).product::<f64>();
    for n in 0..6 {
        let want = (1.0 - e2 * q.powi(2 * n as i32 - 1)) * p(e2 / q, n) * p(a * b, n) * p(a * cc, n) * p(a * d, n)
            / ((1.0 - e2 / q) * p(q, n) * p(cc * d, n) * p(b * d, n) * p(b * cc, n))
            * a.powi(-2 * n as i32);
        let got = aw_norm(n, &lambda).unwrap() / aw_norm0(&lambda).unwrap();
        assert!((got - want).abs() < 1e-13 * want.abs(), "n={n}");
    }
}

#[test]
fn weight_is_symmetric_in_parameters() {
    let q = 0.25;
    let w1 = aw_weight(0.0, &ps(&[0.4, 0.3, 0.2, 0.1], q)).unwrap();
    let w2 = aw_weight(0.0, &ps(&[0.1, 0.2, 0.3, 0.4], q)).unwrap();
    assert_eq!(w1, w2);
    assert!(w1 > 0.0);
    assert!(matches!(aw_weight(1.0, &standard::lambda()), Err(Error::EndpointSingularity(_))));
}

#[test]
fn qhermite_small_degrees() {
    let q = qb(0.5);
    for &x in &[-0.7, 0.0, 0.3] {
        assert_eq!(cont_qhermite(0, x, q).unwrap(), 1.0);
        assert!((cont_qhermite(1, x, q).unwrap() - 2.0 * x).abs() < 1e-15);
        assert!((cont_qhermite(2, x, q).unwrap() - (4.0 * x * x + q.get() - 1.0)).abs() < 1e-14);
    }
}

#[test]
fn qhermite_limit_agrees_for_low_degree() {
    let q = qb(0.5);
    for n in 0..=10 {
        let s = qhermite_limit_sum(n, 1.1, q).unwrap();
        let h = cont_qhermite(n, 1.1f64.cos(), q).unwrap();
        assert!((s.re - h).abs() <= 1e-12 * h.abs().max(1.0) && s.im.abs() < 1e-12, "n={n}");
    }
}

#[test]
fn qint_representation_agrees() {
    let lambda = standard::lambda();
    for n in 0..=4 {
        let x = 1.0f64.cos();
        let a = aw_poly(n, x, &lambda).unwrap();
        let b = aw_poly_qint(n, x, &lambda).unwrap();
        assert!((a - b).norm() <= 1e-9 * a.norm(), "n={n}");
    }
}

#[test]
fn degenerate_families_agree() {
    let q = qb(0.5);
    let ac = ps(&[0.4, 0.3], 0.5);
    for n in 0..6 {
        for &x in &[-0.6, 0.2, 0.9] {
            let a = alsalam_chihara(n, x, &ac).unwrap();
            let b = alsalam_chihara_2phi1(n, x, &ac).unwrap();
            assert!(close(a, b, 1e-11), "n={n} x={x}");
            let h = big_qhermite(n, x, 0.4, q).unwrap();
            let he = big_qhermite_explicit(n, x, 0.4, q).unwrap();
            assert!(close(h, he, 1e-11), "n={n} x={x}");
        }
    }
}

#[test]
fn classical_hermite() {
    assert_eq!(hermite(0, 0.7), 1.0);
    assert_eq!(hermite(1, 0.7), 1.4);
    assert!((hermite(3, 0.7) - (8.0 * 0.343 - 12.0 * 0.7)).abs() < 1e-13);
    let psi = hermite_psi_seq(6, 0.4);
    for (n, v) in psi.iter().enumerate() {
        assert!((v - hermite_psi(n, 0.4)).abs() < 1e-14);
    }
}

#[test]
fn std_recurrence_tracks_series() {
    let lambda = standard::lambda();
    let q = lambda.q();
    let [a, b, cc, d] = standard::LAMBDA;
    let x = 0.37;
    let seq = aw_std_sequence(&standard::LAMBDA, q, x, 5);
    let p = |v: f64, n: usize| (0..n).map(|j| 1.0 - v * q.pow(j as i64)).product::<f64>();
    for (n, s) in seq.iter().enumerate() {
        let series = aw_poly(n, x, &lambda).unwrap().re * p(a * b, n) * p(a * cc, n) * p(a * d, n) * a.powi(-(n as i32));
        assert!((s - series).abs() < 1e-9 * series.abs().max(1.0), "n={n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn aw_poly_is_symmetric_in_bcd(x in -1.0f64..1.0, b in -0.6f64..0.6, cc in -0.6f64..0.6, d in -0.6f64..0.6, n in 0usize..5) {
        let a = 0.45;
        let p1 = aw_poly(n, x, &ps(&[a, b, cc, d], 0.5)).unwrap();
        let p2 = aw_poly(n, x, &ps(&[a, d, b, cc], 0.5)).unwrap();
        prop_assert!(close(p1, p2, 1e-10));
    }

    #[test]
    fn qhermite_three_term_recurrence(x in -1.0f64..1.0, q in 0.1f64..0.9, n in 1usize..20) {
        let q = qb(q);
        let h = cont_qhermite_seq(n + 1, x, q);
        let lhs = 2.0 * x * h[n];
        let rhs = h[n + 1] + (1.0 - q.pow(n as i64)) * h[n - 1];
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (lhs.abs() + h[n + 1].abs() + 1.0));
    }

    #[test]
    fn weight_is_positive(x in -0.999f64..0.999) {
        prop_assert!(aw_weight(x, &standard::lambda()).unwrap() > 0.0);
        prop_assert!(rho0(x, standard::q()).unwrap() >= 0.0);
    }
}

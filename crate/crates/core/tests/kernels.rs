#![allow(clippy::excessive_precision)]

use proptest::prelude::*;
use qpoisson::kernels::*;
use qpoisson::polys::{Angle, MuParams, ParamSet};
use qpoisson::qcore::QBase;
use qpoisson::{standard, Complex64, Error, TruncationPolicy};

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

fn ang(theta: f64) -> Angle {
    Angle::from_theta(theta).unwrap()
}

fn auto() -> Truncation {
    Truncation::Auto(TruncationPolicy::default())
}

fn ps(v: &[f64], q: f64) -> ParamSet {
    ParamSet::new(v, QBase::new(q).unwrap()).unwrap()
}

// 60-digit recurrence sums at the standard set, t = 0.3 and 0.5, over the 3x3 grid.
const ORACLE: [(f64, f64, f64, f64); 18] = [
    (0.3, 0.7, 0.7, 1.2665011987263088003),
    (0.3, 0.7, 1.5, 0.71426671032079528802),
    (0.3, 0.7, 2.4, 0.36022600718511698442),
    (0.3, 1.5, 0.7, 0.65206412763278699384),
    (0.3, 1.5, 1.5, 1.4089854042616315461),
    (0.3, 1.5, 2.4, 1.992547318355428204),
    (0.3, 2.4, 0.7, 0.29703233275885546943),
    (0.3, 2.4, 1.5, 1.8329660929559455848),
    (0.3, 2.4, 2.4, 12.658431188530811671),
    (0.5, 0.7, 0.7, 1.4832472289191601662),
    (0.5, 0.7, 1.5, 0.51476345914525823275),
    (0.5, 0.7, 2.4, 0.16052165794434550079),
    (0.5, 1.5, 0.7, 0.42408761504951880861),
    (0.5, 1.5, 1.5, 1.7500865072946443087),
    (0.5, 1.5, 2.4, 2.0984522477920212209),
    (0.5, 2.4, 0.7, 0.10619133381542861737),
    (0.5, 2.4, 1.5, 1.7814338320108598537),
    (0.5, 2.4, 2.4, 38.6091678913161163),
];

#[test]
fn direct_matches_high_precision_oracle() {
    for &(t, th, ph, want) in &ORACLE {
        let kp = standard::kernel_params(t).unwrap();
        let v = kernel_direct_with(&ang(th), &ang(ph), &kp, &auto()).unwrap();
        assert!(rel(v.value, Complex64::new(want, 0.0)) < 1e-12, "t={t} θ={th} φ={ph}: {}", v.value);
    }
}

#[test]
fn explicit_matches_high_precision_oracle() {
    for &(t, th, ph, want) in ORACLE.iter().filter(|o| o.0 == 0.3) {
        let kp = standard::kernel_params(t).unwrap();
        let v = kernel_explicit(&ang(th), &ang(ph), &kp).unwrap();
        assert!(rel(v.value, Complex64::new(want, 0.0)) < 1e-7, "θ={th} φ={ph}: {}", v.value);
    }
}

#[test]
fn explicit_parts_sum_to_value() {
    let kp = standard::kernel_params(0.3).unwrap();
    let v = kernel_explicit(&ang(1.0), &ang(1.3), &kp).unwrap();
    let [k1, k2, k3] = v.parts.unwrap();
    assert_eq!(k1 + k2 + k3, v.value);
    assert_eq!(v.terms.len(), 3);
}

#[test]
fn every_kernel_is_one_at_t_zero() {
    let (x, y) = (ang(1.0), ang(1.3));
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let kp = standard::kernel_params(0.0).unwrap();
    assert_eq!(kernel_direct(&x, &y, &kp, 5).unwrap().value, one);
    assert!((kernel_explicit(&x, &y, &kp).unwrap().value - one).norm() < 1e-13);
    let q = standard::q();
    let l3 = ps(&[0.4, 0.3, 0.2], 0.5);
    let m3 = ps(&[0.32, 0.2, 0.25], 0.5);
    let l2 = ps(&[0.4, 0.3], 0.5);
    let m2 = ps(&[0.24, 0.5], 0.5);
    let vals = [
        dual_qhahn_kernel(&x, &y, &l3, &m3, z).unwrap(),
        asc_kernel(&x, &y, &l2, &m2, z).unwrap(),
        asc_kernel_norm(&x, &y, &l2, &m2, z).unwrap(),
        asc_kernel_norm_alt(&x, &y, &l2, &m2, z).unwrap(),
        bigqh_kernel(&x, &y, 0.4, 0.3, q, z).unwrap(),
        bigqh_kernel_norm(&x, &y, 0.4, 0.3, q, z).unwrap(),
        qhermite_qbessel_kernel(&x, &y, 0.3, q, z).unwrap(),
        j_t(&x, &y, 0.3, q, z, JtArgument::Theta).unwrap(),
    ];
    for (i, v) in vals.iter().enumerate() {
        assert!((v - one).norm() < 1e-13, "kernel {i}: {v}");
    }
    assert!((qhermite_poisson(&x, &y, 0.0, q).unwrap() - 1.0).abs() < 1e-15);
}

#[test]
fn unity_rejects_beta_equal_b() {
    let lambda = standard::lambda();
    let err = MuParams::for_unity(&[0.4, 0.3, 0.2, 0.1], &lambda).unwrap_err();
    match err {
        Error::ConstraintViolated { invariant } | Error::InvalidParameter { invariant, .. } => {
            assert!(invariant.contains("|β| < |b|"), "{invariant}")
        }
        e => panic!("unexpected {e:?}"),
    }
}

#[test]
fn unity_kernel_near_boundary() {
    let lambda = standard::lambda();
    let mu = standard::mu_unity();
    let kp = KernelParams::new(lambda.clone(), mu.clone(), Complex64::new(0.999, 0.0)).unwrap();
    for (th, ph) in standard::grid() {
        let k = kernel_unity(&ang(th), &ang(ph), &lambda, &mu).unwrap();
        let d = kernel_direct_with(&ang(th), &ang(ph), &kp, &auto()).unwrap();
        assert!(rel(k, d.value) < 1e-2, "θ={th} φ={ph}");
    }
}

#[test]
fn closed_forms_against_direct_sums() {
    let (x, y) = (ang(1.0), ang(1.3));
    let t = Complex64::new(0.3, 0.0);
    let q = standard::q();
    let l3 = ps(&[0.4, 0.3, 0.2], 0.5);
    let m3 = ps(&[0.32, 0.2, 0.25], 0.5);
    let k = dual_qhahn_kernel(&x, &y, &l3, &m3, t).unwrap();
    assert!(rel(k, dual_qhahn_direct(&x, &y, &l3, &m3, t, &auto()).unwrap().value) < 1e-7);

    let (x2, y2) = (ang(1.1), ang(0.6));
    let l2 = ps(&[0.5, 0.3], 0.4);
    let m2 = ps(&[0.3, 0.5], 0.4);
    let t2 = Complex64::new(0.35, 0.0);
    let a = asc_kernel_norm(&x2, &y2, &l2, &m2, t2).unwrap();
    let b = asc_kernel_norm_alt(&x2, &y2, &l2, &m2, t2).unwrap();
    assert!(rel(a, b) < 1e-9);
    assert!(rel(a, asc_norm_direct(&x2, &y2, &l2, &m2, t2, &auto()).unwrap().value) < 1e-7);
    let k = asc_kernel(&x2, &y2, &l2, &m2, t2).unwrap();
    assert!(rel(k, asc_direct(&x2, &y2, &l2, &m2, t2, &auto()).unwrap().value) < 1e-7);

    let k = bigqh_kernel(&x, &y, 0.4, 0.3, q, t).unwrap();
    assert!(rel(k, bigqh_direct(&x, &y, 0.4, 0.3, q, t, &auto()).unwrap().value) < 1e-7);
    let k = bigqh_kernel_norm(&x, &y, 0.4, 0.3, q, t).unwrap();
    assert!(rel(k, bigqh_norm_direct(&x, &y, 0.4, 0.3, q, t, &auto()).unwrap().value) < 1e-7);
    let k0 = bigqh_kernel_norm(&x, &y, 0.0, 0.3, q, t).unwrap();
    let k17 = qhermite_qbessel_kernel(&x, &y, 0.3, q, t).unwrap();
    assert!(rel(k0, k17) < 1e-11);
}

#[test]
fn ratio_conditions_are_enforced() {
    let (x, y) = (ang(1.0), ang(1.3));
    let t = Complex64::new(0.3, 0.0);
    let l3 = ps(&[0.4, 0.3, 0.2], 0.5);
    let bad = ps(&[0.3, 0.2, 0.25], 0.5);
    assert!(matches!(dual_qhahn_kernel(&x, &y, &l3, &bad, t), Err(Error::ConstraintViolated { .. })));
    let l2 = ps(&[0.4, 0.3], 0.5);
    let bad2 = ps(&[0.3, 0.3], 0.5);
    assert!(matches!(asc_kernel(&x, &y, &l2, &bad2, t), Err(Error::ConstraintViolated { .. })));
}

#[test]
fn t_outside_unit_disk_is_rejected() {
    assert!(standard::kernel_params(1.0).is_err());
    let kp = standard::kernel_params(0.3).unwrap();
    assert!(kp.with_t(Complex64::new(0.0, 1.0)).is_err());
}

#[test]
fn mehler_and_qhermite_series() {
    for &(x, y) in &[(0.5, -0.5), (2.0, 0.5), (-2.0, -2.0)] {
        for t in [0.2, 0.5] {
            let a = mehler_kernel(x, y, t).unwrap();
            let b = mehler_series(x, y, t, 50).unwrap();
            assert!((a - b).abs() <= 1e-10 * a.abs(), "x={x} y={y} t={t}");
        }
    }
    let q = standard::q();
    for (th, ph) in standard::grid() {
        let a = qhermite_poisson(&ang(th), &ang(ph), 0.4, q).unwrap();
        let b = qhermite_poisson_series(&ang(th), &ang(ph), 0.4, q, 60).unwrap();
        assert!((a - b).abs() <= 1e-10 * a.abs());
    }
}

#[test]
fn delta_kernel_endpoint() {
    let q = standard::q();
    let r = qhermite_delta_kernel(&ang(1.0), &Angle::from_x(1.0).unwrap(), 0.5, q);
    assert!(matches!(r, Err(Error::EndpointSingularity(_))));
}

#[test]
fn pole_guard_trips_on_resonant_parameters() {
    let lambda = standard::lambda();
    let mu = MuParams::new(&standard::LAMBDA, &lambda).unwrap();
    let kp = KernelParams::new(lambda, mu, Complex64::new(0.3, 0.0)).unwrap();
    assert!(matches!(kernel_explicit(&ang(1.0), &ang(1.3), &kp), Err(Error::PoleGuardTripped { .. })));
}

#[test]
fn near_lattice_detection() {
    let q = standard::q();
    assert!(near_lattice(Complex64::new(4.0, 0.0), Lattice::Negative, q, 1e-10));
    assert!(!near_lattice(Complex64::new(4.0, 0.0), Lattice::Positive, q, 1e-10));
    assert!(near_lattice(Complex64::new(0.25, 0.0), Lattice::Both, q, 1e-10));
    assert!(!near_lattice(Complex64::new(3.0, 0.0), Lattice::Both, q, 1e-10));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn direct_is_symmetric_when_mu_is_lambda(th in 0.1f64..3.0, ph in 0.1f64..3.0, t in -0.6f64..0.6) {
        let lambda = standard::lambda();
        let mu = MuParams::new(&standard::LAMBDA, &lambda).unwrap();
        let kp = KernelParams::new(lambda, mu, Complex64::new(t, 0.0)).unwrap();
        let a = kernel_direct_with(&ang(th), &ang(ph), &kp, &auto()).unwrap().value;
        let b = kernel_direct_with(&ang(ph), &ang(th), &kp, &auto()).unwrap().value;
        prop_assert!(rel(a, b) < 1e-9);
    }

    #[test]
    fn real_parameters_give_real_kernels(th in 0.1f64..3.0, ph in 0.1f64..3.0, t in -0.5f64..0.5) {
        let kp = standard::kernel_params(t).unwrap();
        let v = kernel_explicit(&ang(th), &ang(ph), &kp).unwrap().value;
        prop_assert!(v.im.abs() <= 1e-9 * (1.0 + v.re.abs()));
        let q = standard::q();
        let k = bigqh_kernel(&ang(th), &ang(ph), 0.4, 0.3, q, Complex64::new(t, 0.0)).unwrap();
        prop_assert!(k.im.abs() <= 1e-9 * (1.0 + k.re.abs()));
    }

    #[test]
    fn truncated_direct_converges_to_auto(th in 0.1f64..3.0, ph in 0.1f64..3.0) {
        let kp = standard::kernel_params(0.3).unwrap();
        let full = kernel_direct_with(&ang(th), &ang(ph), &kp, &auto()).unwrap();
        let cut = kernel_direct(&ang(th), &ang(ph), &kp, full.terms_used + 20).unwrap();
        prop_assert!(rel(cut.value, full.value) < 1e-12);
    }

    #[test]
    fn qhermite_poisson_is_symmetric(th in 0.1f64..3.0, ph in 0.1f64..3.0, r in -0.9f64..0.9) {
        let q = standard::q();
        let a = qhermite_poisson(&ang(th), &ang(ph), r, q).unwrap();
        let b = qhermite_poisson(&ang(ph), &ang(th), r, q).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a.abs());
        prop_assert!(a > 0.0);
    }
}

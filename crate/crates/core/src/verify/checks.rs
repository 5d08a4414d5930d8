//! Identity checks: each compares two independent evaluations and returns a [`CheckReport`].

use alloc::format;
use alloc::vec::Vec;
use num_complex::Complex64;

use super::quadrature::{integrate_theta, integrate_weighted, QuadratureConfig, Weight};
use crate::error::{Error, Result};
use crate::kernels::{
    asc_direct, asc_kernel, asc_kernel_norm, asc_kernel_norm_alt, asc_kernel_unity, asc_norm_direct, bigqh_direct, bigqh_kernel,
    bigqh_kernel_norm, bigqh_norm_direct, dual_qhahn_direct, dual_qhahn_kernel, dual_qhahn_kernel_unity, kernel_direct_with,
    kernel_explicit, kernel_unity, mehler_kernel, mehler_series, qhermite_delta_kernel, qhermite_poisson, qhermite_poisson_series,
    qhermite_qbessel_kernel, KernelParams, Truncation,
};
use crate::math::{self, c};
use crate::polys::{aw_norm, aw_norm0, aw_poly, aw_poly_qint, cont_qhermite, qhermite_limit_sum, Angle, MuParams, ParamSet};
use crate::qcore::{h_multi, QBase, TruncationPolicy};
use crate::report::{rel_err, CheckReport, Witness};

fn auto() -> Truncation {
    Truncation::Auto(TruncationPolicy::default())
}

fn base(q: QBase, lambda: &ParamSet) -> Witness {
    Witness::new().with("q", q.get()).with_slice("lambda", lambda.values())
}

fn with_cfg(w: Witness, cfg: &QuadratureConfig) -> Witness {
    w.with("panels", cfg.panels() as f64).with("nodes", cfg.nodes_per_panel() as f64)
}

/// `|∫ p_m p_n ρ dx - δ_{mn}/h_n|`, relative on the diagonal.
pub fn orthogonality_entry(lambda: &ParamSet, m: usize, n: usize, cfg: &QuadratureConfig, tol: f64) -> Result<CheckReport> {
    let at = |x: f64| -> Result<Complex64> { Ok(aw_poly(m, x, lambda)? * aw_poly(n, x, lambda)?) };
    let v = integrate_weighted(at, &Weight::AskeyWilson(lambda.clone()), cfg)?;
    let err = if m == n {
        let hn = aw_norm(n, lambda)?;
        (v - c(1.0 / hn)).norm() * hn
    } else {
        v.norm()
    };
    let w = with_cfg(base(lambda.q(), lambda), cfg).with("m", m as f64).with("n", n as f64);
    Ok(CheckReport::new(format!("check_orthogonality/m={m},n={n}"), err, tol, w))
}

/// All `(n_max + 1)²` orthogonality entries.
pub fn check_orthogonality(lambda: &ParamSet, n_max: usize, tol: f64) -> Result<Vec<CheckReport>> {
    let cfg = QuadratureConfig::default();
    let mut out = Vec::new();
    for m in 0..=n_max {
        for n in 0..=n_max {
            out.push(orthogonality_entry(lambda, m, n, &cfg, tol)?);
        }
    }
    Ok(out)
}

/// `∫ ρ dx = 1/h_0`, relative.
pub fn check_weight_normalization(lambda: &ParamSet, cfg: &QuadratureConfig, tol: f64) -> Result<CheckReport> {
    let v = integrate_weighted(|_| Ok(c(1.0)), &Weight::AskeyWilson(lambda.clone()), cfg)?;
    let h0 = aw_norm0(lambda)?;
    let err = (v - c(1.0 / h0)).norm() * h0;
    Ok(CheckReport::new("check_weight_normalization", err, tol, with_cfg(base(lambda.q(), lambda), cfg)))
}

/// `|∫ Ψ_m Ψ_n dx - δ_{mn}|`.
pub fn wavefunction_entry(q: QBase, m: usize, n: usize, cfg: &QuadratureConfig, tol: f64) -> Result<CheckReport> {
    let (sm, sn) = (crate::polys::wavefunction_scale(m, q)?, crate::polys::wavefunction_scale(n, q)?);
    let f = |x: f64| -> Result<Complex64> { Ok(c(sm * sn * cont_qhermite(m, x, q)? * cont_qhermite(n, x, q)?)) };
    let v = integrate_weighted(f, &Weight::QHermite(q), cfg)?;
    let target = if m == n { 1.0 } else { 0.0 };
    let w = with_cfg(Witness::new().with("q", q.get()), cfg).with("m", m as f64).with("n", n as f64);
    Ok(CheckReport::new(format!("check_wavefunction_orthogonality/m={m},n={n}"), (v - c(target)).norm(), tol, w))
}

pub fn check_wavefunction_orthogonality(q: QBase, n_max: usize, tol: f64) -> Result<Vec<CheckReport>> {
    let cfg = QuadratureConfig::default();
    let mut out = Vec::new();
    for m in 0..=n_max {
        for n in 0..=n_max {
            out.push(wavefunction_entry(q, m, n, &cfg, tol)?);
        }
    }
    Ok(out)
}

fn kernel_witness(kp: &KernelParams, theta: f64, phi: f64) -> Witness {
    base(kp.q(), kp.lambda()).with_slice("mu", kp.mu().values()).with_complex("t", kp.t()).with("theta", theta).with("phi", phi)
}

/// Explicit three-part kernel against the direct bilinear sum.
pub fn check_kernel_explicit(kp: &KernelParams, theta: f64, phi: f64, tol: f64) -> Result<CheckReport> {
    let (x, y) = (Angle::from_theta(theta)?, Angle::from_theta(phi)?);
    let e = kernel_explicit(&x, &y, kp)?;
    let d = kernel_direct_with(&x, &y, kp, &auto())?;
    let terms = e.terms.clone();
    let id = format!("check_kernel_explicit/theta={theta},phi={phi}");
    let mut r =
        CheckReport::new(id, rel_err(e.value, d.value), tol, kernel_witness(kp, theta, phi)).with_diagnostic("direct_terms", d.terms_used);
    for (i, n) in terms.into_iter().enumerate() {
        r = r.with_diagnostic(&format!("k{}_terms", i + 1), n);
    }
    Ok(r)
}

/// `∫ K_t^{λμ}(x,y) K_{t'}^{μλ'}(y,x') ρ^μ(y) dy` against `K_{tt'}^{λλ'}(x,x') / h_0^μ`.
#[allow(clippy::too_many_arguments)]
pub fn check_multiplication(
    lambda: &ParamSet,
    mu: &ParamSet,
    lambda2: &ParamSet,
    t: Complex64,
    t2: Complex64,
    theta: f64,
    theta2: f64,
    cfg: &QuadratureConfig,
    tol: f64,
) -> Result<CheckReport> {
    let first = KernelParams::new(lambda.clone(), MuParams::new(mu.values(), lambda)?, t)?;
    let second = KernelParams::new(mu.clone(), MuParams::new(lambda2.values(), mu)?, t2)?;
    let whole = KernelParams::new(lambda.clone(), MuParams::new(lambda2.values(), lambda)?, t * t2)?;
    let (x, x2) = (Angle::from_theta(theta)?, Angle::from_theta(theta2)?);
    let f = |yv: f64| -> Result<Complex64> {
        let y = Angle::from_x(yv)?;
        Ok(kernel_direct_with(&x, &y, &first, &auto())?.value * kernel_direct_with(&y, &x2, &second, &auto())?.value)
    };
    let lhs = integrate_weighted(f, &Weight::AskeyWilson(mu.clone()), cfg)?;
    let rhs = kernel_explicit(&x, &x2, &whole)?.value / aw_norm0(mu)?;
    let w = with_cfg(base(lambda.q(), lambda), cfg)
        .with_slice("mu", mu.values())
        .with_slice("lambda2", lambda2.values())
        .with_complex("t", t)
        .with_complex("t2", t2)
        .with("theta", theta)
        .with("theta2", theta2);
    let id = format!("check_multiplication/t={},t2={}", t.re, t2.re);
    Ok(CheckReport::new(id, rel_err(lhs, rhs), tol, w))
}

/// `t^m h_m^λ p_m^λ(x) = ∫ h_0^λ K_t^{λμ}(x,y) h_m^μ p_m^μ(y) ρ^μ(y) dy`.
pub fn check_projection(kp: &KernelParams, m: usize, theta: f64, cfg: &QuadratureConfig, tol: f64) -> Result<CheckReport> {
    let (lambda, mu) = (kp.lambda(), kp.mu());
    let x = Angle::from_theta(theta)?;
    let f = |yv: f64| -> Result<Complex64> {
        let y = Angle::from_x(yv)?;
        Ok(kernel_direct_with(&x, &y, kp, &auto())?.value * aw_poly(m, yv, mu)?)
    };
    let integral = integrate_weighted(f, &Weight::AskeyWilson(mu.clone()), cfg)?;
    let rhs = integral * (aw_norm0(lambda)? * aw_norm(m, mu)?);
    let lhs = kp.t().powu(m as u32) * aw_norm(m, lambda)? * aw_poly(m, x.x(), lambda)?;
    let w = with_cfg(kernel_witness(kp, theta, 0.0), cfg).with("m", m as f64);
    Ok(CheckReport::new(format!("check_projection/m={m}"), rel_err(rhs, lhs), tol, w))
}

/// Test functions for the delta-limit check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaTest {
    One,
    Square,
}

impl DeltaTest {
    pub fn code(self) -> f64 {
        match self {
            DeltaTest::One => 0.0,
            DeltaTest::Square => 2.0,
        }
    }
    pub fn from_code(v: f64) -> Result<Self> {
        match v as i64 {
            0 => Ok(DeltaTest::One),
            2 => Ok(DeltaTest::Square),
            _ => Err(Error::InvalidParameter { name: "f", invariant: "f ∈ {0: 1, 2: y²}".into() }),
        }
    }
    fn eval(self, y: f64) -> f64 {
        match self {
            DeltaTest::One => 1.0,
            DeltaTest::Square => y * y,
        }
    }
}

/// `∫ K_r^{(0)}(x, y) f(y) dy`, refined around the peak at `φ = θ`.
pub fn delta_integral(r: f64, f: DeltaTest, theta: f64, q: QBase, cfg: &QuadratureConfig) -> Result<f64> {
    let x = Angle::from_theta(theta)?;
    let cfg = cfg.clone().with_peak(theta, (1.0 - r).max(1e-6))?;
    let v = integrate_theta(
        |ph| {
            let y = Angle::from_theta(ph)?;
            Ok(c(qhermite_delta_kernel(&x, &y, r, q)? * y.sin() * f.eval(y.x())))
        },
        &cfg,
    )?;
    Ok(v.re)
}

/// `|∫ K_r^{(0)}(x,y) f(y) dy - f(x)|`.
pub fn check_delta_limit(r: f64, f: DeltaTest, theta: f64, q: QBase, cfg: &QuadratureConfig, tol: f64) -> Result<CheckReport> {
    if !(0.0 < r && r < 1.0) {
        return Err(Error::InvalidParameter { name: "r", invariant: "0 < r < 1".into() });
    }
    let v = delta_integral(r, f, theta, q, cfg)?;
    let err = (v - f.eval(math::cos(theta))).abs();
    let w = with_cfg(Witness::new().with("q", q.get()), cfg).with("r", r).with("f", f.code()).with("theta", theta);
    Ok(CheckReport::new(format!("check_delta_limit/f={},r={r}", f.code()), err, tol, w))
}

/// Largest increase of the `f(y) = y²` delta-limit error along increasing `r`.
pub fn check_delta_monotone(rs: &[f64], theta: f64, q: QBase, cfg: &QuadratureConfig, tol: f64) -> Result<CheckReport> {
    let x = math::cos(theta);
    let mut errs = Vec::with_capacity(rs.len());
    for &r in rs {
        errs.push((delta_integral(r, DeltaTest::Square, theta, q, cfg)? - x * x).abs());
    }
    let rise = errs.windows(2).map(|p| p[1] - p[0]).fold(0.0f64, f64::max);
    let w = with_cfg(Witness::new().with("q", q.get()), cfg).with_slice("r", rs).with("theta", theta).with_slice("errors", &errs);
    Ok(CheckReport::new("check_delta_monotone", rise, tol, w))
}

/// `∫ K_r^{(0)}(x, y) dy = 1`.
pub fn check_qhermite_normalization(r: f64, theta: f64, q: QBase, cfg: &QuadratureConfig, tol: f64) -> Result<CheckReport> {
    let v = delta_integral(r, DeltaTest::One, theta, q, cfg)?;
    let w = with_cfg(Witness::new().with("q", q.get()), cfg).with("r", r).with("theta", theta);
    Ok(CheckReport::new(format!("check_qhermite_normalization/r={r},theta={theta}"), (v - 1.0).abs(), tol, w))
}

/// Closed q-Hermite Poisson kernel against its `n_terms`-term series.
pub fn check_qhermite_poisson(r: f64, theta: f64, phi: f64, q: QBase, n_terms: usize, tol: f64) -> Result<CheckReport> {
    let (x, y) = (Angle::from_theta(theta)?, Angle::from_theta(phi)?);
    let a = qhermite_poisson(&x, &y, r, q)?;
    let b = qhermite_poisson_series(&x, &y, r, q, n_terms)?;
    let w = Witness::new().with("q", q.get()).with("r", r).with("theta", theta).with("phi", phi).with("n_terms", n_terms as f64);
    Ok(CheckReport::new(format!("check_qhermite_poisson/theta={theta},phi={phi}"), rel_err(c(b), c(a)), tol, w))
}

/// Finite limit sum against `H_n(cos θ | q)`, relative to `max(1, |H_n|)`.
pub fn check_qhermite_limit(n: usize, theta: f64, q: QBase, tol: f64) -> Result<CheckReport> {
    let s = qhermite_limit_sum(n, theta, q)?;
    let h = cont_qhermite(n, math::cos(theta), q)?;
    let err = (s - c(h)).norm() / h.abs().max(1.0);
    let w = Witness::new().with("q", q.get()).with("n", n as f64).with("theta", theta);
    Ok(CheckReport::new(format!("check_qhermite_limit/n={n}"), err, tol, w))
}

/// Closed Mehler kernel against its `n_terms`-term Hermite series, relative.
pub fn check_mehler(x: f64, y: f64, t: f64, n_terms: usize, tol: f64) -> Result<CheckReport> {
    let a = mehler_kernel(x, y, t)?;
    let b = mehler_series(x, y, t, n_terms)?;
    let w = Witness::new().with("x", x).with("y", y).with("t", t).with("n_terms", n_terms as f64);
    Ok(CheckReport::new(format!("check_mehler/x={x},y={y},t={t}"), rel_err(c(b), c(a)), tol, w))
}

/// `p_n` from the `4φ3` against its q-integral representation.
pub fn check_qint_representation(lambda: &ParamSet, n: usize, theta: f64, tol: f64) -> Result<CheckReport> {
    let x = math::cos(theta);
    let a = aw_poly(n, x, lambda)?;
    let b = aw_poly_qint(n, x, lambda)?;
    let w = base(lambda.q(), lambda).with("n", n as f64).with("theta", theta);
    Ok(CheckReport::new(format!("check_qint_representation/n={n}"), rel_err(b, a), tol, w))
}

/// The `t → 1⁻` kernel against the direct sum at `t` near 1.
pub fn check_unity_direct(lambda: &ParamSet, mu: &MuParams, t: f64, theta: f64, phi: f64, tol: f64) -> Result<CheckReport> {
    let (x, y) = (Angle::from_theta(theta)?, Angle::from_theta(phi)?);
    let u = kernel_unity(&x, &y, lambda, mu)?;
    let kp = KernelParams::new(lambda.clone(), mu.clone(), c(t))?;
    let d = kernel_direct_with(&x, &y, &kp, &auto())?;
    let id = format!("check_unity_direct/theta={theta},phi={phi}");
    Ok(CheckReport::new(id, rel_err(u, d.value), tol, kernel_witness(&kp, theta, phi)).with_diagnostic("direct_terms", d.terms_used))
}

/// Relative spread `(max - min) / max|·|` of the unity kernel over the q-Hermite Poisson kernel at
/// `r = β/b` across the grid; with `reduced` the ratio is further divided by `h(x; c, d) h(y; α, β)`.
pub fn check_unity_ratio(lambda: &ParamSet, mu: &MuParams, grid: &[f64], reduced: bool, tol: f64) -> Result<CheckReport> {
    let q = lambda.q();
    let [_, b, cc, d] = lambda.quartet()?;
    let [al, be, _, _] = mu.params().quartet()?;
    let pol = TruncationPolicy::default();
    let mut ratios = Vec::new();
    for &th in grid {
        for &ph in grid {
            let (x, y) = (Angle::from_theta(th)?, Angle::from_theta(ph)?);
            let mut r = kernel_unity(&x, &y, lambda, mu)?.re / qhermite_poisson(&x, &y, be / b, q)?;
            if reduced {
                r /= (h_multi(x.x(), &[c(cc), c(d)], q, &pol)? * h_multi(y.x(), &[c(al), c(be)], q, &pol)?).re;
            }
            ratios.push(r);
        }
    }
    let hi = ratios.iter().cloned().fold(f64::MIN, f64::max);
    let lo = ratios.iter().cloned().fold(f64::MAX, f64::min);
    let scale = ratios.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let id = if reduced { "check_unity_ratio_reduced" } else { "check_unity_ratio" };
    let w = base(q, lambda).with_slice("mu", mu.params().values()).with_slice("grid", grid);
    Ok(CheckReport::new(id, (hi - lo) / scale, tol, w))
}

/// Closed forms of the degenerate families and their oracles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Closed {
    /// Continuous dual q-Hahn double sum against its bilinear sum.
    DualQHahn,
    /// Its `t → 1⁻` product against the bilinear sum at `t` near 1.
    DualQHahnUnity,
    /// Al-Salam-Chihara `8W7` against its bilinear sum.
    Asc,
    AscUnity,
    /// First `8W7` form of the normalized Al-Salam-Chihara kernel.
    AscNorm,
    /// Second `8W7` form.
    AscNormAlt,
    /// The two forms against each other.
    AscNormForms,
    BigQHermite,
    BigQHermiteNorm,
    /// q-Hermite / q-Bessel `2φ1` against its bilinear sum.
    QBessel,
    /// The normalized big q-Hermite form at `a = 0` against the `2φ1`.
    QBesselReduction,
}

impl Closed {
    pub const ALL: [Closed; 11] = [
        Closed::DualQHahn,
        Closed::DualQHahnUnity,
        Closed::Asc,
        Closed::AscUnity,
        Closed::AscNorm,
        Closed::AscNormAlt,
        Closed::AscNormForms,
        Closed::BigQHermite,
        Closed::BigQHermiteNorm,
        Closed::QBessel,
        Closed::QBesselReduction,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Closed::DualQHahn => "check_dual_qhahn",
            Closed::DualQHahnUnity => "check_dual_qhahn_unity",
            Closed::Asc => "check_asc",
            Closed::AscUnity => "check_asc_unity",
            Closed::AscNorm => "check_asc_norm",
            Closed::AscNormAlt => "check_asc_norm_alt",
            Closed::AscNormForms => "check_asc_norm_forms",
            Closed::BigQHermite => "check_bigqh",
            Closed::BigQHermiteNorm => "check_bigqh_norm",
            Closed::QBessel => "check_qbessel",
            Closed::QBesselReduction => "check_qbessel_reduction",
        }
    }
}

/// One closed-form kernel at `(θ, φ)`. `lambda`/`mu` carry `(a, b, c)`, `(a, b)` or `(a)`
/// as the family requires; for the `t → 1⁻` families `t` is the oracle's `t`.
pub fn check_closed_kernel(kind: Closed, lambda: &ParamSet, mu: &ParamSet, t: f64, theta: f64, phi: f64, tol: f64) -> Result<CheckReport> {
    let (x, y) = (Angle::from_theta(theta)?, Angle::from_theta(phi)?);
    let tc = c(t);
    let q = lambda.q();
    let tr = auto();
    let (closed, oracle) = match kind {
        Closed::DualQHahn => (dual_qhahn_kernel(&x, &y, lambda, mu, tc)?, dual_qhahn_direct(&x, &y, lambda, mu, tc, &tr)?.value),
        Closed::DualQHahnUnity => (dual_qhahn_kernel_unity(&x, &y, lambda, mu)?, dual_qhahn_direct(&x, &y, lambda, mu, tc, &tr)?.value),
        Closed::Asc => (asc_kernel(&x, &y, lambda, mu, tc)?, asc_direct(&x, &y, lambda, mu, tc, &tr)?.value),
        Closed::AscUnity => (asc_kernel_unity(&x, &y, lambda, mu)?, asc_direct(&x, &y, lambda, mu, tc, &tr)?.value),
        Closed::AscNorm => (asc_kernel_norm(&x, &y, lambda, mu, tc)?, asc_norm_direct(&x, &y, lambda, mu, tc, &tr)?.value),
        Closed::AscNormAlt => (asc_kernel_norm_alt(&x, &y, lambda, mu, tc)?, asc_norm_direct(&x, &y, lambda, mu, tc, &tr)?.value),
        Closed::AscNormForms => (asc_kernel_norm(&x, &y, lambda, mu, tc)?, asc_kernel_norm_alt(&x, &y, lambda, mu, tc)?),
        Closed::BigQHermite => {
            let (a, al) = (lambda.get(0), mu.get(0));
            (bigqh_kernel(&x, &y, a, al, q, tc)?, bigqh_direct(&x, &y, a, al, q, tc, &tr)?.value)
        }
        Closed::BigQHermiteNorm => {
            let (a, al) = (lambda.get(0), mu.get(0));
            (bigqh_kernel_norm(&x, &y, a, al, q, tc)?, bigqh_norm_direct(&x, &y, a, al, q, tc, &tr)?.value)
        }
        Closed::QBessel => {
            let al = mu.get(0);
            (qhermite_qbessel_kernel(&x, &y, al, q, tc)?, bigqh_norm_direct(&x, &y, 0.0, al, q, tc, &tr)?.value)
        }
        Closed::QBesselReduction => {
            let al = mu.get(0);
            (bigqh_kernel_norm(&x, &y, 0.0, al, q, tc)?, qhermite_qbessel_kernel(&x, &y, al, q, tc)?)
        }
    };
    let w = base(q, lambda).with_slice("mu", mu.values()).with("t", t).with("theta", theta).with("phi", phi);
    Ok(CheckReport::new(format!("{}/theta={theta},phi={phi}", kind.id()), rel_err(closed, oracle), tol, w))
}

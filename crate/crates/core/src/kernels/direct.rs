//! Brute-force bilinear sums: the oracles every closed form is tested against.

use num_complex::Complex64;

use super::{check_t, KernelParams};
use crate::error::{Error, Result};
use crate::math::{c, Neumaier};
use crate::polys::{Angle, AwStdIter, ParamSet};
use crate::qcore::{QBase, SeriesValue, TruncationPolicy};

/// How many terms of a bilinear sum to take.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Truncation {
    /// Terms `n = 0..=N`.
    Terms(usize),
    /// Until the term envelope is negligible under the policy.
    Auto(TruncationPolicy),
}

/// `Σ_n w_n P_n^λ(x) P_n^μ(y)` with `w_n / w_{n-1} = ratio(n)` and `w_0 = 1`.
///
/// The envelope `|w_n| max_k |P_k(x)| max_k |P_k(y)|` drives the stop rule so that
/// an accidental zero of `P_n` cannot end the sum early.
fn bilinear_sum<F>(lam: &[f64], mu: &[f64], q: QBase, x: f64, y: f64, mut ratio: F, trunc: &Truncation) -> Result<SeriesValue>
where
    F: FnMut(usize) -> Complex64,
{
    let mut px = AwStdIter::new(lam, q, x);
    let mut py = AwStdIter::new(mu, q, y);
    let mut sum = Neumaier::new();
    let (mut mx, mut my) = (0.0f64, 0.0f64);
    let mut w = c(1.0);
    let mut small_run = 0;
    let (limit, policy) = match *trunc {
        Truncation::Terms(n) => (n + 1, None),
        Truncation::Auto(p) => (p.max_terms, Some(p)),
    };
    for n in 0..limit {
        if n > 0 {
            w *= ratio(n);
        }
        let (u, v) = (px.next().unwrap_or(0.0), py.next().unwrap_or(0.0));
        let term = w * (u * v);
        if !(term.re.is_finite() && term.im.is_finite()) {
            return Err(Error::NonFinite("bilinear term"));
        }
        sum.add(term);
        mx = mx.max(u.abs());
        my = my.max(v.abs());
        if let Some(p) = policy {
            let env = w.norm() * mx * my;
            if p.small(env, sum.value().norm()) {
                small_run += 1;
                if small_run >= 2 {
                    let rho = ratio(n + 1).norm();
                    return Ok(finish(sum.value(), n + 1, env, rho));
                }
            } else {
                small_run = 0;
            }
        }
    }
    if policy.is_some() {
        return Err(Error::MaxTermsExceeded { max_terms: limit });
    }
    let rho = ratio(limit).norm();
    let env = w.norm() * mx * my;
    Ok(finish(sum.value(), limit, env, rho))
}

fn finish(value: Complex64, terms_used: usize, env: f64, rho: f64) -> SeriesValue {
    let tail_estimate = if rho < 1.0 { env * rho / (1.0 - rho) } else { f64::INFINITY };
    SeriesValue { value, terms_used, tail_estimate, terminated: false, structural_zero: false }
}

/// `K_t^{λ,μ}(x, y) = (h_0^λ)^{-1} Σ_{n≤N} h_n^λ t^n p_n^λ(x) p_n^μ(y)`.
pub fn kernel_direct(x: &Angle, y: &Angle, kp: &KernelParams, n: usize) -> Result<SeriesValue> {
    if n < 1 {
        return Err(Error::InvalidParameter { name: "N", invariant: "N >= 1".into() });
    }
    kernel_direct_with(x, y, kp, &Truncation::Terms(n))
}

/// [`kernel_direct`] with an explicit truncation mode.
pub fn kernel_direct_with(x: &Angle, y: &Angle, kp: &KernelParams, trunc: &Truncation) -> Result<SeriesValue> {
    let q = kp.q();
    let lam = kp.lambda().values();
    let mu = kp.mu().values();
    let [a, b, cc, d] = kp.lambda().padded();
    let [al, be, ga, de] = kp.mu().padded();
    if a == 0.0 || al == 0.0 {
        return Err(Error::InvalidParameter { name: "a", invariant: "a != 0 and α != 0".into() });
    }
    let e2 = a * b * cc * d;
    let t = kp.t();
    let qq = q.get();
    let ratio = |n: usize| {
        let n = n as i64;
        let q1 = q.pow(n - 1);
        // (1 - abcd q^{2n-1})/(1 - abcd q^{2n-3}) · (1 - abcd q^{n-2}), stable at abcd = q
        let lead =
            if n == 1 { 1.0 - e2 * qq } else { (1.0 - e2 * q.pow(2 * n - 1)) / (1.0 - e2 * q.pow(2 * n - 3)) * (1.0 - e2 * q.pow(n - 2)) };
        let den = (1.0 - q1 * qq)
            * (1.0 - b * cc * q1)
            * (1.0 - b * d * q1)
            * (1.0 - cc * d * q1)
            * (1.0 - al * be * q1)
            * (1.0 - al * ga * q1)
            * (1.0 - al * de * q1);
        t * (lead * al / (a * den))
    };
    bilinear_sum(lam, mu, q, x.x(), y.x(), ratio, trunc)
}

fn pair(first: &ParamSet, second: &ParamSet, len: usize) -> Result<()> {
    if first.len() != len || second.len() != len || first.q() != second.q() {
        return Err(Error::InvalidParameter { name: "params", invariant: alloc::format!("two {len}-parameter sets with one q") });
    }
    if first.get(0) == 0.0 || second.get(0) == 0.0 {
        return Err(Error::InvalidParameter { name: "a", invariant: "a != 0 and α != 0".into() });
    }
    Ok(())
}

/// `Σ (ab, ac;q)_n/(q, bc;q)_n (t/a²)^n p_n(x; a,b,c) p_n(y; α,β,γ)`.
pub fn dual_qhahn_direct(x: &Angle, y: &Angle, lam: &ParamSet, mu: &ParamSet, t: Complex64, trunc: &Truncation) -> Result<SeriesValue> {
    pair(lam, mu, 3)?;
    let q = lam.q();
    let (a, b, cc) = (lam.get(0), lam.get(1), lam.get(2));
    let (al, be, ga) = (mu.get(0), mu.get(1), mu.get(2));
    let ratio = |n: usize| {
        let q1 = q.pow(n as i64 - 1);
        let den = (1.0 - q1 * q.get()) * (1.0 - b * cc * q1) * (1.0 - al * be * q1) * (1.0 - al * ga * q1);
        t * (al / (a * den))
    };
    bilinear_sum(lam.values(), mu.values(), q, x.x(), y.x(), ratio, trunc)
}

/// `Σ (ab;q)_n/(q;q)_n (t/a²)^n p_n(x; a,b) p_n(y; α,β)`.
pub fn asc_direct(x: &Angle, y: &Angle, lam: &ParamSet, mu: &ParamSet, t: Complex64, trunc: &Truncation) -> Result<SeriesValue> {
    pair(lam, mu, 2)?;
    let q = lam.q();
    let (a, b) = (lam.get(0), lam.get(1));
    let (al, be) = (mu.get(0), mu.get(1));
    let ratio = |n: usize| {
        let q1 = q.pow(n as i64 - 1);
        t * (al / (a * (1.0 - q1 * q.get()) * (1.0 - al * be * q1)))
    };
    let _ = b;
    bilinear_sum(lam.values(), mu.values(), q, x.x(), y.x(), ratio, trunc)
}

/// `Σ (q;q)_n/(ab;q)_n t^n p_n(x; a,b) p_n(y; α,β)` with the `(ab;q)_n a^{-n}/(q;q)_n` normalization.
pub fn asc_norm_direct(x: &Angle, y: &Angle, lam: &ParamSet, mu: &ParamSet, t: Complex64, trunc: &Truncation) -> Result<SeriesValue> {
    pair(lam, mu, 2)?;
    let q = lam.q();
    let ab = lam.get(0) * lam.get(1);
    let ratio = |n: usize| {
        let q1 = q.pow(n as i64 - 1);
        t / ((1.0 - q1 * q.get()) * (1.0 - ab * q1))
    };
    bilinear_sum(lam.values(), mu.values(), q, x.x(), y.x(), ratio, trunc)
}

/// `Σ (t/a²)^n/(q;q)_n p_n(x; a) p_n(y; α)` for the big q-Hermite family.
pub fn bigqh_direct(x: &Angle, y: &Angle, a: f64, alpha: f64, q: QBase, t: Complex64, trunc: &Truncation) -> Result<SeriesValue> {
    pair(&ParamSet::new(&[a], q)?, &ParamSet::new(&[alpha], q)?, 1)?;
    let ratio = |n: usize| t * (alpha / (a * (1.0 - q.pow(n as i64))));
    bilinear_sum(&[a], &[alpha], q, x.x(), y.x(), ratio, trunc)
}

/// `Σ t^n (q;q)_n p_n(x; a) p_n(y; α)` with the `a^{-n}/(q;q)_n` normalization; `a = 0` allowed.
pub fn bigqh_norm_direct(x: &Angle, y: &Angle, a: f64, alpha: f64, q: QBase, t: Complex64, trunc: &Truncation) -> Result<SeriesValue> {
    ParamSet::new(&[a, alpha], q)?;
    check_t(t)?;
    let ratio = |n: usize| t / (1.0 - q.pow(n as i64));
    bilinear_sum(&[a], &[alpha], q, x.x(), y.x(), ratio, trunc)
}

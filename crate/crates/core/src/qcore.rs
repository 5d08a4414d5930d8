//! q-shifted factorials, the `h(x; a)` product and the shared numeric policy types.

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math::{self, c};

/// The deformation parameter, `0 < q < 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QBase(f64);

impl QBase {
    pub fn new(q: f64) -> Result<Self> {
        if q.is_finite() && q > 0.0 && q < 1.0 {
            Ok(QBase(q))
        } else {
            Err(Error::InvalidBase(q))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }

    /// `q^n` for any integer `n`.
    #[inline]
    pub fn pow(self, n: i64) -> f64 {
        math::powi(self.0, n as i32)
    }

    #[inline]
    pub fn sqrt(self) -> f64 {
        math::sqrt(self.0)
    }
}

/// Stopping rule shared by every series and product in the crate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruncationPolicy {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_terms: usize,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy { rel_tol: 1e-13, abs_tol: 1e-300, max_terms: 1_000_000 }
    }
}

impl TruncationPolicy {
    pub fn new(rel_tol: f64, abs_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol.is_finite() && rel_tol >= f64::EPSILON) {
            return Err(Error::InvalidPolicy("rel_tol must be finite and >= machine epsilon"));
        }
        if !(abs_tol.is_finite() && abs_tol >= 0.0) {
            return Err(Error::InvalidPolicy("abs_tol must be finite and >= 0"));
        }
        if max_terms < 1 {
            return Err(Error::InvalidPolicy("max_terms must be >= 1"));
        }
        Ok(TruncationPolicy { rel_tol, abs_tol, max_terms })
    }

    #[inline]
    pub(crate) fn small(&self, term: f64, sum: f64) -> bool {
        term <= self.rel_tol * sum + self.abs_tol
    }
}

/// A series or product value with its truncation diagnostics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    pub terms_used: usize,
    pub tail_estimate: f64,
    /// A `q^{-n}` numerator cut the sum off.
    pub terminated: bool,
    /// A factor vanished exactly (lattice zero), as opposed to underflow.
    pub structural_zero: bool,
}

impl SeriesValue {
    pub(crate) fn exact(value: Complex64, terms_used: usize) -> Self {
        SeriesValue { value, terms_used, tail_estimate: 0.0, terminated: false, structural_zero: false }
    }
}

/// Length of a q-shifted factorial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(usize),
    Infinite,
}

/// `(a; q)_n`.
pub fn qpoch_n(a: Complex64, q: QBase, n: usize) -> Complex64 {
    let mut p = c(1.0);
    let mut aq = a;
    for _ in 0..n {
        p *= c(1.0) - aq;
        aq *= q.get();
    }
    p
}

/// Number of factors needed so that `|a| q^N < rel_tol (1 - q)`.
fn inf_factor_count(a_abs: f64, q: QBase, policy: &TruncationPolicy) -> Result<usize> {
    if a_abs == 0.0 {
        return Ok(0);
    }
    let target = policy.rel_tol * (1.0 - q.get());
    if a_abs < target {
        return Ok(0);
    }
    let n = math::ln(target / a_abs) / math::ln(q.get());
    let mut n = (n.max(0.0) as usize).saturating_add(1);
    // guard against rounding in the logarithms
    while n > 0 && a_abs * q.pow(n as i64 - 1) < target {
        n -= 1;
    }
    if n > policy.max_terms {
        return Err(Error::MaxTermsExceeded { max_terms: policy.max_terms });
    }
    Ok(n)
}

#[inline]
fn is_lattice_zero(f: Complex64) -> bool {
    f.norm() <= 4.0 * f64::EPSILON
}

/// `(a; q)_∞`, truncated once the geometric tail is below `rel_tol`.
pub fn qpoch_inf(a: Complex64, q: QBase, policy: &TruncationPolicy) -> Result<SeriesValue> {
    if !math::is_finite(a) {
        return Err(Error::NonFinite("qpoch_inf argument"));
    }
    let n = inf_factor_count(a.norm(), q, policy)?;
    let mut p = c(1.0);
    let mut aq = a;
    for _ in 0..n {
        let f = c(1.0) - aq;
        if is_lattice_zero(f) {
            return Ok(SeriesValue { value: c(0.0), terms_used: n, tail_estimate: 0.0, terminated: false, structural_zero: true });
        }
        p *= f;
        aq *= q.get();
    }
    let tail = a.norm() * q.pow(n as i64) / (1.0 - q.get());
    Ok(SeriesValue { value: p, terms_used: n, tail_estimate: tail, terminated: false, structural_zero: false })
}

/// `(a_1, ..., a_m; q)_n` with `n` finite or infinite.
pub fn qpoch_multi(params: &[Complex64], q: QBase, order: Order, policy: &TruncationPolicy) -> Result<Complex64> {
    if params.is_empty() {
        return Err(Error::InvalidParameter { name: "params", invariant: "list must be nonempty".into() });
    }
    let mut p = c(1.0);
    for &a in params {
        p *= match order {
            Order::Finite(n) => qpoch_n(a, q, n),
            Order::Infinite => qpoch_inf(a, q, policy)?.value,
        };
    }
    Ok(p)
}

/// Ratio of infinite products `(num; q)_∞ / (den; q)_∞`.
pub(crate) fn inf_ratio(num: &[Complex64], den: &[Complex64], q: QBase, policy: &TruncationPolicy) -> Result<Complex64> {
    let mut p = c(1.0);
    for &a in num {
        p *= qpoch_inf(a, q, policy)?.value;
    }
    for &b in den {
        let v = qpoch_inf(b, q, policy)?;
        if v.structural_zero {
            return Err(Error::NonFinite("infinite product in a denominator vanishes"));
        }
        p /= v.value;
    }
    if !math::is_finite(p) {
        return Err(Error::NonFinite("infinite product ratio"));
    }
    Ok(p)
}

/// `h(x; a) = ∏ (1 - 2 a x q^n + a² q^{2n})`.
pub fn h_factor(x: f64, a: Complex64, q: QBase, policy: &TruncationPolicy) -> Result<SeriesValue> {
    if !(x.abs() <= 1.0) {
        return Err(Error::InvalidParameter { name: "x", invariant: "|x| <= 1".into() });
    }
    if !math::is_finite(a) {
        return Err(Error::NonFinite("h_factor argument"));
    }
    let n = inf_factor_count(a.norm(), q, policy)?;
    let mut p = c(1.0);
    let mut aq = a;
    let mut zero = false;
    for _ in 0..n {
        let f = c(1.0) - aq * (2.0 * x) + aq * aq;
        if is_lattice_zero(f) {
            zero = true;
            p = c(0.0);
            break;
        }
        p *= f;
        aq *= q.get();
    }
    let tail = if zero { 0.0 } else { 2.0 * a.norm() * q.pow(n as i64) / (1.0 - q.get()) };
    Ok(SeriesValue { value: p, terms_used: n, tail_estimate: tail, terminated: false, structural_zero: zero })
}

/// `h(x; a_1, ..., a_r)`; the empty product is 1.
pub fn h_multi(x: f64, params: &[Complex64], q: QBase, policy: &TruncationPolicy) -> Result<Complex64> {
    let mut p = c(1.0);
    for &a in params {
        p *= h_factor(x, a, q, policy)?.value;
    }
    Ok(p)
}

/// Infinite products for a list, one [`SeriesValue`] each.
pub fn qpoch_inf_each(params: &[Complex64], q: QBase, policy: &TruncationPolicy) -> Result<Vec<SeriesValue>> {
    params.iter().map(|&a| qpoch_inf(a, q, policy)).collect()
}

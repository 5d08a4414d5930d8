//! Basic hypergeometric series, very-well-poised series and the Jackson q-integral.

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math::{self, c, Neumaier};
use crate::polys::ParamSet;
use crate::qcore::{inf_ratio, QBase, SeriesValue, TruncationPolicy};
use crate::report::{rel_err, CheckReport, Witness};

const TERMINATION_TOL: f64 = 1e-12;
const POLE_TOL: f64 = 1e-10;

/// `r φ s [numerator; denominator; q, z]`.
///
/// The usual case is `r = s + 1`. Other shapes carry the extra factor
/// `[(-1)^k q^{k(k-1)/2}]^{1+s-r}` per term.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiSpec {
    pub numerator: Vec<Complex64>,
    pub denominator: Vec<Complex64>,
    pub z: Complex64,
    pub q: QBase,
}

impl PhiSpec {
    pub fn new(numerator: Vec<Complex64>, denominator: Vec<Complex64>, z: Complex64, q: QBase) -> Self {
        PhiSpec { numerator, denominator, z, q }
    }

    /// Index `n` of the first numerator equal to `q^{-n}`, if any.
    pub fn termination_index(&self) -> Option<usize> {
        self.numerator.iter().filter_map(|&a| lattice_index(a, self.q, TERMINATION_TOL)).min()
    }
}

/// `Some(m)` when `a = q^{-m}` for some `m >= 0` within relative tolerance `tol`.
pub(crate) fn lattice_index(a: Complex64, q: QBase, tol: f64) -> Option<usize> {
    let r = a.norm();
    if r < 1.0 - tol || a.im.abs() > tol * r || a.re <= 0.0 {
        return None;
    }
    let m = math::round(math::ln(a.re) / -math::ln(q.get()));
    if !(0.0..=1.0e4).contains(&m) {
        return None;
    }
    let target = q.pow(-(m as i64));
    if (a - c(target)).norm() <= tol * target {
        Some(m as usize)
    } else {
        None
    }
}

/// Sum a basic hypergeometric series by multiplicative term updates.
pub fn eval_phi(spec: &PhiSpec, policy: &TruncationPolicy) -> Result<SeriesValue> {
    let q = spec.q;
    let all_finite = spec.numerator.iter().chain(&spec.denominator).all(|&p| math::is_finite(p));
    if !all_finite || !math::is_finite(spec.z) {
        return Err(Error::NonFinite("series parameters"));
    }
    if spec.z == c(0.0) {
        return Ok(SeriesValue::exact(c(1.0), 1));
    }
    let stop = spec.termination_index();
    for (index, &b) in spec.denominator.iter().enumerate() {
        if let Some(m) = lattice_index(b, q, POLE_TOL) {
            if stop.is_none_or(|n| m < n) {
                return Err(Error::PoleInDenominator { index, m });
            }
        }
    }
    let extra = spec.denominator.len() as i64 + 1 - spec.numerator.len() as i64;
    if stop.is_none() {
        if extra < 0 {
            return Err(Error::Divergent { z_abs: spec.z.norm() });
        }
        if extra == 0 && spec.z.norm() >= 1.0 {
            return Err(Error::Divergent { z_abs: spec.z.norm() });
        }
    }

    let mut sum = Neumaier::new();
    let mut term = c(1.0);
    let mut qk = 1.0;
    let mut small_run = 0usize;
    let mut k = 0usize;
    loop {
        if k >= policy.max_terms {
            return Err(Error::MaxTermsExceeded { max_terms: policy.max_terms });
        }
        sum.add(term);
        if stop == Some(k) {
            return Ok(SeriesValue { value: sum.value(), terms_used: k + 1, tail_estimate: 0.0, terminated: true, structural_zero: false });
        }
        let mut ratio = spec.z / (1.0 - qk * q.get());
        for &a in &spec.numerator {
            ratio *= c(1.0) - a * qk;
        }
        for &b in &spec.denominator {
            ratio /= c(1.0) - b * qk;
        }
        for _ in 0..extra.max(0) {
            ratio *= -qk;
        }
        let next = term * ratio;
        if !math::is_finite(next) {
            return Err(Error::NonFinite("series term"));
        }
        let s = sum.value().norm();
        if policy.small(term.norm(), s) {
            small_run += 1;
        } else {
            small_run = 0;
        }
        if next == c(0.0) {
            return Ok(SeriesValue::exact(sum.value(), k + 1));
        }
        if stop.is_none() && small_run >= 2 {
            let rho = ratio.norm();
            if rho < 1.0 {
                let tail = next.norm() / (1.0 - rho);
                if tail <= policy.rel_tol * s + policy.abs_tol {
                    return Ok(SeriesValue {
                        value: sum.value(),
                        terms_used: k + 1,
                        tail_estimate: tail,
                        terminated: false,
                        structural_zero: false,
                    });
                }
            }
        }
        term = next;
        qk *= q.get();
        k += 1;
    }
}

/// Parameter lists of the very-well-poised `r+1 W r (a; b_1, ..., ; q, z)`.
pub fn w_spec(a: Complex64, bs: &[Complex64], z: Complex64, q: QBase) -> Result<PhiSpec> {
    if bs.iter().any(|&b| b == c(0.0)) {
        return Err(Error::InvalidParameter { name: "b", invariant: "W-series parameters must be nonzero".into() });
    }
    let sa = math::csqrt(a);
    let qq = q.get();
    let mut num = Vec::with_capacity(bs.len() + 3);
    num.extend_from_slice(&[a, sa * qq, -sa * qq]);
    num.extend_from_slice(bs);
    let mut den = Vec::with_capacity(bs.len() + 2);
    den.extend_from_slice(&[sa, -sa]);
    den.extend(bs.iter().map(|&b| a * qq / b));
    Ok(PhiSpec::new(num, den, z, q))
}

/// Very-well-poised series, delegated to [`eval_phi`].
pub fn eval_w(a: Complex64, bs: &[Complex64], z: Complex64, q: QBase, policy: &TruncationPolicy) -> Result<SeriesValue> {
    eval_phi(&w_spec(a, bs, z, q)?, policy)
}

fn lattice_sum<F>(f: &F, base: Complex64, q: QBase, policy: &TruncationPolicy) -> Result<(Complex64, usize, f64)>
where
    F: Fn(Complex64) -> Result<Complex64> + ?Sized,
{
    if base == c(0.0) {
        return Ok((c(0.0), 0, 0.0));
    }
    let mut sum = Neumaier::new();
    let mut qm = 1.0;
    let mut small_run = 0;
    for m in 0..policy.max_terms {
        let term = f(base * qm)? * qm;
        if !math::is_finite(term) {
            return Err(Error::NonFinite("q-integral integrand"));
        }
        sum.add(term);
        let s = sum.value().norm();
        if policy.small(term.norm(), s) {
            small_run += 1;
            if small_run >= 2 {
                let tail = term.norm() * q.get() / (1.0 - q.get());
                return Ok((sum.value(), m + 1, tail));
            }
        } else {
            small_run = 0;
        }
        qm *= q.get();
    }
    Err(Error::MaxTermsExceeded { max_terms: policy.max_terms })
}

/// Jackson integral `∫_a^b f(u) d_q u` over the lattices `{a q^m}` and `{b q^m}`.
pub fn q_integral<F>(f: &F, a: Complex64, b: Complex64, q: QBase, policy: &TruncationPolicy) -> Result<SeriesValue>
where
    F: Fn(Complex64) -> Result<Complex64> + ?Sized,
{
    let (sb, nb, tb) = lattice_sum(f, b, q, policy)?;
    let (sa, na, ta) = lattice_sum(f, a, q, policy)?;
    let w = 1.0 - q.get();
    let value = b * w * sb - a * w * sa;
    Ok(SeriesValue {
        value,
        terms_used: nb + na,
        tail_estimate: w * (b.norm() * tb + a.norm() * ta),
        terminated: false,
        structural_zero: false,
    })
}

/// Sum `Σ_k term(k)` for an outer index of a nested series.
///
/// Stops after two consecutive terms below `rel_tol·|partial sum| + abs_tol`;
/// the tail estimate extrapolates the last term ratio geometrically.
pub fn sum_terms<F>(policy: &TruncationPolicy, term: F) -> Result<SeriesValue>
where
    F: FnMut(usize) -> Result<Complex64>,
{
    sum_terms_after(policy, 0, term)
}

/// [`sum_terms`] that never stops before index `min_index`.
pub(crate) fn sum_terms_after<F>(policy: &TruncationPolicy, min_index: usize, mut term: F) -> Result<SeriesValue>
where
    F: FnMut(usize) -> Result<Complex64>,
{
    let mut sum = Neumaier::new();
    let mut small_run = 0;
    let mut prev = 0.0f64;
    for k in 0..policy.max_terms {
        let t = term(k)?;
        if !math::is_finite(t) {
            return Err(Error::NonFinite("outer series term"));
        }
        sum.add(t);
        let s = sum.value().norm();
        if k >= min_index && policy.small(t.norm(), s) {
            small_run += 1;
            if small_run >= 2 {
                let rho = if prev > 0.0 { t.norm() / prev } else { 0.0 };
                let tail = if rho < 1.0 { t.norm() * rho / (1.0 - rho) } else { t.norm() };
                return Ok(SeriesValue {
                    value: sum.value(),
                    terms_used: k + 1,
                    tail_estimate: tail,
                    terminated: false,
                    structural_zero: false,
                });
            }
        } else {
            small_run = 0;
        }
        prev = t.norm();
    }
    Err(Error::MaxTermsExceeded { max_terms: policy.max_terms })
}

fn phi(num: &[Complex64], den: &[Complex64], z: Complex64, q: QBase, policy: &TruncationPolicy) -> Result<SeriesValue> {
    eval_phi(&PhiSpec::new(num.to_vec(), den.to_vec(), z, q), policy)
}

/// Both sides of the three-term split of a `6W5` series.
pub fn six_w_five_split(
    u: Complex64,
    v: Complex64,
    t: Complex64,
    lambda: &ParamSet,
    policy: &TruncationPolicy,
) -> Result<(Complex64, Complex64)> {
    let q = lambda.q();
    let [a, b, cc, d] = lambda.quartet()?;
    let (a, b, cc, d) = (c(a), c(b), c(cc), c(d));
    let qq = q.get();
    let sq = q.sqrt();
    let e2 = a * b * cc * d;
    let eps = math::csqrt(e2);
    let ad = a * d;
    let bc = b * cc;
    let uv = u * v;

    let lhs = eval_w(e2 / qq, &[ad, qq / u, qq / v], bc * uv * t / (qq * qq), q, policy)?.value;
    if t == c(0.0) {
        // t -> 0: the second and third parts vanish and the first keeps its k = 0 term
        let rhs = phi(&[c(1.0), -eps, ad, e2 * uv / (qq * qq)], &[-ad * qq / eps, u * e2 / qq, v * e2 / qq], c(qq), q, policy)?.value;
        return Ok((lhs, rhs));
    }

    let one = c(1.0);
    let pre1 = (one - t * t) * inf_ratio(&[-t * eps * qq], &[-t / eps], q, policy)?;
    let s1 = ratio_sum(policy, q, &[eps, eps * sq, -eps * sq, -eps / ad], &[c(qq), bc, -qq * t * eps, -qq * eps / t], |k| {
        let qk = q.pow(-(k as i64));
        phi(&[c(qk), -eps, ad, e2 * uv / (qq * qq)], &[-ad * qq * qk / eps, u * e2 / qq, v * e2 / qq], c(qq), q, policy).map(|s| s.value)
    })?;

    let pre2 = inf_ratio(&[e2, -eps / ad, t, -t * eps / ad], &[-eps, bc, t / ad, -eps / t], q, policy)?;
    let s2 = ratio_sum(policy, q, &[-t, t * sq, -t * sq, t / ad], &[c(qq), qq * t * t, -t * eps / ad, -qq * t / eps], |k| {
        let qk = q.pow(-(k as i64));
        phi(&[-eps * qk / t, -eps, ad, e2 * uv / (qq * qq)], &[ad * qq * qk / t, u * e2 / qq, v * e2 / qq], c(qq), q, policy)
            .map(|s| s.value)
    })?;

    let z3 = bc * uv * t / (qq * qq);
    let pre3 = inf_ratio(
        &[e2, ad, bc * t * u / qq, bc * t * v / qq, uv * e2 / (qq * qq)],
        &[bc, ad / t, u * e2 / qq, v * e2 / qq, z3],
        q,
        policy,
    )?;
    let s3 = ratio_sum(policy, q, &[t, -eps / ad, -eps * t / ad, z3], &[c(qq), qq * t / ad, bc * t * u / qq, bc * t * v / qq], |k| {
        let qk = q.pow(-(k as i64));
        phi(&[c(qk), -t, t * sq, -t * sq], &[qq * t * t, -eps * t / ad, -ad * qq * qk / eps], c(qq), q, policy).map(|s| s.value)
    })?;

    Ok((lhs, pre1 * s1 + pre2 * s2 + pre3 * s3))
}

/// `Σ_k (num)_k/(den)_k q^k · inner(k)` with the coefficient updated multiplicatively.
/// `den` must include `q` itself when the `(q;q)_k` factor is wanted.
fn ratio_sum<F>(policy: &TruncationPolicy, q: QBase, num: &[Complex64], den: &[Complex64], mut inner: F) -> Result<Complex64>
where
    F: FnMut(usize) -> Result<Complex64>,
{
    let mut coef = c(1.0);
    let mut qk = 1.0;
    let s = sum_terms(policy, |k| {
        if k > 0 {
            let mut r = c(q.get());
            for &a in num {
                r *= c(1.0) - a * qk;
            }
            for &b in den {
                r /= c(1.0) - b * qk;
            }
            coef *= r;
            qk *= q.get();
        }
        Ok(coef * inner(k)?)
    })?;
    Ok(s.value)
}

/// Verify the three-term split of a `6W5` series at one point.
pub fn check_6w5_split(
    u: Complex64,
    v: Complex64,
    t: Complex64,
    lambda: &ParamSet,
    policy: &TruncationPolicy,
    tol: f64,
) -> Result<CheckReport> {
    let (lhs, rhs) = six_w_five_split(u, v, t, lambda, policy)?;
    let witness = Witness::new()
        .with("q", lambda.q().get())
        .with_slice("lambda", lambda.values())
        .with_complex("u", u)
        .with_complex("v", v)
        .with_complex("t", t);
    Ok(CheckReport::new("check_6w5_split", rel_err(rhs, lhs), tol, witness))
}

/// Both sides of the `2φ1 → 2φ2` transformation.
pub fn two_phi_one_transform(
    u: Complex64,
    v: Complex64,
    t: Complex64,
    b: Complex64,
    cc: Complex64,
    q: QBase,
    policy: &TruncationPolicy,
) -> Result<(Complex64, Complex64)> {
    let qq = q.get();
    let bc = b * cc;
    let z = bc * u * v * t / (qq * qq);
    let lhs = phi(&[qq / u, qq / v], &[bc], z, q, policy)?.value;
    let pre = inf_ratio(&[bc * t * u / qq, bc * t * v / qq], &[bc, z], q, policy)?;
    let rhs = pre * phi(&[t, z], &[bc * t * u / qq, bc * t * v / qq], bc, q, policy)?.value;
    Ok((lhs, rhs))
}

/// Verify the `2φ1 → 2φ2` transformation at one point.
pub fn check_2phi1_2phi2(
    u: Complex64,
    v: Complex64,
    t: Complex64,
    b: Complex64,
    cc: Complex64,
    q: QBase,
    policy: &TruncationPolicy,
    tol: f64,
) -> Result<CheckReport> {
    let (lhs, rhs) = two_phi_one_transform(u, v, t, b, cc, q, policy)?;
    let witness = Witness::new()
        .with("q", q.get())
        .with_complex("u", u)
        .with_complex("v", v)
        .with_complex("t", t)
        .with_complex("b", b)
        .with_complex("c", cc);
    Ok(CheckReport::new("check_2phi1_2phi2", rel_err(rhs, lhs), tol, witness))
}

//! Askey–Wilson polynomials, their degenerate relatives, weights and norms.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math::{self, c};
use crate::qcore::{h_factor, h_multi, inf_ratio, qpoch_inf, qpoch_n, QBase, TruncationPolicy};
use crate::qseries::{eval_phi, q_integral, PhiSpec};

const MATCH_TOL: f64 = 1e-14;

/// A point on `[-1, 1]` carried as `x = cos θ` together with `e^{iθ}`.
///
/// Both exponentials `e^{±iθ}` come from the one stored value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Angle {
    x: f64,
    sin: f64,
    theta: f64,
}

impl Angle {
    pub fn from_x(x: f64) -> Result<Self> {
        if !(x.abs() <= 1.0) {
            return Err(Error::InvalidParameter { name: "x", invariant: "|x| <= 1".into() });
        }
        Ok(Angle { x, sin: math::sqrt((1.0 - x) * (1.0 + x)), theta: math::acos(x) })
    }

    pub fn from_theta(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::NonFinite("angle"));
        }
        Ok(Angle { x: math::cos(theta), sin: math::sin(theta), theta })
    }

    #[inline]
    pub fn x(&self) -> f64 {
        self.x
    }
    #[inline]
    pub fn sin(&self) -> f64 {
        self.sin
    }
    #[inline]
    pub fn theta(&self) -> f64 {
        self.theta
    }
    /// `e^{iθ}`.
    #[inline]
    pub fn e(&self) -> Complex64 {
        Complex64::new(self.x, self.sin)
    }
    /// The reflected angle `-θ`.
    pub fn reflect(&self) -> Self {
        Angle { x: self.x, sin: -self.sin, theta: -self.theta }
    }
}

/// Real parameters `(a, b, c, d)` or a shorter tuple for degenerate families.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamSet {
    values: Vec<f64>,
    q: QBase,
}

impl ParamSet {
    pub fn new(values: &[f64], q: QBase) -> Result<Self> {
        if values.len() > 4 {
            return Err(Error::InvalidParameter { name: "params", invariant: "at most four parameters".into() });
        }
        for &v in values {
            if !v.is_finite() || v.abs() >= 1.0 {
                return Err(Error::InvalidParameter { name: "params", invariant: "|parameter| < 1".into() });
            }
        }
        let set = ParamSet { values: values.to_vec(), q };
        for i in 0..values.len() {
            for j in i + 1..values.len() {
                if crate::qseries::lattice_index(c(values[i] * values[j]), q, 1e-10).is_some() {
                    return Err(Error::InvalidParameter { name: "params", invariant: "pairwise products avoid q^-m".into() });
                }
            }
        }
        Ok(set)
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }
    #[inline]
    pub fn q(&self) -> QBase {
        self.q
    }
    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Parameter `i`, or 0 past the end of a degenerate tuple.
    #[inline]
    pub fn get(&self, i: usize) -> f64 {
        self.values.get(i).copied().unwrap_or(0.0)
    }

    pub fn quartet(&self) -> Result<[f64; 4]> {
        self.exact::<4>()
    }

    pub(crate) fn exact<const N: usize>(&self) -> Result<[f64; N]> {
        self.values
            .as_slice()
            .try_into()
            .map_err(|_| Error::InvalidParameter { name: "params", invariant: alloc::format!("exactly {N} parameters") })
    }

    /// Padded to four entries with zeros.
    pub fn padded(&self) -> [f64; 4] {
        [self.get(0), self.get(1), self.get(2), self.get(3)]
    }

    /// `ε = (abcd)^{1/2}`, principal branch (purely imaginary when `abcd < 0`).
    pub fn eps(&self) -> Complex64 {
        let [a, b, cc, d] = self.padded();
        math::csqrt(c(a * b * cc * d))
    }
}

fn same(lhs: f64, rhs: f64) -> bool {
    (lhs - rhs).abs() <= MATCH_TOL * lhs.abs().max(rhs.abs()) || (lhs == 0.0 && rhs == 0.0)
}

/// The second quartet `μ = (α, β, γ, δ)`, validated against `λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct MuParams {
    set: ParamSet,
}

impl MuParams {
    /// Requires `αγ = ac` and `βδ = bd`.
    pub fn new(values: &[f64], lambda: &ParamSet) -> Result<Self> {
        let set = ParamSet::new(values, lambda.q())?;
        let [a, b, cc, d] = lambda.quartet()?;
        let [al, be, ga, de] = set.quartet()?;
        if !same(al * ga, a * cc) {
            return Err(Error::constraint("αγ = ac"));
        }
        if !same(be * de, b * d) {
            return Err(Error::constraint("βδ = bd"));
        }
        Ok(MuParams { set })
    }

    /// Additionally requires `βγ = bc` and `|β| < |b|`, as needed at `t = 1`.
    pub fn for_unity(values: &[f64], lambda: &ParamSet) -> Result<Self> {
        let mu = Self::new(values, lambda)?;
        mu.check_unity(lambda)?;
        Ok(mu)
    }

    pub(crate) fn check_unity(&self, lambda: &ParamSet) -> Result<()> {
        let [_, b, cc, _] = lambda.quartet()?;
        let [_, be, ga, _] = self.set.quartet()?;
        if !same(be * ga, b * cc) {
            return Err(Error::constraint("βγ = bc"));
        }
        if !(be.abs() < b.abs()) {
            return Err(Error::constraint("|β| < |b|"));
        }
        Ok(())
    }

    /// `α = ac/γ`, `β = bd/δ`.
    pub fn from_gamma_delta(lambda: &ParamSet, gamma: f64, delta: f64) -> Result<Self> {
        let [a, b, cc, d] = lambda.quartet()?;
        Self::new(&[a * cc / gamma, b * d / delta, gamma, delta], lambda)
    }

    /// `α = ac/γ`, `β = bc/γ`, `δ = bd/β`.
    pub fn unity_from_gamma(lambda: &ParamSet, gamma: f64) -> Result<Self> {
        let [a, b, cc, d] = lambda.quartet()?;
        let be = b * cc / gamma;
        Self::for_unity(&[a * cc / gamma, be, gamma, b * d / be], lambda)
    }

    #[inline]
    pub fn params(&self) -> &ParamSet {
        &self.set
    }
}

fn phi(num: Vec<Complex64>, den: Vec<Complex64>, z: Complex64, q: QBase) -> Result<Complex64> {
    Ok(eval_phi(&PhiSpec::new(num, den, z, q), &TruncationPolicy::default())?.value)
}

fn q_minus(q: QBase, n: usize) -> Complex64 {
    c(q.pow(-(n as i64)))
}

/// `p_n(x; a, b, c, d)` from its terminating `4φ3`.
pub fn aw_poly(n: usize, x: f64, lambda: &ParamSet) -> Result<Complex64> {
    aw_poly_at(n, &Angle::from_x(x)?, lambda)
}

pub fn aw_poly_at(n: usize, at: &Angle, lambda: &ParamSet) -> Result<Complex64> {
    let q = lambda.q();
    let [a, b, cc, d] = lambda.quartet()?;
    let e = at.e();
    let e2 = a * b * cc * d;
    phi(vec![q_minus(q, n), c(e2 * q.pow(n as i64 - 1)), e * a, e.conj() * a], vec![c(a * b), c(a * cc), c(a * d)], c(q.get()), q)
}

fn sqrt_q_quartet(q: QBase) -> [Complex64; 4] {
    let s = q.sqrt();
    [c(1.0), c(-1.0), c(s), c(-s)]
}

/// `ρ(x; λ)`; for fewer than four parameters the missing ones are 0.
pub fn aw_weight(x: f64, lambda: &ParamSet) -> Result<f64> {
    if !(x.abs() < 1.0) {
        return Err(Error::EndpointSingularity(x));
    }
    Ok(aw_weight_jacobian(x, lambda)? / math::sqrt((1.0 - x) * (1.0 + x)))
}

/// `ρ(cos θ) sin θ`, the smooth integrand density in θ.
pub fn aw_weight_jacobian(x: f64, lambda: &ParamSet) -> Result<f64> {
    let pol = TruncationPolicy::default();
    let q = lambda.q();
    let num = h_multi(x, &sqrt_q_quartet(q), q, &pol)?;
    let den_params: Vec<Complex64> = lambda.values().iter().map(|&p| c(p)).collect();
    let den = h_multi(x, &den_params, q, &pol)?;
    Ok((num / den).re)
}

/// `h_n / h_0`, written so that `abcd = q` needs no special case.
pub(crate) fn aw_norm_ratio(n: usize, lambda: &ParamSet) -> Result<f64> {
    let q = lambda.q();
    let [a, b, cc, d] = lambda.padded();
    if n == 0 {
        return Ok(1.0);
    }
    if a == 0.0 {
        return Err(Error::InvalidParameter { name: "a", invariant: "a != 0".into() });
    }
    let e2 = a * b * cc * d;
    let qq = q.get();
    let mut r = (1.0 - e2 * q.pow(2 * n as i64 - 1)) * qpoch_n(c(e2), q, n - 1).re;
    let mut qj = 1.0;
    for _ in 0..n {
        r *= (1.0 - a * b * qj) * (1.0 - a * cc * qj) * (1.0 - a * d * qj);
        r /= (1.0 - qq * qj) * (1.0 - cc * d * qj) * (1.0 - b * d * qj) * (1.0 - b * cc * qj);
        r /= a * a;
        qj *= qq;
    }
    Ok(r)
}

/// `h_0` of the orthogonality relation.
pub fn aw_norm0(lambda: &ParamSet) -> Result<f64> {
    let q = lambda.q();
    let [a, b, cc, d] = lambda.padded();
    let pol = TruncationPolicy::default();
    let num = [c(q.get()), c(a * b), c(a * cc), c(a * d), c(b * cc), c(b * d), c(cc * d)];
    let r = inf_ratio(&num, &[c(a * b * cc * d)], q, &pol)?;
    Ok(r.re / (2.0 * math::PI))
}

/// `h_n`, the reciprocal squared norm of `p_n`.
pub fn aw_norm(n: usize, lambda: &ParamSet) -> Result<f64> {
    let [a, b, cc, d] = lambda.padded();
    if lattice_one(a * b * cc * d * lambda.q().pow(2 * n as i64 - 1)) {
        return Err(Error::PoleInDenominator { index: 0, m: 0 });
    }
    Ok(aw_norm0(lambda)? * aw_norm_ratio(n, lambda)?)
}

fn lattice_one(v: f64) -> bool {
    (v - 1.0).abs() <= 1e-14
}

/// `p_n` through its q-integral representation; requires `d != 0` and `|x| < 1`.
pub fn aw_poly_qint(n: usize, x: f64, lambda: &ParamSet) -> Result<Complex64> {
    let q = lambda.q();
    let [a, b, cc, d] = lambda.quartet()?;
    if d == 0.0 {
        return Err(Error::InvalidParameter { name: "d", invariant: "d != 0".into() });
    }
    let at = Angle::from_x(x)?;
    if !(x.abs() < 1.0) {
        return Err(Error::EndpointSingularity(x));
    }
    let pol = TruncationPolicy::default();
    let qq = q.get();
    let e = at.e();
    let e2 = a * b * cc * d;
    let big_a = Complex64::new(0.0, -qq * (1.0 - qq) / (2.0 * d))
        * inf_ratio(&[c(qq), c(a * b), c(a * cc), c(b * cc)], &[], q, &pol)?
        * h_factor(x, c(d), q, &pol)?.value
        * aw_weight(x, lambda)?;
    let f = |u: Complex64| -> Result<Complex64> {
        let p = inf_ratio(&[u * e * d, u * e.conj() * d, u * e2 / qq], &[u * d * a / qq, u * d * b / qq, u * d * cc / qq], q, &pol)?;
        Ok(p * qpoch_n(c(qq) / u, q, n) / qpoch_n(u * e2 / qq, q, n) * (u * a * d / qq).powu(n as u32))
    };
    let integral = q_integral(&f, e * qq / d, e.conj() * qq / d, q, &pol)?.value;
    Ok(integral * qpoch_n(c(b * cc), q, n) / qpoch_n(c(a * d), q, n) / big_a)
}

/// Continuous dual q-Hahn `p_n(x; a, b, c)`.
pub fn dual_qhahn(n: usize, x: f64, params: &ParamSet) -> Result<Complex64> {
    let q = params.q();
    let [a, b, cc] = params.exact::<3>()?;
    let e = Angle::from_x(x)?.e();
    phi(vec![q_minus(q, n), e * a, e.conj() * a], vec![c(a * b), c(a * cc)], c(q.get()), q)
}

/// Al-Salam–Chihara `p_n(x; a, b)` as a `3φ2`.
pub fn alsalam_chihara(n: usize, x: f64, params: &ParamSet) -> Result<Complex64> {
    let q = params.q();
    let [a, b] = params.exact::<2>()?;
    let e = Angle::from_x(x)?.e();
    phi(vec![q_minus(q, n), e * a, e.conj() * a], vec![c(a * b), c(0.0)], c(q.get()), q)
}

/// Al-Salam–Chihara `p_n(x; a, b)` through its `2φ1` form; requires `b != 0`.
pub fn alsalam_chihara_2phi1(n: usize, x: f64, params: &ParamSet) -> Result<Complex64> {
    let q = params.q();
    let [a, b] = params.exact::<2>()?;
    if b == 0.0 {
        return Err(Error::InvalidParameter { name: "b", invariant: "b != 0".into() });
    }
    let e = Angle::from_x(x)?.e();
    let qq = q.get();
    let pre = qpoch_n(e.conj() * b, q, n) / qpoch_n(c(a * b), q, n) * (e * a).powu(n as u32);
    let s = phi(vec![q_minus(q, n), e * a], vec![e * q.pow(1 - n as i64) / b], e.conj() * qq / b, q)?;
    Ok(pre * s)
}

/// `(ab;q)_n a^{-n} / (q;q)_n · p_n(x; a, b)`; requires `a != 0`.
pub fn alsalam_chihara_norm(n: usize, x: f64, params: &ParamSet) -> Result<Complex64> {
    let q = params.q();
    let [a, b] = params.exact::<2>()?;
    if a == 0.0 {
        return Err(Error::InvalidParameter { name: "a", invariant: "a != 0".into() });
    }
    let scale = qpoch_n(c(a * b), q, n) / qpoch_n(c(q.get()), q, n) / math::powi(a, n as i32);
    Ok(alsalam_chihara(n, x, params)? * scale)
}

/// Continuous big q-Hermite `p_n(x; a)` as a `3φ2`.
pub fn big_qhermite(n: usize, x: f64, a: f64, q: QBase) -> Result<Complex64> {
    ParamSet::new(&[a], q)?;
    let e = Angle::from_x(x)?.e();
    phi(vec![q_minus(q, n), e * a, e.conj() * a], vec![c(0.0), c(0.0)], c(q.get()), q)
}

/// Continuous big q-Hermite through the `(a e^{iθ})^n`-prefixed finite sum.
pub fn big_qhermite_explicit(n: usize, x: f64, a: f64, q: QBase) -> Result<Complex64> {
    ParamSet::new(&[a], q)?;
    let e = Angle::from_x(x)?.e();
    let ae = e * a;
    let z = -(q.pow(n as i64)) * e.conj() * e.conj();
    Ok(ae.powu(n as u32) * finite_hermite_sum(n, ae, z, q))
}

/// `Σ_{k≤n} (q^{-n}, w; q)_k / (q;q)_k z^k q^{-k(k-1)/2}`.
fn finite_hermite_sum(n: usize, w: Complex64, z: Complex64, q: QBase) -> Complex64 {
    let mut sum = c(0.0);
    let mut term = c(1.0);
    let qq = q.get();
    let qn = q.pow(-(n as i64));
    let mut qk = 1.0;
    for k in 0..=n {
        sum += term;
        if k == n {
            break;
        }
        term *= (c(1.0) - c(qn * qk)) * (c(1.0) - w * qk) / (1.0 - qq * qk) * z / qk;
        qk *= qq;
    }
    sum
}

/// The `a → 0` form `e^{inθ} Σ_k (q^{-n};q)_k/(q;q)_k (-e^{-2iθ})^k q^{nk - k(k-1)/2}`.
pub fn qhermite_limit_sum(n: usize, theta: f64, q: QBase) -> Result<Complex64> {
    let at = Angle::from_theta(theta)?;
    let e = at.e();
    let z = -(q.pow(n as i64)) * e.conj() * e.conj();
    Ok(e.powu(n as u32) * finite_hermite_sum(n, c(0.0), z, q))
}

/// Continuous q-Hermite `H_n(x|q)` from its finite expansion.
pub fn cont_qhermite(n: usize, x: f64, q: QBase) -> Result<f64> {
    let at = Angle::from_x(x)?;
    let th = at.theta();
    let qq = c(q.get());
    let qn = qpoch_n(qq, q, n).re;
    let mut s = 0.0;
    for k in 0..=n {
        let binom = qn / (qpoch_n(qq, q, k).re * qpoch_n(qq, q, n - k).re);
        s += binom * math::cos((n as f64 - 2.0 * k as f64) * th);
    }
    Ok(s)
}

/// Continuous q-Hermite values `H_0..H_{n_max}` by their three-term recurrence.
pub fn cont_qhermite_seq(n_max: usize, x: f64, q: QBase) -> Vec<f64> {
    aw_std_sequence(&[], q, x, n_max)
}

/// `ρ₀(x) = 4 (1-x²)^{1/2} ∏_{k≥1} (1 - 2(2x²-1) q^k + q^{2k})`.
pub fn rho0(x: f64, q: QBase) -> Result<f64> {
    if !(x.abs() < 1.0) {
        return Err(Error::EndpointSingularity(x));
    }
    Ok(4.0 * math::sqrt((1.0 - x) * (1.0 + x)) * rho0_product(x, q)?)
}

fn rho0_product(x: f64, q: QBase) -> Result<f64> {
    let pol = TruncationPolicy::default();
    Ok(h_factor(2.0 * x * x - 1.0, c(q.get()), q, &pol)?.value.re)
}

/// `Ψ_n(x|q)`, the q-wavefunction.
pub fn q_wavefunction(n: usize, x: f64, q: QBase) -> Result<f64> {
    let r = rho0(x, q)?;
    Ok(wavefunction_scale(n, q)? * math::sqrt(r) * cont_qhermite(n, x, q)?)
}

pub(crate) fn wavefunction_scale(n: usize, q: QBase) -> Result<f64> {
    let pol = TruncationPolicy::default();
    let v = qpoch_inf(c(q.pow(n as i64 + 1)), q, &pol)?.value.re;
    Ok(math::sqrt(v / (2.0 * math::PI)))
}

/// Continuous q-Laguerre polynomial with parameter `α`.
pub fn q_laguerre(n: usize, x: f64, alpha: f64, q: QBase) -> Result<Complex64> {
    let a = libm::pow(q.get(), (2.0 * alpha + 1.0) / 4.0);
    let b = libm::pow(q.get(), (2.0 * alpha + 3.0) / 4.0);
    alsalam_chihara_norm(n, x, &ParamSet::new(&[a, b], q)?)
}

/// Physicists' Hermite polynomial `H_n(x)`.
pub fn hermite(n: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (0.0, 1.0);
    for k in 0..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Hermite function `Ψ_0..Ψ_{n_max}` by the normalized recurrence.
pub fn hermite_psi_seq(n_max: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(math::exp(-x * x / 2.0) / math::sqrt(math::sqrt(math::PI)));
    if n_max >= 1 {
        out.push(core::f64::consts::SQRT_2 * x * out[0]);
    }
    for n in 1..n_max {
        let nf = n as f64;
        let v = math::sqrt(2.0 / (nf + 1.0)) * x * out[n] - math::sqrt(nf / (nf + 1.0)) * out[n - 1];
        out.push(v);
    }
    out
}

/// Hermite function `Ψ_n(x) = (2^n n! √π)^{-1/2} H_n(x) e^{-x²/2}`.
pub fn hermite_psi(n: usize, x: f64) -> f64 {
    hermite_psi_seq(n, x)[n]
}

/// Symmetric-normalization Askey–Wilson values `P_0..P_{n_max}` at `x`.
///
/// `P_n = (ab, ac, ad; q)_n a^{-n} p_n(x; a, b, c, d)` is symmetric in all four
/// parameters; missing parameters are 0, so the empty set gives `H_n(x|q)`.
pub fn aw_std_sequence(params: &[f64], q: QBase, x: f64, n_max: usize) -> Vec<f64> {
    AwStdIter::new(params, q, x).take(n_max + 1).collect()
}

/// Streaming three-term recurrence for the symmetric-normalization values.
#[derive(Clone, Debug)]
pub struct AwStdIter {
    a: f64,
    pairs: [f64; 6],
    e2: f64,
    q: f64,
    x: f64,
    n: usize,
    qn: f64,
    prev: f64,
    cur: f64,
    started: bool,
}

impl AwStdIter {
    pub fn new(params: &[f64], q: QBase, x: f64) -> Self {
        let mut p = [0.0f64; 4];
        for (slot, &v) in p.iter_mut().zip(params) {
            *slot = v;
        }
        // the recurrence divides by the leading parameter; pick the largest
        p.sort_by(|u, v| v.abs().partial_cmp(&u.abs()).unwrap_or(core::cmp::Ordering::Equal));
        let [a, b, cc, d] = p;
        AwStdIter {
            a,
            pairs: [a * b, a * cc, a * d, b * cc, b * d, cc * d],
            e2: a * b * cc * d,
            q: q.get(),
            x,
            n: 0,
            qn: 1.0,
            prev: 0.0,
            cur: 1.0,
            started: false,
        }
    }

    fn advance(&mut self) {
        let (a, e2, qn, n) = (self.a, self.e2, self.qn, self.n);
        let [ab, ac, ad, bc, bd, cd] = self.pairs;
        let qn1 = qn / self.q;
        // (1 - abcd q^{n-1}) / (1 - abcd q^{2n-1}) is 1 at n = 0
        let lead = if n == 0 { 1.0 } else { (1.0 - e2 * qn1) / (1.0 - e2 * qn * qn1) };
        let a_tilde = lead / (1.0 - e2 * qn * qn);
        let tail = if n == 0 {
            0.0
        } else {
            (1.0 - qn) * (1.0 - bc * qn1) * (1.0 - bd * qn1) * (1.0 - cd * qn1) / ((1.0 - e2 * qn1 * qn1) * (1.0 - e2 * qn * qn1))
        };
        let b_n = if a == 0.0 {
            0.0
        } else {
            let an = (1.0 - ab * qn) * (1.0 - ac * qn) * (1.0 - ad * qn) * a_tilde / a;
            a + 1.0 / a - an - a * tail
        };
        let c_tilde = tail * (1.0 - ab * qn1) * (1.0 - ac * qn1) * (1.0 - ad * qn1);
        let next = ((2.0 * self.x - b_n) * self.cur - c_tilde * self.prev) / a_tilde;
        self.prev = self.cur;
        self.cur = next;
        self.qn *= self.q;
        self.n += 1;
    }
}

impl Iterator for AwStdIter {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        if self.started {
            self.advance();
        } else {
            self.started = true;
        }
        Some(self.cur)
    }
}

/// `σ_n = (a p_1, a p_2, ...; q)_n a^{-n}` so that `P_n = σ_n p_n`; `params[0]` plays `a`.
#[cfg(test)]
pub(crate) fn std_scale_ratio(params: &[f64], q: QBase, n: usize) -> f64 {
    // ratio σ_{n+1}/σ_n
    let a = params.first().copied().unwrap_or(0.0);
    let qn = q.pow(n as i64);
    let mut r = 1.0 / a;
    for &p in params.iter().skip(1) {
        r *= 1.0 - a * p * qn;
    }
    r
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    fn q(v: f64) -> QBase {
        QBase::new(v).unwrap()
    }
    fn std_lambda() -> ParamSet {
        ParamSet::new(&[0.4, 0.3, 0.2, 0.1], q(0.5)).unwrap()
    }

    #[test]
    fn param_validation() {
        assert!(ParamSet::new(&[1.0, 0.2], q(0.5)).is_err());
        assert!(ParamSet::new(&[0.1; 5], q(0.5)).is_err());
        let lam = std_lambda();
        assert!(MuParams::new(&[0.32, 0.2, 0.25, 0.15], &lam).is_ok());
        assert!(matches!(MuParams::new(&[0.3, 0.2, 0.25, 0.15], &lam), Err(Error::ConstraintViolated { .. })));
        let mu = MuParams::unity_from_gamma(&lam, 0.25).unwrap();
        let v = mu.params().values();
        assert!((v[1] - 0.24).abs() < 1e-15 && (v[3] - 0.125).abs() < 1e-15);
    }

    #[test]
    fn unity_rejects_beta_equal_b() {
        let lam = std_lambda();
        // β = b forces γ = c, α = a, δ = d
        match MuParams::for_unity(&[0.4, 0.3, 0.2, 0.1], &lam) {
            Err(Error::ConstraintViolated { invariant }) => assert_eq!(invariant, "|β| < |b|"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn aw_low_degree() {
        let lam = std_lambda();
        assert_eq!(aw_poly(0, 0.3, &lam).unwrap(), c(1.0));
        let (a, b, cc, d, qq) = (0.4, 0.3, 0.2, 0.1, 0.5);
        let x: f64 = 0.3;
        let abcd = a * b * cc * d;
        let hx = 1.0 - 2.0 * a * x + a * a;
        let expect = 1.0 + (1.0 - 1.0 / qq) * (1.0 - abcd) * hx / ((1.0 - a * b) * (1.0 - a * cc) * (1.0 - a * d)) * qq / (1.0 - qq);
        let v = aw_poly(1, x, &lam).unwrap();
        assert!((v.re - expect).abs() < 1e-14);
    }

    #[test]
    fn aw_permutation_invariance() {
        let lam = std_lambda();
        let perm = ParamSet::new(&[0.4, 0.1, 0.3, 0.2], q(0.5)).unwrap();
        for n in 0..6 {
            let u = aw_poly(n, -0.45, &lam).unwrap();
            let v = aw_poly(n, -0.45, &perm).unwrap();
            assert!((u - v).norm() <= 1e-12 * u.norm().max(1.0), "n={n} {u} {v}");
            assert!(u.im.abs() <= 1e-12 * (1.0 + u.norm()));
        }
    }

    #[test]
    fn std_sequence_matches_series() {
        // P_n(0.37) at the standard λ, 50-digit evaluation of the 4φ3 times σ_n
        const REF: [f64; 11] = [
            1.0,
            -0.211776,
            -0.397215865728,
            -0.055733526618126048,
            0.2846584706951265353,
            0.24132972266623176215,
            -0.099472759350426325379,
            -0.3068991076949714556,
            -0.12631856499286311806,
            0.21193600927387729886,
            0.28227967074473346949,
        ];
        let lam = std_lambda();
        let vals = lam.values();
        let x = 0.37;
        let seq = aw_std_sequence(vals, lam.q(), x, 10);
        for n in 0..=10 {
            assert!((seq[n] - REF[n]).abs() <= 1e-13, "n={n} {}", seq[n]);
        }
        let mut sigma = 1.0;
        for (n, &s) in seq.iter().enumerate().take(6) {
            let p = aw_poly(n, x, &lam).unwrap().re;
            assert!((s - sigma * p).abs() <= 1e-9 * s.abs().max(1e-12), "n={n} {s} {}", sigma * p);
            sigma *= std_scale_ratio(vals, lam.q(), n);
        }
        let h = cont_qhermite_seq(6, x, q(0.5));
        for (n, &hn) in h.iter().enumerate() {
            assert!((hn - cont_qhermite(n, x, q(0.5)).unwrap()).abs() < 1e-13);
        }
    }

    #[test]
    fn weight_properties() {
        let lam = ParamSet::new(&[0.4, 0.3, 0.2, 0.1], q(0.25)).unwrap();
        let rev = ParamSet::new(&[0.1, 0.2, 0.3, 0.4], q(0.25)).unwrap();
        let w = aw_weight(0.0, &lam).unwrap();
        assert!(w > 0.0);
        assert_eq!(w, aw_weight(0.0, &rev).unwrap());
        assert!(matches!(aw_weight(1.0, &lam), Err(Error::EndpointSingularity(_))));
        // factored oracle at x = 0: h(0; a) = (-a²; q²)_∞
        let pol = TruncationPolicy::default();
        let q2 = q(0.0625);
        let mut num = 1.0;
        for p in [1.0, -1.0, 0.5, -0.5] {
            num *= qpoch_inf(c(-p * p), q2, &pol).unwrap().value.re;
        }
        let mut den = 1.0;
        for p in [0.4, 0.3, 0.2, 0.1] {
            den *= qpoch_inf(c(-p * p), q2, &pol).unwrap().value.re;
        }
        assert!((w - num / den).abs() < 1e-13 * w);
    }

    #[test]
    fn norm_examples() {
        let zero = ParamSet::new(&[0.0, 0.0, 0.0, 0.0], q(0.5)).unwrap();
        let pol = TruncationPolicy::default();
        let qinf = qpoch_inf(c(0.5), q(0.5), &pol).unwrap().value.re;
        assert!((aw_norm(0, &zero).unwrap() - qinf / (2.0 * math::PI)).abs() < 1e-15);
        let lam = std_lambda();
        let (a, b, cc, d, qq) = (0.4f64, 0.3f64, 0.2f64, 0.1f64, 0.5f64);
        let e2 = a * b * cc * d;
        let p = |v: f64, n: usize| qpoch_n(c(v), q(qq), n).re;
        let r = (1.0 - e2 * qq.powi(3)) * p(e2 / qq, 2) * p(a * b, 2) * p(a * cc, 2) * p(a * d, 2)
            / ((1.0 - e2 / qq) * p(qq, 2) * p(cc * d, 2) * p(b * d, 2) * p(b * cc, 2))
            / a.powi(4);
        let h2 = aw_norm(2, &lam).unwrap();
        assert!((h2 - aw_norm0(&lam).unwrap() * r).abs() < 1e-14 * h2);
    }

    #[test]
    fn qint_representation() {
        let lam = std_lambda();
        for (n, th) in [(0usize, 1.0f64), (1, 1.0), (2, 1.0), (3, 2.0), (4, 0.5)] {
            let x = math::cos(th);
            let u = aw_poly_qint(n, x, &lam).unwrap();
            let v = aw_poly(n, x, &lam).unwrap();
            assert!((u - v).norm() <= 1e-9 * v.norm(), "n={n}: {u} vs {v}");
        }
        let d0 = ParamSet::new(&[0.4, 0.3, 0.2, 0.0], q(0.5)).unwrap();
        assert!(aw_poly_qint(1, 0.2, &d0).is_err());
    }

    #[test]
    fn degeneration_chain() {
        let qq = q(0.5);
        let x = math::cos(1.2);
        let aw = ParamSet::new(&[0.4, 0.3, 0.2, 0.0], qq).unwrap();
        let dh = ParamSet::new(&[0.4, 0.3, 0.2], qq).unwrap();
        let dh0 = ParamSet::new(&[0.4, 0.3, 0.0], qq).unwrap();
        let asc = ParamSet::new(&[0.4, 0.3], qq).unwrap();
        let asc0 = ParamSet::new(&[0.4, 0.0], qq).unwrap();
        for n in 0..7 {
            let u = aw_poly(n, x, &aw).unwrap();
            let v = dual_qhahn(n, x, &dh).unwrap();
            assert!((u - v).norm() <= 1e-12 * v.norm().max(1e-300));
            let u = dual_qhahn(n, x, &dh0).unwrap();
            let v = alsalam_chihara(n, x, &asc).unwrap();
            assert!((u - v).norm() <= 1e-12 * v.norm().max(1e-300));
            let u = alsalam_chihara(n, x, &asc0).unwrap();
            let v = big_qhermite(n, x, 0.4, qq).unwrap();
            assert!((u - v).norm() <= 1e-12 * v.norm().max(1e-300));
        }
        // dual q-Hahn n = 2 term-by-term
        let e = Angle::from_x(x).unwrap().e();
        let mut s = c(0.0);
        for k in 0..=2usize {
            let num = qpoch_n(c(4.0), qq, k) * qpoch_n(e * 0.4, qq, k) * qpoch_n(e.conj() * 0.4, qq, k);
            let den = qpoch_n(c(0.5), qq, k) * qpoch_n(c(0.12), qq, k) * qpoch_n(c(0.08), qq, k);
            s += num / den * 0.5f64.powi(k as i32);
        }
        assert!((s - dual_qhahn(2, x, &dh).unwrap()).norm() < 1e-13);
    }

    #[test]
    fn asc_and_big_hermite_dual_forms() {
        let qq = q(0.5);
        let asc = ParamSet::new(&[0.5, 0.3], qq).unwrap();
        let x = math::cos(1.1);
        for n in [0usize, 1, 3, 4] {
            let u = alsalam_chihara(n, x, &asc).unwrap();
            let v = alsalam_chihara_2phi1(n, x, &asc).unwrap();
            assert!((u - v).norm() <= 1e-10 * u.norm().max(1.0));
            let r = alsalam_chihara_norm(n, x, &asc).unwrap() / u;
            let expect = qpoch_n(c(0.15), qq, n) / qpoch_n(c(0.5), qq, n) / 0.5f64.powi(n as i32);
            assert!((r - expect).norm() < 1e-13 * expect.norm());
        }
        let x = math::cos(0.8);
        let u = big_qhermite(3, x, 0.4, qq).unwrap();
        let v = big_qhermite_explicit(3, x, 0.4, qq).unwrap();
        assert!((u - v).norm() <= 1e-11 * u.norm());
        assert_eq!(big_qhermite(0, x, 0.4, qq).unwrap(), c(1.0));
        // a -> 0 of a^{-n} p_n(x; a) is H_n(x|q)
        let a = 1e-7;
        let h = cont_qhermite(3, x, qq).unwrap();
        let lim = big_qhermite_explicit(3, x, a, qq).unwrap() / a.powi(3);
        assert!((lim.re - h).abs() < 1e-5);
    }

    #[test]
    fn qhermite_examples() {
        let qq = q(0.5);
        let x: f64 = 0.3;
        assert_eq!(cont_qhermite(0, x, qq).unwrap(), 1.0);
        assert!((cont_qhermite(1, x, qq).unwrap() - 2.0 * x).abs() < 1e-15);
        assert!((cont_qhermite(2, x, qq).unwrap() - (4.0 * x * x + 0.5 - 1.0)).abs() < 1e-14);
        for n in 0..8 {
            let u = cont_qhermite(n, x, qq).unwrap();
            let v = cont_qhermite(n, -x, qq).unwrap();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((u - sign * v).abs() < 1e-12);
        }
        for n in 0..=10 {
            let lim = qhermite_limit_sum(n, 1.1, qq).unwrap();
            let h = cont_qhermite(n, math::cos(1.1), qq).unwrap();
            assert!((lim.re - h).abs() <= 1e-12 * h.abs().max(1.0) && lim.im.abs() < 1e-12);
        }
    }

    #[test]
    fn wavefunction_basics() {
        let qq = q(0.5);
        let pol = TruncationPolicy::default();
        let prod: f64 = (1..200).map(|k| (1.0 + 0.5f64.powi(k)).powi(2)).product();
        assert!((rho0(0.0, qq).unwrap() - 4.0 * prod).abs() < 3e-13 * 4.0 * prod);
        for x in [-0.9, -0.2, 0.0, 0.6] {
            assert!(q_wavefunction(0, x, qq).unwrap() > 0.0);
        }
        assert!(rho0(1.0, qq).is_err());
        let _ = pol;
    }

    #[test]
    fn laguerre_wrapper() {
        let qq = q(0.5);
        assert_eq!(q_laguerre(0, 0.2, 0.0, qq).unwrap(), c(1.0));
        let ps = ParamSet::new(&[0.5f64.powf(0.25), 0.5f64.powf(0.75)], qq).unwrap();
        let u = q_laguerre(1, 0.2, 0.0, qq).unwrap();
        let v = alsalam_chihara_norm(1, 0.2, &ps).unwrap();
        assert!((u - v).norm() < 1e-15);
    }

    #[test]
    fn hermite_basics() {
        assert_eq!(hermite(0, 0.7), 1.0);
        assert_eq!(hermite(1, 0.7), 1.4);
        assert!((hermite(2, 0.7) - (4.0 * 0.49 - 2.0)).abs() < 1e-15);
        let mut fact = 1.0;
        for n in 0..12 {
            if n > 0 {
                fact *= n as f64;
            }
            let direct = hermite(n, 0.9) * math::exp(-0.81 / 2.0) / math::sqrt(2f64.powi(n as i32) * fact * math::sqrt(math::PI));
            assert!((hermite_psi(n, 0.9) - direct).abs() < 1e-14);
        }
    }
}

//! Poisson-type kernels: direct bilinear sums, closed forms and the explicit three-part formula.

mod classical;
mod direct;
mod explicit;
mod special;

pub use classical::{mehler_kernel, mehler_series, qhermite_delta_kernel, qhermite_poisson, qhermite_poisson_series};
pub use direct::{
    asc_direct, asc_norm_direct, bigqh_direct, bigqh_norm_direct, dual_qhahn_direct, kernel_direct, kernel_direct_with, Truncation,
};
pub use explicit::{kernel_explicit, kernel_explicit_with};

pub use special::{
    asc_kernel, asc_kernel_norm, asc_kernel_norm_alt, asc_kernel_unity, bigqh_kernel, bigqh_kernel_norm, dual_qhahn_kernel,
    dual_qhahn_kernel_unity, j_t, kernel_unity, qhermite_qbessel_kernel, JtArgument,
};

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math::{self, c};
use crate::polys::{MuParams, ParamSet};
use crate::qcore::QBase;

/// `(λ, μ, t)` with `μ` tied to `λ` by `αγ = ac`, `βδ = bd`.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelParams {
    lambda: ParamSet,
    mu: MuParams,
    t: Complex64,
    eps: Complex64,
}

impl KernelParams {
    pub fn new(lambda: ParamSet, mu: MuParams, t: Complex64) -> Result<Self> {
        check_t(t)?;
        let eps = lambda.eps();
        Ok(KernelParams { lambda, mu, t, eps })
    }

    #[inline]
    pub fn lambda(&self) -> &ParamSet {
        &self.lambda
    }
    #[inline]
    pub fn mu(&self) -> &ParamSet {
        self.mu.params()
    }
    #[inline]
    pub fn t(&self) -> Complex64 {
        self.t
    }
    /// `ε = (abcd)^{1/2}`.
    #[inline]
    pub fn eps(&self) -> Complex64 {
        self.eps
    }
    #[inline]
    pub fn q(&self) -> QBase {
        self.lambda.q()
    }

    pub fn with_t(&self, t: Complex64) -> Result<Self> {
        check_t(t)?;
        Ok(KernelParams { t, ..self.clone() })
    }
}

pub(crate) fn check_t(t: Complex64) -> Result<()> {
    if !math::is_finite(t) || t.norm() >= 1.0 {
        return Err(Error::InvalidParameter { name: "t", invariant: "|t| < 1".into() });
    }
    Ok(())
}

/// Kernel value with the three explicit parts when available.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelValue {
    pub value: Complex64,
    pub parts: Option<[Complex64; 3]>,
    /// Outer terms used per part.
    pub terms: Vec<usize>,
}

/// Which lattice a denominator argument must avoid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lattice {
    /// `q^{-m}`, `m ≥ 0`: arguments of plain `(v; q)_n` factors.
    Negative,
    /// `q^{m}`, `m ≥ 0`: bases that appear multiplied by `q^{-k}`.
    Positive,
    Both,
}

const GUARD_DEPTH: i64 = 60;
const GUARD_TOL: f64 = 1e-10;

/// Reject `value` if it lies within `1e-10` (relative) of the lattice.
pub(crate) fn guard(factor: &'static str, value: Complex64, lattice: Lattice, q: QBase) -> Result<()> {
    if !math::is_finite(value) {
        return Err(Error::PoleGuardTripped { factor, value });
    }
    if near_lattice(value, lattice, q, GUARD_TOL) {
        return Err(Error::PoleGuardTripped { factor, value });
    }
    Ok(())
}

/// Whether `value` lies within `tol` (relative) of a lattice point `q^{∓m}`, `m ≤ 60`.
pub fn near_lattice(value: Complex64, lattice: Lattice, q: QBase, tol: f64) -> bool {
    let (lo, hi) = match lattice {
        Lattice::Negative => (0, GUARD_DEPTH),
        Lattice::Positive => (-GUARD_DEPTH, 0),
        Lattice::Both => (-GUARD_DEPTH, GUARD_DEPTH),
    };
    (lo..=hi).any(|m| {
        let p = q.pow(-m);
        (value - c(p)).norm() <= tol * p
    })
}

pub(crate) fn guard_all(items: &[(&'static str, Complex64, Lattice)], q: QBase) -> Result<()> {
    for &(name, v, l) in items {
        guard(name, v, l, q)?;
    }
    Ok(())
}

/// `f(e^{iθ}) + f(e^{-iθ})`: the `idem(θ; -θ)` reflection.
pub(crate) fn idem<F>(e: Complex64, mut f: F) -> Result<Complex64>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    Ok(f(e)? + f(e.conj())?)
}

/// `Π(1 - v q^j) / Π(1 - w q^j)` at one index.
#[inline]
pub(crate) fn step(num: &[Complex64], den: &[Complex64], qj: f64) -> Complex64 {
    let mut r = c(1.0);
    for &v in num {
        r *= c(1.0) - v * qj;
    }
    for &w in den {
        r /= c(1.0) - w * qj;
    }
    r
}

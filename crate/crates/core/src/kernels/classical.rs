//! Mehler's kernel and the continuous q-Hermite Poisson kernel.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math::{self, c};
use crate::polys::{cont_qhermite_seq, hermite_psi_seq, Angle};
use crate::qcore::{inf_ratio, QBase, TruncationPolicy};

fn check_r(r: f64, name: &'static str) -> Result<()> {
    if !(r.abs() < 1.0) {
        return Err(Error::InvalidParameter { name, invariant: alloc::format!("|{name}| < 1") });
    }
    Ok(())
}

/// `[π(1-t²)]^{-1/2} exp[(4xyt - (x²+y²)(1+t²)) / (2(1-t²))]`.
pub fn mehler_kernel(x: f64, y: f64, t: f64) -> Result<f64> {
    check_r(t, "t")?;
    let s = 1.0 - t * t;
    let expo = (4.0 * x * y * t - (x * x + y * y) * (1.0 + t * t)) / (2.0 * s);
    Ok(math::exp(expo) / math::sqrt(math::PI * s))
}

/// `Σ_{n<N} t^n Ψ_n(x) Ψ_n(y)`.
pub fn mehler_series(x: f64, y: f64, t: f64, n: usize) -> Result<f64> {
    check_r(t, "t")?;
    if n == 0 {
        return Ok(0.0);
    }
    let (px, py) = (hermite_psi_seq(n - 1, x), hermite_psi_seq(n - 1, y));
    let mut s = 0.0;
    let mut tn = 1.0;
    for k in 0..n {
        s += tn * px[k] * py[k];
        tn *= t;
    }
    Ok(s)
}

fn four(r: f64, e: Complex64, ep: Complex64) -> [Complex64; 4] {
    [e * ep * r, e / ep * r, ep / e * r, r / (e * ep)]
}

/// `(r²;q)_∞ / (r e^{±iθ±iφ};q)_∞`.
pub fn qhermite_poisson(x: &Angle, y: &Angle, r: f64, q: QBase) -> Result<f64> {
    check_r(r, "r")?;
    let v = inf_ratio(&[c(r * r)], &four(r, x.e(), y.e()), q, &TruncationPolicy::default())?;
    Ok(v.re)
}

/// `Σ_{n<N} r^n H_n(x|q) H_n(y|q) / (q;q)_n`.
pub fn qhermite_poisson_series(x: &Angle, y: &Angle, r: f64, q: QBase, n: usize) -> Result<f64> {
    check_r(r, "r")?;
    if n == 0 {
        return Ok(0.0);
    }
    let (hx, hy) = (cont_qhermite_seq(n - 1, x.x(), q), cont_qhermite_seq(n - 1, y.x(), q));
    let mut s = 0.0;
    let mut w = 1.0;
    for k in 0..n {
        if k > 0 {
            w *= r / (1.0 - q.pow(k as i64));
        }
        s += w * hx[k] * hy[k];
    }
    Ok(s)
}

/// The normalized kernel `(q, r², e^{±2iφ};q)_∞ / (2π sin φ (r e^{±iθ±iφ};q)_∞)`, a density in `y = cos φ`.
pub fn qhermite_delta_kernel(x: &Angle, y: &Angle, r: f64, q: QBase) -> Result<f64> {
    check_r(r, "r")?;
    let s = y.sin();
    if s == 0.0 {
        return Err(Error::EndpointSingularity(y.x()));
    }
    let ep = y.e();
    let v = inf_ratio(&[c(q.get()), c(r * r), ep * ep, c(1.0) / (ep * ep)], &four(r, x.e(), ep), q, &TruncationPolicy::default())?;
    Ok(v.re / (2.0 * math::PI * s))
}

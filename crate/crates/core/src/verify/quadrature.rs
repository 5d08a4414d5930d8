//! Composite Gauss-Legendre quadrature in `θ` for integrals over `x = cos θ ∈ (-1, 1)`.

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math::{self, Neumaier};
use crate::polys::{aw_weight_jacobian, rho0, ParamSet};
use crate::qcore::QBase;

const MAX_NODES: usize = 1_000_000;

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Order `n` rule from Newton iteration on `P_n`.
    pub fn new(n: usize) -> Self {
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        let nf = n as f64;
        for i in 0..n {
            let mut x = math::cos(math::PI * (i as f64 + 0.75) / (nf + 0.5));
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            dp = if d != 0.0 { d } else { dp };
            nodes.push(x);
            weights.push(2.0 / ((1.0 - x * x) * dp * dp));
        }
        GaussLegendre { nodes, weights }
    }
}

/// `(P_n(x), P_n'(x))`.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    (p1, nf * (x * p1 - p0) / (x * x - 1.0))
}

/// Panels, nodes per panel and the `θ` domain.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureConfig {
    panels: usize,
    nodes_per_panel: usize,
    domain: (f64, f64),
    /// Geometric refinement around `(center, width)` for sharply peaked integrands.
    peak: Option<(f64, f64)>,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { panels: 64, nodes_per_panel: 16, domain: (0.0, math::PI), peak: None }
    }
}

impl QuadratureConfig {
    pub fn new(panels: usize, nodes_per_panel: usize, domain: (f64, f64)) -> Result<Self> {
        if panels == 0 || nodes_per_panel == 0 {
            return Err(Error::InvalidParameter { name: "quadrature", invariant: "panels, nodes_per_panel >= 1".into() });
        }
        if panels.saturating_mul(nodes_per_panel) > MAX_NODES {
            return Err(Error::InvalidParameter { name: "quadrature", invariant: "panels·nodes_per_panel <= 10^6".into() });
        }
        let (lo, hi) = domain;
        if !(0.0 <= lo && lo < hi && hi <= math::PI) {
            return Err(Error::InvalidParameter { name: "domain", invariant: "0 <= θ_lo < θ_hi <= π".into() });
        }
        Ok(QuadratureConfig { panels, nodes_per_panel, domain, peak: None })
    }

    /// Refine geometrically around `center` down to scale `width`.
    pub fn with_peak(mut self, center: f64, width: f64) -> Result<Self> {
        if !(width > 0.0 && center.is_finite()) {
            return Err(Error::InvalidParameter { name: "peak", invariant: "width > 0".into() });
        }
        self.peak = Some((center, width));
        Ok(self)
    }

    /// The same rule with `factor` times as many panels.
    pub fn refined(&self, factor: usize) -> Result<Self> {
        let mut r = Self::new(self.panels * factor.max(1), self.nodes_per_panel, self.domain)?;
        r.peak = self.peak;
        Ok(r)
    }

    pub fn panels(&self) -> usize {
        self.panels
    }
    pub fn nodes_per_panel(&self) -> usize {
        self.nodes_per_panel
    }
    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    /// Panel endpoints in increasing order.
    fn breakpoints(&self) -> Vec<f64> {
        let (lo, hi) = self.domain;
        let mut out = Vec::new();
        match self.peak {
            None => {
                let h = (hi - lo) / self.panels as f64;
                out.extend((0..=self.panels).map(|i| lo + h * i as f64));
            }
            Some((center, width)) => {
                let mut marks = Vec::new();
                marks.push(lo);
                marks.push(hi);
                if lo < center && center < hi {
                    marks.push(center);
                }
                let mut s = width;
                while s < hi - lo {
                    for m in [center - s, center + s] {
                        if lo < m && m < hi {
                            marks.push(m);
                        }
                    }
                    s *= 2.0;
                }
                marks.sort_by(f64::total_cmp);
                let sub = (self.panels / 16).max(1);
                for w in marks.windows(2) {
                    let h = (w[1] - w[0]) / sub as f64;
                    for i in 0..sub {
                        out.push(w[0] + h * i as f64);
                    }
                }
                out.push(hi);
            }
        }
        out
    }

    /// All `(θ, weight)` pairs of the composite rule.
    pub fn points(&self) -> Vec<(f64, f64)> {
        let gl = GaussLegendre::new(self.nodes_per_panel);
        let bp = self.breakpoints();
        let mut out = Vec::with_capacity((bp.len() - 1) * self.nodes_per_panel);
        for w in bp.windows(2) {
            let (mid, half) = ((w[0] + w[1]) / 2.0, (w[1] - w[0]) / 2.0);
            for (&x, &wt) in gl.nodes.iter().zip(&gl.weights) {
                out.push((mid + half * x, half * wt));
            }
        }
        out
    }
}

/// `∫ f(θ) dθ` over the configured domain.
pub fn integrate_theta<F>(mut f: F, cfg: &QuadratureConfig) -> Result<Complex64>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let mut sum = Neumaier::new();
    for (th, w) in cfg.points() {
        let v = f(th)?;
        if !math::is_finite(v) {
            return Err(Error::NonFinite("quadrature integrand"));
        }
        sum.add(v * w);
    }
    Ok(sum.value())
}

/// Weight functions on `(-1, 1)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Weight {
    /// `ρ(x; λ)` of the Askey-Wilson orthogonality.
    AskeyWilson(ParamSet),
    /// `ρ₀(x)` of the continuous q-Hermite orthogonality.
    QHermite(QBase),
    /// Lebesgue measure `dx`.
    Unit,
}

impl Weight {
    /// `weight(cos θ) · sin θ`.
    pub fn theta_density(&self, theta: f64) -> Result<f64> {
        let x = math::cos(theta);
        let s = math::sin(theta);
        match self {
            Weight::AskeyWilson(l) => aw_weight_jacobian(x, l),
            Weight::QHermite(q) => {
                if s == 0.0 {
                    return Ok(0.0);
                }
                Ok(rho0(x, *q)? * s)
            }
            Weight::Unit => Ok(s),
        }
    }
}

/// `∫_{-1}^{1} f(x) weight(x) dx` through `x = cos θ`.
pub fn integrate_weighted<F>(mut f: F, weight: &Weight, cfg: &QuadratureConfig) -> Result<Complex64>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    integrate_theta(|th| Ok(f(math::cos(th))? * weight.theta_density(th)?), cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::c;

    #[test]
    fn gauss_legendre_exact_for_polynomials() {
        let gl = GaussLegendre::new(8);
        let s: f64 = gl.weights.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
        let m: f64 = gl.nodes.iter().zip(&gl.weights).map(|(x, w)| w * x.powi(14)).sum();
        assert!((m - 2.0 / 15.0).abs() < 1e-14);
    }

    #[test]
    fn theta_integrals() {
        let cfg = QuadratureConfig::default();
        let v = integrate_theta(|t| Ok(c(math::sin(t))), &cfg).unwrap();
        assert!((v.re - 2.0).abs() < 1e-14);
        let odd = integrate_weighted(|x| Ok(c(x * x * x)), &Weight::Unit, &cfg).unwrap();
        assert!(odd.norm() < 1e-15);
        let peaked = cfg.clone().with_peak(1.0, 1e-3).unwrap();
        let v = integrate_theta(|t| Ok(c(1e-3 / ((t - 1.0) * (t - 1.0) + 1e-6))), &peaked).unwrap();
        let exact = libm::atan((math::PI - 1.0) / 1e-3) + libm::atan(1.0 / 1e-3);
        assert!((v.re - exact).abs() < 1e-10, "{}", v.re - exact);
    }

    #[test]
    fn config_validation() {
        assert!(QuadratureConfig::new(0, 16, (0.0, 1.0)).is_err());
        assert!(QuadratureConfig::new(1_000_001, 1, (0.0, 1.0)).is_err());
        assert!(QuadratureConfig::new(4, 4, (1.0, 0.5)).is_err());
        assert!(QuadratureConfig::new(4, 4, (0.0, 4.0)).is_err());
    }
}

//! The registry of identity families and the seeded suite runner.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::checks::*;
use super::quadrature::QuadratureConfig;
use crate::error::{Error, Result};
use crate::kernels::{near_lattice, KernelParams, Lattice};
use crate::math::{self, c};
use crate::polys::{MuParams, ParamSet};
use crate::qcore::{QBase, TruncationPolicy};
use crate::qseries::{check_2phi1_2phi2, check_6w5_split};
use crate::report::{CheckReport, Witness};
use crate::standard;

/// One registered identity family with its default tolerance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Family {
    pub id: &'static str,
    pub tolerance: f64,
}

const fn fam(id: &'static str, tolerance: f64) -> Family {
    Family { id, tolerance }
}

/// Every family the suite knows, in id order.
pub const REGISTRY: &[Family] = &[
    fam("check_2phi1_2phi2", 1e-9),
    fam("check_6w5_split", 1e-8),
    fam("check_asc", 1e-7),
    fam("check_asc_norm", 1e-7),
    fam("check_asc_norm_alt", 1e-7),
    fam("check_asc_norm_forms", 1e-9),
    fam("check_asc_unity", 1e-2),
    fam("check_bigqh", 1e-7),
    fam("check_bigqh_norm", 1e-7),
    fam("check_delta_limit", 0.05),
    fam("check_delta_monotone", 0.0),
    fam("check_dual_qhahn", 1e-7),
    fam("check_dual_qhahn_unity", 1e-2),
    fam("check_kernel_explicit", 1e-7),
    fam("check_mehler", 1e-10),
    fam("check_multiplication", 1e-6),
    fam("check_orthogonality", 1e-8),
    fam("check_projection", 1e-7),
    fam("check_qbessel", 1e-7),
    fam("check_qbessel_reduction", 1e-11),
    fam("check_qhermite_limit", 1e-12),
    fam("check_qhermite_normalization", 1e-8),
    fam("check_qhermite_poisson", 1e-10),
    fam("check_qint_representation", 1e-9),
    fam("check_unity_direct", 1e-2),
    fam("check_unity_ratio", 1e-9),
    fam("check_unity_ratio_reduced", 1e-9),
    fam("check_wavefunction_orthogonality", 1e-8),
    fam("check_weight_normalization", 1e-8),
];

pub fn family(id: &str) -> Option<&'static Family> {
    REGISTRY.iter().find(|f| f.id == id)
}

/// Suite selection, sampling and tolerance settings.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Family ids to run; `None` runs the whole registry.
    pub only: Option<Vec<String>>,
    /// Overrides keyed by family id or full identity id; the latter wins.
    pub tolerances: Vec<(String, f64)>,
    pub split_samples: usize,
    pub transform_samples: usize,
    pub orthogonality_n_max: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 42, only: None, tolerances: Vec::new(), split_samples: 100, transform_samples: 50, orthogonality_n_max: 5 }
    }
}

impl SuiteConfig {
    fn validate(&self) -> Result<()> {
        if let Some(only) = &self.only {
            for id in only {
                if family(id).is_none() {
                    return Err(Error::InvalidParameter { name: "only", invariant: format!("unknown identity family {id}") });
                }
            }
        }
        for (id, tol) in &self.tolerances {
            if !(tol.is_finite() && *tol >= 0.0) {
                return Err(Error::InvalidParameter { name: "tol", invariant: format!("tolerance for {id} must be finite and >= 0") });
            }
            let fam = id.split('/').next().unwrap_or("");
            if family(fam).is_none() {
                return Err(Error::InvalidParameter { name: "tol", invariant: format!("unknown identity {id}") });
            }
        }
        Ok(())
    }

    fn selected(&self, id: &str) -> bool {
        self.only.as_ref().is_none_or(|o| o.iter().any(|s| s == id))
    }

    fn tolerance(&self, fam: &Family, identity_id: Option<&str>) -> f64 {
        let mut tol = fam.tolerance;
        for (k, v) in &self.tolerances {
            if k == fam.id {
                tol = *v;
            }
        }
        if let Some(full) = identity_id {
            for (k, v) in &self.tolerances {
                if k == full {
                    tol = *v;
                }
            }
        }
        tol
    }
}

/// A single check ready to run: its family, tolerance and the witness that fixes every input.
#[derive(Clone, Debug, PartialEq)]
pub struct Case {
    pub family: &'static str,
    pub tolerance: f64,
    pub witness: Witness,
}

fn req(w: &Witness, key: &str) -> Result<f64> {
    w.get(key).ok_or_else(|| Error::InvalidParameter { name: "witness", invariant: format!("missing {key}") })
}

fn req_c(w: &Witness, key: &str) -> Result<Complex64> {
    w.get_complex(key).ok_or_else(|| Error::InvalidParameter { name: "witness", invariant: format!("missing {key}") })
}

fn req_q(w: &Witness) -> Result<QBase> {
    QBase::new(req(w, "q")?)
}

fn params(w: &Witness, key: &str, q: QBase) -> Result<ParamSet> {
    ParamSet::new(&w.get_slice(key), q)
}

fn cfg_of(w: &Witness) -> Result<QuadratureConfig> {
    QuadratureConfig::new(req(w, "panels")? as usize, req(w, "nodes")? as usize, (0.0, math::PI))
}

fn kernel_params(w: &Witness) -> Result<KernelParams> {
    let q = req_q(w)?;
    let lambda = params(w, "lambda", q)?;
    let mu = MuParams::new(&w.get_slice("mu"), &lambda)?;
    KernelParams::new(lambda, mu, req_c(w, "t")?)
}

fn sampled(mut r: CheckReport, w: &Witness) -> CheckReport {
    if let Some(i) = w.get("sample") {
        r.identity_id = format!("{}/sample={:03}", r.identity_id, i as usize);
        r.witness.entries.push(("sample".into(), i));
    }
    r
}

fn dispatch(fam: &str, w: &Witness, tol: f64) -> Result<CheckReport> {
    let pol = TruncationPolicy::default();
    let idx = |k: &str| -> Result<usize> { Ok(req(w, k)? as usize) };
    if let Some(kind) = Closed::ALL.iter().find(|k| k.id() == fam) {
        let q = req_q(w)?;
        return check_closed_kernel(
            *kind,
            &params(w, "lambda", q)?,
            &params(w, "mu", q)?,
            req(w, "t")?,
            req(w, "theta")?,
            req(w, "phi")?,
            tol,
        );
    }
    match fam {
        "check_orthogonality" => {
            let q = req_q(w)?;
            orthogonality_entry(&params(w, "lambda", q)?, idx("m")?, idx("n")?, &cfg_of(w)?, tol)
        }
        "check_weight_normalization" => {
            let q = req_q(w)?;
            check_weight_normalization(&params(w, "lambda", q)?, &cfg_of(w)?, tol)
        }
        "check_wavefunction_orthogonality" => wavefunction_entry(req_q(w)?, idx("m")?, idx("n")?, &cfg_of(w)?, tol),
        "check_kernel_explicit" => check_kernel_explicit(&kernel_params(w)?, req(w, "theta")?, req(w, "phi")?, tol),
        "check_6w5_split" => {
            let q = req_q(w)?;
            let r = check_6w5_split(req_c(w, "u")?, req_c(w, "v")?, req_c(w, "t")?, &params(w, "lambda", q)?, &pol, tol)?;
            Ok(sampled(r, w))
        }
        "check_2phi1_2phi2" => {
            let r =
                check_2phi1_2phi2(req_c(w, "u")?, req_c(w, "v")?, req_c(w, "t")?, req_c(w, "b")?, req_c(w, "c")?, req_q(w)?, &pol, tol)?;
            Ok(sampled(r, w))
        }
        "check_multiplication" => {
            let q = req_q(w)?;
            check_multiplication(
                &params(w, "lambda", q)?,
                &params(w, "mu", q)?,
                &params(w, "lambda2", q)?,
                req_c(w, "t")?,
                req_c(w, "t2")?,
                req(w, "theta")?,
                req(w, "theta2")?,
                &cfg_of(w)?,
                tol,
            )
        }
        "check_projection" => check_projection(&kernel_params(w)?, idx("m")?, req(w, "theta")?, &cfg_of(w)?, tol),
        "check_unity_direct" => {
            let q = req_q(w)?;
            let lambda = params(w, "lambda", q)?;
            let mu = MuParams::new(&w.get_slice("mu"), &lambda)?;
            check_unity_direct(&lambda, &mu, req_c(w, "t")?.re, req(w, "theta")?, req(w, "phi")?, tol)
        }
        "check_unity_ratio" | "check_unity_ratio_reduced" => {
            let q = req_q(w)?;
            let lambda = params(w, "lambda", q)?;
            let mu = MuParams::new(&w.get_slice("mu"), &lambda)?;
            check_unity_ratio(&lambda, &mu, &w.get_slice("grid"), fam == "check_unity_ratio_reduced", tol)
        }
        "check_qhermite_poisson" => check_qhermite_poisson(req(w, "r")?, req(w, "theta")?, req(w, "phi")?, req_q(w)?, idx("n_terms")?, tol),
        "check_qhermite_normalization" => check_qhermite_normalization(req(w, "r")?, req(w, "theta")?, req_q(w)?, &cfg_of(w)?, tol),
        "check_delta_limit" => {
            let f = DeltaTest::from_code(req(w, "f")?)?;
            check_delta_limit(req(w, "r")?, f, req(w, "theta")?, req_q(w)?, &cfg_of(w)?, tol)
        }
        "check_delta_monotone" => check_delta_monotone(&w.get_slice("r"), req(w, "theta")?, req_q(w)?, &cfg_of(w)?, tol),
        "check_qhermite_limit" => check_qhermite_limit(idx("n")?, req(w, "theta")?, req_q(w)?, tol),
        "check_mehler" => check_mehler(req(w, "x")?, req(w, "y")?, req(w, "t")?, idx("n_terms")?, tol),
        "check_qint_representation" => {
            let q = req_q(w)?;
            check_qint_representation(&params(w, "lambda", q)?, idx("n")?, req(w, "theta")?, tol)
        }
        _ => Err(Error::InvalidParameter { name: "family", invariant: format!("unknown identity family {fam}") }),
    }
}

/// Run one case; evaluation errors become failed reports carrying the error code.
pub fn run_case(case: &Case) -> CheckReport {
    match dispatch(case.family, &case.witness, case.tolerance) {
        Ok(r) => r,
        Err(e) => {
            let mut r = CheckReport::new(format!("{}/error", case.family), f64::INFINITY, case.tolerance, case.witness.clone());
            r.passed = false;
            r.with_diagnostic(&format!("error:{}", e.code()), 0)
        }
    }
}

/// Re-run the check behind a report from its witness alone.
pub fn rerun(report: &CheckReport) -> Result<CheckReport> {
    let fam = family(report.family())
        .ok_or_else(|| Error::InvalidParameter { name: "family", invariant: format!("unknown identity family {}", report.family()) })?;
    dispatch(fam.id, &report.witness, report.tolerance)
}

fn std_base() -> Witness {
    Witness::new().with("q", standard::Q).with_slice("lambda", &standard::LAMBDA)
}

fn with_cfg(w: Witness, cfg: &QuadratureConfig) -> Witness {
    w.with("panels", cfg.panels() as f64).with("nodes", cfg.nodes_per_panel() as f64)
}

fn grid_cases(base: &Witness, out: &mut Vec<Witness>) {
    for (th, ph) in standard::grid() {
        out.push(base.clone().with("theta", th).with("phi", ph));
    }
}

/// Whether any value is within `1e-6` of its lattice.
fn resonant(items: &[(Complex64, Lattice)], q: QBase) -> bool {
    items.iter().any(|&(v, l)| !math::is_finite(v) || near_lattice(v, l, q, 1e-6))
}

fn polar(rng: &mut ChaCha8Rng, r: (f64, f64), arg: f64) -> Complex64 {
    Complex64::from_polar(rng.gen_range(r.0..r.1), rng.gen_range(-arg..arg))
}

fn split_sample(rng: &mut ChaCha8Rng) -> Witness {
    use Lattice::*;
    loop {
        let q = rng.gen_range(0.3..0.7);
        let lam: [f64; 4] = core::array::from_fn(|_| rng.gen_range(0.1..0.6));
        let u = polar(rng, (0.5, 1.5), math::PI);
        let v = polar(rng, (0.5, 1.5), math::PI);
        let t = polar(rng, (0.1, 0.6), 0.5);
        let Ok(qb) = QBase::new(q) else { continue };
        if ParamSet::new(&lam, qb).is_err() {
            continue;
        }
        let [a, b, cc, d] = lam;
        let (ad, bc) = (c(a * d), c(b * cc));
        let eps = c(math::sqrt(a * b * cc * d));
        let e2 = eps * eps;
        let z = bc * u * v * t / (q * q);
        if z.norm() >= 0.8 || q * eps.norm() / (a * d) >= 0.8 {
            continue;
        }
        let items = [
            (bc, Negative),
            (-t * eps * q, Negative),
            (-eps * q / t, Negative),
            (-t / eps, Negative),
            (-eps / t, Negative),
            (-eps, Negative),
            (t / ad, Negative),
            (t * t * q, Negative),
            (-t * eps / ad, Negative),
            (t * q / ad, Negative),
            (ad / t, Both),
            (u * e2 / q, Negative),
            (v * e2 / q, Negative),
            (bc * t * u / q, Negative),
            (bc * t * v / q, Negative),
            (-ad / eps, Positive),
            (z, Negative),
        ];
        if resonant(&items, qb) {
            continue;
        }
        return Witness::new().with("q", q).with_slice("lambda", &lam).with_complex("u", u).with_complex("v", v).with_complex("t", t);
    }
}

fn transform_sample(rng: &mut ChaCha8Rng) -> Witness {
    loop {
        let q = rng.gen_range(0.3..0.7);
        let b = c(rng.gen_range(0.1..0.7));
        let cc = c(rng.gen_range(0.1..0.7));
        let u = polar(rng, (0.5, 1.5), math::PI);
        let v = polar(rng, (0.5, 1.5), math::PI);
        let t = polar(rng, (0.1, 0.6), 0.5);
        let Ok(qb) = QBase::new(q) else { continue };
        let bc = b * cc;
        let z = bc * u * v * t / (q * q);
        if z.norm() >= 0.8 {
            continue;
        }
        let items =
            [(bc, Lattice::Negative), (z, Lattice::Negative), (bc * t * u / q, Lattice::Negative), (bc * t * v / q, Lattice::Negative)];
        if resonant(&items, qb) {
            continue;
        }
        return Witness::new()
            .with("q", q)
            .with_complex("u", u)
            .with_complex("v", v)
            .with_complex("t", t)
            .with_complex("b", b)
            .with_complex("c", cc);
    }
}

/// Witnesses for every case of `fam` at the standard set and the seeded samples.
fn family_witnesses(id: &str, cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Vec<Witness> {
    let quad = QuadratureConfig::default();
    let mut out = Vec::new();
    let std_mu = |w: Witness| w.with_slice("mu", &standard::MU);
    let unity_mu = |w: Witness| w.with_slice("mu", &standard::MU_UNITY);
    match id {
        "check_orthogonality" => {
            for m in 0..=cfg.orthogonality_n_max {
                for n in 0..=cfg.orthogonality_n_max {
                    out.push(with_cfg(std_base(), &quad).with("m", m as f64).with("n", n as f64));
                }
            }
        }
        "check_weight_normalization" => out.push(with_cfg(std_base(), &quad)),
        "check_wavefunction_orthogonality" => {
            for m in 0..=4 {
                for n in 0..=4 {
                    out.push(with_cfg(Witness::new().with("q", standard::Q), &quad).with("m", m as f64).with("n", n as f64));
                }
            }
        }
        "check_kernel_explicit" => grid_cases(&std_mu(std_base()).with_complex("t", c(0.3)), &mut out),
        "check_6w5_split" => {
            for i in 0..cfg.split_samples {
                out.push(split_sample(rng).with("sample", i as f64));
            }
        }
        "check_2phi1_2phi2" => {
            for i in 0..cfg.transform_samples {
                out.push(transform_sample(rng).with("sample", i as f64));
            }
        }
        "check_multiplication" => {
            for (t, t2) in [(0.35, 0.35), (0.5, 0.2)] {
                let w = with_cfg(std_mu(std_base()), &quad).with_slice("lambda2", &standard::LAMBDA2);
                out.push(w.with_complex("t", c(t)).with_complex("t2", c(t2)).with("theta", 1.0).with("theta2", 1.8));
            }
        }
        "check_projection" => {
            for m in 0..=4 {
                let w = with_cfg(std_mu(std_base()), &quad).with_complex("t", c(0.4)).with("theta", 1.2).with("phi", 0.0);
                out.push(w.with("m", m as f64));
            }
        }
        "check_unity_direct" => grid_cases(&unity_mu(std_base()).with_complex("t", c(0.999)), &mut out),
        "check_unity_ratio" | "check_unity_ratio_reduced" => out.push(unity_mu(std_base()).with_slice("grid", &standard::GRID)),
        "check_qhermite_poisson" => {
            let w = Witness::new().with("q", standard::Q).with("r", 0.4).with("n_terms", 60.0);
            grid_cases(&w, &mut out);
        }
        "check_qhermite_normalization" => {
            for r in [0.5, 0.99] {
                for &th in &standard::GRID {
                    out.push(with_cfg(Witness::new().with("q", standard::Q), &quad).with("r", r).with("theta", th));
                }
            }
        }
        "check_delta_limit" => {
            let w = with_cfg(Witness::new().with("q", standard::Q), &quad);
            out.push(w.with("r", 0.995).with("f", DeltaTest::Square.code()).with("theta", math::acos(0.3)));
        }
        "check_delta_monotone" => {
            let w = with_cfg(Witness::new().with("q", standard::Q), &quad);
            out.push(w.with_slice("r", &[0.9, 0.99, 0.995]).with("theta", math::acos(0.3)));
        }
        "check_qhermite_limit" => {
            for n in 0..=10 {
                out.push(Witness::new().with("q", standard::Q).with("n", n as f64).with("theta", 1.1));
            }
        }
        "check_mehler" => {
            let pts = [-2.0, -0.5, 0.5, 2.0];
            for &x in &pts {
                for &y in &pts {
                    for t in [0.2, 0.5, 0.8] {
                        out.push(Witness::new().with("x", x).with("y", y).with("t", t).with("n_terms", 50.0));
                    }
                }
            }
        }
        "check_qint_representation" => {
            for n in 0..=4 {
                out.push(std_base().with("n", n as f64).with("theta", 1.0));
            }
        }
        _ => {
            let (lam, mu, t): (&[f64], &[f64], f64) = match id {
                "check_dual_qhahn" => (&[0.4, 0.3, 0.2], &[0.32, 0.2, 0.25], 0.3),
                "check_dual_qhahn_unity" => (&[0.4, 0.3, 0.2], &[0.32, 0.24, 0.25], 0.999),
                "check_asc" | "check_asc_norm" | "check_asc_norm_alt" | "check_asc_norm_forms" => (&[0.4, 0.3], &[0.24, 0.5], 0.3),
                "check_asc_unity" => (&[0.4, 0.3], &[0.24, 0.5], 0.999),
                "check_bigqh" | "check_bigqh_norm" => (&[0.4], &[0.3], 0.3),
                "check_qbessel" | "check_qbessel_reduction" => (&[0.0], &[0.3], 0.3),
                _ => return out,
            };
            let w = Witness::new().with("q", standard::Q).with_slice("lambda", lam).with_slice("mu", mu).with("t", t);
            match id {
                "check_dual_qhahn_unity" => out.push(w.with("theta", 1.0).with("phi", 1.3)),
                "check_asc_norm_forms" => {
                    grid_cases(&w, &mut out);
                    let w = Witness::new().with("q", 0.4).with_slice("lambda", &[0.5, 0.3]).with_slice("mu", &[0.3, 0.5]).with("t", 0.35);
                    out.push(w.with("theta", 1.1).with("phi", 0.6));
                }
                _ => grid_cases(&w, &mut out),
            }
        }
    }
    out
}

/// Every selected case, in registry order; sampling does not depend on the selection.
pub fn cases(cfg: &SuiteConfig) -> Result<Vec<Case>> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::new();
    for fam in REGISTRY {
        let ws = family_witnesses(fam.id, cfg, &mut rng);
        if !cfg.selected(fam.id) {
            continue;
        }
        let tolerance = cfg.tolerance(fam, None);
        out.extend(ws.into_iter().map(|witness| Case { family: fam.id, tolerance, witness }));
    }
    Ok(out)
}

/// Apply identity-level tolerance overrides and sort by identity id.
pub fn finalize(cfg: &SuiteConfig, mut reports: Vec<CheckReport>) -> Vec<CheckReport> {
    for r in &mut reports {
        if let Some(fam) = family(r.family()) {
            let tol = cfg.tolerance(fam, Some(&r.identity_id));
            r.tolerance = tol;
            r.passed = r.observed_error <= tol;
        }
    }
    reports.sort_by(|a, b| a.identity_id.cmp(&b.identity_id));
    reports
}

/// Run the selected registry sequentially; failures are reported, not raised.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let reports = cases(cfg)?.iter().map(run_case).collect();
    Ok(finalize(cfg, reports))
}

/// Family ids of the registry.
pub fn family_ids() -> Vec<String> {
    REGISTRY.iter().map(|f| f.id.to_string()).collect()
}

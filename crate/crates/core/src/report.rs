//! Pass/fail records produced by identity checks.

use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;

/// Named numeric values sufficient to re-run a check.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Witness {
    pub entries: Vec<(String, f64)>,
}

impl Witness {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, value: f64) -> Self {
        self.entries.push((name.into(), value));
        self
    }

    pub fn with_complex(self, name: &str, z: Complex64) -> Self {
        let re = alloc::format!("{name}.re");
        let im = alloc::format!("{name}.im");
        self.with(&re, z.re).with(&im, z.im)
    }

    pub fn with_slice(mut self, name: &str, values: &[f64]) -> Self {
        for (i, &v) in values.iter().enumerate() {
            self.entries.push((alloc::format!("{name}[{i}]"), v));
        }
        self
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.entries.iter().find(|(n, _)| n == name).map(|&(_, v)| v)
    }

    pub fn get_complex(&self, name: &str) -> Option<Complex64> {
        let re = self.get(&alloc::format!("{name}.re"))?;
        let im = self.get(&alloc::format!("{name}.im"))?;
        Some(Complex64::new(re, im))
    }

    pub fn get_slice(&self, name: &str) -> Vec<f64> {
        let mut out = Vec::new();
        while let Some(v) = self.get(&alloc::format!("{name}[{}]", out.len())) {
            out.push(v);
        }
        out
    }
}

/// Outcome of one identity check.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub identity_id: String,
    pub observed_error: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub witness: Witness,
    /// Per-evaluation truncation statistics, e.g. `("lhs_terms", 37)`.
    pub diagnostics: Vec<(String, usize)>,
}

impl CheckReport {
    pub fn new(identity_id: impl Into<String>, observed_error: f64, tolerance: f64, witness: Witness) -> Self {
        CheckReport {
            identity_id: identity_id.into(),
            observed_error,
            tolerance,
            passed: observed_error <= tolerance,
            witness,
            diagnostics: Vec::new(),
        }
    }

    pub fn with_diagnostic(mut self, name: &str, terms: usize) -> Self {
        self.diagnostics.push((name.into(), terms));
        self
    }

    /// Family prefix of the identity id (the part before the first `/`).
    pub fn family(&self) -> &str {
        self.identity_id.split('/').next().unwrap_or("")
    }
}

/// Relative discrepancy `|a - b| / |b|`, falling back to absolute when `b` is 0.
pub fn rel_err(a: Complex64, b: Complex64) -> f64 {
    let d = (a - b).norm();
    let s = b.norm();
    if s == 0.0 {
        d
    } else {
        d / s
    }
}

//! The fixed resonance-free parameter point shared by every suite.

use num_complex::Complex64;

use crate::error::Result;
use crate::kernels::KernelParams;
use crate::polys::{MuParams, ParamSet};
use crate::qcore::QBase;

pub const Q: f64 = 0.5;
pub const LAMBDA: [f64; 4] = [0.4, 0.3, 0.2, 0.1];
pub const GAMMA: f64 = 0.25;
pub const DELTA: f64 = 0.15;
/// `α = ac/γ`, `β = bd/δ`.
pub const MU: [f64; 4] = [0.32, 0.2, 0.25, 0.15];
/// `β = bc/γ`, `δ = bd/β` for the `t = 1` suites.
pub const MU_UNITY: [f64; 4] = [0.32, 0.24, 0.25, 0.125];
/// Third parameter set of the multiplication law, coupled to both `λ` and `μ`.
pub const LAMBDA2: [f64; 4] = [0.5, 0.25, 0.16, 0.12];
/// Angles `θ, φ` of the 3×3 comparison grid.
pub const GRID: [f64; 3] = [0.7, 1.5, 2.4];

pub fn q() -> QBase {
    QBase::new(Q).expect("standard q is admissible")
}

pub fn lambda() -> ParamSet {
    ParamSet::new(&LAMBDA, q()).expect("standard λ is admissible")
}

pub fn mu() -> MuParams {
    MuParams::new(&MU, &lambda()).expect("standard μ is admissible")
}

pub fn mu_unity() -> MuParams {
    MuParams::for_unity(&MU_UNITY, &lambda()).expect("standard unity μ is admissible")
}

pub fn kernel_params(t: f64) -> Result<KernelParams> {
    KernelParams::new(lambda(), mu(), Complex64::new(t, 0.0))
}

/// `(θ, φ)` pairs of the comparison grid in row-major order.
pub fn grid() -> impl Iterator<Item = (f64, f64)> {
    GRID.iter().flat_map(|&th| GRID.iter().map(move |&ph| (th, ph)))
}

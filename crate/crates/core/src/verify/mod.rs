//! Quadrature and the identity-verification suite.

mod checks;
pub mod quadrature;
mod suite;

pub use checks::*;
pub use quadrature::{integrate_theta, integrate_weighted, GaussLegendre, QuadratureConfig, Weight};
pub use suite::{cases, family, family_ids, finalize, rerun, run_case, run_suite, Case, Family, SuiteConfig, REGISTRY};

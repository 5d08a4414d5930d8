//! q-special functions for nonsymmetric Askey–Wilson Poisson kernels.
//!
//! The crate is `no_std` with `alloc`. Layers, bottom-up:
//!
//! - [`qcore`]: q-shifted factorials and the `h(x; a)` product.
//! - [`qseries`]: basic hypergeometric and very-well-poised series, Jackson q-integrals.
//! - [`polys`]: Askey–Wilson polynomials and their degenerate relatives.
//! - [`kernels`]: bilinear generating functions, closed forms and direct-sum oracles.
//! - [`verify`]: quadrature and the identity-verification suite.
#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::too_many_arguments)]

extern crate alloc;

mod error;
mod math;

pub mod kernels;
pub mod polys;
pub mod qcore;
pub mod qseries;
pub mod report;
pub mod standard;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use qcore::{QBase, SeriesValue, TruncationPolicy};

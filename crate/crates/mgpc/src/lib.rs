//! Mixed generalized polynomial chaos (M-gPC) surrogate modeling.
//!
//! This crate builds cheap stochastic surrogates of expensive black-box
//! models whose uncertain inputs mix continuous and discrete (integer)
//! random variables. The pieces, bottom to top:
//!
//! * [`dist`] — the supported input distributions with exact moments,
//!   seeded sampling, and support metadata.
//! * [`basis`] — orthonormal polynomials per input via the Stieltjes
//!   three-term recurrence, assembled into a multivariate total-degree
//!   basis.
//! * [`optim`] — the small dense solvers behind the quadrature engine:
//!   nonnegative least squares, box-constrained ridge least squares, and
//!   a branch-and-bound mixed-integer quadratic solver.
//! * [`quad`] — construction of a small quadrature rule whose points are
//!   integer-valued on the discrete coordinates, by clustering
//!   initialization, hierarchical block coordinate descent, and an
//!   increase/decrease size search.
//! * [`surrogate`] — projection of model outputs onto the basis, moment
//!   extraction, sampling, and validation against direct Monte Carlo.
//! * [`models`] — the built-in analytic chip-multiprocessor speedup model
//!   and the adapter trait external simulators plug into.
//!
//! The crate is `no_std`-compatible (requires `alloc`); disable the
//! default `std` feature to use it in that mode. File formats, the CLI,
//! and subprocess adapters live in the companion `mgpc-cli` crate.
#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

mod fmath;
mod linalg;

pub mod basis;
pub mod dist;
pub mod models;
pub mod optim;
pub mod quad;
pub mod surrogate;

pub use linalg::Mat;

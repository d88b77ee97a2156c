//! Off-diagonal decay bounds for Bernstein functions of Hermitian matrices.
//!
//! The crate evaluates entrywise decay bounds for `f(A)` where `f` is a Bernstein
//! function (fractional powers `A^alpha` in particular), and checks them against a
//! dense eigendecomposition of `A` on test graphs of moderate size.
//!
//! Modules, bottom-up:
//! - [`specfun`]: gamma, incomplete gammas, erf/erfc
//! - [`quad`]: tanh-sinh quadrature on finite and semi-infinite intervals
//! - [`graphs`]: sparse symmetric matrices, generators, BFS distances, Matrix Market I/O
//! - [`densefun`]: dense eigendecomposition and matrix functions (ground truth)
//! - [`bounds`]: the decay bounds themselves
//! - [`report`]: per-column decay reports, domination checks, CSV/JSON output

pub mod bounds;
pub mod densefun;
pub mod error;
pub mod graphs;
pub mod quad;
pub mod report;
pub mod specfun;

pub use error::{Error, Result};

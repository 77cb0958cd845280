//! Complete interpolating sequences for the Gaussian shift-invariant space
//! `V²_c = { Σ c_n e^{-c(x-n)²} : (c_n) ∈ ℓ² }`, `c = a + ib`, `a > 0`.
//!
//! The crate is organised around four modules:
//!
//! * [`lattice`]: real node sequences, separation, Beurling densities and the
//!   averaged-perturbation (Avdonin-type) classifier.
//! * [`gauss_space`]: evaluation, collocation matrices, interpolation solves,
//!   empirical frame/Riesz bounds and the Hilbert–Schmidt off-diagonal blocks.
//! * [`fock`]: the small Fock space `𝓕_a` side of the equivalence, carried in
//!   log-polar form so that weights like `e^{2a(n+1)²}` never overflow.
//! * [`experiments`]: reproducible scenario runner behind the `gauss-cis` CLI.

// `!(x > 0.0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod experiments;
pub mod fock;
pub mod gauss_space;
pub mod lattice;
pub mod numeric;
pub mod param;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use param::GaussianParam;

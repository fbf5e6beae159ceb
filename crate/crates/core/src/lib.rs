//! Generalized sampling in one dimension.
//!
//! Recovers the coefficients of a function in a chosen reconstruction basis
//! (Haar wavelets, Legendre polynomials, or complex exponentials) from finitely
//! many samples of its Fourier transform. The reconstruction solves a least
//! squares problem on an uneven `m × n` section of the infinite cross-Gramian
//! `U`, `u_ij = (Fφ_j)(ρ(i))`, with `m ≥ n` chosen so that the section is
//! uniformly well conditioned.
//!
//! The crate is `no_std` and only needs `alloc`. Modules:
//!
//! * [`numerics`]: dense complex matrices, Hermitian eigenvalues, QR, SVD-free norms.
//! * [`bases`]: basis families with pointwise and Fourier-domain evaluation.
//! * [`sections`]: the sample ordering `ρ` and assembly of finite sections of `U`.
//! * [`solver`]: uneven and consistent reconstruction, baselines, sample synthesis.
//! * [`constants`]: inverse norms, `K_{n,m}` brackets, Gram residuals and sample thresholds.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bases;
pub mod constants;
mod error;
pub mod numerics;
pub mod quadrature;
pub mod sections;
pub mod solver;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;

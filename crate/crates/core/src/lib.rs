//! The tenth-order mock theta functions φ, ψ, X, χ and their vector-valued forms.
//!
//! The crate has no standard-library dependency; it needs only `alloc`.
//!
//! * [`qexact`]: exact rational q-series on a 1/80 exponent grid, Hecke-type
//!   double sums and the identities relating them to the mock theta functions.
//! * [`special`]: error functions, branch-fixed radicals, theta constants and
//!   a Gauss–Legendre integrator for decaying integrands.
//! * [`zwegers`]: indefinite theta series of a rank-2 lattice of signature
//!   (1,1), unary theta series `g_{s,t}` and `R_{s,t}`, and the cone
//!   decomposition relating them.
//! * [`tenth`]: the six-component vectors `F`, their completions `H`,
//!   shadows `g`, period integrals `G`, Mordell vectors `J` and the constant
//!   matrices `M`, `T`.
//! * [`lemmas`] and [`congruence`]: partial-fraction and Gaussian-integral
//!   lemmas, and the `Γ_0(2)`/`Γ_0(4)` generator algebra.
#![no_std]
// preconditions are written `!(x > 0.0)` so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;

pub mod congruence;
pub mod error;
pub mod lemmas;
pub mod qexact;
pub mod special;
pub mod tenth;
pub mod zwegers;

pub use error::{Error, Result};
pub use num_complex::Complex64;

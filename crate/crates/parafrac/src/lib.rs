//! Numerical realizations of the parabolic Radon transform, the fractional
//! integrals generated by it, and their explicit Fourier multipliers.
//!
//! The library has two independent evaluation routes for the same operator
//! family: quadrature in physical space ([`spatial`], [`transversal`]) and
//! multiplication by closed-form symbols on the frequency side ([`spectral`]).
//! [`identities`] cross-checks the two routes against the operator calculus
//! (duality, semigroup, factorization, composition laws), and [`normlab`]
//! handles the sharp `L^p`-`L^q` exponent line together with the scaling
//! experiments that pin it down.
//!
//! Conventions, fixed once here and inherited everywhere:
//!
//! * The forward Fourier transform uses the `e^{+i x·ξ}` kernel; the inverse
//!   carries `(2π)^{-n}`. See [`fourier`] for the discrete phase corrections.
//! * Complex powers of `±iξ` are always evaluated through the exponential
//!   branch forms in [`spectral::branch_power`]; generic `powc` is never used
//!   on the singular axis.
//! * `x = (x', x_n)`: the last axis is the distinguished one, carrying the
//!   paraboloid `y_n = |y'|²` and the singular plane `ξ_n = 0`.

pub mod error;
pub mod field;
pub mod fourier;
pub mod identities;
pub mod io;
pub mod normlab;
pub mod quadrature;
pub mod spatial;
pub mod special;
pub mod spectral;
pub mod suite;
pub mod testfn;
pub mod transversal;

pub use error::Error;
pub use field::{Domain, FracOrder, Grid, GridSpec, SampledField};
pub use testfn::TestFunction;

/// Library-wide result type.
pub type Result<T> = std::result::Result<T, Error>;

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

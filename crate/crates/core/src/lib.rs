//! Radial bi-harmonic diffeomorphisms between circular annuli.
//!
//! A radial map `f(r e^{iθ}) = g(r) e^{i(θ+φ)}` of the annulus `1 < |z| < t`
//! is bi-harmonic exactly when `g(r) = d/r + a r + b r log r + c r³`. This
//! crate builds such maps from their boundary data, evaluates the cardinal
//! basis that splits `g` into its four boundary functionals, and computes the
//! critical target moduli below which no radial bi-harmonic diffeomorphism
//! onto `1 < |w| < s` exists:
//!
//! * [`bounds::nitsche_bound`]: the harmonic bound `(1 + t²) / 2t`;
//! * [`bounds::sigma0`]: the homogeneous (zero boundary speed) bound;
//! * [`bounds::sigma_minimax`] / [`bounds::sigma_bisection`]: the general
//!   bound, computed by two independent solvers.
//!
//! The [`verify`] module certifies the analytic inequalities and limits behind
//! these constants on sample grids and keeps a registry of printed formulas
//! whose evaluation contradicts the construction.

pub mod bounds;
pub mod cli;
mod error;
pub mod kernel;
pub mod radial;
pub mod search;
pub mod verify;

pub use error::{Error, Result};
pub use kernel::{BasisEval, BasisKernel, KernelConstants, Modulus, RatioEval};
pub use radial::{BoundarySpec, MonotonicityReport, RadialCoefficients};

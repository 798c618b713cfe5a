//! Cardinal basis of radial bi-harmonic profiles on `[1, t]`.
//!
//! Every profile `g(r) = d/r + a r + b r log r + c r³` with `g(1) = 1`,
//! `g(t) = s`, `g'(1) = x`, `g'(t) = y` decomposes as
//! `g = A + s B + x U + y V`, where each of `A`, `B`, `U`, `V` carries exactly
//! one of the four boundary functionals. The quotients `-A'/B'`, `-U'/B'`,
//! `-V'/B'` drive the critical-modulus problems in [`crate::bounds`].

mod basis;
mod numerator;
mod ratio;

pub use basis::{eval_basis, eval_basis_derivatives, BasisEval, BasisKernel, Cardinal};
pub use numerator::LogPoly;
pub use ratio::{endpoint_limits, ratio_functions, EndpointLimits, RatioEval};

use crate::{Error, Result};

/// Smallest admissible distance of `t` from 1.
///
/// `Λ(t)` behaves like `(2/3)(t - 1)³` near `t = 1` and every basis function
/// divides by it.
pub const MODULUS_GUARD: f64 = 1e-3;

/// Half-width of the band around `r = 1` and `r = t` where the ratio
/// functions return their endpoint limits instead of `0/0` quotients.
pub const ENDPOINT_BAND: f64 = 1e-8;

/// Outer radius `t` of the normalized domain annulus `1 < |z| < t`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Modulus(f64);

impl Modulus {
    pub fn new(t: f64) -> Result<Self> {
        if t.is_finite() && t >= 1.0 + MODULUS_GUARD {
            Ok(Modulus(t))
        } else {
            Err(Error::domain("t", t, "t >= 1 + 1e-3"))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Modulus {
    type Error = Error;

    fn try_from(t: f64) -> Result<Self> {
        Modulus::new(t)
    }
}

/// The three recurring denominators of the basis and its endpoint limits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelConstants {
    /// `Λ(t) = 1 - t² + (1 + t²) log t`, common denominator of the basis.
    pub lambda: f64,
    /// `Δ(t) = 2 - 2t² + log t + 3t⁴ log t`, denominator of the limits at `r = t`.
    pub delta: f64,
    /// `Θ(t) = 1 - 4t² + 3t⁴ - 4t² log t`, denominator of the limits at `r = 1`.
    pub theta: f64,
}

impl KernelConstants {
    /// True when all three denominators are strictly positive.
    pub fn all_positive(&self) -> bool {
        self.lambda > 0.0 && self.delta > 0.0 && self.theta > 0.0
    }
}

pub fn kernel_constants(t: Modulus) -> KernelConstants {
    let t = t.get();
    let t2 = t * t;
    let l = t.ln();
    KernelConstants {
        lambda: 1.0 - t2 + (1.0 + t2) * l,
        delta: 2.0 - 2.0 * t2 + l + 3.0 * t2 * t2 * l,
        theta: 1.0 - 4.0 * t2 + 3.0 * t2 * t2 - 4.0 * t2 * l,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn guard_rejects_thin_annuli() {
        assert!(Modulus::new(1.0005).is_err());
        assert!(Modulus::new(f64::NAN).is_err());
        assert!(Modulus::new(0.5).is_err());
        assert!(Modulus::new(1.001).is_ok());
    }

    #[test]
    fn constants_at_two() {
        let k = kernel_constants(Modulus::new(2.0).unwrap());
        assert_abs_diff_eq!(k.lambda, 0.465_735_902_799_726_5, epsilon = 1e-12);
        assert_abs_diff_eq!(k.delta, 27.964_211_847_437_32, epsilon = 1e-10);
        assert_abs_diff_eq!(k.theta, 21.909_645_111_040_875, epsilon = 1e-10);
        assert!(k.all_positive());
    }

    #[test]
    fn lambda_cubic_onset_near_one() {
        // Λ(t) ~ (2/3)(t - 1)³; high-precision value at t = 1.001 is 6.66333566e-10.
        let k = kernel_constants(Modulus::new(1.001).unwrap());
        let series = 2.0 / 3.0 * 1e-9;
        assert!((k.lambda - series).abs() / series < 0.05);
        assert!((k.lambda - 6.663_335_664_834_856e-10).abs() / 6.66e-10 < 1e-6);
    }

    #[test]
    fn denominators_positive_on_test_grid() {
        for &t in &[1.001, 1.01, 1.1, 1.25, 1.5, 2.0, 2.5, 3.0, 5.0, 10.0, 50.0] {
            let k = kernel_constants(Modulus::new(t).unwrap());
            assert!(k.all_positive(), "t = {t}: {k:?}");
        }
    }
}

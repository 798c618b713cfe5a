//! Critical moduli for radial maps of `1 < |z| < t` onto `1 < |w| < s`.
//!
//! `σ(t)` is computed twice: [`sigma_minimax`] minimizes the convex function
//! `F(x, y) = sup_r [-A'/B' - x U'/B' - y V'/B']` over boundary speeds, and
//! [`sigma_bisection`] bisects on `s` using the semi-infinite feasibility test
//! in [`feasible`]. The two share only the basis kernel.

mod critical;
mod feasibility;
mod inner;
mod minimax;

pub use critical::{critical_homogeneous_map, critical_map, CriticalMap};
pub use feasibility::{feasible, sigma_bisection, FeasibilityResult, FEASIBILITY_TOL};
pub use inner::{sup_inner, RatioTable, SupResult, SUP_GRID};
pub use minimax::{sigma_dual, sigma_minimax, DualSigma, MinimaxSolution, SolveStatus};

use crate::kernel::{kernel_constants, Modulus};
use crate::{Error, Result};

/// Harmonic bound `n(t) = (1 + t²) / 2t`.
pub fn nitsche_bound(t: f64) -> Result<f64> {
    if !(t >= 1.0 && t.is_finite()) {
        return Err(Error::domain("t", t, "t >= 1"));
    }
    Ok((1.0 + t * t) / (2.0 * t))
}

/// Smallest target modulus reachable with zero boundary speeds.
pub fn sigma0(t: Modulus) -> f64 {
    let delta = kernel_constants(t).delta;
    let t = t.get();
    let t2 = t * t;
    t * (3.0 - 4.0 * t2 + t2 * t2 + 4.0 * t2 * t.ln()) / delta
}

/// Radius in `[1, t]` where `U' = V'`.
pub fn rho(t: f64) -> Result<f64> {
    if !(t >= 1.0 && t.is_finite()) {
        return Err(Error::domain("t", t, "t >= 1"));
    }
    let t2 = t * t;
    Ok(((1.0 + t2 + (1.0 + 14.0 * t2 + t2 * t2).sqrt()) / 6.0).sqrt())
}

/// Midpoint radius `(1 + t) / 2`.
pub fn tau(t: f64) -> Result<f64> {
    if !(t >= 1.0 && t.is_finite()) {
        return Err(Error::domain("t", t, "t >= 1"));
    }
    Ok(0.5 * (1.0 + t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::BasisKernel;
    use approx::assert_abs_diff_eq;

    #[test]
    fn nitsche_values() {
        assert_eq!(nitsche_bound(1.0).unwrap(), 1.0);
        assert_eq!(nitsche_bound(2.0).unwrap(), 1.25);
        assert_abs_diff_eq!(nitsche_bound(3.0).unwrap(), 1.666_666_666_666_666_7, epsilon = 1e-15);
        assert!(nitsche_bound(0.9).is_err());
    }

    #[test]
    fn sigma0_values() {
        let s2 = sigma0(Modulus::new(2.0).unwrap());
        let s3 = sigma0(Modulus::new(3.0).unwrap());
        assert_abs_diff_eq!(s2, 1.007_741_964_324_332_3, epsilon = 1e-13);
        assert_abs_diff_eq!(s3, 1.042_008_529_695_065, epsilon = 1e-13);
        assert!((s2 - 1.0077424).abs() < 1e-6);
        assert!((s3 - 1.042008).abs() < 1e-5);
        assert!(s2 < nitsche_bound(2.0).unwrap());
    }

    #[test]
    fn sigma0_is_second_derivative_quotient() {
        for &t in &[1.1, 1.5, 2.0, 3.0, 5.0] {
            let m = Modulus::new(t).unwrap();
            let e = BasisKernel::new(m).eval(t);
            let lhopital = -e.second.a / e.second.b;
            assert!(((sigma0(m) - lhopital) / lhopital).abs() < 1e-6);
        }
    }

    #[test]
    fn rho_and_tau() {
        assert_eq!(rho(1.0).unwrap(), 1.0);
        assert_eq!(tau(1.0).unwrap(), 1.0);
        assert_abs_diff_eq!(rho(2.0).unwrap(), 1.502_442_663_649_073, epsilon = 1e-12);
        assert_abs_diff_eq!(rho(1.5).unwrap(), 1.250_254_996_395_110_8, epsilon = 1e-12);
        assert_eq!(tau(2.0).unwrap(), 1.5);
        for &t in &[1.01, 1.1, 1.5, 2.0, 3.0, 7.0] {
            let p = rho(t).unwrap();
            let back = p * (3.0 * p * p - 1.0).sqrt() / (1.0 + p * p).sqrt();
            assert!((back - t).abs() < 1e-10);
            assert!(p > tau(t).unwrap());
        }
    }

    #[test]
    fn rho_is_root_of_speed_difference() {
        let m = Modulus::new(2.0).unwrap();
        let d = BasisKernel::new(m).first(rho(2.0).unwrap());
        assert!((d.u - d.v).abs() < 1e-8);
    }
}

use serde::Serialize;

use super::minimax::{sigma_minimax, MinimaxSolution, SolveStatus};
use super::sigma0;
use crate::kernel::Modulus;
use crate::radial::{monotonicity_report, solve_coefficients, BoundarySpec, MonotonicityReport, RadialCoefficients};
use crate::search::golden_section_min;
use crate::{Error, Result};

/// Map onto `1 < |w| < σ₀(t)` with zero boundary speeds.
pub fn critical_homogeneous_map(t: Modulus) -> Result<RadialCoefficients> {
    solve_coefficients(&BoundarySpec::new(t.get(), sigma0(t), 0.0, 0.0)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalMap {
    pub coefficients: RadialCoefficients,
    pub solution: MinimaxSolution,
    pub monotonicity: MonotonicityReport,
    /// Interior local minimum of `g'` next to the active radius of the
    /// minimax problem. With a zero inner speed `g'(1) = 0` ties with it.
    pub touch_r: f64,
    pub touch_gprime: f64,
}

/// Extremal map at `s = σ(t)` with the optimal boundary speeds. A degenerate
/// optimum still yields a map; the status is carried in `solution`.
pub fn critical_map(t: Modulus, tol: f64) -> Result<CriticalMap> {
    let solution = sigma_minimax(t, tol)?;
    if solution.status == SolveStatus::MaxIter {
        return Err(Error::NotConverged {
            solver: "sigma_minimax",
            iterations: solution.iterations,
        });
    }
    let spec = BoundarySpec::new(t.get(), solution.sigma, solution.x_star, solution.y_star)?;
    let coefficients = solve_coefficients(&spec)?;
    let monotonicity = monotonicity_report(&coefficients, t.get())?;
    let half = 0.05 * (t.get() - 1.0);
    let lo = (solution.r_star - half).max(1.0);
    let hi = (solution.r_star + half).min(t.get());
    let (touch_r, touch_gprime, _) = golden_section_min(|r| coefficients.g_prime(r), lo, hi, 1e-12, 200);
    Ok(CriticalMap {
        coefficients,
        solution,
        monotonicity,
        touch_r,
        touch_gprime,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn homogeneous_map_touches_zero_at_outer_edge() {
        for &t in &[1.5, 2.0, 3.0] {
            let m = Modulus::new(t).unwrap();
            let c = critical_homogeneous_map(m).unwrap();
            assert!((c.g(1.0) - 1.0).abs() < 1e-12);
            assert!((c.g(t) - sigma0(m)).abs() < 1e-12);
            assert!(c.g_prime(1.0).abs() < 1e-10 && c.g_prime(t).abs() < 1e-10);
            let rep = monotonicity_report(&c, t).unwrap();
            assert!(rep.min_gprime > -1e-10);
        }
    }

    #[test]
    fn critical_map_at_two() {
        let cm = critical_map(Modulus::new(2.0).unwrap(), 1e-10).unwrap();
        let c = cm.coefficients;
        assert!((c.g(2.0) - cm.solution.sigma).abs() < 1e-12);
        assert!(c.g_prime(2.0) > 0.0);
        assert!(cm.monotonicity.min_gprime > -1e-8 && cm.monotonicity.min_gprime < 1e-6);
        let r = cm.touch_r;
        assert!(r > 1.0 + 1e-3 && r < 2.0 - 1e-3, "{r}");
        assert!(cm.touch_gprime.abs() < 1e-8);
        assert_eq!(cm.coefficients.g_prime(1.0).abs() < 1e-12, cm.solution.x_star == 0.0);
    }
}

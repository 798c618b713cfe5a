use std::cell::Cell;

use serde::Serialize;

use super::feasibility::sigma_bisection;
use super::inner::{RatioTable, SUP_GRID};
use super::{rho, sigma0};
use crate::kernel::Modulus;
use crate::radial::{monotonicity_report, solve_coefficients, BoundarySpec};
use crate::search::golden_section_min;
use crate::{Error, Result};

const MAX_ITER: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Converged,
    MaxIter,
    /// Optimum lies on an edge of the speed quadrant.
    Degenerate,
}

impl SolveStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveStatus::Converged => "converged",
            SolveStatus::MaxIter => "max_iter",
            SolveStatus::Degenerate => "degenerate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MinimaxSolution {
    pub t: f64,
    pub sigma: f64,
    pub x_star: f64,
    pub y_star: f64,
    pub r_star: f64,
    pub iterations: usize,
    pub status: SolveStatus,
    /// `min g'` of the map solved at `(σ, x*, y*)`; zero up to solver error.
    pub certificate: f64,
}

/// Upper bound on `x + y` at any minimizer. At `ρ` the speed ratios coincide
/// and are positive, so `F(x, y) >= ra(ρ) + (x + y) ru(ρ)`, while `F(0, 0) = σ₀`.
fn speed_budget(table: &RatioTable, t: Modulus) -> f64 {
    let p = rho(t.get()).unwrap_or(1.0);
    let q = table.kernel().ratios(p);
    let budget = (sigma0(t) - q.ra) / q.ru;
    if budget.is_finite() && budget > 0.0 {
        budget
    } else {
        log::warn!("speed budget at t = {} not positive, falling back to 1", t.get());
        1.0
    }
}

/// Golden-section on `[0, hi]` that also compares against the left edge, so
/// minima sitting exactly on the boundary come back as `0`.
fn edge_aware_min(f: impl Fn(f64) -> f64, hi: f64, tol: f64, iters: &Cell<usize>, capped: &Cell<bool>) -> (f64, f64) {
    let at_zero = f(0.0);
    if hi <= tol {
        return (0.0, at_zero);
    }
    let (x, fx, n) = golden_section_min(&f, 0.0, hi, tol, MAX_ITER);
    iters.set(iters.get() + n);
    capped.set(capped.get() || n >= MAX_ITER);
    if at_zero <= fx {
        (0.0, at_zero)
    } else {
        (x, fx)
    }
}

/// `σ(t) = min_{x, y >= 0} sup_r Φ(r; x, y)` by nested golden-section search
/// over the triangle `x + y <= budget`. `F` is convex, so each slice is
/// unimodal.
pub fn sigma_minimax(t: Modulus, tol: f64) -> Result<MinimaxSolution> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::domain("tol", tol, "tol > 0"));
    }
    let table = RatioTable::new(t, SUP_GRID);
    let budget = speed_budget(&table, t);
    let step = tol.max(1e-14) * budget.max(1.0);

    let iterations = Cell::new(0);
    let capped = Cell::new(false);
    let inner = |x: f64| edge_aware_min(|y| table.sup(x, y).value, budget - x, step, &iterations, &capped);
    let (x_star, _) = edge_aware_min(|x| inner(x).1, budget, step, &iterations, &capped);
    let (y_star, _) = inner(x_star);
    let (iterations, capped) = (iterations.get(), capped.get());
    let sup = table.sup(x_star, y_star);

    let certificate = solve_coefficients(&BoundarySpec::new(t.get(), sup.value, x_star, y_star)?)
        .and_then(|c| monotonicity_report(&c, t.get()))
        .map(|m| m.min_gprime)
        .unwrap_or(f64::NAN);

    let status = if capped {
        SolveStatus::MaxIter
    } else if x_star <= step || y_star <= step {
        SolveStatus::Degenerate
    } else {
        SolveStatus::Converged
    };
    Ok(MinimaxSolution {
        t: t.get(),
        sigma: sup.value,
        x_star,
        y_star,
        r_star: sup.r_star,
        iterations,
        status,
        certificate,
    })
}

/// Both solvers side by side; `gap` is the reported uncertainty on `σ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DualSigma {
    pub minimax: MinimaxSolution,
    pub bisection: f64,
    pub gap: f64,
}

pub fn sigma_dual(t: Modulus, tol: f64) -> Result<DualSigma> {
    let minimax = sigma_minimax(t, tol)?;
    let bisection = sigma_bisection(t, tol)?;
    Ok(DualSigma {
        minimax,
        bisection,
        gap: (minimax.sigma - bisection).abs(),
    })
}

use serde::Serialize;

use crate::kernel::{BasisKernel, EndpointLimits, Modulus};
use crate::search::{golden_section_max, local_maxima, log_grid};
use crate::{Error, Result};

/// Seed grid size for the inner supremum.
pub const SUP_GRID: usize = 2048;

/// `c · v` with the convention `0 · (±∞) = 0`.
#[inline]
fn weighted(c: f64, v: f64) -> f64 {
    if c == 0.0 {
        0.0
    } else {
        c * v
    }
}

/// `Φ(r) = ra + x ru + y rv`.
#[inline]
pub(crate) fn affine_ratio(ra: f64, ru: f64, rv: f64, x: f64, y: f64) -> f64 {
    ra + weighted(x, ru) + weighted(y, rv)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SupResult {
    pub value: f64,
    pub r_star: f64,
}

/// Ratio functions tabulated on a log-spaced grid over `[1, t]`, endpoints
/// included as limits.
#[derive(Debug, Clone)]
pub struct RatioTable {
    kernel: BasisKernel,
    limits: EndpointLimits,
    r: Vec<f64>,
    ra: Vec<f64>,
    ru: Vec<f64>,
    rv: Vec<f64>,
}

impl RatioTable {
    pub fn new(t: Modulus, n: usize) -> Self {
        let kernel = BasisKernel::new(t);
        let limits = EndpointLimits::new(t);
        let r = log_grid(1.0, t.get(), n.max(3));
        let q: Vec<_> = r.iter().map(|&r| kernel.ratios_with(r, &limits)).collect();
        RatioTable {
            ra: q.iter().map(|e| e.ra).collect(),
            ru: q.iter().map(|e| e.ru).collect(),
            rv: q.iter().map(|e| e.rv).collect(),
            kernel,
            limits,
            r,
        }
    }

    pub fn kernel(&self) -> &BasisKernel {
        &self.kernel
    }

    pub fn t(&self) -> f64 {
        self.kernel.t()
    }

    pub fn phi(&self, r: f64, x: f64, y: f64) -> f64 {
        let q = self.kernel.ratios_with(r, &self.limits);
        affine_ratio(q.ra, q.ru, q.rv, x, y)
    }

    /// `sup_{1 <= r <= t} Φ(r)`; every discrete local maximum of the grid is
    /// refined by golden-section search over its two neighbouring cells.
    pub fn sup(&self, x: f64, y: f64) -> SupResult {
        let n = self.r.len();
        let values: Vec<f64> = (0..n)
            .map(|i| affine_ratio(self.ra[i], self.ru[i], self.rv[i], x, y))
            .collect();
        let mut best = SupResult {
            value: f64::NEG_INFINITY,
            r_star: self.r[0],
        };
        for i in local_maxima(&values) {
            if values[i] > best.value {
                best = SupResult {
                    value: values[i],
                    r_star: self.r[i],
                };
            }
            let lo = self.r[i.saturating_sub(1)];
            let hi = self.r[(i + 1).min(n - 1)];
            let tol = 1e-13 * self.t();
            let (r, v, _) = golden_section_max(|r| self.phi(r, x, y), lo, hi, tol, 200);
            if v > best.value {
                best = SupResult { value: v, r_star: r };
            }
        }
        best
    }
}

pub fn sup_inner(t: Modulus, x: f64, y: f64) -> Result<SupResult> {
    if !(x >= 0.0 && x.is_finite()) {
        return Err(Error::domain("x", x, "x >= 0"));
    }
    if !(y >= 0.0 && y.is_finite()) {
        return Err(Error::domain("y", y, "y >= 0"));
    }
    Ok(RatioTable::new(t, SUP_GRID).sup(x, y))
}

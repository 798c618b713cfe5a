use serde::Serialize;

use super::basis::BasisKernel;
use super::{kernel_constants, Modulus, ENDPOINT_BAND};
use crate::Result;

/// The three quotients `-A'/B'`, `-U'/B'`, `-V'/B'` at one radius.
///
/// Values are extended reals: `-∞` appears only for `ru` at `r = 1` and `rv`
/// at `r = t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioEval {
    pub r: f64,
    pub t: f64,
    pub ra: f64,
    pub ru: f64,
    pub rv: f64,
    /// Set when `r` fell inside the endpoint band and limits were returned.
    pub at_limit: bool,
}

/// One-sided limits of the ratio functions at `r → 1⁺` and `r → t⁻`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EndpointLimits {
    pub ra_inner: f64,
    pub ru_inner: f64,
    pub rv_inner: f64,
    pub ra_outer: f64,
    pub ru_outer: f64,
    pub rv_outer: f64,
}

impl EndpointLimits {
    pub fn new(t: Modulus) -> Self {
        let k = kernel_constants(t);
        let t = t.get();
        let t2 = t * t;
        let l = t.ln();
        // t(t⁴ - 1 - 4t² log t) is shared by -U'/B' at t and -V'/B' at 1.
        let speed = t * (t2 * t2 - 1.0 - 4.0 * t2 * l);
        EndpointLimits {
            ra_inner: -t * (-2.0 * t2 * (t2 - 1.0) + (3.0 + t2 * t2) * l) / k.theta,
            ru_inner: f64::NEG_INFINITY,
            rv_inner: speed / k.theta,
            ra_outer: t * (3.0 - 4.0 * t2 + t2 * t2 + 4.0 * t2 * l) / k.delta,
            ru_outer: speed / k.delta,
            rv_outer: f64::NEG_INFINITY,
        }
    }
}

pub fn endpoint_limits(t: Modulus) -> EndpointLimits {
    EndpointLimits::new(t)
}

impl BasisKernel {
    /// Ratio functions with endpoint limits substituted inside the band.
    pub fn ratios_with(&self, r: f64, limits: &EndpointLimits) -> RatioEval {
        let t = self.t();
        if r - 1.0 <= ENDPOINT_BAND {
            return RatioEval {
                r,
                t,
                ra: limits.ra_inner,
                ru: limits.ru_inner,
                rv: limits.rv_inner,
                at_limit: true,
            };
        }
        if t - r <= ENDPOINT_BAND {
            return RatioEval {
                r,
                t,
                ra: limits.ra_outer,
                ru: limits.ru_outer,
                rv: limits.rv_outer,
                at_limit: true,
            };
        }
        let d = self.first(r);
        RatioEval {
            r,
            t,
            ra: -d.a / d.b,
            ru: -d.u / d.b,
            rv: -d.v / d.b,
            at_limit: false,
        }
    }

    pub fn ratios(&self, r: f64) -> RatioEval {
        self.ratios_with(r, &EndpointLimits::new(self.modulus()))
    }
}

pub fn ratio_functions(r: f64, t: Modulus) -> Result<RatioEval> {
    let kernel = BasisKernel::new(t);
    kernel.check_radius(r)?;
    Ok(kernel.ratios(r))
}

use super::{check_samples, moduli, Deviation, VerificationReport};
use crate::bounds::sigma0;
use crate::kernel::{BasisKernel, Cardinal, EndpointLimits};
use crate::Result;

/// Finite one-sided limits against Richardson-extrapolated ratio samples.
pub fn check_endpoint_limits(t_grid: &[f64]) -> Result<VerificationReport> {
    let mut d = Deviation::new("endpoint_limits", 1e-4);
    for m in moduli(t_grid)? {
        let t = m.get();
        let k = BasisKernel::new(m);
        let lim = EndpointLimits::new(m);
        let h = 1e-3 * (t - 1.0);
        let richardson = |f: &dyn Fn(f64) -> f64| 2.0 * f(0.5 * h) - f(h);
        let cases: [(f64, f64, f64); 4] = [
            (t, lim.ra_outer, richardson(&|e| k.ratios(t - e).ra)),
            (t, lim.ru_outer, richardson(&|e| k.ratios(t - e).ru)),
            (1.0, lim.ra_inner, richardson(&|e| k.ratios(1.0 + e).ra)),
            (1.0, lim.rv_inner, richardson(&|e| k.ratios(1.0 + e).rv)),
        ];
        for (r, closed, extrapolated) in cases {
            d.push(r, t, (extrapolated - closed) / closed.abs().max(1.0));
        }
    }
    Ok(d.finish())
}

/// Distance from the endpoint used to probe the divergent ratios.
pub const DIVERGENCE_PROBE: f64 = 1e-7;

/// `-U'/B'` at `1⁺` and `-V'/B'` at `t⁻` blow up like `1/δ`. Checks that
/// `δ · ratio` at the probe distance matches the leading rate `-1/B''(1)` and
/// `1/B''(t)` (both negative) to 1e-3.
pub fn check_endpoint_divergence(t_grid: &[f64]) -> Result<VerificationReport> {
    let mut d = Deviation::new("endpoint_divergence", 1e-3);
    let delta = DIVERGENCE_PROBE;
    for m in moduli(t_grid)? {
        let t = m.get();
        let k = BasisKernel::new(m);
        let inner_rate = -1.0 / k.eval(1.0).second.b;
        let outer_rate = 1.0 / k.eval(t).second.b;
        let inner = delta * k.ratios(1.0 + delta).ru;
        let outer = delta * k.ratios(t - delta).rv;
        d.push(1.0 + delta, t, (inner - inner_rate) / inner_rate);
        d.push(t - delta, t, (outer - outer_rate) / outer_rate);
        if !(inner_rate < 0.0 && outer_rate < 0.0) {
            d.push(f64::NAN, t, f64::NAN);
        }
    }
    Ok(d.finish())
}

/// Sixteen cardinal conditions and `A + tB + U + V = r` on an `n`-point grid.
pub fn check_cardinal_and_identity(t_grid: &[f64], n: usize) -> Result<VerificationReport> {
    check_samples(n)?;
    let mut d = Deviation::new("cardinal_and_identity", 1e-9);
    for m in moduli(t_grid)? {
        let t = m.get();
        let k = BasisKernel::new(m);
        let expect = |r: f64| -> (Cardinal<f64>, Cardinal<f64>) {
            let one = |a, b, u, v| Cardinal { a, b, u, v };
            if r == 1.0 {
                (one(1.0, 0.0, 0.0, 0.0), one(0.0, 0.0, 1.0, 0.0))
            } else {
                (one(0.0, 1.0, 0.0, 0.0), one(0.0, 0.0, 0.0, 1.0))
            }
        };
        for r in [1.0, t] {
            let (v_want, d_want) = expect(r);
            let (v, dv) = (k.values(r), k.first(r));
            for (got, want) in v.as_array().into_iter().zip(v_want.as_array()) {
                d.push(r, t, got - want);
            }
            for (got, want) in dv.as_array().into_iter().zip(d_want.as_array()) {
                d.push(r, t, got - want);
            }
        }
        for i in 0..n {
            let r = 1.0 + (t - 1.0) * i as f64 / (n - 1).max(1) as f64;
            let v = k.values(r);
            d.push(r, t, v.a + t * v.b + v.u + v.v - r);
        }
    }
    Ok(d.finish())
}

fn richardson_first(f: &impl Fn(f64) -> f64, r: f64, h: f64) -> f64 {
    let c = |h: f64| (f(r + h) - f(r - h)) / (2.0 * h);
    (4.0 * c(0.5 * h) - c(h)) / 3.0
}

fn richardson_second(f: &impl Fn(f64) -> f64, r: f64, h: f64) -> f64 {
    let c = |h: f64| (f(r + h) - 2.0 * f(r) + f(r - h)) / (h * h);
    (4.0 * c(0.5 * h) - c(h)) / 3.0
}

/// Analytic first and second derivatives against Richardson-extrapolated
/// central differences of the factored closed forms, relative to
/// `max(1, |f|)`. The closed forms extend past the endpoints, so the stencil
/// may straddle them.
pub fn finite_difference_audit(t_grid: &[f64]) -> Result<VerificationReport> {
    let mut d = Deviation::new("finite_difference_audit", 1e-6);
    for m in moduli(t_grid)? {
        let t = m.get();
        let k = BasisKernel::new(m);
        let h = 1e-2 * (t - 1.0);
        for i in 0..=8 {
            let r = 1.0 + (t - 1.0) * i as f64 / 8.0;
            let e = k.eval(r);
            let comps: [fn(&Cardinal<f64>) -> f64; 4] = [|c| c.a, |c| c.b, |c| c.u, |c| c.v];
            for pick in comps {
                let f = |q: f64| pick(&k.values(q));
                let (d1, d2) = (pick(&e.first), pick(&e.second));
                d.push(r, t, (richardson_first(&f, r, h) - d1) / d1.abs().max(1.0));
                d.push(r, t, (richardson_second(&f, r, 2.0 * h) - d2) / d2.abs().max(1.0));
            }
        }
    }
    Ok(d.finish())
}

/// Closed-form `σ₀(t)` against `-A''(t)/B''(t)`, relative.
pub fn check_sigma0_lhopital(t_grid: &[f64]) -> Result<VerificationReport> {
    let mut d = Deviation::new("sigma0_lhopital", 1e-6);
    for m in moduli(t_grid)? {
        let t = m.get();
        let e = BasisKernel::new(m).eval(t);
        let s = sigma0(m);
        d.push(t, t, (s + e.second.a / e.second.b) / s);
    }
    Ok(d.finish())
}

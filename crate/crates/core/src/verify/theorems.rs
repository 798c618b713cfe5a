use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{moduli, Deviation, Margin, VerificationReport};
use crate::bounds::{critical_homogeneous_map, critical_map, nitsche_bound, sigma0, sigma_dual};
use crate::kernel::Modulus;
use crate::radial::{
    biharmonic_residual, finite_difference_laplacian, laplacian_coefficients, monotonicity_report, RadialCoefficients,
};
use crate::Result;

/// `σ₀(t) < n(t)` on `samples` points of `(1.001, max(3, t_max)]`.
pub fn check_nitsche_ordering(t_grid: &[f64], samples: usize) -> Result<VerificationReport> {
    let ts = moduli(t_grid)?;
    let hi = ts.iter().map(|t| t.get()).fold(3.0, f64::max);
    let lo = 1.001;
    let sweep = (1..=samples).map(|i| lo + (hi - lo) * i as f64 / samples as f64);
    let mut m = Margin::new("nitsche_ordering");
    for t in sweep.chain(ts.iter().map(|t| t.get())) {
        let mt = Modulus::new(t)?;
        m.push(f64::NAN, t, nitsche_bound(t)? - sigma0(mt));
    }
    Ok(m.finish())
}

/// `1 < σ(t) < σ₀(t)` with both solvers within 1e-6 of each other. The
/// margin is the smallest of `σ - 1`, `σ₀ - σ` and `1e-6 - gap`.
pub fn check_sigma_sandwich(t_grid: &[f64], tol: f64) -> Result<VerificationReport> {
    let ts = moduli(t_grid)?;
    let margins: Vec<Result<(f64, f64)>> = ts
        .par_iter()
        .map(|&m| {
            let d = sigma_dual(m, tol)?;
            let s = d.minimax.sigma;
            Ok((m.get(), (s - 1.0).min(sigma0(m) - s).min(1e-6 - d.gap)))
        })
        .collect();
    let mut out = Margin::new("sigma_sandwich");
    for r in margins {
        let (t, margin) = r?;
        out.push(f64::NAN, t, margin);
    }
    Ok(out.finish())
}

/// The extremal map at `s = σ(t)`: `critical_certificate` covers
/// `g'(t) > 0`, `min g' ∈ [-1e-8, 1e-6]` and an interior touch point;
/// `critical_inner_speed_positive` is `g'(1) > 0` on its own.
pub fn check_critical_certificate(t: f64, tol: f64) -> Result<Vec<VerificationReport>> {
    let m = Modulus::new(t)?;
    let cm = critical_map(m, tol)?;
    let c = cm.coefficients;
    let interior = (cm.touch_r - 1.0).min(t - cm.touch_r) - 1e-3 * (t - 1.0);
    let margin = c
        .g_prime(t)
        .min(cm.monotonicity.min_gprime + 1e-8)
        .min(cm.touch_gprime + 1e-8)
        .min(1e-6 - cm.touch_gprime)
        .min(interior);
    let mut cert = Margin::new("critical_certificate");
    cert.push(cm.touch_r, t, margin);
    let mut inner = Margin::new("critical_inner_speed_positive");
    inner.push(1.0, t, c.g_prime(1.0));
    Ok(vec![cert.finish(), inner.finish()])
}

/// Zero-speed map onto `1 < |w| < σ₀`: boundary data within 1e-10 and
/// `g' >= -1e-10`.
pub fn check_homogeneous_map(t_grid: &[f64]) -> Result<VerificationReport> {
    let mut out = Margin::new("homogeneous_critical_map");
    for m in moduli(t_grid)? {
        let t = m.get();
        let c = critical_homogeneous_map(m)?;
        let rep = monotonicity_report(&c, t)?;
        let boundary = [c.g(1.0) - 1.0, c.g(t) - sigma0(m), c.g_prime(1.0), c.g_prime(t)]
            .into_iter()
            .map(f64::abs)
            .fold(0.0, f64::max);
        out.push(rep.argmin_r, t, (rep.min_gprime + 1e-10).min(1e-10 - boundary));
    }
    Ok(out.finish())
}

fn random_coefficients(rng: &mut ChaCha8Rng) -> RadialCoefficients {
    let mut draw = || rng.gen_range(-10.0..=10.0);
    RadialCoefficients::new(draw(), draw(), draw(), draw())
}

/// Finite-difference `|L[L[g]]|` for `count` random profiles with
/// coefficients in `[-10, 10]`. The location records the worst draw index.
pub fn check_biharmonic(count: usize, seed: u64) -> Result<VerificationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut d = Deviation::new("biharmonic_residual", 1e-5);
    for i in 0..count {
        let c = random_coefficients(&mut rng);
        d.push(i as f64, f64::NAN, biharmonic_residual(&c, 64)?);
    }
    Ok(d.finish())
}

/// Step of the five-point Laplacian.
pub const LAPLACIAN_STEP: f64 = 1.0 / 128.0;

/// `Δf = e^{iφ}(8c z + 2b / z̄)` against a finite-difference Laplacian at a
/// random point with `1.2 < |z| < 4`, relative to `max(1, |Δf|)`.
pub fn check_laplacian_identity(count: usize, seed: u64) -> Result<VerificationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1a91);
    let mut d = Deviation::new("laplacian_identity", 1e-5);
    for _ in 0..count {
        let c = random_coefficients(&mut rng).with_rotation(rng.gen_range(0.0..std::f64::consts::TAU));
        let z = Complex64::from_polar(rng.gen_range(1.2..4.0), rng.gen_range(0.0..std::f64::consts::TAU));
        let (k3, k1) = laplacian_coefficients(&c);
        let want = Complex64::from_polar(1.0, c.phi) * (z * k3 + k1 / z.conj());
        let got = finite_difference_laplacian(&c, z, LAPLACIAN_STEP);
        d.push(z.norm(), f64::NAN, (got - want).norm() / want.norm().max(1.0));
    }
    Ok(d.finish())
}

//! Radial bi-harmonic maps `f(r e^{iθ}) = g(r) e^{i(θ+φ)}` with
//! `g(r) = d/r + a r + b r log r + c r³`.

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;
use serde::Serialize;

use crate::kernel::{BasisKernel, Modulus};
use crate::search::golden_section_min;
use crate::{Error, Result};

/// Tolerance below zero still accepted as a non-negative speed.
pub const MONOTONICITY_TOL: f64 = 1e-10;

/// Coarse grid size used by [`monotonicity_report`].
pub const MONOTONICITY_SAMPLES: usize = 512;

/// Condition estimate above which the boundary solve logs a warning.
pub const CONDITION_WARN: f64 = 1e12;

/// Radial range used by [`biharmonic_residual`].
pub const RESIDUAL_RANGE: (f64, f64) = (1.1, 5.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialCoefficients {
    pub d: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// Rotation angle in radians.
    pub phi: f64,
}

impl RadialCoefficients {
    pub const fn new(d: f64, a: f64, b: f64, c: f64) -> Self {
        RadialCoefficients { d, a, b, c, phi: 0.0 }
    }

    pub const fn identity() -> Self {
        Self::new(0.0, 1.0, 0.0, 0.0)
    }

    pub fn from_array([d, a, b, c]: [f64; 4]) -> Self {
        Self::new(d, a, b, c)
    }

    pub fn with_rotation(self, phi: f64) -> Self {
        RadialCoefficients { phi, ..self }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.d, self.a, self.b, self.c]
    }

    #[inline]
    pub fn g(&self, r: f64) -> f64 {
        self.d / r + self.a * r + self.b * r * r.ln() + self.c * r * r * r
    }

    #[inline]
    pub fn g_prime(&self, r: f64) -> f64 {
        -self.d / (r * r) + self.a + self.b * (1.0 + r.ln()) + 3.0 * self.c * r * r
    }

    #[inline]
    pub fn g_second(&self, r: f64) -> f64 {
        2.0 * self.d / (r * r * r) + self.b / r + 6.0 * self.c * r
    }

    /// `f(z) = z g(|z|)/|z| · e^{iφ}`, equivalently
    /// `d/z̄ + a z + b z log|z| + c |z|² z` rotated by `φ`.
    pub fn map(&self, z: Complex64) -> Complex64 {
        let r = z.norm();
        z * (self.g(r) / r) * Complex64::from_polar(1.0, self.phi)
    }
}

fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::domain("r", r, "r > 0"))
    }
}

pub fn eval_g(coeffs: &RadialCoefficients, r: f64) -> Result<f64> {
    check_radius(r)?;
    Ok(coeffs.g(r))
}

pub fn eval_g_prime(coeffs: &RadialCoefficients, r: f64) -> Result<f64> {
    check_radius(r)?;
    Ok(coeffs.g_prime(r))
}

pub fn eval_map(coeffs: &RadialCoefficients, z: Complex64) -> Result<Complex64> {
    if z.norm() == 0.0 || !z.is_finite() {
        return Err(Error::domain("|z|", z.norm(), "z != 0"));
    }
    Ok(coeffs.map(z))
}

/// `(α, β)` with `Δf = α z + β / z̄`.
pub fn laplacian_coefficients(coeffs: &RadialCoefficients) -> (f64, f64) {
    (8.0 * coeffs.c, 2.0 * coeffs.b)
}

/// Boundary data of a radial profile on `[1, t]`: `g(1) = 1`, `g(t) = s`,
/// `g'(1) = x`, `g'(t) = y`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundarySpec {
    pub t: f64,
    pub s: f64,
    pub x: f64,
    pub y: f64,
}

impl BoundarySpec {
    pub fn new(t: f64, s: f64, x: f64, y: f64) -> Result<Self> {
        Modulus::new(t)?;
        if !(s > 1.0 && s.is_finite()) {
            return Err(Error::domain("s", s, "s > 1"));
        }
        if !(x >= 0.0 && x.is_finite()) {
            return Err(Error::domain("x", x, "x >= 0"));
        }
        if !(y >= 0.0 && y.is_finite()) {
            return Err(Error::domain("y", y, "y >= 0"));
        }
        Ok(BoundarySpec { t, s, x, y })
    }

    pub fn modulus(&self) -> Modulus {
        Modulus::new(self.t).expect("validated on construction")
    }
}

/// Solves the four boundary conditions for `(d, a, b, c)` by LU with partial
/// pivoting.
pub fn solve_coefficients(spec: &BoundarySpec) -> Result<RadialCoefficients> {
    let t = spec.t;
    let lt = t.ln();
    #[rustfmt::skip]
    let m = Matrix4::new(
        1.0,            1.0, 0.0,      1.0,
        1.0 / t,        t,   t * lt,   t * t * t,
        -1.0,           1.0, 1.0,      3.0,
        -1.0 / (t * t), 1.0, 1.0 + lt, 3.0 * t * t,
    );
    let rhs = Vector4::new(1.0, spec.s, spec.x, spec.y);
    let sv = m.singular_values();
    let condition = sv.max() / sv.min();
    if !condition.is_finite() {
        return Err(Error::SingularSystem { condition });
    }
    if condition > CONDITION_WARN {
        log::warn!("boundary system for t = {t} has condition estimate {condition:e}");
    }
    let sol = m
        .lu()
        .solve(&rhs)
        .ok_or(Error::SingularSystem { condition })?;
    Ok(RadialCoefficients::new(sol[0], sol[1], sol[2], sol[3]))
}

/// Same profile assembled as `A + s B + x U + y V` from the cardinal basis.
pub fn cardinal_coefficients(spec: &BoundarySpec) -> RadialCoefficients {
    let p = BasisKernel::new(spec.modulus()).profiles();
    let mut out = [0.0; 4];
    for (k, o) in out.iter_mut().enumerate() {
        *o = p.a[k] + spec.s * p.b[k] + spec.x * p.u[k] + spec.y * p.v[k];
    }
    RadialCoefficients::from_array(out)
}

/// The radial harmonic map of `1 < |z| < t` onto `1 < |w| < s`.
pub fn harmonic_nitsche_map(t: f64, s: f64) -> Result<RadialCoefficients> {
    if !(t > 1.0 && t.is_finite()) {
        return Err(Error::domain("t", t, "t > 1"));
    }
    if !(s > 1.0 && s.is_finite()) {
        return Err(Error::domain("s", s, "s > 1"));
    }
    let w = 1.0 - t * t;
    Ok(RadialCoefficients::new((t * s - t * t) / w, (1.0 - t * s) / w, 0.0, 0.0))
}

/// Minimum of `g'` on `[1, t]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonotonicityReport {
    pub min_gprime: f64,
    pub argmin_r: f64,
    pub is_diffeomorphism: bool,
    pub samples: usize,
}

pub fn monotonicity_report(coeffs: &RadialCoefficients, t: f64) -> Result<MonotonicityReport> {
    if !(t > 1.0 && t.is_finite()) {
        return Err(Error::domain("t", t, "t > 1"));
    }
    let n = MONOTONICITY_SAMPLES;
    let grid: Vec<f64> = (0..n)
        .map(|i| 1.0 + (t - 1.0) * i as f64 / (n - 1) as f64)
        .collect();
    let (i_min, _) = grid
        .iter()
        .map(|&r| coeffs.g_prime(r))
        .enumerate()
        .fold((0, f64::INFINITY), |best, (i, v)| if v < best.1 { (i, v) } else { best });
    let lo = grid[i_min.saturating_sub(1)];
    let hi = grid[(i_min + 1).min(n - 1)];
    let (r_ref, v_ref, iters) = golden_section_min(|r| coeffs.g_prime(r), lo, hi, 1e-13, 200);
    // Endpoints are not visited by the golden-section interior probes.
    let (argmin_r, min_gprime) = [(r_ref, v_ref), (grid[i_min], coeffs.g_prime(grid[i_min]))]
        .into_iter()
        .fold((r_ref, v_ref), |best, c| if c.1 < best.1 { c } else { best });
    Ok(MonotonicityReport {
        min_gprime,
        argmin_r,
        is_diffeomorphism: min_gprime >= -MONOTONICITY_TOL,
        samples: n + iters + 2,
    })
}

// Eighth-order central weights, scaled to integers so that linear profiles
// are differentiated without rounding on dyadic grids.
const D2_WEIGHTS: [f64; 5] = [-14350.0, 8064.0, -1008.0, 128.0, -9.0];
const D2_SCALE: f64 = 5040.0;
const D1_WEIGHTS: [f64; 5] = [0.0, 672.0, -168.0, 32.0, -3.0];
const D1_SCALE: f64 = 840.0;

/// Finite-difference radial operator `L[g] = g'' + g'/r - g/r²` with step `h`.
pub fn radial_operator_fd(g: &impl Fn(f64) -> f64, r: f64, h: f64) -> f64 {
    let g0 = g(r);
    let mut d2 = D2_WEIGHTS[0] * g0;
    let mut d1 = 0.0;
    for j in 1..5 {
        let off = j as f64 * h;
        let (gp, gm) = (g(r + off), g(r - off));
        d2 += D2_WEIGHTS[j] * (gp + gm);
        d1 += D1_WEIGHTS[j] * (gp - gm);
    }
    d2 / (D2_SCALE * h * h) + d1 / (D1_SCALE * h) / r - g0 / r / r
}

/// Dyadic step close to `r / 32`.
fn radial_step(r: f64) -> f64 {
    (r / 32.0).log2().round().exp2()
}

/// Largest `|L[L[g]](r)|` over `grid_n` points of [`RESIDUAL_RANGE`], with `L`
/// applied twice by nested central differences.
pub fn biharmonic_residual(coeffs: &RadialCoefficients, grid_n: usize) -> Result<f64> {
    let (lo, hi) = RESIDUAL_RANGE;
    biharmonic_residual_on(coeffs, lo, hi, grid_n)
}

pub fn biharmonic_residual_on(
    coeffs: &RadialCoefficients,
    lo: f64,
    hi: f64,
    grid_n: usize,
) -> Result<f64> {
    if grid_n < 16 {
        return Err(Error::domain("grid_n", grid_n as f64, "grid_n >= 16"));
    }
    if !(lo > 0.0 && hi > lo) {
        return Err(Error::domain("lo", lo, "0 < lo < hi"));
    }
    const SNAP: f64 = 1_048_576.0; // 2^20
    let g = |q: f64| coeffs.g(q);
    let residual = (0..grid_n)
        .map(|i| {
            let r = lo + (hi - lo) * i as f64 / (grid_n - 1) as f64;
            let r = (r * SNAP).round() / SNAP;
            let h = radial_step(r);
            let lg = |q: f64| radial_operator_fd(&g, q, h);
            radial_operator_fd(&lg, r, h).abs()
        })
        .fold(0.0, f64::max);
    Ok(residual)
}

/// Fourth-order five-point Laplacian of the complex map at `z`.
pub fn finite_difference_laplacian(coeffs: &RadialCoefficients, z: Complex64, h: f64) -> Complex64 {
    let f = |w: Complex64| coeffs.map(w);
    let dx = Complex64::new(h, 0.0);
    let dy = Complex64::new(0.0, h);
    let second = |step: Complex64| {
        (-f(z + step * 2.0) + f(z + step) * 16.0 - f(z) * 30.0 + f(z - step) * 16.0
            - f(z - step * 2.0))
            / (12.0 * h * h)
    };
    second(dx) + second(dy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{E, FRAC_PI_2};

    #[test]
    fn identity_spec_solves_to_identity() {
        let c = solve_coefficients(&BoundarySpec::new(2.0, 2.0, 1.0, 1.0).unwrap()).unwrap();
        for (got, want) in c.as_array().into_iter().zip([0.0, 1.0, 0.0, 0.0]) {
            assert_abs_diff_eq!(got, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn nitsche_boundary_data_recovers_harmonic_map() {
        let h = harmonic_nitsche_map(2.0, 1.25).unwrap();
        assert_eq!(h.as_array(), [0.5, 0.5, 0.0, 0.0]);
        let spec = BoundarySpec::new(2.0, 1.25, 0.0, h.g_prime(2.0)).unwrap();
        let c = solve_coefficients(&spec).unwrap();
        for (got, want) in c.as_array().into_iter().zip([0.5, 0.5, 0.0, 0.0]) {
            assert_abs_diff_eq!(got, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn boundary_round_trip() {
        let spec = BoundarySpec::new(2.0, 1.5, 0.2, 0.3).unwrap();
        let c = solve_coefficients(&spec).unwrap();
        let res = [
            c.g(1.0) - 1.0,
            c.g(2.0) - 1.5,
            c.g_prime(1.0) - 0.2,
            c.g_prime(2.0) - 0.3,
        ];
        assert!(res.iter().all(|r| r.abs() < 1e-9), "{res:?}");
    }

    #[test]
    fn pointwise_profile_values() {
        let id = RadialCoefficients::identity();
        assert_eq!(eval_g(&id, 1.7).unwrap(), 1.7);
        assert_eq!(eval_g_prime(&id, 1.7).unwrap(), 1.0);
        let h = RadialCoefficients::new(0.5, 0.5, 0.0, 0.0);
        assert_eq!(eval_g_prime(&h, 1.0).unwrap(), 0.0);
        let b = RadialCoefficients::new(0.0, 0.0, 1.0, 0.0);
        assert_abs_diff_eq!(eval_g(&b, E).unwrap(), E, epsilon = 1e-15);
        assert_abs_diff_eq!(eval_g_prime(&b, E).unwrap(), 2.0, epsilon = 1e-15);
        assert!(eval_g(&id, 0.0).is_err());
        assert!(eval_g_prime(&id, -1.0).is_err());
    }

    #[test]
    fn complex_map_examples() {
        let id = RadialCoefficients::identity();
        assert_eq!(eval_map(&id, Complex64::new(1.0, 1.0)).unwrap(), Complex64::new(1.0, 1.0));
        let h = RadialCoefficients::new(0.5, 0.5, 0.0, 0.0);
        let w = eval_map(&h, Complex64::new(2.0, 0.0)).unwrap();
        assert_abs_diff_eq!(w.re, 1.25, epsilon = 1e-15);
        assert_abs_diff_eq!(w.im, 0.0, epsilon = 1e-15);
        let rot = eval_map(&id.with_rotation(FRAC_PI_2), Complex64::new(1.0, 0.0)).unwrap();
        assert_abs_diff_eq!(rot.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(rot.im, 1.0, epsilon = 1e-15);
        assert!(eval_map(&id, Complex64::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn map_modulus_and_argument() {
        let c = RadialCoefficients::new(1.0, 2.0, -3.0, 0.5).with_rotation(0.7);
        for k in 0..12 {
            let z = Complex64::from_polar(1.3 + 0.2 * k as f64, 0.5 * k as f64);
            let w = c.map(z);
            let r = z.norm();
            assert!((w.norm() - c.g(r).abs()).abs() < 1e-12);
            if c.g(r) > 0.0 {
                let turn = (w / z).arg();
                assert!((turn - 0.7).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn laplacian_coefficient_examples() {
        assert_eq!(laplacian_coefficients(&RadialCoefficients::identity()), (0.0, 0.0));
        assert_eq!(laplacian_coefficients(&RadialCoefficients::new(0.0, 0.0, 1.0, 0.0)), (0.0, 2.0));
        assert_eq!(laplacian_coefficients(&RadialCoefficients::new(0.0, 0.0, 0.0, 1.0)), (8.0, 0.0));
    }

    #[test]
    fn residual_exact_for_linear_profile() {
        let r = biharmonic_residual(&RadialCoefficients::identity(), 256).unwrap();
        assert!(r < 1e-10, "{r}");
    }

    #[test]
    fn residual_small_for_mixed_profile() {
        let r = biharmonic_residual(&RadialCoefficients::new(1.0, 2.0, -3.0, 0.5), 256).unwrap();
        assert!(r < 1e-5, "{r}");
        assert!(biharmonic_residual(&RadialCoefficients::identity(), 8).is_err());
    }

    #[test]
    fn residual_detects_non_biharmonic_profile() {
        // r⁵ is not in the family: L[L[r⁵]] = 24·8 r = 192 r.
        let g = |q: f64| q.powi(5);
        let h = radial_step(2.0);
        let lg = |q: f64| radial_operator_fd(&g, q, h);
        let v = radial_operator_fd(&lg, 2.0, h);
        assert!((v - 384.0).abs() < 1e-4, "{v}");
    }

    #[test]
    fn monotonicity_examples() {
        let rep = monotonicity_report(&RadialCoefficients::identity(), 2.0).unwrap();
        assert_eq!(rep.min_gprime, 1.0);
        assert!(rep.is_diffeomorphism);

        let h = harmonic_nitsche_map(2.0, 1.25).unwrap();
        let rep = monotonicity_report(&h, 2.0).unwrap();
        assert_abs_diff_eq!(rep.min_gprime, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(rep.argmin_r, 1.0, epsilon = 1e-9);
        assert!(rep.is_diffeomorphism);

        let thin = solve_coefficients(&BoundarySpec::new(2.0, 1.001, 0.0, 0.0).unwrap()).unwrap();
        let rep = monotonicity_report(&thin, 2.0).unwrap();
        assert!(!rep.is_diffeomorphism);
        assert!(rep.min_gprime < 0.0 && rep.argmin_r > 1.5 && rep.argmin_r < 2.0);
    }

    #[test]
    fn harmonic_map_fixes_both_circles() {
        for &(t, s) in &[(2.0, 2.0), (2.0, 1.1), (3.0, 1.7), (1.5, 4.0)] {
            let h = harmonic_nitsche_map(t, s).unwrap();
            assert_abs_diff_eq!(h.g(1.0), 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(h.g(t), s, epsilon = 1e-12);
        }
        let id = harmonic_nitsche_map(2.0, 2.0).unwrap();
        assert_abs_diff_eq!(id.d, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(id.a, 1.0, epsilon = 1e-15);
        let below = harmonic_nitsche_map(2.0, 1.1).unwrap();
        assert!(!monotonicity_report(&below, 2.0).unwrap().is_diffeomorphism);
    }

    #[test]
    fn spec_validation() {
        assert!(BoundarySpec::new(2.0, 1.0, 0.0, 0.0).is_err());
        assert!(BoundarySpec::new(1.0, 2.0, 0.0, 0.0).is_err());
        assert!(BoundarySpec::new(2.0, 2.0, -0.1, 0.0).is_err());
        assert!(BoundarySpec::new(2.0, 2.0, 0.0, f64::NAN).is_err());
        assert!(harmonic_nitsche_map(1.0, 2.0).is_err());
    }
}

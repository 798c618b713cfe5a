use std::f64::consts::PI;

use biharm_annuli::bounds::{nitsche_bound, sigma0, RatioTable};
use biharm_annuli::cli::format::sig9;
use biharm_annuli::kernel::{eval_basis, BasisKernel};
use biharm_annuli::radial::{
    biharmonic_residual, cardinal_coefficients, harmonic_nitsche_map, solve_coefficients, BoundarySpec,
};
use biharm_annuli::{Modulus, RadialCoefficients};
use num_complex::Complex64;
use proptest::prelude::*;

fn modulus() -> impl Strategy<Value = f64> {
    1.01f64..5.0
}

fn inside(t: f64, u: f64) -> f64 {
    1.0 + (t - 1.0) * u
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn cardinal_basis_decomposes_identity(t in modulus(), u in 0.0f64..=1.0) {
        let r = inside(t, u);
        let v = eval_basis(r, Modulus::new(t).unwrap()).unwrap();
        prop_assert!((v.a + t * v.b + v.u + v.v - r).abs() < 1e-9);
    }

    #[test]
    fn solver_and_cardinal_assembly_agree(
        t in modulus(),
        s in 1.01f64..6.0,
        x in 0.0f64..3.0,
        y in 0.0f64..3.0,
    ) {
        let spec = BoundarySpec::new(t, s, x, y).unwrap();
        let lu = solve_coefficients(&spec).unwrap();
        let card = cardinal_coefficients(&spec);
        for r in [1.0, 0.5 * (1.0 + t), t] {
            prop_assert!((lu.g(r) - card.g(r)).abs() < 1e-8 * (1.0 + s));
            prop_assert!((lu.g_prime(r) - card.g_prime(r)).abs() < 1e-7 * (1.0 + s + x + y));
        }
        prop_assert!((lu.g(1.0) - 1.0).abs() < 1e-9);
        prop_assert!((lu.g(t) - s).abs() < 1e-9 * s);
        prop_assert!((lu.g_prime(1.0) - x).abs() < 1e-8 * (1.0 + s));
        prop_assert!((lu.g_prime(t) - y).abs() < 1e-8 * (1.0 + s));
    }

    #[test]
    fn profile_is_biharmonic(d in -10.0f64..10.0, a in -10.0f64..10.0, b in -10.0f64..10.0, c in -10.0f64..10.0) {
        let g = RadialCoefficients::new(d, a, b, c);
        prop_assert!(biharmonic_residual(&g, 32).unwrap() < 1e-5);
    }

    #[test]
    fn homogeneous_ratio_increases(t in 1.05f64..5.0, u in 0.02f64..0.97) {
        let k = BasisKernel::new(Modulus::new(t).unwrap());
        let r = inside(t, u);
        let h = 0.01 * (t - 1.0);
        prop_assert!(k.ratios(r + h).ra > k.ratios(r).ra);
    }

    #[test]
    fn homogeneous_bound_below_harmonic_bound(t in 1.001f64..10.0) {
        let s0 = sigma0(Modulus::new(t).unwrap());
        prop_assert!(s0 > 1.0);
        prop_assert!(s0 < nitsche_bound(t).unwrap());
    }

    #[test]
    fn sup_dominates_every_sample(t in 1.05f64..4.0, x in 0.0f64..0.5, y in 0.0f64..0.5, u in 0.0f64..=1.0) {
        let table = RatioTable::new(Modulus::new(t).unwrap(), 512);
        let sup = table.sup(x, y);
        let phi = table.phi(inside(t, u), x, y);
        prop_assert!(phi <= sup.value + 1e-12 * sup.value.abs().max(1.0));
    }

    #[test]
    fn nine_digit_formatting_round_trips(x in prop::num::f64::NORMAL) {
        let back: f64 = sig9(x).parse().unwrap();
        prop_assert!(((back - x) / x).abs() <= 5e-9);
    }

    #[test]
    fn harmonic_map_meets_boundary(t in 1.01f64..6.0, s in 1.01f64..6.0) {
        let h = harmonic_nitsche_map(t, s).unwrap();
        prop_assert!((h.g(1.0) - 1.0).abs() < 1e-10 * s);
        prop_assert!((h.g(t) - s).abs() < 1e-10 * s);
    }

    #[test]
    fn map_commutes_with_rotation(
        t in 1.05f64..4.0,
        s in 1.05f64..4.0,
        u in 0.0f64..=1.0,
        theta in 0.0f64..(2.0 * PI),
        psi in 0.0f64..(2.0 * PI),
        phi in 0.0f64..(2.0 * PI),
    ) {
        let g = solve_coefficients(&BoundarySpec::new(t, s, 0.0, 0.0).unwrap())
            .unwrap()
            .with_rotation(phi);
        let z = Complex64::from_polar(inside(t, u), theta);
        let spin = Complex64::from_polar(1.0, psi);
        let lhs = g.map(spin * z);
        let rhs = spin * g.map(z);
        prop_assert!((lhs - rhs).norm() < 1e-10 * s);
        prop_assert!((g.map(z).norm() - g.g(z.norm()).abs()).abs() < 1e-10 * s);
    }
}

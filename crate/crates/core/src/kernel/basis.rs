use serde::Serialize;

use super::numerator::LogPoly;
use super::{kernel_constants, Modulus};
use crate::{Error, Result};

/// One value per cardinal function, in the order `A`, `B`, `U`, `V`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Cardinal<T> {
    pub a: T,
    pub b: T,
    pub u: T,
    pub v: T,
}

impl<T> Cardinal<T> {
    pub fn map<S>(self, mut f: impl FnMut(T) -> S) -> Cardinal<S> {
        Cardinal {
            a: f(self.a),
            b: f(self.b),
            u: f(self.u),
            v: f(self.v),
        }
    }

    pub fn as_array(&self) -> [&T; 4] {
        [&self.a, &self.b, &self.u, &self.v]
    }
}

impl Cardinal<f64> {
    /// `A + s B + x U + y V`.
    #[inline]
    pub fn combine(&self, s: f64, x: f64, y: f64) -> f64 {
        self.a + s * self.b + x * self.u + y * self.v
    }
}

/// Values and radial derivatives of the cardinal basis at one radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BasisEval {
    pub r: f64,
    pub t: f64,
    pub value: Cardinal<f64>,
    pub first: Cardinal<f64>,
    pub second: Cardinal<f64>,
}

/// Precomputed cardinal basis for a fixed modulus `t`.
///
/// Values come from the factored closed forms; derivatives come from exact
/// differentiation of the expanded numerators `N(r)` over `D r`. The methods
/// accept any `r > 0` since the closed forms extend analytically past `[1, t]`;
/// the free functions [`eval_basis`] and [`eval_basis_derivatives`] enforce
/// the domain.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisKernel {
    t: f64,
    t2: f64,
    log_t: f64,
    lambda: f64,
    numerators: Cardinal<LogPoly>,
    denominators: Cardinal<f64>,
}

impl BasisKernel {
    pub fn new(t: Modulus) -> Self {
        let lambda = kernel_constants(t).lambda;
        let t = t.get();
        let t2 = t * t;
        let l = t.ln();
        let w = t2 - 1.0;
        let common = 4.0 * w * lambda;
        let numerators = Cardinal {
            a: LogPoly {
                n0: -3.0 * t2 * w + 2.0 * t2 * t2 * l,
                n2: (3.0 - t2) * w + 2.0 * (t2 * t2 - 3.0) * l,
                n4: w + 2.0 * l,
                m2: 2.0 * (3.0 - 2.0 * t2 - t2 * t2),
            },
            b: LogPoly {
                n0: 3.0 * t2 * w - 2.0 * t2 * l,
                n2: -w * (3.0 * t2 - 1.0) + 4.0 * t2 * l,
                n4: -w - 2.0 * t2 * l,
                m2: 2.0 * (3.0 * t2 * t2 - 2.0 * t2 - 1.0),
            },
            u: LogPoly {
                n0: t2 * w - 2.0 * t2 * t2 * l,
                n2: -w * (1.0 + t2) + 2.0 * (1.0 + t2 * t2) * l,
                n4: w - 2.0 * l,
                m2: -2.0 * w * w,
            },
            v: LogPoly {
                n0: -t2 * w + 2.0 * t2 * l,
                n2: w * (1.0 + t2) - 4.0 * t2 * l,
                n4: -w + 2.0 * t2 * l,
                m2: -2.0 * w * w,
            },
        };
        BasisKernel {
            t,
            t2,
            log_t: l,
            lambda,
            numerators,
            denominators: Cardinal {
                a: common,
                b: common * t,
                u: common,
                v: common,
            },
        }
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn modulus(&self) -> Modulus {
        Modulus(self.t)
    }

    pub fn numerators(&self) -> &Cardinal<LogPoly> {
        &self.numerators
    }

    pub fn denominators(&self) -> &Cardinal<f64> {
        &self.denominators
    }

    /// Basis values from the factored closed forms.
    pub fn values(&self, r: f64) -> Cardinal<f64> {
        let (t, t2, l) = (self.t, self.t2, self.log_t);
        let r2 = r * r;
        let lr = r.ln();
        let w = t2 - 1.0;
        let den = 4.0 * r * w * self.lambda;
        let a = ((3.0 + r2) * (r2 - t2) * w
            + 2.0 * r2 * (3.0 - 2.0 * t2 - t2 * t2) * lr
            + 2.0 * (r2 * r2 + t2 * t2 + r2 * (t2 * t2 - 3.0)) * l)
            / den;
        let b = (2.0 * r2 * (3.0 * t2 * t2 - 2.0 * t2 - 1.0) * lr
            - (r2 - 1.0) * (w * (r2 + 3.0 * t2) + 2.0 * (r2 - 1.0) * t2 * l))
            / (den * t);
        let u = (-2.0 * r2 * w * w * lr
            + (r2 - 1.0) * ((r2 - t2) * w - 2.0 * (r2 - t2 * t2) * l))
            / den;
        let v = (-2.0 * r2 * w * w * lr
            + (r2 - 1.0) * (-(r2 - t2) * w + 2.0 * (r2 - 1.0) * t2 * l))
            / den;
        Cardinal { a, b, u, v }
    }

    /// First derivatives in `r`.
    pub fn first(&self, r: f64) -> Cardinal<f64> {
        self.jets(r).map(|j| j[1])
    }

    /// Value, first and second derivative of each cardinal function, all from
    /// the expanded numerators. First derivatives are expanded about an
    /// endpoint where they vanish: `A'` and `B'` about the nearer one, `U'`
    /// about `t`, `V'` about `1`.
    pub fn jets(&self, r: f64) -> Cardinal<[f64; 3]> {
        let n = &self.numerators;
        let d = &self.denominators;
        let near = if r - 1.0 < self.t - r { 1.0 } else { self.t };
        let jet = |p: &LogPoly, den: f64, root: f64| {
            let mut j = p.quotient_jet(den, r);
            j[1] = p.slope_numerator_from_root(r, root) / (den * r * r);
            j
        };
        Cardinal {
            a: jet(&n.a, d.a, near),
            b: jet(&n.b, d.b, near),
            u: jet(&n.u, d.u, self.t),
            v: jet(&n.v, d.v, 1.0),
        }
    }

    pub fn eval(&self, r: f64) -> BasisEval {
        let jets = self.jets(r);
        BasisEval {
            r,
            t: self.t,
            value: self.values(r),
            first: jets.map(|j| j[1]),
            second: jets.map(|j| j[2]),
        }
    }

    /// Coefficients `(d, a, b, c)` of each cardinal function in the
    /// bi-harmonic span `{1/r, r, r log r, r³}`.
    pub fn profiles(&self) -> Cardinal<[f64; 4]> {
        let n = &self.numerators;
        let d = &self.denominators;
        Cardinal {
            a: n.a.profile(d.a),
            b: n.b.profile(d.b),
            u: n.u.profile(d.u),
            v: n.v.profile(d.v),
        }
    }

    pub(crate) fn check_radius(&self, r: f64) -> Result<()> {
        if r >= 1.0 && r <= self.t {
            Ok(())
        } else {
            Err(Error::domain("r", r, "1 <= r <= t"))
        }
    }
}

/// Cardinal values `A(r)`, `B(r)`, `U(r)`, `V(r)` for `1 <= r <= t`.
pub fn eval_basis(r: f64, t: Modulus) -> Result<Cardinal<f64>> {
    let kernel = BasisKernel::new(t);
    kernel.check_radius(r)?;
    Ok(kernel.values(r))
}

/// Values with first and second radial derivatives for `1 <= r <= t`.
pub fn eval_basis_derivatives(r: f64, t: Modulus) -> Result<BasisEval> {
    let kernel = BasisKernel::new(t);
    kernel.check_radius(r)?;
    Ok(kernel.eval(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const T_SET: [f64; 6] = [1.1, 1.25, 1.5, 2.0, 3.0, 5.0];

    fn kernel(t: f64) -> BasisKernel {
        BasisKernel::new(Modulus::new(t).unwrap())
    }

    #[test]
    fn values_at_interior_point() {
        // mpmath, 40 digits
        let c = eval_basis(1.5, Modulus::new(2.0).unwrap()).unwrap();
        assert_abs_diff_eq!(c.a, 0.461_513_620_387_881_2, epsilon = 1e-12);
        assert_abs_diff_eq!(c.b, 0.540_201_638_211_253_1, epsilon = 1e-12);
        assert_abs_diff_eq!(c.u, 0.100_569_329_372_584_0, epsilon = 1e-12);
        assert_abs_diff_eq!(c.v, -0.142_486_226_182_971_5, epsilon = 1e-12);
    }

    #[test]
    fn derivatives_at_interior_point() {
        let e = eval_basis_derivatives(1.5, Modulus::new(2.0).unwrap()).unwrap();
        assert_abs_diff_eq!(e.first.a, -1.477_646_110_419_255_7, epsilon = 1e-11);
        assert_abs_diff_eq!(e.first.b, 1.476_266_626_341_689_8, epsilon = 1e-11);
        assert_abs_diff_eq!(e.first.u, -0.235_128_756_317_247_1, epsilon = 1e-11);
        assert_abs_diff_eq!(e.first.v, -0.239_758_385_946_876_8, epsilon = 1e-11);
    }

    #[test]
    fn second_derivatives_at_outer_edge() {
        let e = eval_basis_derivatives(2.0, Modulus::new(2.0).unwrap()).unwrap();
        assert_abs_diff_eq!(e.second.a, 5.042_326_493_139_249, epsilon = 1e-10);
        assert_abs_diff_eq!(e.second.b, -5.003_588_886_486_446, epsilon = 1e-10);
        assert_abs_diff_eq!(e.second.u, 1.399_092_306_583_488, epsilon = 1e-10);
        assert_abs_diff_eq!(e.second.v, 3.565_758_973_250_154_5, epsilon = 1e-10);
    }

    #[test]
    fn cardinal_conditions() {
        for &t in &T_SET {
            let k = kernel(t);
            let inner = k.eval(1.0);
            let outer = k.eval(t);
            let expect = [
                (inner.value, [1.0, 0.0, 0.0, 0.0]),
                (outer.value, [0.0, 1.0, 0.0, 0.0]),
                (inner.first, [0.0, 0.0, 1.0, 0.0]),
                (outer.first, [0.0, 0.0, 0.0, 1.0]),
            ];
            for (got, want) in expect {
                for (g, w) in got.as_array().into_iter().zip(want) {
                    assert!((g - w).abs() < 1e-9, "t = {t}: {got:?}");
                }
            }
        }
    }

    #[test]
    fn expanded_numerators_match_factored_forms() {
        for &t in &T_SET {
            let k = kernel(t);
            for i in 0..=50 {
                let r = 1.0 + (t - 1.0) * i as f64 / 50.0;
                let factored = k.values(r);
                let expanded = k.jets(r).map(|j| j[0]);
                for (f, e) in factored.as_array().into_iter().zip(expanded.as_array()) {
                    assert!((f - e).abs() < 1e-10, "t = {t}, r = {r}");
                }
            }
        }
    }

    #[test]
    fn identity_decomposition() {
        for &t in &T_SET {
            let k = kernel(t);
            for i in 0..1000 {
                let r = 1.0 + (t - 1.0) * i as f64 / 999.0;
                let c = k.values(r);
                assert!((c.combine(t, 1.0, 1.0) - r).abs() < 1e-9, "t = {t}, r = {r}");
            }
        }
    }

    #[test]
    fn profiles_reproduce_values() {
        let k = kernel(2.5);
        let p = k.profiles();
        for &r in &[1.0, 1.3, 2.2, 2.5] {
            let v = k.values(r);
            for (coef, val) in p.as_array().into_iter().zip(v.as_array()) {
                let [d, a, b, c] = *coef;
                let g = d / r + a * r + b * r * r.ln() + c * r * r * r;
                assert!((g - val).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn rejects_radius_outside_annulus() {
        let t = Modulus::new(2.0).unwrap();
        assert!(eval_basis(0.99, t).is_err());
        assert!(eval_basis(2.0001, t).is_err());
        assert!(eval_basis_derivatives(f64::NAN, t).is_err());
    }
}

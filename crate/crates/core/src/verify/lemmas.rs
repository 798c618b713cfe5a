use super::{check_samples, interior, moduli, printed, Deviation, Margin, VerificationReport};
use crate::bounds::{rho, tau};
use crate::kernel::BasisKernel;
use crate::Result;

type Expr = fn(f64, f64) -> f64;

const LEMMA1: [(&str, Expr, f64); 4] = [
    ("lemma1_a", printed::lemma1_a, 1.0),
    ("lemma1_b", printed::lemma1_b, -1.0),
    ("lemma1_c", printed::lemma1_c, 1.0),
    ("lemma1_d", printed::lemma1_d, 1.0),
];

/// The five auxiliary inequalities, evaluated as printed on the open region.
pub fn check_lemma1(t_grid: &[f64], r_samples: usize) -> Result<Vec<VerificationReport>> {
    let ts = moduli(t_grid)?;
    check_samples(r_samples)?;
    let mut out: Vec<VerificationReport> = LEMMA1
        .iter()
        .map(|&(name, f, sign)| {
            let mut m = Margin::new(name);
            for t in ts.iter().map(|t| t.get()) {
                for r in interior(t, r_samples) {
                    m.push(r, t, sign * f(r, t));
                }
            }
            m.finish()
        })
        .collect();
    let mut e = Margin::new("lemma1_e");
    for t in ts.iter().map(|t| t.get()) {
        e.push(f64::NAN, t, printed::lemma1_e(t));
    }
    out.push(e.finish());
    Ok(out)
}

/// Inequality (b) on wide annuli, where it no longer holds.
pub fn check_lemma1_wide(r_samples: usize) -> Result<VerificationReport> {
    check_samples(r_samples)?;
    let mut m = Margin::new("lemma1_b_wide_annulus");
    for t in [8.0, 10.0] {
        for r in interior(t, r_samples) {
            m.push(r, t, -printed::lemma1_b(r, t));
        }
    }
    Ok(m.finish())
}

/// Signs of `A'`, `B'` and monotonicity of the three speed ratios.
pub fn check_signs_monotonicity(t_grid: &[f64], r_samples: usize) -> Result<Vec<VerificationReport>> {
    let ts = moduli(t_grid)?;
    check_samples(r_samples)?;
    let mut db = Margin::new("sign_dB_positive");
    let mut da = Margin::new("sign_dA_negative");
    let mut ra = Margin::new("ratio_a_increasing");
    let mut ru = Margin::new("ratio_u_increasing");
    let mut rv = Margin::new("ratio_v_decreasing");
    let mut fd = Margin::new("ratio_slopes_fd");
    for &m in &ts {
        let t = m.get();
        let k = BasisKernel::new(m);
        let rs: Vec<f64> = interior(t, r_samples).collect();
        let q: Vec<_> = rs.iter().map(|&r| k.ratios(r)).collect();
        for &r in &rs {
            let d = k.first(r);
            db.push(r, t, d.b);
            da.push(r, t, -d.a);
        }
        for (w, r) in q.windows(2).zip(&rs) {
            ra.push(*r, t, w[1].ra - w[0].ra);
            ru.push(*r, t, w[1].ru - w[0].ru);
            rv.push(*r, t, w[0].rv - w[1].rv);
        }
        let h = 1e-4 * (t - 1.0);
        for &r in rs.iter().filter(|&&r| r - h > 1.0 + 1e-8 && r + h < t - 1e-8) {
            let (p, n) = (k.ratios(r + h), k.ratios(r - h));
            let slope = (p.ra - n.ra).min(p.ru - n.ru).min(n.rv - p.rv) / (2.0 * h);
            fd.push(r, t, slope);
        }
    }
    Ok(vec![db.finish(), da.finish(), ra.finish(), ru.finish(), rv.finish(), fd.finish()])
}

pub fn check_phi_positive(t_grid: &[f64]) -> Result<VerificationReport> {
    let ts = moduli(t_grid)?;
    let mut m = Margin::new("phi_positive");
    for t in ts.iter().map(|t| t.get()) {
        m.push(f64::NAN, t, printed::phi(t));
    }
    Ok(m.finish())
}

/// `t` with `ρ(t)² = κ`.
fn t_of_kappa(kappa: f64) -> f64 {
    (kappa * (3.0 * kappa - 1.0) / (1.0 + kappa)).sqrt()
}

fn kappa_samples(t_grid: &[f64], n: usize) -> Result<Vec<f64>> {
    let ts = moduli(t_grid)?;
    check_samples(n)?;
    let t_max = ts.iter().map(|t| t.get()).fold(1.0, f64::max);
    let k_max = rho(t_max)?.powi(2);
    Ok((1..=n).map(|i| 1.0 + (k_max - 1.0) * i as f64 / n as f64).collect())
}

/// `K(κ) > 0` for `1 < κ <= ρ(max t)²`.
pub fn check_k_positive(t_grid: &[f64], samples: usize) -> Result<VerificationReport> {
    let mut m = Margin::new("K_positive");
    for kappa in kappa_samples(t_grid, samples)? {
        m.push(kappa, t_of_kappa(kappa), printed::k(kappa));
    }
    Ok(m.finish())
}

/// Relative mismatch between `L(κ)` and its printed factorization.
pub fn check_l_factorization(t_grid: &[f64], samples: usize) -> Result<VerificationReport> {
    let mut d = Deviation::new("L_kappa_factorization", 1e-9);
    for kappa in kappa_samples(t_grid, samples)?.into_iter().filter(|&k| k > 1.0 + 1e-3) {
        let f = printed::l_factored(kappa);
        d.push(kappa, t_of_kappa(kappa), (printed::l(kappa) - f) / f);
    }
    Ok(d.finish())
}

/// `-A'(τ)/B'(τ) > 1` at the midpoint radius.
pub fn check_tau_ratio(t_grid: &[f64]) -> Result<VerificationReport> {
    let mut m = Margin::new("tau_ratio_above_one");
    for t in moduli(t_grid)? {
        let r = tau(t.get())?;
        m.push(r, t.get(), BasisKernel::new(t).ratios(r).ra - 1.0);
    }
    Ok(m.finish())
}

/// At `ρ`: `U' = V'`, both negative, and `-A'/B' > 1`. The margin is the
/// smallest of `-U'`, `-V'`, `ra - 1` and `1e-9 - |U' - V'|`.
pub fn check_rho_relations(t_grid: &[f64]) -> Result<VerificationReport> {
    let mut m = Margin::new("rho_relations");
    for t in moduli(t_grid)? {
        let r = rho(t.get())?;
        let k = BasisKernel::new(t);
        let d = k.first(r);
        let margin = (-d.u)
            .min(-d.v)
            .min(k.ratios(r).ra - 1.0)
            .min(1e-9 * d.u.abs().max(1.0) - (d.u - d.v).abs());
        m.push(r, t.get(), margin);
    }
    Ok(m.finish())
}

/// `U' - V'` against its rational closed form.
pub fn check_uv_difference(t_grid: &[f64], r_samples: usize) -> Result<VerificationReport> {
    let ts = moduli(t_grid)?;
    check_samples(r_samples)?;
    let mut d = Deviation::new("uv_difference", 1e-9);
    for &m in &ts {
        let t = m.get();
        let k = BasisKernel::new(m);
        for r in interior(t, r_samples).chain([1.0, t]) {
            let e = k.first(r);
            let want = printed::uv_difference(r, t);
            d.push(r, t, (e.u - e.v - want) / want.abs().max(1.0));
        }
    }
    Ok(d.finish())
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Modulus;
    use crate::verify::DEFAULT_T_GRID;

    #[test]
    fn lemma1_holds_on_default_grid() {
        for rep in check_lemma1(&DEFAULT_T_GRID, 1000).unwrap() {
            assert!(rep.passed, "{rep:?}");
        }
    }

    #[test]
    fn lemma1_spot_values() {
        assert!((printed::lemma1_e(2.0) - 0.465_735_902_799_726_5).abs() < 1e-15);
        assert!(printed::lemma1_d(1.5, 2.0) > 0.0);
    }

    #[test]
    fn lemma1_b_breaks_on_wide_annuli() {
        assert!(!check_lemma1_wide(400).unwrap().passed);
        let mut m = Margin::new("b");
        for r in interior(7.0, 400) {
            m.push(r, 7.0, -printed::lemma1_b(r, 7.0));
        }
        assert!(m.finish().passed);
    }

    #[test]
    fn signs_and_monotonicity() {
        for rep in check_signs_monotonicity(&DEFAULT_T_GRID, 1000).unwrap() {
            assert!(rep.passed, "{rep:?}");
        }
        let k = BasisKernel::new(Modulus::new(2.0).unwrap());
        let (a, b, c) = (k.ratios(1.2).ra, k.ratios(1.5).ra, k.ratios(1.9).ra);
        assert!(a < b && b < c);
    }

    #[test]
    fn kappa_side() {
        assert!(check_k_positive(&DEFAULT_T_GRID, 1000).unwrap().passed);
        let l = check_l_factorization(&DEFAULT_T_GRID, 1000).unwrap();
        assert!(!l.passed && (l.worst_residual - 2.0).abs() < 1e-6);
    }

    #[test]
    fn phi_display_is_negative_but_tau_claim_holds() {
        assert!(!check_phi_positive(&DEFAULT_T_GRID).unwrap().passed);
        assert!(check_tau_ratio(&DEFAULT_T_GRID).unwrap().passed);
    }

    #[test]
    fn rho_side() {
        assert!(check_rho_relations(&DEFAULT_T_GRID).unwrap().passed);
        let rep = check_uv_difference(&DEFAULT_T_GRID, 1000).unwrap();
        assert!(rep.passed, "{rep:?}");
        let k = BasisKernel::new(Modulus::new(2.0).unwrap());
        let d = k.first(1.5);
        assert!((d.u - d.v - 0.004_629_6).abs() < 1e-5);
    }
}

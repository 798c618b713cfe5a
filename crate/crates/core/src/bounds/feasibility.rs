use serde::Serialize;

use super::{rho, sigma0};
use crate::kernel::{BasisKernel, Modulus};
use crate::search::{golden_section_min, local_maxima, log_grid};
use crate::{Error, Result};

/// Slack allowed on `g' >= 0`.
pub const FEASIBILITY_TOL: f64 = 1e-9;

const SCAN: usize = 2048;
const FIRST_GRID: usize = 256;
const MAX_ROUNDS: usize = 7;
const MAX_CUTS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FeasibilityResult {
    pub feasible: bool,
    pub witness_x: f64,
    pub witness_y: f64,
    /// Feasible: `max(0, -min g')` at the witness. Infeasible: smallest uniform
    /// relaxation of the sampled constraints that admits some speeds.
    pub max_violation: f64,
}

type Point = (f64, f64);

/// `g'(r) = A' + s B' + x U' + y V'` is affine in `(x, y)`; one row per radius.
#[derive(Debug, Clone, Copy)]
struct Cut {
    du: f64,
    dv: f64,
    rest: f64,
}

impl Cut {
    fn at(kernel: &BasisKernel, s: f64, r: f64) -> Cut {
        let d = kernel.first(r);
        Cut {
            du: d.u,
            dv: d.v,
            rest: d.a + s * d.b,
        }
    }

    fn eval(&self, p: Point, slack: f64) -> f64 {
        self.du * p.0 + self.dv * p.1 + self.rest + slack
    }
}

/// Sutherland-Hodgman step against `cut(p) + slack >= 0`.
fn clip(poly: &[Point], cut: &Cut, slack: f64) -> Vec<Point> {
    let mut out = Vec::with_capacity(poly.len() + 1);
    for i in 0..poly.len() {
        let p = poly[i];
        let q = poly[(i + 1) % poly.len()];
        let (fp, fq) = (cut.eval(p, slack), cut.eval(q, slack));
        if fp >= 0.0 {
            out.push(p);
        }
        if (fp >= 0.0) != (fq >= 0.0) {
            let w = fp / (fp - fq);
            out.push((p.0 + w * (q.0 - p.0), p.1 + w * (q.1 - p.1)));
        }
    }
    out
}

fn centroid(poly: &[Point]) -> Point {
    let n = poly.len();
    let (mut a, mut cx, mut cy) = (0.0, 0.0, 0.0);
    for i in 0..n {
        let (p, q) = (poly[i], poly[(i + 1) % n]);
        let cross = p.0 * q.1 - q.0 * p.1;
        a += cross;
        cx += (p.0 + q.0) * cross;
        cy += (p.1 + q.1) * cross;
    }
    if a.abs() > 1e-300 {
        (cx / (3.0 * a), cy / (3.0 * a))
    } else {
        let k = n as f64;
        (
            poly.iter().map(|p| p.0).sum::<f64>() / k,
            poly.iter().map(|p| p.1).sum::<f64>() / k,
        )
    }
}

struct Problem {
    kernel: BasisKernel,
    s: f64,
    apex: Cut,
}

impl Problem {
    /// Speeds allowed by the constraint at `ρ`, where `U' = V' < 0`: the
    /// triangle `x, y >= 0`, `x + y <= (A' + s B' + slack) / -U'`.
    fn triangle(&self, slack: f64) -> Vec<Point> {
        let m = (self.apex.rest + slack) / -self.apex.du;
        if !(m >= 0.0) {
            return Vec::new();
        }
        vec![(0.0, 0.0), (m, 0.0), (0.0, m)]
    }

    fn polygon(&self, cuts: &[Cut], slack: f64) -> Vec<Point> {
        let mut poly = self.triangle(slack);
        for c in cuts {
            if poly.is_empty() {
                break;
            }
            poly = clip(&poly, c, slack);
        }
        poly
    }

    fn gprime(&self, r: f64, p: Point) -> f64 {
        let d = self.kernel.first(r);
        d.a + self.s * d.b + p.0 * d.u + p.1 * d.v
    }

    /// Continuous minimum of `g'` over `[1, t]`: dense scan, then golden
    /// refinement of every discrete local minimum.
    fn min_gprime(&self, p: Point) -> (f64, f64) {
        let r = log_grid(1.0, self.kernel.t(), SCAN);
        let neg: Vec<f64> = r.iter().map(|&r| -self.gprime(r, p)).collect();
        let mut best = (r[0], -neg[0]);
        for i in local_maxima(&neg) {
            if -neg[i] < best.1 {
                best = (r[i], -neg[i]);
            }
            let lo = r[i.saturating_sub(1)];
            let hi = r[(i + 1).min(SCAN - 1)];
            let (rm, v, _) = golden_section_min(|q| self.gprime(q, p), lo, hi, 1e-13 * hi, 200);
            if v < best.1 {
                best = (rm, v);
            }
        }
        best
    }

    fn relaxation(&self, cuts: &[Cut]) -> f64 {
        let origin = (0.0, 0.0);
        let mut hi = cuts
            .iter()
            .chain(std::iter::once(&self.apex))
            .map(|c| -c.eval(origin, 0.0))
            .fold(0.0, f64::max)
            + FEASIBILITY_TOL;
        let mut lo = 0.0;
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if self.polygon(cuts, mid).is_empty() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        hi
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Verdict {
    Feasible(Point, f64),
    Infeasible,
}

/// Whether some speeds `x, y >= 0` make `g' >= -FEASIBILITY_TOL` on `[1, t]`
/// for target modulus `s`. Constraints sampled on a grid are refined by cuts
/// at the continuous minimizer of `g'`; the grid doubles until two
/// successive rounds agree.
pub fn feasible(t: Modulus, s: f64) -> Result<FeasibilityResult> {
    if !(s.is_finite() && s > 0.0) {
        return Err(Error::domain("s", s, "s > 0"));
    }
    let kernel = BasisKernel::new(t);
    let p = rho(t.get())?;
    let apex = Cut::at(&kernel, s, p);
    let problem = Problem { kernel, s, apex };

    let mut extra: Vec<Cut> = Vec::new();
    let mut last: Option<Verdict> = None;
    let mut cuts = Vec::new();
    for round in 0..MAX_ROUNDS {
        let n = FIRST_GRID << round;
        cuts = log_grid(1.0, t.get(), n)
            .into_iter()
            .map(|r| Cut::at(&problem.kernel, s, r))
            .chain(extra.iter().copied())
            .collect();
        let mut poly = problem.polygon(&cuts, FEASIBILITY_TOL);
        let mut verdict = Verdict::Infeasible;
        for _ in 0..MAX_CUTS {
            if poly.is_empty() {
                break;
            }
            let w = centroid(&poly);
            let (rm, gm) = problem.min_gprime(w);
            if gm >= -FEASIBILITY_TOL {
                verdict = Verdict::Feasible(w, gm);
                break;
            }
            let cut = Cut::at(&problem.kernel, s, rm);
            extra.push(cut);
            cuts.push(cut);
            poly = clip(&poly, &cut, FEASIBILITY_TOL);
        }
        let same = matches!(
            (last, verdict),
            (Some(Verdict::Feasible(..)), Verdict::Feasible(..)) | (Some(Verdict::Infeasible), Verdict::Infeasible)
        );
        last = Some(verdict);
        if same {
            break;
        }
    }
    Ok(match last {
        Some(Verdict::Feasible(w, gm)) => FeasibilityResult {
            feasible: true,
            witness_x: w.0,
            witness_y: w.1,
            max_violation: (-gm).max(0.0),
        },
        _ => FeasibilityResult {
            feasible: false,
            witness_x: f64::NAN,
            witness_y: f64::NAN,
            max_violation: problem.relaxation(&cuts),
        },
    })
}

/// `σ(t)` as the feasibility threshold in `s`, bisected on `[1, σ₀(t)]`.
/// Returns the smallest modulus found feasible.
pub fn sigma_bisection(t: Modulus, tol: f64) -> Result<f64> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::domain("tol", tol, "tol > 0"));
    }
    let (mut lo, mut hi) = (1.0, sigma0(t));
    for _ in 0..200 {
        if hi - lo <= tol {
            return Ok(hi);
        }
        let mid = 0.5 * (lo + hi);
        if feasible(t, mid)?.feasible {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Err(Error::NotConverged {
        solver: "sigma_bisection",
        iterations: 200,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clip_square_by_diagonal() {
        let sq = vec![(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
        let cut = Cut {
            du: -1.0,
            dv: -1.0,
            rest: 1.0,
        };
        let tri = clip(&sq, &cut, 0.0);
        let c = centroid(&tri);
        assert!((c.0 - 1.0 / 3.0).abs() < 1e-15 && (c.1 - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn homogeneous_threshold_is_feasible() {
        let m = Modulus::new(2.0).unwrap();
        let r = feasible(m, sigma0(m)).unwrap();
        assert!(r.feasible && r.max_violation <= FEASIBILITY_TOL);
        assert!(feasible(m, 1.25).unwrap().feasible);
    }

    #[test]
    fn below_sigma_is_infeasible() {
        let m = Modulus::new(2.0).unwrap();
        let r = feasible(m, 1.002).unwrap();
        assert!(!r.feasible);
        assert!(r.max_violation > 1e-4);
        let r = feasible(m, 1.0).unwrap();
        assert!(!r.feasible);
    }

    #[test]
    fn witness_near_threshold() {
        let m = Modulus::new(2.0).unwrap();
        let r = feasible(m, 1.003_294).unwrap();
        assert!(r.feasible);
        assert!(r.witness_x >= 0.0 && r.witness_y >= 0.0);
        assert!(r.witness_x < 1e-4 && (r.witness_y - 0.009_478).abs() < 1e-3);
    }

    #[test]
    fn bisection_matches_oracle() {
        let s = sigma_bisection(Modulus::new(2.0).unwrap(), 1e-11).unwrap();
        assert!((s - 1.003_293_926_583_196_4).abs() < 1e-8, "{s}");
    }
}

use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::Value;

use super::format::{num, Report, Table};
use super::svg::{Plot, Series};
use super::{Boundary, Command, OutputFormat, EXIT_FAILURE, EXIT_OK};
use crate::bounds::{
    critical_homogeneous_map, critical_map, feasible, nitsche_bound, rho, sigma0, sigma_bisection, sigma_minimax,
    SolveStatus,
};
use crate::kernel::{BasisKernel, EndpointLimits, Modulus, MODULUS_GUARD};
use crate::radial::{
    biharmonic_residual, eval_map, harmonic_nitsche_map, laplacian_coefficients, monotonicity_report,
    solve_coefficients, BoundarySpec, RadialCoefficients,
};
use crate::verify::{erratum_for, run_suite, VerifyConfig};
use crate::Error;

pub(super) enum Failure {
    Usage(String),
    Model(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Model(e)
    }
}

pub(super) struct Executed {
    pub payload: String,
    pub code: i32,
}

type Outcome = std::result::Result<Executed, Failure>;

pub(super) fn execute(cmd: &Command, fmt: OutputFormat) -> Outcome {
    if fmt == OutputFormat::Svg && !matches!(cmd, Command::Figure { .. }) {
        return Err(Failure::Usage("--format svg is only available for `figure`".into()));
    }
    match cmd {
        Command::Basis { t, r } => finish(basis(*t, *r)?, fmt),
        Command::MapSolve(b) => finish(map_solve(b)?, fmt),
        Command::MapEval { boundary, r, theta, phi } => finish(map_eval(boundary, *r, *theta, *phi)?, fmt),
        Command::Nitsche { t, s } => finish(nitsche(*t, *s)?, fmt),
        Command::Sigma0 { t } => finish(sigma0_cmd(*t)?, fmt),
        Command::Sigma { t, tol, minimax_only } => sigma(*t, *tol, *minimax_only, fmt),
        Command::Feasible { t, s } => finish(feasible_cmd(*t, *s)?, fmt),
        Command::Critical { t, tol, homogeneous } => finish(critical(*t, *tol, *homogeneous)?, fmt),
        Command::Verify {
            suite,
            t_grid,
            samples,
            tol,
            seed,
        } => {
            let cfg = VerifyConfig {
                t_grid: t_grid.clone().unwrap_or_else(|| crate::verify::DEFAULT_T_GRID.to_vec()),
                r_samples: *samples,
                seed: *seed,
                tol: *tol,
            };
            verify(*suite, &cfg, fmt)
        }
        Command::Figure {
            which,
            t,
            t_range,
            samples,
            with_sigma,
            tol,
        } => {
            let [lo, hi] = t_range[..] else {
                return Err(Failure::Usage("--t-range takes exactly two values lo,hi".into()));
            };
            figure(*which, *t, (lo, hi), *samples, *with_sigma, *tol, fmt)
        }
        Command::CheckBiharmonic {
            coeffs,
            t,
            s,
            x,
            y,
            samples,
        } => check_biharmonic(coeffs.as_deref(), *t, *s, *x, *y, *samples, fmt),
    }
}

fn render(report: &Report, fmt: OutputFormat) -> String {
    match fmt {
        OutputFormat::Json => report.json(),
        OutputFormat::Csv => report.csv(),
        OutputFormat::Text | OutputFormat::Svg => report.text(),
    }
}

fn finish(report: Report, fmt: OutputFormat) -> Outcome {
    Ok(Executed {
        payload: render(&report, fmt),
        code: EXIT_OK,
    })
}

fn check_tol(tol: f64) -> Result<(), Error> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::domain("tol", tol, "tol > 0"))
    }
}

fn coefficient_fields(rep: &mut Report, c: &RadialCoefficients) {
    rep.real("d", c.d).real("a", c.a).real("b", c.b).real("c", c.c);
}

fn basis(t: f64, r: f64) -> Result<Report, Error> {
    let m = Modulus::new(t)?;
    let e = crate::kernel::eval_basis_derivatives(r, m)?;
    let q = BasisKernel::new(m).ratios(r);
    let mut rep = Report::new("basis");
    rep.real("t", t).real("r", r);
    for (name, v) in ["A", "B", "U", "V"].iter().zip(e.value.as_array()) {
        rep.real(name, *v);
    }
    for (name, v) in ["dA", "dB", "dU", "dV"].iter().zip(e.first.as_array()) {
        rep.real(name, *v);
    }
    for (name, v) in ["d2A", "d2B", "d2U", "d2V"].iter().zip(e.second.as_array()) {
        rep.real(name, *v);
    }
    rep.real("minus_Aprime_over_Bprime", q.ra)
        .real("minus_Uprime_over_Bprime", q.ru)
        .real("minus_Vprime_over_Bprime", q.rv)
        .put("at_limit", q.at_limit);
    Ok(rep)
}

fn solve(b: &Boundary) -> Result<RadialCoefficients, Error> {
    solve_coefficients(&BoundarySpec::new(b.t, b.s, b.x, b.y)?)
}

fn boundary_fields(rep: &mut Report, b: &Boundary) {
    rep.real("t", b.t).real("s", b.s).real("x", b.x).real("y", b.y);
}

fn map_solve(b: &Boundary) -> Result<Report, Error> {
    let c = solve(b)?;
    let mono = monotonicity_report(&c, b.t)?;
    let mut rep = Report::new("map-solve");
    boundary_fields(&mut rep, b);
    coefficient_fields(&mut rep, &c);
    rep.real("min_gprime", mono.min_gprime)
        .real("argmin_r", mono.argmin_r)
        .put("is_diffeomorphism", mono.is_diffeomorphism);
    Ok(rep)
}

fn map_eval(b: &Boundary, r: f64, theta: f64, phi: f64) -> Result<Report, Error> {
    if !(r >= 1.0 && r <= b.t) {
        return Err(Error::domain("r", r, "1 <= r <= t"));
    }
    if !(theta.is_finite() && phi.is_finite()) {
        return Err(Error::domain("theta", theta, "finite angles"));
    }
    let c = solve(b)?.with_rotation(phi);
    let w = eval_map(&c, Complex64::from_polar(r, theta))?;
    let mut rep = Report::new("map-eval");
    boundary_fields(&mut rep, b);
    rep.real("r", r).real("theta", theta).real("phi", phi);
    coefficient_fields(&mut rep, &c);
    rep.real("g", c.g(r))
        .real("g_prime", c.g_prime(r))
        .real("re", w.re)
        .real("im", w.im)
        .real("abs", w.norm());
    Ok(rep)
}

fn nitsche(t: f64, s: Option<f64>) -> Result<Report, Error> {
    let n = nitsche_bound(t)?;
    let mut rep = Report::new("nitsche");
    rep.real("t", t);
    if let Some(s) = s {
        rep.real("s", s);
    }
    rep.real("nitsche", n);
    if let Some(s) = s {
        let h = harmonic_nitsche_map(t, s)?;
        let mono = monotonicity_report(&h, t)?;
        rep.real("d", h.d)
            .real("a", h.a)
            .real("min_gprime", mono.min_gprime)
            .put("is_diffeomorphism", mono.is_diffeomorphism);
    }
    Ok(rep)
}

fn sigma0_cmd(t: f64) -> Result<Report, Error> {
    let m = Modulus::new(t)?;
    let mut rep = Report::new("sigma0");
    rep.real("t", t).real("sigma0", sigma0(m)).real("nitsche", nitsche_bound(t)?);
    Ok(rep)
}

fn sigma(t: f64, tol: f64, minimax_only: bool, fmt: OutputFormat) -> Outcome {
    let m = Modulus::new(t)?;
    check_tol(tol)?;
    let sol = sigma_minimax(m, tol)?;
    let mut rep = Report::new("sigma");
    rep.real("t", t)
        .real("tol", tol)
        .put("minimax_only", minimax_only)
        .real("sigma", sol.sigma)
        .real("x_star", sol.x_star)
        .real("y_star", sol.y_star)
        .real("r_star", sol.r_star)
        .put("iterations", sol.iterations)
        .put("status", sol.status.as_str())
        .real("certificate", sol.certificate);
    if !minimax_only {
        let b = sigma_bisection(m, tol)?;
        rep.real("sigma_bisection", b).real("gap", (b - sol.sigma).abs());
    }
    rep.real("sigma0", sigma0(m)).real("nitsche", nitsche_bound(t)?);
    let code = if sol.status == SolveStatus::MaxIter { EXIT_FAILURE } else { EXIT_OK };
    Ok(Executed {
        payload: render(&rep, fmt),
        code,
    })
}

fn feasible_cmd(t: f64, s: f64) -> Result<Report, Error> {
    let m = Modulus::new(t)?;
    let f = feasible(m, s)?;
    let mut rep = Report::new("feasible");
    rep.real("t", t)
        .real("s", s)
        .put("feasible", f.feasible)
        .real("witness_x", f.witness_x)
        .real("witness_y", f.witness_y)
        .real("max_violation", f.max_violation);
    Ok(rep)
}

fn critical(t: f64, tol: f64, homogeneous: bool) -> Result<Report, Error> {
    let m = Modulus::new(t)?;
    check_tol(tol)?;
    let mut rep = Report::new("critical");
    rep.real("t", t).real("tol", tol).put("homogeneous", homogeneous);
    if homogeneous {
        let c = critical_homogeneous_map(m)?;
        let mono = monotonicity_report(&c, t)?;
        rep.real("s", sigma0(m));
        coefficient_fields(&mut rep, &c);
        rep.real("min_gprime", mono.min_gprime).real("argmin_r", mono.argmin_r);
        return Ok(rep);
    }
    let cm = critical_map(m, tol)?;
    let c = cm.coefficients;
    rep.real("s", cm.solution.sigma)
        .put("status", cm.solution.status.as_str())
        .real("x_star", cm.solution.x_star)
        .real("y_star", cm.solution.y_star);
    coefficient_fields(&mut rep, &c);
    rep.real("gprime_inner", c.g_prime(1.0))
        .real("gprime_outer", c.g_prime(t))
        .real("min_gprime", cm.monotonicity.min_gprime)
        .real("argmin_r", cm.monotonicity.argmin_r)
        .real("touch_r", cm.touch_r)
        .real("touch_gprime", cm.touch_gprime);
    Ok(rep)
}

fn verify(suite: crate::verify::Suite, cfg: &VerifyConfig, fmt: OutputFormat) -> Outcome {
    let out = run_suite(suite, cfg)?;
    let mut rep = Report::new("verify");
    rep.put("suite", suite.as_str())
        .put("t_grid", cfg.t_grid.clone())
        .put("samples", cfg.r_samples)
        .real("tol", cfg.tol)
        .put("seed", cfg.seed)
        .put("passed", out.passed)
        .put("errata", serde_json::to_value(&out.errata).unwrap_or(Value::Null))
        .put("failures", out.failures.clone());
    let columns = ["check_name", "passed", "worst_residual", "r", "t", "samples", "erratum"];
    rep.table = Some(Table {
        key: "reports",
        columns: columns.iter().map(|s| s.to_string()).collect(),
        rows: out
            .reports
            .iter()
            .map(|r| {
                let erratum = match erratum_for(&r.check_name) {
                    Some(e) if !r.passed => Value::from(e.id),
                    _ => Value::from(""),
                };
                vec![
                    Value::from(r.check_name.clone()),
                    Value::from(r.passed),
                    num(r.worst_residual),
                    num(r.worst_location.r),
                    num(r.worst_location.t),
                    Value::from(r.samples),
                    erratum,
                ]
            })
            .collect(),
    });
    let payload = match fmt {
        OutputFormat::Text => {
            let mut s = String::new();
            for r in &out.reports {
                let tag = match (r.passed, erratum_for(&r.check_name)) {
                    (true, _) => "PASS",
                    (false, Some(_)) => "ERRATUM",
                    (false, None) => "FAIL",
                };
                s.push_str(&format!(
                    "{tag:<8} {:<32} worst={} at r={} t={} samples={}\n",
                    r.check_name,
                    super::format::sig9(r.worst_residual),
                    super::format::sig9(r.worst_location.r),
                    super::format::sig9(r.worst_location.t),
                    r.samples
                ));
            }
            for e in &out.errata {
                s.push_str(&format!("erratum {}: {}\n", e.id, e.summary));
            }
            s.push_str(&format!(
                "suite {}: {}\n",
                suite,
                if out.passed { "passed" } else { "FAILED" }
            ));
            s
        }
        _ => render(&rep, fmt),
    };
    Ok(Executed {
        payload,
        code: if out.passed { EXIT_OK } else { EXIT_FAILURE },
    })
}

fn check_samples(samples: usize, min: usize) -> Result<(), Error> {
    if samples < min {
        return Err(Error::domain("samples", samples as f64, "enough samples"));
    }
    Ok(())
}

fn figure(which: u8, t: f64, t_range: (f64, f64), samples: usize, with_sigma: bool, tol: f64, fmt: OutputFormat) -> Outcome {
    check_samples(samples, 2)?;
    let (rep, plot_svg) = if which == 1 { figure1(t, samples)? } else { figure2(t_range, samples, with_sigma, tol)? };
    Ok(Executed {
        payload: if fmt == OutputFormat::Svg { plot_svg } else { render(&rep, fmt) },
        code: EXIT_OK,
    })
}

/// Speed ratios `-U'/B'` and `-V'/B'` on interior points of `(1, t)`.
fn figure1(t: f64, samples: usize) -> Result<(Report, String), Error> {
    let m = Modulus::new(t)?;
    let k = BasisKernel::new(m);
    let rows: Vec<(f64, f64, f64)> = (1..=samples)
        .map(|i| {
            let r = 1.0 + (t - 1.0) * i as f64 / (samples + 1) as f64;
            let q = k.ratios(r);
            (r, q.ru, q.rv)
        })
        .collect();
    let p = rho(t)?;
    let mut rep = Report::new("figure");
    rep.put("figure", 1).real("t", t).put("samples", samples).real("rho", p);
    rep.table = Some(Table {
        key: "rows",
        columns: ["r", "minus_Uprime_over_Bprime", "minus_Vprime_over_Bprime"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        rows: rows.iter().map(|&(r, u, v)| vec![num(r), num(u), num(v)]).collect(),
    });
    let lim = EndpointLimits::new(m);
    let top = 1.15 * lim.ru_outer.max(lim.rv_inner);
    let plot = Plot {
        title: &format!("Speed ratios, t = {}", super::format::sig9(t)),
        x_label: "r",
        y_label: "ratio",
        x_range: (1.0, t),
        y_range: (-top, top),
        series: vec![
            Series {
                name: "-U'(r)/B'(r)",
                color: "#1f77b4",
                points: rows.iter().map(|&(r, u, _)| (r, u)).collect(),
            },
            Series {
                name: "-V'(r)/B'(r)",
                color: "#d62728",
                points: rows.iter().map(|&(r, _, v)| (r, v)).collect(),
            },
        ],
    };
    Ok((rep, plot.render()))
}

/// `n(t)` and `σ₀(t)` on `t_i = lo + (hi - lo) i / samples`; points closer
/// to 1 than the modulus guard are skipped.
fn figure2(range: (f64, f64), samples: usize, with_sigma: bool, tol: f64) -> Result<(Report, String), Error> {
    let (lo, hi) = range;
    if !(lo >= 1.0 && hi > lo && hi.is_finite()) {
        return Err(Error::domain("t_range", lo, "1 <= lo < hi"));
    }
    check_tol(tol)?;
    let ts: Vec<f64> = (1..=samples)
        .map(|i| lo + (hi - lo) * i as f64 / samples as f64)
        .filter(|&t| t >= 1.0 + MODULUS_GUARD)
        .collect();
    let skipped = samples - ts.len();
    let rows: Vec<Vec<f64>> = ts
        .par_iter()
        .map(|&t| -> Result<Vec<f64>, Error> {
            let m = Modulus::new(t)?;
            let mut row = vec![t, nitsche_bound(t)?, sigma0(m)];
            if with_sigma {
                row.push(sigma_minimax(m, tol)?.sigma);
            }
            Ok(row)
        })
        .collect::<Result<_, _>>()?;
    let mut columns = vec!["t", "nitsche_n", "sigma0"];
    if with_sigma {
        columns.push("sigma");
    }
    let mut rep = Report::new("figure");
    rep.put("figure", 2)
        .real("t_lo", lo)
        .real("t_hi", hi)
        .put("samples", samples)
        .put("with_sigma", with_sigma)
        .put("skipped", skipped);
    rep.table = Some(Table {
        key: "rows",
        columns: columns.iter().map(|s| s.to_string()).collect(),
        rows: rows.iter().map(|r| r.iter().map(|&x| num(x)).collect()).collect(),
    });
    let top = rows.iter().map(|r| r[1]).fold(1.0, f64::max);
    let colors = ["#1f77b4", "#d62728", "#2ca02c"];
    let names = ["n(t), harmonic", "sigma0(t), zero speeds", "sigma(t), optimal speeds"];
    let plot = Plot {
        title: "Critical moduli",
        x_label: "t",
        y_label: "s",
        x_range: (lo, hi),
        y_range: (1.0, 1.0 + 1.05 * (top - 1.0)),
        series: (1..columns.len())
            .map(|j| Series {
                name: names[j - 1],
                color: colors[j - 1],
                points: rows.iter().map(|r| (r[0], r[j])).collect(),
            })
            .collect(),
    };
    Ok((rep, plot.render()))
}

/// Residual threshold used by `check-biharmonic`.
const BIHARMONIC_TOL: f64 = 1e-5;

fn check_biharmonic(
    coeffs: Option<&[f64]>,
    t: Option<f64>,
    s: Option<f64>,
    x: f64,
    y: f64,
    samples: usize,
    fmt: OutputFormat,
) -> Outcome {
    check_samples(samples, 16)?;
    let mut rep = Report::new("check-biharmonic");
    let c = match (coeffs, t, s) {
        (Some(k), _, _) => {
            if k.len() != 4 {
                return Err(Failure::Usage("--coeffs takes exactly four values d,a,b,c".into()));
            }
            if k.iter().any(|v| !v.is_finite()) {
                return Err(Error::domain("coeffs", f64::NAN, "finite coefficients").into());
            }
            RadialCoefficients::new(k[0], k[1], k[2], k[3])
        }
        (None, Some(t), Some(s)) => {
            rep.real("t", t).real("s", s).real("x", x).real("y", y);
            solve_coefficients(&BoundarySpec::new(t, s, x, y)?)?
        }
        _ => return Err(Failure::Usage("give --coeffs d,a,b,c or --t and --s".into())),
    };
    let residual = biharmonic_residual(&c, samples)?;
    let (k3, k1) = laplacian_coefficients(&c);
    coefficient_fields(&mut rep, &c);
    rep.put("samples", samples)
        .real("residual", residual)
        .real("tolerance", BIHARMONIC_TOL)
        .put("passed", residual < BIHARMONIC_TOL)
        .real("laplacian_z", k3)
        .real("laplacian_inv_conj_z", k1);
    Ok(Executed {
        payload: render(&rep, fmt),
        code: if residual < BIHARMONIC_TOL { EXIT_OK } else { EXIT_FAILURE },
    })
}

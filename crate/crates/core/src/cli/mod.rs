//! `biharm` command line: argument parsing, dispatch and exit codes.

mod commands;
pub mod format;
mod svg;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Parser)]
#[command(name = "biharm", version, about = "Radial bi-harmonic maps between annuli")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: OutputFormat,
    /// Write the payload to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Boundary {
    #[arg(long)]
    pub t: f64,
    #[arg(long)]
    pub s: f64,
    #[arg(long, default_value_t = 0.0)]
    pub x: f64,
    #[arg(long, default_value_t = 0.0)]
    pub y: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cardinal basis, derivatives and speed ratios at one radius.
    Basis {
        #[arg(long)]
        t: f64,
        #[arg(long)]
        r: f64,
    },
    /// Profile coefficients for given boundary data.
    MapSolve(Boundary),
    /// Evaluate the solved map at `z = r e^{iθ}`.
    MapEval {
        #[command(flatten)]
        boundary: Boundary,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
        /// Rotation applied to the image.
        #[arg(long, default_value_t = 0.0)]
        phi: f64,
    },
    /// Harmonic bound n(t); with --s also the harmonic comparison map.
    Nitsche {
        #[arg(long)]
        t: f64,
        #[arg(long)]
        s: Option<f64>,
    },
    /// Zero-speed threshold σ₀(t).
    Sigma0 {
        #[arg(long)]
        t: f64,
    },
    /// Critical modulus σ(t) from the minimax and bisection solvers.
    Sigma {
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Skip the bisection cross-check.
        #[arg(long)]
        minimax_only: bool,
    },
    /// Whether some boundary speeds make the map a diffeomorphism.
    Feasible {
        #[arg(long)]
        t: f64,
        #[arg(long)]
        s: f64,
    },
    /// Extremal map at s = σ(t), or at σ₀(t) with --homogeneous.
    Critical {
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        homogeneous: bool,
    },
    /// Run the verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: crate::verify::Suite,
        #[arg(long, value_delimiter = ',')]
        t_grid: Option<Vec<f64>>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
    /// Data behind figure 1 (speed ratios) or figure 2 (bounds against t).
    Figure {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=2))]
        which: u8,
        /// Modulus for figure 1.
        #[arg(long, default_value_t = 1.5)]
        t: f64,
        /// Range `lo,hi` of t for figure 2.
        #[arg(long, value_delimiter = ',', default_values_t = [1.0, 3.0])]
        t_range: Vec<f64>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Add a σ(t) column to figure 2.
        #[arg(long)]
        with_sigma: bool,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Finite-difference bi-harmonic residual of a profile, given either
    /// coefficients `d,a,b,c` or boundary data.
    CheckBiharmonic {
        #[arg(long, value_delimiter = ',', conflicts_with_all = ["t", "s"])]
        coeffs: Option<Vec<f64>>,
        #[arg(long, requires = "s")]
        t: Option<f64>,
        #[arg(long, requires = "t")]
        s: Option<f64>,
        #[arg(long, default_value_t = 0.0)]
        x: f64,
        #[arg(long, default_value_t = 0.0)]
        y: f64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

/// Exit code and the text destined for standard output and standard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn failure(code: i32, msg: impl Into<String>) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: msg.into(),
        }
    }
}

pub(crate) fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Domain { .. } => EXIT_DOMAIN,
        Error::SingularSystem { .. } | Error::NotConverged { .. } => EXIT_FAILURE,
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome::failure(code, text)
            };
        }
    };
    let result = match commands::execute(&cli.command, cli.format) {
        Ok(r) => r,
        Err(commands::Failure::Usage(msg)) => return Outcome::failure(EXIT_USAGE, format!("error: {msg}\n")),
        Err(commands::Failure::Model(e)) => return Outcome::failure(exit_code(&e), format!("error: {e}\n")),
    };
    match &cli.out {
        Some(path) => match std::fs::write(path, &result.payload) {
            Ok(()) => Outcome {
                code: result.code,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(e) => Outcome::failure(EXIT_FAILURE, format!("error: cannot write {}: {e}\n", path.display())),
        },
        None => Outcome {
            code: result.code,
            stdout: result.payload,
            stderr: String::new(),
        },
    }
}

//! Command-line front end.
//!
//! Exit status: 0 on success (and for `verify`, iff every check passes),
//! 1 on a domain error, reported as one JSON object on stderr, 2 on a usage
//! error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::dual::{self, SubmoduleFunctional};
use crate::error::Error;
use crate::io::{fmt_real, vector_from_str, vector_to_csv};
use crate::operator::TMatrix;
use crate::scalar::{Bicomplex, DEFAULT_SINGULAR_TOL};
use crate::tmodule::{Submodule, TVector};
use crate::verify::{self, CheckConfig, DEFAULT_TOL, DEFAULT_TRIALS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "bicomplex", version, about = "Bicomplex scalars, operators and functionals")]
pub struct Cli {
    /// Output encoding.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Write results to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CalcOp {
    Add,
    Sub,
    Mul,
    Div,
    Inv,
    Norm,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an operation on scalar literals "a b c d".
    Calc {
        #[arg(allow_hyphen_values = true, value_parser = parse_scalar)]
        lhs: Bicomplex,
        #[arg(value_enum)]
        op: CalcOp,
        #[arg(allow_hyphen_values = true, value_parser = parse_scalar)]
        rhs: Option<Bicomplex>,
        /// Relative threshold for the null-cone test.
        #[arg(long, default_value_t = DEFAULT_SINGULAR_TOL, value_parser = parse_tol)]
        tol: f64,
    },
    /// Print the hat-components of a scalar and its null-cone report.
    Decompose {
        #[arg(allow_hyphen_values = true, value_parser = parse_scalar)]
        w: Bicomplex,
        #[arg(long, default_value_t = DEFAULT_SINGULAR_TOL, value_parser = parse_tol)]
        tol: f64,
    },
    /// Solve T x = b for a square operator T.
    Solve {
        /// Operator as JSON {"m", "n", "entries"}.
        matrix: PathBuf,
        /// Right-hand side as JSON or CSV.
        vector: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SINGULAR_TOL, value_parser = parse_tol)]
        tol: f64,
    },
    /// Print both operator norms and the component singular values.
    Norm {
        matrix: PathBuf,
    },
    /// Extend a functional from a submodule to the whole module.
    Extend {
        /// Submodule as JSON {"n", "generators"}.
        submodule: PathBuf,
        /// Ambient functional {"n", "coeffs"} or generator values {"values"}.
        functional: PathBuf,
    },
    /// Run the property suites.
    Verify {
        /// Run every check.
        #[arg(long, conflicts_with = "check", required_unless_present = "check")]
        all: bool,
        /// Run a single check.
        #[arg(long)]
        check: Option<String>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TRIALS as u64, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_TOL, value_parser = parse_tol)]
        tol: f64,
        /// Include wall-clock time in the reports (output is then no longer
        /// reproducible byte for byte).
        #[arg(long)]
        timing: bool,
    },
}

fn parse_scalar(s: &str) -> Result<Bicomplex, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if t > 0.0 && t.is_finite() {
        Ok(t)
    } else {
        Err(format!("tolerance must be a positive finite number, got {s}"))
    }
}

enum Failure {
    Domain(Error),
    Io(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownCheckId(_) => Failure::Usage(e.to_string()),
            e => Failure::Domain(e),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let (output, code) = match execute(&cli) {
        Ok(v) => v,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(stderr, "{}", json!({"error": e.kind(), "message": e.to_string()}));
            return EXIT_DOMAIN;
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(stderr, "{}", json!({"error": "Io", "message": msg}));
            return EXIT_DOMAIN;
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &output).map_err(|e| format!("{}: {e}", path.display())),
        None => stdout.write_all(output.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        let _ = writeln!(stderr, "{}", json!({"error": "Io", "message": msg}));
        return EXIT_DOMAIN;
    }
    code
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| Failure::Domain(Error::Parse(format!("{}: {e}", path.display()))))
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable") + "\n"
}

fn scalar_out(w: Bicomplex, format: Format) -> String {
    match format {
        Format::Text => format!("{w}\n"),
        Format::Json => to_json(&w),
        Format::Csv => format!("{}\n", w.coeffs().map(fmt_real).join(",")),
    }
}

fn real_out(x: f64, format: Format) -> String {
    match format {
        Format::Json => to_json(&x),
        _ => format!("{}\n", fmt_real(x)),
    }
}

fn vector_text(x: &TVector) -> String {
    x.entries().iter().map(|w| format!("{w}\n")).collect()
}

fn execute(cli: &Cli) -> Result<(String, i32), Failure> {
    let format = cli.format;
    let out = match &cli.command {
        Command::Calc { lhs, op, rhs, tol } => {
            let need_rhs = matches!(op, CalcOp::Add | CalcOp::Sub | CalcOp::Mul | CalcOp::Div);
            let rhs = match (need_rhs, rhs) {
                (true, Some(r)) => Some(*r),
                (true, None) => return Err(Failure::Usage(format!("{op:?} needs a second operand").to_lowercase())),
                (false, Some(_)) => return Err(Failure::Usage(format!("{op:?} takes one operand").to_lowercase())),
                (false, None) => None,
            };
            match (op, rhs) {
                (CalcOp::Add, Some(r)) => scalar_out(*lhs + r, format),
                (CalcOp::Sub, Some(r)) => scalar_out(*lhs - r, format),
                (CalcOp::Mul, Some(r)) => scalar_out(*lhs * r, format),
                (CalcOp::Div, Some(r)) => scalar_out(*lhs * r.inverse(*tol)?, format),
                (CalcOp::Inv, None) => scalar_out(lhs.inverse(*tol)?, format),
                (CalcOp::Norm, None) => real_out(lhs.norm(), format),
                _ => unreachable!("operand count checked above"),
            }
        }
        Command::Decompose { w, tol } => {
            let h = w.to_idempotent();
            let report = w.classify(*tol);
            match format {
                Format::Text => {
                    let mut s = String::new();
                    let _ = writeln!(s, "h1 {} {}", fmt_real(h.h1.re), fmt_real(h.h1.im));
                    let _ = writeln!(s, "h2 {} {}", fmt_real(h.h2.re), fmt_real(h.h2.im));
                    if report.is_singular {
                        let comps: Vec<String> = report.vanishing_components.iter().map(u8::to_string).collect();
                        let _ = writeln!(s, "singular (vanishing components {})", comps.join(" "));
                    } else {
                        let _ = writeln!(s, "nonsingular");
                    }
                    s
                }
                Format::Json => to_json(&json!({
                    "h1": [h.h1.re, h.h1.im],
                    "h2": [h.h2.re, h.h2.im],
                    "singularity": report,
                })),
                Format::Csv => format!(
                    "h1_re,h1_im,h2_re,h2_im,is_singular\n{},{},{},{},{}\n",
                    fmt_real(h.h1.re),
                    fmt_real(h.h1.im),
                    fmt_real(h.h2.re),
                    fmt_real(h.h2.im),
                    report.is_singular
                ),
            }
        }
        Command::Solve { matrix, vector, tol } => {
            let t: TMatrix = read_json(matrix)?;
            let b = vector_from_str(&read(vector)?)?;
            let x = t.solve(&b, *tol)?;
            let r = t.apply(&x)?.checked_sub(&b)?.norm() / b.norm().max(f64::MIN_POSITIVE);
            match format {
                Format::Text => format!("{}residual {}\n", vector_text(&x), fmt_real(r)),
                Format::Json => to_json(&json!({"solution": x, "residual": r})),
                Format::Csv => format!("{}# residual {}\n", vector_to_csv(&x), fmt_real(r)),
            }
        }
        Command::Norm { matrix } => {
            let t: TMatrix = read_json(matrix)?;
            let r = t.norms();
            match format {
                Format::Text => format!(
                    "sup_norm {}\nidem_norm {}\ns1 {}\ns2 {}\n",
                    fmt_real(r.sup_norm),
                    fmt_real(r.idem_norm),
                    fmt_real(r.s1),
                    fmt_real(r.s2)
                ),
                Format::Json => to_json(&r),
                Format::Csv => format!(
                    "sup_norm,idem_norm,s1,s2\n{},{},{},{}\n",
                    fmt_real(r.sup_norm),
                    fmt_real(r.idem_norm),
                    fmt_real(r.s1),
                    fmt_real(r.s2)
                ),
            }
        }
        Command::Extend { submodule, functional } => {
            let y: Submodule = read_json(submodule)?;
            let f: SubmoduleFunctional = read_json(functional)?;
            let report = dual::hahn_banach_extend(&f, &y)?;
            match format {
                Format::Csv => vector_to_csv(report.extension.coeffs()),
                Format::Json => to_json(&report),
                Format::Text => serde_json::to_string_pretty(&report).expect("serializable") + "\n",
            }
        }
        Command::Verify {
            all,
            check,
            seed,
            trials,
            tol,
            timing,
        } => {
            let trials = *trials as usize;
            let reports = if *all {
                verify::run_all(*seed, trials, *tol)?
            } else {
                let id = check.as_deref().expect("clap requires --all or --check");
                vec![verify::run_check(&CheckConfig::new(id, *seed, trials).with_tol(*tol))?]
            };
            let text: String = reports.iter().map(|r| r.to_json_line(*timing) + "\n").collect();
            let code = if verify::all_pass(&reports) { EXIT_OK } else { EXIT_DOMAIN };
            return Ok((text, code));
        }
    };
    Ok((out, EXIT_OK))
}

//! `compop`: classify affine composition operators on the half-plane Hardy
//! space, export truncated matrices, and run the verification suite.
//!
//! Exit codes: 0 success / all checks passed, 1 at least one check failed,
//! 2 invalid symbol or out-of-range numeric flag, 3 check not applicable to
//! the symbol class.

use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use compop_core::error::Error;
use compop_core::hardy::{kernel_vector, TruncatedOperator};
use compop_core::io as cio;
use compop_core::symbol::AffineSymbol;
use compop_core::verify::{self, CheckReport, EigenProbe};

const DEFAULT_MAX_SIZE: usize = 512;

#[derive(Parser)]
#[command(
    name = "compop",
    about = "Affine composition operators on the Hardy space of the right half-plane",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SymbolArgs {
    /// Dilation factor a (must be > 0)
    #[arg(long, allow_negative_numbers = true)]
    a: f64,
    /// Real part of the translation b (must be >= 0)
    #[arg(long = "re-b", default_value_t = 0.0, allow_negative_numbers = true)]
    re_b: f64,
    /// Imaginary part of the translation b
    #[arg(long = "im-b", default_value_t = 0.0, allow_negative_numbers = true)]
    im_b: f64,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Truncation size N
    #[arg(long, default_value_t = 128)]
    size: usize,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output to a file instead of stdout
    #[arg(long)]
    output: Option<std::path::PathBuf>,
    /// Tolerance override `name=value`; repeatable
    #[arg(long = "tol")]
    tol: Vec<String>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a symbol and print its predicted operator properties
    Classify {
        #[command(flatten)]
        symbol: SymbolArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Export the truncated operator matrix
    Matrix {
        #[command(flatten)]
        symbol: SymbolArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run every check applicable to the symbol; exit 0 iff all pass
    Verify {
        #[command(flatten)]
        symbol: SymbolArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Eigenfunction checks: residual, multiplicity witness, membership
    Eigen {
        #[command(flatten)]
        symbol: SymbolArgs,
        #[command(flatten)]
        common: CommonArgs,
        /// Real part of the exponent lambda
        #[arg(long = "lambda-re", default_value_t = -1.0, allow_negative_numbers = true)]
        lambda_re: f64,
        /// Imaginary part of the exponent lambda
        #[arg(long = "lambda-im", default_value_t = 0.0, allow_negative_numbers = true)]
        lambda_im: f64,
    },
    /// Kernel-orbit identity and Blaschke partial sums
    Orbit {
        #[command(flatten)]
        symbol: SymbolArgs,
        #[command(flatten)]
        common: CommonArgs,
        /// Largest orbit index for the Blaschke sum
        #[arg(long = "n-max")]
        n_max: Option<u64>,
    },
    /// Norm convergence and power-norm decay
    Norms {
        #[command(flatten)]
        symbol: SymbolArgs,
        #[command(flatten)]
        common: CommonArgs,
        /// Largest power for the decay check
        #[arg(long = "n-max", default_value_t = 8)]
        n_max: u32,
    },
    /// Singular values of the Krylov orbit of the kernel at 1 (evidence
    /// only, no pass/fail)
    Krylov {
        #[command(flatten)]
        symbol: SymbolArgs,
        #[command(flatten)]
        common: CommonArgs,
        /// Number of Krylov columns
        #[arg(long = "n-max", default_value_t = 16)]
        n_max: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            let code = match err {
                Error::UnboundedSymbol { .. } | Error::Parse(_) => 2u8,
                Error::WrongSymbolType { .. } | Error::NotApplicable { .. } => 3,
                Error::NotInHardySpace { .. } => 3,
                _ => 2,
            };
            eprintln!("error: {err}");
            ExitCode::from(code)
        }
    }
}

fn max_size() -> usize {
    std::env::var("COMPOP_MAX_N")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_SIZE)
}

fn validate(symbol: &SymbolArgs, common: &CommonArgs) -> Result<(AffineSymbol, usize), Error> {
    let cap = max_size();
    if common.size < 1 || common.size > cap {
        return Err(Error::Parse(format!(
            "--size {} out of range [1, {cap}]",
            common.size
        )));
    }
    let s = AffineSymbol::new(symbol.a, Complex64::new(symbol.re_b, symbol.im_b))?;
    Ok((s, common.size))
}

fn emit(common: &CommonArgs, content: &str) -> Result<(), Error> {
    match &common.output {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .map_err(|e| Error::Parse(format!("cannot write to stdout: {e}")))
        }
    }
}

fn report_lines(reports: &[CheckReport], format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = cio::reports_to_json(reports);
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut out = String::from("check,N,residual,tolerance,passed\n");
            for r in reports {
                out.push_str(&format!(
                    "{},{},{:.16e},{:.16e},{}\n",
                    r.check,
                    r.size.map_or(String::new(), |n| n.to_string()),
                    r.residual,
                    r.tolerance,
                    r.passed
                ));
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for r in reports {
                out.push_str(&format!(
                    "{:<24} {}  residual {:.3e} (tolerance {:.3e})\n",
                    r.check,
                    if r.passed { "PASS" } else { "FAIL" },
                    r.residual,
                    r.tolerance
                ));
                for (k, v) in &r.details {
                    out.push_str(&format!("    {k}: {v}\n"));
                }
            }
            out
        }
    }
}

fn checks_exit(reports: &[CheckReport]) -> ExitCode {
    if reports.iter().all(|r| r.passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn apply_overrides(
    mut reports: Vec<CheckReport>,
    overrides: &BTreeMap<String, f64>,
) -> Vec<CheckReport> {
    for r in &mut reports {
        if let Some(&tol) = overrides.get(r.check) {
            *r = r.clone().with_tolerance(tol);
        }
    }
    reports.sort_by(|x, y| x.check.cmp(y.check));
    reports
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Classify { symbol, common } => {
            let (s, _) = validate(&symbol, &common)?;
            let (class, profile) = s.classify();
            let content = match common.format {
                Format::Json => {
                    let value = serde_json::json!({
                        "symbol": s,
                        "class": class,
                        "profile": profile,
                        "near_boundary_warning": s.near_boundary(),
                    });
                    let mut text = serde_json::to_string_pretty(&value)
                        .expect("classification serialization cannot fail");
                    text.push('\n');
                    text
                }
                Format::Csv => format!(
                    "a,re_b,im_b,class,bounded,norm,normal,self_adjoint,unitary,complex_symmetric,cyclic,hypercyclic\n{},{},{},{:?},{},{:.16e},{},{},{},{},{},{}\n",
                    s.a(), s.b().re, s.b().im, class, profile.bounded, profile.norm,
                    profile.normal, profile.self_adjoint, profile.unitary,
                    profile.complex_symmetric, profile.cyclic, profile.hypercyclic
                ),
                Format::Text => {
                    let mut text = format!(
                        "phi(w) = {} w + ({} + {}i): {class}\n",
                        s.a(),
                        s.b().re,
                        s.b().im
                    );
                    text.push_str(&format!("  operator norm       {:.12}\n", profile.norm));
                    text.push_str(&format!("  normal              {}\n", profile.normal));
                    text.push_str(&format!("  self-adjoint        {}\n", profile.self_adjoint));
                    text.push_str(&format!("  unitary             {}\n", profile.unitary));
                    text.push_str(&format!("  complex symmetric   {}\n", profile.complex_symmetric));
                    text.push_str(&format!("  cyclic              {}\n", profile.cyclic));
                    text.push_str(&format!("  hypercyclic         {}\n", profile.hypercyclic));
                    if s.near_boundary() {
                        text.push_str(
                            "  warning: parameters are within 1e-12 of a classification boundary\n",
                        );
                    }
                    text
                }
            };
            emit(&common, &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Matrix { symbol, common } => {
            let (s, n) = validate(&symbol, &common)?;
            let t = TruncatedOperator::assemble(&s, n);
            let content = match common.format {
                Format::Csv => cio::matrix_to_csv(&t),
                Format::Json => {
                    let mut text = cio::matrix_to_json(&t);
                    text.push('\n');
                    text
                }
                Format::Text => {
                    let mut out = String::new();
                    for m in 0..n {
                        let row: Vec<String> = (0..n)
                            .map(|k| {
                                let e = t.entry(m, k);
                                format!("{:+.4e}{:+.4e}i", e.re, e.im)
                            })
                            .collect();
                        out.push_str(&row.join("  "));
                        out.push('\n');
                    }
                    out
                }
            };
            emit(&common, &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { symbol, common } => {
            let (s, n) = validate(&symbol, &common)?;
            let overrides = cio::parse_tol_overrides(&common.tol)?;
            let reports = verify::run_suite(&s, n, &overrides);
            emit(&common, &report_lines(&reports, common.format))?;
            Ok(checks_exit(&reports))
        }
        Command::Eigen {
            symbol,
            common,
            lambda_re,
            lambda_im,
        } => {
            let (s, n) = validate(&symbol, &common)?;
            let overrides = cio::parse_tol_overrides(&common.tol)?;
            let lambda = Complex64::new(lambda_re, lambda_im);
            let probe = EigenProbe::new(&s, lambda, 0)?;
            let samples = verify::default_samples();
            let mut reports = vec![
                verify::eigenfunction_residual(&s, &probe, &samples)?,
                verify::hardy_membership(&s, lambda, n)?,
            ];
            // The witness requires membership; report it only for exponents
            // inside the space.
            if lambda.re < -0.5 {
                reports.push(verify::multiplicity_witness(&s, lambda, &[0, 1, 2], n)?);
            }
            let reports = apply_overrides(reports, &overrides);
            emit(&common, &report_lines(&reports, common.format))?;
            Ok(checks_exit(&reports))
        }
        Command::Orbit {
            symbol,
            common,
            n_max,
        } => {
            let (s, _) = validate(&symbol, &common)?;
            let overrides = cio::parse_tol_overrides(&common.tol)?;
            let orbit_n = n_max.unwrap_or(10).min(1_000_000) as u32;
            let blaschke_n = n_max.unwrap_or(1_000_000);
            let reports = apply_overrides(
                vec![
                    verify::kernel_orbit_identity(&s, orbit_n, &verify::default_samples())?,
                    verify::blaschke_partial_sums(&s, blaschke_n.max(1))?,
                ],
                &overrides,
            );
            emit(&common, &report_lines(&reports, common.format))?;
            Ok(checks_exit(&reports))
        }
        Command::Norms {
            symbol,
            common,
            n_max,
        } => {
            let (s, n) = validate(&symbol, &common)?;
            let overrides = cio::parse_tol_overrides(&common.tol)?;
            let mut reports = vec![verify::norm_convergence(&s, &verify::suite_sizes(n))];
            if s.a() > 1.0 {
                reports.push(verify::power_norm_decay(&s, n_max, n)?);
            }
            let reports = apply_overrides(reports, &overrides);
            emit(&common, &report_lines(&reports, common.format))?;
            Ok(checks_exit(&reports))
        }
        Command::Krylov {
            symbol,
            common,
            n_max,
        } => {
            let (s, n) = validate(&symbol, &common)?;
            if n_max < 1 || n_max > n {
                return Err(Error::Parse(format!(
                    "--n-max {n_max} out of range [1, {n}]"
                )));
            }
            let t = TruncatedOperator::assemble(&s, n);
            let start = kernel_vector(Complex64::ONE, n)?.into_coeffs();
            let singular = verify::krylov_diagnostic(&t, &start, n_max)?;
            let content = match common.format {
                Format::Json => {
                    let value = serde_json::json!({
                        "check": "krylov_diagnostic",
                        "symbol": s,
                        "N": n,
                        "m": n_max,
                        "start": "kernel at 1",
                        "singular_values": singular,
                    });
                    let mut text = serde_json::to_string_pretty(&value)
                        .expect("diagnostic serialization cannot fail");
                    text.push('\n');
                    text
                }
                Format::Csv => {
                    let mut out = String::from("index,singular_value\n");
                    for (i, sv) in singular.iter().enumerate() {
                        out.push_str(&format!("{i},{sv:.16e}\n"));
                    }
                    out
                }
                Format::Text => {
                    let mut out = format!("Krylov singular values (m = {n_max}, N = {n}):\n");
                    for (i, sv) in singular.iter().enumerate() {
                        out.push_str(&format!("  sigma_{i:<2} = {sv:.6e}\n"));
                    }
                    out
                }
            };
            emit(&common, &content)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

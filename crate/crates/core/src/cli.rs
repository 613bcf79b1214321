//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failed or target unreachable,
//! 2 usage or parse error. Reports go to stdout, diagnostics to stderr.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, CommandFactory, Parser, Subcommand, ValueEnum};

use crate::batch::{sweep_csv, wigner_sweep, LinRange};
use crate::chainfile::{fmt_sig17, format_chain, format_matrix, parse_chain, parse_matrix};
use crate::error::Error;
use crate::filter::{apply_to_jones, apply_to_stokes, compose, verify, FilterChain, Target};
use crate::iwasawa::{iwasawa_factors, shear2, IwasawaParams};
use crate::matrix::Matrix2;
use crate::polarization::{stokes_from_jones, JonesVector};
use crate::wigner::{closure_residual, max_wigner_angle, solve_theta, wigner_chain, wigner_product, WignerParams};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutcome {
    fn ok(stdout: String) -> Self {
        CommandOutcome {
            exit_code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn with_status(passed: bool, stdout: String) -> Self {
        CommandOutcome {
            exit_code: if passed { 0 } else { 1 },
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        CommandOutcome {
            exit_code: 2,
            stdout: String::new(),
            stderr,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "polarlorentz",
    version,
    about = "Polarization filters as Lorentz transformations: Wigner rotations and Iwasawa shears"
)]
struct Cli {
    /// Pass/fail tolerance on max-abs residuals.
    #[arg(long, global = true, default_value = "1e-9", value_parser = positive_f64)]
    tol: f64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Wigner angle and closure check for boosts (eta, theta).
    Wigner {
        #[arg(long, value_parser = finite_f64, allow_negative_numbers = true)]
        eta: f64,
        #[arg(long, value_parser = finite_f64, allow_negative_numbers = true)]
        theta: f64,
    },
    /// Three-attenuator chain producing a rotation by omega.
    WignerDesign {
        #[arg(long, value_parser = finite_f64, allow_negative_numbers = true)]
        omega: f64,
        #[arg(long, value_parser = finite_f64, allow_negative_numbers = true)]
        eta: f64,
    },
    /// Iwasawa factorization of the shear [[1, u], [0, 1]].
    #[command(group(ArgGroup::new("shear").required(true).args(["u", "alpha"])))]
    Iwasawa {
        #[arg(long, value_parser = finite_f64, allow_negative_numbers = true)]
        u: Option<f64>,
        #[arg(long, value_parser = finite_f64, allow_negative_numbers = true)]
        alpha: Option<f64>,
    },
    /// Push a Jones vector "A1,phi1,A2,phi2" through a chain file.
    Apply {
        chain: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        jones: String,
    },
    /// Compare a chain file against a 2x2 (8 reals) or 4x4 (16 reals) matrix file.
    Verify { chain: PathBuf, target: PathBuf },
    /// CSV of Wigner angle and closure residual over an eta x theta grid.
    Sweep {
        #[arg(long, allow_hyphen_values = true)]
        eta: LinRange,
        #[arg(long, allow_hyphen_values = true)]
        theta: LinRange,
    },
}

fn finite_f64(s: &str) -> Result<f64, String> {
    match s.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("`{s}` is not a finite number")),
    }
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match finite_f64(s)? {
        v if v > 0.0 => Ok(v),
        _ => Err(format!("`{s}` must be positive")),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CommandOutcome::ok(e.to_string()),
                _ => {
                    let mut msg = e.render().to_string();
                    if !msg.contains("Usage:") {
                        msg.push_str(&format!("\n{}\n", Cli::command().render_usage()));
                    }
                    CommandOutcome::usage(msg)
                }
            };
        }
    };
    let (tol, format) = (cli.tol, cli.format);
    match cli.command {
        Command::Wigner { eta, theta } => cmd_wigner(eta, theta, tol, format),
        Command::WignerDesign { omega, eta } => cmd_wigner_design(omega, eta, tol, format),
        Command::Iwasawa { u, alpha } => cmd_iwasawa(u, alpha, tol, format),
        Command::Apply { chain, jones } => cmd_apply(&chain, &jones, tol, format),
        Command::Verify { chain, target } => cmd_verify(&chain, &target, tol, format),
        Command::Sweep { eta, theta } => cmd_sweep(&eta, &theta),
    }
}

fn push_kv(out: &mut String, key: &str, value: f64) {
    let _ = writeln!(out, "# {key} = {}", fmt_sig17(value));
}

fn status(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn cmd_wigner(eta: f64, theta: f64, tol: f64, format: Format) -> CommandOutcome {
    let params = match WignerParams::new(eta, theta) {
        Ok(p) => p,
        Err(e) => return CommandOutcome::usage(format!("error: {e}")),
    };
    let (product, extracted) = wigner_product(eta, theta);
    let residual = closure_residual(eta, theta);
    let passed = residual < tol;

    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str("eta,theta,omega_rad,residual_maxabs\n");
            let _ = writeln!(
                out,
                "{},{},{},{}",
                fmt_sig17(eta),
                fmt_sig17(theta),
                fmt_sig17(params.omega),
                fmt_sig17(residual)
            );
        }
        Format::Text => {
            out.push_str("# Wigner rotation from three boosts\n");
            push_kv(&mut out, "eta", eta);
            push_kv(&mut out, "theta", theta);
            push_kv(&mut out, "lambda", params.lambda);
            push_kv(&mut out, "psi", params.psi);
            push_kv(&mut out, "omega_rad", params.omega);
            push_kv(&mut out, "omega_extracted_rad", extracted);
            out.push_str("# B3*B2*B1 =\n");
            for line in product.to_string().lines() {
                let _ = writeln!(out, "#   {line}");
            }
            push_kv(&mut out, "residual_maxabs", residual);
            push_kv(&mut out, "tolerance", tol);
            let _ = writeln!(out, "# status = {}", status(passed));
            out.push_str(&format_chain(&wigner_chain(&params)));
        }
    }
    CommandOutcome::with_status(passed, out)
}

fn cmd_wigner_design(omega: f64, eta: f64, tol: f64, format: Format) -> CommandOutcome {
    if !(eta > 0.0) {
        return CommandOutcome::usage(format!("error: --eta must be positive, got {eta}"));
    }
    let theta = match solve_theta(omega, eta) {
        Ok(t) => t,
        Err(Error::Unreachable { max, .. }) => {
            let msg = format!("unreachable: max {}\n", fmt_sig17(max));
            return CommandOutcome {
                exit_code: 1,
                stdout: msg.clone(),
                stderr: msg,
            };
        }
        Err(e) => return CommandOutcome::usage(format!("error: {e}")),
    };
    let params = match WignerParams::new(eta, theta) {
        Ok(p) => p,
        Err(e) => return CommandOutcome::usage(format!("error: {e}")),
    };
    let chain = wigner_chain(&params);
    let report = verify(&chain, &Target::Jones(Matrix2::rotation(omega)), tol);

    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str("omega_target_rad,eta,theta,residual_maxabs\n");
            let _ = writeln!(
                out,
                "{},{},{},{}",
                fmt_sig17(omega),
                fmt_sig17(eta),
                fmt_sig17(theta),
                fmt_sig17(report.residual_maxabs)
            );
        }
        Format::Text => {
            out.push_str("# three-attenuator chain for a Wigner rotation\n");
            push_kv(&mut out, "omega_target_rad", omega);
            push_kv(&mut out, "omega_max_rad", max_wigner_angle(eta).1);
            push_kv(&mut out, "eta", eta);
            push_kv(&mut out, "theta", theta);
            push_kv(&mut out, "lambda", params.lambda);
            push_kv(&mut out, "psi", params.psi);
            push_kv(&mut out, "residual_maxabs", report.residual_maxabs);
            push_kv(&mut out, "tolerance", tol);
            let _ = writeln!(out, "# status = {}", status(report.passed));
            out.push_str(&format_chain(&chain));
        }
    }
    CommandOutcome::with_status(report.passed, out)
}

fn cmd_iwasawa(u: Option<f64>, alpha: Option<f64>, tol: f64, format: Format) -> CommandOutcome {
    let params = match (u, alpha) {
        (Some(u), None) => IwasawaParams::from_u(u),
        (None, Some(a)) => IwasawaParams::from_alpha(a),
        _ => return CommandOutcome::usage("error: give exactly one of --u, --alpha"),
    };
    let params = match params {
        Ok(p) => p,
        Err(e) => return CommandOutcome::usage(format!("error: {e}")),
    };
    let target = Target::Jones(shear2(params.u));
    let chains = params
        .two_filter_chain()
        .and_then(|two| Ok((two, params.three_filter_chain()?)));
    let (two, three) = match chains {
        Ok(c) => c,
        Err(e) => return CommandOutcome::usage(format!("error: {e}")),
    };
    let two_report = verify(&two, &target, tol);
    let three_report = verify(&three, &target, tol);
    let factor_residual = iwasawa_factors(params.u)
        .map(|(s, r, _)| (s * r).max_abs_diff(&shear2(params.u)))
        .unwrap_or(f64::NAN);
    let passed = two_report.passed && three_report.passed;

    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str("u,alpha,gamma,residual_two,residual_three\n");
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                fmt_sig17(params.u),
                fmt_sig17(params.alpha),
                fmt_sig17(params.gamma),
                fmt_sig17(two_report.residual_maxabs),
                fmt_sig17(three_report.residual_maxabs)
            );
        }
        Format::Text => {
            out.push_str("# Iwasawa decomposition of the shear [[1, u], [0, 1]]\n");
            push_kv(&mut out, "u", params.u);
            push_kv(&mut out, "alpha", params.alpha);
            push_kv(&mut out, "alpha_plus", params.alpha_plus);
            push_kv(&mut out, "alpha_minus", params.alpha_minus);
            push_kv(&mut out, "gamma", params.gamma);
            push_kv(&mut out, "cosh_gamma", params.cosh_gamma);
            push_kv(&mut out, "sinh_gamma", params.sinh_gamma);
            push_kv(&mut out, "cosh_half_gamma", params.cosh_half_gamma());
            push_kv(&mut out, "factorization_residual", factor_residual);
            push_kv(&mut out, "residual_two_filter", two_report.residual_maxabs);
            push_kv(&mut out, "residual_three_filter", three_report.residual_maxabs);
            push_kv(&mut out, "tolerance", tol);
            let _ = writeln!(out, "# status = {}", status(passed));
            out.push_str("# three-filter variant (R+, S, R-):\n");
            for line in format_chain(&three).lines() {
                let _ = writeln!(out, "#   {line}");
            }
            out.push_str("# two-filter chain (rotation, then rotated squeeze):\n");
            out.push_str(&format_chain(&two));
        }
    }
    CommandOutcome::with_status(passed, out)
}

fn read_chain(path: &Path) -> Result<FilterChain, CommandOutcome> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CommandOutcome::usage(format!("error: cannot read {}: {e}", path.display())))?;
    parse_chain(&text).map_err(|e| CommandOutcome::usage(format!("error: {}: {e}", path.display())))
}

fn parse_jones_flag(s: &str) -> Result<JonesVector, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(format!("--jones expects A1,phi1,A2,phi2, got `{s}`"));
    }
    let mut v = [0.0; 4];
    for (slot, p) in v.iter_mut().zip(&parts) {
        *slot = finite_f64(p).map_err(|e| format!("--jones: {e}"))?;
    }
    JonesVector::from_polar(v[0], v[1], v[2], v[3]).map_err(|e| format!("--jones: {e}"))
}

fn join_sig17(values: &[f64], sep: &str) -> String {
    values.iter().map(|&x| fmt_sig17(x)).collect::<Vec<_>>().join(sep)
}

fn cmd_apply(chain_path: &Path, jones: &str, tol: f64, format: Format) -> CommandOutcome {
    let chain = match read_chain(chain_path) {
        Ok(c) => c,
        Err(outcome) => return outcome,
    };
    let input = match parse_jones_flag(jones) {
        Ok(v) => v,
        Err(msg) => return CommandOutcome::usage(format!("error: {msg}")),
    };
    let output = apply_to_jones(&chain, &input);
    let via_jones = stokes_from_jones(&output);
    let via_mueller = apply_to_stokes(&chain, &stokes_from_jones(&input));
    let residual = via_jones.max_abs_diff(&via_mueller) / via_mueller.s0.abs().max(1.0);
    let passed = residual < tol;
    let (a1, p1, a2, p2) = output.to_polar();

    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str("a1,phi1,a2,phi2,s0,s1,s2,s3,s0_mueller,s1_mueller,s2_mueller,s3_mueller,residual\n");
            let mut row = vec![a1, p1, a2, p2];
            row.extend(via_jones.as_array());
            row.extend(via_mueller.as_array());
            row.push(residual);
            let _ = writeln!(out, "{}", join_sig17(&row, ","));
        }
        Format::Text => {
            let _ = writeln!(out, "jones_out = {}", join_sig17(&[a1, p1, a2, p2], " "));
            let _ = writeln!(out, "stokes_via_jones = {}", join_sig17(&via_jones.as_array(), " "));
            let _ = writeln!(out, "stokes_via_mueller = {}", join_sig17(&via_mueller.as_array(), " "));
            let _ = writeln!(out, "transmittance = {}", fmt_sig17(compose(&chain).transmittance));
            let _ = writeln!(out, "cross_path_residual = {}", fmt_sig17(residual));
            let _ = writeln!(out, "status = {}", status(passed));
        }
    }
    CommandOutcome::with_status(passed, out)
}

fn cmd_verify(chain_path: &Path, target_path: &Path, tol: f64, format: Format) -> CommandOutcome {
    let chain = match read_chain(chain_path) {
        Ok(c) => c,
        Err(outcome) => return outcome,
    };
    let text = match std::fs::read_to_string(target_path) {
        Ok(t) => t,
        Err(e) => return CommandOutcome::usage(format!("error: cannot read {}: {e}", target_path.display())),
    };
    let target = match parse_matrix(&text) {
        Ok(t) => t,
        Err(e) => return CommandOutcome::usage(format!("error: {}: {e}", target_path.display())),
    };
    let report = verify(&chain, &target, tol);

    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str("representation,residual_maxabs,tolerance,passed\n");
            let _ = writeln!(
                out,
                "{},{},{},{}",
                target.representation(),
                fmt_sig17(report.residual_maxabs),
                fmt_sig17(tol),
                report.passed
            );
        }
        Format::Text => {
            let _ = writeln!(out, "representation = {}", target.representation());
            let _ = writeln!(out, "residual_maxabs = {}", fmt_sig17(report.residual_maxabs));
            let _ = writeln!(out, "tolerance = {}", fmt_sig17(tol));
            let _ = writeln!(out, "passed = {}", report.passed);
            out.push_str("achieved:\n");
            out.push_str(&format_matrix(&report.achieved));
        }
    }
    CommandOutcome::with_status(report.passed, out)
}

fn cmd_sweep(etas: &LinRange, thetas: &LinRange) -> CommandOutcome {
    CommandOutcome::ok(sweep_csv(&wigner_sweep(etas, thetas)))
}

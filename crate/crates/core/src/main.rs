use clap::{Parser, Subcommand};
use orbit_spectrum::exactnum::Rational;
use orbit_spectrum::parse::{parse_form_coeffs, parse_matrix2};
use orbit_spectrum::pipeline::{run_pipeline, OutputFormat, PipelineError, RunConfig};
use orbit_spectrum::su2rep::BinaryForm;
use orbit_spectrum::verify::run_reference_suite;
use std::process::ExitCode;

/// Exact computation of the first Laplace eigenvalue of the minimal
/// Lagrangian SU(2)-orbit in CP^3 and its Hamiltonian-stability verdict.
#[derive(Parser)]
#[command(name = "orbit-spectrum", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline and print the stability report.
    Compute {
        /// Holomorphic sectional curvature c (rational, e.g. 4 or 8/2).
        #[arg(long, allow_hyphen_values = true)]
        curvature: Option<String>,
        /// Cubic form coefficients c0,c1,c2,c3 of c0·z1^3 + c1·z1^2 z2 + ...
        /// in the expression grammar (integers, i, zeta24^j, sqrt2, sqrt3,
        /// rationals, + - * /).
        #[arg(long, allow_hyphen_values = true)]
        form: Option<String>,
        /// Isotropy generator as a 2x2 matrix `a,b;c,d` over the same
        /// grammar; repeat for several generators.
        #[arg(long = "gen", allow_hyphen_values = true)]
        generators: Vec<String>,
        /// Hermitian scale u > 0 (rational).
        #[arg(long, allow_hyphen_values = true)]
        u: Option<String>,
        /// Enumeration cap; the run fails rather than report an uncertified
        /// minimum if the certified stop exceeds it.
        #[arg(long = "max-k")]
        max_k: Option<usize>,
        /// Output format.
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Recompute every reference value and print a pass/fail table.
    VerifyPaper {
        /// Output format.
        #[arg(long, default_value = "text")]
        format: String,
        /// Optional enumeration cap, mainly for exercising the refusal path.
        #[arg(long = "max-k")]
        max_k: Option<usize>,
    },
}

fn parse_rational_arg(name: &str, value: &str) -> Result<Rational, String> {
    value.parse().map_err(|e| format!("--{}: {}", name, e))
}

fn build_config(
    curvature: Option<String>,
    form: Option<String>,
    generators: Vec<String>,
    u: Option<String>,
    max_k: Option<usize>,
    format: OutputFormat,
) -> Result<RunConfig, String> {
    let mut cfg = RunConfig {
        max_k,
        format,
        ..RunConfig::default()
    };
    if let Some(c) = curvature {
        cfg.curvature = parse_rational_arg("curvature", &c)?;
    }
    if let Some(u) = u {
        cfg.u = parse_rational_arg("u", &u)?;
    }
    if let Some(f) = form {
        let coeffs = parse_form_coeffs(&f).map_err(|e| format!("--form: {}", e))?;
        let degree = coeffs.len() - 1;
        cfg.form = BinaryForm::new(degree, coeffs).map_err(|e| format!("--form: {}", e))?;
    }
    if !generators.is_empty() {
        cfg.generators = generators
            .iter()
            .map(|g| parse_matrix2(g).map_err(|e| format!("--gen: {}", e)))
            .collect::<Result<_, _>>()?;
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Compute {
            curvature,
            form,
            generators,
            u,
            max_k,
            format,
        } => {
            let format = match format.parse::<OutputFormat>() {
                Ok(f) => f,
                Err(e) => {
                    eprintln!("error: {}", e);
                    return ExitCode::from(1);
                }
            };
            let cfg = match build_config(curvature, form, generators, u, max_k, format) {
                Ok(cfg) => cfg,
                Err(e) => {
                    eprintln!("error: {}", e);
                    return ExitCode::from(1);
                }
            };
            match run_pipeline(&cfg) {
                Ok(report) => {
                    match format {
                        OutputFormat::Text => print!("{}", report.to_text()),
                        OutputFormat::Json => print!("{}", report.to_json()),
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {}", e);
                    ExitCode::from(e.exit_code() as u8)
                }
            }
        }
        Command::VerifyPaper { format, max_k } => {
            let format = match format.parse::<OutputFormat>() {
                Ok(f) => f,
                Err(e) => {
                    eprintln!("error: {}", e);
                    return ExitCode::from(1);
                }
            };
            match run_reference_suite(max_k) {
                Ok(report) => {
                    match format {
                        OutputFormat::Text => print!("{}", report.to_text()),
                        OutputFormat::Json => print!("{}", report.to_json()),
                    }
                    if report.all_pass {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(3)
                    }
                }
                Err(e @ PipelineError::Config(_)) => {
                    eprintln!("error: {}", e);
                    ExitCode::from(1)
                }
                Err(e) => {
                    eprintln!("refusing to report an uncertified result: {}", e);
                    ExitCode::from(3)
                }
            }
        }
    }
}

//! `fqt` — exact point counting and auxiliary-polynomial experiments over
//! `F_q[t]`.
//!
//! Errors are machine-readable JSON on stderr with stable codes; exit codes:
//! 0 success, 2 precondition (including parse errors), 3 budget,
//! 4 consistency failure (including failed verification suites).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fqt_cli::config::{parse_ell_spec, ExperimentConfig, FileConfig, Format, Mode};
use fqt_cli::run::{cmd_aux, cmd_count, cmd_verify};
use fqt_core::Error;

#[derive(Parser)]
#[command(
    name = "fqt",
    about = "Exact point counting and the determinant method over F_q[t]",
    version
)]
struct Cli {
    /// Declarative configuration file (TOML); flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Field characteristic p (the experiments default to prime q = p).
    #[arg(long = "q", global = true)]
    q: Option<u64>,

    /// Extension degree e, so the field has q = p^e elements.
    #[arg(long, global = true)]
    e: Option<u32>,

    /// Monic irreducible modulus for e > 1, e.g. "u^2+u+1" (found
    /// deterministically when omitted).
    #[arg(long, global = true)]
    modulus: Option<String>,

    /// The polynomial, e.g. "(t^2+1)*x0^3 + t*x1*x2^2".
    #[arg(long = "f", global = true)]
    poly: Option<String>,

    /// Height bounds: a value "2", a list "1,2,4" or a range "1..3".
    #[arg(long, global = true)]
    ell: Option<String>,

    /// The epsilon entering regime classification and bound shapes.
    #[arg(long, global = true)]
    eps: Option<f64>,

    /// Explicit stand-in for the implicit asymptotic constant.
    #[arg(long = "C", global = true)]
    constant: Option<f64>,

    /// Degree cap of the bad-prime search.
    #[arg(long = "cap-deg", global = true)]
    cap_deg: Option<u32>,

    /// Maximum number of tuples any enumeration may visit.
    #[arg(long = "cap-enum", global = true)]
    cap_enum: Option<u64>,

    /// Maximum degree tried by the auxiliary-polynomial search.
    #[arg(long = "cap-M", global = true)]
    cap_m: Option<u32>,

    /// Seed of the randomized property suites.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output file (written atomically); stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Report format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Counting mode.
    #[arg(long, global = true, value_enum)]
    mode: Option<Mode>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count rational points of bounded height on the hypersurface f = 0.
    Count,
    /// Find the minimal-degree auxiliary polynomial vanishing on all small
    /// points of f, with the bound-shape comparison in the report.
    Aux,
    /// Run every property suite with the configured seed.
    Verify {
        /// Test hook: corrupt the named suite's designated computation.
        #[arg(long, hide = true)]
        inject_fault: Option<String>,
    },
}

fn build_config(cli: &Cli) -> Result<ExperimentConfig, Error> {
    let mut cfg = match &cli.config {
        Some(path) => FileConfig::load(path)?.into_experiment()?,
        None => ExperimentConfig::default(),
    };
    if let Some(q) = cli.q {
        cfg.p = q;
    }
    if let Some(e) = cli.e {
        cfg.e = e;
    }
    if cli.modulus.is_some() {
        cfg.modulus = cli.modulus.clone();
    }
    if cli.poly.is_some() {
        cfg.poly = cli.poly.clone();
    }
    if let Some(spec) = &cli.ell {
        cfg.ells = parse_ell_spec(spec)?;
    }
    if let Some(eps) = cli.eps {
        cfg.eps = eps;
    }
    if let Some(c) = cli.constant {
        cfg.constant = c;
    }
    if cli.cap_deg.is_some() {
        cfg.bad_prime_cap = cli.cap_deg;
        cfg.budget.max_prime_degree = cfg.budget.max_prime_degree.max(cli.cap_deg.unwrap());
    }
    if let Some(cap) = cli.cap_enum {
        cfg.budget.max_enum_tuples = cap;
    }
    if let Some(cap) = cli.cap_m {
        cfg.budget.max_aux_degree = cap;
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if cli.out.is_some() {
        cfg.out = cli.out.clone();
    }
    if let Some(format) = cli.format {
        cfg.format = format;
    }
    if let Some(mode) = cli.mode {
        cfg.mode = mode;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Parse { .. } | Error::Precondition(_) => 2,
        Error::Budget(_) => 3,
        Error::Consistency(_) => 4,
    }
}

fn real_main() -> Result<u8, Error> {
    let cli = Cli::parse();
    let cfg = build_config(&cli)?;
    match &cli.command {
        Command::Count => {
            let reports = cmd_count(&cfg)?;
            for r in &reports {
                eprintln!("count(ell={}) = {}", r.ell, r.count.unwrap_or(0));
            }
            Ok(0)
        }
        Command::Aux => {
            let reports = cmd_aux(&cfg)?;
            for r in &reports {
                eprintln!(
                    "aux(ell={}): M = {}, points = {}, bound = {:.3}, ratio = {:.6}",
                    r.ell,
                    r.m.unwrap_or(0),
                    r.count.unwrap_or(0),
                    r.bound_thm.unwrap_or(f64::NAN),
                    r.ratio.unwrap_or(f64::NAN),
                );
            }
            Ok(0)
        }
        Command::Verify { inject_fault } => {
            let report = cmd_verify(&cfg, inject_fault.as_deref())?;
            for suite in &report.suites {
                if suite.passed() {
                    println!("suite {}: ok ({} cases)", suite.name, suite.cases);
                } else {
                    println!(
                        "suite {}: FAILED ({} cases, {} failures)",
                        suite.name,
                        suite.cases,
                        suite.failures.len()
                    );
                    for failure in &suite.failures {
                        println!("  - {failure}");
                    }
                }
            }
            if report.all_passed {
                println!("all suites passed (seed {})", report.seed);
                Ok(0)
            } else {
                let names: Vec<&str> = report
                    .suites
                    .iter()
                    .filter(|s| !s.passed())
                    .map(|s| s.name.as_str())
                    .collect();
                println!("FAILED suites: {}", names.join(", "));
                Ok(4)
            }
        }
    }
}

fn main() -> ExitCode {
    match real_main() {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            let payload = serde_json::json!({
                "code": err.code(),
                "message": err.to_string(),
            });
            eprintln!("{payload}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

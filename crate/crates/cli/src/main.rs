use clap::{Args, Parser, Subcommand};
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;
use wdvv_cli::{run, Command, RunConfig, RunError};

#[derive(Parser)]
#[command(name = "wdvv", version, about = "Numerical checks of generalised WDVV equations")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// WDVV residual of a family at sampled points
    CheckWdvv(RunArgs),
    /// Legendre transformation chain-rule and round-trip checks
    LegendreCheck(RunArgs),
    /// Rational to trigonometric equivalence checks
    EquivalenceCheck(RunArgs),
    /// Trigonometric A_n with bM + c = 0
    SpecialCaseCheck(RunArgs),
    /// Closed-form metric determinant against LU
    MetricCheck(RunArgs),
    /// Closed-form third derivatives against finite differences
    DerivativeCheck(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Config file, or `-` for stdin
    #[arg(long)]
    config: String,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    tolerance: Option<f64>,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include wall-clock time in the report (makes output nondeterministic)
    #[arg(long)]
    timing: bool,
}

impl Cmd {
    fn split(self) -> (Command, RunArgs) {
        match self {
            Self::CheckWdvv(a) => (Command::CheckWdvv, a),
            Self::LegendreCheck(a) => (Command::LegendreCheck, a),
            Self::EquivalenceCheck(a) => (Command::EquivalenceCheck, a),
            Self::SpecialCaseCheck(a) => (Command::SpecialCaseCheck, a),
            Self::MetricCheck(a) => (Command::MetricCheck, a),
            Self::DerivativeCheck(a) => (Command::DerivativeCheck, a),
        }
    }
}

fn load(path: &str) -> Result<RunConfig, RunError> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| RunError::Config(format!("cannot read {path}: {e}")))?
    };
    RunConfig::from_json(&text)
}

fn execute(command: Command, args: RunArgs) -> Result<bool, RunError> {
    let mut cfg = load(&args.config)?;
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(samples) = args.samples {
        cfg.samples = samples;
    }
    if let Some(tol) = args.tolerance {
        cfg.tolerance = tol;
    }
    let start = Instant::now();
    let mut report = run(command, &cfg)?;
    if args.timing {
        report.timing = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    let json = report.to_json();
    match args.out {
        Some(path) => std::fs::write(path, json + "\n")?,
        None => println!("{json}"),
    }
    Ok(report.pass)
}

fn main() -> ExitCode {
    let (command, args) = Cli::parse().command.split();
    match execute(command, args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("wdvv: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

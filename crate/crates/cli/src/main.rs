//! `ellentropy`: metric entropy of lp-ellipsoids from the command line.

mod commands;
mod error;
mod model;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{run_classify, run_constants, Computation, ConstantArgs, Params};
use error::{CliError, CliResult, ExitStatus};
use report::{csv_table, Report};

#[derive(Parser, Debug)]
#[command(
    name = "ellentropy",
    version,
    about = "Metric entropy of lp-ellipsoids measured in lq-norms (values in bits)",
    after_help = "Exit status: 0 success, 2 invalid input, 3 non-compact regime, 4 enumeration or scan cap."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format; sweeps default to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the output to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Report entropies in nats instead of bits.
    #[arg(long, global = true)]
    nats: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact entropy of an ∞-ellipsoid in the sup-norm.
    Exact(Params),
    /// Volume lower or density upper bound for a finite ellipsoid.
    BoundFinite(Params),
    /// Certified upper bound for an infinite ellipsoid.
    BoundInfinite(Params),
    /// Bracket for a mixed ellipsoid with Euclidean blocks.
    MixedBound(Params),
    /// Compactness regime and analytic constants of (p, q, b).
    Classify(Params),
    /// Leading-order entropy band for canonical semi-axes.
    Asymptotic(Params),
    /// Hilbert-space entropy estimator Σ log₂(μ_n/ε).
    Estimator(Params),
    /// Brute-force grid covering and packing in dimension ≤ 3.
    Oracle(Params),
    /// Entropy band of a Besov ball.
    Besov(Params),
    /// Universal constants, as single values or as tables.
    Constants {
        #[command(flatten)]
        select: ConstantArgs,
        #[command(flatten)]
        params: Params,
    },
    /// Evaluate one computation over a log-spaced radius grid.
    Sweep {
        /// The computation to repeat.
        #[arg(long, value_enum)]
        what: Computation,
        /// start:stop:count
        #[arg(long)]
        eps_grid: String,
        #[command(flatten)]
        params: Params,
    },
}

enum Output {
    Single(Report),
    Many(Vec<Report>),
}

fn execute(command: Command) -> CliResult<Output> {
    let single = |what: Computation, p: Params| what.run(&p).map(Output::Single);
    match command {
        Command::Exact(p) => single(Computation::Exact, p),
        Command::BoundFinite(p) => single(Computation::BoundFinite, p),
        Command::BoundInfinite(p) => single(Computation::BoundInfinite, p),
        Command::MixedBound(p) => single(Computation::MixedBound, p),
        Command::Asymptotic(p) => single(Computation::Asymptotic, p),
        Command::Estimator(p) => single(Computation::Estimator, p),
        Command::Oracle(p) => single(Computation::Oracle, p),
        Command::Besov(p) => single(Computation::Besov, p),
        Command::Classify(p) => run_classify(&p).map(Output::Single),
        Command::Constants { select, params } => run_constants(&params, &select).map(Output::Single),
        Command::Sweep { what, eps_grid, params } => {
            let grid = model::parse_eps_grid(&eps_grid)?;
            let reports = grid
                .into_iter()
                .map(|eps| what.run(&Params { eps: Some(eps), ..params.clone() }))
                .collect::<CliResult<Vec<_>>>()?;
            Ok(Output::Many(reports))
        }
    }
}

fn render(output: &Output, format: Format, nats: bool) -> String {
    match (output, format) {
        (Output::Single(r), Format::Json) => format!("{:#}\n", r.to_json(nats)),
        (Output::Single(r), Format::Csv) => csv_table(std::slice::from_ref(r), nats),
        (Output::Many(rs), Format::Json) => {
            let all: Vec<_> = rs.iter().map(|r| r.to_json(nats)).collect();
            format!("{:#}\n", serde_json::Value::Array(all))
        }
        (Output::Many(rs), Format::Csv) => csv_table(rs, nats),
    }
}

fn run(cli: Cli) -> CliResult<ExitStatus> {
    let is_sweep = matches!(cli.command, Command::Sweep { .. });
    let format = cli.format.unwrap_or(if is_sweep { Format::Csv } else { Format::Json });
    let output = execute(cli.command)?;
    let status = match &output {
        Output::Single(r) => r.status,
        Output::Many(rs) => rs.iter().map(|r| r.status).find(|s| *s != ExitStatus::OK).unwrap_or(ExitStatus::OK),
    };
    let text = render(&output, format, cli.nats);
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|source| CliError::Write { path: path.display().to_string(), source })?,
        None => print!("{text}"),
    }
    Ok(status)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(status) => ExitCode::from(status.0),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.status().0)
        }
    }
}

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use latref::commands::{self, CliError, CliResult, Formulation, Report};
use latref::instance::parse_instance;
use latref_core::exact::Integer;
use latref_core::reformulate::EqualitySystem;

/// Kernel-lattice reformulation of integer equality systems.
///
/// Exit codes: 0 answered, 1 usage or parse error, 2 no integer solution,
/// 3 resource limit.
#[derive(Parser)]
#[command(name = "latref", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write the JSON report to this path (`-` for stdout).
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct Split {
    /// Number of long kernel columns.
    #[arg(long, conflicts_with = "ratio")]
    s: Option<usize>,
    /// Split at the last squared-norm ratio >= R (integer or p/q, default 100).
    #[arg(long, value_name = "R")]
    ratio: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormulationArg {
    Orig,
    Ahl,
    Ext,
}

#[derive(Subcommand)]
enum Command {
    /// Build the extended formulation P x = P x0 + T mu.
    Reformulate {
        file: PathBuf,
        #[command(flatten)]
        split: Split,
        #[command(flatten)]
        out: Output,
    },
    /// Integer width of a knapsack along its detected decomposition.
    Width {
        file: PathBuf,
        /// Right-hand side to analyse instead of the file's b.
        #[arg(long)]
        b: Option<String>,
        #[command(flatten)]
        split: Split,
        #[command(flatten)]
        out: Output,
    },
    /// Lower bound on the Frobenius number from the decomposition.
    FrobeniusBound {
        file: PathBuf,
        #[command(flatten)]
        split: Split,
        #[command(flatten)]
        out: Output,
    },
    /// Exact Frobenius number by shortest paths over residues.
    FrobeniusExact {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Branch-and-bound feasibility on one formulation.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "ext")]
        formulation: FormulationArg,
        #[command(flatten)]
        split: Split,
        #[arg(long, default_value_t = 1_000_000)]
        node_limit: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Write a random market-split instance.
    GenMarketSplit {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        seed: u64,
        /// Output file (stdout if omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Node counts of the original, full-kernel and extended formulations.
    Compare {
        file: PathBuf,
        /// Comma-separated values of s for the extended rows.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        s: Vec<usize>,
        #[arg(long, default_value_t = 1_000_000)]
        node_limit: u64,
        #[command(flatten)]
        out: Output,
    },
}

fn read_instance(path: &Path) -> CliResult<EqualitySystem> {
    let mut src = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut src)?;
    } else {
        src = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    }
    parse_instance(&src).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn emit(report: Report, out: &Output) -> CliResult<i32> {
    let body = serde_json::to_string(&report.json).expect("JSON values serialize") + "\n";
    match &out.json {
        Some(p) if p.as_os_str() == "-" => print!("{body}"),
        Some(p) => {
            std::fs::write(p, body)?;
            print!("{}", report.text);
        }
        None => print!("{}", report.text),
    }
    Ok(report.code)
}

fn policy(split: &Split) -> CliResult<latref_core::reformulate::SplitPolicy> {
    commands::split_policy(split.s, split.ratio.as_deref())
}

fn run(cli: Cli) -> CliResult<i32> {
    match cli.command {
        Command::Reformulate { file, split, out } => emit(commands::reformulate(&read_instance(&file)?, &policy(&split)?)?, &out),
        Command::Width { file, b, split, out } => {
            let b = b
                .map(|s| s.parse::<Integer>().map_err(|_| CliError::Usage(format!("invalid --b `{s}`"))))
                .transpose()?;
            emit(commands::width(&read_instance(&file)?, b, &policy(&split)?)?, &out)
        }
        Command::FrobeniusBound { file, split, out } => {
            emit(commands::frobenius_bound(&read_instance(&file)?, &policy(&split)?)?, &out)
        }
        Command::FrobeniusExact { file, out } => emit(commands::frobenius(&read_instance(&file)?)?, &out),
        Command::Solve { file, formulation, split, node_limit, out } => {
            let f = match formulation {
                FormulationArg::Orig => Formulation::Original,
                FormulationArg::Ahl => Formulation::Ahl,
                FormulationArg::Ext => Formulation::Extended,
            };
            emit(commands::solve(&read_instance(&file)?, f, &policy(&split)?, node_limit)?, &out)
        }
        Command::GenMarketSplit { m, seed, output } => {
            let body = commands::market_split(m, seed)?;
            match output {
                Some(p) => std::fs::write(p, body)?,
                None => print!("{body}"),
            }
            Ok(commands::EXIT_OK)
        }
        Command::Compare { file, s, node_limit, out } => {
            emit(commands::compare(&read_instance(&file)?, &s, node_limit)?, &out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use odd_terwilliger::centralizer::build_centralizer;
use odd_terwilliger::combinatorics::DoubledOddGraph;
use odd_terwilliger::export::export_matrices;
use odd_terwilliger::report::{parse_checks, run, CheckId, RunConfig};
use odd_terwilliger::terwilliger::{build_terwilliger, center_dimension};
use odd_terwilliger::Result;

#[derive(Parser)]
#[command(
    version,
    about = "Exact verification for the doubled Odd graph and its Terwilliger algebra"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct MArg {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    allow_m5: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification checks and emit a JSON report.
    Verify {
        #[command(flatten)]
        m: MArg,
        /// Comma-separated check ids, or `all`.
        #[arg(long, default_value = "all")]
        checks: String,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        #[arg(long)]
        export_dir: Option<PathBuf>,
    },
    /// Print |X|, dim A, dim T and dim Z(T).
    Dims {
        #[command(flatten)]
        m: MArg,
    },
    /// Write every matrix in coordinate text format.
    Export {
        #[command(flatten)]
        m: MArg,
        #[arg(long)]
        export_dir: PathBuf,
    },
}

fn config(m: &MArg, checks: Vec<CheckId>) -> Result<RunConfig> {
    let mut cfg = RunConfig::new(m.m).with_checks(checks);
    cfg.allow_m5 = m.allow_m5;
    cfg.validate()?;
    Ok(cfg)
}

fn execute(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Verify {
            m,
            checks,
            out,
            cache_dir,
            export_dir,
        } => {
            let mut cfg = config(&m, parse_checks(&checks)?)?;
            cfg.cache_dir = cache_dir;
            cfg.export_dir = export_dir;
            let outcome = run(&cfg)?;
            let json = outcome.to_json();
            match out {
                Some(path) => std::fs::write(&path, json + "\n")
                    .map_err(|source| odd_terwilliger::Error::Io { path, source })?,
                None => println!("{json}"),
            }
            for r in &outcome.reports {
                eprintln!("{:<20} {:?}", r.check.as_str(), r.status);
            }
            Ok(!outcome.any_failed())
        }
        Command::Dims { m } => {
            let cfg = config(&m, Vec::new())?;
            let graph = DoubledOddGraph::new(cfg.m)?;
            let a = build_centralizer(&graph)?;
            let t = build_terwilliger(&graph)?;
            println!("|X|      {}", graph.n());
            println!("dim A    {}", a.dim());
            println!("dim T    {}", t.dim());
            println!("dim Z(T) {}", center_dimension(&t)?);
            Ok(true)
        }
        Command::Export { m, export_dir } => {
            let cfg = config(&m, Vec::new())?;
            let graph = DoubledOddGraph::new(cfg.m)?;
            let a = build_centralizer(&graph)?;
            let t = build_terwilliger(&graph)?;
            let summary = export_matrices(&export_dir, &graph, &a, Some(&t.basis))?;
            println!(
                "wrote {} files to {}",
                summary.files.len(),
                export_dir.display()
            );
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    env_logger::init();
    match execute(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

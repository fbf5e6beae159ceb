use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use gensamp::config::{ExperimentConfig, ExperimentId, Overrides};
use gensamp::experiments::run;

/// Run one generalized sampling experiment and write its CSV tables.
#[derive(Debug, Parser)]
#[command(name = "gensamp", version)]
struct Cli {
    experiment: ExperimentId,
    /// Output directory, created if missing.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let config = ExperimentConfig {
        id: cli.experiment,
        out_dir: cli.out,
        overrides: Overrides {
            epsilon: cli.epsilon,
            n: cli.n,
            m: cli.m,
            grid: cli.grid,
            seed: cli.seed,
        },
    };
    match run(&config) {
        Ok(report) => {
            println!("{}", report.summary);
            for f in &report.files {
                eprintln!("wrote {}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("gensamp: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

use std::io::Write;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use ris_otfs::experiments::{self, Overrides, Scenario};

/// RIS-assisted OTFS experiments.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Average channel gain versus number of RIS elements.
    GainSweep(Common),
    /// Optimizer objective per iteration.
    Convergence(Common),
    /// BER versus SNR over the configured link profiles.
    Ber(Common),
    /// BER versus SNR over TDL-C links.
    Tdl(Common),
}

#[derive(Args)]
struct Common {
    /// TOML config; built-in desk-scale defaults when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Output CSV path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Channel realizations, or frames per SNR point for BER scenarios.
    #[arg(long)]
    realizations: Option<usize>,
    /// Worker threads; all cores when omitted.
    #[arg(long)]
    workers: Option<usize>,
    /// Print the resolved config and exit.
    #[arg(long)]
    print_config: bool,
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let (scenario, args) = match cli.command {
        Command::GainSweep(a) => (Scenario::GainSweep, a),
        Command::Convergence(a) => (Scenario::Convergence, a),
        Command::Ber(a) => (Scenario::BerSweep, a),
        Command::Tdl(a) => (Scenario::Tdl, a),
    };
    let overrides = Overrides { scenario: Some(scenario), master_seed: args.seed, realizations: args.realizations };
    let cfg = match &args.config {
        Some(path) => {
            experiments::load_config(path, &overrides).with_context(|| format!("loading {}", path.display()))?
        }
        None => experiments::parse_config_with("", &overrides)?,
    };
    if args.print_config {
        print!("{}", cfg.to_toml());
        return Ok(());
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = args.workers {
        pool = pool.num_threads(w.max(1));
    }
    let pool = pool.build().context("starting worker pool")?;
    let table = pool.install(|| experiments::run(&cfg))?;
    match &args.out {
        Some(path) => experiments::emit_results(&table, path).with_context(|| format!("writing {}", path.display()))?,
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            table.write_csv(&mut lock)?;
            lock.flush()?;
        }
    }
    Ok(())
}

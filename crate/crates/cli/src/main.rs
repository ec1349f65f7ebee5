use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use itc_cli::config::{parse_int_list, FileConfig, IntList, PairValue, RunConfig};
use itc_cli::run::execute;
use itc_core::experiments::Experiment;

/// Environment variable holding the worker thread count.
const WORKERS_ENV: &str = "ITC_WORKERS";

#[derive(Parser)]
#[command(name = "itc", version, about = "Inhomogeneous Tavis-Cummings sweeps: spectra, row-2 energy shift, pair concurrence")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ground energies per sector: row-1, row-1+2, exact and closed form
    Spectrum(Opts),
    /// Percentage energy shift from adding row-2 states
    DeltaE(Opts),
    /// Concurrence between atom 1 and every other atom
    ConcProfile(Opts),
    /// Concurrence between the first and last atom
    ConcFirstLast(Opts),
}

#[derive(Args)]
struct Opts {
    /// TOML run configuration; flags override its values
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
    /// Check the figure claims and exit with status 2 if any fails
    #[arg(long)]
    verify: bool,
    /// Also write an SVG plot
    #[arg(long)]
    plot: bool,
    /// Coupling profile: sine, uniform or explicit
    #[arg(long)]
    profile: Option<String>,
    /// Coupling amplitude
    #[arg(long)]
    kappa: Option<f64>,
    /// Cavity length
    #[arg(long)]
    length: Option<f64>,
    /// Explicit couplings, comma separated
    #[arg(long, value_delimiter = ',')]
    kappas: Option<Vec<f64>>,
    /// Atom counts, e.g. "4..20" or "10,20,30"
    #[arg(long)]
    n_atoms: Option<String>,
    /// Excitation numbers, e.g. "1..6"
    #[arg(long)]
    k: Option<String>,
    /// first_vs_all, first_vs_last, or two 1-based atoms "i,j"
    #[arg(long)]
    pair: Option<String>,
    /// Largest exact sector dimension used for oracle columns
    #[arg(long)]
    sector_cap: Option<usize>,
}

impl Opts {
    fn flags(&self) -> Result<FileConfig, String> {
        let list = |s: &Option<String>| -> Result<Option<IntList>, String> {
            s.as_deref()
                .map(|t| parse_int_list(t).map(IntList::Many).map_err(|e| e.to_string()))
                .transpose()
        };
        Ok(FileConfig {
            experiment: None,
            profile: self.profile.clone(),
            kappa: self.kappa,
            length: self.length,
            kappas: self.kappas.clone(),
            n_atoms: list(&self.n_atoms)?,
            k: list(&self.k)?,
            pair: self.pair.clone().map(PairValue::Named),
            sector_cap: self.sector_cap,
            out: self.out.clone(),
            plot: self.plot.then_some(true),
            verify: self.verify.then_some(true),
        })
    }
}

fn configure_workers() -> Result<(), String> {
    let Ok(text) = std::env::var(WORKERS_ENV) else {
        return Ok(());
    };
    let n: usize = text
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("{WORKERS_ENV} must be a positive integer, got {text:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let (experiment, opts) = match &cli.command {
        Command::Spectrum(o) => (Experiment::Spectrum, o),
        Command::DeltaE(o) => (Experiment::DeltaE, o),
        Command::ConcProfile(o) => (Experiment::ConcProfile, o),
        Command::ConcFirstLast(o) => (Experiment::ConcFirstLast, o),
    };
    let resolved = configure_workers().and_then(|()| {
        let file = match &opts.config {
            Some(path) => FileConfig::load(path).map_err(|e| e.to_string())?,
            None => FileConfig::default(),
        };
        RunConfig::resolve(experiment, file.overlay(opts.flags()?)).map_err(|e| e.to_string())
    });
    let run = match resolved {
        Ok(run) => run,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };

    let outcome = match execute(&run) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    for f in &outcome.files {
        eprintln!("wrote {}", f.display());
    }
    for c in &outcome.checks {
        eprintln!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    if outcome.verified() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}

//! Command-line front end for `spinring`: field sweeps, reconstruction of
//! tripartite negativity from measured Svetlichny values, angle optimization
//! and count-level Monte Carlo, written as CSV or JSON.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use config::{Format, RunConfig, TableInput};
pub use error::CliError;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(
    name = "spinring",
    version,
    about = "Entanglement and nonlocality of three-spin Ising rings"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Witness, Svetlichny value, three-tangle and negativity over a field grid.
    Sweep(Overrides),
    /// Tripartite negativity inferred from measured Svetlichny values.
    Table {
        #[command(flatten)]
        common: Overrides,
        /// Measured values as `value` or `value:error`, comma separated.
        #[arg(long, value_delimiter = ',', value_parser = parse_table_input)]
        s3: Option<Vec<TableInput>>,
    },
    /// Svetlichny value at optimized and at default measurement angles.
    Optimize {
        #[command(flatten)]
        common: Overrides,
        /// Single field value instead of the grid.
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<f64>,
    },
    /// Spread of the count-level Svetlichny estimator.
    Montecarlo(Overrides),
}

#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    /// JSON file with any subset of the run configuration.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta_max: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long)]
    pub noise: Option<bool>,
    /// Mean coincidences per measurement setting.
    #[arg(long)]
    pub counts: Option<f64>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

fn parse_table_input(s: &str) -> Result<TableInput, String> {
    let (v, e) = match s.split_once(':') {
        Some((v, e)) => (v, Some(e)),
        None => (s, None),
    };
    let s3 = v.trim().parse::<f64>().map_err(|e| format!("{v}: {e}"))?;
    let error = match e {
        Some(e) => e
            .trim()
            .parse::<f64>()
            .map_err(|err| format!("{e}: {err}"))?,
        None => 0.0,
    };
    Ok(TableInput { s3, error })
}

impl Overrides {
    /// Config file (or defaults) with the given flags applied on top.
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        if let Some(v) = self.beta_min {
            cfg.beta_min = v;
        }
        if let Some(v) = self.beta_max {
            cfg.beta_max = v;
        }
        if let Some(v) = self.steps {
            cfg.steps = v;
        }
        if let Some(v) = self.noise {
            cfg.noise = v;
        }
        if let Some(v) = self.counts {
            cfg.counts = Some(v);
        }
        if let Some(v) = self.trials {
            cfg.trials = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = &self.out {
            cfg.out = Some(v.clone());
        }
        if let Some(v) = self.format {
            cfg.format = v;
        }
        Ok(cfg)
    }
}

/// Resolves the configuration and renders the command's output.
pub fn execute(cmd: &Command) -> Result<(RunConfig, String), CliError> {
    let (name, cfg) = match cmd {
        Command::Sweep(o) => ("sweep", o.resolve()?),
        Command::Table { common, s3 } => {
            let mut cfg = common.resolve()?;
            if let Some(values) = s3 {
                cfg.table = values.clone();
            }
            ("table", cfg)
        }
        Command::Optimize { common, beta } => {
            let mut cfg = common.resolve()?;
            if beta.is_some() {
                cfg.beta = *beta;
            }
            ("optimize", cfg)
        }
        Command::Montecarlo(o) => ("montecarlo", o.resolve()?),
    };
    cfg.validate()?;
    let text = match name {
        "sweep" => output::render(name, &cfg, &commands::sweep(&cfg)?)?,
        "table" => output::render(name, &cfg, &commands::table(&cfg)?)?,
        "optimize" => output::render(name, &cfg, &commands::optimize(&cfg)?)?,
        _ => output::render(name, &cfg, &commands::montecarlo(&cfg)?)?,
    };
    Ok((cfg, text))
}

/// Runs the CLI on `args` and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = execute(&cli.command).and_then(|(cfg, text)| output::emit(&cfg, &text));
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("spinring: {e}");
            e.exit_code()
        }
    }
}

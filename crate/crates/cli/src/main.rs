//! `esd`: trajectories, switch-time sweeps and critical times for two
//! amplitude-damped qubits.
//!
//! Settings come from built-in defaults, then the `--config` JSON file, then
//! command-line flags; later sources win.

mod commands;
mod config;

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};

use config::{GridSpec, Overrides, ScenarioConfig, SwitchKind};

#[derive(Debug, Parser)]
#[command(
    name = "esd",
    version,
    about = "Entanglement sudden death under local switches"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Scenario file (JSON).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output file; standard output if omitted.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Switch kind: schedule for `evolve` (with --t-sw), sweep kind otherwise.
    #[arg(long, global = true, value_enum)]
    switch: Option<SwitchKind>,
    /// Switch time for a single-event schedule.
    #[arg(
        long = "t-sw",
        global = true,
        value_name = "FLOAT",
        allow_hyphen_values = true
    )]
    t_sw: Option<f64>,
    /// Sample grid as START:STOP:COUNT.
    #[arg(long, global = true, value_name = "START:STOP:COUNT")]
    grid: Option<GridSpec>,
    /// Bisection tolerance in dimensionless time.
    #[arg(long, global = true, value_name = "FLOAT")]
    tol: Option<f64>,
    /// Decay rate used to convert between physical and dimensionless time.
    #[arg(long, global = true, value_name = "FLOAT", allow_hyphen_values = true)]
    gamma: Option<f64>,
    /// Print the effective configuration as JSON and exit.
    #[arg(long, global = true)]
    dump_config: bool,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum Command {
    /// Negativity, concurrence and entropy along a time grid.
    Evolve,
    /// End of entanglement as a function of the switch time.
    Sweep,
    /// Unswitched end time and the critical switch times.
    Critical,
}

fn load(cli: &Cli) -> anyhow::Result<ScenarioConfig> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("config: cannot read {}", path.display()))?;
            ScenarioConfig::from_json(&text)?
        }
        None => ScenarioConfig::default(),
    };
    cfg.apply_overrides(&Overrides {
        out: cli.out.clone(),
        switch: cli.switch,
        t_sw: cli.t_sw,
        grid: cli.grid,
        tol: cli.tol,
        gamma: cli.gamma,
    });
    Ok(cfg)
}

fn run(cli: &Cli) -> anyhow::Result<()> {
    let cfg = load(cli)?;
    let mut buf = Vec::new();
    if cli.dump_config {
        writeln!(buf, "{}", cfg.to_json())?;
    } else {
        let sc = cfg.resolve()?;
        match cli.command {
            Command::Evolve => commands::evolve(&sc, &mut buf)?,
            Command::Sweep => commands::sweep(&sc, &mut buf)?,
            Command::Critical => commands::critical(&sc, &mut buf)?,
        }
    }
    // nothing is written unless the whole command succeeded
    match &cfg.output {
        Some(path) => {
            let mut f = BufWriter::new(
                File::create(path)
                    .with_context(|| format!("output: cannot create {}", path.display()))?,
            );
            f.write_all(&buf)?;
            f.flush()?;
        }
        None => io::stdout().lock().write_all(&buf)?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

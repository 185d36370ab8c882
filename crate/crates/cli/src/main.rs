mod commands;
mod settings;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use settings::{ConfigError, Settings};

/// Two-photon interference in transverse modes: coincidence probabilities,
/// symmetry classes and spiral-phase-plate interferometer scans.
///
/// Every option may also be set in a flat TOML file passed with `--config`,
/// using the option name with `_` for `-` as key (for example
/// `aperture_factor = 40.0`, `pump = "hg:0,1"`, `range = "0.25,4"`).
/// Unknown keys are rejected; flags override the file.
///
/// Exit status: 0 on success, 2 for invalid configuration, 3 when the
/// interferometer transmits nothing (degenerate configuration), 1 otherwise.
/// `BIPHOTON_THREADS` caps the number of worker threads.
#[derive(Debug, Parser)]
#[command(name = "biphoton", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Coincidence probability, symmetry weights and entanglement witness.
    Pc(Settings),
    /// Scan zeta or alpha_plus through the interferometer and write CSV.
    Scan(Settings),
    /// Classify a state as symmetric, antisymmetric or mixed.
    Classify(Settings),
}

fn configure_threads() -> anyhow::Result<()> {
    let Ok(value) = std::env::var("BIPHOTON_THREADS") else {
        return Ok(());
    };
    let threads: usize = value.parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        ConfigError(format!(
            "invalid BIPHOTON_THREADS `{value}`: expected a positive integer"
        ))
    })?;
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    configure_threads()?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Pc(s) => commands::pc(&s.resolve()?, &mut out),
        Command::Scan(s) => commands::scan_command(&s.resolve()?, &mut out),
        Command::Classify(s) => commands::classify(&s.resolve()?, &mut out),
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<ConfigError>().is_some() {
        return 2;
    }
    match err.downcast_ref::<biphoton::Error>() {
        Some(e) if e.is_degenerate() => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

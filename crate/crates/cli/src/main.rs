use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use orelab::oracle::{oracle_report, parse_ring_spec};
use orelab::{
    check_maps, emit_report, exit_code, parse_config, run_scenarios, Format, RunOptions,
    ScenarioConfig, CONFIG_ERROR,
};

#[derive(Parser)]
#[command(
    name = "orelab",
    version,
    about = "Exact verification scenarios for Ore extensions R[x; sigma, D]"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every scenario in a configuration file.
    Run {
        config: PathBuf,
        /// Run seed; each scenario without its own seed gets a split of it.
        #[arg(long, env = "ORELAB_SEED", default_value_t = 0)]
        seed: u64,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Check only the automorphism, derivation and q-skew axioms of each scenario.
    CheckMaps {
        config: PathBuf,
        #[arg(long, env = "ORELAB_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Print J(R), N(R) and the center of a finite ring given as JSON, e.g. '{"modular_int": 4}'.
    Oracle {
        ring_spec: String,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
}

fn load(path: &Path) -> Result<Vec<ScenarioConfig>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_config(&text).map_err(|e| e.to_string())
}

fn config_error(message: &str) -> ExitCode {
    eprintln!("configuration error:\n{message}");
    ExitCode::from(CONFIG_ERROR as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            config,
            seed,
            jobs,
            format,
        } => match load(&config) {
            Ok(configs) => {
                let reports = run_scenarios(&configs, &RunOptions { seed, jobs });
                print!("{}", emit_report(&reports, format));
                ExitCode::from(exit_code(&reports) as u8)
            }
            Err(e) => config_error(&e),
        },
        Command::CheckMaps {
            config,
            seed,
            format,
        } => match load(&config) {
            Ok(configs) => {
                let reports = check_maps(&configs, &RunOptions { seed, jobs: 1 });
                print!("{}", emit_report(&reports, format));
                ExitCode::from(exit_code(&reports) as u8)
            }
            Err(e) => config_error(&e),
        },
        Command::Oracle { ring_spec, format } => {
            match parse_ring_spec(&ring_spec).and_then(|spec| oracle_report(&spec, format)) {
                Ok(text) => {
                    print!("{text}");
                    ExitCode::SUCCESS
                }
                Err(e) => config_error(&e),
            }
        }
    }
}

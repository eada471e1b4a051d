use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qwalk::angle::parse_angle;
use qwalk::config::{ConfigFile, DEFAULT_GRID};
use qwalk::output::{self, write_file};
use qwalk::{AppError, Result, Runner};
use qwalk_core::{CoinLayout, ExperimentConfig, OutputSink, Sweep, SweepParameter};

#[derive(Parser)]
#[command(name = "qwalk", version, about = "Quantum walks on a Cantor-sequence coin chain")]
struct Cli {
    /// Output directory
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,

    /// Worker threads (default: one per core)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment described by a TOML or JSON config
    Run {
        #[arg(long)]
        config: PathBuf,
    },
    /// Sweep theta1 over [0, pi/2] at fixed theta2 and record sigma/L and S_E at t = L
    Sweep {
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        theta2: f64,
        #[arg(long)]
        generation: u32,
        /// Number of uniform intervals
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
    },
    /// Detect the critical time against the homogeneous companion run
    Tc {
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        theta1: f64,
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        theta2: f64,
        #[arg(long)]
        generation: u32,
    },
    /// Write the coin labels of a Cantor chain, one per line
    Layout {
        #[arg(long)]
        generation: u32,
    },
}

fn created(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| AppError::io(dir, e))
}

fn execute(cli: Cli) -> Result<Vec<PathBuf>> {
    match cli.command {
        Command::Run { config } => {
            let cfg = ConfigFile::load(&config)?.into_config()?;
            let run = Runner::new(cli.threads)?.run(&cfg)?;
            output::write_run(&cli.out, &cfg.outputs, &run)
        }
        Command::Sweep { theta2, generation, grid } => {
            let cfg = ExperimentConfig {
                sweep: Some(Sweep::uniform(SweepParameter::Theta1, 0.0, std::f64::consts::FRAC_PI_2, grid)),
                ..ExperimentConfig::cantor(generation, theta2, theta2)
            };
            let rows = Runner::new(cli.threads)?.angle_sweep_at_l(&cfg)?;
            created(&cli.out)?;
            let path = cli.out.join("sweep.csv");
            write_file(&path, |w| output::write_sweep(w, &rows))?;
            Ok(vec![path])
        }
        Command::Tc { theta1, theta2, generation } => {
            let cfg = ExperimentConfig {
                outputs: vec![OutputSink::Series, OutputSink::Transition],
                snapshot_times: Some(Vec::new()),
                ..ExperimentConfig::cantor(generation, theta1, theta2)
            };
            let run = Runner::new(cli.threads)?.run(&cfg)?;
            output::write_run(&cli.out, &cfg.outputs, &run)
        }
        Command::Layout { generation } => {
            let layout = CoinLayout::cantor(generation)?;
            created(&cli.out)?;
            let path = cli.out.join(format!("layout_g{generation}.txt"));
            std::fs::write(&path, layout.to_text()).map_err(|e| AppError::io(&path, e))?;
            Ok(vec![path])
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

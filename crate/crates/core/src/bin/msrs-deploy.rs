use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use msrs_deploy::harness::{compare, run_experiment, ExperimentConfig};
use msrs_deploy::metrics::FrontPoint;
use msrs_deploy::optimizer::Algorithm;
use msrs_deploy::scenario::{DeploymentVector, Point};
use msrs_deploy::{Error, Result, WorkingMode};

#[derive(Parser)]
#[command(name = "msrs-deploy", version, about = "Multistatic radar deployment optimizer")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Cd,
    Nrcd,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Coop,
    Noncoop,
}

#[derive(Subcommand)]
enum Command {
    /// Run seeded repetitions and write fronts, metrics and a manifest.
    Optimize {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum)]
        algorithm: Option<AlgoArg>,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        snapshot_every: Option<usize>,
    },
    /// Print the objectives of one deployment.
    Evaluate {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// TOML file with `positions = [[x, y], ...]` and `power_ratios = [...]`.
        #[arg(long)]
        dv: PathBuf,
    },
    /// Compare output directory B against control A.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 0.15, allow_negative_numbers = true)]
        ref_cr: f64,
        #[arg(long, default_value_t = -15.0, allow_negative_numbers = true)]
        ref_lr_db: f64,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load_config(path: Option<&Path>) -> Result<ExperimentConfig> {
    match path {
        Some(p) => ExperimentConfig::load(p),
        None => Ok(ExperimentConfig::default()),
    }
}

fn apply_mode(cfg: &mut ExperimentConfig, mode: Option<ModeArg>) {
    if let Some(m) = mode {
        cfg.scenario.mode = match m {
            ModeArg::Coop => WorkingMode::Cooperative,
            ModeArg::Noncoop => WorkingMode::NonCooperative,
        };
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DvFile {
    positions: Vec<[f64; 2]>,
    power_ratios: Vec<f64>,
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io {
            path: p.to_path_buf(),
            source: e,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Optimize {
            config,
            seed,
            algorithm,
            mode,
            out,
            snapshot_every,
        } => {
            let mut cfg = load_config(config.as_deref())?;
            if let Some(s) = seed {
                cfg.run.seed = s;
            }
            if let Some(a) = algorithm {
                cfg.optimizer.algorithm = match a {
                    AlgoArg::Cd => Algorithm::MopsoCd,
                    AlgoArg::Nrcd => Algorithm::MopsoNrcd,
                    AlgoArg::Random => Algorithm::Random,
                };
            }
            apply_mode(&mut cfg, mode);
            if let Some(o) = out {
                cfg.run.output_dir = o;
            }
            if let Some(n) = snapshot_every {
                cfg.run.snapshot_every = n;
            }
            let res = run_experiment(&cfg)?;
            for r in &res.metrics.runs {
                println!(
                    "{}  solutions={}  dominated_space={:.6}",
                    r.run_id, r.front_size, r.dominated_space
                );
            }
            println!("wrote {}", res.output_dir.display());
            Ok(())
        }
        Command::Evaluate { config, mode, dv } => {
            let mut cfg = load_config(config.as_deref())?;
            apply_mode(&mut cfg, mode);
            cfg.validate()?;
            let text = std::fs::read_to_string(&dv).map_err(|e| Error::Io {
                path: dv.clone(),
                source: e,
            })?;
            let file: DvFile = toml::from_str(&text).map_err(|e| Error::Parse {
                path: dv.clone(),
                message: e.message().to_string(),
            })?;
            let evaluator = cfg.evaluator()?;
            let dv = DeploymentVector::new(
                file.positions.iter().map(|p| Point::new(p[0], p[1])).collect(),
                file.power_ratios,
                evaluator.scenario(),
            )?;
            let o = evaluator.evaluate(&dv);
            println!("cr = {}", o.coverage_ratio);
            println!("lr_db = {}", o.lowest_rtsn_db());
            Ok(())
        }
        Command::Compare {
            a,
            b,
            ref_cr,
            ref_lr_db,
            out,
        } => {
            let report = compare(&a, &b, FrontPoint::new(ref_cr, ref_lr_db))?;
            write_or_print(out.as_deref(), &report.to_toml_string()?)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

//! Command-line front end.
//!
//! ```text
//! fbandit run <config>                       run an experiment
//! fbandit sweep-partition <config> --k 2,4   planted-partition sweep over k
//! fbandit grid-search <config>               tune a policy family
//! fbandit graph-stats <edge-list>            print graph statistics as JSON
//! ```

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use feedback_bandits::graph::{load_edge_list, load_edge_list_remapped};
use feedback_bandits::runner::{
    emit_grid, emit_results, emit_sweep, planted_partition_sweep, run_experiment,
    run_grid_search, ExperimentConfig, GraphStats,
};

#[derive(Parser)]
#[command(name = "fbandit", version, about = "Bandits with graph-structured feedback")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a config file.
    Run {
        config: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Run a planted-partition config once per group count.
    SweepPartition {
        config: PathBuf,
        /// Comma-separated group counts; must include 2.
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<usize>,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Grid-search the hyperparameters in the config's `grid_search` section.
    GridSearch {
        config: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Print n, |E|, max degree, clique cover and dominating set sizes as JSON.
    GraphStats {
        edge_list: PathBuf,
        /// Compact sparse vertex ids to 0..n.
        #[arg(long)]
        remap_ids: bool,
    },
}

#[derive(Args)]
struct Overrides {
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    horizon: Option<usize>,
    /// Also write per-trial curves.
    #[arg(long)]
    verbose_curves: bool,
}

impl Overrides {
    fn load(&self, path: &PathBuf) -> Result<ExperimentConfig> {
        let mut cfg = ExperimentConfig::load(path)
            .with_context(|| format!("loading {}", path.display()))?;
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        if let Some(out) = &self.out {
            cfg.output = Some(out.clone());
        }
        if let Some(trials) = self.trials {
            cfg.trials = trials;
        }
        if let Some(horizon) = self.horizon {
            cfg.horizon = horizon;
        }
        cfg.verbose_curves |= self.verbose_curves;
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Serialize)]
struct GraphReport {
    #[serde(flatten)]
    stats: GraphStats,
    self_loops_dropped: usize,
}

fn print_paths(paths: &[PathBuf]) {
    for p in paths {
        println!("{}", p.display());
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run { config, overrides } => {
            let cfg = overrides.load(&config)?;
            log::info!("running {} ({} trials, T = {})", cfg.name, cfg.trials, cfg.horizon);
            let result = run_experiment(&cfg)?;
            for p in &result.policies {
                log::info!("{}: final regret {:.3}", p.name, p.final_center());
            }
            print_paths(&emit_results(&result, &cfg.output_dir())?);
        }
        Command::SweepPartition { config, k, overrides } => {
            let cfg = overrides.load(&config)?;
            if !k.contains(&2) {
                bail!("--k must include 2");
            }
            let dir = cfg.output_dir();
            let (table, runs) = planted_partition_sweep(&cfg, &k)?;
            for (k, run) in k.iter().zip(&runs) {
                print_paths(&emit_results(run, &dir.join(format!("k{k}")))?);
            }
            print_paths(&emit_sweep(&table, &dir)?);
        }
        Command::GridSearch { config, overrides } => {
            let cfg = overrides.load(&config)?;
            let (result, best) = run_grid_search(&cfg)?;
            log::info!("best {best:?} with score {:.3}", result.best_score);
            let policy = cfg.grid_search.as_ref().map_or("", |g| g.policy.as_str());
            print_paths(&emit_grid(&cfg, policy, &result, &cfg.output_dir())?);
        }
        Command::GraphStats { edge_list, remap_ids } => {
            let loaded = if remap_ids {
                load_edge_list_remapped(&edge_list)?
            } else {
                load_edge_list(&edge_list)?
            };
            let report = GraphReport {
                stats: GraphStats::compute(&loaded.graph),
                self_loops_dropped: loaded.self_loops_dropped,
            };
            println!("{}", serde_json::to_string_pretty(&report)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

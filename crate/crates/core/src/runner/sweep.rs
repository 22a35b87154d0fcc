use serde::{Deserialize, Serialize};

use super::config::{ExperimentConfig, GraphSpec};
use super::experiment::{run_experiment, ExperimentResult};
use crate::error::{Error, Result};
use crate::policies::{grid_search, GridSearchResult, PolicySpec};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub k: usize,
    pub policy: String,
    /// Median-of-means regret at the horizon.
    pub final_regret: f64,
    /// `final_regret` divided by the best policy's regret at k = 2.
    pub relative_regret: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub ks: Vec<usize>,
    pub baseline_policy: String,
    pub baseline_regret: f64,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn relative(&self, k: usize, policy: &str) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.k == k && r.policy == policy)
            .map(|r| r.relative_regret)
    }
}

/// Config for the `k`-group member of a planted-partition sweep.
pub fn with_groups(template: &ExperimentConfig, k: usize) -> Result<ExperimentConfig> {
    let GraphSpec::PlantedPartition { n, p, q, .. } = template.graph else {
        return Err(Error::Config("partition sweep needs a planted-partition graph".into()));
    };
    let mut cfg = template.clone();
    cfg.graph = GraphSpec::PlantedPartition { n, k, p, q };
    cfg.name = format!("{}-k{k}", template.name);
    Ok(cfg)
}

/// Runs the template once per `k` and reports each policy's regret relative
/// to the best policy at two groups.
pub fn planted_partition_sweep(
    template: &ExperimentConfig,
    ks: &[usize],
) -> Result<(SweepTable, Vec<ExperimentResult>)> {
    if !ks.contains(&2) {
        return Err(Error::InvalidArgument("sweep k values must include 2".into()));
    }
    let runs = ks
        .iter()
        .map(|&k| run_experiment(&with_groups(template, k)?))
        .collect::<Result<Vec<_>>>()?;

    let at_two = &runs[ks.iter().position(|&k| k == 2).expect("checked above")];
    let baseline = at_two
        .policies
        .iter()
        .fold(&at_two.policies[0], |best, p| {
            if p.final_center() < best.final_center() {
                p
            } else {
                best
            }
        });
    let baseline_regret = baseline.final_center();

    let rows = ks
        .iter()
        .zip(&runs)
        .flat_map(|(&k, run)| {
            run.policies.iter().map(move |p| SweepRow {
                k,
                policy: p.name.clone(),
                final_regret: p.final_center(),
                relative_regret: p.final_center() / baseline_regret,
            })
        })
        .collect();
    Ok((
        SweepTable {
            ks: ks.to_vec(),
            baseline_policy: baseline.name.clone(),
            baseline_regret,
            rows,
        },
        runs,
    ))
}

/// Grid search over the config's `grid_search` section. Every grid point
/// runs the config's seed with the searched policy alone, and is scored by
/// median-of-means regret at the horizon.
pub fn run_grid_search(cfg: &ExperimentConfig) -> Result<(GridSearchResult, PolicySpec)> {
    let Some(spec) = &cfg.grid_search else {
        return Err(Error::Config("config has no grid_search section".into()));
    };
    let grid = spec.grid();
    let result = grid_search(&grid, |params| {
        let mut point = cfg.clone();
        point.policies = vec![PolicySpec::from_params(&spec.policy, params)?];
        point.verbose_curves = false;
        let run = run_experiment(&point)?;
        Ok(run.policies[0].final_center())
    })?;
    let best = PolicySpec::from_params(&spec.policy, &result.best)?;
    Ok((result, best))
}

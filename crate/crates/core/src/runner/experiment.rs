use rand::RngCore;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bound::{bound_report, BoundReport};
use super::config::{ExperimentConfig, RegretMode};
use crate::env::{sample_instance, BernoulliBandit, Environment, Observation, StepRecord};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphSequence};
use crate::graphalgo::{
    exact_clique_cover_number, exact_domination_number, greedy_clique_cover,
    greedy_dominating_set, EXACT_COVER_LIMIT, EXACT_DOMINATION_LIMIT,
};
use crate::policies::{Policy, PolicySpec};
use crate::seed::{self, derive, derive_path, rng_from};
use crate::stats::{summarize, RegretCurve, SummaryCurve};

/// Structural summary of a feedback graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphStats {
    pub n: usize,
    pub edges: usize,
    pub max_degree: usize,
    pub clique_cover_greedy: usize,
    pub clique_cover_exact: Option<usize>,
    pub dominating_set_greedy: usize,
    pub domination_exact: Option<usize>,
}

impl GraphStats {
    /// Exact values are included when the graph is within the oracle limits.
    pub fn compute(g: &Graph) -> Self {
        GraphStats {
            n: g.n(),
            edges: g.edge_count(),
            max_degree: g.max_degree(),
            clique_cover_greedy: greedy_clique_cover(g).size(),
            clique_cover_exact: (g.n() <= EXACT_COVER_LIMIT)
                .then(|| exact_clique_cover_number(g).ok())
                .flatten(),
            dominating_set_greedy: greedy_dominating_set(g).size(),
            domination_exact: (g.n() <= EXACT_DOMINATION_LIMIT)
                .then(|| exact_domination_number(g).ok())
                .flatten(),
        }
    }
}

/// Runs one policy for `horizon` rounds, calling `on_step` after each ingest.
///
/// Regret is recorded at every multiple of `record_every` and at the final round.
pub fn simulate<F>(
    env: &Environment,
    policy: &mut dyn Policy,
    horizon: usize,
    record_every: usize,
    rng: &mut dyn RngCore,
    mut on_step: F,
) -> Result<RegretCurve>
where
    F: FnMut(&StepRecord, &Observation, &dyn Policy),
{
    let record_every = record_every.max(1);
    let capacity = horizon / record_every + 1;
    let mut rounds = Vec::with_capacity(capacity);
    let mut values = Vec::with_capacity(capacity);
    let mut obs = Observation::default();
    let mut total = 0.0;
    for t in 1..=horizon {
        let arm = policy.select(t, env, rng);
        env.step_into(t, arm, &mut obs)?;
        policy.ingest(&obs, rng)?;
        let record = env.record(t, arm);
        total += record.regret;
        on_step(&record, &obs, &*policy);
        if t % record_every == 0 || t == horizon {
            rounds.push(t);
            values.push(total);
        }
    }
    RegretCurve::new(rounds, values)
}

/// [`simulate`] without a step callback.
pub fn run_policy(
    env: &Environment,
    policy: &mut dyn Policy,
    horizon: usize,
    record_every: usize,
    rng: &mut dyn RngCore,
) -> Result<RegretCurve> {
    simulate(env, policy, horizon, record_every, rng, |_, _, _| {})
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolicyResult {
    pub name: String,
    /// One curve per trial, in trial order.
    pub curves: Vec<RegretCurve>,
    pub summary: SummaryCurve,
    /// Plain mean of the final regret over trials.
    pub mean_final: f64,
}

impl PolicyResult {
    /// Median-of-means regret at the last recorded round.
    pub fn final_center(&self) -> f64 {
        *self.summary.center.last().expect("horizon is at least 1")
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub graphs: Vec<GraphStats>,
    pub id_map: Option<Vec<u64>>,
    pub self_loops_dropped: usize,
    pub policies: Vec<PolicyResult>,
    pub bound: BoundReport,
}

impl ExperimentResult {
    pub fn policy(&self, name: &str) -> Option<&PolicyResult> {
        self.policies.iter().find(|p| p.name == name)
    }
}

/// Everything fixed across trials.
pub struct Prepared {
    pub graphs: GraphSequence,
    pub build: super::config::GraphBuild,
    pub fixed_instance: Option<BernoulliBandit>,
    exploration_set: Option<crate::graphalgo::DominatingSet>,
}

impl Prepared {
    pub fn new(cfg: &ExperimentConfig) -> Result<Self> {
        cfg.validate()?;
        let build = cfg.graph.realize(derive(cfg.seed, seed::LABEL_GRAPH))?;
        let graphs = build.sequence.clone();
        let arms = graphs.n();
        if arms < 2 {
            return Err(Error::Config(format!("need at least 2 arms, graph has {arms}")));
        }
        let fixed_instance = match (cfg.mode, &cfg.means) {
            (RegretMode::Bayesian, _) => None,
            (RegretMode::Fixed, Some(means)) => {
                if means.len() != arms {
                    return Err(Error::Config(format!(
                        "{} means given for {arms} arms",
                        means.len()
                    )));
                }
                Some(BernoulliBandit::new(means.clone())?)
            }
            (RegretMode::Fixed, None) => Some(sample_instance(
                arms,
                &mut rng_from(derive(cfg.seed, seed::LABEL_INSTANCE)),
            )?),
        };
        let exploration_set = cfg
            .policies
            .iter()
            .any(|p| matches!(p, PolicySpec::EpsGreedyD { .. }))
            .then(|| greedy_dominating_set(&graphs.common_edges()));
        Ok(Prepared {
            graphs,
            build,
            fixed_instance,
            exploration_set,
        })
    }

    /// Environment of trial `trial`, with its own instance and reward stream.
    pub fn environment(&self, cfg: &ExperimentConfig, trial: usize) -> Result<Environment> {
        let trial_seed = derive_path(cfg.seed, &[seed::LABEL_TRIAL, trial as u64]);
        let instance = match &self.fixed_instance {
            Some(b) => b.clone(),
            None => sample_instance(
                self.graphs.n(),
                &mut rng_from(derive(trial_seed, seed::LABEL_INSTANCE)),
            )?,
        };
        Environment::new(
            instance,
            self.graphs.clone(),
            derive(trial_seed, seed::LABEL_REWARDS),
        )
    }

    /// Policy `index` of the config and its private random stream for `trial`.
    pub fn policy(
        &self,
        cfg: &ExperimentConfig,
        trial: usize,
        index: usize,
    ) -> Result<(Box<dyn Policy>, seed::SimRng)> {
        let trial_seed = derive_path(cfg.seed, &[seed::LABEL_TRIAL, trial as u64]);
        let policy =
            cfg.policies[index].instantiate(self.graphs.n(), self.exploration_set.as_ref())?;
        let rng = rng_from(derive_path(trial_seed, &[seed::LABEL_POLICY, index as u64]));
        Ok((policy, rng))
    }
}

fn run_trial(prep: &Prepared, cfg: &ExperimentConfig, trial: usize) -> Result<Vec<RegretCurve>> {
    let env = prep.environment(cfg, trial)?;
    (0..cfg.policies.len())
        .map(|index| {
            let (mut policy, mut rng) = prep.policy(cfg, trial, index)?;
            run_policy(&env, policy.as_mut(), cfg.horizon, cfg.record_every, &mut rng)
        })
        .collect()
}

/// Runs every trial of `cfg` and summarises each policy.
///
/// Trial `i` draws all its randomness from seeds derived from
/// `(cfg.seed, i)`, so results do not depend on scheduling or thread count.
/// All policies in a trial share the instance and the reward stream.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    let prep = Prepared::new(cfg)?;
    let run_all = || -> Result<Vec<Vec<RegretCurve>>> {
        (0..cfg.trials)
            .into_par_iter()
            .map(|trial| run_trial(&prep, cfg, trial))
            .collect()
    };
    let per_trial = match cfg.threads {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::Config(e.to_string()))?
            .install(run_all)?,
        None => run_all()?,
    };

    let group_seed = derive(cfg.seed, seed::LABEL_GROUPS);
    let mut policies = Vec::with_capacity(cfg.policies.len());
    for (index, spec) in cfg.policies.iter().enumerate() {
        let curves: Vec<RegretCurve> = per_trial.iter().map(|c| c[index].clone()).collect();
        let summary = summarize(&curves, cfg.groups, &mut rng_from(group_seed))?;
        let mean_final = curves.iter().filter_map(RegretCurve::last).sum::<f64>() / curves.len() as f64;
        policies.push(PolicyResult {
            name: spec.name().to_string(),
            curves,
            summary,
            mean_final,
        });
    }

    let graphs: Vec<GraphStats> = prep.graphs.graphs().map(GraphStats::compute).collect();
    let mut result = ExperimentResult {
        config: cfg.clone(),
        bound: BoundReport::default(),
        graphs,
        id_map: prep.build.id_map.clone(),
        self_loops_dropped: prep.build.self_loops_dropped,
        policies,
    };
    result.bound = bound_report(cfg, &result);
    Ok(result)
}

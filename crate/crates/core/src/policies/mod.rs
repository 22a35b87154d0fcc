//! Arm-selection policies for graph feedback.
//!
//! Every policy follows the same loop: [`Policy::select`] an arm, then
//! [`Policy::ingest`] the resulting [`Observation`]. Graph-aware policies
//! update on every observed arm; the `*-bandit` baselines only on the played one.

mod grid;

use rand::{Rng, RngCore};
use rand_distr::{Beta, Distribution};
use serde::{Deserialize, Serialize};

pub use grid::{grid_search, GridRow, GridSearchResult, ParamGrid, ParamSet};

use crate::env::{NeighborhoodProbe, Observation};
use crate::error::{Error, Result};
use crate::graph::GraphSequence;
use crate::graphalgo::{greedy_dominating_set, DominatingSet};

/// Per-arm Beta(S, F) posterior under a Beta(1, 1) prior.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaPosterior {
    successes: Vec<u64>,
    failures: Vec<u64>,
}

impl BetaPosterior {
    pub fn new(arms: usize) -> Self {
        BetaPosterior {
            successes: vec![1; arms],
            failures: vec![1; arms],
        }
    }

    pub fn arms(&self) -> usize {
        self.successes.len()
    }

    pub fn successes(&self, arm: usize) -> u64 {
        self.successes[arm]
    }

    pub fn failures(&self, arm: usize) -> u64 {
        self.failures[arm]
    }

    /// Observations ingested for `arm`, `S + F − 2`.
    pub fn observations(&self, arm: usize) -> u64 {
        self.successes[arm] + self.failures[arm] - 2
    }

    /// Overrides the counts of one arm; both must be at least 1.
    pub fn set_counts(&mut self, arm: usize, successes: u64, failures: u64) -> Result<()> {
        if successes == 0 || failures == 0 {
            return Err(Error::InvalidArgument("Beta counts must be at least 1".into()));
        }
        self.successes[arm] = successes;
        self.failures[arm] = failures;
        Ok(())
    }

    /// Records a binary outcome.
    pub fn update(&mut self, arm: usize, success: bool) {
        if success {
            self.successes[arm] += 1;
        } else {
            self.failures[arm] += 1;
        }
    }

    /// One draw `θ_i ~ Beta(S_i, F_i)` per arm, in arm order.
    pub fn sample<R: Rng + ?Sized>(&self, arm: usize, rng: &mut R) -> f64 {
        Beta::new(self.successes[arm] as f64, self.failures[arm] as f64)
            .expect("counts are at least 1")
            .sample(rng)
    }
}

/// Per-arm observation counts and running means.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalStats {
    counts: Vec<u64>,
    means: Vec<f64>,
}

impl EmpiricalStats {
    pub fn new(arms: usize) -> Self {
        EmpiricalStats {
            counts: vec![0; arms],
            means: vec![0.0; arms],
        }
    }

    pub fn arms(&self) -> usize {
        self.counts.len()
    }

    pub fn count(&self, arm: usize) -> u64 {
        self.counts[arm]
    }

    /// Empirical mean, `None` until the arm has been observed.
    pub fn mean(&self, arm: usize) -> Option<f64> {
        (self.counts[arm] > 0).then(|| self.means[arm])
    }

    pub fn update(&mut self, arm: usize, value: f64) {
        self.counts[arm] += 1;
        self.means[arm] += (value - self.means[arm]) / self.counts[arm] as f64;
    }
}

/// Empirically best arm among `candidates`. Unobserved arms rank below every
/// observed arm; ties go to the lowest index. `None` if nothing was observed.
pub fn best_observed(stats: &EmpiricalStats, candidates: &[usize]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for &arm in candidates {
        if let Some(m) = stats.mean(arm) {
            match best {
                Some((b, bm)) if m < bm || (m == bm && b < arm) => {}
                _ => best = Some((arm, m)),
            }
        }
    }
    best.map(|(arm, _)| arm)
}

/// Index of the largest value; ties go to the lowest index.
fn argmax(values: impl IntoIterator<Item = f64>) -> usize {
    let mut best = (0, f64::NEG_INFINITY);
    for (i, v) in values.into_iter().enumerate() {
        if v > best.1 {
            best = (i, v);
        }
    }
    best.0
}

/// Thompson step: sample every posterior, play the argmax.
pub fn tsn_select<R: Rng + ?Sized>(posterior: &BetaPosterior, rng: &mut R) -> usize {
    argmax((0..posterior.arms()).map(|i| posterior.sample(i, rng)))
}

/// Thompson-sample an arm `j`, then play the empirically best member of
/// its closed neighbourhood (or `j` itself if none has been observed).
pub fn ts_maxn_select<R: Rng + ?Sized>(
    posterior: &BetaPosterior,
    stats: &EmpiricalStats,
    probe: &dyn NeighborhoodProbe,
    t: usize,
    rng: &mut R,
) -> usize {
    let sampled = tsn_select(posterior, rng);
    best_observed(stats, probe.neighborhood(t, sampled)).unwrap_or(sampled)
}

/// UCB1 index `x̄ + sqrt(2 ln t / n)`; unobserved arms have infinite index.
pub fn ucb_index(stats: &EmpiricalStats, arm: usize, t: usize) -> f64 {
    match stats.mean(arm) {
        None => f64::INFINITY,
        Some(m) => m + (2.0 * (t as f64).ln() / stats.count(arm) as f64).sqrt(),
    }
}

pub fn ucbn_select(stats: &EmpiricalStats, t: usize) -> usize {
    argmax((0..stats.arms()).map(|i| ucb_index(stats, i, t)))
}

/// UCB1 picks `j`; play the empirically best member of its closed neighbourhood.
pub fn ucb_maxn_select(stats: &EmpiricalStats, t: usize, probe: &dyn NeighborhoodProbe) -> usize {
    let j = ucbn_select(stats, t);
    best_observed(stats, probe.neighborhood(t, j)).unwrap_or(j)
}

/// Hyperparameters of ε-greedy-D.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsGreedyConfig {
    pub c: f64,
    pub d: f64,
    pub dominating_set: DominatingSet,
}

impl EpsGreedyConfig {
    pub fn new(c: f64, d: f64, dominating_set: DominatingSet) -> Result<Self> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::InvalidArgument(format!("ε-greedy-D needs c > 0, got {c}")));
        }
        if !(d > 0.0 && d <= 1.0) {
            return Err(Error::InvalidArgument(format!("ε-greedy-D needs 0 < d <= 1, got {d}")));
        }
        if dominating_set.vertices.is_empty() {
            return Err(Error::InvalidArgument("ε-greedy-D needs a nonempty dominating set".into()));
        }
        Ok(EpsGreedyConfig { c, d, dominating_set })
    }

    /// `ε_t = min(1, c |D′| / (d² t))`.
    pub fn exploration_rate(&self, t: usize) -> f64 {
        let size = self.dominating_set.size() as f64;
        (self.c * size / (self.d * self.d * t as f64)).min(1.0)
    }
}

/// With probability `ε_t`, play a uniform member of the dominating set;
/// otherwise the global empirical argmax. Always consumes one uniform.
pub fn eps_greedy_d_select<R: Rng + ?Sized>(
    stats: &EmpiricalStats,
    cfg: &EpsGreedyConfig,
    t: usize,
    rng: &mut R,
) -> usize {
    let eps = cfg.exploration_rate(t);
    if rng.random::<f64>() < eps {
        let d = &cfg.dominating_set.vertices;
        d[rng.random_range(0..d.len())]
    } else {
        let all: Vec<usize> = (0..stats.arms()).collect();
        best_observed(stats, &all).unwrap_or(0)
    }
}

/// Maps a reward in `[0, 1]` to `{0, 1}`: binary values pass through
/// untouched (no randomness consumed), others become Bernoulli(value) draws.
pub fn binarize<R: Rng + ?Sized>(value: f64, rng: &mut R) -> Result<bool> {
    if value == 0.0 || value == 1.0 {
        Ok(value == 1.0)
    } else if value > 0.0 && value < 1.0 {
        Ok(rng.random_bool(value))
    } else {
        Err(Error::Data(format!("reward {value} outside [0, 1]")))
    }
}

/// Which observations a policy learns from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Feedback {
    /// Every arm in the closed neighbourhood of the played arm.
    Graph,
    /// Only the played arm, as in the classical bandit.
    PlayedOnly,
}

fn observed_slice(obs: &Observation, feedback: Feedback) -> Result<&[(usize, f64)]> {
    match feedback {
        Feedback::Graph => Ok(&obs.observed),
        Feedback::PlayedOnly => obs
            .observed
            .iter()
            .position(|&(k, _)| k == obs.played)
            .map(|i| &obs.observed[i..=i])
            .ok_or_else(|| Error::Data(format!("played arm {} not in observation", obs.played))),
    }
}

fn check_arm(arm: usize, arms: usize) -> Result<()> {
    if arm < arms {
        Ok(())
    } else {
        Err(Error::Data(format!("observed arm {arm} out of range for {arms} arms")))
    }
}

/// Common interface for all policies.
pub trait Policy: Send {
    fn name(&self) -> &'static str;

    fn select(&mut self, t: usize, probe: &dyn NeighborhoodProbe, rng: &mut dyn RngCore) -> usize;

    fn ingest(&mut self, obs: &Observation, rng: &mut dyn RngCore) -> Result<()>;
}

/// TS-N, or the graph-blind `ts-bandit` baseline.
#[derive(Debug, Clone)]
pub struct ThompsonN {
    pub posterior: BetaPosterior,
    feedback: Feedback,
}

impl ThompsonN {
    pub fn new(arms: usize, feedback: Feedback) -> Self {
        ThompsonN {
            posterior: BetaPosterior::new(arms),
            feedback,
        }
    }
}

/// Bernoulli-rounded posterior update for every ingested arm.
fn ingest_posterior(
    posterior: &mut BetaPosterior,
    observed: &[(usize, f64)],
    rng: &mut dyn RngCore,
) -> Result<()> {
    for &(k, r) in observed {
        check_arm(k, posterior.arms())?;
        let bit = binarize(r, rng)?;
        posterior.update(k, bit);
    }
    Ok(())
}

fn ingest_stats(stats: &mut EmpiricalStats, observed: &[(usize, f64)]) -> Result<()> {
    for &(k, r) in observed {
        check_arm(k, stats.arms())?;
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::Data(format!("reward {r} outside [0, 1]")));
        }
        stats.update(k, r);
    }
    Ok(())
}

impl Policy for ThompsonN {
    fn name(&self) -> &'static str {
        match self.feedback {
            Feedback::Graph => "ts-n",
            Feedback::PlayedOnly => "ts-bandit",
        }
    }

    fn select(&mut self, _t: usize, _probe: &dyn NeighborhoodProbe, rng: &mut dyn RngCore) -> usize {
        tsn_select(&self.posterior, rng)
    }

    fn ingest(&mut self, obs: &Observation, rng: &mut dyn RngCore) -> Result<()> {
        ingest_posterior(&mut self.posterior, observed_slice(obs, self.feedback)?, rng)
    }
}

/// TS-MaxN.
#[derive(Debug, Clone)]
pub struct ThompsonMaxN {
    pub posterior: BetaPosterior,
    pub stats: EmpiricalStats,
}

impl ThompsonMaxN {
    pub fn new(arms: usize) -> Self {
        ThompsonMaxN {
            posterior: BetaPosterior::new(arms),
            stats: EmpiricalStats::new(arms),
        }
    }
}

impl Policy for ThompsonMaxN {
    fn name(&self) -> &'static str {
        "ts-maxn"
    }

    fn select(&mut self, t: usize, probe: &dyn NeighborhoodProbe, rng: &mut dyn RngCore) -> usize {
        ts_maxn_select(&self.posterior, &self.stats, probe, t, rng)
    }

    fn ingest(&mut self, obs: &Observation, rng: &mut dyn RngCore) -> Result<()> {
        ingest_stats(&mut self.stats, &obs.observed)?;
        ingest_posterior(&mut self.posterior, &obs.observed, rng)
    }
}

/// UCB-N, or the graph-blind `ucb-bandit` baseline.
#[derive(Debug, Clone)]
pub struct UcbN {
    pub stats: EmpiricalStats,
    feedback: Feedback,
}

impl UcbN {
    pub fn new(arms: usize, feedback: Feedback) -> Self {
        UcbN {
            stats: EmpiricalStats::new(arms),
            feedback,
        }
    }
}

impl Policy for UcbN {
    fn name(&self) -> &'static str {
        match self.feedback {
            Feedback::Graph => "ucb-n",
            Feedback::PlayedOnly => "ucb-bandit",
        }
    }

    fn select(&mut self, t: usize, _probe: &dyn NeighborhoodProbe, _rng: &mut dyn RngCore) -> usize {
        ucbn_select(&self.stats, t)
    }

    fn ingest(&mut self, obs: &Observation, _rng: &mut dyn RngCore) -> Result<()> {
        ingest_stats(&mut self.stats, observed_slice(obs, self.feedback)?)
    }
}

#[derive(Debug, Clone)]
pub struct UcbMaxN {
    pub stats: EmpiricalStats,
}

impl UcbMaxN {
    pub fn new(arms: usize) -> Self {
        UcbMaxN {
            stats: EmpiricalStats::new(arms),
        }
    }
}

impl Policy for UcbMaxN {
    fn name(&self) -> &'static str {
        "ucb-maxn"
    }

    fn select(&mut self, t: usize, probe: &dyn NeighborhoodProbe, _rng: &mut dyn RngCore) -> usize {
        ucb_maxn_select(&self.stats, t, probe)
    }

    fn ingest(&mut self, obs: &Observation, _rng: &mut dyn RngCore) -> Result<()> {
        ingest_stats(&mut self.stats, &obs.observed)
    }
}

#[derive(Debug, Clone)]
pub struct EpsGreedyD {
    pub stats: EmpiricalStats,
    pub cfg: EpsGreedyConfig,
}

impl EpsGreedyD {
    pub fn new(arms: usize, cfg: EpsGreedyConfig) -> Result<Self> {
        if let Some(&v) = cfg.dominating_set.vertices.iter().find(|&&v| v >= arms) {
            return Err(Error::InvalidArgument(format!("dominating set vertex {v} out of range")));
        }
        Ok(EpsGreedyD {
            stats: EmpiricalStats::new(arms),
            cfg,
        })
    }
}

impl Policy for EpsGreedyD {
    fn name(&self) -> &'static str {
        "eps-greedy-d"
    }

    fn select(&mut self, t: usize, _probe: &dyn NeighborhoodProbe, rng: &mut dyn RngCore) -> usize {
        eps_greedy_d_select(&self.stats, &self.cfg, t, rng)
    }

    fn ingest(&mut self, obs: &Observation, _rng: &mut dyn RngCore) -> Result<()> {
        ingest_stats(&mut self.stats, &obs.observed)
    }
}

/// A policy by name, as written in experiment configs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case", deny_unknown_fields)]
pub enum PolicySpec {
    TsN,
    TsMaxn,
    UcbN,
    UcbMaxn,
    EpsGreedyD { c: f64, d: f64 },
    TsBandit,
    UcbBandit,
}

impl PolicySpec {
    pub const NAMES: [&'static str; 7] = [
        "ts-n",
        "ts-maxn",
        "ucb-n",
        "ucb-maxn",
        "eps-greedy-d",
        "ts-bandit",
        "ucb-bandit",
    ];

    pub fn name(&self) -> &'static str {
        match self {
            PolicySpec::TsN => "ts-n",
            PolicySpec::TsMaxn => "ts-maxn",
            PolicySpec::UcbN => "ucb-n",
            PolicySpec::UcbMaxn => "ucb-maxn",
            PolicySpec::EpsGreedyD { .. } => "eps-greedy-d",
            PolicySpec::TsBandit => "ts-bandit",
            PolicySpec::UcbBandit => "ucb-bandit",
        }
    }

    /// Builds the family `name` with numeric parameters, as used by grid search.
    pub fn from_params(name: &str, params: &ParamSet) -> Result<Self> {
        let get = |key: &str| {
            params
                .get(key)
                .copied()
                .ok_or_else(|| Error::Config(format!("{name} needs parameter {key:?}")))
        };
        let spec = match name {
            "eps-greedy-d" => PolicySpec::EpsGreedyD { c: get("c")?, d: get("d")? },
            other => {
                let spec = Self::parameterless(other)?;
                if let Some(key) = params.keys().next() {
                    return Err(Error::Config(format!("{other} takes no parameter {key:?}")));
                }
                spec
            }
        };
        if let Some(key) = params.keys().find(|k| !matches!(k.as_str(), "c" | "d")) {
            return Err(Error::Config(format!("{name} takes no parameter {key:?}")));
        }
        Ok(spec)
    }

    fn parameterless(name: &str) -> Result<Self> {
        Ok(match name {
            "ts-n" => PolicySpec::TsN,
            "ts-maxn" => PolicySpec::TsMaxn,
            "ucb-n" => PolicySpec::UcbN,
            "ucb-maxn" => PolicySpec::UcbMaxn,
            "ts-bandit" => PolicySpec::TsBandit,
            "ucb-bandit" => PolicySpec::UcbBandit,
            _ => return Err(Error::Config(format!("unknown policy {name:?}"))),
        })
    }

    pub fn validate(&self) -> Result<()> {
        if let PolicySpec::EpsGreedyD { c, d } = *self {
            if !(c > 0.0) || !c.is_finite() || !(d > 0.0 && d <= 1.0) {
                return Err(Error::Config(format!(
                    "eps-greedy-d needs c > 0 and 0 < d <= 1, got c={c}, d={d}"
                )));
            }
        }
        Ok(())
    }

    /// Instantiates the policy for the given feedback graphs. ε-greedy-D
    /// explores over a greedy dominating set of the edges common to every
    /// graph in the schedule, so the set dominates at every round.
    pub fn build(&self, graphs: &GraphSequence) -> Result<Box<dyn Policy>> {
        let dominating = match self {
            PolicySpec::EpsGreedyD { .. } => Some(greedy_dominating_set(&graphs.common_edges())),
            _ => None,
        };
        self.instantiate(graphs.n(), dominating.as_ref())
    }

    /// Instantiates the policy with a precomputed exploration set, which
    /// ε-greedy-D requires and every other policy ignores.
    pub fn instantiate(
        &self,
        arms: usize,
        dominating_set: Option<&DominatingSet>,
    ) -> Result<Box<dyn Policy>> {
        Ok(match *self {
            PolicySpec::TsN => Box::new(ThompsonN::new(arms, Feedback::Graph)),
            PolicySpec::TsBandit => Box::new(ThompsonN::new(arms, Feedback::PlayedOnly)),
            PolicySpec::TsMaxn => Box::new(ThompsonMaxN::new(arms)),
            PolicySpec::UcbN => Box::new(UcbN::new(arms, Feedback::Graph)),
            PolicySpec::UcbBandit => Box::new(UcbN::new(arms, Feedback::PlayedOnly)),
            PolicySpec::UcbMaxn => Box::new(UcbMaxN::new(arms)),
            PolicySpec::EpsGreedyD { c, d } => {
                let set = dominating_set.ok_or_else(|| {
                    Error::InvalidArgument("eps-greedy-d needs a dominating set".into())
                })?;
                Box::new(EpsGreedyD::new(arms, EpsGreedyConfig::new(c, d, set.clone())?)?)
            }
        })
    }
}

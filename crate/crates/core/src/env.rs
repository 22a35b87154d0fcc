//! The hidden bandit instance and the feedback it produces.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::GraphSequence;
use crate::seed::keyed_uniform;

/// Bernoulli arms with means in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BernoulliBandit {
    means: Vec<f64>,
    optimal_arm: usize,
    optimal_mean: f64,
}

impl BernoulliBandit {
    pub fn new(means: Vec<f64>) -> Result<Self> {
        if means.is_empty() {
            return Err(Error::InvalidArgument("bandit needs at least one arm".into()));
        }
        if let Some(bad) = means.iter().find(|m| !(0.0..=1.0).contains(*m)) {
            return Err(Error::InvalidArgument(format!("arm mean {bad} not in [0, 1]")));
        }
        // Lowest index among the maximisers.
        let (optimal_arm, optimal_mean) = means
            .iter()
            .copied()
            .enumerate()
            .fold((0, means[0]), |best, (i, m)| if m > best.1 { (i, m) } else { best });
        Ok(BernoulliBandit {
            means,
            optimal_arm,
            optimal_mean,
        })
    }

    pub fn arms(&self) -> usize {
        self.means.len()
    }

    pub fn means(&self) -> &[f64] {
        &self.means
    }

    pub fn mean(&self, arm: usize) -> f64 {
        self.means[arm]
    }

    pub fn optimal_arm(&self) -> usize {
        self.optimal_arm
    }

    pub fn optimal_mean(&self) -> f64 {
        self.optimal_mean
    }

    /// Instantaneous pseudo-regret `μ* − μ_arm`.
    pub fn gap(&self, arm: usize) -> f64 {
        self.optimal_mean - self.means[arm]
    }
}

/// Draws an instance from the simulation prior: one uniformly chosen arm has
/// mean ~ U[0.55, 0.6], every other arm ~ U[0.45, 0.55].
pub fn sample_instance<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Result<BernoulliBandit> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 arms, got {k}")));
    }
    let best = rng.random_range(0..k);
    let means = (0..k)
        .map(|i| {
            if i == best {
                rng.random_range(0.55..=0.6)
            } else {
                rng.random_range(0.45..=0.55)
            }
        })
        .collect();
    BernoulliBandit::new(means)
}

/// Everything revealed after playing `played` at `round`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Observation {
    pub round: usize,
    pub played: usize,
    pub reward: f64,
    /// `(arm, value)` over the closed neighbourhood of `played`, sorted by arm.
    pub observed: Vec<(usize, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepRecord {
    pub round: usize,
    pub played: usize,
    pub regret: f64,
}

/// Read-only view of the feedback structure for the current round.
pub trait NeighborhoodProbe {
    fn arms(&self) -> usize;

    /// Closed neighbourhood of `arm` at round `t`; consumes no reward.
    fn neighborhood(&self, t: usize, arm: usize) -> &[usize];
}

/// A bandit instance plus its feedback graphs and reward stream.
///
/// Outcomes come from a stateless keyed stream: the value of arm `j` at
/// round `t` depends only on `(reward_key, t, j)`, never on which arm was
/// played. Policies run with the same key see identical realisations.
#[derive(Debug, Clone)]
pub struct Environment {
    bandit: BernoulliBandit,
    graphs: GraphSequence,
    reward_key: u64,
}

impl Environment {
    pub fn new(bandit: BernoulliBandit, graphs: GraphSequence, reward_key: u64) -> Result<Self> {
        if bandit.arms() != graphs.n() {
            return Err(Error::InvalidArgument(format!(
                "{} arms but the graph has {} vertices",
                bandit.arms(),
                graphs.n()
            )));
        }
        Ok(Environment {
            bandit,
            graphs,
            reward_key,
        })
    }

    pub fn bandit(&self) -> &BernoulliBandit {
        &self.bandit
    }

    pub fn graphs(&self) -> &GraphSequence {
        &self.graphs
    }

    /// Realised Bernoulli outcome of `arm` at round `t`.
    #[inline]
    pub fn outcome(&self, t: usize, arm: usize) -> f64 {
        let u = keyed_uniform(self.reward_key, t as u64, arm as u64);
        if u < self.bandit.mean(arm) {
            1.0
        } else {
            0.0
        }
    }

    /// Plays `arm` at round `t`.
    pub fn step(&self, t: usize, arm: usize) -> Result<Observation> {
        let mut obs = Observation::default();
        self.step_into(t, arm, &mut obs)?;
        Ok(obs)
    }

    /// Like [`step`](Self::step) but reuses `obs`'s allocation.
    pub fn step_into(&self, t: usize, arm: usize, obs: &mut Observation) -> Result<()> {
        if t == 0 {
            return Err(Error::InvalidArgument("rounds start at 1".into()));
        }
        let nbrs = self.graphs.at(t).closed_neighborhood(arm)?;
        obs.round = t;
        obs.played = arm;
        obs.observed.clear();
        obs.observed
            .extend(nbrs.iter().map(|&j| (j, self.outcome(t, j))));
        obs.reward = self.outcome(t, arm);
        Ok(())
    }

    pub fn record(&self, t: usize, arm: usize) -> StepRecord {
        StepRecord {
            round: t,
            played: arm,
            regret: self.bandit.gap(arm),
        }
    }
}

impl NeighborhoodProbe for Environment {
    fn arms(&self) -> usize {
        self.bandit.arms()
    }

    fn neighborhood(&self, t: usize, arm: usize) -> &[usize] {
        self.graphs.at(t).closed_slice(arm)
    }
}

/// Probe over a bare graph sequence, for driving policies without an environment.
impl NeighborhoodProbe for GraphSequence {
    fn arms(&self) -> usize {
        self.n()
    }

    fn neighborhood(&self, t: usize, arm: usize) -> &[usize] {
        self.at(t).closed_slice(arm)
    }
}

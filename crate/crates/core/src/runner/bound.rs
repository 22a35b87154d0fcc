use serde::{Deserialize, Serialize};

use super::config::{ExperimentConfig, RegretMode};
use super::experiment::ExperimentResult;

/// Where the clique cover number in a [`BoundReport`] came from.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoverSource {
    #[default]
    Exact,
    Greedy,
}

/// Bayesian regret bound `sqrt(½ · χ̄ · H(α₁) · T)` for Thompson sampling,
/// next to the regret actually observed.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    /// Greedy clique cover size (max over a time-varying schedule).
    pub chi_bar_upper: usize,
    /// Exact clique cover number, when every graph is small enough.
    pub chi_bar_exact: Option<usize>,
    pub chi_bar_used: usize,
    pub chi_bar_source: CoverSource,
    /// Entropy of the optimal-arm distribution, `ln K` under a symmetric prior.
    pub entropy: f64,
    pub horizon: usize,
    pub bound: f64,
    /// Policy whose regret is compared, if the run qualifies.
    pub policy: Option<String>,
    /// Mean final regret of `policy` over the trials.
    pub observed_mean_regret: Option<f64>,
    pub within_bound: Option<bool>,
}

/// `sqrt(½ · cover · entropy · horizon)`.
pub fn regret_bound(cover: usize, entropy: f64, horizon: usize) -> f64 {
    (0.5 * cover as f64 * entropy * horizon as f64).sqrt()
}

/// Builds the bound report for a finished run.
///
/// The observed side is filled only for Bayesian runs that include `ts-n`:
/// the bound is a statement about Bayesian regret of that policy.
pub fn bound_report(cfg: &ExperimentConfig, results: &ExperimentResult) -> BoundReport {
    let arms = results.graphs.first().map_or(0, |g| g.n);
    let chi_bar_upper = results
        .graphs
        .iter()
        .map(|g| g.clique_cover_greedy)
        .max()
        .unwrap_or(0);
    let chi_bar_exact = results
        .graphs
        .iter()
        .map(|g| g.clique_cover_exact)
        .collect::<Option<Vec<_>>>()
        .and_then(|v| v.into_iter().max());
    let (chi_bar_used, chi_bar_source) = match chi_bar_exact {
        Some(x) => (x, CoverSource::Exact),
        None => (chi_bar_upper, CoverSource::Greedy),
    };
    let entropy = (arms as f64).ln();
    let bound = regret_bound(chi_bar_used, entropy, cfg.horizon);

    let observed = (cfg.mode == RegretMode::Bayesian)
        .then(|| results.policy("ts-n"))
        .flatten();
    BoundReport {
        chi_bar_upper,
        chi_bar_exact,
        chi_bar_used,
        chi_bar_source,
        entropy,
        horizon: cfg.horizon,
        bound,
        policy: observed.map(|p| p.name.clone()),
        observed_mean_regret: observed.map(|p| p.mean_final),
        within_bound: observed.map(|p| p.mean_final <= bound),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_formula() {
        let t = 5000;
        let k = 10usize;
        let h = (k as f64).ln();
        assert!((regret_bound(1, h, t) - (0.5 * h * t as f64).sqrt()).abs() < 1e-12);
        assert!((regret_bound(k, h, t) - (0.5 * k as f64 * h * t as f64).sqrt()).abs() < 1e-12);
        assert_eq!(regret_bound(3, 0.0, 100), 0.0);
    }
}

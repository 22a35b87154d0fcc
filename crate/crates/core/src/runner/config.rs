//! Experiment configuration.
//!
//! Configs are TOML files; the effective config is echoed into `meta.json`
//! and can be read back from there, so any run can be replayed.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{self, Graph, GraphSequence};
use crate::policies::{ParamGrid, PolicySpec};
use crate::seed::{derive, rng_from};

pub const DEFAULT_TRIALS: usize = 210;
pub const DEFAULT_GROUPS: usize = 14;
pub const DEFAULT_POWER_LAW_EXPONENT: f64 = 2.5;

fn default_name() -> String {
    "experiment".into()
}

fn default_trials() -> usize {
    DEFAULT_TRIALS
}

fn default_groups() -> usize {
    DEFAULT_GROUPS
}

fn default_record_every() -> usize {
    1
}

fn default_exponent() -> f64 {
    DEFAULT_POWER_LAW_EXPONENT
}

/// How problem instances are drawn.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegretMode {
    /// A fresh instance from the prior in every trial (Bayesian regret).
    #[default]
    Bayesian,
    /// One instance shared by all trials.
    Fixed,
}

/// Feedback graph recipe.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum GraphSpec {
    Empty {
        n: usize,
    },
    Complete {
        n: usize,
    },
    /// G(n, m).
    ErdosRenyi {
        n: usize,
        m: usize,
    },
    /// G(n, p).
    ErdosRenyiP {
        n: usize,
        p: f64,
    },
    PowerLaw {
        n: usize,
        m: usize,
        #[serde(default = "default_exponent")]
        exponent: f64,
    },
    PlantedPartition {
        n: usize,
        k: usize,
        p: f64,
        q: f64,
    },
    EdgeList {
        path: PathBuf,
        #[serde(default)]
        remap_ids: bool,
    },
    /// Time-varying feedback: round `t` uses `graphs[(t - 1) % len]`.
    Schedule {
        graphs: Vec<GraphSpec>,
    },
}

/// A realised graph recipe.
#[derive(Debug, Clone)]
pub struct GraphBuild {
    pub sequence: GraphSequence,
    /// Block labels of a planted partition (first schedule entry only).
    pub labels: Option<Vec<usize>>,
    pub id_map: Option<Vec<u64>>,
    pub self_loops_dropped: usize,
}

impl GraphSpec {
    /// Builds the graph(s); random recipes draw from `seed`.
    pub fn realize(&self, seed: u64) -> Result<GraphBuild> {
        if let GraphSpec::Schedule { graphs } = self {
            let mut built = Vec::with_capacity(graphs.len());
            let mut labels = None;
            let mut self_loops_dropped = 0;
            for (i, spec) in graphs.iter().enumerate() {
                if matches!(spec, GraphSpec::Schedule { .. }) {
                    return Err(Error::Config("graph schedules cannot be nested".into()));
                }
                let (g, l, _, loops) = spec.realize_single(derive(seed, i as u64))?;
                if i == 0 {
                    labels = l;
                }
                self_loops_dropped += loops;
                built.push(g);
            }
            return Ok(GraphBuild {
                sequence: GraphSequence::cyclic(built)?,
                labels,
                id_map: None,
                self_loops_dropped,
            });
        }
        let (g, labels, id_map, self_loops_dropped) = self.realize_single(seed)?;
        Ok(GraphBuild {
            sequence: GraphSequence::constant(g),
            labels,
            id_map,
            self_loops_dropped,
        })
    }

    #[allow(clippy::type_complexity)]
    fn realize_single(
        &self,
        seed: u64,
    ) -> Result<(Graph, Option<Vec<usize>>, Option<Vec<u64>>, usize)> {
        let mut rng = rng_from(seed);
        Ok(match self {
            GraphSpec::Empty { n } => (Graph::empty(*n), None, None, 0),
            GraphSpec::Complete { n } => (Graph::complete(*n), None, None, 0),
            GraphSpec::ErdosRenyi { n, m } => {
                (graph::gen_erdos_renyi(*n, *m, &mut rng)?, None, None, 0)
            }
            GraphSpec::ErdosRenyiP { n, p } => {
                (graph::gen_erdos_renyi_p(*n, *p, &mut rng)?, None, None, 0)
            }
            GraphSpec::PowerLaw { n, m, exponent } => {
                (graph::gen_power_law(*n, *m, *exponent, &mut rng)?, None, None, 0)
            }
            GraphSpec::PlantedPartition { n, k, p, q } => {
                let (g, labels) = graph::gen_planted_partition(*n, *k, *p, *q, &mut rng)?;
                (g, Some(labels), None, 0)
            }
            GraphSpec::EdgeList { path, remap_ids } => {
                let loaded = if *remap_ids {
                    graph::load_edge_list_remapped(path)?
                } else {
                    graph::load_edge_list(path)?
                };
                (loaded.graph, None, loaded.id_map, loaded.self_loops_dropped)
            }
            GraphSpec::Schedule { .. } => {
                return Err(Error::Config("graph schedules cannot be nested".into()))
            }
        })
    }
}

/// Grid over one policy family's hyperparameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub policy: String,
    #[serde(default)]
    pub params: std::collections::BTreeMap<String, Vec<f64>>,
}

impl GridSpec {
    pub fn grid(&self) -> ParamGrid {
        ParamGrid {
            params: self.params.clone(),
        }
    }
}

/// Complete, reproducible description of one experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "default_name")]
    pub name: String,
    /// Horizon T.
    pub horizon: usize,
    /// Number of independent trials N.
    #[serde(default = "default_trials")]
    pub trials: usize,
    /// Median-of-means groups a₀; must divide `trials`.
    #[serde(default = "default_groups")]
    pub groups: usize,
    /// Master seed.
    pub seed: u64,
    #[serde(default)]
    pub mode: RegretMode,
    /// Arm means for fixed mode; drawn from the prior when absent.
    #[serde(default)]
    pub means: Option<Vec<f64>>,
    pub graph: GraphSpec,
    pub policies: Vec<PolicySpec>,
    #[serde(default)]
    pub output: Option<PathBuf>,
    /// Also write every trial's curve to `curves.csv`.
    #[serde(default)]
    pub verbose_curves: bool,
    /// Record regret every this many rounds (the final round is always recorded).
    #[serde(default = "default_record_every")]
    pub record_every: usize,
    /// Worker threads; the rayon default when absent. Never affects results.
    #[serde(default)]
    pub threads: Option<usize>,
    #[serde(default)]
    pub grid_search: Option<GridSpec>,
}

#[derive(Deserialize)]
struct MetaEcho {
    config: ExperimentConfig,
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// Reads a config from TOML, or from JSON (a bare config or a `meta.json`).
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let is_json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
        let cfg = if is_json {
            Self::from_json_str(&text)?
        } else {
            Self::from_toml_str(&text)?
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Parses either a bare JSON config or the `config` field of a `meta.json`.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        if value.get("config").is_some() {
            Ok(serde_json::from_value::<MetaEcho>(value)?.config)
        } else {
            Ok(serde_json::from_value(value)?)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.horizon == 0 {
            return Err(Error::Config("horizon must be at least 1".into()));
        }
        if self.trials == 0 || self.groups == 0 || self.trials % self.groups != 0 {
            return Err(Error::Config(format!(
                "groups ({}) must divide trials ({})",
                self.groups, self.trials
            )));
        }
        if self.record_every == 0 {
            return Err(Error::Config("record_every must be at least 1".into()));
        }
        if self.threads == Some(0) {
            return Err(Error::Config("threads must be at least 1".into()));
        }
        if self.policies.is_empty() {
            return Err(Error::Config("no policies configured".into()));
        }
        let mut seen = BTreeSet::new();
        for p in &self.policies {
            p.validate()?;
            if !seen.insert(p.name()) {
                return Err(Error::Config(format!("policy {} listed twice", p.name())));
            }
        }
        if self.means.is_some() && self.mode != RegretMode::Fixed {
            return Err(Error::Config("explicit means require mode = \"fixed\"".into()));
        }
        if let Some(grid) = &self.grid_search {
            PolicySpec::from_params(&grid.policy, &grid.grid().combinations()[0])
                .map_err(|e| Error::Config(format!("grid_search: {e}")))?;
        }
        Ok(())
    }

    /// Output directory: the configured one or `runs/<name>`.
    pub fn output_dir(&self) -> PathBuf {
        self.output
            .clone()
            .unwrap_or_else(|| PathBuf::from("runs").join(&self.name))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
name = "er-sparse"
horizon = 100
trials = 28
groups = 14
seed = 7

[graph]
kind = "erdos-renyi"
n = 20
m = 40

[[policies]]
name = "ts-n"

[[policies]]
name = "eps-greedy-d"
c = 1.0
d = 0.1
"#;

    #[test]
    fn parses_toml_with_defaults() {
        let cfg = ExperimentConfig::from_toml_str(SAMPLE).unwrap();
        cfg.validate().unwrap();
        assert_eq!(cfg.graph, GraphSpec::ErdosRenyi { n: 20, m: 40 });
        assert_eq!(cfg.policies[1], PolicySpec::EpsGreedyD { c: 1.0, d: 0.1 });
        assert_eq!(cfg.mode, RegretMode::Bayesian);
        assert_eq!(cfg.record_every, 1);
        assert_eq!(cfg.output_dir(), PathBuf::from("runs/er-sparse"));
    }

    #[test]
    fn json_round_trip() {
        let cfg = ExperimentConfig::from_toml_str(SAMPLE).unwrap();
        let json = serde_json::to_string(&cfg).unwrap();
        assert_eq!(ExperimentConfig::from_json_str(&json).unwrap(), cfg);
        let meta = format!("{{\"software\": {{}}, \"config\": {json}}}");
        assert_eq!(ExperimentConfig::from_json_str(&meta).unwrap(), cfg);
    }

    #[test]
    fn rejects_invalid_configs() {
        let base = ExperimentConfig::from_toml_str(SAMPLE).unwrap();
        let check = |f: &dyn Fn(&mut ExperimentConfig)| {
            let mut c = base.clone();
            f(&mut c);
            c.validate().is_err()
        };
        assert!(check(&|c| c.horizon = 0));
        assert!(check(&|c| c.groups = 5));
        assert!(check(&|c| c.trials = 0));
        assert!(check(&|c| c.policies.clear()));
        assert!(check(&|c| c.policies.push(PolicySpec::TsN)));
        assert!(check(&|c| c.policies[1] = PolicySpec::EpsGreedyD { c: 1.0, d: 2.0 }));
        assert!(check(&|c| c.means = Some(vec![0.5; 20])));
        assert!(check(&|c| c.record_every = 0));
        assert!(check(&|c| {
            c.grid_search = Some(GridSpec { policy: "bogus".into(), params: Default::default() })
        }));

        assert!(ExperimentConfig::from_toml_str("horizon = 5\nseed = 1\n").is_err());
        let unknown = SAMPLE.replace("[[policies]]\nname = \"ts-n\"", "[[policies]]\nname = \"ts-x\"");
        assert!(ExperimentConfig::from_toml_str(&unknown).is_err());
        let typo = SAMPLE.replace("horizon", "horizn");
        assert!(ExperimentConfig::from_toml_str(&typo).is_err());
    }

    #[test]
    fn schedule_realizes_cyclic_sequence() {
        let spec = GraphSpec::Schedule {
            graphs: vec![GraphSpec::Empty { n: 4 }, GraphSpec::Complete { n: 4 }],
        };
        let built = spec.realize(3).unwrap();
        assert_eq!(built.sequence.at(2).edge_count(), 6);
        assert_eq!(built.sequence.at(3).edge_count(), 0);

        let nested = GraphSpec::Schedule { graphs: vec![spec] };
        assert!(nested.realize(3).is_err());
        let mixed = GraphSpec::Schedule {
            graphs: vec![GraphSpec::Empty { n: 4 }, GraphSpec::Empty { n: 5 }],
        };
        assert!(mixed.realize(0).is_err());
    }

    #[test]
    fn planted_partition_realization_keeps_labels() {
        let spec = GraphSpec::PlantedPartition { n: 12, k: 3, p: 1.0, q: 0.0 };
        let built = spec.realize(1).unwrap();
        assert_eq!(built.labels.unwrap().len(), 12);
        assert_eq!(built.sequence.at(1).edge_count(), 3 * 6);
        assert_eq!(spec.realize(1).unwrap().sequence.at(1), built.sequence.at(1));
    }

    #[test]
    fn schedule_toml_syntax() {
        let text = r#"
horizon = 10
seed = 1
trials = 2
groups = 1
[graph]
kind = "schedule"
[[graph.graphs]]
kind = "empty"
n = 3
[[graph.graphs]]
kind = "power-law"
n = 3
m = 2
[[policies]]
name = "ts-maxn"
"#;
        let cfg = ExperimentConfig::from_toml_str(text).unwrap();
        cfg.validate().unwrap();
        let GraphSpec::Schedule { graphs } = &cfg.graph else { panic!() };
        assert_eq!(graphs[1], GraphSpec::PowerLaw { n: 3, m: 2, exponent: 2.5 });
    }
}

//! Stochastic multi-armed bandits with graph-structured feedback.
//!
//! Arms are the vertices of an undirected graph. Playing an arm reveals the
//! reward of that arm and of every neighbour. The crate provides:
//!
//! - [`graph`]: the feedback graph, random generators and an edge-list loader.
//! - [`graphalgo`]: clique covers and dominating sets, greedy and exact.
//! - [`env`]: Bernoulli bandit instances and the feedback environment.
//! - [`policies`]: TS-N, TS-MaxN, UCB-N, UCB-MaxN, ε-greedy-D and graph-blind baselines.
//! - [`stats`]: median-of-means and Gini mean difference summaries.
//! - [`runner`]: experiment configuration, seeded trial execution, bound reports and output files.

pub mod env;
pub mod error;
pub mod graph;
pub mod graphalgo;
pub mod policies;
pub mod runner;
pub mod seed;
pub mod stats;

pub use error::{Error, Result};

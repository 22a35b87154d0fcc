//! Result files.
//!
//! - `summary.csv`: `round,policy,center,dev_lower,dev_upper,dev_lower_raw,dev_upper_raw`
//! - `meta.json`: config echo, graph statistics, bound report, final values
//! - `curves.csv` (verbose only): `trial,policy,round,regret`
//! - `id_map.csv` (remapped edge lists only): `vertex,external_id`

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::bound::BoundReport;
use super::config::ExperimentConfig;
use super::experiment::{ExperimentResult, GraphStats};
use super::sweep::SweepTable;
use crate::error::{Error, Result};
use crate::policies::GridSearchResult;

pub const SUMMARY_FILE: &str = "summary.csv";
pub const META_FILE: &str = "meta.json";
pub const CURVES_FILE: &str = "curves.csv";
pub const ID_MAP_FILE: &str = "id_map.csv";
pub const SWEEP_CSV: &str = "sweep.csv";
pub const SWEEP_JSON: &str = "sweep.json";
pub const GRID_CSV: &str = "grid.csv";
pub const GRID_JSON: &str = "grid.json";

#[derive(Debug, Serialize)]
pub struct Software {
    pub name: &'static str,
    pub version: &'static str,
}

pub const SOFTWARE: Software = Software {
    name: env!("CARGO_PKG_NAME"),
    version: env!("CARGO_PKG_VERSION"),
};

#[derive(Debug, Serialize)]
struct Protocol {
    trials: usize,
    groups: usize,
    horizon: usize,
    mode: super::config::RegretMode,
}

#[derive(Debug, Serialize)]
struct PolicyFinal<'a> {
    name: &'a str,
    round: usize,
    center: f64,
    dev_lower: f64,
    dev_upper: f64,
    dev_lower_raw: f64,
    dev_upper_raw: f64,
    mean: f64,
}

#[derive(Debug, Serialize)]
struct Meta<'a> {
    software: &'a Software,
    seed: u64,
    protocol: Protocol,
    graphs: &'a [GraphStats],
    self_loops_dropped: usize,
    bound: &'a BoundReport,
    policies: Vec<PolicyFinal<'a>>,
    config: &'a ExperimentConfig,
}

fn create_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

fn csv_writer(path: &Path) -> Result<csv::Writer<fs::File>> {
    csv::Writer::from_path(path).map_err(|source| Error::Csv { path: path.into(), source })
}

fn write_rows<I, R>(path: &Path, header: &[&str], rows: I) -> Result<()>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let wrap = |source| Error::Csv { path: path.into(), source };
    let mut w = csv_writer(path)?;
    w.write_record(header).map_err(wrap)?;
    for row in rows {
        w.write_record(row).map_err(wrap)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Writes the result files of one run into `dir`; returns the paths written.
pub fn emit_results(result: &ExperimentResult, dir: &Path) -> Result<Vec<PathBuf>> {
    create_dir(dir)?;
    let mut written = Vec::new();

    let path = dir.join(SUMMARY_FILE);
    let rows = result.policies.iter().flat_map(|p| {
        let s = &p.summary;
        s.rounds.iter().enumerate().map(move |(i, round)| {
            let d = &s.deviation[i];
            [
                round.to_string(),
                p.name.clone(),
                s.center[i].to_string(),
                d.lower.normalized.to_string(),
                d.upper.normalized.to_string(),
                d.lower.raw.to_string(),
                d.upper.raw.to_string(),
            ]
        })
    });
    write_rows(
        &path,
        &["round", "policy", "center", "dev_lower", "dev_upper", "dev_lower_raw", "dev_upper_raw"],
        rows,
    )?;
    written.push(path);

    let cfg = &result.config;
    let meta = Meta {
        software: &SOFTWARE,
        seed: cfg.seed,
        protocol: Protocol {
            trials: cfg.trials,
            groups: cfg.groups,
            horizon: cfg.horizon,
            mode: cfg.mode,
        },
        graphs: &result.graphs,
        self_loops_dropped: result.self_loops_dropped,
        bound: &result.bound,
        policies: result
            .policies
            .iter()
            .map(|p| {
                let last = p.summary.rounds.len() - 1;
                let d = p.summary.deviation[last];
                PolicyFinal {
                    name: &p.name,
                    round: p.summary.rounds[last],
                    center: p.summary.center[last],
                    dev_lower: d.lower.normalized,
                    dev_upper: d.upper.normalized,
                    dev_lower_raw: d.lower.raw,
                    dev_upper_raw: d.upper.raw,
                    mean: p.mean_final,
                }
            })
            .collect(),
        config: cfg,
    };
    let path = dir.join(META_FILE);
    write_json(&path, &meta)?;
    written.push(path);

    if cfg.verbose_curves {
        let path = dir.join(CURVES_FILE);
        let rows = result.policies.iter().flat_map(|p| {
            p.curves.iter().enumerate().flat_map(move |(trial, c)| {
                c.rounds().iter().zip(c.values()).map(move |(round, v)| {
                    [trial.to_string(), p.name.clone(), round.to_string(), v.to_string()]
                })
            })
        });
        write_rows(&path, &["trial", "policy", "round", "regret"], rows)?;
        written.push(path);
    }

    if let Some(ids) = &result.id_map {
        let path = dir.join(ID_MAP_FILE);
        let rows = ids.iter().enumerate().map(|(v, id)| [v.to_string(), id.to_string()]);
        write_rows(&path, &["vertex", "external_id"], rows)?;
        written.push(path);
    }
    Ok(written)
}

/// Writes `sweep.csv` (`k,policy,final_regret,relative_regret`) and `sweep.json`.
pub fn emit_sweep(table: &SweepTable, dir: &Path) -> Result<Vec<PathBuf>> {
    create_dir(dir)?;
    let csv_path = dir.join(SWEEP_CSV);
    let rows = table.rows.iter().map(|r| {
        [
            r.k.to_string(),
            r.policy.clone(),
            r.final_regret.to_string(),
            r.relative_regret.to_string(),
        ]
    });
    write_rows(&csv_path, &["k", "policy", "final_regret", "relative_regret"], rows)?;
    let json_path = dir.join(SWEEP_JSON);
    write_json(&json_path, table)?;
    Ok(vec![csv_path, json_path])
}

#[derive(Serialize)]
struct GridMeta<'a> {
    software: &'a Software,
    policy: &'a str,
    best: &'a crate::policies::ParamSet,
    best_score: f64,
    table: &'a [crate::policies::GridRow],
    config: &'a ExperimentConfig,
}

/// Writes `grid.csv` (one column per parameter, then `score`) and `grid.json`.
pub fn emit_grid(
    cfg: &ExperimentConfig,
    policy: &str,
    result: &GridSearchResult,
    dir: &Path,
) -> Result<Vec<PathBuf>> {
    create_dir(dir)?;
    let names: Vec<&str> = result.best.keys().map(String::as_str).collect();
    let mut header = names.clone();
    header.push("score");
    let csv_path = dir.join(GRID_CSV);
    let rows = result.table.iter().map(|row| {
        let mut fields: Vec<String> = names.iter().map(|n| row.params[*n].to_string()).collect();
        fields.push(row.score.to_string());
        fields
    });
    write_rows(&csv_path, &header, rows)?;
    let json_path = dir.join(GRID_JSON);
    write_json(
        &json_path,
        &GridMeta {
            software: &SOFTWARE,
            policy,
            best: &result.best,
            best_score: result.best_score,
            table: &result.table,
            config: cfg,
        },
    )?;
    Ok(vec![csv_path, json_path])
}

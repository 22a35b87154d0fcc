use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One assignment of hyperparameters, keyed by name.
pub type ParamSet = BTreeMap<String, f64>;

/// Candidate values per hyperparameter; searched as a Cartesian product.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ParamGrid {
    pub params: BTreeMap<String, Vec<f64>>,
}

impl ParamGrid {
    /// All combinations, with the last parameter (by name) varying fastest.
    /// An empty grid has exactly one, empty, combination.
    pub fn combinations(&self) -> Vec<ParamSet> {
        let mut out = vec![ParamSet::new()];
        for (name, values) in &self.params {
            out = out
                .into_iter()
                .flat_map(|base| {
                    values.iter().map(move |&v| {
                        let mut next = base.clone();
                        next.insert(name.clone(), v);
                        next
                    })
                })
                .collect();
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridRow {
    pub params: ParamSet,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSearchResult {
    pub best: ParamSet,
    pub best_score: f64,
    pub table: Vec<GridRow>,
}

/// Evaluates every combination and keeps the lowest score; ties keep the
/// earliest combination.
pub fn grid_search<F>(grid: &ParamGrid, mut eval: F) -> Result<GridSearchResult>
where
    F: FnMut(&ParamSet) -> Result<f64>,
{
    if let Some((name, _)) = grid.params.iter().find(|(_, v)| v.is_empty()) {
        return Err(Error::InvalidArgument(format!("grid parameter {name:?} has no values")));
    }
    let mut table = Vec::new();
    for params in grid.combinations() {
        let score = eval(&params)?;
        if score.is_nan() {
            return Err(Error::Data(format!("grid point {params:?} scored NaN")));
        }
        table.push(GridRow { params, score });
    }
    let best = table
        .iter()
        .fold(&table[0], |best, row| if row.score < best.score { row } else { best });
    Ok(GridSearchResult {
        best: best.params.clone(),
        best_score: best.score,
        table,
    })
}

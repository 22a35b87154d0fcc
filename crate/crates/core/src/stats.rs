//! Robust summaries of regret across trials.
//!
//! The centre is a median-of-means over a seeded equipartition of the
//! trials. Spread is reported as Gini mean difference, computed separately
//! for the trials at or below the centre and those above it.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Cumulative pseudo-regret of one trial at the recorded rounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegretCurve {
    rounds: Vec<usize>,
    cumulative: Vec<f64>,
}

impl RegretCurve {
    /// Rounds must be strictly increasing and values nondecreasing and nonnegative.
    pub fn new(rounds: Vec<usize>, cumulative: Vec<f64>) -> Result<Self> {
        if rounds.len() != cumulative.len() {
            return Err(Error::InvalidArgument("rounds and values differ in length".into()));
        }
        if rounds.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("rounds must be strictly increasing".into()));
        }
        if cumulative.first().is_some_and(|&v| !(v >= 0.0))
            || cumulative.windows(2).any(|w| !(w[1] >= w[0]))
        {
            return Err(Error::InvalidArgument(
                "cumulative regret must be nonnegative and nondecreasing".into(),
            ));
        }
        Ok(RegretCurve { rounds, cumulative })
    }

    /// Curve recorded at every round `1..=values.len()`.
    pub fn from_values(cumulative: Vec<f64>) -> Result<Self> {
        Self::new((1..=cumulative.len()).collect(), cumulative)
    }

    pub fn rounds(&self) -> &[usize] {
        &self.rounds
    }

    pub fn values(&self) -> &[f64] {
        &self.cumulative
    }

    pub fn len(&self) -> usize {
        self.rounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rounds.is_empty()
    }

    /// Regret at the last recorded round.
    pub fn last(&self) -> Option<f64> {
        self.cumulative.last().copied()
    }
}

/// Gini mean difference in raw order-statistic form and normalised to the
/// mean absolute pairwise difference.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Gmd {
    /// `Σ_j (2j − N − 1) x_(j)`.
    pub raw: f64,
    /// `raw / (N (N − 1) / 2)`.
    pub normalized: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct SplitDeviation {
    pub lower: Gmd,
    pub upper: Gmd,
}

/// Per-round centre and deviations for one policy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryCurve {
    pub rounds: Vec<usize>,
    pub center: Vec<f64>,
    pub deviation: Vec<SplitDeviation>,
    pub trials: usize,
    pub groups: usize,
}

fn sorted(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

fn median_of_sorted(v: &[f64]) -> f64 {
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

/// Shuffles `0..n` and cuts it into `groups` equal blocks.
pub fn random_equipartition<R: Rng + ?Sized>(
    n: usize,
    groups: usize,
    rng: &mut R,
) -> Result<Vec<Vec<usize>>> {
    if groups == 0 || n == 0 || n % groups != 0 {
        return Err(Error::InvalidArgument(format!(
            "{n} values cannot be split into {groups} equal groups"
        )));
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    Ok(idx.chunks(n / groups).map(<[usize]>::to_vec).collect())
}

/// Median of the group means for a fixed partition of `values`' indices.
pub fn median_of_means_grouped(values: &[f64], partition: &[Vec<usize>]) -> f64 {
    let means: Vec<f64> = partition
        .iter()
        .map(|g| g.iter().map(|&i| values[i]).sum::<f64>() / g.len() as f64)
        .collect();
    median_of_sorted(&sorted(&means))
}

/// Median-of-means over a random equipartition into `groups` blocks.
/// With an even number of groups the two middle means are averaged.
pub fn median_of_means<R: Rng + ?Sized>(values: &[f64], groups: usize, rng: &mut R) -> Result<f64> {
    let partition = random_equipartition(values.len(), groups, rng)?;
    Ok(median_of_means_grouped(values, &partition))
}

/// Gini mean difference via order statistics.
pub fn gini_mean_difference(values: &[f64]) -> Result<Gmd> {
    let n = values.len();
    if n < 2 {
        return Err(Error::InvalidArgument(format!("GMD needs at least 2 values, got {n}")));
    }
    Ok(gmd_of_sorted(&sorted(values)))
}

fn gmd_of_sorted(x: &[f64]) -> Gmd {
    let n = x.len();
    let raw: f64 = x
        .iter()
        .enumerate()
        .map(|(i, &v)| (2.0 * (i + 1) as f64 - n as f64 - 1.0) * v)
        .sum();
    Gmd {
        raw,
        normalized: raw / (n * (n - 1) / 2) as f64,
    }
}

/// GMD of the values `<= center` and of those `> center`. A side with fewer
/// than two values has zero deviation.
pub fn split_deviation(values: &[f64], center: f64) -> SplitDeviation {
    let x = sorted(values);
    let cut = x.partition_point(|&v| v <= center);
    let side = |s: &[f64]| if s.len() < 2 { Gmd::default() } else { gmd_of_sorted(s) };
    SplitDeviation {
        lower: side(&x[..cut]),
        upper: side(&x[cut..]),
    }
}

/// Summarises `curves` round by round. One group partition is drawn and
/// reused for every round so the centre is coherent over time.
pub fn summarize<R: Rng + ?Sized>(
    curves: &[RegretCurve],
    groups: usize,
    rng: &mut R,
) -> Result<SummaryCurve> {
    let Some(first) = curves.first() else {
        return Err(Error::InvalidArgument("no curves to summarise".into()));
    };
    if let Some(c) = curves.iter().find(|c| c.rounds() != first.rounds()) {
        return Err(Error::InvalidArgument(format!(
            "curve lengths differ: {} vs {}",
            first.len(),
            c.len()
        )));
    }
    let partition = random_equipartition(curves.len(), groups, rng)?;

    let mut column = vec![0.0; curves.len()];
    let mut center = Vec::with_capacity(first.len());
    let mut deviation = Vec::with_capacity(first.len());
    for r in 0..first.len() {
        for (slot, c) in column.iter_mut().zip(curves) {
            *slot = c.values()[r];
        }
        let m = median_of_means_grouped(&column, &partition);
        center.push(m);
        deviation.push(split_deviation(&column, m));
    }
    Ok(SummaryCurve {
        rounds: first.rounds().to_vec(),
        center,
        deviation,
        trials: curves.len(),
        groups,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::rng_from;
    use proptest::prelude::*;

    fn pairwise_gmd(x: &[f64]) -> f64 {
        let n = x.len();
        let mut total = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                total += (x[i] - x[j]).abs();
            }
        }
        total / (n * (n - 1) / 2) as f64
    }

    #[test]
    fn median_of_means_examples() {
        let mut rng = rng_from(0);
        assert_eq!(median_of_means(&[3.5; 12], 4, &mut rng).unwrap(), 3.5);
        let partition = vec![vec![0, 2], vec![1, 3]];
        assert_eq!(median_of_means_grouped(&[0.0, 0.0, 10.0, 10.0], &partition), 5.0);
        let v = [1.0, 2.0, 6.0];
        assert!((median_of_means(&v, 1, &mut rng).unwrap() - 3.0).abs() < 1e-15);
        assert_eq!(median_of_means(&v, 3, &mut rng).unwrap(), 2.0);
        assert!(median_of_means(&v, 2, &mut rng).is_err());
        assert!(median_of_means(&v, 0, &mut rng).is_err());
        assert!(median_of_means(&[], 1, &mut rng).is_err());
    }

    #[test]
    fn even_group_count_averages_middle_means() {
        let partition = vec![vec![0], vec![1], vec![2], vec![3]];
        assert_eq!(median_of_means_grouped(&[4.0, 1.0, 3.0, 100.0], &partition), 3.5);
    }

    #[test]
    fn equipartition_is_a_partition() {
        let p = random_equipartition(210, 14, &mut rng_from(5)).unwrap();
        assert_eq!(p.len(), 14);
        assert!(p.iter().all(|g| g.len() == 15));
        let mut all: Vec<usize> = p.concat();
        all.sort_unstable();
        assert_eq!(all, (0..210).collect::<Vec<_>>());
    }

    #[test]
    fn gmd_examples() {
        let g = gini_mean_difference(&[0.0, 1.0]).unwrap();
        assert_eq!((g.raw, g.normalized), (1.0, 1.0));
        assert_eq!(gini_mean_difference(&[2.0; 5]).unwrap().normalized, 0.0);
        let g = gini_mean_difference(&[3.0, 1.0, 2.0]).unwrap();
        assert!((g.normalized - 4.0 / 3.0).abs() < 1e-15);
        assert_eq!(g.raw, 4.0);
        assert!(gini_mean_difference(&[1.0]).is_err());
    }

    #[test]
    fn split_deviation_examples() {
        let d = split_deviation(&[0.0, 0.0, 0.0, 10.0], 2.5);
        assert_eq!(d.lower.normalized, 0.0);
        assert_eq!(d.upper.normalized, 0.0);
        let d = split_deviation(&[0.0, 1.0, 9.0, 10.0], 5.0);
        assert_eq!(d.lower.normalized, 1.0);
        assert_eq!(d.upper.normalized, 1.0);
        let d = split_deviation(&[-2.0, -1.0, 0.0, 1.0, 2.0], 0.0);
        // The centre value itself belongs to the lower side.
        assert!((d.lower.normalized - 4.0 / 3.0).abs() < 1e-15);
        assert_eq!(d.upper.normalized, 1.0);
        let d = split_deviation(&[1.0, 2.0, 8.0, 9.0], 5.0);
        assert_eq!(d.lower, d.upper);
    }

    #[test]
    fn summarize_examples() {
        let curve = RegretCurve::from_values(vec![0.0, 0.1, 0.3]).unwrap();
        let s = summarize(&vec![curve.clone(); 6], 3, &mut rng_from(0)).unwrap();
        assert_eq!(s.center, curve.values());
        assert!(s.deviation.iter().all(|d| d.lower.normalized == 0.0 && d.upper.normalized == 0.0));

        let zero = RegretCurve::from_values(vec![0.0; 4]).unwrap();
        let ten = RegretCurve::from_values(vec![10.0; 4]).unwrap();
        let s = summarize(&[zero.clone(), ten], 1, &mut rng_from(0)).unwrap();
        assert_eq!(s.center, vec![5.0; 4]);

        let short = RegretCurve::from_values(vec![0.0; 3]).unwrap();
        assert!(summarize(&[zero.clone(), short], 1, &mut rng_from(0)).is_err());
        assert!(summarize(&[zero.clone(), zero.clone(), zero], 2, &mut rng_from(0)).is_err());
        assert!(summarize(&[], 1, &mut rng_from(0)).is_err());
    }

    #[test]
    fn summarize_accepts_default_protocol() {
        let mut rng = rng_from(1);
        let curves: Vec<RegretCurve> = (0..210)
            .map(|i| RegretCurve::from_values(vec![i as f64 * 0.01, i as f64 * 0.02]).unwrap())
            .collect();
        let s = summarize(&curves, 14, &mut rng).unwrap();
        assert_eq!((s.trials, s.groups), (210, 14));
        assert!(s.center.iter().all(|c| c.is_finite()));
    }

    #[test]
    fn regret_curve_invariants() {
        assert!(RegretCurve::from_values(vec![0.0, 0.5, 0.4]).is_err());
        assert!(RegretCurve::from_values(vec![-0.1, 0.5]).is_err());
        assert!(RegretCurve::new(vec![1, 1], vec![0.0, 0.0]).is_err());
        assert!(RegretCurve::new(vec![1], vec![0.0, 0.0]).is_err());
        let c = RegretCurve::new(vec![10, 20], vec![0.5, 0.5]).unwrap();
        assert_eq!(c.last(), Some(0.5));
    }

    proptest! {
        #[test]
        fn gmd_matches_pairwise(values in prop::collection::vec(-100.0f64..100.0, 2..60)) {
            let fast = gini_mean_difference(&values).unwrap().normalized;
            prop_assert!((fast - pairwise_gmd(&values)).abs() < 1e-9);
        }

        #[test]
        fn estimators_are_affine_covariant(
            values in prop::collection::vec(0.0f64..50.0, 12),
            shift in -20.0f64..20.0,
            scale in 0.1f64..10.0,
            seed in 0u64..1000,
        ) {
            let base = median_of_means(&values, 4, &mut rng_from(seed)).unwrap();
            let moved: Vec<f64> = values.iter().map(|v| v * scale + shift).collect();
            let m = median_of_means(&moved, 4, &mut rng_from(seed)).unwrap();
            prop_assert!((m - (base * scale + shift)).abs() < 1e-9);

            let g = gini_mean_difference(&values).unwrap().normalized;
            let gm = gini_mean_difference(&moved).unwrap().normalized;
            prop_assert!((gm - g * scale).abs() < 1e-9);

            let d = split_deviation(&values, base);
            let dm = split_deviation(&moved, m);
            prop_assert!((dm.lower.normalized - d.lower.normalized * scale).abs() < 1e-9);
            prop_assert!((dm.upper.normalized - d.upper.normalized * scale).abs() < 1e-9);
        }
    }
}

//! Point estimators for rank treatment effects.
//!
//! All estimators contrast two arms of a completely randomized experiment
//! and use the conservative two-sample Neyman variance (the correlation
//! term is dropped), with normal-approximation confidence intervals.
//! Arms with fewer than [`SMALL_ARM_WARNING`] rows get a warning
//! annotation instead of an error.
//!
//! Estimators that need fully determined outcomes refuse partially ranked
//! rows outright: restricting to rows that happen to rank an item
//! conditions on a post-treatment variable. Partially ranked outcomes are
//! handled by the [`crate::bounds`] module instead.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::dataset::{ArmPair, DatasetError, RankDataset};
use crate::inference::normal_quantile;
use crate::ranking::{PartialRanking, RankingError};

/// Below this many rows per arm the normal approximation gets a warning
/// annotation.
pub const SMALL_ARM_WARNING: usize = 30;

#[derive(Debug, Error)]
pub enum EstimatorError {
    #[error("item {item} is partially missing in the sample; use the bounds module")]
    PartiallyMissingOutcome { item: String },
    #[error("arm {label} has {n} rows; at least {min} required")]
    ArmTooSmall { label: String, n: usize, min: usize },
    #[error("pair ({j}, {k}) is undetermined for unit {unit}: an operand is unranked")]
    UndeterminedPair { j: String, k: String, unit: String },
    #[error("pairwise effect requires two distinct items")]
    SameItem,
    #[error("top-{k} indicator for item {item} is indeterminate for unit {unit}")]
    IndeterminateIndicator { item: String, k: u32, unit: String },
    #[error("no rows satisfy the condition")]
    EmptyConditionSet,
    #[error("statistic undefined on {failures} consecutive bootstrap resamples")]
    DegenerateStatistic { failures: usize },
    #[error("bootstrap needs at least {min} replicates, got {got}")]
    TooFewReplicates { got: usize, min: usize },
    #[error(transparent)]
    Dataset(#[from] DatasetError),
    #[error(transparent)]
    Ranking(#[from] RankingError),
}

/// Which effect an [`EffectEstimate`] measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Estimand {
    /// Average rank effect: difference in mean ranks of one item.
    Are,
    /// Average pairwise effect: difference in P(item j ranked above item k).
    Ape,
    /// Difference in P(rank = 1).
    FirstRank,
    /// Difference in P(rank ≤ k).
    TopK { k: u32 },
    /// Average rank effect on a post-outcome-conditioned subset.
    CondAre,
}

impl Estimand {
    pub fn label(&self) -> String {
        match self {
            Estimand::Are => "are".into(),
            Estimand::Ape => "ape".into(),
            Estimand::FirstRank => "first-rank".into(),
            Estimand::TopK { k } => format!("top-{k}"),
            Estimand::CondAre => "cond-are".into(),
        }
    }
}

/// A point estimate with its Neyman standard error and normal CI.
///
/// Sign convention: rank 1 is the highest rank, so a negative rank effect
/// means the treatment moved the item toward the top.
#[derive(Debug, Clone)]
pub struct EffectEstimate {
    pub estimand: Estimand,
    /// Item indices involved: `[j]`, or `[j, k]` for pairwise effects.
    pub items: Vec<usize>,
    pub point: f64,
    pub se: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub n_treated: usize,
    pub n_control: usize,
    pub alpha: f64,
    pub warnings: Vec<String>,
}

impl EffectEstimate {
    fn from_samples(
        estimand: Estimand,
        items: Vec<usize>,
        treated: &[f64],
        control: &[f64],
        alpha: f64,
    ) -> Self {
        let (mt, vt) = mean_and_sample_var(treated);
        let (mc, vc) = mean_and_sample_var(control);
        let point = mt - mc;
        let se = (vt / treated.len() as f64 + vc / control.len() as f64).sqrt();
        let z = normal_quantile(1.0 - alpha / 2.0);
        let mut warnings = Vec::new();
        if treated.len() < SMALL_ARM_WARNING || control.len() < SMALL_ARM_WARNING {
            warnings.push(format!(
                "fewer than {SMALL_ARM_WARNING} rows in an arm; the normal approximation may be poor"
            ));
        }
        EffectEstimate {
            estimand,
            items,
            point,
            se,
            ci_low: point - z * se,
            ci_high: point + z * se,
            n_treated: treated.len(),
            n_control: control.len(),
            alpha,
            warnings,
        }
    }
}

/// Sample mean and the n−1 sample variance (0 for a single observation).
pub(crate) fn mean_and_sample_var(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let ss = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>();
    (mean, ss / (n - 1.0))
}

fn arm_samples(
    ds: &RankDataset,
    arms: &ArmPair,
    min_rows: usize,
) -> Result<(Vec<usize>, Vec<usize>), EstimatorError> {
    let (treated, control) = ds.arm_rows(arms);
    for (rows, label) in [(&treated, &arms.treated), (&control, &arms.control)] {
        if rows.len() < min_rows {
            return Err(EstimatorError::ArmTooSmall {
                label: label.clone(),
                n: rows.len(),
                min: min_rows,
            });
        }
    }
    Ok((treated, control))
}

fn observed_ranks(
    ds: &RankDataset,
    rows: &[usize],
    j: usize,
) -> Result<Vec<f64>, EstimatorError> {
    let mut out = Vec::with_capacity(rows.len());
    for &i in rows {
        match ds.row(i).rank_of(j)? {
            Some(r) => out.push(r as f64),
            None => {
                return Err(EstimatorError::PartiallyMissingOutcome {
                    item: ds.items()[j].clone(),
                })
            }
        }
    }
    Ok(out)
}

/// Average rank effect of item `j`: difference in mean ranks between the
/// arms. Requires the item to be ranked by every row of both arms and at
/// least two rows per arm.
pub fn are(
    ds: &RankDataset,
    j: usize,
    arms: &ArmPair,
    alpha: f64,
) -> Result<EffectEstimate, EstimatorError> {
    let (treated, control) = arm_samples(ds, arms, 2)?;
    let rt = observed_ranks(ds, &treated, j)?;
    let rc = observed_ranks(ds, &control, j)?;
    Ok(EffectEstimate::from_samples(Estimand::Are, vec![j], &rt, &rc, alpha))
}

/// Average pairwise rank effect: difference between arms in the share of
/// rows ranking item `j` above item `k`. Refuses rows where either item is
/// unranked (the pairwise order would be undetermined).
pub fn ape(
    ds: &RankDataset,
    j: usize,
    k: usize,
    arms: &ArmPair,
    alpha: f64,
) -> Result<EffectEstimate, EstimatorError> {
    if j == k {
        return Err(EstimatorError::SameItem);
    }
    let (treated, control) = arm_samples(ds, arms, 2)?;
    let indicators = |rows: &[usize]| -> Result<Vec<f64>, EstimatorError> {
        rows.iter()
            .map(|&i| match ds.row(i).prefers(j, k) {
                Ok(b) => Ok(if b { 1.0 } else { 0.0 }),
                Err(RankingError::UnrankedItem { .. }) => {
                    Err(EstimatorError::UndeterminedPair {
                        j: ds.items()[j].clone(),
                        k: ds.items()[k].clone(),
                        unit: ds.unit_ids()[i].clone(),
                    })
                }
                Err(e) => Err(e.into()),
            })
            .collect()
    };
    let it = indicators(&treated)?;
    let ic = indicators(&control)?;
    let mut est = EffectEstimate::from_samples(Estimand::Ape, vec![j, k], &it, &ic, alpha);
    // Evaluate the share difference as one fraction of integer counts so
    // that swapping the items negates the estimate bit-for-bit.
    let (st, sc) = (it.iter().sum::<f64>(), ic.iter().sum::<f64>());
    let (nt, nc) = (it.len() as f64, ic.len() as f64);
    est.point = (st * nc - sc * nt) / (nt * nc);
    let z = normal_quantile(1.0 - alpha / 2.0);
    est.ci_low = est.point - z * est.se;
    est.ci_high = est.point + z * est.se;
    Ok(est)
}

/// Effect on P(item `j` ranked in the top `k`). Partially ranked rows are
/// usable whenever the indicator is determined by the observed prefix
/// (always true at `k = 1` for rows ranking at least one item, and for any
/// `k ≤ t`).
pub fn topk_effect(
    ds: &RankDataset,
    j: usize,
    k: u32,
    arms: &ArmPair,
    alpha: f64,
) -> Result<EffectEstimate, EstimatorError> {
    let (treated, control) = arm_samples(ds, arms, 2)?;
    let indicators = |rows: &[usize]| -> Result<Vec<f64>, EstimatorError> {
        rows.iter()
            .map(|&i| match ds.row(i).top_k_status(j, k)? {
                Some(b) => Ok(if b { 1.0 } else { 0.0 }),
                None => Err(EstimatorError::IndeterminateIndicator {
                    item: ds.items()[j].clone(),
                    k,
                    unit: ds.unit_ids()[i].clone(),
                }),
            })
            .collect()
    };
    let it = indicators(&treated)?;
    let ic = indicators(&control)?;
    let estimand = if k == 1 { Estimand::FirstRank } else { Estimand::TopK { k } };
    Ok(EffectEstimate::from_samples(estimand, vec![j], &it, &ic, alpha))
}

/// Average rank effect of item `j` on the rows satisfying `condition`.
/// The condition reads a row's (partial) ranking, so the output carries a
/// post-outcome-conditioning caveat.
pub fn conditional_are(
    ds: &RankDataset,
    j: usize,
    arms: &ArmPair,
    condition: impl Fn(&PartialRanking) -> bool,
    alpha: f64,
) -> Result<EffectEstimate, EstimatorError> {
    let keep: Vec<usize> = (0..ds.n_units()).filter(|&i| condition(ds.row(i))).collect();
    if keep.is_empty() {
        return Err(EstimatorError::EmptyConditionSet);
    }
    let sub = ds.select_rows(&keep);
    let mut est = are(&sub, j, arms, alpha)?;
    est.estimand = Estimand::CondAre;
    est.warnings.push(
        "conditional on outcome ranks: the subset is post-treatment, interpret descriptively"
            .into(),
    );
    Ok(est)
}

/// Percentile bootstrap over rows. Each replicate resamples `n` rows with
/// replacement; replicates where the statistic is undefined are redrawn up
/// to [`MAX_BOOTSTRAP_RETRIES`] times in a row before giving up.
///
/// Deterministic for a fixed seed: replicate `b` draws from a ChaCha8
/// stream seeded with `seed` and stream index `b`.
pub const MAX_BOOTSTRAP_RETRIES: usize = 100;

pub fn bootstrap_ci<F>(
    ds: &RankDataset,
    statistic: F,
    replicates: usize,
    seed: u64,
    alpha: f64,
) -> Result<(f64, f64), EstimatorError>
where
    F: Fn(&RankDataset) -> Option<f64>,
{
    if replicates < 100 {
        return Err(EstimatorError::TooFewReplicates { got: replicates, min: 100 });
    }
    let n = ds.n_units();
    let mut stats = Vec::with_capacity(replicates);
    for b in 0..replicates {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(b as u64);
        let mut failures = 0;
        loop {
            let rows: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
            let resample = ds.select_rows(&rows);
            match statistic(&resample) {
                Some(v) => {
                    stats.push(v);
                    break;
                }
                None => {
                    failures += 1;
                    if failures >= MAX_BOOTSTRAP_RETRIES {
                        return Err(EstimatorError::DegenerateStatistic { failures });
                    }
                }
            }
        }
    }
    stats.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok((percentile(&stats, alpha / 2.0), percentile(&stats, 1.0 - alpha / 2.0)))
}

/// Empirical quantile by linear interpolation between order statistics.
fn percentile(sorted: &[f64], q: f64) -> f64 {
    let n = sorted.len();
    let pos = q * (n - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    if lo == hi {
        sorted[lo]
    } else {
        let w = pos - lo as f64;
        sorted[lo] * (1.0 - w) + sorted[hi] * w
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::RankDataset;
    use crate::ranking::PartialRanking;
    use std::collections::BTreeMap;

    pub(crate) fn dataset_from_rows(
        j: usize,
        rows: Vec<(Vec<Option<u32>>, &str)>,
    ) -> RankDataset {
        let n = rows.len();
        let unit_ids = (0..n).map(|i| format!("u{i}")).collect();
        let items = (0..j).map(|x| format!("item{x}")).collect();
        let (ranks, arms): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
        let rows = ranks.into_iter().map(|r| PartialRanking::new(r).unwrap()).collect();
        let treatment = arms.into_iter().map(|a| a.to_string()).collect();
        RankDataset::from_parts(unit_ids, items, rows, treatment, None, BTreeMap::new())
            .unwrap()
    }

    fn full(v: &[u32]) -> Vec<Option<u32>> {
        v.iter().map(|&x| Some(x)).collect()
    }

    fn arms() -> ArmPair {
        ArmPair::new("t", "c")
    }

    #[test]
    fn are_hand_computed() {
        // Treated ranks of item 0: {1, 2}; control: {3, 3}.
        let ds = dataset_from_rows(
            3,
            vec![
                (full(&[1, 2, 3]), "t"),
                (full(&[2, 1, 3]), "t"),
                (full(&[3, 1, 2]), "c"),
                (full(&[3, 2, 1]), "c"),
            ],
        );
        let est = are(&ds, 0, &arms(), 0.05).unwrap();
        assert!((est.point - (-1.5)).abs() < 1e-15);
        assert!((est.se - 0.5).abs() < 1e-15);
        assert!(est.ci_low <= est.point && est.point <= est.ci_high);
        assert_eq!((est.n_treated, est.n_control), (2, 2));
        // Two rows per arm is far below the normal-approximation comfort
        // zone, so the small-sample warning must fire.
        assert!(est.warnings.iter().any(|w| w.contains("normal approximation")));
    }

    #[test]
    fn are_identical_arms_is_zero() {
        let ds = dataset_from_rows(
            3,
            vec![
                (full(&[1, 2, 3]), "t"),
                (full(&[3, 1, 2]), "t"),
                (full(&[1, 2, 3]), "c"),
                (full(&[3, 1, 2]), "c"),
            ],
        );
        for j in 0..3 {
            let est = are(&ds, j, &arms(), 0.05).unwrap();
            assert_eq!(est.point, 0.0);
        }
    }

    #[test]
    fn are_within_logical_bound() {
        // Extreme dataset: treated always rank item 0 first, control last.
        let ds = dataset_from_rows(
            7,
            vec![
                (full(&[1, 2, 3, 4, 5, 6, 7]), "t"),
                (full(&[1, 3, 2, 4, 5, 6, 7]), "t"),
                (full(&[7, 1, 2, 3, 4, 5, 6]), "c"),
                (full(&[7, 2, 1, 3, 4, 5, 6]), "c"),
            ],
        );
        let est = are(&ds, 0, &arms(), 0.05).unwrap();
        assert!(est.point >= -6.0 && est.point <= 6.0);
        assert_eq!(est.point, -6.0);
    }

    #[test]
    fn are_rejects_partial_and_tiny_arms() {
        let ds = dataset_from_rows(
            3,
            vec![
                (vec![Some(1), Some(2), None], "t"),
                (full(&[1, 2, 3]), "t"),
                (full(&[1, 2, 3]), "c"),
                (full(&[2, 1, 3]), "c"),
            ],
        );
        assert!(matches!(
            are(&ds, 2, &arms(), 0.05),
            Err(EstimatorError::PartiallyMissingOutcome { .. })
        ));
        // Item 0 is observed everywhere, so it still works.
        assert!(are(&ds, 0, &arms(), 0.05).is_ok());

        let tiny = dataset_from_rows(
            2,
            vec![(full(&[1, 2]), "t"), (full(&[1, 2]), "c"), (full(&[2, 1]), "c")],
        );
        assert!(matches!(
            are(&tiny, 0, &arms(), 0.05),
            Err(EstimatorError::ArmTooSmall { .. })
        ));
    }

    #[test]
    fn zero_variance_arm_gives_point_mass_ci() {
        let ds = dataset_from_rows(
            2,
            vec![
                (full(&[1, 2]), "t"),
                (full(&[1, 2]), "t"),
                (full(&[1, 2]), "c"),
                (full(&[1, 2]), "c"),
            ],
        );
        let est = are(&ds, 0, &arms(), 0.05).unwrap();
        assert_eq!(est.se, 0.0);
        assert_eq!(est.ci_low, est.point);
        assert_eq!(est.ci_high, est.point);
    }

    #[test]
    fn ape_boundaries_and_antisymmetry() {
        // Treated all prefer 0 over 1; control never.
        let ds = dataset_from_rows(
            3,
            vec![
                (full(&[1, 2, 3]), "t"),
                (full(&[1, 3, 2]), "t"),
                (full(&[2, 1, 3]), "c"),
                (full(&[3, 1, 2]), "c"),
            ],
        );
        let est = ape(&ds, 0, 1, &arms(), 0.05).unwrap();
        assert_eq!(est.point, 1.0);
        let flip = ape(&ds, 1, 0, &arms(), 0.05).unwrap();
        assert_eq!(flip.point, -est.point);
        assert!(matches!(ape(&ds, 1, 1, &arms(), 0.05), Err(EstimatorError::SameItem)));
    }

    #[test]
    fn ape_share_difference() {
        // Treated shares 3/4, control 1/4.
        let ds = dataset_from_rows(
            2,
            vec![
                (full(&[1, 2]), "t"),
                (full(&[1, 2]), "t"),
                (full(&[1, 2]), "t"),
                (full(&[2, 1]), "t"),
                (full(&[1, 2]), "c"),
                (full(&[2, 1]), "c"),
                (full(&[2, 1]), "c"),
                (full(&[2, 1]), "c"),
            ],
        );
        let est = ape(&ds, 0, 1, &arms(), 0.05).unwrap();
        assert!((est.point - 0.5).abs() < 1e-15);
    }

    #[test]
    fn ape_refuses_partial_rows() {
        let ds = dataset_from_rows(
            3,
            vec![
                (vec![Some(1), None, Some(2)], "t"),
                (full(&[1, 2, 3]), "t"),
                (full(&[1, 2, 3]), "c"),
                (full(&[2, 1, 3]), "c"),
            ],
        );
        assert!(matches!(
            ape(&ds, 0, 1, &arms(), 0.05),
            Err(EstimatorError::UndeterminedPair { .. })
        ));
    }

    #[test]
    fn topk_effects() {
        let ds = dataset_from_rows(
            3,
            vec![
                (full(&[1, 2, 3]), "t"),
                (full(&[1, 3, 2]), "t"),
                (full(&[2, 1, 3]), "t"),
                (full(&[3, 1, 2]), "t"),
                (full(&[3, 2, 1]), "t"),
                (full(&[2, 3, 1]), "c"),
                (full(&[3, 1, 2]), "c"),
                (full(&[3, 2, 1]), "c"),
                (full(&[1, 2, 3]), "c"),
                (full(&[2, 1, 3]), "c"),
            ],
        );
        // k = J: the indicator is identically one, so the effect is zero.
        let est = topk_effect(&ds, 0, 3, &arms(), 0.05).unwrap();
        assert_eq!(est.point, 0.0);
        // Item 0 ranks: treated (1,1,2,3,3), control (2,3,3,1,2); both have
        // top-2 share 3/5.
        let est = topk_effect(&ds, 0, 2, &arms(), 0.05).unwrap();
        assert!((est.point - 0.0).abs() < 1e-15);
        let est = topk_effect(&ds, 0, 1, &arms(), 0.05).unwrap();
        assert_eq!(est.estimand, Estimand::FirstRank);
        assert!((est.point - (2.0 / 5.0 - 1.0 / 5.0)).abs() < 1e-15);
    }

    #[test]
    fn topk_on_partial_rows() {
        // Rows ranking top-3 of 10 items: unranked items are determined to
        // be outside the top 3.
        let mut base = vec![None; 10];
        base[0] = Some(1);
        base[1] = Some(2);
        base[2] = Some(3);
        let mut other = vec![None; 10];
        other[3] = Some(1);
        other[4] = Some(2);
        other[5] = Some(3);
        let ds = dataset_from_rows(
            10,
            vec![
                (base.clone(), "t"),
                (base.clone(), "t"),
                (other.clone(), "c"),
                (other.clone(), "c"),
            ],
        );
        let est = topk_effect(&ds, 9, 3, &arms(), 0.05).unwrap();
        assert_eq!(est.point, 0.0);
        let est = topk_effect(&ds, 0, 3, &arms(), 0.05).unwrap();
        assert_eq!(est.point, 1.0);
        // k = 5 is indeterminate for unranked items when only 3 are ranked.
        assert!(matches!(
            topk_effect(&ds, 9, 5, &arms(), 0.05),
            Err(EstimatorError::IndeterminateIndicator { .. })
        ));
    }

    #[test]
    fn conditional_are_matches_manual_subset() {
        let rows = vec![
            (full(&[1, 2, 3]), "t"),
            (full(&[2, 3, 1]), "t"),
            (full(&[3, 1, 2]), "t"),
            (full(&[1, 3, 2]), "c"),
            (full(&[2, 1, 3]), "c"),
            (full(&[3, 2, 1]), "c"),
        ];
        let ds = dataset_from_rows(3, rows.clone());

        // Tautological condition reproduces the unconditional estimate.
        let all = conditional_are(&ds, 0, &arms(), |_| true, 0.05).unwrap();
        let plain = are(&ds, 0, &arms(), 0.05).unwrap();
        assert_eq!(all.point, plain.point);
        assert_eq!(all.estimand, Estimand::CondAre);
        assert!(!all.warnings.is_empty());

        // Condition on item 2's rank exceeding 1, checked by brute force.
        let cond = |r: &PartialRanking| r.rank_of(2).unwrap().unwrap() > 1;
        let est = conditional_are(&ds, 0, &arms(), cond, 0.05).unwrap();
        let kept: Vec<_> = rows.iter().filter(|(r, _)| r[2].unwrap() > 1).collect();
        let mean = |arm: &str| {
            let xs: Vec<f64> = kept
                .iter()
                .filter(|(_, a)| *a == arm)
                .map(|(r, _)| r[0].unwrap() as f64)
                .collect();
            xs.iter().sum::<f64>() / xs.len() as f64
        };
        assert!((est.point - (mean("t") - mean("c"))).abs() < 1e-12);

        assert!(matches!(
            conditional_are(&ds, 0, &arms(), |_| false, 0.05),
            Err(EstimatorError::EmptyConditionSet)
        ));
    }

    #[test]
    fn sum_of_ares_is_zero_on_full_rankings() {
        let ds = dataset_from_rows(
            4,
            vec![
                (full(&[1, 2, 3, 4]), "t"),
                (full(&[4, 3, 2, 1]), "t"),
                (full(&[2, 1, 4, 3]), "t"),
                (full(&[3, 4, 1, 2]), "c"),
                (full(&[1, 3, 2, 4]), "c"),
            ],
        );
        let total: f64 =
            (0..4).map(|j| are(&ds, j, &arms(), 0.05).unwrap().point).sum();
        assert!(total.abs() < 1e-12);
    }

    #[test]
    fn bootstrap_is_deterministic_and_degenerates_sanely() {
        let ds = dataset_from_rows(
            3,
            vec![
                (full(&[1, 2, 3]), "t"),
                (full(&[2, 1, 3]), "t"),
                (full(&[3, 1, 2]), "c"),
                (full(&[1, 2, 3]), "c"),
                (full(&[2, 3, 1]), "c"),
            ],
        );
        let stat = |d: &RankDataset| d.mean_rank(0, "c").ok().map(|(m, _)| m);
        let a = bootstrap_ci(&ds, stat, 500, 42, 0.05).unwrap();
        let b = bootstrap_ci(&ds, stat, 500, 42, 0.05).unwrap();
        assert_eq!(a, b);
        assert!(a.0 <= a.1);

        // Constant statistic: zero-width interval.
        let (lo, hi) = bootstrap_ci(&ds, |_| Some(7.5), 200, 1, 0.05).unwrap();
        assert_eq!((lo, hi), (7.5, 7.5));

        // Statistic that is never defined errors out.
        assert!(matches!(
            bootstrap_ci(&ds, |_| None, 100, 3, 0.05),
            Err(EstimatorError::DegenerateStatistic { .. })
        ));
        assert!(matches!(
            bootstrap_ci(&ds, |_| Some(0.0), 50, 3, 0.05),
            Err(EstimatorError::TooFewReplicates { .. })
        ));
    }
}

//! Ballot-order effects and position-pattern diagnostics.
//!
//! When display order is randomized at the respondent level, the effect of
//! a candidate appearing at a target position is estimable from the ranks
//! alone. Two estimators are provided:
//!
//! - the pooled difference in mean ranks between rows where the candidate
//!   sits in a target position and all other rows, and
//! - a stratified version that differences within cells defined by the
//!   candidate's counterfactual position and the display order of the
//!   remaining candidates, then averages the observed cells.
//!
//! Exhaustive stratification has `(J−1)!·(J−|t₁|)` theoretical cells, which
//! is intractable beyond small `J`; the stratified estimator therefore
//! averages the cells that actually occur and reports their coverage.
//!
//! Position-blind respondents make the distribution of rank-by-position
//! patterns uniform under order randomization, so clumping on particular
//! patterns is detectable with a goodness-of-fit test over the full
//! pattern support.

use std::collections::BTreeMap;

use statrs::distribution::{ChiSquared, ContinuousCDF};
use thiserror::Error;

use crate::bounds::{
    bound_from_imputed, impute_extremes_rows, order_ranker_from_parts, pi_o_from_shares,
    IntervalBound, PiO,
};
use crate::dataset::{DatasetError, MissingnessSummary, RankDataset};
use crate::estimators::{mean_and_sample_var, EffectEstimate, Estimand};
use crate::inference::normal_quantile;
use crate::ranking::{position_pattern, PositionPattern, RankingError};

#[derive(Debug, Error)]
pub enum BallotError {
    #[error("no rows show the candidate in the target position(s)")]
    NoTreatedRows,
    #[error("no rows show the candidate outside the target position(s)")]
    NoControlRows,
    #[error("dataset has no ballot-position matrix")]
    MissingPositions,
    #[error("no stratum has both treated and control rows")]
    InsufficientStrata,
    #[error("empty pattern support")]
    EmptySupport,
    #[error("declared support of {given} patterns is smaller than the {observed} observed")]
    SupportTooSmall { observed: usize, given: usize },
    #[error("candidate {item} has missing ranks; use ballot_bounds for partial data")]
    PartiallyMissingOutcome { item: String },
    #[error("target positions must be distinct values in 1..={len}")]
    BadTargetPositions { len: usize },
    #[error(transparent)]
    Dataset(#[from] DatasetError),
    #[error(transparent)]
    Ranking(#[from] RankingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BallotEstimator {
    Pooled,
    Stratified,
}

/// One stratum's contribution to the stratified estimator.
#[derive(Debug, Clone)]
pub struct StratumEstimate {
    /// The control-side display position compared against the target set.
    pub counterfactual_position: u32,
    /// Display order of the other candidates (item indices, by position).
    pub remaining_order: Vec<usize>,
    pub diff: f64,
    pub n_treated: usize,
    pub n_control: usize,
}

/// A ballot-order effect for one candidate and a set of target positions.
#[derive(Debug, Clone)]
pub struct BallotEffect {
    pub candidate: usize,
    pub target_positions: Vec<u32>,
    pub estimate: EffectEstimate,
    pub estimator: BallotEstimator,
    /// Per-cell estimates (stratified only).
    pub strata_detail: Option<Vec<StratumEstimate>>,
    /// Observed share of the theoretical strata (stratified only).
    pub coverage: Option<f64>,
}

fn check_targets(ds: &RankDataset, t1: &[u32]) -> Result<(), BallotError> {
    let j = ds.n_items();
    let mut seen = vec![false; j];
    if t1.is_empty() || t1.len() >= j {
        return Err(BallotError::BadTargetPositions { len: j });
    }
    for &p in t1 {
        if p == 0 || p as usize > j || seen[p as usize - 1] {
            return Err(BallotError::BadTargetPositions { len: j });
        }
        seen[p as usize - 1] = true;
    }
    Ok(())
}

/// Splits rows by whether candidate `j` is displayed in one of the target
/// positions.
fn split_by_position(
    ds: &RankDataset,
    j: usize,
    t1: &[u32],
) -> Result<(Vec<usize>, Vec<usize>), BallotError> {
    if !ds.has_positions() {
        return Err(BallotError::MissingPositions);
    }
    check_targets(ds, t1)?;
    let mut treated = Vec::new();
    let mut control = Vec::new();
    for i in 0..ds.n_units() {
        let pos = ds.position(i, j).expect("positions checked above");
        if t1.contains(&pos) {
            treated.push(i);
        } else {
            control.push(i);
        }
    }
    if treated.is_empty() {
        return Err(BallotError::NoTreatedRows);
    }
    if control.is_empty() {
        return Err(BallotError::NoControlRows);
    }
    Ok((treated, control))
}

fn observed_ranks(
    ds: &RankDataset,
    rows: &[usize],
    j: usize,
) -> Result<Vec<f64>, BallotError> {
    rows.iter()
        .map(|&i| {
            ds.row(i).ranks()[j].map(|r| r as f64).ok_or_else(|| {
                BallotError::PartiallyMissingOutcome { item: ds.items()[j].clone() }
            })
        })
        .collect()
}

fn effect_from_samples(
    j: usize,
    t1: &[u32],
    treated: &[f64],
    control: &[f64],
    alpha: f64,
    estimator: BallotEstimator,
) -> BallotEffect {
    let (mt, vt) = mean_and_sample_var(treated);
    let (mc, vc) = mean_and_sample_var(control);
    let point = mt - mc;
    let se = (vt / treated.len() as f64 + vc / control.len() as f64).sqrt();
    let z = normal_quantile(1.0 - alpha / 2.0);
    BallotEffect {
        candidate: j,
        target_positions: t1.to_vec(),
        estimate: EffectEstimate {
            estimand: Estimand::Are,
            items: vec![j],
            point,
            se,
            ci_low: point - z * se,
            ci_high: point + z * se,
            n_treated: treated.len(),
            n_control: control.len(),
            alpha,
            warnings: Vec::new(),
        },
        estimator,
        strata_detail: None,
        coverage: None,
    }
}

/// Pooled ballot-order effect: mean rank of candidate `j` when displayed
/// in a target position minus the mean rank elsewhere. Requires fully
/// ranked data; partially ranked data go through [`ballot_bounds`].
pub fn position_effect_pooled(
    ds: &RankDataset,
    j: usize,
    t1: &[u32],
    alpha: f64,
) -> Result<BallotEffect, BallotError> {
    let (treated, control) = split_by_position(ds, j, t1)?;
    let rt = observed_ranks(ds, &treated, j)?;
    let rc = observed_ranks(ds, &control, j)?;
    Ok(effect_from_samples(j, t1, &rt, &rc, alpha, BallotEstimator::Pooled))
}

/// Stratified ballot-order effect: within each observed cell defined by
/// the candidate's control-side position and the display order of the
/// other candidates, difference the mean ranks; then average the cells
/// that have both sides. Exact on exhaustive designs, and equal to the
/// pooled estimator when cell means do not vary across strata.
pub fn position_effect_stratified(
    ds: &RankDataset,
    j: usize,
    t1: &[u32],
    alpha: f64,
) -> Result<BallotEffect, BallotError> {
    let (treated, control) = split_by_position(ds, j, t1)?;

    // Key: display order of all candidates except j (item index per
    // position, positions ascending).
    let remaining_order = |i: usize| -> Vec<usize> {
        let pos_row = ds.position_row(i).expect("positions checked above");
        let mut others: Vec<(u32, usize)> = (0..ds.n_items())
            .filter(|&item| item != j)
            .map(|item| (pos_row[item], item))
            .collect();
        others.sort_unstable();
        others.into_iter().map(|(_, item)| item).collect()
    };

    let mut treated_cells: BTreeMap<Vec<usize>, Vec<f64>> = BTreeMap::new();
    for &i in &treated {
        let rank = ds.row(i).ranks()[j].map(|r| r as f64).ok_or_else(|| {
            BallotError::PartiallyMissingOutcome { item: ds.items()[j].clone() }
        })?;
        treated_cells.entry(remaining_order(i)).or_default().push(rank);
    }

    let mut control_cells: BTreeMap<(Vec<usize>, u32), Vec<f64>> = BTreeMap::new();
    for &i in &control {
        let rank = ds.row(i).ranks()[j].map(|r| r as f64).ok_or_else(|| {
            BallotError::PartiallyMissingOutcome { item: ds.items()[j].clone() }
        })?;
        let pos = ds.position(i, j).expect("positions checked above");
        control_cells.entry((remaining_order(i), pos)).or_default().push(rank);
    }

    let mut details = Vec::new();
    let mut diffs = Vec::new();
    let mut var_terms = Vec::new();
    for ((order, pos), c_ranks) in &control_cells {
        let Some(t_ranks) = treated_cells.get(order) else { continue };
        let (mt, vt) = mean_and_sample_var(t_ranks);
        let (mc, vc) = mean_and_sample_var(c_ranks);
        let diff = mt - mc;
        diffs.push(diff);
        var_terms.push(vt / t_ranks.len() as f64 + vc / c_ranks.len() as f64);
        details.push(StratumEstimate {
            counterfactual_position: *pos,
            remaining_order: order.clone(),
            diff,
            n_treated: t_ranks.len(),
            n_control: c_ranks.len(),
        });
    }
    if diffs.is_empty() {
        return Err(BallotError::InsufficientStrata);
    }

    let k = diffs.len() as f64;
    let point = diffs.iter().sum::<f64>() / k;
    // Cells share treated rows across counterfactual positions, so this
    // variance treats them as independent and is approximate.
    let se = (var_terms.iter().sum::<f64>() / (k * k)).sqrt();
    let z = normal_quantile(1.0 - alpha / 2.0);

    let j_count = ds.n_items();
    let theoretical = factorial(j_count - 1) * (j_count - t1.len()) as f64;
    let coverage = diffs.len() as f64 / theoretical;

    let (nt, nc) = (treated.len(), control.len());
    Ok(BallotEffect {
        candidate: j,
        target_positions: t1.to_vec(),
        estimate: EffectEstimate {
            estimand: Estimand::Are,
            items: vec![j],
            point,
            se,
            ci_low: point - z * se,
            ci_high: point + z * se,
            n_treated: nt,
            n_control: nc,
            alpha,
            warnings: Vec::new(),
        },
        estimator: BallotEstimator::Stratified,
        strata_detail: Some(details),
        coverage: Some(coverage),
    })
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|x| x as f64).product()
}

/// Bounds for ballot-order effects on partially ranked data: the pooled
/// estimator applied to the two extreme imputations, plus the
/// order-ranker rescaling.
#[derive(Debug, Clone)]
pub struct BallotBounds {
    pub candidate: usize,
    pub target_positions: Vec<u32>,
    pub are_bound: IntervalBound,
    pub order_ranker_bound: IntervalBound,
    pub pi_o: PiO,
    /// Per-side observation shares (treated = target positions).
    pub missingness: MissingnessSummary,
}

pub fn ballot_bounds(
    ds: &RankDataset,
    j: usize,
    t1: &[u32],
) -> Result<BallotBounds, BallotError> {
    let (treated, control) = split_by_position(ds, j, t1)?;
    let mut rows = treated.clone();
    rows.extend(control.iter().copied());
    let flags: Vec<bool> = (0..rows.len()).map(|i| i < treated.len()).collect();

    let imputed = impute_extremes_rows(ds, j, &rows, &flags);
    let mut are_bound = bound_from_imputed(&imputed, ds.n_items());

    let count = |rows: &[usize]| rows.iter().filter(|&&i| ds.row(i).ranks()[j].is_some()).count();
    let (kt, kc) = (count(&treated), count(&control));
    let (nt, nc) = (treated.len(), control.len());
    let (pt, pc) = (kt as f64 / nt as f64, kc as f64 / nc as f64);
    let missingness = MissingnessSummary {
        p_treated: pt,
        p_control: pc,
        se_treated: (pt * (1.0 - pt) / nt as f64).sqrt(),
        se_control: (pc * (1.0 - pc) / nc as f64).sqrt(),
        n_treated: nt,
        n_control: nc,
        ranked_treated: kt,
        ranked_control: kc,
    };
    let pi = pi_o_from_shares(&missingness);
    are_bound.pi_o_hat = Some(pi.pi_o_hat);
    are_bound.diagnostics = Some(missingness.clone());

    let order_ranker_bound = order_ranker_from_parts(
        are_bound.lower.unwrap(),
        are_bound.upper.unwrap(),
        pi.pi_o_hat,
        ds.n_items(),
    );

    Ok(BallotBounds {
        candidate: j,
        target_positions: t1.to_vec(),
        are_bound,
        order_ranker_bound,
        pi_o: pi,
        missingness,
    })
}

/// Observed distribution of rank-by-position patterns with Wald CIs on
/// each pattern's share.
#[derive(Debug, Clone)]
pub struct PatternCounts {
    pub support: Vec<PositionPattern>,
    pub counts: Vec<u64>,
    pub n: u64,
    pub proportions: Vec<f64>,
    pub cis: Vec<(f64, f64)>,
}

/// Tallies each row's position pattern (its ranks rearranged by display
/// position). Requires the position matrix.
pub fn pattern_distribution(ds: &RankDataset, alpha: f64) -> Result<PatternCounts, BallotError> {
    if !ds.has_positions() {
        return Err(BallotError::MissingPositions);
    }
    let mut counts: BTreeMap<Vec<Option<u32>>, u64> = BTreeMap::new();
    for i in 0..ds.n_units() {
        let pos_row = ds.position_row(i).expect("positions checked above");
        // position_pattern wants item-at-position; invert the row.
        let mut order = vec![0usize; pos_row.len()];
        for (item, &p) in pos_row.iter().enumerate() {
            order[p as usize - 1] = item;
        }
        let pat = position_pattern(ds.row(i), &order)?;
        *counts.entry(pat.slots().to_vec()).or_insert(0) += 1;
    }
    let n: u64 = counts.values().sum();
    let z = normal_quantile(1.0 - alpha / 2.0);
    let mut support = Vec::with_capacity(counts.len());
    let mut tallies = Vec::with_capacity(counts.len());
    let mut proportions = Vec::with_capacity(counts.len());
    let mut cis = Vec::with_capacity(counts.len());
    for (slots, count) in counts {
        let p = count as f64 / n as f64;
        let se = (p * (1.0 - p) / n as f64).sqrt();
        support.push(PositionPattern::new(slots).expect("patterns built from valid rows"));
        tallies.push(count);
        proportions.push(p);
        cis.push((p - z * se, p + z * se));
    }
    Ok(PatternCounts { support, counts: tallies, n, proportions, cis })
}

/// Pearson goodness-of-fit test result against the uniform distribution.
#[derive(Debug, Clone, Copy)]
pub struct UniformityTest {
    pub chi2: f64,
    pub df: usize,
    pub p: f64,
    /// Fires when `n < 5 × support size`, where expected cell counts make
    /// the chi-squared approximation shaky.
    pub low_count_warning: bool,
}

/// Pearson χ² test of pattern uniformity over a full support of
/// `full_support_size` patterns; unobserved patterns count as zero cells.
/// For fully ranked data the support is `J!`; for a capped design use
/// [`crate::ranking::pattern_support_size`].
pub fn uniformity_chisq(
    pc: &PatternCounts,
    full_support_size: usize,
) -> Result<UniformityTest, BallotError> {
    if full_support_size == 0 || pc.n == 0 {
        return Err(BallotError::EmptySupport);
    }
    if full_support_size < pc.support.len() {
        return Err(BallotError::SupportTooSmall {
            observed: pc.support.len(),
            given: full_support_size,
        });
    }
    let expected = pc.n as f64 / full_support_size as f64;
    let observed_sum: f64 = pc
        .counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum();
    let unobserved = full_support_size.saturating_sub(pc.support.len());
    let chi2 = observed_sum + unobserved as f64 * expected;
    let df = full_support_size - 1;
    let p = if df == 0 {
        1.0
    } else {
        let dist = ChiSquared::new(df as f64).expect("positive df");
        1.0 - dist.cdf(chi2)
    };
    Ok(UniformityTest {
        chi2,
        df,
        p,
        low_count_warning: (pc.n as f64) < 5.0 * full_support_size as f64,
    })
}

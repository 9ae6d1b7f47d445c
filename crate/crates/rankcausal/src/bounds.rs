//! Nonparametric partial identification for rank effects.
//!
//! When outcomes are partially ranked, the missingness of an item's rank
//! is itself affected by treatment, so listwise deletion conditions on a
//! post-treatment variable. Instead, every missing rank is imputed at the
//! two extremes its support allows: a top-`t` partial ranking pins an
//! unobserved rank to `{t+1, …, J}`, so the best imputation is `t+1` and
//! the worst is `J`. Applying the difference-in-mean-ranks estimator to
//! the two imputed samples yields a Manski-style worst-case interval that
//! contains every effect consistent with the observed data.
//!
//! Endpoints are reported in numeric order (`lower ≤ upper`); the lower
//! endpoint favors the treated arm (missing treated ranks imputed high,
//! missing control ranks imputed low) and the upper endpoint mirrors it.
//! Order-ranker effects rescale the interval by the estimated share of
//! units whose ranking decision responds to treatment.

use thiserror::Error;

use crate::dataset::{ArmPair, DatasetError, MissingnessSummary, RankDataset};

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error("arm {label} has no rows")]
    EmptyArm { label: String },
    #[error("item {item} is partially missing; sharp full-data bounds need full observation")]
    PartiallyMissingOutcome { item: String },
    #[error(transparent)]
    Dataset(#[from] DatasetError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundEstimand {
    Are,
    Ape,
    OrderRankerAre,
}

impl BoundEstimand {
    pub fn label(&self) -> &'static str {
        match self {
            BoundEstimand::Are => "are",
            BoundEstimand::Ape => "ape",
            BoundEstimand::OrderRankerAre => "order-ranker-are",
        }
    }
}

/// A partially identified effect. `lower`/`upper` are `None` exactly when
/// the effect is not identified (`identified == false`), which for
/// order-ranker effects happens whenever the estimated order-ranker share
/// is non-positive.
#[derive(Debug, Clone)]
pub struct IntervalBound {
    pub estimand: BoundEstimand,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    /// True when an endpoint was pulled back into the logical range.
    pub clipped: bool,
    pub identified: bool,
    pub pi_o_hat: Option<f64>,
    /// Per-arm shares of observed ranks for the bounded item.
    pub diagnostics: Option<MissingnessSummary>,
    /// True when the whole interval is ≤ 0, i.e. the data refute a
    /// positive effect on the item's rank value at face value.
    pub positive_effect_refuted: bool,
}

impl IntervalBound {
    pub fn width(&self) -> Option<f64> {
        match (self.lower, self.upper) {
            (Some(lo), Some(hi)) => Some(hi - lo),
            _ => None,
        }
    }
}

/// The two extreme imputations of one item's rank column over the rows of
/// a treated/control contrast. Observed ranks are carried through
/// unchanged in both vectors.
#[derive(Debug, Clone)]
pub struct ImputedPair {
    /// Source dataset row index per entry.
    pub rows: Vec<usize>,
    pub treated: Vec<bool>,
    /// Treatment-favoring sample: missing treated ranks at `t_i + 1`,
    /// missing control ranks at `J`.
    pub best_case: Vec<u32>,
    /// Treatment-disfavoring sample: missing treated ranks at `J`,
    /// missing control ranks at `t_i + 1`.
    pub worst_case: Vec<u32>,
}

/// Share of order-rankers: the arm difference in the propensity to rank
/// an item at all. A non-positive estimate is a monotonicity violation
/// (defiers outnumber order-rankers) and leaves the order-ranker effect
/// unidentified.
#[derive(Debug, Clone, Copy)]
pub struct PiO {
    pub pi_o_hat: f64,
    pub se: f64,
    pub monotonicity_ok: bool,
}

fn nonempty_arms(
    ds: &RankDataset,
    arms: &ArmPair,
) -> Result<(Vec<usize>, Vec<usize>), BoundsError> {
    let (treated, control) = ds.arm_rows(arms);
    if treated.is_empty() {
        return Err(BoundsError::EmptyArm { label: arms.treated.clone() });
    }
    if control.is_empty() {
        return Err(BoundsError::EmptyArm { label: arms.control.clone() });
    }
    Ok((treated, control))
}

/// Extreme imputations for item `j` over the two arms, with the treated
/// indicator taken from arm membership.
pub fn impute_extremes(
    ds: &RankDataset,
    j: usize,
    arms: &ArmPair,
) -> Result<ImputedPair, BoundsError> {
    let (treated_rows, control_rows) = nonempty_arms(ds, arms)?;
    let mut rows = treated_rows;
    let n_treated = rows.len();
    rows.extend(control_rows);
    let treated: Vec<bool> = (0..rows.len()).map(|i| i < n_treated).collect();
    Ok(impute_extremes_rows(ds, j, &rows, &treated))
}

/// Extreme imputations with an explicit per-row treatment indicator
/// (ballot-position analyses define treatment per item rather than per
/// dataset arm).
pub fn impute_extremes_rows(
    ds: &RankDataset,
    j: usize,
    rows: &[usize],
    treated: &[bool],
) -> ImputedPair {
    debug_assert_eq!(rows.len(), treated.len());
    let j_total = ds.n_items() as u32;
    let mut best = Vec::with_capacity(rows.len());
    let mut worst = Vec::with_capacity(rows.len());
    for (&i, &is_treated) in rows.iter().zip(treated) {
        let row = ds.row(i);
        match row.ranks()[j] {
            Some(r) => {
                best.push(r);
                worst.push(r);
            }
            None => {
                let highest = row.num_ranked() as u32 + 1;
                if is_treated {
                    best.push(highest);
                    worst.push(j_total);
                } else {
                    best.push(j_total);
                    worst.push(highest);
                }
            }
        }
    }
    ImputedPair { rows: rows.to_vec(), treated: treated.to_vec(), best_case: best, worst_case: worst }
}

fn diff_in_means(values: &[u32], treated: &[bool]) -> f64 {
    let (mut st, mut nt, mut sc, mut nc) = (0.0, 0usize, 0.0, 0usize);
    for (&v, &d) in values.iter().zip(treated) {
        if d {
            st += v as f64;
            nt += 1;
        } else {
            sc += v as f64;
            nc += 1;
        }
    }
    st / nt as f64 - sc / nc as f64
}

fn clip(v: f64, limit: f64) -> (f64, bool) {
    if v < -limit {
        (-limit, true)
    } else if v > limit {
        (limit, true)
    } else {
        (v, false)
    }
}

/// Imputation bound on the average rank effect of item `j`. Zero-width
/// (and equal to the point estimate) exactly when the item has no missing
/// ranks in either arm.
pub fn bounds_partial_are(
    ds: &RankDataset,
    j: usize,
    arms: &ArmPair,
) -> Result<IntervalBound, BoundsError> {
    let imputed = impute_extremes(ds, j, arms)?;
    let bound = bound_from_imputed(&imputed, ds.n_items());
    let diagnostics = ds.missingness(j, arms).ok();
    let pi = pi_o(ds, j, arms)?;
    Ok(IntervalBound { pi_o_hat: Some(pi.pi_o_hat), diagnostics, ..bound })
}

/// Difference-in-mean-ranks evaluated on both imputed samples, clipped to
/// the logical range `[-(J-1), J-1]`.
pub fn bound_from_imputed(imputed: &ImputedPair, n_items: usize) -> IntervalBound {
    let tau_best = diff_in_means(&imputed.best_case, &imputed.treated);
    let tau_worst = diff_in_means(&imputed.worst_case, &imputed.treated);
    // The treatment-favoring sample can only lower treated means and raise
    // control means, so tau_best <= tau_worst holds by construction.
    debug_assert!(tau_best <= tau_worst + 1e-12);
    let limit = n_items as f64 - 1.0;
    let (lower, c1) = clip(tau_best, limit);
    let (upper, c2) = clip(tau_worst, limit);
    IntervalBound {
        estimand: BoundEstimand::Are,
        lower: Some(lower),
        upper: Some(upper),
        clipped: c1 || c2,
        identified: true,
        pi_o_hat: None,
        diagnostics: None,
        positive_effect_refuted: upper <= 0.0,
    }
}

/// Sharp bound on the ARE of a fully observed item, driven only by the
/// outcome support `[1, J]`: each arm's unobserved counterfactual mean is
/// replaced by the support extremes, weighted by the arm shares.
pub fn sharp_bounds_full_are(
    ds: &RankDataset,
    j: usize,
    arms: &ArmPair,
) -> Result<IntervalBound, BoundsError> {
    let (treated, control) = nonempty_arms(ds, arms)?;
    for &i in treated.iter().chain(&control) {
        if ds.row(i).ranks()[j].is_none() {
            return Err(BoundsError::PartiallyMissingOutcome { item: ds.items()[j].clone() });
        }
    }
    let mean = |rows: &[usize]| {
        rows.iter().map(|&i| ds.row(i).ranks()[j].unwrap() as f64).sum::<f64>()
            / rows.len() as f64
    };
    let (mu_t, mu_c) = (mean(&treated), mean(&control));
    let p1 = treated.len() as f64 / (treated.len() + control.len()) as f64;
    let p0 = 1.0 - p1;
    let t = ds.n_items() as f64;
    let lower = mu_t * p1 + 1.0 * p0 - (mu_c * p0 + t * p1);
    let upper = mu_t * p1 + t * p0 - (mu_c * p0 + 1.0 * p1);
    Ok(IntervalBound {
        estimand: BoundEstimand::Are,
        lower: Some(lower),
        upper: Some(upper),
        clipped: false,
        identified: true,
        pi_o_hat: None,
        diagnostics: None,
        positive_effect_refuted: upper <= 0.0,
    })
}

/// Sharp bound on the APE of two fully observed items; the indicator
/// support is `{0, 1}`.
pub fn sharp_bounds_full_ape(
    ds: &RankDataset,
    j: usize,
    k: usize,
    arms: &ArmPair,
) -> Result<IntervalBound, BoundsError> {
    let (treated, control) = nonempty_arms(ds, arms)?;
    for &i in treated.iter().chain(&control) {
        let row = ds.row(i);
        if row.ranks()[j].is_none() || row.ranks()[k].is_none() {
            return Err(BoundsError::PartiallyMissingOutcome { item: ds.items()[j].clone() });
        }
    }
    let share = |rows: &[usize]| {
        rows.iter().filter(|&&i| ds.row(i).prefers(j, k).unwrap()).count() as f64
            / rows.len() as f64
    };
    let (q_t, q_c) = (share(&treated), share(&control));
    let p1 = treated.len() as f64 / (treated.len() + control.len()) as f64;
    let p0 = 1.0 - p1;
    let lower = q_t * p1 - (q_c * p0 + p1);
    let upper = q_t * p1 + p0 - q_c * p0;
    Ok(IntervalBound {
        estimand: BoundEstimand::Ape,
        lower: Some(lower),
        upper: Some(upper),
        clipped: false,
        identified: true,
        pi_o_hat: None,
        diagnostics: None,
        positive_effect_refuted: upper <= 0.0,
    })
}

/// Estimated order-ranker share for item `j`: the arm difference in the
/// propensity to rank the item, with a binomial-difference standard error.
pub fn pi_o(ds: &RankDataset, j: usize, arms: &ArmPair) -> Result<PiO, BoundsError> {
    nonempty_arms(ds, arms)?;
    let m = ds.missingness(j, arms).map_err(|e| match e {
        DatasetError::EmptyArm { label } => BoundsError::EmptyArm { label },
        other => BoundsError::Dataset(other),
    })?;
    Ok(pi_o_from_shares(&m))
}

/// Order-ranker share from precomputed per-arm observation shares.
pub fn pi_o_from_shares(m: &MissingnessSummary) -> PiO {
    let pi = m.p_treated - m.p_control;
    let se = (m.se_treated * m.se_treated + m.se_control * m.se_control).sqrt();
    PiO { pi_o_hat: pi, se, monotonicity_ok: pi > 0.0 }
}

/// Bound on the order-ranker ARE: the ARE bound rescaled by the estimated
/// order-ranker share and clipped to `[-(J-1), J-1]`. Not identified when
/// the share estimate is non-positive; that is a reported state rather
/// than an error so batch runs over many items complete.
pub fn bounds_order_ranker(
    ds: &RankDataset,
    j: usize,
    arms: &ArmPair,
) -> Result<IntervalBound, BoundsError> {
    let are_bound = bounds_partial_are(ds, j, arms)?;
    let pi = pi_o(ds, j, arms)?;
    Ok(order_ranker_from_parts(
        are_bound.lower.unwrap(),
        are_bound.upper.unwrap(),
        pi.pi_o_hat,
        ds.n_items(),
    ))
}

/// Order-ranker rescaling of precomputed ARE bound endpoints.
pub fn order_ranker_from_parts(
    are_lower: f64,
    are_upper: f64,
    pi_o_hat: f64,
    n_items: usize,
) -> IntervalBound {
    if pi_o_hat <= 0.0 {
        return IntervalBound {
            estimand: BoundEstimand::OrderRankerAre,
            lower: None,
            upper: None,
            clipped: false,
            identified: false,
            pi_o_hat: Some(pi_o_hat),
            diagnostics: None,
            positive_effect_refuted: false,
        };
    }
    let limit = n_items as f64 - 1.0;
    let (lower, c1) = clip(are_lower / pi_o_hat, limit);
    let (upper, c2) = clip(are_upper / pi_o_hat, limit);
    IntervalBound {
        estimand: BoundEstimand::OrderRankerAre,
        lower: Some(lower),
        upper: Some(upper),
        clipped: c1 || c2,
        identified: true,
        pi_o_hat: Some(pi_o_hat),
        diagnostics: None,
        positive_effect_refuted: upper <= 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::RankDataset;
    use crate::estimators::are;
    use crate::ranking::PartialRanking;
    use std::collections::BTreeMap;

    fn dataset_from_rows(j: usize, rows: Vec<(Vec<Option<u32>>, &str)>) -> RankDataset {
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
    fn sharp_are_bound_plug_in() {
        // Equal arm shares, J = 3, both arm means 2 -> bound (-1, 1).
        let ds = dataset_from_rows(
            3,
            vec![
                (full(&[1, 2, 3]), "t"),
                (full(&[3, 2, 1]), "t"),
                (full(&[1, 2, 3]), "c"),
                (full(&[3, 2, 1]), "c"),
            ],
        );
        let b = sharp_bounds_full_are(&ds, 0, &arms()).unwrap();
        assert!((b.lower.unwrap() + 1.0).abs() < 1e-12);
        assert!((b.upper.unwrap() - 1.0).abs() < 1e-12);

        // Point estimate always inside the sharp bound.
        let est = are(&ds, 0, &arms(), 0.05).unwrap();
        assert!(b.lower.unwrap() <= est.point && est.point <= b.upper.unwrap());
    }

    #[test]
    fn sharp_are_bound_unbalanced_arms_matches_formula() {
        // 3 treated rows, 1 control row: p1 = 0.75.
        let ds = dataset_from_rows(
            4,
            vec![
                (full(&[1, 2, 3, 4]), "t"),
                (full(&[2, 1, 3, 4]), "t"),
                (full(&[3, 1, 2, 4]), "t"),
                (full(&[4, 1, 2, 3]), "c"),
            ],
        );
        let (mu_t, mu_c) = (2.0, 4.0);
        let (p1, p0) = (0.75, 0.25);
        let t = 4.0;
        let b = sharp_bounds_full_are(&ds, 0, &arms()).unwrap();
        let lower = mu_t * p1 + p0 - (mu_c * p0 + t * p1);
        let upper = mu_t * p1 + t * p0 - (mu_c * p0 + p1);
        assert!((b.lower.unwrap() - lower).abs() < 1e-12);
        assert!((b.upper.unwrap() - upper).abs() < 1e-12);
        assert!(b.lower.unwrap() >= -3.0 && b.upper.unwrap() <= 3.0);
    }

    #[test]
    fn sharp_ape_bound_plug_in() {
        // Both arm shares 0.5 with equal arm sizes -> (-0.5, 0.5).
        let ds = dataset_from_rows(
            2,
            vec![
                (full(&[1, 2]), "t"),
                (full(&[2, 1]), "t"),
                (full(&[1, 2]), "c"),
                (full(&[2, 1]), "c"),
            ],
        );
        let b = sharp_bounds_full_ape(&ds, 0, 1, &arms()).unwrap();
        assert!((b.lower.unwrap() + 0.5).abs() < 1e-12);
        assert!((b.upper.unwrap() - 0.5).abs() < 1e-12);

        // Shares 1 and 0: upper endpoint hits the cap from the formula.
        let ds = dataset_from_rows(
            2,
            vec![
                (full(&[1, 2]), "t"),
                (full(&[1, 2]), "t"),
                (full(&[2, 1]), "c"),
                (full(&[2, 1]), "c"),
            ],
        );
        let b = sharp_bounds_full_ape(&ds, 0, 1, &arms()).unwrap();
        assert!((b.lower.unwrap() - 0.0).abs() < 1e-12);
        assert!((b.upper.unwrap() - 1.0).abs() < 1e-12);
        assert!(b.lower.unwrap() >= -1.0 && b.upper.unwrap() <= 1.0);
    }

    #[test]
    fn imputation_matches_support_extremes() {
        // A 10-item ballot where the voter ranked 3 items; the unranked
        // item's support is {4, ..., 10}.
        let mut row = vec![None; 10];
        row[0] = Some(2);
        row[2] = Some(3);
        row[7] = Some(1);
        let ds = dataset_from_rows(
            10,
            vec![
                (row.clone(), "c"),
                (row.clone(), "t"),
                (full(&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10]), "t"),
                (full(&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10]), "c"),
            ],
        );
        let imp = impute_extremes(&ds, 1, &arms()).unwrap();
        // Entry layout: treated rows first. Control copy of the partial row.
        let control_slot = imp.treated.iter().position(|&t| !t).unwrap();
        assert_eq!(imp.best_case[control_slot], 10);
        assert_eq!(imp.worst_case[control_slot], 4);
        // Treated copy of the same partial row.
        let treated_slot = imp.treated.iter().position(|&t| t).unwrap();
        assert_eq!(imp.best_case[treated_slot], 4);
        assert_eq!(imp.worst_case[treated_slot], 10);
        // Fully ranked rows pass through unchanged.
        assert_eq!(imp.best_case[1], 2);
        assert_eq!(imp.worst_case[1], 2);
    }

    #[test]
    fn empty_row_imputes_full_support() {
        let ds = dataset_from_rows(
            5,
            vec![(vec![None; 5], "t"), (full(&[1, 2, 3, 4, 5]), "c")],
        );
        let imp = impute_extremes(&ds, 0, &arms()).unwrap();
        assert_eq!(imp.best_case[0], 1);
        assert_eq!(imp.worst_case[0], 5);
    }

    #[test]
    fn no_missing_data_gives_zero_width_bound() {
        let ds = dataset_from_rows(
            3,
            vec![
                (full(&[1, 2, 3]), "t"),
                (full(&[2, 1, 3]), "t"),
                (full(&[3, 1, 2]), "c"),
                (full(&[1, 2, 3]), "c"),
            ],
        );
        let b = bounds_partial_are(&ds, 0, &arms()).unwrap();
        let est = are(&ds, 0, &arms(), 0.05).unwrap();
        assert_eq!(b.width().unwrap(), 0.0);
        assert!((b.lower.unwrap() - est.point).abs() < 1e-12);
        assert!(!b.clipped);
    }

    #[test]
    fn all_treated_missing_bound_endpoints() {
        // Treated rows rank 2 items each but never item 2; control rows
        // rank everything.
        let ds = dataset_from_rows(
            4,
            vec![
                (vec![Some(1), Some(2), None, None], "t"),
                (vec![Some(2), Some(1), None, None], "t"),
                (full(&[2, 3, 1, 4]), "c"),
                (full(&[3, 2, 1, 4]), "c"),
            ],
        );
        let b = bounds_partial_are(&ds, 2, &arms()).unwrap();
        let mu_c = 1.0;
        // Lower endpoint: treated imputed at t_i + 1 = 3.
        assert!((b.lower.unwrap() - (3.0 - mu_c)).abs() < 1e-12);
        // Upper endpoint: treated imputed at J = 4.
        assert!((b.upper.unwrap() - (4.0 - mu_c)).abs() < 1e-12);
    }

    #[test]
    fn fully_missing_item_is_uninformative() {
        let ds = dataset_from_rows(
            4,
            vec![(vec![None; 4], "t"), (vec![None; 4], "t"), (vec![None; 4], "c")],
        );
        let b = bounds_partial_are(&ds, 0, &arms()).unwrap();
        assert_eq!(b.lower.unwrap(), -3.0);
        assert_eq!(b.upper.unwrap(), 3.0);
    }

    #[test]
    fn pi_o_shares_and_monotonicity() {
        let mut rows = Vec::new();
        // Treated: 8 of 10 rank item 0; control: 6 of 10.
        for i in 0..10 {
            let r = if i < 8 { vec![Some(1), None] } else { vec![None, Some(1)] };
            rows.push((r, "t"));
        }
        for i in 0..10 {
            let r = if i < 6 { vec![Some(1), None] } else { vec![None, Some(1)] };
            rows.push((r, "c"));
        }
        let ds = dataset_from_rows(2, rows);
        let pi = pi_o(&ds, 0, &arms()).unwrap();
        assert!((pi.pi_o_hat - 0.2).abs() < 1e-12);
        assert!(pi.monotonicity_ok);
        assert!(pi.se > 0.0);

        // Equal shares: zero, not ok.
        let pi = pi_o(&ds, 1, &arms()).unwrap();
        assert!((pi.pi_o_hat - (0.2 - 0.4)).abs() < 1e-12);
        assert!(!pi.monotonicity_ok);
    }

    #[test]
    fn order_ranker_scaling_and_clipping() {
        // Plain division.
        let b = order_ranker_from_parts(-1.0, 2.0, 0.5, 10);
        assert_eq!(b.lower.unwrap(), -2.0);
        assert_eq!(b.upper.unwrap(), 4.0);
        assert!(!b.clipped);
        assert!(b.identified);

        // A share of one reproduces the ARE bound.
        let b = order_ranker_from_parts(-1.0, 2.0, 1.0, 10);
        assert_eq!((b.lower.unwrap(), b.upper.unwrap()), (-1.0, 2.0));

        // Scaling beyond the logical range clips.
        let b = order_ranker_from_parts(-6.0, 8.0, 0.5, 7);
        assert_eq!((b.lower.unwrap(), b.upper.unwrap()), (-6.0, 6.0));
        assert!(b.clipped);

        // Non-positive share: not identified, no endpoints, no error.
        let b = order_ranker_from_parts(-1.0, 2.0, 0.0, 10);
        assert!(!b.identified);
        assert_eq!(b.lower, None);
        assert_eq!(b.upper, None);
        let b = order_ranker_from_parts(-1.0, 2.0, -0.3, 10);
        assert!(!b.identified);
    }

    #[test]
    fn refutation_flag_fires_when_interval_nonpositive() {
        // Treated always rank item 0 first; control always last: the whole
        // interval sits below zero.
        let ds = dataset_from_rows(
            3,
            vec![
                (full(&[1, 2, 3]), "t"),
                (full(&[1, 3, 2]), "t"),
                (full(&[3, 1, 2]), "c"),
                (full(&[3, 2, 1]), "c"),
            ],
        );
        let b = bounds_partial_are(&ds, 0, &arms()).unwrap();
        assert!(b.positive_effect_refuted);
        let b = bounds_partial_are(&ds, 2, &arms()).unwrap();
        assert!(!b.positive_effect_refuted);
    }

    #[test]
    fn empty_arm_is_an_error() {
        let ds = dataset_from_rows(2, vec![(full(&[1, 2]), "t"), (full(&[2, 1]), "t")]);
        assert!(matches!(
            bounds_partial_are(&ds, 0, &arms()),
            Err(BoundsError::EmptyArm { .. })
        ));
    }
}

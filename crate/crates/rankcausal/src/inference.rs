//! Wald tests and Benjamini-Hochberg multiple testing.
//!
//! The step-up procedure supports three anchor schedules:
//!
//! - [`BhMode::PaperCumulative`]: `l_i = iα / (m · Σ_{k≤i} 1/k)` — the
//!   cumulative-harmonic correction; the default.
//! - [`BhMode::ConstantHarmonic`]: `l_i = iα / (m · Σ_{k≤m} 1/k)` — the
//!   Benjamini-Yekutieli correction for arbitrary dependence
//!   (Benjamini & Yekutieli 2001).
//! - [`BhMode::PlainBh`]: `l_i = iα / m` — the original step-up schedule
//!   for independent or positively dependent tests
//!   (Benjamini & Hochberg 1995).
//!
//! With `r = max{i : p_(i) < l_i}` (strict inequality; 0 when no index
//! qualifies) the procedure rejects every hypothesis with `p ≤ T`, where
//! `T = p_(r)`.

use statrs::distribution::{ContinuousCDF, Normal};
use thiserror::Error;

use crate::estimators::EffectEstimate;

#[derive(Debug, Error, PartialEq)]
pub enum InferenceError {
    #[error("standard error must be positive for a Wald test")]
    ZeroSe,
    #[error("p-value {value} outside [0, 1] for hypothesis {label}")]
    InvalidP { label: String, value: f64 },
    #[error("alpha must be in (0, 1), got {0}")]
    InvalidAlpha(f64),
    #[error("at least one p-value required")]
    Empty,
}

fn std_normal() -> Normal {
    Normal::new(0.0, 1.0).expect("standard normal")
}

/// Standard normal CDF.
pub fn normal_cdf(x: f64) -> f64 {
    std_normal().cdf(x)
}

/// Standard normal quantile.
pub fn normal_quantile(p: f64) -> f64 {
    std_normal().inverse_cdf(p)
}

/// How a Wald statistic maps to a p-value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PTail {
    /// `p = 1 − Φ(|w|)`: a one-sided tail evaluated at the absolute
    /// statistic, direction-agnostic. Callers encode one-sided hypothesis
    /// directions by flipping the estimate's sign. The default.
    UpperAbs,
    /// `p = 2(1 − Φ(|w|))`.
    TwoSided,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaldTest {
    pub w: f64,
    pub p: f64,
    pub tail: PTail,
}

/// Wald test of `point = null` given a standard error.
pub fn wald_p(point: f64, se: f64, null: f64, tail: PTail) -> Result<WaldTest, InferenceError> {
    if se <= 0.0 || !se.is_finite() {
        return Err(InferenceError::ZeroSe);
    }
    let w = (point - null) / se;
    let upper = 1.0 - normal_cdf(w.abs());
    let p = match tail {
        PTail::UpperAbs => upper,
        PTail::TwoSided => 2.0 * upper,
    };
    Ok(WaldTest { w, p, tail })
}

/// Wald test for an [`EffectEstimate`].
pub fn wald_p_estimate(
    est: &EffectEstimate,
    null: f64,
    tail: PTail,
) -> Result<WaldTest, InferenceError> {
    wald_p(est.point, est.se, null, tail)
}

/// Anchor schedule for [`bh_adjust`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BhMode {
    PaperCumulative,
    ConstantHarmonic,
    PlainBh,
}

impl BhMode {
    pub fn label(&self) -> &'static str {
        match self {
            BhMode::PaperCumulative => "paper-cumulative",
            BhMode::ConstantHarmonic => "constant-harmonic",
            BhMode::PlainBh => "plain-bh",
        }
    }
}

/// Outcome of the step-up procedure.
#[derive(Debug, Clone)]
pub struct BhResult {
    /// Hypothesis labels sorted by ascending p-value.
    pub sorted_labels: Vec<String>,
    pub p_sorted: Vec<f64>,
    /// Anchor `l_i` for each sorted index.
    pub anchors: Vec<f64>,
    /// Number of rejections `r = max{i : p_(i) < l_i}` (1-based; 0 = none).
    pub r: usize,
    /// Rejection threshold `T = p_(r)`; absent when nothing is rejected.
    pub threshold: Option<f64>,
    /// Rejection decision per hypothesis, in the input order.
    pub rejected: Vec<bool>,
    pub mode: BhMode,
    pub alpha: f64,
}

/// Benjamini-Hochberg step-up adjustment over labeled p-values.
pub fn bh_adjust(
    pvalues: &[(String, f64)],
    alpha: f64,
    mode: BhMode,
) -> Result<BhResult, InferenceError> {
    if pvalues.is_empty() {
        return Err(InferenceError::Empty);
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(InferenceError::InvalidAlpha(alpha));
    }
    for (label, p) in pvalues {
        if !(0.0..=1.0).contains(p) || p.is_nan() {
            return Err(InferenceError::InvalidP { label: label.clone(), value: *p });
        }
    }
    let m = pvalues.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| pvalues[a].1.partial_cmp(&pvalues[b].1).unwrap());
    let p_sorted: Vec<f64> = order.iter().map(|&i| pvalues[i].1).collect();
    let sorted_labels: Vec<String> = order.iter().map(|&i| pvalues[i].0.clone()).collect();

    let harmonic_m: f64 = (1..=m).map(|k| 1.0 / k as f64).sum();
    let mut cumulative = 0.0;
    let anchors: Vec<f64> = (1..=m)
        .map(|i| {
            cumulative += 1.0 / i as f64;
            let denom = match mode {
                BhMode::PaperCumulative => m as f64 * cumulative,
                BhMode::ConstantHarmonic => m as f64 * harmonic_m,
                BhMode::PlainBh => m as f64,
            };
            i as f64 * alpha / denom
        })
        .collect();

    let r = (0..m).rev().find(|&i| p_sorted[i] < anchors[i]).map_or(0, |i| i + 1);
    let threshold = if r >= 1 { Some(p_sorted[r - 1]) } else { None };
    let rejected: Vec<bool> = pvalues
        .iter()
        .map(|(_, p)| threshold.is_some_and(|t| *p <= t))
        .collect();

    Ok(BhResult { sorted_labels, p_sorted, anchors, r, threshold, rejected, mode, alpha })
}

//! Causal inference for ranking outcomes in randomized experiments.
//!
//! The crate estimates treatment effects when each unit's outcome is a
//! (possibly partial) ranking of `J` items:
//!
//! - [`ranking`] — validated full/partial rankings, permutation utilities,
//!   Kendall distance, ballot-position patterns.
//! - [`dataset`] — CSV ingestion, covariate slicing, arm selection,
//!   missingness summaries.
//! - [`estimators`] — average rank effects, pairwise rank effects, top-k
//!   and conditional effects, with Neyman variances, normal-approximation
//!   confidence intervals, and a percentile bootstrap.
//! - [`inference`] — Wald tests and the Benjamini-Hochberg step-up
//!   procedure with dependence corrections.
//! - [`bounds`] — nonparametric partial identification for partially
//!   ranked outcomes: worst-case imputation bounds, sharp bounds for fully
//!   observed outcomes, and order-ranker effects.
//! - [`ballot`] — ballot-order effect estimators (pooled and stratified),
//!   position-pattern distributions, and a uniformity test.
//! - [`simulate`] — Plackett-Luce and latent-utility data-generating
//!   processes plus the Monte Carlo studies built on them.
//!
//! Rank 1 is always the highest (most preferred) rank, so negative rank
//! effects mean the treatment moved an item toward the top.

pub mod ballot;
pub mod bounds;
pub mod dataset;
pub mod estimators;
pub mod inference;
pub mod ranking;
pub mod simulate;

pub use dataset::{ArmPair, CsvSchema, RankDataset};
pub use ranking::{PartialRanking, PositionPattern, Ranking};

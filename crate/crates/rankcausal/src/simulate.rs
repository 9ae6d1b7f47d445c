//! Data-generating processes and Monte Carlo study harnesses.
//!
//! Randomness comes from ChaCha8 streams: a study seeded with `seed` gives
//! replicate `r` the generator `ChaCha8Rng::seed_from_u64(seed)` with
//! stream index `r` ([`stream_rng`]). Streams are independent, replicates
//! may run in any order, and results are reproducible across platforms.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

use crate::dataset::RankDataset;
use crate::inference::normal_cdf;
use crate::ranking::{PartialRanking, Ranking};

#[derive(Debug, Error, PartialEq)]
pub enum SimulateError {
    #[error("Plackett-Luce weights must be positive and at least two")]
    InvalidWeights,
    #[error("stratum proportions must be non-negative and sum to 1")]
    InvalidProportions,
    #[error("item index {index} out of range for {len} items")]
    BadItemIndex { index: usize, len: usize },
}

/// The documented seed-splitting rule: stream `stream` of base seed `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// A Plackett-Luce ranking model: rank 1 goes to item `j` with probability
/// `w_j / Σw`, rank 2 to an item drawn the same way from the remainder,
/// and so on (Plackett 1975; Luce 1959).
#[derive(Debug, Clone, PartialEq)]
pub struct PlModel {
    weights: Vec<f64>,
}

impl PlModel {
    pub fn new(weights: Vec<f64>) -> Result<Self, SimulateError> {
        if weights.len() < 2 || weights.iter().any(|&w| w <= 0.0 || !w.is_finite()) {
            return Err(SimulateError::InvalidWeights);
        }
        Ok(Self { weights })
    }

    pub fn equal(j: usize) -> Result<Self, SimulateError> {
        Self::new(vec![1.0; j])
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// Draws a full ranking by sequential weighted choice without replacement.
pub fn pl_sample<R: Rng>(model: &PlModel, rng: &mut R) -> Ranking {
    ranking_from_weights(model.weights(), rng)
}

/// Sequential weighted choice over an arbitrary positive weight vector.
/// Zero-weight leftovers (possible after floating underflow) fall back to
/// uniform choice.
fn ranking_from_weights<R: Rng>(weights: &[f64], rng: &mut R) -> Ranking {
    let j = weights.len();
    let mut remaining: Vec<usize> = (0..j).collect();
    let mut ranks = vec![0u32; j];
    for step in 1..=j as u32 {
        let total: f64 = remaining.iter().map(|&i| weights[i]).sum();
        let pick_pos = if total > 0.0 {
            let mut u = rng.gen::<f64>() * total;
            let mut chosen = remaining.len() - 1;
            for (pos, &i) in remaining.iter().enumerate() {
                u -= weights[i];
                if u <= 0.0 {
                    chosen = pos;
                    break;
                }
            }
            chosen
        } else {
            rng.gen_range(0..remaining.len())
        };
        ranks[remaining[pick_pos]] = step;
        remaining.swap_remove(pick_pos);
    }
    Ranking::new(ranks).expect("sequential choice yields a permutation")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arm {
    Treated,
    Control,
}

impl Arm {
    pub fn label(&self) -> &'static str {
        match self {
            Arm::Treated => "treated",
            Arm::Control => "control",
        }
    }
}

/// How latent utilities are turned into a preference ranking.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankingMode {
    /// Plackett-Luce draw with weights `exp(V_j)`; preserves the utility
    /// order stochastically.
    Softmax,
    /// Deterministic sort by utility, best first.
    ByUtility,
}

/// Latent-utility ranking process. Each voter draws
/// `V_j = a_j·ε'_j + ε_j` with independent standard normal `ε'_j, ε_j`,
/// plus `τ` on the boosted items of their arm. A per-voter threshold
/// drawn from `N(threshold_mean, 1)` decides how many items the voter
/// ranks (never more than `cap`); the voter then reports the top of their
/// full preference ranking down to that length.
#[derive(Debug, Clone)]
pub struct UtilityDgp {
    /// Scale `a_j` on the item-specific noise, one per item.
    pub coefficients: Vec<f64>,
    pub tau: f64,
    /// Items whose utility gains `τ` in the treated arm.
    pub treated_boost: Vec<usize>,
    /// Items whose utility gains `τ` in the control arm.
    pub control_boost: Vec<usize>,
    /// `None` disables the threshold: voters rank up to `cap` items.
    pub threshold_mean: Option<f64>,
    pub cap: usize,
    pub mode: RankingMode,
}

impl UtilityDgp {
    /// Six-item benchmark process: noise scales (2, 3, 1, 3, 3, 4), a
    /// boost of τ = 2 on item 0 under treatment and item 1 under control,
    /// a standard-normal ranking threshold, and the given ranking cap.
    pub fn six_item_preset(cap: usize) -> Self {
        UtilityDgp {
            coefficients: vec![2.0, 3.0, 1.0, 3.0, 3.0, 4.0],
            tau: 2.0,
            treated_boost: vec![0],
            control_boost: vec![1],
            threshold_mean: Some(0.0),
            cap,
            mode: RankingMode::Softmax,
        }
    }

    /// Rescales the noise coefficients; larger spread concentrates support
    /// on the high-variance items.
    pub fn with_spread(mut self, spread: f64) -> Self {
        for c in &mut self.coefficients {
            *c *= spread;
        }
        self
    }

    pub fn n_items(&self) -> usize {
        self.coefficients.len()
    }

    fn validate(&self) -> Result<(), SimulateError> {
        let j = self.n_items();
        if j < 2 {
            return Err(SimulateError::InvalidWeights);
        }
        for &i in self.treated_boost.iter().chain(&self.control_boost) {
            if i >= j {
                return Err(SimulateError::BadItemIndex { index: i, len: j });
            }
        }
        Ok(())
    }
}

/// One voter's draw: the reported partial ranking and the full preference
/// ranking it truncates. The pair is coherent (observed ranks are the top
/// of the full ranking), so worst-case imputation bounds computed from the
/// partials contain the full-data estimate by construction.
pub fn utility_sample_paired<R: Rng>(
    dgp: &UtilityDgp,
    arm: Arm,
    rng: &mut R,
) -> Result<(PartialRanking, Ranking), SimulateError> {
    dgp.validate()?;
    let j = dgp.n_items();
    let boosted = match arm {
        Arm::Treated => &dgp.treated_boost,
        Arm::Control => &dgp.control_boost,
    };
    let mut utilities = Vec::with_capacity(j);
    for (idx, &a) in dgp.coefficients.iter().enumerate() {
        let shape: f64 = rng.sample(StandardNormal);
        let noise: f64 = rng.sample(StandardNormal);
        let mut v = a * shape + noise;
        if boosted.contains(&idx) {
            v += dgp.tau;
        }
        utilities.push(v);
    }

    let full = match dgp.mode {
        RankingMode::Softmax => {
            let max = utilities.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let weights: Vec<f64> = utilities.iter().map(|&v| (v - max).exp()).collect();
            ranking_from_weights(&weights, rng)
        }
        RankingMode::ByUtility => {
            let mut order: Vec<usize> = (0..j).collect();
            order.sort_by(|&a, &b| utilities[b].partial_cmp(&utilities[a]).unwrap());
            let mut ranks = vec![0u32; j];
            for (step, &item) in order.iter().enumerate() {
                ranks[item] = step as u32 + 1;
            }
            Ranking::new(ranks).expect("sorted utilities form a permutation")
        }
    };

    let willing = match dgp.threshold_mean {
        Some(mean) => {
            let c: f64 = rng.sample::<f64, _>(StandardNormal) + mean;
            utilities.iter().filter(|&&v| v >= c).count()
        }
        None => j,
    };
    let t = willing.min(dgp.cap) as u32;
    let ranks: Vec<Option<u32>> =
        full.ranks().iter().map(|&r| if r <= t { Some(r) } else { None }).collect();
    let partial = PartialRanking::new(ranks).expect("prefix of a permutation is consecutive");
    Ok((partial, full))
}

/// One voter's reported partial ranking.
pub fn utility_sample<R: Rng>(
    dgp: &UtilityDgp,
    arm: Arm,
    rng: &mut R,
) -> Result<PartialRanking, SimulateError> {
    utility_sample_paired(dgp, arm, rng).map(|(partial, _)| partial)
}

/// Assembles a two-arm dataset from simulated draws, with optional
/// per-row ballot positions.
pub fn dataset_from_draws(
    n_items: usize,
    draws: Vec<(PartialRanking, Arm)>,
    positions: Option<Vec<Vec<u32>>>,
) -> RankDataset {
    let n = draws.len();
    let unit_ids = (0..n).map(|i| format!("u{i}")).collect();
    let items = (0..n_items).map(|j| format!("item{j}")).collect();
    let (rows, arms): (Vec<_>, Vec<_>) = draws.into_iter().unzip();
    let treatment = arms.into_iter().map(|a| a.label().to_string()).collect();
    RankDataset::from_parts(unit_ids, items, rows, treatment, positions, Default::default())
        .expect("simulated draws are shape-consistent")
}

/// A uniformly random display order: entry `j` is the 1-based position of
/// item `j`.
pub fn random_positions<R: Rng>(j: usize, rng: &mut R) -> Vec<u32> {
    use rand::seq::SliceRandom;
    let mut positions: Vec<u32> = (1..=j as u32).collect();
    positions.shuffle(rng);
    positions
}

/// Kolmogorov-Smirnov distance between a sample and the standard normal.
pub fn ks_distance_standard_normal(xs: &[f64]) -> f64 {
    let mut sorted = xs.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let cdf = normal_cdf(x);
        d = d.max(((i + 1) as f64 / n - cdf).abs());
        d = d.max((i as f64 / n - cdf).abs());
    }
    d
}

/// Null sampling study: per-statistic Kolmogorov-Smirnov distances of
/// standardized effect estimates against the standard normal, with both
/// arms drawn from the same Plackett-Luce model.
#[derive(Debug, Clone)]
pub struct NullNormalityStudy {
    /// KS distance per item of the standardized rank-effect estimates.
    pub are_ks: Vec<f64>,
    /// KS distance per item pair `(j, k)`, `j < k`, of the standardized
    /// pairwise-effect estimates.
    pub ape_ks: Vec<f64>,
    pub ape_pairs: Vec<(usize, usize)>,
    /// Standardized rank-effect draws, one series per item.
    pub standardized_are: Vec<Vec<f64>>,
    pub replicates: usize,
    /// Replicates dropped per item because neither arm showed any outcome
    /// variation for that item.
    pub zero_variance_dropped: Vec<usize>,
}

/// Runs the null study: `replicates` repetitions of drawing `n_per_arm`
/// rankings for each arm from `model`, computing every per-item rank
/// effect and per-pair pairwise effect, then standardizing each series by
/// its own across-replicate standard deviation.
pub fn null_normality_study(
    model: &PlModel,
    n_per_arm: usize,
    replicates: usize,
    seed: u64,
) -> NullNormalityStudy {
    let j = model.len();
    let pairs: Vec<(usize, usize)> =
        (0..j).flat_map(|a| ((a + 1)..j).map(move |b| (a, b))).collect();

    let mut are_draws: Vec<Vec<f64>> = vec![Vec::with_capacity(replicates); j];
    let mut are_degenerate: Vec<usize> = vec![0; j];
    let mut ape_draws: Vec<Vec<f64>> = vec![Vec::with_capacity(replicates); pairs.len()];

    for rep in 0..replicates {
        let mut rng = stream_rng(seed, rep as u64);
        let treated: Vec<Ranking> = (0..n_per_arm).map(|_| pl_sample(model, &mut rng)).collect();
        let control: Vec<Ranking> = (0..n_per_arm).map(|_| pl_sample(model, &mut rng)).collect();

        for item in 0..j {
            let rt: Vec<f64> = treated.iter().map(|r| r.ranks()[item] as f64).collect();
            let rc: Vec<f64> = control.iter().map(|r| r.ranks()[item] as f64).collect();
            if constant(&rt) && constant(&rc) {
                are_degenerate[item] += 1;
                continue;
            }
            let tau = mean(&rt) - mean(&rc);
            are_draws[item].push(tau);
        }
        for (p, &(a, b)) in pairs.iter().enumerate() {
            let it: Vec<f64> = treated
                .iter()
                .map(|r| if r.prefers(a, b).unwrap() { 1.0 } else { 0.0 })
                .collect();
            let ic: Vec<f64> = control
                .iter()
                .map(|r| if r.prefers(a, b).unwrap() { 1.0 } else { 0.0 })
                .collect();
            ape_draws[p].push(mean(&it) - mean(&ic));
        }
    }

    let standardize = |draws: &[f64]| -> Vec<f64> {
        let sd = sample_sd(draws);
        if sd > 0.0 {
            draws.iter().map(|&x| x / sd).collect()
        } else {
            Vec::new()
        }
    };

    let standardized_are: Vec<Vec<f64>> = are_draws.iter().map(|d| standardize(d)).collect();
    let are_ks = standardized_are
        .iter()
        .map(|d| if d.is_empty() { f64::NAN } else { ks_distance_standard_normal(d) })
        .collect();
    let ape_ks = ape_draws
        .iter()
        .map(|d| {
            let s = standardize(d);
            if s.is_empty() {
                f64::NAN
            } else {
                ks_distance_standard_normal(&s)
            }
        })
        .collect();

    NullNormalityStudy {
        are_ks,
        ape_ks,
        ape_pairs: pairs,
        standardized_are,
        replicates,
        zero_variance_dropped: are_degenerate,
    }
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn constant(xs: &[f64]) -> bool {
    xs.windows(2).all(|w| w[0] == w[1])
}

fn sample_sd(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    (xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() - 1) as f64).sqrt()
}

/// One cell of a bound-width study: a sample size, a ranking cap, and a
/// coefficient spread, with per-item average interval endpoints.
#[derive(Debug, Clone)]
pub struct WidthCell {
    pub n_total: usize,
    pub cap: usize,
    pub spread: f64,
    pub item: usize,
    pub mean_width: f64,
    pub mean_lower: f64,
    pub mean_upper: f64,
    pub replicates: usize,
}

/// Average worst-case-imputation bound widths over a grid of sample
/// sizes, ranking caps, and coefficient spreads.
pub fn bound_width_study(
    base: &UtilityDgp,
    ns: &[usize],
    caps: &[usize],
    spreads: &[f64],
    replicates: usize,
    seed: u64,
) -> Result<Vec<WidthCell>, SimulateError> {
    base.validate()?;
    let j = base.n_items();
    let arms = crate::dataset::ArmPair::new(Arm::Treated.label(), Arm::Control.label());
    let mut out = Vec::new();
    let mut cell_index = 0u64;
    for &n_total in ns {
        for &cap in caps {
            for &spread in spreads {
                let dgp = UtilityDgp { cap, ..base.clone() }.with_spread(spread);
                let mut sums = vec![(0.0, 0.0, 0.0); j];
                for rep in 0..replicates {
                    let mut rng = stream_rng(seed, cell_index * replicates as u64 + rep as u64);
                    let mut draws = Vec::with_capacity(n_total);
                    for i in 0..n_total {
                        let arm = if i < n_total / 2 { Arm::Treated } else { Arm::Control };
                        draws.push((utility_sample(&dgp, arm, &mut rng)?, arm));
                    }
                    let ds = dataset_from_draws(j, draws, None);
                    for (item, acc) in sums.iter_mut().enumerate() {
                        let b = crate::bounds::bounds_partial_are(&ds, item, &arms)
                            .expect("both arms populated by construction");
                        acc.0 += b.width().unwrap();
                        acc.1 += b.lower.unwrap();
                        acc.2 += b.upper.unwrap();
                    }
                }
                for (item, acc) in sums.iter().enumerate() {
                    out.push(WidthCell {
                        n_total,
                        cap,
                        spread,
                        item,
                        mean_width: acc.0 / replicates as f64,
                        mean_lower: acc.1 / replicates as f64,
                        mean_upper: acc.2 / replicates as f64,
                        replicates,
                    });
                }
                cell_index += 1;
            }
        }
    }
    Ok(out)
}

/// Principal-stratum membership of a simulated voter with respect to one
/// item: whether they rank it under both, one, or neither arm assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stratum {
    AlwaysRanker,
    OrderRanker,
    NeverRanker,
    Defier,
}

impl Stratum {
    pub fn label(&self) -> &'static str {
        match self {
            Stratum::AlwaysRanker => "always-ranker",
            Stratum::OrderRanker => "order-ranker",
            Stratum::NeverRanker => "never-ranker",
            Stratum::Defier => "defier",
        }
    }
}

/// Mixture process over principal strata for one item. Ranks come from
/// `ranking`; the stratum and arm decide whether the item's rank is
/// observed (always: both arms; order: treated only; never: neither;
/// defier: control only).
#[derive(Debug, Clone)]
pub struct StrataDgp {
    /// Proportions of always-rankers, order-rankers, never-rankers, and
    /// defiers, summing to one.
    pub proportions: [f64; 4],
    pub ranking: PlModel,
    pub item: usize,
}

impl StrataDgp {
    fn validate(&self) -> Result<(), SimulateError> {
        let sum: f64 = self.proportions.iter().sum();
        if self.proportions.iter().any(|&p| p < 0.0) || (sum - 1.0).abs() > 1e-9 {
            return Err(SimulateError::InvalidProportions);
        }
        if self.item >= self.ranking.len() {
            return Err(SimulateError::BadItemIndex {
                index: self.item,
                len: self.ranking.len(),
            });
        }
        Ok(())
    }
}

/// Draws one voter: a latent stratum, then a partial ranking whose
/// observation of the target item follows the stratum-by-arm rule. The
/// reported ranking is the prefix of a full Plackett-Luce draw that either
/// includes the item (observed) or stops just short of it (missing).
pub fn strata_sample<R: Rng>(
    dgp: &StrataDgp,
    arm: Arm,
    rng: &mut R,
) -> Result<(PartialRanking, Stratum), SimulateError> {
    dgp.validate()?;
    let u: f64 = rng.gen();
    let p = &dgp.proportions;
    let stratum = if u < p[0] {
        Stratum::AlwaysRanker
    } else if u < p[0] + p[1] {
        Stratum::OrderRanker
    } else if u < p[0] + p[1] + p[2] {
        Stratum::NeverRanker
    } else {
        Stratum::Defier
    };
    let observed = match (stratum, arm) {
        (Stratum::AlwaysRanker, _) => true,
        (Stratum::OrderRanker, Arm::Treated) => true,
        (Stratum::OrderRanker, Arm::Control) => false,
        (Stratum::NeverRanker, _) => false,
        (Stratum::Defier, Arm::Control) => true,
        (Stratum::Defier, Arm::Treated) => false,
    };
    let full = pl_sample(&dgp.ranking, rng);
    let item_rank = full.ranks()[dgp.item];
    let t = if observed { item_rank } else { item_rank - 1 };
    let ranks: Vec<Option<u32>> =
        full.ranks().iter().map(|&r| if r <= t { Some(r) } else { None }).collect();
    let partial = PartialRanking::new(ranks).expect("prefix of a permutation is consecutive");
    Ok((partial, stratum))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::pi_o;
    use crate::dataset::ArmPair;

    #[test]
    fn pl_sample_is_a_valid_ranking() {
        let model = PlModel::new(vec![0.5, 0.3, 0.2, 0.1]).unwrap();
        let mut rng = stream_rng(7, 0);
        for _ in 0..200 {
            let r = pl_sample(&model, &mut rng);
            assert_eq!(r.len(), 4);
        }
    }

    #[test]
    fn pl_rejects_bad_weights() {
        assert_eq!(PlModel::new(vec![1.0]), Err(SimulateError::InvalidWeights));
        assert_eq!(PlModel::new(vec![1.0, 0.0]), Err(SimulateError::InvalidWeights));
        assert_eq!(PlModel::new(vec![1.0, -2.0]), Err(SimulateError::InvalidWeights));
    }

    #[test]
    fn pl_first_choice_matches_weight_shares() {
        // P(item 0 first) = 0.5 / 1.1.
        let model = PlModel::new(vec![0.5, 0.3, 0.2, 0.1]).unwrap();
        let mut rng = stream_rng(11, 0);
        let draws = 60_000;
        let mut firsts = [0usize; 4];
        for _ in 0..draws {
            let r = pl_sample(&model, &mut rng);
            let first = r.ranks().iter().position(|&x| x == 1).unwrap();
            firsts[first] += 1;
        }
        for (item, &w) in model.weights().iter().enumerate() {
            let expected = w / 1.1;
            let observed = firsts[item] as f64 / draws as f64;
            let se = (expected * (1.0 - expected) / draws as f64).sqrt();
            assert!(
                (observed - expected).abs() < 4.0 * se,
                "item {item}: observed {observed:.4}, expected {expected:.4}"
            );
        }
    }

    #[test]
    fn pl_near_degenerate_weight_dominates() {
        let model = PlModel::new(vec![1.0, 1e-12, 1e-12]).unwrap();
        let mut rng = stream_rng(3, 0);
        let mut count = 0;
        for _ in 0..2000 {
            if pl_sample(&model, &mut rng).ranks()[0] == 1 {
                count += 1;
            }
        }
        assert!(count >= 1998);
    }

    #[test]
    fn equal_weight_pl_is_uniform_over_permutations() {
        let model = PlModel::equal(3).unwrap();
        let mut rng = stream_rng(5, 0);
        let draws = 60_000;
        let mut counts = std::collections::HashMap::new();
        for _ in 0..draws {
            *counts.entry(pl_sample(&model, &mut rng).ranks().to_vec()).or_insert(0usize) += 1;
        }
        assert_eq!(counts.len(), 6);
        let expected = draws as f64 / 6.0;
        let chi2: f64 = counts
            .values()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        // df = 5; the 99.9th percentile is about 20.5.
        assert!(chi2 < 20.5, "chi2 = {chi2}");
    }

    #[test]
    fn seeded_streams_are_deterministic_and_distinct() {
        let model = PlModel::equal(4).unwrap();
        let a: Vec<_> = {
            let mut rng = stream_rng(99, 1);
            (0..10).map(|_| pl_sample(&model, &mut rng)).collect()
        };
        let b: Vec<_> = {
            let mut rng = stream_rng(99, 1);
            (0..10).map(|_| pl_sample(&model, &mut rng)).collect()
        };
        let c: Vec<_> = {
            let mut rng = stream_rng(99, 2);
            (0..10).map(|_| pl_sample(&model, &mut rng)).collect()
        };
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn utility_sample_respects_cap_and_threshold() {
        let dgp = UtilityDgp::six_item_preset(3);
        let mut rng = stream_rng(21, 0);
        for _ in 0..500 {
            let (partial, full) = utility_sample_paired(&dgp, Arm::Treated, &mut rng).unwrap();
            assert!(partial.num_ranked() <= 3);
            // The partial is the top of the full ranking.
            for (item, r) in partial.ranks().iter().enumerate() {
                if let Some(r) = r {
                    assert_eq!(*r, full.ranks()[item]);
                }
            }
        }

        // No threshold: always gets exactly the cap.
        let dgp = UtilityDgp { threshold_mean: None, ..UtilityDgp::six_item_preset(4) };
        let (partial, _) = utility_sample_paired(&dgp, Arm::Control, &mut rng).unwrap();
        assert_eq!(partial.num_ranked(), 4);

        // A very low threshold behaves the same: full-length rankings up
        // to the cap.
        let dgp = UtilityDgp { threshold_mean: Some(-60.0), cap: 6, ..UtilityDgp::six_item_preset(6) };
        let (partial, _) = utility_sample_paired(&dgp, Arm::Control, &mut rng).unwrap();
        assert!(partial.is_full());
    }

    #[test]
    fn utility_boost_raises_observation_share() {
        // tau = 2 on item 0 under treatment: treated voters rank item 0
        // more often than control voters.
        let dgp = UtilityDgp::six_item_preset(3);
        let n = 5000;
        let mut rng = stream_rng(31, 0);
        let mut draws = Vec::with_capacity(2 * n);
        for _ in 0..n {
            draws.push((utility_sample(&dgp, Arm::Treated, &mut rng).unwrap(), Arm::Treated));
        }
        for _ in 0..n {
            draws.push((utility_sample(&dgp, Arm::Control, &mut rng).unwrap(), Arm::Control));
        }
        let ds = dataset_from_draws(6, draws, None);
        let pi = pi_o(&ds, 0, &ArmPair::new("treated", "control")).unwrap();
        assert!(pi.pi_o_hat > 0.0, "pi_o_hat = {}", pi.pi_o_hat);
        assert!(pi.monotonicity_ok);
    }

    #[test]
    fn symmetric_items_are_exchangeable_under_zero_tau() {
        // Items 3 and 4 share the same coefficient; with tau = 0 their mean
        // ranks agree within Monte Carlo noise.
        let dgp = UtilityDgp { tau: 0.0, ..UtilityDgp::six_item_preset(6) };
        let mut rng = stream_rng(41, 0);
        let n = 4000;
        let (mut sum3, mut n3, mut sum4, mut n4) = (0.0, 0, 0.0, 0);
        for _ in 0..n {
            let (partial, _) = utility_sample_paired(&dgp, Arm::Treated, &mut rng).unwrap();
            if let Some(r) = partial.ranks()[3] {
                sum3 += r as f64;
                n3 += 1;
            }
            if let Some(r) = partial.ranks()[4] {
                sum4 += r as f64;
                n4 += 1;
            }
        }
        let (m3, m4) = (sum3 / n3 as f64, sum4 / n4 as f64);
        assert!((m3 - m4).abs() < 0.15, "mean ranks {m3:.3} vs {m4:.3}");
    }

    #[test]
    fn ks_distance_sanity() {
        // A clearly shifted sample has a large distance.
        let shifted: Vec<f64> = (0..500).map(|i| 3.0 + i as f64 / 500.0).collect();
        assert!(ks_distance_standard_normal(&shifted) > 0.9);

        // Standard normal quantiles have a small one.
        let quantiles: Vec<f64> = (1..1000)
            .map(|i| crate::inference::normal_quantile(i as f64 / 1000.0))
            .collect();
        assert!(ks_distance_standard_normal(&quantiles) < 0.01);
    }

    #[test]
    fn null_study_flags_degenerate_outcomes() {
        // One overwhelming weight at J = 2 makes every draw identical.
        let model = PlModel::new(vec![1.0, 1e-300]).unwrap();
        let study = null_normality_study(&model, 20, 120, 5);
        assert!(study.zero_variance_dropped[0] > 0);
        assert!(study.are_ks[0].is_nan());
    }

    #[test]
    fn strata_shares_recovered() {
        let dgp = StrataDgp {
            proportions: [0.4, 0.3, 0.3, 0.0],
            ranking: PlModel::equal(4).unwrap(),
            item: 2,
        };
        let n = 5000;
        let mut rng = stream_rng(61, 0);
        let mut draws = Vec::with_capacity(2 * n);
        for _ in 0..n {
            let (row, _) = strata_sample(&dgp, Arm::Treated, &mut rng).unwrap();
            draws.push((row, Arm::Treated));
        }
        for _ in 0..n {
            let (row, _) = strata_sample(&dgp, Arm::Control, &mut rng).unwrap();
            draws.push((row, Arm::Control));
        }
        let ds = dataset_from_draws(4, draws, None);
        let pi = pi_o(&ds, 2, &ArmPair::new("treated", "control")).unwrap();
        assert!((pi.pi_o_hat - 0.3).abs() < 3.0 * pi.se, "pi_o_hat = {}", pi.pi_o_hat);
    }

    #[test]
    fn pure_order_ranker_population_recovers_share_one() {
        // Everyone ranks the item under treatment and nobody under
        // control, so the share difference is exactly one.
        let dgp = StrataDgp {
            proportions: [0.0, 1.0, 0.0, 0.0],
            ranking: PlModel::equal(3).unwrap(),
            item: 1,
        };
        let mut rng = stream_rng(66, 0);
        let mut draws = Vec::new();
        for _ in 0..200 {
            let (row, stratum) = strata_sample(&dgp, Arm::Treated, &mut rng).unwrap();
            assert_eq!(stratum, Stratum::OrderRanker);
            assert!(row.ranks()[1].is_some());
            draws.push((row, Arm::Treated));
        }
        for _ in 0..200 {
            let (row, _) = strata_sample(&dgp, Arm::Control, &mut rng).unwrap();
            assert!(row.ranks()[1].is_none());
            draws.push((row, Arm::Control));
        }
        let ds = dataset_from_draws(3, draws, None);
        let pi = pi_o(&ds, 1, &ArmPair::new("treated", "control")).unwrap();
        assert_eq!(pi.pi_o_hat, 1.0);
    }

    #[test]
    fn defier_heavy_dgp_violates_monotonicity() {
        let dgp = StrataDgp {
            proportions: [0.3, 0.05, 0.25, 0.4],
            ranking: PlModel::equal(4).unwrap(),
            item: 0,
        };
        let n = 3000;
        let mut rng = stream_rng(71, 0);
        let mut draws = Vec::with_capacity(2 * n);
        for _ in 0..n {
            let (row, _) = strata_sample(&dgp, Arm::Treated, &mut rng).unwrap();
            draws.push((row, Arm::Treated));
        }
        for _ in 0..n {
            let (row, _) = strata_sample(&dgp, Arm::Control, &mut rng).unwrap();
            draws.push((row, Arm::Control));
        }
        let ds = dataset_from_draws(4, draws, None);
        let pi = pi_o(&ds, 0, &ArmPair::new("treated", "control")).unwrap();
        assert!(!pi.monotonicity_ok);
        assert!(pi.pi_o_hat < 0.0);
    }

    #[test]
    fn invalid_strata_proportions_rejected() {
        let dgp = StrataDgp {
            proportions: [0.5, 0.5, 0.5, -0.5],
            ranking: PlModel::equal(3).unwrap(),
            item: 0,
        };
        let mut rng = stream_rng(1, 0);
        assert!(strata_sample(&dgp, Arm::Treated, &mut rng).is_err());
    }
}

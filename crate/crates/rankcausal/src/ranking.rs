//! Ranking primitives: validated full and partial rankings, marginal and
//! pairwise extraction, permutation enumeration, Kendall distance, and
//! ballot-position patterns.
//!
//! Throughout the crate, rank 1 is the highest (most preferred / most
//! responsible / first choice) and rank `J` the lowest. Items are addressed
//! by zero-based index; column labels live in the dataset layer.

use std::fmt;

use thiserror::Error;

/// Maximum number of items for exhaustive permutation enumeration.
pub const MAX_ENUMERATION_ITEMS: usize = 9;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RankingError {
    #[error("duplicate rank at index {index}")]
    DuplicateRank { index: usize },
    #[error("ranks must be consecutive from 1; entry at index {index} leaves a gap")]
    GapInRanks { index: usize },
    #[error("rank at index {index} is out of range")]
    OutOfRange { index: usize },
    #[error("item index {index} out of range for {len} items")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("pairwise comparison requires two distinct items")]
    SameItem,
    #[error("item {index} is unranked")]
    UnrankedItem { index: usize },
    #[error("cutoff {cutoff} out of range 1..={len}")]
    CutoffOutOfRange { cutoff: u32, len: usize },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("too many items: {got} (enumeration capped at {max})")]
    TooLarge { got: usize, max: usize },
    #[error("a ranking needs at least two items, got {got}")]
    TooFewItems { got: usize },
    #[error("order must be a permutation of item indices")]
    InvalidOrder,
}

/// Checks that the present entries are distinct and form `{1, …, t}` for
/// some `t`. Returns `t` (the number of present entries).
fn validate_consecutive(values: &[Option<u32>]) -> Result<usize, RankingError> {
    let mut present: Vec<(usize, u32)> = Vec::with_capacity(values.len());
    for (i, v) in values.iter().enumerate() {
        if let Some(v) = *v {
            if v == 0 {
                return Err(RankingError::OutOfRange { index: i });
            }
            present.push((i, v));
        }
    }
    let mut sorted = present.clone();
    sorted.sort_by_key(|&(_, v)| v);
    for (pos, &(idx, v)) in sorted.iter().enumerate() {
        let expected = pos as u32 + 1;
        if v == expected {
            continue;
        }
        // No duplicates can reach here sorted below expected, so v > expected
        // means either a repeated value or a hole below it.
        if pos > 0 && sorted[pos - 1].1 == v {
            return Err(RankingError::DuplicateRank { index: idx });
        }
        return Err(RankingError::GapInRanks { index: idx });
    }
    Ok(present.len())
}

/// A full ranking of `J ≥ 2` items: `ranks[j]` is the marginal rank of item
/// `j`, and the vector is a permutation of `1..=J`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ranking {
    ranks: Vec<u32>,
}

impl Ranking {
    /// Validates and wraps a rank vector. Rejects duplicates, gaps, and
    /// out-of-range entries, naming the offending index.
    pub fn new(ranks: Vec<u32>) -> Result<Self, RankingError> {
        if ranks.len() < 2 {
            return Err(RankingError::TooFewItems { got: ranks.len() });
        }
        let opts: Vec<Option<u32>> = ranks.iter().map(|&r| Some(r)).collect();
        let t = validate_consecutive(&opts)?;
        debug_assert_eq!(t, ranks.len());
        Ok(Self { ranks })
    }

    /// Number of items `J`.
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }

    /// Marginal rank of item `j` (1 = highest).
    pub fn rank_of(&self, item: usize) -> Result<u32, RankingError> {
        self.ranks
            .get(item)
            .copied()
            .ok_or(RankingError::IndexOutOfRange { index: item, len: self.ranks.len() })
    }

    /// Pairwise indicator: `true` iff item `j` is ranked above item `k`.
    pub fn prefers(&self, j: usize, k: usize) -> Result<bool, RankingError> {
        if j == k {
            return Err(RankingError::SameItem);
        }
        Ok(self.rank_of(j)? < self.rank_of(k)?)
    }

    /// Top-k indicator: `true` iff item `j` holds one of the `k` highest
    /// ranks. `k = 1` is the first-rank indicator.
    pub fn in_top_k(&self, item: usize, k: u32) -> Result<bool, RankingError> {
        if k == 0 || k as usize > self.ranks.len() {
            return Err(RankingError::CutoffOutOfRange { cutoff: k, len: self.ranks.len() });
        }
        Ok(self.rank_of(item)? <= k)
    }
}

/// A top-`t` partial ranking: present entries are distinct and form
/// `{1, …, t}`; missing entries mean the item was not ranked.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialRanking {
    ranks: Vec<Option<u32>>,
}

impl PartialRanking {
    pub fn new(ranks: Vec<Option<u32>>) -> Result<Self, RankingError> {
        if ranks.len() < 2 {
            return Err(RankingError::TooFewItems { got: ranks.len() });
        }
        validate_consecutive(&ranks)?;
        Ok(Self { ranks })
    }

    /// Number of items `J` (ranked or not).
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn ranks(&self) -> &[Option<u32>] {
        &self.ranks
    }

    /// Number of ranked items `t`.
    pub fn num_ranked(&self) -> usize {
        self.ranks.iter().filter(|r| r.is_some()).count()
    }

    pub fn is_full(&self) -> bool {
        self.num_ranked() == self.ranks.len()
    }

    /// Marginal rank of item `j`, or `None` when unranked.
    pub fn rank_of(&self, item: usize) -> Result<Option<u32>, RankingError> {
        self.ranks
            .get(item)
            .copied()
            .ok_or(RankingError::IndexOutOfRange { index: item, len: self.ranks.len() })
    }

    /// Pairwise indicator; errors when either operand is unranked.
    pub fn prefers(&self, j: usize, k: usize) -> Result<bool, RankingError> {
        if j == k {
            return Err(RankingError::SameItem);
        }
        let rj = self.rank_of(j)?.ok_or(RankingError::UnrankedItem { index: j })?;
        let rk = self.rank_of(k)?.ok_or(RankingError::UnrankedItem { index: k })?;
        Ok(rj < rk)
    }

    /// Top-k status. Because partial rankings are consecutive from 1, an
    /// unranked item is determined to be outside the top `k` whenever
    /// `k ≤ t`, and inside whenever `k = J`. Returns `None` when the
    /// indicator cannot be determined from the observed prefix.
    pub fn top_k_status(&self, item: usize, k: u32) -> Result<Option<bool>, RankingError> {
        let j_total = self.ranks.len();
        if k == 0 || k as usize > j_total {
            return Err(RankingError::CutoffOutOfRange { cutoff: k, len: j_total });
        }
        match self.rank_of(item)? {
            Some(r) => Ok(Some(r <= k)),
            None => {
                let t = self.num_ranked() as u32;
                if k <= t {
                    Ok(Some(false))
                } else if k as usize == j_total {
                    Ok(Some(true))
                } else {
                    Ok(None)
                }
            }
        }
    }

    /// Converts to a full `Ranking` when every item is ranked.
    pub fn to_full(&self) -> Option<Ranking> {
        if !self.is_full() {
            return None;
        }
        Ranking::new(self.ranks.iter().map(|r| r.unwrap()).collect()).ok()
    }
}

impl From<Ranking> for PartialRanking {
    fn from(r: Ranking) -> Self {
        PartialRanking { ranks: r.ranks.into_iter().map(Some).collect() }
    }
}

/// Number of discordant item pairs between two full rankings of the same
/// items. Ranges over `0..=J(J−1)/2`; 0 iff identical, the maximum iff one
/// is the reverse of the other.
pub fn kendall_distance(a: &Ranking, b: &Ranking) -> Result<u32, RankingError> {
    if a.len() != b.len() {
        return Err(RankingError::LengthMismatch { left: a.len(), right: b.len() });
    }
    let mut discordant = 0;
    for j in 0..a.len() {
        for k in (j + 1)..a.len() {
            let in_a = a.ranks[j] < a.ranks[k];
            let in_b = b.ranks[j] < b.ranks[k];
            if in_a != in_b {
                discordant += 1;
            }
        }
    }
    Ok(discordant)
}

/// All `J!` full rankings in lexicographic order of their rank vectors.
/// Guarded at `J ≤ 9` (9! = 362 880).
pub fn enumerate_permutations(j: usize) -> Result<Vec<Ranking>, RankingError> {
    if j < 2 {
        return Err(RankingError::TooFewItems { got: j });
    }
    if j > MAX_ENUMERATION_ITEMS {
        return Err(RankingError::TooLarge { got: j, max: MAX_ENUMERATION_ITEMS });
    }
    let mut current: Vec<u32> = (1..=j as u32).collect();
    let mut out = Vec::new();
    loop {
        out.push(Ranking { ranks: current.clone() });
        if !next_permutation(&mut current) {
            break;
        }
    }
    Ok(out)
}

/// Advances `v` to its lexicographic successor; returns `false` at the last
/// permutation.
fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut k = v.len() - 1;
    while v[k] <= v[i - 1] {
        k -= 1;
    }
    v.swap(i - 1, k);
    v[i..].reverse();
    true
}

/// Ranks rearranged by ballot position: `slots[p]` is the rank the voter
/// assigned to whichever candidate was displayed at position `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PositionPattern {
    slots: Vec<Option<u32>>,
}

impl PositionPattern {
    pub fn new(slots: Vec<Option<u32>>) -> Result<Self, RankingError> {
        if slots.len() < 2 {
            return Err(RankingError::TooFewItems { got: slots.len() });
        }
        validate_consecutive(&slots)?;
        Ok(Self { slots })
    }

    pub fn slots(&self) -> &[Option<u32>] {
        &self.slots
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn num_filled(&self) -> usize {
        self.slots.iter().filter(|s| s.is_some()).count()
    }
}

impl fmt::Display for PositionPattern {
    /// Compact label such as `3241` or `21--` (missing slots as `-`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.slots {
            match s {
                Some(r) if *r <= 9 => write!(f, "{r}")?,
                Some(r) => write!(f, "({r})")?,
                None => write!(f, "-")?,
            }
        }
        Ok(())
    }
}

/// Re-expresses a (partial) ranking by ballot position. `order[p]` is the
/// zero-based item displayed at position `p`; it must be a permutation of
/// all item indices.
pub fn position_pattern(
    pr: &PartialRanking,
    order: &[usize],
) -> Result<PositionPattern, RankingError> {
    if order.len() != pr.len() {
        return Err(RankingError::LengthMismatch { left: order.len(), right: pr.len() });
    }
    let mut seen = vec![false; order.len()];
    for &item in order {
        if item >= order.len() || seen[item] {
            return Err(RankingError::InvalidOrder);
        }
        seen[item] = true;
    }
    let slots = order.iter().map(|&item| pr.ranks()[item]).collect();
    PositionPattern::new(slots)
}

/// Number of valid position patterns that rank exactly `t` of `j` items:
/// ordered placements `j!/(j−t)!`.
pub fn pattern_count_exact(j: usize, t: usize) -> u64 {
    if t > j {
        return 0;
    }
    ((j - t + 1)..=j).map(|x| x as u64).product()
}

/// Number of valid position patterns ranking between 1 and `max_len` items.
pub fn pattern_support_size(j: usize, max_len: usize) -> u64 {
    (1..=max_len.min(j)).map(|t| pattern_count_exact(j, t)).sum()
}

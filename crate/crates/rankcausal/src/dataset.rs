//! Experimental ranking datasets: CSV ingestion, validation, slicing by
//! covariate, arm selection, and per-item missingness summaries.
//!
//! The expected CSV layout is one row per respondent:
//!
//! ```text
//! unit_id,treatment,<item1>,...,<itemJ>[,pos_<item1>,...,pos_<itemJ>][,<covariates...>]
//! ```
//!
//! Rank cells hold base-10 integers; a missing token (`---` or an empty
//! cell by default) marks an unranked item. Any other non-integer cell is
//! also treated as missing. Optional `pos_`-prefixed columns carry the
//! ballot position each item was displayed at (a permutation of `1..=J`
//! per row).

use std::collections::BTreeMap;
use std::io;
use std::path::Path;

use thiserror::Error;

use crate::ranking::{PartialRanking, RankingError};

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("parse error at row {row}, column {column}: {message}")]
    ParseError { row: usize, column: String, message: String },
    #[error("invalid rank row for unit {unit}: {source}")]
    InvalidRankRow { unit: String, source: RankingError },
    #[error("missing column {name}")]
    MissingColumn { name: String },
    #[error("unknown covariate {name}")]
    UnknownCovariate { name: String },
    #[error("unknown treatment arm {label}")]
    UnknownArm { label: String },
    #[error("arm {label} has no rows")]
    EmptyArm { label: String },
    #[error("no observed ranks of item {item} in arm {arm}")]
    NoObservations { item: String, arm: String },
    #[error("treatment column has fewer than two distinct arms")]
    TooFewArms,
    #[error("dataset constructed with inconsistent row lengths")]
    ShapeMismatch,
    #[error("unknown item {name}")]
    UnknownItem { name: String },
    #[error("io: {0}")]
    Io(#[from] io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

/// A treated-vs-control contrast between two arm labels. Multi-arm studies
/// are analyzed as a set of pairwise contrasts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArmPair {
    pub treated: String,
    pub control: String,
}

impl ArmPair {
    pub fn new(treated: impl Into<String>, control: impl Into<String>) -> Self {
        Self { treated: treated.into(), control: control.into() }
    }
}

/// Column schema for [`RankDataset::load_csv`].
#[derive(Debug, Clone)]
pub struct CsvSchema {
    pub id_col: String,
    pub treatment_col: String,
    /// Explicit item columns; `None` means every column that is not the id,
    /// the treatment, a `pos_`-prefixed column, or a declared covariate.
    pub item_cols: Option<Vec<String>>,
    /// Columns to read as covariates (always strings). With implicit items,
    /// declare covariates here so they are not swallowed as items.
    pub covariate_cols: Vec<String>,
    /// Cell values that mean "unranked". The empty string is always accepted.
    pub missing_tokens: Vec<String>,
    /// Prefix of ballot-position columns.
    pub positions_prefix: String,
}

impl Default for CsvSchema {
    fn default() -> Self {
        Self {
            id_col: "unit_id".into(),
            treatment_col: "treatment".into(),
            item_cols: None,
            covariate_cols: Vec::new(),
            missing_tokens: vec!["---".into(), String::new()],
            positions_prefix: "pos_".into(),
        }
    }
}

/// Per-arm share of rows that ranked a given item.
#[derive(Debug, Clone, PartialEq)]
pub struct MissingnessSummary {
    pub p_treated: f64,
    pub p_control: f64,
    pub se_treated: f64,
    pub se_control: f64,
    pub n_treated: usize,
    pub n_control: usize,
    pub ranked_treated: usize,
    pub ranked_control: usize,
}

/// An immutable N×J ranking experiment: outcomes, arms, optional ballot
/// positions, and string covariates.
#[derive(Debug, Clone, PartialEq)]
pub struct RankDataset {
    unit_ids: Vec<String>,
    items: Vec<String>,
    rows: Vec<PartialRanking>,
    treatment: Vec<String>,
    positions: Option<Vec<Vec<u32>>>,
    covariates: BTreeMap<String, Vec<String>>,
}

impl RankDataset {
    /// Assembles a dataset from parts, validating shapes and position rows.
    /// Row validity (consecutive top-t ranks) is guaranteed by the
    /// `PartialRanking` type itself.
    pub fn from_parts(
        unit_ids: Vec<String>,
        items: Vec<String>,
        rows: Vec<PartialRanking>,
        treatment: Vec<String>,
        positions: Option<Vec<Vec<u32>>>,
        covariates: BTreeMap<String, Vec<String>>,
    ) -> Result<Self, DatasetError> {
        let n = rows.len();
        let j = items.len();
        if unit_ids.len() != n || treatment.len() != n {
            return Err(DatasetError::ShapeMismatch);
        }
        if rows.iter().any(|r| r.len() != j) {
            return Err(DatasetError::ShapeMismatch);
        }
        if let Some(pos) = &positions {
            if pos.len() != n {
                return Err(DatasetError::ShapeMismatch);
            }
            for (i, p) in pos.iter().enumerate() {
                if p.len() != j || !is_permutation(p) {
                    return Err(DatasetError::ParseError {
                        row: i,
                        column: "positions".into(),
                        message: "position row is not a permutation of 1..=J".into(),
                    });
                }
            }
        }
        for vals in covariates.values() {
            if vals.len() != n {
                return Err(DatasetError::ShapeMismatch);
            }
        }
        Ok(Self { unit_ids, items, rows, treatment, positions, covariates })
    }

    /// Loads and validates a dataset from CSV. Requires at least two
    /// distinct arms.
    pub fn load_csv(path: impl AsRef<Path>, schema: &CsvSchema) -> Result<Self, DatasetError> {
        let mut reader = csv::ReaderBuilder::new().flexible(false).from_path(path.as_ref())?;
        let headers: Vec<String> = reader.headers()?.iter().map(|h| h.to_string()).collect();

        let col_index = |name: &str| -> Result<usize, DatasetError> {
            headers
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| DatasetError::MissingColumn { name: name.to_string() })
        };

        let id_idx = col_index(&schema.id_col)?;
        let arm_idx = col_index(&schema.treatment_col)?;

        let item_cols: Vec<String> = match &schema.item_cols {
            Some(cols) => {
                for c in cols {
                    col_index(c)?;
                }
                cols.clone()
            }
            None => headers
                .iter()
                .filter(|h| {
                    h.as_str() != schema.id_col
                        && h.as_str() != schema.treatment_col
                        && !h.starts_with(&schema.positions_prefix)
                        && !schema.covariate_cols.contains(h)
                })
                .cloned()
                .collect(),
        };
        if item_cols.len() < 2 {
            return Err(DatasetError::MissingColumn { name: "<item columns>".into() });
        }
        let item_idx: Vec<usize> =
            item_cols.iter().map(|c| col_index(c)).collect::<Result<_, _>>()?;

        let pos_cols: Vec<String> =
            item_cols.iter().map(|c| format!("{}{}", schema.positions_prefix, c)).collect();
        let has_positions = pos_cols.iter().all(|c| headers.iter().any(|h| h == c));
        let pos_idx: Option<Vec<usize>> = if has_positions {
            Some(pos_cols.iter().map(|c| col_index(c)).collect::<Result<_, _>>()?)
        } else {
            None
        };

        let covariate_cols: Vec<String> = if schema.covariate_cols.is_empty() {
            headers
                .iter()
                .filter(|h| {
                    h.as_str() != schema.id_col
                        && h.as_str() != schema.treatment_col
                        && !item_cols.contains(h)
                        && !pos_cols.contains(h)
                })
                .cloned()
                .collect()
        } else {
            for c in &schema.covariate_cols {
                col_index(c)?;
            }
            schema.covariate_cols.clone()
        };
        let cov_idx: Vec<usize> =
            covariate_cols.iter().map(|c| col_index(c)).collect::<Result<_, _>>()?;

        let is_missing =
            |cell: &str| cell.is_empty() || schema.missing_tokens.iter().any(|t| t == cell);

        let mut unit_ids = Vec::new();
        let mut rows = Vec::new();
        let mut treatment = Vec::new();
        let mut positions: Vec<Vec<u32>> = Vec::new();
        let mut covariates: BTreeMap<String, Vec<String>> =
            covariate_cols.iter().map(|c| (c.clone(), Vec::new())).collect();

        for (row_no, record) in reader.records().enumerate() {
            let record = record?;
            let unit = record.get(id_idx).unwrap_or("").to_string();
            let arm = record.get(arm_idx).unwrap_or("").to_string();
            if arm.is_empty() {
                return Err(DatasetError::ParseError {
                    row: row_no,
                    column: schema.treatment_col.clone(),
                    message: "empty treatment label".into(),
                });
            }

            let mut ranks: Vec<Option<u32>> = Vec::with_capacity(item_idx.len());
            for (&idx, col) in item_idx.iter().zip(&item_cols) {
                let cell = record.get(idx).unwrap_or("").trim();
                if is_missing(cell) {
                    ranks.push(None);
                    continue;
                }
                match cell.parse::<i64>() {
                    Ok(v) if v > 0 && v <= u32::MAX as i64 => ranks.push(Some(v as u32)),
                    Ok(_) => {
                        return Err(DatasetError::InvalidRankRow {
                            unit,
                            source: RankingError::OutOfRange {
                                index: item_cols.iter().position(|c| c == col).unwrap(),
                            },
                        })
                    }
                    // Non-integer responses ("Don't know", stray text) are
                    // read as unranked.
                    Err(_) => ranks.push(None),
                }
            }
            let row = PartialRanking::new(ranks)
                .map_err(|source| DatasetError::InvalidRankRow { unit: unit.clone(), source })?;

            if let Some(pos_idx) = &pos_idx {
                let mut prow = Vec::with_capacity(pos_idx.len());
                for (&idx, col) in pos_idx.iter().zip(&pos_cols) {
                    let cell = record.get(idx).unwrap_or("").trim();
                    let v: u32 = cell.parse().map_err(|_| DatasetError::ParseError {
                        row: row_no,
                        column: col.clone(),
                        message: format!("expected an integer position, got {cell:?}"),
                    })?;
                    prow.push(v);
                }
                if !is_permutation(&prow) {
                    return Err(DatasetError::ParseError {
                        row: row_no,
                        column: "positions".into(),
                        message: "position row is not a permutation of 1..=J".into(),
                    });
                }
                positions.push(prow);
            }

            for (&idx, col) in cov_idx.iter().zip(&covariate_cols) {
                covariates
                    .get_mut(col)
                    .unwrap()
                    .push(record.get(idx).unwrap_or("").to_string());
            }

            unit_ids.push(unit);
            treatment.push(arm);
            rows.push(row);
        }

        let mut arms: Vec<&String> = treatment.iter().collect();
        arms.sort();
        arms.dedup();
        if arms.len() < 2 {
            return Err(DatasetError::TooFewArms);
        }

        Self::from_parts(
            unit_ids,
            item_cols,
            rows,
            treatment,
            pos_idx.map(|_| positions),
            covariates,
        )
    }

    /// Writes the dataset back out in the canonical column order; ranks and
    /// positions round-trip bit-exact through [`RankDataset::load_csv`].
    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<(), DatasetError> {
        let mut w = csv::Writer::from_path(path.as_ref())?;
        let mut header = vec!["unit_id".to_string(), "treatment".to_string()];
        header.extend(self.items.iter().cloned());
        if self.positions.is_some() {
            header.extend(self.items.iter().map(|c| format!("pos_{c}")));
        }
        let cov_names: Vec<&String> = self.covariates.keys().collect();
        header.extend(cov_names.iter().map(|c| c.to_string()));
        w.write_record(&header)?;

        for i in 0..self.n_units() {
            let mut rec = vec![self.unit_ids[i].clone(), self.treatment[i].clone()];
            for r in self.rows[i].ranks() {
                rec.push(match r {
                    Some(v) => v.to_string(),
                    None => "---".to_string(),
                });
            }
            if let Some(pos) = &self.positions {
                rec.extend(pos[i].iter().map(|p| p.to_string()));
            }
            for c in &cov_names {
                rec.push(self.covariates[*c][i].clone());
            }
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn n_units(&self) -> usize {
        self.rows.len()
    }

    pub fn n_items(&self) -> usize {
        self.items.len()
    }

    pub fn items(&self) -> &[String] {
        &self.items
    }

    pub fn item_index(&self, label: &str) -> Result<usize, DatasetError> {
        self.items
            .iter()
            .position(|i| i == label)
            .ok_or_else(|| DatasetError::UnknownItem { name: label.to_string() })
    }

    pub fn unit_ids(&self) -> &[String] {
        &self.unit_ids
    }

    pub fn row(&self, i: usize) -> &PartialRanking {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[PartialRanking] {
        &self.rows
    }

    pub fn arm_of(&self, i: usize) -> &str {
        &self.treatment[i]
    }

    pub fn arm_labels(&self) -> Vec<String> {
        let mut arms: Vec<String> = self.treatment.to_vec();
        arms.sort();
        arms.dedup();
        arms
    }

    pub fn has_positions(&self) -> bool {
        self.positions.is_some()
    }

    /// Display position of item `j` for unit `i` (1-based), if positions
    /// were recorded.
    pub fn position(&self, i: usize, j: usize) -> Option<u32> {
        self.positions.as_ref().map(|p| p[i][j])
    }

    pub fn position_row(&self, i: usize) -> Option<&[u32]> {
        self.positions.as_ref().map(|p| p[i].as_slice())
    }

    pub fn covariate(&self, name: &str) -> Result<&[String], DatasetError> {
        self.covariates
            .get(name)
            .map(|v| v.as_slice())
            .ok_or_else(|| DatasetError::UnknownCovariate { name: name.to_string() })
    }

    pub fn covariate_names(&self) -> Vec<&String> {
        self.covariates.keys().collect()
    }

    /// Validates an arm pair against the dataset's labels.
    pub fn check_arms(&self, arms: &ArmPair) -> Result<(), DatasetError> {
        for label in [&arms.treated, &arms.control] {
            if !self.treatment.iter().any(|a| a == label) {
                return Err(DatasetError::UnknownArm { label: label.clone() });
            }
        }
        Ok(())
    }

    /// Row indices of the treated and control arms. Either side may come
    /// back empty; operations that need rows report [`DatasetError::EmptyArm`].
    pub fn arm_rows(&self, arms: &ArmPair) -> (Vec<usize>, Vec<usize>) {
        let treated =
            (0..self.n_units()).filter(|&i| self.treatment[i] == arms.treated).collect();
        let control =
            (0..self.n_units()).filter(|&i| self.treatment[i] == arms.control).collect();
        (treated, control)
    }

    /// Row-filters the dataset by a predicate on one covariate. The result
    /// may be empty; callers decide whether that is an error.
    pub fn subset_by(
        &self,
        covariate: &str,
        mut predicate: impl FnMut(&str) -> bool,
    ) -> Result<RankDataset, DatasetError> {
        let values = self.covariate(covariate)?;
        let keep: Vec<usize> =
            (0..self.n_units()).filter(|&i| predicate(&values[i])).collect();
        Ok(self.select_rows(&keep))
    }

    /// Equality filter on one covariate.
    pub fn subset_eq(&self, covariate: &str, value: &str) -> Result<RankDataset, DatasetError> {
        self.subset_by(covariate, |v| v == value)
    }

    /// Copies out the given rows in order.
    pub fn select_rows(&self, keep: &[usize]) -> RankDataset {
        RankDataset {
            unit_ids: keep.iter().map(|&i| self.unit_ids[i].clone()).collect(),
            items: self.items.clone(),
            rows: keep.iter().map(|&i| self.rows[i].clone()).collect(),
            treatment: keep.iter().map(|&i| self.treatment[i].clone()).collect(),
            positions: self
                .positions
                .as_ref()
                .map(|p| keep.iter().map(|&i| p[i].clone()).collect()),
            covariates: self
                .covariates
                .iter()
                .map(|(k, v)| (k.clone(), keep.iter().map(|&i| v[i].clone()).collect()))
                .collect(),
        }
    }

    /// Share of rows ranking item `j` in each arm, with binomial standard
    /// errors. Estimates the per-arm observation propensity P(M=1 | D).
    pub fn missingness(
        &self,
        j: usize,
        arms: &ArmPair,
    ) -> Result<MissingnessSummary, DatasetError> {
        let (treated, control) = self.arm_rows(arms);
        if treated.is_empty() {
            return Err(DatasetError::EmptyArm { label: arms.treated.clone() });
        }
        if control.is_empty() {
            return Err(DatasetError::EmptyArm { label: arms.control.clone() });
        }
        let count = |rows: &[usize]| {
            rows.iter().filter(|&&i| self.rows[i].ranks()[j].is_some()).count()
        };
        let (kt, kc) = (count(&treated), count(&control));
        let (nt, nc) = (treated.len(), control.len());
        let (pt, pc) = (kt as f64 / nt as f64, kc as f64 / nc as f64);
        Ok(MissingnessSummary {
            p_treated: pt,
            p_control: pc,
            se_treated: (pt * (1.0 - pt) / nt as f64).sqrt(),
            se_control: (pc * (1.0 - pc) / nc as f64).sqrt(),
            n_treated: nt,
            n_control: nc,
            ranked_treated: kt,
            ranked_control: kc,
        })
    }

    /// Arithmetic mean of the observed ranks of item `j` within one arm.
    pub fn mean_rank(&self, j: usize, arm: &str) -> Result<(f64, usize), DatasetError> {
        if !self.treatment.iter().any(|a| a == arm) {
            return Err(DatasetError::UnknownArm { label: arm.to_string() });
        }
        let observed: Vec<f64> = (0..self.n_units())
            .filter(|&i| self.treatment[i] == arm)
            .filter_map(|i| self.rows[i].ranks()[j].map(|r| r as f64))
            .collect();
        if observed.is_empty() {
            return Err(DatasetError::NoObservations {
                item: self.items[j].clone(),
                arm: arm.to_string(),
            });
        }
        let n = observed.len();
        Ok((observed.iter().sum::<f64>() / n as f64, n))
    }
}

fn is_permutation(p: &[u32]) -> bool {
    let mut seen = vec![false; p.len()];
    for &v in p {
        if v == 0 || v as usize > p.len() || seen[v as usize - 1] {
            return false;
        }
        seen[v as usize - 1] = true;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write as _;

    fn write_temp(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    const POLICE_STYLE: &str = "\
unit_id,treatment,victim,officers,chief,da,mayor,governor,senators,county
100001,control,7,1,2,6,3,5,4,Orange
100002,pattern,7,1,2,3,5,4,6,Sacramento
100003,reform,1,2,3,4,5,6,7,Sacramento
100004,pattern,2,1,3,4,5,7,6,Los angeles
100005,control,1,2,3,5,4,7,6,Riverside
100006,pattern,1,2,6,5,7,3,4,Riverside
";

    fn police_schema() -> CsvSchema {
        CsvSchema { covariate_cols: vec!["county".into()], ..CsvSchema::default() }
    }

    #[test]
    fn loads_full_rankings_with_covariates() {
        let f = write_temp(POLICE_STYLE);
        let ds = RankDataset::load_csv(f.path(), &police_schema()).unwrap();
        assert_eq!(ds.n_units(), 6);
        assert_eq!(ds.n_items(), 7);
        assert_eq!(ds.arm_of(0), "control");
        assert_eq!(
            ds.row(0).ranks().iter().map(|r| r.unwrap()).collect::<Vec<_>>(),
            vec![7, 1, 2, 6, 3, 5, 4]
        );
        assert_eq!(ds.covariate("county").unwrap()[0], "Orange");
        assert_eq!(ds.arm_labels(), vec!["control", "pattern", "reform"]);
    }

    #[test]
    fn loads_partial_rankings_with_missing_tokens() {
        let csv = "\
unit_id,treatment,scott,hodge,taylor,liu,thao,fuente,villanueva,reinmann,jordan,reid
1,control,2,---,3,---,---,---,---,1,---,---
2,control,1,2,3,---,---,---,---,---,---,---
3,control,1,---,---,---,---,---,---,2,---,---
4,treated,---,1,---,---,---,---,---,---,---,---
5,treated,2,1,---,---,---,---,---,---,---,---
6,treated,2,1,---,---,---,3,---,---,---,---
";
        let f = write_temp(csv);
        let ds = RankDataset::load_csv(f.path(), &CsvSchema::default()).unwrap();
        assert_eq!(ds.n_units(), 6);
        let row = ds.row(0);
        assert_eq!(row.rank_of(0).unwrap(), Some(2));
        assert_eq!(row.rank_of(1).unwrap(), None);
        assert_eq!(row.rank_of(2).unwrap(), Some(3));
        assert_eq!(row.rank_of(7).unwrap(), Some(1));
        assert_eq!(row.num_ranked(), 3);
    }

    #[test]
    fn rejects_duplicate_ranks_in_a_row() {
        let csv = "unit_id,treatment,a,b\nu1,control,1,1\nu2,treated,1,2\n";
        let f = write_temp(csv);
        let err = RankDataset::load_csv(f.path(), &CsvSchema::default()).unwrap_err();
        match err {
            DatasetError::InvalidRankRow { unit, source } => {
                assert_eq!(unit, "u1");
                assert_eq!(source, RankingError::DuplicateRank { index: 1 });
            }
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn non_integer_cells_read_as_missing() {
        let csv = "unit_id,treatment,a,b\nu1,control,1,dk\nu2,treated,1,2\n";
        let f = write_temp(csv);
        let ds = RankDataset::load_csv(f.path(), &CsvSchema::default()).unwrap();
        assert_eq!(ds.row(0).rank_of(1).unwrap(), None);
    }

    #[test]
    fn missing_column_is_reported() {
        let csv = "id,treatment,a,b\nu1,control,1,2\nu2,treated,1,2\n";
        let f = write_temp(csv);
        let err = RankDataset::load_csv(f.path(), &CsvSchema::default()).unwrap_err();
        assert!(matches!(err, DatasetError::MissingColumn { name } if name == "unit_id"));
    }

    #[test]
    fn single_arm_is_rejected() {
        let csv = "unit_id,treatment,a,b\nu1,control,1,2\nu2,control,2,1\n";
        let f = write_temp(csv);
        assert!(matches!(
            RankDataset::load_csv(f.path(), &CsvSchema::default()),
            Err(DatasetError::TooFewArms)
        ));
    }

    #[test]
    fn positions_must_be_permutations() {
        let csv = "\
unit_id,treatment,a,b,pos_a,pos_b
u1,control,1,2,1,1
";
        let f = write_temp(csv);
        assert!(matches!(
            RankDataset::load_csv(f.path(), &CsvSchema::default()),
            Err(DatasetError::ParseError { .. })
        ));
    }

    #[test]
    fn csv_roundtrip_is_bit_exact() {
        let csv = "\
unit_id,treatment,a,b,c,pos_a,pos_b,pos_c,race
u1,control,2,---,1,3,1,2,white
u2,treated,1,2,3,1,2,3,black
u3,treated,---,---,---,2,3,1,asian
";
        let f = write_temp(csv);
        let ds = RankDataset::load_csv(f.path(), &CsvSchema::default()).unwrap();
        let out = tempfile::NamedTempFile::new().unwrap();
        ds.write_csv(out.path()).unwrap();
        let ds2 = RankDataset::load_csv(out.path(), &CsvSchema::default()).unwrap();
        assert_eq!(ds, ds2);
    }

    #[test]
    fn subsets_partition_rows() {
        let f = write_temp(POLICE_STYLE);
        let ds = RankDataset::load_csv(f.path(), &police_schema()).unwrap();
        let sac = ds.subset_eq("county", "Sacramento").unwrap();
        let rest = ds.subset_by("county", |v| v != "Sacramento").unwrap();
        assert_eq!(sac.n_units() + rest.n_units(), ds.n_units());
        assert_eq!(sac.n_units(), 2);

        let all = ds.subset_by("county", |_| true).unwrap();
        assert_eq!(all, ds);

        let none = ds.subset_eq("county", "Nowhere").unwrap();
        assert_eq!(none.n_units(), 0);

        assert!(matches!(
            ds.subset_eq("zodiac", "libra"),
            Err(DatasetError::UnknownCovariate { .. })
        ));
    }

    #[test]
    fn missingness_shares() {
        let csv = "\
unit_id,treatment,a,b
t1,treated,1,2
t2,treated,1,---
t3,treated,1,---
t4,treated,1,2
c1,control,1,---
c2,control,1,2
";
        let f = write_temp(csv);
        let ds = RankDataset::load_csv(f.path(), &CsvSchema::default()).unwrap();
        let arms = ArmPair::new("treated", "control");
        let m = ds.missingness(0, &arms).unwrap();
        assert_eq!((m.p_treated, m.p_control), (1.0, 1.0));
        let m = ds.missingness(1, &arms).unwrap();
        assert_eq!(m.p_treated, 0.5);
        assert_eq!(m.p_control, 0.5);
        assert_eq!((m.n_treated, m.n_control), (4, 2));

        let no_treated = ds.select_rows(&[4, 5]);
        assert!(matches!(
            no_treated.missingness(0, &arms),
            Err(DatasetError::EmptyArm { label }) if label == "treated"
        ));
    }

    #[test]
    fn mean_rank_values() {
        let csv = "\
unit_id,treatment,a,b,c
t1,treated,1,2,3
t2,treated,3,1,2
c1,control,1,2,3
c2,control,2,3,1
c3,control,3,1,2
";
        let f = write_temp(csv);
        let ds = RankDataset::load_csv(f.path(), &CsvSchema::default()).unwrap();
        let (mean, n) = ds.mean_rank(0, "treated").unwrap();
        assert_eq!((mean, n), (2.0, 2));
        // Each rank appears once: mean is (J+1)/2.
        let (mean, n) = ds.mean_rank(0, "control").unwrap();
        assert_eq!((mean, n), (2.0, 3));
        assert!(ds.mean_rank(0, "placebo").is_err());
    }
}

//! Serializable report structures and writers.
//!
//! JSON reports are versioned and fully determined by the resolved
//! configuration (identical config and seed give byte-identical output).
//! CSV output is tidy: one row per estimate or grid cell, with a `kind`
//! column separating row types within a command.

use serde::Serialize;

pub const SCHEMA_VERSION: &str = "1";

/// Sign-convention reminder carried in every report header.
pub const SIGN_NOTE: &str =
    "rank 1 is the highest rank; negative effects mean the treatment moved the item toward the top";

#[derive(Serialize)]
pub struct Report<C: Serialize, R: Serialize> {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub sign_convention: &'static str,
    pub config: C,
    pub results: R,
}

impl<C: Serialize, R: Serialize> Report<C, R> {
    pub fn new(command: &'static str, config: C, results: R) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command,
            sign_convention: SIGN_NOTE,
            config,
            results,
        }
    }
}

#[derive(Serialize)]
pub struct EffectRow {
    pub estimand: String,
    pub item: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub item2: Option<String>,
    pub point: f64,
    pub se: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub n_treated: usize,
    pub n_control: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wald_w: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bh_rejected: Option<bool>,
}

#[derive(Serialize)]
pub struct BhBlock {
    pub mode: String,
    pub alpha: f64,
    pub sorted_labels: Vec<String>,
    pub p_sorted: Vec<f64>,
    pub anchors: Vec<f64>,
    pub rejections: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
}

#[derive(Serialize)]
pub struct EstimateResults {
    pub effects: Vec<EffectRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bh: Option<BhBlock>,
}

#[derive(Serialize)]
pub struct BoundRow {
    pub item: String,
    pub are_lower: f64,
    pub are_upper: f64,
    pub are_clipped: bool,
    pub positive_effect_refuted: bool,
    pub pi_o_hat: f64,
    pub pi_o_se: f64,
    pub monotonicity_ok: bool,
    pub order_ranker_identified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order_ranker_lower: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order_ranker_upper: Option<f64>,
    pub order_ranker_clipped: bool,
    pub p_ranked_treated: f64,
    pub p_ranked_control: f64,
    pub n_treated: usize,
    pub n_control: usize,
}

#[derive(Serialize)]
pub struct BoundResults {
    pub bounds: Vec<BoundRow>,
}

#[derive(Serialize)]
pub struct PositionEffectRow {
    pub candidate: String,
    pub positions: String,
    pub estimator: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub se: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ci_low: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ci_high: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pi_o_hat: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coverage: Option<f64>,
    pub n_treated: usize,
    pub n_control: usize,
}

#[derive(Serialize)]
pub struct PatternRow {
    pub pattern: String,
    pub count: u64,
    pub proportion: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

#[derive(Serialize)]
pub struct UniformityBlock {
    pub chi2: f64,
    pub df: usize,
    pub p: f64,
    pub support_size: usize,
    pub low_count_warning: bool,
}

#[derive(Serialize)]
pub struct BallotResults {
    pub position_effects: Vec<PositionEffectRow>,
    pub patterns: Vec<PatternRow>,
    pub uniformity: UniformityBlock,
}

#[derive(Serialize)]
pub struct KsRow {
    pub statistic: String,
    pub item: String,
    pub ks: f64,
    pub replicates_used: usize,
    pub dropped_zero_variance: usize,
}

#[derive(Serialize)]
pub struct DrawRow {
    pub statistic: String,
    pub item: String,
    pub replicate: usize,
    pub standardized: f64,
}

#[derive(Serialize)]
pub struct NullNormalityResults {
    pub ks: Vec<KsRow>,
    pub draws: Vec<DrawRow>,
}

#[derive(Serialize)]
pub struct WidthRow {
    pub n_total: usize,
    pub cap: usize,
    pub spread: f64,
    pub item: String,
    pub mean_width: f64,
    pub mean_lower: f64,
    pub mean_upper: f64,
    pub replicates: usize,
}

#[derive(Serialize)]
pub struct WidthResults {
    pub cells: Vec<WidthRow>,
}

#[derive(Serialize)]
pub struct StrataRow {
    pub replicate: usize,
    pub pi_o_hat: f64,
    pub se: f64,
    pub monotonicity_ok: bool,
}

#[derive(Serialize)]
pub struct StrataResults {
    pub replicates: Vec<StrataRow>,
    pub mean_pi_o_hat: f64,
    pub share_monotonicity_ok: f64,
}

/// Writes a report as pretty JSON on stdout.
pub fn emit_json<C: Serialize, R: Serialize>(report: &Report<C, R>) {
    println!("{}", serde_json::to_string_pretty(report).expect("report serializes"));
}

/// Writes tidy CSV on stdout: a `# config: …` comment line, then records.
pub fn emit_csv_header<C: Serialize>(command: &str, config: &C) {
    let config = serde_json::to_string(config).expect("config serializes");
    println!("# command: {command}");
    println!("# schema_version: {SCHEMA_VERSION}");
    println!("# sign_convention: {SIGN_NOTE}");
    println!("# config: {config}");
}

pub fn csv_line(fields: &[String]) -> String {
    fields
        .iter()
        .map(|f| {
            if f.contains(',') || f.contains('"') || f.contains('\n') {
                format!("\"{}\"", f.replace('"', "\"\""))
            } else {
                f.clone()
            }
        })
        .collect::<Vec<_>>()
        .join(",")
}

pub fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

//! Command-line front end for rank-outcome causal analysis.
//!
//! Four subcommands: `estimate` (point effects with optional BH
//! adjustment), `bounds` (partial-identification intervals per item),
//! `ballot` (ballot-order effects, pattern distribution, uniformity test),
//! and `simulate` (seeded Monte Carlo studies).
//!
//! Every report echoes its fully resolved configuration; identical
//! configuration and seed give byte-identical JSON. Errors are emitted as
//! JSON on stderr with exit code 1 (usage), 2 (data), or 3 (statistical
//! precondition).

mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use rankcausal::ballot::{self, BallotError};
use rankcausal::bounds::{self, BoundsError};
use rankcausal::dataset::{ArmPair, CsvSchema, DatasetError, RankDataset};
use rankcausal::estimators::{self, EffectEstimate, EstimatorError};
use rankcausal::inference::{self, BhMode as LibBhMode, InferenceError, PTail};
use rankcausal::ranking::pattern_support_size;
use rankcausal::simulate::{self, Arm, PlModel, SimulateError, StrataDgp, UtilityDgp};

use report::*;

#[derive(Parser)]
#[command(
    name = "rankcausal",
    version,
    about = "Treatment-effect estimation for ranking outcomes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Point estimation: rank, pairwise, top-k, and conditional effects
    Estimate(EstimateArgs),
    /// Partial-identification bounds for partially ranked outcomes
    Bounds(BoundsArgs),
    /// Ballot-order effects and pattern-ranking diagnostics
    Ballot(BallotArgs),
    /// Seeded Monte Carlo studies
    Simulate(SimulateArgs),
}

#[derive(Args, Clone)]
struct InputArgs {
    /// Input CSV path
    #[arg(long)]
    input: PathBuf,
    /// Column schema, comma-separated key=value pairs:
    /// id=unit_id,arm=treatment,items=a+b+c,covariates=x+y,missing=---
    #[arg(long, default_value = "")]
    schema: String,
    /// Prefix of ballot-position columns
    #[arg(long, default_value = "pos_")]
    positions_prefix: String,
    /// Keep only rows where a covariate equals a value: covariate=value
    #[arg(long)]
    filter: Option<String>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum EstimandArg {
    Are,
    Ape,
    Topk,
    FirstRank,
    CondAre,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum BhModeArg {
    PaperCumulative,
    ConstantHarmonic,
    PlainBh,
}

impl BhModeArg {
    fn to_lib(self) -> LibBhMode {
        match self {
            BhModeArg::PaperCumulative => LibBhMode::PaperCumulative,
            BhModeArg::ConstantHarmonic => LibBhMode::ConstantHarmonic,
            BhModeArg::PlainBh => LibBhMode::PlainBh,
        }
    }
}

#[derive(Args)]
struct EstimateArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Treated and control arm labels: T,C
    #[arg(long)]
    arms: String,
    #[arg(long, value_enum)]
    estimand: EstimandArg,
    /// Item labels joined by '+', or "all"
    #[arg(long, default_value = "all")]
    items: String,
    /// Item pairs for pairwise effects: j:k[,j2:k2...]
    #[arg(long)]
    pairs: Option<String>,
    /// Cutoff for top-k effects
    #[arg(long)]
    k: Option<u32>,
    /// Row condition for conditional effects: <item><op><rank>, e.g. "officers>3"
    #[arg(long)]
    condition: Option<String>,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    /// Adjust the emitted family for multiple testing
    #[arg(long)]
    bh: bool,
    #[arg(long, value_enum, default_value = "paper-cumulative")]
    bh_mode: BhModeArg,
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
}

#[derive(Args)]
struct BoundsArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Treated and control arm labels: T,C
    #[arg(long)]
    arms: String,
    /// Item labels joined by '+', or "all"
    #[arg(long, default_value = "all")]
    items: String,
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
}

#[derive(Args)]
struct BallotArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Candidate labels joined by '+', or "all"
    #[arg(long, default_value = "all")]
    candidates: String,
    /// Also compute the stratified estimator (full rankings only)
    #[arg(long)]
    stratified: bool,
    /// Ranking cap of the design; sets the uniformity-test support to all
    /// patterns of length 1..=cap. Default: inferred from the data.
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum StudyArg {
    NullNormality,
    BoundWidth,
    Strata,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long, value_enum)]
    study: StudyArg,
    /// Base seed; falls back to RANKCAUSAL_SEED, then 0
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 200)]
    replicates: usize,
    #[arg(long, default_value_t = 500)]
    n_per_arm: usize,
    /// Plackett-Luce weights, comma separated (null-normality, strata)
    #[arg(long, default_value = "0.5,0.3,0.2,0.1")]
    weights: String,
    /// Boost added to the designated items' utilities (bound-width)
    #[arg(long, default_value_t = 2.0)]
    tau: f64,
    /// Grid of total sample sizes (bound-width)
    #[arg(long, default_value = "250,2500")]
    grid_n: String,
    /// Grid of ranking caps (bound-width)
    #[arg(long, default_value = "3")]
    grid_cap: String,
    /// Grid of coefficient spreads (bound-width)
    #[arg(long, default_value = "1.0")]
    grid_spread: String,
    /// Stratum shares always,order,never,defier (strata)
    #[arg(long, default_value = "0.4,0.3,0.3,0.0")]
    pi: String,
    /// Target item index (strata)
    #[arg(long, default_value_t = 0)]
    item: usize,
    /// Emit per-draw rows in addition to summaries
    #[arg(long)]
    draws: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
}

enum CliError {
    Usage(String),
    Data(String),
    Precondition(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Precondition(_) => 3,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Data(_) => "data",
            CliError::Precondition(_) => "precondition",
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::Precondition(m) => m,
        }
    }
}

impl From<DatasetError> for CliError {
    fn from(e: DatasetError) -> Self {
        match e {
            DatasetError::EmptyArm { .. } | DatasetError::NoObservations { .. } => {
                CliError::Precondition(e.to_string())
            }
            other => CliError::Data(other.to_string()),
        }
    }
}

impl From<EstimatorError> for CliError {
    fn from(e: EstimatorError) -> Self {
        match e {
            EstimatorError::Dataset(d) => d.into(),
            EstimatorError::SameItem | EstimatorError::TooFewReplicates { .. } => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Precondition(other.to_string()),
        }
    }
}

impl From<BoundsError> for CliError {
    fn from(e: BoundsError) -> Self {
        match e {
            BoundsError::Dataset(d) => d.into(),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

impl From<BallotError> for CliError {
    fn from(e: BallotError) -> Self {
        match e {
            BallotError::Dataset(d) => d.into(),
            BallotError::MissingPositions | BallotError::Ranking(_) => {
                CliError::Data(e.to_string())
            }
            BallotError::BadTargetPositions { .. } | BallotError::SupportTooSmall { .. } => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Precondition(other.to_string()),
        }
    }
}

impl From<InferenceError> for CliError {
    fn from(e: InferenceError) -> Self {
        match e {
            InferenceError::InvalidAlpha(_) => CliError::Usage(e.to_string()),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

impl From<SimulateError> for CliError {
    fn from(e: SimulateError) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Estimate(args) => cmd_estimate(args),
        Command::Bounds(args) => cmd_bounds(args),
        Command::Ballot(args) => cmd_ballot(args),
        Command::Simulate(args) => cmd_simulate(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!(
                "{}",
                serde_json::json!({"error": {"kind": e.kind(), "message": e.message()}})
            );
            ExitCode::from(e.exit_code())
        }
    }
}

fn parse_schema(args: &InputArgs) -> Result<CsvSchema, CliError> {
    let mut schema =
        CsvSchema { positions_prefix: args.positions_prefix.clone(), ..CsvSchema::default() };
    if args.schema.is_empty() {
        return Ok(schema);
    }
    for pair in args.schema.split(',') {
        let (key, value) = pair
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("bad schema entry {pair:?}")))?;
        match key {
            "id" => schema.id_col = value.to_string(),
            "arm" | "treatment" => schema.treatment_col = value.to_string(),
            "items" => {
                schema.item_cols = Some(value.split('+').map(str::to_string).collect())
            }
            "covariates" => {
                schema.covariate_cols = value.split('+').map(str::to_string).collect()
            }
            "missing" => schema.missing_tokens = vec![value.to_string(), String::new()],
            other => return Err(CliError::Usage(format!("unknown schema key {other:?}"))),
        }
    }
    Ok(schema)
}

fn load_dataset(args: &InputArgs) -> Result<RankDataset, CliError> {
    let schema = parse_schema(args)?;
    let ds = RankDataset::load_csv(&args.input, &schema)?;
    match &args.filter {
        None => Ok(ds),
        Some(f) => {
            let (cov, value) = f
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("bad filter {f:?}")))?;
            let sub = ds.subset_eq(cov, value)?;
            if sub.n_units() == 0 {
                eprintln!("warning: filter {f:?} keeps no rows");
            }
            Ok(sub)
        }
    }
}

fn parse_arms(ds: &RankDataset, arms: &str) -> Result<ArmPair, CliError> {
    let (t, c) = arms
        .split_once(',')
        .ok_or_else(|| CliError::Usage(format!("bad arm pair {arms:?}; expected T,C")))?;
    if t == c {
        return Err(CliError::Usage("treated and control arms must differ".into()));
    }
    let pair = ArmPair::new(t.trim(), c.trim());
    ds.check_arms(&pair)?;
    Ok(pair)
}

fn resolve_items(ds: &RankDataset, items: &str) -> Result<Vec<usize>, CliError> {
    if items == "all" {
        Ok((0..ds.n_items()).collect())
    } else {
        items
            .split('+')
            .map(|label| ds.item_index(label.trim()).map_err(CliError::from))
            .collect()
    }
}

fn resolve_seed(seed: Option<u64>) -> u64 {
    seed.or_else(|| std::env::var("RANKCAUSAL_SEED").ok().and_then(|s| s.parse().ok()))
        .unwrap_or(0)
}

#[derive(Serialize)]
struct EstimateConfig {
    input: String,
    filter: Option<String>,
    arms: (String, String),
    estimand: String,
    items: Vec<String>,
    pairs: Vec<(String, String)>,
    k: Option<u32>,
    condition: Option<String>,
    alpha: f64,
    bh: bool,
    bh_mode: String,
}

struct Condition {
    item: usize,
    op: String,
    value: u32,
}

fn parse_condition(ds: &RankDataset, text: &str) -> Result<Condition, CliError> {
    for op in ["<=", ">=", "!=", "<", ">", "="] {
        if let Some((label, value)) = text.split_once(op) {
            let item = ds.item_index(label.trim())?;
            let value: u32 = value
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad condition rank in {text:?}")))?;
            return Ok(Condition { item, op: op.to_string(), value });
        }
    }
    Err(CliError::Usage(format!(
        "bad condition {text:?}; expected <item><op><rank> with op in <,>,<=,>=,=,!="
    )))
}

fn cmd_estimate(args: EstimateArgs) -> Result<(), CliError> {
    let ds = load_dataset(&args.input)?;
    let arms = parse_arms(&ds, &args.arms)?;
    let items = resolve_items(&ds, &args.items)?;
    if !(args.alpha > 0.0 && args.alpha < 1.0) {
        return Err(CliError::Usage(format!("alpha must be in (0, 1), got {}", args.alpha)));
    }

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut estimates: Vec<EffectEstimate> = Vec::new();
    match args.estimand {
        EstimandArg::Are => {
            for &j in &items {
                estimates.push(estimators::are(&ds, j, &arms, args.alpha)?);
            }
        }
        EstimandArg::Ape => {
            let spec = args.pairs.as_deref().ok_or_else(|| {
                CliError::Usage("--pairs j:k[,j2:k2...] required for pairwise effects".into())
            })?;
            for chunk in spec.split(',') {
                let (a, b) = chunk.split_once(':').ok_or_else(|| {
                    CliError::Usage(format!("bad pair {chunk:?}; expected j:k"))
                })?;
                let j = ds.item_index(a.trim())?;
                let k = ds.item_index(b.trim())?;
                pairs.push((j, k));
                estimates.push(estimators::ape(&ds, j, k, &arms, args.alpha)?);
            }
        }
        EstimandArg::Topk | EstimandArg::FirstRank => {
            let k = match args.estimand {
                EstimandArg::FirstRank => 1,
                _ => args
                    .k
                    .ok_or_else(|| CliError::Usage("--k required for top-k effects".into()))?,
            };
            for &j in &items {
                estimates.push(estimators::topk_effect(&ds, j, k, &arms, args.alpha)?);
            }
        }
        EstimandArg::CondAre => {
            let text = args.condition.as_deref().ok_or_else(|| {
                CliError::Usage("--condition required for conditional effects".into())
            })?;
            let cond = parse_condition(&ds, text)?;
            for i in 0..ds.n_units() {
                if ds.row(i).ranks()[cond.item].is_none() {
                    return Err(CliError::Precondition(format!(
                        "condition item {} is unranked for unit {}; conditions need fully \
                         observed items",
                        ds.items()[cond.item],
                        ds.unit_ids()[i]
                    )));
                }
            }
            for &j in &items {
                let est = estimators::conditional_are(
                    &ds,
                    j,
                    &arms,
                    |row| {
                        let r = row.ranks()[cond.item].expect("checked above");
                        match cond.op.as_str() {
                            "<" => r < cond.value,
                            ">" => r > cond.value,
                            "<=" => r <= cond.value,
                            ">=" => r >= cond.value,
                            "=" => r == cond.value,
                            _ => r != cond.value,
                        }
                    },
                    args.alpha,
                )?;
                estimates.push(est);
            }
        }
    }

    let label_of = |est: &EffectEstimate| -> String {
        match est.items.as_slice() {
            [j, k] => format!("{}:{}", ds.items()[*j], ds.items()[*k]),
            [j] => ds.items()[*j].clone(),
            _ => unreachable!("estimates carry one or two items"),
        }
    };

    let mut rows: Vec<EffectRow> = estimates
        .iter()
        .map(|est| EffectRow {
            estimand: est.estimand.label(),
            item: ds.items()[est.items[0]].clone(),
            item2: est.items.get(1).map(|&k| ds.items()[k].clone()),
            point: est.point,
            se: est.se,
            ci_low: est.ci_low,
            ci_high: est.ci_high,
            n_treated: est.n_treated,
            n_control: est.n_control,
            warnings: est.warnings.clone(),
            wald_w: None,
            p_value: None,
            bh_rejected: None,
        })
        .collect();

    let bh_block = if args.bh {
        let mut labeled = Vec::with_capacity(estimates.len());
        for (est, row) in estimates.iter().zip(rows.iter_mut()) {
            let test = inference::wald_p_estimate(est, 0.0, PTail::UpperAbs)?;
            row.wald_w = Some(test.w);
            row.p_value = Some(test.p);
            labeled.push((label_of(est), test.p));
        }
        let res = inference::bh_adjust(&labeled, args.alpha, args.bh_mode.to_lib())?;
        for (row, &rej) in rows.iter_mut().zip(&res.rejected) {
            row.bh_rejected = Some(rej);
        }
        Some(BhBlock {
            mode: res.mode.label().to_string(),
            alpha: res.alpha,
            sorted_labels: res.sorted_labels,
            p_sorted: res.p_sorted,
            anchors: res.anchors,
            rejections: res.r,
            threshold: res.threshold,
        })
    } else {
        None
    };

    let config = EstimateConfig {
        input: args.input.input.display().to_string(),
        filter: args.input.filter.clone(),
        arms: (arms.treated.clone(), arms.control.clone()),
        estimand: match args.estimand {
            EstimandArg::Are => "are",
            EstimandArg::Ape => "ape",
            EstimandArg::Topk => "topk",
            EstimandArg::FirstRank => "first-rank",
            EstimandArg::CondAre => "cond-are",
        }
        .to_string(),
        items: items.iter().map(|&j| ds.items()[j].clone()).collect(),
        pairs: pairs.iter().map(|&(j, k)| (ds.items()[j].clone(), ds.items()[k].clone())).collect(),
        k: args.k,
        condition: args.condition.clone(),
        alpha: args.alpha,
        bh: args.bh,
        bh_mode: args.bh_mode.to_lib().label().to_string(),
    };

    match args.format {
        OutputFormat::Json => emit_json(&Report::new(
            "estimate",
            config,
            EstimateResults { effects: rows, bh: bh_block },
        )),
        OutputFormat::Csv => {
            emit_csv_header("estimate", &config);
            println!(
                "kind,estimand,item,item2,point,se,ci_low,ci_high,n_treated,n_control,wald_w,p_value,bh_rejected"
            );
            for r in &rows {
                println!(
                    "{}",
                    csv_line(&[
                        "effect".into(),
                        r.estimand.clone(),
                        r.item.clone(),
                        r.item2.clone().unwrap_or_default(),
                        r.point.to_string(),
                        r.se.to_string(),
                        r.ci_low.to_string(),
                        r.ci_high.to_string(),
                        r.n_treated.to_string(),
                        r.n_control.to_string(),
                        fmt_opt(r.wald_w),
                        fmt_opt(r.p_value),
                        r.bh_rejected.map(|b| b.to_string()).unwrap_or_default(),
                    ])
                );
            }
            if let Some(bh) = bh_block {
                for i in 0..bh.p_sorted.len() {
                    println!(
                        "{}",
                        csv_line(&[
                            "bh-anchor".into(),
                            String::new(),
                            bh.sorted_labels[i].clone(),
                            String::new(),
                            bh.p_sorted[i].to_string(),
                            bh.anchors[i].to_string(),
                            String::new(),
                            String::new(),
                            String::new(),
                            String::new(),
                            String::new(),
                            String::new(),
                            String::new(),
                        ])
                    );
                }
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct BoundsConfig {
    input: String,
    filter: Option<String>,
    arms: (String, String),
    items: Vec<String>,
}

fn cmd_bounds(args: BoundsArgs) -> Result<(), CliError> {
    let ds = load_dataset(&args.input)?;
    let arms = parse_arms(&ds, &args.arms)?;
    let items = resolve_items(&ds, &args.items)?;

    let mut rows = Vec::with_capacity(items.len());
    for &j in &items {
        let are_bound = bounds::bounds_partial_are(&ds, j, &arms)?;
        let pi = bounds::pi_o(&ds, j, &arms)?;
        let or_bound = bounds::bounds_order_ranker(&ds, j, &arms)?;
        let m = ds.missingness(j, &arms)?;
        rows.push(BoundRow {
            item: ds.items()[j].clone(),
            are_lower: are_bound.lower.expect("ARE bound always identified"),
            are_upper: are_bound.upper.expect("ARE bound always identified"),
            are_clipped: are_bound.clipped,
            positive_effect_refuted: are_bound.positive_effect_refuted,
            pi_o_hat: pi.pi_o_hat,
            pi_o_se: pi.se,
            monotonicity_ok: pi.monotonicity_ok,
            order_ranker_identified: or_bound.identified,
            order_ranker_lower: or_bound.lower,
            order_ranker_upper: or_bound.upper,
            order_ranker_clipped: or_bound.clipped,
            p_ranked_treated: m.p_treated,
            p_ranked_control: m.p_control,
            n_treated: m.n_treated,
            n_control: m.n_control,
        });
    }

    let config = BoundsConfig {
        input: args.input.input.display().to_string(),
        filter: args.input.filter.clone(),
        arms: (arms.treated.clone(), arms.control.clone()),
        items: items.iter().map(|&j| ds.items()[j].clone()).collect(),
    };

    match args.format {
        OutputFormat::Json => {
            emit_json(&Report::new("bounds", config, BoundResults { bounds: rows }))
        }
        OutputFormat::Csv => {
            emit_csv_header("bounds", &config);
            println!(
                "item,are_lower,are_upper,are_clipped,positive_effect_refuted,pi_o_hat,pi_o_se,monotonicity_ok,order_ranker_identified,order_ranker_lower,order_ranker_upper,p_ranked_treated,p_ranked_control,n_treated,n_control"
            );
            for r in &rows {
                println!(
                    "{}",
                    csv_line(&[
                        r.item.clone(),
                        r.are_lower.to_string(),
                        r.are_upper.to_string(),
                        r.are_clipped.to_string(),
                        r.positive_effect_refuted.to_string(),
                        r.pi_o_hat.to_string(),
                        r.pi_o_se.to_string(),
                        r.monotonicity_ok.to_string(),
                        r.order_ranker_identified.to_string(),
                        fmt_opt(r.order_ranker_lower),
                        fmt_opt(r.order_ranker_upper),
                        r.p_ranked_treated.to_string(),
                        r.p_ranked_control.to_string(),
                        r.n_treated.to_string(),
                        r.n_control.to_string(),
                    ])
                );
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct BallotConfig {
    input: String,
    filter: Option<String>,
    candidates: Vec<String>,
    stratified: bool,
    cap: Option<usize>,
    support_size: usize,
    alpha: f64,
    fully_ranked: bool,
}

fn cmd_ballot(args: BallotArgs) -> Result<(), CliError> {
    let ds = load_dataset(&args.input)?;
    if !ds.has_positions() {
        return Err(BallotError::MissingPositions.into());
    }
    let candidates = resolve_items(&ds, &args.candidates)?;
    let j_total = ds.n_items();
    let fully_ranked = ds.rows().iter().all(|r| r.is_full());

    let mut effects: Vec<PositionEffectRow> = Vec::new();
    let mut targets: Vec<Vec<u32>> = (1..=j_total as u32).map(|p| vec![p]).collect();
    targets.extend((1..j_total as u32).map(|p| vec![p, p + 1]));

    for &cand in &candidates {
        for t1 in &targets {
            let positions = t1.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("+");
            if fully_ranked {
                let eff = ballot::position_effect_pooled(&ds, cand, t1, args.alpha)?;
                effects.push(PositionEffectRow {
                    candidate: ds.items()[cand].clone(),
                    positions: positions.clone(),
                    estimator: "pooled".into(),
                    point: Some(eff.estimate.point),
                    se: Some(eff.estimate.se),
                    ci_low: Some(eff.estimate.ci_low),
                    ci_high: Some(eff.estimate.ci_high),
                    lower: None,
                    upper: None,
                    pi_o_hat: None,
                    coverage: None,
                    n_treated: eff.estimate.n_treated,
                    n_control: eff.estimate.n_control,
                });
                if args.stratified {
                    let eff = ballot::position_effect_stratified(&ds, cand, t1, args.alpha)?;
                    effects.push(PositionEffectRow {
                        candidate: ds.items()[cand].clone(),
                        positions: positions.clone(),
                        estimator: "stratified".into(),
                        point: Some(eff.estimate.point),
                        se: Some(eff.estimate.se),
                        ci_low: Some(eff.estimate.ci_low),
                        ci_high: Some(eff.estimate.ci_high),
                        lower: None,
                        upper: None,
                        pi_o_hat: None,
                        coverage: eff.coverage,
                        n_treated: eff.estimate.n_treated,
                        n_control: eff.estimate.n_control,
                    });
                }
            } else {
                let b = ballot::ballot_bounds(&ds, cand, t1)?;
                effects.push(PositionEffectRow {
                    candidate: ds.items()[cand].clone(),
                    positions: positions.clone(),
                    estimator: "imputation-bound".into(),
                    point: None,
                    se: None,
                    ci_low: None,
                    ci_high: None,
                    lower: b.are_bound.lower,
                    upper: b.are_bound.upper,
                    pi_o_hat: Some(b.pi_o.pi_o_hat),
                    coverage: None,
                    n_treated: b.missingness.n_treated,
                    n_control: b.missingness.n_control,
                });
            }
        }
    }

    let pc = ballot::pattern_distribution(&ds, args.alpha)?;
    let support_size = match args.cap {
        Some(cap) => pattern_support_size(j_total, cap) as usize,
        None => {
            let max_len = pc.support.iter().map(|p| p.num_filled()).max().unwrap_or(0);
            if pc.support.iter().all(|p| p.num_filled() == j_total) {
                factorial(j_total)
            } else {
                pattern_support_size(j_total, max_len) as usize
            }
        }
    };
    let uni = ballot::uniformity_chisq(&pc, support_size)?;

    let patterns: Vec<PatternRow> = (0..pc.support.len())
        .map(|i| PatternRow {
            pattern: pc.support[i].to_string(),
            count: pc.counts[i],
            proportion: pc.proportions[i],
            ci_low: pc.cis[i].0,
            ci_high: pc.cis[i].1,
        })
        .collect();

    let config = BallotConfig {
        input: args.input.input.display().to_string(),
        filter: args.input.filter.clone(),
        candidates: candidates.iter().map(|&j| ds.items()[j].clone()).collect(),
        stratified: args.stratified,
        cap: args.cap,
        support_size,
        alpha: args.alpha,
        fully_ranked,
    };
    let results = BallotResults {
        position_effects: effects,
        patterns,
        uniformity: UniformityBlock {
            chi2: uni.chi2,
            df: uni.df,
            p: uni.p,
            support_size,
            low_count_warning: uni.low_count_warning,
        },
    };

    match args.format {
        OutputFormat::Json => emit_json(&Report::new("ballot", config, results)),
        OutputFormat::Csv => {
            emit_csv_header("ballot", &config);
            println!(
                "kind,candidate,positions,estimator,point,se,ci_low,ci_high,lower,upper,pi_o_hat,n_treated,n_control,pattern,count,proportion,chi2,df,p"
            );
            for e in &results.position_effects {
                println!(
                    "{}",
                    csv_line(&[
                        "position-effect".into(),
                        e.candidate.clone(),
                        e.positions.clone(),
                        e.estimator.clone(),
                        fmt_opt(e.point),
                        fmt_opt(e.se),
                        fmt_opt(e.ci_low),
                        fmt_opt(e.ci_high),
                        fmt_opt(e.lower),
                        fmt_opt(e.upper),
                        fmt_opt(e.pi_o_hat),
                        e.n_treated.to_string(),
                        e.n_control.to_string(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                    ])
                );
            }
            for p in &results.patterns {
                println!(
                    "{}",
                    csv_line(&[
                        "pattern".into(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        p.ci_low.to_string(),
                        p.ci_high.to_string(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        p.pattern.clone(),
                        p.count.to_string(),
                        p.proportion.to_string(),
                        String::new(),
                        String::new(),
                        String::new(),
                    ])
                );
            }
            println!(
                "{}",
                csv_line(&[
                    "uniformity".into(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    results.uniformity.chi2.to_string(),
                    results.uniformity.df.to_string(),
                    results.uniformity.p.to_string(),
                ])
            );
        }
    }
    Ok(())
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[derive(Serialize)]
struct SimulateConfig {
    study: String,
    seed: u64,
    replicates: usize,
    n_per_arm: usize,
    weights: Vec<f64>,
    tau: f64,
    grid_n: Vec<usize>,
    grid_cap: Vec<usize>,
    grid_spread: Vec<f64>,
    pi: Vec<f64>,
    item: usize,
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, CliError> {
    s.split(',')
        .map(|x| {
            x.trim().parse::<T>().map_err(|_| CliError::Usage(format!("bad {what} entry {x:?}")))
        })
        .collect()
}

fn cmd_simulate(args: SimulateArgs) -> Result<(), CliError> {
    let seed = resolve_seed(args.seed);
    let weights: Vec<f64> = parse_list(&args.weights, "weights")?;
    let grid_n: Vec<usize> = parse_list(&args.grid_n, "grid-n")?;
    let grid_cap: Vec<usize> = parse_list(&args.grid_cap, "grid-cap")?;
    let grid_spread: Vec<f64> = parse_list(&args.grid_spread, "grid-spread")?;
    let pi: Vec<f64> = parse_list(&args.pi, "pi")?;

    let config = SimulateConfig {
        study: match args.study {
            StudyArg::NullNormality => "null-normality",
            StudyArg::BoundWidth => "bound-width",
            StudyArg::Strata => "strata",
        }
        .to_string(),
        seed,
        replicates: args.replicates,
        n_per_arm: args.n_per_arm,
        weights: weights.clone(),
        tau: args.tau,
        grid_n: grid_n.clone(),
        grid_cap: grid_cap.clone(),
        grid_spread: grid_spread.clone(),
        pi: pi.clone(),
        item: args.item,
    };

    match args.study {
        StudyArg::NullNormality => {
            let model = PlModel::new(weights)?;
            let study =
                simulate::null_normality_study(&model, args.n_per_arm, args.replicates, seed);
            let mut ks = Vec::new();
            for (item, &d) in study.are_ks.iter().enumerate() {
                ks.push(KsRow {
                    statistic: "are".into(),
                    item: format!("item{item}"),
                    ks: d,
                    replicates_used: study.standardized_are[item].len(),
                    dropped_zero_variance: study.zero_variance_dropped[item],
                });
            }
            for (p, &d) in study.ape_ks.iter().enumerate() {
                let (a, b) = study.ape_pairs[p];
                ks.push(KsRow {
                    statistic: "ape".into(),
                    item: format!("item{a}:item{b}"),
                    ks: d,
                    replicates_used: study.replicates,
                    dropped_zero_variance: 0,
                });
            }
            let draws = if args.draws {
                let mut out = Vec::new();
                for (item, series) in study.standardized_are.iter().enumerate() {
                    for (rep, &v) in series.iter().enumerate() {
                        out.push(DrawRow {
                            statistic: "are".into(),
                            item: format!("item{item}"),
                            replicate: rep,
                            standardized: v,
                        });
                    }
                }
                out
            } else {
                Vec::new()
            };
            let results = NullNormalityResults { ks, draws };
            match args.format {
                OutputFormat::Json => emit_json(&Report::new("simulate", config, results)),
                OutputFormat::Csv => {
                    emit_csv_header("simulate", &config);
                    println!(
                        "kind,statistic,item,ks,replicates_used,dropped,replicate,standardized"
                    );
                    for k in &results.ks {
                        println!(
                            "{}",
                            csv_line(&[
                                "ks".into(),
                                k.statistic.clone(),
                                k.item.clone(),
                                k.ks.to_string(),
                                k.replicates_used.to_string(),
                                k.dropped_zero_variance.to_string(),
                                String::new(),
                                String::new(),
                            ])
                        );
                    }
                    for d in &results.draws {
                        println!(
                            "{}",
                            csv_line(&[
                                "draw".into(),
                                d.statistic.clone(),
                                d.item.clone(),
                                String::new(),
                                String::new(),
                                String::new(),
                                d.replicate.to_string(),
                                d.standardized.to_string(),
                            ])
                        );
                    }
                }
            }
        }
        StudyArg::BoundWidth => {
            let base = UtilityDgp { tau: args.tau, ..UtilityDgp::six_item_preset(3) };
            let cells = simulate::bound_width_study(
                &base,
                &grid_n,
                &grid_cap,
                &grid_spread,
                args.replicates,
                seed,
            )?;
            let rows: Vec<WidthRow> = cells
                .iter()
                .map(|c| WidthRow {
                    n_total: c.n_total,
                    cap: c.cap,
                    spread: c.spread,
                    item: format!("item{}", c.item),
                    mean_width: c.mean_width,
                    mean_lower: c.mean_lower,
                    mean_upper: c.mean_upper,
                    replicates: c.replicates,
                })
                .collect();
            match args.format {
                OutputFormat::Json => {
                    emit_json(&Report::new("simulate", config, WidthResults { cells: rows }))
                }
                OutputFormat::Csv => {
                    emit_csv_header("simulate", &config);
                    println!("n_total,cap,spread,item,mean_width,mean_lower,mean_upper,replicates");
                    for r in &rows {
                        println!(
                            "{}",
                            csv_line(&[
                                r.n_total.to_string(),
                                r.cap.to_string(),
                                r.spread.to_string(),
                                r.item.clone(),
                                r.mean_width.to_string(),
                                r.mean_lower.to_string(),
                                r.mean_upper.to_string(),
                                r.replicates.to_string(),
                            ])
                        );
                    }
                }
            }
        }
        StudyArg::Strata => {
            if pi.len() != 4 {
                return Err(CliError::Usage(
                    "--pi needs four shares: always,order,never,defier".into(),
                ));
            }
            let dgp = StrataDgp {
                proportions: [pi[0], pi[1], pi[2], pi[3]],
                ranking: PlModel::new(weights)?,
                item: args.item,
            };
            let mut rows = Vec::with_capacity(args.replicates);
            let mut sum = 0.0;
            let mut ok_count = 0usize;
            for rep in 0..args.replicates {
                let mut rng = simulate::stream_rng(seed, rep as u64);
                let mut draws = Vec::with_capacity(2 * args.n_per_arm);
                for _ in 0..args.n_per_arm {
                    let (row, _) = simulate::strata_sample(&dgp, Arm::Treated, &mut rng)?;
                    draws.push((row, Arm::Treated));
                }
                for _ in 0..args.n_per_arm {
                    let (row, _) = simulate::strata_sample(&dgp, Arm::Control, &mut rng)?;
                    draws.push((row, Arm::Control));
                }
                let ds = simulate::dataset_from_draws(dgp.ranking.len(), draws, None);
                let pi_hat = bounds::pi_o(
                    &ds,
                    args.item,
                    &ArmPair::new(Arm::Treated.label(), Arm::Control.label()),
                )?;
                sum += pi_hat.pi_o_hat;
                ok_count += pi_hat.monotonicity_ok as usize;
                rows.push(StrataRow {
                    replicate: rep,
                    pi_o_hat: pi_hat.pi_o_hat,
                    se: pi_hat.se,
                    monotonicity_ok: pi_hat.monotonicity_ok,
                });
            }
            let results = StrataResults {
                mean_pi_o_hat: sum / args.replicates as f64,
                share_monotonicity_ok: ok_count as f64 / args.replicates as f64,
                replicates: rows,
            };
            match args.format {
                OutputFormat::Json => emit_json(&Report::new("simulate", config, results)),
                OutputFormat::Csv => {
                    emit_csv_header("simulate", &config);
                    println!("replicate,pi_o_hat,se,monotonicity_ok");
                    for r in &results.replicates {
                        println!(
                            "{}",
                            csv_line(&[
                                r.replicate.to_string(),
                                r.pi_o_hat.to_string(),
                                r.se.to_string(),
                                r.monotonicity_ok.to_string(),
                            ])
                        );
                    }
                }
            }
        }
    }
    Ok(())
}

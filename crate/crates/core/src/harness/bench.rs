//! Batch runs over generated instances, written as CSV rows plus a JSON
//! summary.
//!
//! Instance `(n, kind, trial)` draws its labeling and forest seeds from the
//! base seed and those coordinates alone, so a row can be rebuilt with
//! `gen-labeling` and `gen-forest` and the result does not depend on the
//! thread count.

use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::embed::{embed, Algorithm, GreedyConfig};
use crate::error::{Error, Result};
use crate::exact::ExactValue;
use crate::graph::generate::{gen_forest, gen_zero_sum_labeling, ForestKind, LabelingPattern};
use crate::oracle::{min_abs_sum, DEFAULT_CAP};
use crate::rng::derive_seed;
use crate::theory::analyze_trace;

fn default_trials() -> usize {
    1
}

fn default_epsilon() -> String {
    "1/5".into()
}

fn default_algorithms() -> Vec<String> {
    Algorithm::ALL.iter().map(|a| a.name().to_string()).collect()
}

fn default_pattern() -> String {
    "uniform".into()
}

fn default_oracle() -> bool {
    true
}

/// Bench configuration as read from JSON. Kinds, algorithms and the
/// labeling pattern are given by name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub n: Vec<usize>,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    pub kinds: Vec<String>,
    #[serde(default = "default_epsilon")]
    pub epsilon: String,
    #[serde(default = "default_algorithms")]
    pub algorithms: Vec<String>,
    #[serde(default = "default_pattern")]
    pub pattern: String,
    /// Compare against the exhaustive optimum when `n <= 8`.
    #[serde(default = "default_oracle")]
    pub oracle: bool,
    #[serde(default)]
    pub threads: Option<usize>,
}

/// Validated form of [`ExperimentConfig`].
#[derive(Clone, Debug)]
pub struct Plan {
    pub ns: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub kinds: Vec<ForestKind>,
    pub greedy: GreedyConfig,
    pub algorithms: Vec<Algorithm>,
    pub pattern: LabelingPattern,
    pub oracle: bool,
    pub threads: Option<usize>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::MalformedInput(format!("bench config: {e}")))
    }

    pub fn plan(&self) -> Result<Plan> {
        if self.n.is_empty() || self.kinds.is_empty() || self.algorithms.is_empty() {
            return Err(Error::BadParameters("n, kinds and algorithms must be non-empty".into()));
        }
        if let Some(&n) = self.n.iter().find(|&&n| n < 2) {
            return Err(Error::BadParameters(format!("n = {n} is below 2")));
        }
        if self.trials == 0 {
            return Err(Error::BadParameters("trials must be at least 1".into()));
        }
        if self.threads == Some(0) {
            return Err(Error::BadParameters("threads must be at least 1".into()));
        }
        let epsilon: ExactValue = self.epsilon.parse()?;
        Ok(Plan {
            ns: self.n.clone(),
            trials: self.trials,
            seed: self.seed,
            kinds: self.kinds.iter().map(|k| k.parse()).collect::<Result<_>>()?,
            greedy: GreedyConfig::new(epsilon)?,
            algorithms: self.algorithms.iter().map(|a| a.parse()).collect::<Result<_>>()?,
            pattern: self.pattern.parse()?,
            oracle: self.oracle,
            threads: self.threads,
        })
    }
}

pub const CSV_COLUMNS: [&str; 22] = [
    "n",
    "kind",
    "trial",
    "labeling_seed",
    "forest_seed",
    "algorithm",
    "selected",
    "c_value",
    "abs_c",
    "max_degree",
    "bound_delta_plus_1",
    "bound_theorem",
    "bound_conjecture",
    "delta_plus_1_met",
    "theorem_met",
    "conjecture_met",
    "min_abs_sum",
    "gap",
    "max_step_delta",
    "max_abs_expectation",
    "claim1_flags",
    "error",
];

/// One CSV row. Columns that do not apply to a row are left empty.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunRecord {
    pub n: usize,
    pub kind: String,
    pub trial: usize,
    pub labeling_seed: u64,
    pub forest_seed: u64,
    pub algorithm: String,
    pub selected: Option<String>,
    pub c_value: Option<i64>,
    pub abs_c: Option<i64>,
    pub max_degree: Option<usize>,
    pub bound_delta_plus_1: Option<usize>,
    pub bound_theorem: Option<String>,
    /// `(max_degree - 1) / 2`; reported, never asserted.
    pub bound_conjecture: Option<String>,
    pub delta_plus_1_met: Option<bool>,
    pub theorem_met: Option<bool>,
    pub conjecture_met: Option<bool>,
    pub min_abs_sum: Option<i64>,
    pub gap: Option<i64>,
    pub max_step_delta: Option<String>,
    pub max_abs_expectation: Option<String>,
    pub claim1_flags: Option<usize>,
    pub error: Option<String>,
}

fn decimal(v: ExactValue) -> String {
    format!("{:.6}", v.to_f64())
}

struct Instance {
    n: usize,
    kind: ForestKind,
    trial: usize,
    labeling_seed: u64,
    forest_seed: u64,
}

impl Instance {
    fn rows(&self, plan: &Plan) -> Vec<RunRecord> {
        let blank = |algorithm: Algorithm| RunRecord {
            n: self.n,
            kind: self.kind.name().to_string(),
            trial: self.trial,
            labeling_seed: self.labeling_seed,
            forest_seed: self.forest_seed,
            algorithm: algorithm.name().to_string(),
            selected: None,
            c_value: None,
            abs_c: None,
            max_degree: None,
            bound_delta_plus_1: None,
            bound_theorem: None,
            bound_conjecture: None,
            delta_plus_1_met: None,
            theorem_met: None,
            conjecture_met: None,
            min_abs_sum: None,
            gap: None,
            max_step_delta: None,
            max_abs_expectation: None,
            claim1_flags: None,
            error: None,
        };
        let inputs = gen_zero_sum_labeling(self.n, self.labeling_seed, plan.pattern)
            .and_then(|l| Ok((l, gen_forest(self.n, self.kind, self.forest_seed)?)));
        let (labeling, forest) = match inputs {
            Ok(x) => x,
            Err(e) => {
                return plan
                    .algorithms
                    .iter()
                    .map(|&a| RunRecord {
                        error: Some(e.to_string()),
                        ..blank(a)
                    })
                    .collect()
            }
        };
        let optimum = (plan.oracle && self.n <= DEFAULT_CAP)
            .then(|| min_abs_sum(&labeling, &forest).ok())
            .flatten();
        let delta = forest.max_degree();
        let theorem = plan.greedy.theorem_bound(delta);
        let conjecture = ExactValue::new(delta as i128 - 1, 2);
        plan.algorithms
            .iter()
            .map(|&a| match embed(&labeling, &forest, a, &plan.greedy) {
                Err(e) => RunRecord {
                    error: Some(e.to_string()),
                    ..blank(a)
                },
                Ok(r) => {
                    let abs = r.c_value.abs();
                    let report = (a == Algorithm::Greedy)
                        .then(|| analyze_trace(&r, &forest, &plan.greedy).ok())
                        .flatten();
                    RunRecord {
                        selected: Some(r.selected.name().to_string()),
                        c_value: Some(r.c_value),
                        abs_c: Some(abs),
                        max_degree: Some(delta),
                        bound_delta_plus_1: Some(delta + 1),
                        bound_theorem: Some(decimal(theorem)),
                        bound_conjecture: Some(decimal(conjecture)),
                        delta_plus_1_met: Some(abs as usize <= delta + 1),
                        theorem_met: Some(ExactValue::from_int(abs) <= theorem),
                        conjecture_met: Some(ExactValue::from_int(abs) <= conjecture),
                        min_abs_sum: optimum,
                        gap: optimum.map(|m| abs - m),
                        max_step_delta: report.as_ref().map(|t| t.max_step_delta.to_string()),
                        max_abs_expectation: report.as_ref().map(|t| t.max_abs_expectation.to_string()),
                        claim1_flags: report.as_ref().map(|t| t.flagged.len()),
                        ..blank(a)
                    }
                }
            })
            .collect()
    }
}

fn instances(plan: &Plan) -> Vec<Instance> {
    let mut out = Vec::new();
    for &n in &plan.ns {
        for &kind in &plan.kinds {
            for trial in 0..plan.trials {
                let coords = [n as u64, kind as u64, trial as u64];
                let base = derive_seed(plan.seed, &coords);
                out.push(Instance {
                    n,
                    kind,
                    trial,
                    labeling_seed: derive_seed(base, &[0]),
                    forest_seed: derive_seed(base, &[1]),
                });
            }
        }
    }
    out
}

/// All rows, ordered by `(n, kind, trial, algorithm)` in configuration order.
pub fn run(plan: &Plan) -> Result<Vec<RunRecord>> {
    let work = || -> Vec<RunRecord> {
        instances(plan)
            .par_iter()
            .map(|inst| inst.rows(plan))
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    };
    match plan.threads {
        None => Ok(work()),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::BadParameters(format!("thread pool: {e}")))
            .map(|pool| pool.install(work)),
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct AlgorithmSummary {
    pub runs: usize,
    pub errors: usize,
    pub frac_delta_plus_1: f64,
    pub frac_theorem: f64,
    pub frac_conjecture: f64,
    /// Largest `|c| / max_degree` over rows with `max_degree > 0`.
    pub max_ratio: f64,
    pub oracle_rows: usize,
    pub mean_gap: Option<f64>,
    pub max_gap: Option<i64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Summary {
    pub rows: usize,
    pub algorithms: BTreeMap<String, AlgorithmSummary>,
}

pub fn summarize(rows: &[RunRecord]) -> Summary {
    let mut groups: BTreeMap<String, Vec<&RunRecord>> = BTreeMap::new();
    for r in rows {
        groups.entry(r.algorithm.clone()).or_default().push(r);
    }
    let frac = |ok: usize, total: usize| if total == 0 { 0.0 } else { ok as f64 / total as f64 };
    let algorithms = groups
        .into_iter()
        .map(|(name, rs)| {
            let done: Vec<&&RunRecord> = rs.iter().filter(|r| r.error.is_none()).collect();
            let count = |f: fn(&RunRecord) -> Option<bool>| done.iter().filter(|r| f(r) == Some(true)).count();
            let gaps: Vec<i64> = done.iter().filter_map(|r| r.gap).collect();
            let max_ratio = done
                .iter()
                .filter_map(|r| match (r.abs_c, r.max_degree) {
                    (Some(c), Some(d)) if d > 0 => Some(c as f64 / d as f64),
                    _ => None,
                })
                .fold(0.0, f64::max);
            let summary = AlgorithmSummary {
                runs: rs.len(),
                errors: rs.len() - done.len(),
                frac_delta_plus_1: frac(count(|r| r.delta_plus_1_met), done.len()),
                frac_theorem: frac(count(|r| r.theorem_met), done.len()),
                frac_conjecture: frac(count(|r| r.conjecture_met), done.len()),
                max_ratio,
                oracle_rows: gaps.len(),
                mean_gap: (!gaps.is_empty()).then(|| gaps.iter().sum::<i64>() as f64 / gaps.len() as f64),
                max_gap: gaps.iter().copied().max(),
            };
            (name, summary)
        })
        .collect();
    Summary {
        rows: rows.len(),
        algorithms,
    }
}

pub fn write_csv(rows: &[RunRecord], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

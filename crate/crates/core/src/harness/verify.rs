//! Randomized self-checks on one (labeling, forest) instance.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::cond_expect::{expectation_direct, ExpectationState};
use crate::embed::VertexOrdering;
use crate::error::{Error, Result};
use crate::exact::ExactValue;
use crate::graph::{check_dims, EdgeLabeling, SpanningForest};
use crate::oracle::{conditional_expectation_bruteforce, DEFAULT_CAP};
use crate::rng::{derive_seed, SeededRng};
use crate::theory::{build_positive_graph, check_averaging_gap, find_balanced_vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Recurrence,
    Formula,
    Claim3,
    Claim4,
}

impl Check {
    pub const ALL: [Check; 4] = [Check::Recurrence, Check::Formula, Check::Claim3, Check::Claim4];

    pub fn name(self) -> &'static str {
        match self {
            Check::Recurrence => "recurrence",
            Check::Formula => "formula",
            Check::Claim3 => "claim3",
            Check::Claim4 => "claim4",
        }
    }

    fn tag(self) -> u64 {
        self as u64
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::MalformedInput(format!("unknown check {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: Check,
    pub status: Status,
    pub samples: usize,
    pub failures: usize,
    pub skipped: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub seed: u64,
    pub checks: Vec<CheckReport>,
    pub all_passed: bool,
}

#[derive(Default)]
struct Tally {
    samples: usize,
    failures: usize,
    skipped: usize,
    first_failure: Option<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.samples += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }

    fn finish(self, check: Check, note: &str) -> CheckReport {
        let status = if self.failures > 0 {
            Status::Fail
        } else if self.samples == 0 {
            Status::Skipped
        } else {
            Status::Pass
        };
        CheckReport {
            check,
            status,
            samples: self.samples,
            failures: self.failures,
            skipped: self.skipped,
            detail: self.first_failure.unwrap_or_else(|| note.to_string()),
        }
    }
}

pub const DEFAULT_SAMPLES: usize = 20;

/// Runs each requested check on `samples` random prefixes drawn from `seed`.
pub fn verify(
    labeling: &EdgeLabeling,
    forest: &SpanningForest,
    checks: &[Check],
    seed: u64,
    samples: usize,
) -> Result<VerifyReport> {
    check_dims(labeling, forest)?;
    let mut reports = Vec::with_capacity(checks.len());
    for &check in checks {
        let rng = |s: usize| SeededRng::new(derive_seed(seed, &[check.tag(), s as u64]));
        let report = match check {
            Check::Recurrence => recurrence(labeling, forest, samples, rng)?,
            Check::Formula => formula(labeling, forest, samples, rng)?,
            Check::Claim3 => claim3(labeling, forest, samples, rng)?,
            Check::Claim4 => claim4(labeling),
        };
        reports.push(report);
    }
    Ok(VerifyReport {
        n: labeling.n(),
        seed,
        all_passed: reports.iter().all(|r| r.status != Status::Fail),
        checks: reports,
    })
}

fn random_setup(n: usize, rng: &mut SeededRng) -> Result<(VertexOrdering, Vec<usize>)> {
    let ordering = VertexOrdering::new(rng.permutation(n), 0)?;
    Ok((ordering, rng.permutation(n)))
}

fn recurrence(
    l: &EdgeLabeling,
    f: &SpanningForest,
    samples: usize,
    rng: impl Fn(usize) -> SeededRng,
) -> Result<CheckReport> {
    let n = l.n();
    let mut tally = Tally::default();
    if n == 0 {
        return Ok(tally.finish(Check::Recurrence, "no vertices"));
    }
    for s in 0..samples {
        let mut rng = rng(s);
        let (ordering, hosts) = random_setup(n, &mut rng)?;
        let k = rng.index(n);
        let mut state = ExpectationState::new(l, f, &ordering)?;
        for &p in &hosts[..k] {
            state.place(p)?;
        }
        let mean = ExactValue::mean(state.candidates().map(|c| c.value)).expect("k < n");
        let e = state.expectation();
        tally.record(mean == e, || {
            format!("prefix {:?}: E = {e}, mean = {mean}", one_based(&hosts[..k]))
        });
    }
    Ok(tally.finish(Check::Recurrence, "expectation equals the mean over candidates"))
}

fn formula(
    l: &EdgeLabeling,
    f: &SpanningForest,
    samples: usize,
    rng: impl Fn(usize) -> SeededRng,
) -> Result<CheckReport> {
    let n = l.n();
    let mut tally = Tally::default();
    for s in 0..samples {
        let mut rng = rng(s);
        let (ordering, hosts) = random_setup(n, &mut rng)?;
        let k = rng.index(n + 1);
        let prefix = &hosts[..k];
        let mut state = ExpectationState::new(l, f, &ordering)?;
        for &p in prefix {
            state.place(p)?;
        }
        let incremental = state.expectation();
        let direct = expectation_direct(l, f, &ordering, prefix)?;
        let rebuilt = ExpectationState::from_prefix(l, f, &ordering, prefix)?;
        let mut ok = incremental == direct && rebuilt == state;
        let mut brute = None;
        if n <= DEFAULT_CAP {
            let b = conditional_expectation_bruteforce(l, f, &ordering, prefix, DEFAULT_CAP)?;
            ok &= b == direct;
            brute = Some(b);
        }
        tally.record(ok, || {
            format!(
                "prefix {:?}: incremental {incremental}, direct {direct}, brute force {brute:?}",
                one_based(prefix)
            )
        });
    }
    let note = if n <= DEFAULT_CAP {
        "incremental, direct and brute-force values agree"
    } else {
        "incremental and direct values agree (too large for brute force)"
    };
    Ok(tally.finish(Check::Formula, note))
}

fn claim3(
    l: &EdgeLabeling,
    f: &SpanningForest,
    samples: usize,
    rng: impl Fn(usize) -> SeededRng,
) -> Result<CheckReport> {
    let n = l.n();
    let mut tally = Tally::default();
    if n < 3 {
        return Ok(tally.finish(Check::Claim3, "needs n >= 3"));
    }
    let q = |a: i64, b: i64| ExactValue::new(a as i128, b as i128);
    for s in 0..samples {
        let mut rng = rng(s);
        let (ordering, hosts) = random_setup(n, &mut rng)?;

        // running row means change by at most 2q/p when q entries drop out
        let v = rng.index(n);
        let mut row: Vec<i64> = (0..n).filter(|&w| w != v).map(|w| l.label(v, w)).collect();
        rng.shuffle(&mut row);
        let drop = 1 + rng.index(row.len() - 1);
        let gap = check_averaging_gap(&row, drop)?;
        tally.record(gap.holds, || {
            format!("row of vertex {}: gap {} > {}", v + 1, gap.gap, gap.bound)
        });

        let mut state = ExpectationState::new(l, f, &ordering)?;
        let mut ok = true;
        for &p in &hosts[..n - 2] {
            let r = (n - state.k()) as i64;
            let stars: Vec<i64> = (0..state.k()).map(|j| state.star_sum(j)).collect();
            let clique = state.clique_sum();
            state.place(p)?;
            for (j, &before) in stars.iter().enumerate() {
                ok &= (q(state.star_sum(j), r - 1) - q(before, r)).abs() <= q(2, r);
            }
            let (pairs_before, pairs_after) = (r * (r - 1) / 2, (r - 1) * (r - 2) / 2);
            if pairs_after > 0 {
                ok &= (q(state.clique_sum(), pairs_after) - q(clique, pairs_before)).abs() <= q(4, r);
            }
        }
        tally.record(ok, || {
            format!("placement order {:?} breaks a residual-mean bound", one_based(&hosts))
        });
    }
    Ok(tally.finish(
        Check::Claim3,
        "residual means move by at most 2/(n-k) and 4/(n-k) per step",
    ))
}

fn claim4(l: &EdgeLabeling) -> CheckReport {
    let mut tally = Tally::default();
    let g = build_positive_graph(l, &[]);
    for eps in [ExactValue::new(1, 10), ExactValue::new(3, 20), ExactValue::new(1, 5)] {
        match find_balanced_vertex(&g, eps) {
            Ok(_) => tally.record(true, String::new),
            Err(Error::PreconditionViolated(_)) => tally.skipped += 1,
            Err(e) => tally.record(false, || format!("eps = {eps}: {e}")),
        }
    }
    let note = if tally.samples == 0 {
        "preconditions not met for eps in {1/10, 3/20, 1/5} (needs eps n >= 10 and near-half density)"
    } else {
        "balanced vertex found wherever the preconditions hold"
    };
    tally.finish(Check::Claim4, note)
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

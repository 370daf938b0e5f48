//! Executable forms of the supporting lemmas behind the greedy analysis, plus
//! a per-step diagnostic for greedy traces.

use serde::Serialize;

use crate::embed::{EmbedResult, GreedyConfig};
use crate::error::{Error, Result};
use crate::exact::ExactValue;
use crate::graph::{EdgeLabeling, SpanningForest};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AveragingGap {
    pub gap: ExactValue,
    pub bound: ExactValue,
    pub holds: bool,
}

/// Compares the mean of `x` with the mean of its first `p - q` entries,
/// against the bound `2q / p`.
pub fn check_averaging_gap(x: &[i64], q: usize) -> Result<AveragingGap> {
    let p = x.len();
    if q == 0 || q >= p {
        return Err(Error::BadParameters(format!("need 0 < q < p, got q = {q}, p = {p}")));
    }
    if let Some(&bad) = x.iter().find(|&&v| v != 1 && v != -1) {
        return Err(Error::BadValue(bad));
    }
    let head: i64 = x[..p - q].iter().sum();
    let all = head + x[p - q..].iter().sum::<i64>();
    let gap = (ExactValue::new(all as i128, p as i128) - ExactValue::new(head as i128, (p - q) as i128)).abs();
    let bound = ExactValue::reduced_from(2 * q as i128, p as i128);
    Ok(AveragingGap {
        gap,
        bound,
        holds: gap <= bound,
    })
}

/// Simple undirected graph on a subset of the host vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    vertices: Vec<usize>,
    /// Indexed by host vertex; empty for vertices outside the set.
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl SimpleGraph {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }
}

/// Graph on the vertices outside `excluded` whose edges are the pairs
/// labeled `+1`.
pub fn build_positive_graph(labeling: &EdgeLabeling, excluded: &[usize]) -> SimpleGraph {
    let n = labeling.n();
    let mut keep = vec![true; n];
    for &v in excluded {
        if v < n {
            keep[v] = false;
        }
    }
    let vertices: Vec<usize> = (0..n).filter(|&v| keep[v]).collect();
    let mut adjacency = vec![Vec::new(); n];
    let mut edge_count = 0;
    for (i, &a) in vertices.iter().enumerate() {
        for &b in &vertices[i + 1..] {
            if labeling.label(a, b) == 1 {
                adjacency[a].push(b);
                adjacency[b].push(a);
                edge_count += 1;
            }
        }
    }
    SimpleGraph {
        vertices,
        adjacency,
        edge_count,
    }
}

/// Smallest vertex `u` with `(1/4 - eps) n <= d(u) <= (3/4 + eps) n - 1`,
/// for a graph of near-half density with `eps n >= 10`.
pub fn find_balanced_vertex(graph: &SimpleGraph, epsilon: ExactValue) -> Result<usize> {
    let n = graph.order() as i64;
    let nn = ExactValue::from_int(n);
    if epsilon <= ExactValue::ZERO {
        return Err(Error::EpsilonOutOfRange(epsilon.to_string()));
    }
    if epsilon * nn < ExactValue::from_int(10) {
        return Err(Error::PreconditionViolated(format!(
            "eps * n = {} is below 10",
            epsilon * nn
        )));
    }
    let pairs = ExactValue::from_int(n * (n - 1) / 2);
    let off = (ExactValue::from_int(graph.edge_count() as i64) - pairs * ExactValue::new(1, 2)).abs();
    if off > epsilon / ExactValue::from_int(10) * pairs {
        return Err(Error::PreconditionViolated(format!(
            "edge count {} is {} away from half of {} pairs",
            graph.edge_count(),
            off,
            pairs
        )));
    }
    let low = (ExactValue::new(1, 4) - epsilon) * nn;
    let high = (ExactValue::new(3, 4) + epsilon) * nn - ExactValue::from_int(1);
    graph
        .vertices()
        .iter()
        .copied()
        .find(|&v| {
            let d = ExactValue::from_int(graph.degree(v) as i64);
            low <= d && d <= high
        })
        .ok_or_else(|| {
            let degrees: Vec<usize> = graph.vertices().iter().map(|&v| graph.degree(v)).collect();
            Error::WitnessNotFound(format!(
                "n = {n}, m = {}, eps = {epsilon}, degrees = {degrees:?}",
                graph.edge_count()
            ))
        })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepCheck {
    pub step: usize,
    pub abs_expectation: ExactValue,
    pub abs_delta: ExactValue,
    /// `|delta| <= (1 + 16 eps / 3) D + C`.
    pub claim1: bool,
    /// `|delta| <= (1/2 + 327 eps) D + C`.
    pub claim2: bool,
    /// `|E| <= (3/4 + 327 eps) D + C` before the step.
    pub ec3: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceReport {
    pub epsilon: ExactValue,
    pub max_degree: usize,
    pub claim1_bound: ExactValue,
    pub claim2_bound: ExactValue,
    pub ec3_bound: ExactValue,
    pub steps: Vec<StepCheck>,
    pub max_step_delta: ExactValue,
    pub max_abs_expectation: ExactValue,
    /// Steps whose delta exceeds the claim-1 bound.
    pub flagged: Vec<usize>,
    pub claim2_violations: usize,
    pub ec3_violations: usize,
    pub note: &'static str,
}

const TRACE_NOTE: &str = "diagnostic only: the bounds hold for large n; the balanced-vertex step \
     of the claim-2 argument runs with 320*eps/3 in place of eps, which this report does not apply";

/// Per-step comparison of a greedy trace against the step and level bounds.
pub fn analyze_trace(result: &EmbedResult, forest: &SpanningForest, config: &GreedyConfig) -> Result<TraceReport> {
    let n = forest.n();
    if result.trace.len() != n + 1 {
        return Err(Error::TraceMismatch {
            expected: n + 1,
            found: result.trace.len(),
        });
    }
    let delta = forest.max_degree();
    let claim1_bound = config.shrinking_step_bound(delta);
    let claim2_bound = config.balanced_step_bound(delta);
    let ec3_bound = config.theorem_bound(delta);
    let mut steps = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let abs_expectation = result.trace[k].abs().reduced();
        let abs_delta = if k < n {
            (result.trace[k + 1] - result.trace[k]).abs()
        } else {
            ExactValue::ZERO
        };
        steps.push(StepCheck {
            step: k,
            abs_expectation,
            abs_delta,
            claim1: abs_delta <= claim1_bound,
            claim2: abs_delta <= claim2_bound,
            ec3: abs_expectation <= ec3_bound,
        });
    }
    let max_of = |f: fn(&StepCheck) -> ExactValue| steps.iter().map(f).max().unwrap_or(ExactValue::ZERO);
    Ok(TraceReport {
        epsilon: config.epsilon(),
        max_degree: delta,
        claim1_bound,
        claim2_bound,
        ec3_bound,
        max_step_delta: max_of(|s| s.abs_delta),
        max_abs_expectation: max_of(|s| s.abs_expectation),
        flagged: steps.iter().filter(|s| !s.claim1).map(|s| s.step).collect(),
        claim2_violations: steps.iter().filter(|s| !s.claim2).count(),
        ec3_violations: steps.iter().filter(|s| !s.ec3).count(),
        steps,
        note: TRACE_NOTE,
    })
}

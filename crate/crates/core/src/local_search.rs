//! Role-swap local search on arbitrary spanning subgraphs of the host.
//!
//! A swap of `u` and `v` relabels `H` by the transposition `(u v)`: the two
//! vertices exchange neighborhoods and every other edge stays put. Only the
//! edges in the boundary set between `{u, v}` and the rest change label.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeLabeling, SimpleEdgeGraph};

/// A simple graph `H` on the host vertex set, taken as a fixed copy in `K_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningSubgraph {
    graph: SimpleEdgeGraph,
}

impl SpanningSubgraph {
    pub fn new(graph: SimpleEdgeGraph) -> Self {
        SpanningSubgraph { graph }
    }

    pub fn graph(&self) -> &SimpleEdgeGraph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        self.graph.edges()
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        self.graph.neighbors(u)
    }

    pub fn degree(&self, u: usize) -> usize {
        self.graph.degree(u)
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n()).map(|u| self.degree(u)).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.graph.max_degree()
    }

    pub fn is_regular(&self) -> bool {
        let d = self.degrees();
        d.windows(2).all(|w| w[0] == w[1])
    }

    pub fn label_sum(&self, labeling: &EdgeLabeling) -> i64 {
        self.edges().iter().map(|&(u, v)| labeling.label(u, v)).sum()
    }
}

fn check_pair(h: &SpanningSubgraph, u: usize, v: usize) -> Result<()> {
    let n = h.n();
    for x in [u, v] {
        if x >= n {
            return Err(Error::VertexOutOfRange { vertex: x, n });
        }
    }
    if u == v {
        return Err(Error::SameVertex(u));
    }
    Ok(())
}

/// Edges of `H` joining `{u, v}` to the rest of the graph, sorted, each as
/// `(min, max)`.
pub fn boundary_set(h: &SpanningSubgraph, u: usize, v: usize) -> Result<Vec<(usize, usize)>> {
    check_pair(h, u, v)?;
    let mut out: Vec<(usize, usize)> = [u, v]
        .into_iter()
        .flat_map(|a| {
            h.neighbors(a)
                .iter()
                .filter(move |&&x| x != u && x != v)
                .map(move |&x| (a.min(x), a.max(x)))
        })
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// `H_uv`: the copy of `H` in which `u` and `v` exchange their roles.
pub fn swap_roles(h: &SpanningSubgraph, u: usize, v: usize) -> Result<SpanningSubgraph> {
    check_pair(h, u, v)?;
    let t = |x: usize| {
        if x == u {
            v
        } else if x == v {
            u
        } else {
            x
        }
    };
    let graph = SimpleEdgeGraph::new(h.n(), h.edges().iter().map(|&(a, b)| (t(a), t(b))))?;
    Ok(SpanningSubgraph { graph })
}

/// `c(H_uv) - c(H)`, from the boundary edges only.
pub fn swap_delta(labeling: &EdgeLabeling, h: &SpanningSubgraph, u: usize, v: usize) -> Result<i64> {
    check_pair(h, u, v)?;
    Ok(delta_unchecked(labeling, h, u, v))
}

fn delta_unchecked(labeling: &EdgeLabeling, h: &SpanningSubgraph, u: usize, v: usize) -> i64 {
    let side = |a: usize, b: usize| -> i64 {
        // edges at `a` (other than to `b`) move to `b`
        h.neighbors(a)
            .iter()
            .filter(|&&x| x != b)
            .map(|&x| labeling.label(b, x) - labeling.label(a, x))
            .sum()
    };
    side(u, v) + side(v, u)
}

/// `sum over pairs uv of (d(u) + d(v)) c(uv)`. Equals `sum_uv swap_delta(u, v)
/// + 2 (n - 1) c(H)`, and vanishes for regular `H` under a zero-sum labeling.
pub fn pair_weight_sum(labeling: &EdgeLabeling, h: &SpanningSubgraph) -> i64 {
    (0..h.n()).map(|x| h.degree(x) as i64 * labeling.row_sum(x)).sum()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// Swap giving the smallest resulting `|c|`, ties to the smallest `(u, v)`.
    #[default]
    BestImprovement,
    /// First improving swap in lexicographic `(u, v)` order.
    FirstImprovement,
}

impl std::str::FromStr for Rule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "best" | "best_improvement" => Ok(Rule::BestImprovement),
            "first" | "first_improvement" => Ok(Rule::FirstImprovement),
            _ => Err(Error::MalformedInput(format!("unknown rule {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DescentStatus {
    /// Regular `H`, zero-sum labeling, `|c| <= 2 max_degree`.
    Certified,
    /// `|c| <= 2 max_degree` without the regularity guarantee.
    ReachedWindow,
    /// No swap lowers `|c|` and `|c| > 2 max_degree`.
    Stalled,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Descent {
    pub subgraph: SpanningSubgraph,
    /// `c` before the first swap and after each swap.
    pub trace: Vec<i64>,
    pub swaps: Vec<(usize, usize)>,
    pub status: DescentStatus,
}

impl Descent {
    pub fn final_sum(&self) -> i64 {
        *self.trace.last().expect("trace holds the start value")
    }
}

fn improving_swap(labeling: &EdgeLabeling, h: &SpanningSubgraph, c: i64, rule: Rule) -> Option<(usize, usize, i64)> {
    let n = h.n();
    let mut best: Option<(usize, usize, i64)> = None;
    for u in 0..n {
        for v in u + 1..n {
            if h.degree(u) == 0 && h.degree(v) == 0 {
                continue;
            }
            let next = c + delta_unchecked(labeling, h, u, v);
            if next.abs() >= c.abs() {
                continue;
            }
            match rule {
                Rule::FirstImprovement => return Some((u, v, next)),
                Rule::BestImprovement => {
                    if best.is_none_or(|(_, _, b)| next.abs() < b.abs()) {
                        best = Some((u, v, next));
                    }
                }
            }
        }
    }
    best
}

fn run_descent(labeling: &EdgeLabeling, h0: &SpanningSubgraph, rule: Rule, certify: bool) -> Result<Descent> {
    if labeling.n() != h0.n() {
        return Err(Error::DimensionMismatch {
            what: "subgraph",
            expected: labeling.n(),
            found: h0.n(),
        });
    }
    let window = 2 * h0.max_degree() as i64;
    let mut h = h0.clone();
    let mut c = h.label_sum(labeling);
    let mut trace = vec![c];
    let mut swaps = Vec::new();
    while c.abs() > window {
        let Some((u, v, next)) = improving_swap(labeling, &h, c, rule) else {
            break;
        };
        h = swap_roles(&h, u, v)?;
        c = next;
        trace.push(c);
        swaps.push((u, v));
    }
    let status = if c.abs() > window {
        DescentStatus::Stalled
    } else if certify && h.is_regular() {
        DescentStatus::Certified
    } else {
        DescentStatus::ReachedWindow
    };
    Ok(Descent {
        subgraph: h,
        trace,
        swaps,
        status,
    })
}

/// Swaps until `|c| <= 2 max_degree` or no swap lowers `|c|`. For regular
/// `H` the window is always reached.
pub fn descend(labeling: &EdgeLabeling, h0: &SpanningSubgraph, rule: Rule) -> Result<Descent> {
    labeling.require_zero_sum()?;
    run_descent(labeling, h0, rule, true)
}

/// Same search for any labeling; never reports `Certified`.
pub fn descend_heuristic(labeling: &EdgeLabeling, h0: &SpanningSubgraph, rule: Rule) -> Result<Descent> {
    run_descent(labeling, h0, rule, false)
}

/// True when no swap gives a strictly smaller `|c|`.
pub fn verify_local_optimum(labeling: &EdgeLabeling, h: &SpanningSubgraph) -> bool {
    let c = h.label_sum(labeling);
    improving_swap(labeling, h, c, Rule::FirstImprovement).is_none()
}

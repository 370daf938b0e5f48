//! Seeded instance generators. Each output is a pure function of its
//! arguments; see [`crate::rng`] for the stream definition.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::forest::SimpleEdgeGraph;
use crate::graph::labeling::zero_sum_feasible;
use crate::graph::{EdgeLabeling, SpanningForest};
use crate::rng::SeededRng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LabelingPattern {
    Uniform,
    /// +1 packed inside the first `ceil(n/2)` vertices, -1 elsewhere.
    BlockAdversarial,
}

impl FromStr for LabelingPattern {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(LabelingPattern::Uniform),
            "block" | "block_adversarial" | "block-adversarial" => Ok(LabelingPattern::BlockAdversarial),
            _ => Err(Error::MalformedInput(format!("unknown labeling pattern {s:?}"))),
        }
    }
}

impl fmt::Display for LabelingPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LabelingPattern::Uniform => "uniform",
            LabelingPattern::BlockAdversarial => "block",
        })
    }
}

pub fn gen_zero_sum_labeling(n: usize, seed: u64, pattern: LabelingPattern) -> Result<EdgeLabeling> {
    if !zero_sum_feasible(n) {
        return Err(Error::InfeasibleZeroSum {
            n,
            edges: n * n.saturating_sub(1) / 2,
        });
    }
    let total = n * n.saturating_sub(1) / 2;
    let positives = total / 2;
    let mut rng = SeededRng::new(seed);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut signs = vec![-1i8; total];
    match pattern {
        LabelingPattern::Uniform => {
            signs[..positives].fill(1);
            rng.shuffle(&mut signs);
        }
        LabelingPattern::BlockAdversarial => {
            let block = n.div_ceil(2);
            let (inside, outside): (Vec<usize>, Vec<usize>) = (0..total).partition(|&i| pairs[i].1 < block);
            if inside.len() <= positives {
                for &i in &inside {
                    signs[i] = 1;
                }
                let mut rest = vec![-1i8; outside.len()];
                rest[..positives - inside.len()].fill(1);
                rng.shuffle(&mut rest);
                for (&i, &s) in outside.iter().zip(&rest) {
                    signs[i] = s;
                }
            } else {
                let mut chosen = vec![-1i8; inside.len()];
                chosen[..positives].fill(1);
                rng.shuffle(&mut chosen);
                for (&i, &s) in inside.iter().zip(&chosen) {
                    signs[i] = s;
                }
            }
        }
    }
    EdgeLabeling::from_triples(n, pairs.iter().zip(&signs).map(|(&(u, v), &s)| (u, v, s as i64)))
}

/// Uniformly random labeling with no balance constraint.
pub fn gen_random_labeling(n: usize, seed: u64) -> EdgeLabeling {
    let mut rng = SeededRng::new(seed);
    EdgeLabeling::from_fn(n, |_, _| if rng.coin() { 1 } else { -1 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ForestKind {
    Path,
    Star,
    PerfectMatching,
    RandomTree,
    RandomForest,
    BinaryTree,
}

impl ForestKind {
    pub const ALL: [ForestKind; 6] = [
        ForestKind::Path,
        ForestKind::Star,
        ForestKind::PerfectMatching,
        ForestKind::RandomTree,
        ForestKind::RandomForest,
        ForestKind::BinaryTree,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ForestKind::Path => "path",
            ForestKind::Star => "star",
            ForestKind::PerfectMatching => "perfect_matching",
            ForestKind::RandomTree => "random_tree",
            ForestKind::RandomForest => "random_forest",
            ForestKind::BinaryTree => "binary_tree",
        }
    }
}

impl FromStr for ForestKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "path" => Ok(ForestKind::Path),
            "star" => Ok(ForestKind::Star),
            "perfect_matching" | "matching" => Ok(ForestKind::PerfectMatching),
            "random_tree" | "tree" => Ok(ForestKind::RandomTree),
            "random_forest" | "forest" => Ok(ForestKind::RandomForest),
            "binary_tree" | "binary" => Ok(ForestKind::BinaryTree),
            _ => Err(Error::MalformedInput(format!("unknown forest kind {s:?}"))),
        }
    }
}

impl fmt::Display for ForestKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn gen_forest(n: usize, kind: ForestKind, seed: u64) -> Result<SpanningForest> {
    let mut rng = SeededRng::new(seed);
    let edges: Vec<(usize, usize)> = match kind {
        ForestKind::Path => (1..n).map(|v| (v - 1, v)).collect(),
        ForestKind::Star => (1..n).map(|v| (0, v)).collect(),
        ForestKind::PerfectMatching => {
            if n % 2 == 1 {
                return Err(Error::InfeasibleKind {
                    kind: kind.name().to_string(),
                    n,
                    reason: "n must be even".into(),
                });
            }
            (0..n / 2).map(|i| (2 * i, 2 * i + 1)).collect()
        }
        ForestKind::RandomTree => random_tree(n, &mut rng),
        ForestKind::RandomForest => random_tree(n, &mut rng).into_iter().filter(|_| rng.coin()).collect(),
        ForestKind::BinaryTree => (1..n).map(|v| ((v - 1) / 2, v)).collect(),
    };
    SpanningForest::new(n, edges)
}

/// Uniform labeled tree by Prüfer decoding.
fn random_tree(n: usize, rng: &mut SeededRng) -> Vec<(usize, usize)> {
    if n < 2 {
        return Vec::new();
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.index(n)).collect();
    let mut remaining = vec![1usize; n];
    for &c in &code {
        remaining[c] += 1;
    }
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| remaining[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &c in &code {
        let leaf = leaves.pop_first().expect("a leaf always exists");
        edges.push((leaf, c));
        remaining[c] -= 1;
        if remaining[c] == 1 {
            leaves.insert(c);
        }
    }
    let a = leaves.pop_first().expect("two leaves remain");
    let b = leaves.pop_first().expect("two leaves remain");
    edges.push((a, b));
    edges
}

/// Random `degree`-regular simple graph on `0..n`.
///
/// Degree 1 is a random perfect matching, degree 2 a random union of cycles
/// of length at least 3, and higher degrees use the pairing model with
/// rejection of loops and multi-edges.
pub fn gen_regular_graph(n: usize, degree: usize, seed: u64) -> Result<SimpleEdgeGraph> {
    let infeasible = |reason: &str| Error::InfeasibleKind {
        kind: format!("{degree}-regular graph"),
        n,
        reason: reason.to_string(),
    };
    if degree >= n.max(1) && degree > 0 {
        return Err(infeasible("degree must be below n"));
    }
    if (n * degree) % 2 == 1 {
        return Err(infeasible("n * degree must be even"));
    }
    let mut rng = SeededRng::new(seed);
    let edges: Vec<(usize, usize)> = match degree {
        0 => Vec::new(),
        1 => {
            let p = rng.permutation(n);
            p.chunks(2).map(|c| (c[0], c[1])).collect()
        }
        2 => {
            if n < 3 {
                return Err(infeasible("a cycle needs at least 3 vertices"));
            }
            let p = rng.permutation(n);
            let mut edges = Vec::with_capacity(n);
            let mut start = 0;
            while start < n {
                let left = n - start;
                let mut len = 3 + rng.index(left - 2);
                if left - len < 3 {
                    len = left;
                }
                let cycle = &p[start..start + len];
                for i in 0..len {
                    edges.push((cycle[i], cycle[(i + 1) % len]));
                }
                start += len;
            }
            edges
        }
        _ => {
            let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, degree)).collect();
            let mut found = None;
            for _ in 0..100_000 {
                rng.shuffle(&mut stubs);
                let pairs: Vec<(usize, usize)> = stubs.chunks(2).map(|c| (c[0].min(c[1]), c[0].max(c[1]))).collect();
                let mut sorted = pairs.clone();
                sorted.sort_unstable();
                let simple = sorted.iter().all(|&(a, b)| a != b) && sorted.windows(2).all(|w| w[0] != w[1]);
                if simple {
                    found = Some(pairs);
                    break;
                }
            }
            found.ok_or_else(|| infeasible("pairing model did not produce a simple graph"))?
        }
    };
    SimpleEdgeGraph::new(n, edges)
}

//! Exhaustive enumeration of all embeddings for small `n`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::embed::VertexOrdering;
use crate::error::{Error, Result};
use crate::exact::ExactValue;
use crate::graph::{check_dims, EdgeLabeling, SpanningForest};

pub const DEFAULT_CAP: usize = 8;
/// Enumeration is refused above this size whatever cap is requested.
pub const HARD_CAP: usize = 10;

/// How many permutations give each copy sum.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SumDistribution {
    pub counts: BTreeMap<i64, u64>,
    pub total: u64,
}

impl SumDistribution {
    fn merge(mut self, other: SumDistribution) -> SumDistribution {
        for (s, c) in other.counts {
            *self.counts.entry(s).or_default() += c;
        }
        self.total += other.total;
        self
    }

    pub fn mean(&self) -> ExactValue {
        let weighted: i128 = self.counts.iter().map(|(&s, &c)| s as i128 * c as i128).sum();
        ExactValue::reduced_from(weighted, self.total.max(1) as i128)
    }

    pub fn min_abs(&self) -> Option<i64> {
        self.counts.keys().map(|s| s.abs()).min()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "total": self.total,
            "mean": self.mean().to_string(),
            "min_abs": self.min_abs(),
            "counts": self.counts,
        })
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    let cap = cap.min(HARD_CAP);
    if n > cap {
        return Err(Error::TooLarge { n, cap });
    }
    Ok(())
}

struct Completion<'a> {
    labeling: &'a EdgeLabeling,
    forest: &'a SpanningForest,
    ordering: &'a VertexOrdering,
    host: Vec<usize>,
    used: Vec<bool>,
    dist: SumDistribution,
}

impl Completion<'_> {
    /// Label sum of the edges from the vertex at step `j` back to earlier steps.
    fn back_sum(&self, j: usize) -> i64 {
        let u = self.ordering.vertex_at(j);
        self.forest
            .neighbors(u)
            .iter()
            .filter(|&&w| self.ordering.position_of(w) < j)
            .map(|&w| {
                self.labeling
                    .label(self.host[j], self.host[self.ordering.position_of(w)])
            })
            .sum()
    }

    fn run(&mut self, j: usize, sum: i64) {
        let n = self.host.len();
        if j == n {
            *self.dist.counts.entry(sum).or_default() += 1;
            self.dist.total += 1;
            return;
        }
        for p in 0..n {
            if self.used[p] {
                continue;
            }
            self.used[p] = true;
            self.host[j] = p;
            let s = sum + self.back_sum(j);
            self.run(j + 1, s);
            self.used[p] = false;
        }
    }
}

fn completions(
    labeling: &EdgeLabeling,
    forest: &SpanningForest,
    ordering: &VertexOrdering,
    prefix: &[usize],
) -> Result<SumDistribution> {
    let n = labeling.n();
    let mut used = vec![false; n];
    for &v in prefix {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        if std::mem::replace(&mut used[v], true) {
            return Err(Error::DuplicateInPrefix(v));
        }
    }
    let mut host = vec![0; n];
    host[..prefix.len()].copy_from_slice(prefix);
    let mut walk = Completion {
        labeling,
        forest,
        ordering,
        host,
        used,
        dist: SumDistribution::default(),
    };
    let fixed = (0..prefix.len()).map(|j| walk.back_sum(j)).sum();
    walk.run(prefix.len(), fixed);
    Ok(walk.dist)
}

/// Distribution of `c(F_pi)` over all `n!` permutations, in parallel over
/// the image of the first vertex.
pub fn enumerate_sums(labeling: &EdgeLabeling, forest: &SpanningForest, cap: usize) -> Result<SumDistribution> {
    check_dims(labeling, forest)?;
    let n = labeling.n();
    check_cap(n, cap)?;
    if n == 0 {
        return Ok(SumDistribution {
            counts: BTreeMap::from([(0, 1)]),
            total: 1,
        });
    }
    let ordering = VertexOrdering::natural(n);
    let parts = (0..n)
        .into_par_iter()
        .map(|p| completions(labeling, forest, &ordering, &[p]))
        .collect::<Result<Vec<_>>>()?;
    Ok(parts
        .into_iter()
        .fold(SumDistribution::default(), SumDistribution::merge))
}

/// `min |c(F_pi)|` over all permutations, for `n <= DEFAULT_CAP`.
pub fn min_abs_sum(labeling: &EdgeLabeling, forest: &SpanningForest) -> Result<i64> {
    Ok(enumerate_sums(labeling, forest, DEFAULT_CAP)?
        .min_abs()
        .expect("at least one permutation"))
}

/// Mean copy sum over all completions of `prefix` in `ordering`.
pub fn conditional_expectation_bruteforce(
    labeling: &EdgeLabeling,
    forest: &SpanningForest,
    ordering: &VertexOrdering,
    prefix: &[usize],
    cap: usize,
) -> Result<ExactValue> {
    check_dims(labeling, forest)?;
    let n = labeling.n();
    check_cap(n, cap)?;
    if ordering.n() != n {
        return Err(Error::DimensionMismatch {
            what: "ordering",
            expected: n,
            found: ordering.n(),
        });
    }
    if prefix.len() > n {
        return Err(Error::DimensionMismatch {
            what: "prefix",
            expected: n,
            found: prefix.len(),
        });
    }
    Ok(completions(labeling, forest, ordering, prefix)?.mean())
}

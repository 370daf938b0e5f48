//! Conditional expectation of the copy sum under a uniformly random
//! embedding, given that the first `k` forest vertices of an ordering are
//! already mapped to host vertices `i_1, ..., i_k`.
//!
//! The value splits into three parts: edges already fixed by the prefix,
//! edges from each placed vertex into the unplaced host vertices (weighted by
//! that vertex's residual forest degree and the mean label it sees there),
//! and the forest edges among unplaced vertices (weighted by the mean label
//! inside the unplaced part of the host).
//!
//! [`ExpectationState`] keeps running sums so that one placement costs O(n)
//! per affected vertex and one candidate evaluation costs O(d) for the degree
//! `d` of the next forest vertex. [`expectation_direct`] recomputes the same
//! value from scratch and serves as the reference.

use crate::embed::VertexOrdering;
use crate::error::{Error, Result};
use crate::exact::ExactValue;
use crate::graph::{check_dims, EdgeLabeling, SpanningForest};

/// Exact value of a conditional expectation at `r` unplaced host vertices,
/// `fixed + star / r + clique_weighted / C(r, 2)`, over the canonical
/// denominator `r (r - 1)` (1 when `r < 2`).
#[inline]
fn combine(fixed: i64, star: i64, clique_weighted: i64, r: usize) -> ExactValue {
    let (fixed, star, clique_weighted) = (fixed as i128, star as i128, clique_weighted as i128);
    match r {
        0 => {
            debug_assert_eq!(star, 0);
            ExactValue::new(fixed, 1)
        }
        1 => {
            debug_assert_eq!(clique_weighted, 0);
            ExactValue::new(fixed + star, 1)
        }
        _ => {
            let r = r as i128;
            let l = r * (r - 1);
            ExactValue::new(fixed * l + star * (r - 1) + 2 * clique_weighted, l)
        }
    }
}

/// One candidate `p` for the next step, with the quantities the step analysis
/// talks about: back-degree `d1`, forward degree `d2`, and the label sum `c1`
/// of the edges fixed by choosing `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CandidateEvaluation {
    pub p: usize,
    pub d1: usize,
    pub d2: usize,
    pub c1: i64,
    pub value: ExactValue,
}

/// Per-step quantities that do not depend on the candidate.
#[derive(Clone, Copy, Debug)]
struct StepView {
    vertex: usize,
    d1: usize,
    d2: usize,
    /// Sum of open-row sums over placed back-neighbors of `vertex`.
    back_rows: i64,
}

/// Incremental conditional-expectation state for a fixed labeling, forest and
/// embedding order.
#[derive(Clone, Debug)]
pub struct ExpectationState<'a> {
    labeling: &'a EdgeLabeling,
    forest: &'a SpanningForest,
    ordering: &'a VertexOrdering,
    /// Host vertex chosen at each step.
    prefix: Vec<usize>,
    placed: Vec<bool>,
    /// Label sum of forest edges with both ends placed.
    c_prefix: i64,
    /// Per step `j < k`: forest neighbors of `order[j]` not yet placed.
    residual_degree: Vec<usize>,
    /// Forest edges with both ends unplaced.
    remaining_edges: usize,
    /// Per host vertex: label sum of its edges into the unplaced host vertices
    /// (excluding itself).
    open_row: Vec<i64>,
    /// Label sum of host edges with both ends unplaced.
    open_clique: i64,
    /// `sum_j open_row[prefix[j]] * residual_degree[j]`.
    star_weight: i64,
    /// Per host vertex `v`: `sum_j label(prefix[j], v) * residual_degree[j]`.
    pull: Vec<i64>,
}

impl PartialEq for ExpectationState<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.prefix == other.prefix
            && self.placed == other.placed
            && self.c_prefix == other.c_prefix
            && self.residual_degree == other.residual_degree
            && self.remaining_edges == other.remaining_edges
            && self.open_row == other.open_row
            && self.open_clique == other.open_clique
            && self.star_weight == other.star_weight
            && self.pull == other.pull
    }
}

fn check_ordering(forest: &SpanningForest, ordering: &VertexOrdering) -> Result<()> {
    if ordering.n() != forest.n() {
        return Err(Error::DimensionMismatch {
            what: "ordering",
            expected: forest.n(),
            found: ordering.n(),
        });
    }
    Ok(())
}

fn check_prefix(n: usize, prefix: &[usize]) -> Result<Vec<bool>> {
    if prefix.len() > n {
        return Err(Error::DimensionMismatch {
            what: "prefix",
            expected: n,
            found: prefix.len(),
        });
    }
    let mut placed = vec![false; n];
    for &v in prefix {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        if std::mem::replace(&mut placed[v], true) {
            return Err(Error::DuplicateInPrefix(v));
        }
    }
    Ok(placed)
}

impl<'a> ExpectationState<'a> {
    /// Empty prefix. The expectation is `mean label * m(F)`.
    pub fn new(labeling: &'a EdgeLabeling, forest: &'a SpanningForest, ordering: &'a VertexOrdering) -> Result<Self> {
        check_dims(labeling, forest)?;
        check_ordering(forest, ordering)?;
        let n = labeling.n();
        Ok(ExpectationState {
            labeling,
            forest,
            ordering,
            prefix: Vec::with_capacity(n),
            placed: vec![false; n],
            c_prefix: 0,
            residual_degree: Vec::with_capacity(n),
            remaining_edges: forest.edge_count(),
            open_row: (0..n).map(|v| labeling.row_sum(v)).collect(),
            open_clique: labeling.total_sum(),
            star_weight: 0,
            pull: vec![0; n],
        })
    }

    /// Builds the state for `prefix` by computing every field directly from
    /// the labeling, without replaying placements.
    pub fn from_prefix(
        labeling: &'a EdgeLabeling,
        forest: &'a SpanningForest,
        ordering: &'a VertexOrdering,
        prefix: &[usize],
    ) -> Result<Self> {
        check_dims(labeling, forest)?;
        check_ordering(forest, ordering)?;
        let n = labeling.n();
        let placed = check_prefix(n, prefix)?;
        let k = prefix.len();
        let is_placed_f = |u: usize| ordering.position_of(u) < k;

        let c_prefix = forest
            .edges()
            .iter()
            .filter(|&&(u, v)| is_placed_f(u) && is_placed_f(v))
            .map(|&(u, v)| labeling.label(prefix[ordering.position_of(u)], prefix[ordering.position_of(v)]))
            .sum();
        let residual_degree: Vec<usize> = (0..k)
            .map(|j| {
                forest
                    .neighbors(ordering.vertex_at(j))
                    .iter()
                    .filter(|&&w| !is_placed_f(w))
                    .count()
            })
            .collect();
        let remaining_edges = forest
            .edges()
            .iter()
            .filter(|&&(u, v)| !is_placed_f(u) && !is_placed_f(v))
            .count();
        let open_row: Vec<i64> = (0..n)
            .map(|v| (0..n).filter(|&w| !placed[w]).map(|w| labeling.label(v, w)).sum())
            .collect();
        let open_clique = (0..n).filter(|&v| !placed[v]).map(|v| open_row[v]).sum::<i64>() / 2;
        let star_weight = (0..k).map(|j| open_row[prefix[j]] * residual_degree[j] as i64).sum();
        let pull = (0..n)
            .map(|v| {
                (0..k)
                    .map(|j| labeling.label(prefix[j], v) * residual_degree[j] as i64)
                    .sum()
            })
            .collect();
        let mut prefix_vec = Vec::with_capacity(n);
        prefix_vec.extend_from_slice(prefix);
        Ok(ExpectationState {
            labeling,
            forest,
            ordering,
            prefix: prefix_vec,
            placed,
            c_prefix,
            residual_degree,
            remaining_edges,
            open_row,
            open_clique,
            star_weight,
            pull,
        })
    }

    pub fn n(&self) -> usize {
        self.labeling.n()
    }

    pub fn k(&self) -> usize {
        self.prefix.len()
    }

    pub fn prefix(&self) -> &[usize] {
        &self.prefix
    }

    pub fn ordering(&self) -> &VertexOrdering {
        self.ordering
    }

    pub fn is_placed(&self, v: usize) -> bool {
        self.placed[v]
    }

    pub fn unplaced(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n()).filter(move |&v| !self.placed[v])
    }

    pub fn c_prefix(&self) -> i64 {
        self.c_prefix
    }

    pub fn residual_degree(&self, j: usize) -> usize {
        self.residual_degree[j]
    }

    pub fn remaining_edges(&self) -> usize {
        self.remaining_edges
    }

    /// Label sum from the host vertex of step `j` into the unplaced vertices.
    pub fn star_sum(&self, j: usize) -> i64 {
        self.open_row[self.prefix[j]]
    }

    /// Label sum of host edges among the unplaced vertices.
    pub fn clique_sum(&self) -> i64 {
        self.open_clique
    }

    pub fn expectation(&self) -> ExactValue {
        combine(
            self.c_prefix,
            self.star_weight,
            self.open_clique * self.remaining_edges as i64,
            self.n() - self.k(),
        )
    }

    fn step_view(&self) -> StepView {
        let k = self.k();
        let vertex = self.ordering.vertex_at(k);
        let mut d1 = 0;
        let mut back_rows = 0;
        for &w in self.forest.neighbors(vertex) {
            let j = self.ordering.position_of(w);
            if j < k {
                d1 += 1;
                back_rows += self.open_row[self.prefix[j]];
            }
        }
        StepView {
            vertex,
            d1,
            d2: self.forest.degree(vertex) - d1,
            back_rows,
        }
    }

    #[inline]
    fn back_label_sum(&self, vertex: usize, p: usize) -> i64 {
        let k = self.k();
        self.forest
            .neighbors(vertex)
            .iter()
            .filter_map(|&w| {
                let j = self.ordering.position_of(w);
                (j < k).then(|| self.labeling.label(p, self.prefix[j]))
            })
            .sum()
    }

    #[inline]
    fn evaluate_in(&self, view: &StepView, p: usize) -> CandidateEvaluation {
        let c1 = self.back_label_sum(view.vertex, p);
        let fixed = self.c_prefix + c1;
        let star = self.star_weight - self.pull[p] - view.back_rows + c1 + self.open_row[p] * view.d2 as i64;
        let clique = (self.open_clique - self.open_row[p]) * (self.remaining_edges - view.d2) as i64;
        CandidateEvaluation {
            p,
            d1: view.d1,
            d2: view.d2,
            c1,
            value: combine(fixed, star, clique, self.n() - self.k() - 1),
        }
    }

    fn check_candidate(&self, p: usize) -> Result<()> {
        if self.k() == self.n() {
            return Err(Error::PrefixComplete);
        }
        if p >= self.n() {
            return Err(Error::VertexOutOfRange { vertex: p, n: self.n() });
        }
        if self.placed[p] {
            return Err(Error::AlreadyPlaced(p));
        }
        Ok(())
    }

    /// Expectation after additionally mapping the next forest vertex to `p`.
    pub fn evaluate_candidate(&self, p: usize) -> Result<CandidateEvaluation> {
        self.check_candidate(p)?;
        Ok(self.evaluate_in(&self.step_view(), p))
    }

    /// Every unplaced candidate, in increasing host-vertex order.
    pub fn candidates(&self) -> impl Iterator<Item = CandidateEvaluation> + '_ {
        let view = (self.k() < self.n()).then(|| self.step_view());
        view.into_iter()
            .flat_map(move |view| self.unplaced().map(move |p| self.evaluate_in(&view, p)))
    }

    /// Maps the next forest vertex to `p` and returns the new expectation.
    pub fn place(&mut self, p: usize) -> Result<ExactValue> {
        self.check_candidate(p)?;
        let n = self.n();
        let k = self.k();
        let view = self.step_view();
        let c1 = self.back_label_sum(view.vertex, p);
        let labeling = self.labeling;
        let row_p = labeling.row(p);

        // p leaves the unplaced set
        self.star_weight -= self.pull[p];
        for (v, &s) in row_p.iter().enumerate() {
            self.open_row[v] -= s as i64;
        }
        self.open_clique -= self.open_row[p];

        for &w in self.forest.neighbors(view.vertex) {
            let j = self.ordering.position_of(w);
            if j < k {
                self.residual_degree[j] -= 1;
                let host = self.prefix[j];
                self.star_weight -= self.open_row[host];
                for (v, &s) in labeling.row(host).iter().enumerate() {
                    self.pull[v] -= s as i64;
                }
            }
        }

        self.prefix.push(p);
        self.placed[p] = true;
        self.residual_degree.push(view.d2);
        if view.d2 > 0 {
            let d2 = view.d2 as i64;
            self.star_weight += self.open_row[p] * d2;
            for (v, &s) in row_p.iter().enumerate() {
                self.pull[v] += s as i64 * d2;
            }
        }
        self.remaining_edges -= view.d2;
        self.c_prefix += c1;
        debug_assert!(n >= self.k());
        Ok(self.expectation())
    }
}

/// Reference evaluation from the three-part decomposition, with no
/// incremental bookkeeping. O(n^2) per call.
pub fn expectation_direct(
    labeling: &EdgeLabeling,
    forest: &SpanningForest,
    ordering: &VertexOrdering,
    prefix: &[usize],
) -> Result<ExactValue> {
    check_dims(labeling, forest)?;
    check_ordering(forest, ordering)?;
    let n = labeling.n();
    let placed = check_prefix(n, prefix)?;
    let k = prefix.len();
    let r = n - k;
    let host_of = |u: usize| {
        let j = ordering.position_of(u);
        (j < k).then(|| prefix[j])
    };

    let mut value = ExactValue::ZERO;
    for &(u, v) in forest.edges() {
        if let (Some(a), Some(b)) = (host_of(u), host_of(v)) {
            value = value + ExactValue::from_int(labeling.label(a, b));
        }
    }

    if r >= 1 {
        for (j, &host) in prefix.iter().enumerate() {
            let open_degree = forest
                .neighbors(ordering.vertex_at(j))
                .iter()
                .filter(|&&w| host_of(w).is_none())
                .count();
            if open_degree == 0 {
                continue;
            }
            let star: i64 = (0..n).filter(|&l| !placed[l]).map(|l| labeling.label(host, l)).sum();
            let mean = ExactValue::new(star as i128, r as i128);
            value = value + mean * ExactValue::from_int(open_degree as i64);
        }
    }

    if r >= 2 {
        let open_edges = forest
            .edges()
            .iter()
            .filter(|&&(u, v)| host_of(u).is_none() && host_of(v).is_none())
            .count();
        if open_edges > 0 {
            let mut clique = 0i64;
            for a in (0..n).filter(|&a| !placed[a]) {
                for b in (a + 1..n).filter(|&b| !placed[b]) {
                    clique += labeling.label(a, b);
                }
            }
            let pairs = (r * (r - 1) / 2) as i128;
            value = value + ExactValue::new(clique as i128, pairs) * ExactValue::from_int(open_edges as i64);
        }
    }
    Ok(value.reduced())
}

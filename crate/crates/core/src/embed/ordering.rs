use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::exact::ExactValue;
use crate::graph::SpanningForest;

/// The order in which forest vertices are embedded: `order[j]` is the forest
/// vertex placed at step `j`. The first `t` positions form the prefix in
/// which every vertex has at most one earlier neighbor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexOrdering {
    order: Vec<usize>,
    position: Vec<usize>,
    t: usize,
}

impl VertexOrdering {
    pub fn new(order: Vec<usize>, t: usize) -> Result<Self> {
        let n = order.len();
        if t > n {
            return Err(Error::BadParameters(format!("prefix length {t} exceeds n = {n}")));
        }
        let mut position = vec![usize::MAX; n];
        for (j, &u) in order.iter().enumerate() {
            if u >= n || position[u] != usize::MAX {
                return Err(Error::MalformedInput(
                    "ordering is not a permutation of the forest vertices".into(),
                ));
            }
            position[u] = j;
        }
        Ok(VertexOrdering { order, position, t })
    }

    /// Vertices in index order, empty prefix.
    pub fn natural(n: usize) -> Self {
        VertexOrdering {
            order: (0..n).collect(),
            position: (0..n).collect(),
            t: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn prefix_len(&self) -> usize {
        self.t
    }

    /// Forest vertex placed at step `j`.
    #[inline]
    pub fn vertex_at(&self, j: usize) -> usize {
        self.order[j]
    }

    /// Step at which forest vertex `u` is placed.
    #[inline]
    pub fn position_of(&self, u: usize) -> usize {
        self.position[u]
    }

    /// Every vertex in the first `t` positions has at most one neighbor
    /// among earlier positions.
    pub fn satisfies_prefix_condition(&self, forest: &SpanningForest) -> bool {
        (0..self.t).all(|i| {
            let u = self.order[i];
            forest.neighbors(u).iter().filter(|&&w| self.position[w] < i).count() <= 1
        })
    }

    /// Every vertex after the prefix has degree at most `2 / epsilon`.
    pub fn satisfies_degree_condition(&self, forest: &SpanningForest, epsilon: ExactValue) -> bool {
        self.order[self.t..]
            .iter()
            .all(|&u| !exceeds_degree_threshold(forest.degree(u), epsilon))
    }
}

/// `degree > 2 / epsilon`, exactly.
fn exceeds_degree_threshold(degree: usize, epsilon: ExactValue) -> bool {
    (degree as i128) * epsilon.num() > 2 * epsilon.den()
}

/// `floor(epsilon * n)` clamped to `n`.
pub fn prefix_length(n: usize, epsilon: ExactValue) -> usize {
    let t = (ExactValue::new(n as i128, 1) * epsilon).floor();
    t.clamp(0, n as i128) as usize
}

/// Orders the forest so the first `floor(epsilon n)` vertices contain every
/// vertex of degree above `2 / epsilon`, each prefix vertex has at most one
/// earlier neighbor, and the remaining vertices follow in index order.
///
/// The prefix set is the high-degree vertices padded with the next highest
/// degrees (ties by index). Inside it, each component of the induced forest
/// is listed breadth-first from its maximum-degree vertex.
pub fn reorder_forest(forest: &SpanningForest, epsilon: ExactValue) -> Result<VertexOrdering> {
    if epsilon.num() <= 0 {
        return Err(Error::EpsilonOutOfRange(epsilon.to_string()));
    }
    let n = forest.n();
    let t = prefix_length(n, epsilon);

    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&u| (std::cmp::Reverse(forest.degree(u)), u));
    let high = by_degree
        .iter()
        .take_while(|&&u| exceeds_degree_threshold(forest.degree(u), epsilon))
        .count();
    assert!(
        high <= t,
        "a forest has fewer than epsilon*n vertices of degree above 2/epsilon"
    );

    let mut in_prefix = vec![false; n];
    for &u in &by_degree[..t] {
        in_prefix[u] = true;
    }

    let mut order = Vec::with_capacity(n);
    let mut visited = vec![false; n];
    let mut queue = VecDeque::new();
    for &root in &by_degree[..t] {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &w in forest.neighbors(u) {
                if in_prefix[w] && !visited[w] {
                    visited[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order.extend((0..n).filter(|&u| !in_prefix[u]));
    VertexOrdering::new(order, t)
}

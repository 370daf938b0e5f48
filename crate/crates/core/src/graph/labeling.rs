use crate::error::{Error, Result};

/// A ±1 label on every edge of the complete graph on `n` vertices.
///
/// Stored as a dense symmetric matrix of signed bytes (diagonal zero), with
/// the total and every vertex's row sum cached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeLabeling {
    n: usize,
    labels: Vec<i8>,
    row_sums: Vec<i64>,
    total: i64,
}

impl EdgeLabeling {
    /// Validates raw `(u, v, s)` triples (0-based vertices). Every unordered
    /// pair must appear exactly once with `s` in `{-1, +1}`.
    pub fn from_triples<I>(n: usize, raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, i64)>,
    {
        let mut labels = vec![0i8; n * n];
        let mut seen = 0usize;
        for (u, v, s) in raw {
            if u >= n || v >= n {
                return Err(Error::MalformedInput(format!(
                    "pair ({}, {}) out of range for n = {n}",
                    u + 1,
                    v + 1
                )));
            }
            if u == v {
                return Err(Error::MalformedInput(format!("self-loop at vertex {}", u + 1)));
            }
            if s != 1 && s != -1 {
                return Err(Error::MalformedInput(format!(
                    "label {s} on pair ({}, {}) is not -1 or +1",
                    u + 1,
                    v + 1
                )));
            }
            if labels[u * n + v] != 0 {
                return Err(Error::MalformedInput(format!(
                    "pair ({}, {}) labeled twice",
                    u.min(v) + 1,
                    u.max(v) + 1
                )));
            }
            labels[u * n + v] = s as i8;
            labels[v * n + u] = s as i8;
            seen += 1;
        }
        let expected = n * n.saturating_sub(1) / 2;
        if seen != expected {
            let missing = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .find(|&(u, v)| labels[u * n + v] == 0)
                .map(|(u, v)| format!(" (first missing pair: {} {})", u + 1, v + 1))
                .unwrap_or_default();
            return Err(Error::MalformedInput(format!(
                "expected {expected} labeled pairs, got {seen}{missing}"
            )));
        }
        Ok(Self::from_matrix(n, labels))
    }

    /// Builds a labeling from a function on pairs `u < v`. The function must
    /// return -1 or +1.
    pub fn from_fn(n: usize, mut label: impl FnMut(usize, usize) -> i8) -> Self {
        let mut labels = vec![0i8; n * n];
        for u in 0..n {
            for v in u + 1..n {
                let s = label(u, v);
                assert!(s == 1 || s == -1, "label must be ±1");
                labels[u * n + v] = s;
                labels[v * n + u] = s;
            }
        }
        Self::from_matrix(n, labels)
    }

    fn from_matrix(n: usize, labels: Vec<i8>) -> Self {
        let row_sums: Vec<i64> = labels
            .chunks(n.max(1))
            .take(n)
            .map(|row| row.iter().map(|&s| s as i64).sum())
            .collect();
        let total = row_sums.iter().sum::<i64>() / 2;
        EdgeLabeling {
            n,
            labels,
            row_sums,
            total,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2
    }

    /// Label of the pair `{u, v}`; 0 on the diagonal.
    #[inline]
    pub fn label(&self, u: usize, v: usize) -> i64 {
        self.labels[u * self.n + v] as i64
    }

    #[inline]
    pub fn row(&self, u: usize) -> &[i8] {
        &self.labels[u * self.n..(u + 1) * self.n]
    }

    /// Sum of labels on edges at `u`.
    pub fn row_sum(&self, u: usize) -> i64 {
        self.row_sums[u]
    }

    pub fn total_sum(&self) -> i64 {
        self.total
    }

    pub fn is_zero_sum(&self) -> bool {
        self.total == 0
    }

    pub fn positive_count(&self) -> usize {
        ((self.edge_count() as i64 + self.total) / 2) as usize
    }

    /// All pairs `u < v` with their labels, in lexicographic order.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        (0..self.n).flat_map(move |u| (u + 1..self.n).map(move |v| (u, v, self.label(u, v))))
    }

    pub fn require_zero_sum(&self) -> Result<()> {
        if self.is_zero_sum() {
            Ok(())
        } else {
            Err(Error::NotZeroSum(self.total))
        }
    }
}

/// `n(n-1)/2` is even exactly when a zero-sum labeling exists.
pub fn zero_sum_feasible(n: usize) -> bool {
    (n * n.saturating_sub(1) / 2).is_multiple_of(2)
}

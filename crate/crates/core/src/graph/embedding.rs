use crate::error::{Error, Result};
use crate::graph::{EdgeLabeling, SpanningForest};

/// A bijection from forest vertices to host vertices: `image(u)` is the host
/// vertex playing the role of forest vertex `u`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Embedding {
    pi: Vec<usize>,
}

impl Embedding {
    pub fn new(pi: Vec<usize>) -> Result<Self> {
        let n = pi.len();
        let mut seen = vec![false; n];
        for &v in &pi {
            if v >= n {
                return Err(Error::MalformedInput(format!(
                    "image {} out of range for n = {n}",
                    v + 1
                )));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::MalformedInput(format!("image {} repeated", v + 1)));
            }
        }
        Ok(Embedding { pi })
    }

    pub fn identity(n: usize) -> Self {
        Embedding { pi: (0..n).collect() }
    }

    pub fn n(&self) -> usize {
        self.pi.len()
    }

    #[inline]
    pub fn image(&self, u: usize) -> usize {
        self.pi[u]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.pi
    }

    pub fn inverse(&self) -> Embedding {
        let mut inv = vec![0; self.pi.len()];
        for (u, &v) in self.pi.iter().enumerate() {
            inv[v] = u;
        }
        Embedding { pi: inv }
    }

    /// Forest vertices `a` and `b` exchange their host vertices.
    pub fn swap_roles(&mut self, a: usize, b: usize) {
        self.pi.swap(a, b);
    }

    /// Host edges of the copy, each normalized to `(min, max)` and sorted.
    pub fn copy_edges(&self, forest: &SpanningForest) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = forest
            .edges()
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (self.pi[u], self.pi[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        out.sort_unstable();
        out
    }
}

pub(crate) fn check_dims(labeling: &EdgeLabeling, forest: &SpanningForest) -> Result<()> {
    if labeling.n() != forest.n() {
        return Err(Error::DimensionMismatch {
            what: "forest",
            expected: labeling.n(),
            found: forest.n(),
        });
    }
    Ok(())
}

/// Sum of labels over the copy of `forest` placed by `emb`.
pub fn copy_sum(labeling: &EdgeLabeling, forest: &SpanningForest, emb: &Embedding) -> Result<i64> {
    check_dims(labeling, forest)?;
    if emb.n() != labeling.n() {
        return Err(Error::DimensionMismatch {
            what: "embedding",
            expected: labeling.n(),
            found: emb.n(),
        });
    }
    Ok(forest
        .edges()
        .iter()
        .map(|&(u, v)| labeling.label(emb.image(u), emb.image(v)))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{l4, p3};

    #[test]
    fn l4_p3_sums() {
        let (l, f) = (l4(), p3());
        assert_eq!(copy_sum(&l, &f, &Embedding::identity(4)).unwrap(), 0);
        let swapped = Embedding::new(vec![1, 0, 2, 3]).unwrap();
        assert_eq!(copy_sum(&l, &f, &swapped).unwrap(), 2);
    }

    #[test]
    fn edgeless_sums_to_zero() {
        let l = l4();
        let f = SpanningForest::edgeless(4);
        let e = Embedding::new(vec![3, 1, 0, 2]).unwrap();
        assert_eq!(copy_sum(&l, &f, &e).unwrap(), 0);
    }

    #[test]
    fn dimension_checks() {
        let l = l4();
        let f = SpanningForest::edgeless(3);
        assert!(matches!(
            copy_sum(&l, &f, &Embedding::identity(3)),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            copy_sum(&l, &p3(), &Embedding::identity(5)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Embedding::new(vec![0, 0, 1]).is_err());
        assert!(Embedding::new(vec![0, 3, 1]).is_err());
        let e = Embedding::new(vec![2, 0, 1]).unwrap();
        assert_eq!(e.inverse().as_slice(), &[1, 2, 0]);
    }
}

use crate::error::{Error, Result};
use crate::graph::{copy_sum, EdgeLabeling, Embedding, SpanningForest};

/// A sequence of copies `start = pi_0, ..., pi_r = target` where each step
/// exchanges the host vertices of the pivot and one other forest vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkResult {
    /// Forest vertex of degree at most one that takes part in every swap.
    pub pivot: usize,
    pub start: Embedding,
    /// Partner of the pivot at each step.
    pub partners: Vec<usize>,
    /// Copy sums `c(F_{pi_0}), ..., c(F_{pi_r})`.
    pub sums: Vec<i64>,
    /// First index minimizing `|sums[i]|`.
    pub best_index: usize,
    pub best_embedding: Embedding,
}

impl WalkResult {
    pub fn length(&self) -> usize {
        self.partners.len()
    }

    /// All `r + 1` embeddings along the walk.
    pub fn embeddings(&self) -> Vec<Embedding> {
        let mut cur = self.start.clone();
        let mut out = Vec::with_capacity(self.partners.len() + 1);
        out.push(cur.clone());
        for &x in &self.partners {
            cur.swap_roles(self.pivot, x);
            out.push(cur.clone());
        }
        out
    }
}

/// Label sum over forest edges touching `a` or `b` in the copy `pi`.
fn touched_sum(labeling: &EdgeLabeling, forest: &SpanningForest, pi: &Embedding, a: usize, b: usize) -> i64 {
    let at_a: i64 = forest
        .neighbors(a)
        .iter()
        .map(|&y| labeling.label(pi.image(a), pi.image(y)))
        .sum();
    let at_b: i64 = forest
        .neighbors(b)
        .iter()
        .filter(|&&y| y != a)
        .map(|&y| labeling.label(pi.image(b), pi.image(y)))
        .sum();
    at_a + at_b
}

/// Walks from `from` to `to` by swaps that always involve the smallest forest
/// vertex `w` of degree at most one. Each swap changes at most
/// `deg(w) + deg(x) <= max_degree + 1` edges of the copy on each side, and the
/// walk has fewer than `2n` steps.
///
/// The swap sequence follows the cycle structure of `from^-1 . to`: while
/// the pivot holds a misplaced host vertex it sends it home, otherwise it
/// swaps into the next misplaced position.
pub fn transposition_walk(
    labeling: &EdgeLabeling,
    forest: &SpanningForest,
    from: &Embedding,
    to: &Embedding,
) -> Result<WalkResult> {
    let n = labeling.n();
    for (what, found) in [("forest", forest.n()), ("embedding", from.n()), ("embedding", to.n())] {
        if found != n {
            return Err(Error::DimensionMismatch {
                what,
                expected: n,
                found,
            });
        }
    }
    let mut cur = from.clone();
    let mut sum = copy_sum(labeling, forest, &cur)?;
    let mut sums = vec![sum];
    let mut partners = Vec::new();
    let (mut best_index, mut best_embedding) = (0, cur.clone());

    let Some(pivot) = forest.low_degree_vertex() else {
        return Ok(WalkResult {
            pivot: 0,
            start: from.clone(),
            partners,
            sums,
            best_index,
            best_embedding,
        });
    };
    let home = to.inverse();
    let mut scan = 0;
    loop {
        let held = cur.image(pivot);
        let partner = if held != to.image(pivot) {
            home.image(held)
        } else {
            while scan < n && (scan == pivot || cur.image(scan) == to.image(scan)) {
                scan += 1;
            }
            if scan == n {
                break;
            }
            scan
        };
        let before = touched_sum(labeling, forest, &cur, pivot, partner);
        cur.swap_roles(pivot, partner);
        let after = touched_sum(labeling, forest, &cur, pivot, partner);
        sum += after - before;
        partners.push(partner);
        sums.push(sum);
        if sum.abs() < sums[best_index].abs() {
            best_index = sums.len() - 1;
            best_embedding = cur.clone();
        }
    }
    debug_assert_eq!(&cur, to);
    Ok(WalkResult {
        pivot,
        start: from.clone(),
        partners,
        sums,
        best_index,
        best_embedding,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::{monotone_embed, Sign};
    use crate::fixtures::{l4, p3};
    use crate::graph::generate::{gen_forest, gen_zero_sum_labeling, ForestKind, LabelingPattern};
    use crate::rng::SeededRng;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    #[test]
    fn identity_walk() {
        let e = Embedding::new(vec![2, 0, 3, 1]).unwrap();
        let w = transposition_walk(&l4(), &p3(), &e, &e).unwrap();
        assert_eq!(w.length(), 0);
        assert_eq!(w.best_embedding, e);
        assert_eq!(w.sums.len(), 1);
    }

    #[test]
    fn l4_crossing() {
        let (l, f) = (l4(), p3());
        // c = 2: path 2-1-3; c = -2: path 2-3-4
        let plus = Embedding::new(vec![1, 0, 2, 3]).unwrap();
        let minus = Embedding::new(vec![1, 2, 3, 0]).unwrap();
        assert_eq!(copy_sum(&l, &f, &plus).unwrap(), 2);
        assert_eq!(copy_sum(&l, &f, &minus).unwrap(), -2);
        let w = transposition_walk(&l, &f, &plus, &minus).unwrap();
        assert_eq!(w.pivot, 0);
        assert!(w.sums[w.best_index].abs() <= 3);
        assert_eq!(*w.sums.last().unwrap(), -2);
    }

    proptest! {
        #[test]
        fn walk_contract(seed in any::<u64>(), n in prop::sample::select(vec![4usize, 5, 8, 9, 12, 16]),
                         k in 0usize..6) {
            let kind = ForestKind::ALL[k];
            prop_assume!(!(kind == ForestKind::PerfectMatching && n % 2 == 1));
            let l = gen_zero_sum_labeling(n, seed, LabelingPattern::Uniform).unwrap();
            let f = gen_forest(n, kind, seed).unwrap();
            let mut rng = SeededRng::new(seed);
            let a = Embedding::new(rng.permutation(n)).unwrap();
            let b = Embedding::new(rng.permutation(n)).unwrap();
            let w = transposition_walk(&l, &f, &a, &b).unwrap();
            prop_assert!(w.length() <= 2 * n);
            prop_assert!(f.degree(w.pivot) <= 1);
            let embs = w.embeddings();
            prop_assert_eq!(embs.last().unwrap(), &b);
            let limit = f.max_degree() + 1;
            for (i, pair) in embs.windows(2).enumerate() {
                let e0: BTreeSet<_> = pair[0].copy_edges(&f).into_iter().collect();
                let e1: BTreeSet<_> = pair[1].copy_edges(&f).into_iter().collect();
                prop_assert!(e0.difference(&e1).count() <= limit);
                prop_assert!(e1.difference(&e0).count() <= limit);
                prop_assert_eq!(copy_sum(&l, &f, &pair[1]).unwrap(), w.sums[i + 1]);
                prop_assert!((w.sums[i + 1] - w.sums[i]).unsigned_abs() as usize <= 2 * limit);
            }
            let up = monotone_embed(&l, &f, Sign::Plus).unwrap();
            let down = monotone_embed(&l, &f, Sign::Minus).unwrap();
            let cross = transposition_walk(&l, &f, &up.embedding, &down.embedding).unwrap();
            prop_assert!(cross.sums[cross.best_index].unsigned_abs() as usize <= limit);
        }
    }
}

use std::time::Instant;

use serde::Serialize;

use super::{deltas, Algorithm, Certificates, EmbedResult, VertexOrdering};
use crate::cond_expect::ExpectationState;
use crate::error::Result;
use crate::graph::{check_dims, EdgeLabeling, Embedding, SpanningForest};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

/// Embeds forest vertices in index order, each time taking the candidate with
/// the largest (`Plus`) or smallest (`Minus`) conditional expectation, ties
/// to the smallest host vertex. Since the expectation is the mean over
/// candidates, the trace is monotone and the final sum lands on the chosen
/// side of zero.
pub fn monotone_embed(labeling: &EdgeLabeling, forest: &SpanningForest, sign: Sign) -> Result<EmbedResult> {
    let start = Instant::now();
    check_dims(labeling, forest)?;
    labeling.require_zero_sum()?;
    let n = labeling.n();
    let ordering = VertexOrdering::natural(n);
    let mut state = ExpectationState::new(labeling, forest, &ordering)?;
    let mut trace = Vec::with_capacity(n + 1);
    trace.push(state.expectation());
    for _ in 0..n {
        let choice = state
            .candidates()
            .min_by(|a, b| match sign {
                Sign::Plus => b.value.cmp(&a.value),
                Sign::Minus => a.value.cmp(&b.value),
            })
            .expect("an unplaced vertex remains");
        trace.push(state.place(choice.p)?);
    }
    let embedding = Embedding::new(state.prefix().to_vec())?;
    let c_value = trace[n].to_integer().expect("a full prefix fixes an integer sum");
    Ok(EmbedResult {
        algorithm: match sign {
            Sign::Plus => Algorithm::MonotonePlus,
            Sign::Minus => Algorithm::MonotoneMinus,
        },
        selected: match sign {
            Sign::Plus => Algorithm::MonotonePlus,
            Sign::Minus => Algorithm::MonotoneMinus,
        },
        step_deltas: deltas(&trace),
        trace,
        embedding,
        c_value,
        ordering,
        certificates: Certificates::evaluate(labeling, forest, c_value, None),
        walk: None,
        runtime: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::fixtures::{l4, p3};
    use crate::graph::generate::{gen_forest, gen_zero_sum_labeling, ForestKind, LabelingPattern};
    use proptest::prelude::*;

    #[test]
    fn l4_sides() {
        let up = monotone_embed(&l4(), &p3(), Sign::Plus).unwrap();
        let down = monotone_embed(&l4(), &p3(), Sign::Minus).unwrap();
        assert!(up.c_value >= 0);
        assert!(down.c_value <= 0);
    }

    #[test]
    fn edgeless_is_zero() {
        let f = SpanningForest::edgeless(4);
        for sign in [Sign::Plus, Sign::Minus] {
            assert_eq!(monotone_embed(&l4(), &f, sign).unwrap().c_value, 0);
        }
    }

    #[test]
    fn needs_zero_sum() {
        let l = EdgeLabeling::from_fn(4, |_, _| 1);
        assert!(matches!(
            monotone_embed(&l, &p3(), Sign::Plus),
            Err(Error::NotZeroSum(_))
        ));
    }

    proptest! {
        #[test]
        fn traces_are_monotone(seed in any::<u64>(), n in prop::sample::select(vec![5usize, 8, 9, 12, 16, 17]),
                               k in 0usize..6) {
            let kind = ForestKind::ALL[k];
            prop_assume!(!(kind == ForestKind::PerfectMatching && n % 2 == 1));
            let l = gen_zero_sum_labeling(n, seed, LabelingPattern::Uniform).unwrap();
            let f = gen_forest(n, kind, seed).unwrap();
            let up = monotone_embed(&l, &f, Sign::Plus).unwrap();
            prop_assert!(up.trace.windows(2).all(|w| w[0] <= w[1]));
            prop_assert!(up.c_value >= 0);
            let down = monotone_embed(&l, &f, Sign::Minus).unwrap();
            prop_assert!(down.trace.windows(2).all(|w| w[0] >= w[1]));
            prop_assert!(down.c_value <= 0);
        }
    }
}

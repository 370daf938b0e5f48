use std::time::Instant;

use super::{deltas, Algorithm, Certificates, EmbedResult, GreedyConfig};
use crate::cond_expect::ExpectationState;
use crate::error::Result;
use crate::graph::{check_dims, EdgeLabeling, Embedding, SpanningForest};

/// Places forest vertices in the configured order, each time on the unplaced
/// host vertex whose conditional expectation has the smallest absolute value
/// (ties: smallest host vertex).
///
/// Accepts labelings that are not zero-sum; the expectation then starts at
/// `mean label * m(F)` and no bound certificate is issued.
pub fn greedy_embed(labeling: &EdgeLabeling, forest: &SpanningForest, config: &GreedyConfig) -> Result<EmbedResult> {
    let start = Instant::now();
    check_dims(labeling, forest)?;
    let n = labeling.n();
    let ordering = config.ordering_for(forest)?;
    let mut state = ExpectationState::new(labeling, forest, &ordering)?;
    let mut trace = Vec::with_capacity(n + 1);
    trace.push(state.expectation());
    for _ in 0..n {
        let choice = state
            .candidates()
            .min_by(|a, b| a.value.abs().cmp(&b.value.abs()))
            .expect("an unplaced vertex remains");
        let value = state.place(choice.p)?;
        debug_assert_eq!(value, choice.value);
        trace.push(value);
    }

    let mut pi = vec![0; n];
    for (j, &host) in state.prefix().iter().enumerate() {
        pi[ordering.vertex_at(j)] = host;
    }
    let embedding = Embedding::new(pi)?;
    let c_value = trace[n].to_integer().expect("a full prefix fixes an integer sum");
    Ok(EmbedResult {
        algorithm: Algorithm::Greedy,
        selected: Algorithm::Greedy,
        step_deltas: deltas(&trace),
        trace,
        embedding,
        c_value,
        certificates: Certificates::evaluate(labeling, forest, c_value, Some(config)),
        ordering,
        walk: None,
        runtime: start.elapsed(),
    })
}

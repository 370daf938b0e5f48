//! Embedding algorithms built on [`crate::cond_expect`]: the greedy
//! minimizer of `|E|`, the monotone walk that keeps `E` on one side of zero,
//! the transposition walk between two copies, and combinations of these.

mod greedy;
mod monotone;
mod ordering;
mod walk;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::Serialize;

pub use greedy::greedy_embed;
pub use monotone::{monotone_embed, Sign};
pub use ordering::{prefix_length, reorder_forest, VertexOrdering};
pub use walk::{transposition_walk, WalkResult};

use crate::cond_expect::ExpectationState;
use crate::error::{Error, Result};
use crate::exact::ExactValue;
use crate::graph::{EdgeLabeling, Embedding, SpanningForest};

/// Which forest-vertex order the greedy embeds in.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum OrderingChoice {
    /// Low-degeneracy prefix followed by bounded-degree vertices.
    #[default]
    Reordered,
    Natural,
    Custom(VertexOrdering),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreedyConfig {
    epsilon: ExactValue,
    ordering: OrderingChoice,
}

impl Default for GreedyConfig {
    fn default() -> Self {
        GreedyConfig {
            epsilon: ExactValue::new(1, 5),
            ordering: OrderingChoice::Reordered,
        }
    }
}

impl GreedyConfig {
    /// `epsilon` must lie strictly between 0 and 1/4.
    pub fn new(epsilon: ExactValue) -> Result<Self> {
        if epsilon <= ExactValue::ZERO || epsilon >= ExactValue::new(1, 4) {
            return Err(Error::EpsilonOutOfRange(epsilon.to_string()));
        }
        Ok(GreedyConfig {
            epsilon: epsilon.reduced(),
            ordering: OrderingChoice::Reordered,
        })
    }

    pub fn with_ordering(mut self, ordering: OrderingChoice) -> Self {
        self.ordering = ordering;
        self
    }

    pub fn epsilon(&self) -> ExactValue {
        self.epsilon
    }

    pub fn ordering_choice(&self) -> &OrderingChoice {
        &self.ordering
    }

    pub fn prefix_len(&self, n: usize) -> usize {
        prefix_length(n, self.epsilon)
    }

    /// `8 / epsilon + 4`.
    pub fn additive_constant(&self) -> ExactValue {
        ExactValue::from_int(8) / self.epsilon + ExactValue::from_int(4)
    }

    /// `3/4 + 327 epsilon`.
    pub fn slope(&self) -> ExactValue {
        ExactValue::new(3, 4) + ExactValue::from_int(327) * self.epsilon
    }

    /// Bound on every `|E|` along the greedy trace, for large `n`.
    pub fn theorem_bound(&self, max_degree: usize) -> ExactValue {
        self.slope() * ExactValue::from_int(max_degree as i64) + self.additive_constant()
    }

    /// Step bound available when `|E|` is large: `(1 + 16 eps / 3) D + C`.
    pub fn shrinking_step_bound(&self, max_degree: usize) -> ExactValue {
        (ExactValue::from_int(1) + ExactValue::new(16, 3) * self.epsilon) * ExactValue::from_int(max_degree as i64)
            + self.additive_constant()
    }

    /// Step bound available at every step: `(1/2 + 327 eps) D + C`.
    pub fn balanced_step_bound(&self, max_degree: usize) -> ExactValue {
        (ExactValue::new(1, 2) + ExactValue::from_int(327) * self.epsilon) * ExactValue::from_int(max_degree as i64)
            + self.additive_constant()
    }

    pub fn ordering_for(&self, forest: &SpanningForest) -> Result<VertexOrdering> {
        match &self.ordering {
            OrderingChoice::Reordered => reorder_forest(forest, self.epsilon),
            OrderingChoice::Natural => Ok(VertexOrdering::natural(forest.n())),
            OrderingChoice::Custom(o) => {
                if o.n() != forest.n() {
                    return Err(Error::DimensionMismatch {
                        what: "ordering",
                        expected: forest.n(),
                        found: o.n(),
                    });
                }
                Ok(o.clone())
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Greedy,
    #[serde(rename = "monotone+")]
    MonotonePlus,
    #[serde(rename = "monotone-")]
    MonotoneMinus,
    Prop2,
    Best,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Greedy,
        Algorithm::Prop2,
        Algorithm::MonotonePlus,
        Algorithm::MonotoneMinus,
        Algorithm::Best,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Greedy => "greedy",
            Algorithm::MonotonePlus => "monotone+",
            Algorithm::MonotoneMinus => "monotone-",
            Algorithm::Prop2 => "prop2",
            Algorithm::Best => "best",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::MalformedInput(format!("unknown algorithm {s:?}")))
    }
}

/// Bound checks attached to a result. `None` means the check does not apply
/// (labeling not zero-sum, or no epsilon in play).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Certificates {
    pub zero_sum: bool,
    pub max_degree: usize,
    /// `|c| <= max_degree + 1`.
    pub delta_plus_1: Option<bool>,
    /// `|c| <= (3/4 + 327 eps) max_degree + 8/eps + 4`.
    pub theorem_bound: Option<bool>,
}

impl Certificates {
    pub fn evaluate(
        labeling: &EdgeLabeling,
        forest: &SpanningForest,
        c_value: i64,
        config: Option<&GreedyConfig>,
    ) -> Self {
        let zero_sum = labeling.is_zero_sum();
        let max_degree = forest.max_degree();
        let abs = c_value.unsigned_abs();
        Certificates {
            zero_sum,
            max_degree,
            delta_plus_1: zero_sum.then_some(abs <= max_degree as u64 + 1),
            theorem_bound: config
                .filter(|_| zero_sum)
                .map(|cfg| ExactValue::from_int(abs as i64) <= cfg.theorem_bound(max_degree)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct EmbedResult {
    pub algorithm: Algorithm,
    /// The branch that produced the embedding; differs from `algorithm` only
    /// for [`Algorithm::Best`].
    pub selected: Algorithm,
    pub embedding: Embedding,
    pub c_value: i64,
    pub ordering: VertexOrdering,
    /// Conditional expectation after each of the `n + 1` prefix lengths of
    /// `embedding` in `ordering`. Ends at `c_value`.
    pub trace: Vec<ExactValue>,
    /// `trace[k + 1] - trace[k]`.
    pub step_deltas: Vec<ExactValue>,
    pub certificates: Certificates,
    pub walk: Option<WalkResult>,
    pub runtime: Duration,
}

impl EmbedResult {
    /// Compares everything except the wall-clock runtime.
    pub fn same_outcome(&self, other: &EmbedResult) -> bool {
        self.algorithm == other.algorithm
            && self.selected == other.selected
            && self.embedding == other.embedding
            && self.c_value == other.c_value
            && self.ordering == other.ordering
            && self.trace == other.trace
            && self.step_deltas == other.step_deltas
            && self.certificates == other.certificates
            && self.walk == other.walk
    }
}

pub(crate) fn deltas(trace: &[ExactValue]) -> Vec<ExactValue> {
    trace.windows(2).map(|w| w[1] - w[0]).collect()
}

/// Conditional expectations along the prefixes of `emb` taken in `ordering`.
pub fn expectation_trace(
    labeling: &EdgeLabeling,
    forest: &SpanningForest,
    ordering: &VertexOrdering,
    emb: &Embedding,
) -> Result<Vec<ExactValue>> {
    let mut state = ExpectationState::new(labeling, forest, ordering)?;
    let mut trace = Vec::with_capacity(labeling.n() + 1);
    trace.push(state.expectation());
    for j in 0..labeling.n() {
        trace.push(state.place(emb.image(ordering.vertex_at(j)))?);
    }
    Ok(trace)
}

/// Runs monotone embeddings on both sides of zero and walks between them;
/// the best copy on the walk has `|c| <= max_degree + 1`.
pub fn prop2_embed(labeling: &EdgeLabeling, forest: &SpanningForest) -> Result<EmbedResult> {
    let start = std::time::Instant::now();
    let up = monotone_embed(labeling, forest, Sign::Plus)?;
    let down = monotone_embed(labeling, forest, Sign::Minus)?;
    let walk = transposition_walk(labeling, forest, &up.embedding, &down.embedding)?;
    let ordering = VertexOrdering::natural(labeling.n());
    let embedding = walk.best_embedding.clone();
    let c_value = walk.sums[walk.best_index];
    let trace = expectation_trace(labeling, forest, &ordering, &embedding)?;
    Ok(EmbedResult {
        algorithm: Algorithm::Prop2,
        selected: Algorithm::Prop2,
        step_deltas: deltas(&trace),
        trace,
        embedding,
        c_value,
        ordering,
        certificates: Certificates::evaluate(labeling, forest, c_value, None),
        walk: Some(walk),
        runtime: start.elapsed(),
    })
}

/// Whichever of the greedy and the walk-based embedding has smaller `|c|`
/// (ties go to the greedy).
pub fn best_embed(labeling: &EdgeLabeling, forest: &SpanningForest, config: &GreedyConfig) -> Result<EmbedResult> {
    let start = std::time::Instant::now();
    labeling.require_zero_sum()?;
    let greedy = greedy_embed(labeling, forest, config)?;
    let prop2 = prop2_embed(labeling, forest)?;
    let mut best = if prop2.c_value.abs() < greedy.c_value.abs() {
        prop2
    } else {
        greedy
    };
    best.algorithm = Algorithm::Best;
    best.certificates = Certificates::evaluate(labeling, forest, best.c_value, Some(config));
    best.runtime = start.elapsed();
    Ok(best)
}

pub fn embed(
    labeling: &EdgeLabeling,
    forest: &SpanningForest,
    algorithm: Algorithm,
    config: &GreedyConfig,
) -> Result<EmbedResult> {
    match algorithm {
        Algorithm::Greedy => greedy_embed(labeling, forest, config),
        Algorithm::MonotonePlus => monotone_embed(labeling, forest, Sign::Plus),
        Algorithm::MonotoneMinus => monotone_embed(labeling, forest, Sign::Minus),
        Algorithm::Prop2 => prop2_embed(labeling, forest),
        Algorithm::Best => best_embed(labeling, forest, config),
    }
}

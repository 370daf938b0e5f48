//! Labeled complete graphs, pattern forests, embeddings, generators and
//! text formats.

mod embedding;
pub(crate) mod forest;
pub mod generate;
pub mod io;
mod labeling;

pub(crate) use embedding::check_dims;
pub use embedding::{copy_sum, Embedding};
pub use forest::{SimpleEdgeGraph, SpanningForest};
pub use labeling::{zero_sum_feasible, EdgeLabeling};

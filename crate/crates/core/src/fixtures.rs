//! Small hand-checkable instances shared by tests and examples.

use crate::graph::{EdgeLabeling, SpanningForest};

/// Zero-sum labeling of K_4: edges at vertex 1 are +1, the rest -1.
pub fn l4() -> EdgeLabeling {
    EdgeLabeling::from_triples(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 2, -1), (1, 3, -1), (2, 3, -1)])
        .expect("valid fixture")
}

/// Path 1-2-3 plus isolated vertex 4.
pub fn p3() -> SpanningForest {
    SpanningForest::new(4, [(0, 1), (1, 2)]).expect("valid fixture")
}

/// Star K_{1,3} centered at vertex 1.
pub fn star4() -> SpanningForest {
    SpanningForest::new(4, [(0, 1), (0, 2), (0, 3)]).expect("valid fixture")
}

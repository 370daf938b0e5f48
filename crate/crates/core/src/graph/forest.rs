use crate::error::{Error, Result};

/// Disjoint-set forest with path halving and union by size.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already connected.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

/// A simple undirected graph on `0..n` given by an edge list, with sorted
/// adjacency lists and degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleEdgeGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl SimpleEdgeGraph {
    /// Normalizes every edge to `u < v`, sorts the edge list, and rejects
    /// loops, duplicates, and out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut norm = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::MalformedInput(format!(
                    "edge ({}, {}) out of range for n = {n}",
                    u + 1,
                    v + 1
                )));
            }
            if u == v {
                return Err(Error::MalformedInput(format!("self-loop at vertex {}", u + 1)));
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::MalformedInput(format!(
                "duplicate edge ({}, {})",
                w[0].0 + 1,
                w[0].1 + 1
            )));
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &norm {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(SimpleEdgeGraph {
            n,
            edges: norm,
            adjacency,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adjacency[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adjacency[u].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }
}

/// The pattern forest `F` on vertex set `0..n`. Isolated vertices are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningForest {
    graph: SimpleEdgeGraph,
    max_degree: usize,
}

impl SpanningForest {
    /// Validates the edge list and rejects any cycle.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let graph = SimpleEdgeGraph::new(n, edges)?;
        let mut uf = UnionFind::new(n);
        for &(u, v) in graph.edges() {
            if !uf.union(u, v) {
                return Err(Error::MalformedInput(format!(
                    "edge ({}, {}) closes a cycle",
                    u + 1,
                    v + 1
                )));
            }
        }
        let max_degree = graph.max_degree();
        Ok(SpanningForest { graph, max_degree })
    }

    pub fn edgeless(n: usize) -> Self {
        SpanningForest {
            graph: SimpleEdgeGraph::new(n, []).expect("empty edge list"),
            max_degree: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        self.graph.edges()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        self.graph.neighbors(u)
    }

    pub fn degree(&self, u: usize) -> usize {
        self.graph.degree(u)
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n()).map(|u| self.degree(u)).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.graph.has_edge(u, v)
    }

    pub fn as_graph(&self) -> &SimpleEdgeGraph {
        &self.graph
    }

    /// Smallest vertex of degree at most one. Every forest with at least one
    /// vertex has one.
    pub fn low_degree_vertex(&self) -> Option<usize> {
        (0..self.n()).find(|&u| self.degree(u) <= 1)
    }
}

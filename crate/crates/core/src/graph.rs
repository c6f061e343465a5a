//! Finite directed 1-graphs without multiple edges, sources or sinks, and
//! their 0/1 vertex matrices.
//!
//! Vertex matrices use the convention `entry[target][source] = 1`, so that
//! matrix products count paths read right to left.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

impl Edge {
    pub fn new(id: impl Into<String>, source: usize, target: usize) -> Self {
        Self { id: id.into(), source, target }
    }
}

/// A finite directed graph on labelled vertices.
///
/// Edges are kept sorted by id (plain lexicographic order) so every derived
/// listing is reproducible. Construction never fails on the graph axioms;
/// use [`validate_graph`] to check them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneGraph {
    labels: Vec<String>,
    edges: Vec<Edge>,
    // n*n lookup, index = source * n + target
    lookup: Vec<Option<usize>>,
}

impl OneGraph {
    /// Builds a graph. Fails only when an edge endpoint is out of range.
    pub fn new(labels: Vec<String>, mut edges: Vec<Edge>) -> Result<Self> {
        let n = labels.len();
        for e in &edges {
            if e.source >= n || e.target >= n {
                return Err(Error::InvalidGraph(format!("edge '{}' refers to a vertex outside 0..{}", e.id, n)));
            }
        }
        edges.sort_by(|a, b| a.id.cmp(&b.id).then(a.source.cmp(&b.source)).then(a.target.cmp(&b.target)));
        let mut lookup = vec![None; n * n];
        for (k, e) in edges.iter().enumerate() {
            let slot = &mut lookup[e.source * n + e.target];
            if slot.is_none() {
                *slot = Some(k);
            }
        }
        Ok(Self { labels, edges, lookup })
    }

    /// Graph on vertices labelled `"0".."n-1"` from `(id, source, target)` triples.
    pub fn from_indexed(n: usize, edges: &[(&str, usize, usize)]) -> Result<Self> {
        let labels = (0..n).map(|v| v.to_string()).collect();
        Self::new(labels, edges.iter().map(|&(id, s, t)| Edge::new(id, s, t)).collect())
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Edges in canonical (id) order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> &Edge {
        &self.edges[index]
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.binary_search_by(|e| e.id.as_str().cmp(id)).ok()
    }

    /// Index of the edge `source -> target`, if any.
    pub fn edge_between(&self, source: usize, target: usize) -> Option<usize> {
        let n = self.vertex_count();
        if source >= n || target >= n {
            return None;
        }
        self.lookup[source * n + target]
    }

    pub fn has_edge(&self, source: usize, target: usize) -> bool {
        self.edge_between(source, target).is_some()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.target == v).count()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.source == v).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NoVertices,
    EmptyEdgeId {
        source: usize,
        target: usize,
    },
    DuplicateEdgeId {
        id: String,
    },
    MultipleEdges {
        source: usize,
        target: usize,
        ids: Vec<String>,
    },
    /// Vertex without incoming edges.
    Source {
        vertex: usize,
    },
    /// Vertex without outgoing edges.
    Sink {
        vertex: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NoVertices => write!(f, "graph has no vertices"),
            Self::EmptyEdgeId { source, target } => {
                write!(f, "edge {source}->{target} has an empty id")
            }
            Self::DuplicateEdgeId { id } => write!(f, "edge id '{id}' is used more than once"),
            Self::MultipleEdges { source, target, ids } => {
                write!(f, "multiple edges {source}->{target}: {}", ids.join(", "))
            }
            Self::Source { vertex } => write!(f, "vertex {vertex} has no incoming edge"),
            Self::Sink { vertex } => write!(f, "vertex {vertex} has no outgoing edge"),
        }
    }
}

/// Outcome of checking a graph: hard violations plus informational notes
/// (currently only loops, which are allowed).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Validation {
    pub violations: Vec<Violation>,
    pub loops: Vec<String>,
}

impl Validation {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_ok() {
            Ok(())
        } else {
            let msgs: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
            Err(Error::InvalidGraph(msgs.join("; ")))
        }
    }
}

pub fn validate_graph(g: &OneGraph) -> Validation {
    let mut out = Validation::default();
    let n = g.vertex_count();
    if n == 0 {
        out.violations.push(Violation::NoVertices);
    }
    let mut seen = HashSet::new();
    let mut by_endpoints: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
    for e in g.edges() {
        if e.id.is_empty() {
            out.violations.push(Violation::EmptyEdgeId { source: e.source, target: e.target });
        } else if !seen.insert(e.id.as_str()) {
            out.violations.push(Violation::DuplicateEdgeId { id: e.id.clone() });
        }
        by_endpoints.entry((e.source, e.target)).or_default().push(e.id.clone());
        if e.source == e.target {
            out.loops.push(e.id.clone());
        }
    }
    for ((source, target), ids) in by_endpoints {
        if ids.len() > 1 {
            out.violations.push(Violation::MultipleEdges { source, target, ids });
        }
    }
    let mut has_in = vec![false; n];
    let mut has_out = vec![false; n];
    for e in g.edges() {
        has_out[e.source] = true;
        has_in[e.target] = true;
    }
    for v in 0..n {
        if !has_in[v] {
            out.violations.push(Violation::Source { vertex: v });
        }
        if !has_out[v] {
            out.violations.push(Violation::Sink { vertex: v });
        }
    }
    out
}

/// Square matrix of non-negative integers, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<u64>,
}

/// The 0/1 vertex matrix of a graph.
pub type VertexMatrix = IntMatrix;

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix rows must have length {n}");
        Self { n, data: rows.concat() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.data[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: u64) {
        self.data[row * self.n + col] = value;
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(<[u64]>::to_vec).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn row_sum(&self, row: usize) -> u64 {
        (0..self.n).map(|j| self.get(row, j)).sum()
    }

    pub fn col_sum(&self, col: usize) -> u64 {
        (0..self.n).map(|i| self.get(i, col)).sum()
    }

    /// Product `self * rhs`; `None` on overflow.
    pub fn checked_mul(&self, rhs: &IntMatrix) -> Option<IntMatrix> {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let term = a.checked_mul(rhs.get(k, j))?;
                    let slot = &mut out.data[i * n + j];
                    *slot = slot.checked_add(term)?;
                }
            }
        }
        Some(out)
    }

    pub fn checked_pow(&self, exp: u32) -> Option<IntMatrix> {
        let mut acc = IntMatrix::identity(self.n);
        for _ in 0..exp {
            acc = acc.checked_mul(self)?;
        }
        Some(acc)
    }

    pub fn total(&self) -> u64 {
        self.data.iter().sum()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Vertex matrix with `entry[target][source] = 1` for every edge.
pub fn vertex_matrix(g: &OneGraph) -> Result<VertexMatrix> {
    validate_graph(g).into_result()?;
    let mut m = IntMatrix::zeros(g.vertex_count());
    for e in g.edges() {
        m.set(e.target, e.source, 1);
    }
    Ok(m)
}

pub fn check_commuting(a: &IntMatrix, b: &IntMatrix) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { left: a.dim(), right: b.dim() });
    }
    let ab = a.checked_mul(b).ok_or(Error::Overflow)?;
    let ba = b.checked_mul(a).ok_or(Error::Overflow)?;
    Ok(ab == ba)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairing_g1() -> OneGraph {
        // vertices 1..4 of the worked example as 0..3
        OneGraph::from_indexed(4, &[("e1", 0, 1), ("e2", 1, 0), ("e3", 3, 2), ("e4", 2, 3)]).unwrap()
    }

    fn pairing_g2() -> OneGraph {
        OneGraph::from_indexed(4, &[("f1", 3, 0), ("f2", 0, 3), ("f3", 2, 1), ("f4", 1, 2)]).unwrap()
    }

    #[test]
    fn single_loop_is_valid_and_flagged() {
        let g = OneGraph::from_indexed(1, &[("e", 0, 0)]).unwrap();
        let v = validate_graph(&g);
        assert!(v.is_ok());
        assert_eq!(v.loops, vec!["e".to_string()]);
        assert_eq!(vertex_matrix(&g).unwrap(), IntMatrix::from_rows(&[vec![1]]));
    }

    #[test]
    fn source_and_sink_are_reported() {
        let g = OneGraph::from_indexed(2, &[("e", 0, 1)]).unwrap();
        let v = validate_graph(&g);
        assert_eq!(v.violations, vec![Violation::Source { vertex: 0 }, Violation::Sink { vertex: 1 }]);
        assert!(vertex_matrix(&g).is_err());
    }

    #[test]
    fn duplicate_and_multiple_edges() {
        let g = OneGraph::from_indexed(1, &[("a", 0, 0), ("a", 0, 0), ("", 0, 0)]).unwrap();
        let v = validate_graph(&g);
        assert!(v.violations.contains(&Violation::DuplicateEdgeId { id: "a".into() }));
        assert!(v.violations.contains(&Violation::EmptyEdgeId { source: 0, target: 0 }));
        assert!(v.violations.iter().any(|x| matches!(x, Violation::MultipleEdges { .. })));
        assert!(!validate_graph(&OneGraph::from_indexed(0, &[]).unwrap()).is_ok());
    }

    #[test]
    fn out_of_range_edge_is_rejected() {
        assert!(OneGraph::from_indexed(2, &[("e", 0, 2)]).is_err());
    }

    #[test]
    fn worked_example_matrices() {
        let a1 = vertex_matrix(&pairing_g1()).unwrap();
        let a2 = vertex_matrix(&pairing_g2()).unwrap();
        assert!(validate_graph(&pairing_g1()).is_ok());
        assert_eq!(a1.rows(), vec![vec![0, 1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, 1, 0]]);
        assert_eq!(a2.rows(), vec![vec![0, 0, 0, 1], vec![0, 0, 1, 0], vec![0, 1, 0, 0], vec![1, 0, 0, 0]]);
        assert!(a1.is_symmetric());
        assert!(check_commuting(&a1, &a2).unwrap());
    }

    #[test]
    fn commuting_checks() {
        let swap = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        let shear = IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]);
        assert!(check_commuting(&IntMatrix::identity(2), &shear).unwrap());
        assert!(!check_commuting(&swap, &shear).unwrap());
        assert!(check_commuting(&swap, &IntMatrix::identity(3)).is_err());
    }

    #[test]
    fn matrix_row_is_target() {
        let g = OneGraph::from_indexed(2, &[("a", 0, 1), ("b", 1, 1), ("c", 1, 0)]).unwrap();
        let m = vertex_matrix(&g).unwrap();
        assert_eq!(m.get(1, 0), 1);
        assert_eq!(m.get(0, 1), 1);
        assert_eq!(m.get(0, 0), 0);
        assert!(!IntMatrix::from_rows(&[vec![0, 1], vec![0, 1]]).is_symmetric());
    }
}

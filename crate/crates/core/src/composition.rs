//! Composable pairs, the bijection θ of a defining triple, skeleton path
//! counts and the pullback triple `(G, G, id)`.
//!
//! Composable pairs are stored as edge indices into the owning graphs'
//! canonical (id-sorted) edge lists. A pair of `E1⋆E2` has its first edge
//! in `g1` and its second in `g2`; a pair of `E2⋆E1` the other way round.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::{check_commuting, validate_graph, vertex_matrix, IntMatrix, OneGraph};

/// Largest `m + n` accepted by [`skeleton_count`].
pub const DEFAULT_SKELETON_BOUND: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComposablePair {
    pub first: usize,
    pub second: usize,
}

impl ComposablePair {
    pub fn new(first: usize, second: usize) -> Self {
        Self { first, second }
    }
}

/// All `(e, f)` with `e` in `x`, `f` in `y` and `source(e) = target(f)`,
/// ordered by `(id(e), id(f))`.
pub fn composable_pairs(x: &OneGraph, y: &OneGraph) -> Result<Vec<ComposablePair>> {
    ensure_same_vertices(x, y)?;
    let mut out = Vec::new();
    for (i, e) in x.edges().iter().enumerate() {
        for (j, f) in y.edges().iter().enumerate() {
            if e.source == f.target {
                out.push(ComposablePair::new(i, j));
            }
        }
    }
    Ok(out)
}

fn ensure_same_vertices(x: &OneGraph, y: &OneGraph) -> Result<()> {
    if x.labels() != y.labels() {
        return Err(Error::VertexMismatch(format!("[{}] vs [{}]", x.labels().join(", "), y.labels().join(", "))));
    }
    Ok(())
}

/// θ: E1⋆E2 → E2⋆E1, stored extensionally and sorted by input pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Theta {
    entries: Vec<(ComposablePair, ComposablePair)>,
}

impl Theta {
    pub fn new(mut entries: Vec<(ComposablePair, ComposablePair)>) -> Self {
        entries.sort();
        Self { entries }
    }

    pub fn entries(&self) -> &[(ComposablePair, ComposablePair)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn apply(&self, from: ComposablePair) -> Option<ComposablePair> {
        self.entries.binary_search_by(|(f, _)| f.cmp(&from)).ok().map(|k| self.entries[k].1)
    }
}

/// Two 1-graphs on one vertex list together with θ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triple {
    pub g1: OneGraph,
    pub g2: OneGraph,
    pub theta: Theta,
}

impl Triple {
    /// Validating constructor.
    pub fn new(g1: OneGraph, g2: OneGraph, theta: Theta) -> Result<Self> {
        let t = Self::from_parts(g1, g2, theta);
        t.check()?;
        Ok(t)
    }

    /// Assembles a triple without checking any axiom.
    pub fn from_parts(g1: OneGraph, g2: OneGraph, theta: Theta) -> Self {
        Self { g1, g2, theta }
    }

    pub fn vertex_count(&self) -> usize {
        self.g1.vertex_count()
    }

    /// Every problem with the triple, in a fixed order.
    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (name, g) in [("graph1", &self.g1), ("graph2", &self.g2)] {
            for v in validate_graph(g).violations {
                out.push(format!("{name}: {v}"));
            }
        }
        if self.g1.labels() != self.g2.labels() {
            out.push("graph1 and graph2 have different vertex lists".into());
            return out;
        }
        if !out.is_empty() {
            return out;
        }
        let a1 = vertex_matrix(&self.g1).expect("validated");
        let a2 = vertex_matrix(&self.g2).expect("validated");
        match check_commuting(&a1, &a2) {
            Ok(true) => {}
            Ok(false) => out.push("vertex matrices do not commute".into()),
            Err(e) => out.push(e.to_string()),
        }
        out.extend(validate_theta(self).violations.iter().map(|v| v.describe(self)));
        out
    }

    pub fn check(&self) -> Result<()> {
        let problems = self.problems();
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidTriple(problems.join("; ")))
        }
    }

    /// `E1⋆E2` in canonical order.
    pub fn pairs12(&self) -> Vec<ComposablePair> {
        composable_pairs(&self.g1, &self.g2).unwrap_or_default()
    }

    /// `E2⋆E1` in canonical order.
    pub fn pairs21(&self) -> Vec<ComposablePair> {
        composable_pairs(&self.g2, &self.g1).unwrap_or_default()
    }

    /// Edge ids of a pair of `E1⋆E2`.
    pub fn ids12(&self, p: ComposablePair) -> (&str, &str) {
        (self.g1.edge(p.first).id.as_str(), self.g2.edge(p.second).id.as_str())
    }

    /// Edge ids of a pair of `E2⋆E1`.
    pub fn ids21(&self, p: ComposablePair) -> (&str, &str) {
        (self.g2.edge(p.first).id.as_str(), self.g1.edge(p.second).id.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThetaViolation {
    /// An input pair that is not an element of `E1⋆E2`.
    NotInDomain(ComposablePair),
    /// An output pair that is not an element of `E2⋆E1`.
    NotInCodomain(ComposablePair, ComposablePair),
    DuplicateInput(ComposablePair),
    DuplicateOutput(ComposablePair),
    Missing(ComposablePair),
    /// `t(first)` or `s(second)` differs between input and output.
    Boundary(ComposablePair, ComposablePair),
}

impl ThetaViolation {
    pub fn describe(&self, t: &Triple) -> String {
        let name12 = |p: &ComposablePair| match (t.g1.edges().get(p.first), t.g2.edges().get(p.second)) {
            (Some(a), Some(b)) => format!("({}, {})", a.id, b.id),
            _ => format!("(#{}, #{})", p.first, p.second),
        };
        let name21 = |p: &ComposablePair| match (t.g2.edges().get(p.first), t.g1.edges().get(p.second)) {
            (Some(a), Some(b)) => format!("({}, {})", a.id, b.id),
            _ => format!("(#{}, #{})", p.first, p.second),
        };
        match self {
            Self::NotInDomain(p) => format!("theta input {} is not a composable pair", name12(p)),
            Self::NotInCodomain(p, q) => {
                format!("theta maps {} to {}, which is not a composable pair", name12(p), name21(q))
            }
            Self::DuplicateInput(p) => format!("theta input {} is listed twice", name12(p)),
            Self::DuplicateOutput(q) => format!("theta output {} is hit twice", name21(q)),
            Self::Missing(p) => format!("theta is undefined on {}", name12(p)),
            Self::Boundary(p, q) => {
                format!("theta maps {} to {}, which has a different boundary", name12(p), name21(q))
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ThetaValidation {
    pub violations: Vec<ThetaViolation>,
}

impl ThetaValidation {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn is_pair(x: &OneGraph, y: &OneGraph, p: ComposablePair) -> bool {
    match (x.edges().get(p.first), y.edges().get(p.second)) {
        (Some(e), Some(f)) => e.source == f.target,
        _ => false,
    }
}

pub fn validate_theta(t: &Triple) -> ThetaValidation {
    let mut out = ThetaValidation::default();
    let mut inputs = HashSet::new();
    let mut outputs = HashSet::new();
    for &(from, to) in t.theta.entries() {
        if !is_pair(&t.g1, &t.g2, from) {
            out.violations.push(ThetaViolation::NotInDomain(from));
            continue;
        }
        if !inputs.insert(from) {
            out.violations.push(ThetaViolation::DuplicateInput(from));
        }
        if !is_pair(&t.g2, &t.g1, to) {
            out.violations.push(ThetaViolation::NotInCodomain(from, to));
            continue;
        }
        if !outputs.insert(to) {
            out.violations.push(ThetaViolation::DuplicateOutput(to));
        }
        let (alpha, beta) = (t.g1.edge(from.first), t.g2.edge(from.second));
        let (mu, nu) = (t.g2.edge(to.first), t.g1.edge(to.second));
        if alpha.target != mu.target || beta.source != nu.source {
            out.violations.push(ThetaViolation::Boundary(from, to));
        }
    }
    if let Ok(pairs) = composable_pairs(&t.g1, &t.g2) {
        for p in pairs {
            if !inputs.contains(&p) {
                out.violations.push(ThetaViolation::Missing(p));
            }
        }
    }
    out
}

type BlockKey = (usize, usize);

/// The `E1⋆E2` side and the `E2⋆E1` side of one boundary block.
pub type Block = (Vec<ComposablePair>, Vec<ComposablePair>);

/// Composable pairs grouped by outer boundary `(t(first), s(second))`.
fn blocks(x: &OneGraph, y: &OneGraph) -> Result<BTreeMap<BlockKey, Block>> {
    let a = vertex_matrix(x)?;
    let b = vertex_matrix(y)?;
    if !check_commuting(&a, &b)? {
        return Err(Error::NonCommuting);
    }
    let mut out: BTreeMap<BlockKey, Block> = BTreeMap::new();
    for p in composable_pairs(x, y)? {
        let key = (x.edge(p.first).target, y.edge(p.second).source);
        out.entry(key).or_default().0.push(p);
    }
    for q in composable_pairs(y, x)? {
        let key = (y.edge(q.first).target, x.edge(q.second).source);
        out.entry(key).or_default().1.push(q);
    }
    if out.values().any(|(l, r)| l.len() != r.len()) {
        return Err(Error::Internal("boundary blocks of unequal size despite commuting matrices".into()));
    }
    Ok(out)
}

/// The boundary blocks as `(E1⋆E2 pairs, E2⋆E1 pairs)`, in key order. A valid
/// θ is any family of bijections between the two sides of each block.
pub fn theta_blocks(x: &OneGraph, y: &OneGraph) -> Result<Vec<Block>> {
    Ok(blocks(x, y)?.into_values().collect())
}

/// Sizes of the boundary blocks, keyed by `(target, source)`.
pub fn block_census(x: &OneGraph, y: &OneGraph) -> Result<BTreeMap<BlockKey, usize>> {
    Ok(blocks(x, y)?.into_iter().map(|(k, (l, _))| (k, l.len())).collect())
}

/// Number of boundary-preserving bijections `E1⋆E2 → E2⋆E1`: the product
/// of the factorials of the block sizes.
pub fn count_thetas(x: &OneGraph, y: &OneGraph) -> Result<BigUint> {
    let mut total = BigUint::one();
    for (_, size) in block_census(x, y)? {
        for k in 2..=size {
            total *= BigUint::from(k);
        }
    }
    Ok(total)
}

/// Streams every valid θ exactly once. Each block runs through its
/// permutations in lexicographic order; the last block varies fastest.
pub fn enumerate_thetas(x: &OneGraph, y: &OneGraph, limit: Option<usize>) -> Result<ThetaIter> {
    let blocks: Vec<_> = blocks(x, y)?.into_values().collect();
    let perms = blocks.iter().map(|(l, _)| (0..l.len()).collect()).collect();
    Ok(ThetaIter { blocks, perms, done: false, remaining: limit })
}

pub struct ThetaIter {
    blocks: Vec<(Vec<ComposablePair>, Vec<ComposablePair>)>,
    perms: Vec<Vec<usize>>,
    done: bool,
    remaining: Option<usize>,
}

impl Iterator for ThetaIter {
    type Item = Theta;

    fn next(&mut self) -> Option<Theta> {
        if self.done || self.remaining == Some(0) {
            return None;
        }
        if let Some(r) = self.remaining.as_mut() {
            *r -= 1;
        }
        let mut entries = Vec::new();
        for ((from, to), perm) in self.blocks.iter().zip(&self.perms) {
            for (k, &j) in perm.iter().enumerate() {
                entries.push((from[k], to[j]));
            }
        }
        // advance the odometer
        self.done = true;
        for perm in self.perms.iter_mut().rev() {
            if next_permutation(perm) {
                self.done = false;
                break;
            }
        }
        Some(Theta::new(entries))
    }
}

/// Lexicographic successor in place; on the last permutation resets to the
/// first and returns `false`.
fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        p.reverse();
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Number of degree-`(m, n)` morphisms from `v` to `w`, as the matrix
/// `A1^m A2^n` indexed `[w][v]`.
pub fn skeleton_count(t: &Triple, m: u32, n: u32) -> Result<IntMatrix> {
    skeleton_count_bounded(t, m, n, DEFAULT_SKELETON_BOUND)
}

pub fn skeleton_count_bounded(t: &Triple, m: u32, n: u32, max_total: u32) -> Result<IntMatrix> {
    if m + n > max_total {
        return Err(Error::SkeletonBound { m, n, max: max_total });
    }
    t.check()?;
    let a1 = vertex_matrix(&t.g1)?;
    let a2 = vertex_matrix(&t.g2)?;
    let left = a1.checked_pow(m).ok_or(Error::Overflow)?;
    let right = a2.checked_pow(n).ok_or(Error::Overflow)?;
    left.checked_mul(&right).ok_or(Error::Overflow)
}

/// The triple `(G, G, id)` of the pullback along `(m, n) ↦ m + n`.
pub fn pullback(g: &OneGraph) -> Result<Triple> {
    validate_graph(g).into_result()?;
    let pairs = composable_pairs(g, g)?;
    let theta = Theta::new(pairs.into_iter().map(|p| (p, p)).collect());
    Triple::new(g.clone(), g.clone(), theta)
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &(from, to) in self.theta.entries() {
            let (a, b) = self.ids12(from);
            let (c, d) = self.ids21(to);
            writeln!(f, "({a}, {b}) -> ({c}, {d})")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn ids(t: &Triple, pairs: &[ComposablePair]) -> Vec<(String, String)> {
        pairs
            .iter()
            .map(|&p| {
                let (a, b) = t.ids12(p);
                (a.to_string(), b.to_string())
            })
            .collect()
    }

    #[test]
    fn worked_example_pairs() {
        let t = fixtures::example_b();
        let got = ids(&t, &t.pairs12());
        let want: Vec<(String, String)> = [("e1", "f1"), ("e2", "f3"), ("e3", "f2"), ("e4", "f4")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        assert_eq!(got, want);
        let back: Vec<_> = t.pairs21().iter().map(|&p| t.ids21(p)).collect();
        assert_eq!(back, vec![("f1", "e4"), ("f2", "e2"), ("f3", "e3"), ("f4", "e1")]);
    }

    #[test]
    fn loop_pairs_with_itself() {
        let g = OneGraph::from_indexed(1, &[("e", 0, 0)]).unwrap();
        assert_eq!(composable_pairs(&g, &g).unwrap(), vec![ComposablePair::new(0, 0)]);
        let t = pullback(&g).unwrap();
        assert_eq!(t.theta.len(), 1);
        assert_eq!(count_thetas(&g, &g).unwrap(), BigUint::one());
        let all: Vec<_> = enumerate_thetas(&g, &g, None).unwrap().collect();
        assert_eq!(all, vec![t.theta.clone()]);
    }

    #[test]
    fn mismatched_vertices_are_rejected() {
        let g = OneGraph::from_indexed(1, &[("e", 0, 0)]).unwrap();
        let h = OneGraph::new(vec!["x".into()], vec![crate::graph::Edge::new("e", 0, 0)]).unwrap();
        assert!(composable_pairs(&g, &h).is_err());
    }

    #[test]
    fn worked_example_theta_is_valid() {
        let t = fixtures::example_b();
        assert!(validate_theta(&t).is_ok());
        assert!(t.check().is_ok());
    }

    #[test]
    fn altered_theta_breaks_boundary() {
        let t = fixtures::example_b();
        // send (e1, f1) to (f1, e4): t(e1) = 2 but t(f1) = 1
        let e1f1 = t.pairs12()[0];
        let f1e4 = t.pairs21()[0];
        let mut entries = t.theta.entries().to_vec();
        let old = entries[0].1;
        entries[0].1 = f1e4;
        // keep it a bijection by swapping the displaced image in
        for e in entries.iter_mut().skip(1) {
            if e.1 == f1e4 {
                e.1 = old;
            }
        }
        let bad = Triple::from_parts(t.g1.clone(), t.g2.clone(), Theta::new(entries));
        let v = validate_theta(&bad);
        assert!(v.violations.contains(&ThetaViolation::Boundary(e1f1, f1e4)));
        assert!(bad.check().is_err());
    }

    #[test]
    fn missing_and_duplicate_entries() {
        let t = fixtures::example_b();
        let mut entries = t.theta.entries().to_vec();
        let dup = entries[0];
        entries[1] = (entries[1].0, dup.1);
        entries.pop();
        let bad = Triple::from_parts(t.g1.clone(), t.g2.clone(), Theta::new(entries));
        let v = validate_theta(&bad);
        assert!(v.violations.contains(&ThetaViolation::DuplicateOutput(dup.1)));
        assert!(v.violations.iter().any(|x| matches!(x, ThetaViolation::Missing(_))));
    }

    #[test]
    fn worked_example_theta_is_unique() {
        let t = fixtures::example_b();
        let all: Vec<_> = enumerate_thetas(&t.g1, &t.g2, None).unwrap().collect();
        assert_eq!(all, vec![t.theta.clone()]);
        assert_eq!(count_thetas(&t.g1, &t.g2).unwrap(), BigUint::one());
    }

    #[test]
    fn complete_graph_block_census() {
        let k4 = fixtures::complete_graph(4);
        let census = block_census(&k4, &k4).unwrap();
        let twos = census.values().filter(|&&s| s == 2).count();
        let threes = census.values().filter(|&&s| s == 3).count();
        assert_eq!((twos, threes, census.len()), (12, 4, 16));
        assert_eq!(count_thetas(&k4, &k4).unwrap(), BigUint::from(5_308_416u32));
        assert_eq!(enumerate_thetas(&k4, &k4, Some(1000)).unwrap().count(), 1000);
    }

    #[test]
    fn non_commuting_graphs_are_rejected() {
        // a 3-cycle and a graph with a loop at 0 only plus a 2-cycle do not commute
        let c3 = OneGraph::from_indexed(3, &[("a", 0, 1), ("b", 1, 2), ("c", 2, 0)]).unwrap();
        let other = OneGraph::from_indexed(3, &[("x", 0, 0), ("y", 1, 2), ("z", 2, 1)]).unwrap();
        assert!(matches!(count_thetas(&c3, &other), Err(Error::NonCommuting)));
        assert!(enumerate_thetas(&c3, &other, None).is_err());
    }

    #[test]
    fn next_permutation_cycles() {
        let mut p = vec![0, 1, 2];
        let mut seen = vec![p.clone()];
        while next_permutation(&mut p) {
            seen.push(p.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(p, vec![0, 1, 2]);
    }

    #[test]
    fn skeleton_counts_small_cases() {
        let t = fixtures::example_b();
        assert_eq!(skeleton_count(&t, 0, 0).unwrap(), IntMatrix::identity(4));
        let a1 = vertex_matrix(&t.g1).unwrap();
        let a2 = vertex_matrix(&t.g2).unwrap();
        assert_eq!(skeleton_count(&t, 1, 1).unwrap(), a1.checked_mul(&a2).unwrap());
        let lp = pullback(&OneGraph::from_indexed(1, &[("e", 0, 0)]).unwrap()).unwrap();
        assert_eq!(skeleton_count(&lp, 3, 4).unwrap(), IntMatrix::identity(1));
        assert!(matches!(skeleton_count(&t, 7, 6), Err(Error::SkeletonBound { .. })));
    }

    #[test]
    fn pullback_of_worked_graph() {
        let t = fixtures::example_b();
        let pb = pullback(&t.g1).unwrap();
        assert_eq!(pb.theta.len(), 4);
        assert!(validate_theta(&pb).is_ok());
        let two_nodes = OneGraph::from_indexed(2, &[("e", 0, 1)]).unwrap();
        assert!(pullback(&two_nodes).is_err());
    }
}

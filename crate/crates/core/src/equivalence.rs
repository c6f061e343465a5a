//! Equivalence of triples under vertex permutations and the classical
//! automorphism group of a triple.
//!
//! A witness `T` for `is_equivalent(t1, t2)` sends every edge `a -> b` of a
//! graph of `t1` to the edge `T(a) -> T(b)` of the corresponding graph of
//! `t2` (and conversely), and intertwines the two θ maps on composable pairs.
//! Without multiple edges the edge images are determined by `T`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::composition::{ComposablePair, Triple};
use crate::error::{Error, Result};
use crate::graph::OneGraph;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// `None` unless `images` is a bijection of `0..len`.
    pub fn new(images: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self { images: (0..n).collect() }
    }

    /// Swaps `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(a, b);
        p
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, v: usize) -> usize {
        self.images[v]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&v| self.images[v]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (v, &w) in self.images.iter().enumerate() {
            inv[w] = v;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(v, &w)| v == w)
    }

    pub fn order(&self) -> usize {
        let mut seen = vec![false; self.images.len()];
        let mut order = 1;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                v = self.images[v];
                len += 1;
            }
            order = num_integer::lcm(order, len);
        }
        order
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = String;

    fn try_from(images: Vec<usize>) -> std::result::Result<Self, String> {
        Permutation::new(images).ok_or_else(|| "not a permutation of 0..n".to_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessMode {
    First,
    All,
}

fn degree_signature(t: &Triple, v: usize) -> [usize; 6] {
    [
        t.g1.in_degree(v),
        t.g1.out_degree(v),
        t.g2.in_degree(v),
        t.g2.out_degree(v),
        usize::from(t.g1.has_edge(v, v)),
        usize::from(t.g2.has_edge(v, v)),
    ]
}

fn adjacency_agrees(x: &OneGraph, y: &OneGraph, a: usize, b: usize, ta: usize, tb: usize) -> bool {
    x.has_edge(a, b) == y.has_edge(ta, tb) && x.has_edge(b, a) == y.has_edge(tb, ta)
}

fn edge_image(x: &OneGraph, y: &OneGraph, p: &Permutation, e: usize) -> Option<usize> {
    let edge = x.edge(e);
    y.edge_between(p.apply(edge.source), p.apply(edge.target))
}

/// θ-compatibility of a vertex bijection already known to map both graphs.
fn theta_compatible(t1: &Triple, t2: &Triple, p: &Permutation) -> bool {
    for &(from, to) in t1.theta.entries() {
        let mapped_from = match (edge_image(&t1.g1, &t2.g1, p, from.first), edge_image(&t1.g2, &t2.g2, p, from.second))
        {
            (Some(a), Some(b)) => ComposablePair::new(a, b),
            _ => return false,
        };
        let mapped_to = match (edge_image(&t1.g2, &t2.g2, p, to.first), edge_image(&t1.g1, &t2.g1, p, to.second)) {
            (Some(a), Some(b)) => ComposablePair::new(a, b),
            _ => return false,
        };
        if t2.theta.apply(mapped_from) != Some(mapped_to) {
            return false;
        }
    }
    true
}

struct Search<'a> {
    t1: &'a Triple,
    t2: &'a Triple,
    sig1: Vec<[usize; 6]>,
    sig2: Vec<[usize; 6]>,
    assigned: Vec<usize>,
    used: Vec<bool>,
    mode: WitnessMode,
    found: Vec<Permutation>,
}

impl Search<'_> {
    fn run(&mut self, v: usize) {
        if self.mode == WitnessMode::First && !self.found.is_empty() {
            return;
        }
        let n = self.sig1.len();
        if v == n {
            let p = Permutation { images: self.assigned.clone() };
            if self.t1.g1.edges().len() == self.t2.g1.edges().len()
                && self.t1.g2.edges().len() == self.t2.g2.edges().len()
                && theta_compatible(self.t1, self.t2, &p)
            {
                self.found.push(p);
            }
            return;
        }
        for w in 0..n {
            if self.used[w] || self.sig1[v] != self.sig2[w] {
                continue;
            }
            let consistent = (0..v).all(|u| {
                let tu = self.assigned[u];
                adjacency_agrees(&self.t1.g1, &self.t2.g1, u, v, tu, w)
                    && adjacency_agrees(&self.t1.g2, &self.t2.g2, u, v, tu, w)
            });
            if !consistent {
                continue;
            }
            self.assigned.push(w);
            self.used[w] = true;
            self.run(v + 1);
            self.used[w] = false;
            self.assigned.pop();
        }
    }
}

/// Every (or the first) vertex permutation carrying `t1` onto `t2`, sorted.
/// An empty list means the triples are not equivalent.
pub fn is_equivalent(t1: &Triple, t2: &Triple, mode: WitnessMode) -> Result<Vec<Permutation>> {
    let n = t1.vertex_count();
    if n != t2.vertex_count() {
        return Err(Error::VertexMismatch(format!("{} vs {} vertices", n, t2.vertex_count())));
    }
    let mut search = Search {
        t1,
        t2,
        sig1: (0..n).map(|v| degree_signature(t1, v)).collect(),
        sig2: (0..n).map(|v| degree_signature(t2, v)).collect(),
        assigned: Vec::with_capacity(n),
        used: vec![false; n],
        mode,
        found: Vec::new(),
    };
    search.run(0);
    let mut found = search.found;
    found.sort();
    Ok(found)
}

/// Moves vertex `v` to `p(v)` in both graphs, keeping edge ids, and carries
/// θ along. `p` is a witness of `is_equivalent(t, result)`.
pub fn conjugate_triple(t: &Triple, p: &Permutation) -> Result<Triple> {
    let n = t.vertex_count();
    if p.len() != n {
        return Err(Error::PermutationSize { expected: n, got: p.len() });
    }
    let move_graph = |g: &OneGraph| {
        let edges = g
            .edges()
            .iter()
            .map(|e| crate::graph::Edge::new(e.id.clone(), p.apply(e.source), p.apply(e.target)))
            .collect();
        OneGraph::new(g.labels().to_vec(), edges)
    };
    // edge ids, and hence edge indices, are unchanged; θ carries over verbatim
    Ok(Triple::from_parts(move_graph(&t.g1)?, move_graph(&t.g2)?, t.theta.clone()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupReport {
    pub elements: Vec<Permutation>,
    pub order: usize,
    pub abelian: bool,
    pub element_orders: Vec<usize>,
    pub name: String,
}

impl GroupReport {
    /// Checks the group axioms and computes the invariants.
    pub fn from_elements(mut elements: Vec<Permutation>) -> Result<Self> {
        elements.sort();
        elements.dedup();
        let n = elements.first().map_or(0, Permutation::len);
        if elements.is_empty() || !elements.contains(&Permutation::identity(n)) {
            return Err(Error::Internal("automorphism set lacks the identity".into()));
        }
        for a in &elements {
            if elements.binary_search(&a.inverse()).is_err() {
                return Err(Error::Internal(format!("automorphism set not closed under inverse at {a}")));
            }
            for b in &elements {
                if elements.binary_search(&a.compose(b)).is_err() {
                    return Err(Error::Internal(format!("automorphism set not closed at {a} * {b}")));
                }
            }
        }
        let abelian = elements.iter().all(|a| elements.iter().all(|b| a.compose(b) == b.compose(a)));
        let mut element_orders: Vec<usize> = elements.iter().map(Permutation::order).collect();
        element_orders.sort_unstable();
        let mut report = GroupReport { order: elements.len(), elements, abelian, element_orders, name: String::new() };
        report.name = identify_group(&report);
        Ok(report)
    }
}

/// The classical automorphism group: all self-equivalences of `t`.
pub fn automorphisms(t: &Triple) -> Result<GroupReport> {
    GroupReport::from_elements(is_equivalent(t, t, WitnessMode::All)?)
}

/// Names a group from its order, commutativity and element-order multiset.
/// These invariants separate all groups of order at most 15; larger groups
/// are named only when they are a full symmetric group on their points.
pub fn identify_group(g: &GroupReport) -> String {
    let n = g.order;
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &o in &g.element_orders {
        *counts.entry(o).or_default() += 1;
    }
    let count = |o: usize| counts.get(&o).copied().unwrap_or(0);
    let max = g.element_orders.iter().copied().max().unwrap_or(1);
    let small = match (n, g.abelian) {
        (1, _) => Some("trivial".to_string()),
        (_, true) if max == n && n <= 15 => Some(format!("Z{n}")),
        (4, true) => Some("Z2 x Z2".into()),
        (6, false) => Some("S3".into()),
        (8, true) if max == 4 => Some("Z4 x Z2".into()),
        (8, true) => Some("Z2 x Z2 x Z2".into()),
        (8, false) if count(2) == 5 => Some("D4".into()),
        (8, false) => Some("Q8".into()),
        (9, true) => Some("Z3 x Z3".into()),
        (10, false) => Some("D5".into()),
        (12, true) => Some("Z6 x Z2".into()),
        (12, false) if count(6) == 0 => Some("A4".into()),
        (12, false) if count(2) == 7 => Some("D6".into()),
        (12, false) => Some("Dic3".into()),
        (14, false) => Some("D7".into()),
        _ => None,
    };
    if let Some(name) = small {
        return name;
    }
    let points = g.elements.first().map_or(0, Permutation::len);
    if (1..=points).product::<usize>() == n {
        return format!("S{points}");
    }
    format!("order-{n} group")
}

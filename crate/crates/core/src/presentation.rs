//! The defining presentation of the quantum automorphism group of a triple:
//! an `n x n` grid of generators `q_ij` and tagged polynomial relations.
//!
//! Generator semantics: the coaction sends `δ_i` to `Σ_j δ_j ⊗ q_ji`, so the
//! column index is the pre-image vertex. At a classical automorphism `σ` the
//! generators evaluate to `q_ij = [σ(j) = i]`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::composition::Triple;
use crate::equivalence::Permutation;
use crate::error::{Error, Result};
use crate::graph::OneGraph;
use crate::ncalgebra::{Generator, NcPoly, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RelationTag {
    #[serde(rename = "idempotent")]
    Idempotent,
    #[serde(rename = "row-orthogonal")]
    RowOrthogonal,
    #[serde(rename = "col-orthogonal")]
    ColOrthogonal,
    #[serde(rename = "row-sum")]
    RowSum,
    #[serde(rename = "col-sum")]
    ColSum,
    #[serde(rename = "edge-vanishing-G1")]
    EdgeVanishingG1,
    #[serde(rename = "edge-vanishing-G2")]
    EdgeVanishingG2,
    #[serde(rename = "commutant-G1")]
    CommutantG1,
    #[serde(rename = "commutant-G2")]
    CommutantG2,
    #[serde(rename = "theta")]
    Theta,
}

impl RelationTag {
    pub const ALL: [RelationTag; 10] = [
        RelationTag::Idempotent,
        RelationTag::RowOrthogonal,
        RelationTag::ColOrthogonal,
        RelationTag::RowSum,
        RelationTag::ColSum,
        RelationTag::EdgeVanishingG1,
        RelationTag::EdgeVanishingG2,
        RelationTag::CommutantG1,
        RelationTag::CommutantG2,
        RelationTag::Theta,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RelationTag::Idempotent => "idempotent",
            RelationTag::RowOrthogonal => "row-orthogonal",
            RelationTag::ColOrthogonal => "col-orthogonal",
            RelationTag::RowSum => "row-sum",
            RelationTag::ColSum => "col-sum",
            RelationTag::EdgeVanishingG1 => "edge-vanishing-G1",
            RelationTag::EdgeVanishingG2 => "edge-vanishing-G2",
            RelationTag::CommutantG1 => "commutant-G1",
            RelationTag::CommutantG2 => "commutant-G2",
            RelationTag::Theta => "theta",
        }
    }
}

impl fmt::Display for RelationTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What produced a relation. Vertex indices are 0-based; edges are named by id.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Source {
    /// `q_ij² − q_ij`.
    Entry { row: usize, col: usize },
    /// A product of two entries in the same row or column.
    EntryPair { first: [usize; 2], second: [usize; 2] },
    /// Row or column sum at `index`.
    Line { index: usize },
    /// One of the four vanishing products for edge `edge` and non-edge
    /// `(non_edge[0], non_edge[1])`; `form` is 0..4.
    EdgeNonEdge { edge: String, non_edge: [usize; 2], form: u8 },
    /// Entry `(row, col)` of `QA − AQ`.
    Commutant { row: usize, col: usize },
    /// The pair of composable pairs `(first, second)`, each `[g1 edge, g2 edge]`.
    ThetaPairs { first: [String; 2], second: [String; 2] },
}

impl Source {
    fn relabel(&self, p: &Permutation) -> Source {
        let v = |i: usize| p.apply(i);
        match self {
            Source::Entry { row, col } => Source::Entry { row: v(*row), col: v(*col) },
            Source::EntryPair { first, second } => {
                Source::EntryPair { first: [v(first[0]), v(first[1])], second: [v(second[0]), v(second[1])] }
            }
            Source::Line { index } => Source::Line { index: v(*index) },
            Source::EdgeNonEdge { edge, non_edge, form } => {
                Source::EdgeNonEdge { edge: edge.clone(), non_edge: [v(non_edge[0]), v(non_edge[1])], form: *form }
            }
            Source::Commutant { row, col } => Source::Commutant { row: v(*row), col: v(*col) },
            Source::ThetaPairs { .. } => self.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Provenance {
    pub tag: RelationTag,
    #[serde(flatten)]
    pub source: Source,
}

/// `poly = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Relation {
    pub tag: RelationTag,
    pub provenance: Vec<Provenance>,
    pub poly: NcPoly,
}

impl Relation {
    fn new(tag: RelationTag, source: Source, poly: NcPoly) -> Self {
        Relation { tag, provenance: vec![Provenance { tag, source }], poly }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Presentation {
    pub n: usize,
    pub relations: Vec<Relation>,
}

fn q(i: usize, j: usize) -> Generator {
    Generator::new(i, j)
}

fn mono(letters: &[Generator]) -> NcPoly {
    NcPoly::word(Word(letters.to_vec()))
}

fn int(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

fn magic_relations(n: usize, out: &mut Vec<Relation>) {
    for i in 0..n {
        for j in 0..n {
            let poly = mono(&[q(i, j), q(i, j)]) - mono(&[q(i, j)]);
            out.push(Relation::new(RelationTag::Idempotent, Source::Entry { row: i, col: j }, poly));
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in (0..n).filter(|&k| k != j) {
                out.push(Relation::new(
                    RelationTag::RowOrthogonal,
                    Source::EntryPair { first: [i, j], second: [i, k] },
                    mono(&[q(i, j), q(i, k)]),
                ));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in (0..n).filter(|&k| k != j) {
                out.push(Relation::new(
                    RelationTag::ColOrthogonal,
                    Source::EntryPair { first: [j, i], second: [k, i] },
                    mono(&[q(j, i), q(k, i)]),
                ));
            }
        }
    }
    for i in 0..n {
        let poly = (0..n).fold(NcPoly::zero(), |acc, l| acc + NcPoly::generator(i, l)) - NcPoly::one();
        out.push(Relation::new(RelationTag::RowSum, Source::Line { index: i }, poly));
    }
    for i in 0..n {
        let poly = (0..n).fold(NcPoly::zero(), |acc, l| acc + NcPoly::generator(l, i)) - NcPoly::one();
        out.push(Relation::new(RelationTag::ColSum, Source::Line { index: i }, poly));
    }
}

fn edge_vanishing(g: &OneGraph, tag: RelationTag, out: &mut Vec<Relation>) {
    let n = g.vertex_count();
    for e in g.edges() {
        let (s, t) = (e.source, e.target);
        for i in 0..n {
            for k in 0..n {
                if g.has_edge(i, k) {
                    continue;
                }
                let forms = [[q(s, i), q(t, k)], [q(t, k), q(s, i)], [q(i, s), q(k, t)], [q(k, t), q(i, s)]];
                for (form, w) in forms.iter().enumerate() {
                    out.push(Relation::new(
                        tag,
                        Source::EdgeNonEdge { edge: e.id.clone(), non_edge: [i, k], form: form as u8 },
                        mono(w),
                    ));
                }
            }
        }
    }
}

fn commutant(g: &OneGraph, tag: RelationTag, out: &mut Vec<Relation>) {
    let n = g.vertex_count();
    // Adjacency count with row = target, column = source.
    let mut a = vec![vec![0i64; n]; n];
    for e in g.edges() {
        a[e.target][e.source] += 1;
    }
    for i in 0..n {
        for j in 0..n {
            let mut poly = NcPoly::zero();
            for (k, row) in a.iter().enumerate() {
                poly = poly + NcPoly::term(int(row[j]), Word::letter(q(i, k)));
                poly = poly - NcPoly::term(int(a[i][k]), Word::letter(q(k, j)));
            }
            out.push(Relation::new(tag, Source::Commutant { row: i, col: j }, poly));
        }
    }
}

fn theta_relations(t: &Triple, out: &mut Vec<Relation>) {
    let (g1, g2) = (&t.g1, &t.g2);
    let entries = t.theta.entries();
    for &(p, tp) in entries {
        for &(p2, tp2) in entries {
            // p = (α, β) in E1⋆E2, θ(p) = (μ, ν) in E2⋆E1.
            let (alpha, beta) = (g1.edge(p.first), g2.edge(p.second));
            let (mu, nu) = (g2.edge(tp.first), g1.edge(tp.second));
            let (alpha2, beta2) = (g1.edge(p2.first), g2.edge(p2.second));
            let (mu2, nu2) = (g2.edge(tp2.first), g1.edge(tp2.second));
            let lhs = mono(&[q(mu2.target, mu.target), q(mu2.source, mu.source), q(nu2.source, nu.source)]);
            let rhs =
                mono(&[q(alpha2.target, alpha.target), q(alpha2.source, alpha.source), q(beta2.source, beta.source)]);
            let (a, b) = t.ids12(p);
            let (c, d) = t.ids12(p2);
            out.push(Relation::new(
                RelationTag::Theta,
                Source::ThetaPairs { first: [a.into(), b.into()], second: [c.into(), d.into()] },
                lhs - rhs,
            ));
        }
    }
}

/// All relation families for a triple, as written (not canonicalized).
///
/// Relations that are zero as written (θ-relations of an identity θ, or
/// commutant entries that cancel) are kept so that family counts are exact;
/// [`canonicalize`] drops them.
pub fn generate(t: &Triple) -> Result<Presentation> {
    t.check()?;
    let n = t.vertex_count();
    let mut relations = Vec::new();
    magic_relations(n, &mut relations);
    edge_vanishing(&t.g1, RelationTag::EdgeVanishingG1, &mut relations);
    edge_vanishing(&t.g2, RelationTag::EdgeVanishingG2, &mut relations);
    commutant(&t.g1, RelationTag::CommutantG1, &mut relations);
    commutant(&t.g2, RelationTag::CommutantG2, &mut relations);
    theta_relations(t, &mut relations);
    Ok(Presentation { n, relations })
}

/// The presentation of the quantum automorphism group of a single graph:
/// magic relations plus the edge-vanishing and commutant families of `g`.
pub fn generate_graph(g: &OneGraph) -> Presentation {
    let n = g.vertex_count();
    let mut relations = Vec::new();
    magic_relations(n, &mut relations);
    edge_vanishing(g, RelationTag::EdgeVanishingG1, &mut relations);
    commutant(g, RelationTag::CommutantG1, &mut relations);
    Presentation { n, relations }
}

/// Monic polys, zeros dropped, duplicates merged (smallest tag wins, all
/// provenance kept), sorted by tag then poly.
pub fn canonicalize(p: &Presentation) -> Presentation {
    let mut merged: BTreeMap<NcPoly, (RelationTag, Vec<Provenance>)> = BTreeMap::new();
    for r in &p.relations {
        let poly = r.poly.monic();
        if poly.is_zero() {
            continue;
        }
        let slot = merged.entry(poly).or_insert_with(|| (r.tag, Vec::new()));
        slot.0 = slot.0.min(r.tag);
        slot.1.extend(r.provenance.iter().cloned());
    }
    let mut relations: Vec<Relation> = merged
        .into_iter()
        .map(|(poly, (tag, mut provenance))| {
            provenance.sort();
            provenance.dedup();
            Relation { tag, provenance, poly }
        })
        .collect();
    relations.sort_by(|a, b| a.tag.cmp(&b.tag).then_with(|| a.poly.cmp(&b.poly)));
    Presentation { n: p.n, relations }
}

/// Relabels `q_ij ↦ q_{perm(i), perm(j)}` and vertex indices in provenance.
pub fn conjugate_presentation(p: &Presentation, perm: &Permutation) -> Result<Presentation> {
    if perm.len() != p.n {
        return Err(Error::PermutationSize { expected: p.n, got: perm.len() });
    }
    let relabel = |g: Generator| q(perm.apply(g.row()), perm.apply(g.col()));
    let relations = p
        .relations
        .iter()
        .map(|r| Relation {
            tag: r.tag,
            provenance: r
                .provenance
                .iter()
                .map(|pr| Provenance { tag: pr.tag, source: pr.source.relabel(perm) })
                .collect(),
            poly: r.poly.map_generators(relabel),
        })
        .collect();
    Ok(Presentation { n: p.n, relations })
}

impl Presentation {
    pub fn count(&self, tag: RelationTag) -> usize {
        self.relations.iter().filter(|r| r.tag == tag).count()
    }

    pub fn without(&self, tag: RelationTag) -> Presentation {
        Presentation { n: self.n, relations: self.relations.iter().filter(|r| r.tag != tag).cloned().collect() }
    }

    /// The relation polys as a sorted, deduplicated list.
    pub fn poly_set(&self) -> Vec<NcPoly> {
        let mut v: Vec<NcPoly> = self.relations.iter().map(|r| r.poly.clone()).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn max_degree(&self) -> usize {
        self.relations.iter().map(|r| r.poly.degree()).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        crate::json::to_canonical_json(self)
    }

    pub fn from_json(text: &str) -> Result<Presentation> {
        let p: Presentation = crate::json::parse_doc(text)?;
        for r in &p.relations {
            for w in r.poly.words() {
                if let Some(g) = w.letters().iter().find(|g| g.row() >= p.n || g.col() >= p.n) {
                    return Err(Error::Parse(format!("generator {g} out of range for n = {}", p.n)));
                }
            }
        }
        Ok(p)
    }
}

/// Whether every relation vanishes at the classical point of `sigma`
/// (`q_ij = [σ(j) = i]`).
pub fn vanishes_at(p: &Presentation, sigma: &Permutation) -> bool {
    p.relations.iter().all(|r| classical_value(&r.poly, sigma).is_zero())
}

pub fn classical_value(poly: &NcPoly, sigma: &Permutation) -> BigRational {
    poly.evaluate(|g| i64::from(sigma.apply(g.col()) == g.row()))
}

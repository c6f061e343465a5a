//! Truncated two-sided *-ideal generated by a presentation, as an exact
//! semi-echelon basis over the normal words of degree at most `L`.
//!
//! Columns are normal words numbered in graded-lex order, so a larger column
//! id is a larger word. Each basis row is monic with its largest word as
//! pivot. Closure multiplies every row of degree below `L` by every letter on
//! both sides until nothing new appears. Membership is head reduction to zero:
//! a "proved" answer is always correct, a "not provable" answer only means the
//! truncation was not enough.

use std::collections::{BinaryHeap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::Presentation;

use super::coeff::Coeff;
use super::poly::{Generator, NcPoly};
use super::rules::{Letter, MonomialRules};

pub const DEFAULT_DEGREE_BOUND: usize = 4;
pub const DEFAULT_WORD_BUDGET: usize = 2_000_000;

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SaturationConfig {
    pub degree_bound: usize,
    /// Maximum number of normal words tracked.
    pub word_budget: usize,
}

impl Default for SaturationConfig {
    fn default() -> Self {
        Self { degree_bound: DEFAULT_DEGREE_BOUND, word_budget: DEFAULT_WORD_BUDGET }
    }
}

impl SaturationConfig {
    pub fn with_bound(degree_bound: usize) -> Self {
        Self { degree_bound, ..Self::default() }
    }
}

/// Normal words of degree ≤ L with one-letter multiplication tables.
#[derive(Debug)]
struct WordSpace {
    letters: Vec<Letter>,
    offsets: Vec<u32>,
    degree: Vec<u8>,
    index: HashMap<Vec<Letter>, u32>,
    /// Number of words of degree < L; only these have table entries.
    below: usize,
    left: Vec<u32>,
    right: Vec<u32>,
    m: usize,
}

impl WordSpace {
    fn build(rules: &MonomialRules, bound: usize, budget: usize) -> Result<Self> {
        let m = rules.letter_count();
        let mut space = WordSpace {
            letters: Vec::new(),
            offsets: vec![0],
            degree: Vec::new(),
            index: HashMap::new(),
            below: 0,
            left: Vec::new(),
            right: Vec::new(),
            m,
        };
        space.push(&[]);
        let mut layer: (usize, usize) = (0, 1);
        for d in 1..=bound {
            if d == bound {
                space.below = space.len();
            }
            let mut next = Vec::new();
            for id in layer.0..layer.1 {
                let w = space.word(id as u32).to_vec();
                for y in 0..m as Letter {
                    let ok = match w.last() {
                        None => !rules.is_zero_letter(y),
                        Some(&x) => rules.may_follow(x, y),
                    };
                    if ok {
                        let mut v = w.clone();
                        v.push(y);
                        next.push(v);
                    }
                }
                if space.len() + next.len() > budget {
                    return Err(Error::BudgetExceeded { needed: space.len() + next.len(), budget });
                }
            }
            let start = space.len();
            for v in &next {
                space.push(v);
            }
            layer = (start, space.len());
        }
        if bound == 0 {
            space.below = 0;
        }
        space.left = vec![NONE; space.below * m];
        space.right = vec![NONE; space.below * m];
        for id in 0..space.below {
            let w = space.word(id as u32).to_vec();
            for x in 0..m as Letter {
                let mut lw = Vec::with_capacity(w.len() + 1);
                lw.push(x);
                lw.extend_from_slice(&w);
                if let Some(v) = rules.normalize(&lw) {
                    space.left[id * m + x as usize] = space.index[&v];
                }
                let mut rw = w.clone();
                rw.push(x);
                if let Some(v) = rules.normalize(&rw) {
                    space.right[id * m + x as usize] = space.index[&v];
                }
            }
        }
        Ok(space)
    }

    fn push(&mut self, w: &[Letter]) {
        let id = self.degree.len() as u32;
        self.letters.extend_from_slice(w);
        self.offsets.push(self.letters.len() as u32);
        self.degree.push(w.len() as u8);
        self.index.insert(w.to_vec(), id);
    }

    fn len(&self) -> usize {
        self.degree.len()
    }

    fn word(&self, id: u32) -> &[Letter] {
        let k = id as usize;
        &self.letters[self.offsets[k] as usize..self.offsets[k + 1] as usize]
    }
}

type SparseRow = Vec<(u32, Coeff)>;

/// Dense scratch space for head reduction.
#[derive(Debug)]
struct Scratch {
    dense: Vec<Coeff>,
    marked: Vec<bool>,
    heap: BinaryHeap<u32>,
}

impl Scratch {
    fn new(size: usize) -> Self {
        Self { dense: vec![Coeff::zero(); size], marked: vec![false; size], heap: BinaryHeap::new() }
    }

    fn load(&mut self, terms: impl IntoIterator<Item = (u32, Coeff)>) {
        for (c, v) in terms {
            let k = c as usize;
            if self.marked[k] {
                self.dense[k] = self.dense[k].add(&v);
            } else {
                self.marked[k] = true;
                self.heap.push(c);
                self.dense[k] = v;
            }
        }
    }

    fn pop(&mut self) -> Option<(u32, Coeff)> {
        while let Some(c) = self.heap.pop() {
            let k = c as usize;
            self.marked[k] = false;
            let v = std::mem::replace(&mut self.dense[k], Coeff::zero());
            if !v.is_zero() {
                return Some((c, v));
            }
        }
        None
    }

    /// Subtracts `factor * row` (all but the pivot entry).
    fn eliminate(&mut self, factor: &Coeff, row: &[(u32, Coeff)]) {
        for (c, v) in &row[1..] {
            let k = *c as usize;
            if self.marked[k] {
                self.dense[k] = self.dense[k].sub_mul(factor, v);
            } else {
                self.marked[k] = true;
                self.heap.push(*c);
                self.dense[k] = factor.mul(v).neg();
            }
        }
    }

    fn drain(&mut self, out: &mut SparseRow) {
        while let Some(t) = self.pop() {
            out.push(t);
        }
    }
}

#[derive(Debug)]
pub struct Saturation {
    bound: usize,
    rules: MonomialRules,
    space: WordSpace,
    rows: Vec<SparseRow>,
    pivot_of: Vec<u32>,
    scratch: Scratch,
    skipped: usize,
}

/// Outcome of a membership query.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Membership {
    Proved,
    NotProvableAtBound,
}

impl Membership {
    pub fn is_proved(self) -> bool {
        self == Membership::Proved
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutativityResult {
    pub proved: bool,
    /// Generator pairs whose commutator was not proved in the ideal.
    pub inconclusive: Vec<[[usize; 2]; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryMap {
    pub n: usize,
    /// Entries proved to be 0.
    pub zeros: Vec<[usize; 2]>,
    /// Entries proved to be 1.
    pub ones: Vec<[usize; 2]>,
    /// Partition of the remaining entries by proved equality, each class and
    /// the list of classes sorted.
    pub classes: Vec<Vec<[usize; 2]>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturationDump {
    pub n: usize,
    pub degree_bound: usize,
    pub normal_words: usize,
    pub rank: usize,
    /// Fully reduced basis, ascending by leading word.
    pub basis: Vec<NcPoly>,
}

/// Saturates `p` (and its adjoint) up to `config.degree_bound`. Relations
/// whose normal form has degree above the bound are skipped.
pub fn saturate(p: &Presentation, config: SaturationConfig) -> Result<Saturation> {
    let bound = config.degree_bound;
    let rules = MonomialRules::from_presentation(p);
    let space = WordSpace::build(&rules, bound, config.word_budget)?;
    let size = space.len();
    let mut sat = Saturation {
        bound,
        rules,
        space,
        rows: Vec::new(),
        pivot_of: vec![NONE; size],
        scratch: Scratch::new(size),
        skipped: 0,
    };

    let mut seeds: Vec<NcPoly> = Vec::new();
    for r in &p.relations {
        for poly in [r.poly.clone(), r.poly.adjoint()] {
            let nf = sat.rules.normalize_poly(&poly).monic();
            if nf.degree() > bound {
                sat.skipped += 1;
            } else if !nf.is_zero() {
                seeds.push(nf);
            }
        }
    }
    // Input order must not matter.
    seeds.sort();
    seeds.dedup();

    let mut queue = VecDeque::new();
    for s in &seeds {
        let v = sat.vector(s);
        if let Some(r) = sat.insert(v) {
            queue.push_back(r);
        }
    }
    let m = sat.space.m;
    while let Some(r) = queue.pop_front() {
        let pivot = sat.rows[r][0].0 as usize;
        if sat.space.degree[pivot] as usize >= bound {
            continue;
        }
        for x in 0..m {
            for side in 0..2 {
                let table = if side == 0 { &sat.space.left } else { &sat.space.right };
                let product: SparseRow = sat.rows[r]
                    .iter()
                    .filter_map(|(c, v)| {
                        let t = table[*c as usize * m + x];
                        (t != NONE).then(|| (t, v.clone()))
                    })
                    .collect();
                if product.is_empty() {
                    continue;
                }
                if let Some(new) = sat.insert(product) {
                    queue.push_back(new);
                }
            }
        }
    }
    Ok(sat)
}

impl Saturation {
    pub fn degree_bound(&self) -> usize {
        self.bound
    }

    pub fn n(&self) -> usize {
        self.rules.n()
    }

    pub fn rules(&self) -> &MonomialRules {
        &self.rules
    }

    pub fn normal_word_count(&self) -> usize {
        self.space.len()
    }

    /// Relations (counting adjoints separately) whose normal form exceeds
    /// the bound and so were left out. Leaving relations out is sound.
    pub fn skipped_relations(&self) -> usize {
        self.skipped
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn vector(&self, nf: &NcPoly) -> SparseRow {
        nf.terms_desc()
            .map(|(w, c)| {
                let letters = self.rules.letters_of(w);
                (self.space.index[&letters], Coeff::from_big(c))
            })
            .collect()
    }

    /// Head-reduces `terms`; returns the remainder in descending order.
    fn head_reduce(&mut self, terms: SparseRow) -> SparseRow {
        self.scratch.load(terms);
        while let Some((c, v)) = self.scratch.pop() {
            let r = self.pivot_of[c as usize];
            if r == NONE {
                let mut out = vec![(c, v)];
                self.scratch.drain(&mut out);
                return out;
            }
            self.scratch.eliminate(&v, &self.rows[r as usize]);
        }
        Vec::new()
    }

    /// Reduces every term that sits on a pivot, not just the leading one.
    fn full_reduce(&mut self, terms: SparseRow) -> SparseRow {
        self.scratch.load(terms);
        let mut out = Vec::new();
        while let Some((c, v)) = self.scratch.pop() {
            let r = self.pivot_of[c as usize];
            if r == NONE {
                out.push((c, v));
            } else {
                self.scratch.eliminate(&v, &self.rows[r as usize]);
            }
        }
        out
    }

    fn insert(&mut self, terms: SparseRow) -> Option<usize> {
        let rem = self.head_reduce(terms);
        if rem.is_empty() {
            return None;
        }
        let inv = rem[0].1.recip();
        let row: SparseRow = if inv.is_one() { rem } else { rem.into_iter().map(|(c, v)| (c, v.mul(&inv))).collect() };
        let id = self.rows.len();
        self.pivot_of[row[0].0 as usize] = id as u32;
        self.rows.push(row);
        Some(id)
    }

    fn to_poly(&self, row: &[(u32, Coeff)]) -> NcPoly {
        NcPoly::from_terms(row.iter().map(|(c, v)| (self.rules.word_of(self.space.word(*c)), v.to_big())))
    }

    /// Whether `x` lies in the truncated ideal.
    pub fn membership(&mut self, x: &NcPoly) -> Result<Membership> {
        if x.degree() > self.bound {
            return Err(Error::DegreeTooHigh { degree: x.degree(), bound: self.bound });
        }
        for g in x.words().flat_map(|w| w.letters()) {
            if g.row() >= self.n() || g.col() >= self.n() {
                return Err(Error::Parse(format!("generator {g} out of range for n = {}", self.n())));
            }
        }
        let nf = self.rules.normalize_poly(x);
        if nf.is_zero() {
            return Ok(Membership::Proved);
        }
        let v = self.vector(&nf);
        Ok(if self.head_reduce(v).is_empty() { Membership::Proved } else { Membership::NotProvableAtBound })
    }

    fn proves(&mut self, x: &NcPoly) -> bool {
        self.membership(x).map(Membership::is_proved).unwrap_or(false)
    }

    /// Tests every commutator `q_a q_b − q_b q_a` with `a < b`.
    pub fn prove_commutativity(&mut self) -> CommutativityResult {
        let n = self.n();
        let gens: Vec<Generator> = (0..n).flat_map(|i| (0..n).map(move |j| Generator::new(i, j))).collect();
        let mut inconclusive = Vec::new();
        if self.bound >= 2 {
            for (k, &a) in gens.iter().enumerate() {
                for &b in &gens[k + 1..] {
                    if !self.proves(&NcPoly::commutator(a, b)) {
                        inconclusive.push([[a.row(), a.col()], [b.row(), b.col()]]);
                    }
                }
            }
        } else {
            for (k, &a) in gens.iter().enumerate() {
                for &b in &gens[k + 1..] {
                    inconclusive.push([[a.row(), a.col()], [b.row(), b.col()]]);
                }
            }
        }
        CommutativityResult { proved: inconclusive.is_empty(), inconclusive }
    }

    /// Proved zeros, proved ones, and the partition of the other entries by
    /// proved equality.
    pub fn derived_entry_map(&mut self) -> EntryMap {
        let n = self.n();
        let one = NcPoly::one();
        let mut zeros = Vec::new();
        let mut ones = Vec::new();
        let mut alive = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let g = NcPoly::generator(i, j);
                if self.proves(&g) {
                    zeros.push([i, j]);
                    continue;
                }
                if self.proves(&(g.clone() - one.clone())) {
                    ones.push([i, j]);
                }
                alive.push([i, j]);
            }
        }
        let mut classes: Vec<Vec<[usize; 2]>> = Vec::new();
        for e in alive {
            let ge = NcPoly::generator(e[0], e[1]);
            let mut placed = false;
            for class in classes.iter_mut() {
                let rep = class[0];
                if self.proves(&(ge.clone() - NcPoly::generator(rep[0], rep[1]))) {
                    class.push(e);
                    placed = true;
                    break;
                }
            }
            if !placed {
                classes.push(vec![e]);
            }
        }
        for c in classes.iter_mut() {
            c.sort();
        }
        classes.sort();
        EntryMap { n, zeros, ones, classes }
    }

    /// The basis as stored (semi-echelon, monic, in insertion order).
    pub fn basis(&self) -> Vec<NcPoly> {
        self.rows.iter().map(|r| self.to_poly(r)).collect()
    }

    /// The fully reduced basis (unique for the word order).
    pub fn reduced_basis(&mut self) -> Vec<NcPoly> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.rows[r][0].0);
        let mut out = Vec::with_capacity(order.len());
        for r in order {
            let row = self.rows[r].clone();
            let mut reduced = vec![row[0].clone()];
            let tail = self.full_reduce(row[1..].to_vec());
            reduced.extend(tail);
            out.push(self.to_poly(&reduced));
        }
        out
    }

    pub fn dump(&mut self) -> SaturationDump {
        SaturationDump {
            n: self.n(),
            degree_bound: self.bound,
            normal_words: self.normal_word_count(),
            rank: self.rank(),
            basis: self.reduced_basis(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::pullback;
    use crate::fixtures::{example_b, graph_fixture};
    use crate::presentation::{canonicalize, generate, RelationTag};

    fn sat(t: &crate::composition::Triple, l: usize) -> Saturation {
        saturate(&generate(t).unwrap(), SaturationConfig::with_bound(l)).unwrap()
    }

    #[test]
    fn single_loop() {
        let t = pullback(&graph_fixture("loop").unwrap()).unwrap();
        let mut s = sat(&t, 2);
        assert!(s.membership(&(NcPoly::generator(0, 0) - NcPoly::one())).unwrap().is_proved());
        assert!(!s.membership(&NcPoly::one()).unwrap().is_proved());
        let map = s.derived_entry_map();
        assert!(map.zeros.is_empty());
        assert_eq!(map.ones, vec![[0, 0]]);
        assert_eq!(map.classes, vec![vec![[0, 0]]]);
    }

    #[test]
    fn generated_relations_are_members() {
        let t = example_b();
        let p = generate(&t).unwrap();
        let mut s = saturate(&p, SaturationConfig::with_bound(3)).unwrap();
        for r in &p.relations {
            assert!(s.membership(&r.poly).unwrap().is_proved(), "{}", r.poly);
        }
        assert!(!s.membership(&NcPoly::one()).unwrap().is_proved());
    }

    #[test]
    fn degree_checks() {
        let t = example_b();
        let p = generate(&t).unwrap();
        let mut s = saturate(&p, SaturationConfig::with_bound(2)).unwrap();
        assert_eq!(s.skipped_relations(), 2 * p.count(RelationTag::Theta));
        let cube = &(&NcPoly::generator(0, 0) * &NcPoly::generator(1, 1)) * &NcPoly::generator(2, 2);
        assert!(matches!(s.membership(&cube), Err(Error::DegreeTooHigh { degree: 3, bound: 2 })));
    }

    #[test]
    fn budget_is_reported() {
        let p = generate(&example_b()).unwrap();
        let err = saturate(&p, SaturationConfig { degree_bound: 3, word_budget: 50 }).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { budget: 50, .. }));
    }

    #[test]
    fn basis_ignores_relation_order() {
        let p = canonicalize(&generate(&example_b()).unwrap());
        let mut shuffled = p.clone();
        shuffled.relations.reverse();
        shuffled.relations.rotate_left(7);
        let mut a = saturate(&p, SaturationConfig::with_bound(3)).unwrap();
        let mut b = saturate(&shuffled, SaturationConfig::with_bound(3)).unwrap();
        assert_eq!(a.reduced_basis(), b.reduced_basis());
    }
}

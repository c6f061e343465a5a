use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// The symbol `q_{row,col}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub row: u16,
    pub col: u16,
}

impl Generator {
    pub fn new(row: usize, col: usize) -> Self {
        Self { row: row as u16, col: col as u16 }
    }

    pub fn row(self) -> usize {
        self.row as usize
    }

    pub fn col(self) -> usize {
        self.col as usize
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.row < 10 && self.col < 10 {
            write!(f, "q{}{}", self.row, self.col)
        } else {
            write!(f, "q[{},{}]", self.row, self.col)
        }
    }
}

/// A monomial. Ordered by length first, then lexicographically.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Generator>);

impl Word {
    pub fn one() -> Self {
        Word(Vec::new())
    }

    pub fn letter(g: Generator) -> Self {
        Word(vec![g])
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl From<Vec<Generator>> for Word {
    fn from(v: Vec<Generator>) -> Self {
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Exact-rational linear combination of words. Zero coefficients are never
/// stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NcPoly {
    terms: BTreeMap<Word, BigRational>,
}

impl NcPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(c, Word::one())
    }

    pub fn term(c: BigRational, w: Word) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn word(w: Word) -> Self {
        Self::term(BigRational::one(), w)
    }

    pub fn generator(row: usize, col: usize) -> Self {
        Self::word(Word::letter(Generator::new(row, col)))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, BigRational)>) -> Self {
        let mut p = Self::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, w: Word, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().next_back().map_or(0, Word::degree)
    }

    /// Terms from the leading (largest) word down.
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Word, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, w: &Word) -> BigRational {
        self.terms.get(w).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> Option<(&Word, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> NcPoly {
        match self.leading() {
            None => NcPoly::zero(),
            Some((_, lc)) => {
                let lc = lc.clone();
                NcPoly { terms: self.terms.iter().map(|(w, c)| (w.clone(), c / &lc)).collect() }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> NcPoly {
        if c.is_zero() {
            return NcPoly::zero();
        }
        NcPoly { terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect() }
    }

    /// The involution: reverses every word (generators are self-adjoint and
    /// coefficients are real).
    pub fn adjoint(&self) -> NcPoly {
        NcPoly::from_terms(self.terms.iter().map(|(w, c)| (w.reversed(), c.clone())))
    }

    pub fn map_generators(&self, f: impl Fn(Generator) -> Generator) -> NcPoly {
        NcPoly::from_terms(self.terms.iter().map(|(w, c)| (Word(w.0.iter().map(|&g| f(g)).collect()), c.clone())))
    }

    /// Commutative evaluation with each generator replaced by an integer.
    pub fn evaluate(&self, value: impl Fn(Generator) -> i64) -> BigRational {
        let mut total = BigRational::zero();
        for (w, c) in &self.terms {
            let mut prod = BigInt::one();
            for &g in &w.0 {
                prod *= value(g);
                if prod.is_zero() {
                    break;
                }
            }
            total += c * BigRational::from_integer(prod);
        }
        total
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    /// `g_a g_b - g_b g_a`.
    pub fn commutator(a: Generator, b: Generator) -> NcPoly {
        NcPoly::word(Word(vec![a, b])) - NcPoly::word(Word(vec![b, a]))
    }
}

impl Ord for NcPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.terms_desc().cmp(other.terms_desc())
    }
}

impl PartialOrd for NcPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for NcPoly {
    type Output = NcPoly;
    fn add(mut self, rhs: NcPoly) -> NcPoly {
        for (w, c) in rhs.terms {
            self.add_term(w, c);
        }
        self
    }
}

impl Neg for NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        NcPoly { terms: self.terms.into_iter().map(|(w, c)| (w, -c)).collect() }
    }
}

impl Sub for NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: NcPoly) -> NcPoly {
        self + (-rhs)
    }
}

impl Mul for &NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.concat(b), x * y);
            }
        }
        out
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms_desc().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if w.0.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{abs}*{w}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDoc {
    coeff: String,
    word: Vec<[u16; 2]>,
}

impl Serialize for NcPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let docs: Vec<TermDoc> = self
            .terms_desc()
            .map(|(w, c)| TermDoc { coeff: c.to_string(), word: w.0.iter().map(|g| [g.row, g.col]).collect() })
            .collect();
        docs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for NcPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let docs = Vec::<TermDoc>::deserialize(d)?;
        let mut p = NcPoly::zero();
        for t in docs {
            let c: BigRational = t
                .coeff
                .parse()
                .map_err(|_| serde::de::Error::custom(format!("bad rational coefficient '{}'", t.coeff)))?;
            let w = Word(t.word.iter().map(|&[r, c]| Generator { row: r, col: c }).collect());
            p.add_term(w, c);
        }
        Ok(p)
    }
}

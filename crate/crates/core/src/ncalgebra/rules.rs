//! Monomial rewriting: `x x → x` for idempotent letters, `x y → 0` for
//! forbidden adjacent pairs, `x → 0` for zero letters.
//!
//! The system is confluent. The only overlaps are `xxx` (resolves to `x`),
//! `xxy` / `yxx` with `xy` or `yx` forbidden (both sides reach 0), and a
//! letter that is both idempotent and self-forbidden, which is promoted to a
//! zero letter so that `xx → x` and `xx → 0` agree.

use crate::presentation::Presentation;

use super::poly::{Generator, NcPoly, Word};

/// Letters are `row * n + col`.
pub type Letter = u16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialRules {
    n: usize,
    idempotent: Vec<bool>,
    zero: Vec<bool>,
    /// `forbidden[x * n² + y]`: the product `x y` is zero.
    forbidden: Vec<bool>,
}

impl MonomialRules {
    /// No rules at all: every word is normal.
    pub fn empty(n: usize) -> Self {
        let m = n * n;
        MonomialRules { n, idempotent: vec![false; m], zero: vec![false; m], forbidden: vec![false; m * m] }
    }

    /// Extracts the monomial relations of `p`. Single-term relations of degree
    /// 1 or 2 become zero letters or forbidden pairs, relations of the shape
    /// `c(xx − x)` mark `x` idempotent. Everything is closed under the
    /// involution (word reversal).
    pub fn from_presentation(p: &Presentation) -> Self {
        let mut rules = Self::empty(p.n);
        for r in &p.relations {
            let terms: Vec<_> = r.poly.terms_desc().collect();
            match terms.as_slice() {
                [(w, _)] if w.degree() == 1 => rules.set_zero(rules.letter(w.letters()[0])),
                [(w, _)] if w.degree() == 2 => {
                    let (x, y) = (rules.letter(w.letters()[0]), rules.letter(w.letters()[1]));
                    rules.set_forbidden(x, y);
                }
                [(w2, c2), (w1, c1)]
                    if w2.degree() == 2
                        && w1.degree() == 1
                        && w2.letters()[0] == w2.letters()[1]
                        && w2.letters()[0] == w1.letters()[0]
                        && **c1 == -(**c2).clone() =>
                {
                    let x = rules.letter(w1.letters()[0]);
                    rules.idempotent[x as usize] = true;
                }
                _ => {}
            }
        }
        for x in 0..rules.letter_count() {
            if rules.idempotent[x] && rules.forbidden[x * rules.letter_count() + x] {
                rules.zero[x] = true;
            }
        }
        rules
    }

    fn set_zero(&mut self, x: Letter) {
        self.zero[x as usize] = true;
    }

    fn set_forbidden(&mut self, x: Letter, y: Letter) {
        let m = self.letter_count();
        self.forbidden[x as usize * m + y as usize] = true;
        self.forbidden[y as usize * m + x as usize] = true;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letter_count(&self) -> usize {
        self.n * self.n
    }

    pub fn letter(&self, g: Generator) -> Letter {
        (g.row() * self.n + g.col()) as Letter
    }

    pub fn generator(&self, x: Letter) -> Generator {
        Generator::new(x as usize / self.n, x as usize % self.n)
    }

    pub fn is_idempotent(&self, x: Letter) -> bool {
        self.idempotent[x as usize]
    }

    pub fn is_zero_letter(&self, x: Letter) -> bool {
        self.zero[x as usize]
    }

    pub fn is_forbidden(&self, x: Letter, y: Letter) -> bool {
        self.forbidden[x as usize * self.letter_count() + y as usize]
    }

    /// Whether `y` may follow `x` in a normal word.
    pub fn may_follow(&self, x: Letter, y: Letter) -> bool {
        !self.zero[y as usize] && !self.is_forbidden(x, y) && !(x == y && self.idempotent[x as usize])
    }

    /// Normal form of a letter sequence; `None` is zero.
    pub fn normalize(&self, w: &[Letter]) -> Option<Vec<Letter>> {
        if w.iter().any(|&x| self.zero[x as usize]) {
            return None;
        }
        if w.windows(2).any(|p| self.is_forbidden(p[0], p[1])) {
            return None;
        }
        let mut out: Vec<Letter> = Vec::with_capacity(w.len());
        for &x in w {
            if out.last() == Some(&x) && self.idempotent[x as usize] {
                continue;
            }
            out.push(x);
        }
        Some(out)
    }

    pub fn is_normal(&self, w: &[Letter]) -> bool {
        w.first().is_none_or(|&x| !self.zero[x as usize]) && w.windows(2).all(|p| self.may_follow(p[0], p[1]))
    }

    pub fn letters_of(&self, w: &Word) -> Vec<Letter> {
        w.letters().iter().map(|&g| self.letter(g)).collect()
    }

    pub fn word_of(&self, w: &[Letter]) -> Word {
        Word(w.iter().map(|&x| self.generator(x)).collect())
    }

    /// Normal form of a word as a polynomial (zero or a single word).
    pub fn normal_form(&self, w: &Word) -> NcPoly {
        match self.normalize(&self.letters_of(w)) {
            None => NcPoly::zero(),
            Some(v) => NcPoly::word(self.word_of(&v)),
        }
    }

    pub fn normalize_poly(&self, p: &NcPoly) -> NcPoly {
        NcPoly::from_terms(
            p.terms_desc()
                .filter_map(|(w, c)| self.normalize(&self.letters_of(w)).map(|v| (self.word_of(&v), c.clone()))),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{example_b, example_c};
    use crate::presentation::generate;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(i: usize, j: usize) -> Generator {
        Generator::new(i, j)
    }

    fn rules_b() -> MonomialRules {
        MonomialRules::from_presentation(&generate(&example_b()).unwrap())
    }

    #[test]
    fn magic_rules() {
        let r = rules_b();
        assert_eq!(r.normal_form(&Word(vec![q(0, 1), q(0, 1)])), NcPoly::generator(0, 1));
        assert!(r.normal_form(&Word(vec![q(0, 1), q(0, 2)])).is_zero());
        assert!(r.normal_form(&Word(vec![q(1, 0), q(2, 0)])).is_zero());
        assert_eq!(r.normal_form(&Word(vec![q(0, 0), q(0, 0), q(0, 0)])), NcPoly::generator(0, 0));
    }

    #[test]
    fn unrelated_letters_are_untouched() {
        let r = MonomialRules::from_presentation(&generate(&example_c()).unwrap());
        let w = Word(vec![q(0, 1), q(2, 3)]);
        assert_eq!(r.normal_form(&w), NcPoly::word(w));
    }

    /// One rewrite at a random applicable position, or `None` when normal.
    fn random_step(r: &MonomialRules, w: &[Letter], rng: &mut ChaCha8Rng) -> Option<Option<Vec<Letter>>> {
        let mut sites = Vec::new();
        for (k, &x) in w.iter().enumerate() {
            if r.is_zero_letter(x) {
                sites.push((k, 1));
            }
        }
        for k in 0..w.len().saturating_sub(1) {
            let (x, y) = (w[k], w[k + 1]);
            if r.is_forbidden(x, y) {
                sites.push((k, 2));
            } else if x == y && r.is_idempotent(x) {
                sites.push((k, 3));
            }
        }
        if sites.is_empty() {
            return None;
        }
        let (k, kind) = sites[rng.gen_range(0..sites.len())];
        Some(match kind {
            1 | 2 => None,
            _ => {
                let mut v = w.to_vec();
                v.remove(k);
                Some(v)
            }
        })
    }

    fn rewrite_randomly(r: &MonomialRules, w: &[Letter], rng: &mut ChaCha8Rng) -> Option<Vec<Letter>> {
        let mut cur = w.to_vec();
        loop {
            match random_step(r, &cur, rng) {
                None => return Some(cur),
                Some(None) => return None,
                Some(Some(next)) => cur = next,
            }
        }
    }

    proptest! {
        #[test]
        fn confluent_under_random_rule_order(
            which in 0usize..2,
            letters in proptest::collection::vec(0u16..16, 0..=6),
            seed in any::<u64>(),
        ) {
            let t = if which == 0 { example_b() } else { example_c() };
            let r = MonomialRules::from_presentation(&generate(&t).unwrap());
            let expected = r.normalize(&letters);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..8 {
                prop_assert_eq!(rewrite_randomly(&r, &letters, &mut rng), expected.clone());
            }
            if let Some(v) = &expected {
                prop_assert!(r.is_normal(v));
                prop_assert!(v.len() <= letters.len());
            }
        }
    }
}

//! Oriented relation tables and the reduction loop.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::generator::{Family, Generator, Preset, Word};
use crate::error::{Error, Result};
use crate::scalars::LaurentQ;

/// Right-hand side of a rule: a linear combination of words.
pub type Rhs = Vec<(Word, LaurentQ)>;

/// Which redex to contract first when a word has several.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    LeftmostInnermost,
    RightmostOutermost,
}

/// Rewrite rules whose left-hand sides are words of length two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteSystem {
    rules: BTreeMap<(Generator, Generator), Rhs>,
}

/// Budget on the longest chain of rule applications for a word of length `len`.
pub fn step_budget(len: usize) -> usize {
    4 * (len + 1) * (len + 1)
}

fn w(gs: &[Generator]) -> Word {
    Word(gs.to_vec())
}

fn qp(k: i32) -> LaurentQ {
    LaurentQ::q_pow(k)
}

impl RewriteSystem {
    pub fn empty() -> Self {
        Self { rules: BTreeMap::new() }
    }

    /// The oriented relations of `preset`.
    ///
    /// Every left-hand side is a descent `g h` with `g > h` (plus, for the
    /// even sphere, the pair `a_n* a_n`), and every right-hand side is built
    /// from strictly smaller words in degree-lexicographic order.
    pub fn for_preset(preset: Preset) -> Self {
        let mut sys = Self::empty();
        let n = preset.rank() as u16;
        let one_minus_q2 = LaurentQ::one_minus_q_pow(2);
        match preset {
            Preset::EvenSphere(_) | Preset::OddPlane(_) => {
                let t = Generator::t();
                for i in 1..=n {
                    let (a, s) = (Generator::a(i), Generator::a_star(i));
                    sys.insert(a, t, vec![(w(&[t, a]), qp(2))]);
                    sys.insert(s, t, vec![(w(&[t, s]), qp(-2))]);
                    let mut rhs = vec![(w(&[s, a]), qp(2))];
                    for l in 1..i {
                        let coeff = &qp(2) * &one_minus_q2;
                        rhs.push((w(&[Generator::a_star(l), Generator::a(l)]), coeff));
                    }
                    rhs.push((w(&[t, t]), one_minus_q2.clone()));
                    sys.insert(a, s, rhs);
                    for j in (i + 1)..=n {
                        let (aj, sj) = (Generator::a(j), Generator::a_star(j));
                        sys.insert(aj, a, vec![(w(&[a, aj]), qp(1))]);
                        sys.insert(sj, a, vec![(w(&[a, sj]), qp(-3))]);
                        sys.insert(aj, s, vec![(w(&[s, aj]), qp(3))]);
                        sys.insert(sj, s, vec![(w(&[s, sj]), qp(-1))]);
                    }
                }
                if matches!(preset, Preset::EvenSphere(_)) {
                    let mut rhs = vec![(w(&[t]), qp(-2)), (w(&[t, t]), -qp(-2))];
                    for l in 1..n {
                        rhs.push((w(&[Generator::a_star(l), Generator::a(l)]), -LaurentQ::one()));
                    }
                    sys.insert(Generator::a_star(n), Generator::a(n), rhs);
                }
            }
            Preset::PodlesSphere | Preset::PodlesProductPower(_) => {
                for i in 1..=n {
                    let t = Generator::new(Family::T, i);
                    let (a, s) = (Generator::a(i), Generator::a_star(i));
                    sys.insert(a, t, vec![(w(&[t, a]), qp(2))]);
                    sys.insert(s, t, vec![(w(&[t, s]), qp(-2))]);
                    sys.insert(a, s, vec![(w(&[s, a]), qp(2)), (w(&[t, t]), one_minus_q2.clone())]);
                    sys.insert(s, a, vec![(w(&[t]), qp(-2)), (w(&[t, t]), -qp(-2))]);
                }
                // Different copies commute.
                let gens = preset.generators();
                for &g in &gens {
                    for &h in &gens {
                        if g.index > h.index {
                            sys.insert(g, h, vec![(w(&[h, g]), LaurentQ::one())]);
                        }
                    }
                }
            }
        }
        sys
    }

    /// Adds or replaces a rule `l r -> rhs`.
    pub fn insert(&mut self, l: Generator, r: Generator, rhs: Rhs) {
        self.rules.insert((l, r), rhs);
    }

    pub fn get(&self, l: Generator, r: Generator) -> Option<&Rhs> {
        self.rules.get(&(l, r))
    }

    pub fn rules(&self) -> impl Iterator<Item = ([Generator; 2], &Rhs)> + '_ {
        self.rules.iter().map(|((l, r), rhs)| ([*l, *r], rhs))
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Position of the redex chosen by `strategy`, if any.
    pub fn find_redex(&self, word: &Word, strategy: Strategy) -> Option<usize> {
        let letters = word.letters();
        let hit = |i: &usize| self.rules.contains_key(&(letters[*i], letters[*i + 1]));
        let positions = 0..letters.len().saturating_sub(1);
        match strategy {
            Strategy::LeftmostInnermost => positions.clone().find(hit),
            Strategy::RightmostOutermost => positions.rev().find(hit),
        }
    }

    pub fn is_normal(&self, word: &Word) -> bool {
        self.find_redex(word, Strategy::LeftmostInnermost).is_none()
    }

    /// Replaces the redex at `pos` once, returning the resulting combination.
    pub fn rewrite_at(&self, word: &Word, pos: usize) -> Option<Vec<(Word, LaurentQ)>> {
        let letters = word.letters();
        let rhs = self.rules.get(&(letters[pos], letters[pos + 1]))?;
        Some(
            rhs.iter()
                .map(|(r, c)| {
                    let mut v = Vec::with_capacity(letters.len() + r.len());
                    v.extend_from_slice(&letters[..pos]);
                    v.extend_from_slice(r.letters());
                    v.extend_from_slice(&letters[pos + 2..]);
                    (Word(v), c.clone())
                })
                .collect(),
        )
    }

    /// Reduces a linear combination of words to normal form.
    ///
    /// The largest pending word (degree-lex) is always rewritten next, so a
    /// word never re-enters the queue once contracted and repeated words are
    /// merged before they are expanded further.
    pub fn reduce<I>(&self, input: I, strategy: Strategy) -> Result<BTreeMap<Word, LaurentQ>>
    where
        I: IntoIterator<Item = (Word, LaurentQ)>,
    {
        let mut pending: BTreeMap<Word, (LaurentQ, usize, usize)> = BTreeMap::new();
        for (word, c) in input {
            let budget = step_budget(word.len());
            push(&mut pending, word, &c, 0, budget);
        }
        let mut done: BTreeMap<Word, LaurentQ> = BTreeMap::new();
        while let Some((word, (c, depth, budget))) = pending.pop_last() {
            match self.find_redex(&word, strategy) {
                None => add_into(&mut done, word, &c),
                Some(pos) => {
                    if depth >= budget {
                        return Err(Error::StepBudget { length: word.len(), budget });
                    }
                    for (nw, rc) in self.rewrite_at(&word, pos).unwrap_or_default() {
                        push(&mut pending, nw, &(&c * &rc), depth + 1, budget);
                    }
                }
            }
        }
        Ok(done)
    }
}

fn push(
    pending: &mut BTreeMap<Word, (LaurentQ, usize, usize)>,
    word: Word,
    c: &LaurentQ,
    depth: usize,
    budget: usize,
) {
    if c.is_zero() {
        return;
    }
    match pending.entry(word) {
        Entry::Vacant(v) => {
            v.insert((c.clone(), depth, budget));
        }
        Entry::Occupied(mut o) => {
            let e = o.get_mut();
            e.0 += c;
            e.1 = e.1.max(depth);
            e.2 = e.2.max(budget);
            if e.0.is_zero() {
                o.remove();
            }
        }
    }
}

pub(crate) fn add_into(map: &mut BTreeMap<Word, LaurentQ>, word: Word, c: &LaurentQ) {
    if c.is_zero() {
        return;
    }
    match map.entry(word) {
        Entry::Vacant(v) => {
            v.insert(c.clone());
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

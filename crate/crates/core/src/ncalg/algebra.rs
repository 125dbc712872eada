use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::generator::{Generator, Preset, Word};
use super::poly::{FreePoly, NCPoly};
use super::rewrite::{RewriteSystem, Strategy};
use crate::error::{Error, Result};
use crate::scalars::LaurentQ;

/// A preset together with its rewrite rules. All arithmetic on [`NCPoly`]
/// that can create unsorted words goes through here.
#[derive(Clone, Debug)]
pub struct Algebra {
    preset: Preset,
    rules: RewriteSystem,
    strategy: Strategy,
}

impl Algebra {
    pub fn new(preset: Preset) -> Self {
        Self::with_rules(preset, RewriteSystem::for_preset(preset))
    }

    /// Uses an explicit rule table, e.g. a deliberately broken one in tests.
    pub fn with_rules(preset: Preset, rules: RewriteSystem) -> Self {
        Self { preset, rules, strategy: Strategy::LeftmostInnermost }
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn preset(&self) -> Preset {
        self.preset
    }

    pub fn rules(&self) -> &RewriteSystem {
        &self.rules
    }

    pub fn rank(&self) -> usize {
        self.preset.rank()
    }

    pub fn zero(&self) -> NCPoly {
        NCPoly::zero(self.preset)
    }

    pub fn scalar(&self, c: LaurentQ) -> NCPoly {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(Word::empty(), c);
        }
        NCPoly::from_map(self.preset, m)
    }

    pub fn one(&self) -> NCPoly {
        self.scalar(LaurentQ::one())
    }

    pub fn generator(&self, g: Generator) -> Result<NCPoly> {
        self.word(&Word::single(g))
    }

    /// The self-adjoint generator (`t`/`y`; `tau_index` for Podleś presets).
    pub fn t(&self, index: u16) -> Result<NCPoly> {
        self.generator(self.preset.t_for(index))
    }

    pub fn a(&self, i: u16) -> Result<NCPoly> {
        self.generator(Generator::a(i))
    }

    pub fn a_star(&self, i: u16) -> Result<NCPoly> {
        self.generator(Generator::a_star(i))
    }

    /// Normal form of a single word.
    pub fn word(&self, w: &Word) -> Result<NCPoly> {
        self.normalize(&FreePoly::word(w.clone(), LaurentQ::one()))
    }

    fn check_letters<I: IntoIterator<Item = Generator>>(&self, gens: I) -> Result<()> {
        for g in gens {
            if !self.preset.contains(g) {
                let name = alloc::format!("{:?}{}", g.family, g.index);
                return Err(Error::UnknownGenerator(name, self.preset));
            }
        }
        Ok(())
    }

    fn check(&self, p: &NCPoly) -> Result<()> {
        if p.preset != self.preset {
            return Err(Error::PresetMismatch(self.preset, p.preset));
        }
        Ok(())
    }

    pub fn normalize(&self, raw: &FreePoly) -> Result<NCPoly> {
        self.normalize_with(raw, self.strategy)
    }

    pub fn normalize_with(&self, raw: &FreePoly, strategy: Strategy) -> Result<NCPoly> {
        self.check_letters(raw.generators())?;
        let terms = raw.terms.iter().map(|(w, c)| (w.clone(), c.clone()));
        Ok(NCPoly::from_map(self.preset, self.rules.reduce(terms, strategy)?))
    }

    /// Re-reduces an element of another preset under this preset's rules.
    ///
    /// This is the quotient map `OddPlane(n) -> EvenSphere(n)` when the source
    /// is the odd plane; generators must be shared.
    pub fn project(&self, p: &NCPoly) -> Result<NCPoly> {
        self.normalize(&FreePoly::from(p))
    }

    pub fn add(&self, f: &NCPoly, g: &NCPoly) -> Result<NCPoly> {
        self.check(f)?;
        f.try_add(g)
    }

    pub fn sub(&self, f: &NCPoly, g: &NCPoly) -> Result<NCPoly> {
        self.check(f)?;
        f.try_sub(g)
    }

    pub fn mul(&self, f: &NCPoly, g: &NCPoly) -> Result<NCPoly> {
        self.check(f)?;
        self.check(g)?;
        let mut products = Vec::with_capacity(f.len() * g.len());
        for (u, a) in f.terms() {
            for (v, b) in g.terms() {
                products.push((u.concat(v), a * b));
            }
        }
        Ok(NCPoly::from_map(self.preset, self.rules.reduce(products, self.strategy)?))
    }

    pub fn mul_all<'a, I: IntoIterator<Item = &'a NCPoly>>(&self, factors: I) -> Result<NCPoly> {
        let mut acc = self.one();
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, f: &NCPoly, e: u32) -> Result<NCPoly> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    /// `[f, g] = fg - gf`, normalized.
    pub fn commutator(&self, f: &NCPoly, g: &NCPoly) -> Result<NCPoly> {
        self.sub(&self.mul(f, g)?, &self.mul(g, f)?)
    }

    /// The involution: reverse each word, star each letter. Coefficients are
    /// real Laurent polynomials in a real `q`, so they are left unchanged.
    pub fn star(&self, f: &NCPoly) -> Result<NCPoly> {
        self.check(f)?;
        let raw = FreePoly::from_terms(f.terms().map(|(w, c)| (w.star(), c.clone())));
        self.normalize(&raw)
    }
}

use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt;

use num_traits::Signed;

use super::generator::{Generator, Preset, Word};
use super::rewrite::add_into;
use crate::error::{Error, Result};
use crate::scalars::LaurentQ;

/// An element of the free algebra on generators: arbitrary words with
/// Laurent coefficients, not yet reduced by any relation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreePoly {
    pub(crate) terms: BTreeMap<Word, LaurentQ>,
}

impl FreePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(word: Word, c: LaurentQ) -> Self {
        let mut p = Self::zero();
        p.add_term(word, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, LaurentQ)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (w, c) in iter {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, word: Word, c: LaurentQ) {
        add_into(&mut self.terms, word, &c);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &LaurentQ)> + '_ {
        self.terms.iter()
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        self.terms.keys().flat_map(|w| w.letters().iter().copied())
    }

    /// Free (concatenation) product.
    pub fn mul(&self, other: &FreePoly) -> FreePoly {
        let mut out = FreePoly::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }

    pub fn add(&self, other: &FreePoly) -> FreePoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &LaurentQ) -> FreePoly {
        FreePoly::from_terms(self.terms.iter().map(|(w, v)| (w.clone(), v * c)))
    }
}

impl From<&NCPoly> for FreePoly {
    fn from(p: &NCPoly) -> Self {
        FreePoly { terms: p.terms.clone() }
    }
}

/// A noncommutative polynomial in normal form for its preset.
///
/// Produced only by [`super::Algebra`]; every stored word is irreducible under
/// the preset's rules, so equality of term maps is equality in the algebra.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NCPoly {
    pub(crate) preset: Preset,
    pub(crate) terms: BTreeMap<Word, LaurentQ>,
}

impl NCPoly {
    pub(crate) fn from_map(preset: Preset, terms: BTreeMap<Word, LaurentQ>) -> Self {
        Self { preset, terms }
    }

    pub fn zero(preset: Preset) -> Self {
        Self { preset, terms: BTreeMap::new() }
    }

    pub fn preset(&self) -> Preset {
        self.preset
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

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &LaurentQ)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> LaurentQ {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// The counit: coefficient of the empty word (all generators map to 0).
    pub fn epsilon(&self) -> LaurentQ {
        self.coeff(&Word::empty())
    }

    fn check(&self, other: &NCPoly) -> Result<()> {
        if self.preset != other.preset {
            return Err(Error::PresetMismatch(self.preset, other.preset));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &NCPoly) -> Result<NCPoly> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            add_into(&mut out.terms, w.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &NCPoly) -> Result<NCPoly> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> NCPoly {
        self.scale(&-LaurentQ::one())
    }

    pub fn scale(&self, c: &LaurentQ) -> NCPoly {
        let mut out = NCPoly::zero(self.preset);
        for (w, v) in &self.terms {
            add_into(&mut out.terms, w.clone(), &(v * c));
        }
        out
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs<F: Fn(&LaurentQ) -> LaurentQ>(&self, f: F) -> NCPoly {
        let mut out = NCPoly::zero(self.preset);
        for (w, v) in &self.terms {
            add_into(&mut out.terms, w.clone(), &f(v));
        }
        out
    }

    /// Largest absolute coefficient after evaluating at `q0`; 0 iff zero at `q0`.
    pub fn max_abs_at(&self, q0: f64) -> f64 {
        self.terms.values().map(|c| c.eval_f64(q0).map(f64::abs).unwrap_or(f64::INFINITY)).fold(0.0, f64::max)
    }

    /// Canonical text: terms in increasing word order, `coeff * word`.
    pub fn to_text(&self) -> String {
        alloc::format!("{self}")
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let (negative, mag) = match c.as_monomial() {
                Some((r, _)) if r.is_negative() => (true, -c),
                _ => (false, c.clone()),
            };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let word = self.preset.format_word(w);
            if w.is_empty() {
                match mag.as_monomial() {
                    Some(_) => write!(f, "{mag}")?,
                    None => write!(f, "({mag})")?,
                }
            } else if mag.is_one() {
                write!(f, "{word}")?;
            } else if mag.as_monomial().is_some() {
                write!(f, "{mag} * {word}")?;
            } else {
                write!(f, "({mag}) * {word}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NCPoly[{}]({self})", self.preset)
    }
}

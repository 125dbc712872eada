use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalars::{rat, rat_int, rational_to_f64, Rational};

/// Commuting coordinates used by the classical Poisson structures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    T,
    A(u16),
    ABar(u16),
    Tau(u16),
    Alpha(u16),
    AlphaBar(u16),
    Z(u16),
    ZBar(u16),
}

impl Var {
    pub fn conj(self) -> Var {
        match self {
            Var::A(i) => Var::ABar(i),
            Var::ABar(i) => Var::A(i),
            Var::Alpha(i) => Var::AlphaBar(i),
            Var::AlphaBar(i) => Var::Alpha(i),
            Var::Z(i) => Var::ZBar(i),
            Var::ZBar(i) => Var::Z(i),
            v => v,
        }
    }

    pub fn name(self) -> String {
        match self {
            Var::T => String::from("t"),
            Var::A(i) => alloc::format!("a{i}"),
            Var::ABar(i) => alloc::format!("a{i}*"),
            Var::Tau(i) => alloc::format!("tau{i}"),
            Var::Alpha(i) => alloc::format!("alpha{i}"),
            Var::AlphaBar(i) => alloc::format!("alpha{i}*"),
            Var::Z(i) => alloc::format!("z{i}"),
            Var::ZBar(i) => alloc::format!("z{i}*"),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A commutative monomial. Exponents are stored in half-steps, so
/// `tau^(1/2)` is stored as `1` and `a^2` as `4`. Negative exponents may
/// appear in intermediate results of differentiation.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(BTreeMap<Var, i32>);

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: Var) -> Self {
        Self::var_half_pow(v, 2)
    }

    pub fn var_half_pow(v: Var, half: i32) -> Self {
        let mut m = Self::one();
        m.mul_var(v, half);
        m
    }

    pub fn from_pairs<I: IntoIterator<Item = (Var, i32)>>(iter: I) -> Self {
        let mut m = Self::one();
        for (v, h) in iter {
            m.mul_var(v, h);
        }
        m
    }

    /// Exponent of `v` in half-steps.
    pub fn half_exp(&self, v: Var) -> i32 {
        self.0.get(&v).copied().unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = (Var, i32)> + '_ {
        self.0.iter().map(|(v, e)| (*v, *e))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul_var(&mut self, v: Var, half: i32) {
        if half == 0 {
            return;
        }
        match self.0.entry(v) {
            Entry::Vacant(slot) => {
                slot.insert(half);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += half;
                if *slot.get() == 0 {
                    slot.remove();
                }
            }
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        for (v, e) in other.vars() {
            out.mul_var(v, e);
        }
        out
    }

    pub fn is_polynomial(&self) -> bool {
        self.0.values().all(|e| *e >= 0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in &self.0 {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            match (e % 2 == 0, e / 2) {
                (true, 1) => write!(f, "{v}")?,
                (true, k) => write!(f, "{v}^{k}")?,
                (false, _) => write!(f, "{v}^({e}/2)")?,
            }
        }
        Ok(())
    }
}

/// A polynomial in commuting variables with exact rational coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ClassicalPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl ClassicalPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &ClassicalPoly) -> ClassicalPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &ClassicalPoly) -> ClassicalPoly {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> ClassicalPoly {
        ClassicalPoly::from_terms(self.terms.iter().map(|(m, v)| (m.clone(), v * c)))
    }

    pub fn scale_int(&self, c: i64) -> ClassicalPoly {
        self.scale(&rat_int(c))
    }

    pub fn mul(&self, other: &ClassicalPoly) -> ClassicalPoly {
        let mut out = ClassicalPoly::zero();
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                out.add_term(m.mul(n), a * b);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> ClassicalPoly {
        let mut acc = ClassicalPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.keys().flat_map(|m| m.vars().map(|(v, _)| v)).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Partial derivative, valid for half-integer exponents.
    pub fn derivative(&self, v: Var) -> ClassicalPoly {
        let mut out = ClassicalPoly::zero();
        for (m, c) in &self.terms {
            let e = m.half_exp(v);
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.mul_var(v, -2);
            out.add_term(dm, c * rat(e as i64, 2));
        }
        out
    }

    /// Substitution homomorphism. Variables absent from `map` are kept.
    /// Substituted variables must carry whole exponents.
    pub fn substitute<F>(&self, map: F) -> Result<ClassicalPoly>
    where
        F: Fn(Var) -> Option<ClassicalPoly>,
    {
        let mut out = ClassicalPoly::zero();
        for (m, c) in &self.terms {
            let mut acc = ClassicalPoly::constant(c.clone());
            for (v, e) in m.vars() {
                match map(v) {
                    Some(image) => {
                        if e % 2 != 0 || e < 0 {
                            return Err(Error::InvalidParameter(alloc::format!(
                                "cannot substitute into {v}^({e}/2)"
                            )));
                        }
                        acc = acc.mul(&image.pow((e / 2) as u32));
                    }
                    None => {
                        acc = acc.mul(&ClassicalPoly::term(Monomial::var_half_pow(v, e), Rational::one()))
                    }
                }
            }
            out = out.add(&acc);
        }
        Ok(out)
    }

    /// Complex conjugation; coefficients are real.
    pub fn conj(&self) -> ClassicalPoly {
        ClassicalPoly::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (Monomial::from_pairs(m.vars().map(|(v, e)| (v.conj(), e))), c.clone())),
        )
    }

    /// Largest absolute coefficient, 0 exactly when the polynomial is zero.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| rational_to_f64(&c.abs())).fold(0.0, f64::max)
    }

    /// Evaluates at a complex point; `value(v)` supplies each coordinate.
    /// Half-integer powers use the principal square root.
    pub fn eval<F: Fn(Var) -> Complex64>(&self, value: F) -> Complex64 {
        let mut acc = Complex64::zero();
        for (m, c) in &self.terms {
            let mut term = Complex64::new(rational_to_f64(c), 0.0);
            for (v, e) in m.vars() {
                let x = value(v);
                term *= x.powi(e.div_euclid(2));
                if e.rem_euclid(2) == 1 {
                    term *= x.sqrt();
                }
            }
            acc += term;
        }
        acc
    }
}

impl fmt::Display for ClassicalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ClassicalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ClassicalPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_power_derivative() {
        // d/dtau tau^(1/2) = 1/2 tau^(-1/2)
        let p = ClassicalPoly::term(Monomial::var_half_pow(Var::Tau(1), 1), Rational::one());
        let d = p.derivative(Var::Tau(1));
        assert_eq!(d, ClassicalPoly::term(Monomial::var_half_pow(Var::Tau(1), -1), rat(1, 2)));
    }

    #[test]
    fn display_formats() {
        let p = ClassicalPoly::var(Var::T)
            .pow(2)
            .scale_int(2)
            .sub(&ClassicalPoly::var(Var::A(1)).mul(&ClassicalPoly::var(Var::ABar(1))).scale_int(2));
        assert_eq!(alloc::format!("{p}"), "2*t^2 - 2*a1 a1*");
        let h = ClassicalPoly::term(
            Monomial::from_pairs([(Var::Alpha(2), 2), (Var::Tau(1), 1)]),
            Rational::one(),
        );
        assert_eq!(alloc::format!("{h}"), "tau1^(1/2) alpha2");
    }
}

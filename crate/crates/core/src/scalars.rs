//! Exact coefficient arithmetic.
//!
//! [`Rational`] is an arbitrary-precision fraction kept in lowest terms and
//! [`LaurentQ`] is a Laurent polynomial in the deformation parameter `q` with
//! rational coefficients. Every symbolic module uses `LaurentQ` as its scalar
//! ring; floats only appear when a Laurent polynomial is evaluated at a point.

use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Arbitrary-precision rational, always normalized (denominator > 0, lowest terms).
pub type Rational = num_rational::BigRational;

/// Builds `num/den` as a [`Rational`]. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parses `p`, `-p` or `p/r`.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = || Error::BadRational(String::from(s));
    match s.split_once('/') {
        Some((p, r)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let r = BigInt::from_str(r.trim()).map_err(|_| bad())?;
            if r.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, r))
        }
        None => BigInt::from_str(s).map(Rational::from_integer).map_err(|_| bad()),
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// A Laurent polynomial `Σ c_k q^k` with exact rational coefficients.
///
/// No zero coefficient is ever stored, so structural equality is mathematical
/// equality.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentQ {
    terms: BTreeMap<i32, Rational>,
}

impl LaurentQ {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(rat_int(c))
    }

    /// `c * q^k`.
    pub fn monomial(c: Rational, k: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Self { terms }
    }

    /// `q^k`.
    pub fn q_pow(k: i32) -> Self {
        Self::monomial(Rational::one(), k)
    }

    /// Builds from `(exponent, coefficient)` pairs, merging repeats.
    pub fn from_terms<I: IntoIterator<Item = (i32, Rational)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in iter {
            p.add_term(k, c);
        }
        p
    }

    /// `1 - q^k`.
    pub fn one_minus_q_pow(k: i32) -> Self {
        Self::one() - Self::q_pow(k)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Returns the rational value if the polynomial has no `q` dependence.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    /// Returns `(c, k)` if the polynomial is a single term `c q^k`.
    pub fn as_monomial(&self) -> Option<(&Rational, i32)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(k, c)| (c, *k))
        } else {
            None
        }
    }

    pub fn coeff(&self, k: i32) -> Rational {
        self.terms.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, k: i32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self { terms: self.terms.iter().map(|(e, v)| (e + k, v.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation at a nonzero rational point.
    pub fn eval_rational(&self, q0: &Rational) -> Result<Rational, Error> {
        if q0.is_zero() {
            if self.terms.keys().any(|k| *k < 0) {
                return Err(Error::Domain);
            }
            return Ok(self.coeff(0));
        }
        let mut acc = Rational::zero();
        for (k, c) in &self.terms {
            acc += c * pow_rational(q0, *k);
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, q0: f64) -> Result<f64, Error> {
        if q0 == 0.0 {
            if self.terms.keys().any(|k| *k < 0) {
                return Err(Error::Domain);
            }
            return Ok(rational_to_f64(&self.coeff(0)));
        }
        Ok(self.terms.iter().map(|(k, c)| rational_to_f64(c) * powi(q0, *k)).sum())
    }

    /// Value at `q = 1`, the sum of all coefficients.
    pub fn at_one(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    /// Sum of absolute values of coefficients, each weighted by `|q0|^k`.
    pub fn abs_eval_f64(&self, q0: f64) -> f64 {
        self.terms.iter().map(|(k, c)| rational_to_f64(&c.abs()) * powi(q0.abs(), *k)).sum()
    }

    /// Exact quotient by `(1 - q)`.
    ///
    /// Fails unless `p(1) = 0`. If `r (1 - q) = p` then the coefficients satisfy
    /// `p_k = r_k - r_{k-1}`, so `r_k` is the running sum of `p` up to `k`.
    pub fn div_one_minus_q(&self) -> Result<Self, Error> {
        if !self.at_one().is_zero() {
            return Err(Error::NotDivisible);
        }
        let (Some(lo), Some(hi)) = (self.min_exponent(), self.max_exponent()) else {
            return Ok(Self::zero());
        };
        let mut out = Self::zero();
        let mut running = Rational::zero();
        for k in lo..hi {
            running += self.coeff(k);
            out.add_term(k, running.clone());
        }
        Ok(out)
    }
}

fn pow_rational(q0: &Rational, k: i32) -> Rational {
    let base = if k < 0 { q0.recip() } else { q0.clone() };
    num_traits::pow(base, k.unsigned_abs() as usize)
}

/// Integer power of an `f64` by repeated squaring, exact for powers of two.
pub fn powi(x: f64, k: i32) -> f64 {
    let mut base = if k < 0 { 1.0 / x } else { x };
    let mut e = k.unsigned_abs();
    let mut acc = 1.0;
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    acc
}

impl From<Rational> for LaurentQ {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for LaurentQ {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl Add<&LaurentQ> for &LaurentQ {
    type Output = LaurentQ;
    fn add(self, rhs: &LaurentQ) -> LaurentQ {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentQ {
    type Output = LaurentQ;
    fn add(mut self, rhs: LaurentQ) -> LaurentQ {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentQ> for LaurentQ {
    fn add_assign(&mut self, rhs: &LaurentQ) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, c.clone());
        }
    }
}

impl SubAssign<&LaurentQ> for LaurentQ {
    fn sub_assign(&mut self, rhs: &LaurentQ) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, -c);
        }
    }
}

impl Sub<&LaurentQ> for &LaurentQ {
    type Output = LaurentQ;
    fn sub(self, rhs: &LaurentQ) -> LaurentQ {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentQ {
    type Output = LaurentQ;
    fn sub(mut self, rhs: LaurentQ) -> LaurentQ {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentQ {
    type Output = LaurentQ;
    fn neg(self) -> LaurentQ {
        LaurentQ { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

impl Neg for LaurentQ {
    type Output = LaurentQ;
    fn neg(self) -> LaurentQ {
        -&self
    }
}

impl Mul<&LaurentQ> for &LaurentQ {
    type Output = LaurentQ;
    fn mul(self, rhs: &LaurentQ) -> LaurentQ {
        let mut out = LaurentQ::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentQ {
    type Output = LaurentQ;
    fn mul(self, rhs: LaurentQ) -> LaurentQ {
        &self * &rhs
    }
}

fn fmt_q_power(f: &mut fmt::Formatter<'_>, k: i32) -> fmt::Result {
    match k {
        1 => write!(f, "q"),
        _ => write!(f, "q^{k}"),
    }
}

impl fmt::Display for LaurentQ {
    /// Terms in increasing exponent, e.g. `1 - q^2` or `-3/2*q^-1 + q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if *k == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                fmt_q_power(f, *k)?;
            } else {
                write!(f, "{mag}*")?;
                fmt_q_power(f, *k)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentQ({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn one_minus_q() -> LaurentQ {
        LaurentQ::one_minus_q_pow(1)
    }

    #[test]
    fn eval_examples() {
        let p = LaurentQ::one_minus_q_pow(2);
        assert_eq!(p.eval_rational(&rat(1, 2)).unwrap(), rat(3, 4));
        assert_eq!(LaurentQ::q_pow(-1).eval_rational(&rat(1, 2)).unwrap(), rat_int(2));
        assert_eq!(LaurentQ::zero().eval_f64(0.7).unwrap(), 0.0);
        assert_eq!(LaurentQ::q_pow(-1).eval_f64(0.0), Err(Error::Domain));
        assert_eq!(LaurentQ::q_pow(-2).eval_rational(&rat_int(0)), Err(Error::Domain));
    }

    #[test]
    fn division_examples() {
        let p = LaurentQ::one_minus_q_pow(2);
        assert_eq!(p.div_one_minus_q().unwrap(), LaurentQ::one() + LaurentQ::q_pow(1));
        let p = &LaurentQ::q_pow(-1) * &one_minus_q();
        assert_eq!(p.div_one_minus_q().unwrap(), LaurentQ::q_pow(-1));
        assert_eq!(one_minus_q().div_one_minus_q().unwrap(), LaurentQ::one());
        assert_eq!(LaurentQ::q_pow(2).div_one_minus_q(), Err(Error::NotDivisible));
    }

    #[test]
    fn display_is_increasing_in_exponent() {
        assert_eq!(LaurentQ::one_minus_q_pow(2).to_string(), "1 - q^2");
        let p = LaurentQ::from_terms([(-1, rat(-3, 2)), (1, rat_int(1))]);
        assert_eq!(p.to_string(), "-3/2*q^-1 + q");
        assert_eq!(LaurentQ::zero().to_string(), "0");
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("1/2").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-4/6").unwrap(), rat(-2, 3));
        assert_eq!(parse_rational("7").unwrap(), rat_int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    fn laurent() -> impl Strategy<Value = LaurentQ> {
        proptest::collection::vec((-4i32..5, -6i64..7, 1i64..4), 0..5)
            .prop_map(|v| LaurentQ::from_terms(v.into_iter().map(|(k, a, b)| (k, rat(a, b)))))
    }

    proptest! {
        #[test]
        fn ring_laws(a in laurent(), b in laurent(), c in laurent()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn division_inverts_multiplication(a in laurent()) {
            let p = &a * &one_minus_q();
            prop_assert_eq!(&p.div_one_minus_q().unwrap() * &one_minus_q(), p);
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in laurent(), b in laurent(), n in 1i64..5, d in 1i64..5) {
            let q0 = rat(n, d);
            let lhs = (&a * &b).eval_rational(&q0).unwrap();
            let rhs = a.eval_rational(&q0).unwrap() * b.eval_rational(&q0).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}

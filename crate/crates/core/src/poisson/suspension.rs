//! The map from `n` copies of the two-sphere onto the `2n`-sphere,
//! `a_i = alpha_i prod_k tau_k^{M_ik}`, `t = prod tau_k`, with
//! `M_ii = 0`, `M_ik = 1` for `i < k` and `M_ik = 1/2` for `i > k`.

use alloc::vec::Vec;

use super::classical::{ClassicalPoly, Monomial, Var};
use super::structure::PoissonStructure;
use crate::error::{Error, Result};
use crate::scalars::Rational;
use num_traits::One;

/// `M_ik` in half-steps.
fn m_half(i: u16, k: u16) -> i32 {
    match i.cmp(&k) {
        core::cmp::Ordering::Equal => 0,
        core::cmp::Ordering::Less => 2,
        core::cmp::Ordering::Greater => 1,
    }
}

fn image(x: Var, n: usize) -> Option<ClassicalPoly> {
    let n = n as u16;
    let taus = |i: u16| (1..=n).map(move |k| (Var::Tau(k), m_half(i, k)));
    let mono = match x {
        Var::T => Monomial::from_pairs((1..=n).map(|k| (Var::Tau(k), 2))),
        Var::A(i) => Monomial::from_pairs(taus(i).chain([(Var::Alpha(i), 2)])),
        Var::ABar(i) => Monomial::from_pairs(taus(i).chain([(Var::AlphaBar(i), 2)])),
        _ => return None,
    };
    Some(ClassicalPoly::term(mono, Rational::one()))
}

/// Pullback of a function on the even sphere to the product of spheres.
pub fn phi_pushforward(f: &ClassicalPoly, n: usize) -> Result<ClassicalPoly> {
    let target = PoissonStructure::EvenSphereCoinduced(n);
    for x in f.variables() {
        if !target.contains(x) {
            return Err(Error::VariableMismatch(x.name(), target.label()));
        }
    }
    f.substitute(|x| image(x, n))
}

#[derive(Clone, Debug)]
pub struct PairResidual {
    pub pair: (Var, Var),
    pub residual: ClassicalPoly,
}

/// `{Phi* u, Phi* v} - Phi* {u, v}` on the product, for every generator
/// pair `u <= v` of the even sphere (including `u = v`).
pub fn verify_poisson_map(n: usize) -> Result<Vec<PairResidual>> {
    let sphere = PoissonStructure::EvenSphereCoinduced(n);
    let product = PoissonStructure::ProductPodles(n);
    let gens = sphere.generators();
    let mut out = Vec::new();
    for (i, &u) in gens.iter().enumerate() {
        for &v in &gens[i..] {
            let pu = phi_pushforward(&ClassicalPoly::var(u), n)?;
            let pv = phi_pushforward(&ClassicalPoly::var(v), n)?;
            let lhs = product.bracket_unreduced(&pu, &pv);
            let rhs = phi_pushforward(&sphere.generator_bracket(u, v), n)?;
            let residual = product.reduce(&lhs.sub(&rhs));
            out.push(PairResidual { pair: (u, v), residual });
        }
    }
    Ok(out)
}

/// `Phi*(sum a_i* a_i - t + t^2)` reduced on the product; zero when the
/// image lies on the sphere.
pub fn verify_sphere_constraint(n: usize) -> Result<ClassicalPoly> {
    let t = ClassicalPoly::var(Var::T);
    let mut f = t.pow(2).sub(&t);
    for i in 1..=n as u16 {
        f = f.add(&ClassicalPoly::var(Var::ABar(i)).mul(&ClassicalPoly::var(Var::A(i))));
    }
    let pulled = phi_pushforward(&f, n)?;
    Ok(PoissonStructure::ProductPodles(n).reduce(&pulled))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(pairs: &[(Var, i32)]) -> ClassicalPoly {
        ClassicalPoly::term(Monomial::from_pairs(pairs.iter().copied()), Rational::one())
    }

    #[test]
    fn generator_images() {
        let t = phi_pushforward(&ClassicalPoly::var(Var::T), 2).unwrap();
        assert_eq!(t, mono(&[(Var::Tau(1), 2), (Var::Tau(2), 2)]));
        let a1 = phi_pushforward(&ClassicalPoly::var(Var::A(1)), 2).unwrap();
        assert_eq!(a1, mono(&[(Var::Alpha(1), 2), (Var::Tau(2), 2)]));
        let a2 = phi_pushforward(&ClassicalPoly::var(Var::A(2)), 2).unwrap();
        assert_eq!(a2, mono(&[(Var::Alpha(2), 2), (Var::Tau(1), 1)]));
    }

    #[test]
    fn rejects_foreign_variables() {
        let f = ClassicalPoly::var(Var::Tau(1));
        assert!(phi_pushforward(&f, 2).is_err());
    }

    #[test]
    fn phi_is_poisson() {
        let r = verify_poisson_map(1).unwrap();
        assert_eq!(r.len(), 6);
        let r = verify_poisson_map(2).unwrap();
        assert_eq!(r.len(), 15);
        for n in 1..=4 {
            for p in verify_poisson_map(n).unwrap() {
                assert!(p.residual.is_zero(), "n = {n}, {:?}: {}", p.pair, p.residual);
            }
        }
    }

    #[test]
    fn image_lies_on_the_sphere() {
        for n in 1..=4 {
            assert!(verify_sphere_constraint(n).unwrap().is_zero());
        }
    }
}

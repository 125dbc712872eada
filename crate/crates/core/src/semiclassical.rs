//! The limit `{f, g} = lim_{q -> 1} [f, g] / (1 - q)`, taken exactly.

use alloc::vec::Vec;

use crate::error::Result;
use crate::ncalg::{Algebra, Family, Generator, NCPoly, Preset, Word};
use crate::poisson::{ClassicalPoly, Monomial, PairResidual, PoissonStructure, Var};

/// Classical structure whose relations the limit is compared modulo,
/// `None` for the odd plane, which has no ambient relation.
pub fn classical_structure(preset: Preset) -> Option<PoissonStructure> {
    match preset {
        Preset::PodlesSphere => Some(PoissonStructure::PodlesStandard),
        Preset::PodlesProductPower(n) => Some(PoissonStructure::ProductPodles(n)),
        Preset::EvenSphere(n) => Some(PoissonStructure::EvenSphereCoinduced(n)),
        Preset::OddPlane(_) => None,
    }
}

/// The commuting variable a generator degenerates to.
pub fn dequantize_generator(preset: Preset, g: Generator) -> Var {
    match (preset.is_product(), g.family) {
        (false, Family::T) => Var::T,
        (false, Family::A) => Var::A(g.index),
        (false, Family::AStar) => Var::ABar(g.index),
        (true, Family::T) => Var::Tau(g.index),
        (true, Family::A) => Var::Alpha(g.index),
        (true, Family::AStar) => Var::AlphaBar(g.index),
    }
}

pub fn dequantize_word(preset: Preset, w: &Word) -> Monomial {
    Monomial::from_pairs(w.letters().iter().map(|g| (dequantize_generator(preset, *g), 2)))
}

pub fn semiclassical_bracket(alg: &Algebra, f: &NCPoly, g: &NCPoly) -> Result<ClassicalPoly> {
    let c = alg.commutator(f, g)?;
    let preset = alg.preset();
    let mut out = ClassicalPoly::zero();
    for (w, coeff) in c.terms() {
        let limit = coeff.div_one_minus_q()?.at_one();
        out.add_term(dequantize_word(preset, w), limit);
    }
    Ok(match classical_structure(preset) {
        Some(p) => p.reduce(&out),
        None => out,
    })
}

/// Limit bracket minus the reduced classical bracket, for every generator
/// pair `u <= v` of the even sphere.
pub fn verify_semiclassical(n: usize) -> Result<Vec<PairResidual>> {
    let preset = Preset::EvenSphere(n);
    let alg = Algebra::new(preset);
    let classical = PoissonStructure::EvenSphereCoinduced(n);
    let gens = preset.generators();
    let mut out = Vec::new();
    for (i, &u) in gens.iter().enumerate() {
        for &v in &gens[i..] {
            let limit = semiclassical_bracket(&alg, &alg.generator(u)?, &alg.generator(v)?)?;
            let (cu, cv) = (dequantize_generator(preset, u), dequantize_generator(preset, v));
            let expected = classical.bracket(&ClassicalPoly::var(cu), &ClassicalPoly::var(cv))?;
            out.push(PairResidual { pair: (cu, cv), residual: limit.sub(&expected) });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(x: Var) -> ClassicalPoly {
        ClassicalPoly::var(x)
    }

    #[test]
    fn bracket_examples() {
        let alg = Algebra::new(Preset::EvenSphere(2));
        let (a1, a2, t) = (alg.a(1).unwrap(), alg.a(2).unwrap(), alg.t(0).unwrap());
        let b = semiclassical_bracket(&alg, &a1, &a2).unwrap();
        assert_eq!(b, var(Var::A(1)).mul(&var(Var::A(2))));
        let b = semiclassical_bracket(&alg, &a1, &t).unwrap();
        assert_eq!(b, var(Var::A(1)).mul(&var(Var::T)).scale_int(-2));

        let alg = Algebra::new(Preset::EvenSphere(1));
        let b = semiclassical_bracket(&alg, &alg.a(1).unwrap(), &alg.a_star(1).unwrap()).unwrap();
        let raw = var(Var::T).pow(2).sub(&var(Var::A(1)).mul(&var(Var::ABar(1)))).scale_int(2);
        assert_eq!(b, PoissonStructure::EvenSphereCoinduced(1).reduce(&raw));
    }

    #[test]
    fn podles_limit_matches_the_product_table() {
        let alg = Algebra::new(Preset::PodlesSphere);
        let (t, a, s) = (alg.t(1).unwrap(), alg.a(1).unwrap(), alg.a_star(1).unwrap());
        let p = PoissonStructure::PodlesStandard;
        for (f, g, x, y) in [
            (&a, &t, Var::Alpha(1), Var::Tau(1)),
            (&s, &t, Var::AlphaBar(1), Var::Tau(1)),
            (&a, &s, Var::Alpha(1), Var::AlphaBar(1)),
        ] {
            let limit = semiclassical_bracket(&alg, f, g).unwrap();
            assert_eq!(limit, p.bracket(&var(x), &var(y)).unwrap());
        }
    }

    #[test]
    fn limit_matches_the_coinduced_structure() {
        for n in 1..=3 {
            for r in verify_semiclassical(n).unwrap() {
                assert!(r.residual.is_zero(), "n = {n}, {:?}: {}", r.pair, r.residual);
            }
        }
    }

    #[test]
    fn limit_is_antisymmetric() {
        let alg = Algebra::new(Preset::EvenSphere(2));
        let gens = Preset::EvenSphere(2).generators();
        for &u in &gens {
            for &v in &gens {
                let (f, g) = (alg.generator(u).unwrap(), alg.generator(v).unwrap());
                let fg = semiclassical_bracket(&alg, &f, &g).unwrap();
                let gf = semiclassical_bracket(&alg, &g, &f).unwrap();
                assert!(fg.add(&gf).is_zero());
            }
        }
    }
}

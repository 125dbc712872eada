use alloc::vec::Vec;
use core::fmt;

use super::classical::{ClassicalPoly, Monomial, Var};
use crate::error::{Error, Result};
use crate::scalars::Rational;

/// The classical Poisson structures on coordinate rings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PoissonStructure {
    /// The Podleś sphere in `alpha1, alpha1*, tau1`.
    PodlesStandard,
    /// `n` commuting copies of the Podleś sphere.
    ProductPodles(usize),
    /// The even sphere in `a_i, a_i*, t`.
    EvenSphereCoinduced(usize),
    /// The chart `z_i = a_i / t` on the even sphere.
    ChartPlane(usize),
}

fn v(x: Var) -> ClassicalPoly {
    ClassicalPoly::var(x)
}

fn vv(x: Var, y: Var) -> ClassicalPoly {
    v(x).mul(&v(y))
}

impl PoissonStructure {
    pub fn rank(self) -> usize {
        match self {
            PoissonStructure::PodlesStandard => 1,
            PoissonStructure::ProductPodles(n)
            | PoissonStructure::EvenSphereCoinduced(n)
            | PoissonStructure::ChartPlane(n) => n,
        }
    }

    /// Generators in a fixed order.
    pub fn generators(self) -> Vec<Var> {
        let n = self.rank() as u16;
        let mut out = Vec::new();
        match self {
            PoissonStructure::PodlesStandard | PoissonStructure::ProductPodles(_) => {
                for i in 1..=n {
                    out.extend([Var::Tau(i), Var::Alpha(i), Var::AlphaBar(i)]);
                }
            }
            PoissonStructure::EvenSphereCoinduced(_) => {
                out.push(Var::T);
                for i in 1..=n {
                    out.extend([Var::A(i), Var::ABar(i)]);
                }
            }
            PoissonStructure::ChartPlane(_) => {
                for i in 1..=n {
                    out.extend([Var::Z(i), Var::ZBar(i)]);
                }
            }
        }
        out
    }

    pub fn contains(self, x: Var) -> bool {
        let n = self.rank() as u16;
        let ok = |i: u16| (1..=n).contains(&i);
        match (self, x) {
            (PoissonStructure::PodlesStandard | PoissonStructure::ProductPodles(_), Var::Tau(i))
            | (PoissonStructure::PodlesStandard | PoissonStructure::ProductPodles(_), Var::Alpha(i))
            | (PoissonStructure::PodlesStandard | PoissonStructure::ProductPodles(_), Var::AlphaBar(i))
            | (PoissonStructure::EvenSphereCoinduced(_), Var::A(i))
            | (PoissonStructure::EvenSphereCoinduced(_), Var::ABar(i))
            | (PoissonStructure::ChartPlane(_), Var::Z(i))
            | (PoissonStructure::ChartPlane(_), Var::ZBar(i)) => ok(i),
            (PoissonStructure::EvenSphereCoinduced(_), Var::T) => true,
            _ => false,
        }
    }

    /// Table entry for one orientation of the pair, `None` if not listed.
    fn table(self, x: Var, y: Var) -> Option<ClassicalPoly> {
        use Var::*;
        match self {
            PoissonStructure::PodlesStandard | PoissonStructure::ProductPodles(_) => match (x, y) {
                (Alpha(i), Tau(j)) if i == j => Some(vv(x, y).scale_int(-2)),
                (AlphaBar(i), Tau(j)) if i == j => Some(vv(x, y).scale_int(2)),
                (Alpha(i), AlphaBar(j)) if i == j => Some(v(Tau(i)).pow(2).sub(&vv(x, y)).scale_int(2)),
                _ => None,
            },
            PoissonStructure::EvenSphereCoinduced(_) => match (x, y) {
                (A(k), A(l)) if k < l => Some(vv(x, y)),
                (ABar(k), ABar(l)) if k < l => Some(vv(x, y).scale_int(-1)),
                (A(k), ABar(l)) if k != l => Some(vv(x, y).scale_int(-3)),
                (A(_), T) => Some(vv(x, y).scale_int(-2)),
                (ABar(_), T) => Some(vv(x, y).scale_int(2)),
                (A(k), ABar(l)) if k == l => {
                    let mut p = v(T).pow(2).sub(&vv(x, y));
                    for m in 1..k {
                        p = p.add(&vv(A(m), ABar(m)));
                    }
                    Some(p.scale_int(2))
                }
                _ => None,
            },
            PoissonStructure::ChartPlane(_) => match (x, y) {
                (Z(k), Z(l)) if k < l => Some(vv(x, y)),
                (ZBar(k), ZBar(l)) if k < l => Some(vv(x, y).scale_int(-1)),
                (Z(k), ZBar(l)) if k != l => Some(vv(x, y)),
                (Z(k), ZBar(l)) if k == l => {
                    let mut p = ClassicalPoly::one();
                    for m in 1..=k {
                        p = p.add(&vv(Z(m), ZBar(m)));
                    }
                    Some(p.scale_int(2))
                }
                _ => None,
            },
        }
    }

    /// `{x, y}` on generators, unreduced.
    pub fn generator_bracket(self, x: Var, y: Var) -> ClassicalPoly {
        if x == y {
            return ClassicalPoly::zero();
        }
        if let Some(p) = self.table(x, y) {
            return p;
        }
        match self.table(y, x) {
            Some(p) => p.scale_int(-1),
            None => ClassicalPoly::zero(),
        }
    }

    fn check(self, f: &ClassicalPoly) -> Result<()> {
        for x in f.variables() {
            if !self.contains(x) {
                return Err(Error::VariableMismatch(x.name(), self.label()));
            }
        }
        Ok(())
    }

    pub fn label(self) -> &'static str {
        match self {
            PoissonStructure::PodlesStandard => "PodlesStandard",
            PoissonStructure::ProductPodles(_) => "ProductPodles",
            PoissonStructure::EvenSphereCoinduced(_) => "EvenSphereCoinduced",
            PoissonStructure::ChartPlane(_) => "ChartPlane",
        }
    }

    /// Reduction rules `(u, v) -> r`: any monomial divisible by `u v` has
    /// that factor replaced by `r`.
    pub fn relations(self) -> Vec<(Var, Var, ClassicalPoly)> {
        let n = self.rank() as u16;
        match self {
            PoissonStructure::PodlesStandard | PoissonStructure::ProductPodles(_) => (1..=n)
                .map(|i| {
                    let tau = v(Var::Tau(i));
                    (Var::Alpha(i), Var::AlphaBar(i), tau.sub(&tau.pow(2)))
                })
                .collect(),
            PoissonStructure::EvenSphereCoinduced(_) => {
                let t = v(Var::T);
                let mut r = t.sub(&t.pow(2));
                for i in 1..n {
                    r = r.sub(&vv(Var::A(i), Var::ABar(i)));
                }
                alloc::vec![(Var::A(n), Var::ABar(n), r)]
            }
            PoissonStructure::ChartPlane(_) => Vec::new(),
        }
    }

    /// Normal form modulo the ambient relations.
    pub fn reduce(self, f: &ClassicalPoly) -> ClassicalPoly {
        let rels = self.relations();
        let mut pending: Vec<(Monomial, Rational)> = f.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        let mut out = ClassicalPoly::zero();
        while let Some((m, c)) = pending.pop() {
            let hit = rels.iter().find(|(x, y, _)| m.half_exp(*x) >= 2 && m.half_exp(*y) >= 2);
            match hit {
                None => out.add_term(m, c),
                Some((x, y, r)) => {
                    let mut rest = m.clone();
                    rest.mul_var(*x, -2);
                    rest.mul_var(*y, -2);
                    for (rm, rc) in r.terms() {
                        pending.push((rest.mul(rm), &c * rc));
                    }
                }
            }
        }
        out
    }

    /// `{f, g}` by the Leibniz rule from the generator table, reduced.
    pub fn bracket(self, f: &ClassicalPoly, g: &ClassicalPoly) -> Result<ClassicalPoly> {
        self.check(f)?;
        self.check(g)?;
        Ok(self.reduce(&self.bracket_unreduced(f, g)))
    }

    pub(crate) fn bracket_unreduced(self, f: &ClassicalPoly, g: &ClassicalPoly) -> ClassicalPoly {
        let mut out = ClassicalPoly::zero();
        let (fv, gv) = (f.variables(), g.variables());
        for &x in &fv {
            let dfx = f.derivative(x);
            for &y in &gv {
                let b = self.generator_bracket(x, y);
                if b.is_zero() {
                    continue;
                }
                out = out.add(&dfx.mul(&g.derivative(y)).mul(&b));
            }
        }
        out
    }

    /// Reduced cyclic sum `{x,{y,z}} + {y,{z,x}} + {z,{x,y}}` on every
    /// triple of distinct generators.
    pub fn check_jacobi(self) -> JacobiReport {
        let gens = self.generators();
        let mut report = JacobiReport { triples_checked: 0, failures: Vec::new() };
        for (i, &x) in gens.iter().enumerate() {
            for (j, &y) in gens.iter().enumerate().skip(i + 1) {
                for &z in gens.iter().skip(j + 1) {
                    report.triples_checked += 1;
                    let b = |a: Var, p: &ClassicalPoly| self.bracket_unreduced(&v(a), p);
                    let sum = b(x, &self.generator_bracket(y, z))
                        .add(&b(y, &self.generator_bracket(z, x)))
                        .add(&b(z, &self.generator_bracket(x, y)));
                    let sum = self.reduce(&sum);
                    if !sum.is_zero() {
                        report.failures.push(([x, y, z], sum));
                    }
                }
            }
        }
        report
    }

    /// Whether each relation generates a Poisson ideal: the bracket of every
    /// generator with `u v - r` reduces to zero.
    pub fn relations_are_poisson(self) -> bool {
        self.relations().iter().all(|(x, y, r)| {
            let rel = vv(*x, *y).sub(r);
            self.generators().into_iter().all(|g| self.reduce(&self.bracket_unreduced(&v(g), &rel)).is_zero())
        })
    }
}

impl fmt::Display for PoissonStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PoissonStructure::PodlesStandard => write!(f, "PodlesStandard"),
            other => write!(f, "{}({})", other.label(), other.rank()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct JacobiReport {
    pub triples_checked: usize,
    pub failures: Vec<([Var; 3], ClassicalPoly)>,
}

impl JacobiReport {
    pub fn max_residual(&self) -> f64 {
        self.failures.iter().map(|(_, p)| p.max_abs_coeff()).fold(0.0, f64::max)
    }
}

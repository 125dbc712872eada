//! The recursive idempotents over the odd quantum plane, their images over
//! the even sphere, and the pairings with the counit and the Fock character.
//!
//! `e_0 = 1 - y`,
//! `e_{k+1} = [[e_k, C_k x_{k+1}*], [C_k x_{k+1}, 1 - phi(e_k)]]`,
//! with `C_0 = q`, `C_{k+1} = diag(C_k, q C_k)`.

use alloc::vec::Vec;

use super::matrix::NCMatrix;
use crate::error::{Error, Result};
use crate::fockrep::{char_trace, TailBound};
use crate::ncalg::{Algebra, NCPoly, Preset};
use crate::scalars::{rat, LaurentQ};
use num_traits::ToPrimitive;

/// The diagonal of `C_k`, a `2^k` vector of powers of `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalScaler {
    pub diag: Vec<LaurentQ>,
}

impl DiagonalScaler {
    pub fn new(k: usize) -> Self {
        let mut diag = alloc::vec![LaurentQ::q_pow(1)];
        for _ in 0..k {
            let upper: Vec<LaurentQ> = diag.iter().map(|c| c.shift(1)).collect();
            diag.extend(upper);
        }
        Self { diag }
    }

    pub fn squared(&self) -> Self {
        Self { diag: self.diag.iter().map(|c| c * c).collect() }
    }

    /// `C_k` times `f`, as a matrix.
    pub fn times(&self, f: &NCPoly) -> NCMatrix {
        NCMatrix::scalar(f, self.diag.len()).scale_rows(&self.diag)
    }
}

/// The scaling `x_i -> q^2 x_i`, `y -> q^2 y`. The odd-plane relations are
/// homogeneous, so on normal forms it multiplies each word by `q^{2 len}`.
pub fn phi_n(f: &NCPoly) -> NCPoly {
    let terms = f.terms().map(|(w, c)| (w.clone(), c.shift(2 * w.len() as i32))).collect();
    NCPoly::from_map(f.preset(), terms)
}

fn odd_plane(n: usize) -> Result<Algebra> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    Ok(Algebra::new(Preset::OddPlane(n)))
}

pub fn build_e(n: usize, k: usize) -> Result<NCMatrix> {
    let alg = odd_plane(n)?;
    if k > n {
        return Err(Error::IndexViolation(alloc::format!("k = {k} exceeds n = {n}")));
    }
    let y = alg.t(0)?;
    let mut e = NCMatrix::scalar(&alg.one().try_sub(&y)?, 1);
    for level in 0..k {
        let c = DiagonalScaler::new(level);
        let i = level as u16 + 1;
        let size = e.size();
        let phi_e = e.map_entries(|f| Ok(phi_n(f)))?;
        let lower = NCMatrix::identity(&alg, size).sub(&phi_e)?;
        e = NCMatrix::block(&e, &c.times(&alg.a_star(i)?), &c.times(&alg.a(i)?), &lower)?;
    }
    Ok(e)
}

/// `e_k C_k x_l* - C_k x_l* phi(e_k)` for `k < l <= n`.
pub fn check_lemma_m(n: usize, k: usize, l: usize) -> Result<NCMatrix> {
    if !(k < l && l <= n) {
        return Err(Error::IndexViolation(alloc::format!("need k < l <= n, got k={k} l={l} n={n}")));
    }
    let alg = odd_plane(n)?;
    let e = build_e(n, k)?;
    let cx = DiagonalScaler::new(k).times(&alg.a_star(l as u16)?);
    let phi_e = e.map_entries(|f| Ok(phi_n(f)))?;
    e.mul(&alg, &cx)?.sub(&cx.mul(&alg, &phi_e)?)
}

/// `q^2 sum_{i <= k} x_i* x_i - y (1 - y)`.
pub fn defect_scalar(alg: &Algebra, k: usize) -> Result<NCPoly> {
    let y = alg.t(0)?;
    let mut s = alg.mul(&y, &y)?.try_sub(&y)?;
    for i in 1..=k as u16 {
        let p = alg.mul(&alg.a_star(i)?, &alg.a(i)?)?;
        s = s.try_add(&p.scale(&LaurentQ::q_pow(2)))?;
    }
    Ok(s)
}

/// The expected value of `e_k^2 - e_k`: the defect scalar times `q^{-2} C_k^2`.
pub fn defect_rhs(n: usize, k: usize) -> Result<NCMatrix> {
    let alg = odd_plane(n)?;
    let s = defect_scalar(&alg, k)?;
    let c2 = DiagonalScaler::new(k).squared();
    let diag: Vec<LaurentQ> = c2.diag.iter().map(|c| c.shift(-2)).collect();
    Ok(NCMatrix::scalar(&s, c2.diag.len()).scale_rows(&diag))
}

/// `e_k^2 - e_k - defect_rhs(n, k)`.
pub fn check_defect(n: usize, k: usize) -> Result<NCMatrix> {
    let alg = odd_plane(n)?;
    let e = build_e(n, k)?;
    e.mul(&alg, &e)?.sub(&e)?.sub(&defect_rhs(n, k)?)
}

/// Applies the quotient map onto the even sphere entrywise.
pub fn project_to_sphere(m: &NCMatrix) -> Result<NCMatrix> {
    let sphere = Algebra::new(Preset::EvenSphere(m.preset().rank()));
    m.map_entries(|f| sphere.project(f))
}

pub fn build_g(n: usize) -> Result<NCMatrix> {
    project_to_sphere(&build_e(n, n)?)
}

/// `G^2 - G` over the even sphere.
pub fn idempotency_residual(n: usize) -> Result<NCMatrix> {
    let alg = Algebra::new(Preset::EvenSphere(n));
    let g = build_g(n)?;
    g.mul(&alg, &g)?.sub(&g)
}

pub fn matrix_trace(m: &NCMatrix) -> Result<NCPoly> {
    m.trace()
}

/// `2^{k-1} - (1 - q^2)^k y` in the preset of `alg`, the closed form of the
/// trace of `e_k` (with `t` in place of `y` over the sphere).
pub fn expected_trace(alg: &Algebra, k: usize) -> Result<NCPoly> {
    let y = alg.t(0)?;
    let rank = alg.scalar(LaurentQ::constant(rat(1 << k, 2)));
    rank.try_sub(&y.scale(&LaurentQ::one_minus_q_pow(2).pow(k as u32)))
}

/// The counit applied to the trace of `G`, which must be the integer `2^{n-1}`.
pub fn pair_epsilon(n: usize) -> Result<i64> {
    let eps = matrix_trace(&build_g(n)?)?.epsilon();
    eps.as_constant()
        .filter(|c| c.is_integer())
        .and_then(|c| c.to_integer().to_i64())
        .ok_or_else(|| Error::InvalidParameter(alloc::format!("counit pairing {eps} is not an integer")))
}

/// The Fock character applied to the trace of `G`.
pub fn pair_charge(n: usize, q0: f64, levels: usize) -> Result<TailBound> {
    char_trace(&matrix_trace(&build_g(n)?)?, q0, levels)
}

/// The same pairing summed entry by entry over the diagonal of `G`.
pub fn pair_charge_entrywise(n: usize, q0: f64, levels: usize) -> Result<TailBound> {
    let g = build_g(n)?;
    let mut total = TailBound { value: 0.0, bound: 0.0 };
    for i in 0..g.size() {
        let tb = char_trace(g.get(i, i), q0, levels)?;
        total.value += tb.value;
        total.bound += tb.bound;
    }
    Ok(total)
}

use alloc::vec;
use alloc::vec::Vec;

use super::sigma::{check_q, q_pochhammer, represent};
use super::space::{SparseOperator, TruncatedFock};
use crate::error::{Error, Result};
use crate::ncalg::{Algebra, Generator, Preset, RewriteSystem, Word};
use crate::scalars::{powi, LaurentQ};

fn product(ops: &[&SparseOperator], space: TruncatedFock) -> SparseOperator {
    ops.iter().fold(SparseOperator::identity(space), |acc, m| acc.mul(m))
}

/// Largest column norm of `L - R` over interior basis states
/// (`k_i < N - margin`), for every defining relation `L = R`, computed with
/// products of truncated generator matrices.
pub fn verify_relations(preset: Preset, q0: f64, levels: usize, margin: usize) -> Result<f64> {
    check_q(q0)?;
    if margin < 2 || margin >= levels {
        return Err(Error::InvalidParameter(alloc::format!(
            "margin {margin} must be at least 2 and below the truncation {levels}"
        )));
    }
    let alg = Algebra::new(preset);
    let space = TruncatedFock::new(preset.rank(), levels)?;
    let mut mats = alloc::collections::BTreeMap::new();
    for g in preset.generators() {
        mats.insert(g, represent(&alg.generator(g)?, q0, levels)?);
    }
    let word_op = |w: &Word| {
        let ops: Vec<&SparseOperator> = w.letters().iter().map(|g| &mats[g]).collect();
        product(&ops, space)
    };
    let mut relations: Vec<(Word, Vec<(Word, LaurentQ)>)> = RewriteSystem::for_preset(preset)
        .rules()
        .map(|([l, r], rhs)| (Word(vec![l, r]), rhs.clone()))
        .collect();
    if let Preset::EvenSphere(n) = preset {
        // sum_i q^2 a_i* a_i = t - t^2
        let t = Generator::t();
        let mut rhs = vec![(Word(vec![t]), LaurentQ::one()), (Word(vec![t, t]), -LaurentQ::one())];
        for i in 1..n as u16 {
            rhs.push((Word(vec![Generator::a_star(i), Generator::a(i)]), -LaurentQ::q_pow(2)));
        }
        let lhs = Word(vec![Generator::a_star(n as u16), Generator::a(n as u16)]);
        let scaled = rhs.into_iter().map(|(w, c)| (w, &c * &LaurentQ::q_pow(-2))).collect();
        relations.push((lhs, scaled));
    }
    let interior = |col: usize| space.state(col).iter().all(|&k| k + margin < levels);
    let mut worst: f64 = 0.0;
    for (lhs, rhs) in &relations {
        let mut diff = word_op(lhs);
        for (w, c) in rhs {
            diff = diff.sub(&word_op(w).scale(c.eval_f64(q0)?));
        }
        for (col, norm) in diff.column_norms() {
            if interior(col) {
                worst = worst.max(norm);
            }
        }
    }
    Ok(worst)
}

fn check_multi_index(m: &[usize], levels: usize) -> Result<()> {
    if m.is_empty() {
        return Err(Error::InvalidParameter("empty multi-index".into()));
    }
    let total: usize = m.iter().sum();
    if total + 1 >= levels {
        return Err(Error::TruncationOverflow { needed: total + 2, levels });
    }
    Ok(())
}

/// `a_1*^{m_1} ... a_n*^{m_n}` applied to the vacuum.
fn raised_vacuum(alg: &Algebra, m: &[usize], q0: f64, levels: usize) -> Result<Vec<f64>> {
    let mut letters = Vec::new();
    for (j, &mj) in m.iter().enumerate() {
        letters.extend(core::iter::repeat_n(Generator::a_star(j as u16 + 1), mj));
    }
    let op = represent(&alg.word(&Word(letters))?, q0, levels)?;
    let mut vacuum = vec![0.0; op.space.dim()];
    vacuum[0] = 1.0;
    Ok(op.apply(&vacuum))
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Compares `a_i (prod_j a_j*^{m_j}) psi` with
/// `q^{3 sum_{j<i} m_j + 4 sum_{j>i} m_j + 2(m_i - 1)} (1 - q^{2 m_i})`
/// times the same vector with `m_i` lowered by one; returns the norm of the
/// difference. `i` is 1-based.
pub fn lowering_coefficient_check(i: usize, m: &[usize], q0: f64, levels: usize) -> Result<f64> {
    check_q(q0)?;
    check_multi_index(m, levels)?;
    let n = m.len();
    if i == 0 || i > n {
        return Err(Error::IndexViolation(alloc::format!("i = {i} with n = {n}")));
    }
    let alg = Algebra::new(Preset::EvenSphere(n));
    let v = raised_vacuum(&alg, m, q0, levels)?;
    let lowered = represent(&alg.a(i as u16)?, q0, levels)?.apply(&v);
    let expected = if m[i - 1] == 0 {
        vec![0.0; v.len()]
    } else {
        let below: usize = m[..i - 1].iter().sum();
        let above: usize = m[i..].iter().sum();
        let mi = m[i - 1] as i32;
        let exponent = 3 * below as i32 + 4 * above as i32 + 2 * (mi - 1);
        let coeff = powi(q0, exponent) * (1.0 - powi(q0, 2 * mi));
        let mut mm = m.to_vec();
        mm[i - 1] -= 1;
        raised_vacuum(&alg, &mm, q0, levels)?.into_iter().map(|x| coeff * x).collect()
    };
    let diff: Vec<f64> = lowered.iter().zip(&expected).map(|(a, b)| a - b).collect();
    Ok(norm(&diff))
}

/// `C^m = q^{-(sum m)^2 + sum m_i (m_i + 1)/2} prod (q^2; q^2)_{m_i}^{-1/2}`.
pub fn psi_normalization(m: &[usize], q0: f64) -> f64 {
    let total: i64 = m.iter().map(|&x| x as i64).sum();
    let tri: i64 = m.iter().map(|&x| (x * (x + 1) / 2) as i64).sum();
    let mut c = powi(q0, (tri - total * total) as i32);
    for &mi in m {
        c /= q_pochhammer(q0 * q0, q0 * q0, mi as u32).sqrt();
    }
    c
}

/// Gram matrix of the vectors `psi^m = C^m prod_j a_j*^{m_j} psi`.
pub fn psi_gram(m_list: &[Vec<usize>], q0: f64, levels: usize) -> Result<Vec<Vec<f64>>> {
    check_q(q0)?;
    let n = m_list.first().map(Vec::len).ok_or_else(|| Error::InvalidParameter("no multi-indices".into()))?;
    if m_list.iter().any(|m| m.len() != n) {
        return Err(Error::InvalidParameter("multi-indices of different lengths".into()));
    }
    let alg = Algebra::new(Preset::EvenSphere(n));
    let mut vectors = Vec::with_capacity(m_list.len());
    for m in m_list {
        check_multi_index(m, levels)?;
        let c = psi_normalization(m, q0);
        vectors.push(raised_vacuum(&alg, m, q0, levels)?.into_iter().map(|x| c * x).collect::<Vec<f64>>());
    }
    Ok(vectors
        .iter()
        .map(|u| vectors.iter().map(|v| u.iter().zip(v).map(|(a, b)| a * b).sum()).collect())
        .collect())
}

/// Every multi-index of length `n` with entries summing to at most `total`.
pub fn multi_indices(n: usize, total: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in multi_indices(n - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

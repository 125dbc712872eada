//! The Fock representation and its character trace.
//!
//! On one factor, `alpha|k> = q^{k-1} (1 - q^{2k})^{1/2} |k-1>` and
//! `tau|k> = q^{2k}|k>`. On `n` factors, `a_i` acts as `alpha` on factor `i`,
//! as `tau^{1/2}` on factors `j < i` and as `tau` on factors `j > i`, while
//! `t` is `tau` on every factor.

use alloc::vec::Vec;

use super::space::{CompensatedSum, SparseOperator, TailBound, TruncatedFock};
use crate::error::{Error, Result};
use crate::ncalg::{Family, Generator, NCPoly, Preset, Word};
use crate::scalars::powi;

/// `(alpha; q)_s = prod_{j=1}^{s} (1 - q^{j-1} alpha)`.
pub fn q_pochhammer(alpha: f64, q0: f64, s: u32) -> f64 {
    let mut acc = 1.0;
    let mut qj = 1.0;
    for _ in 0..s {
        acc *= 1.0 - qj * alpha;
        qj *= q0;
    }
    acc
}

pub(crate) fn check_q(q0: f64) -> Result<()> {
    if !(q0 > 0.0 && q0 < 1.0) {
        return Err(Error::InvalidParameter(alloc::format!("q = {q0} is not in (0, 1)")));
    }
    Ok(())
}

/// Operators of the one-factor representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sigma1 {
    Alpha,
    AlphaStar,
    Tau,
    TauHalf,
}

fn lower(q: f64, k: usize) -> f64 {
    powi(q, k as i32 - 1) * (1.0 - powi(q, 2 * k as i32)).sqrt()
}

fn raise(q: f64, k: usize) -> f64 {
    powi(q, k as i32) * (1.0 - powi(q, 2 * k as i32 + 2)).sqrt()
}

pub fn sigma1(symbol: Sigma1, q0: f64, levels: usize) -> Result<SparseOperator> {
    check_q(q0)?;
    let space = TruncatedFock::new(1, levels)?;
    let mut op = SparseOperator::zero(space);
    for k in 0..levels {
        match symbol {
            Sigma1::Alpha if k > 0 => op.add_entry(k - 1, k, lower(q0, k)),
            Sigma1::AlphaStar if k + 1 < levels => op.add_entry(k + 1, k, raise(q0, k)),
            Sigma1::Tau => op.add_entry(k, k, powi(q0, 2 * k as i32)),
            Sigma1::TauHalf => op.add_entry(k, k, powi(q0, k as i32)),
            _ => {}
        }
    }
    Ok(op)
}

/// Applies one generator to the basis state `k` of the untruncated space,
/// updating `k` in place and returning the coefficient (0 when annihilated).
fn act(preset: Preset, g: Generator, q: f64, k: &mut [usize]) -> f64 {
    let i = g.index as usize;
    if preset.is_product() {
        let ki = k[i - 1];
        return match g.family {
            Family::T => powi(q, 2 * ki as i32),
            Family::A if ki == 0 => 0.0,
            Family::A => {
                k[i - 1] -= 1;
                lower(q, ki)
            }
            Family::AStar => {
                k[i - 1] += 1;
                raise(q, ki)
            }
        };
    }
    if g.family == Family::T {
        return k.iter().map(|&kj| powi(q, 2 * kj as i32)).product();
    }
    let ki = k[i - 1];
    if g.family == Family::A && ki == 0 {
        return 0.0;
    }
    let mut c = 1.0;
    for (j, &kj) in k.iter().enumerate() {
        match (j + 1).cmp(&i) {
            core::cmp::Ordering::Less => c *= powi(q, kj as i32),
            core::cmp::Ordering::Greater => c *= powi(q, 2 * kj as i32),
            core::cmp::Ordering::Equal => {}
        }
    }
    if g.family == Family::A {
        k[i - 1] -= 1;
        c * lower(q, ki)
    } else {
        k[i - 1] += 1;
        c * raise(q, ki)
    }
}

/// Applies a word right to left, leaving the final state in `k`.
pub(crate) fn act_word(preset: Preset, w: &Word, q: f64, k: &mut [usize]) -> f64 {
    let mut c = 1.0;
    for &g in w.letters().iter().rev() {
        c *= act(preset, g, q, k);
        if c == 0.0 {
            return 0.0;
        }
    }
    c
}

fn coefficients(f: &NCPoly, q0: f64) -> Result<Vec<(&Word, f64)>> {
    f.terms().map(|(w, c)| Ok((w, c.eval_f64(q0)?))).collect()
}

/// `P sigma_n(f) P` for the projection `P` onto the truncation.
///
/// Words act on the untruncated space, so each entry is exact: an entry is
/// kept when both its source and target states lie inside the cutoff.
pub fn represent(f: &NCPoly, q0: f64, levels: usize) -> Result<SparseOperator> {
    check_q(q0)?;
    let preset = f.preset();
    let space = TruncatedFock::new(preset.rank(), levels)?;
    let coeffs = coefficients(f, q0)?;
    let mut op = SparseOperator::zero(space);
    for col in 0..space.dim() {
        let start = space.state(col);
        for (w, c) in &coeffs {
            let mut k = start.clone();
            let a = act_word(preset, w, q0, &mut k);
            if a == 0.0 {
                continue;
            }
            if let Some(row) = space.index(&k) {
                op.add_entry(row, col, c * a);
            }
        }
    }
    Ok(op)
}

/// `tr(sigma_n(f) - eps(f))` summed over the truncation.
///
/// The scalar part is dropped before representing, so no identity trace ever
/// enters. Every remaining normal word `w` has diagonal entries bounded by
/// `K_w q^{2 sum k}`, with `K_w = 1` if `w` contains `t` and `q^{-2}`
/// otherwise; the discarded states contribute at most
/// `sum_w |c_w| K_w N^{n-1} q^{2N} / (1 - q^2)^n`.
///
/// Product presets are rejected: their traces diverge.
pub fn char_trace(f: &NCPoly, q0: f64, levels: usize) -> Result<TailBound> {
    check_q(q0)?;
    let preset = f.preset();
    if preset.is_product() {
        return Err(Error::Unsupported(preset));
    }
    let n = preset.rank();
    let space = TruncatedFock::new(n, levels)?;
    let coeffs: Vec<(&Word, f64)> = coefficients(f, q0)?.into_iter().filter(|(w, _)| !w.is_empty()).collect();
    let mut sum = CompensatedSum::default();
    for start in space.states() {
        for (w, c) in &coeffs {
            let mut k = start.clone();
            let a = act_word(preset, w, q0, &mut k);
            if a != 0.0 && k == start {
                sum.add(c * a);
            }
        }
    }
    let mut weight = 0.0;
    for (w, c) in &coeffs {
        let has_t = w.letters().iter().any(|g| g.family == Family::T);
        weight += c.abs() * if has_t { 1.0 } else { powi(q0, -2) };
    }
    let geometric = powi(q0, 2 * levels as i32) / powi(1.0 - q0 * q0, n as i32);
    let bound = weight * powi(levels as f64, n as i32 - 1) * geometric;
    Ok(TailBound { value: sum.value(), bound })
}

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// `n` copies of a Fock space cut off at `levels` states each.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedFock {
    pub n: usize,
    pub levels: usize,
}

impl TruncatedFock {
    pub fn new(n: usize, levels: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("need at least one tensor factor".into()));
        }
        if levels < 2 {
            return Err(Error::InvalidParameter(alloc::format!("truncation {levels} is below 2")));
        }
        levels
            .checked_pow(n as u32)
            .ok_or_else(|| Error::InvalidParameter("truncated space is too large".into()))?;
        Ok(Self { n, levels })
    }

    pub fn dim(&self) -> usize {
        self.levels.pow(self.n as u32)
    }

    /// Row-major position of a multi-index with `k_1` most significant, or
    /// `None` when some `k_i` falls outside the truncation.
    pub fn index(&self, k: &[usize]) -> Option<usize> {
        let mut idx = 0;
        for &ki in k {
            if ki >= self.levels {
                return None;
            }
            idx = idx * self.levels + ki;
        }
        Some(idx)
    }

    pub fn state(&self, mut idx: usize) -> Vec<usize> {
        let mut k = vec![0; self.n];
        for slot in k.iter_mut().rev() {
            *slot = idx % self.levels;
            idx /= self.levels;
        }
        k
    }

    pub fn states(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.dim()).map(|i| self.state(i))
    }
}

/// A sparse real matrix on a truncated Fock space, indexed by basis position.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseOperator {
    pub space: TruncatedFock,
    entries: BTreeMap<(usize, usize), f64>,
}

impl SparseOperator {
    pub fn zero(space: TruncatedFock) -> Self {
        Self { space, entries: BTreeMap::new() }
    }

    pub fn identity(space: TruncatedFock) -> Self {
        let mut op = Self::zero(space);
        for i in 0..space.dim() {
            op.add_entry(i, i, 1.0);
        }
        op
    }

    pub fn add_entry(&mut self, row: usize, col: usize, v: f64) {
        if v == 0.0 {
            return;
        }
        match self.entries.entry((row, col)) {
            Entry::Vacant(slot) => {
                slot.insert(v);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += v;
                if *slot.get() == 0.0 {
                    slot.remove();
                }
            }
        }
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries.get(&(row, col)).copied().unwrap_or(0.0)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), f64)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, *v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn scale(&self, c: f64) -> Self {
        let mut out = Self::zero(self.space);
        for ((r, k), v) in self.entries() {
            out.add_entry(r, k, v * c);
        }
        out
    }

    pub fn add(&self, other: &SparseOperator) -> Self {
        let mut out = self.clone();
        for ((r, k), v) in other.entries() {
            out.add_entry(r, k, v);
        }
        out
    }

    pub fn sub(&self, other: &SparseOperator) -> Self {
        self.add(&other.scale(-1.0))
    }

    pub fn mul(&self, other: &SparseOperator) -> Self {
        let mut out = Self::zero(self.space);
        for ((r, m), a) in self.entries() {
            for (&(_, c), b) in other.entries.range((m, 0)..(m + 1, 0)) {
                out.add_entry(r, c, a * b);
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.space);
        for ((r, c), v) in self.entries() {
            out.add_entry(c, r, v);
        }
        out
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; v.len()];
        for ((r, c), a) in self.entries() {
            out[r] += a * v[c];
        }
        out
    }

    /// Euclidean norm of each column, keyed by column.
    pub fn column_norms(&self) -> BTreeMap<usize, f64> {
        let mut sq: BTreeMap<usize, f64> = BTreeMap::new();
        for ((_, c), v) in self.entries() {
            *sq.entry(c).or_insert(0.0) += v * v;
        }
        sq.into_iter().map(|(c, s)| (c, s.sqrt())).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.values().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// A computed value with a rigorous bound on its truncation error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TailBound {
    pub value: f64,
    pub bound: f64,
}

/// Compensated (Neumaier) summation; the low word carries the rounding
/// error of every addition.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct CompensatedSum {
    hi: f64,
    lo: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let s = self.hi + x;
        let e = if self.hi.abs() >= x.abs() { (self.hi - s) + x } else { (x - s) + self.hi };
        self.hi = s;
        self.lo += e;
    }

    pub(crate) fn value(&self) -> f64 {
        self.hi + self.lo
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_is_row_major() {
        let s = TruncatedFock::new(2, 3).unwrap();
        assert_eq!(s.dim(), 9);
        assert_eq!(s.index(&[1, 2]), Some(5));
        assert_eq!(s.state(5), vec![1, 2]);
        assert_eq!(s.index(&[3, 0]), None);
        for i in 0..s.dim() {
            assert_eq!(s.index(&s.state(i)), Some(i));
        }
    }

    #[test]
    fn rejects_bad_truncations() {
        assert!(TruncatedFock::new(1, 1).is_err());
        assert!(TruncatedFock::new(0, 4).is_err());
    }

    #[test]
    fn compensated_sum_keeps_small_terms() {
        let mut s = CompensatedSum::default();
        s.add(1.0);
        for _ in 0..1000 {
            s.add(1e-17);
        }
        assert_eq!(s.value(), 1.0 + 1e-14);
    }
}

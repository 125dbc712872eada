use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::ncalg::{Algebra, NCPoly, Preset};
use crate::scalars::LaurentQ;

/// A square matrix of normal-form elements of one preset.
#[derive(Clone, PartialEq, Eq)]
pub struct NCMatrix {
    preset: Preset,
    size: usize,
    entries: Vec<NCPoly>,
}

impl NCMatrix {
    pub fn zero(preset: Preset, size: usize) -> Self {
        Self { preset, size, entries: alloc::vec![NCPoly::zero(preset); size * size] }
    }

    pub fn identity(alg: &Algebra, size: usize) -> Self {
        let mut m = Self::zero(alg.preset(), size);
        for i in 0..size {
            m.set(i, i, alg.one());
        }
        m
    }

    /// `f` times the identity.
    pub fn scalar(f: &NCPoly, size: usize) -> Self {
        let mut m = Self::zero(f.preset(), size);
        for i in 0..size {
            m.set(i, i, f.clone());
        }
        m
    }

    pub fn preset(&self) -> Preset {
        self.preset
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &NCPoly {
        &self.entries[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, f: NCPoly) {
        self.entries[i * self.size + j] = f;
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &NCPoly)> + '_ {
        self.entries.iter().enumerate().map(|(k, f)| (k / self.size, k % self.size, f))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(NCPoly::is_zero)
    }

    fn check(&self, other: &NCMatrix) -> Result<()> {
        if self.preset != other.preset {
            return Err(Error::PresetMismatch(self.preset, other.preset));
        }
        if self.size != other.size {
            return Err(Error::InvalidParameter(alloc::format!(
                "matrix sizes {} and {} differ",
                self.size,
                other.size
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &NCMatrix) -> Result<NCMatrix> {
        self.check(other)?;
        let entries =
            self.entries.iter().zip(&other.entries).map(|(a, b)| a.try_add(b)).collect::<Result<_>>()?;
        Ok(NCMatrix { entries, ..self.clone() })
    }

    pub fn sub(&self, other: &NCMatrix) -> Result<NCMatrix> {
        self.check(other)?;
        let entries =
            self.entries.iter().zip(&other.entries).map(|(a, b)| a.try_sub(b)).collect::<Result<_>>()?;
        Ok(NCMatrix { entries, ..self.clone() })
    }

    pub fn mul(&self, alg: &Algebra, other: &NCMatrix) -> Result<NCMatrix> {
        self.check(other)?;
        let n = self.size;
        let mut out = NCMatrix::zero(self.preset, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = alg.zero();
                for k in 0..n {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.try_add(&alg.mul(a, b)?)?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Entry `(i, j)` scaled by `row[i]`.
    pub fn scale_rows(&self, row: &[LaurentQ]) -> NCMatrix {
        let mut out = self.clone();
        for (k, f) in out.entries.iter_mut().enumerate() {
            *f = f.scale(&row[k / self.size]);
        }
        out
    }

    pub fn map_entries<F: Fn(&NCPoly) -> Result<NCPoly>>(&self, f: F) -> Result<NCMatrix> {
        let entries: Vec<NCPoly> = self.entries.iter().map(f).collect::<Result<_>>()?;
        let preset = entries.first().map(NCPoly::preset).unwrap_or(self.preset);
        Ok(NCMatrix { preset, size: self.size, entries })
    }

    /// `[[a, b], [c, d]]` from equally sized blocks.
    pub fn block(a: &NCMatrix, b: &NCMatrix, c: &NCMatrix, d: &NCMatrix) -> Result<NCMatrix> {
        a.check(b)?;
        a.check(c)?;
        a.check(d)?;
        let k = a.size;
        let mut out = NCMatrix::zero(a.preset, 2 * k);
        for i in 0..k {
            for j in 0..k {
                out.set(i, j, a.get(i, j).clone());
                out.set(i, j + k, b.get(i, j).clone());
                out.set(i + k, j, c.get(i, j).clone());
                out.set(i + k, j + k, d.get(i, j).clone());
            }
        }
        Ok(out)
    }

    /// Sum of the diagonal entries.
    pub fn trace(&self) -> Result<NCPoly> {
        (0..self.size).try_fold(NCPoly::zero(self.preset), |acc, i| acc.try_add(self.get(i, i)))
    }
}

impl fmt::Debug for NCMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "NCMatrix[{}; {}x{}]", self.preset, self.size, self.size)?;
        for i in 0..self.size {
            let row: Vec<alloc::string::String> = (0..self.size).map(|j| self.get(i, j).to_text()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

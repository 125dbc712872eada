//! Numeric structure matrix of the chart brackets and its Pfaffian.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Zero;

use super::classical::Var;
use super::structure::PoissonStructure;
use crate::error::{Error, Result};

/// The antisymmetric matrix `S_ij = {w_i, w_j}` at a point, with
/// `w_{2k-1} = z_k` and `w_{2k} = z_k*`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureMatrixPoint {
    pub n: usize,
    pub point: Vec<Complex64>,
    pub matrix: Vec<Vec<Complex64>>,
}

fn check_point(n: usize, point: &[Complex64]) -> Result<()> {
    if n == 0 || point.len() != n {
        return Err(Error::InvalidParameter(alloc::format!("expected {n} coordinates, got {}", point.len())));
    }
    Ok(())
}

fn coordinate(point: &[Complex64], x: Var) -> Complex64 {
    match x {
        Var::Z(i) => point[i as usize - 1],
        Var::ZBar(i) => point[i as usize - 1].conj(),
        _ => Complex64::zero(),
    }
}

pub fn structure_matrix(n: usize, point: &[Complex64]) -> Result<StructureMatrixPoint> {
    check_point(n, point)?;
    let chart = PoissonStructure::ChartPlane(n);
    let w = chart.generators();
    let matrix = w
        .iter()
        .map(|&x| w.iter().map(|&y| chart.generator_bracket(x, y).eval(|v| coordinate(point, v))).collect())
        .collect();
    Ok(StructureMatrixPoint { n, point: point.to_vec(), matrix })
}

/// `Pf S(n) = Pf S(n-1) * 2 (1 + sum_{l <= n} |z_l|^2)`, `Pf S(0) = 1`.
pub fn pfaffian_recursive(n: usize, point: &[Complex64]) -> Result<f64> {
    check_point(n, point)?;
    let mut pf = 1.0;
    let mut radius = 1.0;
    for z in point {
        radius += z.norm_sqr();
        pf *= 2.0 * radius;
    }
    Ok(pf)
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn determinant(matrix: &[Vec<Complex64>]) -> Complex64 {
    let mut a: Vec<Vec<Complex64>> = matrix.to_vec();
    let size = a.len();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..size {
        let pivot = (col..size).max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm())).unwrap_or(col);
        if a[pivot][col].is_zero() {
            return Complex64::zero();
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col];
        det *= p;
        let (upper, lower) = a.split_at_mut(col + 1);
        let pivot_row = &upper[col];
        for row in lower.iter_mut() {
            let factor = row[col] / p;
            if factor.is_zero() {
                continue;
            }
            for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= factor * y;
            }
        }
    }
    det
}

//! The commutative projector at a point of the classical even sphere.
//!
//! `G_0 = 1 - t`, `G_{k+1} = [[G_k, conj(a_{k+1})], [a_{k+1}, 1 - G_k]]`.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type ComplexMatrix = Vec<Vec<Complex64>>;

#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalProjector {
    pub matrix: ComplexMatrix,
    /// Frobenius norm of `G^2 - G`.
    pub idempotency_residual: f64,
    pub trace: Complex64,
}

/// Largest allowed `|sum |a_i|^2 - t (1 - t)|`.
pub const SPHERE_TOLERANCE: f64 = 1e-12;

pub fn sphere_residual(t: f64, a: &[Complex64]) -> f64 {
    let sum: f64 = a.iter().map(|z| z.norm_sqr()).sum();
    (sum - t * (1.0 - t)).abs()
}

/// Rescales `direction` to the sphere point with the given `t`; returns
/// `None` for a zero direction unless `t` is a pole.
pub fn sphere_point(t: f64, direction: &[Complex64]) -> Option<Vec<Complex64>> {
    let radius = (t * (1.0 - t)).max(0.0).sqrt();
    let len = direction.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if len == 0.0 {
        return (radius == 0.0).then(|| direction.to_vec());
    }
    Some(direction.iter().map(|z| z * (radius / len)).collect())
}

fn matmul(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

pub fn classical_g(t: f64, a: &[Complex64]) -> Result<ClassicalProjector> {
    if a.is_empty() {
        return Err(Error::InvalidParameter("need at least one coordinate a_i".into()));
    }
    let off = sphere_residual(t, a);
    if off > SPHERE_TOLERANCE {
        return Err(Error::OffSphere(off));
    }
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let mut g: ComplexMatrix = alloc::vec![alloc::vec![one - t]];
    for ak in a {
        let k = g.len();
        let mut next = alloc::vec![alloc::vec![zero; 2 * k]; 2 * k];
        for i in 0..k {
            for j in 0..k {
                next[i][j] = g[i][j];
                let id = if i == j { one } else { zero };
                next[i + k][j + k] = id - g[i][j];
            }
            next[i][i + k] = ak.conj();
            next[i + k][i] = *ak;
        }
        g = next;
    }
    let sq = matmul(&g, &g);
    let mut res = 0.0;
    for (r1, r2) in sq.iter().zip(&g) {
        for (x, y) in r1.iter().zip(r2) {
            res += (x - y).norm_sqr();
        }
    }
    let trace = (0..g.len()).map(|i| g[i][i]).sum();
    Ok(ClassicalProjector { matrix: g, idempotency_residual: res.sqrt(), trace })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn poles() {
        let p = classical_g(0.0, &[c(0.0)]).unwrap();
        assert_eq!(p.matrix, alloc::vec![alloc::vec![c(1.0), c(0.0)], alloc::vec![c(0.0), c(0.0)]]);
        assert_eq!(p.trace, c(1.0));
        let p = classical_g(1.0, &[c(0.0)]).unwrap();
        assert_eq!(p.matrix, alloc::vec![alloc::vec![c(0.0), c(0.0)], alloc::vec![c(0.0), c(1.0)]]);
        assert_eq!(p.trace, c(1.0));
    }

    #[test]
    fn off_sphere_is_rejected() {
        assert!(matches!(classical_g(0.5, &[c(0.0)]), Err(Error::OffSphere(_))));
    }

    #[test]
    fn interior_point() {
        let a = sphere_point(0.3, &[Complex64::new(0.2, -1.0), c(0.7)]).unwrap();
        let p = classical_g(0.3, &a).unwrap();
        assert!(p.idempotency_residual <= 1e-12);
        assert!((p.trace - c(2.0)).norm() <= 1e-12);
    }
}

//! Numeric square roots of invariant positive semidefinite matrices.

use nalgebra::{DMatrix, SymmetricEigen};

use super::RealizationError;

const SYMMETRY_TOL: f64 = 1e-9;
const NEGATIVE_TOL: f64 = 1e-6;
const RESIDUAL_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct PsdSqrt {
    pub a: DMatrix<f64>,
    /// `max |A A^T - Q|`
    pub residual: f64,
    /// `max` over generators of `max |P A - A P|`
    pub commutation: f64,
}

fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0f64, |acc, x| acc.max(x.abs()))
}

/// Deviation of `m` from commuting with a point permutation `perm`,
/// i.e. `max |m[p(x)][p(y)] - m[x][y]|`.
fn invariance_defect(m: &DMatrix<f64>, perm: &[u32]) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for x in 0..n {
        for y in 0..n {
            let d = (m[(perm[x] as usize, perm[y] as usize)] - m[(x, y)]).abs();
            worst = worst.max(d);
        }
    }
    worst
}

/// Symmetric `A` with `A A^T = Q` commuting with the group, built from the
/// spectral decomposition `A = sum sqrt(lambda) p_lambda`.
pub fn psd_sqrt_commuting(q: &DMatrix<f64>, generators: &[Vec<u32>]) -> Result<PsdSqrt, RealizationError> {
    let sym = max_abs(&(q - q.transpose()));
    if sym > SYMMETRY_TOL {
        return Err(RealizationError::NotSymmetric(sym));
    }
    let inv = generators
        .iter()
        .map(|g| invariance_defect(q, g))
        .fold(0.0f64, f64::max);
    if inv > SYMMETRY_TOL {
        return Err(RealizationError::NotInvariant(inv));
    }
    let eig = SymmetricEigen::new(q.clone());
    let scale = max_abs(q).max(1.0);
    let mut roots = eig.eigenvalues.clone();
    for l in roots.iter_mut() {
        if *l < -NEGATIVE_TOL * scale {
            return Err(RealizationError::NotPsd(*l));
        }
        // Noise around zero would otherwise become noise of size sqrt(eps).
        *l = if *l <= SYMMETRY_TOL * scale { 0.0 } else { l.sqrt() };
    }
    let v = &eig.eigenvectors;
    let a = v * DMatrix::from_diagonal(&roots) * v.transpose();
    let a = (&a + a.transpose()) * 0.5;
    let residual = max_abs(&(&a * a.transpose() - q));
    let commutation = generators
        .iter()
        .map(|g| invariance_defect(&a, g))
        .fold(0.0f64, f64::max);
    if residual > RESIDUAL_TOL || commutation > RESIDUAL_TOL {
        return Err(RealizationError::Residual(residual.max(commutation)));
    }
    Ok(PsdSqrt {
        a,
        residual,
        commutation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_root() {
        let q = DMatrix::<f64>::identity(4, 4);
        let r = psd_sqrt_commuting(&q, &[vec![1, 2, 3, 0]]).unwrap();
        assert!(max_abs(&(r.a - q)) < 1e-12);
    }

    #[test]
    fn projector_is_own_root() {
        // I - J/3 on three points
        let q = DMatrix::from_fn(3, 3, |i, j| if i == j { 2.0 / 3.0 } else { -1.0 / 3.0 });
        let r = psd_sqrt_commuting(&q, &[vec![1, 2, 0]]).unwrap();
        assert!(max_abs(&(&r.a - &q)) < 1e-12);
        assert!(r.residual <= 1e-8 && r.commutation <= 1e-8);
    }

    #[test]
    fn rejects_bad_input() {
        let neg = -DMatrix::<f64>::identity(2, 2);
        assert!(matches!(
            psd_sqrt_commuting(&neg, &[]),
            Err(RealizationError::NotPsd(_))
        ));
        let q = DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 1.0]);
        assert!(matches!(
            psd_sqrt_commuting(&q, &[vec![1, 0]]),
            Err(RealizationError::NotInvariant(_))
        ));
    }
}

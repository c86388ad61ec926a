//! Dense linear algebra used by the solvers: LU solves, thin SVD with
//! descending singular values, and truncated least squares.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

pub fn lu_solve(a: &DMatrix<f64>, b: &DVector<f64>) -> Result<DVector<f64>> {
    if a.nrows() != a.ncols() || a.nrows() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.nrows(),
            got: b.len(),
        });
    }
    let x = a
        .clone()
        .lu()
        .solve(b)
        .ok_or_else(|| Error::Singular("LU factorization hit a zero pivot".into()))?;
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::Singular("non-finite LU solution".into()));
    }
    Ok(x)
}

/// Thin SVD `A = U Σ Vᵀ` with singular values sorted in descending order.
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: DMatrix<f64>,
    pub singular_values: DVector<f64>,
    pub v_t: DMatrix<f64>,
}

impl Svd {
    pub fn new(a: &DMatrix<f64>) -> Self {
        let svd = nalgebra::linalg::SVD::new(a.clone(), true, true);
        Self {
            u: svd.u.expect("U requested"),
            singular_values: svd.singular_values,
            v_t: svd.v_t.expect("Vᵀ requested"),
        }
    }

    pub fn max(&self) -> f64 {
        self.singular_values.iter().cloned().fold(0.0, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.singular_values.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn condition_number(&self) -> f64 {
        self.max() / self.min()
    }

    /// Number of singular values at or above `cutoff`.
    pub fn rank(&self, cutoff: f64) -> usize {
        self.singular_values.iter().filter(|&&s| s >= cutoff).count()
    }

    /// Right singular vectors for singular values below `cutoff`.
    pub fn null_space(&self, cutoff: f64) -> Vec<DVector<f64>> {
        self.singular_values
            .iter()
            .enumerate()
            .filter(|(_, &s)| s < cutoff)
            .map(|(i, _)| self.v_t.row(i).transpose())
            .collect()
    }

    /// Minimum-norm least-squares solution discarding singular values
    /// below `cutoff`.
    pub fn solve(&self, b: &DVector<f64>, cutoff: f64) -> DVector<f64> {
        let mut coeffs = self.u.tr_mul(b);
        for (c, &s) in coeffs.iter_mut().zip(self.singular_values.iter()) {
            *c = if s >= cutoff { *c / s } else { 0.0 };
        }
        self.v_t.tr_mul(&coeffs)
    }
}

/// Singular values only, in descending order.
pub fn singular_values(a: &DMatrix<f64>) -> DVector<f64> {
    let mut s = a.clone().singular_values();
    s.as_mut_slice().sort_by(|x, y| y.partial_cmp(x).unwrap());
    s
}

/// Least squares with a relative rank cutoff `σ < rel_cutoff·σ_max`.
/// Returns the solution and the numerical rank.
pub fn lstsq(a: &DMatrix<f64>, b: &DVector<f64>, rel_cutoff: f64) -> (DVector<f64>, usize) {
    let svd = Svd::new(a);
    let cutoff = rel_cutoff * svd.max();
    (svd.solve(b, cutoff), svd.rank(cutoff))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lu_solves_and_flags_singular() {
        let a = DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 3.0]);
        let x = lu_solve(&a, &DVector::from_vec(vec![3.0, 4.0])).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-15 && (x[1] - 1.0).abs() < 1e-15);
        let s = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        assert!(lu_solve(&s, &DVector::from_vec(vec![1.0, 1.0])).is_err());
    }

    #[test]
    fn svd_is_sorted_and_truncates() {
        let a = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 5.0, 1e-14]));
        let svd = Svd::new(&a);
        let sv = svd.singular_values.as_slice();
        assert!((sv[0] - 5.0).abs() < 1e-14 && (sv[1] - 1.0).abs() < 1e-14 && sv[2] < 1e-13);
        let cutoff = 1e-8 * svd.max();
        assert_eq!(svd.rank(cutoff), 2);
        let null = svd.null_space(cutoff);
        assert_eq!(null.len(), 1);
        assert!((null[0][2].abs() - 1.0).abs() < 1e-15);
        let (x, rank) = lstsq(&a, &DVector::from_vec(vec![1.0, 5.0, 3.0]), 1e-8);
        assert_eq!(rank, 2);
        assert!((x[0] - 1.0).abs() < 1e-14 && (x[1] - 1.0).abs() < 1e-14 && x[2] == 0.0);
        let sv = singular_values(&a);
        assert!(sv[0] > sv[1] && sv[1] > sv[2]);
    }
}

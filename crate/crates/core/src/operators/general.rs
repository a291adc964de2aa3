//! Helpers for operators of arbitrary (non-DTT) graph Fourier transforms.

use super::SparseOperator;
use crate::dtt::Spectrum;
use crate::error::{check_len, Error, Result};
use crate::matrix::DenseMatrix;
use crate::scalar::Real;

const LAPLACIAN_TOL: f64 = 1e-9;

/// Laplacian of the complement graph, `N w I − w 11ᵀ − L`, for a Laplacian
/// without self-loops and maximal edge weight `w`.
pub fn complement_laplacian<T: Real>(l: &DenseMatrix<T>, w_max: T) -> Result<DenseMatrix<T>> {
    if !l.is_square() {
        return Err(Error::InvalidInput("Laplacian must be square".into()));
    }
    if w_max <= T::zero() {
        return Err(Error::InvalidArgument("maximal edge weight must be positive".into()));
    }
    let n = l.rows();
    let tol = T::tol(LAPLACIAN_TOL) * (T::one() + l.max_abs());
    if !l.is_symmetric(tol) {
        return Err(Error::InvalidInput("Laplacian must be symmetric".into()));
    }
    for i in 0..n {
        let mut degree = T::zero();
        for j in (0..n).filter(|&j| j != i) {
            if l[(i, j)] > tol {
                return Err(Error::InvalidInput(format!("negative edge weight between {i} and {j}")));
            }
            degree -= l[(i, j)];
        }
        if (l[(i, i)] - degree).abs() > tol {
            return Err(Error::InvalidInput(format!("node {i} carries a self-loop")));
        }
    }
    let nw = T::from_count(n) * w_max;
    Ok(DenseMatrix::from_fn(n, n, |r, c| {
        let diag = if r == c { nw } else { T::zero() };
        diag - w_max - l[(r, c)]
    }))
}

/// Laplacian of the pairing graph of an involution `φ` (0-based): every
/// pair `i ≠ φ(i)` is joined by a unit edge. It commutes with the Laplacian
/// of any `φ`-symmetric graph.
pub fn symmetry_operator<T: Real>(phi: &[usize]) -> Result<SparseOperator<T>> {
    let n = phi.len();
    for (i, &j) in phi.iter().enumerate() {
        if j >= n {
            return Err(Error::InvalidArgument(format!("φ({i}) = {j} outside 0..{n}")));
        }
        if phi[j] != i {
            return Err(Error::InvalidArgument(format!("φ is not an involution at {i}")));
        }
    }
    let rows = phi
        .iter()
        .enumerate()
        .map(|(i, &j)| if i == j { Vec::new() } else { vec![(i, T::one()), (j, -T::one())] })
        .collect();
    SparseOperator::from_rows(n, rows)
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConeViolation<T> {
    /// `l_ij > 0`: a negative edge weight.
    EdgeWeight { i: usize, j: usize, value: T },
    /// Negative row sum: a negative self-loop weight.
    SelfLoop { i: usize, value: T },
    /// `λ_k < 0`.
    NegativeFrequency { k: usize, value: T },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConeReport<T> {
    pub violations: Vec<ConeViolation<T>>,
}

impl<T> ConeReport<T> {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Tests whether `Σ λ_k φ_k φ_kᵀ` is a valid Laplacian (non-negative edge
/// and self-loop weights, non-negative frequencies), each linear constraint
/// checked to `1e-9`.
pub fn check_laplacian_cone<T: Real>(phi: &DenseMatrix<T>, lambda: &Spectrum<T>) -> Result<ConeReport<T>> {
    if !phi.is_square() {
        return Err(Error::InvalidArgument("basis must be square".into()));
    }
    let n = phi.rows();
    check_len(n, lambda.len())?;
    let tol = T::tol(LAPLACIAN_TOL);
    let l = DenseMatrix::from_fn(n, n, |r, c| phi[(r, c)] * lambda[c]).matmul(&phi.transpose())?;

    let mut violations = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if l[(i, j)] > tol {
                violations.push(ConeViolation::EdgeWeight { i, j, value: l[(i, j)] });
            }
        }
    }
    for i in 0..n {
        let row_sum: T = (0..n).map(|j| l[(i, j)]).sum();
        if row_sum < -tol {
            violations.push(ConeViolation::SelfLoop { i, value: row_sum });
        }
    }
    for (k, &v) in lambda.values().iter().enumerate() {
        if v < -tol {
            violations.push(ConeViolation::NegativeFrequency { k, value: v });
        }
    }
    Ok(ConeReport { violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dtt::{basis_matrix, dct2_laplacian_eigenvalues, line_laplacian_dct2, DttKind};

    #[test]
    fn complement_of_single_edge_is_empty() {
        let l = DenseMatrix::from_rows(&[vec![1.0, -1.0], vec![-1.0, 1.0]]).unwrap();
        let lc = complement_laplacian(&l, 1.0).unwrap();
        assert_eq!(lc.max_abs(), 0.0);
    }

    #[test]
    fn complement_commutes() {
        let l = line_laplacian_dct2::<f64>(5).unwrap();
        let lc = complement_laplacian(&l, 1.0).unwrap();
        let ab = l.matmul(&lc).unwrap();
        let ba = lc.matmul(&l).unwrap();
        assert!(ab.max_abs_diff(&ba) < 1e-12);
    }

    #[test]
    fn complement_rejects_self_loops() {
        let l = crate::dtt::line_laplacian_dst4::<f64>(4).unwrap();
        assert!(matches!(complement_laplacian(&l, 1.0), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn pairing_laplacian() {
        let phi = [3, 2, 1, 0];
        let s = symmetry_operator::<f64>(&phi).unwrap();
        let expect = DenseMatrix::from_rows(&[
            vec![1.0, 0.0, 0.0, -1.0],
            vec![0.0, 1.0, -1.0, 0.0],
            vec![0.0, -1.0, 1.0, 0.0],
            vec![-1.0, 0.0, 0.0, 1.0],
        ])
        .unwrap();
        assert_eq!(s.to_dense(), expect);
        let l = line_laplacian_dct2::<f64>(4).unwrap();
        let sd = s.to_dense();
        assert!(l.matmul(&sd).unwrap().max_abs_diff(&sd.matmul(&l).unwrap()) < 1e-15);
    }

    #[test]
    fn identity_involution_gives_zero_operator() {
        let s = symmetry_operator::<f64>(&[0, 1, 2]).unwrap();
        assert_eq!(s.nnz(), 0);
    }

    #[test]
    fn non_involution_rejected() {
        assert!(symmetry_operator::<f64>(&[1, 2, 0]).is_err());
        assert!(symmetry_operator::<f64>(&[0, 5]).is_err());
    }

    #[test]
    fn cone_membership() {
        let phi = basis_matrix::<f64>(DttKind::Dct2, 6).unwrap();
        assert!(check_laplacian_cone(&phi, &Spectrum::ones(6)).unwrap().is_valid());
        assert!(check_laplacian_cone(&phi, &Spectrum::new(vec![0.0; 6])).unwrap().is_valid());
        assert!(check_laplacian_cone(&phi, &dct2_laplacian_eigenvalues(6)).unwrap().is_valid());

        let mut bad = vec![0.0; 6];
        bad[1] = -1.0;
        let report = check_laplacian_cone(&phi, &Spectrum::new(bad)).unwrap();
        assert!(!report.is_valid());
        assert!(report.violations.iter().any(|v| matches!(v, ConeViolation::NegativeFrequency { k: 1, .. })));
    }

    #[test]
    fn cone_detects_positive_off_diagonal() {
        // 2I − L_D = Z^(1) has positive off-diagonal entries.
        let phi = basis_matrix::<f64>(DttKind::Dct2, 5).unwrap();
        let lam = dct2_laplacian_eigenvalues::<f64>(5).map(|w| 2.0 - w);
        let report = check_laplacian_cone(&phi, &lam).unwrap();
        assert!(report.violations.iter().any(|v| matches!(v, ConeViolation::EdgeWeight { .. })));
    }
}

//! Spectral synthesis `Z = Φ diag(λ) Φᵀ` followed by snapping to the small
//! value alphabet that sparse DTT operators draw from.

use std::f64::consts::SQRT_2;

use super::{build_dct2, build_dct5, build_dst4, build_dst7, SparseOperator};
use crate::dtt::{basis_matrix, operator_eigenvalues, DttKind};
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::scalar::Real;

/// Entries below this magnitude are structural zeros.
pub const ZERO_TOL: f64 = 1e-8;
/// Largest admissible move when snapping a synthesized entry.
pub const SNAP_SHIFT_TOL: f64 = 1e-6;

const ALPHABET: [f64; 5] = [-2.0, -1.0, 1.0, SQRT_2, 2.0];

/// Output of the dense synthesis path, kept for diagnostics.
#[derive(Debug, Clone)]
pub struct Synthesis<T> {
    pub operator: SparseOperator<T>,
    /// `Φ diag(λ) Φᵀ` before zeroing and snapping.
    pub dense: DenseMatrix<f64>,
    /// Largest `|v − snap(v)|` over retained entries.
    pub max_snap_shift: f64,
}

pub fn has_closed_form(kind: DttKind) -> bool {
    matches!(kind, DttKind::Dct2 | DttKind::Dst4 | DttKind::Dst7 | DttKind::Dct5)
}

/// Builds `Z^(ℓ)` through the dense path regardless of `kind`.
pub fn synthesize<T: Real>(kind: DttKind, n: usize, ell: usize) -> Result<Synthesis<T>> {
    let lambda = operator_eigenvalues::<f64>(kind, n, ell)?;
    let phi = basis_matrix::<f64>(kind, n)?;
    let scaled = DenseMatrix::from_fn(n, n, |r, c| phi[(r, c)] * lambda[c]);
    let dense = scaled.matmul(&phi.transpose())?;

    let mut max_snap_shift = 0.0f64;
    let mut rows = Vec::with_capacity(n);
    for p in 0..n {
        let mut row = Vec::with_capacity(2);
        for q in 0..n {
            let v = dense[(p, q)];
            if v.abs() < ZERO_TOL {
                continue;
            }
            let snapped = ALPHABET
                .iter()
                .copied()
                .min_by(|a, b| (a - v).abs().total_cmp(&(b - v).abs()))
                .expect("alphabet is non-empty");
            let shift = (snapped - v).abs();
            if shift > SNAP_SHIFT_TOL {
                return Err(Error::Construction(format!(
                    "{kind} N={n} ell={ell}: entry ({}, {}) = {v} is not in the operator alphabet",
                    p + 1,
                    q + 1
                )));
            }
            max_snap_shift = max_snap_shift.max(shift);
            row.push((q, T::c(snapped)));
        }
        if row.len() > 2 {
            return Err(Error::Construction(format!(
                "{kind} N={n} ell={ell}: row {} has {} nonzeros",
                p + 1,
                row.len()
            )));
        }
        rows.push(row);
    }
    let operator = SparseOperator::from_rows(n, rows)?;
    Ok(Synthesis { operator, dense, max_snap_shift })
}

/// `Z^(ℓ)` for any of the sixteen kinds, `1 ≤ ℓ ≤ N − 1`.
pub fn build_operator<T: Real>(kind: DttKind, n: usize, ell: usize) -> Result<SparseOperator<T>> {
    match kind {
        DttKind::Dct2 => build_dct2(n, ell),
        DttKind::Dst4 => build_dst4(n, ell),
        DttKind::Dst7 => build_dst7(n, ell),
        DttKind::Dct5 => build_dct5(n, ell),
        _ => synthesize(kind, n, ell).map(|s| s.operator),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delegation_matches_closed_form() {
        assert_eq!(build_operator::<f64>(DttKind::Dct2, 4, 2).unwrap(), build_dct2(4, 2).unwrap());
    }

    #[test]
    fn synthesis_agrees_with_closed_forms() {
        for kind in DttKind::ALL.into_iter().filter(|&k| has_closed_form(k)) {
            for n in [4, 6, 8, 11, 16] {
                for ell in 1..n {
                    let s = synthesize::<f64>(kind, n, ell).unwrap();
                    let cf = build_operator::<f64>(kind, n, ell).unwrap();
                    assert!(s.dense.max_abs_diff(&cf.to_dense()) < 1e-6);
                    assert_eq!(s.operator, cf, "{kind} n={n} ell={ell}");
                }
            }
        }
    }

    #[test]
    fn dst1_first_operator_is_path_adjacency() {
        // DST-I pairs odd reflections at both ends: Z^(1) is the plain path
        // adjacency with zero diagonal.
        let z = build_operator::<f64>(DttKind::Dst1, 6, 1).unwrap();
        for p in 0..6usize {
            let expect: Vec<(usize, f64)> =
                [p.checked_sub(1), (p + 1 < 6).then_some(p + 1)].into_iter().flatten().map(|q| (q, 1.0)).collect();
            assert_eq!(z.row(p).collect::<Vec<_>>(), expect);
        }
    }

    #[test]
    fn all_kinds_snap_into_alphabet() {
        for kind in DttKind::ALL {
            for ell in 1..6 {
                let s = synthesize::<f64>(kind, 6, ell).unwrap();
                assert!(s.max_snap_shift < 1e-12);
                for v in s.operator.values() {
                    assert!(ALPHABET.contains(&v), "{kind} ell={ell}: {v}");
                }
            }
        }
    }
}

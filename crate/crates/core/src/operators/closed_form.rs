//! Index-folding constructors for the transforms whose operator rows are
//! written down explicitly: DCT-II, DST-IV, DST-VII and DCT-V.
//!
//! Row `p` of `Z^(ℓ)` collects the two samples `φ(p − ℓ)` and `φ(p + ℓ)`;
//! samples outside `1..=N` are folded back with the transform's boundary
//! reflection, which may flip the sign or (DCT-V) rescale by `√2`. Formulas
//! use 1-based indices; folded entries landing on the same column add up.

use std::f64::consts::SQRT_2;

use super::SparseOperator;
use crate::error::{Error, Result};
use crate::scalar::Real;

fn check_ell(n: usize, ell: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidSize(format!("transform length must be at least 2, got {n}")));
    }
    if ell == 0 || ell >= n {
        return Err(Error::InvalidArgument(format!("operator index {ell} outside 1..={}", n - 1)));
    }
    Ok(())
}

/// Right fold shared by all four constructors: `φ(p + ℓ) = φ(2N + 1 − p − ℓ)`.
#[inline]
fn right_column(n: i64, p: i64, ell: i64) -> i64 {
    if p + ell <= n {
        p + ell
    } else {
        2 * n + 1 - p - ell
    }
}

fn assemble<T: Real>(n: usize, mut row_entries: impl FnMut(i64) -> Vec<(i64, f64)>) -> Result<SparseOperator<T>> {
    let rows = (1..=n as i64)
        .map(|p| row_entries(p).into_iter().map(|(q, v)| ((q - 1) as usize, T::c(v))).collect())
        .collect();
    SparseOperator::from_rows(n, rows)
}

/// `Z^(ℓ)_DCT-II`: unit entries at the even reflections about `½` and `N + ½`.
pub fn build_dct2<T: Real>(n: usize, ell: usize) -> Result<SparseOperator<T>> {
    check_ell(n, ell)?;
    let (ni, l) = (n as i64, ell as i64);
    assemble(n, |p| {
        let q1 = if p - l >= 1 { p - l } else { l - p + 1 };
        vec![(q1, 1.0), (right_column(ni, p, l), 1.0)]
    })
}

/// The `ℓ = N` member of the DCT-II family, `2J`. Its spectrum alternates
/// `±2`, so it is kept out of [`super::OperatorSet`].
pub fn build_dct2_reflection<T: Real>(n: usize) -> Result<SparseOperator<T>> {
    if n < 2 {
        return Err(Error::InvalidSize(format!("transform length must be at least 2, got {n}")));
    }
    SparseOperator::from_rows(n, (0..n).map(|p| vec![(n - 1 - p, T::c(2.0))]).collect())
}

/// `Z^(ℓ)_DST-IV`: as DCT-II but the left reflection is odd (`−1`).
pub fn build_dst4<T: Real>(n: usize, ell: usize) -> Result<SparseOperator<T>> {
    check_ell(n, ell)?;
    let (ni, l) = (n as i64, ell as i64);
    assemble(n, |p| {
        let left = if p - l >= 1 { (p - l, 1.0) } else { (l - p + 1, -1.0) };
        vec![left, (right_column(ni, p, l), 1.0)]
    })
}

/// `Z^(ℓ)_DST-VII`: odd reflection about sample 0, so row `ℓ` loses its left
/// term (`φ(0) = 0`).
pub fn build_dst7<T: Real>(n: usize, ell: usize) -> Result<SparseOperator<T>> {
    check_ell(n, ell)?;
    let (ni, l) = (n as i64, ell as i64);
    assemble(n, |p| {
        let mut row = Vec::with_capacity(2);
        if p > l {
            row.push((p - l, 1.0));
        } else if p < l {
            row.push((l - p, -1.0));
        }
        row.push((right_column(ni, p, l), 1.0));
        row
    })
}

/// `Z^(ℓ)_DCT-V`: even reflection about sample 1 with the `c_1 = 1/√2`
/// scaling compensated by `√2` entries on the first row and column.
pub fn build_dct5<T: Real>(n: usize, ell: usize) -> Result<SparseOperator<T>> {
    check_ell(n, ell)?;
    let (ni, l) = (n as i64, ell as i64);
    assemble(n, |p| {
        if p == 1 {
            // both folded samples coincide at 1 + ℓ
            return vec![(1 + l, SQRT_2)];
        }
        let left = match p - l {
            1 => (1, SQRT_2),
            d if d > 1 => (d, 1.0),
            _ => (l - p + 2, 1.0),
        };
        vec![left, (right_column(ni, p, l), 1.0)]
    })
}

//! Sparse graph operators sharing a DTT eigenbasis.
//!
//! Every operator `Z^(ℓ)` of a 1D transform has at most two nonzeros per row,
//! and a Kronecker product of two of them at most four. [`SparseOperator`]
//! stores rows with a fixed width (ELL layout) so the matvec is a tight loop
//! over a small constant number of slots.

mod closed_form;
mod gallery;
mod general;
mod set;
mod synthesis;

pub use closed_form::{build_dct2, build_dct2_reflection, build_dct5, build_dst4, build_dst7};
pub use gallery::{parse_gallery, write_gallery};
pub use general::{check_laplacian_cone, complement_laplacian, symmetry_operator, ConeReport, ConeViolation};
pub use set::{kron_2d, GridLayout, OperatorLabel, OperatorSet, SetLayout};
pub use synthesis::{build_operator, has_closed_form, synthesize, Synthesis, SNAP_SHIFT_TOL, ZERO_TOL};

use crate::error::{check_len, Error, Result};
use crate::matrix::DenseMatrix;
use crate::scalar::Real;
use crate::work::{NoCount, OpCounter};

/// Symmetric sparse matrix with a bounded number of nonzeros per row.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperator<T> {
    n: usize,
    width: usize,
    row_len: Vec<u8>,
    cols: Vec<u32>,
    vals: Vec<T>,
}

impl<T: Real> SparseOperator<T> {
    /// Builds an operator from per-row `(column, value)` lists (0-based).
    /// Repeated columns in a row accumulate; exact zeros are dropped.
    pub fn from_rows(n: usize, rows: Vec<Vec<(usize, T)>>) -> Result<Self> {
        check_len(n, rows.len())?;
        let mut merged: Vec<Vec<(usize, T)>> = Vec::with_capacity(n);
        for row in rows {
            let mut acc: Vec<(usize, T)> = Vec::with_capacity(row.len());
            for (c, v) in row {
                if c >= n {
                    return Err(Error::InvalidArgument(format!("column {c} out of range for size {n}")));
                }
                match acc.iter_mut().find(|(ac, _)| *ac == c) {
                    Some(slot) => slot.1 += v,
                    None => acc.push((c, v)),
                }
            }
            acc.retain(|&(_, v)| v != T::zero());
            acc.sort_by_key(|&(c, _)| c);
            merged.push(acc);
        }
        let width = merged.iter().map(Vec::len).max().unwrap_or(0).max(1);
        if width > u8::MAX as usize {
            return Err(Error::InvalidArgument("row too dense for sparse operator".into()));
        }
        let mut row_len = Vec::with_capacity(n);
        let mut cols = vec![0u32; n * width];
        let mut vals = vec![T::zero(); n * width];
        for (p, row) in merged.iter().enumerate() {
            row_len.push(row.len() as u8);
            for (slot, &(c, v)) in row.iter().enumerate() {
                cols[p * width + slot] = c as u32;
                vals[p * width + slot] = v;
            }
            // padding points at the diagonal with value zero
            for slot in row.len()..width {
                cols[p * width + slot] = p as u32;
            }
        }
        Ok(Self { n, width, row_len, cols, vals })
    }

    /// Converts a dense matrix, keeping entries with `|v| > 0`.
    pub fn from_dense(m: &DenseMatrix<T>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::InvalidArgument("operator must be square".into()));
        }
        let n = m.rows();
        let rows = (0..n).map(|r| (0..n).filter(|&c| m[(r, c)] != T::zero()).map(|c| (c, m[(r, c)])).collect()).collect();
        Self::from_rows(n, rows)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_rows(n, (0..n).map(|p| vec![(p, T::one())]).collect()).expect("identity is well formed")
    }

    /// Dimension `N`.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Slot capacity per row.
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn nnz(&self) -> usize {
        self.row_len.iter().map(|&l| l as usize).sum()
    }

    pub fn max_row_nnz(&self) -> usize {
        self.row_len.iter().map(|&l| l as usize).max().unwrap_or(0)
    }

    /// Nonzeros of row `p` as `(column, value)`, columns ascending.
    pub fn row(&self, p: usize) -> impl Iterator<Item = (usize, T)> + '_ {
        let base = p * self.width;
        (0..self.row_len[p] as usize).map(move |s| (self.cols[base + s] as usize, self.vals[base + s]))
    }

    pub fn get(&self, p: usize, q: usize) -> T {
        self.row(p).find(|&(c, _)| c == q).map_or(T::zero(), |(_, v)| v)
    }

    pub fn values(&self) -> impl Iterator<Item = T> + '_ {
        (0..self.n).flat_map(move |p| self.row(p).map(|(_, v)| v))
    }

    pub fn to_dense(&self) -> DenseMatrix<T> {
        let mut m = DenseMatrix::zeros(self.n, self.n);
        for p in 0..self.n {
            for (q, v) in self.row(p) {
                m[(p, q)] = v;
            }
        }
        m
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|p| self.row(p).all(|(q, v)| self.get(q, p) == v))
    }

    /// `y = Z x`.
    pub fn apply(&self, x: &[T]) -> Result<Vec<T>> {
        let mut y = vec![T::zero(); self.n];
        self.apply_into(x, &mut y)?;
        Ok(y)
    }

    /// `y = Z x` into a caller-provided buffer.
    pub fn apply_into(&self, x: &[T], y: &mut [T]) -> Result<()> {
        self.apply_counted(x, y, &mut NoCount)
    }

    pub fn apply_counted<C: OpCounter>(&self, x: &[T], y: &mut [T], counter: &mut C) -> Result<()> {
        check_len(self.n, x.len())?;
        check_len(self.n, y.len())?;
        self.apply_unchecked(x, y, counter);
        Ok(())
    }

    #[inline]
    pub(crate) fn apply_unchecked<C: OpCounter>(&self, x: &[T], y: &mut [T], counter: &mut C) {
        let w = self.width;
        for (p, yp) in y.iter_mut().enumerate() {
            let len = self.row_len[p] as usize;
            let base = p * w;
            let mut acc = T::zero();
            for s in 0..len {
                acc += self.vals[base + s] * x[self.cols[base + s] as usize];
            }
            *yp = acc;
        }
        counter.multiply_adds(self.nnz());
    }

    /// Laplacian view `2I − Z`.
    pub fn to_laplacian(&self) -> DenseMatrix<T> {
        let two = T::c(2.0);
        let mut l = self.to_dense().scale(-T::one());
        for i in 0..self.n {
            l[(i, i)] += two;
        }
        l
    }

    /// Sparse product `self · rhs` (used for commutation checks).
    pub fn matmul(&self, rhs: &Self) -> Result<DenseMatrix<T>> {
        check_len(self.n, rhs.n)?;
        let mut out = DenseMatrix::zeros(self.n, self.n);
        for p in 0..self.n {
            for (k, a) in self.row(p) {
                for (q, b) in rhs.row(k) {
                    out[(p, q)] += a * b;
                }
            }
        }
        Ok(out)
    }

    /// `self + rhs`.
    pub fn add(&self, rhs: &Self) -> Result<Self> {
        check_len(self.n, rhs.n)?;
        let rows = (0..self.n).map(|p| self.row(p).chain(rhs.row(p)).collect()).collect();
        Self::from_rows(self.n, rows)
    }

    /// `scale · self + shift · I`.
    pub fn shifted(&self, scale: T, shift: T) -> Self {
        let rows = (0..self.n)
            .map(|p| {
                let mut row: Vec<(usize, T)> = self.row(p).map(|(q, v)| (q, scale * v)).collect();
                row.push((p, shift));
                row
            })
            .collect();
        Self::from_rows(self.n, rows).expect("shift keeps the shape")
    }

    pub fn cast<U: Real>(&self) -> SparseOperator<U> {
        SparseOperator {
            n: self.n,
            width: self.width,
            row_len: self.row_len.clone(),
            cols: self.cols.clone(),
            vals: self.vals.iter().map(|&v| U::c(v.to_f64_lossy())).collect(),
        }
    }
}

/// `max_j ‖Z φ_j − λ_j φ_j‖_∞` over all basis columns.
pub fn eigen_residual<T: Real>(z: &SparseOperator<T>, basis: &DenseMatrix<T>, spectrum: &[T]) -> Result<T> {
    check_len(z.n(), basis.rows())?;
    check_len(basis.cols(), spectrum.len())?;
    let mut worst = T::zero();
    let mut y = vec![T::zero(); z.n()];
    for (j, &lam) in spectrum.iter().enumerate() {
        let phi = basis.column(j);
        z.apply_into(phi, &mut y)?;
        for (&yi, &pi) in y.iter().zip(phi) {
            worst = worst.max((yi - lam * pi).abs());
        }
    }
    Ok(worst)
}

/// `‖A B − B A‖_max`.
pub fn commutator_norm<T: Real>(a: &SparseOperator<T>, b: &SparseOperator<T>) -> Result<T> {
    Ok(a.matmul(b)?.max_abs_diff(&b.matmul(a)?))
}

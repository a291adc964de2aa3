use std::fmt;

use super::{build_operator, SparseOperator};
use crate::dtt::{basis_matrix, operator_eigenvalues, DttKind, Spectrum};
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::scalar::Real;

/// `Z_outer ⊗ Z_inner` with column-first vectorization: the inner factor acts
/// within each block column, the outer factor across columns.
pub fn kron_2d<T: Real>(outer: &SparseOperator<T>, inner: &SparseOperator<T>) -> SparseOperator<T> {
    let ni = inner.n();
    let n = outer.n() * ni;
    let rows = (0..n)
        .map(|r| {
            let (a, b) = (r / ni, r % ni);
            outer
                .row(a)
                .flat_map(|(c, vo)| inner.row(b).map(move |(d, vi)| (c * ni + d, vo * vi)))
                .collect()
        })
        .collect();
    SparseOperator::from_rows(n, rows).expect("Kronecker factors are well formed")
}

/// Separable 2D block geometry. A block has `height` pixel rows and `width`
/// pixel columns; `col_kind` (length `height`) transforms each column and
/// `row_kind` (length `width`) each row, so `Φ = Φ_row ⊗ Φ_col`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridLayout {
    pub col_kind: DttKind,
    pub height: usize,
    pub row_kind: DttKind,
    pub width: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetLayout {
    Line { kind: DttKind, n: usize },
    Grid(GridLayout),
}

/// Which member of the family an operator is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorLabel {
    /// `Z^(ℓ)`
    Line(usize),
    /// `Z_row^(ℓ_row) ⊗ Z_col^(ℓ_col)`; index 0 stands for the identity.
    Grid { row: usize, col: usize },
}

impl fmt::Display for OperatorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorLabel::Line(l) => write!(f, "Z{l}"),
            OperatorLabel::Grid { row, col } => write!(f, "Z{row}x{col}"),
        }
    }
}

/// A family of commuting sparse operators diagonalized by one transform,
/// with their spectra. The identity is implicit and never stored.
#[derive(Debug, Clone)]
pub struct OperatorSet<T> {
    layout: SetLayout,
    ops: Vec<SparseOperator<T>>,
    spectra: Vec<Spectrum<T>>,
    labels: Vec<OperatorLabel>,
}

impl<T: Real> OperatorSet<T> {
    /// `Z^(1) .. Z^(N−1)` of a 1D transform.
    pub fn line(kind: DttKind, n: usize) -> Result<Self> {
        let mut ops = Vec::with_capacity(n.saturating_sub(1));
        let mut spectra = Vec::with_capacity(ops.capacity());
        for ell in 1..n {
            ops.push(build_operator(kind, n, ell)?);
            spectra.push(operator_eigenvalues(kind, n, ell)?);
        }
        if ops.is_empty() {
            return Err(Error::InvalidSize(format!("transform length must be at least 2, got {n}")));
        }
        let labels = (1..n).map(OperatorLabel::Line).collect();
        Ok(Self { layout: SetLayout::Line { kind, n }, ops, spectra, labels })
    }

    /// All products `Z_row^(a) ⊗ Z_col^(b)` with `0 ≤ a < width`,
    /// `0 ≤ b < height`, `(a, b) ≠ (0, 0)`, where index 0 is the identity.
    pub fn grid(layout: GridLayout) -> Result<Self> {
        let GridLayout { col_kind, height, row_kind, width } = layout;
        let factor = |kind: DttKind, n: usize, ell: usize| -> Result<(SparseOperator<T>, Spectrum<T>)> {
            if ell == 0 {
                Ok((SparseOperator::identity(n), Spectrum::ones(n)))
            } else {
                Ok((build_operator(kind, n, ell)?, operator_eigenvalues(kind, n, ell)?))
            }
        };
        let rows: Vec<_> = (0..width).map(|a| factor(row_kind, width, a)).collect::<Result<_>>()?;
        let cols: Vec<_> = (0..height).map(|b| factor(col_kind, height, b)).collect::<Result<_>>()?;
        let mut ops = Vec::new();
        let mut spectra = Vec::new();
        let mut labels = Vec::new();
        for (a, (zr, lr)) in rows.iter().enumerate() {
            for (b, (zc, lc)) in cols.iter().enumerate() {
                if a == 0 && b == 0 {
                    continue;
                }
                ops.push(kron_2d(zr, zc));
                spectra.push(lr.kron(lc));
                labels.push(OperatorLabel::Grid { row: a, col: b });
            }
        }
        Ok(Self { layout: SetLayout::Grid(layout), ops, spectra, labels })
    }

    pub fn layout(&self) -> SetLayout {
        self.layout
    }

    /// Signal length.
    pub fn size(&self) -> usize {
        match self.layout {
            SetLayout::Line { n, .. } => n,
            SetLayout::Grid(g) => g.height * g.width,
        }
    }

    /// Number of stored operators `M`.
    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn ops(&self) -> &[SparseOperator<T>] {
        &self.ops
    }

    pub fn op(&self, i: usize) -> Option<&SparseOperator<T>> {
        self.ops.get(i)
    }

    pub fn spectra(&self) -> &[Spectrum<T>] {
        &self.spectra
    }

    pub fn labels(&self) -> &[OperatorLabel] {
        &self.labels
    }

    /// Position of `Z^(ℓ)` for a line set.
    pub fn index_of_line(&self, ell: usize) -> Option<usize> {
        self.labels.iter().position(|l| *l == OperatorLabel::Line(ell))
    }

    /// The shared eigenbasis.
    pub fn basis(&self) -> Result<DenseMatrix<T>> {
        match self.layout {
            SetLayout::Line { kind, n } => basis_matrix(kind, n),
            SetLayout::Grid(g) => Ok(basis_matrix::<T>(g.row_kind, g.width)?.kron(&basis_matrix(g.col_kind, g.height)?)),
        }
    }
}

//! The sixteen discrete trigonometric transforms (DCT-I..VIII, DST-I..VIII):
//! orthonormal bases, the closed-form spectra of their sparse operators and
//! the two line-graph Laplacians whose eigenbases are DCT-II and DST-IV.
//!
//! Indices follow the usual 1-based transform notation in formulas; storage
//! is 0-based, so column `j - 1` of a basis holds `φ_j`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::str::FromStr;

use crate::error::{check_len, Error, Result};
use crate::matrix::DenseMatrix;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DttKind {
    Dct1,
    Dct2,
    Dct3,
    Dct4,
    Dct5,
    Dct6,
    Dct7,
    Dct8,
    Dst1,
    Dst2,
    Dst3,
    Dst4,
    Dst5,
    Dst6,
    Dst7,
    Dst8,
}

/// Reflection rule at the left edge of the sample domain (`k ≤ 0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeftBoundary {
    /// `φ(k) = φ(−k + 2)`
    EvenAtSample,
    /// `φ(k) = −φ(−k)`
    OddAtSample,
    /// `φ(k) = φ(−k + 1)`
    EvenAtMidpoint,
    /// `φ(k) = −φ(−k + 1)`
    OddAtMidpoint,
}

/// Reflection rule at the right edge of the sample domain (`k > N`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RightBoundary {
    /// `φ(N + k) = φ(N − k)`
    EvenAtSample,
    /// `φ(N + k) = −φ(N − k)`
    OddAtSample,
    /// `φ(N + k) = φ(N − k + 1)`
    EvenAtMidpoint,
    /// `φ(N + k) = −φ(N − k + 1)`
    OddAtMidpoint,
}

impl DttKind {
    pub const ALL: [DttKind; 16] = [
        DttKind::Dct1,
        DttKind::Dct2,
        DttKind::Dct3,
        DttKind::Dct4,
        DttKind::Dct5,
        DttKind::Dct6,
        DttKind::Dct7,
        DttKind::Dct8,
        DttKind::Dst1,
        DttKind::Dst2,
        DttKind::Dst3,
        DttKind::Dst4,
        DttKind::Dst5,
        DttKind::Dst6,
        DttKind::Dst7,
        DttKind::Dst8,
    ];

    pub fn is_cosine(self) -> bool {
        (self as usize) < 8
    }

    /// Type number 1..=8 within the DCT or DST family.
    pub fn type_number(self) -> usize {
        self as usize % 8 + 1
    }

    pub fn name(self) -> &'static str {
        const NAMES: [&str; 16] = [
            "DCT-I", "DCT-II", "DCT-III", "DCT-IV", "DCT-V", "DCT-VI", "DCT-VII", "DCT-VIII", "DST-I", "DST-II",
            "DST-III", "DST-IV", "DST-V", "DST-VI", "DST-VII", "DST-VIII",
        ];
        NAMES[self as usize]
    }

    pub fn boundary(self) -> (LeftBoundary, RightBoundary) {
        use DttKind::*;
        use LeftBoundary as L;
        use RightBoundary as R;
        match self {
            Dct1 => (L::EvenAtSample, R::EvenAtSample),
            Dct3 => (L::EvenAtSample, R::OddAtSample),
            Dct5 => (L::EvenAtSample, R::EvenAtMidpoint),
            Dct7 => (L::EvenAtSample, R::OddAtMidpoint),
            Dst3 => (L::OddAtSample, R::EvenAtSample),
            Dst1 => (L::OddAtSample, R::OddAtSample),
            Dst7 => (L::OddAtSample, R::EvenAtMidpoint),
            Dst5 => (L::OddAtSample, R::OddAtMidpoint),
            Dct6 => (L::EvenAtMidpoint, R::EvenAtSample),
            Dct8 => (L::EvenAtMidpoint, R::OddAtSample),
            Dct2 => (L::EvenAtMidpoint, R::EvenAtMidpoint),
            Dct4 => (L::EvenAtMidpoint, R::OddAtMidpoint),
            Dst8 => (L::OddAtMidpoint, R::EvenAtSample),
            Dst6 => (L::OddAtMidpoint, R::OddAtSample),
            Dst4 => (L::OddAtMidpoint, R::EvenAtMidpoint),
            Dst2 => (L::OddAtMidpoint, R::OddAtMidpoint),
        }
    }

    /// Unnormalized basis function `φ_j(k)` for 1-based `j`, `k`.
    fn element(self, n: usize, j: usize, k: usize) -> f64 {
        use DttKind::*;
        let nf = n as f64;
        let (jf, kf) = (j as f64, k as f64);
        let c = |i: usize| if i == 1 { FRAC_1_SQRT_2 } else { 1.0 };
        let d = |i: usize| if i == n { FRAC_1_SQRT_2 } else { 1.0 };
        let s = |m: f64| (2.0 / m).sqrt();
        let t = |m: f64| 2.0 / m.sqrt();
        match self {
            Dct1 => s(nf - 1.0) * c(j) * c(k) * d(j) * d(k) * ((jf - 1.0) * (kf - 1.0) * PI / (nf - 1.0)).cos(),
            Dct2 => s(nf) * c(j) * ((jf - 1.0) * (kf - 0.5) * PI / nf).cos(),
            Dct3 => s(nf) * c(k) * ((jf - 0.5) * (kf - 1.0) * PI / nf).cos(),
            Dct4 => s(nf) * ((jf - 0.5) * (kf - 0.5) * PI / nf).cos(),
            Dct5 => t(2.0 * nf - 1.0) * c(j) * c(k) * ((jf - 1.0) * (kf - 1.0) * PI / (nf - 0.5)).cos(),
            Dct6 => t(2.0 * nf - 1.0) * c(j) * d(k) * ((jf - 1.0) * (kf - 0.5) * PI / (nf - 0.5)).cos(),
            Dct7 => t(2.0 * nf - 1.0) * d(j) * c(k) * ((jf - 0.5) * (kf - 1.0) * PI / (nf - 0.5)).cos(),
            Dct8 => t(2.0 * nf + 1.0) * ((jf - 0.5) * (kf - 0.5) * PI / (nf + 0.5)).cos(),
            Dst1 => s(nf + 1.0) * (jf * kf * PI / (nf + 1.0)).sin(),
            Dst2 => s(nf) * d(j) * (jf * (kf - 0.5) * PI / nf).sin(),
            Dst3 => s(nf) * d(k) * ((jf - 0.5) * kf * PI / nf).sin(),
            Dst4 => s(nf) * ((jf - 0.5) * (kf - 0.5) * PI / nf).sin(),
            Dst5 => t(2.0 * nf + 1.0) * (jf * kf * PI / (nf + 0.5)).sin(),
            Dst6 => t(2.0 * nf + 1.0) * (jf * (kf - 0.5) * PI / (nf + 0.5)).sin(),
            Dst7 => t(2.0 * nf + 1.0) * ((jf - 0.5) * kf * PI / (nf + 0.5)).sin(),
            Dst8 => t(2.0 * nf - 1.0) * d(j) * d(k) * ((jf - 0.5) * (kf - 0.5) * PI / (nf - 0.5)).sin(),
        }
    }

    /// Angle `θ_j` such that `Z^(ℓ)` has eigenvalue `2 cos(ℓ θ_j)` on `φ_j`.
    fn frequency(self, n: usize, j: usize) -> f64 {
        use DttKind::*;
        let nf = n as f64;
        let jf = j as f64;
        match self {
            Dct1 => (jf - 1.0) * PI / (nf - 1.0),
            Dct2 => (jf - 1.0) * PI / nf,
            Dct3 | Dct4 => (jf - 0.5) * PI / nf,
            Dct5 | Dct6 => (jf - 1.0) * PI / (nf - 0.5),
            Dct7 => (jf - 0.5) * PI / (nf - 0.5),
            Dct8 => (jf - 0.5) * PI / (nf + 0.5),
            Dst1 => jf * PI / (nf + 1.0),
            Dst2 => jf * PI / nf,
            Dst3 | Dst4 => (jf - 0.5) * PI / nf,
            Dst5 | Dst6 => jf * PI / (nf + 0.5),
            Dst7 => (jf - 0.5) * PI / (nf + 0.5),
            Dst8 => (jf - 0.5) * PI / (nf - 0.5),
        }
    }
}

impl fmt::Display for DttKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DttKind {
    type Err = Error;

    /// Accepts `DCT-II`, `dct2`, `DST_IV`, `dst-7`, ... (case-insensitive).
    fn from_str(s: &str) -> Result<Self> {
        let norm: String = s.chars().filter(|c| !matches!(c, '-' | '_' | ' ')).collect::<String>().to_ascii_uppercase();
        let (family, rest) = norm.split_at(norm.len().min(3));
        let number = match rest {
            "1" | "I" => 1,
            "2" | "II" => 2,
            "3" | "III" => 3,
            "4" | "IV" => 4,
            "5" | "V" => 5,
            "6" | "VI" => 6,
            "7" | "VII" => 7,
            "8" | "VIII" => 8,
            _ => return Err(Error::Parse(format!("unknown transform kind `{s}`"))),
        };
        let offset = match family {
            "DCT" => 0,
            "DST" => 8,
            _ => return Err(Error::Parse(format!("unknown transform kind `{s}`"))),
        };
        Ok(DttKind::ALL[offset + number - 1])
    }
}

/// Graph frequencies of an operator, ordered by basis column.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T>(Vec<T>);

impl<T: Real> Spectrum<T> {
    pub fn new(values: Vec<T>) -> Self {
        Self(values)
    }

    pub fn ones(n: usize) -> Self {
        Self(vec![T::one(); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.0
    }

    pub fn into_values(self) -> Vec<T> {
        self.0
    }

    pub fn max(&self) -> T {
        self.0.iter().fold(T::neg_infinity(), |m, &v| m.max(v))
    }

    pub fn min(&self) -> T {
        self.0.iter().fold(T::infinity(), |m, &v| m.min(v))
    }

    /// Spectrum of `Z_r ⊗ Z_c`: `λ_r,j · λ_c,k` with the column index `k`
    /// running fastest.
    pub fn kron(&self, inner: &Self) -> Self {
        Self(self.0.iter().flat_map(|&a| inner.0.iter().map(move |&b| a * b)).collect())
    }

    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        Self(self.0.iter().map(|&v| f(v)).collect())
    }
}

impl<T> std::ops::Index<usize> for Spectrum<T> {
    type Output = T;

    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

fn check_size(n: usize) -> Result<()> {
    if n < 2 {
        Err(Error::InvalidSize(format!("transform length must be at least 2, got {n}")))
    } else {
        Ok(())
    }
}

/// `N × N` orthonormal basis; column `j - 1` holds `φ_j(1..=N)`.
pub fn basis_matrix<T: Real>(kind: DttKind, n: usize) -> Result<DenseMatrix<T>> {
    check_size(n)?;
    Ok(DenseMatrix::from_fn(n, n, |k, j| T::c(kind.element(n, j + 1, k + 1))))
}

/// Closed-form eigenvalues `2 cos(ℓ θ_j)` of `Z^(ℓ)`, `1 ≤ ℓ ≤ N − 1`.
pub fn operator_eigenvalues<T: Real>(kind: DttKind, n: usize, ell: usize) -> Result<Spectrum<T>> {
    check_size(n)?;
    if ell == 0 || ell >= n {
        return Err(Error::InvalidArgument(format!("operator index {ell} outside 1..={}", n - 1)));
    }
    Ok(extended_operator_eigenvalues(kind, n, ell))
}

/// Same closed form without the range check, e.g. `ℓ = N` for the DCT-II
/// reflection operator `2J`.
pub fn extended_operator_eigenvalues<T: Real>(kind: DttKind, n: usize, ell: usize) -> Spectrum<T> {
    Spectrum((1..=n).map(|j| T::c(2.0 * (ell as f64 * kind.frequency(n, j)).cos())).collect())
}

fn tridiagonal_laplacian<T: Real>(n: usize, first_diag: f64) -> Result<DenseMatrix<T>> {
    check_size(n)?;
    let mut l = DenseMatrix::zeros(n, n);
    for i in 0..n {
        l[(i, i)] = T::c(2.0);
        if i + 1 < n {
            l[(i, i + 1)] = -T::one();
            l[(i + 1, i)] = -T::one();
        }
    }
    l[(0, 0)] = T::c(first_diag);
    l[(n - 1, n - 1)] = T::one();
    Ok(l)
}

/// Laplacian `L_D` of the uniform path graph; its GFT is DCT-II.
pub fn line_laplacian_dct2<T: Real>(n: usize) -> Result<DenseMatrix<T>> {
    tridiagonal_laplacian(n, 1.0)
}

/// Path Laplacian with a weight-2 self-loop on the first node (`L_A`); its
/// GFT is DST-IV.
pub fn line_laplacian_dst4<T: Real>(n: usize) -> Result<DenseMatrix<T>> {
    tridiagonal_laplacian(n, 3.0)
}

/// `ω_j = 2 − 2 cos((j − 1)π/N)`, eigenvalues of `L_D`.
pub fn dct2_laplacian_eigenvalues<T: Real>(n: usize) -> Spectrum<T> {
    Spectrum((1..=n).map(|j| T::c(2.0 - 2.0 * ((j as f64 - 1.0) * PI / n as f64).cos())).collect())
}

/// `δ_j = 2 − 2 cos((j − ½)π/N)`, eigenvalues of `L_A`.
pub fn dst4_laplacian_eigenvalues<T: Real>(n: usize) -> Spectrum<T> {
    Spectrum((1..=n).map(|j| T::c(2.0 - 2.0 * ((j as f64 - 0.5) * PI / n as f64).cos())).collect())
}

/// A transform with its basis materialized for dense analysis/synthesis.
#[derive(Debug, Clone)]
pub struct Dtt<T> {
    kind: DttKind,
    basis: DenseMatrix<T>,
}

impl<T: Real> Dtt<T> {
    pub fn new(kind: DttKind, n: usize) -> Result<Self> {
        Ok(Self { kind, basis: basis_matrix(kind, n)? })
    }

    pub fn kind(&self) -> DttKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn basis(&self) -> &DenseMatrix<T> {
        &self.basis
    }

    /// `Φᵀ x`.
    pub fn forward(&self, x: &[T]) -> Result<Vec<T>> {
        check_len(self.len(), x.len())?;
        self.basis.tr_matvec(x)
    }

    /// `Φ x̂`.
    pub fn inverse(&self, coeffs: &[T]) -> Result<Vec<T>> {
        check_len(self.len(), coeffs.len())?;
        self.basis.matvec(coeffs)
    }

    /// `Φ diag(h) Φᵀ x`: exact spectral filtering.
    pub fn filter(&self, response: &[T], x: &[T]) -> Result<Vec<T>> {
        check_len(self.len(), response.len())?;
        let mut c = self.forward(x)?;
        for (ci, &h) in c.iter_mut().zip(response) {
            *ci *= h;
        }
        self.inverse(&c)
    }
}

/// One-shot forward transform of `x` with a basis of length `x.len()`.
pub fn forward<T: Real>(kind: DttKind, x: &[T]) -> Result<Vec<T>> {
    Dtt::new(kind, x.len())?.forward(x)
}

/// One-shot inverse transform.
pub fn inverse<T: Real>(kind: DttKind, coeffs: &[T]) -> Result<Vec<T>> {
    Dtt::new(kind, coeffs.len())?.inverse(coeffs)
}

//! Transform-type cost proxies and the 2D transform pruning rule.
//!
//! Four 1D transforms compete on each block column and row: `U` (DCT-II),
//! `V` (ADST, i.e. DST-IV), `JV` (flipped ADST) and `I` (identity). Each is
//! scored by `C_T(x; q) = Σ q_i (t_iᵀ x)²` with increasing weights `q = δ`,
//! the ADST Laplacian spectrum. With this choice `C_V` and `C_JV` are plain
//! Laplacian quadratic forms, `C_I` is a weighted energy, and `C_U` is
//! approximated by a sparse degree-1 MPGF over the DCT-II operators.

use super::apply_mpgf;
use crate::design::{exhaustive_sparse_fit, FilterDesign};
use crate::dtt::{basis_matrix, dst4_laplacian_eigenvalues, DttKind};
use crate::error::{check_len, Error, Result};
use crate::matrix::{dot, DenseMatrix};
use crate::operators::{OperatorSet, SparseOperator};
use crate::scalar::Real;

/// Block lengths with cached cost models.
pub const SUPPORTED_LENGTHS: [usize; 4] = [4, 8, 16, 32];

/// Number of nonzero terms in the `U` cost proxy.
const PROXY_TERMS: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct CostWeights<T> {
    q: Vec<T>,
}

impl<T: Real> CostWeights<T> {
    pub fn new(q: Vec<T>) -> Result<Self> {
        if q.iter().any(|&v| !(v >= T::zero()) || !v.is_finite()) {
            return Err(Error::InvalidArgument("cost weights must be finite and non-negative".into()));
        }
        Ok(Self { q })
    }

    /// `δ_i = 2 − 2 cos((i − ½)π/N)`.
    pub fn delta(n: usize) -> Self {
        Self { q: dst4_laplacian_eigenvalues(n).into_values() }
    }

    pub fn values(&self) -> &[T] {
        &self.q
    }

    pub fn len(&self) -> usize {
        self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }
}

/// `Σ q_i (φ_iᵀ x)²`.
pub fn quadratic_cost_exact<T: Real>(phi: &DenseMatrix<T>, x: &[T], q: &CostWeights<T>) -> Result<T> {
    check_len(phi.cols(), q.len())?;
    let coeffs = phi.tr_matvec(x)?;
    Ok(coeffs.iter().zip(q.values()).map(|(&c, &w)| w * c * c).sum())
}

/// `xᵀ (Σ_t g_t Π Z) x` evaluated with sparse matvecs.
pub fn quadratic_cost_proxy<T: Real>(fit: &FilterDesign<T>, ops: &[SparseOperator<T>], x: &[T]) -> Result<T> {
    Ok(dot(x, &apply_mpgf(fit, ops, x)?))
}

/// `xᵀ L_A x = 2 x_1² + Σ (x_i − x_{i+1})²`.
pub fn adst_cost<T: Real>(x: &[T]) -> T {
    let edges: T = x.windows(2).map(|w| (w[0] - w[1]).powi(2)).sum();
    x.first().map_or(T::zero(), |&v| T::c(2.0) * v * v) + edges
}

/// `xᵀ J L_A J x`: the self-loop moves to the last sample.
pub fn flipped_adst_cost<T: Real>(x: &[T]) -> T {
    let edges: T = x.windows(2).map(|w| (w[0] - w[1]).powi(2)).sum();
    x.last().map_or(T::zero(), |&v| T::c(2.0) * v * v) + edges
}

/// `Σ q_j x_j²`.
pub fn identity_cost<T: Real>(x: &[T], q: &CostWeights<T>) -> Result<T> {
    check_len(q.len(), x.len())?;
    Ok(x.iter().zip(q.values()).map(|(&v, &w)| w * v * v).sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Transform1d {
    /// DCT-II
    U,
    /// ADST (DST-IV)
    V,
    /// flipped ADST
    JV,
    /// identity (IDTX)
    I,
}

impl Transform1d {
    pub const ALL: [Transform1d; 4] = [Transform1d::U, Transform1d::V, Transform1d::JV, Transform1d::I];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            Transform1d::U => "U",
            Transform1d::V => "V",
            Transform1d::JV => "JV",
            Transform1d::I => "I",
        }
    }
}

/// How the `U` cost is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UCost {
    /// sparse operator proxy
    Proxy,
    /// `Σ δ_i (u_iᵀ x)²` through the dense DCT-II basis
    Exact,
}

/// Cost model for one block length: DCT-II operators, the cached `U`
/// proxy fit, the dense DCT-II basis and the weights `δ`.
#[derive(Debug, Clone)]
pub struct LengthModel<T> {
    pub n: usize,
    pub ops: OperatorSet<T>,
    pub fit: FilterDesign<T>,
    pub basis: DenseMatrix<T>,
    pub weights: CostWeights<T>,
}

impl<T: Real> LengthModel<T> {
    pub fn new(n: usize) -> Result<Self> {
        let ops = OperatorSet::line(DttKind::Dct2, n)?;
        let weights = CostWeights::delta(n);
        let fit = exhaustive_sparse_fit(weights.values(), ops.spectra(), PROXY_TERMS.min(n))?;
        let basis = basis_matrix(DttKind::Dct2, n)?;
        Ok(Self { n, ops, fit, basis, weights })
    }

    /// `[Q_U, Q_V, Q_JV, Q_I]` for one column or row.
    pub fn costs(&self, x: &[T], u: UCost) -> Result<[T; 4]> {
        check_len(self.n, x.len())?;
        let qu = match u {
            UCost::Proxy => quadratic_cost_proxy(&self.fit, self.ops.ops(), x)?,
            UCost::Exact => quadratic_cost_exact(&self.basis, x, &self.weights)?,
        };
        Ok([qu, adst_cost(x), flipped_adst_cost(x), identity_cost(x, &self.weights)?])
    }
}

/// Cached per-length models for every supported block length.
#[derive(Debug, Clone)]
pub struct CostModel<T> {
    lengths: Vec<LengthModel<T>>,
}

impl<T: Real> CostModel<T> {
    pub fn new() -> Result<Self> {
        let lengths = SUPPORTED_LENGTHS.iter().map(|&n| LengthModel::new(n)).collect::<Result<_>>()?;
        Ok(Self { lengths })
    }

    pub fn length(&self, n: usize) -> Result<&LengthModel<T>> {
        self.lengths
            .iter()
            .find(|m| m.n == n)
            .ok_or_else(|| Error::InvalidSize(format!("block length {n} not in {SUPPORTED_LENGTHS:?}")))
    }

    pub fn models(&self) -> &[LengthModel<T>] {
        &self.lengths
    }
}

/// Mean 1D costs over the columns and rows of a block, and the 16 summed
/// 2D costs `Q_(col,row) = Q_col + Q_row`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockCosts<T> {
    pub col: [T; 4],
    pub row: [T; 4],
}

impl<T: Real> BlockCosts<T> {
    pub fn pair(&self, col: Transform1d, row: Transform1d) -> T {
        self.col[col.index()] + self.row[row.index()]
    }

    pub fn combined(&self) -> [[T; 4]; 4] {
        let mut out = [[T::zero(); 4]; 4];
        for c in Transform1d::ALL {
            for r in Transform1d::ALL {
                out[c.index()][r.index()] = self.pair(c, r);
            }
        }
        out
    }
}

/// Costs of a `height × width` block. Columns (length `height`) feed the
/// column costs, rows (length `width`) the row costs.
pub fn block_transform_costs<T: Real>(model: &CostModel<T>, block: &DenseMatrix<T>, u: UCost) -> Result<BlockCosts<T>> {
    let col_model = model.length(block.rows())?;
    let row_model = model.length(block.cols())?;
    let mean = |vals: Vec<[T; 4]>| -> [T; 4] {
        let k = T::from_count(vals.len());
        let mut acc = [T::zero(); 4];
        for v in &vals {
            for (a, &b) in acc.iter_mut().zip(v) {
                *a += b;
            }
        }
        acc.map(|a| a / k)
    };
    let cols = (0..block.cols()).map(|c| col_model.costs(block.column(c), u)).collect::<Result<Vec<_>>>()?;
    let rows = (0..block.rows()).map(|r| row_model.costs(&block.row(r), u)).collect::<Result<Vec<_>>>()?;
    Ok(BlockCosts { col: mean(cols), row: mean(rows) })
}

/// Keep/prune flags for the 16 `(col, row)` combinations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PruneMask {
    keep: [[bool; 4]; 4],
}

impl PruneMask {
    pub fn is_kept(&self, col: Transform1d, row: Transform1d) -> bool {
        self.keep[col.index()][row.index()]
    }

    pub fn kept(&self) -> usize {
        self.keep.iter().flatten().filter(|&&k| k).count()
    }

    /// Row-major over `(col, row)` in `U, V, JV, I` order.
    pub fn flags(&self) -> [bool; 16] {
        let mut out = [false; 16];
        for (i, k) in self.keep.iter().flatten().enumerate() {
            out[i] = *k;
        }
        out
    }
}

/// Prunes `(col, row)` with both in `{U, V, JV}` when
/// `Q_(col,row) > τ1 Σ_{T∈{U,V,JV}} (Q_T^col + Q_T^row)`, and the
/// combinations involving `I` when
/// `Q_(col,row) > τ2 Σ_{T} (Q_T^col + Q_T^row)` over all four transforms.
pub fn prune<T: Real>(costs: &BlockCosts<T>, tau1: T, tau2: T) -> PruneMask {
    let s6: T = costs.col[..3].iter().chain(&costs.row[..3]).copied().sum();
    let s8: T = costs.col.iter().chain(&costs.row).copied().sum();
    let mut keep = [[true; 4]; 4];
    for c in Transform1d::ALL {
        for r in Transform1d::ALL {
            let q = costs.pair(c, r);
            let threshold = if c == Transform1d::I || r == Transform1d::I { tau2 * s8 } else { tau1 * s6 };
            keep[c.index()][r.index()] = !(q > threshold);
        }
    }
    PruneMask { keep }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dtt::line_laplacian_dst4;

    fn noise(n: usize, seed: u64) -> Vec<f64> {
        let mut s = seed;
        (0..n)
            .map(|_| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((s >> 33) as f64 / (1u64 << 31) as f64) - 0.5
            })
            .collect()
    }

    #[test]
    fn laplacian_spectrum_weights_give_quadratic_form() {
        for n in [4, 8, 16] {
            let phi = basis_matrix::<f64>(DttKind::Dst4, n).unwrap();
            let la = line_laplacian_dst4::<f64>(n).unwrap();
            let x = noise(n, n as u64);
            let exact = quadratic_cost_exact(&phi, &x, &CostWeights::delta(n)).unwrap();
            assert!((exact - la.quadratic_form(&x).unwrap()).abs() < 1e-12);
            assert!((exact - adst_cost(&x)).abs() < 1e-12);
        }
    }

    #[test]
    fn single_coefficient_cost() {
        let phi = basis_matrix::<f64>(DttKind::Dct2, 8).unwrap();
        let q = CostWeights::delta(8);
        let c = quadratic_cost_exact(&phi, phi.column(5), &q).unwrap();
        assert!((c - q.values()[5]).abs() < 1e-14);
    }

    #[test]
    fn flip_swaps_v_and_jv() {
        let x = noise(8, 3);
        let jx: Vec<f64> = x.iter().rev().copied().collect();
        assert!((adst_cost(&jx) - flipped_adst_cost(&x)).abs() < 1e-15);
    }

    #[test]
    fn proxy_identity_with_fitted_response() {
        let m = LengthModel::<f64>::new(8).unwrap();
        let qhat = m.fit.response(m.ops.spectra()).unwrap();
        let x = noise(8, 9);
        let proxy = quadratic_cost_proxy(&m.fit, m.ops.ops(), &x).unwrap();
        let coeffs = m.basis.tr_matvec(&x).unwrap();
        let spectral: f64 = coeffs.iter().zip(&qhat).map(|(c, w)| w * c * c).sum();
        assert!((proxy - spectral).abs() < 1e-12);
        assert_eq!(m.fit.num_nonzero(), 3);
    }

    #[test]
    fn constant_block_costs() {
        let model = CostModel::<f64>::new().unwrap();
        let block = DenseMatrix::from_fn(8, 8, |_, _| 3.0);
        let c = block_transform_costs(&model, &block, UCost::Exact).unwrap();
        for side in [c.col, c.row] {
            // DC energy lands on the smallest weight under U
            assert!(side[0] < side[1] && side[0] < side[2] && side[0] < side[3]);
            assert!(side[3] >= side[1] && side[3] >= side[2]);
        }
        let mask = prune(&c, 0.34, 0.33);
        assert!(mask.is_kept(Transform1d::U, Transform1d::U));
    }

    #[test]
    fn unsupported_length() {
        let model = CostModel::<f64>::new().unwrap();
        assert!(block_transform_costs(&model, &DenseMatrix::zeros(6, 8), UCost::Proxy).is_err());
    }

    #[test]
    fn equal_costs_survive_c1() {
        let c = BlockCosts { col: [1.0; 4], row: [1.0; 4] };
        let mask = prune(&c, 0.34, 0.33);
        for a in [Transform1d::U, Transform1d::V, Transform1d::JV] {
            for b in [Transform1d::U, Transform1d::V, Transform1d::JV] {
                assert!(mask.is_kept(a, b));
            }
        }
        // 2 > 0.33 · 8 is false as well
        assert_eq!(mask.kept(), 16);
    }

    #[test]
    fn dominant_column_transform() {
        let c = BlockCosts { col: [0.0, 5.0, 5.0, 9.0], row: [1.0, 1.0, 1.0, 9.0] };
        let mask = prune(&c, 0.34, 0.33);
        assert!(mask.is_kept(Transform1d::U, Transform1d::U));
        assert!(!mask.is_kept(Transform1d::V, Transform1d::V));
        assert!(!mask.is_kept(Transform1d::I, Transform1d::I));
        let inf = prune(&c, f64::INFINITY, f64::INFINITY);
        assert_eq!(inf.kept(), 16);
    }
}

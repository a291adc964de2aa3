//! Graph, target and operator pool for one experiment, and the filters each
//! method produces.

use dtt_filters::design::{
    design_ls, design_minimax_mpgf, design_minimax_pgf, design_omp, DesignProblem, FilterDesign,
};
use dtt_filters::dtt::{basis_matrix, dct2_laplacian_eigenvalues, extended_operator_eigenvalues, DttKind, Spectrum};
use dtt_filters::eval::{apply_mpgf_counted, apply_pgf_chebyshev_counted, apply_pgf_counted, monomial_to_chebyshev};
use dtt_filters::matrix::DenseMatrix;
use dtt_filters::operators::{build_dct2, build_dct2_reflection, kron_2d, SparseOperator};
use dtt_filters::targets::{BandWeights, Target};
use dtt_filters::{OpCounter, Result};

use crate::config::{FilterSpec, Graph, Method};

/// Largest number of candidate MPGF terms (design matrix columns).
pub const MAX_MPGF_TERMS: usize = 50_000;

/// `C(m + k, k)`, the number of monomials of degree `≤ k` in `m` variables,
/// saturating at `usize::MAX`.
pub fn mpgf_term_count(m: usize, k: usize) -> usize {
    let mut c: u128 = 1;
    for i in 1..=k as u128 {
        c = c * (m as u128 + i) / i;
        if c > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    c as usize
}

/// Everything a design needs for one graph and target.
#[derive(Debug, Clone)]
pub struct Experiment {
    pub graph: Graph,
    pub filter: FilterSpec,
    pub laplacian: SparseOperator<f64>,
    /// Laplacian eigenvalues, aligned with the columns of `basis`.
    pub lambda: Spectrum<f64>,
    pub lambda_max: f64,
    pub basis: DenseMatrix<f64>,
    pub target: Vec<f64>,
    pub weights: Vec<f64>,
    /// MPGF operators (identity excluded) with their spectra and labels.
    pub pool: Vec<SparseOperator<f64>>,
    pub pool_spectra: Vec<Spectrum<f64>>,
    pub pool_labels: Vec<String>,
}

/// `Z^(ℓ)` of the DCT-II for `ℓ = 0..=n` (`ℓ = 0` is the identity, `ℓ = n`
/// is `2J`).
fn dct2_factors(n: usize) -> Result<Vec<(SparseOperator<f64>, Spectrum<f64>)>> {
    (0..=n)
        .map(|ell| {
            let op = match ell {
                0 => SparseOperator::identity(n),
                l if l == n => build_dct2_reflection(n)?,
                l => build_dct2(n, l)?,
            };
            let lam = if ell == 0 { Spectrum::ones(n) } else { extended_operator_eigenvalues(DttKind::Dct2, n, ell) };
            Ok((op, lam))
        })
        .collect()
}

fn path_laplacian(n: usize) -> Result<SparseOperator<f64>> {
    Ok(build_dct2::<f64>(n, 1)?.shifted(-1.0, 2.0))
}

impl Experiment {
    pub fn new(graph: Graph, filter: FilterSpec) -> Result<Self> {
        let (laplacian, lambda, basis, pool, pool_spectra, pool_labels) = match graph {
            Graph::Line(n) => {
                let factors = dct2_factors(n)?;
                let labels = (1..=n).map(|l| format!("Z{l}")).collect();
                let (ops, spectra): (Vec<_>, Vec<_>) = factors.into_iter().skip(1).unzip();
                (path_laplacian(n)?, dct2_laplacian_eigenvalues(n), basis_matrix(DttKind::Dct2, n)?, ops, spectra, labels)
            }
            Graph::Grid(h, w) => {
                // Cartesian product of the two paths: L = I_w ⊗ L_h + L_w ⊗ I_h
                let lap = kron_2d(&SparseOperator::identity(w), &path_laplacian(h)?)
                    .add(&kron_2d(&path_laplacian(w)?, &SparseOperator::identity(h)))?;
                let (wh, ww) = (dct2_laplacian_eigenvalues::<f64>(h), dct2_laplacian_eigenvalues::<f64>(w));
                let lambda =
                    Spectrum::new(ww.values().iter().flat_map(|&a| wh.values().iter().map(move |&b| a + b)).collect());
                let basis = basis_matrix::<f64>(DttKind::Dct2, w)?.kron(&basis_matrix(DttKind::Dct2, h)?);
                let (rows, cols) = (dct2_factors(w)?, dct2_factors(h)?);
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
                        labels.push(format!("Z{a}x{b}"));
                    }
                }
                (lap, lambda, basis, ops, spectra, labels)
            }
        };
        let lambda_max = lambda.max();
        let target_fn = match filter {
            FilterSpec::Tikhonov { mu } => Target::Tikhonov { mu },
            FilterSpec::BandpassExp { gamma, center } => {
                Target::BandpassExp { gamma, center: center.unwrap_or(0.5 * lambda_max) }
            }
            FilterSpec::IdealLowpass { cutoff } => Target::IdealLowpass { cutoff: cutoff.unwrap_or(0.5 * lambda_max) },
        };
        let target = target_fn.sample(&lambda);
        let weights =
            if filter.is_lowpass() { BandWeights::default().weights(&lambda, lambda_max) } else { vec![1.0; lambda.len()] };
        Ok(Self { graph, filter, laplacian, lambda, lambda_max, basis, target, weights, pool, pool_spectra, pool_labels })
    }

    pub fn n(&self) -> usize {
        self.lambda.len()
    }

    fn pgf_problem(&self, degree: usize) -> Result<DesignProblem<f64>> {
        DesignProblem::new(self.target.clone(), self.weights.clone(), degree, vec![self.lambda.clone()])
    }

    fn mpgf_problem(&self, degree: usize) -> Result<DesignProblem<f64>> {
        let terms = mpgf_term_count(self.pool.len(), degree);
        if terms > MAX_MPGF_TERMS {
            return Err(dtt_filters::Error::InvalidArgument(format!(
                "degree {degree} over {} operators gives {terms} candidate terms (limit {MAX_MPGF_TERMS})",
                self.pool.len()
            )));
        }
        DesignProblem::new(self.target.clone(), self.weights.clone(), degree, self.pool_spectra.clone())
    }

    pub fn build(&self, method: Method, degree: usize) -> Result<Filter> {
        Ok(match method {
            Method::PgfLs => Filter::Pgf(design_ls(&self.pgf_problem(degree)?)?),
            Method::PgfMinimax => Filter::Pgf(design_minimax_pgf(&self.pgf_problem(degree)?)?),
            Method::PgfCheb => {
                let d = design_ls(&self.pgf_problem(degree)?)?;
                let g = d.pgf_coefficients().map(|(_, g)| g).unwrap_or_default();
                Filter::Chebyshev(monomial_to_chebyshev(&g, self.lambda_max)?)
            }
            Method::MpgfLs => Filter::Mpgf(design_ls(&self.mpgf_problem(degree)?)?),
            Method::MpgfOmp(r) => Filter::Mpgf(design_omp(&self.mpgf_problem(degree)?, r)?),
            Method::MpgfMinimax(r) => Filter::Mpgf(design_minimax_mpgf(&self.mpgf_problem(degree)?, Some(r))?),
            Method::ExactDense => {
                let phi = &self.basis;
                let scaled = DenseMatrix::from_fn(phi.rows(), phi.cols(), |i, j| phi[(i, j)] * self.target[j]);
                Filter::Dense(scaled.matmul(&phi.transpose())?)
            }
        })
    }
}

/// A realized filter.
#[derive(Debug, Clone)]
pub enum Filter {
    /// polynomial in the graph Laplacian
    Pgf(FilterDesign<f64>),
    /// Chebyshev coefficients on `[0, λ_max]`
    Chebyshev(Vec<f64>),
    /// multivariate polynomial over the operator pool
    Mpgf(FilterDesign<f64>),
    /// `Φ diag(h*) Φᵀ`
    Dense(DenseMatrix<f64>),
}

fn chebyshev_eval(c: &[f64], s: f64) -> f64 {
    let (mut b1, mut b2) = (0.0, 0.0);
    for &ck in c.iter().skip(1).rev() {
        let b0 = 2.0 * s * b1 - b2 + ck;
        b2 = b1;
        b1 = b0;
    }
    c.first().copied().unwrap_or(0.0) + s * b1 - b2
}

impl Filter {
    pub fn apply<C: OpCounter>(&self, exp: &Experiment, x: &[f64], counter: &mut C) -> Result<Vec<f64>> {
        match self {
            Filter::Pgf(d) => {
                let g = d.pgf_coefficients().map(|(_, g)| g).unwrap_or_default();
                apply_pgf_counted(&exp.laplacian, &g, x, counter)
            }
            Filter::Chebyshev(c) => apply_pgf_chebyshev_counted(&exp.laplacian, c, x, exp.lambda_max, counter),
            Filter::Mpgf(d) => apply_mpgf_counted(d, &exp.pool, x, counter),
            Filter::Dense(h) => {
                let y = h.matvec(x)?;
                counter.multiply_adds(h.rows() * h.cols());
                Ok(y)
            }
        }
    }

    pub fn response(&self, exp: &Experiment) -> Result<Vec<f64>> {
        match self {
            Filter::Pgf(d) => d.response(std::slice::from_ref(&exp.lambda)),
            Filter::Chebyshev(c) => {
                Ok(exp.lambda.values().iter().map(|&l| chebyshev_eval(c, 2.0 * l / exp.lambda_max - 1.0)).collect())
            }
            Filter::Mpgf(d) => d.response(&exp.pool_spectra),
            Filter::Dense(_) => Ok(exp.target.clone()),
        }
    }

    pub fn design(&self) -> Option<&FilterDesign<f64>> {
        match self {
            Filter::Pgf(d) | Filter::Mpgf(d) => Some(d),
            _ => None,
        }
    }

    /// Number of coefficients.
    pub fn terms(&self) -> usize {
        match self {
            Filter::Pgf(d) | Filter::Mpgf(d) => d.len(),
            Filter::Chebyshev(c) => c.len(),
            Filter::Dense(h) => h.rows(),
        }
    }
}

/// Response error measures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Errors {
    /// `‖h − h*‖ / ‖h*‖`
    pub relative: f64,
    pub rmse: f64,
    /// `max_i ρ_i |h_i − h*_i|`
    pub max_weighted: f64,
}

pub fn response_errors(exp: &Experiment, h: &[f64]) -> Errors {
    let diff: Vec<f64> = h.iter().zip(&exp.target).map(|(a, b)| a - b).collect();
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let t = norm(&exp.target);
    Errors {
        relative: if t > 0.0 { norm(&diff) / t } else { norm(&diff) },
        rmse: norm(&diff) / (diff.len() as f64).sqrt(),
        max_weighted: diff.iter().zip(&exp.weights).fold(0.0, |m, (d, w)| f64::max(m, (w * d).abs())),
    }
}

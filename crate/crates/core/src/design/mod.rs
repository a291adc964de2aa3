//! Coefficient design for polynomial (PGF) and multivariate polynomial (MPGF)
//! graph filters.
//!
//! A design problem lives entirely in the spectral domain: a target response
//! `h*`, per-frequency weights `ρ`, a degree `K` and the spectra
//! `λ^(1) .. λ^(M)` of the operators the filter may use. Filters are sums of
//! terms `g · Z^(i1) ⋯ Z^(ik)`; because the operators commute, each term is
//! identified with the sorted multiset `{i1, .., ik}` (0-based operator
//! indices, the empty multiset standing for the identity).

mod fit;
mod minimax;
mod text;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

pub use fit::{design_lasso, design_ls, design_omp, exhaustive_sparse_fit};
pub use minimax::{design_minimax_mpgf, design_minimax_pgf};
pub use text::{parse_design, write_design, DesignHeader};

use crate::dtt::Spectrum;
use crate::error::{check_len, Error, Result};
use crate::matrix::DenseMatrix;
use crate::scalar::Real;

#[derive(Debug, Clone)]
pub struct DesignProblem<T> {
    target: Vec<T>,
    weights: Vec<T>,
    degree: usize,
    spectra: Vec<Spectrum<T>>,
}

impl<T: Real> DesignProblem<T> {
    pub fn new(target: Vec<T>, weights: Vec<T>, degree: usize, spectra: Vec<Spectrum<T>>) -> Result<Self> {
        if spectra.is_empty() {
            return Err(Error::InvalidArgument("at least one operator spectrum is required".into()));
        }
        if degree == 0 {
            return Err(Error::InvalidArgument("degree must be at least 1".into()));
        }
        let n = target.len();
        check_len(n, weights.len())?;
        for s in &spectra {
            check_len(n, s.len())?;
        }
        let finite = target.iter().chain(&weights).all(|v| v.is_finite())
            && spectra.iter().all(|s| s.values().iter().all(|v| v.is_finite()));
        if !finite {
            return Err(Error::InvalidInput("design data must be finite".into()));
        }
        if weights.iter().any(|&w| w < T::zero()) {
            return Err(Error::InvalidArgument("weights must be non-negative".into()));
        }
        Ok(Self { target, weights, degree, spectra })
    }

    /// Uniform unit weights.
    pub fn unweighted(target: Vec<T>, degree: usize, spectra: Vec<Spectrum<T>>) -> Result<Self> {
        let w = vec![T::one(); target.len()];
        Self::new(target, w, degree, spectra)
    }

    pub fn target(&self) -> &[T] {
        &self.target
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn spectra(&self) -> &[Spectrum<T>] {
        &self.spectra
    }

    /// Number of frequencies `N`.
    pub fn len(&self) -> usize {
        self.target.len()
    }

    pub fn is_empty(&self) -> bool {
        self.target.is_empty()
    }

    /// Number of operators `M`.
    pub fn num_operators(&self) -> usize {
        self.spectra.len()
    }

    /// `Π_K` with its term index.
    pub fn design_matrix(&self) -> (DenseMatrix<T>, Vec<Vec<usize>>) {
        mpgf_matrix_pi(&self.spectra, self.degree).expect("validated on construction")
    }

    /// `(diag(ρ) Π_K, diag(ρ) h*)`.
    pub(crate) fn weighted_system(&self) -> (DenseMatrix<T>, Vec<T>, Vec<Vec<usize>>) {
        let (pi, terms) = self.design_matrix();
        let a = pi.scale_rows(&self.weights).expect("lengths validated");
        let b = self.target.iter().zip(&self.weights).map(|(&h, &w)| h * w).collect();
        (a, b, terms)
    }

    pub(crate) fn require_weight(&self) -> Result<()> {
        if self.weights.iter().all(|&w| w == T::zero()) {
            return Err(Error::InvalidArgument("all weights are zero".into()));
        }
        Ok(())
    }

    /// `‖diag(ρ)(h* − h)‖₂` for the response `h` of `design`.
    pub fn weighted_residual(&self, design: &FilterDesign<T>) -> Result<T> {
        let h = design.response(&self.spectra)?;
        let ss: T = self.target.iter().zip(&h).zip(&self.weights).map(|((&t, &v), &w)| (w * (t - v)).powi(2)).sum();
        Ok(ss.sqrt())
    }

    /// `max_i ρ_i |h*_i − h_i|`.
    pub fn max_weighted_error(&self, design: &FilterDesign<T>) -> Result<T> {
        let h = design.response(&self.spectra)?;
        Ok(self
            .target
            .iter()
            .zip(&h)
            .zip(&self.weights)
            .fold(T::zero(), |m, ((&t, &v), &w)| m.max(w * (t - v).abs())))
    }

    /// Unweighted root-mean-square response error.
    pub fn rmse(&self, design: &FilterDesign<T>) -> Result<T> {
        let h = design.response(&self.spectra)?;
        let ss: T = self.target.iter().zip(&h).map(|(&t, &v)| (t - v).powi(2)).sum();
        Ok((ss / T::from_count(self.len())).sqrt())
    }
}

/// How a design was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DesignMethod {
    LeastSquares,
    Omp { terms: usize },
    Lasso { budget: f64 },
    Minimax,
    MinimaxSupport { terms: usize },
    Exhaustive { terms: usize },
    /// Built by hand or parsed without a method tag.
    Manual,
}

impl fmt::Display for DesignMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DesignMethod::LeastSquares => f.write_str("ls"),
            DesignMethod::Omp { terms } => write!(f, "omp:{terms}"),
            DesignMethod::Lasso { budget } => write!(f, "lasso:{budget}"),
            DesignMethod::Minimax => f.write_str("minimax"),
            DesignMethod::MinimaxSupport { terms } => write!(f, "minimax:{terms}"),
            DesignMethod::Exhaustive { terms } => write!(f, "exhaustive:{terms}"),
            DesignMethod::Manual => f.write_str("manual"),
        }
    }
}

impl FromStr for DesignMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown design method `{s}`"));
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let count = |a: Option<&str>| a.and_then(|a| a.parse::<usize>().ok()).ok_or_else(bad);
        Ok(match name {
            "ls" => DesignMethod::LeastSquares,
            "omp" => DesignMethod::Omp { terms: count(arg)? },
            "lasso" => DesignMethod::Lasso { budget: arg.and_then(|a| a.parse().ok()).ok_or_else(bad)? },
            "minimax" => match arg {
                None => DesignMethod::Minimax,
                a => DesignMethod::MinimaxSupport { terms: count(a)? },
            },
            "exhaustive" => DesignMethod::Exhaustive { terms: count(arg)? },
            "manual" => DesignMethod::Manual,
            _ => return Err(bad()),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Term<T> {
    /// Sorted operator indices; empty for the identity.
    pub ops: Vec<usize>,
    pub coeff: T,
}

/// A designed filter `Σ g_t Π_{i ∈ t} Z^(i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterDesign<T> {
    terms: Vec<Term<T>>,
    method: DesignMethod,
    /// Optimal weighted max-error for minimax designs.
    epsilon: Option<T>,
}

impl<T: Real> FilterDesign<T> {
    /// Canonicalizes the terms: each multiset is sorted, repeated multisets
    /// are merged, and terms are ordered by degree then lexicographically.
    pub fn new(terms: impl IntoIterator<Item = (Vec<usize>, T)>, method: DesignMethod) -> Self {
        let mut merged: Vec<Term<T>> = Vec::new();
        for (mut ops, coeff) in terms {
            ops.sort_unstable();
            match merged.iter_mut().find(|t| t.ops == ops) {
                Some(t) => t.coeff += coeff,
                None => merged.push(Term { ops, coeff }),
            }
        }
        merged.sort_by(|a, b| term_order(&a.ops, &b.ops));
        Self { terms: merged, method, epsilon: None }
    }

    /// `Σ_k g_k Z^k` over a single operator (index 0).
    pub fn pgf(coeffs: &[T]) -> Self {
        Self::new(coeffs.iter().enumerate().map(|(k, &g)| (vec![0; k], g)), DesignMethod::Manual)
    }

    pub(crate) fn with_epsilon(mut self, eps: T) -> Self {
        self.epsilon = Some(eps);
        self
    }

    pub fn terms(&self) -> &[Term<T>] {
        &self.terms
    }

    pub fn method(&self) -> DesignMethod {
        self.method
    }

    pub fn epsilon(&self) -> Option<T> {
        self.epsilon
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of a multiset (zero if absent).
    pub fn coefficient(&self, ops: &[usize]) -> T {
        let mut key = ops.to_vec();
        key.sort_unstable();
        self.terms.iter().find(|t| t.ops == key).map_or(T::zero(), |t| t.coeff)
    }

    /// Highest term degree.
    pub fn degree(&self) -> usize {
        self.terms.iter().map(|t| t.ops.len()).max().unwrap_or(0)
    }

    /// Terms with a nonzero coefficient.
    pub fn num_nonzero(&self) -> usize {
        self.terms.iter().filter(|t| t.coeff != T::zero()).count()
    }

    /// Largest operator index used, plus one.
    pub fn operator_bound(&self) -> usize {
        self.terms.iter().flat_map(|t| t.ops.iter()).map(|&i| i + 1).max().unwrap_or(0)
    }

    /// Monomial coefficients `(g_0, .., g_K)` when every term is a power of
    /// one operator; `None` otherwise.
    pub fn pgf_coefficients(&self) -> Option<(usize, Vec<T>)> {
        let op = self.terms.iter().find_map(|t| t.ops.first().copied()).unwrap_or(0);
        if self.terms.iter().any(|t| t.ops.iter().any(|&i| i != op)) {
            return None;
        }
        let mut g = vec![T::zero(); self.degree() + 1];
        for t in &self.terms {
            g[t.ops.len()] += t.coeff;
        }
        Some((op, g))
    }

    /// Frequency response `h_j = Σ_t g_t Π_{i ∈ t} λ^(i)_j`.
    pub fn response(&self, spectra: &[Spectrum<T>]) -> Result<Vec<T>> {
        if self.operator_bound() > spectra.len() {
            return Err(Error::InvalidArgument(format!(
                "design uses operator {} but only {} spectra were given",
                self.operator_bound(),
                spectra.len()
            )));
        }
        let n = match spectra.first() {
            Some(s) => s.len(),
            None => return Ok(Vec::new()),
        };
        for s in spectra {
            check_len(n, s.len())?;
        }
        Ok((0..n)
            .map(|j| {
                self.terms
                    .iter()
                    .map(|t| t.ops.iter().fold(t.coeff, |acc, &i| acc * spectra[i][j]))
                    .sum()
            })
            .collect())
    }
}

fn term_order(a: &[usize], b: &[usize]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// All sorted multisets over `0..m` of size at most `k`, by size then
/// lexicographically.
pub fn canonical_terms(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for t in &layer {
            let start = t.last().copied().unwrap_or(0);
            for i in start..m {
                let mut u = t.clone();
                u.push(i);
                next.push(u);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// `Ψ` with row `j = (1, λ_j, .., λ_j^K)`.
pub fn vandermonde_psi<T: Real>(lambda: &Spectrum<T>, k: usize) -> DenseMatrix<T> {
    DenseMatrix::from_fn(lambda.len(), k + 1, |j, p| lambda[j].powi(p as i32))
}

/// `Π_K`: one column per canonical multiset of degree `≤ K`, holding the
/// elementwise product of the member spectra. Returns the multisets in
/// column order.
pub fn mpgf_matrix_pi<T: Real>(spectra: &[Spectrum<T>], k: usize) -> Result<(DenseMatrix<T>, Vec<Vec<usize>>)> {
    let n = spectra.first().map(Spectrum::len).ok_or_else(|| Error::InvalidArgument("no spectra".into()))?;
    for s in spectra {
        check_len(n, s.len())?;
    }
    let terms = canonical_terms(spectra.len(), k);
    let mut pi = DenseMatrix::zeros(n, terms.len());
    let mut position: HashMap<&[usize], usize> = HashMap::with_capacity(terms.len());
    for (c, t) in terms.iter().enumerate() {
        match t.split_last() {
            None => pi.column_mut(c).fill(T::one()),
            Some((&last, parent)) => {
                let p = position[parent];
                for j in 0..n {
                    let v = pi[(j, p)] * spectra[last][j];
                    pi[(j, c)] = v;
                }
            }
        }
        position.insert(t, c);
    }
    Ok((pi, terms))
}

use super::{DesignMethod, DesignProblem, FilterDesign};
use crate::dtt::Spectrum;
use crate::error::{check_len, Error, Result};
use crate::linalg::lstsq;
use crate::matrix::{dot, norm2, DenseMatrix};
use crate::scalar::Real;

const LASSO_TOL: f64 = 1e-8;
const LASSO_MAX_SWEEPS: usize = 200_000;
const DROP_TOL: f64 = 1e-10;
const TIE_TOL: f64 = 1e-12;

/// Weighted least squares over every column of `Π_K` (minimum-norm solution
/// when `Π_K` is rank deficient).
pub fn design_ls<T: Real>(problem: &DesignProblem<T>) -> Result<FilterDesign<T>> {
    problem.require_weight()?;
    let (a, b, terms) = problem.weighted_system();
    let (g, _) = lstsq(&a, &b)?;
    Ok(FilterDesign::new(terms.into_iter().zip(g), DesignMethod::LeastSquares))
}

fn fit_subset<T: Real>(a: &DenseMatrix<T>, b: &[T], cols: &[usize]) -> Result<(Vec<T>, Vec<T>)> {
    let sub = a.select_columns(cols);
    let (g, _) = lstsq(&sub, b)?;
    let fitted = sub.matvec(&g)?;
    let r = b.iter().zip(&fitted).map(|(&x, &y)| x - y).collect();
    Ok((g, r))
}

/// Orthogonal matching pursuit with at most `r` terms (clamped to the column
/// count). Each step adds the column of `diag(ρ)Π_K` whose normalized
/// correlation `|d_kᵀ res| / ‖d_k‖` with the residual is largest, lowest index
/// first on ties, then refits least squares on the selected set.
pub fn design_omp<T: Real>(problem: &DesignProblem<T>, r: usize) -> Result<FilterDesign<T>> {
    if r == 0 {
        return Err(Error::InvalidArgument("OMP needs at least one term".into()));
    }
    problem.require_weight()?;
    let (a, b, terms) = problem.weighted_system();
    let r = r.min(a.cols());
    let norms: Vec<T> = (0..a.cols()).map(|k| norm2(a.column(k))).collect();
    let stop = T::tol(TIE_TOL) * (T::one() + norm2(&b));

    let mut selected: Vec<usize> = Vec::with_capacity(r);
    let mut coeffs: Vec<T> = Vec::new();
    let mut residual = b.clone();
    while selected.len() < r {
        let mut best: Option<(usize, T)> = None;
        for k in 0..a.cols() {
            if selected.contains(&k) || norms[k] == T::zero() {
                continue;
            }
            let score = dot(a.column(k), &residual).abs() / norms[k];
            if best.is_none_or(|(_, s)| score > s) {
                best = Some((k, score));
            }
        }
        match best {
            Some((k, s)) if s > stop => selected.push(k),
            _ => break,
        }
        let (g, res) = fit_subset(&a, &b, &selected)?;
        coeffs = g;
        residual = res;
    }
    let design = selected.iter().zip(coeffs).map(|(&k, g)| (terms[k].clone(), g));
    Ok(FilterDesign::new(design, DesignMethod::Omp { terms: r }))
}

/// Coordinate descent on `½‖b − A g‖² + λ‖g‖₁`, warm-started from `g`.
fn lasso_cd<T: Real>(a: &DenseMatrix<T>, b: &[T], lambda: T, g: &mut [T], col_sq: &[T]) -> Result<()> {
    let tol = T::tol(LASSO_TOL);
    let ag = a.matvec(g)?;
    let mut r: Vec<T> = b.iter().zip(&ag).map(|(&x, &y)| x - y).collect();
    for _ in 0..LASSO_MAX_SWEEPS {
        let mut max_change = T::zero();
        for k in 0..g.len() {
            if col_sq[k] == T::zero() {
                g[k] = T::zero();
                continue;
            }
            let col = a.column(k);
            let rho = dot(col, &r) + col_sq[k] * g[k];
            let new = soft_threshold(rho, lambda) / col_sq[k];
            let delta = new - g[k];
            if delta != T::zero() {
                for (ri, &ci) in r.iter_mut().zip(col) {
                    *ri -= ci * delta;
                }
                g[k] = new;
                max_change = max_change.max(delta.abs());
            }
        }
        if max_change <= tol {
            return Ok(());
        }
    }
    Err(Error::NonConvergence(format!("coordinate descent did not settle in {LASSO_MAX_SWEEPS} sweeps")))
}

fn soft_threshold<T: Real>(v: T, t: T) -> T {
    if v > t {
        v - t
    } else if v < -t {
        v + t
    } else {
        T::zero()
    }
}

fn l1<T: Real>(g: &[T]) -> T {
    g.iter().map(|v| v.abs()).sum()
}

/// Weighted least squares subject to `‖g‖₁ ≤ τ`.
///
/// If the least-squares solution already fits the budget it is returned.
/// Otherwise the constraint is active and the penalized problem is solved by
/// coordinate descent, bisecting on the penalty until `‖g‖₁ = τ`.
pub fn design_lasso<T: Real>(problem: &DesignProblem<T>, tau: T) -> Result<FilterDesign<T>> {
    if tau.is_nan() || tau < T::zero() {
        return Err(Error::InvalidArgument(format!("ℓ1 budget must be non-negative, got {tau}")));
    }
    problem.require_weight()?;
    let method = DesignMethod::Lasso { budget: tau.to_f64_lossy() };
    if tau == T::zero() {
        return Ok(FilterDesign::new(std::iter::empty(), method));
    }
    let (a, b, terms) = problem.weighted_system();
    let drop_small = |g: Vec<T>| {
        let design = terms.iter().cloned().zip(g).filter(|(_, v)| v.abs() >= T::tol(DROP_TOL));
        FilterDesign::new(design, method)
    };

    let (g_ls, _) = lstsq(&a, &b)?;
    if l1(&g_ls) <= tau {
        return Ok(drop_small(g_ls));
    }

    let col_sq: Vec<T> = (0..a.cols()).map(|k| dot(a.column(k), a.column(k))).collect();
    let at_b = a.tr_matvec(&b)?;
    let mut hi = at_b.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    let mut g_hi = vec![T::zero(); a.cols()];
    let mut lo = hi * T::c(1e-12);
    let mut g = g_hi.clone();
    lasso_cd(&a, &b, lo, &mut g, &col_sq)?;
    if l1(&g) <= tau {
        return Ok(drop_small(g));
    }
    let budget_tol = T::tol(DROP_TOL) * tau.max(T::one());
    for _ in 0..400 {
        if tau - l1(&g_hi) <= budget_tol || hi - lo <= hi * T::epsilon() * T::c(4.0) {
            break;
        }
        let mid = if hi > lo * T::c(10.0) { (hi * lo).sqrt() } else { (hi + lo) * T::c(0.5) };
        let mut g_mid = g_hi.clone();
        lasso_cd(&a, &b, mid, &mut g_mid, &col_sq)?;
        if l1(&g_mid) <= tau {
            hi = mid;
            g_hi = g_mid;
        } else {
            lo = mid;
        }
    }
    Ok(drop_small(g_hi))
}

/// Best `r`-term degree-1 fit of `q` over `{I} ∪ {Z^(m)}`, by exhaustive
/// search over column subsets. Ties within `1e-12` keep the
/// lexicographically first subset.
pub fn exhaustive_sparse_fit<T: Real>(q: &[T], spectra: &[Spectrum<T>], r: usize) -> Result<FilterDesign<T>> {
    let ncols = spectra.len() + 1;
    if r == 0 || r > ncols {
        return Err(Error::InvalidArgument(format!("term count {r} outside 1..={ncols}")));
    }
    for s in spectra {
        check_len(q.len(), s.len())?;
    }
    let a = DenseMatrix::from_fn(q.len(), ncols, |j, c| if c == 0 { T::one() } else { spectra[c - 1][j] });
    let scale = T::one() + norm2(q);
    let mut best: Option<(Vec<usize>, Vec<T>, T)> = None;
    let mut subset: Vec<usize> = (0..r).collect();
    loop {
        let (g, res) = fit_subset(&a, q, &subset)?;
        let rn = norm2(&res);
        if best.as_ref().is_none_or(|(_, _, b)| rn < *b - T::tol(TIE_TOL) * scale) {
            best = Some((subset.clone(), g, rn));
        }
        let Some(i) = (0..r).rev().find(|&i| subset[i] != i + ncols - r) else {
            break;
        };
        subset[i] += 1;
        for j in i + 1..r {
            subset[j] = subset[j - 1] + 1;
        }
    }
    let (cols, g, _) = best.expect("at least one subset");
    let terms = cols.into_iter().map(|c| if c == 0 { vec![] } else { vec![c - 1] }).zip(g);
    Ok(FilterDesign::new(terms, DesignMethod::Exhaustive { terms: r }))
}

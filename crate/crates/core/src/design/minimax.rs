use super::{design_omp, DesignMethod, DesignProblem, FilterDesign};
use crate::error::{Error, Result};
use crate::lp::{solve, LpProblem, LpStatus};
use crate::matrix::DenseMatrix;
use crate::scalar::Real;

/// `min ε` s.t. `|ρ_i (h*_i − Π_i g)| ≤ ε` over the given columns of `Π`.
/// Columns are rescaled to unit max-norm before the LP and the coefficients
/// mapped back afterwards.
fn minimax_columns<T: Real>(pi: &DenseMatrix<T>, target: &[T], weights: &[T]) -> Result<(Vec<T>, T)> {
    let c = pi.cols();
    let active: Vec<usize> = (0..pi.rows()).filter(|&i| weights[i] > T::zero()).collect();
    let scale: Vec<T> = (0..c)
        .map(|k| {
            let m = pi.column(k).iter().fold(T::zero(), |m, v| m.max(v.abs()));
            if m > T::zero() {
                m
            } else {
                T::one()
            }
        })
        .collect();

    // variables (g_0 .. g_{c−1}, ε)
    let rows = 2 * active.len() + 1;
    let mut a = DenseMatrix::zeros(rows, c + 1);
    let mut b = vec![T::zero(); rows];
    for (r, &i) in active.iter().enumerate() {
        let w = weights[i];
        for k in 0..c {
            let v = w * pi[(i, k)] / scale[k];
            a[(2 * r, k)] = -v;
            a[(2 * r + 1, k)] = v;
        }
        a[(2 * r, c)] = -T::one();
        a[(2 * r + 1, c)] = -T::one();
        b[2 * r] = -w * target[i];
        b[2 * r + 1] = w * target[i];
    }
    a[(rows - 1, c)] = -T::one();
    let mut cost = vec![T::zero(); c + 1];
    cost[c] = T::one();

    let sol = solve(&LpProblem::new(cost, a, b)?)?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::NonConvergence(format!("minimax program ended {:?}", sol.status)));
    }
    let g = sol.x[..c].iter().zip(&scale).map(|(&v, &s)| v / s).collect();
    Ok((g, sol.x[c].max(T::zero())))
}

/// Minimax PGF design over a single operator spectrum: minimizes the
/// weighted maximum response error by linear programming.
pub fn design_minimax_pgf<T: Real>(problem: &DesignProblem<T>) -> Result<FilterDesign<T>> {
    if problem.num_operators() != 1 {
        return Err(Error::InvalidArgument(format!(
            "PGF design takes one operator, got {}",
            problem.num_operators()
        )));
    }
    design_minimax_mpgf(problem, None)
}

/// Minimax MPGF design over all columns of `Π_K`, or, with `max_terms`, over
/// the support that OMP picks for the least-squares problem.
pub fn design_minimax_mpgf<T: Real>(problem: &DesignProblem<T>, max_terms: Option<usize>) -> Result<FilterDesign<T>> {
    problem.require_weight()?;
    let (pi, terms) = problem.design_matrix();
    let (cols, method) = match max_terms {
        None => ((0..pi.cols()).collect::<Vec<_>>(), DesignMethod::Minimax),
        Some(r) => {
            let support = design_omp(problem, r)?;
            let cols = support.terms().iter().map(|t| terms.iter().position(|u| *u == t.ops).expect("OMP term")).collect();
            (cols, DesignMethod::MinimaxSupport { terms: r })
        }
    };
    let (g, eps) = minimax_columns(&pi.select_columns(&cols), problem.target(), problem.weights())?;
    let design = cols.iter().map(|&k| terms[k].clone()).zip(g);
    Ok(FilterDesign::new(design, method).with_epsilon(eps))
}

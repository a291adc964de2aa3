//! Dense two-phase simplex for small linear programs
//!
//! ```text
//! minimize cᵀx  subject to  A x ≤ b,  x free.
//! ```
//!
//! Free variables are split as `x = x⁺ − x⁻`, every row gets a slack, and rows
//! with `b_i < 0` are negated and given an artificial variable. Pivoting uses
//! Bland's rule throughout.

use crate::error::{check_len, Error, Result};
use crate::matrix::DenseMatrix;
use crate::scalar::Real;

const PIVOT_TOL: f64 = 1e-10;
const FEASIBILITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct LpProblem<T> {
    pub c: Vec<T>,
    pub a: DenseMatrix<T>,
    pub b: Vec<T>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Unbounded,
    Infeasible,
}

#[derive(Debug, Clone)]
pub struct LpSolution<T> {
    pub status: LpStatus,
    /// Optimal point; empty unless the status is [`LpStatus::Optimal`].
    pub x: Vec<T>,
    /// `cᵀx*`, `−∞` when unbounded, `+∞` when infeasible.
    pub objective: T,
    /// Final reduced costs over the standard-form columns (`x⁺`, `x⁻`, slacks).
    pub reduced_costs: Vec<T>,
    pub pivots: usize,
}

impl<T: Real> LpProblem<T> {
    pub fn new(c: Vec<T>, a: DenseMatrix<T>, b: Vec<T>) -> Result<Self> {
        let p = Self { c, a, b };
        p.validate()?;
        Ok(p)
    }

    pub fn num_vars(&self) -> usize {
        self.c.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.b.len()
    }

    fn validate(&self) -> Result<()> {
        check_len(self.a.cols(), self.c.len())?;
        check_len(self.a.rows(), self.b.len())?;
        let finite = self.c.iter().chain(&self.b).chain(self.a.as_slice()).all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidInput("linear program has non-finite entries".into()));
        }
        Ok(())
    }

    pub fn objective(&self, x: &[T]) -> T {
        crate::matrix::dot(&self.c, x)
    }

    /// `max_i (A x − b)_i`, clamped below at zero.
    pub fn max_violation(&self, x: &[T]) -> Result<T> {
        let ax = self.a.matvec(x)?;
        Ok(ax.iter().zip(&self.b).fold(T::zero(), |m, (&l, &r)| m.max(l - r)))
    }
}

struct Tableau<T> {
    rows: Vec<Vec<T>>,
    /// Reduced costs; the last slot holds `−z`.
    obj: Vec<T>,
    basis: Vec<usize>,
    width: usize,
    pivots: usize,
    cap: usize,
}

enum PhaseEnd {
    Optimal,
    Unbounded,
}

impl<T: Real> Tableau<T> {
    fn pivot(&mut self, r: usize, col: usize) {
        let w = self.width;
        let inv = T::one() / self.rows[r][col];
        for v in self.rows[r].iter_mut() {
            *v *= inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            let f = row[col];
            if i == r || f == T::zero() {
                continue;
            }
            for j in 0..=w {
                row[j] -= f * pivot_row[j];
            }
            row[col] = T::zero();
        }
        let f = self.obj[col];
        if f != T::zero() {
            for j in 0..=w {
                self.obj[j] -= f * pivot_row[j];
            }
            self.obj[col] = T::zero();
        }
        self.basis[r] = col;
        self.pivots += 1;
    }

    fn set_objective(&mut self, cost: &[T]) {
        let w = self.width;
        self.obj = cost.to_vec();
        self.obj.push(T::zero());
        for (i, &bv) in self.basis.iter().enumerate() {
            let cb = self.obj[bv];
            if cb != T::zero() {
                for j in 0..=w {
                    self.obj[j] -= cb * self.rows[i][j];
                }
            }
        }
    }

    fn run(&mut self, allowed: usize) -> Result<PhaseEnd> {
        let tol = T::tol(PIVOT_TOL);
        loop {
            let Some(enter) = (0..allowed).find(|&j| self.obj[j] < -tol) else {
                return Ok(PhaseEnd::Optimal);
            };
            let mut leave: Option<(usize, T)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                let a = row[enter];
                if a <= tol {
                    continue;
                }
                let ratio = row[self.width] / a;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((bi, br)) => {
                        if ratio < br - tol || ((ratio - br).abs() <= tol && self.basis[i] < self.basis[bi]) {
                            Some((i, ratio))
                        } else {
                            Some((bi, br))
                        }
                    }
                };
            }
            let Some((r, _)) = leave else {
                return Ok(PhaseEnd::Unbounded);
            };
            if self.pivots >= self.cap {
                return Err(Error::NonConvergence(format!("simplex exceeded {} pivots", self.cap)));
            }
            self.pivot(r, enter);
        }
    }
}

/// Solves the program. Hitting the pivot cap `10 (rows + cols)²` is an error;
/// infeasibility and unboundedness are reported through the status.
pub fn solve<T: Real>(problem: &LpProblem<T>) -> Result<LpSolution<T>> {
    problem.validate()?;
    let n = problem.num_vars();
    let m = problem.num_constraints();
    let art_start = 2 * n + m;
    let negated: Vec<bool> = problem.b.iter().map(|&b| b < T::zero()).collect();
    let n_art = negated.iter().filter(|&&x| x).count();
    let width = art_start + n_art;

    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut next_art = art_start;
    for i in 0..m {
        let s = if negated[i] { -T::one() } else { T::one() };
        let mut row = vec![T::zero(); width + 1];
        for j in 0..n {
            let v = s * problem.a[(i, j)];
            row[j] = v;
            row[n + j] = -v;
        }
        row[2 * n + i] = s;
        row[width] = s * problem.b[i];
        if negated[i] {
            row[next_art] = T::one();
            basis.push(next_art);
            next_art += 1;
        } else {
            basis.push(2 * n + i);
        }
        rows.push(row);
    }
    let cap = 10 * (m + width).pow(2);
    let mut tab = Tableau { rows, obj: Vec::new(), basis, width, pivots: 0, cap };

    if n_art > 0 {
        let mut cost = vec![T::zero(); width];
        for c in cost.iter_mut().skip(art_start) {
            *c = T::one();
        }
        tab.set_objective(&cost);
        tab.run(width)?;
        let bmax = problem.b.iter().fold(T::zero(), |a, &b| a.max(b.abs()));
        if -tab.obj[width] > T::tol(FEASIBILITY_TOL) * (T::one() + bmax) {
            return Ok(LpSolution {
                status: LpStatus::Infeasible,
                x: Vec::new(),
                objective: T::infinity(),
                reduced_costs: Vec::new(),
                pivots: tab.pivots,
            });
        }
        // push remaining (zero-valued) artificials out, dropping redundant rows
        let tol = T::tol(PIVOT_TOL);
        let mut i = 0;
        while i < tab.rows.len() {
            if tab.basis[i] >= art_start {
                match (0..art_start).find(|&j| tab.rows[i][j].abs() > tol) {
                    Some(j) => tab.pivot(i, j),
                    None => {
                        tab.rows.remove(i);
                        tab.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    let mut cost = vec![T::zero(); width];
    for j in 0..n {
        cost[j] = problem.c[j];
        cost[n + j] = -problem.c[j];
    }
    tab.set_objective(&cost);
    let end = tab.run(art_start)?;
    let reduced_costs = tab.obj[..art_start].to_vec();
    if let PhaseEnd::Unbounded = end {
        return Ok(LpSolution {
            status: LpStatus::Unbounded,
            x: Vec::new(),
            objective: T::neg_infinity(),
            reduced_costs,
            pivots: tab.pivots,
        });
    }
    let mut x = vec![T::zero(); n];
    for (i, &bv) in tab.basis.iter().enumerate() {
        let v = tab.rows[i][width];
        if bv < n {
            x[bv] += v;
        } else if bv < 2 * n {
            x[bv - n] -= v;
        }
    }
    let objective = problem.objective(&x);
    Ok(LpSolution { status: LpStatus::Optimal, x, objective, reduced_costs, pivots: tab.pivots })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(c: Vec<f64>, rows: &[Vec<f64>], b: Vec<f64>) -> LpProblem<f64> {
        LpProblem::new(c, DenseMatrix::from_rows(rows).unwrap(), b).unwrap()
    }

    #[test]
    fn single_variable_box() {
        let p = lp(vec![-1.0], &[vec![1.0], vec![-1.0]], vec![1.0, 0.0]);
        let s = solve(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.x[0] - 1.0).abs() < 1e-12);
        assert!((s.objective + 1.0).abs() < 1e-12);
    }

    #[test]
    fn minimax_midpoint() {
        // variables (g0, ε); |h_i − g0| ≤ ε for h = (0, 1)
        let p = lp(
            vec![0.0, 1.0],
            &[vec![-1.0, -1.0], vec![1.0, -1.0], vec![-1.0, -1.0], vec![1.0, -1.0]],
            vec![0.0, 0.0, -1.0, 1.0],
        );
        let s = solve(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.x[0] - 0.5).abs() < 1e-12 && (s.x[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn unbounded_and_infeasible() {
        let p = lp(vec![-1.0], &[vec![-1.0]], vec![0.0]);
        assert_eq!(solve(&p).unwrap().status, LpStatus::Unbounded);
        let p = lp(vec![1.0], &[vec![1.0], vec![-1.0]], vec![-1.0, -1.0]);
        assert_eq!(solve(&p).unwrap().status, LpStatus::Infeasible);
    }

    #[test]
    fn redundant_equality_pair() {
        // x + y = 2 written twice as two-sided inequalities
        let p = lp(
            vec![1.0, 2.0],
            &[vec![1.0, 1.0], vec![-1.0, -1.0], vec![2.0, 2.0], vec![-2.0, -2.0], vec![0.0, -1.0]],
            vec![2.0, -2.0, 4.0, -4.0, 0.0],
        );
        let s = solve(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.x[0] - 2.0).abs() < 1e-12 && s.x[1].abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_shapes() {
        let a = DenseMatrix::<f64>::zeros(2, 2);
        assert!(LpProblem::new(vec![1.0], a.clone(), vec![0.0, 0.0]).is_err());
        assert!(LpProblem::new(vec![1.0, f64::NAN], a, vec![0.0, 0.0]).is_err());
    }

    #[test]
    fn single_precision() {
        let a = DenseMatrix::<f32>::from_rows(&[vec![1.0], vec![-1.0]]).unwrap();
        let s = solve(&LpProblem::new(vec![-2.0f32], a, vec![3.0, 0.0]).unwrap()).unwrap();
        assert!((s.x[0] - 3.0).abs() < 1e-5);
    }
}

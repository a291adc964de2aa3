//! Small dense factorizations: one-sided Jacobi SVD and the minimum-norm
//! least-squares solve built on it.

use crate::error::{check_len, Error, Result};
use crate::matrix::{dot, norm2, DenseMatrix};
use crate::scalar::Real;

const MAX_SWEEPS: usize = 100;

/// Thin SVD `A = U diag(s) Vᵀ` with `k = min(rows, cols)` singular triplets.
#[derive(Debug, Clone)]
pub struct Svd<T> {
    pub u: DenseMatrix<T>,
    pub singular_values: Vec<T>,
    pub v: DenseMatrix<T>,
}

impl<T: Real> Svd<T> {
    pub fn new(a: &DenseMatrix<T>) -> Result<Self> {
        if a.rows() >= a.cols() {
            hestenes(a)
        } else {
            // A = (Aᵀ)ᵀ = (U S Vᵀ)ᵀ = V S Uᵀ
            let t = hestenes(&a.transpose())?;
            Ok(Self { u: t.v, singular_values: t.singular_values, v: t.u })
        }
    }

    /// Ratio of largest to smallest singular value (infinite when singular).
    pub fn condition_number(&self) -> T {
        let max = self.singular_values.iter().fold(T::zero(), |m, &s| m.max(s));
        let min = self.singular_values.iter().fold(T::infinity(), |m, &s| m.min(s));
        if min == T::zero() {
            T::infinity()
        } else {
            max / min
        }
    }

    /// Cut-off below which singular values are treated as zero.
    pub fn rank_threshold(&self) -> T {
        let max = self.singular_values.iter().fold(T::zero(), |m, &s| m.max(s));
        let dim = self.u.rows().max(self.v.rows());
        max * T::from_count(dim) * T::epsilon() * T::c(4.0)
    }

    pub fn rank(&self) -> usize {
        let thr = self.rank_threshold();
        self.singular_values.iter().filter(|&&s| s > thr).count()
    }

    /// Minimum-norm solution of `min ‖A x − b‖₂`.
    pub fn solve(&self, b: &[T]) -> Result<Vec<T>> {
        check_len(self.u.rows(), b.len())?;
        let thr = self.rank_threshold();
        let mut x = vec![T::zero(); self.v.rows()];
        for (i, &s) in self.singular_values.iter().enumerate() {
            if s <= thr {
                continue;
            }
            let coef = dot(self.u.column(i), b) / s;
            for (xj, &vj) in x.iter_mut().zip(self.v.column(i)) {
                *xj += coef * vj;
            }
        }
        Ok(x)
    }
}

/// One-sided Jacobi (Hestenes) for `rows >= cols`.
fn hestenes<T: Real>(a: &DenseMatrix<T>) -> Result<Svd<T>> {
    let m = a.rows();
    let n = a.cols();
    let mut w = a.clone();
    let mut v = DenseMatrix::<T>::identity(n);
    let eps = T::epsilon();

    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = dot(w.column(p), w.column(p));
                let beta = dot(w.column(q), w.column(q));
                let gamma = dot(w.column(p), w.column(q));
                if gamma == T::zero() || gamma.abs() <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (gamma + gamma);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                rotate(&mut w, p, q, c, s, m);
                rotate(&mut v, p, q, c, s, n);
            }
        }
        converged = !rotated;
    }
    if !converged {
        return Err(Error::NonConvergence(format!("Jacobi SVD did not converge in {MAX_SWEEPS} sweeps")));
    }

    let mut singular_values = Vec::with_capacity(n);
    let mut u = DenseMatrix::zeros(m, n);
    for j in 0..n {
        let s = norm2(w.column(j));
        singular_values.push(s);
        if s > T::zero() {
            for (dst, &src) in u.column_mut(j).iter_mut().zip(w.column(j)) {
                *dst = src / s;
            }
        }
    }
    Ok(Svd { u, singular_values, v })
}

fn rotate<T: Real>(m: &mut DenseMatrix<T>, p: usize, q: usize, c: T, s: T, len: usize) {
    for i in 0..len {
        let a = m[(i, p)];
        let b = m[(i, q)];
        m[(i, p)] = c * a - s * b;
        m[(i, q)] = s * a + c * b;
    }
}

/// Minimum-norm least-squares solution and its residual norm `‖A x − b‖₂`.
pub fn lstsq<T: Real>(a: &DenseMatrix<T>, b: &[T]) -> Result<(Vec<T>, T)> {
    check_len(a.rows(), b.len())?;
    if a.cols() == 0 {
        return Ok((Vec::new(), norm2(b)));
    }
    let x = Svd::new(a)?.solve(b)?;
    let r = residual(a, &x, b)?;
    Ok((x, norm2(&r)))
}

/// `b − A x`.
pub fn residual<T: Real>(a: &DenseMatrix<T>, x: &[T], b: &[T]) -> Result<Vec<T>> {
    let ax = a.matvec(x)?;
    Ok(b.iter().zip(ax).map(|(&bi, axi)| bi - axi).collect())
}

/// Solves the square system `A x = b` by Gaussian elimination with partial
/// pivoting. Returns `None` for a numerically singular matrix.
pub fn solve_square<T: Real>(a: &DenseMatrix<T>, b: &[T]) -> Option<Vec<T>> {
    let n = a.rows();
    if !a.is_square() || b.len() != n {
        return None;
    }
    let scale = a.max_abs().max(T::min_positive_value());
    let mut m = a.clone();
    let mut x = b.to_vec();
    for k in 0..n {
        let (piv, pval) = (k..n).map(|r| (r, m[(r, k)].abs())).fold((k, T::zero()), |acc, e| if e.1 > acc.1 { e } else { acc });
        if pval <= scale * T::epsilon() * T::from_count(n) * T::c(16.0) {
            return None;
        }
        if piv != k {
            for c in 0..n {
                let tmp = m[(k, c)];
                m[(k, c)] = m[(piv, c)];
                m[(piv, c)] = tmp;
            }
            x.swap(k, piv);
        }
        for r in k + 1..n {
            let f = m[(r, k)] / m[(k, k)];
            if f == T::zero() {
                continue;
            }
            for c in k..n {
                let v = m[(k, c)];
                m[(r, c)] -= f * v;
            }
            let xk = x[k];
            x[r] -= f * xk;
        }
    }
    for k in (0..n).rev() {
        let mut s = x[k];
        for c in k + 1..n {
            s -= m[(k, c)] * x[c];
        }
        x[k] = s / m[(k, k)];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reconstruct(svd: &Svd<f64>) -> DenseMatrix<f64> {
        let s = DenseMatrix::diag(&svd.singular_values);
        svd.u.matmul(&s).unwrap().matmul(&svd.v.transpose()).unwrap()
    }

    #[test]
    fn svd_reconstructs_tall_and_wide() {
        let a = DenseMatrix::from_fn(7, 4, |r, c| ((r * 3 + c * 5) % 7) as f64 - 2.5 + 0.1 * c as f64);
        let svd = Svd::new(&a).unwrap();
        assert!(reconstruct(&svd).max_abs_diff(&a) < 1e-12);
        let at = a.transpose();
        let svd = Svd::new(&at).unwrap();
        assert!(reconstruct(&svd).max_abs_diff(&at) < 1e-12);
    }

    #[test]
    fn lstsq_min_norm_on_rank_deficient() {
        // Two identical columns: the minimum-norm solution splits the weight.
        let a = DenseMatrix::<f64>::from_columns(&[vec![1.0, 1.0, 1.0], vec![1.0, 1.0, 1.0]]).unwrap();
        let (x, r) = lstsq(&a, &[2.0, 2.0, 2.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-12 && (x[1] - 1.0).abs() < 1e-12);
        assert!(r < 1e-12);
        assert_eq!(Svd::new(&a).unwrap().rank(), 1);
    }

    #[test]
    fn lstsq_overdetermined_line_fit() {
        // Fit y = a + b t to (0,1), (1,3), (2,5) exactly.
        let a = DenseMatrix::<f64>::from_rows(&[vec![1.0, 0.0], vec![1.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let (x, r) = lstsq(&a, &[1.0, 3.0, 5.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-12 && (x[1] - 2.0).abs() < 1e-12 && r < 1e-12);
    }

    #[test]
    fn gaussian_elimination_detects_singular() {
        let a = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert!(solve_square(&a, &[1.0, 2.0]).is_none());
        let a = DenseMatrix::<f64>::from_rows(&[vec![0.0, 2.0], vec![3.0, 1.0]]).unwrap();
        let x = solve_square(&a, &[4.0, 5.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-14 && (x[1] - 2.0).abs() < 1e-14);
    }
}

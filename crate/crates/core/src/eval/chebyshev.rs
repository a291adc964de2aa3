//! Chebyshev-basis PGFs on an operator with spectrum in `[0, λ_max]`, mapped
//! to `[−1, 1]` by `s = 2λ/λ_max − 1`.

use crate::error::{check_len, Error, Result};
use crate::operators::SparseOperator;
use crate::scalar::Real;
use crate::work::{NoCount, OpCounter};

fn check_lambda_max<T: Real>(lambda_max: T) -> Result<()> {
    if !(lambda_max > T::zero()) || !lambda_max.is_finite() {
        return Err(Error::InvalidArgument(format!("λ_max must be positive, got {lambda_max}")));
    }
    Ok(())
}

/// `y = Σ_k c_k T_k(Ẑ) x` with `Ẑ = (2/λ_max) Z − I`, by the three-term
/// recurrence `T_{k+1} = 2 Ẑ T_k − T_{k−1}`.
pub fn apply_pgf_chebyshev<T: Real>(z: &SparseOperator<T>, c: &[T], x: &[T], lambda_max: T) -> Result<Vec<T>> {
    apply_pgf_chebyshev_counted(z, c, x, lambda_max, &mut NoCount)
}

pub fn apply_pgf_chebyshev_counted<T: Real, C: OpCounter>(
    z: &SparseOperator<T>,
    c: &[T],
    x: &[T],
    lambda_max: T,
    counter: &mut C,
) -> Result<Vec<T>> {
    check_lambda_max(lambda_max)?;
    check_len(z.n(), x.len())?;
    let n = x.len();
    let Some(&c0) = c.first() else {
        return Ok(vec![T::zero(); n]);
    };
    let mut y: Vec<T> = x.iter().map(|&v| c0 * v).collect();
    if c.len() == 1 {
        return Ok(y);
    }
    let a = T::c(2.0) / lambda_max;
    let two = T::c(2.0);
    let mut prev = x.to_vec();
    let mut cur = vec![T::zero(); n];
    z.apply_unchecked(x, &mut cur, counter);
    for (ci, &xi) in cur.iter_mut().zip(x) {
        *ci = a * *ci - xi;
    }
    for (yi, &ti) in y.iter_mut().zip(&cur) {
        *yi += c[1] * ti;
    }
    counter.accumulations(n);
    let mut next = vec![T::zero(); n];
    for &ck in &c[2..] {
        z.apply_unchecked(&cur, &mut next, counter);
        for ((ni, &ti), &pi) in next.iter_mut().zip(&cur).zip(&prev) {
            *ni = two * (a * *ni - ti) - pi;
        }
        for (yi, &ti) in y.iter_mut().zip(&next) {
            *yi += ck * ti;
        }
        counter.accumulations(n);
        std::mem::swap(&mut prev, &mut cur);
        std::mem::swap(&mut cur, &mut next);
    }
    Ok(y)
}

/// `s · p` for `p` in the Chebyshev basis.
fn cheb_times_s<T: Real>(p: &[T]) -> Vec<T> {
    let half = T::c(0.5);
    let mut out = vec![T::zero(); p.len() + 1];
    for (k, &v) in p.iter().enumerate() {
        if k == 0 {
            out[1] += v;
        } else {
            out[k + 1] += half * v;
            out[k - 1] += half * v;
        }
    }
    out
}

/// Chebyshev coefficients of `Σ g_k λ^k` in the mapped variable.
pub fn monomial_to_chebyshev<T: Real>(g: &[T], lambda_max: T) -> Result<Vec<T>> {
    check_lambda_max(lambda_max)?;
    // λ = h (s + 1) with h = λ_max / 2; Horner in the Chebyshev basis
    let h = lambda_max * T::c(0.5);
    let mut acc: Vec<T> = Vec::new();
    for &gk in g.iter().rev() {
        let mut next = cheb_times_s(&acc);
        for (nv, &av) in next.iter_mut().zip(&acc) {
            *nv += av;
        }
        for v in next.iter_mut() {
            *v *= h;
        }
        next[0] += gk;
        acc = next;
    }
    Ok(acc)
}

/// Inverse of [`monomial_to_chebyshev`].
pub fn chebyshev_to_monomial<T: Real>(c: &[T], lambda_max: T) -> Result<Vec<T>> {
    check_lambda_max(lambda_max)?;
    // s = λ/h − 1 as a monomial in λ
    let inv_h = T::c(2.0) / lambda_max;
    let s_times = |p: &[T]| {
        let mut out = vec![T::zero(); p.len() + 1];
        for (k, &v) in p.iter().enumerate() {
            out[k + 1] += inv_h * v;
            out[k] -= v;
        }
        out
    };
    let mut g = vec![T::zero(); c.len()];
    let mut t_prev: Vec<T> = vec![T::one()];
    let mut t_cur: Vec<T> = s_times(&t_prev);
    for (k, &ck) in c.iter().enumerate() {
        let tk = if k == 0 { &t_prev } else { &t_cur };
        for (gi, &ti) in g.iter_mut().zip(tk) {
            *gi += ck * ti;
        }
        if k >= 1 {
            let mut next: Vec<T> = s_times(&t_cur).into_iter().map(|v| T::c(2.0) * v).collect();
            for (nv, &pv) in next.iter_mut().zip(&t_prev) {
                *nv -= pv;
            }
            t_prev = std::mem::replace(&mut t_cur, next);
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::apply_pgf;
    use crate::matrix::max_abs_diff;
    use crate::operators::build_dct2;

    fn laplacian(n: usize) -> SparseOperator<f64> {
        build_dct2::<f64>(n, 1).unwrap().shifted(-1.0, 2.0)
    }

    #[test]
    fn constant_and_linear_terms() {
        let l = laplacian(6);
        let x: Vec<f64> = (0..6).map(|i| i as f64 * 0.5 - 1.0).collect();
        let y = apply_pgf_chebyshev(&l, &[1.5], &x, 4.0).unwrap();
        assert_eq!(y, x.iter().map(|v| 1.5 * v).collect::<Vec<_>>());
        let y = apply_pgf_chebyshev(&l, &[0.0, 1.0], &x, 4.0).unwrap();
        let lx = l.apply(&x).unwrap();
        let expect: Vec<f64> = lx.iter().zip(&x).map(|(a, b)| 0.5 * a - b).collect();
        assert!(max_abs_diff(&y, &expect) < 1e-14);
    }

    #[test]
    fn basis_change_round_trip() {
        let g = [0.7, -1.2, 0.4, 0.05, -0.01];
        let c = monomial_to_chebyshev(&g, 3.9).unwrap();
        let back = chebyshev_to_monomial(&c, 3.9).unwrap();
        assert!(max_abs_diff(&g, &back) < 1e-12);
    }

    #[test]
    fn agrees_with_monomial_pgf() {
        let n = 32;
        let l = laplacian(n);
        let lmax = 2.0 - 2.0 * ((n - 1) as f64 * std::f64::consts::PI / n as f64).cos();
        let g = [1.0, -0.8, 0.3, -0.05, 0.002];
        let c = monomial_to_chebyshev(&g, lmax).unwrap();
        let x: Vec<f64> = (0..n).map(|i| ((i * 13) % 7) as f64 - 3.0).collect();
        let a = apply_pgf(&l, &g, &x).unwrap();
        let b = apply_pgf_chebyshev(&l, &c, &x, lmax).unwrap();
        assert!(max_abs_diff(&a, &b) < 1e-10);
    }

    #[test]
    fn rejects_bad_lambda_max() {
        let l = laplacian(4);
        assert!(apply_pgf_chebyshev(&l, &[1.0], &[0.0; 4], 0.0).is_err());
        assert!(apply_pgf_chebyshev(&l, &[1.0], &[0.0; 4], -1.0).is_err());
        assert!(monomial_to_chebyshev(&[1.0], f64::NAN).is_err());
    }
}

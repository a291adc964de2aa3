//! Vertex-domain filter evaluation: Horner-style PGFs, Chebyshev PGFs and
//! MPGFs built from sparse operator products.

mod chebyshev;
mod cost;

use std::collections::HashMap;

pub use chebyshev::{apply_pgf_chebyshev, apply_pgf_chebyshev_counted, chebyshev_to_monomial, monomial_to_chebyshev};
pub use cost::{
    adst_cost, block_transform_costs, flipped_adst_cost, identity_cost, prune, quadratic_cost_exact,
    quadratic_cost_proxy, BlockCosts, CostModel, CostWeights, LengthModel, PruneMask, Transform1d, UCost,
    SUPPORTED_LENGTHS,
};

use crate::design::FilterDesign;
use crate::dtt::Spectrum;
use crate::error::{check_len, Error, Result};
use crate::operators::SparseOperator;
use crate::scalar::Real;
use crate::work::{NoCount, OpCounter};

/// `y = Σ_k g_k Z^k x`, evaluated as `t ← g_K x`, `t ← Z t + g_{K−i} x`.
pub fn apply_pgf<T: Real>(z: &SparseOperator<T>, g: &[T], x: &[T]) -> Result<Vec<T>> {
    apply_pgf_counted(z, g, x, &mut NoCount)
}

/// [`apply_pgf`] with work accounting: exactly `K` sparse matvecs.
pub fn apply_pgf_counted<T: Real, C: OpCounter>(z: &SparseOperator<T>, g: &[T], x: &[T], counter: &mut C) -> Result<Vec<T>> {
    check_len(z.n(), x.len())?;
    let Some((&top, rest)) = g.split_last() else {
        return Ok(vec![T::zero(); x.len()]);
    };
    let mut t: Vec<T> = x.iter().map(|&v| top * v).collect();
    let mut u = vec![T::zero(); x.len()];
    for &gk in rest.iter().rev() {
        z.apply_unchecked(&t, &mut u, counter);
        for (ui, &xi) in u.iter_mut().zip(x) {
            *ui += gk * xi;
        }
        counter.accumulations(x.len());
        std::mem::swap(&mut t, &mut u);
    }
    Ok(t)
}

/// Applies an MPGF term by term. Operator products are built left to right
/// in canonical order and shared between terms with a common prefix.
pub fn apply_mpgf<T: Real>(design: &FilterDesign<T>, ops: &[SparseOperator<T>], x: &[T]) -> Result<Vec<T>> {
    apply_mpgf_counted(design, ops, x, &mut NoCount)
}

pub fn apply_mpgf_counted<T: Real, C: OpCounter>(
    design: &FilterDesign<T>,
    ops: &[SparseOperator<T>],
    x: &[T],
    counter: &mut C,
) -> Result<Vec<T>> {
    if design.operator_bound() > ops.len() {
        return Err(Error::InvalidArgument(format!(
            "design uses operator {} but only {} operators were given",
            design.operator_bound(),
            ops.len()
        )));
    }
    let n = x.len();
    for z in ops {
        check_len(n, z.n())?;
    }
    let mut y = vec![T::zero(); n];
    let mut products: HashMap<&[usize], Vec<T>> = HashMap::new();
    for term in design.terms() {
        for d in 1..=term.ops.len() {
            let key = &term.ops[..d];
            if products.contains_key(key) {
                continue;
            }
            let mut out = vec![T::zero(); n];
            let input = if d == 1 { x } else { &products[&term.ops[..d - 1]] };
            ops[term.ops[d - 1]].apply_unchecked(input, &mut out, counter);
            products.insert(key, out);
        }
        let v: &[T] = if term.ops.is_empty() { x } else { &products[term.ops.as_slice()] };
        for (yi, &vi) in y.iter_mut().zip(v) {
            *yi += term.coeff * vi;
        }
        counter.accumulations(n);
    }
    Ok(y)
}

/// `h_j = p(λ^(1)_j, .., λ^(M)_j)` for each frequency.
pub fn frequency_response<T: Real>(design: &FilterDesign<T>, spectra: &[Spectrum<T>]) -> Result<Vec<T>> {
    design.response(spectra)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::DesignMethod;
    use crate::dtt::{basis_matrix, DttKind};
    use crate::matrix::max_abs_diff;
    use crate::operators::{build_dct2, OperatorSet};
    use crate::work::WorkCounter;

    fn ramp(n: usize) -> Vec<f64> {
        (0..n).map(|i| ((i * 7 + 3) % 11) as f64 - 5.0).collect()
    }

    #[test]
    fn pgf_trivial_cases() {
        let z = build_dct2::<f64>(6, 2).unwrap();
        let x = ramp(6);
        assert_eq!(apply_pgf(&z, &[1.0], &x).unwrap(), x);
        assert_eq!(apply_pgf(&z, &[0.0, 1.0], &x).unwrap(), z.apply(&x).unwrap());
        assert_eq!(apply_pgf(&z, &[], &x).unwrap(), vec![0.0; 6]);
        assert!(apply_pgf(&z, &[1.0], &x[..5]).is_err());
    }

    #[test]
    fn pgf_work_is_k_matvecs() {
        let z = build_dct2::<f64>(16, 1).unwrap();
        let mut wc = WorkCounter::default();
        apply_pgf_counted(&z, &[1.0, 2.0, 3.0, 4.0, 5.0], &ramp(16), &mut wc).unwrap();
        assert_eq!(wc.multiply_adds, 4 * z.nnz());
        assert_eq!(wc.accumulations, 4 * 16);
    }

    #[test]
    fn pgf_matches_spectral_filter() {
        let n = 9;
        let z = build_dct2::<f64>(n, 1).unwrap();
        let lam = crate::dtt::operator_eigenvalues::<f64>(DttKind::Dct2, n, 1).unwrap();
        let g = [0.3, -1.0, 0.25, 0.5];
        let h: Vec<f64> = lam.values().iter().map(|&l| g.iter().rev().fold(0.0, |a, &c| a * l + c)).collect();
        let x = ramp(n);
        let dtt = crate::dtt::Dtt::<f64>::new(DttKind::Dct2, n).unwrap();
        let expect = dtt.filter(&h, &x).unwrap();
        assert!(max_abs_diff(&apply_pgf(&z, &g, &x).unwrap(), &expect) < 1e-12);
    }

    #[test]
    fn mpgf_identity_plus_first_operator() {
        let n = 8;
        let set = OperatorSet::<f64>::line(DttKind::Dct2, n).unwrap();
        let d = FilterDesign::new([(vec![], 1.0), (vec![0], 1.0)], DesignMethod::Manual);
        let h = frequency_response(&d, set.spectra()).unwrap();
        for (j, hj) in h.iter().enumerate() {
            let expect = 1.0 + 2.0 * (j as f64 * std::f64::consts::PI / n as f64).cos();
            assert!((hj - expect).abs() < 1e-12);
        }
        // applying to each basis vector reproduces the response
        let phi = basis_matrix::<f64>(DttKind::Dct2, n).unwrap();
        for j in 0..n {
            let y = apply_mpgf(&d, set.ops(), phi.column(j)).unwrap();
            let expect: Vec<f64> = phi.column(j).iter().map(|v| v * h[j]).collect();
            assert!(max_abs_diff(&y, &expect) < 1e-12);
        }
        let g0 = FilterDesign::new([(vec![], 2.5)], DesignMethod::Manual);
        assert_eq!(apply_mpgf(&g0, set.ops(), &ramp(n)).unwrap(), ramp(n).iter().map(|v| 2.5 * v).collect::<Vec<_>>());
    }

    #[test]
    fn mpgf_order_irrelevant() {
        let set = OperatorSet::<f64>::line(DttKind::Dst4, 7).unwrap();
        let x = ramp(7);
        let a = set.ops()[1].apply(&set.ops()[0].apply(&x).unwrap()).unwrap();
        let b = set.ops()[0].apply(&set.ops()[1].apply(&x).unwrap()).unwrap();
        assert!(max_abs_diff(&a, &b) < 1e-10);
        let d = FilterDesign::new([(vec![1, 0], 1.0)], DesignMethod::Manual);
        assert!(max_abs_diff(&apply_mpgf(&d, set.ops(), &x).unwrap(), &a) < 1e-10);
    }

    #[test]
    fn mpgf_degree_one_work_bound() {
        let n = 16;
        let set = OperatorSet::<f64>::line(DttKind::Dct2, n).unwrap();
        let d = FilterDesign::new([(vec![], 0.5), (vec![2], 1.0), (vec![7], -0.25), (vec![11], 2.0)], DesignMethod::Manual);
        let mut wc = WorkCounter::default();
        apply_mpgf_counted(&d, set.ops(), &ramp(n), &mut wc).unwrap();
        let r = d.len();
        assert!(wc.multiply_adds <= r * 2 * n && wc.accumulations <= r * n);
    }

    #[test]
    fn mpgf_shares_prefixes() {
        let set = OperatorSet::<f64>::line(DttKind::Dct2, 8).unwrap();
        let d = FilterDesign::new([(vec![0], 1.0), (vec![0, 0], 1.0), (vec![0, 3], 1.0)], DesignMethod::Manual);
        let mut wc = WorkCounter::default();
        apply_mpgf_counted(&d, set.ops(), &ramp(8), &mut wc).unwrap();
        let nnz = |i: usize| set.ops()[i].nnz();
        assert_eq!(wc.multiply_adds, 2 * nnz(0) + nnz(3));
    }

    #[test]
    fn mpgf_rejects_missing_operator() {
        let set = OperatorSet::<f64>::line(DttKind::Dct2, 4).unwrap();
        let d = FilterDesign::new([(vec![5], 1.0)], DesignMethod::Manual);
        assert!(apply_mpgf(&d, set.ops(), &ramp(4)).is_err());
    }
}

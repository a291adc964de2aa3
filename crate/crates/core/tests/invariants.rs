use proptest::prelude::*;

use dtt_filters::design::{design_ls, DesignMethod, DesignProblem, FilterDesign};
use dtt_filters::dtt::{basis_matrix, operator_eigenvalues, Dtt, DttKind};
use dtt_filters::eval::{apply_mpgf, apply_pgf, prune, BlockCosts, Transform1d};
use dtt_filters::operators::{build_operator, commutator_norm, eigen_residual, OperatorSet};

fn kind() -> impl Strategy<Value = DttKind> {
    (0..16usize).prop_map(|i| DttKind::ALL[i])
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn operator_diagonalized_by_basis(kind in kind(), n in 2usize..24, ell_seed in 0usize..1000) {
        let ell = 1 + ell_seed % (n - 1);
        let z = build_operator::<f64>(kind, n, ell).unwrap();
        let phi = basis_matrix::<f64>(kind, n).unwrap();
        let lam = operator_eigenvalues::<f64>(kind, n, ell).unwrap();
        prop_assert!(z.nnz() <= 2 * n);
        prop_assert!(z.is_symmetric());
        prop_assert!(eigen_residual(&z, &phi, lam.values()).unwrap() < 1e-9);
    }

    #[test]
    fn operators_commute(kind in kind(), n in 3usize..20, a in 0usize..1000, b in 0usize..1000) {
        let za = build_operator::<f64>(kind, n, 1 + a % (n - 1)).unwrap();
        let zb = build_operator::<f64>(kind, n, 1 + b % (n - 1)).unwrap();
        prop_assert!(commutator_norm(&za, &zb).unwrap() < 1e-9);
    }

    #[test]
    fn pgf_vertex_matches_spectral(
        kind in kind(),
        n in 3usize..16,
        g in prop::collection::vec(-2.0f64..2.0, 1..5),
        x in prop::collection::vec(-1.0f64..1.0, 16),
    ) {
        let x = &x[..n];
        let z = build_operator::<f64>(kind, n, 1).unwrap();
        let lam = operator_eigenvalues::<f64>(kind, n, 1).unwrap();
        let h: Vec<f64> = lam.values().iter().map(|&l| g.iter().rev().fold(0.0, |acc, &c| acc * l + c)).collect();
        let direct = Dtt::<f64>::new(kind, n).unwrap().filter(&h, x).unwrap();
        let horner = apply_pgf(&z, &g, x).unwrap();
        prop_assert!(max_diff(&direct, &horner) < 1e-9);
    }

    #[test]
    fn mpgf_vertex_matches_spectral(
        kind in kind(),
        n in 4usize..12,
        raw in prop::collection::vec((0usize..100, 0usize..100, -1.0f64..1.0), 1..6),
        x in prop::collection::vec(-1.0f64..1.0, 12),
    ) {
        let x = &x[..n];
        let set = OperatorSet::<f64>::line(kind, n).unwrap();
        let m = set.len();
        let mut terms: Vec<(Vec<usize>, f64)> = vec![(vec![], 0.5)];
        for (a, b, c) in raw {
            let mut t = vec![a % m, b % m];
            t.sort_unstable();
            if !terms.iter().any(|(u, _)| *u == t) {
                terms.push((t, c));
            }
        }
        let design = FilterDesign::new(terms, DesignMethod::Manual);
        let h = design.response(set.spectra()).unwrap();
        let direct = Dtt::<f64>::new(kind, n).unwrap().filter(&h, x).unwrap();
        let vertex = apply_mpgf(&design, set.ops(), x).unwrap();
        prop_assert!(max_diff(&direct, &vertex) < 1e-9);
    }

    #[test]
    fn ls_is_locally_optimal(
        n in 6usize..20,
        k in 1usize..4,
        target in prop::collection::vec(-1.0f64..1.0, 20),
        weights in prop::collection::vec(0.1f64..2.0, 20),
        dir in prop::collection::vec(-1.0f64..1.0, 4),
        step in 1e-3f64..1e-1,
    ) {
        let lam = operator_eigenvalues::<f64>(DttKind::Dct2, n, 1).unwrap();
        let problem = DesignProblem::new(target[..n].to_vec(), weights[..n].to_vec(), k, vec![lam]).unwrap();
        let best = design_ls(&problem).unwrap();
        let r0 = problem.weighted_residual(&best).unwrap();
        let (_, mut g) = best.pgf_coefficients().unwrap();
        g.resize(k + 1, 0.0);
        for (c, d) in g.iter_mut().zip(&dir) {
            *c += step * d;
        }
        let r1 = problem.weighted_residual(&FilterDesign::pgf(&g)).unwrap();
        prop_assert!(r0 <= r1 + 1e-12);
    }

    #[test]
    fn larger_thresholds_keep_more(
        col in prop::array::uniform4(0.0f64..10.0),
        row in prop::array::uniform4(0.0f64..10.0),
        t1 in 0.0f64..1.0,
        t2 in 0.0f64..1.0,
        d1 in 0.0f64..0.5,
        d2 in 0.0f64..0.5,
    ) {
        let costs = BlockCosts { col, row };
        let tight = prune(&costs, t1, t2);
        let loose = prune(&costs, t1 + d1, t2 + d2);
        for c in Transform1d::ALL {
            for r in Transform1d::ALL {
                prop_assert!(!tight.is_kept(c, r) || loose.is_kept(c, r));
            }
        }
        prop_assert_eq!(prune(&costs, f64::INFINITY, f64::INFINITY).kept(), 16);
    }
}

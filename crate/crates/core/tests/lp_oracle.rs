use dtt_filters::linalg::solve_square;
use dtt_filters::lp::{solve, LpProblem, LpStatus};
use dtt_filters::matrix::DenseMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

fn random_bounded_lp(rng: &mut ChaCha8Rng, n: usize, m: usize) -> LpProblem<f64> {
    let a = DenseMatrix::from_fn(m, n, |_, _| rng.sample(StandardNormal));
    let b: Vec<f64> = (0..m).map(|_| rng.random_range(0.5..1.5)).collect();
    // c = −Aᵀy with y ≥ 0 keeps cᵀx ≥ −yᵀb on the feasible set
    let y: Vec<f64> = (0..m).map(|_| rng.random_range(0.0..1.0)).collect();
    let c = a.tr_matvec(&y).unwrap().into_iter().map(|v| -v).collect();
    LpProblem::new(c, a, b).unwrap()
}

fn for_each_subset(m: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + m - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Best objective over all basic feasible solutions.
fn vertex_enumeration(p: &LpProblem<f64>) -> f64 {
    let (m, n) = (p.num_constraints(), p.num_vars());
    let mut best = f64::INFINITY;
    for_each_subset(m, n, &mut |active| {
        let sub = DenseMatrix::from_fn(n, n, |r, c| p.a[(active[r], c)]);
        let rhs: Vec<f64> = active.iter().map(|&i| p.b[i]).collect();
        if let Some(x) = solve_square(&sub, &rhs) {
            if p.max_violation(&x).unwrap() <= 1e-9 {
                best = best.min(p.objective(&x));
            }
        }
    });
    best
}

#[test]
fn matches_vertex_enumeration_on_random_programs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..4 {
        let p = random_bounded_lp(&mut rng, 10, 20);
        let s = solve(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        let oracle = vertex_enumeration(&p);
        assert!((s.objective - oracle).abs() < 1e-8, "simplex {} vs oracle {}", s.objective, oracle);
        assert!(p.max_violation(&s.x).unwrap() < 1e-8);
        assert!(s.reduced_costs.iter().all(|&r| r >= -1e-9));
    }
}

#[test]
fn random_programs_with_negative_rhs() {
    // shift the origin out of the feasible set so phase one is exercised
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let p0 = random_bounded_lp(&mut rng, 6, 14);
        let shift: Vec<f64> = (0..6).map(|_| rng.random_range(-3.0..3.0)).collect();
        let a_shift = p0.a.matvec(&shift).unwrap();
        let b: Vec<f64> = p0.b.iter().zip(&a_shift).map(|(b, s)| b + s).collect();
        let p = LpProblem::new(p0.c.clone(), p0.a.clone(), b).unwrap();
        let s0 = solve(&p0).unwrap();
        let s = solve(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        let expect = s0.objective + p.objective(&shift);
        assert!((s.objective - expect).abs() < 1e-8);
        assert!(p.max_violation(&s.x).unwrap() < 1e-8);
    }
}

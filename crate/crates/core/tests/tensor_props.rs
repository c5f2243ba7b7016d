use blob_workbench::tensor::{
    c, determinant, eigenvalues, eq_residual, invert, kron, leg_permute, permutation, CMatrix, SiteLayout, C64,
};
use proptest::prelude::*;

fn entry() -> impl Strategy<Value = C64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, b)| c(a, b))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = CMatrix> {
    prop::collection::vec(entry(), rows * cols).prop_map(move |v| CMatrix::from_vec(rows, cols, v).unwrap())
}

/// Entries on a coarse dyadic grid, so every product is exact in floating point.
fn dyadic(rows: usize, cols: usize) -> impl Strategy<Value = CMatrix> {
    prop::collection::vec((-16i32..16, -16i32..16), rows * cols).prop_map(move |v| {
        let data = v.into_iter().map(|(a, b)| c(a as f64 / 4.0, b as f64 / 4.0)).collect();
        CMatrix::from_vec(rows, cols, data).unwrap()
    })
}

fn square(max: usize) -> impl Strategy<Value = CMatrix> {
    (1..=max).prop_flat_map(|n| matrix(n, n))
}

fn permutation_of(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kron_is_associative(a in dyadic(2, 3), b in dyadic(3, 2), d in dyadic(2, 2)) {
        prop_assert_eq!(kron(&kron(&a, &b), &d), kron(&a, &kron(&b, &d)));
    }

    #[test]
    fn kron_is_associative_to_rounding(a in matrix(2, 3), b in matrix(3, 2), d in matrix(2, 2)) {
        let left = kron(&kron(&a, &b), &d);
        let right = kron(&a, &kron(&b, &d));
        prop_assert!(eq_residual(&left, &right).unwrap() < 4.0 * f64::EPSILON);
    }

    #[test]
    fn kron_mixed_product(a in matrix(2, 3), b in matrix(2, 2), x in matrix(3, 2), y in matrix(2, 3)) {
        let lhs = kron(&a, &b).matmul(&kron(&x, &y));
        let rhs = kron(&a.matmul(&x), &b.matmul(&y));
        prop_assert!(eq_residual(&lhs, &rhs).unwrap() < 1e-14);
    }

    #[test]
    fn swap_exchanges_factors(d in 2usize..=4, seed in any::<u64>()) {
        let p = permutation(d);
        let mut s = seed;
        let mut next = || { s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); ((s >> 33) as f64 / 2f64.powi(31)) - 1.0 };
        let a = CMatrix::from_fn(d, d, |_, _| c(next(), next()));
        let b = CMatrix::from_fn(d, d, |_, _| c(next(), next()));
        prop_assert_eq!(p.matmul(&p), CMatrix::identity(d * d));
        prop_assert_eq!(p.matmul(&kron(&a, &b)).matmul(&p), kron(&b, &a));
    }

    #[test]
    fn leg_permute_composes(op in matrix(8, 8), p1 in permutation_of(3), p2 in permutation_of(3)) {
        let layout = SiteLayout::new(3, 2);
        let stepwise = leg_permute(&leg_permute(&op, &p1, &layout).unwrap(), &p2, &layout).unwrap();
        let composed: Vec<usize> = p2.iter().map(|&k| p1[k - 1]).collect();
        let direct = leg_permute(&op, &composed, &layout).unwrap();
        prop_assert_eq!(stepwise, direct);
    }

    #[test]
    fn leg_permute_matches_kron_order(a in dyadic(2, 2), b in dyadic(2, 2), d in dyadic(2, 2)) {
        let layout = SiteLayout::new(3, 2);
        let moved = leg_permute(&kron(&kron(&a, &b), &d), &[3, 1, 2], &layout).unwrap();
        prop_assert_eq!(moved, kron(&kron(&d, &a), &b));
    }

    #[test]
    fn inverse_is_two_sided(m in square(8)) {
        // diagonal shift keeps the draw comfortably invertible
        let n = m.rows();
        let a = m.add_identity(c(3.0 * n as f64, 0.0));
        let inv = invert(&a).unwrap();
        let id = CMatrix::identity(n);
        let tol = 1e-10 * n as f64;
        prop_assert!((&a.matmul(&inv) - &id).frobenius_norm() < tol);
        prop_assert!((&inv.matmul(&a) - &id).frobenius_norm() < tol);
    }

    #[test]
    fn eigenvalues_sum_and_product(m in square(10)) {
        let ev = eigenvalues(&m).unwrap();
        prop_assert_eq!(ev.len(), m.rows());
        let sum: C64 = ev.iter().sum();
        let tr = m.trace();
        prop_assert!((sum - tr).norm() <= 1e-8 * tr.norm().max(1.0), "{sum} vs {tr}");
        let prod: C64 = ev.iter().product();
        let det = determinant(&m).unwrap();
        prop_assert!((prod - det).norm() <= 1e-6 * det.norm().max(1.0), "{prod} vs {det}");
    }

    #[test]
    fn results_stay_finite(a in square(6), b in square(6)) {
        if a.rows() == b.rows() {
            prop_assert!(a.matmul(&b).is_finite());
        }
        prop_assert!(kron(&a, &b).is_finite());
    }
}

#[test]
fn comm_residual_of_pauli_pair() {
    let x = CMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]);
    let z = CMatrix::from_real_rows(&[[1.0, 0.0], [0.0, -1.0]]);
    // [σˣ, σᶻ] = −2iσʸ has norm 2√2 against ‖σˣσᶻ‖ = √2
    let r = blob_workbench::tensor::comm_residual(&x, &z).unwrap();
    assert!((r - 2.0).abs() < 1e-15, "{r}");
}

use std::f64::consts::PI;

use blob_workbench::algebra::qgroup::{check_factorization, check_tower_relations};
use blob_workbench::algebra::reps::check_theta_transcription;
use blob_workbench::algebra::{check_blob, make_params, qgroup_rep, tower, AlgebraParams, Boundary, LocalRep, Model, QGroupName};
use blob_workbench::baxterize::{braid_residuals, check_limits, re_residual, ybe_residual, LaxFactory, Sign};
use blob_workbench::check::{TOL_CHAINED, TOL_SINGLE};
use blob_workbench::report::{emit_json_lines, parse_json_lines, CheckReport};
use blob_workbench::tensor::{c, comm_residual, kron_all, C64};
use blob_workbench::transfer::{relations_for, DoubleRow};
use proptest::prelude::*;

const PAIRS: [(Model, Boundary); 7] = [
    (Model::Xxz, Boundary::Trivial),
    (Model::Xxz, Boundary::XxzM),
    (Model::Twin, Boundary::Trivial),
    (Model::Twin, Boundary::I),
    (Model::Twin, Boundary::Ii),
    (Model::Twin, Boundary::Plus),
    (Model::Twin, Boundary::Iii),
];

fn grid_point() -> impl Strategy<Value = (f64, C64)> {
    (
        prop::sample::select(vec![0.7, 1.1, PI / 3.0]),
        prop::sample::select(vec![c(2.0, 0.0), C64::from_polar(1.3, 0.4)]),
    )
}

fn zeta() -> impl Strategy<Value = C64> {
    (-1.0..1.0f64, -0.5..0.5f64).prop_map(|(a, b)| c(a, b))
}

/// Points in the disk `|λ| ≤ 2`.
fn lambda() -> impl Strategy<Value = C64> {
    (0.0..1.0f64, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| C64::from_polar(2.0 * r.sqrt(), t))
}

fn clear(mu: f64, zs: &[C64]) -> bool {
    let i = c(0.0, 1.0);
    zs.iter().flat_map(|&z| [z, z + i, z - i]).all(|z| (mu * z).sinh().norm() >= 1e-3)
}

fn params(mu: f64, q: C64, z: C64, m: Model, b: Boundary) -> AlgebraParams {
    make_params(mu, q, z, m, b).unwrap()
}

fn factory(p: &AlgebraParams) -> LaxFactory {
    LaxFactory::new(&LocalRep::new(p, 2).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn yang_baxter_holds((mu, q) in grid_point(), l1 in lambda(), l2 in lambda()) {
        prop_assume!(clear(mu, &[l1, l2, l1 - l2]));
        for m in [Model::Xxz, Model::Twin] {
            let b = Boundary::Trivial.element(m);
            let f = factory(&params(mu, q, c(0.3, 0.0), m, b));
            prop_assert!(ybe_residual(&f, l1, l2) < TOL_SINGLE);
        }
    }

    #[test]
    fn reflection_holds_for_every_boundary((mu, q) in grid_point(), z in zeta(), l1 in lambda(), l2 in lambda()) {
        prop_assume!(clear(mu, &[l1, l2, l1 - l2, l1 + l2]));
        for (m, b) in PAIRS {
            let f = factory(&params(mu, q, z, m, b));
            let r = re_residual(&f, l1, l2);
            prop_assert!(r < TOL_SINGLE, "{m} {b}: {r}");
        }
    }

    #[test]
    fn blob_relations_hold((mu, q) in grid_point(), n in 2usize..=3) {
        for (m, b) in PAIRS {
            let rep = LocalRep::new(&params(mu, q, c(0.3, 0.0), m, b), n).unwrap();
            for f in check_blob(&rep) {
                prop_assert!(f.passed(), "{f:?}");
            }
        }
    }

    #[test]
    fn transfer_matrices_commute((mu, q) in grid_point(), z in zeta(), l1 in lambda(), l2 in lambda()) {
        prop_assume!(clear(mu, &[l1, l2, 2.0 * l1, 2.0 * l2]));
        for (m, b, n) in [(Model::Twin, Boundary::Plus, 2), (Model::Twin, Boundary::Iii, 2), (Model::Xxz, Boundary::XxzM, 3)] {
            let dr = DoubleRow::new(&params(mu, q, z, m, b), n).unwrap();
            let r = comm_residual(&dr.transfer_t(l1).unwrap(), &dr.transfer_t(l2).unwrap()).unwrap();
            prop_assert!(r < TOL_CHAINED, "{m} {b}: {r}");
        }
    }
}

#[test]
fn braid_and_constant_reflection_at_grid_points() {
    for mu in [0.7, 1.1, PI / 3.0] {
        for q in [c(2.0, 0.0), C64::from_polar(1.3, 0.4)] {
            for (m, b) in PAIRS {
                let f = factory(&params(mu, q, c(0.3, 0.0), m, b));
                for s in Sign::BOTH {
                    let (plain, hatted) = braid_residuals(&f, s);
                    assert!(plain < TOL_SINGLE && hatted < TOL_SINGLE, "{m} {b} {s:?}");
                }
                for x in check_limits(&f) {
                    assert!(x.passed(), "{x:?}");
                }
            }
        }
    }
}

#[test]
fn towers_satisfy_deformed_relations_up_to_four_sites() {
    let p = params(0.7, c(2.0, 0.0), c(0.3, 0.0), Model::Twin, Boundary::I);
    for name in [QGroupName::Rho, QGroupName::Sigma1, QGroupName::Sigma2, QGroupName::Rho1, QGroupName::Rho2] {
        let rep = qgroup_rep(name, &p);
        let max_n = if rep.e.rows() == 2 { 4 } else { 3 };
        for n in 1..=max_n {
            let t = tower(&rep, n).unwrap();
            for f in check_tower_relations(&t).unwrap() {
                assert!(f.passed(), "{f:?}");
            }
            let hs: Vec<_> = std::iter::repeat_n(&rep.h, n).collect();
            assert_eq!(t.h_n.as_slice(), kron_all(&hs).as_slice());
        }
    }
}

#[test]
fn factorization_and_transcription() {
    for mu in [0.7, 1.1, PI / 3.0] {
        let p = params(mu, c(2.0, 0.0), c(0.3, 0.0), Model::Twin, Boundary::Iii);
        for f in check_factorization(&p) {
            assert!(f.passed(), "{f:?}");
        }
        assert!(check_theta_transcription(&p).passed());
    }
}

#[test]
fn exchange_relations_at_three_sites() {
    let l = c(0.37, 0.21);
    for (m, b) in PAIRS {
        let p = params(0.7, C64::from_polar(1.3, 0.4), c(0.3, 0.0), m, b);
        for rel in relations_for(&p, 3, l).unwrap() {
            assert!(rel.residual() < TOL_CHAINED, "{m} {b} {}: {}", rel.id, rel.residual());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reports_round_trip(
        id in "[a-z.]{1,20}",
        digest in "[0-9a-f]{16}",
        residual in prop_oneof![any::<f64>().prop_filter("finite", |x| x.is_finite()), Just(f64::INFINITY)],
        tolerance in 1e-20..1.0f64,
        passed in any::<bool>(),
        elapsed in 0.0..1e6f64,
        notes in ".{0,30}",
    ) {
        let r = vec![CheckReport { check_id: id, params_digest: digest, residual, tolerance, passed, elapsed_ms: elapsed, notes }];
        prop_assert_eq!(parse_json_lines(&emit_json_lines(&r)).unwrap(), r);
    }
}

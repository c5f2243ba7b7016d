//! Intertwining of the XXZ boundary matrix by the dressed reflection operator
//! `𝕂(λ′ ∓ λ) = R(λ′ ∓ λ)(K(λ′) ⊗ I)R̂(λ′ ± λ)`.

use crate::algebra::make_params;
use crate::baxterize::LaxFactory;
use crate::check::{resid, Finding, NEGATIVE_THRESHOLD, TOL_SINGLE};
use crate::tensor::{kron, CMatrix, TensorError, C64};

/// Largest residual of `𝕂_ab(λ′−λ)K(λ) = K(λ)𝕂_ab(λ′+λ)` over the auxiliary
/// indices `a, b`, with `K_aux` and `K_quantum` supplied separately so the
/// trivial case `K = I` can be exercised.
pub fn intertwiner_residual_with(
    f: &LaxFactory,
    k_aux: &CMatrix,
    k_quantum: &CMatrix,
    lp: C64,
    l: C64,
) -> Result<f64, TensorError> {
    let d = f.d;
    let ka = kron(k_aux, &CMatrix::identity(d));
    let minus = f.r(lp - l).matmul(&ka).matmul(&f.r_hat(lp + l)?);
    let plus = f.r(lp + l).matmul(&ka).matmul(&f.r_hat(lp - l)?);
    let mut worst: f64 = 0.0;
    for a in 0..d {
        for b in 0..d {
            let x = minus.block(a, b, d);
            let y = plus.block(a, b, d);
            worst = worst.max(resid(&x.matmul(k_quantum), &k_quantum.matmul(&y)));
        }
    }
    Ok(worst)
}

pub fn intertwiner_residual(f: &LaxFactory, lp: C64, l: C64) -> Result<f64, TensorError> {
    intertwiner_residual_with(f, &f.k(lp), &f.k(l), lp, l)
}

pub fn check_reflection_intertwiner(f: &LaxFactory, pairs: &[(C64, C64)]) -> Result<Vec<Finding>, TensorError> {
    let tag = format!("transfer.intertwiner.{}.{}", f.params.model, f.params.boundary);
    let mut main: f64 = 0.0;
    let mut ident: f64 = 0.0;
    let mut control = f64::INFINITY;
    let id = CMatrix::identity(f.d);
    // Quantum-space K with the wrong spectral argument. For K = I the argument
    // is invisible, so the control pairs I with the boundary element's K.
    let element = f.is_trivial().then(|| {
        let p = f.params;
        let q = make_params(p.mu, p.q_rep, p.zeta, p.model, p.boundary.element(p.model)).expect("valid parameters stay valid");
        LaxFactory::from_local(&q, f.u.clone(), f.e.clone())
    });
    for &(lp, l) in pairs {
        main = main.max(intertwiner_residual(f, lp, l)?);
        ident = ident.max(intertwiner_residual_with(f, &id, &id, lp, l)?);
        let wrong = match &element {
            Some(g) => g.k(l),
            None => f.k(l + 0.5),
        };
        control = control.min(intertwiner_residual_with(f, &f.k(lp), &wrong, lp, l)?);
    }
    Ok(vec![
        Finding::holds(format!("{tag}.bcomm"), main, TOL_SINGLE),
        Finding::holds(format!("{tag}.identity-K"), ident, TOL_SINGLE),
        Finding::violated(format!("{tag}.negative.shifted-argument"), control, NEGATIVE_THRESHOLD),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_params, Boundary, LocalRep, Model};
    use crate::tensor::c;

    fn xxz() -> LaxFactory {
        let p = make_params(0.7, c(2.0, 0.0), c(0.3, 0.0), Model::Xxz, Boundary::XxzM).unwrap();
        LaxFactory::new(&LocalRep::new(&p, 2).unwrap())
    }

    #[test]
    fn holds_at_reference_point() {
        assert!(intertwiner_residual(&xxz(), c(0.9, 0.0), c(0.3, 0.0)).unwrap() < 1e-10);
    }

    #[test]
    fn zero_argument_reduces_to_scalar_k() {
        let f = xxz();
        let k0 = f.k(c(0.0, 0.0));
        assert!(resid(&k0, &CMatrix::identity(2).scale(f.x(c(0.0, 0.0)))) < 1e-15);
        assert!(intertwiner_residual(&f, c(0.9, 0.0), c(0.0, 0.0)).unwrap() < 1e-12);
    }

    #[test]
    fn suite_with_control() {
        let pairs = [(c(0.9, 0.0), c(0.3, 0.0)), (c(0.2, 0.3), c(-0.4, 0.1))];
        for x in check_reflection_intertwiner(&xxz(), &pairs).unwrap() {
            assert!(x.passed(), "{x:?}");
        }
    }
}

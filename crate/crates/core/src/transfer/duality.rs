//! The `λ → ±∞` limits of the double-row operator as boundary charges.

use crate::algebra::{qgroup_rep, tower, AlgebraError, Boundary, Model, QGroupName};
use crate::baxterize::Sign;
use crate::check::{comm, worst, Finding, NEGATIVE_THRESHOLD, TOL_CHAINED};
use crate::tensor::{invert, numerical_rank, CMatrix, C64};

use super::double_row::{Blocks, DoubleRow};

/// `[𝒯^±_{ab}, t(λ)]`, `[𝒯^±_{ab}, π(U_l)]` and `[𝒯^±_{ab}, π(e)]`.
pub fn check_duality(dr: &DoubleRow, lambdas: &[C64]) -> Result<Vec<Finding>, AlgebraError> {
    let p = *dr.params();
    let n = dr.num_sites();
    let tag = format!("duality.{}.{}.N{n}", p.model, p.boundary);
    let ts = lambdas.iter().map(|&l| dr.transfer_t(l)).collect::<Result<Vec<_>, _>>()?;
    let mut out = Vec::new();
    for s in Sign::BOTH {
        let blocks = dr.asymptotic_blocks(s);
        let vs = |ops: &[CMatrix]| worst(blocks.iter().flat_map(|(_, b)| ops.iter().map(move |x| comm(b, x))));
        let sl = s.label();
        out.push(Finding::holds(format!("{tag}.{sl}.commute-t"), vs(&ts), TOL_CHAINED));
        out.push(Finding::holds(format!("{tag}.{sl}.commute-U"), vs(&dr.rep.u_gens), TOL_CHAINED));
        if p.boundary != Boundary::Trivial {
            out.push(Finding::holds(format!("{tag}.{sl}.commute-e"), vs(std::slice::from_ref(&dr.rep.e_gen)), TOL_CHAINED));
        }
    }
    // With a nontrivial boundary a generic constant K^± spoils commutation with
    // t. With a trivial boundary any constant K^± still commutes (the entries
    // are then built from symmetry generators), so the control pairs the
    // unperturbed blocks with the transfer matrix of a blob boundary instead.
    let (label, r) = if p.boundary == Boundary::Trivial {
        let with_e = crate::algebra::make_params(p.mu, p.q_rep, p.zeta, p.model, p.boundary.element(p.model))?;
        let other = DoubleRow::new(&with_e, n)?;
        let ts2 = lambdas.iter().map(|&l| other.transfer_t(l)).collect::<Result<Vec<_>, _>>()?;
        let blocks = dr.asymptotic_blocks(Sign::Plus);
        ("boundary-t", worst(blocks.iter().flat_map(|(_, b)| ts2.iter().map(move |t| comm(b, t)))))
    } else {
        let shifted = perturbed_blocks(dr, Sign::Plus);
        ("generic-K-limit", worst(shifted.iter().flat_map(|(_, b)| ts.iter().map(move |t| comm(b, t)))))
    };
    out.push(Finding::violated(format!("{tag}.negative.{label}"), r, NEGATIVE_THRESHOLD));
    Ok(out)
}

fn perturbed_blocks(dr: &DoubleRow, s: Sign) -> Blocks {
    let d = dr.d();
    let k = &dr.lax.k_limit(s) + &CMatrix::from_fn(d, d, |i, j| C64::new(0.3 + 0.1 * i as f64, 0.2 * j as f64));
    let full = dr.dressed(&dr.lax.r_limit(s), &k, &dr.lax.r_hat_limit(s));
    Blocks::split(dr.params().model, &full)
}

/// Ranks of the span of the `𝒯^±` blocks, of the familiar tower charges, and
/// of their union, for the XXZ chain with a trivial boundary. Recorded, never
/// asserted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GramRanks {
    pub blocks: usize,
    pub charges: usize,
    pub union: usize,
}

pub fn gram_rank_diagnostic(dr: &DoubleRow) -> Result<Option<GramRanks>, AlgebraError> {
    let p = dr.params();
    if p.model != Model::Xxz || p.boundary != Boundary::Trivial {
        return Ok(None);
    }
    let t = tower(&qgroup_rep(QGroupName::Rho, p), dr.num_sites())?;
    let h2 = t.h_n.matmul(&t.h_n);
    let charges = vec![t.e_n.matmul(&t.h_n), t.f_n.matmul(&t.h_n), h2.clone(), invert(&h2)?];
    let blocks: Vec<CMatrix> = Sign::BOTH
        .iter()
        .flat_map(|&s| dr.asymptotic_blocks(s).entries.into_iter().flatten())
        .collect();
    let rank = |ops: &[CMatrix]| {
        let g = CMatrix::from_fn(ops.len(), ops.len(), |i, j| ops[i].inner(&ops[j]));
        numerical_rank(&g, 1e-10)
    };
    let union: Vec<CMatrix> = blocks.iter().chain(&charges).cloned().collect();
    Ok(Some(GramRanks {
        blocks: rank(&blocks),
        charges: rank(&charges),
        union: rank(&union),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::make_params;
    use crate::tensor::c;

    #[test]
    fn blocks_are_central() {
        let ls = [c(0.3, 0.2), c(-0.4, 0.5)];
        for (m, b, n) in [
            (Model::Twin, Boundary::Trivial, 2),
            (Model::Twin, Boundary::I, 2),
            (Model::Twin, Boundary::Iii, 2),
            (Model::Xxz, Boundary::Trivial, 3),
            (Model::Xxz, Boundary::XxzM, 3),
        ] {
            let p = make_params(0.7, c(2.0, 0.0), c(0.3, 0.0), m, b).unwrap();
            let dr = DoubleRow::new(&p, n).unwrap();
            for x in check_duality(&dr, &ls).unwrap() {
                assert!(x.passed(), "{x:?}");
            }
        }
    }

    #[test]
    fn gram_ranks_are_consistent() {
        let p = make_params(0.7, c(2.0, 0.0), c(0.3, 0.0), Model::Xxz, Boundary::Trivial).unwrap();
        let g = gram_rank_diagnostic(&DoubleRow::new(&p, 2).unwrap()).unwrap().unwrap();
        assert!(g.union >= g.blocks.max(g.charges));
        assert!(g.union <= g.blocks + g.charges);
    }
}

//! Quantum-group symmetry of the open transfer matrix and of the boundary
//! matrix itself, boundary type by boundary type.

use crate::algebra::{
    boundary_charge, boundary_charge_with_x, qgroup_rep, tower, AlgebraError, AlgebraParams, Boundary, ChargeConstant,
    Model, QGroupName, QGroupRep,
};
use crate::baxterize::LaxFactory;
use crate::check::{comm, worst, Finding, NEGATIVE_THRESHOLD, TOL_CHAINED, TOL_SINGLE};
use crate::tensor::{c, CMatrix, C64};

use super::double_row::DoubleRow;

/// A named operator on the chain, together with its local (one-site) form.
#[derive(Debug, Clone)]
pub struct Charge {
    pub label: String,
    pub chain: CMatrix,
    pub local: CMatrix,
}

fn triple(name: QGroupName, p: &AlgebraParams, n: usize) -> Result<Vec<Charge>, AlgebraError> {
    let rep = qgroup_rep(name, p);
    let t = tower(&rep, n)?;
    Ok(vec![
        Charge { label: format!("{name}.E"), chain: t.e_n, local: rep.e.clone() },
        Charge { label: format!("{name}.F"), chain: t.f_n, local: rep.f.clone() },
        Charge { label: format!("{name}.H"), chain: t.h_n, local: rep.h.clone() },
    ])
}

fn boundary(name: QGroupName, p: &AlgebraParams, n: usize) -> Result<Charge, AlgebraError> {
    let constant = name.natural_constant();
    let t = boundary_charge(&qgroup_rep(name, p), constant, p, n)?;
    Ok(Charge {
        label: format!("{name}.{}", constant.label()),
        chain: t.q_n.expect("charge populated"),
        local: t.q_local.expect("charge populated"),
    })
}

/// Preserved and broken operators for the chain's boundary.
#[derive(Debug, Clone)]
pub struct SymmetryTable {
    pub preserved: Vec<Charge>,
    pub broken: Vec<Charge>,
}

pub fn symmetry_table(p: &AlgebraParams, n: usize) -> Result<SymmetryTable, AlgebraError> {
    use QGroupName::*;
    let tr = |nm| triple(nm, p, n);
    let bc = |nm| boundary(nm, p, n);
    let cat = |parts: Vec<Vec<Charge>>| parts.into_iter().flatten().collect::<Vec<_>>();
    let (preserved, broken) = match (p.model, p.boundary) {
        (Model::Xxz, Boundary::Trivial) => (tr(Rho)?, vec![]),
        (Model::Xxz, _) => (vec![bc(Rho)?], tr(Rho)?),
        (Model::Twin, Boundary::Trivial) => (cat(vec![tr(Sigma1)?, tr(Sigma2)?, tr(Rho1)?, tr(Rho2)?]), vec![]),
        (Model::Twin, Boundary::I) => (
            cat(vec![tr(Sigma1)?, vec![bc(Sigma2)?]]),
            cat(vec![tr(Sigma2)?, tr(Rho1)?, tr(Rho2)?]),
        ),
        (Model::Twin, Boundary::Ii) => (
            cat(vec![tr(Sigma2)?, vec![bc(Sigma1)?]]),
            cat(vec![tr(Sigma1)?, tr(Rho1)?, tr(Rho2)?]),
        ),
        (Model::Twin, Boundary::Plus) => (
            vec![bc(Sigma2)?, bc(Sigma1)?],
            cat(vec![tr(Sigma1)?, tr(Sigma2)?, tr(Rho1)?, tr(Rho2)?]),
        ),
        (Model::Twin, Boundary::Iii) => (
            vec![bc(Rho2)?, bc(Rho1)?],
            cat(vec![tr(Sigma1)?, tr(Sigma2)?, vec![bc(Sigma2)?, bc(Sigma1)?], tr(Rho1)?, tr(Rho2)?]),
        ),
        (Model::Twin, Boundary::XxzM) => unreachable!("rejected by parameter validation"),
    };
    Ok(SymmetryTable { preserved, broken })
}

/// The charge used for the perturbation control: the first boundary charge of
/// the preserved set with its constant shifted by `0.2`, or for a trivial
/// boundary the first `E` tower built with a squared Cartan generator.
fn control_operator(p: &AlgebraParams, n: usize) -> Result<(String, CMatrix), AlgebraError> {
    use QGroupName::*;
    let name = match (p.model, p.boundary) {
        (Model::Xxz, _) => Rho,
        (Model::Twin, Boundary::I | Boundary::Plus) => Sigma2,
        (Model::Twin, Boundary::Ii) => Sigma1,
        (Model::Twin, Boundary::Iii) => Rho2,
        (Model::Twin, _) => Sigma1,
    };
    let rep = qgroup_rep(name, p);
    if p.boundary == Boundary::Trivial {
        let skewed = QGroupRep { h: rep.h.matmul(&rep.h), ..rep };
        return Ok((format!("{name}.E-squared-coproduct"), tower(&skewed, n)?.e_n));
    }
    let x: C64 = name.natural_constant().value(p) + 0.2;
    let t = boundary_charge_with_x(&rep, x, n)?;
    Ok((format!("{name}.shifted-constant"), t.q_n.expect("charge populated")))
}

/// `[t(λ), X] = 0` for the preserved set, `≠ 0` for each broken operator.
pub fn check_symmetry(dr: &DoubleRow, lambdas: &[C64]) -> Result<Vec<Finding>, AlgebraError> {
    let p = *dr.params();
    let n = dr.num_sites();
    let table = symmetry_table(&p, n)?;
    let ts = lambdas.iter().map(|&l| dr.transfer_t(l)).collect::<Result<Vec<_>, _>>()?;
    let tag = format!("symmetry.{}.{}.N{n}", p.model, p.boundary);
    let mut out = Vec::new();
    for ch in &table.preserved {
        let r = worst(ts.iter().map(|t| comm(t, &ch.chain)));
        out.push(Finding::holds(format!("{tag}.preserved.{}", ch.label), r, TOL_CHAINED));
    }
    for ch in &table.broken {
        let r = worst(ts.iter().map(|t| comm(t, &ch.chain)));
        out.push(Finding::violated(format!("{tag}.broken.{}", ch.label), r, NEGATIVE_THRESHOLD).with_notes("negative-control: broken generator"));
    }
    let (label, op) = control_operator(&p, n)?;
    let r = worst(ts.iter().map(|t| comm(t, &op)));
    out.push(Finding::violated(format!("{tag}.negative.{label}"), r, NEGATIVE_THRESHOLD));
    Ok(out)
}

/// Local commutators of the preserved operators with `K(λ)`.
pub fn check_k_intertwining(f: &LaxFactory, lambdas: &[C64]) -> Result<Vec<Finding>, AlgebraError> {
    let p = f.params;
    let table = symmetry_table(&p, 2)?;
    let tag = format!("symmetry.{}.{}.K-intertwining", p.model, p.boundary);
    let ks: Vec<CMatrix> = lambdas.iter().map(|&l| f.k(l)).collect();
    Ok(table
        .preserved
        .iter()
        .map(|ch| {
            let r = worst(ks.iter().map(|k| comm(k, &ch.local)));
            Finding::holds(format!("{tag}.{}", ch.label), r, TOL_SINGLE)
        })
        .collect())
}

/// `x` for the local charge in the form used by the 2×2 oracle: the XXZ
/// `𝒬_q` is `[[x(q−1), 1], [1, x(q⁻¹−1)]]`.
pub fn xxz_local_charge_closed_form(p: &AlgebraParams) -> CMatrix {
    let x = ChargeConstant::Xq.value(p);
    let q = p.q;
    CMatrix::from_rows(&[[x * (q - 1.0), c(1.0, 0.0)], [c(1.0, 0.0), x * (q.inv() - 1.0)]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{local_charge, make_params, LocalRep};
    use crate::check::resid;

    fn params(model: Model, b: Boundary) -> AlgebraParams {
        make_params(0.7, C64::from_polar(1.3, 0.4), c(0.3, 0.0), model, b).unwrap()
    }

    #[test]
    fn table_matches_every_boundary() {
        let ls = [c(0.3, 0.2), c(-0.6, 0.1)];
        for (m, b) in [
            (Model::Xxz, Boundary::Trivial),
            (Model::Xxz, Boundary::XxzM),
            (Model::Twin, Boundary::Trivial),
            (Model::Twin, Boundary::I),
            (Model::Twin, Boundary::Ii),
            (Model::Twin, Boundary::Plus),
            (Model::Twin, Boundary::Iii),
        ] {
            let dr = DoubleRow::new(&params(m, b), 2).unwrap();
            for x in check_symmetry(&dr, &ls).unwrap() {
                assert!(x.passed(), "{x:?}");
            }
            for x in check_k_intertwining(&dr.lax, &ls).unwrap() {
                assert!(x.passed(), "{x:?}");
            }
        }
    }

    #[test]
    fn xxz_local_charge_closed_form_agrees() {
        let p = params(Model::Xxz, Boundary::XxzM);
        let rep = qgroup_rep(QGroupName::Rho, &p);
        let direct = local_charge(&rep, ChargeConstant::Xq.value(&p));
        assert!(resid(&direct, &xxz_local_charge_closed_form(&p)) < 1e-14);
        let e = LocalRep::new(&p, 2).unwrap().local_e;
        assert!(comm(&direct, &e) < 1e-14);
        let off = local_charge(&rep, ChargeConstant::Xq.value(&p) + 0.2);
        assert!(comm(&off, &e) > 1e-3);
    }

    #[test]
    fn trivial_twin_has_twelve_generators() {
        let t = symmetry_table(&params(Model::Twin, Boundary::Trivial), 2).unwrap();
        assert_eq!(t.preserved.len(), 12);
        assert!(t.broken.is_empty());
    }
}

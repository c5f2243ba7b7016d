//! Exchange relations between the blocks of `𝒯(λ)` and quantum-group towers.
//!
//! Near-miss variants, each differing from a true relation by one factor (a
//! Cartan generator, a sign, a power), are kept in [`near_miss_relations`] so
//! tests can show the checks discriminate between them.

use crate::algebra::{
    boundary_charge, qgroup_rep, tower, AlgebraError, AlgebraParams, Boundary, ChargeConstant, ChargeTower, Model,
    QGroupName,
};
use crate::check::{resid, Finding, TOL_CHAINED};
use crate::tensor::{c, invert, q_comm, CMatrix, C64};

use super::double_row::{Blocks, DoubleRow};

const I: C64 = C64::new(0.0, 1.0);

/// `lhs = rhs` with a stable identifier.
#[derive(Debug, Clone)]
pub struct Relation {
    pub id: String,
    pub lhs: CMatrix,
    pub rhs: CMatrix,
}

impl Relation {
    fn new(id: impl Into<String>, lhs: CMatrix, rhs: CMatrix) -> Self {
        Self { id: id.into(), lhs, rhs }
    }

    fn zero(id: impl Into<String>, lhs: CMatrix) -> Self {
        let z = CMatrix::zeros(lhs.rows(), lhs.cols());
        Self::new(id, lhs, z)
    }

    pub fn residual(&self) -> f64 {
        resid(&self.lhs, &self.rhs)
    }
}

fn cm(x: &CMatrix, y: &CMatrix) -> CMatrix {
    q_comm(x, y, c(1.0, 0.0))
}

/// Tower with the inverse Cartan generator precomputed.
struct Gens {
    e: CMatrix,
    f: CMatrix,
    h: CMatrix,
    hi: CMatrix,
}

impl Gens {
    fn of(name: QGroupName, p: &AlgebraParams, n: usize) -> Result<Self, AlgebraError> {
        let t = tower(&qgroup_rep(name, p), n)?;
        Ok(Self {
            hi: invert(&t.h_n)?,
            e: t.e_n,
            f: t.f_n,
            h: t.h_n,
        })
    }
}

fn charge(name: QGroupName, constant: ChargeConstant, p: &AlgebraParams, n: usize) -> Result<CMatrix, AlgebraError> {
    let t: ChargeTower = boundary_charge(&qgroup_rep(name, p), constant, p, n)?;
    Ok(t.q_n.expect("boundary charge populated"))
}

/// Open XXZ chain, trivial boundary, `U_q(sl₂)` tower.
pub fn xxz_relations(p: &AlgebraParams, t: &Blocks, n: usize) -> Result<Vec<Relation>, AlgebraError> {
    let g = Gens::of(QGroupName::Rho, p, n)?;
    let q = p.q;
    let (sq, isq) = (q.sqrt(), q.sqrt().inv());
    let (a, b, cc, d) = (t.get("A"), t.get("B"), t.get("C"), t.get("D"));
    let (h, hi) = (&g.h, &g.hi);
    Ok(vec![
        Relation::zero("cartan.A-H", cm(a, h)),
        Relation::zero("cartan.D-H", cm(d, h)),
        Relation::zero("cartan.C-H", q_comm(cc, h, q.inv())),
        Relation::zero("cartan.C-Hinv", q_comm(cc, hi, q)),
        Relation::zero("cartan.B-H", q_comm(b, h, q)),
        Relation::zero("cartan.B-Hinv", q_comm(b, hi, q.inv())),
        Relation::new("raise.E-A", cm(&g.e, a), hi.matmul(cc).scale(-isq)),
        Relation::new("raise.E-D", cm(&g.e, d), cc.matmul(hi).scale(sq)),
        Relation::zero("raise.E-C", q_comm(&g.e, cc, q)),
        Relation::new("raise.E-B", q_comm(&g.e, b, q.inv()), (&a.matmul(hi) - &hi.matmul(d)).scale(isq)),
        Relation::new("lower.F-A", cm(&g.f, a), b.matmul(hi).scale(isq)),
        Relation::new("lower.F-D", cm(&g.f, d), hi.matmul(b).scale(-sq)),
        Relation::zero("lower.F-B", q_comm(&g.f, b, q.inv())),
        Relation::new("lower.F-C", q_comm(&g.f, cc, q), (&d.matmul(hi) - &hi.matmul(a)).scale(sq)),
    ])
}

/// Twin chain, trivial boundary, `U_i(sl₂) ⊗ U_q(sl₂)` towers.
pub fn twin_sigma_relations(p: &AlgebraParams, t: &Blocks, n: usize) -> Result<Vec<Relation>, AlgebraError> {
    let g1 = Gens::of(QGroupName::Sigma1, p, n)?;
    let g2 = Gens::of(QGroupName::Sigma2, p, n)?;
    let q = p.q;
    let (sq, isq) = (q.sqrt(), q.sqrt().inv());
    let (si, isi) = (I.sqrt(), I.sqrt().inv());
    let (a, a1, a2, d) = (t.get("A"), t.get("A1"), t.get("A2"), t.get("D"));
    let (b, cc, b5, c5) = (t.get("B"), t.get("C"), t.get("B5"), t.get("C5"));
    let mut out = Vec::new();
    for (j, g) in [(1, &g1), (2, &g2)] {
        for (lab, x) in [("A", a), ("D", d), ("A1", a1), ("A2", a2)] {
            out.push(Relation::zero(format!("sigma-cartan.H{j}-{lab}"), cm(&g.h, x)));
        }
    }
    out.extend([
        Relation::zero("sigma-cartan.C-H1inv", q_comm(cc, &g1.hi, I)),
        Relation::zero("sigma-cartan.B-H1inv", q_comm(b, &g1.hi, I.inv())),
        Relation::zero("sigma-cartan.C5-H2inv", q_comm(c5, &g2.hi, q.inv())),
        Relation::zero("sigma-cartan.B5-H2inv", q_comm(b5, &g2.hi, q)),
        Relation::new("sigma-ladder.E1-A", cm(&g1.e, a), g1.hi.matmul(cc).scale(-isi)),
        Relation::new("sigma-ladder.E1-D", cm(&g1.e, d), cc.matmul(&g1.hi).scale(si)),
        Relation::zero("sigma-ladder.E1-A1", cm(&g1.e, a1)),
        Relation::zero("sigma-ladder.E1-A2", cm(&g1.e, a2)),
        Relation::new("sigma-ladder.F1-A", cm(&g1.f, a), b.matmul(&g1.hi).scale(isi)),
        Relation::new("sigma-ladder.F1-D", cm(&g1.f, d), g1.hi.matmul(b).scale(-si)),
        Relation::zero("sigma-ladder.F1-A1", cm(&g1.f, a1)),
        Relation::zero("sigma-ladder.F1-A2", cm(&g1.f, a2)),
        Relation::new("sigma-ladder.F2-A1", cm(&g2.f, a1), g2.hi.matmul(c5).scale(-sq)),
        Relation::new("sigma-ladder.F2-A2", cm(&g2.f, a2), c5.matmul(&g2.hi).scale(isq)),
        Relation::zero("sigma-ladder.F2-A", cm(&g2.f, a)),
        Relation::zero("sigma-ladder.F2-D", cm(&g2.f, d)),
        Relation::new("sigma-ladder.E2-A1", cm(&g2.e, a1), b5.matmul(&g2.hi).scale(sq)),
        Relation::new("sigma-ladder.E2-A2", cm(&g2.e, a2), g2.hi.matmul(b5).scale(-isq)),
        Relation::zero("sigma-ladder.E2-A", cm(&g2.e, a)),
        Relation::zero("sigma-ladder.E2-D", cm(&g2.e, d)),
    ]);
    Ok(out)
}

/// Twin chain, trivial boundary, `U_r̂(sl₂) ⊗ U_r(sl₂)` towers.
pub fn twin_rho_relations(p: &AlgebraParams, t: &Blocks, n: usize) -> Result<Vec<Relation>, AlgebraError> {
    let g1 = Gens::of(QGroupName::Rho1, p, n)?;
    let g2 = Gens::of(QGroupName::Rho2, p, n)?;
    let (r, rh) = (p.r, p.r_hat);
    let (sr, isr) = (r.sqrt(), r.sqrt().inv());
    let (srh, isrh) = (rh.sqrt(), rh.sqrt().inv());
    let (a, a1, a2, d) = (t.get("A"), t.get("A1"), t.get("A2"), t.get("D"));
    let [b1, b2, b3, b4] = ["B1", "B2", "B3", "B4"].map(|s| t.get(s));
    let [c1, c2, c3, c4] = ["C1", "C2", "C3", "C4"].map(|s| t.get(s));
    let (h1i, h2i) = (&g1.hi, &g2.hi);
    Ok(vec![
        Relation::zero("rho-cartan.B1-H1inv", q_comm(b1, h1i, rh.inv())),
        Relation::zero("rho-cartan.B4-H1inv", q_comm(b4, h1i, rh.inv())),
        Relation::zero("rho-cartan.C1-H1inv", q_comm(c1, h1i, rh)),
        Relation::zero("rho-cartan.C4-H1inv", q_comm(c4, h1i, rh)),
        Relation::zero("rho-cartan.B2-H2inv", q_comm(b2, h2i, r)),
        Relation::zero("rho-cartan.B3-H2inv", q_comm(b3, h2i, r)),
        Relation::zero("rho-cartan.C2-H2inv", q_comm(c2, h2i, r.inv())),
        Relation::zero("rho-cartan.C3-H2inv", q_comm(c3, h2i, r.inv())),
        Relation::new("rho-ladder.E1-A", cm(&g1.e, a), h1i.matmul(c1).scale(-isrh)),
        Relation::new("rho-ladder.E1-A1", cm(&g1.e, a1), c1.matmul(h1i).scale(srh)),
        Relation::new("rho-ladder.E1-A2", cm(&g1.e, a2), h1i.matmul(c4).scale(-isrh)),
        Relation::new("rho-ladder.E1-D", cm(&g1.e, d), c4.matmul(h1i).scale(srh)),
        Relation::new("rho-ladder.F1-A", cm(&g1.f, a), b1.matmul(h1i).scale(isrh)),
        Relation::new("rho-ladder.F1-A1", cm(&g1.f, a1), h1i.matmul(b1).scale(-srh)),
        Relation::new("rho-ladder.F1-A2", cm(&g1.f, a2), b4.matmul(h1i).scale(isrh)),
        Relation::new("rho-ladder.F1-D", cm(&g1.f, d), h1i.matmul(b4).scale(-srh)),
        Relation::new("rho-ladder.E2-A", cm(&g2.e, a), b2.matmul(h2i).scale(sr)),
        Relation::new("rho-ladder.E2-A1", cm(&g2.e, a1), b3.matmul(h2i).scale(sr)),
        Relation::new("rho-ladder.E2-A2", cm(&g2.e, a2), h2i.matmul(b2).scale(-isr)),
        Relation::new("rho-ladder.E2-D", cm(&g2.e, d), h2i.matmul(b3).scale(-isr)),
        Relation::new("rho-ladder.F2-A", cm(&g2.f, a), h2i.matmul(c2).scale(-sr)),
        Relation::new("rho-ladder.F2-A1", cm(&g2.f, a1), h2i.matmul(c3).scale(-sr)),
        Relation::new("rho-ladder.F2-A2", cm(&g2.f, a2), c2.matmul(h2i).scale(isr)),
        Relation::new("rho-ladder.F2-D", cm(&g2.f, d), c3.matmul(h2i).scale(isr)),
    ])
}

/// Boundary (i): the `σ₂` charge against the diagonal blocks.
pub fn sigma2_charge_relations(p: &AlgebraParams, t: &Blocks, n: usize) -> Result<Vec<Relation>, AlgebraError> {
    let qq = charge(QGroupName::Sigma2, ChargeConstant::Xq, p, n)?;
    let q = p.q;
    let diff = t.get("B5") - t.get("C5");
    Ok(vec![
        Relation::zero("charge.Qq-A", cm(&qq, t.get("A"))),
        Relation::zero("charge.Qq-D", cm(&qq, t.get("D"))),
        Relation::new("charge.Qq-A1", cm(&qq, t.get("A1")), diff.scale(q)),
        Relation::new("charge.Qq-A2", cm(&qq, t.get("A2")), diff.scale(-q.inv())),
    ])
}

/// Boundary (ii): the `σ₁` charge against the diagonal blocks.
pub fn sigma1_charge_relations(p: &AlgebraParams, t: &Blocks, n: usize) -> Result<Vec<Relation>, AlgebraError> {
    let qi = charge(QGroupName::Sigma1, ChargeConstant::Xi, p, n)?;
    let diff = t.get("B") - t.get("C");
    Ok(vec![
        Relation::zero("charge.Qi-A1", cm(&qi, t.get("A1"))),
        Relation::zero("charge.Qi-A2", cm(&qi, t.get("A2"))),
        Relation::new("charge.Qi-A", cm(&qi, t.get("A")), diff.scale(I.inv())),
        Relation::new("charge.Qi-D", cm(&qi, t.get("D")), diff.scale(-I)),
    ])
}

/// Boundary (iii): the `ρ₂` and `ρ₁` charges against the diagonal blocks.
pub fn rho_charge_relations(p: &AlgebraParams, t: &Blocks, n: usize) -> Result<Vec<Relation>, AlgebraError> {
    let qr = charge(QGroupName::Rho2, ChargeConstant::Xr, p, n)?;
    let qrh = charge(QGroupName::Rho1, ChargeConstant::XrHat, p, n)?;
    let (r, rh) = (p.r, p.r_hat);
    let d = |x: &str, y: &str| t.get(x) - t.get(y);
    let (d1, d2, d3, d4) = (d("C1", "B1"), d("C2", "B2"), d("C3", "B3"), d("C4", "B4"));
    Ok(vec![
        Relation::new("charge.Qr-A", cm(&qr, t.get("A")), d2.scale(-r)),
        Relation::new("charge.Qr-A2", cm(&qr, t.get("A2")), d2.scale(r.inv())),
        Relation::new("charge.Qr-A1", cm(&qr, t.get("A1")), d3.scale(-r)),
        Relation::new("charge.Qr-D", cm(&qr, t.get("D")), d3.scale(r.inv())),
        Relation::new("charge.Qrhat-A", cm(&qrh, t.get("A")), d1.scale(-rh.inv())),
        Relation::new("charge.Qrhat-A1", cm(&qrh, t.get("A1")), d1.scale(rh)),
        Relation::new("charge.Qrhat-A2", cm(&qrh, t.get("A2")), d4.scale(-rh.inv())),
        Relation::new("charge.Qrhat-D", cm(&qrh, t.get("D")), d4.scale(rh)),
    ])
}

/// Variants of the relations above with one factor changed. Blocks of both the
/// trivial and the type-(iii) chain are needed because the last two refer to
/// boundary (iii).
pub fn near_miss_relations(p: &AlgebraParams, trivial: &Blocks, iii: &Blocks, n: usize) -> Result<Vec<Relation>, AlgebraError> {
    let g1 = Gens::of(QGroupName::Sigma1, p, n)?;
    let g2 = Gens::of(QGroupName::Sigma2, p, n)?;
    let t1 = Gens::of(QGroupName::Rho1, p, n)?;
    let t2 = Gens::of(QGroupName::Rho2, p, n)?;
    let (q, r, rh) = (p.q, p.r, p.r_hat);
    let t = trivial;
    let mut out = vec![
        Relation::new("F2-A2.uses-H1", cm(&g2.f, t.get("A2")), t.get("C5").matmul(&g1.hi).scale(q.sqrt().inv())),
        Relation::new("tF1-D.uses-B2", cm(&t1.f, t.get("D")), t.get("B2").matmul(&t2.hi).scale(r.sqrt())),
        Relation::new("tE2-A.uses-H1", cm(&t2.e, t.get("A")), t.get("B2").matmul(&t1.hi).scale(r.sqrt())),
        Relation::new("tE2-A1.uses-H1", cm(&t2.e, t.get("A1")), t.get("B3").matmul(&t1.hi).scale(r.sqrt())),
        Relation::new("tE2-D.uses-H1", cm(&t2.e, t.get("D")), t1.hi.matmul(t.get("B3")).scale(-r.sqrt().inv())),
        Relation::new("tF2-A.uses-H", cm(&t2.f, t.get("A")), t2.h.matmul(t.get("C2")).scale(-r.sqrt())),
        Relation::new("tE2-D.with-C3", cm(&t2.e, t.get("D")), t.get("C3").matmul(&t2.hi).scale(r.sqrt().inv())),
    ];
    let qr = charge(QGroupName::Rho2, ChargeConstant::Xr, p, n)?;
    let qrh = charge(QGroupName::Rho1, ChargeConstant::XrHat, p, n)?;
    let d2 = iii.get("C2") - iii.get("B2");
    let d1 = iii.get("C1") - iii.get("B1");
    out.push(Relation::new("charge.Qr-A.sign", cm(&qr, iii.get("A")).scale(r.inv()), d2));
    out.push(Relation::new("charge.Qrhat-A.power", cm(&qrh, iii.get("A")).scale(-rh.inv()), d1));
    Ok(out)
}

/// Every exchange relation that applies to the chain's boundary.
pub fn relations_for(p: &AlgebraParams, n: usize, l: C64) -> Result<Vec<Relation>, AlgebraError> {
    let t = DoubleRow::new(p, n)?.blocks(l)?;
    match (p.model, p.boundary) {
        (Model::Xxz, Boundary::Trivial) => xxz_relations(p, &t, n),
        (Model::Twin, Boundary::Trivial) => {
            let mut v = twin_sigma_relations(p, &t, n)?;
            v.extend(twin_rho_relations(p, &t, n)?);
            Ok(v)
        }
        (Model::Twin, Boundary::I) => sigma2_charge_relations(p, &t, n),
        (Model::Twin, Boundary::Ii) => sigma1_charge_relations(p, &t, n),
        (Model::Twin, Boundary::Plus) => {
            let mut v = sigma2_charge_relations(p, &t, n)?;
            v.extend(sigma1_charge_relations(p, &t, n)?);
            Ok(v)
        }
        (Model::Twin, Boundary::Iii) => rho_charge_relations(p, &t, n),
        _ => Ok(Vec::new()),
    }
}

/// Relations as findings, plus a sign-flipped copy of the first relation with a
/// nonzero right-hand side as the negative control.
pub fn check_exchange(p: &AlgebraParams, n: usize, lambdas: &[C64]) -> Result<Vec<Finding>, AlgebraError> {
    let mut worst: Vec<(String, f64)> = Vec::new();
    let mut control: f64 = f64::INFINITY;
    for &l in lambdas {
        let rels = relations_for(p, n, l)?;
        if worst.is_empty() {
            worst = rels.iter().map(|r| (r.id.clone(), 0.0)).collect();
        }
        for (slot, rel) in worst.iter_mut().zip(&rels) {
            slot.1 = slot.1.max(rel.residual());
        }
        if let Some(rel) = rels.iter().find(|r| r.rhs.frobenius_norm() > 0.0) {
            control = control.min(resid(&rel.lhs, &rel.rhs.scale(c(-1.0, 0.0))));
        }
    }
    let tag = format!("exchange.{}.{}.N{n}", p.model, p.boundary);
    let mut out: Vec<Finding> = worst
        .into_iter()
        .map(|(id, r)| Finding::holds(format!("{tag}.{id}"), r, TOL_CHAINED))
        .collect();
    if control.is_finite() {
        out.push(Finding::violated(format!("{tag}.negative.sign-flip"), control, crate::check::NEGATIVE_THRESHOLD));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::make_params;

    fn params(model: Model, b: Boundary, bq: C64) -> AlgebraParams {
        make_params(0.7, bq, c(0.3, 0.0), model, b).unwrap()
    }

    #[test]
    fn all_relations_hold_small_chains() {
        let l = c(0.4, 0.0);
        for n in [2, 3] {
            for bq in [c(2.0, 0.0), C64::from_polar(1.3, 0.4)] {
                for (m, b) in [
                    (Model::Xxz, Boundary::Trivial),
                    (Model::Twin, Boundary::Trivial),
                    (Model::Twin, Boundary::I),
                    (Model::Twin, Boundary::Ii),
                    (Model::Twin, Boundary::Plus),
                    (Model::Twin, Boundary::Iii),
                ] {
                    let rels = relations_for(&params(m, b, bq), n, l).unwrap();
                    assert!(!rels.is_empty());
                    for r in rels {
                        assert!(r.residual() < 1e-9, "{m} {b} N={n} {}: {}", r.id, r.residual());
                    }
                }
            }
        }
    }

    #[test]
    fn relation_counts() {
        let l = c(0.4, 0.0);
        assert_eq!(relations_for(&params(Model::Xxz, Boundary::Trivial, c(2.0, 0.0)), 2, l).unwrap().len(), 14);
        assert_eq!(relations_for(&params(Model::Twin, Boundary::Trivial, c(2.0, 0.0)), 2, l).unwrap().len(), 28 + 24);
        assert_eq!(relations_for(&params(Model::Twin, Boundary::Plus, c(2.0, 0.0)), 2, l).unwrap().len(), 8);
    }

    #[test]
    fn near_misses_fail() {
        let l = c(0.4, 0.0);
        let p0 = params(Model::Twin, Boundary::Trivial, c(2.0, 0.0));
        let p3 = params(Model::Twin, Boundary::Iii, c(2.0, 0.0));
        let t0 = DoubleRow::new(&p0, 2).unwrap().blocks(l).unwrap();
        let t3 = DoubleRow::new(&p3, 2).unwrap().blocks(l).unwrap();
        for r in near_miss_relations(&p3, &t0, &t3, 2).unwrap() {
            assert!(r.residual() > 1e-3, "{} unexpectedly holds: {}", r.id, r.residual());
        }
    }

    #[test]
    fn q_commutator_convention() {
        let x = CMatrix::diag(&[c(1.0, 0.0), c(2.0, 0.0)]);
        let y = CMatrix::unit(2, 0, 1);
        // x·y = y, y·x = 2y: [x, y]_q = (1 − 2q)y.
        let q = c(0.5, 0.0);
        assert!(q_comm(&x, &y, q).max_abs_diff(&CMatrix::zeros(2, 2)) < 1e-15);
    }

    #[test]
    fn negative_control_present() {
        let p = params(Model::Xxz, Boundary::Trivial, c(2.0, 0.0));
        let f = check_exchange(&p, 2, &[c(0.4, 0.0)]).unwrap();
        assert!(f.iter().all(Finding::passed));
        assert!(f.iter().any(|x| x.id.ends_with("negative.sign-flip")));
    }
}

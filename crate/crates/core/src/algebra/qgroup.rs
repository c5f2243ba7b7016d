use std::fmt;
use std::str::FromStr;

use crate::check::{comm, resid, worst, Finding, NEGATIVE_THRESHOLD, TOL_SINGLE};
use crate::tensor::{c, invert, kron, kron_all, CMatrix, C64};

use super::params::AlgebraParams;
use super::reps::LocalRep;
use super::AlgebraError;

const I: C64 = C64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QGroupName {
    Rho,
    Sigma1,
    Sigma2,
    Rho1,
    Rho2,
}

impl QGroupName {
    pub const TWIN: [QGroupName; 4] = [QGroupName::Sigma1, QGroupName::Sigma2, QGroupName::Rho1, QGroupName::Rho2];

    pub fn name(self) -> &'static str {
        match self {
            QGroupName::Rho => "rho",
            QGroupName::Sigma1 => "sigma1",
            QGroupName::Sigma2 => "sigma2",
            QGroupName::Rho1 => "rho1",
            QGroupName::Rho2 => "rho2",
        }
    }

    /// The boundary-charge constant that goes with this representation.
    pub fn natural_constant(self) -> ChargeConstant {
        match self {
            QGroupName::Rho | QGroupName::Sigma2 => ChargeConstant::Xq,
            QGroupName::Sigma1 => ChargeConstant::Xi,
            QGroupName::Rho1 => ChargeConstant::XrHat,
            QGroupName::Rho2 => ChargeConstant::Xr,
        }
    }
}

impl fmt::Display for QGroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for QGroupName {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rho" => Ok(QGroupName::Rho),
            "sigma1" => Ok(QGroupName::Sigma1),
            "sigma2" => Ok(QGroupName::Sigma2),
            "rho1" => Ok(QGroupName::Rho1),
            "rho2" => Ok(QGroupName::Rho2),
            _ => Err(AlgebraError::UnknownTag(s.to_string())),
        }
    }
}

/// A local `U_𝓆(sl₂)` triple.
#[derive(Debug, Clone)]
pub struct QGroupRep {
    pub name: QGroupName,
    pub e: CMatrix,
    pub f: CMatrix,
    pub h: CMatrix,
    pub deformation: C64,
}

fn sigma_plus() -> CMatrix {
    CMatrix::unit(2, 0, 1)
}

fn sigma_minus() -> CMatrix {
    CMatrix::unit(2, 1, 0)
}

/// `diag(s, s⁻¹)` where `s` is the principal square root of `z`.
fn half_power_z(z: C64) -> CMatrix {
    let s = z.sqrt();
    CMatrix::diag(&[s, s.inv()])
}

/// `diag(s⁻¹, s)`, the inverse of [`half_power_z`] with the same branch.
fn neg_half_power_z(z: C64) -> CMatrix {
    let s = z.sqrt();
    CMatrix::diag(&[s.inv(), s])
}

pub fn qgroup_rep(name: QGroupName, p: &AlgebraParams) -> QGroupRep {
    let one = c(1.0, 0.0);
    let i2 = CMatrix::identity(2);
    let (e, f, h, deformation) = match name {
        QGroupName::Rho => (sigma_plus(), sigma_minus(), half_power_z(p.q), p.q),
        QGroupName::Sigma1 => {
            let s = I.sqrt();
            (CMatrix::unit(4, 0, 3), CMatrix::unit(4, 3, 0), CMatrix::diag(&[s, one, one, s.inv()]), I)
        }
        QGroupName::Sigma2 => {
            let s = p.q.sqrt();
            (CMatrix::unit(4, 2, 1), CMatrix::unit(4, 1, 2), CMatrix::diag(&[one, s.inv(), s, one]), p.q)
        }
        QGroupName::Rho1 => (
            kron(&i2, &sigma_plus()),
            kron(&i2, &sigma_minus()),
            kron(&i2, &half_power_z(p.r_hat)),
            p.r_hat,
        ),
        QGroupName::Rho2 => (
            kron(&sigma_minus(), &i2),
            kron(&sigma_plus(), &i2),
            kron(&neg_half_power_z(p.r), &i2),
            p.r,
        ),
    };
    QGroupRep { name, e, f, h, deformation }
}

/// Residuals of `HE = 𝓆EH`, `HF = 𝓆⁻¹FH`, `[E,F] = (H² − H⁻²)/(𝓆 − 𝓆⁻¹)`.
pub fn sl2_residuals(e: &CMatrix, f: &CMatrix, h: &CMatrix, qq: C64) -> Result<[f64; 3], AlgebraError> {
    let hi = invert(h)?;
    let h2 = h.matmul(h);
    let hi2 = hi.matmul(&hi);
    let r1 = resid(&h.matmul(e), &e.matmul(h).scale(qq));
    let r2 = resid(&h.matmul(f), &f.matmul(h).scale(qq.inv()));
    let r3 = resid(&(&e.matmul(f) - &f.matmul(e)), &(&h2 - &hi2).scale((qq - qq.inv()).inv()));
    Ok([r1, r2, r3])
}

/// Which `x` constant enters the boundary charge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChargeConstant {
    Xq,
    Xi,
    Xr,
    XrHat,
}

impl ChargeConstant {
    pub fn value(self, p: &AlgebraParams) -> C64 {
        let bq = p.q_rep;
        match self {
            ChargeConstant::Xq => (bq - bq.inv()) / (p.q - p.q.inv()),
            ChargeConstant::Xi => -(bq - bq.inv()) / (2.0 * I),
            ChargeConstant::Xr => I * ((I * bq).sqrt() + (-I * bq.inv()).sqrt()) / (p.r - p.r.inv()),
            ChargeConstant::XrHat => ((I * bq).sqrt() - (-I * bq.inv()).sqrt()) / (p.r_hat - p.r_hat.inv()),
        }
    }

    /// The deformation parameter this constant is defined for.
    pub fn deformation(self, p: &AlgebraParams) -> C64 {
        match self {
            ChargeConstant::Xq => p.q,
            ChargeConstant::Xi => I,
            ChargeConstant::Xr => p.r,
            ChargeConstant::XrHat => p.r_hat,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ChargeConstant::Xq => "Qq",
            ChargeConstant::Xi => "Qi",
            ChargeConstant::Xr => "Qr",
            ChargeConstant::XrHat => "Qrhat",
        }
    }
}

/// Coproduct towers of a local triple, optionally with a boundary charge.
#[derive(Debug, Clone)]
pub struct ChargeTower {
    pub rep: QGroupRep,
    pub n: usize,
    pub e_n: CMatrix,
    pub f_n: CMatrix,
    pub h_n: CMatrix,
    pub q_local: Option<CMatrix>,
    pub q_n: Option<CMatrix>,
    pub x_const: Option<C64>,
}

/// `Σ_k A^{⊗(k−1)} ⊗ X ⊗ B^{⊗(N−k)}`: the image of `X` under the iterated coproduct
/// `Δ(X) = A ⊗ X + X ⊗ B`, site 1 leftmost.
fn iterated_coproduct(x: &CMatrix, left: &CMatrix, right: &CMatrix, n: usize) -> CMatrix {
    let mut total: Option<CMatrix> = None;
    for k in 0..n {
        let factors: Vec<&CMatrix> = (0..n)
            .map(|j| if j < k { left } else if j == k { x } else { right })
            .collect();
        let term = kron_all(&factors);
        total = Some(match total {
            None => term,
            Some(t) => &t + &term,
        });
    }
    total.expect("n ≥ 1")
}

pub fn tower(rep: &QGroupRep, n: usize) -> Result<ChargeTower, AlgebraError> {
    if n == 0 {
        return Err(AlgebraError::TooFewSites(0));
    }
    let hi = invert(&rep.h)?;
    let e_n = iterated_coproduct(&rep.e, &hi, &rep.h, n);
    let f_n = iterated_coproduct(&rep.f, &hi, &rep.h, n);
    let h_n = kron_all(&vec![&rep.h; n]);
    Ok(ChargeTower {
        rep: rep.clone(),
        n,
        e_n,
        f_n,
        h_n,
        q_local: None,
        q_n: None,
        x_const: None,
    })
}

/// Local boundary charge `𝓆^{−1/2}HE + 𝓆^{1/2}HF + x(H² − I)`.
pub fn local_charge(rep: &QGroupRep, x: C64) -> CMatrix {
    let s = rep.deformation.sqrt();
    let h2 = rep.h.matmul(&rep.h);
    let a = rep.h.matmul(&rep.e).scale(s.inv());
    let b = rep.h.matmul(&rep.f).scale(s);
    &(&a + &b) + &h2.add_identity(c(-1.0, 0.0)).scale(x)
}

/// Tower plus the boundary charge `ℚ^{(N)}` built from `Δ(𝒬) = I⊗𝒬 + 𝒬⊗H²`.
pub fn boundary_charge(rep: &QGroupRep, constant: ChargeConstant, p: &AlgebraParams, n: usize) -> Result<ChargeTower, AlgebraError> {
    let expected = constant.deformation(p);
    if (expected - rep.deformation).norm() > 1e-12 {
        return Err(AlgebraError::ChargeMismatch {
            rep: rep.name,
            constant: constant.label(),
        });
    }
    boundary_charge_with_x(rep, constant.value(p), n)
}

/// Same as [`boundary_charge`] with an explicit `x` (used by negative controls).
pub fn boundary_charge_with_x(rep: &QGroupRep, x: C64, n: usize) -> Result<ChargeTower, AlgebraError> {
    let mut t = tower(rep, n)?;
    let ql = local_charge(rep, x);
    let id = CMatrix::identity(rep.h.rows());
    let h2 = rep.h.matmul(&rep.h);
    t.q_n = Some(iterated_coproduct(&ql, &id, &h2, n));
    t.q_local = Some(ql);
    t.x_const = Some(x);
    Ok(t)
}

/// Deformed sl₂ relations for the local triple and the tower.
pub fn check_tower_relations(t: &ChargeTower) -> Result<Vec<Finding>, AlgebraError> {
    let nm = t.rep.name;
    let loc = sl2_residuals(&t.rep.e, &t.rep.f, &t.rep.h, t.rep.deformation)?;
    let tow = sl2_residuals(&t.e_n, &t.f_n, &t.h_n, t.rep.deformation)?;
    Ok(vec![
        Finding::holds(format!("algebra.qgroup.{nm}.local-relations"), worst(loc), 1e-12),
        Finding::holds(format!("algebra.qgroup.{nm}.tower-relations.N{}", t.n), worst(tow), TOL_SINGLE),
    ])
}

/// `[X^{(N)}, π(U_l)] = 0` for every tower generator and every `l`.
pub fn check_centralizer_local(rep: &LocalRep, towers: &[ChargeTower]) -> Vec<Finding> {
    towers
        .iter()
        .map(|t| {
            let r = worst(
                [&t.e_n, &t.f_n, &t.h_n]
                    .into_iter()
                    .flat_map(|x| rep.u_gens.iter().map(move |u| comm(x, u))),
            );
            Finding::holds(format!("algebra.centralizer.{}.N{}", t.rep.name, rep.num_sites()), r, TOL_SINGLE)
        })
        .collect()
}

/// The σ/ρ factorization identities.
///
/// The generator identities hold verbatim. The Cartan identity does not hold
/// with any scalar phase: `σ₁(H)σ₂(H)` equals `i(σᶻ⊗I)·ρ₁(H)ρ₂(H)`, and only
/// the squared form `σ₁(H)²σ₂(H)² = −ρ₁(H)²ρ₂(H)²` is a scalar relation.
pub fn check_factorization(p: &AlgebraParams) -> Vec<Finding> {
    let s1 = qgroup_rep(QGroupName::Sigma1, p);
    let s2 = qgroup_rep(QGroupName::Sigma2, p);
    let r1 = qgroup_rep(QGroupName::Rho1, p);
    let r2 = qgroup_rep(QGroupName::Rho2, p);
    let tol = 1e-14;
    let sz = CMatrix::diag(&[c(1.0, 0.0), c(-1.0, 0.0)]);
    let phase = kron(&sz, &CMatrix::identity(2)).scale(I);
    let lhs_h = s1.h.matmul(&s2.h);
    let rhs_h = r1.h.matmul(&r2.h);
    let sq = |m: &CMatrix| m.matmul(m);
    let (best_phase, literal) = [I, -I]
        .into_iter()
        .map(|ph| (ph, resid(&lhs_h, &rhs_h.scale(ph))))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("two candidates");
    vec![
        Finding::holds("algebra.factorization.sigma1-E", resid(&s1.e, &r1.e.matmul(&r2.f)), tol),
        Finding::holds("algebra.factorization.sigma1-F", resid(&s1.f, &r1.f.matmul(&r2.e)), tol),
        Finding::holds("algebra.factorization.sigma2-E", resid(&s2.e, &r1.e.matmul(&r2.e)), tol),
        Finding::holds("algebra.factorization.sigma2-F", resid(&s2.f, &r1.f.matmul(&r2.f)), tol),
        Finding::holds("algebra.factorization.H-product", resid(&lhs_h, &phase.matmul(&rhs_h)), tol)
            .with_notes("sigma1(H)sigma2(H) = i(sz x I) rho1(H)rho2(H)"),
        Finding::holds(
            "algebra.factorization.H-squared",
            resid(&sq(&s1.h).matmul(&sq(&s2.h)), &sq(&r1.h).matmul(&sq(&r2.h)).scale(c(-1.0, 0.0))),
            tol,
        ),
        Finding::violated("algebra.factorization.H-scalar-phase", literal, NEGATIVE_THRESHOLD)
            .with_notes(format!("negative-control: no scalar phase works, best {best_phase}")),
    ]
}

/// Plain coproduct towers for a list of representations.
pub fn towers_for(model_reps: &[QGroupName], p: &AlgebraParams, n: usize) -> Result<Vec<ChargeTower>, AlgebraError> {
    model_reps.iter().map(|&nm| tower(&qgroup_rep(nm, p), n)).collect()
}

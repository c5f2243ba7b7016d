use crate::check::{comm, resid, worst, Finding, NEGATIVE_THRESHOLD, TOL_SINGLE};
use crate::tensor::{c, embed, kron, leg_permute, CMatrix, SiteLayout, C64};

use super::params::{AlgebraParams, Boundary, Model};
use super::AlgebraError;

const I: C64 = C64::new(0.0, 1.0);

/// The XXZ Temperley–Lieb generator on `ℂ²⊗ℂ²`.
pub fn tl_generator(q: C64) -> CMatrix {
    let z = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    CMatrix::from_rows(&[
        [z, z, z, z],
        [z, -q, one, z],
        [z, one, -q.inv(), z],
        [z, z, z, z],
    ])
}

/// The twin generator `Θ(U₁)` on two folded sites, basis `(1⁻,1⁺) ⊗ (2⁻,2⁺)`,
/// entered entry by entry from the published 16×16 table.
pub fn theta_table(p: &AlgebraParams) -> CMatrix {
    let (q, r, rh) = (p.q, p.r, p.r_hat);
    let one = c(1.0, 0.0);
    let mut m = CMatrix::zeros(16, 16);
    let entries = [
        (4, 4, -I),
        (4, 7, -r.inv()),
        (4, 10, -rh),
        (4, 13, one),
        (7, 4, -r.inv()),
        (7, 7, -q.inv()),
        (7, 10, one),
        (7, 13, -rh.inv()),
        (10, 4, -rh),
        (10, 7, one),
        (10, 10, -q),
        (10, 13, -r),
        (13, 4, one),
        (13, 7, -rh.inv()),
        (13, 10, -r),
        (13, 13, I),
    ];
    for (i, j, v) in entries {
        m[(i - 1, j - 1)] = v;
    }
    m
}

/// `Θ(U₁)` assembled from the two XXZ generators: `U(r)` on the mirror pair
/// `(2⁻,1⁻)` and `U(r̂)` on `(1⁺,2⁺)`, then regrouped into folded sites.
pub fn theta_from_xxz(p: &AlgebraParams) -> CMatrix {
    let unfolded = kron(&tl_generator(p.r), &tl_generator(p.r_hat));
    // legs of `unfolded`: (2⁻, 1⁻, 1⁺, 2⁺); target order (1⁻, 1⁺, 2⁻, 2⁺)
    leg_permute(&unfolded, &[2, 3, 1, 4], &SiteLayout::new(4, 2)).expect("fixed 4-leg permutation")
}

fn two_by_two(a: C64, b: C64, cc: C64, d: C64) -> CMatrix {
    CMatrix::from_rows(&[[a, b], [cc, d]])
}

/// Local image of the boundary generator `e` (acting on site 1).
pub fn boundary_block(p: &AlgebraParams) -> CMatrix {
    let bq = p.q_rep;
    let one = c(1.0, 0.0);
    let pref = -p.delta_e / (bq + bq.inv());
    match p.boundary.element(p.model) {
        Boundary::XxzM => two_by_two(-bq.inv(), one, one, -bq).scale(pref),
        Boundary::I => tl_generator(bq).scale(pref),
        Boundary::Ii => m_ii(bq).scale(pref),
        Boundary::Plus => (&tl_generator(bq) + &m_ii(bq)).scale(pref),
        Boundary::Iii => {
            let q1 = I * (I * bq).sqrt();
            let q2 = (I * bq).sqrt();
            let pref = p.delta_e / ((q1 + q1.inv()) * (q2 + q2.inv()));
            kron(&two_by_two(-q1, one, one, -q1.inv()), &two_by_two(-q2.inv(), one, one, -q2)).scale(pref)
        }
        Boundary::Trivial => unreachable!("element() never returns Trivial"),
    }
}

fn m_ii(bq: C64) -> CMatrix {
    let z = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    CMatrix::from_rows(&[
        [-bq, z, z, one],
        [z, z, z, z],
        [z, z, z, z],
        [one, z, z, -bq.inv()],
    ])
}

/// A blob-algebra representation on `(ℂ^d)^{⊗N}`.
#[derive(Debug, Clone)]
pub struct LocalRep {
    pub layout: SiteLayout,
    pub params: AlgebraParams,
    /// Local two-site generator.
    pub local_u: CMatrix,
    /// Local one-site boundary generator.
    pub local_e: CMatrix,
    /// Embedded `U₁ … U_{N−1}`.
    pub u_gens: Vec<CMatrix>,
    /// Embedded `e`.
    pub e_gen: CMatrix,
}

impl LocalRep {
    /// Representation for the model and boundary recorded in `params`.
    pub fn new(params: &AlgebraParams, n: usize) -> Result<Self, AlgebraError> {
        let u = match params.model {
            Model::Xxz => tl_generator(params.q),
            Model::Twin => theta_table(params),
        };
        Self::from_local(params, n, u, boundary_block(params))
    }

    /// Builds the embedded generators from explicit local matrices.
    pub fn from_local(params: &AlgebraParams, n: usize, local_u: CMatrix, local_e: CMatrix) -> Result<Self, AlgebraError> {
        if n < 2 {
            return Err(AlgebraError::TooFewSites(n));
        }
        let d = params.local_dim();
        let layout = SiteLayout::new(n, d);
        let u_gens = (1..n)
            .map(|l| embed(&local_u, l, 2, &layout))
            .collect::<Result<Vec<_>, _>>()?;
        let e_gen = embed(&local_e, 1, 1, &layout)?;
        Ok(Self {
            layout,
            params: *params,
            local_u,
            local_e,
            u_gens,
            e_gen,
        })
    }

    pub fn num_sites(&self) -> usize {
        self.layout.num_sites
    }

    pub fn dim(&self) -> usize {
        self.layout.quantum_dim()
    }
}

pub fn xxz_rep(params: &AlgebraParams, n: usize) -> Result<LocalRep, AlgebraError> {
    if params.model != Model::Xxz {
        return Err(AlgebraError::Incompatible { model: params.model, boundary: params.boundary });
    }
    LocalRep::new(params, n)
}

pub fn twin_rep(params: &AlgebraParams, n: usize) -> Result<LocalRep, AlgebraError> {
    if params.model != Model::Twin {
        return Err(AlgebraError::Incompatible { model: params.model, boundary: params.boundary });
    }
    LocalRep::new(params, n)
}

/// All Hecke, blob and quotient relations, each reported separately.
pub fn check_blob(rep: &LocalRep) -> Vec<Finding> {
    check_blob_with_kappa(rep, rep.params.kappa, "algebra.blob")
}

fn check_blob_with_kappa(rep: &LocalRep, kappa: C64, prefix: &str) -> Vec<Finding> {
    let p = &rep.params;
    let us = &rep.u_gens;
    let e = &rep.e_gen;
    let u1 = &us[0];
    let n_u = us.len();
    let mut out = Vec::new();
    let mut push = |name: &str, r: f64| out.push(Finding::holds(format!("{prefix}.{name}"), r, TOL_SINGLE));

    push("hecke-square", worst(us.iter().map(|u| resid(&u.matmul(u), &u.scale(p.delta)))));
    push(
        "hecke-braid",
        worst((0..n_u.saturating_sub(1)).map(|j| {
            let (a, b) = (&us[j], &us[j + 1]);
            resid(&(&a.matmul(b).matmul(a) - a), &(&b.matmul(a).matmul(b) - b))
        })),
    );
    push(
        "distant-commute",
        worst((0..n_u).flat_map(|i| (i + 2..n_u).map(move |j| (i, j))).map(|(i, j)| comm(&us[i], &us[j]))),
    );
    push("e-square", resid(&e.matmul(e), &e.scale(p.delta_e)));
    let u1e = u1.matmul(e);
    let eu1 = e.matmul(u1);
    push(
        "boundary-quadratic",
        resid(&(&u1e.matmul(&u1e) - &u1e.scale(kappa)), &(&eu1.matmul(&eu1) - &eu1.scale(kappa))),
    );
    push("e-commute", worst(us[1..].iter().map(|u| comm(u, e))));
    push(
        "tl-quotient",
        worst((0..n_u.saturating_sub(1)).flat_map(|j| {
            let (a, b) = (&us[j], &us[j + 1]);
            [resid(&a.matmul(b).matmul(a), a), resid(&b.matmul(a).matmul(b), b)]
        })),
    );
    push("blob-quotient", resid(&u1e.matmul(u1), &u1.scale(kappa)));
    out
}

/// The blob quotient relation with `κ` deliberately shifted by `0.1`.
pub fn blob_negative_control(rep: &LocalRep) -> Finding {
    let u1 = &rep.u_gens[0];
    let r = resid(&u1.matmul(&rep.e_gen).matmul(u1), &u1.scale(rep.params.kappa + 0.1));
    Finding::violated("algebra.blob.negative.kappa-shift", r, NEGATIVE_THRESHOLD)
}

/// Cross-validation of the 16×16 twin generator against its XXZ construction.
pub fn check_theta_transcription(p: &AlgebraParams) -> Finding {
    Finding::holds("algebra.theta.table-vs-construction", resid(&theta_table(p), &theta_from_xxz(p)), 1e-14)
}

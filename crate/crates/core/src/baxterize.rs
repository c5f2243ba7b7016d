//! Spectral-parameter matrices built from a blob representation: `R(λ)`,
//! `K(λ)`, their large-`λ` limits and their derivatives at `λ = 0`, plus the
//! functional equations they satisfy.

use crate::algebra::{make_params, AlgebraParams, Boundary, LocalRep, Model};
use crate::check::{resid, Finding, NEGATIVE_THRESHOLD, TOL_SINGLE};
use crate::tensor::{
    c, embed_legs, invert, kron, partial_transpose, permutation, scalar_fit, CMatrix, TensorError, C64,
};

const I: C64 = C64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        }
    }
}

/// Evaluators for `R`, `Ř`, `R̂`, `K` and related matrices of one model.
#[derive(Debug, Clone)]
pub struct LaxFactory {
    pub params: AlgebraParams,
    pub d: usize,
    /// Local two-site generator `π(U)`.
    pub u: CMatrix,
    /// Local boundary generator `π(e)`; unused when the boundary is trivial.
    pub e: CMatrix,
    pub p: CMatrix,
    trivial: bool,
}

impl LaxFactory {
    pub fn new(rep: &LocalRep) -> Self {
        Self::from_local(&rep.params, rep.local_u.clone(), rep.local_e.clone())
    }

    pub fn from_local(params: &AlgebraParams, u: CMatrix, e: CMatrix) -> Self {
        let d = params.local_dim();
        Self {
            params: *params,
            d,
            u,
            e,
            p: permutation(d),
            trivial: params.boundary == Boundary::Trivial,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.trivial
    }

    pub fn a(&self, l: C64) -> C64 {
        (self.params.mu * (l + I)).sinh()
    }

    pub fn b(&self, l: C64) -> C64 {
        (self.params.mu * l).sinh()
    }

    /// `a(λ)a(−λ)`, the unitarity scalar of `Ř(λ)Ř(−λ)`.
    pub fn unitarity_scalar(&self, l: C64) -> C64 {
        self.a(l) * self.a(-l)
    }

    /// `Ř(λ) = a(λ)I + b(λ)π(U)`.
    pub fn r_check(&self, l: C64) -> CMatrix {
        self.u.scale(self.b(l)).add_identity(self.a(l))
    }

    /// `R(λ) = P·Ř(λ)`.
    pub fn r(&self, l: C64) -> CMatrix {
        self.p.matmul(&self.r_check(l))
    }

    /// `R₂₁(λ) = P·R(λ)·P`.
    pub fn r21(&self, l: C64) -> CMatrix {
        self.p.matmul(&self.r(l)).matmul(&self.p)
    }

    /// `R̂(λ) = R(−λ)⁻¹·a(λ)a(−λ)`.
    pub fn r_hat(&self, l: C64) -> Result<CMatrix, TensorError> {
        Ok(invert(&self.r(-l))?.scale(self.unitarity_scalar(l)))
    }

    pub fn x(&self, l: C64) -> C64 {
        let p = &self.params;
        let mu = p.mu;
        -p.delta_e * (mu * (2.0 * l + I)).cosh() - p.kappa * (2.0 * mu * l).cosh() - (2.0 * I * mu * p.zeta).cosh()
    }

    pub fn y(&self, l: C64) -> C64 {
        2.0 * (2.0 * self.params.mu * l).sinh() * (I * self.params.mu).sinh()
    }

    /// `K(λ) = x(λ)I + y(λ)π(e)`, or the identity for a trivial boundary.
    pub fn k(&self, l: C64) -> CMatrix {
        if self.trivial {
            return CMatrix::identity(self.d);
        }
        self.e.scale(self.y(l)).add_identity(self.x(l))
    }

    /// `R′(0) = P(μ cosh(iμ) I + μ π(U))`.
    pub fn r_prime0(&self) -> CMatrix {
        let mu = self.params.mu;
        self.p.matmul(&self.u.scale(c(mu, 0.0)).add_identity(mu * (I * mu).cosh()))
    }

    /// `R̂′(0) = P·R′(0)·P`, from `R(0) = sinh(iμ)P` and an even unitarity scalar.
    pub fn r_hat_prime0(&self) -> CMatrix {
        self.p.matmul(&self.r_prime0()).matmul(&self.p)
    }

    /// `K′(0) = x′(0)I + y′(0)π(e)`.
    pub fn k_prime0(&self) -> CMatrix {
        if self.trivial {
            return CMatrix::zeros(self.d, self.d);
        }
        let p = &self.params;
        let s = (I * p.mu).sinh();
        let xp = -2.0 * p.mu * p.delta_e * s;
        let yp = 4.0 * p.mu * s;
        self.e.scale(yp).add_identity(xp)
    }

    /// Twist matrix entering the trace of the transfer matrix.
    pub fn twist(&self) -> CMatrix {
        let q = self.params.q;
        match self.params.model {
            Model::Xxz => CMatrix::diag(&[q, q.inv()]),
            Model::Twin => CMatrix::diag(&[I, q.inv(), q, -I]),
        }
    }

    /// `Ř^± = π(U) + q^{±1}`.
    pub fn r_check_limit(&self, s: Sign) -> CMatrix {
        let q = self.params.q;
        self.u.add_identity(match s {
            Sign::Plus => q,
            Sign::Minus => q.inv(),
        })
    }

    /// `R^± = P·Ř^±`.
    pub fn r_limit(&self, s: Sign) -> CMatrix {
        self.p.matmul(&self.r_check_limit(s))
    }

    /// `R̂^± = Ř^±·P`.
    pub fn r_hat_limit(&self, s: Sign) -> CMatrix {
        self.r_check_limit(s).matmul(&self.p)
    }

    /// `K^± = π(e) + c_±`, or the identity for a trivial boundary.
    pub fn k_limit(&self, s: Sign) -> CMatrix {
        if self.trivial {
            return CMatrix::identity(self.d);
        }
        self.e.add_identity(match s {
            Sign::Plus => self.params.c_plus,
            Sign::Minus => self.params.c_minus,
        })
    }
}

fn three_leg(f: &LaxFactory, op: &CMatrix, legs: [usize; 2]) -> CMatrix {
    embed_legs(op, &legs, f.d, 3)
}

/// `‖R₁₂(λ₁−λ₂)R₁₃(λ₁)R₂₃(λ₂) − R₂₃(λ₂)R₁₃(λ₁)R₁₂(λ₁−λ₂)‖`.
pub fn ybe_residual(f: &LaxFactory, l1: C64, l2: C64) -> f64 {
    let r12 = three_leg(f, &f.r(l1 - l2), [0, 1]);
    let r13 = three_leg(f, &f.r(l1), [0, 2]);
    let r23 = three_leg(f, &f.r(l2), [1, 2]);
    resid(&r12.matmul(&r13).matmul(&r23), &r23.matmul(&r13).matmul(&r12))
}

/// Reflection equation residual on `ℂ^d ⊗ ℂ^d` for the factory's own `K`.
pub fn re_residual(f: &LaxFactory, l1: C64, l2: C64) -> f64 {
    re_residual_with(f, &f.k(l1), &f.k(l2), l1, l2)
}

fn re_residual_with(f: &LaxFactory, k_l1: &CMatrix, k_l2: &CMatrix, l1: C64, l2: C64) -> f64 {
    let id = CMatrix::identity(f.d);
    let k1 = kron(k_l1, &id);
    let k2 = kron(&id, k_l2);
    let lhs = f.r(l1 - l2).matmul(&k1).matmul(&f.r21(l1 + l2)).matmul(&k2);
    let rhs = k2.matmul(&f.r(l1 + l2)).matmul(&k1).matmul(&f.r21(l1 - l2));
    resid(&lhs, &rhs)
}

fn tag(f: &LaxFactory) -> String {
    format!("{}.{}", f.params.model, f.params.boundary)
}

pub fn check_ybe(f: &LaxFactory, pairs: &[(C64, C64)]) -> Finding {
    let r = pairs.iter().map(|&(a, b)| ybe_residual(f, a, b)).fold(0.0, f64::max);
    Finding::holds(format!("ybe.{}", f.params.model), r, TOL_SINGLE)
}

/// YBE with one entry of the local generator perturbed by `10⁻²`: entry (4,7)
/// of the twin table, or entry (2,3) of the XXZ generator.
pub fn ybe_negative_control(f: &LaxFactory, pairs: &[(C64, C64)]) -> Finding {
    let mut u = f.u.clone();
    let (i, j) = match f.params.model {
        Model::Twin => (3, 6),
        Model::Xxz => (1, 2),
    };
    u[(i, j)] += 1e-2;
    let g = LaxFactory::from_local(&f.params, u, f.e.clone());
    let r = pairs.iter().map(|&(a, b)| ybe_residual(&g, a, b)).fold(0.0, f64::max);
    Finding::violated(format!("ybe.{}.negative.perturbed-entry", f.params.model), r, 1e-4)
}

pub fn check_re(f: &LaxFactory, pairs: &[(C64, C64)]) -> Finding {
    let r = pairs.iter().map(|&(a, b)| re_residual(f, a, b)).fold(0.0, f64::max);
    let zeta = f.params.zeta;
    Finding::holds(format!("re.{}.zeta={:.3}{:+.3}i", tag(f), zeta.re, zeta.im), r, TOL_SINGLE)
}

/// The reflection equation with `K = I`.
pub fn check_re_identity(f: &LaxFactory, pairs: &[(C64, C64)]) -> Finding {
    let id = CMatrix::identity(f.d);
    let r = pairs.iter().map(|&(a, b)| re_residual_with(f, &id, &id, a, b)).fold(0.0, f64::max);
    Finding::holds(format!("re.{}.identity-K", f.params.model), r, 1e-14)
}

/// Reflection equation with `κ` shifted away from its representation value.
/// A trivial boundary has no `κ` to shift, so its boundary element stands in.
pub fn re_negative_control(f: &LaxFactory, pairs: &[(C64, C64)]) -> Finding {
    let mut params = f.params;
    if f.is_trivial() {
        let p = f.params;
        params = make_params(p.mu, p.q_rep, p.zeta, p.model, p.boundary.element(p.model)).expect("valid parameters stay valid");
    }
    params.kappa += 0.1;
    let g = LaxFactory::from_local(&params, f.u.clone(), f.e.clone());
    let r = pairs.iter().map(|&(a, b)| re_residual(&g, a, b)).fold(0.0, f64::max);
    Finding::violated(format!("re.{}.negative.kappa-shift", tag(f)), r, NEGATIVE_THRESHOLD)
}

fn fit_identity(x: &CMatrix) -> f64 {
    scalar_fit(x, &CMatrix::identity(x.rows())).map(|(_, r)| r).unwrap_or(f64::INFINITY)
}

/// Unitarity, crossing, twist compatibility, braid limits and the
/// constant reflection relation.
pub fn check_conditions(f: &LaxFactory, lambdas: &[C64]) -> Vec<Finding> {
    let d = f.d;
    let m = f.twist();
    let id = CMatrix::identity(d);
    let m1 = kron(&m, &id);
    let m1_inv = invert(&m1).expect("twist is diagonal and unimodular");
    let mm = kron(&m, &m);
    let rho = f.params.crossing_rho;
    let model = f.params.model;

    let mut unitarity: f64 = 0.0;
    let mut crossing: f64 = 0.0;
    let mut twist_comm: f64 = 0.0;
    let mut rcheck_scalar: f64 = 0.0;
    let mut shifted_crossing = f64::INFINITY;
    for &l in lambdas {
        unitarity = unitarity.max(fit_identity(&f.r(l).matmul(&f.r21(-l))));
        let rt = partial_transpose(&f.r(l), 0, d, 2);
        let r21t = partial_transpose(&f.r21(-l - 2.0 * I * rho), 0, d, 2);
        crossing = crossing.max(fit_identity(&m1_inv.matmul(&rt).matmul(&m1).matmul(&r21t)));
        let off = partial_transpose(&f.r21(-l - 2.0 * I * (rho + 0.25)), 0, d, 2);
        shifted_crossing = shifted_crossing.min(fit_identity(&m1_inv.matmul(&rt).matmul(&m1).matmul(&off)));
        twist_comm = twist_comm.max(resid(&mm.matmul(&f.r(l)), &f.r(l).matmul(&mm)));
        let prod = f.r_check(l).matmul(&f.r_check(-l));
        rcheck_scalar = rcheck_scalar.max(resid(&prod, &CMatrix::identity(d * d).scale(f.unitarity_scalar(l))));
    }
    let mut out = vec![
        Finding::holds(format!("conditions.{model}.unitarity"), unitarity, TOL_SINGLE),
        Finding::holds(format!("conditions.{model}.crossing"), crossing, TOL_SINGLE),
        Finding::holds(format!("conditions.{model}.twist-symmetric"), resid(&m, &m.transpose()), 0.0),
        Finding::holds(format!("conditions.{model}.twist-commutes"), twist_comm, TOL_SINGLE),
        Finding::holds(format!("conditions.{model}.rcheck-inversion"), rcheck_scalar, TOL_SINGLE),
        Finding::holds(
            format!("conditions.{model}.limit-inverse"),
            resid(&f.r_check_limit(Sign::Plus).matmul(&f.r_check_limit(Sign::Minus)), &CMatrix::identity(d * d)),
            TOL_SINGLE,
        ),
    ];
    out.push(Finding::violated(format!("conditions.{model}.negative.shifted-crossing"), shifted_crossing, NEGATIVE_THRESHOLD));
    for s in Sign::BOTH {
        let (plain, hatted) = braid_residuals(f, s);
        out.push(Finding::holds(format!("conditions.{model}.braid.{}", s.label()), plain, TOL_SINGLE));
        out.push(Finding::holds(format!("conditions.{model}.braid-hat.{}", s.label()), hatted, TOL_SINGLE));
    }
    out
}

/// `Ř^±₁₂R^±₀₂R^±₀₁ = R^±₀₂R^±₀₁Ř^±₁₂` and `Ř^±₁₂R̂^±₀₁R̂^±₀₂ = R̂^±₀₁R̂^±₀₂Ř^±₁₂`.
pub fn braid_residuals(f: &LaxFactory, s: Sign) -> (f64, f64) {
    let rc12 = three_leg(f, &f.r_check_limit(s), [1, 2]);
    let r02 = three_leg(f, &f.r_limit(s), [0, 2]);
    let r01 = three_leg(f, &f.r_limit(s), [0, 1]);
    let h01 = three_leg(f, &f.r_hat_limit(s), [0, 1]);
    let h02 = three_leg(f, &f.r_hat_limit(s), [0, 2]);
    let plain = resid(&rc12.matmul(&r02).matmul(&r01), &r02.matmul(&r01).matmul(&rc12));
    let hatted = resid(&rc12.matmul(&h01).matmul(&h02), &h01.matmul(&h02).matmul(&rc12));
    (plain, hatted)
}

/// The spectral-parameter-free reflection relation of the limit matrices in
/// both its same-sign and mixed-sign forms, plus the numeric limit of `K`.
pub fn check_limits(f: &LaxFactory) -> Vec<Finding> {
    let d = f.d;
    let id = CMatrix::identity(d);
    let t = tag(f);
    let mut out = Vec::new();
    for s in Sign::BOTH {
        let k = f.k_limit(s);
        let k1 = kron(&k, &id);
        let k2 = kron(&id, &k);
        let (rp, rh) = (f.r_limit(s), f.r_hat_limit(s));
        let (rm, rhm) = (f.r_limit(s.flip()), f.r_hat_limit(s.flip()));
        let same = resid(&rp.matmul(&k1).matmul(&rh).matmul(&k2), &k2.matmul(&rp).matmul(&k1).matmul(&rh));
        let mixed = resid(&rm.matmul(&k1).matmul(&rh).matmul(&k2), &k2.matmul(&rp).matmul(&k1).matmul(&rhm));
        out.push(Finding::holds(format!("conditions.{t}.limit-reflection.{}", s.label()), same, TOL_SINGLE));
        out.push(Finding::holds(format!("conditions.{t}.limit-reflection-mixed.{}", s.label()), mixed, TOL_SINGLE));
        if !f.is_trivial() {
            let l = match s {
                Sign::Plus => c(30.0, 0.0),
                Sign::Minus => c(-30.0, 0.0),
            };
            let num = f.k(l).scale(f.y(l).inv());
            let r = (&num - &k).frobenius_norm();
            out.push(Finding::holds(format!("conditions.{t}.k-limit.{}", s.label()), r, 1e-8));
        }
    }
    out
}

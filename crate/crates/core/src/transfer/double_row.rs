use crate::algebra::{AlgebraError, AlgebraParams, LocalRep, Model};
use crate::baxterize::{LaxFactory, Sign};
use crate::tensor::{apply_left, apply_right, c, embed_legs, CMatrix, SiteLayout, C64};

/// Block labels of the double-row operator, indexed by auxiliary row and column.
const TWIN_LABELS: [[&str; 4]; 4] = [
    ["A", "B1", "B2", "B"],
    ["C1", "A1", "B5", "B3"],
    ["C2", "C5", "A2", "B4"],
    ["C", "C3", "C4", "D"],
];
const XXZ_LABELS: [[&str; 2]; 2] = [["A", "B"], ["C", "D"]];

pub fn block_label(model: Model, a: usize, b: usize) -> &'static str {
    match model {
        Model::Xxz => XXZ_LABELS[a][b],
        Model::Twin => TWIN_LABELS[a][b],
    }
}

/// The `d × d` operator blocks of a matrix on `ℂ^d ⊗ (ℂ^d)^{⊗N}`.
#[derive(Debug, Clone)]
pub struct Blocks {
    pub model: Model,
    pub entries: Vec<Vec<CMatrix>>,
}

impl Blocks {
    pub fn split(model: Model, full: &CMatrix) -> Self {
        let d = model.local_dim();
        let size = full.rows() / d;
        let entries = (0..d).map(|a| (0..d).map(|b| full.block(a, b, size)).collect()).collect();
        Self { model, entries }
    }

    pub fn at(&self, a: usize, b: usize) -> &CMatrix {
        &self.entries[a][b]
    }

    /// Block by its label (`"A"`, `"B5"`, …).
    pub fn get(&self, label: &str) -> &CMatrix {
        let d = self.model.local_dim();
        for a in 0..d {
            for b in 0..d {
                if block_label(self.model, a, b) == label {
                    return &self.entries[a][b];
                }
            }
        }
        panic!("no block labelled {label} for {}", self.model)
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &CMatrix)> {
        self.entries
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.iter().enumerate().map(move |(b, m)| ((a, b), m)))
    }
}

/// Open chain with the representation's right boundary and a trivial left one.
#[derive(Debug, Clone)]
pub struct DoubleRow {
    pub layout: SiteLayout,
    pub rep: LocalRep,
    pub lax: LaxFactory,
    pub twist: CMatrix,
}

impl DoubleRow {
    pub fn new(params: &AlgebraParams, n: usize) -> Result<Self, AlgebraError> {
        let rep = LocalRep::new(params, n)?;
        let lax = LaxFactory::new(&rep);
        Ok(Self {
            layout: SiteLayout::with_auxiliary(n, params.local_dim()),
            twist: lax.twist(),
            rep,
            lax,
        })
    }

    pub fn params(&self) -> &AlgebraParams {
        &self.lax.params
    }

    pub fn num_sites(&self) -> usize {
        self.layout.num_sites
    }

    pub fn d(&self) -> usize {
        self.layout.local_dim
    }

    /// `R_{0N}⋯R_{01} K_0 R̂_{01}⋯R̂_{0N}` with per-site factors.
    fn product(&self, r: &[&CMatrix], k: &CMatrix, r_hat: &[&CMatrix]) -> CMatrix {
        let (d, legs) = (self.d(), self.layout.num_legs());
        let mut t = embed_legs(k, &[0], d, legs);
        for i in 1..=self.num_sites() {
            t = apply_left(r[i - 1], &[0, i], d, legs, &t);
            t = apply_right(&t, r_hat[i - 1], &[0, i], d, legs);
        }
        t
    }

    /// The double-row product with the same two-site factors at every site.
    pub fn dressed(&self, r: &CMatrix, k: &CMatrix, r_hat: &CMatrix) -> CMatrix {
        let n = self.num_sites();
        self.product(&vec![r; n], k, &vec![r_hat; n])
    }

    /// The double-row operator on `ℂ^d ⊗ (ℂ^d)^{⊗N}`, auxiliary factor first.
    pub fn script_t(&self, l: C64) -> Result<CMatrix, AlgebraError> {
        Ok(self.dressed(&self.lax.r(l), &self.lax.k(l), &self.lax.r_hat(l)?))
    }

    /// `tr₀(M₀𝒯₀) = Σ_ab M_ab 𝒯_ba`.
    pub fn trace_twisted(&self, script: &CMatrix) -> CMatrix {
        let d = self.d();
        let size = script.rows() / d;
        let mut t = CMatrix::zeros(size, size);
        for a in 0..d {
            for b in 0..d {
                let m = self.twist[(a, b)];
                if m != c(0.0, 0.0) {
                    t = &t + &script.block(b, a, size).scale(m);
                }
            }
        }
        t
    }

    pub fn transfer_t(&self, l: C64) -> Result<CMatrix, AlgebraError> {
        Ok(self.trace_twisted(&self.script_t(l)?))
    }

    pub fn blocks(&self, l: C64) -> Result<Blocks, AlgebraError> {
        Ok(Blocks::split(self.params().model, &self.script_t(l)?))
    }

    /// `dt/dλ` at `λ = 0`, by the product rule over all `2N + 1` factors.
    pub fn hamiltonian(&self) -> Result<CMatrix, AlgebraError> {
        let zero = c(0.0, 0.0);
        let n = self.num_sites();
        let (r0, k0, h0) = (self.lax.r(zero), self.lax.k(zero), self.lax.r_hat(zero)?);
        let (r1, k1, h1) = (self.lax.r_prime0(), self.lax.k_prime0(), self.lax.r_hat_prime0());
        let rs = vec![&r0; n];
        let hs = vec![&h0; n];
        let mut total = self.product(&rs, &k1, &hs);
        for i in 0..n {
            let mut rd = rs.clone();
            rd[i] = &r1;
            total = &total + &self.product(&rd, &k0, &hs);
            let mut hd = hs.clone();
            hd[i] = &h1;
            total = &total + &self.product(&rs, &k0, &hd);
        }
        Ok(self.trace_twisted(&total))
    }

    /// Blocks of the `λ → ±∞` double-row operator built from the limit factors.
    pub fn asymptotic_blocks(&self, s: Sign) -> Blocks {
        let full = self.dressed(&self.lax.r_limit(s), &self.lax.k_limit(s), &self.lax.r_hat_limit(s));
        Blocks::split(self.params().model, &full)
    }

    /// Reflection equation for `𝒯` in two auxiliary copies:
    /// `R₁₂(λ₁−λ₂)𝒯₁(λ₁)R₂₁(λ₁+λ₂)𝒯₂(λ₂) = 𝒯₂(λ₂)R₁₂(λ₁+λ₂)𝒯₁(λ₁)R₂₁(λ₁−λ₂)`.
    pub fn reflection_residual(&self, l1: C64, l2: C64) -> Result<f64, AlgebraError> {
        let (d, n) = (self.d(), self.num_sites());
        let legs = n + 2;
        let quantum: Vec<usize> = (2..legs).collect();
        let on = |first: usize| -> Vec<usize> { std::iter::once(first).chain(quantum.iter().copied()).collect() };
        let t1 = embed_legs(&self.script_t(l1)?, &on(0), d, legs);
        let t2 = embed_legs(&self.script_t(l2)?, &on(1), d, legs);
        let r = |l: C64| embed_legs(&self.lax.r(l), &[0, 1], d, legs);
        let r21 = |l: C64| embed_legs(&self.lax.r21(l), &[0, 1], d, legs);
        let lhs = r(l1 - l2).matmul(&t1).matmul(&r21(l1 + l2)).matmul(&t2);
        let rhs = t2.matmul(&r(l1 + l2)).matmul(&t1).matmul(&r21(l1 - l2));
        Ok(crate::check::resid(&lhs, &rhs))
    }
}

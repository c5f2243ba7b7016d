use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::tensor::{c, C64};

use super::AlgebraError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Model {
    Xxz,
    Twin,
}

impl Model {
    pub fn local_dim(self) -> usize {
        match self {
            Model::Xxz => 2,
            Model::Twin => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Model::Xxz => "xxz",
            Model::Twin => "twin",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Model {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "xxz" => Ok(Model::Xxz),
            "twin" => Ok(Model::Twin),
            _ => Err(AlgebraError::UnknownTag(s.to_string())),
        }
    }
}

/// Right boundary. `Trivial` means `K = I`; the others select the boundary
/// element `e` and the corresponding `κ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Boundary {
    Trivial,
    XxzM,
    I,
    Ii,
    Plus,
    Iii,
}

impl Boundary {
    pub const TWIN: [Boundary; 4] = [Boundary::I, Boundary::Ii, Boundary::Plus, Boundary::Iii];

    pub fn name(self) -> &'static str {
        match self {
            Boundary::Trivial => "trivial",
            Boundary::XxzM => "xxz-m",
            Boundary::I => "i",
            Boundary::Ii => "ii",
            Boundary::Plus => "plus",
            Boundary::Iii => "iii",
        }
    }

    pub fn compatible_with(self, model: Model) -> bool {
        match self {
            Boundary::Trivial => true,
            Boundary::XxzM => model == Model::Xxz,
            _ => model == Model::Twin,
        }
    }

    /// The boundary element used for representation purposes; a trivial
    /// boundary still carries the model's default blob generator.
    pub fn element(self, model: Model) -> Boundary {
        match (self, model) {
            (Boundary::Trivial, Model::Xxz) => Boundary::XxzM,
            (Boundary::Trivial, Model::Twin) => Boundary::I,
            (b, _) => b,
        }
    }
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Boundary {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "trivial" => Ok(Boundary::Trivial),
            "xxz-m" => Ok(Boundary::XxzM),
            "i" => Ok(Boundary::I),
            "ii" => Ok(Boundary::Ii),
            "plus" | "+" => Ok(Boundary::Plus),
            "iii" => Ok(Boundary::Iii),
            _ => Err(AlgebraError::UnknownTag(s.to_string())),
        }
    }
}

/// Every scalar the constructions need, derived once from `(μ, Q, ζ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgebraParams {
    pub model: Model,
    pub boundary: Boundary,
    pub mu: f64,
    pub q: C64,
    pub delta: C64,
    pub q_rep: C64,
    pub zeta: C64,
    pub r: C64,
    pub r_hat: C64,
    pub delta_e: C64,
    pub kappa: C64,
    pub crossing_rho: f64,
    pub c_plus: C64,
    pub c_minus: C64,
}

const I: C64 = C64::new(0.0, 1.0);

/// `2i·sinh(iμ)`, the common denominator of the blob scalars.
fn blob_denominator(mu: f64) -> C64 {
    c(2.0, 0.0) * I * (I * mu).sinh()
}

/// `κ` for each boundary element, with the literal normalization of `e`.
pub fn kappa_for(boundary: Boundary, model: Model, mu: f64, q: C64, big_q: C64) -> C64 {
    let s = blob_denominator(mu);
    let qi = q.inv();
    let bqi = big_q.inv();
    let k_i = (qi * big_q + q * bqi) / s;
    let k_ii = (I * big_q - I * bqi) / s;
    match boundary.element(model) {
        Boundary::XxzM | Boundary::I => k_i,
        Boundary::Ii => k_ii,
        Boundary::Plus => k_i + k_ii,
        Boundary::Iii => (qi * big_q + q * bqi + 2.0) / s,
        Boundary::Trivial => unreachable!("element() never returns Trivial"),
    }
}

/// Builds and validates the parameter set.
pub fn make_params(mu: f64, q_rep: C64, zeta: C64, model: Model, boundary: Boundary) -> Result<AlgebraParams, AlgebraError> {
    if !mu.is_finite() || !q_rep.re.is_finite() || !q_rep.im.is_finite() || !zeta.re.is_finite() || !zeta.im.is_finite() {
        return Err(AlgebraError::NonFinite);
    }
    let turns = mu / PI;
    if (turns - turns.round()).abs() < 1e-12 {
        return Err(AlgebraError::DegenerateMu(mu));
    }
    if q_rep.norm() == 0.0 || (q_rep + q_rep.inv()).norm() < 1e-10 {
        return Err(AlgebraError::DegenerateQ(q_rep));
    }
    if !boundary.compatible_with(model) {
        return Err(AlgebraError::Incompatible { model, boundary });
    }
    let q = C64::from_polar(1.0, mu);
    let delta = -(q + q.inv());
    let r = I * (I * q).sqrt();
    let r_hat = (I * q).sqrt();
    let delta_e = -(q_rep + q_rep.inv()) / blob_denominator(mu);
    let kappa = kappa_for(boundary, model, mu, q, q_rep);
    let qmqi = q - q.inv();
    let (c_plus, c_minus) = if boundary == Boundary::Trivial {
        (c(1.0, 0.0), c(1.0, 0.0))
    } else {
        ((-delta_e * q - kappa) / qmqi, (delta_e * q.inv() + kappa) / qmqi)
    };
    Ok(AlgebraParams {
        model,
        boundary,
        mu,
        q,
        delta,
        q_rep,
        zeta,
        r,
        r_hat,
        delta_e,
        kappa,
        crossing_rho: 1.0,
        c_plus,
        c_minus,
    })
}

impl AlgebraParams {
    pub fn local_dim(&self) -> usize {
        self.model.local_dim()
    }

    /// Canonical text rendering used for digests and notes.
    pub fn canonical(&self) -> String {
        format!(
            "model={};boundary={};mu={:.17e};Q={:.17e},{:.17e};zeta={:.17e},{:.17e}",
            self.model, self.boundary, self.mu, self.q_rep.re, self.q_rep.im, self.zeta.re, self.zeta.im
        )
    }
}

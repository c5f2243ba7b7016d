//! Parameters, blob-algebra representations and quantum-group charge towers.

pub mod params;
pub mod qgroup;
pub mod reps;

pub use params::{make_params, AlgebraParams, Boundary, Model};
pub use qgroup::{
    boundary_charge, boundary_charge_with_x, local_charge, qgroup_rep, tower, ChargeConstant, ChargeTower,
    QGroupName, QGroupRep,
};
pub use reps::{boundary_block, check_blob, theta_from_xxz, theta_table, tl_generator, twin_rep, xxz_rep, LocalRep};

use thiserror::Error;

use crate::tensor::{TensorError, C64};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("mu = {0} is a multiple of pi; sinh(i mu) vanishes")]
    DegenerateMu(f64),
    #[error("Q = {0} gives Q + 1/Q = 0; boundary normalization is singular")]
    DegenerateQ(C64),
    #[error("parameters must be finite")]
    NonFinite,
    #[error("boundary {boundary} is incompatible with model {model}")]
    Incompatible { model: Model, boundary: Boundary },
    #[error("unknown tag {0:?}")]
    UnknownTag(String),
    #[error("at least 2 sites are required, got {0}")]
    TooFewSites(usize),
    #[error("charge constant {constant} does not belong to representation {rep}")]
    ChargeMismatch { rep: QGroupName, constant: &'static str },
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

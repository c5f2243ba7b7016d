//! Open-chain transfer matrices and the checks built on them.

pub mod double_row;
pub mod duality;
pub mod exchange;
pub mod integrability;
pub mod intertwiner;
pub mod spectrum;
pub mod symmetry;

pub use double_row::{block_label, Blocks, DoubleRow};
pub use duality::{check_duality, gram_rank_diagnostic, GramRanks};
pub use exchange::{check_exchange, relations_for, Relation};
pub use integrability::{check_transfer, Outcome};
pub use intertwiner::{check_reflection_intertwiner, intertwiner_residual};
pub use spectrum::{compare_spectra, degeneracies, spectrum};
pub use symmetry::{check_k_intertwining, check_symmetry, symmetry_table};

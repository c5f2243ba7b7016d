//! Numerical verification of boundary Temperley–Lieb (blob) algebra spin
//! chains: representations, baxterized `R`/`K` matrices, open transfer
//! matrices, quantum-group charges, and a report-producing check runner.

pub mod algebra;
pub mod baxterize;
pub mod check;
pub mod config;
pub mod report;
pub mod sampling;
pub mod suite;
pub mod tensor;
pub mod transfer;

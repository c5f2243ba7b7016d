//! Individual numerical findings produced by the checkers.

use crate::tensor::{eq_residual, CMatrix};

/// Tolerance for an identity evaluated from a handful of local factors.
pub const TOL_SINGLE: f64 = 1e-10;
/// Tolerance for identities built from long products (monodromy, towers).
pub const TOL_CHAINED: f64 = 1e-9;
/// A negative control passes when its residual exceeds this.
pub const NEGATIVE_THRESHOLD: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expect {
    /// Passes when `residual ≤ tolerance`.
    Holds,
    /// Negative control: passes when `residual > tolerance`.
    Violated,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Finding {
    pub id: String,
    pub residual: f64,
    pub tolerance: f64,
    pub expect: Expect,
    pub notes: String,
}

impl Finding {
    pub fn holds(id: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self {
            id: id.into(),
            residual,
            tolerance,
            expect: Expect::Holds,
            notes: String::new(),
        }
    }

    pub fn violated(id: impl Into<String>, residual: f64, threshold: f64) -> Self {
        Self {
            id: id.into(),
            residual,
            tolerance: threshold,
            expect: Expect::Violated,
            notes: "negative-control".into(),
        }
    }

    pub fn with_notes(mut self, notes: impl Into<String>) -> Self {
        self.notes = notes.into();
        self
    }

    pub fn passed(&self) -> bool {
        match self.expect {
            Expect::Holds => self.residual <= self.tolerance,
            Expect::Violated => self.residual > self.tolerance,
        }
    }
}

/// Residual of `lhs = rhs` for matrices known to have matching shapes.
pub(crate) fn resid(lhs: &CMatrix, rhs: &CMatrix) -> f64 {
    eq_residual(lhs, rhs).expect("residual of mismatched shapes")
}

/// Residual of `[a, b] = 0`.
pub(crate) fn comm(a: &CMatrix, b: &CMatrix) -> f64 {
    resid(&a.matmul(b), &b.matmul(a))
}

/// Largest residual over a list, 0 when empty.
pub(crate) fn worst(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

use nalgebra::DMatrix;

use super::matrix::{CMatrix, C64};
use super::TensorError;

const PIVOT_REL: f64 = 1e-12;
const MAX_EIG_DIM: usize = 4096;

fn require_square(a: &CMatrix, op: &'static str) -> Result<usize, TensorError> {
    if a.is_square() {
        Ok(a.rows())
    } else {
        Err(TensorError::NotSquare { op, dims: a.dims() })
    }
}

fn row_scales(a: &CMatrix) -> Vec<f64> {
    (0..a.rows())
        .map(|i| a.row(i).iter().map(|z| z.norm()).fold(0.0, f64::max))
        .collect()
}

/// Gauss–Jordan inversion with partial pivoting.
///
/// A pivot smaller than `1e-12` times the largest entry of its original row
/// is treated as a numerical zero.
pub fn invert(a: &CMatrix) -> Result<CMatrix, TensorError> {
    let n = require_square(a, "invert")?;
    let mut scale = row_scales(a);
    let mut work = a.clone();
    let mut inv = CMatrix::identity(n);
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| work[(i, col)].norm().total_cmp(&work[(j, col)].norm()))
            .unwrap_or(col);
        let pv = work[(piv, col)];
        if pv.norm() <= PIVOT_REL * scale[piv] || scale[piv] == 0.0 {
            return Err(TensorError::Singular {
                column: col,
                pivot: pv.norm(),
                scale: scale[piv],
            });
        }
        if piv != col {
            swap_rows(&mut work, piv, col);
            swap_rows(&mut inv, piv, col);
            scale.swap(piv, col);
        }
        let rp = C64::new(1.0, 0.0) / pv;
        for j in 0..n {
            work[(col, j)] *= rp;
            inv[(col, j)] *= rp;
        }
        for i in 0..n {
            if i == col {
                continue;
            }
            let f = work[(i, col)];
            if f.re == 0.0 && f.im == 0.0 {
                continue;
            }
            for j in 0..n {
                let wc = work[(col, j)];
                let ic = inv[(col, j)];
                work[(i, j)] -= f * wc;
                inv[(i, j)] -= f * ic;
            }
        }
    }
    Ok(inv)
}

fn swap_rows(m: &mut CMatrix, a: usize, b: usize) {
    let cols = m.cols();
    let data = m.as_mut_slice();
    for j in 0..cols {
        data.swap(a * cols + j, b * cols + j);
    }
}

/// Determinant via LU with partial pivoting. Returns 0 for exactly singular input.
pub fn determinant(a: &CMatrix) -> Result<C64, TensorError> {
    let n = require_square(a, "determinant")?;
    let mut w = a.clone();
    let mut det = C64::new(1.0, 0.0);
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| w[(i, col)].norm().total_cmp(&w[(j, col)].norm()))
            .unwrap_or(col);
        let pv = w[(piv, col)];
        if pv.norm() == 0.0 {
            return Ok(C64::new(0.0, 0.0));
        }
        if piv != col {
            swap_rows(&mut w, piv, col);
            det = -det;
        }
        det *= pv;
        for i in col + 1..n {
            let f = w[(i, col)] / pv;
            for j in col..n {
                let v = w[(col, j)];
                w[(i, j)] -= f * v;
            }
        }
    }
    Ok(det)
}

fn to_nalgebra(a: &CMatrix) -> DMatrix<C64> {
    DMatrix::from_row_slice(a.rows(), a.cols(), a.as_slice())
}

// Machine epsilon stalls the deflation test on exactly degenerate spectra.
const SCHUR_EPS: f64 = 1e-14;

/// Eigenvalues of a square matrix (complex Schur form), unordered.
pub fn eigenvalues(a: &CMatrix) -> Result<Vec<C64>, TensorError> {
    let n = require_square(a, "eigenvalues")?;
    if n > MAX_EIG_DIM {
        return Err(TensorError::TooLarge(n));
    }
    if !a.is_finite() {
        return Err(TensorError::NoConvergence);
    }
    let schur = nalgebra::linalg::Schur::try_new(to_nalgebra(a), SCHUR_EPS, 100 * n.max(10))
        .ok_or(TensorError::NoConvergence)?;
    let ev = schur.eigenvalues().ok_or(TensorError::NoConvergence)?;
    Ok(ev.iter().copied().collect())
}

/// Number of singular values above `rel_tol` times the largest one.
pub fn numerical_rank(a: &CMatrix, rel_tol: f64) -> usize {
    let sv = to_nalgebra(a).singular_values();
    let max = sv.iter().copied().fold(0.0, f64::max);
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * max).count()
}

/// Least-squares projection of `target` onto `span(basis)` (Frobenius inner product).
///
/// Returns the coefficients and `‖target − Σ cᵢ·basisᵢ‖_F / ‖target‖_F`.
pub fn span_residual(target: &CMatrix, basis: &[CMatrix]) -> Result<(Vec<C64>, f64), TensorError> {
    for b in basis {
        if b.dims() != target.dims() {
            return Err(TensorError::DimensionMismatch {
                op: "span_residual",
                left: target.dims(),
                right: b.dims(),
            });
        }
    }
    let k = basis.len();
    let gram = CMatrix::from_fn(k, k, |i, j| basis[i].inner(&basis[j]));
    let rhs: Vec<C64> = basis.iter().map(|b| b.inner(target)).collect();
    let coeffs: Vec<C64> = if k == 0 {
        Vec::new()
    } else {
        let gi = invert(&gram)?;
        (0..k).map(|i| (0..k).map(|j| gi[(i, j)] * rhs[j]).sum()).collect()
    };
    let mut fit = CMatrix::zeros(target.rows(), target.cols());
    for (cf, b) in coeffs.iter().zip(basis) {
        fit = &fit + &b.scale(*cf);
    }
    let nt = target.frobenius_norm();
    let resid = if nt == 0.0 {
        0.0
    } else {
        (target - &fit).frobenius_norm() / nt
    };
    Ok((coeffs, resid))
}

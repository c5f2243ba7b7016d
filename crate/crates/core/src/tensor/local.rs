use super::matrix::{CMatrix, C64};

/// Offsets (within a full multi-index) of every digit assignment on `legs`,
/// ordered so that `legs[0]` is the most significant digit of the local operator.
fn leg_offsets(legs: &[usize], d: usize, n_legs: usize) -> Vec<usize> {
    let k = legs.len();
    let local = d.pow(k as u32);
    (0..local)
        .map(|a| {
            let mut rem = a;
            let mut off = 0;
            for (pos, &leg) in legs.iter().enumerate() {
                let s = d.pow((k - 1 - pos) as u32);
                off += (rem / s) * d.pow((n_legs - 1 - leg) as u32);
                rem %= s;
            }
            off
        })
        .collect()
}

/// Base indices: every full multi-index whose digits on `legs` are zero.
fn base_indices(legs: &[usize], d: usize, n_legs: usize) -> Vec<usize> {
    let others: Vec<usize> = (0..n_legs).filter(|l| !legs.contains(l)).collect();
    leg_offsets(&others, d, n_legs)
}

fn check_legs(op: &CMatrix, legs: &[usize], d: usize, n_legs: usize) {
    let local = d.pow(legs.len() as u32);
    assert_eq!(op.dims(), (local, local), "local operator size does not match legs");
    for (i, &l) in legs.iter().enumerate() {
        assert!(l < n_legs, "leg {l} out of range");
        assert!(!legs[..i].contains(&l), "repeated leg {l}");
    }
}

/// `(op acting on legs) · target`, without forming the embedded operator.
///
/// Legs are 0-based; `op`'s tensor factors are matched to `legs` in order.
pub fn apply_left(op: &CMatrix, legs: &[usize], d: usize, n_legs: usize, target: &CMatrix) -> CMatrix {
    check_legs(op, legs, d, n_legs);
    let dim = d.pow(n_legs as u32);
    assert_eq!(target.rows(), dim, "apply_left: target has wrong row count");
    let cols = target.cols();
    let offs = leg_offsets(legs, d, n_legs);
    let bases = base_indices(legs, d, n_legs);
    let local = offs.len();
    let src = target.as_slice();
    let mut out = CMatrix::zeros(dim, cols);
    let dst = out.as_mut_slice();
    for &base in &bases {
        for a in 0..local {
            let orow = (base + offs[a]) * cols;
            for b in 0..local {
                let w = op[(a, b)];
                if w.re == 0.0 && w.im == 0.0 {
                    continue;
                }
                let irow = (base + offs[b]) * cols;
                for j in 0..cols {
                    dst[orow + j] += w * src[irow + j];
                }
            }
        }
    }
    out
}

/// `target · (op acting on legs)`.
pub fn apply_right(target: &CMatrix, op: &CMatrix, legs: &[usize], d: usize, n_legs: usize) -> CMatrix {
    check_legs(op, legs, d, n_legs);
    let dim = d.pow(n_legs as u32);
    assert_eq!(target.cols(), dim, "apply_right: target has wrong column count");
    let rows = target.rows();
    let offs = leg_offsets(legs, d, n_legs);
    let bases = base_indices(legs, d, n_legs);
    let local = offs.len();
    let mut out = CMatrix::zeros(rows, dim);
    let mut gathered = vec![C64::new(0.0, 0.0); local];
    for r in 0..rows {
        let row = target.row(r);
        for &base in &bases {
            for (b, g) in gathered.iter_mut().enumerate() {
                *g = row[base + offs[b]];
            }
            for b in 0..local {
                let mut acc = C64::new(0.0, 0.0);
                for (a, g) in gathered.iter().enumerate() {
                    acc += g * op[(a, b)];
                }
                out[(r, base + offs[b])] = acc;
            }
        }
    }
    out
}

/// Full embedding of a local operator on the given legs of `n_legs` factors.
pub fn embed_legs(op: &CMatrix, legs: &[usize], d: usize, n_legs: usize) -> CMatrix {
    apply_left(op, legs, d, n_legs, &CMatrix::identity(d.pow(n_legs as u32)))
}

/// Transpose on a single leg (0-based) of an operator on `n_legs` factors.
pub fn partial_transpose(op: &CMatrix, leg: usize, d: usize, n_legs: usize) -> CMatrix {
    let dim = d.pow(n_legs as u32);
    assert_eq!(op.dims(), (dim, dim));
    let s = d.pow((n_legs - 1 - leg) as u32);
    let digit = |idx: usize| (idx / s) % d;
    CMatrix::from_fn(dim, dim, |i, j| {
        let (di, dj) = (digit(i), digit(j));
        let ii = i - di * s + dj * s;
        let jj = j - dj * s + di * s;
        op[(ii, jj)]
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{c, kron, permutation};

    fn sample(n: usize, seed: f64) -> CMatrix {
        CMatrix::from_fn(n, n, |i, j| c((i as f64 * 1.3 + j as f64 * seed).sin(), (i as f64 - seed * j as f64).cos()))
    }

    #[test]
    fn embed_adjacent_matches_kron() {
        let op = sample(4, 0.7);
        let i2 = CMatrix::identity(2);
        assert_eq!(embed_legs(&op, &[0, 1], 2, 3), kron(&op, &i2));
        assert_eq!(embed_legs(&op, &[1, 2], 2, 3), kron(&i2, &op));
    }

    #[test]
    fn reversed_legs_is_swap_conjugation() {
        let op = sample(9, 0.3);
        let p = permutation(3);
        assert_eq!(embed_legs(&op, &[1, 0], 3, 2), p.matmul(&op).matmul(&p));
    }

    #[test]
    fn apply_left_right_agree_with_dense_product() {
        let op = sample(4, 1.1);
        let t = sample(8, 0.2);
        let full = embed_legs(&op, &[2, 0], 2, 3);
        assert!(apply_left(&op, &[2, 0], 2, 3, &t).max_abs_diff(&full.matmul(&t)) < 1e-13);
        assert!(apply_right(&t, &op, &[2, 0], 2, 3).max_abs_diff(&t.matmul(&full)) < 1e-13);
    }

    #[test]
    fn partial_transpose_of_product() {
        let a = sample(2, 0.4);
        let b = sample(2, 0.9);
        let pt = partial_transpose(&kron(&a, &b), 0, 2, 2);
        assert_eq!(pt, kron(&a.transpose(), &b));
    }
}

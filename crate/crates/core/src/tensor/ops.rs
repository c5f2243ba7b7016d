use super::matrix::{CMatrix, C64};
use super::TensorError;

/// Shape of a tensor-product space `(ℂ^d)^{⊗N}`, optionally preceded by one
/// auxiliary factor of the same local dimension.
///
/// Sites are 1-based. Site 1 is the factor adjacent to the boundary generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SiteLayout {
    pub num_sites: usize,
    pub local_dim: usize,
    pub auxiliary: bool,
}

impl SiteLayout {
    pub fn new(num_sites: usize, local_dim: usize) -> Self {
        assert!(num_sites >= 1 && local_dim >= 1, "layout dimensions must be positive");
        Self {
            num_sites,
            local_dim,
            auxiliary: false,
        }
    }

    pub fn with_auxiliary(num_sites: usize, local_dim: usize) -> Self {
        Self {
            auxiliary: true,
            ..Self::new(num_sites, local_dim)
        }
    }

    /// Number of tensor legs, counting the auxiliary factor.
    pub fn num_legs(&self) -> usize {
        self.num_sites + usize::from(self.auxiliary)
    }

    /// Dimension of the quantum (non-auxiliary) part.
    pub fn quantum_dim(&self) -> usize {
        self.local_dim.pow(self.num_sites as u32)
    }

    pub fn total_dim(&self) -> usize {
        self.local_dim.pow(self.num_legs() as u32)
    }

    /// 0-based leg index of a 1-based site.
    pub fn leg_of_site(&self, site: usize) -> usize {
        site - 1 + usize::from(self.auxiliary)
    }
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ra, ca) = a.dims();
    let (rb, cb) = b.dims();
    let mut out = CMatrix::zeros(ra * rb, ca * cb);
    for i in 0..ra {
        for j in 0..ca {
            let aij = a[(i, j)];
            if aij.re == 0.0 && aij.im == 0.0 {
                continue;
            }
            for k in 0..rb {
                for l in 0..cb {
                    out[(i * rb + k, j * cb + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Left-to-right Kronecker product of a non-empty list.
pub fn kron_all(factors: &[&CMatrix]) -> CMatrix {
    let mut it = factors.iter();
    let first = (*it.next().expect("kron_all of empty list")).clone();
    it.fold(first, |acc, f| kron(&acc, f))
}

/// `I^{⊗(first−1)} ⊗ op ⊗ I^{⊗(N−first−span+1)}` on the quantum part of `layout`.
pub fn embed(
    op: &CMatrix,
    first_site: usize,
    span: usize,
    layout: &SiteLayout,
) -> Result<CMatrix, TensorError> {
    let d = layout.local_dim;
    let n = layout.num_sites;
    let local = d.pow(span as u32);
    if op.dims() != (local, local) {
        return Err(TensorError::DimensionMismatch {
            op: "embed",
            left: op.dims(),
            right: (local, local),
        });
    }
    if span == 0 || first_site == 0 || first_site + span > n + 1 {
        return Err(TensorError::SiteOutOfRange {
            first: first_site,
            span,
            num_sites: n,
        });
    }
    let left = CMatrix::identity(d.pow((first_site - 1) as u32));
    let right = CMatrix::identity(d.pow((n + 1 - first_site - span) as u32));
    Ok(kron(&kron(&left, op), &right))
}

/// Swap operator on `ℂ^d ⊗ ℂ^d`.
pub fn permutation(d: usize) -> CMatrix {
    let mut p = CMatrix::zeros(d * d, d * d);
    for a in 0..d {
        for b in 0..d {
            p[(b * d + a, a * d + b)] = C64::new(1.0, 0.0);
        }
    }
    p
}

/// Reorders tensor legs: output leg `k` is input leg `perm[k]` (both 1-based).
///
/// Equivalent to `Π·op·Π⁻¹` with `Π` the leg-reordering unitary.
pub fn leg_permute(
    op: &CMatrix,
    perm: &[usize],
    layout: &SiteLayout,
) -> Result<CMatrix, TensorError> {
    let n = perm.len();
    let mut seen = vec![false; n];
    for &p in perm {
        if p == 0 || p > n || seen[p - 1] {
            return Err(TensorError::NotAPermutation(perm.to_vec()));
        }
        seen[p - 1] = true;
    }
    let d = layout.local_dim;
    let dim = d.pow(n as u32);
    if n != layout.num_legs() || op.dims() != (dim, dim) {
        return Err(TensorError::DimensionMismatch {
            op: "leg_permute",
            left: op.dims(),
            right: (dim, dim),
        });
    }
    // stride of input leg j (0-based), most significant leg first
    let stride = |leg: usize| d.pow((n - 1 - leg) as u32);
    let map: Vec<usize> = (0..dim)
        .map(|out_idx| {
            let mut rem = out_idx;
            let mut in_idx = 0;
            for (k, &src) in perm.iter().enumerate() {
                let digit = rem / stride(k);
                rem %= stride(k);
                in_idx += digit * stride(src - 1);
            }
            in_idx
        })
        .collect();
    Ok(CMatrix::from_fn(dim, dim, |i, j| op[(map[i], map[j])]))
}

/// `‖LHS − RHS‖_F / max(1, ‖LHS‖_F, ‖RHS‖_F)`.
pub fn eq_residual(lhs: &CMatrix, rhs: &CMatrix) -> Result<f64, TensorError> {
    let diff = lhs.try_sub(rhs)?;
    let scale = 1f64
        .max(lhs.frobenius_norm())
        .max(rhs.frobenius_norm());
    Ok(diff.frobenius_norm() / scale)
}

/// Normalized commutator residual `‖AB − BA‖_F / max(1, ‖AB‖_F, ‖BA‖_F)`.
pub fn comm_residual(a: &CMatrix, b: &CMatrix) -> Result<f64, TensorError> {
    if !a.is_square() || a.dims() != b.dims() {
        return Err(TensorError::DimensionMismatch {
            op: "comm_residual",
            left: a.dims(),
            right: b.dims(),
        });
    }
    eq_residual(&a.matmul(b), &b.matmul(a))
}

/// q-commutator `[X, Y]_q = XY − q·YX`.
pub fn q_comm(x: &CMatrix, y: &CMatrix, q: C64) -> CMatrix {
    &x.matmul(y) - &y.matmul(x).scale(q)
}

/// Least-squares fit `A ≈ c·B`. Returns `c` and `‖A − cB‖_F / ‖A‖_F` (0 when `A = 0`).
pub fn scalar_fit(a: &CMatrix, b: &CMatrix) -> Result<(C64, f64), TensorError> {
    if a.dims() != b.dims() {
        return Err(TensorError::DimensionMismatch {
            op: "scalar_fit",
            left: a.dims(),
            right: b.dims(),
        });
    }
    let bb = b.inner(b);
    if bb.re == 0.0 {
        return Err(TensorError::ZeroReference);
    }
    let coef = b.inner(a) / bb;
    let na = a.frobenius_norm();
    if na == 0.0 {
        return Ok((coef, 0.0));
    }
    let resid = a.try_sub(&b.scale(coef))?.frobenius_norm() / na;
    Ok((coef, resid))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::c;

    fn sigma_plus() -> CMatrix {
        CMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]])
    }

    #[test]
    fn kron_identities() {
        let i2 = CMatrix::identity(2);
        assert_eq!(kron(&i2, &i2), CMatrix::identity(4));
        let d = CMatrix::diag(&[c(2.0, 0.0), c(0.0, 3.0)]);
        assert_eq!(
            kron(&d, &i2),
            CMatrix::diag(&[c(2.0, 0.0), c(2.0, 0.0), c(0.0, 3.0), c(0.0, 3.0)])
        );
    }

    #[test]
    fn kron_sigma_plus_sigma_minus_single_entry() {
        let sp = sigma_plus();
        let sm = sp.transpose();
        let k = kron(&sp, &sm);
        for i in 0..4 {
            for j in 0..4 {
                let expect = if (i, j) == (1, 2) { 1.0 } else { 0.0 };
                assert_eq!(k[(i, j)], c(expect, 0.0), "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn embed_cases() {
        let l3 = SiteLayout::new(3, 2);
        assert_eq!(embed(&CMatrix::identity(4), 1, 2, &l3).unwrap(), CMatrix::identity(8));
        let u = CMatrix::from_fn(4, 4, |i, j| c(i as f64, j as f64));
        let l2 = SiteLayout::new(2, 2);
        assert_eq!(embed(&u, 1, 2, &l2).unwrap(), u);
        let e = embed(&u, 2, 2, &l3).unwrap();
        assert_eq!(e, kron(&CMatrix::identity(2), &u));
    }

    #[test]
    fn embed_rejects_bad_input() {
        let l3 = SiteLayout::new(3, 2);
        assert!(embed(&CMatrix::identity(4), 3, 2, &l3).is_err());
        assert!(embed(&CMatrix::identity(8), 1, 2, &l3).is_err());
        assert!(embed(&CMatrix::identity(2), 0, 1, &l3).is_err());
    }

    #[test]
    fn permutation_small_cases() {
        assert_eq!(permutation(1), CMatrix::identity(1));
        let p2 = permutation(2);
        assert_eq!(p2.matmul(&p2), CMatrix::identity(4));
        assert_eq!(p2, p2.transpose());
        let p4 = permutation(4);
        // fixed points e_a ⊗ e_a
        assert_eq!(p4.trace(), c(4.0, 0.0));
    }

    #[test]
    fn leg_permute_swap_matches_permutation() {
        let layout = SiteLayout::new(2, 3);
        let a = CMatrix::from_fn(9, 9, |i, j| c((i * 9 + j) as f64, (i as f64) - (j as f64)));
        let p = permutation(3);
        let conj = p.matmul(&a).matmul(&p);
        assert_eq!(leg_permute(&a, &[2, 1], &layout).unwrap(), conj);
        assert_eq!(leg_permute(&a, &[1, 2], &layout).unwrap(), a);
    }

    #[test]
    fn leg_permute_rejects_non_permutation() {
        let layout = SiteLayout::new(2, 2);
        let a = CMatrix::identity(4);
        assert!(matches!(
            leg_permute(&a, &[1, 1], &layout),
            Err(TensorError::NotAPermutation(_))
        ));
        assert!(leg_permute(&a, &[1, 3], &layout).is_err());
    }

    #[test]
    fn comm_residual_examples() {
        let sx = CMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]);
        let sz = CMatrix::from_real_rows(&[[1.0, 0.0], [0.0, -1.0]]);
        assert_eq!(comm_residual(&sx, &sx).unwrap(), 0.0);
        let d1 = CMatrix::diag(&[c(1.0, 2.0), c(3.0, 0.0)]);
        let d2 = CMatrix::diag(&[c(0.5, 0.0), c(-1.0, 1.0)]);
        assert_eq!(comm_residual(&d1, &d2).unwrap(), 0.0);
        // ‖[σx,σz]‖ = ‖−2iσy‖ = 2√2, ‖σxσz‖ = ‖σzσx‖ = √2
        let r = comm_residual(&sx, &sz).unwrap();
        assert!((r - 2.0).abs() < 1e-15, "got {r}");
        assert!(comm_residual(&sx, &CMatrix::identity(3)).is_err());
    }

    #[test]
    fn scalar_fit_examples() {
        let i2 = CMatrix::identity(2);
        let (coef, res) = scalar_fit(&i2.scale_real(2.0), &i2).unwrap();
        assert_eq!((coef, res), (c(2.0, 0.0), 0.0));
        let (coef, res) = scalar_fit(&CMatrix::zeros(2, 2), &i2).unwrap();
        assert_eq!((coef, res), (c(0.0, 0.0), 0.0));
        let eps = 1e-3;
        let sx = CMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]);
        let a = &i2 + &sx.scale_real(eps);
        let (coef, res) = scalar_fit(&a, &i2).unwrap();
        let expect = eps * sx.frobenius_norm() / a.frobenius_norm();
        assert!((coef - c(1.0, 0.0)).norm() < 1e-15);
        assert!((res - expect).abs() < 1e-15);
        assert_eq!(scalar_fit(&i2, &CMatrix::zeros(2, 2)), Err(TensorError::ZeroReference));
    }
}

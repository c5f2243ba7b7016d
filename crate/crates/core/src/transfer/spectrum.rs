//! Diagnostic eigenvalue dumps.

use std::cmp::Ordering;

use crate::tensor::{eigenvalues, CMatrix, TensorError, C64};

fn lex(a: &C64, b: &C64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Eigenvalues sorted by `(Re, Im)`.
pub fn spectrum(h: &CMatrix) -> Result<Vec<C64>, TensorError> {
    let mut ev = eigenvalues(h)?;
    ev.sort_by(lex);
    Ok(ev)
}

/// Largest distance between matched eigenvalues: each value of the sorted
/// first list takes the nearest unused value of the second.
pub fn compare_spectra(a: &[C64], b: &[C64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut left = a.to_vec();
    left.sort_by(lex);
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for x in left {
        let (j, dist) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .expect("lengths match");
        used[j] = true;
        worst = worst.max(dist);
    }
    worst
}

/// Clusters of numerically equal eigenvalues in a sorted spectrum, as
/// `(representative, multiplicity)`.
pub fn degeneracies(sorted: &[C64], tol: f64) -> Vec<(C64, usize)> {
    let scale = sorted.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let mut out: Vec<(C64, usize)> = Vec::new();
    let mut used = vec![false; sorted.len()];
    for i in 0..sorted.len() {
        if used[i] {
            continue;
        }
        let mut count = 0;
        for j in i..sorted.len() {
            if !used[j] && (sorted[j] - sorted[i]).norm() <= tol * scale {
                used[j] = true;
                count += 1;
            }
        }
        out.push((sorted[i], count));
    }
    out
}

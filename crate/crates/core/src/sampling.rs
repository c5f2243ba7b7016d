//! Seeded spectral-parameter samples.
//!
//! Points are drawn uniformly from the disk `|λ| ≤ 2` and rejected when any of
//! the combinations entering `R`, `R(−λ)⁻¹` or `K` comes close to a zero of
//! `sinh μz`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::tensor::C64;

const RADIUS: f64 = 2.0;
const MIN_SINH: f64 = 1e-3;
const I: C64 = C64::new(0.0, 1.0);

fn draw(rng: &mut ChaCha8Rng) -> C64 {
    let r = RADIUS * rng.random::<f64>().sqrt();
    let th = std::f64::consts::TAU * rng.random::<f64>();
    C64::from_polar(r, th)
}

fn clear_of_zeros(mu: f64, zs: &[C64]) -> bool {
    zs.iter()
        .flat_map(|&z| [z, z + I, z - I])
        .all(|z| (mu * z).sinh().norm() >= MIN_SINH)
}

/// `count` single samples for the coupling `μ`.
pub fn sample_lambdas(seed: u64, count: usize, mu: f64) -> Vec<C64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let l = draw(&mut rng);
        if clear_of_zeros(mu, &[l, 2.0 * l]) {
            out.push(l);
        }
    }
    out
}

/// `count` pairs `(λ₁, λ₂)`; also keeps `λ₁ ± λ₂` clear of zeros.
pub fn sample_pairs(seed: u64, count: usize, mu: f64) -> Vec<(C64, C64)> {
    // A distinct stream so pairs do not reuse the single samples.
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let a = draw(&mut rng);
        let b = draw(&mut rng);
        if clear_of_zeros(mu, &[a, b, a + b, a - b, 2.0 * a, 2.0 * b]) {
            out.push((a, b));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_inside_disk() {
        let a = sample_pairs(42, 10, 0.7);
        assert_eq!(a, sample_pairs(42, 10, 0.7));
        assert_ne!(a, sample_pairs(43, 10, 0.7));
        for (x, y) in a {
            assert!(x.norm() <= RADIUS && y.norm() <= RADIUS);
        }
    }

    #[test]
    fn rejects_points_near_zeros() {
        for l in sample_lambdas(7, 200, 1.1) {
            assert!((1.1 * l).sinh().norm() >= MIN_SINH);
            assert!((1.1 * (l - I)).sinh().norm() >= MIN_SINH);
        }
    }
}

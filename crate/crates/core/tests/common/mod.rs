#![allow(dead_code)]

use pls_geometry::model::{exp_correlation, spectrum_from_gram, EigenSpectrum, SquaredObservation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Spectrum of the exponential correlation matrix with rate 1/3, m = 5.
pub fn table_spectrum() -> EigenSpectrum {
    spectrum_from_gram(&exp_correlation(5, 1.0 / 3.0).unwrap(), 1e-10).unwrap()
}

/// Smallest eigenvalue in U(0.5, 1), successive ratios in U(1.2, 2).
pub fn random_spectrum(rng: &mut impl Rng, m: usize) -> EigenSpectrum {
    let mut lam = vec![0.0; m];
    lam[m - 1] = rng.random_range(0.5..1.0);
    for i in (0..m - 1).rev() {
        lam[i] = lam[i + 1] * rng.random_range(1.2..2.0);
    }
    EigenSpectrum::new(lam).unwrap()
}

/// Strictly positive ψ with log-uniform entries in [e⁻², e²].
pub fn random_psi(rng: &mut impl Rng, m: usize) -> SquaredObservation {
    let v = (0..m).map(|_| rng.random_range(-2.0f64..2.0).exp()).collect();
    SquaredObservation::new(v, 1e-12).unwrap()
}

/// ψ supported on `support` only.
pub fn random_psi_on(rng: &mut impl Rng, m: usize, support: &[usize]) -> SquaredObservation {
    let mut v = vec![0.0; m];
    for &i in support {
        v[i] = rng.random_range(-2.0f64..2.0).exp();
    }
    SquaredObservation::new(v, 1e-12).unwrap()
}

/// A random instance `(λ, ψ, n)` with m in 3..=8 and 1 ≤ n < m.
pub fn random_instance(rng: &mut impl Rng) -> (EigenSpectrum, SquaredObservation, usize) {
    let m = rng.random_range(3..=8);
    let n = rng.random_range(1..m);
    let s = random_spectrum(rng, m);
    let psi = random_psi(rng, m);
    (s, psi, n)
}

/// Sorted random subset of `0..m` with `k` elements.
pub fn random_subset(rng: &mut impl Rng, m: usize, k: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..m).collect();
    for i in 0..k {
        let j = rng.random_range(i..m);
        idx.swap(i, j);
    }
    let mut out = idx[..k].to_vec();
    out.sort_unstable();
    out
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

//! The cone `C_z = {ψ ≥ 0 : VᵀZψ = 0}` of squared observations sharing a
//! relative residual `z`, its extremal rays, and support reduction.

use itertools::Itertools;
use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::geometry::sign::{SignPattern, SignSymbol};
use crate::linalg::{self, divided_difference_weights};
use crate::model::{vandermonde_nodes, zero_threshold, EigenSpectrum, PlsConfig, SquaredObservation};
use crate::shrinkage::{log_pi, shrinkage_direct};
use crate::subset::IndexSubset;

/// Extremal rays of `C_z`, one per support in lexicographic order.
#[derive(Debug, Clone, PartialEq)]
pub struct RayFan {
    pub signature: SignPattern,
    /// Lengths of the sign-concordant sections of `z`.
    pub sections: Vec<usize>,
    pub supports: Vec<IndexSubset>,
    /// Non-negative, unit-sum rays with `n + 1` nonzero entries.
    pub rays: Vec<Vec<f64>>,
    /// Largest `‖VᵀZd‖ / (‖VᵀZ‖ ‖d‖)` over the rays.
    pub max_residual: f64,
}

impl RayFan {
    pub fn k_z(&self) -> usize {
        self.rays.len()
    }

    /// Rays as the columns of an `m × k_z` matrix.
    pub fn matrix(&self) -> DMatrix<f64> {
        let m = self.signature.len();
        DMatrix::from_fn(m, self.rays.len(), |i, k| self.rays[k][i])
    }
}

/// `VᵀZ`, an `n × m` matrix.
fn constraint_matrix(lambda: &[f64], z: &[f64], n: usize) -> DMatrix<f64> {
    let v = vandermonde_nodes(lambda, n);
    DMatrix::from_fn(n, lambda.len(), |k, i| v[(i, k)] * z[i])
}

/// Largest row residual `|Σ c_ki d_i|`, each relative to `Σ |c_ki d_i|`.
fn relative_residual(c: &DMatrix<f64>, d: &DVector<f64>) -> f64 {
    (0..c.nrows())
        .map(|k| {
            let (sum, abs) = (0..c.ncols()).fold((0.0, 0.0), |(s, a), i| {
                let t = c[(k, i)] * d[i];
                (s + t, a + t.abs())
            });
            if abs == 0.0 { 0.0 } else { sum.abs() / abs }
        })
        .fold(0.0, f64::max)
}

/// Checks that `z` is strict, has `n` sign changes and ends positive.
pub fn admissible_signature(z: &[f64], n: usize, zero_tol: f64) -> Result<SignPattern> {
    let pattern = SignPattern::from_values(z, zero_tol);
    if let Some(i) = pattern.symbols().iter().position(|s| *s == SignSymbol::Zero) {
        return Err(Error::InadmissibleSignature(format!(
            "z has a zero entry at position {}",
            i + 1
        )));
    }
    let changes = pattern.change_positions().unwrap_or_default().len();
    if changes != n {
        return Err(Error::InadmissibleSignature(format!(
            "z has {changes} sign changes, expected {n}"
        )));
    }
    if pattern.symbols().last() != Some(&SignSymbol::Plus) {
        return Err(Error::InadmissibleSignature("last entry of z must be positive".into()));
    }
    Ok(pattern)
}

/// Ray supported on `tau` (`n + 1` indices): the null vector of `VᵀZ S_τ`,
/// `ψ̃_j ∝ w_j / z_j` with divided-difference weights `w`, scaled to unit sum.
fn ray_on(lambda: &[f64], z: &[f64], tau: &IndexSubset) -> Vec<f64> {
    let nodes = tau.select(lambda);
    let w = divided_difference_weights(&nodes);
    let raw: Vec<f64> = tau.indices().iter().zip(&w).map(|(&j, wj)| wj / z[j]).collect();
    let total: f64 = raw.iter().sum();
    let mut ray = vec![0.0; lambda.len()];
    for (&j, r) in tau.indices().iter().zip(&raw) {
        ray[j] = r / total;
    }
    ray
}

/// Extremal rays of `C_z`: one per choice of a single index in each
/// sign-concordant section of `z`, `k_z = ∏ l_j` in total.
///
/// A ray with a non-positive entry is reported as
/// [`Error::PositivityFailure`].
pub fn inverse_rays(spectrum: &EigenSpectrum, z: &[f64], n: usize, cfg: &PlsConfig) -> Result<RayFan> {
    let m = spectrum.dim();
    if z.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: z.len(),
        });
    }
    PlsConfig { n, ..*cfg }.validate(m)?;
    let signature = admissible_signature(z, n, cfg.zero_tol)?;
    let sections = signature.sections().expect("admissible patterns are strict");
    let count: u128 = sections.iter().map(|&l| l as u128).product();
    if count > cfg.enum_cap as u128 {
        return Err(Error::CapExceeded {
            count,
            cap: cfg.enum_cap,
        });
    }

    let lambda = spectrum.values();
    let constraint = constraint_matrix(lambda, z, n);
    let mut starts = Vec::with_capacity(sections.len());
    let mut pos = 0;
    for &l in &sections {
        starts.push(pos..pos + l);
        pos += l;
    }

    let mut supports = Vec::new();
    let mut rays = Vec::new();
    let mut max_residual = 0.0f64;
    for choice in starts.into_iter().multi_cartesian_product() {
        let tau = IndexSubset::new(choice, m)?;
        let ray = ray_on(lambda, z, &tau);
        if tau.indices().iter().any(|&j| !(ray[j] > 0.0)) {
            return Err(Error::PositivityFailure { support: tau.to_string() });
        }
        let res = relative_residual(&constraint, &DVector::from_column_slice(&ray));
        max_residual = max_residual.max(res);
        supports.push(tau);
        rays.push(ray);
    }
    if !(max_residual <= 1e-8) {
        return Err(Error::CrossCheckFailure {
            deviation: max_residual,
            tolerance: 1e-8,
        });
    }
    Ok(RayFan {
        signature,
        sections,
        supports,
        rays,
        max_residual,
    })
}

/// Non-negative coordinates of `ψ` on the rays of a fan.
#[derive(Debug, Clone, PartialEq)]
pub struct RayDecomposition {
    pub coefficients: Vec<f64>,
    pub residual: f64,
}

/// Decomposes `ψ ∈ C_z` as `Σ t_k d_k` with `t ≥ 0` by non-negative least
/// squares. Fails with [`Error::NotInCone`] when `‖VᵀZψ‖` exceeds
/// `1e−6·‖VᵀZ‖‖ψ‖`.
pub fn ray_membership(
    spectrum: &EigenSpectrum,
    psi: &SquaredObservation,
    z: &[f64],
    fan: &RayFan,
) -> Result<RayDecomposition> {
    let m = spectrum.dim();
    if psi.len() != m || z.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: if psi.len() != m { psi.len() } else { z.len() },
        });
    }
    let n = fan.sections.len() - 1;
    // z = 1 − ω carries absolute error of order ε|ω|, so each row is
    // measured against Σ λ_i^k (1 + |z_i|) ψ_i
    let lambda = spectrum.values();
    let v = vandermonde_nodes(lambda, n);
    let target = DVector::from_column_slice(psi.values());
    let res = (0..n)
        .map(|k| {
            let (sum, scale) = (0..m).fold((0.0, 0.0), |(s, a), i| {
                let t = v[(i, k)] * target[i];
                (s + t * z[i], a + t.abs() * (1.0 + z[i].abs()))
            });
            if scale == 0.0 { 0.0 } else { sum.abs() / scale }
        })
        .fold(0.0, f64::max);
    if !(res <= 1e-6) {
        return Err(Error::NotInCone(res));
    }
    let (t, residual) = linalg::nnls(&fan.matrix(), &target);
    Ok(RayDecomposition {
        coefficients: t.iter().copied().collect(),
        residual,
    })
}

/// Moves `ψ` inside `C_{z(ψ)}` until at most `n + 1` entries remain nonzero.
///
/// Each step takes the null direction of `VᵀZ` on the first `n + 1` support
/// indices and walks until one entry reaches zero.
pub fn caratheodory_reduce(
    spectrum: &EigenSpectrum,
    psi: &SquaredObservation,
    n: usize,
    cfg: &PlsConfig,
) -> Result<SquaredObservation> {
    let z = shrinkage_direct(spectrum, psi, n, cfg)?.z;
    let lambda = spectrum.values();
    let z_zero = zero_threshold(&z, cfg.zero_tol);
    let mut x = psi.values().to_vec();
    let mut support = psi.support().clone();

    while support.len() > n + 1 {
        let lead = IndexSubset::new(support.indices()[..n + 1].to_vec(), spectrum.dim())?;
        let mut eta = vec![0.0; x.len()];
        if let Some(&j) = lead.indices().iter().find(|&&j| z[j].abs() <= z_zero) {
            eta[j] = 1.0;
        } else {
            let w = divided_difference_weights(&lead.select(lambda));
            for (&j, wj) in lead.indices().iter().zip(&w) {
                eta[j] = wj / z[j];
            }
        }
        if !eta.iter().any(|&e| e > 0.0) {
            eta.iter_mut().for_each(|e| *e = -*e);
        }
        let (hit, step) = lead
            .indices()
            .iter()
            .filter(|&&j| eta[j] > 0.0)
            .map(|&j| (j, x[j] / eta[j]))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("direction has a positive entry");
        for &j in lead.indices() {
            x[j] -= step * eta[j];
            if x[j] < 0.0 {
                x[j] = 0.0;
            }
        }
        x[hit] = 0.0;
        let before = support.len();
        support = IndexSubset::new((0..x.len()).filter(|&i| x[i] > 0.0).collect(), spectrum.dim())?;
        if support.len() >= before {
            return Err(Error::StallDetected(before));
        }
    }
    Ok(SquaredObservation::from_clean(x))
}

/// `ψ_i = π_{τ_i} / c_i` with `τ_i = [m] − {i}`, the observation whose
/// corner weights for `n = m − 1` equal `c`.
pub fn hull_inverse(spectrum: &EigenSpectrum, c: &[f64]) -> Result<SquaredObservation> {
    let m = spectrum.dim();
    if c.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: c.len(),
        });
    }
    if let Some((index, &value)) = c.iter().enumerate().find(|(_, &v)| !(v > 0.0)) {
        return Err(Error::NonPositiveWeight { index, value });
    }
    let total: f64 = c.iter().sum();
    if (total - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidConfig(format!("weights sum to {total}, expected 1")));
    }
    let full = IndexSubset::full(m);
    let psi = (0..m)
        .map(|i| (log_pi(spectrum.values(), full.without(i).indices()) - c[i].ln()).exp())
        .collect();
    Ok(SquaredObservation::from_clean(psi))
}

/// Number of extremal rays for a strict signature, `∏ l_j`.
pub fn ray_count(pattern: &SignPattern) -> Option<u128> {
    pattern
        .sections()
        .map(|s| s.iter().map(|&l| l as u128).product())
}

//! Rotated regression model: spectra, observations, Krylov/Vandermonde
//! construction and the reference PLS fit.
//!
//! All quantities live on the principal axes of the regressor matrix. The
//! observation `y` is the rotated response, `λ` the eigenvalues of the Gram
//! matrix, and the PLS estimator with `n` directions is
//! `β̂ = K (Kᵀ Λ K)⁻¹ Kᵀ y` with Krylov matrix `K = (y, Λy, …, Λⁿ⁻¹y)`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::linalg;
use crate::subset::IndexSubset;

/// Minimum relative gap `(λ_i − λ_{i+1}) / λ_i` accepted between consecutive
/// eigenvalues.
pub const DEFAULT_DISTINCTNESS_TOL: f64 = 1e-10;

/// Strictly decreasing positive eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSpectrum {
    lambda: Vec<f64>,
}

impl EigenSpectrum {
    pub fn new(lambda: Vec<f64>) -> Result<Self> {
        Self::with_tolerance(lambda, DEFAULT_DISTINCTNESS_TOL)
    }

    pub fn with_tolerance(lambda: Vec<f64>, distinct_tol: f64) -> Result<Self> {
        if lambda.len() < 2 {
            return Err(Error::InvalidDimension(format!(
                "spectrum needs at least 2 eigenvalues, got {}",
                lambda.len()
            )));
        }
        if let Some(i) = lambda.iter().position(|l| !l.is_finite() || *l <= 0.0) {
            return Err(Error::InvalidSpectrum(format!(
                "λ_{} = {} is not a positive finite number",
                i + 1,
                lambda[i]
            )));
        }
        for i in 0..lambda.len() - 1 {
            let gap = (lambda[i] - lambda[i + 1]) / lambda[i];
            if lambda[i] < lambda[i + 1] {
                return Err(Error::InvalidSpectrum(format!(
                    "eigenvalues must be decreasing: λ_{} < λ_{}",
                    i + 1,
                    i + 2
                )));
            }
            if gap < distinct_tol {
                return Err(Error::RepeatedEigenvalue { index: i + 1, gap });
            }
        }
        Ok(Self { lambda })
    }

    /// Sorts into decreasing order before validating.
    pub fn from_unsorted(mut lambda: Vec<f64>, distinct_tol: f64) -> Result<Self> {
        lambda.sort_by(|a, b| b.total_cmp(a));
        Self::with_tolerance(lambda, distinct_tol)
    }

    pub fn values(&self) -> &[f64] {
        &self.lambda
    }

    pub fn dim(&self) -> usize {
        self.lambda.len()
    }

    /// `λ_1 / λ_m`, the 2-norm condition number of the Gram matrix.
    pub fn condition_number(&self) -> f64 {
        self.lambda[0] / self.lambda[self.lambda.len() - 1]
    }

    /// Copy restricted to the given indices (still decreasing).
    pub fn restrict(&self, indices: &[usize]) -> Result<Self> {
        Self::new(indices.iter().map(|&i| self.lambda[i]).collect())
    }
}

/// Threshold below which an entry of `x` counts as zero.
pub(crate) fn zero_threshold(x: &[f64], zero_tol: f64) -> f64 {
    zero_tol * x.iter().fold(0.0f64, |a, v| a.max(v.abs()))
}

/// Rotated response vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservationVector {
    y: Vec<f64>,
    cardinality: usize,
    zero_tol: f64,
}

impl ObservationVector {
    pub fn new(y: Vec<f64>, zero_tol: f64) -> Result<Self> {
        if let Some(i) = y.iter().position(|v| !v.is_finite()) {
            return Err(Error::Parse(format!("y_{} is not finite", i + 1)));
        }
        let thr = zero_threshold(&y, zero_tol);
        let cardinality = y.iter().filter(|v| v.abs() > thr).count();
        Ok(Self {
            y,
            cardinality,
            zero_tol,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.y
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    pub fn cardinality(&self) -> usize {
        self.cardinality
    }

    /// `ψ = y²` with the same zero pattern.
    pub fn squared(&self) -> SquaredObservation {
        let thr = zero_threshold(&self.y, self.zero_tol);
        let psi = self
            .y
            .iter()
            .map(|&v| if v.abs() > thr { v * v } else { 0.0 })
            .collect();
        SquaredObservation::from_clean(psi)
    }
}

/// Squared observation `ψ = y²` together with its support.
#[derive(Debug, Clone, PartialEq)]
pub struct SquaredObservation {
    psi: Vec<f64>,
    support: IndexSubset,
}

impl SquaredObservation {
    /// Entries at or below `zero_tol · max ψ` are set to exactly zero.
    pub fn new(psi: Vec<f64>, zero_tol: f64) -> Result<Self> {
        if let Some(i) = psi.iter().position(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::Parse(format!(
                "ψ_{} = {} must be a non-negative finite number",
                i + 1,
                psi[i]
            )));
        }
        let thr = zero_threshold(&psi, zero_tol);
        let psi = psi
            .into_iter()
            .map(|v| if v > thr { v } else { 0.0 })
            .collect();
        Ok(Self::from_clean(psi))
    }

    pub(crate) fn from_clean(psi: Vec<f64>) -> Self {
        let m = psi.len();
        let idx = psi
            .iter()
            .enumerate()
            .filter(|(_, v)| **v > 0.0)
            .map(|(i, _)| i)
            .collect();
        let support = IndexSubset::from_sorted_unchecked(idx, m);
        Self { psi, support }
    }

    pub fn values(&self) -> &[f64] {
        &self.psi
    }

    pub fn len(&self) -> usize {
        self.psi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.psi.is_empty()
    }

    pub fn support(&self) -> &IndexSubset {
        &self.support
    }

    pub fn cardinality(&self) -> usize {
        self.support.len()
    }

    /// Copy with entry `k` replaced.
    pub fn with_entry(&self, k: usize, value: f64) -> Self {
        let mut psi = self.psi.clone();
        psi[k] = value.max(0.0);
        Self::from_clean(psi)
    }
}

/// Numerical settings shared by the PLS routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlsConfig {
    /// Number of PLS directions.
    pub n: usize,
    /// Entries with magnitude at or below `zero_tol` times the largest
    /// magnitude are treated as zero.
    pub zero_tol: f64,
    /// Accepted relative residual for linear solves and route cross-checks.
    pub solve_tol: f64,
    /// Largest `C(m, n)` the subset enumerations will visit.
    pub enum_cap: u64,
}

impl PlsConfig {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            ..Self::default()
        }
    }

    pub fn validate(&self, m: usize) -> Result<()> {
        if self.n == 0 || self.n >= m {
            return Err(Error::InvalidConfig(format!(
                "number of directions must satisfy 1 ≤ n < m = {m}, got n = {}",
                self.n
            )));
        }
        if !(self.zero_tol > 0.0) || !(self.solve_tol > 0.0) || self.enum_cap == 0 {
            return Err(Error::InvalidConfig(
                "tolerances must be positive and enum_cap ≥ 1".into(),
            ));
        }
        Ok(())
    }
}

impl Default for PlsConfig {
    fn default() -> Self {
        Self {
            n: 1,
            zero_tol: 1e-12,
            solve_tol: 1e-8,
            enum_cap: 1_000_000,
        }
    }
}

/// Eigenvalues of a symmetric positive definite Gram matrix, in decreasing
/// order.
pub fn spectrum_from_gram(gram: &DMatrix<f64>, tol: f64) -> Result<EigenSpectrum> {
    let (r, c) = gram.shape();
    if r != c {
        return Err(Error::DimensionMismatch {
            expected: r,
            found: c,
        });
    }
    let scale = gram.amax().max(f64::MIN_POSITIVE);
    let asym = (gram - gram.transpose()).amax();
    if asym > tol * scale {
        return Err(Error::NonSymmetric(asym));
    }
    let sym = (gram + gram.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let mut lambda: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    lambda.sort_by(|a, b| b.total_cmp(a));
    let smallest = *lambda.last().expect("non-empty");
    if smallest <= tol * scale {
        return Err(Error::NotPositiveDefinite(smallest));
    }
    EigenSpectrum::new(lambda)
}

/// Correlation matrix `ρ_ij = exp(−rate·|i − j|)`.
pub fn exp_correlation(m: usize, rate: f64) -> Result<DMatrix<f64>> {
    if m < 2 {
        return Err(Error::InvalidDimension(format!("m must be ≥ 2, got {m}")));
    }
    if !(rate > 0.0) || !rate.is_finite() {
        return Err(Error::InvalidConfig(format!(
            "rate must be positive, got {rate}"
        )));
    }
    Ok(DMatrix::from_fn(m, m, |i, j| {
        (-rate * (i as f64 - j as f64).abs()).exp()
    }))
}

/// Vandermonde matrix on arbitrary nodes with columns `x⁰, x¹, …, x^{cols−1}`,
/// powers built by repeated multiplication.
pub(crate) fn vandermonde_nodes(nodes: &[f64], cols: usize) -> DMatrix<f64> {
    let mut v = DMatrix::zeros(nodes.len(), cols);
    for (i, &x) in nodes.iter().enumerate() {
        let mut p = 1.0;
        for k in 0..cols {
            v[(i, k)] = p;
            p *= x;
        }
    }
    v
}

/// The `m × n` Vandermonde matrix `(1, Λ1, …, Λⁿ⁻¹1)`.
pub fn vandermonde(spectrum: &EigenSpectrum, n: usize) -> Result<DMatrix<f64>> {
    let m = spectrum.dim();
    if n == 0 || n > m {
        return Err(Error::InvalidDimension(format!(
            "Vandermonde needs 1 ≤ n ≤ m = {m}, got {n}"
        )));
    }
    Ok(vandermonde_nodes(spectrum.values(), n))
}

/// Krylov matrix `K = (y, Λy, …, Λⁿ⁻¹y)`, built as `diag(y)·V`.
pub fn krylov_matrix(
    spectrum: &EigenSpectrum,
    y: &ObservationVector,
    n: usize,
) -> Result<DMatrix<f64>> {
    let m = spectrum.dim();
    if y.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: y.len(),
        });
    }
    if n == 0 || n >= m {
        return Err(Error::InvalidDimension(format!(
            "Krylov matrix needs 1 ≤ n < m = {m}, got {n}"
        )));
    }
    let mut k = vandermonde_nodes(spectrum.values(), n);
    for (i, &yi) in y.values().iter().enumerate() {
        k.row_mut(i).scale_mut(yi);
    }
    Ok(k)
}

/// Output of [`pls_fit`].
#[derive(Debug, Clone, PartialEq)]
pub struct PlsFit {
    pub beta_hat: Vec<f64>,
    pub y_hat: Vec<f64>,
    pub residual: Vec<f64>,
    /// Oblique projection `P = ΛK(KᵀΛK)⁻¹Kᵀ` with `ŷ = P y`.
    pub projection: DMatrix<f64>,
}

/// PLS estimator in the rotated model, computed literally from the Krylov
/// matrix with a pivoted LU solve of `KᵀΛK`.
pub fn pls_fit(
    spectrum: &EigenSpectrum,
    y: &ObservationVector,
    n: usize,
    cfg: &PlsConfig,
) -> Result<PlsFit> {
    let m = spectrum.dim();
    if y.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: y.len(),
        });
    }
    PlsConfig { n, ..*cfg }.validate(m)?;
    if y.cardinality() < n {
        return Err(Error::InsufficientSupport {
            support: y.cardinality(),
            required: n,
        });
    }
    let k = krylov_matrix(spectrum, y, n)?;
    let lam = DVector::from_column_slice(spectrum.values());
    let lam_k = DMatrix::from_fn(m, n, |i, j| lam[i] * k[(i, j)]);
    let gram = k.transpose() * &lam_k;
    let yv = DVector::from_column_slice(y.values());
    let rhs = k.transpose() * &yv;
    let coef = linalg::lu_solve(&gram, &rhs)
        .ok_or_else(|| Error::SingularSystem("KᵀΛK has an exactly zero pivot".into()))?;
    let be = linalg::backward_error(&gram, &coef, &rhs);
    if !be.is_finite() || be > cfg.solve_tol {
        return Err(Error::SingularSystem(format!(
            "KᵀΛK solve residual {be:.3e} exceeds {:.1e}",
            cfg.solve_tol
        )));
    }
    let beta = &k * &coef;
    let y_hat = beta.component_mul(&lam);
    let residual = &yv - &y_hat;

    let gram_inv_kt = gram
        .clone()
        .lu()
        .solve(&k.transpose())
        .ok_or_else(|| Error::SingularSystem("KᵀΛK is singular".into()))?;
    let projection = lam_k * gram_inv_kt;

    Ok(PlsFit {
        beta_hat: beta.iter().copied().collect(),
        y_hat: y_hat.iter().copied().collect(),
        residual: residual.iter().copied().collect(),
        projection,
    })
}

//! Shrinkage factors `ω`, relative residuals `z = 1 − ω` and coordinates
//! `α` on `span(ΛV)`.
//!
//! Three independent routes are provided:
//!
//! * [`shrinkage_direct`] solves `VᵀΨΛV α = Vᵀψ` (in an orthonormal
//!   polynomial basis, see [`crate::krylov`]);
//! * [`shrinkage_average`] forms the convex combination of corner shrinkages
//!   `Σ p_τ ω_(τ)` with weights `p_τ ∝ ψ^τ π_τ`;
//! * [`corner_shrinkage`] evaluates the closed product formula for
//!   observations supported on exactly `n` coordinates.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::krylov::OrthoBasis;
use crate::linalg::{self, kahan_weighted_sum, KahanSum};
use crate::model::{vandermonde_nodes, EigenSpectrum, PlsConfig, SquaredObservation};
use crate::subset::{self, check_enum_cap, IndexSubset};

/// Jointly consistent shrinkage vector, relative residual and coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct ShrinkageTriple {
    pub omega: Vec<f64>,
    pub z: Vec<f64>,
    pub alpha: Vec<f64>,
}

impl ShrinkageTriple {
    fn from_omega(omega: Vec<f64>, alpha: Vec<f64>) -> Self {
        let z = omega.iter().map(|w| 1.0 - w).collect();
        Self { omega, z, alpha }
    }
}

/// Positive weight `π_τ = λ^τ ∏_{j<i ∈ τ} (λ_i − λ_j)²`.
#[derive(Debug, Clone, PartialEq)]
pub struct CornerWeight {
    pub tau: IndexSubset,
    pub pi: f64,
    pub log_pi: f64,
}

fn check_dims(spectrum: &EigenSpectrum, psi: &SquaredObservation, n: usize, cfg: &PlsConfig) -> Result<()> {
    let m = spectrum.dim();
    if psi.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: psi.len(),
        });
    }
    PlsConfig { n, ..*cfg }.validate(m)?;
    if psi.cardinality() < n {
        return Err(Error::InsufficientSupport {
            support: psi.cardinality(),
            required: n,
        });
    }
    Ok(())
}

/// Shrinkage from its definition `ω = ΛV(VᵀΨΛV)⁻¹VᵀΨ1`.
///
/// The `n × n` system is solved by pivoted LU after a change of basis to the
/// polynomials orthonormal under `ψ`; the returned `α` is mapped back to
/// monomial coordinates.
pub fn shrinkage_direct(
    spectrum: &EigenSpectrum,
    psi: &SquaredObservation,
    n: usize,
    cfg: &PlsConfig,
) -> Result<ShrinkageTriple> {
    check_dims(spectrum, psi, n, cfg)?;
    let lambda = spectrum.values();
    let basis = OrthoBasis::new(lambda, psi.values(), n)?;
    let mut rhs = DVector::zeros(n);
    rhs[0] = basis.mass_sqrt;
    let coef = linalg::lu_solve(&basis.jacobi, &rhs)
        .ok_or_else(|| Error::SingularSystem("Jacobi matrix is singular".into()))?;
    let be = linalg::backward_error(&basis.jacobi, &coef, &rhs);
    if !be.is_finite() || be > cfg.solve_tol {
        return Err(Error::SingularSystem(format!(
            "shrinkage solve residual {be:.3e} exceeds {:.1e}",
            cfg.solve_tol
        )));
    }
    let fitted = &basis.values * &coef;
    let omega: Vec<f64> = lambda.iter().zip(fitted.iter()).map(|(l, f)| l * f).collect();
    let alpha = basis.monomial_coefficients() * &coef;
    Ok(ShrinkageTriple::from_omega(omega, alpha.iter().copied().collect()))
}

/// `z_(τ),i = ∏_{j∈τ} (1 − λ_i/λ_j)`; exactly zero on `τ`.
pub(crate) fn corner_z(lambda: &[f64], tau: &[usize]) -> Vec<f64> {
    lambda
        .iter()
        .map(|&li| tau.iter().map(|&j| 1.0 - li / lambda[j]).product())
        .collect()
}

/// Monomial coordinates of the corner: `α_k = (−1)^{k+1} e_k(1/λ_τ)`, the
/// expansion of `1 − ∏ (1 − x/λ_j)`.
fn corner_alpha(lambda: &[f64], tau: &[usize]) -> Vec<f64> {
    let n = tau.len();
    // elementary symmetric polynomials of the reciprocals
    let mut e = vec![0.0; n + 1];
    e[0] = 1.0;
    for &j in tau {
        let r = 1.0 / lambda[j];
        for k in (1..=n).rev() {
            e[k] += r * e[k - 1];
        }
    }
    (1..=n)
        .map(|k| if k % 2 == 1 { e[k] } else { -e[k] })
        .collect()
}

fn corner_triple(lambda: &[f64], tau: &[usize]) -> ShrinkageTriple {
    let z = corner_z(lambda, tau);
    let omega = z.iter().map(|v| 1.0 - v).collect();
    ShrinkageTriple {
        omega,
        z,
        alpha: corner_alpha(lambda, tau),
    }
}

fn require_proper_subset(spectrum: &EigenSpectrum, tau: &IndexSubset, n: usize) -> Result<()> {
    if tau.len() != n {
        return Err(Error::SubsetSizeMismatch {
            expected: n,
            found: tau.len(),
        });
    }
    if tau.ambient_dim() != spectrum.dim() {
        return Err(Error::DimensionMismatch {
            expected: spectrum.dim(),
            found: tau.ambient_dim(),
        });
    }
    if n == 0 || n >= spectrum.dim() {
        return Err(Error::InvalidDimension(format!(
            "corner subsets need 1 ≤ |τ| < m = {}",
            spectrum.dim()
        )));
    }
    Ok(())
}

/// Corner shrinkage `ω_(τ)` for an observation supported exactly on `τ`.
///
/// Computed by the product formula and checked against the solve
/// `ΛV(S_τᵀΛV)⁻¹1`; a disagreement beyond `cfg.solve_tol` is reported as
/// [`Error::CrossCheckFailure`].
pub fn corner_shrinkage(
    spectrum: &EigenSpectrum,
    tau: &IndexSubset,
    cfg: &PlsConfig,
) -> Result<ShrinkageTriple> {
    require_proper_subset(spectrum, tau, cfg.n)?;
    let lambda = spectrum.values();
    let triple = corner_triple(lambda, tau.indices());
    let solved = corner_omega_by_solve(lambda, tau.indices())?;
    let deviation = linalg::max_mixed_deviation(&solved, &triple.omega);
    if !(deviation <= cfg.solve_tol) {
        return Err(Error::CrossCheckFailure {
            deviation,
            tolerance: cfg.solve_tol,
        });
    }
    Ok(triple)
}

/// `ω = ΛV (S_τᵀ Λ V)⁻¹ 1`, solved in the basis orthonormal under the
/// indicator of `τ`.
pub fn corner_omega_by_solve(lambda: &[f64], tau: &[usize]) -> Result<Vec<f64>> {
    let n = tau.len();
    let mut indicator = vec![0.0; lambda.len()];
    for &j in tau {
        indicator[j] = 1.0;
    }
    let basis = OrthoBasis::new(lambda, &indicator, n)?;
    let mut rhs = DVector::zeros(n);
    rhs[0] = basis.mass_sqrt;
    let coef = linalg::lu_solve(&basis.jacobi, &rhs)
        .ok_or_else(|| Error::SingularSystem("S_τᵀΛV is singular".into()))?;
    let fitted = &basis.values * coef;
    Ok(lambda.iter().zip(fitted.iter()).map(|(l, f)| l * f).collect())
}

pub(crate) fn log_pi(lambda: &[f64], tau: &[usize]) -> f64 {
    let mut acc = KahanSum::default();
    for (a, &j) in tau.iter().enumerate() {
        acc.add(lambda[j].ln());
        for &i in &tau[a + 1..] {
            acc.add(2.0 * (lambda[j] - lambda[i]).abs().ln());
        }
    }
    acc.value()
}

/// `π_τ` by the closed form, cross-checked against
/// `det(S_τᵀV)·det(S_τᵀΛV)` for subsets of up to six indices.
pub fn corner_weight(spectrum: &EigenSpectrum, tau: &IndexSubset) -> Result<CornerWeight> {
    if tau.ambient_dim() != spectrum.dim() {
        return Err(Error::DimensionMismatch {
            expected: spectrum.dim(),
            found: tau.ambient_dim(),
        });
    }
    let lambda = spectrum.values();
    let lp = log_pi(lambda, tau.indices());
    let pi = lp.exp();
    if (1..=6).contains(&tau.len()) {
        let det = pi_by_determinants(lambda, tau.indices());
        let deviation = ((det - pi) / pi).abs();
        if !(deviation <= 1e-8) {
            return Err(Error::CrossCheckFailure {
                deviation,
                tolerance: 1e-8,
            });
        }
    }
    Ok(CornerWeight {
        tau: tau.clone(),
        pi,
        log_pi: lp,
    })
}

fn pi_by_determinants(lambda: &[f64], tau: &[usize]) -> f64 {
    let n = tau.len();
    let nodes: Vec<f64> = tau.iter().map(|&j| lambda[j]).collect();
    let v = vandermonde_nodes(&nodes, n);
    let lv = DMatrix::from_fn(n, n, |r, c| nodes[r] * v[(r, c)]);
    linalg::determinant(&v) * linalg::determinant(&lv)
}

/// Shrinkage as a convex combination of corner shrinkages.
#[derive(Debug, Clone, PartialEq)]
pub struct AverageShrinkage {
    pub triple: ShrinkageTriple,
    /// `(τ, p_τ)` for every `τ` inside the support of `ψ`, lexicographic.
    /// Subsets leaving the support have weight zero and are omitted.
    pub weights: Vec<(IndexSubset, f64)>,
}

impl AverageShrinkage {
    pub fn weight_sum(&self) -> f64 {
        let mut s = KahanSum::default();
        for (_, p) in &self.weights {
            s.add(*p);
        }
        s.value()
    }

    pub fn weight_of(&self, tau: &IndexSubset) -> f64 {
        self.weights
            .iter()
            .find(|(t, _)| t == tau)
            .map_or(0.0, |(_, p)| *p)
    }
}

fn log_sum_exp(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    let mut s = KahanSum::default();
    for v in values {
        s.add((v - max).exp());
    }
    max + s.value().ln()
}

/// Shrinkage `ω = Σ_τ p_τ ω_(τ)` with `p_τ = ψ^τ π_τ / Σ_s ψ^s π_s`.
///
/// Weights are formed in log space and normalised after subtracting the
/// largest log-weight.
pub fn shrinkage_average(
    spectrum: &EigenSpectrum,
    psi: &SquaredObservation,
    n: usize,
    cfg: &PlsConfig,
) -> Result<AverageShrinkage> {
    check_dims(spectrum, psi, n, cfg)?;
    let m = spectrum.dim();
    check_enum_cap(m, n, cfg.enum_cap)?;
    let lambda = spectrum.values();
    let support = psi.support();

    if support.len() == n {
        let triple = corner_triple(lambda, support.indices());
        return Ok(AverageShrinkage {
            triple,
            weights: vec![(support.clone(), 1.0)],
        });
    }

    let log_psi: Vec<f64> = psi.values().iter().map(|p| p.ln()).collect();
    let taus: Vec<IndexSubset> = subset::subsets_of(support, n).collect();
    let logw: Vec<f64> = taus
        .iter()
        .map(|t| {
            let lp: f64 = t.indices().iter().map(|&i| log_psi[i]).sum();
            lp + log_pi(lambda, t.indices())
        })
        .collect();
    let max = logw.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let raw: Vec<f64> = logw.iter().map(|l| (l - max).exp()).collect();
    let mut total = KahanSum::default();
    for r in &raw {
        total.add(*r);
    }
    let total = total.value();
    let p: Vec<f64> = raw.iter().map(|r| r / total).collect();

    let corners: Vec<ShrinkageTriple> = taus
        .iter()
        .map(|t| corner_triple(lambda, t.indices()))
        .collect();
    let omega = kahan_weighted_sum(
        m,
        p.iter().zip(&corners).map(|(&w, c)| (w, c.omega.as_slice())),
    );
    let alpha = kahan_weighted_sum(
        n,
        p.iter().zip(&corners).map(|(&w, c)| (w, c.alpha.as_slice())),
    );
    Ok(AverageShrinkage {
        triple: ShrinkageTriple::from_omega(omega, alpha),
        weights: taus.into_iter().zip(p).collect(),
    })
}

/// `k`-th coordinate (one-based, `1 ≤ k ≤ n`) of `α_(τ)` as the determinant
/// ratio `± det(S_τᵀW₍₋ₖ₎) / det(S_τᵀW₍₋₀₎)`, where `W₍₋ₖ₎` is the
/// `m × (n+1)` Vandermonde matrix `(1, Λ1, …, Λⁿ1)` without the column of
/// power `k`.
pub fn alpha_corner_det(spectrum: &EigenSpectrum, tau: &IndexSubset, k: usize) -> Result<f64> {
    let n = tau.len();
    require_proper_subset(spectrum, tau, n)?;
    if k == 0 || k > n {
        return Err(Error::InvalidDimension(format!(
            "coordinate index must satisfy 1 ≤ k ≤ {n}, got {k}"
        )));
    }
    let nodes = tau.select(spectrum.values());
    let w = vandermonde_nodes(&nodes, n + 1);
    let keep = |skip: usize| -> Vec<usize> { (0..=n).filter(|&c| c != skip).collect() };
    let num = linalg::determinant(&w.select_columns(&keep(k)));
    let den = linalg::determinant(&w.select_columns(&keep(0)));
    // moving the constant column into position k takes k − 1 transpositions
    let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
    Ok(sign * num / den)
}

/// Decomposition of `z` along the segment traced when one squared
/// observation `ψ_k` ranges over `[0, ∞)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MarginalSegment {
    /// `z` with `ψ_k = 0`.
    pub endpoint_zero: Vec<f64>,
    /// `(I − Λ/λ_k) z⁽ⁿ⁻¹⁾(θ)` with `θ = (I − Λ/λ_k)² ψ`, the `ψ_k → ∞` limit.
    pub endpoint_inf: Vec<f64>,
    /// Weight on `endpoint_zero`, `1 / (1 + ψ_k g_k)`.
    pub t: f64,
    pub g_k: f64,
}

impl MarginalSegment {
    pub fn reconstruct(&self) -> Vec<f64> {
        self.endpoint_zero
            .iter()
            .zip(&self.endpoint_inf)
            .map(|(a, b)| self.t * a + (1.0 - self.t) * b)
            .collect()
    }
}

/// Segment decomposition of `z` in the coordinate `k` (zero-based).
///
/// With zero directions the relative residual is the all-ones vector, which
/// anchors the `n = 1` case.
pub fn marginal_segment(
    spectrum: &EigenSpectrum,
    psi: &SquaredObservation,
    n: usize,
    k: usize,
    cfg: &PlsConfig,
) -> Result<MarginalSegment> {
    check_dims(spectrum, psi, n, cfg)?;
    let m = spectrum.dim();
    if k >= m {
        return Err(Error::InvalidDimension(format!("coordinate {} outside 1..={m}", k + 1)));
    }
    let rest = psi.support().without(k);
    if rest.len() < n {
        return Err(Error::InsufficientSupport {
            support: rest.len(),
            required: n,
        });
    }
    check_enum_cap(m, n, cfg.enum_cap)?;
    let lambda = spectrum.values();
    let lk = lambda[k];

    let endpoint_zero = shrinkage_direct(spectrum, &psi.with_entry(k, 0.0), n, cfg)?.z;

    let factor: Vec<f64> = lambda.iter().map(|l| 1.0 - l / lk).collect();
    let lower = if n == 1 {
        vec![1.0; m]
    } else {
        let theta: Vec<f64> = psi
            .values()
            .iter()
            .zip(&factor)
            .enumerate()
            .map(|(i, (p, f))| if i == k { 0.0 } else { f * f * p })
            .collect();
        let theta = SquaredObservation::from_clean(theta);
        shrinkage_direct(spectrum, &theta, n - 1, cfg)?.z
    };
    let endpoint_inf: Vec<f64> = factor.iter().zip(&lower).map(|(f, z)| f * z).collect();

    let psi_v = psi.values();
    let log_term = |tau: &IndexSubset, weight_tau: &[usize]| -> f64 {
        tau.indices().iter().map(|&i| psi_v[i].ln()).sum::<f64>() + log_pi(lambda, weight_tau)
    };
    let b_terms: Vec<f64> = subset::subsets_of(&rest, n)
        .map(|t| log_term(&t, t.indices()))
        .collect();
    let d_terms: Vec<f64> = subset::subsets_of(&rest, n - 1)
        .map(|t| {
            let with_k = t.with(k).expect("k is outside the rest of the support");
            log_term(&t, with_k.indices())
        })
        .collect();
    let g_k = (log_sum_exp(&d_terms) - log_sum_exp(&b_terms)).exp();
    let t = 1.0 / (1.0 + psi_v[k] * g_k);

    Ok(MarginalSegment {
        endpoint_zero,
        endpoint_inf,
        t,
        g_k,
    })
}

/// Side of the bound on which off-support corner shrinkages lie.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundSide {
    /// `ω_i < bound` (even `n`).
    Below,
    /// `ω_i > bound` (odd `n`).
    Above,
}

impl BoundSide {
    pub fn sign(self) -> i8 {
        match self {
            BoundSide::Below => -1,
            BoundSide::Above => 1,
        }
    }
}

/// Bound on the corner shrinkage at the tail subset `{m−n+1, …, m}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremeBound {
    pub tau_tail: IndexSubset,
    pub bound: f64,
    /// `λ_{m−n} / λ_{m−n+1}`.
    pub c: f64,
    pub side: BoundSide,
}

impl ExtremeBound {
    /// Whether every off-tail entry of `omega` lies on the bound's side.
    /// For `n = 1` the entry at `m − n` equals the bound, so ties within
    /// rounding are accepted.
    pub fn holds_for(&self, omega: &[f64]) -> bool {
        let slack = 1e-12 * self.bound.abs().max(1.0);
        self.tau_tail.complement().indices().iter().all(|&i| match self.side {
            BoundSide::Below => omega[i] <= self.bound + slack,
            BoundSide::Above => omega[i] >= self.bound - slack,
        })
    }
}

/// `1 ∓ (c − 1)ⁿ` bound for the most extreme corner: below for even `n`,
/// above for odd `n`.
pub fn extreme_bound(spectrum: &EigenSpectrum, n: usize) -> Result<ExtremeBound> {
    let m = spectrum.dim();
    if n == 0 || n >= m {
        return Err(Error::InvalidDimension(format!("need 1 ≤ n < m = {m}, got {n}")));
    }
    let lambda = spectrum.values();
    let tau_tail = IndexSubset::new((m - n..m).collect(), m)?;
    let c = lambda[m - n - 1] / lambda[m - n];
    let excess = (c - 1.0).powi(n as i32);
    let (bound, side) = if n % 2 == 0 {
        (1.0 - excess, BoundSide::Below)
    } else {
        (1.0 + excess, BoundSide::Above)
    };
    Ok(ExtremeBound {
        tau_tail,
        bound,
        c,
        side,
    })
}

//! Prediction Jacobian, degrees-of-freedom estimators and the Monte Carlo
//! experiment around them.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::krylov::OrthoBasis;
use crate::linalg::{self, KahanSum};
use crate::model::{EigenSpectrum, ObservationVector, PlsConfig};
use crate::shrinkage::{corner_z, shrinkage_direct};
use crate::subset::IndexSubset;

/// Jacobian `J = ∂ŷ/∂yᵀ` with the two trace estimators.
#[derive(Debug, Clone, PartialEq)]
pub struct DofReport {
    /// `tr J`.
    pub gdof_hat: f64,
    /// `tr(2J − JᵀJ)`.
    pub gdof_dp_hat: f64,
    pub jacobian: DMatrix<f64>,
    pub omega: Vec<f64>,
    /// Largest absolute deviation of `J` from central finite differences.
    pub fd_error: f64,
}

impl DofReport {
    /// [`Error::FdMismatch`] when `fd_error` exceeds `tol`.
    pub fn check_fd(&self, tol: f64) -> Result<()> {
        if self.fd_error <= tol {
            Ok(())
        } else {
            Err(Error::FdMismatch {
                deviation: self.fd_error,
                tolerance: tol,
            })
        }
    }
}

struct Analytic {
    jacobian: DMatrix<f64>,
    omega: Vec<f64>,
}

fn check_inputs(spectrum: &EigenSpectrum, y: &ObservationVector, n: usize, cfg: &PlsConfig) -> Result<()> {
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
    Ok(())
}

/// `P = ΛY Q̃ T⁻¹ Q̃ᵀ Y`, the oblique projection `ΛK(KᵀΛK)⁻¹Kᵀ` written in
/// the `ψ`-orthonormal polynomial basis.
fn projection(lambda: &[f64], y: &[f64], psi: &[f64], n: usize) -> Result<DMatrix<f64>> {
    let m = lambda.len();
    let basis = OrthoBasis::new(lambda, psi, n)?;
    let qty = DMatrix::from_fn(n, m, |k, i| basis.values[(i, k)] * y[i]);
    let solved = basis
        .jacobi
        .clone()
        .lu()
        .solve(&qty)
        .ok_or_else(|| Error::SingularSystem("Jacobi matrix is singular".into()))?;
    let left = DMatrix::from_fn(m, n, |i, k| lambda[i] * y[i] * basis.values[(i, k)]);
    Ok(left * solved)
}

fn analytic(spectrum: &EigenSpectrum, y: &ObservationVector, n: usize, cfg: &PlsConfig) -> Result<Analytic> {
    let psi = y.squared();
    let omega = shrinkage_direct(spectrum, &psi, n, cfg)?.omega;
    // entries treated as zero enter P as exact zeros
    let y_clean: Vec<f64> = y
        .values()
        .iter()
        .zip(psi.values())
        .map(|(&v, &p)| if p > 0.0 { v } else { 0.0 })
        .collect();
    let p = projection(spectrum.values(), &y_clean, psi.values(), n)?;
    let m = spectrum.dim();
    let id = DMatrix::<f64>::identity(m, m);
    let om = DMatrix::from_diagonal(&DVector::from_column_slice(&omega));
    let jacobian = (&id - &p * 2.0) * om + p * 2.0;
    Ok(Analytic { jacobian, omega })
}

fn traces(j: &DMatrix<f64>) -> (f64, f64) {
    let gdof = j.trace();
    let m = j.nrows();
    let mut jtj = KahanSum::default();
    for c in 0..m {
        for r in 0..m {
            jtj.add(j[(r, c)] * j[(r, c)]);
        }
    }
    (gdof, 2.0 * gdof - jtj.value())
}

fn prediction(spectrum: &EigenSpectrum, y: &[f64], n: usize, cfg: &PlsConfig) -> Result<Vec<f64>> {
    let obs = ObservationVector::new(y.to_vec(), cfg.zero_tol)?;
    let omega = shrinkage_direct(spectrum, &obs.squared(), n, cfg)?.omega;
    Ok(omega.iter().zip(y).map(|(w, v)| w * v).collect())
}

/// Jacobian `J = (I − 2P)Ω + 2P` of `ŷ = Ω y` together with a central
/// finite-difference check (step `1e−6·(1 + |y_i|)`).
pub fn prediction_jacobian(
    spectrum: &EigenSpectrum,
    y: &ObservationVector,
    n: usize,
    cfg: &PlsConfig,
) -> Result<DofReport> {
    check_inputs(spectrum, y, n, cfg)?;
    let Analytic { jacobian, omega } = analytic(spectrum, y, n, cfg)?;
    let m = spectrum.dim();
    let mut fd_error = 0.0f64;
    for c in 0..m {
        let h = 1e-6 * (1.0 + y.values()[c].abs());
        let mut up = y.values().to_vec();
        let mut down = up.clone();
        up[c] += h;
        down[c] -= h;
        let yu = prediction(spectrum, &up, n, cfg)?;
        let yd = prediction(spectrum, &down, n, cfg)?;
        for r in 0..m {
            let fd = (yu[r] - yd[r]) / (2.0 * h);
            fd_error = fd_error.max((fd - jacobian[(r, c)]).abs());
        }
    }
    let (gdof_hat, gdof_dp_hat) = traces(&jacobian);
    Ok(DofReport {
        gdof_hat,
        gdof_dp_hat,
        jacobian,
        omega,
        fd_error,
    })
}

/// `(tr J, tr(2J − JᵀJ))` at `y`.
pub fn gdof_estimators(
    spectrum: &EigenSpectrum,
    y: &ObservationVector,
    n: usize,
    cfg: &PlsConfig,
) -> Result<(f64, f64)> {
    check_inputs(spectrum, y, n, cfg)?;
    let a = analytic(spectrum, y, n, cfg)?;
    Ok(traces(&a.jacobian))
}

/// Closed forms at an observation supported on `tau`:
/// `n + Σ_{i∉τ} ω_i` and `m − Σ_{i∉τ} (1 − ω_i)²`.
pub fn gdof_corner(spectrum: &EigenSpectrum, tau: &IndexSubset) -> (f64, f64) {
    let z = corner_z(spectrum.values(), tau.indices());
    let m = spectrum.dim();
    let mut g = KahanSum::default();
    let mut dp = KahanSum::default();
    g.add(tau.len() as f64);
    dp.add(m as f64);
    for i in tau.complement().indices() {
        g.add(1.0 - z[*i]);
        dp.add(-z[*i] * z[*i]);
    }
    (g.value(), dp.value())
}

/// Settings of the Monte Carlo experiment `y = Λβ + u`, `u_i ~ N(0, σ²λ_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct McConfig {
    pub beta: Vec<f64>,
    pub sigma: f64,
    pub replications: usize,
    pub seed: u64,
    pub n: usize,
}

impl McConfig {
    pub fn validate(&self, m: usize) -> Result<()> {
        if self.beta.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: self.beta.len(),
            });
        }
        if !(self.sigma > 0.0) || !self.sigma.is_finite() {
            return Err(Error::InvalidConfig(format!("sigma must be positive, got {}", self.sigma)));
        }
        if self.replications == 0 {
            return Err(Error::InvalidConfig("at least one replication is required".into()));
        }
        Ok(())
    }
}

/// Estimators of one replicate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McSample {
    pub replicate: usize,
    pub gdof_hat: f64,
    pub gdof_dp_hat: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct McResult {
    /// Successful replicates in replicate order.
    pub samples: Vec<McSample>,
    /// Replicates dropped because their Krylov system was singular.
    pub excluded: Vec<usize>,
    pub mean_gdof: f64,
    /// `sd / √R`; `None` with fewer than two samples.
    pub mc_se: Option<f64>,
    pub prob_negative: f64,
}

impl McResult {
    pub fn sorted_gdof(&self) -> Vec<f64> {
        sorted(self.samples.iter().map(|s| s.gdof_hat))
    }

    pub fn sorted_gdof_dp(&self) -> Vec<f64> {
        sorted(self.samples.iter().map(|s| s.gdof_dp_hat))
    }
}

fn sorted(values: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut v: Vec<f64> = values.collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Noise draw of replicate `r`: stream `r` of a ChaCha8 generator seeded
/// with `seed`, one standard normal per coordinate in order.
pub fn noise(spectrum: &EigenSpectrum, sigma: f64, seed: u64, replicate: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(replicate as u64);
    spectrum
        .values()
        .iter()
        .map(|l| {
            let e: f64 = StandardNormal.sample(&mut rng);
            sigma * l.sqrt() * e
        })
        .collect()
}

/// Monte Carlo distribution of the estimators. Results do not depend on the
/// number of threads.
pub fn mc_gdof(spectrum: &EigenSpectrum, mc: &McConfig, cfg: &PlsConfig) -> Result<McResult> {
    let m = spectrum.dim();
    mc.validate(m)?;
    PlsConfig { n: mc.n, ..*cfg }.validate(m)?;
    let mean_y: Vec<f64> = spectrum.values().iter().zip(&mc.beta).map(|(l, b)| l * b).collect();

    let outcomes: Vec<Result<(f64, f64)>> = (0..mc.replications)
        .into_par_iter()
        .map(|r| {
            let u = noise(spectrum, mc.sigma, mc.seed, r);
            let y: Vec<f64> = mean_y.iter().zip(&u).map(|(a, b)| a + b).collect();
            let y = ObservationVector::new(y, cfg.zero_tol)?;
            gdof_estimators(spectrum, &y, mc.n, cfg)
        })
        .collect();

    let mut samples = Vec::with_capacity(mc.replications);
    let mut excluded = Vec::new();
    for (replicate, out) in outcomes.into_iter().enumerate() {
        match out {
            Ok((g, dp)) if g.is_finite() && dp.is_finite() => samples.push(McSample {
                replicate,
                gdof_hat: g,
                gdof_dp_hat: dp,
            }),
            Ok(_) => excluded.push(replicate),
            Err(e) if e.exit_code() == 3 => excluded.push(replicate),
            Err(e) => return Err(e),
        }
    }
    if samples.is_empty() {
        return Err(Error::SingularSystem("every replicate was singular".into()));
    }

    let count = samples.len() as f64;
    let mut sum = KahanSum::default();
    for s in &samples {
        sum.add(s.gdof_hat);
    }
    let mean = sum.value() / count;
    let mc_se = (samples.len() >= 2).then(|| {
        let mut ss = KahanSum::default();
        for s in &samples {
            ss.add((s.gdof_hat - mean).powi(2));
        }
        (ss.value() / (count - 1.0)).sqrt() / count.sqrt()
    });
    let negative = samples.iter().filter(|s| s.gdof_hat < 0.0).count();
    Ok(McResult {
        prob_negative: negative as f64 / count,
        samples,
        excluded,
        mean_gdof: mean,
        mc_se,
    })
}

/// Max elementwise [`linalg::mixed_deviation`] between two Jacobians.
pub fn jacobian_deviation(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    linalg::max_mixed_deviation(a.as_slice(), b.as_slice())
}

//! Orthonormal polynomial basis for the Krylov space `span(V)`.
//!
//! The monomial columns `λ⁰ … λⁿ⁻¹` become numerically dependent quickly
//! (condition numbers past 1e20 for eight coordinates), so the shrinkage
//! system is solved in the basis of polynomials `q_0 … q_{n−1}` that are
//! orthonormal for the discrete inner product `⟨f, g⟩ = Σ ψ_i f(λ_i) g(λ_i)`.
//! In that basis `VᵀΨΛV` becomes the tridiagonal Jacobi matrix `T` of the
//! Stieltjes recurrence, which is well conditioned.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub(crate) struct OrthoBasis {
    /// `q_k(λ_i)` as an `m × n` matrix.
    pub values: DMatrix<f64>,
    /// Jacobi matrix `Q̃ᵀ Ψ Λ Q̃`.
    pub jacobi: DMatrix<f64>,
    /// `√(Σ ψ_i)`; the right-hand side of the shrinkage system is `mass_sqrt·e₁`.
    pub mass_sqrt: f64,
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl OrthoBasis {
    /// Lanczos with full reorthogonalisation on `diag(λ)` started from `√ψ`.
    /// The caller guarantees at least `n` positive entries in `psi`.
    pub fn new(lambda: &[f64], psi: &[f64], n: usize) -> Result<Self> {
        let m = lambda.len();
        let mass: f64 = psi.iter().sum();
        if !(mass > 0.0) {
            return Err(Error::ZeroVector);
        }
        let mass_sqrt = mass.sqrt();
        let lam_max = lambda.iter().fold(0.0f64, |a, &l| a.max(l));
        let breakdown = 1e-13 * lam_max;

        let mut basis: Vec<DVector<f64>> = Vec::with_capacity(n);
        basis.push(DVector::from_iterator(m, psi.iter().map(|p| p.sqrt() / mass_sqrt)));
        let mut diag = Vec::with_capacity(n);
        let mut offdiag = Vec::with_capacity(n);
        let lam = DVector::from_column_slice(lambda);

        for k in 0..n {
            let uk = &basis[k];
            let mut v = lam.component_mul(uk);
            let a = uk.dot(&v);
            diag.push(a);
            if k + 1 == n {
                break;
            }
            v -= uk * a;
            if k > 0 {
                v -= &basis[k - 1] * offdiag[k - 1];
            }
            for _ in 0..2 {
                for q in &basis {
                    let c = q.dot(&v);
                    v -= q * c;
                }
            }
            let b = v.norm();
            if !(b > breakdown) {
                return Err(Error::SingularSystem(format!(
                    "Krylov space collapsed at dimension {}",
                    k + 1
                )));
            }
            offdiag.push(b);
            basis.push(v / b);
        }

        // evaluate q_k at every node through the three-term recurrence so that
        // nodes with ψ_i = 0 are covered as well
        let mut values = DMatrix::zeros(m, n);
        for i in 0..m {
            let x = lambda[i];
            let mut prev = 0.0;
            let mut cur = 1.0 / mass_sqrt;
            values[(i, 0)] = cur;
            for k in 0..n - 1 {
                let back = if k > 0 { offdiag[k - 1] * prev } else { 0.0 };
                let next = ((x - diag[k]) * cur - back) / offdiag[k];
                prev = cur;
                cur = next;
                values[(i, k + 1)] = cur;
            }
        }

        let mut jacobi = DMatrix::from_diagonal(&DVector::from_column_slice(&diag));
        for (k, &b) in offdiag.iter().enumerate() {
            jacobi[(k, k + 1)] = b;
            jacobi[(k + 1, k)] = b;
        }

        Ok(Self {
            values,
            jacobi,
            mass_sqrt,
            diag,
            offdiag,
        })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Monomial coefficients of each `q_k`: column `k` holds the coefficients
    /// of `x⁰ … x^{n−1}`.
    pub fn monomial_coefficients(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut coef = DMatrix::zeros(n, n);
        coef[(0, 0)] = 1.0 / self.mass_sqrt;
        for k in 0..n - 1 {
            for p in 0..n {
                let shifted = if p > 0 { coef[(p - 1, k)] } else { 0.0 };
                let back = if k > 0 {
                    self.offdiag[k - 1] * coef[(p, k - 1)]
                } else {
                    0.0
                };
                coef[(p, k + 1)] = (shifted - self.diag[k] * coef[(p, k)] - back) / self.offdiag[k];
            }
        }
        coef
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_is_orthonormal_for_weighted_inner_product() {
        let lambda = [5.0, 3.0, 2.0, 1.0, 0.5];
        let psi = [0.3, 2.0, 0.0, 1.0, 0.7];
        let b = OrthoBasis::new(&lambda, &psi, 3).unwrap();
        let w = DMatrix::from_diagonal(&DVector::from_column_slice(&psi));
        let gram = b.values.transpose() * &w * &b.values;
        assert!((gram - DMatrix::<f64>::identity(3, 3)).amax() < 1e-12);
        let lam = DMatrix::from_diagonal(&DVector::from_column_slice(&lambda));
        let t = b.values.transpose() * &w * lam * &b.values;
        assert!((t - &b.jacobi).amax() < 1e-12);
    }

    #[test]
    fn monomial_coefficients_reproduce_values() {
        let lambda = [4.0, 2.0, 1.5, 0.2];
        let psi = [1.0, 1.0, 2.0, 0.5];
        let b = OrthoBasis::new(&lambda, &psi, 3).unwrap();
        let coef = b.monomial_coefficients();
        for (i, &x) in lambda.iter().enumerate() {
            for k in 0..3 {
                let v: f64 = (0..3).map(|p| coef[(p, k)] * x.powi(p as i32)).sum();
                assert!((v - b.values[(i, k)]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn collapse_is_reported() {
        let lambda = [4.0, 2.0, 1.0];
        let psi = [1.0, 0.0, 0.0];
        assert!(matches!(
            OrthoBasis::new(&lambda, &psi, 2),
            Err(Error::SingularSystem(_))
        ));
    }
}

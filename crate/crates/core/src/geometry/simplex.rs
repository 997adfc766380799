use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::geometry::sign::{corner_signature, SignPattern, SignSymbol};
use crate::linalg;
use crate::model::{EigenSpectrum, PlsConfig};
use crate::shrinkage::corner_z;
use crate::subset::{binomial, IndexSubset};

fn parity(odd: bool) -> SignSymbol {
    if odd {
        SignSymbol::Minus
    } else {
        SignSymbol::Plus
    }
}

fn check_simplex_set(m: usize, t: &IndexSubset) -> Result<usize> {
    if t.ambient_dim() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: t.ambient_dim(),
        });
    }
    if t.len() < 2 {
        return Err(Error::SubsetSizeMismatch {
            expected: 2,
            found: t.len(),
        });
    }
    let n = t.len() - 1;
    if n >= m {
        return Err(Error::InvalidDimension(format!("simplex on {} indices needs m > {n}", t.len())));
    }
    Ok(n)
}

/// Signs shared by every point of the simplex `conv{z_(τ) : τ ⊂ T, |τ| = n}`.
///
/// With `T = {t_0 < … < t_n}`: `(−1)^{n−k}` at `t_k`, `+` after `t_n`,
/// `(−1)ⁿ` before `t_0`, and `x` at the remaining positions between `t_0`
/// and `t_n`.
pub fn simplex_template(m: usize, t: &IndexSubset) -> Result<SignPattern> {
    let n = check_simplex_set(m, t)?;
    let idx = t.indices();
    let (lo, hi) = (idx[0], idx[n]);
    let symbols = (0..m)
        .map(|i| {
            if let Ok(k) = idx.binary_search(&i) {
                parity((n - k) % 2 == 1)
            } else if i > hi {
                SignSymbol::Plus
            } else if i < lo {
                parity(n % 2 == 1)
            } else {
                SignSymbol::Free
            }
        })
        .collect();
    Ok(SignPattern::new(symbols))
}

/// Strict completions of `template` with exactly `n` sign changes, sorted
/// lexicographically by change positions.
pub fn expand_template(template: &SignPattern, n: usize) -> Result<Vec<SignPattern>> {
    if template.symbols().contains(&SignSymbol::Zero) {
        return Err(Error::InadmissibleSignature(
            "template with zero entries has no strict completion".into(),
        ));
    }
    let free = template.symbols().iter().filter(|s| **s == SignSymbol::Free).count();
    let cap = PlsConfig::default().enum_cap;
    if (1u128 << free.min(127)) > cap as u128 {
        return Err(Error::CapExceeded {
            count: 1u128 << free.min(127),
            cap,
        });
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(template.len());
    complete(template.symbols(), n, 0, &mut current, &mut out);
    out.sort_by_cached_key(|p| p.change_positions());
    Ok(out)
}

fn complete(
    symbols: &[SignSymbol],
    budget: usize,
    changes: usize,
    current: &mut Vec<SignSymbol>,
    out: &mut Vec<SignPattern>,
) {
    let i = current.len();
    if i == symbols.len() {
        if changes == budget {
            out.push(SignPattern::new(current.clone()));
        }
        return;
    }
    let options: &[SignSymbol] = match symbols[i] {
        SignSymbol::Free => &[SignSymbol::Plus, SignSymbol::Minus],
        ref s => std::slice::from_ref(s),
    };
    for &s in options {
        let extra = usize::from(i > 0 && current[i - 1] != s);
        if changes + extra > budget {
            continue;
        }
        current.push(s);
        complete(symbols, budget, changes + extra, current, out);
        current.pop();
    }
}

/// The `n + 1` corner points `z_(τ)`, `τ = T − {t}`, spanning a simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexDescriptor {
    pub t: IndexSubset,
    /// `(τ, z_(τ))`, with `τ` dropping the indices of `T` in increasing order.
    pub vertices: Vec<(IndexSubset, Vec<f64>)>,
}

impl SimplexDescriptor {
    pub fn new(spectrum: &EigenSpectrum, t: &IndexSubset) -> Result<Self> {
        check_simplex_set(spectrum.dim(), t)?;
        let vertices = t
            .indices()
            .iter()
            .map(|&drop| {
                let tau = t.without(drop);
                let z = corner_z(spectrum.values(), tau.indices());
                (tau, z)
            })
            .collect();
        Ok(Self { t: t.clone(), vertices })
    }

    /// Sign pattern of each vertex.
    pub fn vertex_signatures(&self) -> Vec<SignPattern> {
        self.vertices.iter().map(|(tau, _)| corner_signature(tau)).collect()
    }

    /// Rank of the differences `z_(τ_k) − z_(τ_0)`; `n` when the vertices are
    /// affinely independent.
    pub fn affine_rank(&self, tol: f64) -> usize {
        let (_, base) = &self.vertices[0];
        let rows = base.len();
        let cols = self.vertices.len() - 1;
        let diff = DMatrix::from_fn(rows, cols, |i, k| self.vertices[k + 1].1[i] - base[i]);
        diff.rank(tol * diff.amax().max(1.0))
    }

    /// Convex combination `Σ c_k z_(τ_k)`.
    pub fn point(&self, weights: &[f64]) -> Vec<f64> {
        let m = self.vertices[0].1.len();
        linalg::kahan_weighted_sum(
            m,
            weights.iter().zip(&self.vertices).map(|(&w, (_, z))| (w, z.as_slice())),
        )
    }
}

/// Whether every square minor of `a` of order at most `max_order` is
/// strictly positive. Fails with [`Error::CapExceeded`] when more than `cap`
/// minors would be evaluated.
pub fn total_positivity_check(a: &DMatrix<f64>, max_order: usize, cap: u64) -> Result<bool> {
    let (r, c) = a.shape();
    let order = max_order.min(r).min(c);
    let count: u128 = (1..=order).map(|k| binomial(r, k) * binomial(c, k)).sum();
    if count > cap as u128 {
        return Err(Error::CapExceeded { count, cap });
    }
    for k in 1..=order {
        for rows in crate::subset::subsets(r, k) {
            for cols in crate::subset::subsets(c, k) {
                let minor = a.select_rows(rows.indices()).select_columns(cols.indices());
                if !(linalg::determinant(&minor) > 0.0) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

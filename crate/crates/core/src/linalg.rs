//! Small dense helpers shared by the numerical modules.
//!
//! Everything here works on `nalgebra` dynamic matrices; the systems this
//! crate solves are tiny (a few dozen rows at most).

use nalgebra::{DMatrix, DVector};

/// Solves `a x = b` by LU with partial pivoting. Returns `None` when the
/// factorization hits an exactly singular pivot.
pub fn lu_solve(a: &DMatrix<f64>, b: &DVector<f64>) -> Option<DVector<f64>> {
    a.clone().lu().solve(b)
}

/// Determinant via LU with partial pivoting.
pub fn determinant(a: &DMatrix<f64>) -> f64 {
    if a.nrows() == 0 {
        return 1.0;
    }
    a.clone().lu().determinant()
}

/// Normwise backward error `‖a x − b‖ / (‖a‖ ‖x‖ + ‖b‖)`.
pub fn backward_error(a: &DMatrix<f64>, x: &DVector<f64>, b: &DVector<f64>) -> f64 {
    let r = a * x - b;
    let denom = a.norm() * x.norm() + b.norm();
    if denom == 0.0 {
        0.0
    } else {
        r.norm() / denom
    }
}

/// Deviation of `a` from `b` measured against `max(1, |b|)`: relative for
/// large entries, absolute near zero.
pub fn mixed_deviation(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

/// Largest [`mixed_deviation`] over paired entries.
pub fn max_mixed_deviation(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| mixed_deviation(x, y))
        .fold(0.0, f64::max)
}

/// Weights `w_j = 1 / ∏_{i≠j} (x_j − x_i)` of the highest-order divided
/// difference on distinct nodes. They span the null space of the transposed
/// `(k−1)`-column Vandermonde matrix on `k` nodes and alternate in sign when
/// the nodes are sorted.
pub fn divided_difference_weights(nodes: &[f64]) -> Vec<f64> {
    nodes
        .iter()
        .enumerate()
        .map(|(j, &xj)| {
            let prod: f64 = nodes
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .map(|(_, &xi)| xj - xi)
                .product();
            1.0 / prod
        })
        .collect()
}

/// Compensated summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    pub fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// Elementwise compensated accumulation of `Σ w_k v_k` for equally sized
/// vectors.
pub fn kahan_weighted_sum<'a, I>(len: usize, terms: I) -> Vec<f64>
where
    I: IntoIterator<Item = (f64, &'a [f64])>,
{
    let mut acc = vec![KahanSum::default(); len];
    for (w, v) in terms {
        for (a, &x) in acc.iter_mut().zip(v) {
            a.add(w * x);
        }
    }
    acc.iter().map(KahanSum::value).collect()
}

/// Non-negative least squares `min ‖a x − b‖, x ≥ 0` (Lawson–Hanson active
/// set). Returns the solution and the residual norm.
pub fn nnls(a: &DMatrix<f64>, b: &DVector<f64>) -> (DVector<f64>, f64) {
    let (rows, cols) = a.shape();
    let mut x = DVector::<f64>::zeros(cols);
    let mut passive = vec![false; cols];
    let tol = 10.0 * f64::EPSILON * a.norm().max(1.0) * (rows.max(cols) as f64);
    let max_outer = 3 * cols + 10;

    let gradient = |x: &DVector<f64>| a.transpose() * (b - a * x);

    for _ in 0..max_outer {
        let w = gradient(&x);
        let candidate = (0..cols)
            .filter(|&j| !passive[j])
            .max_by(|&i, &j| w[i].total_cmp(&w[j]));
        let j = match candidate {
            Some(j) if w[j] > tol => j,
            _ => break,
        };
        passive[j] = true;

        loop {
            let s = passive_lstsq(a, b, &passive);
            let infeasible: Vec<usize> = (0..cols).filter(|&i| passive[i] && s[i] <= 0.0).collect();
            if infeasible.is_empty() {
                x = s;
                break;
            }
            let step = infeasible
                .iter()
                .map(|&i| x[i] / (x[i] - s[i]))
                .fold(f64::INFINITY, f64::min);
            x += (&s - &x) * step;
            for i in 0..cols {
                if passive[i] && x[i] <= tol {
                    passive[i] = false;
                    x[i] = 0.0;
                }
            }
            if !passive.iter().any(|&p| p) {
                break;
            }
        }
    }
    let residual = (b - a * &x).norm();
    (x, residual)
}

fn passive_lstsq(a: &DMatrix<f64>, b: &DVector<f64>, passive: &[bool]) -> DVector<f64> {
    let idx: Vec<usize> = (0..passive.len()).filter(|&i| passive[i]).collect();
    let sub = a.select_columns(&idx);
    let sol = sub
        .svd(true, true)
        .solve(b, f64::EPSILON)
        .expect("svd computed with both factors");
    let mut full = DVector::zeros(passive.len());
    for (k, &i) in idx.iter().enumerate() {
        full[i] = sol[k];
    }
    full
}

/// Right null vector of a `rows × (rows + 1)` matrix, taken as the right
/// singular vector of the smallest singular value of the zero-padded square
/// matrix.
pub fn null_vector(a: &DMatrix<f64>) -> DVector<f64> {
    let cols = a.ncols();
    let mut sq = DMatrix::zeros(cols, cols);
    sq.view_mut((0, 0), (a.nrows(), cols)).copy_from(a);
    let svd = sq.svd(false, true);
    let v_t = svd.v_t.expect("requested v_t");
    let (k, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty");
    v_t.row(k).transpose()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nnls_recovers_nonnegative_combination() {
        let a = DMatrix::from_row_slice(3, 2, &[1.0, 0.0, 0.0, 1.0, 1.0, 1.0]);
        let b = DVector::from_vec(vec![2.0, 3.0, 5.0]);
        let (x, r) = nnls(&a, &b);
        assert!((x[0] - 2.0).abs() < 1e-12 && (x[1] - 3.0).abs() < 1e-12);
        assert!(r < 1e-12);
    }

    #[test]
    fn nnls_clamps_negative_direction() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 1.0]);
        let b = DVector::from_vec(vec![1.0, -2.0]);
        let (x, r) = nnls(&a, &b);
        assert_eq!(x[1], 0.0);
        assert!((x[0] - 1.0).abs() < 1e-12);
        assert!((r - 2.0).abs() < 1e-12);
    }

    #[test]
    fn divided_difference_weights_annihilate_low_degree() {
        let nodes = [5.0, 3.0, 2.0, 0.5];
        let w = divided_difference_weights(&nodes);
        for deg in 0..3 {
            let s: f64 = nodes.iter().zip(&w).map(|(x, w)| w * x.powi(deg)).sum();
            assert!(s.abs() < 1e-12, "degree {deg}: {s}");
        }
        // alternating signs on sorted nodes
        assert!(w.windows(2).all(|p| p[0] * p[1] < 0.0));
    }

    #[test]
    fn null_vector_of_wide_matrix() {
        let a = DMatrix::from_row_slice(1, 2, &[1.0, 1.0]);
        let v = null_vector(&a);
        assert!((v[0] + v[1]).abs() < 1e-14);
        assert!((v.norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn kahan_handles_cancellation() {
        let mut s = KahanSum::default();
        s.add(1e16);
        for _ in 0..10 {
            s.add(1.0);
        }
        s.add(-1e16);
        assert_eq!(s.value(), 10.0);
    }
}

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

/// Sorted set of distinct coordinate indices drawn from `0..m`.
///
/// Indices are zero-based in code; [`fmt::Display`] and the CSV helpers use
/// one-based positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSubset {
    indices: Vec<usize>,
    m: usize,
}

impl IndexSubset {
    pub fn new(mut indices: Vec<usize>, m: usize) -> Result<Self> {
        indices.sort_unstable();
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSubset(format!(
                "duplicate index in {indices:?}"
            )));
        }
        if let Some(&i) = indices.iter().find(|&&i| i >= m) {
            return Err(Error::InvalidSubset(format!(
                "index {} outside 1..={m}",
                i + 1
            )));
        }
        Ok(Self { indices, m })
    }

    /// From one-based positions.
    pub fn from_one_based(positions: &[usize], m: usize) -> Result<Self> {
        if positions.contains(&0) {
            return Err(Error::InvalidSubset("positions are one-based".into()));
        }
        Self::new(positions.iter().map(|p| p - 1).collect(), m)
    }

    pub(crate) fn from_sorted_unchecked(indices: Vec<usize>, m: usize) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        Self { indices, m }
    }

    /// The full index set `{0, …, m−1}`.
    pub fn full(m: usize) -> Self {
        Self {
            indices: (0..m).collect(),
            m,
        }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn ambient_dim(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn one_based(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().map(|i| i + 1)
    }

    pub fn complement(&self) -> Self {
        Self {
            indices: (0..self.m).filter(|i| !self.contains(*i)).collect(),
            m: self.m,
        }
    }

    pub fn without(&self, i: usize) -> Self {
        Self {
            indices: self.indices.iter().copied().filter(|&j| j != i).collect(),
            m: self.m,
        }
    }

    pub fn with(&self, i: usize) -> Result<Self> {
        let mut idx = self.indices.clone();
        idx.push(i);
        Self::new(idx, self.m)
    }

    /// Monomial `x^τ = ∏_{i∈τ} x_i`.
    pub fn monomial(&self, x: &[f64]) -> f64 {
        self.indices.iter().map(|&i| x[i]).product()
    }

    /// Subvector `x_τ`.
    pub fn select(&self, x: &[f64]) -> Vec<f64> {
        self.indices.iter().map(|&i| x[i]).collect()
    }

    /// Semicolon-joined one-based positions, the CSV field format.
    pub fn to_field(&self) -> String {
        self.one_based().join(";")
    }

    /// Parses one-based positions separated by `;` or `,`.
    pub fn parse(s: &str, m: usize) -> Result<Self> {
        let pos = s
            .split([';', ','])
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad subset index {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_one_based(&pos, m)
    }
}

impl fmt::Display for IndexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.one_based().join(","))
    }
}

/// `C(m, n)` without overflow for the sizes used here.
pub fn binomial(m: usize, n: usize) -> u128 {
    if n > m {
        return 0;
    }
    let n = n.min(m - n);
    (0..n).fold(1u128, |acc, i| acc * (m - i) as u128 / (i + 1) as u128)
}

/// All `n`-subsets of `0..m` in lexicographic order.
pub fn subsets(m: usize, n: usize) -> impl Iterator<Item = IndexSubset> {
    (0..m)
        .combinations(n)
        .map(move |c| IndexSubset::from_sorted_unchecked(c, m))
}

/// All `n`-subsets of `pool` (sorted), lexicographic.
pub fn subsets_of(pool: &IndexSubset, n: usize) -> impl Iterator<Item = IndexSubset> + '_ {
    pool.indices
        .iter()
        .copied()
        .combinations(n)
        .map(move |c| IndexSubset::from_sorted_unchecked(c, pool.m))
}

pub(crate) fn check_enum_cap(m: usize, n: usize, cap: u64) -> Result<()> {
    if binomial(m, n) > cap as u128 {
        return Err(Error::EnumerationCapExceeded { m, n, cap });
    }
    Ok(())
}

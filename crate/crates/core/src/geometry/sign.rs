use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::model::{zero_threshold, EigenSpectrum, PlsConfig, SquaredObservation};
use crate::shrinkage::shrinkage_direct;
use crate::subset::{binomial, IndexSubset};

/// One coordinate of a sign pattern. Printed as `+`, `-`, `0` and `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SignSymbol {
    Plus,
    Minus,
    Zero,
    /// Sign not determined.
    Free,
}

impl SignSymbol {
    pub fn as_char(self) -> char {
        match self {
            SignSymbol::Plus => '+',
            SignSymbol::Minus => '-',
            SignSymbol::Zero => '0',
            SignSymbol::Free => 'x',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            '+' => Some(SignSymbol::Plus),
            '-' | '−' => Some(SignSymbol::Minus),
            '0' => Some(SignSymbol::Zero),
            'x' | 'X' | '×' => Some(SignSymbol::Free),
            _ => None,
        }
    }

    fn of(x: f64, threshold: f64) -> Self {
        if x.abs() <= threshold {
            SignSymbol::Zero
        } else if x > 0.0 {
            SignSymbol::Plus
        } else {
            SignSymbol::Minus
        }
    }

    fn from_parity(odd: bool) -> Self {
        if odd {
            SignSymbol::Minus
        } else {
            SignSymbol::Plus
        }
    }

    pub fn negate(self) -> Self {
        match self {
            SignSymbol::Plus => SignSymbol::Minus,
            SignSymbol::Minus => SignSymbol::Plus,
            s => s,
        }
    }

    fn is_strict(self) -> bool {
        matches!(self, SignSymbol::Plus | SignSymbol::Minus)
    }
}

/// Per-coordinate sign pattern.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignPattern {
    symbols: Vec<SignSymbol>,
}

impl SignPattern {
    pub fn new(symbols: Vec<SignSymbol>) -> Self {
        Self { symbols }
    }

    /// Signs of `x`; entries with `|x_i| ≤ zero_tol·max|x|` become `0`.
    pub fn from_values(x: &[f64], zero_tol: f64) -> Self {
        let t = zero_threshold(x, zero_tol);
        Self {
            symbols: x.iter().map(|&v| SignSymbol::of(v, t)).collect(),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| {
                SignSymbol::from_char(c)
                    .ok_or_else(|| Error::Parse(format!("unknown sign symbol {c:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn symbols(&self) -> &[SignSymbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// No `0` and no `x` symbols.
    pub fn is_strict(&self) -> bool {
        self.symbols.iter().all(|s| s.is_strict())
    }

    pub fn negate(&self) -> Self {
        Self::new(self.symbols.iter().map(|s| s.negate()).collect())
    }

    /// One-based positions `i` with `s_i ≠ s_{i+1}`; `None` unless strict.
    pub fn change_positions(&self) -> Option<Vec<usize>> {
        if !self.is_strict() {
            return None;
        }
        Some(
            self.symbols
                .windows(2)
                .enumerate()
                .filter(|(_, w)| w[0] != w[1])
                .map(|(i, _)| i + 1)
                .collect(),
        )
    }

    /// Lengths of the maximal runs of equal sign; `None` unless strict.
    pub fn sections(&self) -> Option<Vec<usize>> {
        if !self.is_strict() {
            return None;
        }
        Some(self.symbols.iter().dedup_with_count().map(|(c, _)| c).collect())
    }

    /// `(v_m, v_M)`: changes after dropping zeros, and the largest number of
    /// changes over all completions of `0` and `x` entries.
    pub fn variation_bounds(&self) -> Result<(usize, usize)> {
        let strict: Vec<SignSymbol> = self.symbols.iter().copied().filter(|s| s.is_strict()).collect();
        if strict.is_empty() && !self.symbols.iter().any(|s| *s == SignSymbol::Free) {
            return Err(Error::ZeroVector);
        }
        let v_min = strict.windows(2).filter(|w| w[0] != w[1]).count();

        // best[s]: most changes so far with the current entry completed to s
        const NONE: i64 = i64::MIN / 2;
        let mut best = [NONE, NONE];
        for (i, sym) in self.symbols.iter().enumerate() {
            let allowed = match sym {
                SignSymbol::Plus => [true, false],
                SignSymbol::Minus => [false, true],
                _ => [true, true],
            };
            let mut next = [NONE, NONE];
            for s in 0..2 {
                if !allowed[s] {
                    continue;
                }
                next[s] = if i == 0 {
                    0
                } else {
                    best[s].max(best[1 - s] + 1)
                };
            }
            best = next;
        }
        Ok((v_min, best[0].max(best[1]) as usize))
    }

    /// True when every fixed (non-`x`) symbol of `self` equals the symbol of
    /// `other` at the same position.
    pub fn admits(&self, other: &SignPattern) -> bool {
        self.len() == other.len()
            && self
                .symbols
                .iter()
                .zip(&other.symbols)
                .all(|(a, b)| *a == SignSymbol::Free || a == b)
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

/// `(v_m, v_M)` of a vector, zeros taken literally.
pub fn sign_changes(x: &[f64]) -> Result<(usize, usize)> {
    SignPattern::from_values(x, 0.0).variation_bounds()
}

/// Strict pattern of length `m` ending in `last` with sign changes right
/// after the given one-based positions.
pub fn pattern_from_changes(m: usize, changes: &[usize], last: SignSymbol) -> SignPattern {
    let mut symbols = vec![last; m];
    let mut current = last;
    for i in (0..m - 1).rev() {
        if changes.contains(&(i + 1)) {
            current = current.negate();
        }
        symbols[i] = current;
    }
    SignPattern::new(symbols)
}

/// All sign patterns of `ω − 1` with `n` changes and a negative last entry,
/// ordered lexicographically by change positions.
pub fn enumerate_signatures(m: usize, n: usize) -> Result<Vec<SignPattern>> {
    if n == 0 || n >= m {
        return Err(Error::InvalidDimension(format!("need 1 ≤ n < m, got m = {m}, n = {n}")));
    }
    let cap = PlsConfig::default().enum_cap;
    let count = binomial(m - 1, n);
    if count > cap as u128 {
        return Err(Error::CapExceeded { count, cap });
    }
    Ok((1..m)
        .combinations(n)
        .map(|c| pattern_from_changes(m, &c, SignSymbol::Minus))
        .collect())
}

/// Signs of `z_(τ)`: zero on `τ`, otherwise `(−1)^{#{j ∈ τ : j > i}}`.
pub fn corner_signature(tau: &IndexSubset) -> SignPattern {
    let symbols = (0..tau.ambient_dim())
        .map(|i| {
            if tau.contains(i) {
                SignSymbol::Zero
            } else {
                let later = tau.indices().iter().filter(|&&j| j > i).count();
                SignSymbol::from_parity(later % 2 == 1)
            }
        })
        .collect();
    SignPattern::new(symbols)
}

/// Result of checking the sign-change bounds on `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct SignatureCheck {
    pub z: Vec<f64>,
    pub pattern: SignPattern,
    pub v_min: usize,
    pub v_max: usize,
    pub passes: bool,
}

/// Computes `z` and checks `v_M(z) ≤ n`; with support above `n` also
/// `v_m(z) ∈ {n−1, n}`, and when both end entries are nonzero
/// `v_m = n`, `z_m > 0` and `(−1)ⁿ z_1 > 0`.
pub fn signature_lemma_check(
    spectrum: &EigenSpectrum,
    psi: &SquaredObservation,
    n: usize,
    cfg: &PlsConfig,
) -> Result<SignatureCheck> {
    let mut z = shrinkage_direct(spectrum, psi, n, cfg)?.z;
    let exact_corner = psi.cardinality() == n;
    if exact_corner {
        for &i in psi.support().indices() {
            z[i] = 0.0;
        }
    }
    let pattern = SignPattern::from_values(&z, cfg.zero_tol);
    let (v_min, v_max) = pattern.variation_bounds()?;
    let mut passes = v_max <= n;
    if !exact_corner {
        passes &= v_min + 1 == n || v_min == n;
        let s = pattern.symbols();
        let (first, last) = (s[0], s[s.len() - 1]);
        if first != SignSymbol::Zero && last != SignSymbol::Zero {
            let want_first = SignSymbol::from_parity(n % 2 == 1);
            passes &= v_min == n && last == SignSymbol::Plus && first == want_first;
        }
    }
    Ok(SignatureCheck {
        z,
        pattern,
        v_min,
        v_max,
        passes,
    })
}

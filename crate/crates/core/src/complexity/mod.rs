//! Sequence complexity measures: linear complexity (gcd and Berlekamp-Massey
//! routes), linear and maximum-order complexity profiles, and the order-2
//! correlation measure.

mod berlekamp_massey;
mod suffix_automaton;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyf2::{gcd, BinaryPolynomial};
use crate::sequences::BitSequence;
use suffix_automaton::BranchingAutomaton;

/// Default largest window length accepted by [`correlation_measure_2`].
pub const C2_DEFAULT_CAP: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ProfileKind {
    Linear,
    MaxOrder,
}

/// `values[N - 1]` is the measure of the first `N` terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityProfile {
    pub values: Vec<usize>,
    pub kind: ProfileKind,
}

impl ComplexityProfile {
    pub fn last(&self) -> Option<usize> {
        self.values.last().copied()
    }

    pub fn is_non_decreasing(&self) -> bool {
        self.values.windows(2).all(|w| w[0] <= w[1])
    }
}

/// A maximizing triple for the order-2 correlation measure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct C2Witness {
    pub value: usize,
    /// Window length.
    #[serde(rename = "M")]
    pub window: usize,
    pub d1: usize,
    pub d2: usize,
}

fn require_terms(seq: &BitSequence, n: usize) -> Result<()> {
    if n > seq.available() {
        return Err(Error::NotEnoughTerms {
            needed: n,
            available: seq.len(),
        });
    }
    Ok(())
}

/// `L = T - deg gcd(X^T - 1, S(X))` for a `T`-periodic sequence.
pub fn linear_complexity_gcd(seq: &BitSequence) -> Result<usize> {
    let t = seq.period().ok_or(Error::NotPeriodic)?;
    let s = BinaryPolynomial::from_sequence(seq)?;
    if s.is_zero() {
        return Ok(0);
    }
    let g = gcd(&BinaryPolynomial::x_pow_minus_1(t)?, &s)?;
    let deg = g.degree().finite().expect("gcd of nonzero polynomials");
    Ok(t - deg)
}

/// Shortest LFSR length generating the first `n_terms` terms.
///
/// A `T`-periodic sequence fed `2T` terms yields its periodic linear complexity.
pub fn linear_complexity_bm(seq: &BitSequence, n_terms: usize) -> Result<usize> {
    Ok(linear_profile(seq, n_terms)?.last().unwrap_or(0))
}

/// Periodic linear complexity via Berlekamp-Massey on two periods.
pub fn periodic_linear_complexity_bm(seq: &BitSequence) -> Result<usize> {
    let t = seq.period().ok_or(Error::NotPeriodic)?;
    linear_complexity_bm(seq, 2 * t)
}

/// Linear complexity profile of the first `n` terms, in one Berlekamp-Massey pass.
pub fn linear_profile(seq: &BitSequence, n: usize) -> Result<ComplexityProfile> {
    require_terms(seq, n)?;
    let prefix = seq.prefix(n)?;
    Ok(ComplexityProfile {
        values: berlekamp_massey::profile(prefix.packed()),
        kind: ProfileKind::Linear,
    })
}

/// Maximum order complexity of the first `n_terms` terms: the smallest
/// `M >= 1` such that equal `M`-windows are always followed by equal bits.
///
/// Computed as one more than the longest word followed by both `0` and `1`.
pub fn max_order_complexity(seq: &BitSequence, n_terms: usize) -> Result<usize> {
    if n_terms < 2 {
        return Err(Error::Invalid(format!(
            "maximum order complexity needs at least 2 terms, got {n_terms}"
        )));
    }
    Ok(*moc_values(seq, n_terms)?.last().expect("n_terms >= 2"))
}

/// Maximum order complexity of a periodic sequence over all `n >= 0`.
///
/// Windows repeat with the period, so scanning two periods is exact.
pub fn periodic_max_order_complexity(seq: &BitSequence) -> Result<usize> {
    let t = seq.period().ok_or(Error::NotPeriodic)?;
    max_order_complexity(seq, 2 * t)
}

/// `values[k - 1]` is the maximum order complexity of the first `k` terms
/// (taken as 1 for `k = 1`).
pub fn moc_profile(seq: &BitSequence, n: usize) -> Result<ComplexityProfile> {
    if n < 2 {
        return Err(Error::Invalid(format!(
            "maximum order complexity profile needs N >= 2, got {n}"
        )));
    }
    Ok(ComplexityProfile {
        values: moc_values(seq, n)?,
        kind: ProfileKind::MaxOrder,
    })
}

fn moc_values(seq: &BitSequence, n: usize) -> Result<Vec<usize>> {
    require_terms(seq, n)?;
    let mut automaton = BranchingAutomaton::with_capacity(n);
    Ok((0..n)
        .map(|i| {
            automaton.push(seq.bit(i));
            automaton.longest_branching().map_or(1, |l| l + 1)
        })
        .collect())
}

/// Order-2 correlation measure of the first `n` terms with a maximizing triple.
///
/// For a fixed lag `d2 - d1` the inner sum is a difference of two prefix sums
/// of `(-1)^(s_k + s_{k+lag})`, so the maximum over `(M, d1)` is the spread
/// between the largest and smallest prefix sum. This makes the exact search
/// quadratic in `n`. The first maximizing lag wins ties.
pub fn correlation_measure_2(seq: &BitSequence, n: usize, cap: usize) -> Result<C2Witness> {
    if n > cap {
        return Err(Error::OverCap { n, cap });
    }
    if n < 2 {
        return Err(Error::Invalid(format!("C2 needs N >= 2, got {n}")));
    }
    let bits = seq.terms(n)?;
    let mut best = C2Witness {
        value: 0,
        window: 0,
        d1: 0,
        d2: 0,
    };
    for lag in 1..n {
        let span = n - lag;
        let (mut sum, mut max, mut min) = (0i64, 0i64, 0i64);
        let (mut at_max, mut at_min) = (0usize, 0usize);
        for k in 0..span {
            sum += if bits[k] == bits[k + lag] { 1 } else { -1 };
            if sum > max {
                max = sum;
                at_max = k + 1;
            }
            if sum < min {
                min = sum;
                at_min = k + 1;
            }
        }
        let value = (max - min) as usize;
        if value > best.value {
            let d1 = at_max.min(at_min);
            best = C2Witness {
                value,
                window: at_max.abs_diff(at_min),
                d1,
                d2: d1 + lag,
            };
        }
    }
    Ok(best)
}

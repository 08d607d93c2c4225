//! Counting: balance, `s`-bit pattern frequencies, Legendre-symbol tuple
//! counts, residue gap runs and section sums.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{is_prime, is_primitive_root, ValidatedPrime};
use crate::polyf2::BinaryPolynomial;
use crate::sequences::BitSequence;

/// Longest Legendre tuple accepted by [`legendre_tuple_count`].
pub const MAX_TUPLE_LEN: usize = 24;

// pattern histograms index patterns by a u32 code
const MAX_PATTERN_LEN: usize = 24;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PatternCountReport {
    pub pattern: Vec<u8>,
    pub count: usize,
    pub expected: f64,
    pub deviation: f64,
}

impl PatternCountReport {
    fn new(pattern: Vec<u8>, count: usize, expected: f64) -> Self {
        Self {
            pattern,
            count,
            expected,
            deviation: (count as f64 - expected).abs(),
        }
    }

    pub fn relative_deviation(&self) -> f64 {
        self.deviation / self.expected
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LegendreTupleReport {
    pub epsilons: Vec<i8>,
    pub count: usize,
    pub expected: f64,
}

/// Zero and one counts over one period.
pub fn balance(seq: &BitSequence) -> Result<(usize, usize)> {
    let t = seq.period().ok_or(Error::NotPeriodic)?;
    let ones = seq.count_ones();
    Ok((t - ones, ones))
}

/// Pattern code with `x_0` as the most significant of `s` bits.
pub fn pattern_code(x: &[u8]) -> u32 {
    x.iter().fold(0, |acc, &b| (acc << 1) | (b != 0) as u32)
}

pub fn pattern_from_code(code: u32, s: usize) -> Vec<u8> {
    (0..s).map(|i| ((code >> (s - 1 - i)) & 1) as u8).collect()
}

fn check_pattern_len(s: usize, max: usize) -> Result<()> {
    if s == 0 || s > max {
        return Err(Error::PatternLength { s, max });
    }
    Ok(())
}

/// Counts of every `s`-bit window starting at `n = 0..n_windows`, indexed by
/// [`pattern_code`]. Reads wrap when the sequence is periodic.
pub fn window_histogram(seq: &BitSequence, s: usize, n_windows: usize) -> Result<Vec<usize>> {
    check_pattern_len(s, MAX_PATTERN_LEN)?;
    let needed = n_windows + s - 1;
    if needed > seq.available() {
        return Err(Error::NotEnoughTerms {
            needed,
            available: seq.len(),
        });
    }
    let mut hist = vec![0usize; 1 << s];
    if n_windows == 0 {
        return Ok(hist);
    }
    let mask = (1u32 << s) - 1;
    let mut code = (0..s - 1).fold(0u32, |acc, i| (acc << 1) | seq.bit(i) as u32);
    for n in 0..n_windows {
        code = ((code << 1) | seq.bit(n + s - 1) as u32) & mask;
        hist[code as usize] += 1;
    }
    Ok(hist)
}

/// Windows over one full period of starting positions, reading past the end
/// through periodicity. Expected count is `p / 2^(s+1)` with `p = 2T + 3`.
pub fn pattern_count(seq: &BitSequence, x: &[u8]) -> Result<PatternCountReport> {
    let t = seq.period().ok_or(Error::NotPeriodic)?;
    let s = x.len();
    if s == 0 || s > t {
        return Err(Error::PatternLength { s, max: t });
    }
    let count = window_histogram(seq, s, t)?[pattern_code(x) as usize];
    let p = 2 * t + 3;
    Ok(PatternCountReport::new(
        x.to_vec(),
        count,
        p as f64 / (1u64 << (s + 1)) as f64,
    ))
}

/// Reports for all `2^s` patterns of length `s` over one period.
pub fn pattern_reports(seq: &BitSequence, s: usize) -> Result<Vec<PatternCountReport>> {
    let t = seq.period().ok_or(Error::NotPeriodic)?;
    if s == 0 || s > t {
        return Err(Error::PatternLength { s, max: t });
    }
    let hist = window_histogram(seq, s, t)?;
    let expected = (2 * t + 3) as f64 / (1u64 << (s + 1)) as f64;
    Ok(hist
        .into_iter()
        .enumerate()
        .map(|(code, count)| PatternCountReport::new(pattern_from_code(code as u32, s), count, expected))
        .collect())
}

/// Windows starting at `n = 0..N`; expected count is `N / 2^(s+1)`.
pub fn prefix_pattern_count(seq: &BitSequence, x: &[u8], n: usize) -> Result<PatternCountReport> {
    let s = x.len();
    let count = window_histogram(seq, s, n)?[pattern_code(x) as usize];
    Ok(PatternCountReport::new(
        x.to_vec(),
        count,
        n as f64 / (1u64 << (s + 1)) as f64,
    ))
}

pub fn prefix_pattern_reports(seq: &BitSequence, s: usize, n: usize) -> Result<Vec<PatternCountReport>> {
    let hist = window_histogram(seq, s, n)?;
    let expected = n as f64 / (1u64 << (s + 1)) as f64;
    Ok(hist
        .into_iter()
        .enumerate()
        .map(|(code, count)| PatternCountReport::new(pattern_from_code(code as u32, s), count, expected))
        .collect())
}

/// Counts of every sign tuple of length `s` over `j = 1..=p-s`, indexed by a
/// code whose most significant bit is `(j/p) = +1`.
pub fn legendre_tuple_histogram(p: &ValidatedPrime, s: usize) -> Result<Vec<usize>> {
    check_pattern_len(s, MAX_TUPLE_LEN)?;
    let m = p.get();
    if s as u64 >= m {
        return Err(Error::PatternLength {
            s,
            max: (m - 1) as usize,
        });
    }
    let mut hist = vec![0usize; 1 << s];
    let mask = (1u32 << s) - 1;
    let sym = |a: u64| (p.legendre(a as i64) == 1) as u32;
    let mut code = (1..s as u64).fold(0u32, |acc, a| (acc << 1) | sym(a));
    for j in 1..=m - s as u64 {
        code = ((code << 1) | sym(j + s as u64 - 1)) & mask;
        hist[code as usize] += 1;
    }
    Ok(hist)
}

/// Number of `j` in `[1, p-s]` with `((j+i)/p) = epsilons[i]` for all `i`.
/// Expected count is `p / 2^s`.
pub fn legendre_tuple_count(p: &ValidatedPrime, epsilons: &[i8]) -> Result<LegendreTupleReport> {
    let s = epsilons.len();
    if let Some(&e) = epsilons.iter().find(|&&e| e != 1 && e != -1) {
        return Err(Error::Invalid(format!("tuple entry {e} is not +1 or -1")));
    }
    let hist = legendre_tuple_histogram(p, s)?;
    let code = epsilons
        .iter()
        .fold(0u32, |acc, &e| (acc << 1) | (e == 1) as u32);
    Ok(LegendreTupleReport {
        epsilons: epsilons.to_vec(),
        count: hist[code as usize],
        expected: p.get() as f64 / (1u64 << s) as f64,
    })
}

/// Entry `k` counts the `j` in `[1, p-2-k]` whose Legendre symbols over
/// `j..=j+k+1` read `(1, -1, ..., -1, 1)` with `k` minus signs.
///
/// Scans symbols directly rather than the residue list.
pub fn gap_run_histogram(p: &ValidatedPrime) -> Vec<usize> {
    let m = p.get();
    let mut hist = Vec::new();
    let mut last_residue: Option<u64> = None;
    for a in 1..m {
        if p.legendre(a as i64) == 1 {
            if let Some(j) = last_residue {
                let k = (a - j - 1) as usize;
                if hist.len() <= k {
                    hist.resize(k + 1, 0);
                }
                hist[k] += 1;
            }
            last_residue = Some(a);
        }
    }
    hist
}

pub fn gap_run_count(p: &ValidatedPrime, k: usize) -> Result<usize> {
    if k as u64 + 2 > p.get() {
        return Err(Error::Invalid(format!(
            "run length {k} needs k + 2 <= p = {}",
            p.get()
        )));
    }
    Ok(gap_run_histogram(p).get(k).copied().unwrap_or(0))
}

/// Entry `h` is `sum_j seq[h + j r]` over one period, for `h = 0..r`.
pub fn section_sums(seq: &BitSequence, r: usize) -> Result<Vec<usize>> {
    let t = seq.period().ok_or(Error::NotPeriodic)?;
    if r == 0 || t % r != 0 {
        return Err(Error::NotADivisor { r, period: t });
    }
    let mut sums = vec![0usize; r];
    for n in 0..t {
        sums[n % r] += seq.bit(n) as usize;
    }
    Ok(sums)
}

/// Outcome of the section-sum necessary condition for a root of unity of
/// order `r` being a zero of `S(X)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionLemmaCheck {
    pub r: usize,
    /// Whether `(X^r + 1)/(X + 1)` divides `S(X)`.
    pub cyclotomic_divides: bool,
    /// `S(1)` as 0 or 1.
    pub s_at_one: u8,
    pub sums: Vec<usize>,
    /// Whether every section sum is congruent to `S(1)` mod 2.
    pub sums_match: bool,
}

impl SectionLemmaCheck {
    /// The implication "factor divides, so sums match" holds.
    pub fn holds(&self) -> bool {
        !self.cyclotomic_divides || self.sums_match
    }
}

/// Section-sum check for an odd prime `r | T` with 2 a primitive root mod `r`.
pub fn section_lemma(seq: &BitSequence, r: usize) -> Result<SectionLemmaCheck> {
    if r < 3 || !is_prime(r as u64) || !is_primitive_root(2, r as u64)? {
        return Err(Error::Invalid(format!(
            "{r} must be an odd prime with 2 as a primitive root"
        )));
    }
    let sums = section_sums(seq, r)?;
    let s = BinaryPolynomial::from_sequence(seq)?;
    let (cyclotomic, rem) = BinaryPolynomial::x_pow_minus_1(r)?.div_rem(&BinaryPolynomial::from_exponents(&[0, 1]))?;
    debug_assert!(rem.is_zero());
    let cyclotomic_divides = cyclotomic.divides(&s)?;
    let s_at_one = s.eval_at_one();
    let sums_match = sums.iter().all(|&x| (x % 2) as u8 == s_at_one);
    Ok(SectionLemmaCheck {
        r,
        cyclotomic_divides,
        s_at_one,
        sums,
        sums_match,
    })
}

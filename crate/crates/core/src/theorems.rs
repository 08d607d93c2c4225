//! Prediction-versus-computation reports for the closed-form results about the
//! gap sequences.
//!
//! Exact results (complexity formulas, parity formulas, residue counts) get
//! exact comparisons. Asymptotic results get explicit tolerances and an
//! exemption floor for small primes, since their implied constants are not
//! known; raw deviations are always reported.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::complexity::{
    correlation_measure_2, linear_complexity_gcd, max_order_complexity, periodic_max_order_complexity,
};
use crate::error::{Error, Result};
use crate::numtheory::{is_prime, is_primitive_root, largest_quadratic_residue, two_adic_split, ResidueCase, ValidatedPrime};
use crate::sequences::{build_d, build_t, BitSequence};
use crate::stats::{balance, pattern_reports, prefix_pattern_reports};

/// Primes below 10^5 at which asymptotic checks are not asserted.
pub const ASYMPTOTIC_FLOOR: u64 = 100_000;
pub const IMBALANCE_TOLERANCE: f64 = 0.02;
pub const PATTERN_TOLERANCE: f64 = 0.05;
pub const PATTERN_MAX_LEN: usize = 4;
pub const LOCAL_PATTERN_MAX_LEN: usize = 3;
/// Constant `c` in the local pattern bound `c * s * sqrt(p) * (ln p)^2`.
pub const LOCAL_PATTERN_CONSTANT: f64 = 5.0;

/// Primes where the `s = 1` case of the maximal-complexity result for `d_n`
/// is settled by a witness `n` with Legendre symbols `(1, -1, -1, 1)` on
/// `n..=n+3`, as `(p, n)`.
pub const SMALL_PRIME_WITNESSES: [(u64, u64); 4] = [(23, 9), (47, 9), (79, 5), (151, 5)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TheoremId {
    /// `L(d_n) = (p-3)/2` for `p = 2^(s+1) r + 3`, `s` in {0, 1}.
    ThmDMaxlc,
    /// Parity of ones in a period of `d_n`.
    EqS1,
    /// Largest quadratic residue by residue class of `p`.
    LargestQr,
    /// Number of ones in a period of `t_n`.
    EqE5,
    /// `L(t_n)` for `p = 9, 13 (mod 16)` with `(p-3)/2` prime.
    ThmTLc,
    /// About 1/3 zeros and 2/3 ones in `d_n`.
    ThmImbalance,
    /// `s`-bit patterns of `t_n` over a period are equidistributed.
    ThmPattern,
    /// Same over a prefix of length `N`.
    CorLocalPattern,
    /// Lower bound on the `N`-th maximum order complexity of `t_n`.
    ThmMocBound,
    /// `M(t_n) >= log2((p-3)/2)`.
    TrivialMocBound,
    /// `C_2 >= M - 1`.
    IneqCm,
    /// Parity of ones in a period of `t_n`.
    EqT1,
}

impl TheoremId {
    pub const ALL: [TheoremId; 12] = [
        Self::ThmDMaxlc,
        Self::EqS1,
        Self::LargestQr,
        Self::EqE5,
        Self::ThmTLc,
        Self::ThmImbalance,
        Self::ThmPattern,
        Self::CorLocalPattern,
        Self::ThmMocBound,
        Self::TrivialMocBound,
        Self::IneqCm,
        Self::EqT1,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::ThmDMaxlc => "THM_D_MAXLC",
            Self::EqS1 => "EQ_S1",
            Self::LargestQr => "LARGEST_QR",
            Self::EqE5 => "EQ_E5",
            Self::ThmTLc => "THM_T_LC",
            Self::ThmImbalance => "THM_IMBALANCE",
            Self::ThmPattern => "THM_PATTERN",
            Self::CorLocalPattern => "COR_LOCAL_PATTERN",
            Self::ThmMocBound => "THM_MOC_BOUND",
            Self::TrivialMocBound => "TRIVIAL_MOC_BOUND",
            Self::IneqCm => "INEQ_CM",
            Self::EqT1 => "EQ_T1",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.to_ascii_uppercase().replace('-', "_");
        Self::ALL
            .into_iter()
            .find(|id| id.as_str() == upper)
            .ok_or_else(|| Error::Invalid(format!("unknown theorem id {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Confirmed,
    NotApplicable,
    Violated,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Confirmed => "CONFIRMED",
            Self::NotApplicable => "NOT_APPLICABLE",
            Self::Violated => "VIOLATED",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A compared quantity: a count, a real, or a pair of reals.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Quantity {
    Int(i64),
    Real(f64),
    Pair(f64, f64),
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Int(v) => write!(f, "{v}"),
            Quantity::Real(v) => write!(f, "{v:.6}"),
            Quantity::Pair(a, b) => write!(f, "({a:.6}, {b:.6})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem_id: TheoremId,
    /// Absent for checks run on an arbitrary sequence.
    pub p: Option<u64>,
    pub hypothesis_holds: bool,
    /// Predicted value, or the bound a deviation is compared against.
    pub predicted: Option<Quantity>,
    pub computed: Quantity,
    pub verdict: Verdict,
    /// Which hypothesis clause failed, or what was compared.
    pub detail: String,
}

impl TheoremReport {
    fn not_applicable(id: TheoremId, p: Option<u64>, computed: Quantity, why: impl Into<String>) -> Self {
        Self {
            theorem_id: id,
            p,
            hypothesis_holds: false,
            predicted: None,
            computed,
            verdict: Verdict::NotApplicable,
            detail: why.into(),
        }
    }

    fn judged(
        id: TheoremId,
        p: Option<u64>,
        predicted: Option<Quantity>,
        computed: Quantity,
        ok: bool,
        detail: impl Into<String>,
    ) -> Self {
        Self {
            theorem_id: id,
            p,
            hypothesis_holds: true,
            predicted,
            computed,
            verdict: if ok { Verdict::Confirmed } else { Verdict::Violated },
            detail: detail.into(),
        }
    }

    fn exact(id: TheoremId, p: u64, predicted: i64, computed: i64, detail: impl Into<String>) -> Self {
        Self::judged(
            id,
            Some(p),
            Some(Quantity::Int(predicted)),
            Quantity::Int(computed),
            predicted == computed,
            detail,
        )
    }

    pub fn is_violation(&self) -> bool {
        self.verdict == Verdict::Violated
    }
}

fn half_period(p: u64) -> u64 {
    (p - 3) / 2
}

/// `Ok((s, r))` when `p - 3 = 2^(s+1) r` satisfies the maximal-complexity
/// hypothesis for `d_n`, otherwise the failing clause.
pub fn thm1_hypothesis(p: u64) -> std::result::Result<(u32, u64), String> {
    let (a, r) = two_adic_split(p - 3);
    let s = a - 1;
    if s > 1 {
        return Err(format!("p - 3 = 2^{a} * {r}: exponent s = {s} is not 0 or 1"));
    }
    if r == 1 {
        return Ok((s, r));
    }
    if !is_prime(r) {
        return Err(format!("r = {r} is not prime"));
    }
    if !is_primitive_root(2, r).expect("r is an odd prime") {
        return Err(format!("2 is not a primitive root modulo r = {r}"));
    }
    Ok((s, r))
}

/// `Ok(r)` when `p = 9, 13 (mod 16)`, `r = (p-3)/2` is prime and 2 is a
/// primitive root modulo `r`.
pub fn thm_t_lc_hypothesis(p: u64) -> std::result::Result<u64, String> {
    if !matches!(p % 16, 9 | 13) {
        return Err(format!("p = {} (mod 16), not 9 or 13", p % 16));
    }
    let r = half_period(p);
    if !is_prime(r) {
        return Err(format!("r = (p-3)/2 = {r} is not prime"));
    }
    if !is_primitive_root(2, r).expect("r is an odd prime") {
        return Err(format!("2 is not a primitive root modulo r = {r}"));
    }
    Ok(r)
}

/// Maximal linear complexity of `d_n` under the `p = 2^(s+1) r + 3` hypothesis.
pub fn check_thm1(p: &ValidatedPrime) -> Result<TheoremReport> {
    let computed = linear_complexity_gcd(&build_d(p))? as i64;
    Ok(thm1_report(p.get(), computed))
}

/// Same as [`check_thm1`] with `L(d_n)` already computed.
pub fn thm1_report(p: u64, lc_d: i64) -> TheoremReport {
    let id = TheoremId::ThmDMaxlc;
    match thm1_hypothesis(p) {
        Ok((s, r)) => TheoremReport::exact(id, p, half_period(p) as i64, lc_d, format!("s = {s}, r = {r}")),
        Err(why) => TheoremReport::not_applicable(id, Some(p), Quantity::Int(lc_d), why),
    }
}

/// `D(1) = 0` iff `p = 3 (mod 8)`.
pub fn check_eq_s1(p: &ValidatedPrime) -> TheoremReport {
    let predicted = if p.get() % 8 == 3 { 0 } else { 1 };
    let computed = (build_d(p).count_ones() % 2) as i64;
    TheoremReport::exact(TheoremId::EqS1, p.get(), predicted, computed, "D(1) = parity of ones in d_n")
}

/// Largest residue is `p-1`, `p-2`, or `p-u` with odd `u > 2` by class of `p`.
pub fn check_largest_qr(p: &ValidatedPrime) -> TheoremReport {
    let m = p.get();
    let largest = largest_quadratic_residue(p);
    let computed = Quantity::Int(largest.value as i64);
    match largest.case {
        ResidueCase::Pm1Mod4 => TheoremReport::exact(
            TheoremId::LargestQr,
            m,
            (m - 1) as i64,
            largest.value as i64,
            "p = 1 (mod 4): largest residue p - 1",
        ),
        ResidueCase::P3Mod8 => TheoremReport::exact(
            TheoremId::LargestQr,
            m,
            (m - 2) as i64,
            largest.value as i64,
            "p = 3 (mod 8): largest residue p - 2",
        ),
        ResidueCase::P7Mod8 => {
            let u = largest.u;
            TheoremReport::judged(
                TheoremId::LargestQr,
                Some(m),
                None,
                computed,
                u % 2 == 1 && u > 2,
                format!("p = 7 (mod 8): largest residue p - u with u = {u}, expected odd and > 2"),
            )
        }
    }
}

/// Ones in a period of `t_n`: `(p-3)/4` or `(p-5)/4` by `p mod 4`.
pub fn check_eq_e5(p: &ValidatedPrime) -> TheoremReport {
    let m = p.get();
    let predicted = if m % 4 == 3 { (m - 3) / 4 } else { (m - 5) / 4 };
    TheoremReport::exact(
        TheoremId::EqE5,
        m,
        predicted as i64,
        build_t(p).count_ones() as i64,
        "ones in a period of t_n",
    )
}

/// `T(1) = 1` iff `p = +-1 (mod 8)`.
pub fn check_eq_t1(p: &ValidatedPrime) -> TheoremReport {
    let predicted = if matches!(p.get() % 8, 1 | 7) { 1 } else { 0 };
    TheoremReport::exact(
        TheoremId::EqT1,
        p.get(),
        predicted,
        (build_t(p).count_ones() % 2) as i64,
        "T(1) = parity of ones in t_n",
    )
}

/// Linear complexity of `t_n` for `p = 9, 13 (mod 16)` with `(p-3)/2` prime.
pub fn check_thm_t_lc(p: &ValidatedPrime) -> Result<TheoremReport> {
    let computed = linear_complexity_gcd(&build_t(p))? as i64;
    Ok(thm_t_lc_report(p.get(), computed))
}

/// Same as [`check_thm_t_lc`] with `L(t_n)` already computed.
pub fn thm_t_lc_report(p: u64, lc_t: i64) -> TheoremReport {
    let id = TheoremId::ThmTLc;
    match thm_t_lc_hypothesis(p) {
        Ok(r) => {
            let predicted = if p % 16 == 9 { (p - 3) / 2 } else { (p - 5) / 2 };
            TheoremReport::exact(id, p, predicted as i64, lc_t, format!("r = {r}, p = {} (mod 16)", p % 16))
        }
        Err(why) => TheoremReport::not_applicable(id, Some(p), Quantity::Int(lc_t), why),
    }
}

/// Ones and zeros of `d_n` against the 1/3 : 2/3 split, asserted only for
/// `p >= floor`.
pub fn check_imbalance(p: &ValidatedPrime, tol: f64, floor: u64) -> Result<TheoremReport> {
    let d = build_d(p);
    let (n0, n1) = balance(&d)?;
    let t = d.len() as f64;
    let (r0, r1) = (n0 as f64 / t, n1 as f64 / t);
    let computed = Quantity::Pair(r0, r1);
    let id = TheoremId::ThmImbalance;
    if p.get() < floor {
        return Ok(TheoremReport::not_applicable(
            id,
            Some(p.get()),
            computed,
            format!("p below the asymptotic floor {floor}"),
        ));
    }
    let dev = (r0 - 1.0 / 3.0).abs().max((r1 - 2.0 / 3.0).abs());
    Ok(TheoremReport::judged(
        id,
        Some(p.get()),
        Some(Quantity::Pair(1.0 / 3.0, 2.0 / 3.0)),
        computed,
        dev <= tol,
        format!("N0 = {n0}, N1 = {n1}, max deviation {dev:.6}, tolerance {tol}"),
    ))
}

/// Largest relative deviation of any `t_n` pattern count of length `<= s_max`
/// from `p / 2^(s+1)`, compared with `tol`; asserted only for `p >= floor`.
pub fn check_pattern_thm(p: &ValidatedPrime, s_max: usize, tol: f64, floor: u64) -> Result<TheoremReport> {
    let t = build_t(p);
    let mut worst = (0.0f64, Vec::new(), 0usize);
    let mut n_patterns = 0;
    for s in 1..=s_max.min(t.len()) {
        for r in pattern_reports(&t, s)? {
            n_patterns += 1;
            let rel = r.relative_deviation();
            if rel > worst.0 {
                worst = (rel, r.pattern.clone(), r.count);
            }
        }
    }
    let id = TheoremId::ThmPattern;
    let computed = Quantity::Real(worst.0);
    if p.get() < floor {
        return Ok(TheoremReport::not_applicable(
            id,
            Some(p.get()),
            computed,
            format!("p below the asymptotic floor {floor}"),
        ));
    }
    Ok(TheoremReport::judged(
        id,
        Some(p.get()),
        Some(Quantity::Real(tol)),
        computed,
        worst.0 <= tol,
        format!(
            "{n_patterns} patterns with s <= {s_max}; worst {:?} with count {}",
            worst.1, worst.2
        ),
    ))
}

/// Prefix pattern counts of `t_n` over `n < N` against
/// `N / 2^(s+1) +- c * s * sqrt(p) * (ln p)^2`. The computed value is the
/// largest ratio of deviation to bound, so it must not exceed 1.
pub fn check_local_pattern(p: &ValidatedPrime, n: usize, s_max: usize, c_const: f64) -> Result<TheoremReport> {
    let t = build_t(p);
    let id = TheoremId::CorLocalPattern;
    let m = p.get() as f64;
    if n == 0 || n > t.len().saturating_sub(1) {
        return Ok(TheoremReport::not_applicable(
            id,
            Some(p.get()),
            Quantity::Real(0.0),
            format!("N = {n} outside 1..=(p-5)/2"),
        ));
    }
    let mut worst = (0.0f64, Vec::new(), 0.0f64);
    for s in 1..=s_max {
        let bound = c_const * s as f64 * m.sqrt() * m.ln().powi(2);
        for r in prefix_pattern_reports(&t, s, n)? {
            let ratio = r.deviation / bound;
            if ratio > worst.0 {
                worst = (ratio, r.pattern.clone(), r.deviation);
            }
        }
    }
    Ok(TheoremReport::judged(
        id,
        Some(p.get()),
        Some(Quantity::Real(1.0)),
        Quantity::Real(worst.0),
        worst.0 <= 1.0,
        format!(
            "N = {n}, s <= {s_max}, c = {c_const}; worst {:?} deviates by {:.3}",
            worst.1, worst.2
        ),
    ))
}

/// `M(t_n) >= log2((p-3)/2)` for the periodic maximum order complexity.
pub fn check_trivial_moc(p: &ValidatedPrime) -> Result<TheoremReport> {
    let m = periodic_max_order_complexity(&build_t(p))?;
    Ok(trivial_moc_report(p.get(), m))
}

/// Same as [`check_trivial_moc`] with `M(t_n)` already computed.
pub fn trivial_moc_report(p: u64, moc_t: usize) -> TheoremReport {
    let id = TheoremId::TrivialMocBound;
    if p <= 5 {
        return TheoremReport::not_applicable(id, Some(p), Quantity::Int(moc_t as i64), "needs p > 5");
    }
    let bound = (half_period(p) as f64).log2();
    TheoremReport::judged(
        id,
        Some(p),
        Some(Quantity::Real(bound)),
        Quantity::Int(moc_t as i64),
        moc_t as f64 >= bound,
        "M(t_n) >= log2((p-3)/2)",
    )
}

/// Main term `log2(N / sqrt(p)) - 4 log2(ln p)` of the `N`-th maximum order
/// complexity lower bound, without its unknown additive constant.
pub fn moc_bound_main_term(p: u64, n: usize) -> f64 {
    let m = p as f64;
    (n as f64 / m.sqrt()).log2() - 4.0 * m.ln().log2()
}

/// Report-only comparison of `M(t_n, N)` with the main term of its lower
/// bound. The verdict rests on the trivial periodic bound and on
/// `M(t_n, N) <= M(t_n)`, since the bound's additive constant is unknown.
pub fn check_moc_bound(p: &ValidatedPrime, n: usize) -> Result<TheoremReport> {
    let t = build_t(p);
    let period = t.len();
    let prefix_moc = if n >= 2 { max_order_complexity(&t, n)? } else { 1 };
    let periodic_moc = periodic_max_order_complexity(&t)?;
    let main = moc_bound_main_term(p.get(), n);
    let trivial = (period as f64).log2();
    let ok = (periodic_moc as f64 >= trivial || p.get() <= 5) && prefix_moc <= periodic_moc;
    let range_note = if n == 0 || n > period.saturating_sub(1) {
        format!(" (N outside 1..=(p-5)/2 = {})", period.saturating_sub(1))
    } else {
        String::new()
    };
    Ok(TheoremReport::judged(
        TheoremId::ThmMocBound,
        Some(p.get()),
        Some(Quantity::Real(main)),
        Quantity::Int(prefix_moc as i64),
        ok,
        format!(
            "report only: N = {n}{range_note}, M(t_n, N) = {prefix_moc}, main term {main:.4} (additive constant unknown), \
             gap {:.4}; asserted: M(t_n) = {periodic_moc} >= log2(T) = {trivial:.4}",
            prefix_moc as f64 - main
        ),
    ))
}

/// `C_2 >= M - 1` on the first `n` terms of `seq`.
pub fn check_cm(seq: &BitSequence, n: usize, cap: usize) -> Result<TheoremReport> {
    let c2 = correlation_measure_2(seq, n, cap)?;
    let moc = max_order_complexity(seq, n)?;
    Ok(TheoremReport::judged(
        TheoremId::IneqCm,
        None,
        Some(Quantity::Int(moc as i64 - 1)),
        Quantity::Int(c2.value as i64),
        c2.value + 1 >= moc,
        format!(
            "N = {n}: C2 = {} (M = {}, d1 = {}, d2 = {}), maximum order complexity {moc}",
            c2.value, c2.window, c2.d1, c2.d2
        ),
    ))
}

/// [`check_cm`] on two periods of `t_n`, where the window measure equals the
/// periodic maximum order complexity. Refused when `2T` exceeds `cap`.
pub fn check_cm_for_prime(p: &ValidatedPrime, cap: usize) -> Result<TheoremReport> {
    let t = build_t(p);
    let n = 2 * t.len();
    let mut report = check_cm(&t, n, cap)?;
    report.p = Some(p.get());
    Ok(report)
}

/// Whether the Legendre symbols on `n..n + pattern.len()` equal `pattern`.
pub fn legendre_pattern_at(p: &ValidatedPrime, n: u64, pattern: &[i8]) -> bool {
    pattern
        .iter()
        .enumerate()
        .all(|(i, &e)| p.legendre((n + i as u64) as i64) == e)
}

/// The exact checks (no tolerance involved) for one prime.
pub fn exact_checks(p: &ValidatedPrime) -> Result<Vec<TheoremReport>> {
    Ok(vec![
        check_thm1(p)?,
        check_eq_s1(p),
        check_largest_qr(p),
        check_eq_e5(p),
        check_eq_t1(p),
        check_thm_t_lc(p)?,
    ])
}

/// Runs one check with the default tolerances.
pub fn run_check(id: TheoremId, p: &ValidatedPrime, c2_cap: usize) -> Result<TheoremReport> {
    let period = p.period();
    match id {
        TheoremId::ThmDMaxlc => check_thm1(p),
        TheoremId::EqS1 => Ok(check_eq_s1(p)),
        TheoremId::LargestQr => Ok(check_largest_qr(p)),
        TheoremId::EqE5 => Ok(check_eq_e5(p)),
        TheoremId::EqT1 => Ok(check_eq_t1(p)),
        TheoremId::ThmTLc => check_thm_t_lc(p),
        TheoremId::ThmImbalance => check_imbalance(p, IMBALANCE_TOLERANCE, ASYMPTOTIC_FLOOR),
        TheoremId::ThmPattern => check_pattern_thm(p, PATTERN_MAX_LEN, PATTERN_TOLERANCE, ASYMPTOTIC_FLOOR),
        TheoremId::CorLocalPattern => {
            check_local_pattern(p, (period / 2).max(1), LOCAL_PATTERN_MAX_LEN, LOCAL_PATTERN_CONSTANT)
        }
        TheoremId::ThmMocBound => check_moc_bound(p, period),
        TheoremId::TrivialMocBound => check_trivial_moc(p),
        TheoremId::IneqCm => check_cm_for_prime(p, c2_cap),
    }
}

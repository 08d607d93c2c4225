use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use qrgap::complexity::C2_DEFAULT_CAP;
use qrgap::numtheory::{is_prime, primes_from, primes_in_range};

use crate::error::{Result, SurveyError};

/// A measurement group that can be switched on per run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Measure {
    /// Linear complexity of `d_n` and the maximal-complexity check.
    LcD,
    /// Linear complexity of `t_n` and its closed-form check.
    LcT,
    /// Periodic maximum order complexity of `t_n`.
    Moc,
    /// Correlation measure of order 2 on two periods of `t_n`.
    C2,
    /// Counts and the exact parity / residue formulas.
    Stats,
}

impl Measure {
    pub const ALL: [Measure; 5] = [Self::LcD, Self::LcT, Self::Moc, Self::C2, Self::Stats];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::LcD => "lc_d",
            Self::LcT => "lc_t",
            Self::Moc => "moc",
            Self::C2 => "c2",
            Self::Stats => "stats",
        }
    }
}

impl FromStr for Measure {
    type Err = SurveyError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.as_str() == s.trim())
            .ok_or_else(|| {
                SurveyError::Config(format!(
                    "unknown measure {s:?}; expected one of lc_d, lc_t, moc, c2, stats"
                ))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MeasureSet(BTreeSet<Measure>);

impl MeasureSet {
    pub fn new(measures: impl IntoIterator<Item = Measure>) -> Self {
        Self(measures.into_iter().collect())
    }

    pub fn contains(&self, m: Measure) -> bool {
        self.0.contains(&m)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Default for MeasureSet {
    /// Everything except the correlation measure, which has a size cap.
    fn default() -> Self {
        Self::new([Measure::LcD, Measure::LcT, Measure::Moc, Measure::Stats])
    }
}

impl fmt::Display for MeasureSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<_> = self.0.iter().map(|m| m.as_str()).collect();
        f.write_str(&names.join(","))
    }
}

impl FromStr for MeasureSet {
    type Err = SurveyError;

    fn from_str(s: &str) -> Result<Self> {
        let set = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(str::parse)
            .collect::<Result<BTreeSet<_>>>()?;
        Ok(Self(set))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeSelection {
    /// The first `k` primes `>= 5`.
    FirstK(usize),
    /// Primes in `[lo, hi]` that are at least 5.
    Range(u64, u64),
    /// An explicit list; every entry must be a prime `>= 5`.
    List(Vec<u64>),
}

impl PrimeSelection {
    /// The selected primes in ascending order without duplicates.
    pub fn resolve(&self) -> Result<Vec<u64>> {
        match self {
            Self::FirstK(k) => Ok(primes_from(5).take(*k).collect()),
            Self::Range(lo, hi) => Ok(primes_in_range((*lo).max(5).min(hi.saturating_add(1)), *hi)
                .or_else(|e| match e {
                    qrgap::Error::EmptyRange { .. } if lo <= hi => Ok(Vec::new()),
                    e => Err(e),
                })?),
            Self::List(ps) => {
                if let Some(&bad) = ps.iter().find(|&&p| p < 5 || !is_prime(p)) {
                    return Err(qrgap::ValidatedPrime::new(bad).unwrap_err().into());
                }
                let set: BTreeSet<u64> = ps.iter().copied().collect();
                Ok(set.into_iter().collect())
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Self::FirstK(k) => format!(
                "first {k} primes p >= 5, i.e. 5, 7, 11, ... (p = 5 included; 2 and 3 excluded)"
            ),
            Self::Range(lo, hi) => format!("primes p >= 5 in [{lo}, {hi}]"),
            Self::List(ps) => format!("explicit list of {} primes", ps.len()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Jsonl,
}

impl FromStr for OutputFormat {
    type Err = SurveyError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "jsonl" => Ok(Self::Jsonl),
            other => Err(SurveyError::Config(format!(
                "unknown format {other:?}; expected csv or jsonl"
            ))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SurveyConfig {
    pub selection: PrimeSelection,
    pub measures: MeasureSet,
    pub c2_cap: usize,
    pub jobs: usize,
    /// `None` writes records to stdout.
    pub output: Option<PathBuf>,
    pub format: OutputFormat,
    pub cache_dir: Option<PathBuf>,
    /// Fill `elapsed_ms`; off by default so output is reproducible.
    pub timing: bool,
}

impl SurveyConfig {
    pub fn new(selection: PrimeSelection) -> Self {
        Self {
            selection,
            measures: MeasureSet::default(),
            c2_cap: C2_DEFAULT_CAP,
            jobs: 1,
            output: None,
            format: OutputFormat::Csv,
            cache_dir: None,
            timing: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.measures.is_empty() {
            return Err(SurveyError::Config("at least one measure must be enabled".into()));
        }
        if self.jobs == 0 {
            return Err(SurveyError::Config("--jobs must be at least 1".into()));
        }
        if let PrimeSelection::Range(lo, hi) = self.selection {
            if lo > hi {
                return Err(qrgap::Error::EmptyRange { lo, hi }.into());
            }
        }
        Ok(())
    }
}

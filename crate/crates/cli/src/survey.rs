use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;

use qrgap::theorems::{TheoremId, Verdict};

use crate::analyze::{analyze, Analysis};
use crate::cache::{Cache, CacheKey};
use crate::config::{Measure, SurveyConfig};
use crate::error::{Result, SurveyError};
use crate::output::{open_sink, write_records};
use crate::record::SurveyRecord;
use crate::CODE_VERSION;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerdictCounts {
    pub theorem: TheoremId,
    pub confirmed: usize,
    pub not_applicable: usize,
    pub violated: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurveySummary {
    /// How the prime selection was read, so counts can be audited.
    pub selection: String,
    pub records: usize,
    pub p_min: Option<u64>,
    pub p_max: Option<u64>,
    /// `(maximal, out of)` over all records with `lc_d`.
    pub lc_d_maximal: Option<(usize, usize)>,
    /// Same with `p = 5` left out.
    pub lc_d_maximal_without_5: Option<(usize, usize)>,
    /// Per theorem, in a fixed order; theorems never checked are omitted.
    pub verdicts: Vec<VerdictCounts>,
    pub violations: usize,
}

impl SurveySummary {
    pub fn from_analyses(selection: String, analyses: &[Analysis]) -> Self {
        let records: Vec<&SurveyRecord> = analyses.iter().map(|a| &a.record).collect();
        let has_lc_d = records.iter().any(|r| r.lc_d_maximal.is_some());
        let maximal = |skip5: bool| {
            let flags: Vec<bool> = records
                .iter()
                .filter(|r| !(skip5 && r.p == 5))
                .filter_map(|r| r.lc_d_maximal)
                .collect();
            has_lc_d.then(|| (flags.iter().filter(|&&m| m).count(), flags.len()))
        };
        let verdicts = TheoremId::ALL
            .into_iter()
            .filter_map(|id| {
                let mut c = VerdictCounts {
                    theorem: id,
                    confirmed: 0,
                    not_applicable: 0,
                    violated: 0,
                };
                for r in analyses.iter().flat_map(|a| &a.reports).filter(|r| r.theorem_id == id) {
                    match r.verdict {
                        Verdict::Confirmed => c.confirmed += 1,
                        Verdict::NotApplicable => c.not_applicable += 1,
                        Verdict::Violated => c.violated += 1,
                    }
                }
                (c.confirmed + c.not_applicable + c.violated > 0).then_some(c)
            })
            .collect::<Vec<_>>();
        Self {
            selection,
            records: records.len(),
            p_min: records.first().map(|r| r.p),
            p_max: records.last().map(|r| r.p),
            lc_d_maximal: maximal(false),
            lc_d_maximal_without_5: maximal(true),
            violations: verdicts.iter().map(|c| c.violated).sum(),
            verdicts,
        }
    }

    /// Human-readable summary, one fact per line.
    pub fn lines(&self) -> Vec<String> {
        let mut out = vec![format!("selection: {}", self.selection)];
        let mut records = format!("records: {}", self.records);
        if let (Some(lo), Some(hi)) = (self.p_min, self.p_max) {
            let _ = write!(records, " (p = {lo} .. {hi})");
        }
        out.push(records);
        if let Some((m, n)) = self.lc_d_maximal {
            out.push(format!("lc_d maximal (including p = 5): {m} of {n}"));
        }
        if let Some((m, n)) = self.lc_d_maximal_without_5 {
            out.push(format!("lc_d maximal (excluding p = 5): {m} of {n}"));
        }
        for c in &self.verdicts {
            out.push(format!(
                "{}: CONFIRMED {}, NOT_APPLICABLE {}, VIOLATED {}",
                c.theorem, c.confirmed, c.not_applicable, c.violated
            ));
        }
        out.push(format!("violations: {}", self.violations));
        out
    }
}

#[derive(Clone, Debug)]
pub struct SurveyOutcome {
    /// Sorted by `p`.
    pub analyses: Vec<Analysis>,
    pub summary: SurveySummary,
}

impl SurveyOutcome {
    pub fn records(&self) -> Vec<SurveyRecord> {
        self.analyses.iter().map(|a| a.record.clone()).collect()
    }
}

fn cache_key(p: u64, config: &SurveyConfig) -> CacheKey {
    CacheKey {
        p,
        measures: config.measures.to_string(),
        version: CODE_VERSION.to_string(),
        c2_cap: config.measures.contains(Measure::C2).then_some(config.c2_cap),
    }
}

fn analyze_one(p: u64, config: &SurveyConfig, cache: Option<&Cache>) -> Result<Analysis> {
    let start = Instant::now();
    let key = cache.map(|_| cache_key(p, config));
    let cached = cache.zip(key.as_ref()).and_then(|(c, k)| c.get(k).cloned());
    let mut analysis = match cached {
        Some(a) => a,
        None => {
            let a = analyze(p, config)?;
            if let (Some(c), Some(k)) = (cache, key) {
                c.put(k, &a)?;
            }
            a
        }
    };
    analysis.record.elapsed_ms = config.timing.then(|| start.elapsed().as_millis() as u64);
    Ok(analysis)
}

/// Analyzes `primes` on a pool of `config.jobs` threads and returns the
/// results sorted by `p`. On failure the error for the smallest failing
/// prime is returned, whatever the scheduling.
pub fn compute(primes: &[u64], config: &SurveyConfig) -> Result<Vec<Analysis>> {
    config.validate()?;
    let cache = config.cache_dir.as_deref().map(Cache::open).transpose()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| SurveyError::Config(format!("cannot start {} worker threads: {e}", config.jobs)))?;
    let mut sorted = primes.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let results: Vec<Result<Analysis>> =
        pool.install(|| sorted.par_iter().map(|&p| analyze_one(p, config, cache.as_ref())).collect());
    results.into_iter().collect()
}

/// Runs a full survey: resolves the primes, opens the output (failing
/// before any computation if it cannot), computes, and writes the records.
pub fn survey(config: &SurveyConfig) -> Result<SurveyOutcome> {
    config.validate()?;
    let primes = config.selection.resolve()?;
    let sink = open_sink(config.output.as_deref())?;
    let analyses = compute(&primes, config)?;
    let records: Vec<SurveyRecord> = analyses.iter().map(|a| a.record.clone()).collect();
    write_records(sink, &records, config.format)?;
    let summary = SurveySummary::from_analyses(config.selection.describe(), &analyses);
    Ok(SurveyOutcome { analyses, summary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{MeasureSet, PrimeSelection};

    #[test]
    fn summary_counts_p5_both_ways() {
        let mut c = SurveyConfig::new(PrimeSelection::FirstK(10));
        c.measures = MeasureSet::new([Measure::LcD]);
        let a = compute(&c.selection.resolve().unwrap(), &c).unwrap();
        let s = SurveySummary::from_analyses(c.selection.describe(), &a);
        let (m, n) = s.lc_d_maximal.unwrap();
        let (m5, n5) = s.lc_d_maximal_without_5.unwrap();
        assert_eq!(n, 10);
        assert_eq!((m5, n5), (m - 1, 9), "p = 5 has T = 1 and L = 1");
        assert_eq!(s.verdicts.len(), 1);
        assert_eq!(s.verdicts[0].theorem, TheoremId::ThmDMaxlc);
        assert_eq!(s.violations, 0);
        assert!(s.lines().iter().any(|l| l.starts_with("lc_d maximal (including p = 5)")));
    }

    #[test]
    fn compute_sorts_and_reports_smallest_error() {
        let mut c = SurveyConfig::new(PrimeSelection::List(vec![]));
        c.jobs = 4;
        let a = compute(&[29, 13, 7, 13], &c).unwrap();
        let ps: Vec<_> = a.iter().map(|a| a.record.p).collect();
        assert_eq!(ps, vec![7, 13, 29]);
        let err = compute(&[29, 21, 15], &c).unwrap_err().to_string();
        assert!(err.contains("15"), "{err}");
    }
}

use serde::{Deserialize, Serialize};

use qrgap::complexity::{linear_complexity_gcd, periodic_max_order_complexity};
use qrgap::sequences::{build, build_d, build_t};
use qrgap::stats::balance;
use qrgap::theorems::{
    check_cm_for_prime, check_eq_e5, check_eq_s1, check_eq_t1, check_largest_qr, thm1_report,
    thm_t_lc_report, trivial_moc_report, TheoremReport, Verdict,
};
use qrgap::{SequenceKind, ValidatedPrime};

use crate::config::{Measure, SurveyConfig};
use crate::error::Result;
use crate::record::SurveyRecord;

/// A record plus every theorem report computed on the way to it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Analysis {
    pub record: SurveyRecord,
    pub reports: Vec<TheoremReport>,
}

impl Analysis {
    pub fn violations(&self) -> impl Iterator<Item = &TheoremReport> {
        self.reports.iter().filter(|r| r.is_violation())
    }
}

fn confirmed(r: &TheoremReport) -> bool {
    r.verdict == Verdict::Confirmed
}

/// Computes the enabled measures for one prime. Timing is left to the caller.
pub fn analyze(p: u64, config: &SurveyConfig) -> Result<Analysis> {
    let vp = ValidatedPrime::new(p)?;
    let m = &config.measures;
    let mut record = SurveyRecord::empty(p);
    let mut reports = Vec::new();
    let d = build_d(&vp);
    let t = build_t(&vp);

    if m.contains(Measure::LcD) {
        let lc = linear_complexity_gcd(&d)? as u64;
        record.lc_d = Some(lc);
        record.lc_d_maximal = Some(lc == record.period);
        let r = thm1_report(p, lc as i64);
        record.thm1_verdict = Some(r.verdict);
        reports.push(r);
    }
    if m.contains(Measure::LcT) {
        let lc = linear_complexity_gcd(&t)? as u64;
        record.lc_t = Some(lc);
        let r = thm_t_lc_report(p, lc as i64);
        record.thm_t_lc_verdict = Some(r.verdict);
        reports.push(r);
    }
    if m.contains(Measure::Moc) {
        let moc = periodic_max_order_complexity(&t)?;
        record.moc_t = Some(moc as u64);
        reports.push(trivial_moc_report(p, moc));
    }
    if m.contains(Measure::C2) {
        reports.push(check_cm_for_prime(&vp, config.c2_cap)?);
    }
    if m.contains(Measure::Stats) {
        let (n0, n1) = balance(&d)?;
        record.n0_d = Some(n0 as u64);
        record.n1_d = Some(n1 as u64);
        record.n1_t = Some(t.count_ones() as u64);
        let s1 = check_eq_s1(&vp);
        let e5 = check_eq_e5(&vp);
        let qr = check_largest_qr(&vp);
        record.eq_s1_ok = Some(confirmed(&s1));
        record.eq_e5_ok = Some(confirmed(&e5));
        record.largest_qr_ok = Some(confirmed(&qr));
        reports.extend([s1, e5, qr, check_eq_t1(&vp)]);
    }
    Ok(Analysis { record, reports })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EmitFormat {
    /// A `0`/`1` string with no separators.
    #[default]
    Text,
    /// A JSON array of one period.
    Json,
}

/// One period of the chosen sequence, serialized.
pub fn emit(p: u64, kind: SequenceKind, format: EmitFormat) -> Result<String> {
    let seq = build(kind, &ValidatedPrime::new(p)?);
    Ok(match format {
        EmitFormat::Text => seq.to_string(),
        EmitFormat::Json => serde_json::to_string(&seq.to_vec())?,
    })
}

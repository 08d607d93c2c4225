use serde::{Deserialize, Serialize};

use qrgap::theorems::Verdict;

/// One prime's measurement row. Field order is the CSV column order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRecord {
    pub p: u64,
    #[serde(rename = "T")]
    pub period: u64,
    pub lc_d: Option<u64>,
    pub lc_d_maximal: Option<bool>,
    pub lc_t: Option<u64>,
    pub n0_d: Option<u64>,
    pub n1_d: Option<u64>,
    pub n1_t: Option<u64>,
    pub moc_t: Option<u64>,
    #[serde(rename = "thm1")]
    pub thm1_verdict: Option<Verdict>,
    #[serde(rename = "thm_t_lc")]
    pub thm_t_lc_verdict: Option<Verdict>,
    #[serde(rename = "eq_s1")]
    pub eq_s1_ok: Option<bool>,
    #[serde(rename = "eq_e5")]
    pub eq_e5_ok: Option<bool>,
    #[serde(rename = "largest_qr")]
    pub largest_qr_ok: Option<bool>,
    pub elapsed_ms: Option<u64>,
}

pub const CSV_HEADER: [&str; 15] = [
    "p",
    "T",
    "lc_d",
    "lc_d_maximal",
    "lc_t",
    "n0_d",
    "n1_d",
    "n1_t",
    "moc_t",
    "thm1",
    "thm_t_lc",
    "eq_s1",
    "eq_e5",
    "largest_qr",
    "elapsed_ms",
];

impl SurveyRecord {
    pub fn empty(p: u64) -> Self {
        Self {
            p,
            period: (p - 3) / 2,
            lc_d: None,
            lc_d_maximal: None,
            lc_t: None,
            n0_d: None,
            n1_d: None,
            n1_t: None,
            moc_t: None,
            thm1_verdict: None,
            thm_t_lc_verdict: None,
            eq_s1_ok: None,
            eq_e5_ok: None,
            largest_qr_ok: None,
            elapsed_ms: None,
        }
    }

    /// Checks the record's internal consistency rules.
    pub fn is_consistent(&self) -> bool {
        let maximal_ok = match (self.lc_d, self.lc_d_maximal) {
            (Some(l), Some(m)) => (l == self.period) == m,
            (None, None) => true,
            _ => false,
        };
        let balance_ok = match (self.n0_d, self.n1_d) {
            (Some(a), Some(b)) => a + b == self.period,
            (None, None) => true,
            _ => false,
        };
        maximal_ok && balance_ok
    }
}

//! Per-prime analysis and prime-range surveys of the quadratic-residue gap
//! sequences, with CSV / JSON-lines output and an optional result cache.

pub mod analyze;
pub mod cache;
pub mod config;
pub mod error;
pub mod output;
pub mod record;
pub mod survey;

pub use analyze::{analyze, emit, Analysis, EmitFormat};
pub use config::{Measure, MeasureSet, OutputFormat, PrimeSelection, SurveyConfig};
pub use error::SurveyError;
pub use record::SurveyRecord;
pub use survey::{survey, SurveyOutcome, SurveySummary};

/// Version string folded into cache keys.
pub const CODE_VERSION: &str = env!("CARGO_PKG_VERSION");

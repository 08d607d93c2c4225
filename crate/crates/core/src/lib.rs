//! Quadratic-residue gap sequences.
//!
//! For a prime `p >= 5` with quadratic residues `1 = q_0 < q_1 < ... < q_{(p-3)/2}`
//! this crate builds the two `(p-3)/2`-periodic binary sequences
//!
//! - `d_n = (q_n + q_{n+1}) mod 2`, the parity of consecutive residue gaps, and
//! - `t_n = 1` iff `q_{n+1} = q_n + 1`,
//!
//! and measures them: linear complexity by two independent routes, maximum
//! order complexity, the order-2 correlation measure, balance and pattern
//! counts. [`theorems`] turns the known closed-form results about these
//! sequences into checkable reports.
//!
//! ```
//! use qrgap::{complexity, numtheory::ValidatedPrime, sequences};
//!
//! let p = ValidatedPrime::new(13).unwrap();
//! let d = sequences::build_d(&p);
//! assert_eq!(d.to_string(), "01110");
//! assert_eq!(complexity::linear_complexity_gcd(&d).unwrap(), 5);
//! ```

mod bits;
pub mod complexity;
pub mod error;
pub mod numtheory;
pub mod polyf2;
pub mod sequences;
pub mod stats;
pub mod theorems;

pub use error::{Error, Result};
pub use numtheory::ValidatedPrime;
pub use sequences::{BitSequence, SequenceKind};

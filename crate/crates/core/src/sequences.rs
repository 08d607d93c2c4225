//! The two residue-gap sequences and the binary sequence carrier they live in.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bits::PackedBits;
use crate::error::{Error, Result};
use crate::numtheory::ValidatedPrime;

/// A finite binary word, optionally read as one period of a periodic sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitSequence {
    bits: PackedBits,
    period: Option<usize>,
}

impl BitSequence {
    /// Aperiodic word. Any nonzero byte counts as a one.
    pub fn finite(bits: &[u8]) -> Self {
        Self {
            bits: PackedBits::from_fn(bits.len(), |i| bits[i] != 0),
            period: None,
        }
    }

    /// One period of a periodic sequence; the period is `bits.len()`.
    pub fn periodic(bits: &[u8]) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::Invalid("period must be positive".into()));
        }
        Ok(Self {
            period: Some(bits.len()),
            ..Self::finite(bits)
        })
    }

    pub(crate) fn from_packed(bits: PackedBits, period: Option<usize>) -> Result<Self> {
        match period {
            Some(0) => Err(Error::Invalid("period must be positive".into())),
            Some(t) if t != bits.len() => Err(Error::PeriodMismatch {
                period: t,
                len: bits.len(),
            }),
            _ => Ok(Self { bits, period }),
        }
    }

    /// Parses a `0`/`1` string with no separators.
    pub fn parse_01(s: &str, periodic: bool) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0u8),
                '1' => Ok(1u8),
                other => Err(Error::InvalidBit(other)),
            })
            .collect::<Result<Vec<_>>>()?;
        if periodic {
            Self::periodic(&bits)
        } else {
            Ok(Self::finite(&bits))
        }
    }

    /// Stored length: one period for periodic sequences.
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.len() == 0
    }

    pub fn period(&self) -> Option<usize> {
        self.period
    }

    pub fn is_periodic(&self) -> bool {
        self.period.is_some()
    }

    /// Number of terms that can be read: unbounded for periodic sequences.
    pub fn available(&self) -> usize {
        if self.is_periodic() {
            usize::MAX
        } else {
            self.len()
        }
    }

    /// Term `n`, wrapping modulo the period when there is one.
    pub fn at(&self, n: usize) -> Result<u8> {
        match self.period {
            Some(t) => Ok(self.bits.get(n % t) as u8),
            None if n < self.len() => Ok(self.bits.get(n) as u8),
            None => Err(Error::IndexOutOfRange {
                index: n,
                len: self.len(),
            }),
        }
    }

    #[inline]
    pub(crate) fn bit(&self, n: usize) -> bool {
        match self.period {
            Some(t) => self.bits.get(n % t),
            None => self.bits.get(n),
        }
    }

    pub(crate) fn packed(&self) -> &PackedBits {
        &self.bits
    }

    /// The first `n` terms as an aperiodic word.
    pub fn prefix(&self, n: usize) -> Result<Self> {
        if n > self.available() {
            return Err(Error::NotEnoughTerms {
                needed: n,
                available: self.len(),
            });
        }
        Ok(Self {
            bits: PackedBits::from_fn(n, |i| self.bit(i)),
            period: None,
        })
    }

    /// The stored bits as `0`/`1` bytes.
    pub fn to_vec(&self) -> Vec<u8> {
        self.bits.iter().map(u8::from).collect()
    }

    /// First `n` terms as `0`/`1` bytes (wrapping when periodic).
    pub fn terms(&self, n: usize) -> Result<Vec<u8>> {
        if n > self.available() {
            return Err(Error::NotEnoughTerms {
                needed: n,
                available: self.len(),
            });
        }
        Ok((0..n).map(|i| self.bit(i) as u8).collect())
    }

    pub fn count_ones(&self) -> usize {
        self.bits.count_ones()
    }
}

impl fmt::Display for BitSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bits.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Which residue-gap sequence to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SequenceKind {
    /// `d_n`: parity of `q_{n+1} - q_n`.
    #[serde(rename = "D_GAP_PARITY")]
    DGapParity,
    /// `t_n`: whether `q_{n+1} = q_n + 1`.
    #[serde(rename = "T_CONSECUTIVE")]
    TConsecutive,
}

impl FromStr for SequenceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "d" | "d_gap_parity" => Ok(Self::DGapParity),
            "t" | "t_consecutive" => Ok(Self::TConsecutive),
            _ => Err(Error::Invalid(format!("unknown sequence kind {s:?}"))),
        }
    }
}

fn build_from_gaps(p: &ValidatedPrime, f: impl Fn(u64, u64) -> bool) -> BitSequence {
    let q = p.residues();
    let t = p.period();
    debug_assert_eq!(q.len(), t + 1);
    let bits = PackedBits::from_fn(t, |n| f(q[n], q[n + 1]));
    BitSequence::from_packed(bits, Some(t)).expect("period equals length")
}

/// `d_n = (q_n + q_{n+1}) mod 2`, period `(p - 3) / 2`.
pub fn build_d(p: &ValidatedPrime) -> BitSequence {
    build_from_gaps(p, |a, b| (a + b) % 2 == 1)
}

/// `t_n = 1` iff `q_{n+1} = q_n + 1`, period `(p - 3) / 2`.
pub fn build_t(p: &ValidatedPrime) -> BitSequence {
    build_from_gaps(p, |a, b| b == a + 1)
}

pub fn build(kind: SequenceKind, p: &ValidatedPrime) -> BitSequence {
    match kind {
        SequenceKind::DGapParity => build_d(p),
        SequenceKind::TConsecutive => build_t(p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::primes_in_range;

    fn vp(p: u64) -> ValidatedPrime {
        ValidatedPrime::new(p).unwrap()
    }

    #[test]
    fn d_examples() {
        assert_eq!(build_d(&vp(13)).to_vec(), vec![0, 1, 1, 1, 0]);
        assert_eq!(build_d(&vp(7)).to_vec(), vec![1, 0]);
        assert_eq!(build_d(&vp(5)).to_vec(), vec![1]);
        assert_eq!(build_d(&vp(13)).period(), Some(5));
    }

    #[test]
    fn t_examples() {
        assert_eq!(build_t(&vp(13)).to_vec(), vec![0, 1, 0, 1, 0]);
        assert_eq!(build_t(&vp(7)).to_vec(), vec![1, 0]);
        assert_eq!(build_t(&vp(5)).to_vec(), vec![0]);
        let t29 = build_t(&vp(29));
        assert_eq!(t29.to_string(), "0111000001110");
        assert_eq!(t29.count_ones(), 6);
    }

    #[test]
    fn periodic_indexing() {
        let d13 = build_d(&vp(13));
        assert_eq!(d13.at(5), Ok(0));
        assert_eq!(d13.at(7), Ok(1));
        assert_eq!(build_t(&vp(7)).at(4), Ok(1));
        let w = BitSequence::finite(&[1, 0, 1]);
        assert_eq!(w.at(2), Ok(1));
        assert_eq!(w.at(3), Err(Error::IndexOutOfRange { index: 3, len: 3 }));
    }

    #[test]
    fn text_form_round_trips() {
        let s = BitSequence::parse_01("0111000001110", true).unwrap();
        assert_eq!(s, build_t(&vp(29)));
        assert_eq!(BitSequence::parse_01("01x", false), Err(Error::InvalidBit('x')));
        assert!(BitSequence::parse_01("", true).is_err());
    }

    #[test]
    fn prefix_wraps_periodic() {
        let t13 = build_t(&vp(13));
        assert_eq!(t13.prefix(10).unwrap().to_string(), "0101001010");
        assert!(BitSequence::finite(&[1, 0]).prefix(3).is_err());
    }

    #[test]
    fn sequences_follow_residue_gaps() {
        for p in primes_in_range(5, 10_000).unwrap() {
            let v = vp(p);
            let q = v.residues();
            let d = build_d(&v);
            let t = build_t(&v);
            assert_eq!(d.len(), ((p - 3) / 2) as usize);
            assert_eq!(t.len(), d.len());
            for n in 0..d.len() {
                let gap = q[n + 1] - q[n];
                assert_eq!(d.at(n).unwrap() as u64, gap % 2);
                assert_eq!(t.at(n).unwrap() == 1, gap == 1);
            }
        }
    }

    #[test]
    fn gaps_match_legendre_runs() {
        for p in primes_in_range(5, 2000).unwrap() {
            let v = vp(p);
            let q = v.residues();
            for n in 0..v.period() {
                let j = q[n] as i64;
                let k = (q[n + 1] - q[n] - 1) as i64;
                assert_eq!(v.legendre(j), 1);
                for i in 1..=k {
                    assert_eq!(v.legendre(j + i), -1, "p={p} n={n}");
                }
                assert_eq!(v.legendre(j + k + 1), 1);
            }
        }
    }
}

//! Word-packed bit storage shared by sequences and polynomials.
//!
//! Bit `i` lives in word `i / 64` at position `i % 64`. Bits at positions
//! `>= len` are always zero.

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub(crate) struct PackedBits {
    words: Vec<u64>,
    len: usize,
}

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(64)
}

impl PackedBits {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; words_for(len)],
            len,
        }
    }

    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut out = Self::zeros(len);
        for i in 0..len {
            if f(i) {
                out.set(i, true);
            }
        }
        out
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i & 63);
        if v {
            self.words[i >> 6] |= mask;
        } else {
            self.words[i >> 6] &= !mask;
        }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// 64 bits starting at bit `offset`; positions past the end read as zero.
    #[inline]
    pub fn word_at(&self, offset: usize) -> u64 {
        extract(&self.words, offset)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }
}

/// 64 bits of `words` starting at bit `offset`, zero-filled past the end.
#[inline]
pub(crate) fn extract(words: &[u64], offset: usize) -> u64 {
    let wi = offset >> 6;
    let sh = offset & 63;
    let lo = words.get(wi).copied().unwrap_or(0);
    if sh == 0 {
        lo
    } else {
        let hi = words.get(wi + 1).copied().unwrap_or(0);
        (lo >> sh) | (hi << (64 - sh))
    }
}

/// `dst ^= src << shift` over the overlapping word range. `dst` must be long
/// enough to hold every set bit of the shifted `src`.
pub(crate) fn xor_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    let ws = shift >> 6;
    let bs = shift & 63;
    if bs == 0 {
        for (i, &w) in src.iter().enumerate() {
            if w != 0 {
                dst[i + ws] ^= w;
            }
        }
    } else {
        for (i, &w) in src.iter().enumerate() {
            if w == 0 {
                continue;
            }
            dst[i + ws] ^= w << bs;
            let spill = w >> (64 - bs);
            if spill != 0 {
                dst[i + ws + 1] ^= spill;
            }
        }
    }
}

/// Index of the highest set bit, if any.
pub(crate) fn highest_set(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .rposition(|&w| w != 0)
        .map(|i| i * 64 + 63 - words[i].leading_zeros() as usize)
}

//! Berlekamp-Massey over GF(2) on packed words.
//!
//! The sequence is stored bit-reversed so the window `s_n, s_{n-1}, ...`
//! needed for each discrepancy is a contiguous run of bits, and the
//! discrepancy becomes the parity of `C & window` one word at a time.

use crate::bits::{xor_shifted, PackedBits};

/// Runs Berlekamp-Massey over `bits` and returns the linear complexity of
/// every prefix: entry `k - 1` is the complexity of the first `k` bits.
pub(crate) fn profile(bits: &PackedBits) -> Vec<usize> {
    let n_total = bits.len();
    let mut out = Vec::with_capacity(n_total);
    if n_total == 0 {
        return out;
    }

    let reversed = PackedBits::from_fn(n_total, |k| bits.get(n_total - 1 - k));
    let words = n_total / 64 + 2;
    // connection polynomials, bit i = coefficient of D^i
    let mut c = vec![0u64; words];
    let mut b = vec![0u64; words];
    let mut scratch = vec![0u64; words];
    c[0] = 1;
    b[0] = 1;
    let mut l = 0usize;
    // length that belonged to `b`, bounding its degree
    let mut lb = 0usize;
    // steps since the last length change
    let mut gap = 1usize;

    for n in 0..n_total {
        let base = n_total - 1 - n;
        let mut acc = 0u64;
        for (w, &cw) in c.iter().enumerate().take(l / 64 + 1) {
            acc ^= cw & reversed.word_at(base + 64 * w);
        }
        if acc.count_ones() % 2 == 1 {
            let b_used = &b[..lb / 64 + 1];
            if 2 * l <= n {
                scratch.copy_from_slice(&c);
                xor_shifted(&mut c, b_used, gap);
                lb = l;
                l = n + 1 - l;
                std::mem::swap(&mut b, &mut scratch);
                gap = 1;
            } else {
                xor_shifted(&mut c, b_used, gap);
                gap += 1;
            }
        } else {
            gap += 1;
        }
        out.push(l);
    }
    out
}

//! Primality, Legendre symbols, multiplicative orders and quadratic-residue
//! enumeration.
//!
//! Everything here works on `u64` with `u128` intermediates; primality is
//! deterministic for every `u64`.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::bits::PackedBits;
use crate::error::{Error, Result};

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `base^exp mod m`; `m` must be nonzero.
pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    result
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

// First twelve primes; as Miller-Rabin witnesses they are exact below 3.3e24.
const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic primality test (Miller-Rabin with a fixed witness set).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &WITNESSES {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn small_sieve(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    if limit < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    out
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.saturating_mul(r) > n {
        r -= 1;
    }
    while (r + 1).saturating_mul(r + 1) <= n {
        r += 1;
    }
    r
}

/// All primes in `[lo, hi]`, ascending, via a segmented sieve.
pub fn primes_in_range(lo: u64, hi: u64) -> Result<Vec<u64>> {
    if lo > hi {
        return Err(Error::EmptyRange { lo, hi });
    }
    const SEGMENT: u64 = 1 << 20;
    let base = small_sieve(isqrt(hi));
    let mut out = Vec::new();
    let mut start = lo.max(2);
    while start <= hi {
        let end = hi.min(start.saturating_add(SEGMENT - 1));
        let mut composite = vec![false; (end - start + 1) as usize];
        for &q in &base {
            if q * q > end {
                break;
            }
            let mut m = (start.div_ceil(q) * q).max(q * q);
            while m <= end {
                composite[(m - start) as usize] = true;
                m += q;
            }
        }
        out.extend(
            composite
                .iter()
                .enumerate()
                .filter(|(_, &c)| !c)
                .map(|(i, _)| start + i as u64),
        );
        if end == u64::MAX {
            break;
        }
        start = end + 1;
    }
    Ok(out)
}

/// Ascending primes `>= start`.
pub fn primes_from(start: u64) -> impl Iterator<Item = u64> {
    (start..).filter(|&n| is_prime(n))
}

/// The `k` primes closest to `center`; ties go to the smaller prime. Returned
/// in ascending order.
pub fn nearest_primes(center: u64, k: usize) -> Vec<u64> {
    let mut below = (0..=center).rev().filter(|&n| is_prime(n));
    let mut above = (center + 1..).filter(|&n| is_prime(n));
    let mut lo = below.next();
    let mut hi = above.next();
    let mut out = Vec::with_capacity(k);
    while out.len() < k {
        match (lo, hi) {
            (Some(l), Some(h)) if center - l <= h - center => {
                out.push(l);
                lo = below.next();
            }
            (_, Some(h)) => {
                out.push(h);
                hi = above.next();
            }
            (Some(l), None) => {
                out.push(l);
                lo = below.next();
            }
            (None, None) => break,
        }
    }
    out.sort_unstable();
    out
}

/// Trial-division factorization as ascending `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut push = |q: u64, n: &mut u64| {
        let mut e = 0;
        while (*n).is_multiple_of(q) {
            *n /= q;
            e += 1;
        }
        if e > 0 {
            out.push((q, e));
        }
    };
    push(2, &mut n);
    let mut q = 3u64;
    while q.saturating_mul(q) <= n {
        push(q, &mut n);
        q += 2;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (q, _)| acc / q * (q - 1))
}

/// Splits `n >= 1` as `2^s * r` with `r` odd.
pub fn two_adic_split(n: u64) -> (u32, u64) {
    assert!(n > 0, "two_adic_split of zero");
    let s = n.trailing_zeros();
    (s, n >> s)
}

/// Smallest `k >= 1` with `a^k = 1 (mod m)`.
pub fn multiplicative_order(a: u64, m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::BadModulus(m));
    }
    let a = a % m;
    if gcd(a, m) != 1 {
        return Err(Error::NotInvertible { a, m });
    }
    let phi = euler_phi(m);
    let mut order = phi;
    for (q, _) in factorize(phi) {
        while order.is_multiple_of(q) && pow_mod(a, order / q, m) == 1 {
            order /= q;
        }
    }
    Ok(order)
}

/// Whether `a` generates the multiplicative group modulo the prime `m`.
pub fn is_primitive_root(a: u64, m: u64) -> Result<bool> {
    Ok(multiplicative_order(a, m)? == m - 1)
}

/// Jacobi symbol `(a/n)` for odd `n`, by the reciprocity-based binary method.
fn jacobi(mut a: u64, mut n: u64) -> i8 {
    debug_assert!(n % 2 == 1);
    a %= n;
    let mut t = 1i8;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                t = -t;
            }
        }
        (a, n) = (n, a);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Which branch of the largest-residue formula a prime falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResidueCase {
    /// `p = 1 (mod 4)`: `-1` is a residue.
    Pm1Mod4,
    /// `p = 3 (mod 8)`: `-2` is a residue but `-1` is not.
    P3Mod8,
    /// `p = 7 (mod 8)`: neither `-1` nor `-2` is a residue.
    P7Mod8,
}

impl ResidueCase {
    pub fn of(p: u64) -> Self {
        match p % 8 {
            1 | 5 => Self::Pm1Mod4,
            3 => Self::P3Mod8,
            7 => Self::P7Mod8,
            _ => unreachable!("even modulus {p}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LargestResidue {
    pub value: u64,
    pub case: ResidueCase,
    /// `p - value`.
    pub u: u64,
}

/// A prime `p >= 5` together with lazily built residue tables.
///
/// The tables are built at most once and are safe to read from several threads.
#[derive(Debug)]
pub struct ValidatedPrime {
    p: u64,
    residue_bitmap: OnceLock<PackedBits>,
    qr_sorted: OnceLock<Vec<u64>>,
}

impl Clone for ValidatedPrime {
    fn clone(&self) -> Self {
        Self {
            p: self.p,
            residue_bitmap: self.residue_bitmap.clone(),
            qr_sorted: self.qr_sorted.clone(),
        }
    }
}

impl ValidatedPrime {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p < 5 {
            return Err(Error::PrimeTooSmall(p));
        }
        Ok(Self {
            p,
            residue_bitmap: OnceLock::new(),
            qr_sorted: OnceLock::new(),
        })
    }

    #[inline]
    pub fn get(&self) -> u64 {
        self.p
    }

    /// The common period `(p - 3) / 2` of the gap sequences.
    pub fn period(&self) -> usize {
        ((self.p - 3) / 2) as usize
    }

    fn bitmap(&self) -> &PackedBits {
        self.residue_bitmap.get_or_init(|| {
            let p = self.p;
            let mut bits = PackedBits::zeros(p as usize);
            for x in 1..=(p - 1) / 2 {
                bits.set(mul_mod(x, x, p) as usize, true);
            }
            bits
        })
    }

    /// Membership test for the nonzero squares modulo `p`.
    pub fn is_residue(&self, a: u64) -> bool {
        let a = a % self.p;
        a != 0 && self.bitmap().get(a as usize)
    }

    /// Quadratic residues `q_0 < q_1 < ...` in `[1, p-1]`.
    pub fn residues(&self) -> &[u64] {
        self.qr_sorted.get_or_init(|| {
            let bits = self.bitmap();
            (1..self.p).filter(|&a| bits.get(a as usize)).collect()
        })
    }

    pub fn legendre(&self, a: i64) -> i8 {
        legendre(a, self)
    }
}

/// Legendre symbol `(a/p)`; `a` may be negative.
pub fn legendre(a: i64, p: &ValidatedPrime) -> i8 {
    let m = p.get();
    let a = a.rem_euclid(m as i64) as u64;
    jacobi(a, m)
}

pub fn quadratic_residues(p: &ValidatedPrime) -> &[u64] {
    p.residues()
}

pub fn largest_quadratic_residue(p: &ValidatedPrime) -> LargestResidue {
    let value = *p.residues().last().expect("p >= 5 has residues");
    LargestResidue {
        value,
        case: ResidueCase::of(p.get()),
        u: p.get() - value,
    }
}

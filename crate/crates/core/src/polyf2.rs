//! Dense polynomials over GF(2), packed 64 coefficients per word.
//!
//! Coefficient of `X^i` is bit `i % 64` of word `i / 64`. The word vector
//! never carries trailing zero words, so equality is structural.

use std::fmt;
use std::ops::{Add, Mul, Rem};

use crate::bits::{extract, highest_set, xor_shifted};
use crate::error::{Error, Result};
use crate::sequences::BitSequence;

/// Degree of a polynomial; the zero polynomial has its own variant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::MinusInfinity => None,
        }
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use Degree::*;
        match (self, other) {
            (MinusInfinity, MinusInfinity) => std::cmp::Ordering::Equal,
            (MinusInfinity, Finite(_)) => std::cmp::Ordering::Less,
            (Finite(_), MinusInfinity) => std::cmp::Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BinaryPolynomial {
    words: Vec<u64>,
}

impl BinaryPolynomial {
    pub fn zero() -> Self {
        Self { words: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    /// `X^k`.
    pub fn monomial(k: usize) -> Self {
        let mut words = vec![0; k / 64 + 1];
        words[k / 64] = 1 << (k % 64);
        Self { words }
    }

    fn from_words(mut words: Vec<u64>) -> Self {
        while words.last() == Some(&0) {
            words.pop();
        }
        Self { words }
    }

    /// Coefficients indexed by degree; nonzero entries count as one.
    pub fn from_coeffs(coeffs: &[u8]) -> Self {
        let mut words = vec![0u64; coeffs.len().div_ceil(64)];
        for (i, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        Self::from_words(words)
    }

    /// Polynomial with ones at the given exponents (repeats cancel).
    pub fn from_exponents(exps: &[usize]) -> Self {
        exps.iter()
            .fold(Self::zero(), |acc, &e| &acc + &Self::monomial(e))
    }

    /// `S(X) = sum s_n X^n` over one period.
    pub fn from_sequence(seq: &BitSequence) -> Result<Self> {
        if !seq.is_periodic() {
            return Err(Error::NotPeriodic);
        }
        Ok(Self::from_words(seq.packed().words().to_vec()))
    }

    /// `X^t + 1`, which equals `X^t - 1` in characteristic two.
    pub fn x_pow_minus_1(t: usize) -> Result<Self> {
        if t == 0 {
            return Err(Error::ZeroExponent);
        }
        let mut p = Self::monomial(t);
        p.words[0] ^= 1;
        Ok(p)
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    pub fn degree(&self) -> Degree {
        match highest_set(&self.words) {
            Some(d) => Degree::Finite(d),
            None => Degree::MinusInfinity,
        }
    }

    pub fn coeff(&self, i: usize) -> u8 {
        self.words
            .get(i / 64)
            .map_or(0, |w| ((w >> (i % 64)) & 1) as u8)
    }

    pub fn coeffs(&self) -> Vec<u8> {
        match self.degree() {
            Degree::MinusInfinity => Vec::new(),
            Degree::Finite(d) => (0..=d).map(|i| self.coeff(i)).collect(),
        }
    }

    /// Value at `X = 1`: the parity of the number of terms.
    pub fn eval_at_one(&self) -> u8 {
        (self.words.iter().map(|w| w.count_ones()).sum::<u32>() % 2) as u8
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w ^= s;
        }
        Self::from_words(words)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (Some(da), Some(db)) = (self.degree().finite(), other.degree().finite()) else {
            return Self::zero();
        };
        let mut words = vec![0u64; (da + db) / 64 + 2];
        for i in 0..=da {
            if self.coeff(i) == 1 {
                xor_shifted(&mut words, &other.words, i);
            }
        }
        Self::from_words(words)
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let db = divisor.degree().finite().ok_or(Error::DivisionByZero)?;
        let mut rem = self.words.clone();
        let mut quot = vec![0u64; rem.len() + 1];
        while let Some(da) = highest_set(&rem) {
            if da < db {
                break;
            }
            let shift = da - db;
            quot[shift / 64] |= 1 << (shift % 64);
            xor_shifted(&mut rem, &divisor.words, shift);
        }
        Ok((Self::from_words(quot), Self::from_words(rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        let db = divisor.degree().finite().ok_or(Error::DivisionByZero)?;
        let mut rem = self.words.clone();
        reduce_in_place(&mut rem, &divisor.words, db);
        Ok(Self::from_words(rem))
    }

    pub fn divides(&self, other: &Self) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// `self * other mod modulus`.
    pub fn mul_mod(&self, other: &Self, modulus: &Self) -> Result<Self> {
        self.mul(other).rem(modulus)
    }

    /// Lowest-degree-first coefficient bytes as hex; debugging aid only.
    pub fn to_hex(&self) -> String {
        let nbytes = self.degree().finite().map_or(0, |d| d / 8 + 1);
        (0..nbytes)
            .map(|i| format!("{:02x}", (extract(&self.words, i * 8) & 0xff) as u8))
            .collect()
    }
}

/// Reduces `a` modulo the polynomial in `b` (degree `db`) in place.
fn reduce_in_place(a: &mut [u64], b: &[u64], db: usize) {
    while let Some(da) = highest_set(a) {
        if da < db {
            break;
        }
        xor_shifted(a, b, da - db);
    }
}

/// Greatest common divisor by Euclid's algorithm; `gcd(a, 0) = a`.
///
/// Over GF(2) every nonzero polynomial is monic, so the result is normalized.
pub fn gcd(a: &BinaryPolynomial, b: &BinaryPolynomial) -> Result<BinaryPolynomial> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    let mut x = a.words.clone();
    let mut y = b.words.clone();
    loop {
        let Some(dy) = highest_set(&y) else {
            return Ok(BinaryPolynomial::from_words(x));
        };
        reduce_in_place(&mut x, &y, dy);
        // drop zero words so the next pass iterates over fewer words
        while x.last() == Some(&0) {
            x.pop();
        }
        std::mem::swap(&mut x, &mut y);
    }
}

/// Irreducibility by the gcd test: `f` of degree `n` is irreducible iff
/// `gcd(f, X^(2^k) - X) = 1` for every `1 <= k <= n / 2`.
pub fn is_irreducible(f: &BinaryPolynomial) -> bool {
    let Some(n) = f.degree().finite() else {
        return false;
    };
    if n == 0 {
        return false;
    }
    let x = BinaryPolynomial::monomial(1).rem(f).expect("f is nonzero");
    let mut power = x.clone();
    for _ in 1..=n / 2 {
        power = power.mul_mod(&power, f).expect("f is nonzero");
        let g = gcd(f, &power.add(&x)).expect("f is nonzero");
        if !g.is_one() {
            return false;
        }
    }
    true
}

impl fmt::Debug for BinaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BinaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(d) = self.degree().finite() else {
            return f.write_str("0");
        };
        let mut first = true;
        for i in (0..=d).rev().filter(|&i| self.coeff(i) == 1) {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => f.write_str("1")?,
                1 => f.write_str("X")?,
                _ => write!(f, "X^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &BinaryPolynomial {
    type Output = BinaryPolynomial;
    fn add(self, rhs: Self) -> BinaryPolynomial {
        BinaryPolynomial::add(self, rhs)
    }
}

impl Mul for &BinaryPolynomial {
    type Output = BinaryPolynomial;
    fn mul(self, rhs: Self) -> BinaryPolynomial {
        BinaryPolynomial::mul(self, rhs)
    }
}

impl Rem for &BinaryPolynomial {
    type Output = BinaryPolynomial;
    /// Panics on a zero divisor; use [`BinaryPolynomial::rem`] to get an error.
    fn rem(self, rhs: Self) -> BinaryPolynomial {
        BinaryPolynomial::rem(self, rhs).expect("remainder by zero polynomial")
    }
}

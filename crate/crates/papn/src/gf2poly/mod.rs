//! Exact arithmetic for polynomials over GF(2), bit-packed.
//!
//! Coefficients are stored least-significant-bit first: bit `i` of the word
//! sequence is the coefficient of `x^i`. The zero polynomial is the empty
//! word sequence and reports its degree as `None` rather than a numeric
//! sentinel, which keeps Sylvester-matrix sizing honest.

mod bivariate;
mod factor;
mod resultant;

pub use bivariate::{Gf2Bivariate, Monomial2};
pub(crate) use bivariate::parse_term_factors;
pub use factor::{count_roots_in_field, factor, is_irreducible, Factorization};
pub use resultant::{
    eval_interp_parameters, has_common_y_factor, resultant_y, resultant_y_direct, sylvester_det,
    SubsetRing,
};

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

/// A univariate polynomial over GF(2), bit-packed 64 coefficients per word.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Gf2Poly {
    /// Invariant: no trailing zero words; empty means the zero polynomial.
    words: Vec<u64>,
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Gf2Poly { words: Vec::new() }
    }

    pub fn one() -> Self {
        Gf2Poly { words: vec![1] }
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Gf2Poly { words: vec![2] }
    }

    /// The single monomial `x^e`.
    pub fn monomial(e: usize) -> Self {
        let mut words = vec![0u64; e / 64 + 1];
        words[e / 64] = 1u64 << (e % 64);
        Gf2Poly { words }
    }

    pub fn from_words(mut words: Vec<u64>) -> Self {
        while words.last() == Some(&0) {
            words.pop();
        }
        Gf2Poly { words }
    }

    /// Builds a polynomial from an iterator of exponents; repeated exponents
    /// cancel in pairs (characteristic 2).
    pub fn from_exponents<I: IntoIterator<Item = usize>>(exps: I) -> Self {
        let mut words: Vec<u64> = Vec::new();
        for e in exps {
            let w = e / 64;
            if w >= words.len() {
                words.resize(w + 1, 0);
            }
            words[w] ^= 1u64 << (e % 64);
        }
        Self::from_words(words)
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    /// Degree of the polynomial, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + (63 - last.leading_zeros() as usize))
    }

    pub fn coeff(&self, e: usize) -> bool {
        self.words
            .get(e / 64)
            .map_or(false, |w| (w >> (e % 64)) & 1 == 1)
    }

    /// Exponents whose coefficient is 1, ascending.
    pub fn exponents(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (wi, &w) in self.words.iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                out.push(wi * 64 + b);
                bits &= bits - 1;
            }
        }
        out
    }

    pub fn term_count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn xor_shifted(acc: &mut Vec<u64>, src: &[u64], shift: usize) {
        let (wsh, bsh) = (shift / 64, shift % 64);
        let need = src.len() + wsh + 1;
        if acc.len() < need {
            acc.resize(need, 0);
        }
        if bsh == 0 {
            for (i, &w) in src.iter().enumerate() {
                acc[i + wsh] ^= w;
            }
        } else {
            let mut carry = 0u64;
            for (i, &w) in src.iter().enumerate() {
                acc[i + wsh] ^= (w << bsh) | carry;
                carry = w >> (64 - bsh);
            }
            acc[src.len() + wsh] ^= carry;
        }
    }

    /// Multiplication by `x^shift`.
    pub fn shl(&self, shift: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut acc = Vec::new();
        Self::xor_shifted(&mut acc, &self.words, shift);
        Self::from_words(acc)
    }

    /// Carry-less product.
    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        // Iterate over set bits of the sparser operand.
        let (a, b) = if self.term_count() <= rhs.term_count() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut acc: Vec<u64> = Vec::new();
        for (wi, &w) in a.words.iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                let bit = bits.trailing_zeros() as usize;
                Self::xor_shifted(&mut acc, &b.words, wi * 64 + bit);
                bits &= bits - 1;
            }
        }
        Self::from_words(acc)
    }

    pub fn square(&self) -> Self {
        // Bit interleave: exponents double.
        let mut words = vec![0u64; self.words.len() * 2];
        for (wi, &w) in self.words.iter().enumerate() {
            let lo = spread_bits(w as u32);
            let hi = spread_bits((w >> 32) as u32);
            words[wi * 2] = lo;
            words[wi * 2 + 1] = hi;
        }
        Self::from_words(words)
    }

    /// Quotient and remainder; errors on a zero divisor.
    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let mut rem = self.words.clone();
        let mut quot: Vec<u64> = Vec::new();
        loop {
            let rd = match Self::degree_of_words(&rem) {
                Some(d) if d >= dd => d,
                _ => break,
            };
            let sh = rd - dd;
            let w = sh / 64;
            if w >= quot.len() {
                quot.resize(w + 1, 0);
            }
            quot[w] ^= 1u64 << (sh % 64);
            Self::xor_shifted(&mut rem, &divisor.words, sh);
        }
        Ok((Self::from_words(quot), Self::from_words(rem)))
    }

    fn degree_of_words(words: &[u64]) -> Option<usize> {
        for (wi, &w) in words.iter().enumerate().rev() {
            if w != 0 {
                return Some(wi * 64 + (63 - w.leading_zeros() as usize));
            }
        }
        None
    }

    pub fn rem(&self, modulus: &Self) -> Result<Self> {
        Ok(self.divrem(modulus)?.1)
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.divrem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Parse(format!(
                "{self} is not divisible by {divisor}"
            )));
        }
        Ok(q)
    }

    /// Greatest common divisor (all nonzero polynomials over GF(2) are monic).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a
    }

    /// Small-exponent power by repeated squaring.
    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.square();
            e >>= 1;
        }
        result
    }

    pub fn mul_mod(&self, rhs: &Self, modulus: &Self) -> Result<Self> {
        self.mul(rhs).rem(modulus)
    }

    pub fn pow_mod(&self, e: u64, modulus: &Self) -> Result<Self> {
        let mut result = Self::one().rem(modulus)?;
        let mut base = self.rem(modulus)?;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).rem(modulus)?;
            }
            base = base.square().rem(modulus)?;
            e >>= 1;
        }
        Ok(result)
    }

    /// `x^(2^k) mod modulus` by `k` modular squarings of `x`.
    pub fn x_pow_pow2_mod(modulus: &Self, k: u32) -> Result<Self> {
        let mut h = Self::x().rem(modulus)?;
        for _ in 0..k {
            h = h.square().rem(modulus)?;
        }
        Ok(h)
    }

    /// Formal derivative (in characteristic 2, only odd exponents survive).
    pub fn derivative(&self) -> Self {
        Self::from_exponents(
            self.exponents()
                .into_iter()
                .filter(|e| e % 2 == 1)
                .map(|e| e - 1),
        )
    }

    /// Square root of a polynomial whose exponents are all even.
    pub fn sqrt_even(&self) -> Result<Self> {
        let mut exps = Vec::new();
        for e in self.exponents() {
            if e % 2 != 0 {
                return Err(Error::Parse(format!(
                    "square root of {self}: odd exponent {e}"
                )));
            }
            exps.push(e / 2);
        }
        Ok(Self::from_exponents(exps))
    }

    /// Reduces every exponent `e >= 1` to `1 + (e-1) mod (2^n - 1)`,
    /// i.e. the polynomial modulo `x^(2^n) + x`.
    pub fn reduce_exponents_mod_field(&self, n: u32) -> Self {
        let order = (1u64 << n) - 1;
        Self::from_exponents(self.exponents().into_iter().map(|e| {
            if e == 0 {
                0
            } else {
                (1 + ((e as u64 - 1) % order)) as usize
            }
        }))
    }

    /// `(x+1)^e` convenience constructor.
    pub fn x_plus_one_pow(e: u32) -> Self {
        Self::from_exponents([0, 1]).pow(e)
    }

    /// Parses the lowercase-hex coefficient form ("7" is `x^2+x+1`).
    pub fn from_hex(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty hex polynomial".into()));
        }
        let mut exps = Vec::new();
        for (pos, ch) in s.chars().rev().enumerate() {
            let digit = ch
                .to_digit(16)
                .ok_or_else(|| Error::Parse(format!("bad hex digit {ch:?} in {s:?}")))?;
            for b in 0..4 {
                if digit >> b & 1 == 1 {
                    exps.push(pos * 4 + b);
                }
            }
        }
        Ok(Self::from_exponents(exps))
    }

    /// Parses the human-readable monomial-sum form, e.g. "x^9+x+1".
    pub fn from_monomial_form(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial text".into()));
        }
        if compact == "0" {
            return Ok(Self::zero());
        }
        let mut exps = Vec::new();
        for term in compact.split('+') {
            if term == "1" {
                exps.push(0);
            } else if term == "x" {
                exps.push(1);
            } else if let Some(e) = term.strip_prefix("x^") {
                let e: usize = e
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in term {term:?}")))?;
                exps.push(e);
            } else {
                return Err(Error::Parse(format!("bad univariate term {term:?}")));
            }
        }
        Ok(Self::from_exponents(exps))
    }
}

fn spread_bits(w: u32) -> u64 {
    // Insert a zero bit between consecutive bits of w.
    let mut x = w as u64;
    x = (x | (x << 16)) & 0x0000_ffff_0000_ffff;
    x = (x | (x << 8)) & 0x00ff_00ff_00ff_00ff;
    x = (x | (x << 4)) & 0x0f0f_0f0f_0f0f_0f0f;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333;
    x = (x | (x << 1)) & 0x5555_5555_5555_5555;
    x
}

impl Add for &Gf2Poly {
    type Output = Gf2Poly;
    fn add(self, rhs: &Gf2Poly) -> Gf2Poly {
        let (long, short) = if self.words.len() >= rhs.words.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut words = long.words.clone();
        for (i, &w) in short.words.iter().enumerate() {
            words[i] ^= w;
        }
        Gf2Poly::from_words(words)
    }
}

impl Mul for &Gf2Poly {
    type Output = Gf2Poly;
    fn mul(self, rhs: &Gf2Poly) -> Gf2Poly {
        Gf2Poly::mul(self, rhs)
    }
}

/// Canonical order: by degree, then by coefficient bits as an integer.
impl Ord for Gf2Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // Equal degree implies equal word count under the trim invariant.
        for i in (0..self.words.len()).rev() {
            let c = self.words[i].cmp(&other.words[i]);
            if c != Ordering::Equal {
                return c;
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Gf2Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for e in self.exponents().into_iter().rev() {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match e {
                0 => write!(f, "1")?,
                1 => write!(f, "x")?,
                _ => write!(f, "x^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::LowerHex for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut s = String::new();
        let mut leading = true;
        for wi in (0..self.words.len()).rev() {
            let w = self.words[wi];
            for nib in (0..16).rev() {
                let d = (w >> (nib * 4)) & 0xf;
                if leading && d == 0 {
                    continue;
                }
                leading = false;
                s.push(char::from_digit(d as u32, 16).unwrap());
            }
        }
        write!(f, "{s}")
    }
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Poly({self})")
    }
}

/// Accepts either the monomial-sum form (contains 'x') or the hex form.
/// The only overlap is "1"/"0", on which both readings agree.
impl FromStr for Gf2Poly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.contains('x') {
            Self::from_monomial_form(s)
        } else {
            Self::from_hex(s)
        }
    }
}

//! Concrete binary fields GF(2^n) with table-backed arithmetic.
//!
//! A `FieldContext` owns the irreducible modulus and, for dimensions up to a
//! configurable cap, full log/antilog tables keyed to the smallest primitive
//! element. Above the cap the same operations fall back to bitwise
//! polynomial arithmetic, so every dimension up to 28 works — larger ones
//! are just slower per multiplication.

use crate::error::{Error, Result};
use crate::gf2poly::{is_irreducible, Gf2Poly};
use std::fmt;

/// Largest supported field dimension.
pub const MAX_FIELD_BITS: u32 = 28;

/// Default cap on log/antilog table construction (overridable through
/// `make_context_with_cap` or the PAPN_TABLE_CAP environment variable).
pub const DEFAULT_TABLE_CAP: u32 = 24;

/// An element of GF(2^n), encoded as the bits of its residue polynomial.
/// The encoding doubles as the canonical element order: 0, 1, x, x+1, ...
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement(pub u64);

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({})", self.0)
    }
}

/// A power-function exponent: the raw (possibly negative) value alongside
/// its normalization into [0, 2^n - 2].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Exponent {
    raw: i64,
    normalized: u64,
}

impl Exponent {
    /// Normalizes `raw` modulo `2^n - 1` into `[0, 2^n - 2]`. For n = 1 the
    /// exponent group is trivial and everything normalizes to 0.
    pub fn new(raw: i64, n: u32) -> Result<Exponent> {
        if n == 0 || n > MAX_FIELD_BITS {
            return Err(Error::DegreeOutOfRange {
                n,
                max: MAX_FIELD_BITS,
            });
        }
        let order = (1i64 << n) - 1;
        let normalized = if order == 1 {
            0
        } else {
            (raw.rem_euclid(order)) as u64
        };
        Ok(Exponent { raw, normalized })
    }

    pub fn raw(&self) -> i64 {
        self.raw
    }

    pub fn normalized(&self) -> u64 {
        self.normalized
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.raw == self.normalized as i64 {
            write!(f, "{}", self.raw)
        } else {
            write!(f, "{} (normalized {})", self.raw, self.normalized)
        }
    }
}

pub struct FieldContext {
    n: u32,
    modulus: Gf2Poly,
    modulus_bits: u64,
    order: u64,
    generator: u64,
    log: Option<Vec<u32>>,
    alog: Option<Vec<u32>>,
}

fn bitwise_mulmod(mut a: u64, mut b: u64, modulus_bits: u64, n: u32) -> u64 {
    let mut r = 0u64;
    while b != 0 {
        if b & 1 == 1 {
            r ^= a;
        }
        b >>= 1;
        a <<= 1;
        if (a >> n) & 1 == 1 {
            a ^= modulus_bits;
        }
    }
    r
}

fn bitwise_powmod(mut base: u64, mut e: u64, modulus_bits: u64, n: u32) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = bitwise_mulmod(r, base, modulus_bits, n);
        }
        base = bitwise_mulmod(base, base, modulus_bits, n);
        e >>= 1;
    }
    r
}

fn prime_factors_u64(mut v: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= v {
        if v % p == 0 {
            out.push(p);
            while v % p == 0 {
                v /= p;
            }
        }
        p += 1;
    }
    if v > 1 {
        out.push(v);
    }
    out
}

/// The smallest irreducible polynomial of degree n, ordered by coefficient
/// bits. The constant term must be 1 for irreducibility (except the sole
/// degree-1 case x, which is excluded by the same rule), so for n = 1 this
/// yields x + 1.
pub fn smallest_irreducible(n: u32) -> Result<Gf2Poly> {
    if n == 0 || n > MAX_FIELD_BITS {
        return Err(Error::DegreeOutOfRange {
            n,
            max: MAX_FIELD_BITS,
        });
    }
    for c in 0..1u64 << (n - 1) {
        let bits = (1u64 << n) | (c << 1) | 1;
        let p = Gf2Poly::from_words(vec![bits]);
        if is_irreducible(&p)? {
            return Ok(p);
        }
    }
    unreachable!("an irreducible of every degree exists")
}

fn default_table_cap() -> u32 {
    std::env::var("PAPN_TABLE_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_TABLE_CAP)
}

impl FieldContext {
    /// Field with the canonical (smallest) irreducible modulus and the
    /// default table cap.
    pub fn make_context(n: u32) -> Result<FieldContext> {
        Self::make_context_with_cap(n, default_table_cap())
    }

    pub fn make_context_with_cap(n: u32, table_cap: u32) -> Result<FieldContext> {
        Self::with_modulus_and_cap(n, smallest_irreducible(n)?, table_cap)
    }

    /// Field over a caller-supplied modulus (degree n, irreducible).
    pub fn with_modulus(n: u32, modulus: Gf2Poly) -> Result<FieldContext> {
        Self::with_modulus_and_cap(n, modulus, default_table_cap())
    }

    pub fn with_modulus_and_cap(n: u32, modulus: Gf2Poly, table_cap: u32) -> Result<FieldContext> {
        if n == 0 || n > MAX_FIELD_BITS {
            return Err(Error::DegreeOutOfRange {
                n,
                max: MAX_FIELD_BITS,
            });
        }
        if modulus.degree() != Some(n as usize) {
            return Err(Error::BadModulus(format!(
                "modulus {modulus} does not have degree {n}"
            )));
        }
        if !is_irreducible(&modulus)? {
            return Err(Error::BadModulus(format!("modulus {modulus} is reducible")));
        }
        let modulus_bits = modulus
            .exponents()
            .iter()
            .fold(0u64, |acc, &e| acc | (1u64 << e));
        let order = (1u64 << n) - 1;
        // The smallest generator of the multiplicative group, found by
        // checking the order criterion against each prime divisor.
        let primes = prime_factors_u64(order);
        let generator = if order == 1 {
            1
        } else {
            (2..1u64 << n)
                .find(|&g| {
                    primes
                        .iter()
                        .all(|&q| bitwise_powmod(g, order / q, modulus_bits, n) != 1)
                })
                .expect("the multiplicative group of a finite field is cyclic")
        };
        let (log, alog) = if n <= table_cap {
            let mut log = vec![0u32; 1usize << n];
            let mut alog = vec![0u32; order as usize];
            let mut a = 1u64;
            for (i, slot) in alog.iter_mut().enumerate() {
                *slot = a as u32;
                log[a as usize] = i as u32;
                a = bitwise_mulmod(a, generator, modulus_bits, n);
            }
            debug_assert_eq!(a, 1);
            (Some(log), Some(alog))
        } else {
            (None, None)
        };
        Ok(FieldContext {
            n,
            modulus,
            modulus_bits,
            order,
            generator,
            log,
            alog,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> &Gf2Poly {
        &self.modulus
    }

    /// Size of the multiplicative group, 2^n - 1.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn size(&self) -> u64 {
        1u64 << self.n
    }

    pub fn generator(&self) -> FieldElement {
        FieldElement(self.generator)
    }

    pub fn has_tables(&self) -> bool {
        self.log.is_some()
    }

    pub fn element(&self, bits: u64) -> Result<FieldElement> {
        if bits >> self.n != 0 {
            return Err(Error::Parse(format!(
                "encoding {bits} is out of range for a field of size {}",
                self.size()
            )));
        }
        Ok(FieldElement(bits))
    }

    /// All field elements in canonical (encoding) order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.size()).map(FieldElement)
    }

    pub fn fe_add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(a.0 ^ b.0)
    }

    pub fn fe_mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement(0);
        }
        match (&self.log, &self.alog) {
            (Some(log), Some(alog)) => {
                let s = log[a.0 as usize] as u64 + log[b.0 as usize] as u64;
                FieldElement(alog[(s % self.order) as usize] as u64)
            }
            _ => FieldElement(bitwise_mulmod(a.0, b.0, self.modulus_bits, self.n)),
        }
    }

    pub fn fe_inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::InverseOfZero);
        }
        match (&self.log, &self.alog) {
            (Some(log), Some(alog)) => {
                let e = (self.order - log[a.0 as usize] as u64) % self.order;
                Ok(FieldElement(alog[e as usize] as u64))
            }
            _ => Ok(FieldElement(bitwise_powmod(
                a.0,
                self.order - 1,
                self.modulus_bits,
                self.n,
            ))),
        }
    }

    /// The power map x -> x^d with d already normalized into [0, 2^n - 2].
    /// By that convention 0^d = 0 for every d (including d = 0, where the
    /// map is the all-ones indicator of nonzero inputs).
    pub fn fe_pow(&self, a: FieldElement, d: u64) -> FieldElement {
        if a.0 == 0 {
            return FieldElement(0);
        }
        match (&self.log, &self.alog) {
            (Some(log), Some(alog)) => {
                let e = (log[a.0 as usize] as u64 * (d % self.order)) % self.order;
                FieldElement(alog[e as usize] as u64)
            }
            _ => FieldElement(bitwise_powmod(
                a.0,
                d % self.order,
                self.modulus_bits,
                self.n,
            )),
        }
    }

    pub fn power_map(&self, d: &Exponent, x: FieldElement) -> FieldElement {
        self.fe_pow(x, d.normalized())
    }

    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.fe_mul(a, a)
    }

    /// The dimension of the smallest subfield containing `a`: the least
    /// divisor d of n with a^(2^d) = a.
    pub fn subfield_membership(&self, a: FieldElement) -> u32 {
        for d in 1..=self.n {
            if self.n % d != 0 {
                continue;
            }
            let mut b = a;
            for _ in 0..d {
                b = self.frobenius(b);
            }
            if b == a {
                return d;
            }
        }
        unreachable!("every element lies in the full field")
    }

    /// Evaluates a GF(2)[x] polynomial at a field element by Horner's rule.
    pub fn eval_poly(&self, p: &Gf2Poly, a: FieldElement) -> FieldElement {
        let Some(d) = p.degree() else {
            return FieldElement(0);
        };
        let mut acc = FieldElement(0);
        for e in (0..=d).rev() {
            acc = self.fe_mul(acc, a);
            if p.coeff(e) {
                acc = self.fe_add(acc, FieldElement(1));
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_moduli_are_frozen() {
        // Smallest irreducible of each degree, as hex coefficient masks.
        let expected = [
            "3", "7", "b", "13", "25", "43", "83", "11b", "203", "409", "805", "1009", "201b",
            "4021", "8003", "1002b",
        ];
        for (i, hex) in expected.iter().enumerate() {
            let n = i as u32 + 1;
            let m = smallest_irreducible(n).unwrap();
            assert_eq!(format!("{m:x}"), *hex, "modulus mismatch at n={n}");
        }
    }

    #[test]
    fn generators_are_frozen() {
        let expected = [
            (3u32, 2u64),
            (4, 2),
            (5, 2),
            (6, 2),
            (7, 2),
            (8, 3),
            (9, 7),
            (10, 2),
            (11, 2),
            (12, 3),
        ];
        for (n, g) in expected {
            let ctx = FieldContext::make_context(n).unwrap();
            assert_eq!(ctx.generator(), FieldElement(g), "generator mismatch at n={n}");
        }
    }

    #[test]
    fn group_laws_small_fields() {
        for n in 1..=8u32 {
            let ctx = FieldContext::make_context(n).unwrap();
            for a in ctx.elements() {
                assert_eq!(ctx.fe_add(a, a), FieldElement(0));
                assert_eq!(ctx.fe_mul(a, FieldElement(1)), a);
                if a.0 != 0 {
                    let inv = ctx.fe_inv(a).unwrap();
                    assert_eq!(ctx.fe_mul(a, inv), FieldElement(1));
                    assert_eq!(ctx.fe_pow(a, ctx.order()), FieldElement(1));
                }
            }
            assert_eq!(ctx.fe_inv(FieldElement(0)), Err(Error::InverseOfZero));
        }
    }

    #[test]
    fn tables_agree_with_bitwise_fallback() {
        let n = 9;
        let with_tables = FieldContext::make_context_with_cap(n, 28).unwrap();
        let without = FieldContext::make_context_with_cap(n, 1).unwrap();
        assert!(with_tables.has_tables());
        assert!(!without.has_tables());
        for a in 0..64u64 {
            for b in 0..64u64 {
                assert_eq!(
                    with_tables.fe_mul(FieldElement(a), FieldElement(b)),
                    without.fe_mul(FieldElement(a), FieldElement(b))
                );
            }
        }
        for a in 1..128u64 {
            assert_eq!(
                with_tables.fe_pow(FieldElement(a), 97),
                without.fe_pow(FieldElement(a), 97)
            );
        }
    }

    #[test]
    fn power_map_conventions() {
        let ctx = FieldContext::make_context(5).unwrap();
        let d0 = Exponent::new(0, 5).unwrap();
        assert_eq!(ctx.power_map(&d0, FieldElement(0)), FieldElement(0));
        assert_eq!(ctx.power_map(&d0, FieldElement(7)), FieldElement(1));
        // d = 31 = 2^5 - 1 normalizes to 0 and acts identically.
        let d31 = Exponent::new(31, 5).unwrap();
        assert_eq!(d31.normalized(), 0);
        for x in ctx.elements() {
            assert_eq!(ctx.power_map(&d31, x), ctx.power_map(&d0, x));
        }
    }

    #[test]
    fn exponent_normalization() {
        let e = Exponent::new(-9, 11).unwrap();
        assert_eq!(e.raw(), -9);
        assert_eq!(e.normalized(), 2038);
        let e = Exponent::new(-1, 3).unwrap();
        assert_eq!(e.normalized(), 6);
        let e = Exponent::new(14, 3).unwrap();
        assert_eq!(e.normalized(), 0);
        let e = Exponent::new(5, 1).unwrap();
        assert_eq!(e.normalized(), 0);
        assert!(Exponent::new(3, 0).is_err());
        assert!(Exponent::new(3, 29).is_err());
    }

    #[test]
    fn frobenius_and_subfields() {
        let ctx = FieldContext::make_context(6).unwrap();
        for a in ctx.elements() {
            // Frobenius is additive and its sixth iterate is the identity.
            let mut b = a;
            for _ in 0..6 {
                b = ctx.frobenius(b);
            }
            assert_eq!(b, a);
            let d = ctx.subfield_membership(a);
            assert!(6 % d == 0);
        }
        // Counting: GF(2^6) holds 2 elements of GF(2), 2 more in GF(4),
        // 6 more in GF(8), and 22 completing GF(64).
        let mut hist = std::collections::BTreeMap::new();
        for a in ctx.elements() {
            *hist.entry(ctx.subfield_membership(a)).or_insert(0u32) += 1;
        }
        assert_eq!(hist[&1], 2);
        assert_eq!(hist[&2], 2);
        assert_eq!(hist[&3], 6);
        assert_eq!(hist[&6], 54);
    }

    #[test]
    fn eval_poly_matches_structure() {
        let ctx = FieldContext::make_context(4).unwrap();
        // The modulus vanishes at x (encoding 2) by construction.
        assert_eq!(
            ctx.eval_poly(ctx.modulus(), FieldElement(2)),
            FieldElement(0)
        );
        let p: Gf2Poly = "x^2+x+1".parse().unwrap();
        for a in ctx.elements() {
            let direct = ctx.fe_add(
                ctx.fe_add(ctx.fe_mul(a, a), a),
                FieldElement(1),
            );
            assert_eq!(ctx.eval_poly(&p, a), direct);
        }
    }

    #[test]
    fn bad_moduli_are_rejected() {
        let reducible: Gf2Poly = "x^4+x^2+1".parse().unwrap();
        assert!(matches!(
            FieldContext::with_modulus(4, reducible),
            Err(Error::BadModulus(_))
        ));
        let wrong_degree: Gf2Poly = "x^3+x+1".parse().unwrap();
        assert!(matches!(
            FieldContext::with_modulus(4, wrong_degree),
            Err(Error::BadModulus(_))
        ));
        assert!(FieldContext::make_context(0).is_err());
        assert!(FieldContext::make_context(29).is_err());
    }

    #[test]
    fn alternative_modulus_same_structure() {
        // Field structure is modulus-independent: orders of elements and
        // subfield census must match between two GF(2^6) presentations.
        let a_ctx = FieldContext::make_context(6).unwrap();
        let alt = (0..1u64 << 5)
            .map(|c| (1u64 << 6) | (c << 1) | 1)
            .map(|bits| Gf2Poly::from_words(vec![bits]))
            .filter(|p| is_irreducible(p).unwrap())
            .nth(1)
            .unwrap();
        assert_ne!(&alt, a_ctx.modulus());
        let b_ctx = FieldContext::with_modulus(6, alt).unwrap();
        let census = |ctx: &FieldContext| {
            let mut hist = std::collections::BTreeMap::new();
            for a in ctx.elements() {
                *hist.entry(ctx.subfield_membership(a)).or_insert(0u32) += 1;
            }
            hist
        };
        assert_eq!(census(&a_ctx), census(&b_ctx));
    }
}

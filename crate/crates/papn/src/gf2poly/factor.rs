//! Irreducibility testing and complete factorization over GF(2).
//!
//! The pipeline is the classic square-free / distinct-degree / equal-degree
//! split. Equal-degree splitting uses trace-map probes drawn from a
//! deterministic stream seeded by the input polynomial, so factorizations
//! are reproducible run to run.

use super::Gf2Poly;
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::fmt;

/// A multiset of irreducible factors, sorted by degree and then by
/// coefficient bits, with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<(Gf2Poly, u32)>,
}

impl Factorization {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Gf2Poly, u32)>) -> Self {
        let mut map: BTreeMap<Gf2Poly, u32> = BTreeMap::new();
        for (p, m) in pairs {
            if m > 0 {
                *map.entry(p).or_insert(0) += m;
            }
        }
        Factorization {
            factors: map.into_iter().collect(),
        }
    }

    /// Multiplies the factorization back out.
    pub fn product(&self) -> Gf2Poly {
        let mut acc = Gf2Poly::one();
        for (p, m) in &self.factors {
            acc = acc.mul(&p.pow(*m));
        }
        acc
    }

    pub fn total_degree(&self) -> usize {
        self.factors
            .iter()
            .map(|(p, m)| p.degree().unwrap_or(0) * *m as usize)
            .sum()
    }

    pub fn distinct_factor_count(&self) -> usize {
        self.factors.len()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (p, m) in &self.factors {
            if !first {
                write!(f, " * ")?;
            }
            first = false;
            if *m == 1 {
                write!(f, "({p})")?;
            } else {
                write!(f, "({p})^{m}")?;
            }
        }
        Ok(())
    }
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: `p` of degree `d` is irreducible iff `x^(2^d) = x (mod p)`
/// and `gcd(x^(2^(d/q)) + x, p) = 1` for every prime `q` dividing `d`.
pub fn is_irreducible(p: &Gf2Poly) -> Result<bool> {
    let d = match p.degree() {
        None => return Err(Error::ZeroPolynomial("is_irreducible")),
        Some(0) => return Err(Error::ConstantPolynomial("is_irreducible")),
        Some(d) => d,
    };
    if d == 1 {
        return Ok(true);
    }
    let x = Gf2Poly::x();
    let full = Gf2Poly::x_pow_pow2_mod(p, d as u32)?;
    if full != x.rem(p)? {
        return Ok(false);
    }
    for q in prime_factors(d) {
        let h = Gf2Poly::x_pow_pow2_mod(p, (d / q) as u32)?;
        if !p.gcd(&(&h + &x)).is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Square-free decomposition (Yun's algorithm adapted to characteristic 2,
/// where a vanishing derivative signals a perfect square).
fn squarefree_parts(f: &Gf2Poly) -> Vec<(Gf2Poly, u32)> {
    let mut out = Vec::new();
    let deriv = f.derivative();
    if deriv.is_zero() {
        let root = f.sqrt_even().expect("zero derivative implies even exponents");
        for (g, m) in squarefree_parts(&root) {
            out.push((g, 2 * m));
        }
        return out;
    }
    let mut c = f.gcd(&deriv);
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).expect("gcd divides");
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y.clone();
        c = c.div_exact(&y).expect("gcd divides");
        i += 1;
    }
    if !c.is_one() {
        let root = c.sqrt_even().expect("residual is a perfect square");
        for (g, m) in squarefree_parts(&root) {
            out.push((g, 2 * m));
        }
    }
    out
}

/// Distinct-degree split of a square-free polynomial: returns pairs
/// (product of all irreducible factors of degree d, d).
fn distinct_degree_parts(f: &Gf2Poly) -> Vec<(Gf2Poly, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x = Gf2Poly::x();
    let mut h = x.rem(&f).expect("nonzero");
    let mut d = 0usize;
    while f.degree().expect("nonzero") > 0 {
        d += 1;
        if 2 * d > f.degree().expect("nonzero") {
            let fd = f.degree().expect("nonzero");
            out.push((f, fd));
            break;
        }
        h = h.square().rem(&f).expect("nonzero");
        let g = f.gcd(&(&h + &x));
        if !g.is_one() {
            f = f.div_exact(&g).expect("gcd divides");
            out.push((g, d));
            if f.degree() == Some(0) {
                break;
            }
            h = h.rem(&f).expect("nonzero");
        }
    }
    out
}

fn random_poly_below(rng: &mut ChaCha8Rng, deg_bound: usize) -> Gf2Poly {
    let words = (deg_bound + 63) / 64;
    let mut v: Vec<u64> = (0..words).map(|_| rng.gen::<u64>()).collect();
    let top = deg_bound % 64;
    if top != 0 {
        let last = v.len() - 1;
        v[last] &= (1u64 << top) - 1;
    }
    Gf2Poly::from_words(v)
}

/// Equal-degree split: `f` is a product of distinct irreducibles, all of
/// degree `d`. Splits recursively with trace-map probes.
fn equal_degree_split(f: &Gf2Poly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Gf2Poly>) {
    let fd = f.degree().expect("nonzero");
    if fd == d {
        out.push(f.clone());
        return;
    }
    loop {
        let u = random_poly_below(rng, fd);
        if u.is_zero() {
            continue;
        }
        // Trace map u + u^2 + u^4 + ... + u^(2^(d-1)) lands in GF(2) on each
        // residue component; it splits f whenever the traces disagree.
        let mut t = u.clone();
        let mut s = u.clone();
        for _ in 1..d {
            s = s.square().rem(f).expect("nonzero");
            t = &t + &s;
        }
        let g = f.gcd(&t);
        let gd = g.degree().expect("gcd of nonzero");
        if gd > 0 && gd < fd {
            equal_degree_split(&g, d, rng, out);
            equal_degree_split(&f.div_exact(&g).expect("gcd divides"), d, rng, out);
            return;
        }
    }
}

/// Complete factorization into irreducibles. `factor(1)` is the empty
/// product; the zero polynomial is rejected.
pub fn factor(p: &Gf2Poly) -> Result<Factorization> {
    match p.degree() {
        None => return Err(Error::ZeroPolynomial("factor")),
        Some(0) => return Ok(Factorization { factors: Vec::new() }),
        Some(_) => {}
    }
    // Deterministic probe stream keyed on the input bits.
    let mut seed = 0x9e37_79b9_7f4a_7c15u64;
    for e in p.exponents() {
        seed = seed.rotate_left(7) ^ (e as u64).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(Gf2Poly, u32)> = Vec::new();
    for (sf, mult) in squarefree_parts(p) {
        for (dd, d) in distinct_degree_parts(&sf) {
            let mut irr = Vec::new();
            equal_degree_split(&dd, d, &mut rng, &mut irr);
            for q in irr {
                pairs.push((q, mult));
            }
        }
    }
    Ok(Factorization::from_pairs(pairs))
}

/// Number of distinct roots of `p` in the field with `2^n` elements,
/// computed as `deg gcd(p, x^(2^n) + x)` without building the field.
pub fn count_roots_in_field(p: &Gf2Poly, n: u32) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("count_roots_in_field"));
    }
    if n == 0 || n > 63 {
        return Err(Error::DegreeOutOfRange {
            n,
            max: 63,
        });
    }
    if p.degree() == Some(0) {
        return Ok(0);
    }
    let h = Gf2Poly::x_pow_pow2_mod(p, n)?;
    let g = p.gcd(&(&h + &Gf2Poly::x()));
    Ok(g.degree().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> Gf2Poly {
        s.parse().unwrap()
    }

    #[test]
    fn irreducibility_known_cases() {
        assert!(is_irreducible(&p("x^2+x+1")).unwrap());
        assert!(is_irreducible(&p("x^9+x+1")).unwrap());
        assert!(is_irreducible(&p("x")).unwrap());
        assert!(is_irreducible(&p("x+1")).unwrap());
        assert!(!is_irreducible(&p("x^2+1")).unwrap()); // (x+1)^2
        assert!(!is_irreducible(&p("x^4+x^2+1")).unwrap()); // (x^2+x+1)^2
        assert!(!is_irreducible(&p("x^2+x")).unwrap()); // x(x+1)
        assert_eq!(
            is_irreducible(&Gf2Poly::one()),
            Err(Error::ConstantPolynomial("is_irreducible"))
        );
        assert_eq!(
            is_irreducible(&Gf2Poly::zero()),
            Err(Error::ZeroPolynomial("is_irreducible"))
        );
    }

    #[test]
    fn factor_simple() {
        let f = factor(&p("x^2+1")).unwrap();
        assert_eq!(f.factors, vec![(p("x+1"), 2)]);
        let f = factor(&p("x^2+x")).unwrap();
        assert_eq!(f.factors, vec![(p("x"), 1), (p("x+1"), 1)]);
        assert!(factor(&Gf2Poly::one()).unwrap().factors.is_empty());
        assert_eq!(
            factor(&Gf2Poly::zero()),
            Err(Error::ZeroPolynomial("factor"))
        );
    }

    #[test]
    fn factor_structured_product() {
        // x^9 (x+1)^9 (x^2+x+1): recovered exactly, in canonical order.
        let input = Gf2Poly::monomial(9)
            .mul(&Gf2Poly::x_plus_one_pow(9))
            .mul(&p("x^2+x+1"));
        let f = factor(&input).unwrap();
        assert_eq!(
            f.factors,
            vec![(p("x"), 9), (p("x+1"), 9), (p("x^2+x+1"), 1)]
        );
        assert_eq!(f.product(), input);
    }

    #[test]
    fn factor_split_of_degree18_product() {
        // A degree-18 product of two degree-9 irreducibles that differ only
        // by coefficient reversal; the split must separate them.
        let a = p("x^9+x+1");
        let b = p("x^9+x^8+1");
        let f = factor(&a.mul(&b)).unwrap();
        assert_eq!(f.factors, vec![(a, 1), (b, 1)]);
    }

    #[test]
    fn factor_random_reassembly() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let small_irreducibles: Vec<Gf2Poly> = ["x", "x+1", "x^2+x+1", "x^3+x+1", "x^3+x^2+1"]
            .iter()
            .map(|s| p(s))
            .collect();
        for _ in 0..60 {
            let mut input = Gf2Poly::one();
            let mut expected = Vec::new();
            for q in &small_irreducibles {
                let m = rng.gen_range(0..4u32);
                if m > 0 {
                    input = input.mul(&q.pow(m));
                    expected.push((q.clone(), m));
                }
            }
            if input.is_one() {
                continue;
            }
            let f = factor(&input).unwrap();
            assert_eq!(f, Factorization::from_pairs(expected));
            assert_eq!(f.product(), input);
        }
    }

    #[test]
    fn factor_product_round_trip_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..40 {
            let deg = rng.gen_range(1..=40);
            let mut exps: Vec<usize> = (0..deg).filter(|_| rng.gen_bool(0.5)).collect();
            exps.push(deg);
            let input = Gf2Poly::from_exponents(exps);
            let f = factor(&input).unwrap();
            assert_eq!(f.product(), input);
            for (q, _) in &f.factors {
                assert!(is_irreducible(q).unwrap(), "non-irreducible factor {q}");
            }
        }
    }

    #[test]
    fn root_counts_match_known_fields() {
        assert_eq!(count_roots_in_field(&p("x^2+x+1"), 2).unwrap(), 2);
        assert_eq!(count_roots_in_field(&p("x^2+x+1"), 3).unwrap(), 0);
        assert_eq!(count_roots_in_field(&p("x^2+x+1"), 4).unwrap(), 2);
        assert_eq!(count_roots_in_field(&p("x^2+x"), 1).unwrap(), 2);
        assert_eq!(count_roots_in_field(&p("x^9+x+1"), 9).unwrap(), 9);
        assert_eq!(count_roots_in_field(&p("x^9+x+1"), 8).unwrap(), 0);
        assert_eq!(count_roots_in_field(&Gf2Poly::one(), 5).unwrap(), 0);
        assert_eq!(
            count_roots_in_field(&Gf2Poly::zero(), 5),
            Err(Error::ZeroPolynomial("count_roots_in_field"))
        );
    }

    #[test]
    fn root_count_equals_factor_degree_sum() {
        // The number of roots in GF(2^n) is the degree sum over distinct
        // irreducible factors whose degree divides n.
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..30 {
            let deg = rng.gen_range(1..=24);
            let mut exps: Vec<usize> = (0..deg).filter(|_| rng.gen_bool(0.5)).collect();
            exps.push(deg);
            let input = Gf2Poly::from_exponents(exps);
            let f = factor(&input).unwrap();
            for n in 1..=12u32 {
                let expected: usize = f
                    .factors
                    .iter()
                    .map(|(q, _)| q.degree().unwrap())
                    .filter(|d| n as usize % d == 0)
                    .sum();
                assert_eq!(count_roots_in_field(&input, n).unwrap(), expected);
            }
        }
    }
}

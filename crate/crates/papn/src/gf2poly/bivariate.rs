//! Bivariate polynomials over GF(2), kept as sorted term sets.
//!
//! These carry the intermediate objects of the elimination pipeline: each
//! term is an (x-exponent, y-exponent) pair and addition is symmetric
//! difference. Term sets stay small (hundreds of terms), so a `BTreeSet`
//! beats a dense representation and gives canonical iteration order for
//! free.

use super::Gf2Poly;
use crate::error::{Error, Result};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

/// A monomial exponent pair: `(i, j)` stands for `x^i y^j`.
pub type Monomial2 = (u32, u32);

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Gf2Bivariate {
    terms: BTreeSet<Monomial2>,
}

impl Gf2Bivariate {
    pub fn zero() -> Self {
        Gf2Bivariate {
            terms: BTreeSet::new(),
        }
    }

    pub fn one() -> Self {
        Gf2Bivariate {
            terms: [(0, 0)].into_iter().collect(),
        }
    }

    pub fn monomial(i: u32, j: u32) -> Self {
        Gf2Bivariate {
            terms: [(i, j)].into_iter().collect(),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = Monomial2>>(terms: I) -> Self {
        let mut set = BTreeSet::new();
        for t in terms {
            // Duplicates cancel in pairs.
            if !set.insert(t) {
                set.remove(&t);
            }
        }
        Gf2Bivariate { terms: set }
    }

    /// Lifts a univariate polynomial in x.
    pub fn from_univariate_x(p: &Gf2Poly) -> Self {
        Self::from_terms(p.exponents().into_iter().map(|e| (e as u32, 0)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.contains(&(0, 0))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = Monomial2> + '_ {
        self.terms.iter().copied()
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.terms.iter().map(|&(i, _)| i).max()
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.terms.iter().map(|&(_, j)| j).max()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let terms = self
            .terms
            .symmetric_difference(&rhs.terms)
            .copied()
            .collect();
        Gf2Bivariate { terms }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut acc = BTreeSet::new();
        for &(a, b) in &self.terms {
            for &(c, d) in &rhs.terms {
                let t = (a + c, b + d);
                if !acc.insert(t) {
                    acc.remove(&t);
                }
            }
        }
        Gf2Bivariate { terms: acc }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        result
    }

    /// Substitutes a monomial for each variable: `x -> x^a y^b`,
    /// `y -> x^c y^d`. Exponent arithmetic is overflow-checked.
    pub fn substitute_monomials(&self, x_to: Monomial2, y_to: Monomial2) -> Result<Self> {
        let mut out = BTreeSet::new();
        for &(i, j) in &self.terms {
            let (i, j) = (i as u64, j as u64);
            let xi = i * x_to.0 as u64 + j * y_to.0 as u64;
            let yj = i * x_to.1 as u64 + j * y_to.1 as u64;
            if xi > u32::MAX as u64 || yj > u32::MAX as u64 {
                return Err(Error::Parse(
                    "exponent overflow in monomial substitution".into(),
                ));
            }
            let t = (xi as u32, yj as u32);
            if !out.insert(t) {
                out.remove(&t);
            }
        }
        Ok(Gf2Bivariate { terms: out })
    }

    /// Coefficient polynomials in x, indexed by the power of y
    /// (length `deg_y + 1`). Errors on the zero polynomial.
    pub fn coeffs_wrt_y(&self) -> Result<Vec<Gf2Poly>> {
        let dy = self
            .deg_y()
            .ok_or(Error::ZeroPolynomial("coeffs_wrt_y"))? as usize;
        let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); dy + 1];
        for &(i, j) in &self.terms {
            buckets[j as usize].push(i as usize);
        }
        Ok(buckets.into_iter().map(Gf2Poly::from_exponents).collect())
    }

    /// The reverse of `coeffs_wrt_y`.
    pub fn from_coeffs_wrt_y(coeffs: &[Gf2Poly]) -> Self {
        let mut terms = Vec::new();
        for (j, c) in coeffs.iter().enumerate() {
            for e in c.exponents() {
                terms.push((e as u32, j as u32));
            }
        }
        Self::from_terms(terms)
    }

    /// Collapses to a univariate polynomial in x after the substitution
    /// `y -> x^e`.
    pub fn to_univariate_in_x(&self, y_to_x_pow: u32) -> Gf2Poly {
        Gf2Poly::from_exponents(
            self.terms
                .iter()
                .map(|&(i, j)| i as usize + j as usize * y_to_x_pow as usize),
        )
    }

    /// Serializes as one "i,j" exponent pair per line, in term order.
    pub fn to_pair_lines(&self) -> String {
        let mut s = String::new();
        for &(i, j) in &self.terms {
            s.push_str(&format!("{i},{j}\n"));
        }
        s
    }

    pub fn from_pair_lines(s: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for line in s.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (a, b) = line
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("bad exponent pair line {line:?}")))?;
            let i: u32 = a
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad x exponent in {line:?}")))?;
            let j: u32 = b
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad y exponent in {line:?}")))?;
            terms.push((i, j));
        }
        Ok(Self::from_terms(terms))
    }

    /// Parses the monomial-sum form, e.g. "x^3y^2+x^2+y+1". A variable may
    /// appear at most once per term, so malformed inputs like "x^3xy" are
    /// rejected rather than silently merged.
    pub fn from_monomial_form(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial text".into()));
        }
        if compact == "0" {
            return Ok(Self::zero());
        }
        let mut terms = Vec::new();
        for term in compact.split('+') {
            let factors = parse_term_factors(term, &['x', 'y'])?;
            let mut m = (0u32, 0u32);
            for (var, e) in factors {
                match var {
                    'x' => m.0 = e,
                    'y' => m.1 = e,
                    _ => unreachable!(),
                }
            }
            terms.push(m);
        }
        Ok(Self::from_terms(terms))
    }
}

/// Splits one monomial term like "x^3y^2", "y", or "1" into (variable,
/// exponent) factors drawn from `vars`. Rejects empty terms, unknown
/// symbols, and repeated variables.
pub(crate) fn parse_term_factors(term: &str, vars: &[char]) -> Result<Vec<(char, u32)>> {
    if term.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    if term == "1" {
        return Ok(Vec::new());
    }
    let chars: Vec<char> = term.chars().collect();
    let mut out: Vec<(char, u32)> = Vec::new();
    let mut pos = 0usize;
    while pos < chars.len() {
        let var = chars[pos];
        if !vars.contains(&var) {
            return Err(Error::Parse(format!(
                "unexpected symbol {var:?} in term {term:?}"
            )));
        }
        if out.iter().any(|&(v, _)| v == var) {
            return Err(Error::Parse(format!(
                "variable {var:?} repeats in term {term:?}"
            )));
        }
        pos += 1;
        let mut exp = 1u32;
        if pos < chars.len() && chars[pos] == '^' {
            pos += 1;
            let start = pos;
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            if start == pos {
                return Err(Error::Parse(format!("missing exponent in term {term:?}")));
            }
            let digits: String = chars[start..pos].iter().collect();
            exp = digits
                .parse()
                .map_err(|_| Error::Parse(format!("exponent overflow in term {term:?}")))?;
        }
        out.push((var, exp));
    }
    Ok(out)
}

impl fmt::Display for Gf2Bivariate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for &(i, j) in self.terms.iter().rev() {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            if i == 0 && j == 0 {
                write!(f, "1")?;
                continue;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
            match j {
                0 => {}
                1 => write!(f, "y")?,
                _ => write!(f, "y^{j}")?,
            }
        }
        Ok(())
    }
}

/// Accepts the monomial-sum form (contains a variable letter) or the
/// pair-per-line form (contains a comma).
impl FromStr for Gf2Bivariate {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.contains(',') {
            Self::from_pair_lines(s)
        } else {
            Self::from_monomial_form(s)
        }
    }
}

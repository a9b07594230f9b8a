//! Resultants with respect to y, computed by two independent routes.
//!
//! Route one (`resultant_y`) never expands the symbolic determinant: it
//! evaluates the Sylvester matrix at enough points of a small binary field,
//! takes numeric determinants, and interpolates the answer back, then checks
//! the interpolated coefficients all live in GF(2).
//!
//! Route two (`resultant_y_direct`) expands the same determinant
//! symbolically with a subset-sum expansion over column masks, which is
//! sign-free in characteristic 2. It is exponential in the matrix order, so
//! it is capped, and serves as the cross-checking oracle for route one.

use super::{Gf2Bivariate, Gf2Poly};
use crate::error::{Error, Result};
use std::collections::HashMap;

/// The ring operations the subset-sum determinant needs. Implemented by the
/// univariate, bivariate, and trivariate carriers.
pub trait SubsetRing: Clone {
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
    fn is_ring_zero(&self) -> bool;
    fn ring_add(&self, rhs: &Self) -> Self;
    fn ring_mul(&self, rhs: &Self) -> Self;
}

impl SubsetRing for Gf2Poly {
    fn ring_zero() -> Self {
        Gf2Poly::zero()
    }
    fn ring_one() -> Self {
        Gf2Poly::one()
    }
    fn is_ring_zero(&self) -> bool {
        self.is_zero()
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
}

impl SubsetRing for Gf2Bivariate {
    fn ring_zero() -> Self {
        Gf2Bivariate::zero()
    }
    fn ring_one() -> Self {
        Gf2Bivariate::one()
    }
    fn is_ring_zero(&self) -> bool {
        self.is_zero()
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
}

/// Largest matrix order the symbolic subset expansion will accept.
pub const MAX_SYMBOLIC_DET_ORDER: usize = 16;

/// Determinant of a square matrix over a commutative GF(2)-algebra, by
/// Laplace expansion over column subsets (in characteristic 2 the
/// determinant equals the permanent, so no signs are tracked). Memoization
/// keys on the chosen-column mask alone; only two popcount levels are alive
/// at a time.
pub fn sylvester_det<T: SubsetRing>(matrix: &[Vec<T>]) -> Result<T> {
    let n = matrix.len();
    if n == 0 {
        return Ok(T::ring_one());
    }
    if n > MAX_SYMBOLIC_DET_ORDER {
        return Err(Error::MatrixTooLarge {
            order: n,
            max: MAX_SYMBOLIC_DET_ORDER,
        });
    }
    for row in matrix {
        if row.len() != n {
            return Err(Error::Parse("determinant of a non-square matrix".into()));
        }
    }
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    // Level r holds, for each mask of r chosen columns, the determinant of
    // the minor on rows r..n and the unchosen columns.
    let mut next: HashMap<u32, T> = HashMap::new();
    next.insert(full, T::ring_one());
    for r in (0..n).rev() {
        let mut level: HashMap<u32, T> = HashMap::new();
        for mask in 0u32..=full {
            if mask.count_ones() as usize != r {
                continue;
            }
            let mut acc = T::ring_zero();
            for c in 0..n {
                if mask & (1 << c) != 0 {
                    continue;
                }
                let entry = &matrix[r][c];
                if entry.is_ring_zero() {
                    continue;
                }
                if let Some(sub) = next.get(&(mask | (1 << c))) {
                    if !sub.is_ring_zero() {
                        acc = acc.ring_add(&entry.ring_mul(sub));
                    }
                }
            }
            level.insert(mask, acc);
        }
        next = level;
    }
    Ok(next.remove(&0).expect("empty mask is always computed"))
}

/// Builds the Sylvester matrix of two coefficient lists (ascending powers of
/// y). The first `deg g` rows carry the coefficients of `f`, the remaining
/// `deg f` rows those of `g`, each reversed and shifted one column per row.
fn sylvester_matrix<T: SubsetRing>(fc: &[T], gc: &[T]) -> Vec<Vec<T>> {
    let df = fc.len() - 1;
    let dg = gc.len() - 1;
    let n = df + dg;
    let mut m: Vec<Vec<T>> = (0..n).map(|_| vec![T::ring_zero(); n]).collect();
    for r in 0..dg {
        for i in 0..=df {
            m[r][r + i] = fc[df - i].clone();
        }
    }
    for r in 0..df {
        for i in 0..=dg {
            m[dg + r][r + i] = gc[dg - i].clone();
        }
    }
    m
}

fn y_coeffs_checked(
    f: &Gf2Bivariate,
    g: &Gf2Bivariate,
    op: &'static str,
) -> Result<(Vec<Gf2Poly>, Vec<Gf2Poly>)> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial(op));
    }
    let fc = f.coeffs_wrt_y()?;
    let gc = g.coeffs_wrt_y()?;
    if fc.len() < 2 || gc.len() < 2 {
        return Err(Error::DegenerateElimination(format!(
            "{op}: both arguments must have positive degree in y"
        )));
    }
    Ok((fc, gc))
}

/// Resultant in y by full symbolic determinant expansion. Capped at matrix
/// order {MAX_SYMBOLIC_DET_ORDER}; use `resultant_y` beyond that.
pub fn resultant_y_direct(f: &Gf2Bivariate, g: &Gf2Bivariate) -> Result<Gf2Poly> {
    let (fc, gc) = y_coeffs_checked(f, g, "resultant_y_direct")?;
    sylvester_det(&sylvester_matrix(&fc, &gc))
}

/// The evaluation-count and field-size parameters `(bound, m)` the
/// interpolation route will use: `bound + 1` sample points drawn from
/// GF(2^m).
pub fn eval_interp_parameters(f: &Gf2Bivariate, g: &Gf2Bivariate) -> Result<(usize, u32)> {
    let (fc, gc) = y_coeffs_checked(f, g, "eval_interp_parameters")?;
    let df = fc.len() - 1;
    let dg = gc.len() - 1;
    let max_fx = fc.iter().filter_map(|p| p.degree()).max().unwrap_or(0);
    let max_gx = gc.iter().filter_map(|p| p.degree()).max().unwrap_or(0);
    let bound = dg * max_fx + df * max_gx;
    let mut m = 1u32;
    while (1u64 << m) <= bound as u64 {
        m += 1;
    }
    Ok((bound, m))
}

/// Resultant in y by evaluation and interpolation. The degree in x of the
/// resultant is at most `deg_y(g) * max_x(f) + deg_y(f) * max_x(g)`; the
/// Sylvester determinant is sampled at that many points plus one in a binary
/// field just big enough to supply them, and the result is interpolated and
/// checked to have GF(2) coefficients.
pub fn resultant_y(f: &Gf2Bivariate, g: &Gf2Bivariate) -> Result<Gf2Poly> {
    let (fc, gc) = y_coeffs_checked(f, g, "resultant_y")?;
    let (bound, m) = eval_interp_parameters(f, g)?;
    let field = EvalField::new(m)?;
    let df = fc.len() - 1;
    let dg = gc.len() - 1;
    let order = df + dg;
    let points: Vec<u64> = (0..=bound as u64).collect();
    assert!(
        points.len() as u64 <= field.size(),
        "evaluation field must supply bound + 1 distinct points"
    );
    let mut values = Vec::with_capacity(points.len());
    for &t in &points {
        let fv: Vec<u64> = fc.iter().map(|p| field.eval_gf2poly(p, t)).collect();
        let gv: Vec<u64> = gc.iter().map(|p| field.eval_gf2poly(p, t)).collect();
        let mut mat = vec![vec![0u64; order]; order];
        for r in 0..dg {
            for i in 0..=df {
                mat[r][r + i] = fv[df - i];
            }
        }
        for r in 0..df {
            for i in 0..=dg {
                mat[dg + r][r + i] = gv[dg - i];
            }
        }
        values.push(field.det(mat));
    }
    let coeffs = field.interpolate(&points, &values);
    let mut exps = Vec::new();
    for (e, &c) in coeffs.iter().enumerate() {
        match c {
            0 => {}
            1 => exps.push(e),
            _ => {
                return Err(Error::InterpolationOutsideBaseField {
                    point_count: bound + 1,
                })
            }
        }
    }
    Ok(Gf2Poly::from_exponents(exps))
}

/// Whether f and g share a factor of positive degree in y over the rational
/// function field GF(2)(x), decided by a pseudo-remainder sequence with
/// content stripping. This is exactly the vanishing condition for the
/// resultant in y.
pub fn has_common_y_factor(f: &Gf2Bivariate, g: &Gf2Bivariate) -> Result<bool> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial("has_common_y_factor"));
    }
    let mut a = f.coeffs_wrt_y()?;
    let mut b = g.coeffs_wrt_y()?;
    loop {
        if b.len() == 1 {
            // Nonzero and constant in y: the gcd has y-degree 0.
            return Ok(false);
        }
        let r = pseudo_rem(a, &b);
        if r.is_empty() {
            // b divides a (up to content), and deg_y(b) >= 1.
            return Ok(true);
        }
        a = b;
        b = strip_content(r);
    }
}

/// One pseudo-division pass: repeatedly kills the leading y-term of `a`
/// using `lead(b) * a + lead(a) * y^(da-db) * b`. Returns the (possibly
/// empty) coefficient list of the remainder.
fn pseudo_rem(mut a: Vec<Gf2Poly>, b: &[Gf2Poly]) -> Vec<Gf2Poly> {
    let db = b.len() - 1;
    let lcb = &b[db];
    while a.len() > db {
        let da = a.len() - 1;
        let lca = a[da].clone();
        for c in a.iter_mut() {
            *c = c.mul(lcb);
        }
        for (i, bc) in b.iter().enumerate() {
            a[da - db + i] = &a[da - db + i] + &lca.mul(bc);
        }
        while a.last().map_or(false, |c| c.is_zero()) {
            a.pop();
        }
        if a.is_empty() {
            break;
        }
    }
    a
}

/// Divides out the gcd of all coefficients.
fn strip_content(mut coeffs: Vec<Gf2Poly>) -> Vec<Gf2Poly> {
    let mut content = Gf2Poly::zero();
    for c in &coeffs {
        content = content.gcd(c);
    }
    if !content.is_one() && !content.is_zero() {
        for c in coeffs.iter_mut() {
            *c = c.div_exact(&content).expect("content divides");
        }
    }
    coeffs
}

/// A small binary field GF(2^m) with full log/antilog tables, used only as
/// an evaluation domain for interpolation. The modulus is the smallest
/// irreducible of degree m whose root x generates the multiplicative group,
/// so the antilog table is filled by repeated multiplication by x.
pub(crate) struct EvalField {
    m: u32,
    order: u64,
    log: Vec<u32>,
    alog: Vec<u64>,
}

const MAX_EVAL_FIELD_BITS: u32 = 20;

fn mulmod_bits(mut a: u64, mut b: u64, modulus: u64, m: u32) -> u64 {
    let mut r = 0u64;
    while b != 0 {
        if b & 1 == 1 {
            r ^= a;
        }
        b >>= 1;
        a <<= 1;
        if (a >> m) & 1 == 1 {
            a ^= modulus;
        }
    }
    r
}

fn powmod_bits(mut base: u64, mut e: u64, modulus: u64, m: u32) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod_bits(r, base, modulus, m);
        }
        base = mulmod_bits(base, base, modulus, m);
        e >>= 1;
    }
    r
}

fn prime_factors_u64(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
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

impl EvalField {
    pub(crate) fn new(m: u32) -> Result<EvalField> {
        if m == 0 || m > MAX_EVAL_FIELD_BITS {
            return Err(Error::DegreeOutOfRange {
                n: m,
                max: MAX_EVAL_FIELD_BITS,
            });
        }
        let order = (1u64 << m) - 1;
        let primes = prime_factors_u64(order);
        let modulus = (0..1u64 << (m - 1))
            .map(|c| (1u64 << m) | (c << 1) | 1)
            .find(|&cand| {
                let p = Gf2Poly::from_words(vec![cand]);
                super::factor::is_irreducible(&p) == Ok(true)
                    && primes
                        .iter()
                        .all(|&q| powmod_bits(2, order / q, cand, m) != 1)
            })
            .ok_or_else(|| Error::BadModulus(format!("no primitive modulus of degree {m}")))?;
        let mut alog = vec![0u64; order as usize];
        let mut log = vec![0u32; 1usize << m];
        let mut a = 1u64;
        for (i, slot) in alog.iter_mut().enumerate() {
            *slot = a;
            log[a as usize] = i as u32;
            a = mulmod_bits(a, 2, modulus, m);
        }
        debug_assert_eq!(a, 1, "x must have full multiplicative order");
        Ok(EvalField { m, order, log, alog })
    }

    pub(crate) fn size(&self) -> u64 {
        1u64 << self.m
    }

    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.log[a as usize] as u64 + self.log[b as usize] as u64;
        self.alog[(s % self.order) as usize]
    }

    pub(crate) fn inv(&self, a: u64) -> u64 {
        debug_assert_ne!(a, 0, "inverse of zero");
        self.alog[((self.order - self.log[a as usize] as u64) % self.order) as usize]
    }

    /// Evaluates a GF(2)[x] polynomial at a field point by dense Horner.
    pub(crate) fn eval_gf2poly(&self, p: &Gf2Poly, x: u64) -> u64 {
        let Some(d) = p.degree() else { return 0 };
        let mut acc = 0u64;
        for e in (0..=d).rev() {
            acc = self.mul(acc, x);
            if p.coeff(e) {
                acc ^= 1;
            }
        }
        acc
    }

    /// Determinant by Gaussian elimination (characteristic 2: row swaps do
    /// not change the answer).
    pub(crate) fn det(&self, mut m: Vec<Vec<u64>>) -> u64 {
        let n = m.len();
        let mut det = 1u64;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| m[r][col] != 0) else {
                return 0;
            };
            m.swap(col, piv);
            let pv = m[col][col];
            det = self.mul(det, pv);
            let inv = self.inv(pv);
            for r in col + 1..n {
                if m[r][col] != 0 {
                    let factor = self.mul(m[r][col], inv);
                    for c in col..n {
                        let t = self.mul(factor, m[col][c]);
                        m[r][c] ^= t;
                    }
                }
            }
        }
        det
    }

    /// Newton interpolation through (points[i], values[i]); returns dense
    /// coefficients (ascending powers) over this field.
    pub(crate) fn interpolate(&self, points: &[u64], values: &[u64]) -> Vec<u64> {
        let n = points.len();
        debug_assert_eq!(n, values.len());
        // Divided differences, in place: dd[i] becomes the coefficient of
        // the Newton basis product prod_{j<i} (X + points[j]).
        let mut dd = values.to_vec();
        for level in 1..n {
            for i in (level..n).rev() {
                let num = dd[i] ^ dd[i - 1];
                let den = points[i] ^ points[i - level];
                dd[i] = self.mul(num, self.inv(den));
            }
        }
        // Expand the Newton form into standard coefficients.
        let mut coeffs = vec![0u64; n];
        let mut basis = vec![0u64; n + 1];
        basis[0] = 1;
        let mut basis_len = 1usize;
        for (i, &a) in dd.iter().enumerate() {
            if a != 0 {
                for (c, &b) in coeffs.iter_mut().zip(basis.iter()).take(basis_len) {
                    *c ^= self.mul(a, b);
                }
            }
            // basis *= (X + points[i])
            if i + 1 < n {
                let pt = points[i];
                let mut carry = 0u64;
                for b in basis.iter_mut().take(basis_len + 1) {
                    let new = carry ^ self.mul(*b, pt);
                    carry = *b;
                    *b = new;
                }
                basis_len += 1;
            }
        }
        coeffs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn b(s: &str) -> Gf2Bivariate {
        s.parse().unwrap()
    }

    fn random_bivariate(rng: &mut ChaCha8Rng, dx: u32, dy: u32) -> Gf2Bivariate {
        // Positive degree in y guaranteed.
        let mut terms = vec![(rng.gen_range(0..=dx), dy)];
        for i in 0..=dx {
            for j in 0..=dy {
                if rng.gen_bool(0.4) {
                    terms.push((i, j));
                }
            }
        }
        Gf2Bivariate::from_terms(terms)
    }

    #[test]
    fn eval_field_group_laws() {
        for m in 1..=8u32 {
            let f = EvalField::new(m).unwrap();
            let size = f.size();
            for a in 1..size.min(64) {
                assert_eq!(f.mul(a, f.inv(a)), 1, "m={m} a={a}");
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.mul(a, 0), 0);
            }
        }
    }

    #[test]
    fn interpolation_recovers_gf2_polynomials() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let field = EvalField::new(7).unwrap();
        for _ in 0..50 {
            let deg = rng.gen_range(0..=40usize);
            let mut exps: Vec<usize> = (0..deg).filter(|_| rng.gen_bool(0.5)).collect();
            exps.push(deg);
            let p = Gf2Poly::from_exponents(exps);
            let points: Vec<u64> = (0..=deg as u64).collect();
            let values: Vec<u64> = points.iter().map(|&t| field.eval_gf2poly(&p, t)).collect();
            let coeffs = field.interpolate(&points, &values);
            let rebuilt = Gf2Poly::from_exponents(
                coeffs
                    .iter()
                    .enumerate()
                    .filter(|&(_, &c)| c == 1)
                    .map(|(e, _)| e),
            );
            assert!(coeffs.iter().all(|&c| c <= 1));
            assert_eq!(rebuilt, p);
        }
    }

    #[test]
    fn resultant_of_linear_pair() {
        // Res_y(y + x, y + x^2) = x^2 + x.
        let f = b("y+x");
        let g = b("y+x^2");
        let expect: Gf2Poly = "x^2+x".parse().unwrap();
        assert_eq!(resultant_y(&f, &g).unwrap(), expect);
        assert_eq!(resultant_y_direct(&f, &g).unwrap(), expect);
    }

    #[test]
    fn resultant_quadratic_linear() {
        // Res_y(y^2 + x, y + x) = x^2 + x (plug y = x into the quadratic).
        let f = b("y^2+x");
        let g = b("y+x");
        let expect: Gf2Poly = "x^2+x".parse().unwrap();
        assert_eq!(resultant_y(&f, &g).unwrap(), expect);
        assert_eq!(resultant_y_direct(&f, &g).unwrap(), expect);
    }

    #[test]
    fn shared_factor_means_zero_resultant() {
        // (y + x)(y + x^2) and (y + x)(y + x + 1) share y + x.
        let f = b("y+x").mul(&b("y+x^2"));
        let g = b("y+x").mul(&b("y+x+1"));
        assert!(resultant_y(&f, &g).unwrap().is_zero());
        assert!(resultant_y_direct(&f, &g).unwrap().is_zero());
        assert!(has_common_y_factor(&f, &g).unwrap());
        let h = b("y+x^2+1");
        assert!(!has_common_y_factor(&f, &h).unwrap());
        assert!(!resultant_y(&f, &h).unwrap().is_zero());
    }

    #[test]
    fn both_routes_agree_on_random_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..60 {
            let f = random_bivariate(&mut rng, 3, 3);
            let g = random_bivariate(&mut rng, 3, 3);
            let via_interp = resultant_y(&f, &g).unwrap();
            let via_det = resultant_y_direct(&f, &g).unwrap();
            assert_eq!(via_interp, via_det, "f={f} g={g}");
            assert_eq!(
                via_interp.is_zero(),
                has_common_y_factor(&f, &g).unwrap(),
                "vanishing must match common-factor detection: f={f} g={g}"
            );
        }
    }

    #[test]
    fn resultant_is_multiplicative_in_first_argument() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let draw = |rng: &mut ChaCha8Rng| loop {
            let p = random_bivariate(rng, 2, 2);
            if p.deg_y().unwrap_or(0) >= 1 {
                return p;
            }
        };
        for _ in 0..20 {
            let f1 = draw(&mut rng);
            let f2 = draw(&mut rng);
            let g = draw(&mut rng);
            let lhs = resultant_y(&f1.mul(&f2), &g).unwrap();
            let rhs = resultant_y(&f1, &g)
                .unwrap()
                .mul(&resultant_y(&f2, &g).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn degenerate_inputs_are_rejected() {
        let f = b("y+x");
        assert!(matches!(
            resultant_y(&f, &b("x^2+1")),
            Err(Error::DegenerateElimination(_))
        ));
        assert!(matches!(
            resultant_y(&Gf2Bivariate::zero(), &f),
            Err(Error::ZeroPolynomial(_))
        ));
        let big_f = Gf2Bivariate::monomial(0, 12).add(&b("x"));
        let big_g = Gf2Bivariate::monomial(0, 12).add(&b("x+1"));
        assert!(matches!(
            resultant_y_direct(&big_f, &big_g),
            Err(Error::MatrixTooLarge { order: 24, max: 16 })
        ));
        assert!(resultant_y(&big_f, &big_g).is_ok());
    }

    #[test]
    fn subset_det_matches_small_known_matrix() {
        // det [[x, 1], [1, x]] = x^2 + 1 over GF(2)[x].
        let x: Gf2Poly = "x".parse().unwrap();
        let one = Gf2Poly::one();
        let m = vec![vec![x.clone(), one.clone()], vec![one, x]];
        assert_eq!(sylvester_det(&m).unwrap(), "x^2+1".parse().unwrap());
    }

    #[test]
    fn interp_parameters_growth() {
        let f = b("y+x");
        let g = b("y+x^2");
        let (bound, m) = eval_interp_parameters(&f, &g).unwrap();
        assert_eq!(bound, 3);
        assert_eq!(m, 2);
    }
}

//! Differential properties of power functions x -> x^d on GF(2^n).
//!
//! The pointwise notion: the map is x0-locally-APN when, for every nonzero
//! a, the derivative equation F(x+a) + F(x) = F(x0+a) + F(x0) has no
//! solutions beyond the forced pair {x0, x0+a}. The x0 = 0 case has a
//! one-line witness form for power maps: a violation is an x outside GF(2)
//! with (x+1)^d + x^d + 1 = 0. Plain APN is the uniform statement over all
//! base points at once.

use crate::error::{Error, Result};
use crate::field::{Exponent, FieldContext, FieldElement};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

/// Distribution of solution counts of F(x+1) + F(x) = b over all outputs b.
/// For a power function this single row determines the whole differential
/// table: row a is row 1 read at b / a^d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentialSpectrum {
    pub n: u32,
    /// solution count -> number of outputs b attaining it (count 0 rows
    /// included, so values sum to 2^n).
    pub histogram: BTreeMap<u64, u64>,
}

impl DifferentialSpectrum {
    /// The differential uniformity contributed by this row: the largest
    /// attained solution count.
    pub fn uniformity(&self) -> u64 {
        self.histogram
            .iter()
            .filter(|&(_, &v)| v > 0)
            .map(|(&k, _)| k)
            .max()
            .unwrap_or(0)
    }

    /// Total number of inputs accounted for (always 2^n).
    pub fn total_solutions(&self) -> u64 {
        self.histogram.iter().map(|(&k, &v)| k * v).sum()
    }
}

fn power_table(ctx: &FieldContext, d: &Exponent) -> Vec<u64> {
    (0..ctx.size())
        .map(|x| ctx.power_map(d, FieldElement(x)).0)
        .collect()
}

/// Solution-count histogram of F(x+1) + F(x) = b over b, for F(x) = x^d.
pub fn differential_spectrum(ctx: &FieldContext, d: &Exponent) -> DifferentialSpectrum {
    let f = power_table(ctx, d);
    let size = ctx.size() as usize;
    let mut counts = vec![0u64; size];
    for x in 0..size {
        counts[(f[x ^ 1] ^ f[x]) as usize] += 1;
    }
    let mut histogram = BTreeMap::new();
    for c in counts {
        *histogram.entry(c).or_insert(0) += 1;
    }
    DifferentialSpectrum {
        n: ctx.n(),
        histogram,
    }
}

/// APN test for the power map x^d: differential uniformity exactly 2. One
/// derivative row suffices because row a is a scaled copy of row 1.
pub fn is_apn(ctx: &FieldContext, d: &Exponent) -> bool {
    differential_spectrum(ctx, d).uniformity() == 2
}

/// First x outside GF(2), in encoding order, with (x+1)^d + x^d + 1 = 0 —
/// i.e. a witness that x^d is not 0-locally-APN. None means the property
/// holds.
pub fn zero_apn_violation_witness(ctx: &FieldContext, d: &Exponent) -> Option<FieldElement> {
    let nd = d.normalized();
    for x in 2..ctx.size() {
        let x = FieldElement(x);
        let lhs = ctx
            .fe_add(
                ctx.fe_pow(ctx.fe_add(x, FieldElement(1)), nd),
                ctx.fe_pow(x, nd),
            );
        if lhs == FieldElement(1) {
            return Some(x);
        }
    }
    None
}

/// 0-locally-APN test for x^d, by direct witness search.
pub fn is_zero_apn_power(ctx: &FieldContext, d: &Exponent) -> bool {
    zero_apn_violation_witness(ctx, d).is_none()
}

/// Local APN property at an arbitrary base point, by the definition: every
/// nonzero direction a admits only the forced solutions {x0, x0+a}. This is
/// the independent O(4^n) route; it shares no shortcuts with
/// `is_zero_apn_power` or `is_one_apn`.
pub fn is_x0_apn(ctx: &FieldContext, d: &Exponent, x0: FieldElement) -> bool {
    let f = power_table(ctx, d);
    let size = ctx.size() as usize;
    let x0b = x0.0 as usize;
    for a in 1..size {
        let target = f[x0b ^ a] ^ f[x0b];
        for x in 0..size {
            if f[x ^ a] ^ f[x] == target && x != x0b && x != x0b ^ a {
                return false;
            }
        }
    }
    true
}

/// Local APN property at base point 1, computed in O(2^n) through the
/// power-map scaling x = a t: the direction-a equation pulls back to row 1
/// at b = ((1+a)^d + 1) / a^d, so the property holds exactly when that row
/// count is the forced 2 for every a. For power maps this single base point
/// represents every nonzero one.
pub fn is_one_apn(ctx: &FieldContext, d: &Exponent) -> Result<bool> {
    let f = power_table(ctx, d);
    let size = ctx.size() as usize;
    let mut counts = vec![0u32; size];
    for x in 0..size {
        counts[(f[x ^ 1] ^ f[x]) as usize] += 1;
    }
    for a in 1..size {
        let numer = f[a ^ 1] ^ 1;
        let denom = ctx.fe_inv(FieldElement(f[a]))?;
        let b = ctx.fe_mul(FieldElement(numer), denom);
        if counts[b.0 as usize] != 2 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The orbit of an exponent under doubling modulo 2^n - 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclotomicClass {
    pub n: u32,
    pub canonical: u64,
    pub members: Vec<u64>,
}

pub fn cyclotomic_class(n: u32, d: i64) -> Result<CyclotomicClass> {
    let e = Exponent::new(d, n)?;
    let order = (1u64 << n) - 1;
    let mut members = vec![e.normalized()];
    if order > 1 {
        let mut cur = e.normalized();
        loop {
            cur = (cur * 2) % order;
            if cur == members[0] {
                break;
            }
            members.push(cur);
        }
    }
    members.sort_unstable();
    Ok(CyclotomicClass {
        n,
        canonical: members[0],
        members,
    })
}

/// Full classification row for one cyclotomic class of exponents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ApnClassification {
    pub n: u32,
    pub canonical_d: u64,
    pub class_size: u64,
    pub is_apn: bool,
    pub is_zero_apn: bool,
    pub is_one_apn: bool,
    /// First field element outside GF(2) violating the 0-local property,
    /// when there is one.
    pub witness: Option<u64>,
}

impl ApnClassification {
    pub const CSV_HEADER: &'static str =
        "n,canonical_d,class_size,is_apn,is_zero_apn,is_one_apn,witness";

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.n,
            self.canonical_d,
            self.class_size,
            self.is_apn,
            self.is_zero_apn,
            self.is_one_apn,
            self.witness.map(|w| w.to_string()).unwrap_or_default()
        )
    }
}

/// Default cap on the exhaustive exponent scan.
pub const DEFAULT_SCAN_CAP: u32 = 16;

/// Classifies every cyclotomic class of exponents of GF(2^n)*: one row per
/// class, ordered by canonical representative. All differential properties
/// are invariant under doubling (x -> x^2 is an automorphism), so one
/// representative decides the class.
pub fn classify_all_exponents(ctx: &FieldContext, cap: u32) -> Result<Vec<ApnClassification>> {
    let n = ctx.n();
    if n > cap {
        return Err(Error::ScanCapExceeded {
            n,
            cap,
        });
    }
    let order = ctx.order();
    let mut canonicals = Vec::new();
    if order == 1 {
        canonicals.push(0u64);
    } else {
        let mut seen = vec![false; order as usize];
        for d in 0..order {
            if seen[d as usize] {
                continue;
            }
            canonicals.push(d);
            let mut cur = d;
            loop {
                seen[cur as usize] = true;
                cur = (cur * 2) % order;
                if cur == d {
                    break;
                }
            }
        }
    }
    let mut rows = canonicals
        .par_iter()
        .map(|&d| {
            let class = cyclotomic_class(n, d as i64)?;
            let e = Exponent::new(d as i64, n)?;
            let witness = zero_apn_violation_witness(ctx, &e);
            Ok(ApnClassification {
                n,
                canonical_d: d,
                class_size: class.members.len() as u64,
                is_apn: is_apn(ctx, &e),
                is_zero_apn: witness.is_none(),
                is_one_apn: is_one_apn(ctx, &e)?,
                witness: witness.map(|w| w.0),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|r| r.canonical_d);
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ctx(n: u32) -> FieldContext {
        FieldContext::make_context(n).unwrap()
    }

    fn exp(d: i64, n: u32) -> Exponent {
        Exponent::new(d, n).unwrap()
    }

    #[test]
    fn gold_cube_is_apn_everywhere() {
        for n in 3..=9u32 {
            let c = ctx(n);
            let d = exp(3, n);
            assert!(is_apn(&c, &d), "x^3 must be APN at n={n}");
            assert!(is_zero_apn_power(&c, &d));
            assert!(is_one_apn(&c, &d).unwrap());
        }
    }

    #[test]
    fn cube_spectrum_at_n5() {
        let s = differential_spectrum(&ctx(5), &exp(3, 5));
        let expected: BTreeMap<u64, u64> = [(0, 16), (2, 16)].into_iter().collect();
        assert_eq!(s.histogram, expected);
        assert_eq!(s.uniformity(), 2);
        assert_eq!(s.total_solutions(), 32);
    }

    #[test]
    fn spectrum_invariants_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for n in 2..=8u32 {
            let c = ctx(n);
            for _ in 0..20 {
                let d_raw = rng.gen_range(0..(1i64 << n) - 1);
                let s = differential_spectrum(&c, &exp(d_raw, n));
                assert_eq!(s.total_solutions(), c.size());
                for (&k, _) in &s.histogram {
                    assert_eq!(k % 2, 0, "counts pair up x with x+1");
                }
                // Doubling the exponent permutes nothing in the histogram.
                let s2 = differential_spectrum(&c, &exp(d_raw * 2, n));
                assert_eq!(s.histogram, s2.histogram);
            }
        }
    }

    #[test]
    fn zero_apn_routes_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for n in 2..=7u32 {
            let c = ctx(n);
            for _ in 0..25 {
                let d = exp(rng.gen_range(0..(1i64 << n) - 1), n);
                assert_eq!(
                    is_zero_apn_power(&c, &d),
                    is_x0_apn(&c, &d, FieldElement(0)),
                    "n={n} d={d}"
                );
            }
        }
    }

    #[test]
    fn one_apn_routes_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for n in 2..=7u32 {
            let c = ctx(n);
            for _ in 0..25 {
                let d = exp(rng.gen_range(0..(1i64 << n) - 1), n);
                assert_eq!(
                    is_one_apn(&c, &d).unwrap(),
                    is_x0_apn(&c, &d, FieldElement(1)),
                    "n={n} d={d}"
                );
            }
        }
    }

    #[test]
    fn nonzero_base_points_all_agree_for_power_maps() {
        let c = ctx(5);
        for d_raw in 0..31i64 {
            let d = exp(d_raw, 5);
            let at_one = is_x0_apn(&c, &d, FieldElement(1));
            for x0 in 2..32u64 {
                assert_eq!(
                    is_x0_apn(&c, &d, FieldElement(x0)),
                    at_one,
                    "d={d_raw} x0={x0}"
                );
            }
        }
    }

    #[test]
    fn known_witnesses() {
        // x^502 on GF(2^9) fails the 0-local property already at x = 2.
        let c = ctx(9);
        assert_eq!(
            zero_apn_violation_witness(&c, &exp(502, 9)),
            Some(FieldElement(2))
        );
    }

    #[test]
    fn cyclotomic_class_examples() {
        let cl = cyclotomic_class(10, 447).unwrap();
        assert_eq!(cl.canonical, 447);
        assert!(cl.members.contains(&1014));
        assert_eq!(cl.members.len(), 10);
        let neg = cyclotomic_class(11, -9).unwrap();
        assert_eq!(neg.canonical, 895);
        assert!(neg.members.contains(&2038));
        let zero = cyclotomic_class(6, 0).unwrap();
        assert_eq!(zero.members, vec![0]);
    }

    #[test]
    fn classification_census_n5() {
        let c = ctx(5);
        let rows = classify_all_exponents(&c, DEFAULT_SCAN_CAP).unwrap();
        // 31 nonzero residues split into the zero class and six orbits of
        // size 5.
        assert_eq!(rows.len(), 7);
        let canonicals: Vec<u64> = rows.iter().map(|r| r.canonical_d).collect();
        assert_eq!(canonicals, vec![0, 1, 3, 5, 7, 11, 15]);
        let gold = rows.iter().find(|r| r.canonical_d == 3).unwrap();
        assert!(gold.is_apn && gold.is_zero_apn && gold.is_one_apn);
        assert_eq!(gold.witness, None);
        let identity = rows.iter().find(|r| r.canonical_d == 1).unwrap();
        assert!(!identity.is_apn, "x^1 is linear, uniformity 2^n");
        for r in &rows {
            assert_eq!(r.is_zero_apn, r.witness.is_none());
        }
    }

    #[test]
    fn scan_cap_is_enforced() {
        let c = ctx(9);
        assert!(matches!(
            classify_all_exponents(&c, 8),
            Err(Error::ScanCapExceeded { n: 9, cap: 8 })
        ));
    }

    #[test]
    fn classification_is_modulus_independent() {
        use crate::gf2poly::is_irreducible;
        use crate::gf2poly::Gf2Poly;
        let default_ctx = ctx(6);
        let alt_modulus = (0..1u64 << 5)
            .map(|c| (1u64 << 6) | (c << 1) | 1)
            .map(|bits| Gf2Poly::from_words(vec![bits]))
            .filter(|p| is_irreducible(p).unwrap())
            .nth(2)
            .unwrap();
        let alt_ctx = FieldContext::with_modulus(6, alt_modulus).unwrap();
        let a = classify_all_exponents(&default_ctx, 16).unwrap();
        let b = classify_all_exponents(&alt_ctx, 16).unwrap();
        for (ra, rb) in a.iter().zip(&b) {
            assert_eq!(ra.canonical_d, rb.canonical_d);
            assert_eq!(ra.class_size, rb.class_size);
            assert_eq!(ra.is_apn, rb.is_apn);
            assert_eq!(ra.is_zero_apn, rb.is_zero_apn);
            assert_eq!(ra.is_one_apn, rb.is_one_apn);
            // Witness encodings may differ between presentations; only
            // their existence is canonical.
            assert_eq!(ra.witness.is_some(), rb.witness.is_some());
        }
    }
}

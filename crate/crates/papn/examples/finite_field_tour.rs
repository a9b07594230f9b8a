//! A tour of the supporting machinery: field contexts over frozen moduli,
//! cyclotomic classes, differential spectra, and the two independent
//! resultant routes agreeing on random inputs.
//!
//! Run: cargo run --example finite_field_tour

use papn::{
    cyclotomic_class, differential_spectrum, has_common_y_factor, resultant_y,
    resultant_y_direct, Exponent, FieldContext, Gf2Bivariate,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_bivariate(rng: &mut ChaCha8Rng, dx: u32, dy: u32) -> Gf2Bivariate {
    loop {
        let p = Gf2Bivariate::from_terms((0..=dx).flat_map(|i| {
            (0..=dy).map(move |j| (i, j))
        })
        .filter(|_| rng.gen_bool(0.5)));
        if p.deg_y().unwrap_or(0) >= 1 {
            return p;
        }
    }
}

fn main() -> papn::Result<()> {
    // Field contexts use the smallest irreducible modulus per degree and
    // carry log/antilog tables for fast power maps.
    for n in [5u32, 9, 11] {
        let ctx = FieldContext::make_context(n)?;
        println!(
            "GF(2^{n}): modulus {:x}, generator {}, tables: {}",
            ctx.modulus(),
            ctx.generator(),
            ctx.has_tables()
        );
    }
    println!();

    // Exponents live modulo 2^n - 1; negative forms normalize.
    let e = Exponent::new(-9, 11)?;
    println!("d = -9 over GF(2^11) normalizes to {}", e.normalized());
    let class = cyclotomic_class(11, -9)?;
    println!(
        "its cyclotomic class has canonical representative {} and size {}",
        class.canonical,
        class.members.len()
    );
    println!();

    // Differential spectra: row counts of the derivative at direction 1.
    let ctx = FieldContext::make_context(5)?;
    let spec = differential_spectrum(&ctx, &Exponent::new(3, 5)?);
    println!(
        "x^3 over GF(2^5): uniformity {}, spectrum {:?}",
        spec.uniformity(),
        spec.histogram
    );
    println!();

    // The two resultant routes are independent implementations; they must
    // agree, and the resultant vanishes exactly on a shared y-factor.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut vanished = 0u32;
    for _ in 0..50 {
        let f = random_bivariate(&mut rng, 3, 3);
        let g = random_bivariate(&mut rng, 3, 3);
        let fast = resultant_y(&f, &g)?;
        let direct = resultant_y_direct(&f, &g)?;
        assert_eq!(fast, direct, "routes disagree on f = {f}, g = {g}");
        assert_eq!(fast.is_zero(), has_common_y_factor(&f, &g)?);
        if fast.is_zero() {
            vanished += 1;
        }
    }
    println!("50 random resultants: both routes agree; {vanished} vanished (shared y-factor)");
    Ok(())
}

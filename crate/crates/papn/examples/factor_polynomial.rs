//! Exact factorization over GF(2): builds a structured product, factors it
//! back, certifies irreducibility, and counts roots inside concrete fields.
//!
//! Run: cargo run --example factor_polynomial

use papn::{count_roots_in_field, factor, is_irreducible, Gf2Poly};

fn main() -> papn::Result<()> {
    // The criterion polynomial for d = -9 cleared by x^9 (x+1)^9:
    // (x+1)^9 + x^9 + x^9 (x+1)^9.
    let p: Gf2Poly = "x^18+x^17+x^10+x^9+x^8+x+1".parse()?;
    println!("p   = {p}");
    println!("hex = {p:x}");

    let f = factor(&p)?;
    println!("factorization: {f}");
    assert_eq!(f.product(), p);

    for (q, m) in &f.factors {
        println!(
            "  factor {q} (multiplicity {m}): irreducible = {}",
            is_irreducible(q)?
        );
        for n in [6, 9, 10, 18] {
            let roots = count_roots_in_field(q, n)?;
            if roots > 0 {
                println!("    has {roots} roots in GF(2^{n})");
            }
        }
    }

    // A degree-9 irreducible splits completely exactly in fields whose
    // dimension 9 divides.
    let q: Gf2Poly = "x^9+x+1".parse()?;
    println!();
    println!("roots of {q} by dimension:");
    for n in 1..=18 {
        println!("  GF(2^{n:>2}): {}", count_roots_in_field(&q, n)?);
    }
    Ok(())
}

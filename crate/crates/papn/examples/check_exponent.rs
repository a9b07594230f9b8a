//! Checks one exponent over one field from every angle: the 0-APN test,
//! its violation witness, the honest quadratic-time base-point test, the
//! fast 1-APN route, and the differential spectrum.
//!
//! Run: cargo run --example check_exponent

use papn::{
    differential_spectrum, is_apn, is_one_apn, is_x0_apn, is_zero_apn_power,
    zero_apn_violation_witness, Exponent, FieldContext, FieldElement,
};

fn report(n: u32, d_raw: i64) -> papn::Result<()> {
    let ctx = FieldContext::make_context(n)?;
    let d = Exponent::new(d_raw, n)?;
    println!("x^{d} over GF(2^{n}), modulus {:x}", ctx.modulus());

    let zero_apn = is_zero_apn_power(&ctx, &d);
    println!("  0-APN (fast route):          {zero_apn}");
    let slow = is_x0_apn(&ctx, &d, FieldElement(0));
    println!("  0-APN (quadratic route):     {slow}");
    assert_eq!(zero_apn, slow, "the two routes must agree");

    match zero_apn_violation_witness(&ctx, &d) {
        Some(w) => println!("  witness outside GF(2):       x = {w}"),
        None => println!("  witness outside GF(2):       none"),
    }

    println!("  1-APN:                       {}", is_one_apn(&ctx, &d)?);
    println!("  APN (all base points):       {}", is_apn(&ctx, &d));

    let spec = differential_spectrum(&ctx, &d);
    println!("  differential uniformity:     {}", spec.uniformity());
    println!("  spectrum (count -> rows):    {:?}", spec.histogram);
    println!();
    Ok(())
}

fn main() -> papn::Result<()> {
    // The Gold exponent: APN, hence 0-APN, everywhere.
    report(9, 3)?;
    // 0-APN but not APN at n = 9 — one of the two smallest open cases the
    // family theorems settle.
    report(9, 45)?;
    // The inverse-power form d = -9, valid exactly when 9 does not divide
    // the dimension; at n = 9 it fails with a concrete witness.
    report(9, -9)?;
    report(10, -9)?;
    Ok(())
}

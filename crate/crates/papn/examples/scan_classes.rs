//! Classifies every cyclotomic class of exponents over one field: APN,
//! 0-APN, 1-APN, and a violation witness where the 0-APN property fails.
//!
//! Run: cargo run --release --example scan_classes

use papn::{classify_all_exponents, ApnClassification, FieldContext, DEFAULT_SCAN_CAP};

fn main() -> papn::Result<()> {
    let n = 9;
    let ctx = FieldContext::make_context(n)?;
    let rows = classify_all_exponents(&ctx, DEFAULT_SCAN_CAP)?;

    println!("{}", ApnClassification::CSV_HEADER);
    for row in &rows {
        println!("{}", row.csv_line());
    }

    let total_classes = rows.len();
    let apn = rows.iter().filter(|r| r.is_apn).count();
    let zero_not_apn = rows.iter().filter(|r| r.is_zero_apn && !r.is_apn).count();
    println!();
    println!("GF(2^{n}): {total_classes} cyclotomic classes of exponents");
    println!("  APN:                {apn}");
    println!("  0-APN but not APN:  {zero_not_apn}");
    println!(
        "  0-APN-not-APN canonical exponents: {:?}",
        rows.iter()
            .filter(|r| r.is_zero_apn && !r.is_apn)
            .map(|r| r.canonical_d)
            .collect::<Vec<_>>()
    );
    Ok(())
}

//! Replays all seven recorded elimination scripts end to end and then
//! re-checks the subfield-exclusion step numerically at each script's
//! reference dimension.
//!
//! Every script is verified stage by stage: each stated equation must be
//! the base criterion polynomial composed with a squaring, each recorded
//! derivation must regenerate its target exactly, each elimination is
//! recomputed (resultants via evaluation-interpolation, cross-checked
//! against the direct Sylvester determinant when small enough), and each
//! recorded factorization must match factor for factor, with
//! irreducibility certificates on final results.
//!
//! Run: cargo run --release --example resultant_elimination

use papn::{replay_elimination, verify_subfield_exclusion, ProofArtifact, BUILTIN_ARTIFACTS};

fn main() -> papn::Result<()> {
    for (family, theorem, _) in BUILTIN_ARTIFACTS {
        let artifact = ProofArtifact::builtin(family)?;
        let report = replay_elimination(&artifact)?;
        println!(
            "{family} ({theorem}): d = {}, reference dimension {}",
            report.d_raw,
            report
                .n
                .map(|n| n.to_string())
                .unwrap_or_else(|| "none (dimension-free)".into())
        );
        for stage in &report.stages {
            println!(
                "  [{}] {:<24} {}",
                if stage.ok { "ok" } else { "FAIL" },
                stage.label,
                stage.detail
            );
        }
        println!(
            "  final object {}: degree {}, factors: {}",
            report.final_name,
            report.final_poly.degree().unwrap_or(0),
            report.final_factors
        );
        assert!(report.all_ok(), "{family} replay must pass");

        // Numeric reconciliation: no nontrivial factor may contribute a
        // genuine criterion solution at the reference dimension.
        let n = report.n.unwrap_or(10);
        let excl = verify_subfield_exclusion(&artifact, &report, n)?;
        println!("  subfield exclusion at n = {n}: {}", excl.ok);
        for row in &excl.rows {
            if !row.trivial && row.roots_in_field > 0 {
                println!(
                    "    factor {} has {} roots in GF(2^{n}), {} violating",
                    row.factor, row.roots_in_field, row.violating_roots
                );
            }
        }
        assert!(excl.ok, "{family} exclusion must pass at n = {n}");
        println!();
    }
    println!("all seven elimination scripts replay cleanly");
    Ok(())
}

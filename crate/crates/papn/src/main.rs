//! Command-line interface over the library: single-exponent checks, full
//! scans, factorization, resultants, family verification, and reference
//! table reproduction.
//!
//! Exit codes: 0 = success (and, for `zero-apn`, the property holds);
//! 1 = the property fails or a verification check fails; 2 = usage or
//! input errors.

use clap::{Parser, Subcommand, ValueEnum};
use papn::{
    classify_all_exponents, differential_spectrum, factor, is_apn, is_one_apn,
    is_zero_apn_power, replay_elimination, reproduce_table1, resultant_y,
    verify_family_bruteforce, verify_subfield_exclusion, zero_apn_violation_witness,
    ApnClassification, Exponent, FieldContext, Gf2Bivariate, Gf2Poly, ProofArtifact,
    DEFAULT_SCAN_CAP,
};
use serde::Serialize;
use std::fmt::Write as _;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "papn",
    version,
    about = "Verify partial-APN properties of power functions x^d over GF(2^n)"
)]
struct Cli {
    /// Worker thread count (default: all cores). Output bytes do not
    /// depend on this.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide by exhaustive search whether x^d is 0-APN over GF(2^n).
    ZeroApn {
        /// Extension degree n of the field GF(2^n).
        #[arg(short)]
        n: u32,
        /// Exponent d: an integer or an arithmetic expression such as
        /// "3*2^5-7" (operators + - * ^ and parentheses).
        #[arg(short, allow_hyphen_values = true)]
        d: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Classify every cyclotomic class of exponents over GF(2^n).
    Scan {
        #[arg(short)]
        n: u32,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Cap on n for the exhaustive scan.
        #[arg(long, default_value_t = DEFAULT_SCAN_CAP)]
        cap: u32,
    },
    /// Factor a GF(2) polynomial into irreducibles.
    Factor {
        /// The polynomial, in lowercase-hex coefficient form ("203" is
        /// x^9+x+1) or monomial form ("x^9+x+1").
        poly: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Resultant of two bivariate GF(2) polynomials from a file.
    Resultant {
        /// File whose two non-empty lines are polynomials in monomial
        /// form, e.g. "x^3y^2+xy+1".
        file: std::path::PathBuf,
        /// Variable to eliminate.
        #[arg(long, default_value = "y")]
        var: char,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Replay recorded elimination scripts and exhaustively confirm the
    /// exponent families.
    Verify {
        /// Family or theorem id (T1..T7, TH1..TH7) or "all".
        #[arg(long, default_value = "all")]
        theorem: String,
        /// Upper dimension for the exhaustive confirmations.
        #[arg(long, default_value_t = 19)]
        n_max: u32,
    },
    /// Recompute the 0-APN-not-APN classes of GF(2^n) and mark them
    /// against the reference list and the family enumerations.
    Table1 {
        #[arg(short)]
        n: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_SCAN_CAP)]
        cap: u32,
    },
}

/// Evaluates a CLI exponent argument: plain integer or k-free expression.
fn parse_exponent_arg(src: &str) -> papn::Result<i64> {
    if src.contains('k') {
        return Err(papn::Error::Parse(
            "exponent expressions must be closed (no parameter k)".into(),
        ));
    }
    papn::expr::eval_in_k(src, 0)
}

fn emit_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable output")
    );
}

#[derive(Serialize)]
struct ZeroApnOutput {
    schema: &'static str,
    n: u32,
    d_raw: i64,
    d_normalized: u64,
    is_zero_apn: bool,
    witness: Option<u64>,
    is_one_apn: bool,
    is_apn: bool,
    differential_uniformity: u64,
}

fn cmd_zero_apn(n: u32, d_src: &str, format: Format) -> papn::Result<bool> {
    let d_raw = parse_exponent_arg(d_src)?;
    let ctx = FieldContext::make_context(n)?;
    let d = Exponent::new(d_raw, n)?;
    let zero_apn = is_zero_apn_power(&ctx, &d);
    let witness = zero_apn_violation_witness(&ctx, &d).map(|w| w.0);
    let out = ZeroApnOutput {
        schema: "papn.zero-apn/1",
        n,
        d_raw,
        d_normalized: d.normalized(),
        is_zero_apn: zero_apn,
        witness,
        is_one_apn: is_one_apn(&ctx, &d)?,
        is_apn: is_apn(&ctx, &d),
        differential_uniformity: differential_spectrum(&ctx, &d).uniformity(),
    };
    match format {
        Format::Json => emit_json(&out),
        _ => {
            println!("x^{} over GF(2^{n})", d);
            println!("  0-APN: {}", out.is_zero_apn);
            match out.witness {
                Some(w) => println!("  violation witness outside GF(2): {w}"),
                None => println!("  no violation witness"),
            }
            println!("  1-APN: {}", out.is_one_apn);
            println!("  APN: {}", out.is_apn);
            println!("  differential uniformity: {}", out.differential_uniformity);
        }
    }
    Ok(zero_apn)
}

#[derive(Serialize)]
struct ScanOutput {
    schema: &'static str,
    n: u32,
    rows: Vec<ApnClassification>,
}

fn cmd_scan(n: u32, format: Format, cap: u32) -> papn::Result<()> {
    let ctx = FieldContext::make_context(n)?;
    let rows = classify_all_exponents(&ctx, cap)?;
    match format {
        Format::Json => emit_json(&ScanOutput {
            schema: "papn.scan/1",
            n,
            rows,
        }),
        _ => {
            println!("{}", ApnClassification::CSV_HEADER);
            for row in &rows {
                println!("{}", row.csv_line());
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct FactorRow {
    hex: String,
    monomial: String,
    degree: usize,
    multiplicity: u32,
    irreducible: bool,
}

#[derive(Serialize)]
struct FactorOutput {
    schema: &'static str,
    input_hex: String,
    input_monomial: String,
    factors: Vec<FactorRow>,
}

fn cmd_factor(poly_src: &str, format: Format) -> papn::Result<()> {
    let p: Gf2Poly = poly_src.parse()?;
    let f = factor(&p)?;
    let mut rows = Vec::new();
    for (q, m) in &f.factors {
        rows.push(FactorRow {
            hex: format!("{q:x}"),
            monomial: q.to_string(),
            degree: q.degree().unwrap_or(0),
            multiplicity: *m,
            irreducible: papn::is_irreducible(q)?,
        });
    }
    let out = FactorOutput {
        schema: "papn.factor/1",
        input_hex: format!("{p:x}"),
        input_monomial: p.to_string(),
        factors: rows,
    };
    match format {
        Format::Json => emit_json(&out),
        _ => {
            println!("{} = {}", out.input_monomial, f);
            for row in &out.factors {
                println!(
                    "  {} (hex {}, degree {}) ^ {}",
                    row.monomial, row.hex, row.degree, row.multiplicity
                );
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct ResultantOutput {
    schema: &'static str,
    eliminated: char,
    remaining: char,
    degree: Option<usize>,
    hex: String,
    monomial: String,
    vanishes: bool,
}

fn cmd_resultant(path: &std::path::Path, var: char, format: Format) -> papn::Result<()> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| papn::Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let lines: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .collect();
    if lines.len() != 2 {
        return Err(papn::Error::Parse(format!(
            "expected exactly two polynomial lines, found {}",
            lines.len()
        )));
    }
    let mut f: Gf2Bivariate = lines[0].parse()?;
    let mut g: Gf2Bivariate = lines[1].parse()?;
    let remaining = match var {
        'y' => 'x',
        'x' => {
            // Swap the roles of x and y, eliminate y, rename the result.
            f = Gf2Bivariate::from_terms(f.terms().map(|(i, j)| (j, i)));
            g = Gf2Bivariate::from_terms(g.terms().map(|(i, j)| (j, i)));
            'y'
        }
        other => {
            return Err(papn::Error::Parse(format!(
                "can only eliminate x or y, not {other:?}"
            )))
        }
    };
    let r = resultant_y(&f, &g)?;
    let monomial = if remaining == 'y' {
        r.to_string().replace('x', "y")
    } else {
        r.to_string()
    };
    let out = ResultantOutput {
        schema: "papn.resultant/1",
        eliminated: var,
        remaining,
        degree: r.degree(),
        hex: format!("{r:x}"),
        monomial,
        vanishes: r.is_zero(),
    };
    match format {
        Format::Json => emit_json(&out),
        _ => {
            println!(
                "res_{}({}, {}) = {}",
                out.eliminated, lines[0], lines[1], out.monomial
            );
            println!("  degree in {}: {:?}", out.remaining, out.degree);
            println!("  hex: {}", out.hex);
            if out.vanishes {
                println!("  the resultant vanishes: the inputs share a {var}-factor");
            }
        }
    }
    Ok(())
}

fn verify_one(id: &str, n_max: u32, failures: &mut u32) -> papn::Result<()> {
    let desc = papn::family_by_id(id)?;
    let artifact = ProofArtifact::builtin(desc.family)?;
    let mut line = |label: String, pass: bool| {
        println!("{} ({}) {label}: {}", desc.theorem, desc.family, if pass { "PASS" } else { "FAIL" });
        if !pass {
            *failures += 1;
        }
    };

    let report = replay_elimination(&artifact)?;
    line(
        format!("elimination replay ({} stages)", report.stages.len()),
        report.all_ok(),
    );

    match report.n {
        Some(n) => {
            let excl = verify_subfield_exclusion(&artifact, &report, n)?;
            line(format!("subfield exclusion at n = {n}"), excl.ok);
        }
        None => {
            // Dimension-free script: sweep the exclusion and demand it
            // fails exactly on the excluded dimensions.
            let hi = n_max.min(18);
            let mut sweep_ok = true;
            for n in 3..=hi {
                let excl = verify_subfield_exclusion(&artifact, &report, n)?;
                if excl.ok != desc.admissible_n(n) {
                    sweep_ok = false;
                }
            }
            line(
                format!("subfield exclusion sweep 3 <= n <= {hi} (two-sided)"),
                sweep_ok,
            );
        }
    }

    let rows = verify_family_bruteforce(desc, 3, n_max)?;
    let confirmed = rows.iter().filter(|r| r.expected_zero_apn).count();
    let refuted = rows.len() - confirmed;
    let mut label = format!("exhaustive search 3 <= n <= {n_max} ({confirmed} instances 0-APN");
    if refuted > 0 {
        let w: Vec<String> = rows
            .iter()
            .filter(|r| !r.expected_zero_apn)
            .map(|r| {
                format!(
                    "n = {} witness {}",
                    r.instance.n,
                    r.witness.map(|w| w.to_string()).unwrap_or_else(|| "none".into())
                )
            })
            .collect();
        let _ = write!(label, "; {refuted} excluded dimensions fail: {}", w.join(", "));
    }
    label.push(')');
    line(label, rows.iter().all(|r| r.pass));
    Ok(())
}

fn cmd_verify(theorem: &str, n_max: u32) -> papn::Result<bool> {
    let mut failures = 0u32;
    if theorem.eq_ignore_ascii_case("all") {
        for desc in papn::all_families() {
            verify_one(desc.family, n_max, &mut failures)?;
        }
    } else {
        verify_one(theorem, n_max, &mut failures)?;
    }
    if failures == 0 {
        println!("all checks passed");
    } else {
        println!("{failures} check(s) FAILED");
    }
    Ok(failures == 0)
}

#[derive(Serialize)]
struct Table1Output {
    schema: &'static str,
    #[serde(flatten)]
    reproduction: papn::Table1Reproduction,
    reference_exponents: Vec<u64>,
    missing_from_scan: Vec<u64>,
}

fn cmd_table1(n: u32, format: Format, cap: u32) -> papn::Result<()> {
    let rep = reproduce_table1(n, cap)?;
    let missing = rep.listed_missing()?;
    match format {
        Format::Json => {
            emit_json(&Table1Output {
                schema: "papn.table1/1",
                reference_exponents: papn::reference_exponents(n).to_vec(),
                missing_from_scan: missing,
                reproduction: rep,
            });
        }
        Format::Csv => {
            println!("{},listed,explained_by", ApnClassification::CSV_HEADER);
            for row in &rep.rows {
                println!(
                    "{},{},{}",
                    row.classification.csv_line(),
                    row.listed,
                    row.explained_by.join("|")
                );
            }
        }
        Format::Text => {
            println!(
                "GF(2^{n}): {} classes 0-APN but not APN; reference list {:?}",
                rep.rows.len(),
                papn::reference_exponents(n)
            );
            for row in &rep.rows {
                println!(
                    "  d = {:>4} (class size {:>2}) {} {}",
                    row.classification.canonical_d,
                    row.classification.class_size,
                    if row.listed { "listed" } else { "      " },
                    if row.explained_by.is_empty() {
                        "unexplained".to_string()
                    } else {
                        format!("explained by {}", row.explained_by.join(", "))
                    }
                );
            }
            if missing.is_empty() {
                println!("every reference exponent reappears in the scan");
            } else {
                println!("MISSING from scan: {missing:?}");
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> papn::Result<bool> {
    match cli.cmd {
        Cmd::ZeroApn { n, d, format } => cmd_zero_apn(n, &d, format),
        Cmd::Scan { n, format, cap } => cmd_scan(n, format, cap).map(|_| true),
        Cmd::Factor { poly, format } => cmd_factor(&poly, format).map(|_| true),
        Cmd::Resultant { file, var, format } => {
            cmd_resultant(&file, var, format).map(|_| true)
        }
        Cmd::Verify { theorem, n_max } => cmd_verify(&theorem, n_max),
        Cmd::Table1 { n, format, cap } => cmd_table1(n, format, cap).map(|_| true),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .is_err()
        {
            eprintln!("error: could not configure {t} worker threads");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

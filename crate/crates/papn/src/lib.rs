//! Verification toolkit for partially APN power functions over binary
//! fields.
//!
//! A power function x^d over GF(2^n) is 0-APN when the equation
//! (x+1)^d + x^d + 1 = 0 has no solution outside GF(2). This crate checks
//! that property along two independent routes and cross-validates them:
//!
//! * **Field search** ([`diff`]): exhaustive evaluation over concrete
//!   fields — differential spectra, APN / 0-APN / 1-APN tests, witnesses,
//!   and full per-dimension classifications up to cyclotomic equivalence.
//! * **Symbolic elimination** ([`theorem`]): replay of recorded resultant
//!   eliminations over GF(2)[x, y, z], with factor-for-factor expectation
//!   checks, irreducibility certificates, and a numeric subfield-exclusion
//!   step that reconciles the symbolic route with the field search.
//!
//! Supporting layers: exact GF(2) polynomial arithmetic and factorization
//! ([`gf2poly`]), concrete field contexts ([`field`]), the seven exponent
//! families ([`families`]), and reference tables ([`tables`]).

pub mod diff;
pub mod error;
pub mod expr;
pub mod families;
pub mod field;
pub mod gf2poly;
pub mod tables;
pub mod theorem;

pub use diff::{
    classify_all_exponents, cyclotomic_class, differential_spectrum, is_apn, is_one_apn,
    is_x0_apn, is_zero_apn_power, zero_apn_violation_witness, ApnClassification, CyclotomicClass,
    DifferentialSpectrum, DEFAULT_SCAN_CAP,
};
pub use error::{Error, Result};
pub use families::{
    all_families, enumerate_family, family_by_id, verify_all_families_bruteforce,
    verify_family_bruteforce, BruteForceRow, FamilyDescriptor, FamilyInstance,
};
pub use field::{Exponent, FieldContext, FieldElement, MAX_FIELD_BITS};
pub use gf2poly::{
    count_roots_in_field, eval_interp_parameters, factor, has_common_y_factor, is_irreducible,
    resultant_y, resultant_y_direct, sylvester_det, Factorization, Gf2Bivariate, Gf2Poly,
    SubsetRing,
};
pub use tables::{
    reference_exponents, reproduce_table1, verify_gold_control, verify_negative_apn,
    ExplainedPair, ExplainedRow, NotApnRow, Table1Reproduction, TABLE1_EXPONENTS,
    TABLE2_EXPLAINED,
};
pub use theorem::{
    base_polynomial, replay_elimination, verify_subfield_exclusion, Gf2Trivariate, ProofArtifact,
    ReplayReport, ReplayStage, SubfieldExclusionReport, BUILTIN_ARTIFACTS,
};

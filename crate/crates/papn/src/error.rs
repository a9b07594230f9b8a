use std::fmt;

/// Errors surfaced by polynomial arithmetic, field construction, parsing,
/// and verification replay.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Division or remainder by the zero polynomial.
    DivisionByZero,
    /// An operation required a nonzero polynomial.
    ZeroPolynomial(&'static str),
    /// An operation required a non-constant polynomial.
    ConstantPolynomial(&'static str),
    /// Requested extension degree is outside the supported range.
    DegreeOutOfRange { n: u32, max: u32 },
    /// A supplied modulus is not an irreducible polynomial of the right degree.
    BadModulus(String),
    /// Multiplicative inverse of zero requested.
    InverseOfZero,
    /// Value-table length does not match the field size.
    TableSizeMismatch { expected: usize, got: usize },
    /// Text that could not be parsed (polynomials, expressions, artifacts).
    Parse(String),
    /// A structurally invalid or internally inconsistent verification artifact.
    Artifact(String),
    /// An elimination produced the zero polynomial, which signals a
    /// transcription mistake rather than a meaningful result.
    DegenerateElimination(String),
    /// Interpolated resultant coefficients left the base field.
    InterpolationOutsideBaseField { point_count: usize },
    /// A Sylvester matrix too large for the direct determinant expansion.
    MatrixTooLarge { order: usize, max: usize },
    /// Scan request beyond the configured exhaustive-search cap.
    ScanCapExceeded { n: u32, cap: u32 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by the zero polynomial"),
            Error::ZeroPolynomial(what) => write!(f, "{what} requires a nonzero polynomial"),
            Error::ConstantPolynomial(what) => {
                write!(f, "{what} requires a non-constant polynomial")
            }
            Error::DegreeOutOfRange { n, max } => {
                write!(f, "extension degree {n} outside supported range 1..={max}")
            }
            Error::BadModulus(msg) => write!(f, "bad field modulus: {msg}"),
            Error::InverseOfZero => write!(f, "multiplicative inverse of zero"),
            Error::TableSizeMismatch { expected, got } => {
                write!(f, "value table has {got} entries, field needs {expected}")
            }
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::Artifact(msg) => write!(f, "artifact error: {msg}"),
            Error::DegenerateElimination(msg) => {
                write!(f, "degenerate elimination (identically zero resultant): {msg}")
            }
            Error::InterpolationOutsideBaseField { point_count } => write!(
                f,
                "interpolation over {point_count} points produced coefficients outside GF(2)"
            ),
            Error::MatrixTooLarge { order, max } => {
                write!(f, "Sylvester matrix order {order} exceeds direct-expansion cap {max}")
            }
            Error::ScanCapExceeded { n, cap } => {
                write!(f, "exhaustive scan for n={n} exceeds configured cap {cap}")
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

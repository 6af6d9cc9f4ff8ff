use thiserror::Error;

use crate::gf2m::FieldElement;

/// Errors raised by field construction, the algebra kernels, the reductions and the oracles.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field degree m = {0} is outside 1..=128")]
    DegreeOutOfRange(u32),

    #[error("factoring 2^{m} - 1 exceeded the effort budget (unfactored cofactor {cofactor})")]
    FactoringBudget { m: u32, cofactor: u128 },

    #[error("modulus {modulus} is not a primitive irreducible polynomial of degree {m}")]
    NotPrimitive { m: u32, modulus: String },

    #[error("element {element} does not belong to GF(2^{m})")]
    ElementOutOfRange { element: FieldElement, m: u32 },

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("duplicate abscissa {0} among interpolation points")]
    DuplicateAbscissa(FieldElement),

    #[error("evaluation point {0} occurs more than once")]
    DuplicateEvaluationPoint(FieldElement),

    #[error("invalid code parameters: need 0 < k < n <= q, got k = {k}, n = {n}, q = 2^{m}")]
    InvalidCodeParameters { k: usize, n: usize, m: u32 },

    #[error("message polynomial has degree {degree}, must be below k = {k}")]
    MessageTooLong { degree: usize, k: usize },

    #[error(
        "0 lies in the evaluation set; the scaled-generator identity check requires 0 outside D"
    )]
    ZeroInEvaluationSet,

    #[error("triple ({a}, {b}, {c}) is out of range for t = {t}")]
    TripleOutOfRange {
        a: usize,
        b: usize,
        c: usize,
        t: usize,
    },

    #[error("triple ({a}, {b}, {c}) occurs more than once")]
    DuplicateTriple { a: usize, b: usize, c: usize },

    #[error("t must be positive")]
    ZeroT,

    #[error("instance too small: |T| = {size} must exceed t + 1 = {} (trivially solvable; use the exact matching solver)", t + 1)]
    InstanceTooSmall { t: usize, size: usize },

    #[error("field degree m = {m} does not match the {required} required for t = {t}")]
    FieldMismatch { m: u32, required: u32, t: usize },

    #[error("t = {t} needs a field of degree {m}, above the supported maximum of 128")]
    TTooLarge { t: usize, m: u64 },

    #[error("index {index} is outside 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("characteristic vector has length {got}, expected {expected}")]
    ChiLength { got: usize, expected: usize },

    #[error("radius {radius} too large for agreement method: n - radius = {} < k = {k}", n.saturating_sub(*radius))]
    RadiusTooLarge { radius: usize, n: usize, k: usize },

    #[error("codeword enumeration needs q^k <= 2^24 (q = 2^{m}, k = {k})")]
    EnumerationTooLarge { m: u32, k: usize },

    #[error("{what} exceeds the exhaustive enumeration budget")]
    BudgetExceeded { what: String },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

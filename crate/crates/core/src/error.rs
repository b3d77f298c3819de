use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse classification used by front ends to pick an exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed input, out-of-range parameters, unparsable files.
    Usage,
    /// A well-formed input that fails a genericity or non-degeneracy hypothesis.
    Mathematical,
    /// An identity that must hold for every valid input did not. Always a bug.
    Internal,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a supported prime modulus (need a prime 2 < p < 2^31)")]
    NotPrime(u64),
    #[error("operands live over different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("input columns are linearly dependent")]
    DependentInput,
    #[error("alphabet mismatch: {0} vs {1}")]
    AlphabetMismatch(String, String),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("Pfaffian requested for a matrix of odd order {0}")]
    OddOrder(usize),
    #[error("sub-maximal Pfaffians need an odd order, got {0}")]
    EvenOrder(usize),
    #[error("matrix is not skew-symmetric at ({0}, {1})")]
    NotSkew(usize, usize),
    #[error("entry ({0}, {1}) is not a linear form")]
    NotLinear(usize, usize),
    #[error("catalecticant needs an even degree, got {0}")]
    OddDegree(usize),
    #[error("joint annihilator in degree {degree} has dimension {dim}, expected 1")]
    NotGorensteinSocle { degree: usize, dim: usize },
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("form is degenerate (catalecticant rank {rank} < {full})")]
    DegenerateForm { rank: usize, full: usize },
    #[error("linear syzygy space has dimension {dim}, expected {expected}")]
    SyzygyDefect { dim: usize, expected: usize },
    #[error("no invertible constant factor makes the syzygy matrix skew")]
    SkewNormalizationFailure,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("characteristic {p} too small: need p > {need}")]
    FieldTooSmall { p: u64, need: usize },
    #[error("parameters out of range: need 2 < m < n-1, got m={m}, n={n}")]
    Range { m: usize, n: usize },
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("the point is zero")]
    ZeroPoint,
    #[error("no F_{p} points with 2-dimensional kernel found on the Pfaffian curve; retry with another prime")]
    NoPointsFound { p: u64 },
    #[error("unsupported request: {0}")]
    Unsupported(String),
    #[error("cohomology chase not forced: {0}")]
    AmbiguousChase(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            NotPrime(_)
            | FieldMismatch(..)
            | Parse(_)
            | Shape(_)
            | AlphabetMismatch(..)
            | DegreeMismatch(..)
            | OddOrder(_)
            | EvenOrder(_)
            | NotSkew(..)
            | NotLinear(..)
            | OddDegree(_)
            | FieldTooSmall { .. }
            | Range { .. }
            | OutOfRange(_)
            | ZeroPoint
            | Unsupported(_) => ErrorKind::Usage,
            DivisionByZero
            | DependentInput
            | NotGorensteinSocle { .. }
            | DegenerateInput(_)
            | DegenerateForm { .. }
            | SyzygyDefect { .. }
            | SingularMatrix
            | NoPointsFound { .. } => ErrorKind::Mathematical,
            SkewNormalizationFailure | AmbiguousChase(_) | Invariant(_) => ErrorKind::Internal,
        }
    }

    /// Stable identifier used in machine-readable reports.
    pub fn code(&self) -> &'static str {
        use Error::*;
        match self {
            NotPrime(_) => "NotPrime",
            FieldMismatch(..) => "FieldMismatch",
            DivisionByZero => "DivisionByZero",
            Parse(_) => "ParseError",
            Shape(_) => "ShapeMismatch",
            DependentInput => "DependentInput",
            AlphabetMismatch(..) => "AlphabetMismatch",
            DegreeMismatch(..) => "DegreeMismatch",
            OddOrder(_) => "OddOrder",
            EvenOrder(_) => "EvenOrder",
            NotSkew(..) => "NotSkew",
            NotLinear(..) => "NotLinear",
            OddDegree(_) => "OddDegree",
            NotGorensteinSocle { .. } => "NotGorensteinSocle",
            DegenerateInput(_) => "DegenerateInput",
            DegenerateForm { .. } => "DegenerateForm",
            SyzygyDefect { .. } => "SyzygyDefect",
            SkewNormalizationFailure => "SkewNormalizationFailure",
            SingularMatrix => "SingularMatrix",
            FieldTooSmall { .. } => "FieldTooSmall",
            Range { .. } | OutOfRange(_) => "RangeError",
            ZeroPoint => "ZeroPoint",
            NoPointsFound { .. } => "NoPointsFound",
            Unsupported(_) => "Unsupported",
            AmbiguousChase(_) => "AmbiguousChase",
            Invariant(_) => "InvariantViolation",
        }
    }
}

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero polynomial")]
    DivisionByZeroPolynomial,
    #[error("logarithmic term: nonzero z^-1 coefficient cannot be integrated")]
    LogarithmicTerm,
    #[error("pole at specialization point")]
    PoleAtSpecialization,
    #[error("unsupported sheet count: m = {0} (only m = 2 is supported)")]
    UnsupportedSheetCount(u32),
    #[error("sigma undefined for this curve")]
    SigmaUndefined,
    #[error("unsupported curve: {0}")]
    UnsupportedCurve(String),
    #[error("degenerate parameter: c = {0} forces a = ±b")]
    DegenerateParameter(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("value does not fit the scalar type")]
    ScalarOverflow,
    #[error("not semisimple: invariant form is degenerate")]
    NotSemisimple,
    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    JacobiViolation(usize, usize, usize),
    #[error("antisymmetry fails on basis pair ({0}, {1})")]
    AntisymmetryViolation(usize, usize),
    #[error("invalid invariant form: {0}")]
    InvalidForm(String),
    #[error("invalid structure constants: {0}")]
    InvalidStructureConstants(String),
    #[error("unknown polynomial family {0} (expected -1, -2, -3 or -4)")]
    UnknownFamily(i64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

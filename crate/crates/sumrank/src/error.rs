use thiserror::Error;

/// Errors raised by the library.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p = {0} is not prime")]
    NonPrimeP(u64),
    #[error("ell = {ell} does not divide q - 1 = {q_minus_one}")]
    EllNotDividingQMinus1 { ell: u64, q_minus_one: u128 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("field of order {p}^{degree} is too large for this implementation")]
    FieldTooLarge { p: u64, degree: u32 },
    #[error("subfield degree {sub} does not divide {big}")]
    BadDegree { sub: u32, big: u32 },
    #[error("division by zero")]
    DivByZero,
    #[error("beta must be nonzero")]
    ZeroBeta,
    #[error("d = {d} does not divide s = {s}")]
    BadSubfieldDegree { d: u32, s: u32 },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("p divides ell, x^ell - 1 has repeated roots")]
    PDividesEll,
    #[error("cyclotomic factors are not pairwise coprime")]
    NonCoprimeFactors,
    #[error("expected {expected} components, found {found}")]
    ComponentCountMismatch { expected: usize, found: usize },
    #[error("element is not an ell-th root of unity")]
    NotRootOfUnity,
    #[error("vector length {len} is not ell * N = {ell} * {n_blocks}")]
    BadPartition { len: usize, ell: usize, n_blocks: usize },
    #[error("enumeration of {needed} codewords exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("component {0} is not monic")]
    NotMonic(usize),
    #[error("component {0} does not right-divide z^N - 1")]
    NotDivisor(usize),
    #[error("operation requires N = m (N = {n_blocks}, m = {m})")]
    RequiresNEqualsM { n_blocks: usize, m: u32 },
    #[error("z^N - 1 is not central: sigma^N is not the identity on the coefficients ({0})")]
    RingNotWellDefined(String),
    #[error("evaluation points {0} and {1} are conjugate")]
    ConjugateEvaluationPoints(usize, usize),
    #[error("basis of block {0} is not linearly independent over F_q")]
    DependentBasis(usize),
    #[error("zero entry in evaluation points")]
    ZeroEntry,
    #[error("assumption violated: {0}")]
    AssumptionViolated(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("cross-check mismatch in {what}: {left} != {right}")]
    CrossCheckMismatch { what: String, left: i64, right: i64 },
    #[error("no codeword within decoding radius {radius}")]
    RadiusExceeded { radius: usize },
    #[error("target weight {target} exceeds the maximum {max}")]
    WeightInfeasible { target: usize, max: usize },
    #[error("element does not lie in the required subfield: {0}")]
    NotInSubfield(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

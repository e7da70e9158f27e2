use thiserror::Error;

/// Error type shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("division by zero")]
    DivisionByZero,
    #[error("evaluation at the origin, but the polynomial has negative exponents")]
    EvalAtOrigin,
    #[error("annulus parameter r = {r} must be > 1")]
    InvalidAnnulus { r: String },
    #[error("sub-annulus parameter t = {t} must satisfy 1/r < t < r")]
    InvalidSubAnnulus { t: String },
    #[error("root of modulus {modulus} is within tolerance of the circle |z| = {boundary}; cannot certify membership")]
    BoundaryAmbiguous { modulus: f64, boundary: f64 },
    #[error("empty index subset")]
    EmptySubset,
    #[error("index {index} out of range (len {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid index set: {detail}")]
    InvalidIndexSet { detail: String },
    #[error("subset enumeration would need {combinations} subsets, above the cap {cap}")]
    SubsetCapExceeded { combinations: u128, cap: u128 },
    #[error("hyperplanes are not in {n}-subgeneral position for k = {k}")]
    NotSubgeneral { n: usize, k: usize },
    #[error("need q > 2N - k + 1 hyperplanes: q = {q}, 2N - k + 1 = {bound}")]
    NochkaHypothesis { q: usize, bound: usize },
    #[error("linear program infeasible: {detail}")]
    Infeasible { detail: String },
    #[error("linear program unbounded")]
    Unbounded,
    #[error("hyperplane {label:?} has all-zero coefficients")]
    HyperplaneZero { label: String },
    #[error("hyperplane {label:?} annihilates the curve (pairing vanishes identically)")]
    HyperplaneContainsCurve { label: String },
    #[error("curve components are all zero")]
    AllZero,
    #[error("curve representation is not reduced: components share the nonconstant factor {factor}")]
    NotReduced { factor: String },
    #[error("curve is linearly degenerate")]
    Degenerate,
    #[error("map is isotropy-violating: sum of squared components is {sum}")]
    IsotropyViolated { sum: String },
    #[error("nondegeneracy rank is {k}; the inequality machinery needs k >= 1")]
    RankTooSmall { k: usize },
    #[error("hyperplane set spans only dimension {span}, need {need}")]
    SpanDeficient { span: usize, need: usize },
    #[error("profile entry {index} has multiplicity {m} <= k = {k}; a kept profile is required here")]
    ProfileNotKept { index: usize, m: u32, k: usize },
    #[error("contradiction hypothesis unsatisfiable (A = {a} <= 0): the inequality already holds")]
    TheoremAlreadySatisfied { a: String },
    #[error("empty epsilon window")]
    EmptyWindow,
    #[error("internal assertion failed: {what}")]
    InternalAssertion { what: String },
    #[error("evaluation at a singular point: {at}")]
    SingularEvaluation { at: String },
    #[error("region too close to the singular set: distance {distance}, required {required}")]
    MarginViolation { distance: f64, required: f64 },
    #[error("probe path touches the singular set")]
    PathTouchesSingular,
    #[error("invalid region: {detail}")]
    InvalidRegion { detail: String },
    #[error("invalid input: {detail}")]
    InvalidInput { detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;

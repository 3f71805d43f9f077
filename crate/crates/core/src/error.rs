use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    // series arithmetic
    #[error("constant term {0} is within eps_div of zero")]
    DivisionByNearZeroConstantTerm(f64),
    #[error("constant term ({re}, {im}) lies on the principal branch cut")]
    ConstantTermOnBranchCut { re: f64, im: f64 },
    #[error("inner series has nonzero constant term (|c0| = {0})")]
    InnerNotZeroAtOrigin(f64),
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("series must have at least one coefficient")]
    EmptySeries,

    // function zoo
    #[error("parameter order violated: need {0}")]
    ParameterOrderViolated(String),
    #[error("B must be nonzero")]
    ZeroB,
    #[error("lambda must be nonzero")]
    ZeroLambda,
    #[error("|C| = {0} is not below pi")]
    COutOfRange(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    // disk analysis
    #[error("point within {distance:e} of the curve")]
    PointTooCloseToCurve { distance: f64 },
    #[error("argument increment {0} too large; curve under-sampled")]
    CurveUnderSampled(f64),
    #[error("map does not vanish at the origin (|Q(0)| = {0})")]
    QNotVanishingAtOrigin(f64),
    #[error("derivative vanishes at the origin")]
    DegenerateDerivative,
    #[error("invalid probe configuration: {0}")]
    InvalidProbe(String),

    // operators
    #[error("operator base ({re}, {im}) lies on the branch cut")]
    BaseOnBranchCut { re: f64, im: f64 },
    #[error("operator base vanishes")]
    VanishingBase,
    #[error("f' vanishes at the evaluation point")]
    DerivativeVanishes,
    #[error("q vanishes at the evaluation point")]
    QVanishes,
    #[error("vanishing denominator in class functional")]
    VanishingDenominator,

    // lemma verifiers
    #[error("degenerate auxiliary function: {0}")]
    QNotAdmissible(String),

    // cli
    #[error("parse error at line {line}, column {col}: expected {expected}")]
    Parse { line: usize, col: usize, expected: String },
    #[error("usage: {0}")]
    Usage(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

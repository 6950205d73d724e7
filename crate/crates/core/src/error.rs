use thiserror::Error;

/// Errors produced by gate construction, sorter assembly and device design.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("matrix is not square: {rows} rows, row {row} has {len} entries")]
    NotSquare { rows: usize, row: usize, len: usize },
    #[error("matrix is not unitary: max |U^dag U - I| = {deviation:e} exceeds {tolerance:e}")]
    NotUnitary { deviation: f64, tolerance: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension {0} is not a perfect square")]
    NotPerfectSquare(usize),
    #[error("state is not normalized: norm^2 = {0}")]
    NotNormalized(f64),
    #[error("invalid OAM basis map: {0}")]
    InvalidOamMap(String),
    #[error("invalid wavelengths: {0}")]
    InvalidWavelengths(String),
    #[error("search bound must be positive")]
    ZeroSearchBound,
    #[error("expected a {expected} sorter specification")]
    ArchitectureMismatch { expected: &'static str },
    #[error("a mirror reflector is only defined for the OAM phase module")]
    MirrorRequiresOam,
    #[error("expected {expected} per-arm perturbations, found {found}")]
    PerturbationLength { expected: usize, found: usize },
    #[error("phase table must be {d}x{d}")]
    PhaseTableShape { d: usize },
    #[error("sigma must be a non-negative finite number, got {0}")]
    InvalidSigma(f64),
    #[error("trial count must be positive")]
    ZeroTrials,
    #[error("mode index {mode} out of range for {d} modes")]
    ModeOutOfRange { mode: usize, d: usize },
    #[error("beamsplitter modes must differ (got {0} twice)")]
    SameModes(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

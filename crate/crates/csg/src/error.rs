//! Crate-wide error type.
//!
//! Variants are grouped by the stage that raises them; [`Error::kind`] maps
//! each variant onto the coarse classes the CLI turns into exit codes.

use thiserror::Error;

/// Coarse error class, used by the CLI for exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Caller passed an argument outside its documented domain.
    Usage,
    /// Input files or data violate a format or dataset contract.
    Data,
    /// A numerical routine failed to meet its tolerance.
    Numerical,
}

impl ErrorKind {
    /// Process exit code the CLI uses for this class.
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Usage => 1,
            ErrorKind::Data => 2,
            ErrorKind::Numerical => 3,
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    // --- parameter domain ---
    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    // --- file ingestion ---
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed CSV on line {line}: {reason}")]
    MalformedCsv { line: u64, reason: String },
    #[error("non-finite value on line {line}")]
    NonFiniteCsv { line: u64 },
    #[error("empty dataset: {0}")]
    EmptyDataset(String),
    #[error("dataset has {found} class(es); at least 2 are required")]
    TooFewClasses { found: usize },
    #[error("bad magic bytes: expected \"CSGE\"")]
    BadMagic,
    #[error("unsupported dataset format version {found} (supported: {supported})")]
    UnsupportedVersion { found: u32, supported: u32 },
    #[error("truncated file while reading {context}")]
    Truncated { context: String },
    #[error("malformed CSGE payload: {0}")]
    MalformedBinary(String),

    // --- dataset construction ---
    #[error("label {label} out of range for {classes} classes")]
    LabelOutOfRange { label: usize, classes: usize },
    #[error("class {class} has no members")]
    EmptyClass { class: usize },
    #[error("non-finite coordinate at row {row}, column {col}")]
    NonFiniteCoordinate { row: usize, col: usize },
    #[error("points/labels shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("duplicate class name {0:?}")]
    DuplicateClassName(String),

    // --- density / similarity ---
    #[error("class {class} has an empty neighbor pool after exclusion")]
    EmptyClassPool { class: usize },
    #[error("degenerate densities: all {classes} class likelihoods underflowed to zero")]
    DegenerateDensities { classes: usize },
    #[error("similarity matrix has a negative entry at ({row}, {col})")]
    NegativeSimilarity { row: usize, col: usize },

    // --- spectral ---
    #[error("adjacency matrix is asymmetric: max |W - W'| = {max_dev:e}")]
    AsymmetricMatrix { max_dev: f64 },
    #[error(
        "eigensolver did not converge after {sweeps} sweeps (off-diagonal residual {residual:e})"
    )]
    EigenNoConvergence { sweeps: usize, residual: f64 },
    #[error("eigenvalue {value:e} below the negativity tolerance; input is not a valid Laplacian")]
    NegativeEigenvalue { value: f64 },

    // --- baselines ---
    #[error("measure {measure} requires every class to have at least {min} points")]
    ClassTooSmall { measure: &'static str, min: usize },
    #[error("correlation undefined: {0} vector is constant")]
    ConstantVector(&'static str),

    // --- reports ---
    #[error("report format version {found} is newer than supported version {supported}")]
    ReportVersionTooNew { found: u32, supported: u32 },
    #[error("inconsistent report: {0}")]
    InconsistentReport(String),
    #[error("malformed report JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            InvalidParam(_) => ErrorKind::Usage,
            Io { .. }
            | MalformedCsv { .. }
            | NonFiniteCsv { .. }
            | EmptyDataset(_)
            | TooFewClasses { .. }
            | BadMagic
            | UnsupportedVersion { .. }
            | Truncated { .. }
            | MalformedBinary(_)
            | LabelOutOfRange { .. }
            | EmptyClass { .. }
            | NonFiniteCoordinate { .. }
            | ShapeMismatch(_)
            | DuplicateClassName(_)
            | ClassTooSmall { .. }
            | ConstantVector(_)
            | ReportVersionTooNew { .. }
            | InconsistentReport(_)
            | Json(_) => ErrorKind::Data,
            EmptyClassPool { .. }
            | DegenerateDensities { .. }
            | NegativeSimilarity { .. }
            | AsymmetricMatrix { .. }
            | EigenNoConvergence { .. }
            | NegativeEigenvalue { .. } => ErrorKind::Numerical,
        }
    }

    pub(crate) fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

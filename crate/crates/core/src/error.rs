use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the decision procedure can report.
///
/// Variants split into two classes: unsupported or malformed input (the
/// caller handed us something outside the supported curve class) and internal
/// invariant failures (an upstream stage produced data a later stage cannot
/// interpret). [`Error::is_internal`] tells them apart.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("non-ordinary singularity at {point} (multiplicity {multiplicity})")]
    NonOrdinarySingularity { point: String, multiplicity: u32 },

    #[error("singular locus contains {residual_degree} point(s) without rational coordinates")]
    IrrationalSingularLocus { residual_degree: usize },

    #[error("singular point {point} is not declared")]
    UndeclaredSingularity { point: String },

    #[error("genus {genus} is below 3")]
    GenusTooSmall { genus: i64 },

    #[error("curve is suspected to be reducible or non-reduced")]
    ReducibleSuspected,

    #[error("generation failed after {attempts} attempts")]
    GenerationFailed { attempts: usize },

    #[error("resultant is degenerate")]
    DegenerateResultant,

    #[error("adjoint space has dimension {found}, expected {expected}")]
    AdjointDimensionMismatch { expected: usize, found: usize },

    #[error("unexpected dimension of {what}: found {found}, expected {expected}")]
    UnexpectedDimension {
        what: String,
        found: usize,
        expected: String,
    },

    #[error("curve of genus {genus} is hyperelliptic")]
    HyperellipticInput { genus: usize },

    #[error("unsupported curve: {0}")]
    CurveUnsupported(String),

    #[error("Levi lifting failed")]
    LiftingFailed,

    #[error("not an sl2: {0}")]
    NotSl2(String),

    #[error("sl2 does not split over a quadratic extension")]
    SplitFailedOverExtension,

    #[error("weight decomposition failed: {0}")]
    DecompositionFailed(String),

    #[error("expected at most two weight chains, found {chains}")]
    ChainCountUnexpected { chains: usize },

    #[error("every scroll column is degenerate on the curve")]
    AllColumnsDegenerate,

    #[error("fiber counts disagree across draws: {draws:?}")]
    DegenerateFiber { draws: Vec<usize> },

    #[error("point {point} is not on the curve")]
    PointNotOnCurve { point: String },

    #[error("no base point provided")]
    NoPointProvided,

    #[error("map verification failed: fiber degree {degree}, expected 3")]
    MapVerificationFailed { degree: usize },

    #[error("internal error: {0}")]
    Internal(String),

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        source: Box<Error>,
    },
}

impl Error {
    /// Wraps the error with the name of the pipeline stage it came from.
    pub fn at(self, stage: &'static str) -> Error {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    /// The innermost error, with stage labels stripped.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            e => e,
        }
    }

    pub fn is_internal(&self) -> bool {
        matches!(
            self.root(),
            Error::LiftingFailed
                | Error::NotSl2(_)
                | Error::SplitFailedOverExtension
                | Error::DecompositionFailed(_)
                | Error::ChainCountUnexpected { .. }
                | Error::AllColumnsDegenerate
                | Error::MapVerificationFailed { .. }
                | Error::Internal(_)
        )
    }
}

pub(crate) trait StageExt<T> {
    fn stage(self, stage: &'static str) -> Result<T>;
}

impl<T> StageExt<T> for Result<T> {
    fn stage(self, stage: &'static str) -> Result<T> {
        self.map_err(|e| e.at(stage))
    }
}

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("no unique tangent at angle {theta} (corner point)")]
    CornerPoint { theta: f64 },

    #[error("degenerate lattice basis (|det| = {det:e})")]
    DegenerateLattice { det: f64 },

    #[error("enumeration would produce about {predicted} points, above the cap of {cap}")]
    EnumerationTooLarge { predicted: u128, cap: usize },

    #[error("no sign change for the companion equation at s = {s}")]
    BracketFailure { s: f64 },

    #[error("domain is not irreducible: {0}")]
    NotIrreducible(String),

    #[error("operation is undefined for parallelograms")]
    Parallelogram,

    #[error("invalid gap list: {0}")]
    InvalidGaps(String),

    #[error("cantor depth {0} is above the supported maximum of 30")]
    DepthTooLarge(u32),

    #[error("tangent lines at gap ({a}, {b}) are nearly parallel")]
    TangentIntersectionUnstable { a: f64, b: f64 },

    #[error("constructed domain failed the convexity check: {0}")]
    NonConvexResult(String),

    #[error("box size {box_size:e} is below the set resolution {resolution:e}")]
    ResolutionExceeded { box_size: f64, resolution: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Short name of the error case, used by the command-line front end.
    pub fn kind_name(&self) -> &'static str {
        match self {
            Error::InvalidDomain(_) => "InvalidDomain",
            Error::CornerPoint { .. } => "CornerPoint",
            Error::DegenerateLattice { .. } => "DegenerateLattice",
            Error::EnumerationTooLarge { .. } => "EnumerationTooLarge",
            Error::BracketFailure { .. } => "BracketFailure",
            Error::NotIrreducible(_) => "NotIrreducible",
            Error::Parallelogram => "Parallelogram",
            Error::InvalidGaps(_) => "InvalidGaps",
            Error::DepthTooLarge(_) => "DepthTooLarge",
            Error::TangentIntersectionUnstable { .. } => "TangentIntersectionUnstable",
            Error::NonConvexResult(_) => "NonConvexResult",
            Error::ResolutionExceeded { .. } => "ResolutionExceeded",
            Error::Parse(_) => "Parse",
            Error::Io(_) => "Io",
        }
    }
}

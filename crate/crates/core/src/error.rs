use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("edge {edge} appears {count} times (expected exactly 2)")]
    EdgePairing { edge: u32, count: usize },

    #[error("inconsistent orientation at crossing {crossing}: {message}")]
    Orientation { crossing: usize, message: String },

    #[error("diagram has {faces} faces but {crossings} crossings require {}", crossings + 2)]
    Euler { faces: usize, crossings: usize },

    #[error("diagram is not connected; its regions are not determined by the crossing data")]
    Disconnected,

    #[error("empty diagram: use \"O\" for the crossingless circle")]
    Empty,

    #[error("crossing index {index} out of range for {count} crossings")]
    CrossingOutOfRange { index: usize, count: usize },

    #[error("face index {index} out of range for {count} faces")]
    FaceOutOfRange { index: usize, count: usize },

    #[error("expected a knot diagram, found {components} components")]
    NotAKnot { components: usize },

    #[error("region set was built against a different face map")]
    ForeignRegionSet,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{what}: {crossings} crossings exceeds the cap of {cap}")]
    Cap {
        what: &'static str,
        crossings: usize,
        cap: usize,
    },

    #[error("no region set realizes the requested crossing changes")]
    NoSolution,

    #[error("checkerboard coloring inconsistent: {0}")]
    Coloring(String),

    #[error("constructive region set for crossing {crossing} failed verification: {message}")]
    Verification { crossing: usize, message: String },

    #[error("corpus line {line}: {message}")]
    Corpus { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable prefix used by the command-line front end.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Syntax { .. }
            | Error::EdgePairing { .. }
            | Error::Orientation { .. }
            | Error::Empty
            | Error::Corpus { .. } => "E_PARSE",
            Error::Euler { .. } | Error::Disconnected => "E_EULER",
            Error::NoSolution => "E_NOSOL",
            Error::Cap { .. } => "E_CAP",
            Error::Io(_) => "E_IO",
            _ => "E_DOMAIN",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

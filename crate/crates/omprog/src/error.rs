use thiserror::Error;

/// Errors produced by matroid, extension, program and lemma operations.
///
/// Validation findings (axiom violations, hypothesis misses, lemma
/// counterexamples) are *not* errors; they are returned as report data.
/// Errors signal unusable inputs or broken preconditions.
#[derive(Debug, Error)]
pub enum OmError {
    #[error("ground set size mismatch: {left} vs {right}")]
    GroundMismatch { left: usize, right: usize },
    #[error("element {element} out of range for ground set of size {n}")]
    UnknownElement { element: usize, n: usize },
    #[error("ground set of size {n} exceeds the supported maximum of 32")]
    GroundTooLarge { n: usize },
    #[error("cannot remove the entire ground set")]
    EmptyMinor,
    #[error("sign vector {0} is not a cocircuit of this matroid")]
    NotACocircuit(String),
    #[error("covector {0} is not an edge (its zero set is not a coline flat)")]
    NotAnEdge(String),
    #[error("cocircuits {x} and {y} are not comodular")]
    NotComodular { x: String, y: String },
    #[error("element {element} is not in the separation set of the given pair")]
    NotInSeparation { element: usize },
    #[error("cocircuit elimination matched {found} candidates instead of exactly one")]
    EliminationAmbiguous { found: usize },
    #[error("invalid program: {0}")]
    InvalidProgram(String),
    #[error("invalid extension description: {0}")]
    InvalidLexSpec(String),
    #[error("sign assignment is not a localization: {0}")]
    NotALocalization(String),
    #[error("no extension provenance recorded for {0}")]
    MissingProvenance(String),
    #[error("invalid modular triple: {0}")]
    InvalidTriple(String),
    #[error("no crossing point: {0}")]
    NoCrossingPoint(String),
    #[error("path is not usable: {0}")]
    InvalidPath(String),
    #[error("path normalization failed: {0}")]
    NormalizeFailed(String),
    #[error("guaranteed identity failed on valid input: {0}")]
    LemmaViolated(String),
    #[error("unusable vector configuration: {0}")]
    InvalidVectors(String),
    #[error("invalid chirotope: {0}")]
    InvalidChirotope(String),
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, OmError>;

use std::fmt;

/// Errors surfaced by graph construction, walk builders and spectral routines.
#[derive(Debug, Clone, PartialEq)]
pub enum WalkError {
    /// Family parameters do not describe a valid graph.
    InvalidFamily(String),
    /// The constructed graph violates a structural invariant.
    InvalidGraph(String),
    /// A numeric parameter is out of its admissible range.
    InvalidParameter(String),
    /// Vector or matrix dimensions do not match.
    DimensionMismatch { expected: usize, found: usize },
    /// Brute-force decision procedure cannot run at this size.
    UndecidableAtDeskScale { n_vertices: usize, limit: usize },
    /// The eigensolver did not converge within its sweep budget.
    EigensolverNoConvergence { sweeps: usize },
    /// A linear system was singular (e.g. marked vertex unreachable).
    SingularSystem(String),
    /// A spectral quantity is undefined for the given walk.
    DegenerateSpectrum(String),
    /// Szegedy support contains a pair outside arcs and the diagonal.
    UnsupportedPair { from: usize, to: usize },
    /// Input/output failure when reading an edge list or writing a report.
    Io(String),
}

impl fmt::Display for WalkError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WalkError::InvalidFamily(msg) => write!(f, "invalid graph family: {msg}"),
            WalkError::InvalidGraph(msg) => write!(f, "invalid graph: {msg}"),
            WalkError::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            WalkError::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            WalkError::UndecidableAtDeskScale { n_vertices, limit } => write!(
                f,
                "local arc-transitivity undecidable at desk scale: {n_vertices} vertices \
                 exceeds brute-force limit {limit} and no certificate is attached"
            ),
            WalkError::EigensolverNoConvergence { sweeps } => {
                write!(f, "eigensolver failed to converge within {sweeps} sweeps")
            }
            WalkError::SingularSystem(msg) => write!(f, "singular linear system: {msg}"),
            WalkError::DegenerateSpectrum(msg) => write!(f, "degenerate spectrum: {msg}"),
            WalkError::UnsupportedPair { from, to } => {
                write!(f, "support pair ({from}, {to}) outside arcs and diagonal")
            }
            WalkError::Io(msg) => write!(f, "io error: {msg}"),
        }
    }
}

impl std::error::Error for WalkError {}

impl From<std::io::Error> for WalkError {
    fn from(e: std::io::Error) -> Self {
        WalkError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, WalkError>;

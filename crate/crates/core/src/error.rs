use thiserror::Error;

use crate::cube_model::GridCube;

/// Reasons a cube sequence is not a simple cube-curve.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("curve has {0} cubes, at least 4 are required")]
    TooShort(usize),
    #[error("cube {cube} appears at positions {first} and {second}")]
    DuplicateCube {
        cube: GridCube,
        first: usize,
        second: usize,
    },
    #[error("cube {cube} at position {index} is face-adjacent to non-neighbor curve cube at position {other}")]
    ChordAdjacency { cube: GridCube, index: usize, other: usize },
    #[error("cubes at positions {index} and {next} are not face-adjacent")]
    NotAdjacent { index: usize, next: usize },
    #[error("curve is not closed: last cube {last} is not face-adjacent to first cube {first}")]
    NotClosed { first: GridCube, last: GridCube },
}

/// Errors from reading or writing the text file formats.
#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl ParseError {
    pub(crate) fn syntax(line: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax {
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("triangle is degenerate (vertices collinear within tolerance)")]
    DegenerateTriangle,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error("curve has no critical edges; no rubberband path can be initialized")]
    NoCriticalEdges,
    #[error("epsilon must be > 0 (got {0})")]
    InvalidEpsilon(f64),
    #[error("max_loops must be >= 1")]
    InvalidMaxLoops,
    #[error("path vertex {vertex} references critical edge {edge}, curve has {count}")]
    PathNotOnCurve { vertex: usize, edge: usize, count: usize },
    #[error("path has {0} vertices, at least 3 are required")]
    PathTooShort(usize),
    #[error("oracle: {0}")]
    Oracle(#[from] OracleError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph needs at least 2 critical edges, curve has {0}")]
    TooFewCriticalEdges(usize),
    #[error("samples per edge must be >= 1")]
    InvalidSampleCount,
    #[error("no arc joins critical edges {from} and {to}; no cycle exists")]
    Disconnected { from: usize, to: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("target cube count must be >= 8 (got {0})")]
    TargetTooSmall(usize),
    #[error("no simple curve found after {attempts} attempts (seed {seed})")]
    GenerationFailed { seed: u64, attempts: usize },
}

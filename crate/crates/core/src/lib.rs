//! Approximate Euclidean shortest paths inside simple cube-curves.
//!
//! A cube-curve is a closed chain of face-adjacent unit grid cubes; its tube is
//! the union of those cubes. [`rubberband`] shortens a closed path inside the
//! tube until a full pass gains less than `epsilon`; [`oracle`] gives a
//! discretized reference answer.
//!
//! ```
//! use cubepath::cube_model::ring8;
//! use cubepath::rubberband::{solve, SolverConfig, Variant};
//!
//! let curve = ring8();
//! let cfg = SolverConfig::new(Variant::EdgeBased, 1e-10).unwrap();
//! let (path, report) = solve(&curve, &cfg).unwrap();
//! assert!((path.length() - 4.0).abs() < 1e-9);
//! assert!(report.loops <= 50);
//! ```

// `!(a < b)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bench;
pub mod cube_model;
pub mod curve_gen;
pub mod error;
pub mod geometry;
pub mod oracle;
pub mod rubberband;
pub mod tube;

pub use cube_model::{CriticalEdge, CubeCurve, GridCube};
pub use error::{CurveError, GenError, OracleError, ParseError, SolverError};
pub use geometry::{Point3, Segment3, Tolerance};
pub use rubberband::{Polyline, RunReport, SolverConfig, Variant};

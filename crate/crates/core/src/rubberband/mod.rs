//! Rubberband algorithms: iterative local shortening of a closed path whose
//! vertices live on critical edges (or critical faces), stopped once a full
//! loop shortens the path by less than `epsilon`.
//!
//! Three variants share the loop driver:
//!
//! * [`Variant::Original`]: vertex deletion, convex-arc replacement from
//!   triangle/edge intersections, and unconstrained on-edge optimization.
//! * [`Variant::EdgeBased`]: the same options, with every new segment checked
//!   against the tube. Failing arcs are repaired by inserting vertices on
//!   blocking critical edges; on-edge moves stop at the last tube-feasible
//!   position.
//! * [`Variant::FaceBased`]: one vertex per critical face, each moved to the
//!   exact optimum over its unit square.

mod edge;
mod face;
mod format;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::cube_model::CubeCurve;
use crate::error::SolverError;
use crate::geometry::{Point3, Segment3, Tolerance};

pub use face::{critical_face, critical_faces};
pub use format::{parse_path, write_path, PathFile};

/// Where a path vertex lives.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Pin {
    /// On critical edge `index` at parameter `t` in `[0, 1]`.
    Edge {
        index: usize,
        t: f64,
    },
    Free,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PathVertex {
    pub position: Point3,
    pub pin: Pin,
}

impl PathVertex {
    pub fn on_edge(curve: &CubeCurve, index: usize, t: f64) -> Self {
        PathVertex {
            position: curve.critical_edge(index).point(t),
            pin: Pin::Edge { index, t },
        }
    }

    pub fn free(position: Point3) -> Self {
        PathVertex {
            position,
            pin: Pin::Free,
        }
    }

    pub fn edge_index(&self) -> Option<usize> {
        match self.pin {
            Pin::Edge { index, .. } => Some(index),
            Pin::Free => None,
        }
    }
}

/// Sum of cyclic consecutive distances.
pub fn path_length(vertices: &[PathVertex]) -> f64 {
    let n = vertices.len();
    if n < 2 {
        return 0.0;
    }
    (0..n)
        .map(|i| vertices[i].position.distance(vertices[(i + 1) % n].position))
        .sum()
}

/// A closed polyline with its cached length.
#[derive(Clone, Debug, PartialEq)]
pub struct Polyline {
    vertices: Vec<PathVertex>,
    length: f64,
}

impl Polyline {
    pub fn new(vertices: Vec<PathVertex>) -> Self {
        let length = path_length(&vertices);
        Polyline { vertices, length }
    }

    pub fn vertices(&self) -> &[PathVertex] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<PathVertex> {
        self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// Cyclic segments `v[i] -> v[i+1]`.
    pub fn segments(&self) -> impl Iterator<Item = Segment3> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| Segment3::new(self.vertices[i].position, self.vertices[(i + 1) % n].position))
    }

    /// Copy without vertices collinear with their neighbors (within `1e-9`).
    /// For reporting; the solvers keep collinear vertices.
    pub fn simplified(&self) -> Polyline {
        let mut v = self.vertices.clone();
        let mut i = 0;
        while v.len() > 3 && i < v.len() {
            let n = v.len();
            let (a, b, c) = (v[(i + n - 1) % n].position, v[i].position, v[(i + 1) % n].position);
            if Segment3::new(a, c).distance_to_point(b) <= 1e-9 {
                v.remove(i);
            } else {
                i += 1;
            }
        }
        Polyline::new(v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    #[serde(rename = "original")]
    Original,
    #[serde(rename = "edge")]
    EdgeBased,
    #[serde(rename = "face")]
    FaceBased,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Original, Variant::EdgeBased, Variant::FaceBased];

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Original => "original",
            Variant::EdgeBased => "edge",
            Variant::FaceBased => "face",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "original" => Ok(Variant::Original),
            "edge" | "edge-based" => Ok(Variant::EdgeBased),
            "face" | "face-based" => Ok(Variant::FaceBased),
            _ => Err(format!("unknown variant `{s}` (expected original, edge or face)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverConfig {
    pub epsilon: f64,
    pub variant: Variant,
    pub max_loops: usize,
    pub tolerance: Tolerance,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            epsilon: 1e-10,
            variant: Variant::EdgeBased,
            max_loops: 10_000_000,
            tolerance: Tolerance::default(),
        }
    }
}

impl SolverConfig {
    pub fn new(variant: Variant, epsilon: f64) -> Result<Self, SolverError> {
        let cfg = SolverConfig {
            epsilon,
            variant,
            ..SolverConfig::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), SolverError> {
        // `!(x > 0)` also rejects NaN.
        if !(self.epsilon > 0.0) {
            return Err(SolverError::InvalidEpsilon(self.epsilon));
        }
        if self.max_loops == 0 {
            return Err(SolverError::InvalidMaxLoops);
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BreakOff {
    Criterion,
    MaxLoops,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    /// `L_0, L_1, ..., L_N`.
    pub lengths: Vec<f64>,
    pub loops: usize,
    /// Vertex visits summed over all loops (path size at the start of each
    /// loop); the work measure behind the `loops * n` time bound.
    pub steps: usize,
    pub wall_time_ms: f64,
    pub variant: Variant,
    pub epsilon: f64,
    pub broke_off_by: BreakOff,
    /// Face-based only: whether every final vertex landed on its critical edge.
    pub all_on_edges: Option<bool>,
    /// Length of the oracle cycle used as seed, if any.
    pub seed_cycle_length: Option<f64>,
}

impl RunReport {
    pub fn initial_length(&self) -> f64 {
        self.lengths[0]
    }

    pub fn final_length(&self) -> f64 {
        *self.lengths.last().unwrap()
    }

    /// `L_{N-1} - L_N`, or `None` before the first loop.
    pub fn last_gap(&self) -> Option<f64> {
        let n = self.lengths.len();
        (n >= 2).then(|| self.lengths[n - 2] - self.lengths[n - 1])
    }
}

/// One vertex per critical edge at an endpoint: `t = 0` on edge 0, then the
/// endpoint closest to the previously chosen vertex (ties to `t = 0`).
pub fn initialize_path(curve: &CubeCurve) -> Result<Polyline, SolverError> {
    let edges = curve.critical_edges();
    if edges.is_empty() {
        return Err(SolverError::NoCriticalEdges);
    }
    let mut vertices = Vec::with_capacity(edges.len());
    vertices.push(PathVertex::on_edge(curve, 0, 0.0));
    for e in &edges[1..] {
        let last = vertices.last().unwrap().position;
        let t = if e.start().distance(last) <= e.end().distance(last) {
            0.0
        } else {
            1.0
        };
        vertices.push(PathVertex::on_edge(curve, e.index, t));
    }
    Ok(Polyline::new(vertices))
}

/// Initializes and runs the configured variant.
pub fn solve(curve: &CubeCurve, cfg: &SolverConfig) -> Result<(Polyline, RunReport), SolverError> {
    cfg.validate()?;
    let path = initialize_path(curve)?;
    run(path, curve, cfg)
}

/// Runs the configured variant from `path`.
pub fn run(path: Polyline, curve: &CubeCurve, cfg: &SolverConfig) -> Result<(Polyline, RunReport), SolverError> {
    match cfg.variant {
        Variant::Original => rba_loop_original(path, curve, cfg),
        Variant::EdgeBased => rba_loop_edge_based(path, curve, cfg),
        Variant::FaceBased => rba_loop_face_based(path, curve, cfg),
    }
}

pub fn rba_loop_original(
    path: Polyline,
    curve: &CubeCurve,
    cfg: &SolverConfig,
) -> Result<(Polyline, RunReport), SolverError> {
    let cfg = SolverConfig {
        variant: Variant::Original,
        ..*cfg
    };
    let vertices = edge::prepare(path, curve)?;
    let mut older: Option<Vec<PathVertex>> = None;
    Ok(drive(vertices, &cfg, |v| {
        let before = v.clone();
        edge::one_loop(v, curve, &cfg, false);
        edge::extrapolate(&before, v, curve, cfg.tolerance, false);
        if let Some(older) = &older {
            edge::aitken(older, &before, v, curve, cfg.tolerance, false);
            edge::extrapolate(older, v, curve, cfg.tolerance, false);
        }
        edge::polish(v, curve, cfg.tolerance, false);
        older = Some(before);
    }))
}

pub fn rba_loop_edge_based(
    path: Polyline,
    curve: &CubeCurve,
    cfg: &SolverConfig,
) -> Result<(Polyline, RunReport), SolverError> {
    let cfg = SolverConfig {
        variant: Variant::EdgeBased,
        ..*cfg
    };
    let vertices = edge::prepare(path, curve)?;
    let mut older: Option<Vec<PathVertex>> = None;
    Ok(drive(vertices, &cfg, |v| {
        let before = v.clone();
        edge::one_loop(v, curve, &cfg, true);
        edge::extrapolate(&before, v, curve, cfg.tolerance, true);
        if let Some(older) = &older {
            edge::aitken(older, &before, v, curve, cfg.tolerance, true);
            edge::extrapolate(older, v, curve, cfg.tolerance, true);
        }
        edge::polish(v, curve, cfg.tolerance, true);
        older = Some(before);
    }))
}

pub fn rba_loop_face_based(
    path: Polyline,
    curve: &CubeCurve,
    cfg: &SolverConfig,
) -> Result<(Polyline, RunReport), SolverError> {
    let cfg = SolverConfig {
        variant: Variant::FaceBased,
        ..*cfg
    };
    let faces = critical_faces(curve);
    let mut points = face::prepare(&path, &faces)?;
    let start = Instant::now();
    let mut steps = 0;
    let (lengths, broke_off_by) = iterate(&cfg, face::closed_length(&points), || {
        steps += points.len();
        face::one_loop(&mut points, &faces);
        face::closed_length(&points)
    });
    let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    let (vertices, all_on_edges) = face::finish(&points, curve, cfg.tolerance);
    let report = RunReport {
        loops: lengths.len() - 1,
        steps,
        lengths,
        wall_time_ms,
        variant: cfg.variant,
        epsilon: cfg.epsilon,
        broke_off_by,
        all_on_edges: Some(all_on_edges),
        seed_cycle_length: None,
    };
    Ok((Polyline::new(vertices), report))
}

fn drive<F>(mut vertices: Vec<PathVertex>, cfg: &SolverConfig, mut one_loop: F) -> (Polyline, RunReport)
where
    F: FnMut(&mut Vec<PathVertex>),
{
    let start = Instant::now();
    let initial = path_length(&vertices);
    let mut steps = 0;
    let (lengths, broke_off_by) = iterate(cfg, initial, || {
        steps += vertices.len();
        one_loop(&mut vertices);
        path_length(&vertices)
    });
    let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    let report = RunReport {
        loops: lengths.len() - 1,
        steps,
        lengths,
        wall_time_ms,
        variant: cfg.variant,
        epsilon: cfg.epsilon,
        broke_off_by,
        all_on_edges: None,
        seed_cycle_length: None,
    };
    (Polyline::new(vertices), report)
}

/// Repeats `step` until `L_{n-1} - L_n < epsilon` or `max_loops` is reached.
fn iterate<F: FnMut() -> f64>(cfg: &SolverConfig, initial: f64, mut step: F) -> (Vec<f64>, BreakOff) {
    let mut lengths = vec![initial];
    loop {
        let prev = *lengths.last().unwrap();
        let next = step();
        lengths.push(next);
        log::debug!("loop {}: length {next:.12}", lengths.len() - 1);
        if prev - next < cfg.epsilon {
            return (lengths, BreakOff::Criterion);
        }
        if lengths.len() > cfg.max_loops {
            log::warn!("rubberband stopped by max_loops = {}", cfg.max_loops);
            return (lengths, BreakOff::MaxLoops);
        }
    }
}

//! Face-based variant: one vertex per critical face.
//!
//! The critical face of the turn `c[j-1], c[j], c[j+1]` is one of the two unit
//! squares `c[j-1]|c[j]` and `c[j]|c[j+1]`; both contain the critical edge.
//! Faces of consecutive critical edges are faces of the straight run of cubes
//! between the two corners, which is a box, so every segment between
//! consecutive face vertices lies in the tube.

use super::{PathVertex, Pin, Polyline};
use crate::cube_model::{Axis, CriticalEdge, CubeCurve, GridCube};
use crate::error::SolverError;
use crate::geometry::{Point3, Tolerance};
use crate::tube::{face_optimize, GridFace};

fn shared_face(a: GridCube, b: GridCube) -> GridFace {
    let (pa, pb) = (a.to_array(), b.to_array());
    let axis = (0..3).find(|&i| pa[i] != pb[i]).expect("face-adjacent cubes differ");
    let mut origin = [0i64; 3];
    for i in 0..3 {
        origin[i] = if i == axis { pa[i].max(pb[i]) } else { pa[i] };
    }
    GridFace {
        origin,
        normal: Axis::from_index(axis),
    }
}

/// The lexicographically first (by origin, then normal axis) of the two faces
/// separating the corner cube of `edge` from its curve neighbors.
pub fn critical_face(curve: &CubeCurve, edge: &CriticalEdge) -> GridFace {
    let cubes = curve.cubes();
    let n = cubes.len();
    let j = edge.corner;
    let f1 = shared_face(cubes[(j + n - 1) % n], cubes[j]);
    let f2 = shared_face(cubes[j], cubes[(j + 1) % n]);
    if (f1.origin, f1.normal) <= (f2.origin, f2.normal) {
        f1
    } else {
        f2
    }
}

pub fn critical_faces(curve: &CubeCurve) -> Vec<GridFace> {
    curve.critical_edges().iter().map(|e| critical_face(curve, e)).collect()
}

/// Places one point per critical face.
///
/// A path with exactly one vertex per critical edge (pinned or free) is
/// clamped onto the faces directly. Otherwise every vertex must be pinned;
/// faces without a vertex get the optimum for the two bracketing vertices,
/// which lies on the connecting segment whenever that segment crosses the face.
pub(super) fn prepare(path: &Polyline, faces: &[GridFace]) -> Result<Vec<Point3>, SolverError> {
    let count = faces.len();
    if count == 0 {
        return Err(SolverError::NoCriticalEdges);
    }
    let v = path.vertices();
    let aligned = v.len() == count
        && v.iter()
            .enumerate()
            .all(|(i, w)| matches!(w.pin, Pin::Free) || w.edge_index() == Some(i));
    if aligned {
        return Ok(v.iter().zip(faces).map(|(w, f)| f.clamp(w.position)).collect());
    }
    let mut pinned: Vec<(usize, Point3)> = Vec::with_capacity(v.len());
    for (vertex, w) in v.iter().enumerate() {
        match w.edge_index() {
            Some(i) if i < count => pinned.push((i, w.position)),
            other => {
                return Err(SolverError::PathNotOnCurve {
                    vertex,
                    edge: other.unwrap_or(usize::MAX),
                    count,
                })
            }
        }
    }
    pinned.sort_by_key(|p| p.0);
    pinned.dedup_by_key(|p| p.0);
    if pinned.len() < 2 {
        return Err(SolverError::PathTooShort(pinned.len()));
    }
    let mut out = vec![Point3::ORIGIN; count];
    let m = pinned.len();
    for k in 0..m {
        let (ia, a) = pinned[k];
        let (ib, b) = pinned[(k + 1) % m];
        out[ia] = a;
        let span = (ib + count - ia) % count;
        for s in 1..span {
            let j = (ia + s) % count;
            out[j] = face_optimize(a, b, &faces[j]);
        }
    }
    Ok(out)
}

pub(super) fn closed_length(points: &[Point3]) -> f64 {
    let n = points.len();
    (0..n).map(|i| points[i].distance(points[(i + 1) % n])).sum()
}

/// Moves each point, in order, to its exact optimum on its face.
pub(super) fn one_loop(points: &mut [Point3], faces: &[GridFace]) {
    let n = points.len();
    for i in 0..n {
        let prev = points[(i + n - 1) % n];
        let next = points[(i + 1) % n];
        let cur = points[i];
        let cand = face_optimize(prev, next, &faces[i]);
        let before = prev.distance(cur) + cur.distance(next);
        let after = prev.distance(cand) + cand.distance(next);
        if after < before {
            points[i] = cand;
        }
    }
}

/// Pins points lying within `tau` of their critical edge. Positions are kept.
pub(super) fn finish(points: &[Point3], curve: &CubeCurve, tol: Tolerance) -> (Vec<PathVertex>, bool) {
    let mut all = true;
    let vertices = points
        .iter()
        .zip(curve.critical_edges())
        .map(|(&p, e)| {
            let t = e.param_of(p).clamp(0.0, 1.0);
            if p.distance(e.point(t)) <= tol.tau() {
                PathVertex {
                    position: p,
                    pin: Pin::Edge { index: e.index, t },
                }
            } else {
                all = false;
                PathVertex::free(p)
            }
        })
        .collect();
    (vertices, all)
}

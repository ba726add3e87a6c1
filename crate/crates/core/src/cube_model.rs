//! Grid cubes, simple cube-curves, critical edges and angle classification.
//!
//! A cube is named by the integer coordinates of its most negative corner, so
//! `GridCube { x, y, z }` spans `[x, x+1] × [y, y+1] × [z, z+1]`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{CurveError, ParseError, SolverError};
use crate::geometry::Point3;
use crate::rubberband::{Pin, Polyline};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridCube {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl GridCube {
    pub const fn new(x: i64, y: i64, z: i64) -> Self {
        GridCube { x, y, z }
    }

    pub fn from_array(a: [i64; 3]) -> Self {
        GridCube::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [i64; 3] {
        [self.x, self.y, self.z]
    }

    /// True iff the triples differ by exactly 1 in exactly one component.
    pub fn is_face_adjacent(self, other: GridCube) -> bool {
        let d = [
            (self.x - other.x).abs(),
            (self.y - other.y).abs(),
            (self.z - other.z).abs(),
        ];
        d.iter().sum::<i64>() == 1
    }

    /// The six face neighbors.
    pub fn face_neighbors(self) -> [GridCube; 6] {
        let GridCube { x, y, z } = self;
        [
            GridCube::new(x - 1, y, z),
            GridCube::new(x + 1, y, z),
            GridCube::new(x, y - 1, z),
            GridCube::new(x, y + 1, z),
            GridCube::new(x, y, z - 1),
            GridCube::new(x, y, z + 1),
        ]
    }

    pub fn center(self) -> Point3 {
        Point3::new(self.x as f64 + 0.5, self.y as f64 + 0.5, self.z as f64 + 0.5)
    }

    pub(crate) fn offset(self, d: [i64; 3]) -> GridCube {
        GridCube::new(self.x + d[0], self.y + d[1], self.z + d[2])
    }
}

impl fmt::Display for GridCube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    pub fn from_index(i: usize) -> Axis {
        match i {
            0 => Axis::X,
            1 => Axis::Y,
            _ => Axis::Z,
        }
    }

    pub fn unit(self) -> Point3 {
        match self {
            Axis::X => Point3::new(1.0, 0.0, 0.0),
            Axis::Y => Point3::new(0.0, 1.0, 0.0),
            Axis::Z => Point3::new(0.0, 0.0, 1.0),
        }
    }
}

/// A unit grid edge incident with exactly three cubes of a curve.
///
/// `index` is the position in the curve's cyclic critical-edge order and
/// `corner` the position of the middle cube of the three (the cube
/// face-adjacent to the other two).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CriticalEdge {
    pub origin: [i64; 3],
    pub axis: Axis,
    pub index: usize,
    pub corner: usize,
}

impl CriticalEdge {
    pub fn start(&self) -> Point3 {
        Point3::new(self.origin[0] as f64, self.origin[1] as f64, self.origin[2] as f64)
    }

    pub fn end(&self) -> Point3 {
        self.start() + self.axis.unit()
    }

    /// `origin + t * axis_unit`.
    pub fn point(&self, t: f64) -> Point3 {
        let mut p = self.start();
        match self.axis {
            Axis::X => p.x += t,
            Axis::Y => p.y += t,
            Axis::Z => p.z += t,
        }
        p
    }

    /// Parameter of the orthogonal projection of `p` onto the edge line (not clamped).
    pub fn param_of(&self, p: Point3) -> f64 {
        p.get(self.axis.index()) - self.origin[self.axis.index()] as f64
    }

    /// The four cubes sharing this grid edge.
    pub fn incident_cubes(&self) -> [GridCube; 4] {
        incident_cubes(self.origin, self.axis)
    }
}

/// The four cubes sharing the unit grid edge at `origin` along `axis`.
pub fn incident_cubes(origin: [i64; 3], axis: Axis) -> [GridCube; 4] {
    let a = axis.index();
    let (b, c) = ((a + 1) % 3, (a + 2) % 3);
    let mut out = [GridCube::from_array(origin); 4];
    for (k, (db, dc)) in [(0, 0), (-1, 0), (0, -1), (-1, -1)].into_iter().enumerate() {
        let mut v = origin;
        v[b] += db;
        v[c] += dc;
        out[k] = GridCube::from_array(v);
    }
    out
}

/// A validated simple cube-curve together with its tube and critical edges.
#[derive(Clone, Debug)]
pub struct CubeCurve {
    cubes: Vec<GridCube>,
    tube: HashMap<GridCube, usize>,
    critical: Vec<CriticalEdge>,
}

impl CubeCurve {
    /// Validates a cyclic cube sequence.
    ///
    /// Checks run in the order: length, duplicates, chords, then adjacency of
    /// consecutive cubes (the closing pair last).
    pub fn new(cubes: Vec<GridCube>) -> Result<Self, CurveError> {
        let n = cubes.len();
        if n < 4 {
            return Err(CurveError::TooShort(n));
        }
        let mut tube = HashMap::with_capacity(n);
        for (i, &c) in cubes.iter().enumerate() {
            if let Some(first) = tube.insert(c, i) {
                return Err(CurveError::DuplicateCube {
                    cube: c,
                    first,
                    second: i,
                });
            }
        }
        for (i, &c) in cubes.iter().enumerate() {
            let prev = (i + n - 1) % n;
            let next = (i + 1) % n;
            for nb in c.face_neighbors() {
                if let Some(&j) = tube.get(&nb) {
                    if j != prev && j != next {
                        return Err(CurveError::ChordAdjacency {
                            cube: c,
                            index: i,
                            other: j,
                        });
                    }
                }
            }
        }
        for i in 0..n - 1 {
            if !cubes[i].is_face_adjacent(cubes[i + 1]) {
                return Err(CurveError::NotAdjacent { index: i, next: i + 1 });
            }
        }
        if !cubes[n - 1].is_face_adjacent(cubes[0]) {
            return Err(CurveError::NotClosed {
                first: cubes[0],
                last: cubes[n - 1],
            });
        }
        let critical = extract_critical_edges(&cubes, &tube);
        Ok(CubeCurve { cubes, tube, critical })
    }

    pub fn cubes(&self) -> &[GridCube] {
        &self.cubes
    }

    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    pub fn contains(&self, cube: GridCube) -> bool {
        self.tube.contains_key(&cube)
    }

    /// Position of `cube` in the curve, if it belongs to the tube.
    pub fn position(&self, cube: GridCube) -> Option<usize> {
        self.tube.get(&cube).copied()
    }

    pub fn critical_edges(&self) -> &[CriticalEdge] {
        &self.critical
    }

    pub fn critical_edge(&self, index: usize) -> &CriticalEdge {
        &self.critical[index]
    }

    /// Inclusive integer bounding box of the cube coordinates.
    pub fn bounds(&self) -> ([i64; 3], [i64; 3]) {
        let mut lo = [i64::MAX; 3];
        let mut hi = [i64::MIN; 3];
        for c in &self.cubes {
            for (k, v) in c.to_array().into_iter().enumerate() {
                lo[k] = lo[k].min(v);
                hi[k] = hi[k].max(v);
            }
        }
        (lo, hi)
    }

    /// Applies a grid motion to every cube, keeping the cyclic order.
    pub fn transformed(&self, motion: &GridMotion) -> CubeCurve {
        let cubes = self.cubes.iter().map(|&c| motion.apply_cube(c)).collect();
        CubeCurve::new(cubes).expect("grid motions preserve curve simplicity")
    }
}

/// Critical edges in the cyclic order of their corner cubes.
///
/// Three cubes around a grid edge always contain one cube face-adjacent to the
/// other two; in a simple curve those three are consecutive, so every critical
/// edge is the inner edge of a turn `c[j-1], c[j], c[j+1]` whose fourth cube
/// `c[j] + d1 + d2` is not part of the tube.
fn extract_critical_edges(cubes: &[GridCube], tube: &HashMap<GridCube, usize>) -> Vec<CriticalEdge> {
    let n = cubes.len();
    let mut out = Vec::new();
    for j in 0..n {
        let c = cubes[j].to_array();
        let p = cubes[(j + n - 1) % n].to_array();
        let q = cubes[(j + 1) % n].to_array();
        let d1 = [p[0] - c[0], p[1] - c[1], p[2] - c[2]];
        let d2 = [q[0] - c[0], q[1] - c[1], q[2] - c[2]];
        if d1.iter().zip(&d2).all(|(a, b)| a + b == 0) {
            continue;
        }
        let fourth = cubes[j].offset([d1[0] + d2[0], d1[1] + d2[1], d1[2] + d2[2]]);
        if tube.contains_key(&fourth) {
            continue;
        }
        let a1 = d1.iter().position(|&v| v != 0).unwrap();
        let a2 = d2.iter().position(|&v| v != 0).unwrap();
        let axis = 3 - a1 - a2;
        let mut origin = c;
        if d1[a1] > 0 {
            origin[a1] += 1;
        }
        if d2[a2] > 0 {
            origin[a2] += 1;
        }
        out.push(CriticalEdge {
            origin,
            axis: Axis::from_index(axis),
            index: out.len(),
            corner: j,
        });
    }
    out
}

/// Kind of a triple of consecutive, pairwise orthogonal critical edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AngleKind {
    EndAngle,
    MiddleAngle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AngleTriple {
    pub edges: [usize; 3],
    pub kind: AngleKind,
}

/// Whether a curve is first-class, as judged from a computed path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FirstClass {
    Unknown,
    /// Every critical edge hosts exactly one vertex of the computed path.
    Yes,
    No,
}

impl fmt::Display for FirstClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FirstClass::Unknown => f.write_str("unknown (requires solve)"),
            FirstClass::Yes => f.write_str("yes (w.r.t. computed path)"),
            FirstClass::No => f.write_str("no (w.r.t. computed path)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveClassification {
    pub first_class: FirstClass,
    pub angles: Vec<AngleTriple>,
    pub has_end_angle: bool,
}

impl CurveClassification {
    pub fn end_angles(&self) -> usize {
        self.angles.iter().filter(|a| a.kind == AngleKind::EndAngle).count()
    }

    pub fn middle_angles(&self) -> usize {
        self.angles.len() - self.end_angles()
    }
}

/// Labels every cyclic triple of consecutive critical edges with pairwise
/// distinct axes. The outer two edges are coplanar iff they share the
/// coordinate along the middle edge's axis.
pub fn classify_angles(curve: &CubeCurve) -> CurveClassification {
    let edges = curve.critical_edges();
    let k = edges.len();
    let mut angles = Vec::new();
    if k >= 3 {
        for i in 0..k {
            let e1 = &edges[i];
            let e2 = &edges[(i + 1) % k];
            let e3 = &edges[(i + 2) % k];
            if e1.axis == e2.axis || e2.axis == e3.axis || e1.axis == e3.axis {
                continue;
            }
            let m = e2.axis.index();
            let kind = if e1.origin[m] == e3.origin[m] {
                AngleKind::EndAngle
            } else {
                AngleKind::MiddleAngle
            };
            angles.push(AngleTriple {
                edges: [e1.index, e2.index, e3.index],
                kind,
            });
        }
    }
    let has_end_angle = angles.iter().any(|a| a.kind == AngleKind::EndAngle);
    CurveClassification {
        first_class: FirstClass::Unknown,
        angles,
        has_end_angle,
    }
}

/// First-class status with respect to `path`: every critical edge must host
/// exactly one pinned vertex. Free vertices are ignored.
pub fn classify_first_class(curve: &CubeCurve, path: &Polyline) -> Result<FirstClass, SolverError> {
    let count = curve.critical_edges().len();
    let mut hits = vec![0usize; count];
    for (vertex, v) in path.vertices().iter().enumerate() {
        if let Pin::Edge { index, .. } = v.pin {
            if index >= count {
                return Err(SolverError::PathNotOnCurve {
                    vertex,
                    edge: index,
                    count,
                });
            }
            hits[index] += 1;
        }
    }
    Ok(if count > 0 && hits.iter().all(|&h| h == 1) {
        FirstClass::Yes
    } else {
        FirstClass::No
    })
}

/// A signed axis permutation followed by an integer translation.
///
/// Maps point `p` to `q[i] = sign[i] * p[perm[i]] + shift[i]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridMotion {
    pub perm: [usize; 3],
    pub sign: [i64; 3],
    pub shift: [i64; 3],
}

impl GridMotion {
    pub const IDENTITY: GridMotion = GridMotion {
        perm: [0, 1, 2],
        sign: [1, 1, 1],
        shift: [0, 0, 0],
    };

    /// The 48 signed axis permutations, each combined with `shift`.
    pub fn all_48(shift: [i64; 3]) -> Vec<GridMotion> {
        const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let mut out = Vec::with_capacity(48);
        for perm in PERMS {
            for bits in 0..8 {
                let sign = [
                    if bits & 1 == 0 { 1 } else { -1 },
                    if bits & 2 == 0 { 1 } else { -1 },
                    if bits & 4 == 0 { 1 } else { -1 },
                ];
                out.push(GridMotion { perm, sign, shift });
            }
        }
        out
    }

    pub fn apply_point(&self, p: Point3) -> Point3 {
        let a = p.to_array();
        Point3::new(
            self.sign[0] as f64 * a[self.perm[0]] + self.shift[0] as f64,
            self.sign[1] as f64 * a[self.perm[1]] + self.shift[1] as f64,
            self.sign[2] as f64 * a[self.perm[2]] + self.shift[2] as f64,
        )
    }

    /// Image of the cube spanning `[c, c+1]^3`; a reflected coordinate `c`
    /// becomes `-c - 1`.
    pub fn apply_cube(&self, c: GridCube) -> GridCube {
        let a = c.to_array();
        let mut out = [0i64; 3];
        for i in 0..3 {
            let v = a[self.perm[i]];
            out[i] = if self.sign[i] > 0 { v } else { -v - 1 } + self.shift[i];
        }
        GridCube::from_array(out)
    }

    /// Axis that the image of `axis` runs along.
    pub fn apply_axis(&self, axis: Axis) -> Axis {
        let i = self.perm.iter().position(|&p| p == axis.index()).unwrap();
        Axis::from_index(i)
    }
}

/// Parses the curve text format: one `cube x y z` line per cube, `#` comments.
pub fn parse_curve_cubes(text: &str) -> Result<Vec<GridCube>, ParseError> {
    let mut cubes = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut parts = content.split_whitespace();
        match parts.next() {
            Some("cube") => {}
            Some(other) => {
                return Err(ParseError::syntax(line, format!("unknown directive `{other}`")));
            }
            None => continue,
        }
        let mut coords = [0i64; 3];
        for c in coords.iter_mut() {
            let tok = parts
                .next()
                .ok_or_else(|| ParseError::syntax(line, "expected `cube x y z`"))?;
            *c = tok
                .parse()
                .map_err(|_| ParseError::syntax(line, format!("invalid integer `{tok}`")))?;
        }
        if let Some(extra) = parts.next() {
            return Err(ParseError::syntax(line, format!("unexpected token `{extra}`")));
        }
        cubes.push(GridCube::from_array(coords));
    }
    Ok(cubes)
}

pub fn parse_curve(text: &str) -> Result<CubeCurve, ParseError> {
    Ok(CubeCurve::new(parse_curve_cubes(text)?)?)
}

pub fn write_curve(curve: &CubeCurve) -> String {
    let mut s = String::with_capacity(curve.len() * 16);
    for c in curve.cubes() {
        s.push_str(&format!("cube {} {} {}\n", c.x, c.y, c.z));
    }
    s
}

/// The 3×3×1 ring of eight cubes around the hole cell `(1, 1, 0)`.
pub fn ring8() -> CubeCurve {
    let cubes = [
        (0, 0, 0),
        (1, 0, 0),
        (2, 0, 0),
        (2, 1, 0),
        (2, 2, 0),
        (1, 2, 0),
        (0, 2, 0),
        (0, 1, 0),
    ]
    .into_iter()
    .map(|(x, y, z)| GridCube::new(x, y, z))
    .collect();
    CubeCurve::new(cubes).expect("ring8 is a simple curve")
}

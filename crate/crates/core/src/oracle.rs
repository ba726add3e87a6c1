//! Graph-theoretic reference solution.
//!
//! Every critical edge is sampled at `m` uniformly spaced points. A directed arc
//! joins a sample on edge `i` to a sample on edge `j` when the segment between
//! them passes the curve cubes from corner `i` forward to corner `j`, in order
//! (see [`crate::tube::first_outside_run`]). The shortest closed path is then searched among
//! cycles that visit critical edges in cyclic curve order, at most one sample
//! per edge, with at least three samples. Edges may be skipped: the shortest
//! path generally touches only a subset of the critical edges.

use std::fmt::Write;

use rayon::prelude::*;

use crate::cube_model::CubeCurve;
use crate::error::{OracleError, SolverError};
use crate::geometry::{Point3, Segment3, Tolerance};
use crate::rubberband::{self, PathVertex, Pin, Polyline, RunReport, SolverConfig};
use crate::tube::segment_in_run;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Node {
    pub edge: usize,
    pub sample: usize,
    pub t: f64,
    pub position: Point3,
}

#[derive(Clone, Debug)]
pub struct SubdivisionGraph {
    m: usize,
    edges: usize,
    nodes: Vec<Node>,
    /// `incoming[v]`: feasible arcs `(u, weight)` for `u -> v`, sorted by `u`.
    incoming: Vec<Vec<(usize, f64)>>,
}

/// Sample parameter `k / (m - 1)`, or the midpoint when `m == 1`.
pub fn sample_param(k: usize, m: usize) -> f64 {
    if m == 1 {
        0.5
    } else {
        k as f64 / (m - 1) as f64
    }
}

impl SubdivisionGraph {
    pub fn samples_per_edge(&self) -> usize {
        self.m
    }

    pub fn critical_edge_count(&self) -> usize {
        self.edges
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    /// Node id of sample `k` on critical edge `edge`.
    pub fn node_id(&self, edge: usize, k: usize) -> usize {
        edge * self.m + k
    }

    /// Arcs `u -> node` as `(u, weight)`.
    pub fn incoming(&self, node: usize) -> &[(usize, f64)] {
        &self.incoming[node]
    }

    /// Weight of the directed arc `u -> v`, if present.
    pub fn arc(&self, u: usize, v: usize) -> Option<f64> {
        let adj = &self.incoming[v];
        adj.binary_search_by_key(&u, |&(w, _)| w).ok().map(|i| adj[i].1)
    }

    pub fn arc_count(&self) -> usize {
        self.incoming.iter().map(Vec::len).sum()
    }

    /// Directed arcs `(u, v, weight)`, grouped by `v`.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.incoming
            .iter()
            .enumerate()
            .flat_map(|(v, adj)| adj.iter().map(move |&(u, w)| (u, v, w)))
    }

    /// Text dump: `node <edge> <k> <x> <y> <z>` lines, then `arc <i> <j> <w>`
    /// for the directed arc `i -> j`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for n in &self.nodes {
            let p = n.position;
            let _ = writeln!(s, "node {} {} {:.16e} {:.16e} {:.16e}", n.edge, n.sample, p.x, p.y, p.z);
        }
        for (u, v, w) in self.arcs() {
            let _ = writeln!(s, "arc {u} {v} {w:.16e}");
        }
        s
    }
}

pub fn build_graph(curve: &CubeCurve, m: usize, tol: Tolerance) -> Result<SubdivisionGraph, OracleError> {
    if m == 0 {
        return Err(OracleError::InvalidSampleCount);
    }
    let edges = curve.critical_edges();
    if edges.len() < 2 {
        return Err(OracleError::TooFewCriticalEdges(edges.len()));
    }
    let nodes: Vec<Node> = edges
        .iter()
        .flat_map(|e| {
            (0..m).map(move |k| {
                let t = sample_param(k, m);
                Node {
                    edge: e.index,
                    sample: k,
                    t,
                    position: e.point(t),
                }
            })
        })
        .collect();
    let incoming: Vec<Vec<(usize, f64)>> = (0..nodes.len())
        .into_par_iter()
        .map(|v| {
            let b = nodes[v];
            let to = edges[b.edge].corner;
            (0..nodes.len())
                .filter(|&u| nodes[u].edge != b.edge)
                .filter_map(|u| {
                    let a = nodes[u];
                    let s = Segment3::new(a.position, b.position);
                    segment_in_run(&s, curve, edges[a.edge].corner, to, tol).then(|| (u, s.length()))
                })
                .collect()
        })
        .collect();
    Ok(SubdivisionGraph {
        m,
        edges: edges.len(),
        nodes,
        incoming,
    })
}

/// Best cycle whose lowest layer is the layer of `source`.
fn best_cycle_from(graph: &SubdivisionGraph, source: usize) -> Option<(f64, Vec<usize>)> {
    let m = graph.m;
    let layer = |v: usize| v / m;
    let first = layer(source);
    let n = graph.nodes.len();
    // Shortest walks source -> v through strictly increasing layers:
    // `two` uses only the arc source->v, `more` has at least one intermediate node.
    let mut two = vec![f64::INFINITY; n];
    let mut more = vec![f64::INFINITY; n];
    let mut pred = vec![usize::MAX; n];
    for v in (first + 1) * m..n {
        let mut best = f64::INFINITY;
        let mut arg = usize::MAX;
        for &(u, w) in graph.incoming(v) {
            if u == source {
                two[v] = w;
            } else if layer(u) > first && layer(u) < layer(v) {
                let d = two[u].min(more[u]) + w;
                if d < best {
                    best = d;
                    arg = u;
                }
            }
        }
        more[v] = best;
        pred[v] = arg;
    }
    let mut best = f64::INFINITY;
    let mut last = usize::MAX;
    // Closing arcs v -> source wrap around the curve.
    for &(v, w) in graph.incoming(source) {
        if layer(v) > first && more[v] + w < best {
            best = more[v] + w;
            last = v;
        }
    }
    if !best.is_finite() {
        return None;
    }
    let mut cycle = vec![last];
    let mut v = last;
    // Follow `more` predecessors until the predecessor's best is the direct arc.
    loop {
        let u = pred[v];
        cycle.push(u);
        if two[u] <= more[u] {
            break;
        }
        v = u;
    }
    cycle.push(source);
    cycle.reverse();
    Some((best, cycle))
}

/// Shortest cycle through critical edges in cyclic order (see module docs).
pub fn shortest_cycle(graph: &SubdivisionGraph) -> Result<(Polyline, f64), OracleError> {
    let best = (0..graph.nodes.len())
        .into_par_iter()
        .filter_map(|s| best_cycle_from(graph, s).map(|(len, cyc)| (len, s, cyc)))
        .min_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
    let Some((length, _, cycle)) = best else {
        let k = graph.edges;
        let missing = (0..k).find(|&i| {
            let j = (i + 1) % k;
            (0..graph.m).all(|b| {
                graph
                    .incoming(graph.node_id(j, b))
                    .iter()
                    .all(|&(u, _)| u / graph.m != i)
            })
        });
        let (from, to) = missing.map_or((0, 1 % k), |i| (i, (i + 1) % k));
        return Err(OracleError::Disconnected { from, to });
    };
    let vertices = cycle
        .iter()
        .map(|&v| {
            let n = graph.nodes[v];
            PathVertex {
                position: n.position,
                pin: Pin::Edge { index: n.edge, t: n.t },
            }
        })
        .collect();
    Ok((Polyline::new(vertices), length))
}

/// Oracle cycle followed by a rubberband run seeded with it.
pub fn oracle_then_rba(curve: &CubeCurve, m: usize, cfg: &SolverConfig) -> Result<(Polyline, RunReport), SolverError> {
    cfg.validate()?;
    let graph = build_graph(curve, m, cfg.tolerance)?;
    let (cycle, length) = shortest_cycle(&graph)?;
    let (path, mut report) = rubberband::run(cycle, curve, cfg)?;
    report.seed_cycle_length = Some(length);
    Ok((path, report))
}

//! Independent reference checks shared by the integration tests.
#![allow(dead_code)]

use cubepath::cube_model::{CriticalEdge, CubeCurve};
use cubepath::geometry::{Point3, Segment3, Tolerance};
use cubepath::oracle::SubdivisionGraph;
use cubepath::rubberband::Polyline;
use cubepath::tube::point_in_tube;

/// Every sample at spacing <= `step` lies in the widened tube.
pub fn sampled_in_tube(s: &Segment3, curve: &CubeCurve, step: f64) -> bool {
    let n = (s.length() / step).ceil().max(1.0) as usize;
    let tol = Tolerance::default();
    (0..=n).all(|k| point_in_tube(s.at(k as f64 / n as f64), curve, tol))
}

pub fn path_sampled_in_tube(path: &Polyline, curve: &CubeCurve, step: f64) -> bool {
    path.segments().all(|s| sampled_in_tube(&s, curve, step))
}

pub fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let c = b - g * (b - a);
        let d = a + g * (b - a);
        if f(c) <= f(d) {
            b = d;
        } else {
            a = c;
        }
    }
    0.5 * (a + b)
}

/// `|prev - e(t)| + |e(t) - next|`.
pub fn op3_objective(prev: Point3, next: Point3, edge: &CriticalEdge) -> impl Fn(f64) -> f64 + '_ {
    move |t| {
        let q = edge.point(t);
        prev.distance(q) + q.distance(next)
    }
}

/// Exhaustive search over every choice of "skip or sample k" per critical
/// edge: `(m + 1)^edges` candidates. Cycles follow edge order, close from the
/// last chosen sample back to the first, and need at least three samples.
pub fn brute_force_cycle(g: &SubdivisionGraph) -> Option<f64> {
    let (k, m) = (g.critical_edge_count(), g.samples_per_edge());
    let mut choice = vec![0usize; k]; // 0 = skip, s + 1 = sample s
    let mut best = f64::INFINITY;
    let mut chosen = Vec::with_capacity(k);
    'outer: loop {
        chosen.clear();
        chosen.extend((0..k).filter(|&e| choice[e] > 0).map(|e| g.node_id(e, choice[e] - 1)));
        if chosen.len() >= 3 {
            let mut len = 0.0;
            let mut ok = true;
            for i in 0..chosen.len() {
                match g.arc(chosen[i], chosen[(i + 1) % chosen.len()]) {
                    Some(w) => len += w,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok && len < best {
                best = len;
            }
        }
        for d in choice.iter_mut() {
            *d += 1;
            if *d <= m {
                continue 'outer;
            }
            *d = 0;
        }
        break;
    }
    best.is_finite().then_some(best)
}

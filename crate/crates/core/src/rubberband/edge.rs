//! Loop body shared by the original and the edge-based variants.

use std::collections::HashMap;

use super::{PathVertex, Pin, Polyline};
use crate::cube_model::CubeCurve;
use crate::error::SolverError;
use crate::geometry::{Point3, Segment3, Tolerance};
use crate::tube::{first_outside_run, op3_optimize, triangle_critical_intersections};

/// A deletion must shorten the path by more than this; collinear vertices stay
/// unless they coincide with a neighbor.
const DELETE_GAIN: f64 = 1e-12;
/// Resolution of the feasible-move bisection, in edge parameter units.
const MOVE_RESOLUTION: f64 = 1e-12;

/// Checks that every vertex is pinned to a critical edge of `curve` and puts
/// the vertices in cyclic edge order, one per edge.
pub(super) fn prepare(path: Polyline, curve: &CubeCurve) -> Result<Vec<PathVertex>, SolverError> {
    let count = curve.critical_edges().len();
    if count == 0 {
        return Err(SolverError::NoCriticalEdges);
    }
    let mut pinned = Vec::with_capacity(path.len());
    for (vertex, v) in path.into_vertices().into_iter().enumerate() {
        match v.pin {
            Pin::Edge { index, t } if index < count => {
                pinned.push(PathVertex::on_edge(curve, index, t.clamp(0.0, 1.0)));
            }
            Pin::Edge { index, .. } => {
                return Err(SolverError::PathNotOnCurve {
                    vertex,
                    edge: index,
                    count,
                })
            }
            Pin::Free => {
                return Err(SolverError::PathNotOnCurve {
                    vertex,
                    edge: usize::MAX,
                    count,
                })
            }
        }
    }
    pinned.sort_by_key(host);
    pinned.dedup_by_key(|v| host(v));
    if pinned.len() < 3 {
        return Err(SolverError::PathTooShort(pinned.len()));
    }
    Ok(pinned)
}

#[inline]
fn host(v: &PathVertex) -> usize {
    match v.pin {
        Pin::Edge { index, .. } => index,
        Pin::Free => unreachable!("edge loops only hold pinned vertices"),
    }
}

#[inline]
fn param(v: &PathVertex) -> f64 {
    match v.pin {
        Pin::Edge { t, .. } => t,
        Pin::Free => unreachable!("edge loops only hold pinned vertices"),
    }
}

/// Critical edge indices strictly between `from` and `to` in cyclic order.
fn between(from: usize, to: usize, count: usize) -> impl Iterator<Item = usize> {
    let span = (to + count - from) % count;
    (1..span.max(1)).map(move |k| (from + k) % count)
}

fn corner(v: &PathVertex, curve: &CubeCurve) -> usize {
    curve.critical_edge(host(v)).corner
}

/// Where segment `u -> w` leaves the cubes from `u`'s corner to `w`'s corner.
fn outside(u: &PathVertex, w: &PathVertex, curve: &CubeCurve, tol: Tolerance) -> Option<f64> {
    let s = Segment3::new(u.position, w.position);
    first_outside_run(&s, curve, corner(u, curve), corner(w, curve), tol)
}

fn feasible(u: &PathVertex, w: &PathVertex, curve: &CubeCurve, tol: Tolerance) -> bool {
    outside(u, w, curve, tol).is_none()
}

/// One pass over all vertices. `corrected` selects the edge-based variant.
pub(super) fn one_loop(v: &mut Vec<PathVertex>, curve: &CubeCurve, cfg: &super::SolverConfig, corrected: bool) {
    let tol = cfg.tolerance;
    let mut i = 0;
    while i < v.len() {
        let (placed, dropped_front) = visit(v, i, curve, tol, corrected);
        if dropped_front {
            break;
        }
        i += placed;
    }
}

/// OP1 to OP3 on `v[i]`. Returns how many vertices now stand in its place and
/// whether `v[0]` was merged away (which shifts every index down by one).
fn visit(v: &mut Vec<PathVertex>, i: usize, curve: &CubeCurve, tol: Tolerance, corrected: bool) -> (usize, bool) {
    let n = v.len();
    let prev = v[(i + n - 1) % n];
    let cur = v[i];
    let next = v[(i + 1) % n];

    // OP1
    if n > 3 {
        let (dp, dn) = (
            prev.position.distance(cur.position),
            cur.position.distance(next.position),
        );
        let gain = dp + dn - prev.position.distance(next.position);
        // A vertex sitting on a neighbor pins that neighbor too; drop it.
        let stacked = dp.min(dn) <= DELETE_GAIN;
        if (gain > DELETE_GAIN || stacked) && feasible(&prev, &next, curve, tol) {
            v.remove(i);
            return (0, false);
        }
        // Blocked chord: route it around the blocking edges instead.
        if corrected && gain > DELETE_GAIN {
            let mut chain = vec![prev, next];
            if repair(&mut chain, curve, tol) && chain.len() > 2 && chain_length(&chain) < dp + dn - DELETE_GAIN {
                let inner = chain[1..chain.len() - 1].to_vec();
                let count = inner.len();
                v.splice(i..i + 1, inner);
                return (count, false);
            }
        }
    }

    // OP2
    let mut chain = convex_arc(&prev, &cur, &next, curve, tol, corrected).unwrap_or_else(|| vec![cur]);

    // OP3
    let mut j = 0;
    while j < chain.len() {
        let left = if j == 0 { prev } else { chain[j - 1] };
        let right = chain.get(j + 1).copied().unwrap_or(next);
        let moved = move_on_edge(&chain[j], &left, &right, curve, tol, corrected);
        match corrected
            .then(|| bend_around(&moved, &left, &right, curve, tol))
            .flatten()
        {
            Some(inner) => {
                let count = inner.len();
                chain.splice(j..j + 1, inner);
                j += count;
            }
            None => {
                chain[j] = moved;
                j += 1;
            }
        }
    }

    let count = chain.len();
    v.splice(i..i + 1, chain);
    let last = i + count - 1;
    let wraps = last + 1 == v.len();
    let merged = merge_with_next(v, last, curve, tol, corrected);
    (count, merged && wraps)
}

/// Two consecutive vertices on critical edges sharing an endpoint `P` creep
/// toward `P` at a linear rate close to 1 under one-vertex moves. Collapsing
/// both onto `P` settles that in one step when it is shorter.
fn merge_with_next(v: &mut Vec<PathVertex>, i: usize, curve: &CubeCurve, tol: Tolerance, corrected: bool) -> bool {
    let n = v.len();
    if n <= 3 {
        return false;
    }
    let j = (i + 1) % n;
    let (prev, cur, next, after) = (v[(i + n - 1) % n], v[i], v[j], v[(j + 1) % n]);
    let (a, b) = (curve.critical_edge(host(&cur)), curve.critical_edge(host(&next)));
    let shared = [(0.0, a.start()), (1.0, a.end())]
        .into_iter()
        .find(|(_, p)| b.start().distance(*p) <= 1e-12 || b.end().distance(*p) <= 1e-12);
    let Some((t, p)) = shared else {
        return false;
    };
    let old = prev.position.distance(cur.position)
        + cur.position.distance(next.position)
        + next.position.distance(after.position);
    let new = prev.position.distance(p) + p.distance(after.position);
    if !(new < old - 1e-15) {
        return false;
    }
    let merged = PathVertex::on_edge(curve, host(&cur), t);
    if corrected && !(feasible(&prev, &merged, curve, tol) && feasible(&merged, &after, curve, tol)) {
        return false;
    }
    v[i] = merged;
    v.remove(j);
    true
}

/// Replacement for `cur`: the convex chain from `prev` to `next` through the
/// intersection points of triangle `prev, cur, next` with the critical edges
/// between the hosts of `prev` and `next`. `None` keeps `cur`.
fn convex_arc(
    prev: &PathVertex,
    cur: &PathVertex,
    next: &PathVertex,
    curve: &CubeCurve,
    tol: Tolerance,
    corrected: bool,
) -> Option<Vec<PathVertex>> {
    let count = curve.critical_edges().len();
    let (a, b, c) = (prev.position, cur.position, next.position);
    let hits = triangle_critical_intersections(a, b, c, curve, between(host(prev), host(next), count), tol).ok()?;

    let mut candidates: Vec<PathVertex> = Vec::with_capacity(hits.len() + 1);
    let mut saw_host = false;
    for h in &hits {
        if h.edge == host(cur) {
            saw_host = true;
            if h.point.distance(b) <= 1e-12 {
                candidates.push(*cur);
                continue;
            }
        }
        candidates.push(PathVertex::on_edge(curve, h.edge, h.t));
    }
    if !saw_host {
        let pos = candidates.partition_point(|w| host(w) < host(cur));
        candidates.insert(pos, *cur);
    }
    // Order by cyclic distance from prev's host.
    let from = host(prev);
    candidates.sort_by_key(|w| (host(w) + count - from) % count);

    // 2D frame in the triangle plane: x along a->c, y toward b.
    let ex = (c - a) / (c - a).norm();
    let ab = b - a;
    let ey = {
        let d = ab - ex * ab.dot(ex);
        d / d.norm()
    };
    let to2 = |p: Point3| ((p - a).dot(ex), (p - a).dot(ey));

    let mut stack: Vec<(f64, f64, Option<PathVertex>)> = vec![(0.0, 0.0, None)];
    let items = candidates
        .iter()
        .map(|w| {
            let (x, y) = to2(w.position);
            (x, y, Some(*w))
        })
        .chain(std::iter::once({
            let (x, y) = to2(c);
            (x, y, None)
        }));
    for item in items {
        let (xt, yt, _) = stack[stack.len() - 1];
        if (item.0 - xt).hypot(item.1 - yt) <= 1e-12 {
            // Coincident with the previous point: keep one (the end point wins).
            if item.2.is_none() {
                stack.pop();
            } else {
                continue;
            }
        }
        while stack.len() >= 2 {
            let (x0, y0, _) = stack[stack.len() - 2];
            let (x1, y1, _) = stack[stack.len() - 1];
            let (ux, uy) = (x1 - x0, y1 - y0);
            let (wx, wy) = (item.0 - x1, item.1 - y1);
            let cross = ux * wy - uy * wx;
            let scale = (ux * ux + uy * uy).sqrt() * (wx * wx + wy * wy).sqrt();
            // Left turn: the middle point lies below the chord and is not on the arc.
            if cross > 1e-12 * scale {
                stack.pop();
            } else {
                break;
            }
        }
        stack.push(item);
    }
    let interior: Vec<PathVertex> = stack[1..stack.len() - 1].iter().filter_map(|s| s.2).collect();
    if interior.is_empty() || (interior.len() == 1 && interior[0] == *cur) {
        return None;
    }

    let old = a.distance(b) + b.distance(c);
    let mut chain = Vec::with_capacity(interior.len() + 2);
    chain.push(*prev);
    chain.extend(interior);
    chain.push(*next);
    if corrected && !repair(&mut chain, curve, tol) {
        return None;
    }
    let new = chain_length(&chain);
    if new > old + 1e-12 {
        return None;
    }
    chain.pop();
    chain.remove(0);
    Some(chain)
}

/// Makes every segment of `chain` tube-feasible by inserting vertices on
/// blocking critical edges. Returns false if that is impossible.
fn repair(chain: &mut Vec<PathVertex>, curve: &CubeCurve, tol: Tolerance) -> bool {
    let count = curve.critical_edges().len();
    let mut budget = count;
    let mut j = 0;
    while j + 1 < chain.len() {
        let (u, w) = (chain[j], chain[j + 1]);
        let seg = Segment3::new(u.position, w.position);
        let Some(s) = outside(&u, &w, curve, tol) else {
            j += 1;
            continue;
        };
        if budget == 0 {
            return false;
        }
        budget -= 1;
        let exit = seg.at(s);
        let blocking = between(host(&u), host(&w), count).min_by(|&p, &q| {
            let dp = edge_distance(curve, p, exit);
            let dq = edge_distance(curve, q, exit);
            dp.partial_cmp(&dq).unwrap()
        });
        let Some(k) = blocking else {
            return false;
        };
        let (t, _) = op3_optimize(u.position, w.position, curve.critical_edge(k));
        chain.insert(j + 1, PathVertex::on_edge(curve, k, t));
    }
    true
}

/// Extrapolates a slowly converging loop. Each maximal run of consecutive
/// vertices that moved along the same host during the last loop
/// is pushed further along its last displacement by factors 2, 4, 8, ...
/// (clamped to the edges) while the run's local length keeps decreasing; the
/// longest such step that is shorter, and feasible for the corrected variant,
/// is taken.
///
/// Coupled vertices otherwise creep: one-vertex moves converge linearly with a
/// ratio close to 1 near shared corners and along nearly straight stretches.
pub(super) fn extrapolate(
    before: &[PathVertex],
    v: &mut [PathVertex],
    curve: &CubeCurve,
    tol: Tolerance,
    corrected: bool,
) {
    let n = v.len();
    let previous: HashMap<usize, f64> = before.iter().map(|w| (host(w), param(w))).collect();
    // Previous parameter of each vertex whose host existed and that moved.
    let last: Vec<Option<f64>> = v
        .iter()
        .map(|w| previous.get(&host(w)).copied().filter(|&t| t != param(w)))
        .collect();
    let moved: Vec<bool> = last.iter().map(Option::is_some).collect();
    let Some(anchor) = moved.iter().position(|m| !m) else {
        extrapolate_run(&last, v, 0, n, curve, tol, corrected);
        return;
    };
    // Walk cyclically from a vertex that did not move so runs never wrap.
    let mut k = 1;
    while k < n {
        let i = (anchor + k) % n;
        if !moved[i] {
            k += 1;
            continue;
        }
        let mut len = 0;
        while k + len < n && moved[(anchor + k + len) % n] {
            len += 1;
        }
        extrapolate_run(&last, v, i, len, curve, tol, corrected);
        k += len;
    }
}

/// Geometric-tail step: where a run moved along the same hosts in each of the
/// last two loops with displacements shrinking by a ratio `|r| < 1`, jump toward
/// the estimated limit (`alpha = r / (1 - r)` times the last displacement, or
/// a fraction of it when the full jump is infeasible).
pub(super) fn aitken(
    older: &[PathVertex],
    before: &[PathVertex],
    v: &mut [PathVertex],
    curve: &CubeCurve,
    tol: Tolerance,
    corrected: bool,
) {
    let n = v.len();
    let map = |p: &[PathVertex]| -> HashMap<usize, f64> { p.iter().map(|w| (host(w), param(w))).collect() };
    let (old, prev) = (map(older), map(before));
    let last: Vec<Option<f64>> = v
        .iter()
        .map(|w| prev.get(&host(w)).copied().filter(|&t| t != param(w)))
        .collect();
    let Some(anchor) = last.iter().position(Option::is_none) else {
        return;
    };
    let mut k = 1;
    while k < n {
        let i = (anchor + k) % n;
        if last[i].is_none() {
            k += 1;
            continue;
        }
        let mut len = 0;
        while k + len < n && last[(anchor + k + len) % n].is_some() {
            len += 1;
        }
        let (mut num, mut den) = (0.0, 0.0);
        let mut complete = true;
        for j in 0..len {
            let w = &v[(i + j) % n];
            let (Some(t1), Some(&t0)) = (last[(i + j) % n], old.get(&host(w))) else {
                complete = false;
                break;
            };
            let (d1, d0) = (param(w) - t1, t1 - t0);
            num += d1 * d0;
            den += d0 * d0;
        }
        if complete && den > 0.0 {
            let r = num / den;
            if r.abs() < 0.999 && r != 0.0 {
                let alpha = r / (1.0 - r);
                let alphas = [alpha, 0.5 * alpha, 0.25 * alpha];
                jump_run(&last, v, i, len, &alphas, curve, tol, corrected);
            }
        }
        k += len;
    }
}

/// Shortest shorter-and-feasible jump of a non-wrapping run among `alphas`.
#[allow(clippy::too_many_arguments)]
fn jump_run(
    last: &[Option<f64>],
    v: &mut [PathVertex],
    start: usize,
    len: usize,
    alphas: &[f64],
    curve: &CubeCurve,
    tol: Tolerance,
    corrected: bool,
) {
    let n = v.len();
    let idx = |k: usize| (start + k) % n;
    let left = v[(start + n - 1) % n];
    let right = v[idx(len)];
    let local = |r: &[PathVertex]| {
        left.position.distance(r[0].position) + chain_length(r) + r[len - 1].position.distance(right.position)
    };
    let current: Vec<PathVertex> = (0..len).map(|k| v[idx(k)]).collect();
    let mut best = (local(&current), None);
    for &alpha in alphas {
        let cand: Vec<PathVertex> = current
            .iter()
            .enumerate()
            .map(|(k, w)| {
                let b = last[idx(k)].expect("runs hold moved vertices");
                PathVertex::on_edge(curve, host(w), (param(w) + alpha * (param(w) - b)).clamp(0.0, 1.0))
            })
            .collect();
        let l = local(&cand);
        if l < best.0
            && (!corrected
                || feasible(&left, &cand[0], curve, tol)
                    && cand.windows(2).all(|w| feasible(&w[0], &w[1], curve, tol))
                    && feasible(&cand[len - 1], &right, curve, tol))
        {
            best = (l, Some(cand));
        }
    }
    if let (_, Some(cand)) = best {
        for (k, w) in cand.into_iter().enumerate() {
            v[idx(k)] = w;
        }
    }
}

/// Vertices `start .. start + len` (cyclic) move; the rest stay.
fn extrapolate_run(
    last: &[Option<f64>],
    v: &mut [PathVertex],
    start: usize,
    len: usize,
    curve: &CubeCurve,
    tol: Tolerance,
    corrected: bool,
) {
    let n = v.len();
    let idx = |k: usize| (start + k) % n;
    let whole = len == n;
    // Local polyline: fixed neighbor, the run, fixed neighbor.
    let local = |run: &[PathVertex]| -> f64 {
        let mut s: f64 = run.windows(2).map(|w| w[0].position.distance(w[1].position)).sum();
        if whole {
            s += run[len - 1].position.distance(run[0].position);
        } else {
            s += v[(start + n - 1) % n].position.distance(run[0].position);
            s += run[len - 1].position.distance(v[idx(len)].position);
        }
        s
    };
    let current: Vec<PathVertex> = (0..len).map(|k| v[idx(k)]).collect();
    let mut best_len = local(&current);
    let mut steps = Vec::new();
    let mut alpha = 2.0;
    while alpha <= 1e6 {
        let cand: Vec<PathVertex> = (0..len)
            .map(|k| {
                let w = v[idx(k)];
                let b = last[idx(k)].expect("runs hold moved vertices");
                let t = (param(&w) + alpha * (param(&w) - b)).clamp(0.0, 1.0);
                PathVertex::on_edge(curve, host(&w), t)
            })
            .collect();
        let l = local(&cand);
        if !(l < best_len - 1e-15) {
            break;
        }
        best_len = l;
        steps.push(cand);
        alpha *= 2.0;
    }
    for cand in steps.into_iter().rev() {
        let ok = !corrected || {
            let left = if whole { cand[len - 1] } else { v[(start + n - 1) % n] };
            let right = if whole { cand[0] } else { v[idx(len)] };
            feasible(&left, &cand[0], curve, tol)
                && cand.windows(2).all(|w| feasible(&w[0], &w[1], curve, tol))
                && (whole || feasible(&cand[len - 1], &right, curve, tol))
        };
        if ok {
            for (k, w) in cand.into_iter().enumerate() {
                v[idx(k)] = w;
            }
            return;
        }
    }
}

/// Newton steps on the parameters of every maximal run of vertices strictly
/// inside their edges, the run's outer neighbors held fixed. With hosts fixed
/// the local length is convex in the parameters and its Hessian is
/// tridiagonal. The result replaces the run only if shorter (and feasible for
/// the corrected variant).
pub(super) fn polish(v: &mut [PathVertex], curve: &CubeCurve, tol: Tolerance, corrected: bool) {
    let n = v.len();
    let interior = |w: &PathVertex| matches!(w.pin, Pin::Edge { t, .. } if t > 0.0 && t < 1.0);
    let Some(anchor) = (0..n).find(|&i| !interior(&v[i])) else {
        return;
    };
    let mut k = 1;
    while k < n {
        let i = (anchor + k) % n;
        if !interior(&v[i]) {
            k += 1;
            continue;
        }
        let mut len = 0;
        while k + len < n && interior(&v[(anchor + k + len) % n]) {
            len += 1;
        }
        polish_run(v, i, len, curve, tol, corrected);
        k += len;
    }
}

fn polish_run(v: &mut [PathVertex], start: usize, len: usize, curve: &CubeCurve, tol: Tolerance, corrected: bool) {
    let n = v.len();
    let left = v[(start + n - 1) % n];
    let right = v[(start + len) % n];
    let run: Vec<PathVertex> = (0..len).map(|k| v[(start + k) % n]).collect();
    let dirs: Vec<Point3> = run.iter().map(|w| curve.critical_edge(host(w)).axis.unit()).collect();
    let local = |r: &[PathVertex]| {
        left.position.distance(r[0].position) + chain_length(r) + r[len - 1].position.distance(right.position)
    };
    let start_len = local(&run);
    let mut cur = run.clone();
    let mut cur_len = start_len;
    for _ in 0..20 {
        let mut g = vec![0.0; len];
        let mut diag = vec![0.0; len];
        let mut off = vec![0.0; len];
        // Segment k joins point k-1 and point k of [left, run.., right].
        for s in 0..=len {
            let a = if s == 0 { left.position } else { cur[s - 1].position };
            let b = if s == len { right.position } else { cur[s].position };
            let d = b - a;
            let l = d.norm();
            if l < 1e-9 {
                return polish_accept(v, start, cur, cur_len, start_len, left, right, curve, tol, corrected);
            }
            let u = d * (1.0 / l);
            let ua = if s == 0 { 0.0 } else { u.dot(dirs[s - 1]) };
            let ub = if s == len { 0.0 } else { u.dot(dirs[s]) };
            if s > 0 {
                g[s - 1] -= ua;
                diag[s - 1] += (1.0 - ua * ua) / l;
            }
            if s < len {
                g[s] += ub;
                diag[s] += (1.0 - ub * ub) / l;
            }
            if s > 0 && s < len {
                off[s - 1] = -(dirs[s - 1].dot(dirs[s]) - ua * ub) / l;
            }
        }
        let scale = diag.iter().fold(0.0f64, |m, &x| m.max(x));
        if scale <= 0.0 {
            break;
        }
        for x in &mut diag {
            *x += 1e-10 * scale;
        }
        let step = solve_tridiagonal(&diag, &off, &g);
        let mut improved = false;
        let mut h = 1.0;
        while h > 1e-6 {
            let cand: Vec<PathVertex> = cur
                .iter()
                .zip(&step)
                .map(|(w, &dt)| PathVertex::on_edge(curve, host(w), (param(w) - h * dt).clamp(0.0, 1.0)))
                .collect();
            let l = local(&cand);
            if l < cur_len {
                improved = cur_len - l > 1e-15;
                cur = cand;
                cur_len = l;
                break;
            }
            h *= 0.5;
        }
        if !improved {
            break;
        }
    }
    polish_accept(v, start, cur, cur_len, start_len, left, right, curve, tol, corrected);
}

#[allow(clippy::too_many_arguments)]
fn polish_accept(
    v: &mut [PathVertex],
    start: usize,
    cand: Vec<PathVertex>,
    cand_len: f64,
    start_len: f64,
    left: PathVertex,
    right: PathVertex,
    curve: &CubeCurve,
    tol: Tolerance,
    corrected: bool,
) {
    if !(cand_len < start_len) {
        return;
    }
    let len = cand.len();
    if corrected
        && !(feasible(&left, &cand[0], curve, tol)
            && cand.windows(2).all(|w| feasible(&w[0], &w[1], curve, tol))
            && feasible(&cand[len - 1], &right, curve, tol))
    {
        return;
    }
    let n = v.len();
    for (k, w) in cand.into_iter().enumerate() {
        v[(start + k) % n] = w;
    }
}

/// Symmetric tridiagonal solve; `off[k]` couples `k` and `k + 1`.
fn solve_tridiagonal(diag: &[f64], off: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    let mut denom = diag[0];
    c[0] = off[0] / denom;
    d[0] = rhs[0] / denom;
    for k in 1..n {
        denom = diag[k] - off[k - 1] * c[k - 1];
        c[k] = off[k] / denom;
        d[k] = (rhs[k] - off[k - 1] * d[k - 1]) / denom;
    }
    for k in (0..n - 1).rev() {
        d[k] -= c[k] * d[k + 1];
    }
    d
}

fn chain_length(chain: &[PathVertex]) -> f64 {
    chain.windows(2).map(|w| w[0].position.distance(w[1].position)).sum()
}

fn edge_distance(curve: &CubeCurve, index: usize, p: Point3) -> f64 {
    let e = curve.critical_edge(index);
    Segment3::new(e.start(), e.end()).distance_to_point(p)
}

/// OP3: optimal position for neighbors `left` and `right` on the host edge or,
/// when the vertex sits on an endpoint shared with other critical edges in
/// cyclic range, on whichever of those edges gives the shortest local path.
fn move_on_edge(
    v: &PathVertex,
    left: &PathVertex,
    right: &PathVertex,
    curve: &CubeCurve,
    tol: Tolerance,
    corrected: bool,
) -> PathVertex {
    let local = |w: &PathVertex| left.position.distance(w.position) + w.position.distance(right.position);
    let mut best = slide(v, left, right, curve, tol, corrected);
    let mut best_len = local(&best);
    let t = param(v);
    if t > 0.0 && t < 1.0 {
        return best;
    }
    let count = curve.critical_edges().len();
    for k in between(host(left), host(right), count) {
        if k == host(v) {
            continue;
        }
        let e = curve.critical_edge(k);
        let tk = if e.start().distance(v.position) <= 1e-12 {
            0.0
        } else if e.end().distance(v.position) <= 1e-12 {
            1.0
        } else {
            continue;
        };
        let start = PathVertex::on_edge(curve, k, tk);
        if corrected && !(feasible(left, &start, curve, tol) && feasible(&start, right, curve, tol)) {
            continue;
        }
        let cand = slide(&start, left, right, curve, tol, corrected);
        let len = local(&cand);
        if len < best_len - 1e-15 {
            best = cand;
            best_len = len;
        }
    }
    best
}

/// A slide stopped by feasibility leaves a segment grazing a blocking edge
/// within the tolerance band, and the loop stalls there. Moving to the free
/// optimum and bending both segments around the blocking edges settles it.
fn bend_around(
    v: &PathVertex,
    left: &PathVertex,
    right: &PathVertex,
    curve: &CubeCurve,
    tol: Tolerance,
) -> Option<Vec<PathVertex>> {
    let index = host(v);
    let (t_opt, _) = op3_optimize(left.position, right.position, curve.critical_edge(index));
    if (t_opt - param(v)).abs() <= MOVE_RESOLUTION {
        return None;
    }
    let mut chain = vec![*left, PathVertex::on_edge(curve, index, t_opt), *right];
    let old = left.position.distance(v.position) + v.position.distance(right.position);
    if !repair(&mut chain, curve, tol) || !(chain_length(&chain) < old - DELETE_GAIN) {
        return None;
    }
    Some(chain[1..chain.len() - 1].to_vec())
}

/// Moves `v` along its host toward the closed-form optimum. The corrected form
/// stops at the last position keeping both segments feasible.
fn slide(
    v: &PathVertex,
    left: &PathVertex,
    right: &PathVertex,
    curve: &CubeCurve,
    tol: Tolerance,
    corrected: bool,
) -> PathVertex {
    let index = host(v);
    let edge = curve.critical_edge(index);
    let t_old = param(v);
    let (t_opt, _) = op3_optimize(left.position, right.position, edge);
    if (t_opt - t_old).abs() <= 1e-15 {
        return *v;
    }
    let ok = |t: f64| {
        let p = PathVertex::on_edge(curve, index, t);
        feasible(left, &p, curve, tol) && feasible(&p, right, curve, tol)
    };
    if !corrected || ok(t_opt) {
        return PathVertex::on_edge(curve, index, t_opt);
    }
    let delta = t_opt - t_old;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while (hi - lo) * delta.abs() > MOVE_RESOLUTION {
        let mid = 0.5 * (lo + hi);
        if ok(t_old + mid * delta) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if lo == 0.0 {
        return *v;
    }
    PathVertex::on_edge(curve, index, (t_old + lo * delta).clamp(0.0, 1.0))
}

//! Random simple cube-curves: a self-avoiding random walk closed by at most
//! three axis-parallel straight runs of cubes.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cube_model::{CubeCurve, GridCube};
use crate::error::GenError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub target_cubes: usize,
    pub seed: u64,
    pub max_attempts: usize,
}

impl GenConfig {
    pub fn new(target_cubes: usize, seed: u64) -> Self {
        GenConfig {
            target_cubes,
            seed,
            max_attempts: 10_000,
        }
    }
}

const STEPS: [[i64; 3]; 6] = [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]];

const AXIS_ORDERS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn manhattan(a: GridCube, b: GridCube) -> usize {
    ((a.x - b.x).abs() + (a.y - b.y).abs() + (a.z - b.z).abs()) as usize
}

/// Generates a curve with `target_cubes ± 20%` cubes, deterministic in `seed`.
///
/// The walk only adds cubes that touch (by face) nothing but the current end.
/// Whenever walk length plus closing distance is near the target, the closing
/// runs are tried in every axis order; the first order giving a simple curve
/// wins.
pub fn generate_curve(cfg: &GenConfig) -> Result<CubeCurve, GenError> {
    let n = cfg.target_cubes;
    if n < 8 {
        return Err(GenError::TargetTooSmall(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let window = (n / 10).max(1);
    let limit = n + n / 5;
    for _ in 0..cfg.max_attempts {
        if let Some(curve) = attempt(&mut rng, n, window, limit) {
            return Ok(curve);
        }
    }
    Err(GenError::GenerationFailed {
        seed: cfg.seed,
        attempts: cfg.max_attempts,
    })
}

fn attempt(rng: &mut ChaCha8Rng, target: usize, window: usize, limit: usize) -> Option<CubeCurve> {
    let start = GridCube::new(0, 0, 0);
    let mut walk = vec![start];
    let mut occupied: HashSet<GridCube> = HashSet::from([start]);
    loop {
        let end = *walk.last().unwrap();
        let total = walk.len() - 1 + manhattan(end, start);
        if walk.len() >= 3 && total.abs_diff(target) <= window {
            if let Some(curve) = close(rng, &walk, &occupied) {
                return Some(curve);
            }
        }
        if total > limit {
            return None;
        }
        let feasible: Vec<GridCube> = STEPS
            .iter()
            .map(|&d| end.offset(d))
            .filter(|c| {
                !occupied.contains(c) && c.face_neighbors().iter().all(|nb| *nb == end || !occupied.contains(nb))
            })
            .collect();
        if feasible.is_empty() {
            return None;
        }
        let next = feasible[rng.random_range(0..feasible.len())];
        walk.push(next);
        occupied.insert(next);
    }
}

fn close(rng: &mut ChaCha8Rng, walk: &[GridCube], occupied: &HashSet<GridCube>) -> Option<CubeCurve> {
    let start = walk[0];
    let end = *walk.last().unwrap();
    let mut orders = AXIS_ORDERS;
    orders.shuffle(rng);
    'order: for order in orders {
        let mut cubes = walk.to_vec();
        let mut seen = occupied.clone();
        let mut cur = end.to_array();
        let goal = start.to_array();
        for axis in order {
            while cur[axis] != goal[axis] {
                cur[axis] += (goal[axis] - cur[axis]).signum();
                if cur == goal {
                    break;
                }
                let c = GridCube::from_array(cur);
                if !seen.insert(c) {
                    continue 'order;
                }
                cubes.push(c);
            }
        }
        if cubes.len() < 8 {
            continue;
        }
        if let Ok(curve) = CubeCurve::new(cubes) {
            return Some(curve);
        }
    }
    None
}

//! Runtime-vs-size benchmark: generated curves, one solver run each, CSV
//! records, an affine fit and a small SVG scatter plot.

use std::fmt::Write as _;
use std::io;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve_gen::{generate_curve, GenConfig};
use crate::oracle::{build_graph, shortest_cycle};
use crate::rubberband::{solve, SolverConfig, Variant};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "CUBEPATH_THREADS";

pub const CSV_HEADER: &str = "n,critical_edges,variant,epsilon,loops,time_ms,length,oracle_length,seed";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    /// Cube count of the generated curve.
    pub n: usize,
    pub critical_edges: usize,
    pub variant: Variant,
    pub epsilon: f64,
    pub loops: usize,
    /// Solver loop only; generation and I/O are excluded.
    pub time_ms: f64,
    pub length: f64,
    pub oracle_length: Option<f64>,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchConfig {
    /// Inclusive size range.
    pub min_size: usize,
    pub max_size: usize,
    pub step: usize,
    pub per_size: usize,
    pub variant: Variant,
    pub epsilon: f64,
    pub base_seed: u64,
    /// Also run the oracle with this many samples per edge.
    pub oracle_m: Option<usize>,
    /// Worker threads; `None` falls back to `CUBEPATH_THREADS`, then rayon's default.
    pub threads: Option<usize>,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            min_size: 10,
            max_size: 630,
            step: 20,
            per_size: 3,
            variant: Variant::EdgeBased,
            epsilon: 1e-10,
            base_seed: 0,
            oracle_m: None,
            threads: None,
        }
    }
}

impl BenchConfig {
    /// `(target size, seed)` for every curve of the grid.
    pub fn jobs(&self) -> Vec<(usize, u64)> {
        let step = self.step.max(1);
        let mut jobs = Vec::new();
        let mut n = self.min_size;
        while n <= self.max_size {
            for r in 0..self.per_size {
                jobs.push((n, self.base_seed.wrapping_add((n as u64) << 16 | r as u64)));
            }
            n += step;
        }
        jobs
    }
}

/// Worker count from `CUBEPATH_THREADS`, if set to a positive integer.
pub fn thread_cap() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()?
        .trim()
        .parse()
        .ok()
        .filter(|&n: &usize| n > 0)
}

/// A record plus the solver's vertex-visit count, which the CSV does not carry.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchSample {
    pub record: BenchRecord,
    pub steps: usize,
}

fn bench_one(cfg: &BenchConfig, target: usize, seed: u64) -> Result<BenchSample, String> {
    let curve = generate_curve(&GenConfig::new(target, seed)).map_err(|e| e.to_string())?;
    let solver = SolverConfig::new(cfg.variant, cfg.epsilon).map_err(|e| e.to_string())?;
    let (path, report) = solve(&curve, &solver).map_err(|e| e.to_string())?;
    let oracle_length = match cfg.oracle_m {
        Some(m) => {
            let g = build_graph(&curve, m, solver.tolerance).map_err(|e| e.to_string())?;
            Some(shortest_cycle(&g).map_err(|e| e.to_string())?.1)
        }
        None => None,
    };
    let record = BenchRecord {
        n: curve.len(),
        critical_edges: curve.critical_edges().len(),
        variant: cfg.variant,
        epsilon: cfg.epsilon,
        loops: report.loops,
        time_ms: report.wall_time_ms,
        length: path.length(),
        oracle_length,
        seed,
    };
    Ok(BenchSample {
        record,
        steps: report.steps,
    })
}

/// Runs the grid in parallel. Failed curves are logged and skipped; records
/// come back in grid order.
pub fn run_bench(cfg: &BenchConfig) -> Vec<BenchRecord> {
    run_bench_samples(cfg).into_iter().map(|s| s.record).collect()
}

pub fn run_bench_samples(cfg: &BenchConfig) -> Vec<BenchSample> {
    let jobs = cfg.jobs();
    let work = || {
        jobs.par_iter()
            .filter_map(|&(n, seed)| match bench_one(cfg, n, seed) {
                Ok(r) => Some(r),
                Err(e) => {
                    log::warn!("skipping curve n={n} seed={seed}: {e}");
                    None
                }
            })
            .collect()
    };
    match cfg.threads.filter(|&k| k > 0).or_else(thread_cap) {
        Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
            Ok(pool) => pool.install(work),
            Err(e) => {
                log::warn!("thread pool: {e}; using the global pool");
                work()
            }
        },
        None => work(),
    }
}

pub fn write_csv<W: io::Write>(out: W, records: &[BenchRecord]) -> Result<(), csv::Error> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER.split(','))?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: io::Read>(input: R) -> Result<Vec<BenchRecord>, csv::Error> {
    csv::Reader::from_reader(input).deserialize().collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AffineFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Least-squares line `y = slope * x + intercept`. `None` for fewer than two
/// points or constant `x`.
pub fn affine_fit(points: &[(f64, f64)]) -> Option<AffineFit> {
    let k = points.len() as f64;
    if points.len() < 2 {
        return None;
    }
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = points.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = points.iter().map(|p| (p.1 - slope * p.0 - intercept).powi(2)).sum();
    let r_squared = if syy == 0.0 { 1.0 } else { 1.0 - ss_res / syy };
    Some(AffineFit {
        slope,
        intercept,
        r_squared,
    })
}

/// `(n, time_ms)` pairs.
pub fn time_points(records: &[BenchRecord]) -> Vec<(f64, f64)> {
    records.iter().map(|r| (r.n as f64, r.time_ms)).collect()
}

/// Max over median; `None` when empty or the median is 0.
pub fn max_over_median(values: &[f64]) -> Option<f64> {
    let mut q = values.to_vec();
    if q.is_empty() {
        return None;
    }
    q.sort_by(f64::total_cmp);
    let k = q.len();
    let median = if k % 2 == 1 {
        q[k / 2]
    } else {
        0.5 * (q[k / 2 - 1] + q[k / 2])
    };
    (median > 0.0).then(|| q[k - 1] / median)
}

/// Max over median of `loops / n`.
pub fn loop_ratio_spread(records: &[BenchRecord]) -> Option<f64> {
    let q: Vec<f64> = records.iter().map(|r| r.loops as f64 / r.n as f64).collect();
    max_over_median(&q)
}

/// Max over median of `steps / n`: vertex visits over all loops per cube.
pub fn step_ratio_spread(samples: &[BenchSample]) -> Option<f64> {
    let q: Vec<f64> = samples.iter().map(|s| s.steps as f64 / s.record.n as f64).collect();
    max_over_median(&q)
}

/// Static scatter of time against size with the fitted line.
pub fn svg_plot(records: &[BenchRecord], fit: Option<&AffineFit>) -> String {
    const W: f64 = 640.0;
    const H: f64 = 400.0;
    const PAD: f64 = 50.0;
    let pts = time_points(records);
    let xmax = pts.iter().map(|p| p.0).fold(1.0, f64::max);
    let ymax = pts.iter().map(|p| p.1).fold(1e-9, f64::max);
    let sx = |x: f64| PAD + x / xmax * (W - 2.0 * PAD);
    let sy = |y: f64| H - PAD - y / ymax * (H - 2.0 * PAD);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<path d="M{PAD} {PAD} V{} H{}" stroke="black" fill="none"/>"#,
        H - PAD,
        W - PAD
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">cubes n (max {xmax})</text>"#,
        W / 2.0,
        H - 15.0
    );
    let _ = writeln!(
        s,
        r#"<text x="15" y="{}" font-size="12" transform="rotate(-90 15 {})" text-anchor="middle">time ms (max {ymax:.3})</text>"#,
        H / 2.0,
        H / 2.0
    );
    for (x, y) in &pts {
        let _ = writeln!(
            s,
            r#"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="steelblue"/>"#,
            sx(*x),
            sy(*y)
        );
    }
    if let Some(f) = fit {
        let (y0, y1) = (f.intercept, f.slope * xmax + f.intercept);
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="crimson"/>"#,
            sx(0.0),
            sy(y0),
            sx(xmax),
            sy(y1)
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-size="12">t = {:.4} n + {:.4}, R² = {:.4}</text>"#,
            PAD + 10.0,
            PAD + 15.0,
            f.slope,
            f.intercept,
            f.r_squared
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(n: usize, t: f64) -> BenchRecord {
        BenchRecord {
            n,
            critical_edges: n / 2,
            variant: Variant::EdgeBased,
            epsilon: 1e-10,
            loops: 3,
            time_ms: t,
            length: 0.1 + n as f64 / 3.0,
            oracle_length: if n.is_multiple_of(2) {
                Some(n as f64 / 7.0)
            } else {
                None
            },
            seed: n as u64 * 31,
        }
    }

    #[test]
    fn csv_round_trip() {
        let recs: Vec<_> = (10..20).map(|n| record(n, n as f64 * 0.37)).collect();
        let mut buf = Vec::new();
        write_csv(&mut buf, &recs).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text.lines().next().unwrap(), CSV_HEADER);
        assert!(text.lines().nth(1).unwrap().starts_with("10,5,edge,1e-10,3,"));
        assert_eq!(read_csv(&buf[..]).unwrap(), recs);
    }

    #[test]
    fn empty_csv_has_header_only() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &[]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn fit_exact_line() {
        let pts: Vec<_> = (0..10).map(|i| (i as f64, 2.0 * i as f64 + 1.0)).collect();
        let f = affine_fit(&pts).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-12);
        assert!((f.intercept - 1.0).abs() < 1e-12);
        assert!((f.r_squared - 1.0).abs() < 1e-12);
        assert!(affine_fit(&[(1.0, 1.0)]).is_none());
        assert!(affine_fit(&[(1.0, 1.0), (1.0, 2.0)]).is_none());
    }

    #[test]
    fn job_grid() {
        let cfg = BenchConfig::default();
        assert_eq!(cfg.jobs().len(), 32 * 3);
        let none = BenchConfig {
            per_size: 0,
            ..BenchConfig::default()
        };
        assert!(none.jobs().is_empty());
        assert!(run_bench(&none).is_empty());
    }

    #[test]
    fn small_bench_runs() {
        let cfg = BenchConfig {
            min_size: 10,
            max_size: 30,
            step: 10,
            per_size: 2,
            oracle_m: Some(4),
            ..BenchConfig::default()
        };
        let recs = run_bench(&cfg);
        assert_eq!(recs.len(), 6);
        for r in &recs {
            assert!(r.time_ms >= 0.0 && r.length > 0.0);
            let o = r.oracle_length.unwrap();
            assert!(r.length <= o + 1e-9, "{r:?}");
        }
        let svg = svg_plot(&recs, affine_fit(&time_points(&recs)).as_ref());
        assert!(svg.starts_with("<svg") && svg.contains("<circle"));
    }

    #[test]
    fn spread() {
        let recs = vec![record(10, 1.0), record(20, 1.0), record(30, 1.0)];
        // loops/n = 0.3, 0.15, 0.1 -> max/median = 2.
        assert!((loop_ratio_spread(&recs).unwrap() - 2.0).abs() < 1e-12);
    }
}

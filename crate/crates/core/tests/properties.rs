mod common;

use proptest::prelude::*;

use cubepath::bench::{read_csv, write_csv, BenchRecord};
use cubepath::cube_model::{parse_curve, ring8, write_curve, Axis, CriticalEdge, GridMotion};
use cubepath::curve_gen::{generate_curve, GenConfig};
use cubepath::geometry::{Point3, Segment3, Tolerance};
use cubepath::rubberband::{parse_path, solve, SolverConfig, Variant};
use cubepath::tube::{op3_optimize, segment_in_tube};

use common::{golden_section, op3_objective, sampled_in_tube};

fn edge_cfg() -> SolverConfig {
    SolverConfig::new(Variant::EdgeBased, 1e-10).unwrap()
}

fn point() -> impl Strategy<Value = Point3> {
    (-3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64).prop_map(|(x, y, z)| Point3::new(x, y, z))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn length_invariant_under_grid_motions(
        seed in 0u64..10_000,
        n in 10usize..40,
        motion in 0usize..48,
        shift in prop::array::uniform3(-5i64..5),
    ) {
        let c = generate_curve(&GenConfig::new(n, seed)).unwrap();
        let m = GridMotion::all_48(shift)[motion];
        let moved = c.transformed(&m);
        prop_assert_eq!(moved.critical_edges().len(), c.critical_edges().len());
        let (a, _) = solve(&c, &edge_cfg()).unwrap();
        let (b, _) = solve(&moved, &edge_cfg()).unwrap();
        prop_assert!((a.length() - b.length()).abs() <= 1e-9, "{} vs {}", a.length(), b.length());
    }

    #[test]
    fn edge_runs_are_monotone_and_feasible(seed in 0u64..10_000, n in 10usize..60) {
        let c = generate_curve(&GenConfig::new(n, seed)).unwrap();
        let (p, r) = solve(&c, &edge_cfg()).unwrap();
        prop_assert!(r.lengths.windows(2).all(|w| w[1] <= w[0] + 1e-12));
        prop_assert!(p.segments().all(|s| segment_in_tube(&s, &c, Tolerance::default())));
        prop_assert!((p.length() - r.final_length()).abs() < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn op3_is_stationary(prev in point(), next in point(), axis in 0usize..3) {
        let e = CriticalEdge { origin: [0, 0, 0], axis: Axis::from_index(axis), index: 0, corner: 0 };
        let (t, q) = op3_optimize(prev, next, &e);
        prop_assert!((0.0..=1.0).contains(&t));
        prop_assert!(q.distance(e.point(t)) < 1e-15);
        let f = op3_objective(prev, next, &e);
        let h = 1e-6;
        if t > h && t < 1.0 - h {
            prop_assert!(((f(t + h) - f(t - h)) / (2.0 * h)).abs() < 1e-5);
        }
        let g = golden_section(&f, 0.0, 1.0);
        prop_assert!(f(t) <= f(g) + 1e-10);
    }

    #[test]
    fn segment_test_matches_sampling(
        a in (0.0..3.0f64, 0.0..3.0f64, -0.5..1.5f64),
        b in (0.0..3.0f64, 0.0..3.0f64, -0.5..1.5f64),
    ) {
        let r = ring8();
        let s = Segment3::new(Point3::new(a.0, a.1, a.2), Point3::new(b.0, b.1, b.2));
        prop_assert_eq!(segment_in_tube(&s, &r, Tolerance::default()), sampled_in_tube(&s, &r, 1e-4));
    }

    #[test]
    fn csv_round_trips(rows in prop::collection::vec((8usize..700, 0.0..50.0f64, 1.0..400.0f64, any::<bool>(), any::<u64>()), 0..20)) {
        let recs: Vec<BenchRecord> = rows
            .into_iter()
            .map(|(n, t, l, o, seed)| BenchRecord {
                n,
                critical_edges: n / 2,
                variant: Variant::FaceBased,
                epsilon: 1e-10,
                loops: n % 17,
                time_ms: t,
                length: l,
                oracle_length: o.then_some(l * 0.99),
                seed,
            })
            .collect();
        let mut buf = Vec::new();
        write_csv(&mut buf, &recs).unwrap();
        prop_assert_eq!(read_csv(&buf[..]).unwrap(), recs);
    }
}

#[test]
fn curve_and_path_files_round_trip() {
    for seed in 0..10 {
        let c = generate_curve(&GenConfig::new(40, seed)).unwrap();
        let back = parse_curve(&write_curve(&c)).unwrap();
        assert_eq!(back.cubes(), c.cubes());
        let (p, r) = solve(&c, &edge_cfg()).unwrap();
        let f = parse_path(&Variant::EdgeBased.write_path(&p, 1e-10, r.loops)).unwrap();
        assert_eq!(f.vertices, p.vertices());
        assert_eq!(f.loops, r.loops);
        assert_eq!(f.variant, "edge");
    }
}

use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use cubepath_ffi::*;

const RING8: [i64; 24] = [0, 0, 0, 1, 0, 0, 2, 0, 0, 2, 1, 0, 2, 2, 0, 1, 2, 0, 0, 2, 0, 0, 1, 0];

fn last_error() -> String {
    let p = cp_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn ring8() -> *mut CpCurve {
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { cp_curve_new(RING8.as_ptr(), 8, &mut c) }, CpStatus::Ok);
    c
}

#[test]
fn ring8_solve_and_oracle() {
    let c = ring8();
    unsafe {
        assert_eq!(cp_curve_cube_count(c), 8);
        assert_eq!(cp_curve_critical_edge_count(c), 4);

        let mut p = ptr::null_mut();
        assert_eq!(cp_solve(c, CpVariant::Edge as i32, 1e-10, &mut p), CpStatus::Ok);
        assert!((cp_path_length(p) - 4.0).abs() < 1e-9);
        assert!(cp_path_loops(p) >= 1);
        assert!(cp_path_time_ms(p) >= 0.0);
        let k = cp_path_vertex_count(p);
        let mut xyz = vec![0.0; 3 * k];
        assert_eq!(cp_path_vertices(p, xyz.as_mut_ptr(), xyz.len()), CpStatus::Ok);
        let z = xyz[2];
        assert!(xyz.chunks(3).all(|v| v[2] == z));
        assert_eq!(cp_path_vertices(p, xyz.as_mut_ptr(), 2), CpStatus::BufferTooSmall);
        assert!(last_error().contains("need"));
        cp_path_free(p);

        let mut o = ptr::null_mut();
        assert_eq!(cp_oracle(c, 4, &mut o), CpStatus::Ok);
        assert!((cp_path_length(o) - 4.0).abs() < 1e-12);
        assert_eq!(cp_path_loops(o), 0);
        cp_path_free(o);
        cp_curve_free(c);
    }
}

#[test]
fn errors_are_codes() {
    let c = ring8();
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(
            cp_solve(c, CpVariant::Edge as i32, 0.0, &mut p),
            CpStatus::InvalidArgument
        );
        assert!(last_error().contains("epsilon must be > 0"));
        assert!(p.is_null());
        assert_eq!(cp_solve(c, 7, 1e-10, &mut p), CpStatus::InvalidArgument);
        assert_eq!(cp_solve(ptr::null(), 1, 1e-10, &mut p), CpStatus::NullPointer);
        assert_eq!(cp_oracle(c, 0, &mut p), CpStatus::SolverFailed);

        let mut bad = ptr::null_mut();
        assert_eq!(cp_curve_new(RING8.as_ptr(), 7, &mut bad), CpStatus::InvalidCurve);
        assert!(bad.is_null());
        let text = CString::new("cube 0 0 0\nnope\n").unwrap();
        assert_eq!(cp_curve_parse(text.as_ptr(), &mut bad), CpStatus::InvalidCurve);
        assert!(last_error().starts_with("line 2"));

        // NULL handles are tolerated by the accessors and destructors.
        assert_eq!(cp_curve_cube_count(ptr::null()), 0);
        assert!(cp_path_length(ptr::null()).is_nan());
        cp_curve_free(ptr::null_mut());
        cp_path_free(ptr::null_mut());
        cp_curve_free(c);
    }
}

#[test]
fn parse_matches_new() {
    let text = CString::new(
        "# ring\ncube 0 0 0\ncube 1 0 0\ncube 2 0 0\ncube 2 1 0\ncube 2 2 0\ncube 1 2 0\ncube 0 2 0\ncube 0 1 0\n",
    )
    .unwrap();
    let mut c = ptr::null_mut();
    unsafe {
        assert_eq!(cp_curve_parse(text.as_ptr(), &mut c), CpStatus::Ok);
        assert_eq!(cp_curve_critical_edge_count(c), 4);
        cp_curve_free(c);
    }
    let v = unsafe { CStr::from_ptr(cp_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

/// Directory holding the library artifacts (`target/<profile>`).
fn artifact_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_header() {
    let lib = artifact_dir().join("libcubepath_ffi.a");
    assert!(lib.exists(), "missing {}", lib.display());
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("capi_smoke");
    let status = Command::new("cc")
        .arg(manifest.join("tests/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .expect("run cc");
    assert!(status.success());
    let run = Command::new(&out).output().unwrap();
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert!(run.status.success(), "{stdout}");
    assert!(stdout.contains("length=4.000000000"), "{stdout}");
    assert!(stdout.contains("error=epsilon must be > 0"), "{stdout}");
}

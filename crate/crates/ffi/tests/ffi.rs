use std::ffi::{CStr, CString};
use std::ptr;

use fracfem_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(fracfem_last_error_message()) }
        .to_string_lossy()
        .into_owned()
}

#[test]
fn special_functions() {
    let (mut re, mut im) = (0.0, 0.0);
    let s = unsafe { fracfem_mittag_leffler(0.8, -1.0, 0.0, &mut re, &mut im) };
    assert_eq!(s, FracfemStatus::Ok);
    assert!((re - 0.38694857861897685).abs() < 1e-13 && im == 0.0);
    assert_eq!(last_error(), "");

    let mut g = 0.0;
    assert_eq!(unsafe { fracfem_gamma(5.0, &mut g) }, FracfemStatus::Ok);
    assert_eq!(g, 24.0);
    assert_eq!(
        unsafe { fracfem_gamma(-2.0, &mut g) },
        FracfemStatus::Solver
    );
    assert!(last_error().contains("pole"), "{}", last_error());

    assert_eq!(
        unsafe { fracfem_mittag_leffler(0.0, 1.0, 0.0, &mut re, &mut im) },
        FracfemStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { fracfem_gamma(1.0, ptr::null_mut()) },
        FracfemStatus::NullPointer
    );
}

#[test]
fn benchmark_handle_lifecycle() {
    let mut sim = ptr::null_mut();
    let s = unsafe { fracfem_simulation_from_benchmark(1, 10, 1, 0, 0.8, &mut sim) };
    assert_eq!(s, FracfemStatus::Ok, "{}", last_error());
    let mut n = 0usize;
    assert_eq!(
        unsafe { fracfem_simulation_node_count(sim, &mut n) },
        FracfemStatus::Ok
    );
    assert_eq!(n, 11);

    let mut coords = vec![0.0; 2 * n];
    assert_eq!(
        unsafe { fracfem_simulation_node_coords(sim, coords.as_mut_ptr(), coords.len()) },
        FracfemStatus::Ok
    );
    assert_eq!(coords[10], 5.0);

    let mut u = vec![0.0; n];
    assert_eq!(
        unsafe { fracfem_simulation_evaluate(sim, 0.5, u.as_mut_ptr(), u.len()) },
        FracfemStatus::Ok
    );
    let (mut e, mut im) = (0.0, 0.0);
    unsafe { fracfem_mittag_leffler(0.8, -(0.5f64).powf(0.8), 0.0, &mut e, &mut im) };
    assert!((((e - u[5]) / e).abs() - 4.3983e-3).abs() < 1e-6);

    let mut short = vec![0.0; n - 1];
    assert_eq!(
        unsafe { fracfem_simulation_evaluate(sim, 0.5, short.as_mut_ptr(), short.len()) },
        FracfemStatus::BufferTooSmall
    );
    assert_eq!(
        unsafe { fracfem_simulation_evaluate(sim, -1.0, u.as_mut_ptr(), u.len()) },
        FracfemStatus::InvalidArgument
    );
    unsafe { fracfem_simulation_free(sim) };
    unsafe { fracfem_simulation_free(ptr::null_mut()) };

    assert_eq!(
        unsafe { fracfem_simulation_from_benchmark(9, 10, 1, 0, 0.8, &mut sim) },
        FracfemStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { fracfem_simulation_node_count(ptr::null(), &mut n) },
        FracfemStatus::NullPointer
    );
}

#[test]
fn config_handle() {
    let json = CString::new(
        r#"{"problem": {"type": "benchmark", "name": "example3", "divisions": 4}, "gamma": 0.8, "times": [2.0]}"#,
    )
    .unwrap();
    let mut sim = ptr::null_mut();
    let s = unsafe { fracfem_simulation_from_config(json.as_ptr(), ptr::null(), &mut sim) };
    assert_eq!(s, FracfemStatus::Ok, "{}", last_error());
    let mut n = 0usize;
    unsafe { fracfem_simulation_node_count(sim, &mut n) };
    assert_eq!(n, 25);
    unsafe { fracfem_simulation_free(sim) };

    let bad = CString::new(
        r#"{"problem": {"type": "benchmark", "name": "example3"}, "gamma": 2.0, "times": [1]}"#,
    )
    .unwrap();
    let s = unsafe { fracfem_simulation_from_config(bad.as_ptr(), ptr::null(), &mut sim) };
    assert_eq!(s, FracfemStatus::Config);
    assert!(last_error().contains("gamma"));
}

#[test]
fn version_and_header() {
    let v = unsafe { CStr::from_ptr(fracfem_version()) }
        .to_str()
        .unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/fracfem.h")).unwrap();
    for name in [
        "fracfem_last_error_message",
        "fracfem_version",
        "fracfem_mittag_leffler",
        "fracfem_gamma",
        "fracfem_simulation_from_config",
        "fracfem_simulation_from_benchmark",
        "fracfem_simulation_node_count",
        "fracfem_simulation_node_coords",
        "fracfem_simulation_evaluate",
        "fracfem_simulation_free",
        "FRACFEM_STATUS_BUFFER_TOO_SMALL",
        "typedef struct FracfemSimulation FracfemSimulation",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = which_cc() else { return };
    let dir = tempfile_dir("header");
    let src = dir.join("probe.c");
    std::fs::write(
        &src,
        "#include \"fracfem.h\"\nint main(void) { return (int)FRACFEM_STATUS_OK; }\n",
    )
    .unwrap();
    let status = std::process::Command::new(cc)
        .args([
            "-fsyntax-only",
            "-Wall",
            "-Werror",
            "-I",
            concat!(env!("CARGO_MANIFEST_DIR"), "/include"),
        ])
        .arg(&src)
        .status()
        .unwrap();
    std::fs::remove_dir_all(&dir).ok();
    assert!(status.success());
}

fn which_cc() -> Result<&'static str, ()> {
    for cc in ["cc", "gcc", "clang"] {
        if std::process::Command::new(cc)
            .arg("--version")
            .output()
            .is_ok()
        {
            return Ok(cc);
        }
    }
    Err(())
}

fn tempfile_dir(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("fracfem-ffi-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

const C_CLIENT: &str = r#"
#include <math.h>
#include <stdio.h>
#include "fracfem.h"

int main(void) {
    double re = 0.0, im = 0.0;
    if (fracfem_mittag_leffler(0.8, -1.0, 0.0, &re, &im) != FRACFEM_STATUS_OK) return 1;
    if (fabs(re - 0.3869485786189748) > 1e-14) return 2;

    struct FracfemSimulation *sim = NULL;
    if (fracfem_simulation_from_benchmark(FRACFEM_BENCHMARK_DIFFUSION1D, 10, 1, 0, 0.8, &sim) != FRACFEM_STATUS_OK) return 3;
    size_t n = 0;
    fracfem_simulation_node_count(sim, &n);
    if (n != 11) return 4;
    double u[11];
    if (fracfem_simulation_evaluate(sim, 0.5, u, 2) != FRACFEM_STATUS_BUFFER_TOO_SMALL) return 5;
    if (fracfem_simulation_evaluate(sim, 0.5, u, 11) != FRACFEM_STATUS_OK) return 6;
    fracfem_simulation_free(sim);

    if (fracfem_simulation_from_benchmark(FRACFEM_BENCHMARK_DIFFUSION1D, 10, 1, 0, 1.5, &sim) == FRACFEM_STATUS_OK) return 7;
    if (fracfem_last_error_message() == NULL) return 8;
    printf("%.10f\n", u[5]);
    return 0;
}
"#;

#[test]
fn c_client_links_against_static_library() {
    let Ok(cc) = which_cc() else { return };
    // target/<profile>/deps/<test binary> -> target/<profile>
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap();
    let lib = profile_dir.join("libfracfem_ffi.a");
    if !lib.exists() {
        return;
    }
    let dir = tempfile_dir("client");
    let src = dir.join("client.c");
    let bin = dir.join("client");
    std::fs::write(&src, C_CLIENT).unwrap();
    let out = std::process::Command::new(cc)
        .args([
            "-Wall",
            "-Werror",
            "-I",
            concat!(env!("CARGO_MANIFEST_DIR"), "/include"),
        ])
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let run = std::process::Command::new(&bin).output().unwrap();
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(run.status.code(), Some(0));
    let u: f64 = String::from_utf8(run.stdout)
        .unwrap()
        .trim()
        .parse()
        .unwrap();
    assert!(u > 0.0 && u < 1.0);
}

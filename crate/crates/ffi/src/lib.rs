//! C ABI for fracfem.
//!
//! Every function returns a [`FracfemStatus`]; on failure the message is
//! available from [`fracfem_last_error_message`] on the same thread.
//! Simulations are opaque handles created by `fracfem_simulation_from_*` and
//! released with [`fracfem_simulation_free`]. A handle may be shared between
//! threads for evaluation; it is never mutated after creation.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use fracfem::benchmarks::BenchmarkCase;
use fracfem::config::LoadedConfig;
use fracfem::problem::Simulation;
use fracfem::solver::SolverOptions;
use fracfem::specfun::{gamma_fn, mittag_leffler, ComplexScalar, MLConfig};
use fracfem::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FracfemStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Config = 3,
    Solver = 4,
    BufferTooSmall = 5,
    Io = 6,
    Panic = 7,
}

/// Built-in verification problems.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FracfemBenchmark {
    Diffusion1d = 1,
    AdvectionDispersion1d = 2,
    Diffusion2d = 3,
    QuarterDisk = 4,
}

/// Opaque simulation handle.
pub struct FracfemSimulation {
    sim: Simulation,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(err: &Error) -> FracfemStatus {
    match fracfem::cli::exit_code(err) {
        2 => match err {
            Error::InvalidArgument(_) | Error::InvalidOrder(_) => FracfemStatus::InvalidArgument,
            _ => FracfemStatus::Config,
        },
        3 => FracfemStatus::Solver,
        _ => match err {
            Error::Io(_) => FracfemStatus::Io,
            _ => FracfemStatus::InvalidArgument,
        },
    }
}

fn guard(f: impl FnOnce() -> Result<(), (FracfemStatus, String)>) -> FracfemStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(String::new());
            FracfemStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            FracfemStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (FracfemStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(name: &str) -> (FracfemStatus, String) {
    (FracfemStatus::NullPointer, format!("`{name}` is null"))
}

/// Message of the last failed call on this thread ("" after a success).
/// The pointer stays valid until the next fracfem call on this thread.
#[no_mangle]
pub extern "C" fn fracfem_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn fracfem_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}

/// E_gamma(re + i im) with the default 1e-12 target accuracy.
///
/// # Safety
/// `out_re` and `out_im` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fracfem_mittag_leffler(
    gamma: f64,
    re: f64,
    im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> FracfemStatus {
    guard(|| {
        if out_re.is_null() {
            return Err(null("out_re"));
        }
        if out_im.is_null() {
            return Err(null("out_im"));
        }
        let z = mittag_leffler(gamma, ComplexScalar::new(re, im), &MLConfig::default())
            .map_err(lib_err)?;
        unsafe {
            *out_re = z.re;
            *out_im = z.im;
        }
        Ok(())
    })
}

/// Gamma function.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fracfem_gamma(x: f64, out: *mut f64) -> FracfemStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let v = gamma_fn(x).map_err(lib_err)?;
        unsafe { *out = v };
        Ok(())
    })
}

fn boxed(sim: Simulation, out: *mut *mut FracfemSimulation) {
    let handle = Box::into_raw(Box::new(FracfemSimulation { sim }));
    unsafe { *out = handle };
}

/// Builds a simulation from a JSON run configuration. Relative paths in the
/// config resolve against `base_dir` (may be null: current directory).
///
/// # Safety
/// `json` and `base_dir` (if non-null) must be NUL-terminated strings; `out`
/// must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fracfem_simulation_from_config(
    json: *const c_char,
    base_dir: *const c_char,
    out: *mut *mut FracfemSimulation,
) -> FracfemStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let text = unsafe { CStr::from_ptr(json) }.to_str().map_err(|e| {
            (
                FracfemStatus::InvalidArgument,
                format!("json is not UTF-8: {e}"),
            )
        })?;
        let base = if base_dir.is_null() {
            PathBuf::new()
        } else {
            PathBuf::from(unsafe { CStr::from_ptr(base_dir) }.to_str().map_err(|e| {
                (
                    FracfemStatus::InvalidArgument,
                    format!("base_dir is not UTF-8: {e}"),
                )
            })?)
        };
        let cfg = LoadedConfig::from_str(text, base).map_err(lib_err)?;
        let problem = cfg.build_problem().map_err(lib_err)?;
        let sim =
            Simulation::new(problem, cfg.config.gamma, cfg.solver_options()).map_err(lib_err)?;
        boxed(sim, out);
        Ok(())
    })
}

/// Builds a built-in benchmark. `divisions` and `order` apply to the 1D and
/// square cases, `refine` to the quarter disk (3·4^refine elements).
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fracfem_simulation_from_benchmark(
    benchmark: u32,
    divisions: usize,
    order: usize,
    refine: u32,
    gamma: f64,
    out: *mut *mut FracfemSimulation,
) -> FracfemStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let case = match benchmark {
            1 => BenchmarkCase::diffusion_1d(divisions, order),
            2 => BenchmarkCase::advection_dispersion_1d(divisions, order),
            3 => BenchmarkCase::diffusion_2d(divisions),
            4 => BenchmarkCase::quarter_disk(refine),
            b => {
                return Err((
                    FracfemStatus::InvalidArgument,
                    format!("unknown benchmark {b}"),
                ))
            }
        };
        let problem = case.problem().map_err(lib_err)?;
        let sim = Simulation::new(problem, gamma, SolverOptions::default()).map_err(lib_err)?;
        boxed(sim, out);
        Ok(())
    })
}

fn handle<'a>(sim: *const FracfemSimulation) -> Result<&'a Simulation, (FracfemStatus, String)> {
    if sim.is_null() {
        return Err(null("sim"));
    }
    Ok(unsafe { &(*sim).sim })
}

/// Number of mesh nodes.
///
/// # Safety
/// `sim` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fracfem_simulation_node_count(
    sim: *const FracfemSimulation,
    out: *mut usize,
) -> FracfemStatus {
    guard(|| {
        let s = handle(sim)?;
        if out.is_null() {
            return Err(null("out"));
        }
        unsafe { *out = s.mesh().node_count() };
        Ok(())
    })
}

/// Node coordinates as interleaved (x, y) pairs; `len` >= 2·node_count.
///
/// # Safety
/// `sim` must be a live handle and `out` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn fracfem_simulation_node_coords(
    sim: *const FracfemSimulation,
    out: *mut f64,
    len: usize,
) -> FracfemStatus {
    guard(|| {
        let s = handle(sim)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let need = 2 * s.mesh().node_count();
        if len < need {
            return Err((
                FracfemStatus::BufferTooSmall,
                format!("need {need} values, buffer holds {len}"),
            ));
        }
        let buf = unsafe { std::slice::from_raw_parts_mut(out, need) };
        for (chunk, node) in buf.chunks_exact_mut(2).zip(&s.mesh().nodes) {
            chunk.copy_from_slice(&node.coords);
        }
        Ok(())
    })
}

/// Nodal solution at time `t` >= 0; `len` >= node_count.
///
/// # Safety
/// `sim` must be a live handle and `out` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn fracfem_simulation_evaluate(
    sim: *const FracfemSimulation,
    t: f64,
    out: *mut f64,
    len: usize,
) -> FracfemStatus {
    guard(|| {
        let s = handle(sim)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let n = s.mesh().node_count();
        if len < n {
            return Err((
                FracfemStatus::BufferTooSmall,
                format!("need {n} values, buffer holds {len}"),
            ));
        }
        let series = s.evaluate(&[t]).map_err(lib_err)?;
        let buf = unsafe { std::slice::from_raw_parts_mut(out, n) };
        buf.copy_from_slice(&series.values[0]);
        Ok(())
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `sim` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fracfem_simulation_free(sim: *mut FracfemSimulation) {
    if !sim.is_null() {
        drop(unsafe { Box::from_raw(sim) });
    }
}

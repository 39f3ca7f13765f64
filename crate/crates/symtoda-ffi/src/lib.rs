//! C ABI for the symtoda library.
//!
//! Conventions:
//!
//! * objects cross the boundary as opaque handles (`StReport`,
//!   `StTrajectory`) created by `st_*_run` calls and released with the
//!   matching `st_*_free`;
//! * every fallible call returns an [`StStatus`] code and writes results
//!   through out-pointers; the last error message is retrievable per
//!   thread with [`st_last_error_message`];
//! * matrices are passed as dense row-major `double` buffers of length
//!   n·n, owned by the caller;
//! * strings returned by `st_report_to_json` are NUL-terminated and must
//!   be released with [`st_string_free`].
//!
//! The C header is generated into `include/symtoda.h` at build time.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use symtoda::cli::{cmd_verify, VerifyConfig};
use symtoda::dynamics::{calibrate_time_scale, simulate_trajectory, ReflectionHamiltonian, Trajectory};
use symtoda::error::Error;
use symtoda::linalg::Mat;
use symtoda::report::Report;
use symtoda::sampling::Sampler;
use symtoda::symspace::AnElement;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StStatus {
    Ok = 0,
    /// Input failed a structural precondition.
    InvalidInput = 1,
    /// A numerical routine broke down.
    NumericalError = 2,
    /// The point is non-generic for the requested operation.
    DegeneratePoint = 3,
    /// A verified identity exceeded its tolerance.
    VerificationFailure = 4,
    /// A required pointer argument was NULL.
    NullPointer = 5,
    /// A string argument was not valid UTF-8.
    Utf8Error = 6,
    /// An index was out of range.
    IndexOutOfRange = 7,
    /// The provided buffer is too small; required size is reported.
    BufferTooSmall = 8,
    /// An internal panic was caught at the boundary.
    Panic = 9,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let sanitized: String = msg.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(err: &Error) -> StStatus {
    set_error(&err.to_string());
    match err {
        Error::InvalidInput(_) | Error::Json(_) | Error::Io(_) => StStatus::InvalidInput,
        Error::Numerical(_) => StStatus::NumericalError,
        Error::Degenerate(_) => StStatus::DegeneratePoint,
        Error::Verification { .. } => StStatus::VerificationFailure,
    }
}

fn guard<F: FnOnce() -> StStatus>(f: F) -> StStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic caught at the FFI boundary");
            StStatus::Panic
        }
    }
}

/// Copy the last error message on this thread into `buf` (NUL-terminated,
/// truncated to `cap`); `written` receives the full length including NUL.
///
/// # Safety
/// `buf` must point to `cap` writable bytes; `written` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn st_last_error_message(
    buf: *mut c_char,
    cap: usize,
    written: *mut usize,
) -> StStatus {
    LAST_ERROR.with(|slot| {
        let msg = slot.borrow();
        let bytes = msg.as_bytes_with_nul();
        if !written.is_null() {
            *written = bytes.len();
        }
        if buf.is_null() {
            return StStatus::Ok;
        }
        if cap == 0 {
            return StStatus::BufferTooSmall;
        }
        let n = bytes.len().min(cap - 1);
        ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
        *buf.add(n) = 0;
        if bytes.len() > cap {
            StStatus::BufferTooSmall
        } else {
            StStatus::Ok
        }
    })
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn st_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ---------------------------------------------------------------------------
// verification reports
// ---------------------------------------------------------------------------

/// Opaque verification report handle.
pub struct StReport {
    inner: Report,
}

/// Run the verification suites at size n with the given seed; `suite` may
/// be NULL to run all suites, or name one (e.g. "r-identities").
/// On success `*out` owns a report; release with [`st_report_free`].
///
/// # Safety
/// `out` must be a valid pointer; `suite` must be NULL or a NUL-terminated
/// UTF-8 string.
#[no_mangle]
pub unsafe extern "C" fn st_verify_run(
    n: u32,
    seed: u64,
    suite: *const c_char,
    out: *mut *mut StReport,
) -> StStatus {
    if out.is_null() {
        return StStatus::NullPointer;
    }
    let suite_name = if suite.is_null() {
        None
    } else {
        match CStr::from_ptr(suite).to_str() {
            Ok(s) => Some(s.to_string()),
            Err(_) => {
                set_error("suite name is not valid UTF-8");
                return StStatus::Utf8Error;
            }
        }
    };
    guard(|| {
        let config = VerifyConfig {
            n: n as usize,
            seed,
            suite: suite_name.clone(),
            tol_overrides: vec![],
        };
        match cmd_verify(&config) {
            Ok(report) => {
                *out = Box::into_raw(Box::new(StReport { inner: report }));
                StStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Whether every check of the report passed.
///
/// # Safety
/// `report` must be a live handle from [`st_verify_run`].
#[no_mangle]
pub unsafe extern "C" fn st_report_pass(report: *const StReport) -> bool {
    !report.is_null() && (*report).inner.pass()
}

/// Number of checks in the report.
///
/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn st_report_check_count(report: *const StReport) -> usize {
    if report.is_null() {
        0
    } else {
        (*report).inner.checks().len()
    }
}

/// Copy the name of check `index` into `buf` (NUL-terminated, truncated
/// to `cap`); `written` receives the full length including NUL.
///
/// # Safety
/// `report` must be a live handle; `buf` must point to `cap` writable
/// bytes; `written` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn st_report_check_name(
    report: *const StReport,
    index: usize,
    buf: *mut c_char,
    cap: usize,
    written: *mut usize,
) -> StStatus {
    if report.is_null() {
        return StStatus::NullPointer;
    }
    let checks = (*report).inner.checks();
    let Some(check) = checks.get(index) else {
        return StStatus::IndexOutOfRange;
    };
    let bytes = check.name.as_bytes();
    if !written.is_null() {
        *written = bytes.len() + 1;
    }
    if buf.is_null() || cap == 0 {
        return StStatus::BufferTooSmall;
    }
    let n = bytes.len().min(cap - 1);
    ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
    *buf.add(n) = 0;
    if bytes.len() + 1 > cap {
        StStatus::BufferTooSmall
    } else {
        StStatus::Ok
    }
}

/// Residual, tolerance and verdict of check `index`.
///
/// # Safety
/// `report` must be a live handle; out-pointers may be NULL to skip.
#[no_mangle]
pub unsafe extern "C" fn st_report_check_values(
    report: *const StReport,
    index: usize,
    residual: *mut f64,
    tol: *mut f64,
    pass: *mut bool,
) -> StStatus {
    if report.is_null() {
        return StStatus::NullPointer;
    }
    let Some(check) = (*report).inner.checks().get(index) else {
        return StStatus::IndexOutOfRange;
    };
    if !residual.is_null() {
        *residual = check.residual;
    }
    if !tol.is_null() {
        *tol = check.tol;
    }
    if !pass.is_null() {
        *pass = check.pass;
    }
    StStatus::Ok
}

/// Serialize the report to JSON; the returned string must be released
/// with [`st_string_free`].
///
/// # Safety
/// `report` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn st_report_to_json(
    report: *const StReport,
    out: *mut *mut c_char,
) -> StStatus {
    if report.is_null() || out.is_null() {
        return StStatus::NullPointer;
    }
    match (*report).inner.to_json() {
        Ok(json) => match CString::new(json) {
            Ok(s) => {
                *out = s.into_raw();
                StStatus::Ok
            }
            Err(_) => {
                set_error("report JSON contained an interior NUL");
                StStatus::Utf8Error
            }
        },
        Err(e) => status_of(&e),
    }
}

/// Release a report handle.
///
/// # Safety
/// `report` must come from [`st_verify_run`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn st_report_free(report: *mut StReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

// ---------------------------------------------------------------------------
// trajectories
// ---------------------------------------------------------------------------

/// Opaque trajectory handle.
pub struct StTrajectory {
    inner: Trajectory,
    n: usize,
}

unsafe fn read_matrix(n: usize, data: *const f64) -> Mat {
    let slice = std::slice::from_raw_parts(data, n * n);
    Mat::from_row_slice(n, n, slice)
}

/// Simulate the reflection flow of H_k. `b0` may be NULL (a seeded
/// generic point is drawn) or point to a row-major n·n upper-triangular
/// matrix. `samples` grid rows cover [t0, t1]. Release the trajectory
/// with [`st_trajectory_free`].
///
/// # Safety
/// `out` must be valid; `b0` must be NULL or point to n·n doubles.
#[no_mangle]
pub unsafe extern "C" fn st_simulate_run(
    n: u32,
    seed: u64,
    trace_power: u32,
    b0: *const f64,
    t0: f64,
    t1: f64,
    samples: usize,
    out: *mut *mut StTrajectory,
) -> StStatus {
    if out.is_null() {
        return StStatus::NullPointer;
    }
    let b0_mat = if b0.is_null() {
        None
    } else {
        Some(read_matrix(n as usize, b0))
    };
    guard(|| {
        let run = || -> Result<Trajectory, Error> {
            let h = ReflectionHamiltonian::power(trace_power)?;
            h.check_rank(n as usize)?;
            let b0 = match &b0_mat {
                Some(m) => AnElement::new(m.clone())?,
                None => Sampler::new(seed).generic_an(n as usize),
            };
            simulate_trajectory(&h, &b0, t0, t1, samples)
        };
        match run() {
            Ok(traj) => {
                *out = Box::into_raw(Box::new(StTrajectory {
                    inner: traj,
                    n: n as usize,
                }));
                StStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Number of sampled rows.
///
/// # Safety
/// `traj` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn st_trajectory_sample_count(traj: *const StTrajectory) -> usize {
    if traj.is_null() {
        0
    } else {
        (*traj).inner.len()
    }
}

/// Matrix size n of the trajectory points.
///
/// # Safety
/// `traj` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn st_trajectory_dim(traj: *const StTrajectory) -> u32 {
    if traj.is_null() {
        0
    } else {
        (*traj).n as u32
    }
}

/// Time, Hamiltonian value, the n·n row-major point, the n actions and
/// the n angle coordinates of row `index`. Out-pointers may be NULL to
/// skip; `point` needs n·n doubles, `actions` and `angles` need n each.
///
/// # Safety
/// `traj` must be a live handle and the non-NULL buffers adequately sized.
#[no_mangle]
pub unsafe extern "C" fn st_trajectory_sample(
    traj: *const StTrajectory,
    index: usize,
    time: *mut f64,
    hamiltonian: *mut f64,
    point: *mut f64,
    actions: *mut f64,
    angles: *mut f64,
) -> StStatus {
    if traj.is_null() {
        return StStatus::NullPointer;
    }
    let t = &(*traj).inner;
    let n = (*traj).n;
    if index >= t.len() {
        return StStatus::IndexOutOfRange;
    }
    if !time.is_null() {
        *time = t.times[index];
    }
    if !hamiltonian.is_null() {
        *hamiltonian = t.hamiltonian[index];
    }
    if !point.is_null() {
        let m = t.points[index].matrix();
        for i in 0..n {
            for j in 0..n {
                *point.add(i * n + j) = m[(i, j)];
            }
        }
    }
    if !actions.is_null() {
        for (i, h) in t.actions[index].iter().enumerate() {
            *actions.add(i) = *h;
        }
    }
    if !angles.is_null() {
        for (i, r) in t.angles[index].r.iter().enumerate() {
            *angles.add(i) = *r;
        }
    }
    StStatus::Ok
}

/// Release a trajectory handle.
///
/// # Safety
/// `traj` must come from [`st_simulate_run`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn st_trajectory_free(traj: *mut StTrajectory) {
    if !traj.is_null() {
        drop(Box::from_raw(traj));
    }
}

// ---------------------------------------------------------------------------
// direct calls
// ---------------------------------------------------------------------------

/// Classify the double Bruhat cell of an upper-triangular point:
/// 1-based one-line images (buffer of n u32), the Coxeter length, the
/// torus-fixed dimension, the predicted leaf dimension and the measured
/// bivector rank. Out-pointers may be NULL to skip.
///
/// # Safety
/// `b` must point to n·n doubles; `images` to n u32 when non-NULL.
#[no_mangle]
pub unsafe extern "C" fn st_leaf_classify(
    n: u32,
    b: *const f64,
    images: *mut u32,
    length: *mut u32,
    torus_fixed: *mut u32,
    predicted: *mut u32,
    measured: *mut u32,
) -> StStatus {
    if b.is_null() {
        return StStatus::NullPointer;
    }
    let matrix = read_matrix(n as usize, b);
    guard(|| {
        use symtoda::bruhat;
        use symtoda::poisson::{bivector_rank, Chart, GroupElement};
        let run = || -> Result<(bruhat::WeylElement, usize, usize), Error> {
            let point = AnElement::new(matrix.clone())?;
            let u = bruhat::bruhat_cell(&point)?;
            let predicted = bruhat::predicted_leaf_dimension(&u)?;
            let rank = bivector_rank(&GroupElement::from(&point), Chart::An)?;
            Ok((u, predicted, rank))
        };
        match run() {
            Ok((u, predicted_dim, rank)) => {
                if !images.is_null() {
                    for (i, &v) in u.images().iter().enumerate() {
                        *images.add(i) = (v + 1) as u32;
                    }
                }
                if !length.is_null() {
                    *length = bruhat::length(&u) as u32;
                }
                if !torus_fixed.is_null() {
                    *torus_fixed = bruhat::torus_fixed_dimension(&u) as u32;
                }
                if !predicted.is_null() {
                    *predicted = predicted_dim as u32;
                }
                if !measured.is_null() {
                    *measured = rank as u32;
                }
                if rank == predicted_dim {
                    StStatus::Ok
                } else {
                    set_error("measured bivector rank differs from the predicted leaf dimension");
                    StStatus::VerificationFailure
                }
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Translate b along its orbit by the positive diagonal D (n entries,
/// det 1): writes the translated point and optionally the witness β, both
/// row-major n·n.
///
/// # Safety
/// `b` and `d` must point to n·n and n doubles; `translated` to n·n
/// writable doubles; `witness` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn st_orbit_translate(
    n: u32,
    b: *const f64,
    d: *const f64,
    translated: *mut f64,
    witness: *mut f64,
) -> StStatus {
    if b.is_null() || d.is_null() || translated.is_null() {
        return StStatus::NullPointer;
    }
    let nn = n as usize;
    let matrix = read_matrix(nn, b);
    let diag: Vec<f64> = std::slice::from_raw_parts(d, nn).to_vec();
    guard(|| {
        let run = || -> Result<symtoda::actionangle::LevelSetTranslation, Error> {
            let b = AnElement::new(matrix.clone())?;
            symtoda::actionangle::level_set_translate(&b, &diag)
        };
        match run() {
            Ok(moved) => {
                let m = moved.translated.matrix();
                for i in 0..nn {
                    for j in 0..nn {
                        *translated.add(i * nn + j) = m[(i, j)];
                    }
                }
                if !witness.is_null() {
                    let w = moved.witness.matrix();
                    for i in 0..nn {
                        for j in 0..nn {
                            *witness.add(i * nn + j) = w[(i, j)];
                        }
                    }
                }
                StStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// The calibrated time constant between the factorization flow and the
/// bracket vector field, with its collinearity residual.
///
/// # Safety
/// Out-pointers may be NULL to skip.
#[no_mangle]
pub unsafe extern "C" fn st_time_scale(lambda: *mut f64, residual: *mut f64) -> StStatus {
    guard(|| match calibrate_time_scale() {
        Ok((l, r)) => {
            if !lambda.is_null() {
                *lambda = l;
            }
            if !residual.is_null() {
                *residual = r;
            }
            StStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

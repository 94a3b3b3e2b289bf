//! C interface to `curvedist`.
//!
//! Curves and configurations cross the boundary as opaque handles. Every
//! fallible call returns a [`CurvedistStatus`]; on failure the message is
//! available from [`curvedist_last_error`] on the same thread. Strings handed
//! out by the library must be released with [`curvedist_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use curvedist::algebra::scalar::parse_rational;
use curvedist::curves::{PlaneCurve, Point};
use curvedist::elekes::{distance_set, Config};
use curvedist::harness::{analyze_config, io, verify_all, Caps, HarnessError};
use curvedist::symmetry::{find_symmetries, SymmetryList};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurvedistStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    /// A size cap or search budget was exceeded.
    Budget = 4,
    /// An internal error; the library state is still usable.
    Panic = 5,
}

/// A plane algebraic curve with rational coefficients.
pub struct CurvedistCurve {
    curve: PlaneCurve,
    base: Option<Point>,
}

/// Two point sets on their host curves, with the seed they were sampled with.
pub struct CurvedistConfig {
    config: Config,
    seed: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(CurvedistStatus, String);

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        let status = if e.exit_code() == 3 { CurvedistStatus::Budget } else { CurvedistStatus::InvalidInput };
        Failure(status, e.to_string())
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(CurvedistStatus::InvalidInput, msg.into())
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

/// Runs `f`, recording any error or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> CurvedistStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CurvedistStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "internal error".into());
            set_error(&msg);
            CurvedistStatus::Panic
        }
    }
}

unsafe fn c_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(CurvedistStatus::NullArgument, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(CurvedistStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(CurvedistStatus::NullArgument, "null handle".into()))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(CurvedistStatus::NullArgument, "null output pointer".into()));
    }
    out.write(value);
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// The message of the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next call into the library on this
/// thread.
#[no_mangle]
pub extern "C" fn curvedist_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn curvedist_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a curve such as `"y - x^2"` or a JSON curve object.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer. On
/// success `*out` owns a handle to release with [`curvedist_curve_free`].
#[no_mangle]
pub unsafe extern "C" fn curvedist_curve_parse(text: *const c_char, out: *mut *mut CurvedistCurve) -> CurvedistStatus {
    guard(|| {
        let t = c_str(text)?;
        let v = serde_json::from_str(t).unwrap_or_else(|_| serde_json::Value::String(t.trim().to_string()));
        let (curve, base) = io::curve_from_value(&v)?;
        put(out, Box::into_raw(Box::new(CurvedistCurve { curve, base })))
    })
}

/// # Safety
/// `curve` must be NULL or a handle from [`curvedist_curve_parse`] that has
/// not been freed.
#[no_mangle]
pub unsafe extern "C" fn curvedist_curve_free(curve: *mut CurvedistCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

/// Total degree of the curve, or 0 for a NULL handle.
///
/// # Safety
/// `curve` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn curvedist_curve_degree(curve: *const CurvedistCurve) -> u32 {
    curve.as_ref().map_or(0, |c| c.curve.degree())
}

/// The defining polynomial as text; free with [`curvedist_string_free`].
/// Returns NULL for a NULL handle.
///
/// # Safety
/// `curve` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn curvedist_curve_to_string(curve: *const CurvedistCurve) -> *mut c_char {
    curve.as_ref().map_or(ptr::null_mut(), |c| into_c_string(c.curve.poly().to_string()))
}

/// Exact membership test for a rational point given as `"p"` or `"p/q"`.
///
/// # Safety
/// `curve` must be a live handle, `x` and `y` NUL-terminated strings and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn curvedist_curve_contains(
    curve: *const CurvedistCurve,
    x: *const c_char,
    y: *const c_char,
    out: *mut bool,
) -> CurvedistStatus {
    guard(|| {
        let c = handle(curve)?;
        let coord = |s: &str| parse_rational(s).ok_or_else(|| invalid(format!("not a rational number: {s:?}")));
        let p = Point::from_rationals(coord(c_str(x)?)?, coord(c_str(y)?)?);
        put(out, c.curve.contains_point(&p))
    })
}

/// Number of distinct distances within a point set on `curve`. `points` is a
/// JSON array of points or a generator object; `seed` drives random sampling.
///
/// # Safety
/// `curve` must be a live handle, `points` a NUL-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn curvedist_distinct_distances(
    curve: *const CurvedistCurve,
    points: *const c_char,
    seed: u64,
    out: *mut usize,
) -> CurvedistStatus {
    guard(|| {
        let c = handle(curve)?;
        let v = serde_json::from_str(c_str(points)?).map_err(|e| invalid(format!("points: {e}")))?;
        let s = io::points_from_value(&v, &c.curve, c.base.as_ref(), seed)?;
        put(out, distance_set(&s, &s).len())
    })
}

/// Size of the curve's symmetry group. For lines and circles `*infinite` is
/// set and `*count` is 0.
///
/// # Safety
/// `curve` must be a live handle; `count` and `infinite` must be writable.
#[no_mangle]
pub unsafe extern "C" fn curvedist_symmetry_count(
    curve: *const CurvedistCurve,
    count: *mut usize,
    infinite: *mut bool,
) -> CurvedistStatus {
    guard(|| {
        let c = handle(curve)?;
        let list = find_symmetries(&c.curve).map_err(HarnessError::from)?;
        let (n, inf) = match &list {
            SymmetryList::Finite { group, .. } => (group.len(), false),
            SymmetryList::InfiniteFamily { .. } => (0, true),
        };
        put(count, n)?;
        put(infinite, inf)
    })
}

/// Reads a configuration from JSON with keys `c1`, `s1`, `c2`, `s2` (and an
/// optional `seed`).
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable. On success
/// `*out` owns a handle to release with [`curvedist_config_free`].
#[no_mangle]
pub unsafe extern "C" fn curvedist_config_from_json(
    json: *const c_char,
    out: *mut *mut CurvedistConfig,
) -> CurvedistStatus {
    guard(|| {
        let (config, seed) = io::config_from_json(c_str(json)?)?;
        put(out, Box::into_raw(Box::new(CurvedistConfig { config, seed })))
    })
}

/// # Safety
/// `config` must be NULL or a handle from [`curvedist_config_from_json`]
/// that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn curvedist_config_free(config: *mut CurvedistConfig) {
    if !config.is_null() {
        drop(Box::from_raw(config));
    }
}

/// `|S₁|` and `|S₂|`.
///
/// # Safety
/// `config` must be a live handle; `m` and `n` must be writable.
#[no_mangle]
pub unsafe extern "C" fn curvedist_config_sizes(
    config: *const CurvedistConfig,
    m: *mut usize,
    n: *mut usize,
) -> CurvedistStatus {
    guard(|| {
        let c = handle(config)?;
        put(m, c.config.m())?;
        put(n, c.config.n())
    })
}

/// Normalizes the configuration and reports quadruples, incidences and the
/// partition as a JSON document, written to `*out` (free with
/// [`curvedist_string_free`]). A zero cap selects the default.
///
/// # Safety
/// `config` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn curvedist_config_analyze(
    config: *const CurvedistConfig,
    max_distances: usize,
    max_incidences: usize,
    out: *mut *mut c_char,
) -> CurvedistStatus {
    guard(|| {
        let c = handle(config)?;
        let d = Caps::default();
        let caps = Caps {
            distances: if max_distances == 0 { d.distances } else { max_distances },
            incidences: if max_incidences == 0 { d.incidences } else { max_incidences },
        };
        let big = c.config.m().max(c.config.n());
        if big > caps.distances {
            return Err(HarnessError::Budget { what: "set size", limit: caps.distances, actual: big }.into());
        }
        let report = analyze_config(&c.config, c.seed, &caps)?;
        put(out, into_c_string(report.to_string()))
    })
}

/// Runs the seeded property suites within `budget`. The JSON report goes to
/// `*report` (free with [`curvedist_string_free`]) and `*exit_code` is 0 when
/// all suites pass, 1 on a failure and 3 when suites were skipped.
///
/// # Safety
/// `report` and `exit_code` must be writable.
#[no_mangle]
pub unsafe extern "C" fn curvedist_verify(budget: u64, report: *mut *mut c_char, exit_code: *mut i32) -> CurvedistStatus {
    guard(|| {
        if report.is_null() || exit_code.is_null() {
            return Err(Failure(CurvedistStatus::NullArgument, "null output pointer".into()));
        }
        let r = verify_all(budget, None);
        let json = serde_json::to_string(&r).map_err(|e| Failure(CurvedistStatus::Panic, e.to_string()))?;
        put(exit_code, r.exit_code())?;
        put(report, into_c_string(json))
    })
}

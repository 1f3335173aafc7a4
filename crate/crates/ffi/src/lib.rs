//! C interface to `metrize`.
//!
//! Objects cross the boundary as opaque handles created by `*_new` /
//! `*_from_json` and released with the matching `*_free`. Every fallible
//! call returns a [`MtzStatus`]; on failure a message for the calling thread
//! is available from [`mtz_last_error`]. Strings returned through out
//! parameters are owned by the caller and released with [`mtz_string_free`].
//!
//! Point sets are `uint32_t` masks (bit `i` is point `i`), families of opens
//! are `uint64_t` masks over the indices of the opens in canonical order.
#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use metrize::bns::{bns_verdict, build_metric};
use metrize::formats::{QuantaleDoc, TopologyDoc};
use metrize::omega::{enumerate_omega, flagg_distance, flagg_family, flagg_space, OmegaElement};
use metrize::quantale::{CheckPolicy, ValueQuantaleReport};
use metrize::topology::enumerate_topologies;
use metrize::{Error, FiniteQuantale, FiniteTopology};

/// Result codes. The first five match the command-line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MtzStatus {
    Ok = 0,
    /// The checked property does not hold.
    False = 1,
    /// An argument or document failed validation.
    Invalid = 2,
    /// Malformed JSON or text that is not UTF-8.
    Format = 3,
    /// A size bound was exceeded, including a caller buffer that is too small.
    Capacity = 4,
    NullPointer = 5,
    Panic = 6,
}

/// A validated finite topology.
pub struct MtzTopology {
    inner: FiniteTopology,
}

/// A finite quantale given by its order and addition tables.
pub struct MtzQuantale {
    inner: FiniteQuantale,
}

/// Separation and basis conditions of a topology.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MtzBnsVerdict {
    pub t0: bool,
    pub regular: bool,
    pub sigma_discrete: bool,
    pub metrizable: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).unwrap_or_default());
}

fn status_of(e: &Error) -> MtzStatus {
    match e {
        Error::Io(_) | Error::Format(_) => MtzStatus::Format,
        Error::Capacity(_) => MtzStatus::Capacity,
        Error::NotMetrizable { .. } => MtzStatus::False,
        _ => MtzStatus::Invalid,
    }
}

/// Runs `f`, recording errors and converting panics into [`MtzStatus::Panic`].
fn guard(f: impl FnOnce() -> Result<MtzStatus, (MtzStatus, String)>) -> MtzStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => {
            set_error("");
            status
        }
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            MtzStatus::Panic
        }
    }
}

fn fail(e: Error) -> (MtzStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (MtzStatus, String) {
    (MtzStatus::NullPointer, format!("{what} is null"))
}

unsafe fn topology<'a>(t: *const MtzTopology) -> Result<&'a FiniteTopology, (MtzStatus, String)> {
    t.as_ref().map(|t| &t.inner).ok_or_else(|| null("topology"))
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, (MtzStatus, String)> {
    if s.is_null() {
        return Err(null("string"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| (MtzStatus::Format, "string is not UTF-8".to_string()))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), (MtzStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn json_string(v: &ValueQuantaleReport) -> Result<*mut c_char, (MtzStatus, String)> {
    let s = serde_json::to_string(v).map_err(|e| fail(e.into()))?;
    Ok(CString::new(s).map_err(|_| (MtzStatus::Format, "interior NUL".to_string()))?.into_raw())
}

/// Message for the last failed call on this thread, or `""`. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn mtz_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn mtz_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Accepts null.
#[no_mangle]
pub unsafe extern "C" fn mtz_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Validates `n_opens` point-set masks on `n_points` points as a topology.
#[no_mangle]
pub unsafe extern "C" fn mtz_topology_new(
    n_points: u32,
    opens: *const u32,
    n_opens: usize,
    out: *mut *mut MtzTopology,
) -> MtzStatus {
    guard(|| {
        if opens.is_null() && n_opens > 0 {
            return Err(null("opens"));
        }
        let family = if n_opens == 0 { &[][..] } else { std::slice::from_raw_parts(opens, n_opens) };
        let inner = FiniteTopology::validate(n_points as usize, family).map_err(|v| fail(v.into()))?;
        write(out, Box::into_raw(Box::new(MtzTopology { inner })))?;
        Ok(MtzStatus::Ok)
    })
}

/// Parses a topology document `{"points": [...], "opens": [[...], ...]}`.
#[no_mangle]
pub unsafe extern "C" fn mtz_topology_from_json(json: *const c_char, out: *mut *mut MtzTopology) -> MtzStatus {
    guard(|| {
        let doc: TopologyDoc = serde_json::from_str(text(json)?).map_err(|e| fail(e.into()))?;
        let inner = doc.to_topology().map_err(fail)?;
        write(out, Box::into_raw(Box::new(MtzTopology { inner })))?;
        Ok(MtzStatus::Ok)
    })
}

/// The discrete topology on `n_points <= 16` points.
#[no_mangle]
pub unsafe extern "C" fn mtz_topology_discrete(n_points: u32, out: *mut *mut MtzTopology) -> MtzStatus {
    guard(|| {
        let inner = FiniteTopology::discrete(n_points as usize).map_err(fail)?;
        write(out, Box::into_raw(Box::new(MtzTopology { inner })))?;
        Ok(MtzStatus::Ok)
    })
}

#[no_mangle]
pub unsafe extern "C" fn mtz_topology_free(t: *mut MtzTopology) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Number of points, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn mtz_topology_points(t: *const MtzTopology) -> u32 {
    t.as_ref().map_or(0, |t| t.inner.points() as u32)
}

/// Number of opens, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn mtz_topology_open_count(t: *const MtzTopology) -> usize {
    t.as_ref().map_or(0, |t| t.inner.opens().len())
}

/// Copies the opens in canonical (ascending mask) order into `buf`.
/// `written` receives the number of opens; if `cap` is too small nothing is
/// copied and the result is [`MtzStatus::Capacity`].
#[no_mangle]
pub unsafe extern "C" fn mtz_topology_opens(
    t: *const MtzTopology,
    buf: *mut u32,
    cap: usize,
    written: *mut usize,
) -> MtzStatus {
    guard(|| {
        let opens = topology(t)?.opens();
        write(written, opens.len())?;
        if cap < opens.len() {
            return Err((MtzStatus::Capacity, format!("buffer holds {cap}, need {}", opens.len())));
        }
        if !opens.is_empty() {
            if buf.is_null() {
                return Err(null("buffer"));
            }
            ptr::copy_nonoverlapping(opens.as_ptr(), buf, opens.len());
        }
        Ok(MtzStatus::Ok)
    })
}

/// Counts the labeled topologies on `n <= 4` points.
#[no_mangle]
pub unsafe extern "C" fn mtz_enumerate_topologies_count(n: u32, count: *mut usize) -> MtzStatus {
    guard(|| {
        let all = enumerate_topologies(n as usize).map_err(fail)?;
        write(count, all.len())?;
        Ok(MtzStatus::Ok)
    })
}

/// Fills `verdict`; returns [`MtzStatus::False`] when the space is not metrizable.
#[no_mangle]
pub unsafe extern "C" fn mtz_bns_verdict(t: *const MtzTopology, verdict: *mut MtzBnsVerdict) -> MtzStatus {
    guard(|| {
        let v = bns_verdict(topology(t)?);
        let out =
            MtzBnsVerdict { t0: v.t0, regular: v.regular, sigma_discrete: v.sigma_discrete, metrizable: v.metrizable };
        write(verdict, out)?;
        Ok(if v.metrizable { MtzStatus::Ok } else { MtzStatus::False })
    })
}

/// Builds the unit metric of a metrizable topology and reports whether its
/// open-ball topology equals the input. Refusals return [`MtzStatus::False`]
/// with the failed predicates in the error message.
#[no_mangle]
pub unsafe extern "C" fn mtz_build_metric_round_trip(t: *const MtzTopology, equal: *mut bool) -> MtzStatus {
    guard(|| {
        let t = topology(t)?;
        let back = build_metric(t).and_then(|m| m.open_sets()).map_err(fail)?;
        write(equal, &back == t)?;
        Ok(if &back == t { MtzStatus::Ok } else { MtzStatus::False })
    })
}

/// The family `{U : x ∈ U ⟹ y ∈ U}` whose down-set is the distance `d(x, y)`
/// of the Ω(τ)-continuity space.
#[no_mangle]
pub unsafe extern "C" fn mtz_flagg_family(t: *const MtzTopology, x: u32, y: u32, family: *mut u64) -> MtzStatus {
    guard(|| {
        let t = topology(t)?;
        // checks both points and the 64-open bound of the mask
        flagg_distance(t, x as usize, y as usize).map_err(fail)?;
        write(family, flagg_family(t, x as usize, y as usize))?;
        Ok(MtzStatus::Ok)
    })
}

/// Recomputes the open sets of the Ω(τ)-continuity space and compares them
/// with `t`. Returns [`MtzStatus::False`] when they differ.
#[no_mangle]
pub unsafe extern "C" fn mtz_flagg_round_trip(t: *const MtzTopology, equal: *mut bool) -> MtzStatus {
    guard(|| {
        let t = topology(t)?;
        let back = flagg_space(t).and_then(|s| s.open_sets()).map_err(fail)?;
        write(equal, &back == t)?;
        Ok(if &back == t { MtzStatus::Ok } else { MtzStatus::False })
    })
}

/// The open ball around `x` with principal radius `↓radius_family`.
#[no_mangle]
pub unsafe extern "C" fn mtz_flagg_ball(
    t: *const MtzTopology,
    x: u32,
    radius_family: u64,
    members: *mut u32,
) -> MtzStatus {
    guard(|| {
        let t = topology(t)?;
        let width = t.opens().len();
        let radius = OmegaElement::new(width, vec![radius_family]).map_err(fail)?;
        let ball = flagg_space(t).and_then(|s| s.open_ball(x as usize, &radius)).map_err(fail)?;
        write(members, ball)?;
        Ok(MtzStatus::Ok)
    })
}

/// Parses a quantale document (`elements`, `leq`, `add`).
#[no_mangle]
pub unsafe extern "C" fn mtz_quantale_from_json(json: *const c_char, out: *mut *mut MtzQuantale) -> MtzStatus {
    guard(|| {
        let doc: QuantaleDoc = serde_json::from_str(text(json)?).map_err(|e| fail(e.into()))?;
        let inner = doc.to_quantale().map_err(fail)?;
        write(out, Box::into_raw(Box::new(MtzQuantale { inner })))?;
        Ok(MtzStatus::Ok)
    })
}

/// Materializes Ω(τ) for a topology with at most five opens.
#[no_mangle]
pub unsafe extern "C" fn mtz_quantale_omega(t: *const MtzTopology, out: *mut *mut MtzQuantale) -> MtzStatus {
    guard(|| {
        let inner = enumerate_omega(topology(t)?).map_err(fail)?.quantale;
        write(out, Box::into_raw(Box::new(MtzQuantale { inner })))?;
        Ok(MtzStatus::Ok)
    })
}

#[no_mangle]
pub unsafe extern "C" fn mtz_quantale_free(q: *mut MtzQuantale) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// Number of elements, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn mtz_quantale_size(q: *const MtzQuantale) -> usize {
    q.as_ref().map_or(0, |q| q.inner.size())
}

/// Runs the value-quantale check with the default policy and `seed`.
/// `report_json` (optional) receives the full report; free it with
/// [`mtz_string_free`]. Returns [`MtzStatus::False`] when the check fails.
#[no_mangle]
pub unsafe extern "C" fn mtz_quantale_check(
    q: *const MtzQuantale,
    seed: u64,
    report_json: *mut *mut c_char,
) -> MtzStatus {
    guard(|| {
        let q = &q.as_ref().ok_or_else(|| null("quantale"))?.inner;
        let policy = CheckPolicy { seed, ..CheckPolicy::default() };
        let report = q.check_value_quantale(&policy);
        if !report_json.is_null() {
            report_json.write(json_string(&report)?);
        }
        Ok(if report.value_quantale { MtzStatus::Ok } else { MtzStatus::False })
    })
}

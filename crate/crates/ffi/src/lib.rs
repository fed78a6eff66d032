//! C ABI for `gcenter`.
//!
//! Parameters live behind an opaque [`GcParams`] handle. Every function
//! returns a [`GcStatus`]; on failure [`gc_last_error_message`] describes
//! the error for the calling thread. Strings handed out by the library are
//! owned by the caller and must be released with [`gc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use gcenter::compactify::{chart_field, ChartId};
use gcenter::desing::{BlowupChain, StepKind};
use gcenter::family::{build_system, center_cases, global_cases, CenterCase, FamilyParams, GlobalStatement};
use gcenter::flow::{default_radii, global_center_verdict, GlobalTag, IntegratorConfig};
use gcenter::poly::parse_rational;
use gcenter::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GcStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Compute = 4,
    Panic = 5,
}

/// Verdict tags reported by [`gc_verify`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GcGlobalTag {
    GlobalCenterConsistent = 0,
    NotGlobal = 1,
    Inconclusive = 2,
}

/// Opaque parameter vector.
pub struct GcParams {
    inner: FamilyParams,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(GcStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => Failure(GcStatus::Parse, m),
            other => Failure(GcStatus::Compute, other.to_string()),
        }
    }
}

fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> GcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            GcStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            GcStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(GcStatus::NullArgument, "null string argument".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(GcStatus::InvalidUtf8, "string is not valid UTF-8".into()))
}

unsafe fn params_ref<'a>(p: *const GcParams) -> Result<&'a FamilyParams, Failure> {
    p.as_ref()
        .map(|h| &h.inner)
        .ok_or_else(|| Failure(GcStatus::NullArgument, "null params handle".into()))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(GcStatus::NullArgument, "null output pointer".into()));
    }
    let c = CString::new(s).map_err(|_| Failure(GcStatus::Compute, "interior NUL in output".into()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn check_out<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        Err(Failure(GcStatus::NullArgument, "null output pointer".into()))
    } else {
        Ok(())
    }
}

/// Message for the last failed call on this thread (empty after success).
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn gc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses `{"a1": "p/q", ..., "d2": "p/q"}` into a new handle.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gc_params_from_json(json: *const c_char, out: *mut *mut GcParams) -> GcStatus {
    guard(|| {
        check_out(out)?;
        let text = read_str(json)?;
        let inner = FamilyParams::from_json(text)?;
        *out = Box::into_raw(Box::new(GcParams { inner }));
        Ok(())
    })
}

/// Builds a handle from eight rational strings in the order
/// `a1, a2, b1, b2, c1, c2, d1, d2`.
///
/// # Safety
/// `values` must point to eight NUL-terminated strings and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn gc_params_from_strings(values: *const *const c_char, out: *mut *mut GcParams) -> GcStatus {
    guard(|| {
        check_out(out)?;
        if values.is_null() {
            return Err(Failure(GcStatus::NullArgument, "null values array".into()));
        }
        let mut parsed = Vec::with_capacity(8);
        for k in 0..8 {
            parsed.push(parse_rational(read_str(*values.add(k))?)?);
        }
        let arr: [_; 8] = parsed.try_into().expect("eight values");
        *out = Box::into_raw(Box::new(GcParams {
            inner: FamilyParams::from_array(arr),
        }));
        Ok(())
    })
}

/// # Safety
/// `params` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn gc_params_free(params: *mut GcParams) {
    if !params.is_null() {
        drop(Box::from_raw(params));
    }
}

/// # Safety
/// `s` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn gc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Center conditions and global-center statements as bit masks: bit `k`
/// of `center_mask` is case k+1 of (i)–(iv); bit `k` of `global_mask` is
/// statement (a)+k.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn gc_decide(params: *const GcParams, center_mask: *mut u32, global_mask: *mut u32) -> GcStatus {
    guard(|| {
        let p = params_ref(params)?;
        check_out(center_mask)?;
        check_out(global_mask)?;
        let c = center_cases(p);
        let g = global_cases(p);
        let case_bit = |k: &CenterCase| match k {
            CenterCase::I => 1,
            CenterCase::Ii => 2,
            CenterCase::Iii => 4,
            CenterCase::Iv => 8,
        };
        *center_mask = c.matching_cases.iter().map(case_bit).sum();
        *global_mask = GlobalStatement::ALL
            .iter()
            .enumerate()
            .filter(|(_, s)| g.matching_statements.contains(s))
            .map(|(k, _)| 1u32 << k)
            .sum();
        Ok(())
    })
}

/// The system in chart `chart` (`"u1"`, `"u2"`, `"v1"`, `"v2"` or `"u3"`)
/// as canonical two-line text.
///
/// # Safety
/// All pointers must be valid; `chart` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn gc_chart_field(params: *const GcParams, chart: *const c_char, out: *mut *mut c_char) -> GcStatus {
    guard(|| {
        let p = params_ref(params)?;
        let name = read_str(chart)?;
        let id = ChartId::parse(name).ok_or_else(|| Failure(GcStatus::Parse, format!("unknown chart `{name}`")))?;
        write_string(out, chart_field(&build_system(p), id).text())
    })
}

/// Applies a comma-separated step list to a chart field and returns the
/// chain as JSON.
///
/// # Safety
/// All pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn gc_blowup_json(
    params: *const GcParams,
    chart: *const c_char,
    steps: *const c_char,
    out: *mut *mut c_char,
) -> GcStatus {
    guard(|| {
        let p = params_ref(params)?;
        let name = read_str(chart)?;
        let id = ChartId::parse(name).ok_or_else(|| Failure(GcStatus::Parse, format!("unknown chart `{name}`")))?;
        let steps = StepKind::parse_list(read_str(steps)?)?;
        let mut chain = BlowupChain::new(chart_field(&build_system(p), id).field);
        for s in steps {
            chain.apply(s)?;
        }
        write_string(out, chain.to_json().to_string())
    })
}

/// Numerical global-center test with the default radii. Non-positive
/// `closure_tol` or `max_time` select the defaults. `out_json` may be null.
///
/// # Safety
/// `params` and `tag` must be valid; `out_json` valid or null.
#[no_mangle]
pub unsafe extern "C" fn gc_verify(
    params: *const GcParams,
    closure_tol: f64,
    max_time: f64,
    tag: *mut GcGlobalTag,
    out_json: *mut *mut c_char,
) -> GcStatus {
    guard(|| {
        let p = params_ref(params)?;
        check_out(tag)?;
        let mut cfg = IntegratorConfig::default();
        if closure_tol > 0.0 {
            cfg.section_closure_tol = closure_tol;
        }
        if max_time > 0.0 {
            cfg.max_time = max_time;
        }
        let v = global_center_verdict(p, &cfg, &default_radii());
        *tag = match v.tag {
            GlobalTag::GlobalCenterConsistent => GcGlobalTag::GlobalCenterConsistent,
            GlobalTag::NotGlobal => GcGlobalTag::NotGlobal,
            GlobalTag::Inconclusive => GcGlobalTag::Inconclusive,
        };
        if !out_json.is_null() {
            write_string(out_json, v.to_json().to_string())?;
        }
        Ok(())
    })
}

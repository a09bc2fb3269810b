//! C interface to `pj4`.
//!
//! Every call returns a [`Pj4Status`]; results come back through out
//! pointers. Strings returned to the caller are owned by the caller and must
//! be released with [`pj4_string_free`]. The message for the most recent
//! failure on a context is available from [`pj4_last_error`].

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use pj4::cactus::CactusGroup;
use pj4::report::{self, emit_report, Format, IsoChoice};
use pj4::rewrite::{Equality, RewriteBudget, RewriteSystem};
use pj4::verify::VerifyConfig;
use pj4::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pj4Status {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    BudgetExhausted = 5,
    /// The computation ran but a check failed.
    CheckFailed = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pj4Equality {
    Equal = 0,
    ProvenUnequal = 1,
    NotFound = 2,
}

/// Opaque handle holding the settings and the rewriting system for `J_4'`.
pub struct Pj4Context {
    cfg: VerifyConfig,
    sys: RewriteSystem,
    last_error: Option<CString>,
}

impl Pj4Context {
    fn fail(&mut self, status: Pj4Status, msg: impl Into<String>) -> Pj4Status {
        let msg = msg.into().replace('\0', " ");
        self.last_error = CString::new(msg).ok();
        status
    }

    fn error(&mut self, e: Error) -> Pj4Status {
        let status = match e {
            Error::Parse(_) | Error::UnknownGenerator(_) => Pj4Status::Parse,
            Error::InvalidArgument(_) => Pj4Status::InvalidArgument,
            Error::BudgetExhausted { .. } => Pj4Status::BudgetExhausted,
            _ => Pj4Status::Internal,
        };
        self.fail(status, e.to_string())
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Pj4Status> {
    if s.is_null() {
        return Err(Pj4Status::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| Pj4Status::InvalidUtf8)
}

fn into_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

/// Creates a context. `slack` must be even.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn pj4_context_new(
    slack: usize,
    max_states: usize,
    tolerance: f64,
    out: *mut *mut Pj4Context,
) -> Pj4Status {
    if out.is_null() {
        return Pj4Status::NullPointer;
    }
    *out = ptr::null_mut();
    let budget = match RewriteBudget::new(slack, max_states) {
        Ok(b) => b,
        Err(_) => return Pj4Status::InvalidArgument,
    };
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Pj4Status::InvalidArgument;
    }
    let cfg = VerifyConfig { budget, tolerance };
    let ctx = Pj4Context { cfg, sys: RewriteSystem::new(CactusGroup::j4_prime(), budget), last_error: None };
    *out = Box::into_raw(Box::new(ctx));
    Pj4Status::Ok
}

/// # Safety
/// `ctx` must be null or a handle from [`pj4_context_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pj4_context_free(ctx: *mut Pj4Context) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// The message for the last failure on `ctx`, or null. Borrowed: valid until
/// the next call on `ctx`.
///
/// # Safety
/// `ctx` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pj4_last_error(ctx: *const Pj4Context) -> *const c_char {
    match ctx.as_ref().and_then(|c| c.last_error.as_ref()) {
        Some(s) => s.as_ptr(),
        None => ptr::null(),
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pj4_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Static version string.
#[no_mangle]
pub extern "C" fn pj4_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}

/// Number of elements of `J_4'` of word length `length`.
///
/// # Safety
/// `ctx` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pj4_sphere_size(ctx: *mut Pj4Context, length: usize, out: *mut usize) -> Pj4Status {
    let Some(ctx) = ctx.as_mut() else { return Pj4Status::NullPointer };
    if out.is_null() {
        return ctx.fail(Pj4Status::NullPointer, "out is null");
    }
    match ctx.sys.sphere(length) {
        Ok(s) => {
            *out = s.len();
            Pj4Status::Ok
        }
        Err(e) => ctx.error(e),
    }
}

/// Shortlex normal form of a word such as `"s13 s24 s12"`.
///
/// # Safety
/// `ctx` must be a live handle, `word` a NUL-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn pj4_canonical_form(
    ctx: *mut Pj4Context,
    word: *const c_char,
    out: *mut *mut c_char,
) -> Pj4Status {
    let Some(ctx) = ctx.as_mut() else { return Pj4Status::NullPointer };
    if out.is_null() {
        return ctx.fail(Pj4Status::NullPointer, "out is null");
    }
    *out = ptr::null_mut();
    let s = match read_str(word) {
        Ok(s) => s,
        Err(st) => return ctx.fail(st, "word is not a valid string"),
    };
    let j4p = CactusGroup::j4_prime();
    match j4p.parse(s).and_then(|w| ctx.sys.canonical_form(&w)) {
        Ok(c) => {
            *out = into_c(j4p.format(&c));
            Pj4Status::Ok
        }
        Err(e) => ctx.error(e),
    }
}

/// Decides equality of two words of `J_4'`. An `EQUAL` answer has been
/// replayed from its certificate.
///
/// # Safety
/// `ctx` must be a live handle, `a` and `b` NUL-terminated strings and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn pj4_words_equal(
    ctx: *mut Pj4Context,
    a: *const c_char,
    b: *const c_char,
    out: *mut Pj4Equality,
) -> Pj4Status {
    let Some(ctx) = ctx.as_mut() else { return Pj4Status::NullPointer };
    if out.is_null() {
        return ctx.fail(Pj4Status::NullPointer, "out is null");
    }
    let (sa, sb) = match (read_str(a), read_str(b)) {
        (Ok(x), Ok(y)) => (x, y),
        (Err(st), _) | (_, Err(st)) => return ctx.fail(st, "word is not a valid string"),
    };
    let j4p = CactusGroup::j4_prime();
    let result = j4p.parse(sa).and_then(|wa| {
        let wb = j4p.parse(sb)?;
        let eq = ctx.sys.words_equal(&wa, &wb)?;
        if let Equality::Equal(cert) = &eq {
            ctx.sys.replay(cert, &wa, &wb)?;
        }
        Ok(eq)
    });
    match result {
        Ok(Equality::Equal(_)) => *out = Pj4Equality::Equal,
        Ok(Equality::ProvenUnequal) => *out = Pj4Equality::ProvenUnequal,
        Ok(_) => *out = Pj4Equality::NotFound,
        Err(e) => return ctx.error(e),
    }
    Pj4Status::Ok
}

/// Runs a report and returns it as JSON. `command` is one of `pure`,
/// `dirichlet`, `presentation`, `tietze`, `isocheck-bcl`,
/// `isocheck-surface`, `verify-all`. The JSON is written even when the
/// report's checks fail, in which case `CHECK_FAILED` is returned.
///
/// # Safety
/// `ctx` must be a live handle, `command` a NUL-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn pj4_run_report(
    ctx: *mut Pj4Context,
    command: *const c_char,
    out: *mut *mut c_char,
) -> Pj4Status {
    let Some(ctx) = ctx.as_mut() else { return Pj4Status::NullPointer };
    if out.is_null() {
        return ctx.fail(Pj4Status::NullPointer, "out is null");
    }
    *out = ptr::null_mut();
    let cmd = match read_str(command) {
        Ok(s) => s,
        Err(st) => return ctx.fail(st, "command is not a valid string"),
    };
    let cfg = ctx.cfg;
    let r = match cmd {
        "pure" => report::pure(&cfg),
        "dirichlet" => report::dirichlet(&cfg),
        "presentation" => report::presentation(&cfg),
        "tietze" => report::tietze(),
        "isocheck-bcl" => report::isocheck(IsoChoice::Bcl, &cfg),
        "isocheck-surface" => report::isocheck(IsoChoice::Surface, &cfg),
        "verify-all" => Ok(report::verify_all(&cfg)),
        other => return ctx.fail(Pj4Status::InvalidArgument, format!("unknown command `{other}`")),
    };
    match r {
        Ok(r) => {
            let json = String::from_utf8(emit_report(&r, Format::Json)).expect("JSON is UTF-8");
            *out = into_c(json);
            if r.status.exit_code() == 0 {
                Pj4Status::Ok
            } else {
                ctx.fail(Pj4Status::CheckFailed, format!("{} reported {}", r.command, r.status.label()))
            }
        }
        Err(e) => ctx.error(e),
    }
}

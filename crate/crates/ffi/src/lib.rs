//! C ABI over the `invsemi` core.
//!
//! Conventions:
//! * every fallible entry point returns an [`InvsemiStatus`]; on failure the
//!   message is available from [`invsemi_last_error`] on the same thread;
//! * strings passed in are NUL-terminated UTF-8, and strings handed out must
//!   be released with [`invsemi_string_free`];
//! * handles are opaque and released with their matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use invsemi::bicyclic::{self, BicyclicElement};
use invsemi::finite::{greens, FiniteInvSemigroup, GreensData, PartialInjection};
use invsemi::monogenic::{self, Presentation};
use invsemi::{cli, Error, ErrorKind};

/// Status codes. The first four agree with the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvsemiStatus {
    Ok = 0,
    Parse = 1,
    Precondition = 2,
    Certification = 3,
    NullPointer = 4,
    Panic = 5,
}

/// A finite inverse semigroup of partial injections together with its Green's data.
pub struct InvsemiSemigroup {
    semigroup: FiniteInvSemigroup,
    greens: GreensData,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

enum Failure {
    Core(Error),
    Null(&'static str),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn status_of(e: &Error) -> InvsemiStatus {
    match e.kind() {
        ErrorKind::Parse => InvsemiStatus::Parse,
        ErrorKind::Precondition | ErrorKind::Invariant => InvsemiStatus::Precondition,
        ErrorKind::Certification => InvsemiStatus::Certification,
    }
}

/// Runs `f`, translating errors and panics into a status and the last-error slot.
fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> InvsemiStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => InvsemiStatus::Ok,
        Ok(Err(Failure::Core(e))) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Null(what))) => {
            set_last_error(format!("null pointer passed for {what}"));
            InvsemiStatus::NullPointer
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            set_last_error(format!("panic: {msg}"));
            InvsemiStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure::Core(Error::Parse { path: what.to_string(), message: e.to_string() }))
}

fn check_out<T>(p: *mut T, what: &'static str) -> Result<(), Failure> {
    if p.is_null() {
        Err(Failure::Null(what))
    } else {
        Ok(())
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("interior NULs removed").into_raw()
}

fn pretty(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Message of the last failed call on this thread, or NULL. Owned by the library;
/// valid until the next call into it from the same thread.
#[no_mangle]
pub extern "C" fn invsemi_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and must not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn invsemi_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the closure of a semigroup file (`{"degree": n, "generators": [...]}`).
///
/// # Safety
/// `json` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn invsemi_semigroup_from_json(json: *const c_char, out: *mut *mut InvsemiSemigroup) -> InvsemiStatus {
    guard(|| {
        check_out(out, "out")?;
        let text = read_str(json, "json")?;
        let file: cli::SemigroupFile = cli::parse_json("semigroup", text)?;
        let semigroup = file.build()?;
        let greens = greens(&semigroup)?;
        *out = Box::into_raw(Box::new(InvsemiSemigroup { semigroup, greens }));
        Ok(())
    })
}

/// # Safety
/// `handle` must come from [`invsemi_semigroup_from_json`] or be NULL.
#[no_mangle]
pub unsafe extern "C" fn invsemi_semigroup_free(handle: *mut InvsemiSemigroup) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Number of elements, or 0 for a NULL handle.
///
/// # Safety
/// `handle` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn invsemi_semigroup_size(handle: *const InvsemiSemigroup) -> usize {
    handle.as_ref().map_or(0, |h| h.semigroup.len())
}

/// Green's-relations report as JSON (same schema as the `greens` command).
///
/// # Safety
/// `handle` must be live; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn invsemi_semigroup_greens_json(handle: *const InvsemiSemigroup, out: *mut *mut c_char) -> InvsemiStatus {
    guard(|| {
        check_out(out, "out")?;
        let h = handle.as_ref().ok_or(Failure::Null("handle"))?;
        *out = into_c_string(pretty(&cli::greens_report(&h.semigroup, &h.greens)?));
        Ok(())
    })
}

/// Egg-box diagram in Graphviz DOT.
///
/// # Safety
/// `handle` must be live; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn invsemi_semigroup_eggbox_dot(handle: *const InvsemiSemigroup, out: *mut *mut c_char) -> InvsemiStatus {
    guard(|| {
        check_out(out, "out")?;
        let h = handle.as_ref().ok_or(Failure::Null("handle"))?;
        *out = into_c_string(cli::eggbox_dot(&h.semigroup, &h.greens));
        Ok(())
    })
}

/// Per-class generating sets for U, V and their intersection; `u_json` and
/// `v_json` are JSON arrays of elements of the semigroup.
///
/// # Safety
/// `handle` must be live; string arguments valid C strings; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn invsemi_semigroup_howson_json(
    handle: *const InvsemiSemigroup,
    u_json: *const c_char,
    v_json: *const c_char,
    out: *mut *mut c_char,
) -> InvsemiStatus {
    guard(|| {
        check_out(out, "out")?;
        let h = handle.as_ref().ok_or(Failure::Null("handle"))?;
        let u: Vec<PartialInjection> = cli::parse_json("u", read_str(u_json, "u_json")?)?;
        let v: Vec<PartialInjection> = cli::parse_json("v", read_str(v_json, "v_json")?)?;
        let u = h.semigroup.indices_of(&u)?;
        let v = h.semigroup.indices_of(&v)?;
        *out = into_c_string(pretty(&cli::howson_report(&h.semigroup, &u, &v)?));
        Ok(())
    })
}

/// Product x^{-a}x^b · x^{-c}x^d in the bicyclic monoid.
///
/// # Safety
/// `out_a` and `out_b` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn invsemi_bicyclic_multiply(a: u64, b: u64, c: u64, d: u64, out_a: *mut u64, out_b: *mut u64) -> InvsemiStatus {
    guard(|| {
        check_out(out_a, "out_a")?;
        check_out(out_b, "out_b")?;
        let p = BicyclicElement::new(a, b).multiply(BicyclicElement::new(c, d));
        *out_a = p.a;
        *out_b = p.b;
        Ok(())
    })
}

/// Certified generating set of ⟨U⟩ ∩ ⟨V⟩ in the bicyclic monoid, as JSON.
/// `u_json`/`v_json` are arrays of `[a, b]` pairs.
///
/// # Safety
/// String arguments must be valid C strings; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn invsemi_bicyclic_intersect_json(
    u_json: *const c_char,
    v_json: *const c_char,
    bound: u64,
    cap: u64,
    out: *mut *mut c_char,
) -> InvsemiStatus {
    guard(|| {
        check_out(out, "out")?;
        let u: Vec<BicyclicElement> = cli::parse_json("u", read_str(u_json, "u_json")?)?;
        let v: Vec<BicyclicElement> = cli::parse_json("v", read_str(v_json, "v_json")?)?;
        let result = bicyclic::intersect(&u, &v, bound, cap)?;
        let value = serde_json::to_value(&result).expect("reports serialize");
        *out = into_c_string(pretty(&value));
        Ok(())
    })
}

/// Decides whether two words over `x`/`X` are equal in the presented
/// monogenic inverse semigroup.
///
/// # Safety
/// String arguments must be valid C strings; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn invsemi_monogenic_equal(
    presentation_json: *const c_char,
    lhs: *const c_char,
    rhs: *const c_char,
    out: *mut bool,
) -> InvsemiStatus {
    guard(|| {
        check_out(out, "out")?;
        let p: Presentation = cli::parse_json("presentation", read_str(presentation_json, "presentation_json")?)?;
        *out = monogenic::quotient_equal(p, read_str(lhs, "lhs")?, read_str(rhs, "rhs")?)?;
        Ok(())
    })
}

/// Runs the command-line front end in-process. `argv` excludes the program
/// name. The exit code is returned through `exit_code`; captured output
/// through `stdout_out` and `stderr_out` (both must be freed).
///
/// # Safety
/// `argv` must point to `argc` valid C strings; out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn invsemi_run(
    argv: *const *const c_char,
    argc: usize,
    exit_code: *mut i32,
    stdout_out: *mut *mut c_char,
    stderr_out: *mut *mut c_char,
) -> InvsemiStatus {
    guard(|| {
        check_out(exit_code, "exit_code")?;
        check_out(stdout_out, "stdout_out")?;
        check_out(stderr_out, "stderr_out")?;
        if argv.is_null() && argc > 0 {
            return Err(Failure::Null("argv"));
        }
        let mut args = vec!["invsemi".to_string()];
        for i in 0..argc {
            args.push(read_str(*argv.add(i), "argv[i]")?.to_string());
        }
        let outcome = cli::run(args);
        *exit_code = outcome.code;
        *stdout_out = into_c_string(outcome.stdout);
        *stderr_out = into_c_string(outcome.stderr);
        Ok(())
    })
}

//! C ABI for the qzeta library.
//!
//! Objects are opaque handles released with their `_free` function. Every
//! fallible call returns a [`QzStatus`]; on failure [`qz_last_error_message`]
//! describes the error on the calling thread. Strings returned through out
//! parameters are owned by the caller and released with [`qz_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use qzeta::groups::{parse_group_literal, GroupAction};
use qzeta::rat::parse_rat_list;
use qzeta::strata_file::parse_strata;
use qzeta::symring::render::{zeta_json, zeta_latex};
use qzeta::symring::{ChiEnv, ZetaExpr};
use qzeta::tetra::{stringy_euler_tetra, TetraGroup, TetraParams};
use qzeta::zetacore::{local_monomial_zeta, stratified_zeta, SmallPolicy};
use qzeta::Error;

/// Result of a fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QzStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    Panic = 5,
}

/// Output format for [`qz_zeta_to_string`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QzFormat {
    Text = 0,
    Latex = 1,
    Json = 2,
}

/// A diagonal abelian group action.
pub struct QzGroup(GroupAction);

/// A zeta function together with the Euler characteristics of its symbols.
pub struct QzZeta {
    zeta: ZetaExpr,
    chi: ChiEnv,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(QzStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } | Error::UndeclaredSymbol(_) | Error::BadGroup(_) => QzStatus::Parse,
            _ => QzStatus::Domain,
        };
        Failure(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> QzStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            QzStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            QzStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(QzStatus::NullPointer, format!("{what} is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(QzStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(QzStatus::Domain, "output contains a NUL byte".into()))?;
    *out = c.into_raw();
    Ok(())
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn qz_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses a group literal such as `(7; 1,3)`.
///
/// # Safety
/// `literal` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qz_group_new(literal: *const c_char, out: *mut *mut QzGroup) -> QzStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let g = parse_group_literal(text(literal, "literal")?)?;
        *out = Box::into_raw(Box::new(QzGroup(g)));
        Ok(())
    })
}

/// Number of elements; 0 for a null handle.
///
/// # Safety
/// `g` must be null or a handle from [`qz_group_new`].
#[no_mangle]
pub unsafe extern "C" fn qz_group_order(g: *const QzGroup) -> u64 {
    g.as_ref().map_or(0, |g| g.0.order() as u64)
}

/// # Safety
/// `g` must be null or a handle from [`qz_group_new`].
#[no_mangle]
pub unsafe extern "C" fn qz_group_dimension(g: *const QzGroup) -> usize {
    g.as_ref().map_or(0, |g| g.0.dimension())
}

/// # Safety
/// `g` must be null or a handle from [`qz_group_new`].
#[no_mangle]
pub unsafe extern "C" fn qz_group_is_small(g: *const QzGroup) -> bool {
    g.as_ref().is_some_and(|g| g.0.is_small())
}

/// # Safety
/// `g` must be null or a handle from [`qz_group_new`] not freed before.
#[no_mangle]
pub unsafe extern "C" fn qz_group_free(g: *mut QzGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Zeta function of the monomial divisor with data `n`, `nu` (comma
/// separated rationals such as `1,3/2`) on the quotient by `g`.
///
/// # Safety
/// `g` must be a valid handle, `n` and `nu` NUL-terminated strings, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qz_zeta_monomial(
    g: *const QzGroup,
    n: *const c_char,
    nu: *const c_char,
    allow_nonsmall: bool,
    out: *mut *mut QzZeta,
) -> QzStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("group"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let list = |p, what| -> Result<_, Failure> {
            parse_rat_list(text(p, what)?).map_err(|e| Failure(QzStatus::Parse, e.to_string()))
        };
        let n = list(n, "n")?;
        let nu = list(nu, "nu")?;
        let policy = if allow_nonsmall { SmallPolicy::AllowNonSmall } else { SmallPolicy::Require };
        let zeta = local_monomial_zeta(&g.0, &n, &nu, policy)?;
        *out = Box::into_raw(Box::new(QzZeta { zeta, chi: ChiEnv::new() }));
        Ok(())
    })
}

/// Zeta function of the stratification described by a strata file.
///
/// # Safety
/// `text_in` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qz_zeta_from_strata(text_in: *const c_char, out: *mut *mut QzZeta) -> QzStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let f = parse_strata(text(text_in, "text")?)?;
        let zeta = stratified_zeta(&f.strata, SmallPolicy::Require)?;
        *out = Box::into_raw(Box::new(QzZeta { zeta, chi: f.chi_env() }));
        Ok(())
    })
}

/// Renders the zeta function; release the result with [`qz_string_free`].
///
/// # Safety
/// `z` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qz_zeta_to_string(z: *const QzZeta, format: QzFormat, out: *mut *mut c_char) -> QzStatus {
    guard(|| {
        let z = z.as_ref().ok_or_else(|| null("zeta"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let s = match format {
            QzFormat::Text => z.zeta.to_string(),
            QzFormat::Latex => zeta_latex(&z.zeta),
            QzFormat::Json => zeta_json(&z.zeta).to_string(),
        };
        write_string(out, s)
    })
}

/// The topological zeta function as text such as `7 / (s + 1)^2`.
///
/// # Safety
/// `z` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qz_zeta_topological(z: *const QzZeta, out: *mut *mut c_char) -> QzStatus {
    guard(|| {
        let z = z.as_ref().ok_or_else(|| null("zeta"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let top = z.zeta.euler(&z.chi)?;
        write_string(out, top.to_string())
    })
}

/// Exact equality as rational functions.
///
/// # Safety
/// `a`, `b` must be valid handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qz_zeta_equal(a: *const QzZeta, b: *const QzZeta, out: *mut bool) -> QzStatus {
    guard(|| {
        let a = a.as_ref().ok_or_else(|| null("a"))?;
        let b = b.as_ref().ok_or_else(|| null("b"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = a.zeta.equal(&b.zeta);
        Ok(())
    })
}

/// # Safety
/// `z` must be null or a handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn qz_zeta_free(z: *mut QzZeta) {
    if !z.is_null() {
        drop(Box::from_raw(z));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library not freed before.
#[no_mangle]
pub unsafe extern "C" fn qz_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Stringy Euler number `(d^2 + 8 beta) / 3` of `C^3 / G_{d,q}`; requires `d | q^3 + 1`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qz_tetra_stringy_euler(d: u64, q: u64, out: *mut u64) -> QzStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let e = stringy_euler_tetra(&TetraParams::new(d, q)?)?;
        *out = u64::try_from(e.to_integer()).map_err(|_| Failure(QzStatus::Domain, "value out of range".into()))?;
        Ok(())
    })
}

/// Number of conjugacy classes of `G_{d,q}`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qz_tetra_conjugacy_count(d: u64, q: u64, out: *mut u64) -> QzStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = TetraGroup::build(d, q)?.conjugacy_count() as u64;
        Ok(())
    })
}

//! C ABI over `deligne-core`.
//!
//! Every call returns a [`DlStatus`]; on failure the message is available
//! from [`dl_last_error`] on the same thread. Objects cross the boundary as
//! opaque handles or JSON strings. Strings returned through `out` pointers
//! are owned by the caller and released with [`dl_string_free`]; handles are
//! released with their `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use deligne_core::daha::{ev, YObject};
use deligne_core::delcat::{cache_version, gram_det, CatError, Morphism, Object};
use deligne_core::exactalg::RatFn;
use deligne_core::wreath::WObject;

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum DlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    TypeMismatch = 4,
    /// A mathematical error such as a pole at a specialization.
    Math = 5,
    Panic = 6,
}

pub struct DlMorphism(Morphism);
pub struct DlObject(Object);
pub struct DlYObject(YObject);
pub struct DlWObject(WObject);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(DlStatus, String);

impl From<CatError> for Fail {
    fn from(e: CatError) -> Self {
        let status = match e {
            CatError::Parse(_) => DlStatus::Parse,
            CatError::ObjectMismatch(_) | CatError::TypeMismatch(_) | CatError::Truncation(_) => DlStatus::TypeMismatch,
            _ => DlStatus::Math,
        };
        Fail(status, e.to_string())
    }
}

impl From<deligne_core::daha::DahaError> for Fail {
    fn from(e: deligne_core::daha::DahaError) -> Self {
        Fail(DlStatus::Math, e.to_string())
    }
}

impl From<deligne_core::wreath::WreathError> for Fail {
    fn from(e: deligne_core::wreath::WreathError) -> Self {
        Fail(DlStatus::Math, e.to_string())
    }
}

impl From<deligne_core::exactalg::ExactError> for Fail {
    fn from(e: deligne_core::exactalg::ExactError) -> Self {
        Fail(DlStatus::Parse, e.to_string())
    }
}

impl From<serde_json::Error> for Fail {
    fn from(e: serde_json::Error) -> Self {
        Fail(DlStatus::Parse, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> DlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            DlStatus::Ok
        }
        Ok(Err(Fail(s, m))) => {
            set_error(&m);
            s
        }
        Err(_) => {
            set_error("panic inside deligne-core");
            DlStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(DlStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Fail(DlStatus::InvalidUtf8, e.to_string()))
}

unsafe fn ref_arg<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(DlStatus::NullPointer, "null handle".into()))
}

unsafe fn write_out<T>(out: *mut *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(DlStatus::NullPointer, "null output pointer".into()));
    }
    *out = Box::into_raw(Box::new(v));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(DlStatus::NullPointer, "null output pointer".into()));
    }
    *out = CString::new(s).map_err(|e| Fail(DlStatus::Parse, e.to_string()))?.into_raw();
    Ok(())
}

unsafe fn write_bool(out: *mut bool, v: bool) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(DlStatus::NullPointer, "null output pointer".into()));
    }
    *out = v;
    Ok(())
}

/// Message of the last failed call on this thread, or NULL. The pointer is
/// valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn dl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` is NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Hex hash of the structure-constant rules.
///
/// # Safety
/// `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_cache_version(out: *mut *mut c_char) -> DlStatus {
    guard(|| write_string(out, cache_version()))
}

/// Runs the command line with `argv[0..argc]` (without the program name).
/// The report is written to `out_stdout`, the exit code (0, 1 or 2) to
/// `out_code`; usage errors leave their message in `out_stdout` as well.
///
/// # Safety
/// `argv` points to `argc` valid C strings; `out_stdout` and `out_code` are valid.
#[no_mangle]
pub unsafe extern "C" fn dl_run(
    argv: *const *const c_char,
    argc: usize,
    out_stdout: *mut *mut c_char,
    out_code: *mut c_int,
) -> DlStatus {
    guard(|| {
        if argv.is_null() && argc > 0 {
            return Err(Fail(DlStatus::NullPointer, "null argv".into()));
        }
        let mut args = vec!["deligne".to_string()];
        for i in 0..argc {
            args.push(str_arg(*argv.add(i))?.to_string());
        }
        let o = deligne_core::cli::run(args);
        if out_code.is_null() {
            return Err(Fail(DlStatus::NullPointer, "null output pointer".into()));
        }
        *out_code = o.code;
        write_string(out_stdout, o.stdout + &o.stderr)
    })
}

/// # Safety
/// `json` is a valid C string; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_morphism_from_json(json: *const c_char, out: *mut *mut DlMorphism) -> DlStatus {
    guard(|| {
        let v: serde_json::Value = serde_json::from_str(str_arg(json)?)?;
        write_out(out, DlMorphism(Morphism::from_json(&v)?))
    })
}

/// # Safety
/// `f` is a live handle; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_morphism_to_json(f: *const DlMorphism, out: *mut *mut c_char) -> DlStatus {
    guard(|| write_string(out, ref_arg(f)?.0.to_json().to_string()))
}

/// `g ∘ f`.
///
/// # Safety
/// `f`, `g` are live handles; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_morphism_compose(
    f: *const DlMorphism,
    g: *const DlMorphism,
    out: *mut *mut DlMorphism,
) -> DlStatus {
    guard(|| {
        let h = ref_arg(f)?.0.then(&ref_arg(g)?.0)?;
        write_out(out, DlMorphism(h))
    })
}

/// `f ⊗ g`.
///
/// # Safety
/// `f`, `g` are live handles; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_morphism_tensor(
    f: *const DlMorphism,
    g: *const DlMorphism,
    out: *mut *mut DlMorphism,
) -> DlStatus {
    guard(|| write_out(out, DlMorphism(ref_arg(f)?.0.tensor(&ref_arg(g)?.0))))
}

/// # Safety
/// `f` is NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dl_morphism_free(f: *mut DlMorphism) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// `[sizes[0]] ⊕ ... ⊕ [sizes[len - 1]]`.
///
/// # Safety
/// `sizes` points to `len` values (or is NULL with `len == 0`); `out` is valid.
#[no_mangle]
pub unsafe extern "C" fn dl_object_from_sizes(sizes: *const usize, len: usize, out: *mut *mut DlObject) -> DlStatus {
    guard(|| {
        let s: &[usize] = if len == 0 {
            &[]
        } else if sizes.is_null() {
            return Err(Fail(DlStatus::NullPointer, "null sizes".into()));
        } else {
            std::slice::from_raw_parts(sizes, len)
        };
        write_out(out, DlObject(Object::sum_of_generators(s)?))
    })
}

/// # Safety
/// `json` is a valid C string; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_object_from_json(json: *const c_char, out: *mut *mut DlObject) -> DlStatus {
    guard(|| {
        let v: serde_json::Value = serde_json::from_str(str_arg(json)?)?;
        write_out(out, DlObject(Object::from_json(&v)?))
    })
}

/// Gram determinant of `End(X)` as a polynomial string in `T`.
///
/// # Safety
/// `x` is a live handle; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_object_gram_det(x: *const DlObject, out: *mut *mut c_char) -> DlStatus {
    guard(|| write_string(out, gram_det(&ref_arg(x)?.0)?.to_string()))
}

/// The identity of `X`.
///
/// # Safety
/// `x` is a live handle; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_object_identity(x: *const DlObject, out: *mut *mut DlMorphism) -> DlStatus {
    guard(|| write_out(out, DlMorphism(ref_arg(x)?.0.identity())))
}

/// # Safety
/// `x` is NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dl_object_free(x: *mut DlObject) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// `ev_a(X)`; `a` is a rational function string such as `a1 + 1/2`.
///
/// # Safety
/// `a` is a valid C string, `x` a live handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_ev(a: *const c_char, x: *const DlObject, out: *mut *mut DlYObject) -> DlStatus {
    guard(|| {
        let a = RatFn::parse(str_arg(a)?)?;
        write_out(out, DlYObject(ev(&a, &ref_arg(x)?.0)?))
    })
}

/// # Safety
/// `json` is a valid C string; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_yobject_from_json(json: *const c_char, out: *mut *mut DlYObject) -> DlStatus {
    guard(|| {
        let v: serde_json::Value = serde_json::from_str(str_arg(json)?)?;
        write_out(out, DlYObject(YObject::from_json(&v)?))
    })
}

/// # Safety
/// `y` is a live handle; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_yobject_to_json(y: *const DlYObject, out: *mut *mut c_char) -> DlStatus {
    guard(|| write_string(out, ref_arg(y)?.0.to_json().to_string()))
}

/// Writes whether the defining relation holds exactly.
///
/// # Safety
/// `y` is a live handle; `holds` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_yobject_check_relation(y: *const DlYObject, holds: *mut bool) -> DlStatus {
    guard(|| write_bool(holds, ref_arg(y)?.0.check_relation()?.holds))
}

/// # Safety
/// `y` is NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dl_yobject_free(y: *mut DlYObject) {
    if !y.is_null() {
        drop(Box::from_raw(y));
    }
}

/// # Safety
/// `json` is a valid C string; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_wobject_from_json(json: *const c_char, out: *mut *mut DlWObject) -> DlStatus {
    guard(|| {
        let v: serde_json::Value = serde_json::from_str(str_arg(json)?)?;
        write_out(out, DlWObject(WObject::from_json(&v)?))
    })
}

/// Writes whether both wreath conditions hold.
///
/// # Safety
/// `w` is a live handle; `holds` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_wobject_check(w: *const DlWObject, holds: *mut bool) -> DlStatus {
    guard(|| write_bool(holds, ref_arg(w)?.0.check()?.holds))
}

/// # Safety
/// `w` is NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dl_wobject_free(w: *mut DlWObject) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

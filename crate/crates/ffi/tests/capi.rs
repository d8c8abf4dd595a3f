use std::ffi::{c_char, c_int, CStr, CString};
use std::process::Command;
use std::ptr;

use deligne_ffi::*;

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    dl_string_free(s);
    out
}

unsafe fn last_error() -> String {
    let p = dl_last_error();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_str().unwrap().to_owned()
}

#[test]
fn gram_of_one_point() {
    unsafe {
        let mut x = ptr::null_mut();
        assert_eq!(dl_object_from_sizes([1usize].as_ptr(), 1, &mut x), DlStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(dl_object_gram_det(x, &mut s), DlStatus::Ok);
        assert_eq!(take(s), "T^3 - T^2");
        dl_object_free(x);
    }
}

#[test]
fn identity_round_trip_and_composition() {
    unsafe {
        let mut x = ptr::null_mut();
        assert_eq!(dl_object_from_sizes([1usize, 2].as_ptr(), 2, &mut x), DlStatus::Ok);
        let mut id = ptr::null_mut();
        assert_eq!(dl_object_identity(x, &mut id), DlStatus::Ok);
        let mut js = ptr::null_mut();
        assert_eq!(dl_morphism_to_json(id, &mut js), DlStatus::Ok);
        let json = CString::new(take(js)).unwrap();
        let mut f = ptr::null_mut();
        assert_eq!(dl_morphism_from_json(json.as_ptr(), &mut f), DlStatus::Ok);
        let mut h = ptr::null_mut();
        assert_eq!(dl_morphism_compose(f, id, &mut h), DlStatus::Ok);
        let mut a = ptr::null_mut();
        let mut b = ptr::null_mut();
        dl_morphism_to_json(h, &mut a);
        dl_morphism_to_json(id, &mut b);
        assert_eq!(take(a), take(b));
        let mut t = ptr::null_mut();
        assert_eq!(dl_morphism_tensor(f, id, &mut t), DlStatus::Ok);
        for m in [id, f, h, t] {
            dl_morphism_free(m);
        }
        dl_object_free(x);
    }
}

#[test]
fn mismatched_composition_reports_type_error() {
    unsafe {
        let mut x1 = ptr::null_mut();
        let mut x2 = ptr::null_mut();
        dl_object_from_sizes([1usize].as_ptr(), 1, &mut x1);
        dl_object_from_sizes([2usize].as_ptr(), 1, &mut x2);
        let (mut f, mut g) = (ptr::null_mut(), ptr::null_mut());
        dl_object_identity(x1, &mut f);
        dl_object_identity(x2, &mut g);
        let mut h = ptr::null_mut();
        assert_eq!(dl_morphism_compose(f, g, &mut h), DlStatus::TypeMismatch);
        assert!(h.is_null());
        assert!(!last_error().is_empty());
        dl_morphism_free(f);
        dl_morphism_free(g);
        dl_object_free(x1);
        dl_object_free(x2);
    }
}

#[test]
fn evaluation_object_satisfies_the_relation() {
    unsafe {
        let mut x = ptr::null_mut();
        dl_object_from_sizes([2usize].as_ptr(), 1, &mut x);
        let a = CString::new("a1 + 1/2").unwrap();
        let mut y = ptr::null_mut();
        assert_eq!(dl_ev(a.as_ptr(), x, &mut y), DlStatus::Ok);
        let mut holds = false;
        assert_eq!(dl_yobject_check_relation(y, &mut holds), DlStatus::Ok);
        assert!(holds);
        let mut js = ptr::null_mut();
        dl_yobject_to_json(y, &mut js);
        let json = CString::new(take(js)).unwrap();
        let mut y2 = ptr::null_mut();
        assert_eq!(dl_yobject_from_json(json.as_ptr(), &mut y2), DlStatus::Ok);
        dl_yobject_free(y);
        dl_yobject_free(y2);
        dl_object_free(x);
    }
}

#[test]
fn bad_inputs() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(dl_morphism_from_json(ptr::null(), &mut f), DlStatus::NullPointer);
        let junk = CString::new("{not json").unwrap();
        assert_eq!(dl_morphism_from_json(junk.as_ptr(), &mut f), DlStatus::Parse);
        assert!(!last_error().is_empty());
        let bad = [0xffu8, 0];
        assert_eq!(dl_morphism_from_json(bad.as_ptr() as *const c_char, &mut f), DlStatus::InvalidUtf8);
        let a = CString::new("1/0").unwrap();
        let mut x = ptr::null_mut();
        dl_object_from_sizes(ptr::null(), 0, &mut x);
        let mut y = ptr::null_mut();
        assert_ne!(dl_ev(a.as_ptr(), x, &mut y), DlStatus::Ok);
        dl_object_free(x);
        dl_morphism_free(ptr::null_mut());
        dl_string_free(ptr::null_mut());
        let mut s = ptr::null_mut();
        assert_eq!(dl_cache_version(&mut s), DlStatus::Ok);
        assert!(dl_last_error().is_null());
        assert_eq!(take(s), deligne_core::delcat::cache_version());
    }
}

#[test]
fn wobject_from_cli_output() {
    let args: Vec<CString> =
        ["wreath", "vchi", "--chi", "1,-1", "--sizes", "1"].iter().map(|s| CString::new(*s).unwrap()).collect();
    let ptrs: Vec<*const c_char> = args.iter().map(|a| a.as_ptr()).collect();
    unsafe {
        let mut out = ptr::null_mut();
        let mut code: c_int = -1;
        assert_eq!(dl_run(ptrs.as_ptr(), ptrs.len(), &mut out, &mut code), DlStatus::Ok);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        let w = CString::new(v["wobject"].to_string()).unwrap();
        let mut h = ptr::null_mut();
        assert_eq!(dl_wobject_from_json(w.as_ptr(), &mut h), DlStatus::Ok);
        let mut holds = false;
        assert_eq!(dl_wobject_check(h, &mut holds), DlStatus::Ok);
        assert!(holds);
        dl_wobject_free(h);

        let bad = CString::new("nonsense").unwrap();
        let mut out = ptr::null_mut();
        dl_run(&bad.as_ptr(), 1, &mut out, &mut code);
        assert_eq!(code, 2);
        dl_string_free(out);
    }
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/deligne.h");
    let text = std::fs::read_to_string(header).unwrap();
    for f in ["dl_last_error", "dl_run", "dl_morphism_compose", "dl_object_gram_det", "dl_wobject_free"] {
        assert!(text.contains(f), "{f} missing from header");
    }
    let Ok(status) = Command::new("cc").args(["-fsyntax-only", "-x", "c", header]).status() else {
        eprintln!("no C compiler; skipped syntax check");
        return;
    };
    assert!(status.success());
}

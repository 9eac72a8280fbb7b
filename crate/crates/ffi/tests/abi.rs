use std::ffi::{CStr, CString};
use std::ptr;

use globhom_ffi::*;

fn load(doc: &str, cap: usize) -> (GlobhomStatus, *mut GlobhomCategory) {
    let doc = CString::new(doc).unwrap();
    let mut cat = ptr::null_mut();
    let s = unsafe { globhom_category_load(doc.as_ptr(), cap, &mut cat) };
    (s, cat)
}

fn last_error() -> String {
    let p = globhom_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn square_homology() {
    let (s, cat) = load(r#"{"kind": "cube", "name": "I2", "dim": 2}"#, 0);
    assert_eq!(s, GlobhomStatus::Ok);
    unsafe {
        assert_eq!(globhom_category_max_dim(cat), 2);
        assert_eq!(globhom_category_count(cat, 0), 4);
        let mut c = ptr::null_mut();
        assert_eq!(globhom_complex_new(cat, GlobhomTheory::Gl, 3, 0, &mut c), GlobhomStatus::Ok);
        let (mut rank, mut tors) = (9, 9);
        assert_eq!(globhom_homology(c, 0, &mut rank, &mut tors), GlobhomStatus::Ok);
        assert!(rank > 0);
        assert_eq!(globhom_homology(c, 2, &mut rank, &mut tors), GlobhomStatus::Ok);
        assert_eq!((rank, tors), (0, 0));
        let mut text = ptr::null_mut();
        assert_eq!(globhom_homology_string(c, 1, &mut text), GlobhomStatus::Ok);
        assert_eq!(CStr::from_ptr(text).to_str().unwrap(), "0");
        globhom_string_free(text);
        globhom_complex_free(c);
        globhom_category_free(cat);
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    let (s, cat) = load("{\"kind\": \"cube\",\n \"dim\": \"three\"}", 0);
    assert_eq!(s, GlobhomStatus::InputError);
    assert!(cat.is_null());
    assert!(last_error().contains("line 2"));

    let (s, _) = load(r#"{"kind": "cube", "name": "I3", "dim": 3}"#, 10);
    assert_eq!(s, GlobhomStatus::ResourceCap);

    let mut out = ptr::null_mut();
    let s = unsafe { globhom_category_load(ptr::null(), 0, &mut out) };
    assert_eq!(s, GlobhomStatus::NullArgument);
    assert!(last_error().contains("document"));

    let mut c = ptr::null_mut();
    let s = unsafe { globhom_complex_new(ptr::null(), GlobhomTheory::Gl, 2, 0, &mut c) };
    assert_eq!(s, GlobhomStatus::NullArgument);
}

#[test]
fn truncation_is_enforced() {
    let (_, cat) = load(r#"{"kind": "cube", "name": "I2", "dim": 2}"#, 0);
    unsafe {
        let mut c = ptr::null_mut();
        assert_eq!(globhom_complex_new(cat, GlobhomTheory::Minus, 2, 0, &mut c), GlobhomStatus::Ok);
        let (mut rank, mut tors) = (0, 0);
        assert_eq!(globhom_homology(c, 5, &mut rank, &mut tors), GlobhomStatus::InputError);
        globhom_complex_free(c);
        globhom_category_free(cat);
    }
}

#[test]
fn run_matches_the_cli() {
    let args: Vec<CString> = ["globhom", "homology", "cube2.doc", "--format", "structured", "--truncation", "3"]
        .iter()
        .map(|a| CString::new(*a).unwrap())
        .collect();
    let argv: Vec<_> = args.iter().map(|a| a.as_ptr()).collect();
    let mut report = ptr::null_mut();
    let code = unsafe { globhom_run(argv.len() as i32, argv.as_ptr(), &mut report) };
    assert_eq!(code, 0);
    let text = unsafe { CStr::from_ptr(report) }.to_str().unwrap().to_owned();
    unsafe { globhom_string_free(report) };
    assert!(text.contains("\"status\": \"ok\""), "{text}");

    let code = unsafe { globhom_run(1, ptr::null(), &mut report) };
    assert_eq!(code, -1);
}

#[test]
fn header_is_generated() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/globhom.h")).unwrap();
    for name in ["globhom_category_load", "globhom_run", "GLOBHOM_STATUS_RESOURCE_CAP", "typedef struct GlobhomComplex"] {
        assert!(h.contains(name), "{name}");
    }
}

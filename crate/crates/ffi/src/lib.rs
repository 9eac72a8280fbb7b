//! C ABI over the globhom engine.
//!
//! Categories and chain complexes are opaque handles owned by the caller
//! and released with the matching `_free` function. Every fallible call
//! returns a [`GlobhomStatus`]; the message of the last failure on the
//! calling thread is available from [`globhom_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use globhom::cli::{self, Theory};
use globhom::homology::{OldDegreeZero, PresentedComplex};
use globhom::omegacat::{load, BuildOptions, OmegaCat};
use globhom::Error;

/// Status codes. The first four agree with the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlobhomStatus {
    Ok = 0,
    Violation = 1,
    InputError = 2,
    ResourceCap = 3,
    NullArgument = 4,
    Panic = 5,
}

/// Homology theories, in the order of the CLI `--theory` values.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlobhomTheory {
    Gl = 0,
    Minus = 1,
    Plus = 2,
    OldGl = 3,
    FormalGl = 4,
    FormalMinus = 5,
    FormalPlus = 6,
    ReducedGl = 7,
    ReducedMinus = 8,
    ReducedPlus = 9,
}

impl From<GlobhomTheory> for Theory {
    fn from(t: GlobhomTheory) -> Theory {
        match t {
            GlobhomTheory::Gl => Theory::Gl,
            GlobhomTheory::Minus => Theory::Minus,
            GlobhomTheory::Plus => Theory::Plus,
            GlobhomTheory::OldGl => Theory::OldGl,
            GlobhomTheory::FormalGl => Theory::FormalGl,
            GlobhomTheory::FormalMinus => Theory::FormalMinus,
            GlobhomTheory::FormalPlus => Theory::FormalPlus,
            GlobhomTheory::ReducedGl => Theory::ReducedGl,
            GlobhomTheory::ReducedMinus => Theory::ReducedMinus,
            GlobhomTheory::ReducedPlus => Theory::ReducedPlus,
        }
    }
}

/// A finite strict ω-category.
pub struct GlobhomCategory(OmegaCat);

/// A chain complex of one theory, ready for homology queries.
pub struct GlobhomComplex(PresentedComplex);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> GlobhomStatus {
    match e.exit_code() {
        1 => GlobhomStatus::Violation,
        3 => GlobhomStatus::ResourceCap,
        _ => GlobhomStatus::InputError,
    }
}

/// Runs `f`, recording errors and panics.
fn guard(f: impl FnOnce() -> Result<(), (GlobhomStatus, String)>) -> GlobhomStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GlobhomStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside globhom".into());
            GlobhomStatus::Panic
        }
    }
}

fn engine(e: Error) -> (GlobhomStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (GlobhomStatus, String) {
    (GlobhomStatus::NullArgument, format!("{what} is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, (GlobhomStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (GlobhomStatus::InputError, format!("{what} is not UTF-8")))
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn globhom_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses and builds a JSON document. `element_cap == 0` selects the default.
///
/// # Safety
/// `document` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn globhom_category_load(
    document: *const c_char,
    element_cap: usize,
    out: *mut *mut GlobhomCategory,
) -> GlobhomStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let doc = text(document, "document")?;
        let mut opts = BuildOptions::default();
        if element_cap > 0 {
            opts.element_cap = element_cap;
        }
        let cat = load(doc, opts).map_err(engine)?;
        *out = Box::into_raw(Box::new(GlobhomCategory(cat)));
        Ok(())
    })
}

/// # Safety
/// `cat` must come from [`globhom_category_load`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn globhom_category_free(cat: *mut GlobhomCategory) {
    if !cat.is_null() {
        drop(Box::from_raw(cat));
    }
}

/// Number of `dim`-dimensional morphisms; 0 for a null handle.
///
/// # Safety
/// `cat` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn globhom_category_count(cat: *const GlobhomCategory, dim: usize) -> usize {
    cat.as_ref().map_or(0, |c| c.0.counts().get(dim).copied().unwrap_or(0))
}

/// Highest dimension of a morphism; 0 for a null handle.
///
/// # Safety
/// `cat` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn globhom_category_max_dim(cat: *const GlobhomCategory) -> usize {
    cat.as_ref().map_or(0, |c| c.0.max_dim())
}

/// Builds the complex of `theory`. Nerve theories are truncated at
/// `truncation` with at most `cap` simplexes per nerve (0: default).
///
/// # Safety
/// `cat` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn globhom_complex_new(
    cat: *const GlobhomCategory,
    theory: GlobhomTheory,
    truncation: usize,
    cap: usize,
    out: *mut *mut GlobhomComplex,
) -> GlobhomStatus {
    guard(|| {
        let cat = cat.as_ref().ok_or_else(|| null("cat"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let cap = if cap == 0 { globhom::omegacat::DEFAULT_ELEMENT_CAP } else { cap };
        let c = cli::theory_complex(&cat.0, theory.into(), truncation, cap, OldDegreeZero::Tensor).map_err(engine)?;
        *out = Box::into_raw(Box::new(GlobhomComplex(c)));
        Ok(())
    })
}

/// # Safety
/// `complex` must come from [`globhom_complex_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn globhom_complex_free(complex: *mut GlobhomComplex) {
    if !complex.is_null() {
        drop(Box::from_raw(complex));
    }
}

/// `H_p` in theory degree `p`: writes the free rank and the number of
/// torsion factors. Degrees past the truncation are an input error.
///
/// # Safety
/// `complex` must be a live handle; `rank` and `torsion_count` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn globhom_homology(
    complex: *const GlobhomComplex,
    p: i64,
    rank: *mut usize,
    torsion_count: *mut usize,
) -> GlobhomStatus {
    guard(|| {
        let c = complex.as_ref().ok_or_else(|| null("complex"))?;
        if rank.is_null() || torsion_count.is_null() {
            return Err(null("output"));
        }
        let h = c.0.theory_homology(p).map_err(engine)?;
        *rank = h.rank;
        *torsion_count = h.torsion.len();
        Ok(())
    })
}

/// `H_p` as text such as `Z^2 + Z/2`. Release with [`globhom_string_free`].
///
/// # Safety
/// `complex` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn globhom_homology_string(
    complex: *const GlobhomComplex,
    p: i64,
    out: *mut *mut c_char,
) -> GlobhomStatus {
    guard(|| {
        let c = complex.as_ref().ok_or_else(|| null("complex"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let h = c.0.theory_homology(p).map_err(engine)?;
        *out = CString::new(h.to_string()).expect("no nul").into_raw();
        Ok(())
    })
}

/// Runs the command line `argv[0..argc]` (program name first) and stores
/// the report in `report`. Returns the CLI exit code, or -1 on bad arguments.
///
/// # Safety
/// `argv` must hold `argc` nul-terminated strings; `report` must be valid.
#[no_mangle]
pub unsafe extern "C" fn globhom_run(argc: c_int, argv: *const *const c_char, report: *mut *mut c_char) -> c_int {
    if argv.is_null() || report.is_null() || argc < 0 {
        set_error("argv or report is null".into());
        return -1;
    }
    let mut args = Vec::with_capacity(argc as usize);
    for i in 0..argc as usize {
        match text(*argv.add(i), "argument") {
            Ok(a) => args.push(a.to_string()),
            Err((_, msg)) => {
                set_error(msg);
                return -1;
            }
        }
    }
    let mut buf = Vec::new();
    let code = match catch_unwind(AssertUnwindSafe(|| cli::run(args, &mut buf))) {
        Ok(c) => c,
        Err(_) => {
            set_error("panic inside globhom".into());
            return -1;
        }
    };
    let s = String::from_utf8_lossy(&buf).replace('\0', " ");
    *report = CString::new(s).expect("no nul").into_raw();
    code
}

/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn globhom_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

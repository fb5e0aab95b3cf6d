//! C ABI over `bwo-core`.
//!
//! Books are opaque `BwoBook` handles released with [`bwo_book_free`]. Strings
//! returned through `out` parameters are owned by the caller and released with
//! [`bwo_string_free`]. Every function returns a [`BwoStatus`]; on failure
//! [`bwo_last_error`] describes the error for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bwo_core::amalgam::BookGroup;
use bwo_core::jsj::{self, JsjGraph, PairClass, Permutation};
use bwo_core::verifier::{self, ReportConfig};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BwoStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    VerificationFailed = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BwoPairClass {
    Homeomorphic = 0,
    HomotopyEquivalentOnly = 1,
    Inequivalent = 2,
}

/// Opaque book handle.
pub struct BwoBook {
    graph: JsjGraph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Fail(BwoStatus, String);

impl From<bwo_core::Error> for Fail {
    fn from(e: bwo_core::Error) -> Self {
        Fail(BwoStatus::InvalidInput, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<BwoStatus, Fail>) -> BwoStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            BwoStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(BwoStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(BwoStatus::InvalidUtf8, format!("{name} is not UTF-8")))
}

unsafe fn book_arg<'a>(p: *const BwoBook, name: &str) -> Result<&'a BwoBook, Fail> {
    p.as_ref().ok_or_else(|| Fail(BwoStatus::NullPointer, format!("{name} is null")))
}

fn out_arg<T>(p: *mut T, name: &str) -> Result<(), Fail> {
    if p.is_null() {
        Err(Fail(BwoStatus::NullPointer, format!("{name} is null")))
    } else {
        Ok(())
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

unsafe fn put_book(out: *mut *mut BwoBook, graph: JsjGraph) {
    *out = Box::into_raw(Box::new(BwoBook { graph }));
}

/// Creates a primitive book with `pages` pages of genus `genus`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bwo_book_new(pages: usize, genus: usize, out: *mut *mut BwoBook) -> BwoStatus {
    guard(|| {
        out_arg(out, "out")?;
        put_book(out, jsj::uniform_book(pages, genus, 1)?);
        Ok(BwoStatus::Ok)
    })
}

/// Parses a book from its JSON form.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bwo_book_from_json(json: *const c_char, out: *mut *mut BwoBook) -> BwoStatus {
    guard(|| {
        let text = str_arg(json, "json")?;
        out_arg(out, "out")?;
        put_book(out, JsjGraph::from_json(text)?);
        Ok(BwoStatus::Ok)
    })
}

/// # Safety
/// `book` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bwo_book_to_json(book: *const BwoBook, out: *mut *mut c_char) -> BwoStatus {
    guard(|| {
        let b = book_arg(book, "book")?;
        out_arg(out, "out")?;
        *out = into_c_string(b.graph.to_json());
        Ok(BwoStatus::Ok)
    })
}

/// Releases a book handle. Null is ignored.
///
/// # Safety
/// `book` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bwo_book_free(book: *mut BwoBook) {
    if !book.is_null() {
        drop(Box::from_raw(book));
    }
}

/// Number of window components.
///
/// # Safety
/// `book` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bwo_book_window_count(book: *const BwoBook, out: *mut usize) -> BwoStatus {
    guard(|| {
        let b = book_arg(book, "book")?;
        out_arg(out, "out")?;
        *out = jsj::window(&b.graph).len();
        Ok(BwoStatus::Ok)
    })
}

/// Relabels the attachment order through `perm[0..len]` (1-based images).
///
/// # Safety
/// `perm` must point to `len` values; `book` must be live; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn bwo_book_shuffle(book: *const BwoBook, perm: *const usize, len: usize, out: *mut *mut BwoBook) -> BwoStatus {
    guard(|| {
        let b = book_arg(book, "book")?;
        out_arg(out, "out")?;
        if perm.is_null() {
            return Err(Fail(BwoStatus::NullPointer, "perm is null".into()));
        }
        let images = std::slice::from_raw_parts(perm, len).to_vec();
        let p = Permutation::from_images(images)?;
        put_book(out, jsj::shuffle(&b.graph, &p)?);
        Ok(BwoStatus::Ok)
    })
}

/// Toggles the flip mark of page `page`.
///
/// # Safety
/// `book` must be live and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn bwo_book_flip(book: *const BwoBook, page: usize, out: *mut *mut BwoBook) -> BwoStatus {
    guard(|| {
        let b = book_arg(book, "book")?;
        out_arg(out, "out")?;
        put_book(out, jsj::flip(&b.graph, page)?);
        Ok(BwoStatus::Ok)
    })
}

/// # Safety
/// `a` and `b` must be live handles and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn bwo_book_classify_pair(a: *const BwoBook, b: *const BwoBook, out: *mut BwoPairClass) -> BwoStatus {
    guard(|| {
        let (a, b) = (book_arg(a, "a")?, book_arg(b, "b")?);
        out_arg(out, "out")?;
        *out = match jsj::classify_pair(&a.graph, &b.graph) {
            PairClass::Homeomorphic => BwoPairClass::Homeomorphic,
            PairClass::HomotopyEquivalentOnly => BwoPairClass::HomotopyEquivalentOnly,
            PairClass::Inequivalent => BwoPairClass::Inequivalent,
        };
        Ok(BwoStatus::Ok)
    })
}

/// Normal form of `word` in the group of a uniform book.
///
/// # Safety
/// `word` must be a nul-terminated string and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn bwo_reduce_word(pages: usize, genus: usize, word: *const c_char, out: *mut *mut c_char) -> BwoStatus {
    guard(|| {
        let text = str_arg(word, "word")?;
        out_arg(out, "out")?;
        let group = BookGroup::uniform(pages, genus)?;
        let nf = group.reduce(&group.parse(text)?);
        *out = into_c_string(nf.to_string());
        Ok(BwoStatus::Ok)
    })
}

/// Runs the twisted-book pipeline and returns the JSON report in `out`.
/// Returns `VerificationFailed` (with the report still set) when it does not pass.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bwo_verify_counterexample(
    pages: usize,
    genus: usize,
    iters: usize,
    seed: u64,
    out: *mut *mut c_char,
) -> BwoStatus {
    guard(|| {
        out_arg(out, "out")?;
        let report = verifier::verify_counterexample(ReportConfig::new(pages, genus, iters, seed))?;
        *out = into_c_string(serde_json::to_string_pretty(&report).expect("serializable"));
        if report.passed {
            Ok(BwoStatus::Ok)
        } else {
            set_error("verification failed");
            Ok(BwoStatus::VerificationFailed)
        }
    })
}

/// Message for the last failure on this thread, or null. Valid until the
/// next call into this library.
#[no_mangle]
pub extern "C" fn bwo_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bwo_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

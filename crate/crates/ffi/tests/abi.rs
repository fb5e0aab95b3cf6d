use std::ffi::{CStr, CString};
use std::ptr;

use bwo_ffi::*;

fn take_string(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { bwo_string_free(p) };
    s
}

fn last_error() -> Option<String> {
    let p = bwo_last_error();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}

fn new_book(pages: usize, genus: usize) -> *mut BwoBook {
    let mut book = ptr::null_mut();
    assert_eq!(unsafe { bwo_book_new(pages, genus, &mut book) }, BwoStatus::Ok);
    book
}

#[test]
fn window_count_matches_page_count() {
    for n in 3..=8 {
        let book = new_book(n, 1);
        let mut count = 0usize;
        assert_eq!(unsafe { bwo_book_window_count(book, &mut count) }, BwoStatus::Ok);
        assert_eq!(count, n);
        unsafe { bwo_book_free(book) };
    }
}

#[test]
fn json_round_trip() {
    let book = new_book(4, 2);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { bwo_book_to_json(book, &mut json) }, BwoStatus::Ok);
    let text = take_string(json);

    let c = CString::new(text.clone()).unwrap();
    let mut again = ptr::null_mut();
    assert_eq!(unsafe { bwo_book_from_json(c.as_ptr(), &mut again) }, BwoStatus::Ok);
    let mut json2 = ptr::null_mut();
    assert_eq!(unsafe { bwo_book_to_json(again, &mut json2) }, BwoStatus::Ok);
    assert_eq!(take_string(json2), text);
    unsafe {
        bwo_book_free(book);
        bwo_book_free(again);
    }
}

#[test]
fn shuffle_and_classify() {
    let json = CString::new(
        r#"{"core":{"kind":"solid","p":1},"pages":[{"genus":1,"orientable":true},{"genus":2,"orientable":true},{"genus":3,"orientable":true},{"genus":4,"orientable":true}],"order":[1,2,3,4],"flips":[]}"#,
    )
    .unwrap();
    let mut book = ptr::null_mut();
    assert_eq!(unsafe { bwo_book_from_json(json.as_ptr(), &mut book) }, BwoStatus::Ok);
    let perm = [1usize, 3, 2, 4];
    let mut shuffled = ptr::null_mut();
    assert_eq!(unsafe { bwo_book_shuffle(book, perm.as_ptr(), perm.len(), &mut shuffled) }, BwoStatus::Ok);

    let mut class = BwoPairClass::Inequivalent;
    assert_eq!(unsafe { bwo_book_classify_pair(book, shuffled, &mut class) }, BwoStatus::Ok);
    assert_eq!(class, BwoPairClass::HomotopyEquivalentOnly);
    assert_eq!(unsafe { bwo_book_classify_pair(book, book, &mut class) }, BwoStatus::Ok);
    assert_eq!(class, BwoPairClass::Homeomorphic);

    let mut flipped = ptr::null_mut();
    assert_eq!(unsafe { bwo_book_flip(book, 2, &mut flipped) }, BwoStatus::Ok);
    unsafe {
        bwo_book_free(book);
        bwo_book_free(shuffled);
        bwo_book_free(flipped);
    }
}

#[test]
fn bad_permutation_sets_error() {
    let book = new_book(4, 1);
    let perm = [1usize, 1, 2, 4];
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { bwo_book_shuffle(book, perm.as_ptr(), perm.len(), &mut out) }, BwoStatus::InvalidInput);
    assert!(out.is_null());
    assert!(last_error().is_some());
    unsafe { bwo_book_free(book) };
}

#[test]
fn null_arguments_are_rejected() {
    assert_eq!(unsafe { bwo_book_new(4, 1, ptr::null_mut()) }, BwoStatus::NullPointer);
    let mut count = 0usize;
    assert_eq!(unsafe { bwo_book_window_count(ptr::null(), &mut count) }, BwoStatus::NullPointer);
    assert!(last_error().unwrap().contains("book"));
    unsafe {
        bwo_book_free(ptr::null_mut());
        bwo_string_free(ptr::null_mut());
    }
}

#[test]
fn invalid_utf8_is_reported() {
    let bytes = [0xffu8, 0xfe, 0];
    let mut out = ptr::null_mut();
    let status = unsafe { bwo_book_from_json(bytes.as_ptr().cast(), &mut out) };
    assert_eq!(status, BwoStatus::InvalidUtf8);
}

#[test]
fn success_clears_last_error() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { bwo_book_new(1, 1, &mut out) }, BwoStatus::InvalidInput);
    assert!(last_error().is_some());
    let book = new_book(3, 1);
    assert!(last_error().is_none());
    unsafe { bwo_book_free(book) };
}

#[test]
fn reduce_cancels_free_pairs() {
    let word = CString::new("a1 b1 B1 A1").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { bwo_reduce_word(4, 1, word.as_ptr(), &mut out) }, BwoStatus::Ok);
    let reduced = take_string(out);

    let empty = CString::new("").unwrap();
    let mut out2 = ptr::null_mut();
    assert_eq!(unsafe { bwo_reduce_word(4, 1, empty.as_ptr(), &mut out2) }, BwoStatus::Ok);
    assert_eq!(reduced, take_string(out2));
}

#[test]
fn counterexample_report_passes() {
    let mut out = ptr::null_mut();
    let status = unsafe { bwo_verify_counterexample(4, 1, 12, 7, &mut out) };
    let json = take_string(out);
    assert_eq!(status, BwoStatus::Ok, "{json}");
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["passed"], serde_json::Value::Bool(true));
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/bwo.h")).unwrap();
    for name in [
        "bwo_book_new",
        "bwo_book_from_json",
        "bwo_book_to_json",
        "bwo_book_free",
        "bwo_book_window_count",
        "bwo_book_shuffle",
        "bwo_book_flip",
        "bwo_book_classify_pair",
        "bwo_reduce_word",
        "bwo_verify_counterexample",
        "bwo_last_error",
        "bwo_string_free",
        "BWO_STATUS_OK",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}

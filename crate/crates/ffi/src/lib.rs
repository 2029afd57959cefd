//! C ABI over `levelpers`.
//!
//! Spaces and barcodes are opaque handles owned by the caller and released
//! with the matching `*_free` function. Every fallible call returns an
//! [`LpStatus`]; on failure [`lp_last_error_message`] describes the error for
//! the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use levelpers::io::{barcode_json, parse_space, to_canonical_string};
use levelpers::levelset::level_barcodes;
use levelpers::plcomplex::{load, DEFAULT_MAX_DIM};
use levelpers::sublevel::sublevel_barcodes;
use levelpers::{Bar, Barcode, Error, Field, PlSpace};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    NotPrime = 4,
    ComputeFailed = 5,
    OutOfRange = 6,
}

/// One bar with its multiplicity. Infinite right ends are `+INFINITY`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LpBar {
    pub degree: usize,
    pub left: f64,
    pub right: f64,
    pub left_closed: bool,
    pub right_closed: bool,
    pub multiplicity: usize,
}

/// A validated PL space.
pub struct LpSpace {
    space: PlSpace,
}

/// A barcode in canonical order.
pub struct LpBarcodes {
    code: Barcode,
    bars: Vec<(Bar, usize)>,
}

impl LpBarcodes {
    fn new(code: Barcode) -> Self {
        let bars = code.iter().map(|(b, m)| (*b, m)).collect();
        LpBarcodes { code, bars }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn fail(status: LpStatus, message: impl Into<String>) -> LpStatus {
    let text = CString::new(message.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
    status
}

fn fail_with(e: Error) -> LpStatus {
    let status = match e {
        Error::NotPrime(_) => LpStatus::NotPrime,
        Error::Validation { .. } | Error::Json(_) | Error::EmptySpace => LpStatus::InvalidInput,
        _ => LpStatus::ComputeFailed,
    };
    fail(status, e.to_string())
}

fn succeed() -> LpStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    LpStatus::Ok
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn lp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a space document and stores a new handle in `*out`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lp_space_from_json(
    json: *const c_char,
    out: *mut *mut LpSpace,
) -> LpStatus {
    if json.is_null() || out.is_null() {
        return fail(LpStatus::NullPointer, "null argument");
    }
    *out = ptr::null_mut();
    let Ok(text) = CStr::from_ptr(json).to_str() else {
        return fail(LpStatus::InvalidUtf8, "input is not UTF-8");
    };
    match parse_space(text).and_then(|doc| load(&doc, DEFAULT_MAX_DIM)) {
        Ok(space) => {
            *out = Box::into_raw(Box::new(LpSpace { space }));
            succeed()
        }
        Err(e) => fail_with(e),
    }
}

/// # Safety
/// `space` must come from [`lp_space_from_json`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn lp_space_free(space: *mut LpSpace) {
    if !space.is_null() {
        drop(Box::from_raw(space));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `space` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lp_space_vertex_count(space: *const LpSpace) -> usize {
    space.as_ref().map_or(0, |s| s.space.vertex_count())
}

unsafe fn compute(
    space: *const LpSpace,
    field: u32,
    out: *mut *mut LpBarcodes,
    f: impl FnOnce(&PlSpace, Field) -> levelpers::Result<Barcode>,
) -> LpStatus {
    if space.is_null() || out.is_null() {
        return fail(LpStatus::NullPointer, "null argument");
    }
    *out = ptr::null_mut();
    let result = Field::new(field).and_then(|field| f(&(*space).space, field));
    match result {
        Ok(code) => {
            *out = Box::into_raw(Box::new(LpBarcodes::new(code)));
            succeed()
        }
        Err(e) => fail_with(e),
    }
}

/// Level barcodes over `Z/field`.
///
/// # Safety
/// `space` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lp_level_barcodes(
    space: *const LpSpace,
    field: u32,
    out: *mut *mut LpBarcodes,
) -> LpStatus {
    compute(space, field, out, level_barcodes)
}

/// Sub-level barcodes, infinite and finite together.
///
/// # Safety
/// `space` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lp_sublevel_barcodes(
    space: *const LpSpace,
    field: u32,
    out: *mut *mut LpBarcodes,
) -> LpStatus {
    compute(space, field, out, |s, f| {
        let sb = sublevel_barcodes(s, f)?;
        let mut all = sb.infinite;
        all.extend(&sb.finite);
        Ok(all)
    })
}

/// Number of distinct bars, or 0 for a null handle.
///
/// # Safety
/// `bars` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lp_barcodes_len(bars: *const LpBarcodes) -> usize {
    bars.as_ref().map_or(0, |b| b.bars.len())
}

/// Copies bar `index` into `*out`.
///
/// # Safety
/// `bars` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lp_barcodes_get(
    bars: *const LpBarcodes,
    index: usize,
    out: *mut LpBar,
) -> LpStatus {
    let (Some(bars), false) = (bars.as_ref(), out.is_null()) else {
        return fail(LpStatus::NullPointer, "null argument");
    };
    let Some(&(b, m)) = bars.bars.get(index) else {
        return fail(
            LpStatus::OutOfRange,
            format!("index {index} out of {} bars", bars.bars.len()),
        );
    };
    *out = LpBar {
        degree: b.degree,
        left: b.left,
        right: b.right,
        left_closed: b.left_closed,
        right_closed: b.right_closed,
        multiplicity: m,
    };
    succeed()
}

/// Canonical JSON for the barcode; release with [`lp_string_free`].
///
/// # Safety
/// `bars` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lp_barcodes_to_json(
    bars: *const LpBarcodes,
    out: *mut *mut c_char,
) -> LpStatus {
    let (Some(bars), false) = (bars.as_ref(), out.is_null()) else {
        return fail(LpStatus::NullPointer, "null argument");
    };
    let text = to_canonical_string(&barcode_json(&bars.code));
    *out = CString::new(text).expect("JSON has no NUL").into_raw();
    succeed()
}

/// # Safety
/// `bars` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn lp_barcodes_free(bars: *mut LpBarcodes) {
    if !bars.is_null() {
        drop(Box::from_raw(bars));
    }
}

/// # Safety
/// `s` must come from [`lp_barcodes_to_json`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn lp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

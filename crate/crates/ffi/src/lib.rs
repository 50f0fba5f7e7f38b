//! C ABI over `sparsepave`.
//!
//! Matroids cross the boundary as opaque `SpmMatroid` handles. Element sets
//! are `uint64_t` bitmasks with element `i` at bit `i - 1`. Every fallible
//! call returns an `SpmStatus`; on failure `spm_last_error_message` describes
//! the most recent error on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sparsepave::census::{format_matroid, parse_matroid};
use sparsepave::johnson::count_sparse_paving_rank;
use sparsepave::minors::{has_minor_with_budget, has_uniform_minor, whirl3, DEFAULT_MINOR_BUDGET};
use sparsepave::{ElementSet, Error, SparsePavingMatroid};

/// Result codes. `SPM_STATUS_OK` is zero; everything else is a failure.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotStable = 3,
    NoBasis = 4,
    ParseError = 5,
    BudgetExceeded = 6,
    Overflow = 7,
    Panic = 8,
}

/// Opaque handle to a sparse paving matroid.
pub struct SpmMatroid(SparsePavingMatroid);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::new(text).ok());
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn status_of(e: &Error) -> SpmStatus {
    match e {
        Error::NotStable { .. } => SpmStatus::NotStable,
        Error::NoBasis { .. } => SpmStatus::NoBasis,
        Error::Parse { .. } => SpmStatus::ParseError,
        Error::BudgetExceeded(_) => SpmStatus::BudgetExceeded,
        _ => SpmStatus::InvalidArgument,
    }
}

fn fail(status: SpmStatus, message: impl Into<String>) -> SpmStatus {
    set_error(message);
    status
}

/// Runs `body`, turning errors and panics into status codes.
fn guard(body: impl FnOnce() -> Result<(), (SpmStatus, String)>) -> SpmStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => SpmStatus::Ok,
        Ok(Err((status, message))) => fail(status, message),
        Err(_) => fail(SpmStatus::Panic, "internal panic"),
    }
}

fn lift(e: Error) -> (SpmStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (SpmStatus, String) {
    (SpmStatus::NullPointer, format!("`{what}` is null"))
}

unsafe fn matroid<'a>(
    handle: *const SpmMatroid,
    what: &str,
) -> Result<&'a SparsePavingMatroid, (SpmStatus, String)> {
    handle.as_ref().map(|m| &m.0).ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), (SpmStatus, String)> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn into_handle(m: SparsePavingMatroid) -> *mut SpmMatroid {
    Box::into_raw(Box::new(SpmMatroid(m)))
}

/// Builds a matroid of rank `r` on `[n]` from `count` non-basis bitmasks.
/// On success `*out` owns a new handle; release it with `spm_matroid_free`.
///
/// # Safety
/// `nonbases` must point to `count` readable values (it may be null when
/// `count` is 0) and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spm_matroid_new(
    n: u32,
    r: u32,
    nonbases: *const u64,
    count: usize,
    out: *mut *mut SpmMatroid,
) -> SpmStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let masks: &[u64] = if count == 0 {
            &[]
        } else if nonbases.is_null() {
            return Err(null("nonbases"));
        } else {
            std::slice::from_raw_parts(nonbases, count)
        };
        let m = SparsePavingMatroid::new(
            n as usize,
            r as usize,
            masks.iter().map(|&b| ElementSet::from_bits(b)),
        )
        .map_err(lift)?;
        out.write(into_handle(m));
        Ok(())
    })
}

/// Parses the text format (`n=<int> r=<int>` header, one non-basis per line).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spm_matroid_parse(
    text: *const c_char,
    out: *mut *mut SpmMatroid,
) -> SpmStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| (SpmStatus::ParseError, "text is not valid UTF-8".to_string()))?;
        let m = parse_matroid(text).map_err(lift)?;
        out.write(into_handle(m));
        Ok(())
    })
}

/// Canonical text form. Release the string with `spm_string_free`.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn spm_matroid_to_string(
    m: *const SpmMatroid,
    out: *mut *mut c_char,
) -> SpmStatus {
    guard(|| {
        let m = matroid(m, "m")?;
        let text = CString::new(format_matroid(m)).expect("no interior NUL");
        write_out(out, text.into_raw(), "out")
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `m` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn spm_matroid_free(m: *mut SpmMatroid) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Ground set size, or 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn spm_matroid_n(m: *const SpmMatroid) -> u32 {
    m.as_ref().map_or(0, |m| m.0.n() as u32)
}

/// Rank, or 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn spm_matroid_rank(m: *const SpmMatroid) -> u32 {
    m.as_ref().map_or(0, |m| m.0.rank() as u32)
}

/// Number of non-bases, or 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn spm_matroid_nonbasis_count(m: *const SpmMatroid) -> usize {
    m.as_ref().map_or(0, |m| m.0.nonbases().len())
}

/// Copies up to `capacity` non-basis bitmasks into `buffer`, in ascending
/// bitmask order, and returns the total number of non-bases.
///
/// # Safety
/// `m` must be null or a live handle; `buffer` must hold `capacity` values
/// (it may be null when `capacity` is 0).
#[no_mangle]
pub unsafe extern "C" fn spm_matroid_nonbases(
    m: *const SpmMatroid,
    buffer: *mut u64,
    capacity: usize,
) -> usize {
    let Some(m) = m.as_ref() else { return 0 };
    let nonbases = m.0.nonbases();
    if !buffer.is_null() {
        for (i, c) in nonbases.iter().take(capacity).enumerate() {
            buffer.add(i).write(c.bits());
        }
    }
    nonbases.len()
}

/// Rank of an arbitrary subset of the ground set.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn spm_matroid_rank_of(
    m: *const SpmMatroid,
    set: u64,
    out: *mut u32,
) -> SpmStatus {
    guard(|| {
        let m = matroid(m, "m")?;
        let set = ElementSet::from_bits(set);
        if !set.within(m.n()) {
            return Err((
                SpmStatus::InvalidArgument,
                format!("set {set} is not inside [{}]", m.n()),
            ));
        }
        write_out(out, m.rank_of(set) as u32, "out")
    })
}

/// The rank-3 whirl on six elements. Release with `spm_matroid_free`.
#[no_mangle]
pub extern "C" fn spm_whirl3() -> *mut SpmMatroid {
    into_handle(whirl3())
}

/// The uniform matroid `U_{t,k}`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spm_uniform(t: u32, k: u32, out: *mut *mut SpmMatroid) -> SpmStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let m = SparsePavingMatroid::uniform(t as usize, k as usize).map_err(lift)?;
        out.write(into_handle(m));
        Ok(())
    })
}

/// Whether `h` is a minor of `m`. `budget` caps the number of
/// contraction/restriction pairs tried; 0 selects the library default.
///
/// # Safety
/// `m` and `h` must be live handles and `found` writable.
#[no_mangle]
pub unsafe extern "C" fn spm_has_minor(
    m: *const SpmMatroid,
    h: *const SpmMatroid,
    budget: u64,
    found: *mut bool,
) -> SpmStatus {
    guard(|| {
        let m = matroid(m, "m")?;
        let h = matroid(h, "h")?;
        let budget = if budget == 0 {
            DEFAULT_MINOR_BUDGET
        } else {
            budget.into()
        };
        let witness = has_minor_with_budget(m, h, budget).map_err(lift)?;
        write_out(found, witness.is_some(), "found")
    })
}

/// Whether `U_{t,k}` is a minor of `m`.
///
/// # Safety
/// `m` must be a live handle and `found` writable.
#[no_mangle]
pub unsafe extern "C" fn spm_has_uniform_minor(
    m: *const SpmMatroid,
    t: u32,
    k: u32,
    found: *mut bool,
) -> SpmStatus {
    guard(|| {
        let m = matroid(m, "m")?;
        if t > k {
            return Err((
                SpmStatus::InvalidArgument,
                format!("rank {t} exceeds size {k}"),
            ));
        }
        write_out(found, has_uniform_minor(m, t as usize, k as usize), "found")
    })
}

/// Exact number of sparse paving matroids of rank `r` on `[n]`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spm_count_sparse_paving(n: u32, r: u32, out: *mut u64) -> SpmStatus {
    guard(|| {
        let total = count_sparse_paving_rank(n as usize, r as usize).map_err(lift)?;
        let total = u64::try_from(total).map_err(|_| {
            (
                SpmStatus::Overflow,
                format!("count {total} does not fit in 64 bits"),
            )
        })?;
        write_out(out, total, "out")
    })
}

/// Message for the last failure on this thread, or null if the last call
/// succeeded. Valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn spm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from `spm_matroid_to_string` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn spm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn spm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

//! C interface to `hfhash`.
//!
//! Every function returns an [`HfStatus`]. On failure a message describing
//! the error is kept per thread and can be read with [`hf_last_error`].
//! Handles are opaque and must be released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;
use std::sync::Arc;

use hfhash::hash::{self_test, Evaluator};
use hfhash::{CompiledSystem, Error, Hasher, HfParams, PolynomialSystem, Rounds};

/// Digest size in bytes.
pub const HF_DIGEST_LEN: usize = 32;

/// Size of the buffer `hf_hash_hex` needs, terminator included.
pub const HF_HEX_LEN: usize = 65;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// The hasher was already finalized.
    Finalized = 3,
    MessageTooLong = 4,
    /// The polynomial text did not parse.
    Parse = 5,
    Internal = 6,
    BufferTooSmall = 7,
}

/// Incremental hasher.
pub struct HfHasher {
    inner: Option<Hasher>,
}

/// A parsed polynomial system.
pub struct HfSystem {
    compiled: Arc<CompiledSystem>,
    params: HfParams,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: HfStatus, msg: impl Into<String>) -> HfStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> HfStatus {
    let status = match e {
        Error::MessageTooLong => HfStatus::MessageTooLong,
        Error::Parse { .. } | Error::WrongPolynomialCount(_) | Error::IndexOutOfOrder { .. } => {
            HfStatus::Parse
        }
        Error::InvalidRounds(_) | Error::InvalidInputLength { .. } | Error::InvalidDigest(_) => {
            HfStatus::InvalidArgument
        }
        _ => HfStatus::Internal,
    };
    fail(status, e.to_string())
}

/// Runs `f`, turning a panic into `Internal`.
fn guard(f: impl FnOnce() -> HfStatus) -> HfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(HfStatus::Internal, "panic inside hfhash"),
    }
}

fn parse_rounds(n: u32) -> Result<Rounds, HfStatus> {
    Rounds::try_from(n).map_err(from_error)
}

/// # Safety
/// `data` must point to `len` readable bytes unless `len` is 0.
unsafe fn input<'a>(data: *const u8, len: usize) -> Result<&'a [u8], HfStatus> {
    if len == 0 {
        Ok(&[])
    } else if data.is_null() {
        Err(fail(HfStatus::NullPointer, "data is null"))
    } else {
        Ok(slice::from_raw_parts(data, len))
    }
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Creates a hasher using the shipped system. `rounds` is 32, 48 or 64.
///
/// # Safety
/// `out` must be a valid pointer to write a handle to.
#[no_mangle]
pub unsafe extern "C" fn hf_hasher_new(rounds: u32, out: *mut *mut HfHasher) -> HfStatus {
    guard(|| {
        if out.is_null() {
            return fail(HfStatus::NullPointer, "out is null");
        }
        let r = tri!(parse_rounds(rounds));
        let h = HfHasher {
            inner: Some(Hasher::new(HfParams::canonical().rounds(r))),
        };
        *out = Box::into_raw(Box::new(h));
        HfStatus::Ok
    })
}

/// Creates a hasher over `system`. The system may be freed afterwards.
///
/// # Safety
/// `system` must come from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hf_hasher_new_with_system(
    system: *const HfSystem,
    rounds: u32,
    out: *mut *mut HfHasher,
) -> HfStatus {
    guard(|| {
        if system.is_null() || out.is_null() {
            return fail(HfStatus::NullPointer, "system or out is null");
        }
        let r = tri!(parse_rounds(rounds));
        let h = HfHasher {
            inner: Some(Hasher::new((*system).params.clone().rounds(r))),
        };
        *out = Box::into_raw(Box::new(h));
        HfStatus::Ok
    })
}

/// # Safety
/// `hasher` must come from `hf_hasher_new*`; `data` must point to `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn hf_hasher_update(
    hasher: *mut HfHasher,
    data: *const u8,
    len: usize,
) -> HfStatus {
    guard(|| {
        let Some(h) = hasher.as_mut() else {
            return fail(HfStatus::NullPointer, "hasher is null");
        };
        let bytes = tri!(input(data, len));
        match h.inner.as_mut() {
            None => fail(HfStatus::Finalized, "hasher already finalized"),
            Some(inner) => match inner.update(bytes) {
                Ok(()) => HfStatus::Ok,
                Err(e) => from_error(e),
            },
        }
    })
}

/// Writes the 32-byte digest to `out`. The handle can only be freed afterwards.
///
/// # Safety
/// `hasher` must come from `hf_hasher_new*`; `out` must hold 32 bytes.
#[no_mangle]
pub unsafe extern "C" fn hf_hasher_finalize(hasher: *mut HfHasher, out: *mut u8) -> HfStatus {
    guard(|| {
        let Some(h) = hasher.as_mut() else {
            return fail(HfStatus::NullPointer, "hasher is null");
        };
        if out.is_null() {
            return fail(HfStatus::NullPointer, "out is null");
        }
        let Some(inner) = h.inner.take() else {
            return fail(HfStatus::Finalized, "hasher already finalized");
        };
        match inner.finalize() {
            Ok(d) => {
                ptr::copy_nonoverlapping(d.to_bytes().as_ptr(), out, HF_DIGEST_LEN);
                HfStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Releases a hasher. Null is ignored.
///
/// # Safety
/// `hasher` must come from `hf_hasher_new*` and not be used again.
#[no_mangle]
pub unsafe extern "C" fn hf_hasher_free(hasher: *mut HfHasher) {
    if !hasher.is_null() {
        drop(Box::from_raw(hasher));
    }
}

/// One-shot digest of `len` bytes into the 32-byte buffer `out`.
///
/// # Safety
/// `data` must point to `len` bytes; `out` must hold 32 bytes.
#[no_mangle]
pub unsafe extern "C" fn hf_hash(
    data: *const u8,
    len: usize,
    rounds: u32,
    out: *mut u8,
) -> HfStatus {
    guard(|| {
        if out.is_null() {
            return fail(HfStatus::NullPointer, "out is null");
        }
        let bytes = tri!(input(data, len));
        let r = tri!(parse_rounds(rounds));
        match hfhash::hash(bytes, &HfParams::canonical().rounds(r)) {
            Ok(d) => {
                ptr::copy_nonoverlapping(d.to_bytes().as_ptr(), out, HF_DIGEST_LEN);
                HfStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Like `hf_hash` but writes 64 lowercase hex digits and a terminating nul;
/// `out_len` must be at least `HF_HEX_LEN`.
///
/// # Safety
/// `data` must point to `len` bytes; `out` must hold `out_len` bytes.
#[no_mangle]
pub unsafe extern "C" fn hf_hash_hex(
    data: *const u8,
    len: usize,
    rounds: u32,
    out: *mut c_char,
    out_len: usize,
) -> HfStatus {
    guard(|| {
        if out.is_null() {
            return fail(HfStatus::NullPointer, "out is null");
        }
        if out_len < HF_HEX_LEN {
            return fail(
                HfStatus::BufferTooSmall,
                format!("need {HF_HEX_LEN} bytes, got {out_len}"),
            );
        }
        let bytes = tri!(input(data, len));
        let r = tri!(parse_rounds(rounds));
        match hfhash::hash(bytes, &HfParams::canonical().rounds(r)) {
            Ok(d) => {
                let hex = CString::new(d.to_hex()).expect("hex has no nul");
                let raw = hex.as_bytes_with_nul();
                ptr::copy_nonoverlapping(raw.as_ptr().cast::<c_char>(), out, raw.len());
                HfStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

fn new_system(system: &PolynomialSystem) -> *mut HfSystem {
    let compiled = Arc::new(system.compile());
    let params = HfParams::with_evaluator(Evaluator::Compiled(compiled.clone()));
    Box::into_raw(Box::new(HfSystem { compiled, params }))
}

/// Parses a polynomial system from nul-terminated text, one `y_{k} = ...`
/// line per polynomial.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hf_system_load(text: *const c_char, out: *mut *mut HfSystem) -> HfStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return fail(HfStatus::NullPointer, "text or out is null");
        }
        let Ok(text) = CStr::from_ptr(text).to_str() else {
            return fail(HfStatus::InvalidArgument, "text is not UTF-8");
        };
        match PolynomialSystem::parse(text) {
            Ok(system) => {
                *out = new_system(&system);
                HfStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// A copy of the system shipped with the library.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hf_system_shipped(out: *mut *mut HfSystem) -> HfStatus {
    guard(|| {
        if out.is_null() {
            return fail(HfStatus::NullPointer, "out is null");
        }
        *out = new_system(PolynomialSystem::shipped());
        HfStatus::Ok
    })
}

/// Evaluates the 64-to-32-bit map; `x_1` is the most significant input bit
/// and `y_1` the most significant output bit.
///
/// # Safety
/// `system` must come from `hf_system_*`; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hf_system_eval(
    system: *const HfSystem,
    x: u64,
    out: *mut u32,
) -> HfStatus {
    guard(|| {
        let Some(s) = system.as_ref() else {
            return fail(HfStatus::NullPointer, "system is null");
        };
        if out.is_null() {
            return fail(HfStatus::NullPointer, "out is null");
        }
        *out = s.compiled.eval(x);
        HfStatus::Ok
    })
}

/// Releases a system. Null is ignored.
///
/// # Safety
/// `system` must come from `hf_system_*` and not be used again.
#[no_mangle]
pub unsafe extern "C" fn hf_system_free(system: *mut HfSystem) {
    if !system.is_null() {
        drop(Box::from_raw(system));
    }
}

/// Hashes the three published reference inputs and stores how many match.
/// Returns `Ok` whenever the check ran, whatever the count.
///
/// # Safety
/// `passed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hf_self_test(passed: *mut u32) -> HfStatus {
    guard(|| {
        if passed.is_null() {
            return fail(HfStatus::NullPointer, "passed is null");
        }
        *passed = self_test(&HfParams::canonical()).passed() as u32;
        HfStatus::Ok
    })
}

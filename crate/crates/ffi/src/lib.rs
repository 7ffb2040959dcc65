//! C ABI over `bruck-core`.
//!
//! Systems are opaque heap handles created by `bruck_system_from_json` or
//! `bruck_system_load` and released with `bruck_system_free`. Every fallible
//! call returns a [`BruckStatus`]; on failure a description is available from
//! `bruck_last_error` on the same thread until the next failing call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bruck_core::bicyclic::BicyclicElem;
use bruck_core::bruck_reilly::{nat_order, simplicity_witness};
use bruck_core::clifford::CliffordElement;
use bruck_core::verify::{run_all, VerifyParams};
use bruck_core::{brinv, brmul, eta, load_system, BrElement, BrError, BrSystem, C0Elem, ConfigError, SystemConfig};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BruckStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Io = 3,
    Parse = 4,
    ValidationFailed = 5,
    InvalidElement = 6,
    ZeroNotAdjoined = 7,
    ZeroArgument = 8,
    Overflow = 9,
    InvalidWindow = 10,
    CheckFailed = 11,
    Panic = 99,
}

/// A Bruck–Reilly element `(i, level:elem, j)`; `elem`, `level`, `i`, `j`
/// are ignored when `is_zero` is set.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BruckElement {
    pub is_zero: bool,
    pub i: u64,
    pub level: u64,
    pub elem: u64,
    pub j: u64,
}

/// A bicyclic pair `(k, l)`, or the adjoined zero when `is_zero` is set.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BruckPair {
    pub is_zero: bool,
    pub k: u64,
    pub l: u64,
}

/// Opaque handle to a validated system.
pub struct BruckSystem {
    inner: BrSystem,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(BruckStatus, String);

impl From<BrError> for Fail {
    fn from(e: BrError) -> Self {
        let status = match e {
            BrError::ZeroNotAdjoined => BruckStatus::ZeroNotAdjoined,
            BrError::ZeroArgument(_) => BruckStatus::ZeroArgument,
            BrError::InvalidElement(_) => BruckStatus::InvalidElement,
            BrError::IndexOverflow(_) => BruckStatus::Overflow,
            BrError::WindowTooLarge(_) => BruckStatus::InvalidWindow,
            BrError::WitnessVerificationFailed(_) | BrError::OrderNotTotal(_) => BruckStatus::CheckFailed,
        };
        Fail(status, e.to_string())
    }
}

impl From<ConfigError> for Fail {
    fn from(e: ConfigError) -> Self {
        let status = match e {
            ConfigError::Io { .. } => BruckStatus::Io,
            ConfigError::Parse(_) => BruckStatus::Parse,
            ConfigError::ValidationFailed(_) => BruckStatus::ValidationFailed,
        };
        Fail(status, e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(BruckStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, converting errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> BruckStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => BruckStatus::Ok,
        Ok(Err(Fail(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            BruckStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Fail(BruckStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn system_arg<'a>(p: *const BruckSystem) -> Result<&'a BrSystem, Fail> {
    p.as_ref().map(|s| &s.inner).ok_or_else(|| null("system"))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn to_core(x: BruckElement) -> Result<BrElement, Fail> {
    if x.is_zero {
        return Ok(BrElement::Zero);
    }
    let level = usize::try_from(x.level).map_err(|_| Fail(BruckStatus::InvalidElement, "level out of range".into()))?;
    let elem = usize::try_from(x.elem).map_err(|_| Fail(BruckStatus::InvalidElement, "elem out of range".into()))?;
    Ok(BrElement::new(x.i, CliffordElement::new(level, elem), x.j))
}

fn from_core(x: BrElement) -> BruckElement {
    match x {
        BrElement::Zero => BruckElement {
            is_zero: true,
            ..Default::default()
        },
        BrElement::Triple { i, s, j } => BruckElement {
            is_zero: false,
            i,
            level: s.level as u64,
            elem: s.elem as u64,
            j,
        },
    }
}

fn store_system(out: *mut *mut BruckSystem, inner: BrSystem) -> Result<(), Fail> {
    let handle = Box::into_raw(Box::new(BruckSystem { inner }));
    // SAFETY: `out` was checked non-null by the caller.
    unsafe { out.write(handle) };
    Ok(())
}

/// Parses and validates a system from a NUL-terminated JSON string.
///
/// # Safety
/// `json` must be a valid C string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn bruck_system_from_json(json: *const c_char, out: *mut *mut BruckSystem) -> BruckStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        out.write(ptr::null_mut());
        let text = str_arg(json, "json")?;
        store_system(out, SystemConfig::from_json(text)?.build()?)
    })
}

/// Reads, parses and validates a system file.
///
/// # Safety
/// `path` must be a valid C string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn bruck_system_load(path: *const c_char, out: *mut *mut BruckSystem) -> BruckStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        out.write(ptr::null_mut());
        let path = str_arg(path, "path")?;
        store_system(out, load_system(path)?)
    })
}

/// Releases a handle. Null is accepted and ignored.
///
/// # Safety
/// `system` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bruck_system_free(system: *mut BruckSystem) {
    if !system.is_null() {
        drop(Box::from_raw(system));
    }
}

/// Whether the system carries an adjoined zero.
///
/// # Safety
/// `system` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn bruck_system_has_zero(system: *const BruckSystem) -> bool {
    system.as_ref().is_some_and(|s| s.inner.with_zero())
}

/// Number of elements of the underlying chain of groups, or 0 for null.
///
/// # Safety
/// `system` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn bruck_system_group_size(system: *const BruckSystem) -> u64 {
    system.as_ref().map_or(0, |s| s.inner.system().size() as u64)
}

/// # Safety
/// `system` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bruck_mul(
    system: *const BruckSystem,
    x: BruckElement,
    y: BruckElement,
    out: *mut BruckElement,
) -> BruckStatus {
    guard(|| {
        let b = system_arg(system)?;
        let z = brmul(b, to_core(x)?, to_core(y)?)?;
        write_out(out, from_core(z), "out")
    })
}

/// # Safety
/// `system` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bruck_inv(system: *const BruckSystem, x: BruckElement, out: *mut BruckElement) -> BruckStatus {
    guard(|| {
        let b = system_arg(system)?;
        let z = brinv(b, to_core(x)?)?;
        write_out(out, from_core(z), "out")
    })
}

/// Image of `x` under `(i,s,j) ↦ (i,j)`, zero to zero.
///
/// # Safety
/// `system` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bruck_eta(system: *const BruckSystem, x: BruckElement, out: *mut BruckPair) -> BruckStatus {
    guard(|| {
        let b = system_arg(system)?;
        let x = to_core(x)?;
        b.check(x)?;
        let pair = match eta(x) {
            C0Elem::Zero => BruckPair {
                is_zero: true,
                k: 0,
                l: 0,
            },
            C0Elem::Elem(p) => BruckPair {
                is_zero: false,
                k: p.k,
                l: p.l,
            },
        };
        write_out(out, pair, "out")
    })
}

/// Natural partial order: sets `*out` to whether `x ≼ y`.
///
/// # Safety
/// `system` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bruck_nat_order(
    system: *const BruckSystem,
    x: BruckElement,
    y: BruckElement,
    out: *mut bool,
) -> BruckStatus {
    guard(|| {
        let b = system_arg(system)?;
        let below = nat_order(b, to_core(x)?, to_core(y)?)?;
        write_out(out, below, "out")
    })
}

/// Finds `x`, `y` with `x·a·y = b` for nonzero `a`, `b`.
///
/// # Safety
/// `system` must be a live handle; `out_x` and `out_y` writable.
#[no_mangle]
pub unsafe extern "C" fn bruck_witness(
    system: *const BruckSystem,
    a: BruckElement,
    b: BruckElement,
    out_x: *mut BruckElement,
    out_y: *mut BruckElement,
) -> BruckStatus {
    guard(|| {
        let s = system_arg(system)?;
        if out_x.is_null() || out_y.is_null() {
            return Err(null("output"));
        }
        let (x, y) = simplicity_witness(s, to_core(a)?, to_core(b)?)?;
        out_x.write(from_core(x));
        out_y.write(from_core(y));
        Ok(())
    })
}

/// Runs every property suite; `*out_failed` receives the number of suites
/// with violations.
///
/// # Safety
/// `system` must be a live handle and `out_failed` writable.
#[no_mangle]
pub unsafe extern "C" fn bruck_verify_all(
    system: *const BruckSystem,
    window: u64,
    seed: u64,
    out_failed: *mut u32,
) -> BruckStatus {
    guard(|| {
        let b = system_arg(system)?;
        if window == 0 || window > bruck_core::bruck_reilly::MAX_WINDOW {
            return Err(Fail(
                BruckStatus::InvalidWindow,
                format!("window {window} outside 1..=16"),
            ));
        }
        let params = VerifyParams {
            window,
            seed,
            ..VerifyParams::default()
        };
        let failed = run_all(b, &params).iter().filter(|o| !o.ok()).count() as u32;
        write_out(out_failed, failed, "out_failed")
    })
}

/// Product in the bicyclic monoid (with zero when either flag is set).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bruck_bicyclic_mul(x: BruckPair, y: BruckPair, out: *mut BruckPair) -> BruckStatus {
    guard(|| {
        if x.is_zero || y.is_zero {
            return write_out(
                out,
                BruckPair {
                    is_zero: true,
                    k: 0,
                    l: 0,
                },
                "out",
            );
        }
        let z = BicyclicElem::new(x.k, x.l)
            .checked_mul(BicyclicElem::new(y.k, y.l))
            .ok_or_else(|| Fail(BruckStatus::Overflow, "bicyclic product overflows u64".into()))?;
        write_out(
            out,
            BruckPair {
                is_zero: false,
                k: z.k,
                l: z.l,
            },
            "out",
        )
    })
}

/// The message for the most recent failure on this thread, or null. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn bruck_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static C string.
#[no_mangle]
pub extern "C" fn bruck_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

//! C interface to the word-problem solvers.
//!
//! Every call returns a [`BrittonStatus`]. On anything but `BRITTON_STATUS_OK`
//! the message is available from [`britton_last_error`] on the same thread.
//! Strings handed out by the library are freed with [`britton_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use britton::morphisms;
use britton::{Error, Level, Subgroup, Tower, Word};

/// Opaque solver handle.
pub struct BrittonTower {
    inner: Tower,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BrittonStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    UnknownGroup = 4,
    UnknownSubgroup = 5,
    Alphabet = 6,
    Config = 7,
    Hom = 8,
    Budget = 9,
    Panic = 10,
    Other = 11,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(err: &Error) -> BrittonStatus {
    match err {
        Error::Parse { .. } => BrittonStatus::Parse,
        Error::UnknownGroup(_) => BrittonStatus::UnknownGroup,
        Error::UnknownSubgroup(_) => BrittonStatus::UnknownSubgroup,
        Error::Alphabet { .. } => BrittonStatus::Alphabet,
        Error::Config(_) => BrittonStatus::Config,
        Error::Hom(_) => BrittonStatus::Hom,
        Error::Budget(_) => BrittonStatus::Budget,
        _ => BrittonStatus::Other,
    }
}

struct Failure(BrittonStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure(status_of(&e), e.to_string())
    }
}

/// Runs `f`, records any error or panic, and converts it to a status.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> BrittonStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BrittonStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            BrittonStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(BrittonStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(BrittonStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn tower_arg<'a>(t: *const BrittonTower) -> Result<&'a Tower, Failure> {
    t.as_ref()
        .map(|t| &t.inner)
        .ok_or_else(|| Failure(BrittonStatus::NullPointer, "tower is null".into()))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| Failure(BrittonStatus::NullPointer, format!("{what} is null")))
}

fn owned(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

unsafe fn level_and_word(group: *const c_char, word: *const c_char) -> Result<(Level, Word), Failure> {
    let level: Level = str_arg(group, "group")?.parse()?;
    let word = Word::parse(str_arg(word, "word")?)?;
    Ok((level, word))
}

/// Builds the solvers. Free with [`britton_tower_free`]. Returns null on failure.
#[no_mangle]
pub extern "C" fn britton_tower_new() -> *mut BrittonTower {
    let mut out = ptr::null_mut();
    guard(|| {
        out = Box::into_raw(Box::new(BrittonTower { inner: Tower::new() }));
        Ok(())
    });
    out
}

/// # Safety
/// `tower` must come from [`britton_tower_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn britton_tower_free(tower: *mut BrittonTower) {
    if !tower.is_null() {
        drop(Box::from_raw(tower));
    }
}

/// Sets `*out` to whether `word` is trivial in `group` (`h0` .. `g`).
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn britton_wp_is_trivial(
    tower: *const BrittonTower,
    group: *const c_char,
    word: *const c_char,
    out: *mut bool,
) -> BrittonStatus {
    guard(|| {
        let t = tower_arg(tower)?;
        let (level, w) = level_and_word(group, word)?;
        let out = out_arg(out, "out")?;
        *out = t.wp_is_trivial(level, &w)?;
        Ok(())
    })
}

/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn britton_wp_equal(
    tower: *const BrittonTower,
    group: *const c_char,
    lhs: *const c_char,
    rhs: *const c_char,
    out: *mut bool,
) -> BrittonStatus {
    guard(|| {
        let t = tower_arg(tower)?;
        let (level, a) = level_and_word(group, lhs)?;
        let b = Word::parse(str_arg(rhs, "rhs")?)?;
        let out = out_arg(out, "out")?;
        *out = t.wp_equal(level, &a, &b)?;
        Ok(())
    })
}

/// Writes a newly allocated reduced word to `*out`.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn britton_normal_form(
    tower: *const BrittonTower,
    group: *const c_char,
    word: *const c_char,
    out: *mut *mut c_char,
) -> BrittonStatus {
    guard(|| {
        let t = tower_arg(tower)?;
        let (level, w) = level_and_word(group, word)?;
        let out = out_arg(out, "out")?;
        *out = owned(t.normal_form(level, &w)?.to_string());
        Ok(())
    })
}

/// Membership of `word` in a named cyclic subgroup such as `<s^3>` or `u`,
/// decided in the subgroup's own level. On membership `*exponent` receives
/// the decimal exponent, otherwise null.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn britton_subgroup_member(
    tower: *const BrittonTower,
    subgroup: *const c_char,
    word: *const c_char,
    member: *mut bool,
    exponent: *mut *mut c_char,
) -> BrittonStatus {
    guard(|| {
        let t = tower_arg(tower)?;
        let sub: Subgroup = str_arg(subgroup, "subgroup")?.parse()?;
        let w = Word::parse(str_arg(word, "word")?)?;
        let member = out_arg(member, "member")?;
        let exponent = out_arg(exponent, "exponent")?;
        let n = t.subgroup_member(sub.level(), sub, &w)?;
        *member = n.is_some();
        *exponent = n.map_or(ptr::null_mut(), |n| owned(n.to_string()));
        Ok(())
    })
}

/// Runs the non-Hopfian certificate for the built-in map. `*report` gets
/// the certificate as JSON when non-null.
///
/// # Safety
/// `tower` and `pass` must be valid; `report` may be null.
#[no_mangle]
pub unsafe extern "C" fn britton_certify_nonhopfian(
    tower: *const BrittonTower,
    pass: *mut bool,
    report: *mut *mut c_char,
) -> BrittonStatus {
    guard(|| {
        let t = tower_arg(tower)?;
        let pass = out_arg(pass, "pass")?;
        let mut psi = morphisms::psi();
        let cert =
            morphisms::certify_non_hopfian(t, &mut psi, &morphisms::psi_kernel_witness(), &morphisms::psi_witnesses())?;
        *pass = cert.verdict;
        if let Some(r) = report.as_mut() {
            let json = serde_json::to_string(&cert).map_err(|e| Failure(BrittonStatus::Other, e.to_string()))?;
            *r = owned(json);
        }
        Ok(())
    })
}

/// The message for the last failed call on this thread, or null. Valid
/// until the next call on this thread.
#[no_mangle]
pub extern "C" fn britton_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn britton_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn britton_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

//! C ABI for the `nanophrase` library.
//!
//! Triples and phrases are opaque handles owned by the caller and released
//! with `np_triple_free` / `np_phrase_free`. Every fallible function returns
//! an [`NpStatus`]; on failure `np_last_error` gives a message for the
//! calling thread. Strings handed out by the library are NUL-terminated,
//! UTF-8, and must be released with `np_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nanophrase::decompose::complete_invariant;
use nanophrase::invariants::{fingerprint, InvariantKind};
use nanophrase::rewrite::{decide_equal, decide_reducible, Decision, SearchBudget, Verdict};
use nanophrase::{parse_phrase, parse_triple, Error, HomotopyDataTriple, Nanophrase};

/// Opaque homotopy data triple.
pub struct NpTriple(HomotopyDataTriple);

/// Opaque nanophrase.
pub struct NpPhrase(Nanophrase);

#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NpStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Syntax = 3,
    /// The phrase is not a Gauss phrase or uses undeclared letters or symbols.
    InvalidPhrase = 4,
    /// The triple is malformed, or unit/prime where that is not allowed.
    InvalidTriple = 5,
    IndexOutOfRange = 6,
    /// The operation does not apply to this triple (for example a diagonal
    /// invariant on a non-diagonal triple).
    Unsupported = 7,
    UnknownName = 8,
    Panic = 9,
    Other = 10,
}

#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NpVerdict {
    Yes = 0,
    No = 1,
    Unknown = 2,
}

/// Search limits for the deciders.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct NpBudget {
    pub rank_delta: usize,
    pub node_budget: usize,
}

impl From<NpBudget> for SearchBudget {
    fn from(b: NpBudget) -> Self {
        SearchBudget { rank_delta: b.rank_delta, node_budget: b.node_budget }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> NpStatus {
    match err {
        Error::Syntax { .. } => NpStatus::Syntax,
        Error::NonGauss { .. } | Error::UndeclaredLetter { .. } | Error::UnknownSymbol { .. } => NpStatus::InvalidPhrase,
        Error::InvalidTriple(_) | Error::UnitTriple | Error::PrimeTriple => NpStatus::InvalidTriple,
        Error::IndexOutOfRange { .. } => NpStatus::IndexOutOfRange,
        Error::SNotEmpty | Error::NotDiagonal => NpStatus::Unsupported,
        _ => NpStatus::Other,
    }
}

struct Fail(NpStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, recording any error or panic for `np_last_error`.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> NpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NpStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            NpStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail(NpStatus::NullArgument, "null string argument".into()));
    }
    CStr::from_ptr(s).to_str().map_err(|e| Fail(NpStatus::InvalidUtf8, e.to_string()))
}

unsafe fn ref_arg<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(NpStatus::NullArgument, "null handle".into()))
}

unsafe fn out_arg<'a, T>(p: *mut T) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| Fail(NpStatus::NullArgument, "null output pointer".into()))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior NUL").into_raw()
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn np_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn np_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The budget the command line tool uses when none is given.
#[no_mangle]
pub extern "C" fn np_budget_default() -> NpBudget {
    let b = SearchBudget::default();
    NpBudget { rank_delta: b.rank_delta, node_budget: b.node_budget }
}

/// Parses a triple from its text form. `"alpha_G"` and `"alpha_F"` name the
/// two one-orbit primes.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn np_triple_parse(text: *const c_char, out: *mut *mut NpTriple) -> NpStatus {
    guard(|| {
        let out = out_arg(out)?;
        let text = str_arg(text)?;
        let t = match text.trim() {
            "alpha_G" | "alpha_g" => HomotopyDataTriple::alpha_g(),
            "alpha_F" | "alpha_f" => HomotopyDataTriple::alpha_f(),
            _ => parse_triple(text)?,
        };
        *out = Box::into_raw(Box::new(NpTriple(t)));
        Ok(())
    })
}

/// # Safety
/// `t` must be NULL or a handle from `np_triple_parse` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn np_triple_free(t: *mut NpTriple) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Writes the text form of `t` to `out`.
///
/// # Safety
/// `t` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn np_triple_render(t: *const NpTriple, out: *mut *mut c_char) -> NpStatus {
    guard(|| {
        let out = out_arg(out)?;
        *out = c_string(ref_arg(t)?.0.to_string());
        Ok(())
    })
}

/// Number of prime factors of `t`. The unit triple has none.
///
/// # Safety
/// `t` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn np_triple_num_factors(t: *const NpTriple, out: *mut usize) -> NpStatus {
    guard(|| {
        let out = out_arg(out)?;
        *out = ref_arg(t)?.0.factorize().len();
        Ok(())
    })
}

/// Parses a nanophrase, for example `"A:a B:b ; AB|BA"`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn np_phrase_parse(text: *const c_char, out: *mut *mut NpPhrase) -> NpStatus {
    guard(|| {
        let out = out_arg(out)?;
        let p = parse_phrase(str_arg(text)?)?;
        *out = Box::into_raw(Box::new(NpPhrase(p)));
        Ok(())
    })
}

/// # Safety
/// `p` must be NULL or a handle from `np_phrase_parse` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn np_phrase_free(p: *mut NpPhrase) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Writes the canonical text form of `p` to `out`.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn np_phrase_render(p: *const NpPhrase, out: *mut *mut c_char) -> NpStatus {
    guard(|| {
        let out = out_arg(out)?;
        *out = c_string(ref_arg(p)?.0.canonical().to_string());
        Ok(())
    })
}

/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn np_phrase_num_components(p: *const NpPhrase, out: *mut usize) -> NpStatus {
    guard(|| {
        let out = out_arg(out)?;
        *out = ref_arg(p)?.0.num_components();
        Ok(())
    })
}

/// Number of distinct letters in `p`.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn np_phrase_rank(p: *const NpPhrase, out: *mut usize) -> NpStatus {
    guard(|| {
        let out = out_arg(out)?;
        *out = ref_arg(p)?.0.rank();
        Ok(())
    })
}

fn report(d: Decision, verdict: &mut NpVerdict, detail: *mut *mut c_char) {
    *verdict = match d.verdict() {
        Verdict::Yes => NpVerdict::Yes,
        Verdict::No => NpVerdict::No,
        Verdict::Unknown => NpVerdict::Unknown,
    };
    if !detail.is_null() {
        // SAFETY: checked non-null; the caller promises it is writable.
        unsafe { *detail = c_string(d.to_string()) };
    }
}

/// Decides whether `p` and `q` are homotopic over `t`. If `detail` is not
/// NULL it receives a description of the certificate, obstruction or
/// exhausted search.
///
/// # Safety
/// Handles must be live; `verdict` must be valid; `detail` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn np_decide_equal(
    t: *const NpTriple,
    p: *const NpPhrase,
    q: *const NpPhrase,
    budget: NpBudget,
    verdict: *mut NpVerdict,
    detail: *mut *mut c_char,
) -> NpStatus {
    guard(|| {
        let verdict = out_arg(verdict)?;
        let d = decide_equal(&ref_arg(p)?.0, &ref_arg(q)?.0, &ref_arg(t)?.0, budget.into())?;
        report(d, verdict, detail);
        Ok(())
    })
}

/// Decides whether component `index` (0-based) of `p` can be emptied by a
/// homotopy.
///
/// # Safety
/// Handles must be live; `verdict` must be valid; `detail` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn np_decide_reducible(
    t: *const NpTriple,
    p: *const NpPhrase,
    index: usize,
    budget: NpBudget,
    verdict: *mut NpVerdict,
    detail: *mut *mut c_char,
) -> NpStatus {
    guard(|| {
        let verdict = out_arg(verdict)?;
        let d = decide_reducible(&ref_arg(p)?.0, index, &ref_arg(t)?.0, budget.into())?;
        report(d, verdict, detail);
        Ok(())
    })
}

/// Renders one invariant of `p` by name: `parity`, `linking`, `v`, `u`,
/// or `so` (case-insensitive), or `fingerprint` for all that apply.
///
/// # Safety
/// Handles must be live, `name` NUL-terminated and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn np_invariant(
    t: *const NpTriple,
    p: *const NpPhrase,
    name: *const c_char,
    out: *mut *mut c_char,
) -> NpStatus {
    guard(|| {
        let out = out_arg(out)?;
        let (t, p, name) = (&ref_arg(t)?.0, &ref_arg(p)?.0, str_arg(name)?);
        let text = if name.eq_ignore_ascii_case("fingerprint") {
            fingerprint(p, t)?
        } else {
            let kind = InvariantKind::from_name(name)
                .ok_or_else(|| Fail(NpStatus::UnknownName, format!("unknown invariant {name:?}")))?;
            if !kind.applies_to(t) {
                return Err(Fail(NpStatus::Unsupported, format!("{} needs a diagonal triple", kind.name())));
            }
            kind.render(p, t)?
        };
        *out = c_string(text);
        Ok(())
    })
}

/// Serialized reduced class of `p` over a composite triple `t`. Two phrases
/// are homotopic when their classes compare equal factor by factor.
///
/// # Safety
/// Handles must be live and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn np_complete_invariant(
    t: *const NpTriple,
    p: *const NpPhrase,
    budget: NpBudget,
    out: *mut *mut c_char,
) -> NpStatus {
    guard(|| {
        let out = out_arg(out)?;
        let class = complete_invariant(&ref_arg(p)?.0, &ref_arg(t)?.0, budget.into())?;
        *out = c_string(class.serialize());
        Ok(())
    })
}

//! C ABI over the homlab core: opaque digraph handles, status codes, and
//! string results for arbitrary-precision values.
//!
//! Conventions:
//! - every function returning [`Status`] writes its result through an out
//!   pointer on success and leaves it untouched otherwise;
//! - strings returned through out pointers are heap-allocated and must be
//!   released with [`hl_string_free`];
//! - handles must be released with [`hl_digraph_free`];
//! - on failure, a thread-local message is readable via
//!   [`hl_last_error_message`] until the next failing call on that thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use homlab::digraph::Digraph;
use homlab::error::Error;
use homlab::{homs, shells, taxonomy};

/// Result discipline of every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    Ok = 0,
    /// a required pointer was null or an argument was out of range
    InvalidArgument = 1,
    /// text input did not parse
    ParseError = 2,
    /// a precondition of the underlying operation failed
    DomainError = 3,
}

/// Opaque digraph handle.
pub struct HlDigraph {
    inner: Digraph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let cstring = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(cstring));
}

fn status_of(e: &Error) -> Status {
    match e {
        Error::Parse(_) | Error::Io(_) => Status::ParseError,
        _ => Status::DomainError,
    }
}

/// The message of the last failing call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |s| s.as_ptr())
    })
}

/// Releases a string returned through an out pointer.
///
/// # Safety
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the plain text digraph format into a fresh handle.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hl_digraph_parse(text: *const c_char, out: *mut *mut HlDigraph) -> Status {
    if text.is_null() || out.is_null() {
        return Status::InvalidArgument;
    }
    let raw = match CStr::from_ptr(text).to_str() {
        Ok(s) => s,
        Err(_) => {
            set_error("digraph text is not valid UTF-8".into());
            return Status::ParseError;
        }
    };
    match Digraph::from_text(raw) {
        Ok(g) => {
            *out = Box::into_raw(Box::new(HlDigraph { inner: g }));
            Status::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            status_of(&e)
        }
    }
}

/// The chain of length `n` as a fresh handle.
#[no_mangle]
pub extern "C" fn hl_digraph_chain(n: usize) -> *mut HlDigraph {
    Box::into_raw(Box::new(HlDigraph {
        inner: Digraph::chain(n),
    }))
}

/// Releases a digraph handle.
///
/// # Safety
/// `g` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hl_digraph_free(g: *mut HlDigraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, or zero for a null handle.
///
/// # Safety
/// `g` must be a live handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn hl_digraph_vertex_count(g: *const HlDigraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.vertex_count())
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> Status {
    match CString::new(text) {
        Ok(s) => {
            *out = s.into_raw();
            Status::Ok
        }
        Err(_) => {
            set_error("result contained an interior NUL".into());
            Status::DomainError
        }
    }
}

/// Serializes a digraph back to the plain text format.
///
/// # Safety
/// `g` must be a live handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hl_digraph_to_text(g: *const HlDigraph, out: *mut *mut c_char) -> Status {
    let (Some(g), false) = (g.as_ref(), out.is_null()) else {
        return Status::InvalidArgument;
    };
    write_string(out, g.inner.to_text())
}

/// Exact homomorphism count, written as a decimal string: counts grow beyond
/// any fixed-width integer.
///
/// # Safety
/// `g` and `h` must be live handles, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hl_hom_count(
    g: *const HlDigraph,
    h: *const HlDigraph,
    strict: bool,
    out: *mut *mut c_char,
) -> Status {
    let (Some(g), Some(h), false) = (g.as_ref(), h.as_ref(), out.is_null()) else {
        return Status::InvalidArgument;
    };
    match homs::hom_count(&g.inner, &h.inner, strict) {
        Ok(n) => write_string(out, n.to_string()),
        Err(e) => {
            set_error(e.to_string());
            status_of(&e)
        }
    }
}

/// Classification record as a single JSON line; `n` below zero means
/// "use the height".
///
/// # Safety
/// `g` must be a live handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hl_classify_json(
    g: *const HlDigraph,
    n: i64,
    out: *mut *mut c_char,
) -> Status {
    let (Some(g), false) = (g.as_ref(), out.is_null()) else {
        return Status::InvalidArgument;
    };
    let param = if n < 0 { None } else { Some(n as usize) };
    write_string(out, taxonomy::class_report(&g.inner, param).to_json_line())
}

/// The exact strict-to-class ratio as a reduced fraction string.
///
/// # Safety
/// `g` must be a live handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hl_phi(g: *const HlDigraph, out: *mut *mut c_char) -> Status {
    let (Some(g), false) = (g.as_ref(), out.is_null()) else {
        return Status::InvalidArgument;
    };
    match shells::phi(&g.inner) {
        Ok(phi) => write_string(out, phi.to_string()),
        Err(e) => {
            set_error(e.to_string());
            status_of(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    unsafe fn parse(text: &str) -> *mut HlDigraph {
        let c = CString::new(text).unwrap();
        let mut out: *mut HlDigraph = std::ptr::null_mut();
        assert_eq!(hl_digraph_parse(c.as_ptr(), &mut out), Status::Ok);
        out
    }

    unsafe fn take_string(p: *mut c_char) -> String {
        let s = CStr::from_ptr(p).to_str().unwrap().to_string();
        hl_string_free(p);
        s
    }

    #[test]
    fn count_through_the_abi() {
        unsafe {
            let g = hl_digraph_chain(1);
            let mut out: *mut c_char = std::ptr::null_mut();
            assert_eq!(hl_hom_count(g, g, false, &mut out), Status::Ok);
            assert_eq!(take_string(out), "3");
            assert_eq!(hl_hom_count(g, g, true, &mut out), Status::Ok);
            assert_eq!(take_string(out), "1");
            hl_digraph_free(g);
        }
    }

    #[test]
    fn parse_round_trip_and_errors() {
        unsafe {
            let g = parse("digraph 2\n0 1\n");
            assert_eq!(hl_digraph_vertex_count(g), 2);
            let mut out: *mut c_char = std::ptr::null_mut();
            assert_eq!(hl_digraph_to_text(g, &mut out), Status::Ok);
            assert_eq!(take_string(out), "digraph 2\n0 1\n");
            hl_digraph_free(g);

            let bad = CString::new("nonsense").unwrap();
            let mut h: *mut HlDigraph = std::ptr::null_mut();
            assert_eq!(hl_digraph_parse(bad.as_ptr(), &mut h), Status::ParseError);
            assert!(!hl_last_error_message().is_null());
        }
    }

    #[test]
    fn phi_and_classify() {
        unsafe {
            // chain 0<1<2<3 with 4 squeezed between the ends
            let g = parse(
                "digraph 5\n0 0\n0 1\n0 2\n0 3\n0 4\n1 1\n1 2\n1 3\n2 2\n2 3\n3 3\n4 3\n4 4\n",
            );
            let mut out: *mut c_char = std::ptr::null_mut();
            assert_eq!(hl_phi(g, &mut out), Status::Ok);
            assert_eq!(take_string(out), "1/2");
            assert_eq!(hl_classify_json(g, -1, &mut out), Status::Ok);
            let json = take_string(out);
            assert!(json.contains("\"poset\":true"));
            assert!(json.contains("\"in_taghna\":true"));
            hl_digraph_free(g);

            // a flat fence has no capsule ratio when a vertex dangles
            let h = parse("digraph 2\n0 0\n1 1\n0 1\n");
            assert_eq!(hl_phi(h, &mut out), Status::Ok);
            assert_eq!(take_string(out), "1");
            hl_digraph_free(h);
        }
    }

    #[test]
    fn null_handling() {
        unsafe {
            let mut out: *mut c_char = std::ptr::null_mut();
            assert_eq!(
                hl_hom_count(std::ptr::null(), std::ptr::null(), false, &mut out),
                Status::InvalidArgument
            );
            assert_eq!(hl_digraph_vertex_count(std::ptr::null()), 0);
            hl_digraph_free(std::ptr::null_mut());
            hl_string_free(std::ptr::null_mut());
        }
    }
}

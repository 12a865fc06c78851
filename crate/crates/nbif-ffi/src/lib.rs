//! C ABI for the bifurcation-set analysis library.
//!
//! Polynomials are parsed once into an opaque handle; analysis entry
//! points return JSON documents (or SVG text) as heap-allocated C strings
//! that must be released with [`nbif_string_free`]. Every function returns
//! a status code; a human-readable message for the most recent failure on
//! the current thread is available via [`nbif_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use nbif::atinfinity::{bifurcation_set, counts};
use nbif::bound::{bound_components, refine_bound, theorem5_bound};
use nbif::cli::{analyze_json, svg_string, ReportOptions};
use nbif::fan::complete_fan;
use nbif::newton::{infinity_faces, newton_polygon};
use nbif::Error;

/// Opaque parsed polynomial.
pub struct NbifPoly {
    inner: nbif::bivar::BiPoly,
    text: String,
}

/// Status codes returned by every entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NbifStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    ConstantPolynomial = 4,
    /// The theorem hypotheses fail; JSON output (when requested) still
    /// carries the verdict and the upper bound.
    HypothesisViolated = 5,
    InternalError = 6,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let cstr = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(cstr));
}

fn status_of(e: &Error) -> NbifStatus {
    match e {
        Error::Parse { .. } => NbifStatus::ParseError,
        Error::ZeroPolynomial | Error::ConstantPolynomial => NbifStatus::ConstantPolynomial,
        Error::HypothesisViolated(_) => NbifStatus::HypothesisViolated,
        _ => NbifStatus::InternalError,
    }
}

fn out_string(s: String, out: *mut *mut c_char) -> NbifStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            NbifStatus::Ok
        }
        Err(_) => {
            set_last_error("output contained an interior NUL byte".into());
            NbifStatus::InternalError
        }
    }
}

/// Message for the most recent failure on this thread, or NULL. The
/// pointer is owned by the library and valid until the next failing call
/// on the same thread.
#[no_mangle]
pub extern "C" fn nbif_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |c| c.as_ptr())
    })
}

/// Parses a polynomial in `x`, `y` with rational coefficients.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
/// On success `*out` owns the handle; release it with [`nbif_poly_free`].
#[no_mangle]
pub unsafe extern "C" fn nbif_poly_parse(
    text: *const c_char,
    out: *mut *mut NbifPoly,
) -> NbifStatus {
    if text.is_null() || out.is_null() {
        set_last_error("null argument".into());
        return NbifStatus::NullArgument;
    }
    let Ok(text) = CStr::from_ptr(text).to_str() else {
        set_last_error("input is not valid UTF-8".into());
        return NbifStatus::InvalidUtf8;
    };
    match nbif::cli::parse_poly(text) {
        Ok(poly) => {
            let handle = Box::new(NbifPoly {
                inner: poly,
                text: text.to_string(),
            });
            *out = Box::into_raw(handle);
            NbifStatus::Ok
        }
        Err(e) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
    }
}

/// Releases a polynomial handle.
///
/// # Safety
/// `poly` must be a handle returned by [`nbif_poly_parse`] (or NULL), not
/// yet freed.
#[no_mangle]
pub unsafe extern "C" fn nbif_poly_free(poly: *mut NbifPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Releases a string returned by any analysis entry point.
///
/// # Safety
/// `s` must be a string returned by this library (or NULL), not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nbif_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn guard<F: FnOnce() -> NbifStatus>(f: F) -> NbifStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_last_error("internal panic".into());
            NbifStatus::InternalError
        }
    }
}

/// Full analysis as a JSON document: hypotheses, critical values,
/// conditions at infinity, the bifurcation set, family counts, and the
/// upper bound. On hypothesis violation the JSON carries the verdict and
/// the bound fallback and the status is `HypothesisViolated`.
///
/// # Safety
/// `poly` must be a live handle and `out_json` a valid pointer; the
/// returned string must be freed with [`nbif_string_free`].
#[no_mangle]
pub unsafe extern "C" fn nbif_analyze_json(
    poly: *const NbifPoly,
    out_json: *mut *mut c_char,
) -> NbifStatus {
    if poly.is_null() || out_json.is_null() {
        set_last_error("null argument".into());
        return NbifStatus::NullArgument;
    }
    let p = &*poly;
    guard(|| {
        let opts = ReportOptions::from_env();
        match bifurcation_set(&p.inner) {
            Ok(mut rep) => {
                let bound = match bound_components(&p.inner, rep.sigma.len()) {
                    Ok(b) => b,
                    Err(e) => {
                        set_last_error(e.to_string());
                        return status_of(&e);
                    }
                };
                rep.bound = Some(bound);
                out_string(analyze_json(&p.text, &rep, &opts).to_string(), out_json)
            }
            Err(Error::HypothesisViolated(v)) => {
                let bound = match theorem5_bound(&p.inner) {
                    Ok(b) => b,
                    Err(e) => {
                        set_last_error(e.to_string());
                        return status_of(&e);
                    }
                };
                let doc = nbif::cli::violation_json(&p.text, &v, &bound);
                let st = out_string(doc.to_string(), out_json);
                if st == NbifStatus::Ok {
                    set_last_error("theorem hypotheses violated".into());
                    NbifStatus::HypothesisViolated
                } else {
                    st
                }
            }
            Err(e) => {
                set_last_error(e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Cleaving/vanishing family counts as JSON.
///
/// # Safety
/// As for [`nbif_analyze_json`].
#[no_mangle]
pub unsafe extern "C" fn nbif_counts_json(
    poly: *const NbifPoly,
    out_json: *mut *mut c_char,
) -> NbifStatus {
    if poly.is_null() || out_json.is_null() {
        set_last_error("null argument".into());
        return NbifStatus::NullArgument;
    }
    let p = &*poly;
    guard(|| match counts(&p.inner) {
        Ok(c) => {
            let doc = serde_json::json!({
                "input": p.text,
                "r_plus": c.r_plus,
                "r_zero": c.r_zero,
                "total": c.total,
                "vanish_min": c.vanish_min,
                "vanish_max": c.vanish_max,
                "exact_split": c.exact_split.map(|(cl, va)| {
                    serde_json::json!({"cleav": cl, "vanish": va})
                }),
            });
            out_string(doc.to_string(), out_json)
        }
        Err(e) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
    })
}

/// Upper bound on `|B_f|` with the refinement ledger, as JSON.
///
/// # Safety
/// As for [`nbif_analyze_json`].
#[no_mangle]
pub unsafe extern "C" fn nbif_bound_json(
    poly: *const NbifPoly,
    max_depth: u32,
    out_json: *mut *mut c_char,
) -> NbifStatus {
    if poly.is_null() || out_json.is_null() {
        set_last_error("null argument".into());
        return NbifStatus::NullArgument;
    }
    let p = &*poly;
    guard(|| match refine_bound(&p.inner, max_depth as usize) {
        Ok(ledger) => {
            let doc = serde_json::json!({
                "input": p.text,
                "sigma_size": ledger.sigma_size,
                "final_bound": ledger.final_bound,
                "steps": ledger.entries.len(),
            });
            out_string(doc.to_string(), out_json)
        }
        Err(e) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
    })
}

/// Newton polygon (and fan) rendered as an SVG document.
///
/// # Safety
/// As for [`nbif_analyze_json`].
#[no_mangle]
pub unsafe extern "C" fn nbif_polygon_svg(
    poly: *const NbifPoly,
    out_svg: *mut *mut c_char,
) -> NbifStatus {
    if poly.is_null() || out_svg.is_null() {
        set_last_error("null argument".into());
        return NbifStatus::NullArgument;
    }
    let p = &*poly;
    guard(|| {
        let polygon = match newton_polygon(&p.inner) {
            Ok(v) => v,
            Err(e) => {
                set_last_error(e.to_string());
                return status_of(&e);
            }
        };
        let faces = match infinity_faces(&p.inner) {
            Ok(v) => v,
            Err(e) => {
                set_last_error(e.to_string());
                return status_of(&e);
            }
        };
        let fan = if faces.is_empty() {
            None
        } else {
            match complete_fan(&faces.iter().map(|f| f.covector).collect::<Vec<_>>()) {
                Ok(f) => Some(f),
                Err(e) => {
                    set_last_error(e.to_string());
                    return status_of(&e);
                }
            }
        };
        out_string(svg_string(&polygon, &faces, fan.as_ref()), out_svg)
    })
}

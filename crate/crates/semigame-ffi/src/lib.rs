//! C ABI for the semigame compiler and verifier.
//!
//! Conventions:
//! - Handles (`sg_certificate`, `sg_game`) are opaque; free them with the
//!   matching `sg_*_free`.
//! - Functions returning `int32_t` use status codes: 0 success,
//!   1 verification failure, 2 input error, 3 internal error. On failure
//!   `sg_last_error` returns a copy of the diagnostic for this thread.
//! - Returned strings are NUL-terminated, owned by the caller, and must be
//!   released with `sg_string_free`.

#![allow(non_camel_case_types)]

use libc::{c_char, c_int, c_uint};
use semigame::cert::{Certificate, Mode};
use semigame::compile::{compile_equilibrium, compile_payoff, CompilationIndex, CompileOptions};
use semigame::export::{game_to_json, grid_report_json, refute_outcome_json};
use semigame::game::BinaryGame;
use semigame::integer::compile_integer;
use semigame::parse::parse_certificate;
use semigame::rational::{rat_from_str, Rat};
use semigame::verify::{canonical_profile, project_grid, refute};
use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

pub const SG_OK: c_int = 0;
pub const SG_VERIFICATION_FAILURE: c_int = 1;
pub const SG_INPUT_ERROR: c_int = 2;
pub const SG_INTERNAL_ERROR: c_int = 3;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into();
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn to_owned_cstr(s: String) -> *mut c_char {
    CString::new(s)
        .unwrap_or_else(|_| CString::new("").unwrap())
        .into_raw()
}

/// Opaque parsed certificate.
pub struct sg_certificate {
    cert: Certificate,
}

/// Opaque compiled game together with its compilation index.
pub struct sg_game {
    game: BinaryGame,
    index: CompilationIndex,
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, c_int> {
    if ptr.is_null() {
        set_error("null pointer argument");
        return Err(SG_INPUT_ERROR);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        SG_INPUT_ERROR
    })
}

fn guard<F: FnOnce() -> c_int>(f: F) -> c_int {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(code) => code,
        Err(_) => {
            set_error("internal panic");
            SG_INTERNAL_ERROR
        }
    }
}

/// Version of the library, as a static string (do not free).
#[no_mangle]
pub extern "C" fn sg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Copy of the last error message on this thread, or NULL if none.
/// Free with `sg_string_free`.
#[no_mangle]
pub extern "C" fn sg_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| match &*e.borrow() {
        Some(c) => c.clone().into_raw(),
        None => ptr::null_mut(),
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must have been returned by a `semigame` function and not freed yet.
#[no_mangle]
pub unsafe extern "C" fn sg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses certificate text into a handle.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be valid to
/// write one pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_certificate_parse(
    text: *const c_char,
    out: *mut *mut sg_certificate,
) -> c_int {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return SG_INPUT_ERROR;
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(code) => return code,
        };
        match parse_certificate(text) {
            Ok(cert) => {
                *out = Box::into_raw(Box::new(sg_certificate { cert }));
                SG_OK
            }
            Err(e) => {
                set_error(e.to_string());
                SG_INPUT_ERROR
            }
        }
    })
}

/// # Safety
/// `cert` must be a live handle from `sg_certificate_parse` (or NULL).
#[no_mangle]
pub unsafe extern "C" fn sg_certificate_free(cert: *mut sg_certificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// Hex SHA-256 digest of the certificate's canonical text.
///
/// # Safety
/// `cert` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn sg_certificate_digest(cert: *const sg_certificate) -> *mut c_char {
    if cert.is_null() {
        set_error("null certificate handle");
        return ptr::null_mut();
    }
    to_owned_cstr((*cert).cert.digest())
}

/// Compiles a certificate. `integer_mode != 0` selects the all-integer
/// construction; `allow_undecided != 0` accepts an UNDECIDED witness.
///
/// # Safety
/// `cert` must be a live handle; `out` must be valid to write one pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_compile(
    cert: *const sg_certificate,
    integer_mode: c_int,
    allow_undecided: c_int,
    out: *mut *mut sg_game,
) -> c_int {
    guard(|| {
        if cert.is_null() || out.is_null() {
            set_error("null pointer argument");
            return SG_INPUT_ERROR;
        }
        let cert = &(*cert).cert;
        let opts = CompileOptions {
            allow_undecided_witness: allow_undecided != 0,
            ..Default::default()
        };
        let compiled = if integer_mode != 0 {
            compile_integer(cert, &opts).map_err(|e| e.to_string())
        } else {
            match cert.mode {
                Mode::Equilibrium => compile_equilibrium(cert, &opts).map_err(|e| e.to_string()),
                Mode::Payoff { .. } => compile_payoff(cert, &opts).map_err(|e| e.to_string()),
            }
        };
        match compiled {
            Ok((game, index)) => {
                *out = Box::into_raw(Box::new(sg_game { game, index }));
                SG_OK
            }
            Err(e) => {
                set_error(e);
                SG_INPUT_ERROR
            }
        }
    })
}

/// # Safety
/// `game` must be a live handle from `sg_compile` (or NULL).
#[no_mangle]
pub unsafe extern "C" fn sg_game_free(game: *mut sg_game) {
    if !game.is_null() {
        drop(Box::from_raw(game));
    }
}

/// Number of players of a compiled game (0 on a NULL handle).
///
/// # Safety
/// `game` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn sg_game_player_count(game: *const sg_game) -> c_uint {
    if game.is_null() {
        return 0;
    }
    (*game).game.n_players() as c_uint
}

/// Serializes the game to its JSON schema.
///
/// # Safety
/// `game` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn sg_game_to_json(game: *const sg_game) -> *mut c_char {
    if game.is_null() {
        set_error("null game handle");
        return ptr::null_mut();
    }
    let g = &*game;
    to_owned_cstr(game_to_json(&g.game, Some(&g.index)))
}

/// Checks one point (comma-separated rationals; payoff-mode points live in
/// `[-D, D]^n`). Writes a JSON verdict to `out_json`. Returns 0 when the
/// game-side verdict agrees with membership, 1 when it disagrees, 2 on bad
/// input.
///
/// # Safety
/// `game` must be a live handle; `point_csv` a valid string; `out_json`
/// valid to write one pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_check_point(
    game: *const sg_game,
    point_csv: *const c_char,
    out_json: *mut *mut c_char,
) -> c_int {
    guard(|| {
        if game.is_null() || out_json.is_null() {
            set_error("null pointer argument");
            return SG_INPUT_ERROR;
        }
        let g = &*game;
        let text = match read_str(point_csv) {
            Ok(t) => t,
            Err(code) => return code,
        };
        let coords: Result<Vec<Rat>, _> =
            text.split(',').map(|t| rat_from_str(t.trim())).collect();
        let raw = match coords {
            Ok(c) => c,
            Err(e) => {
                set_error(e);
                return SG_INPUT_ERROR;
            }
        };
        if raw.len() != g.index.cert.n() {
            set_error(format!(
                "point has {} coordinates, certificate has {}",
                raw.len(),
                g.index.cert.n()
            ));
            return SG_INPUT_ERROR;
        }
        let x: Vec<Rat> = match &g.index.box_radius {
            None => raw.clone(),
            Some(d) => {
                let two_d = d + d;
                raw.iter().map(|xi| (xi + d) / &two_d).collect()
            }
        };
        let one = Rat::from_integer(1.into());
        if x.iter().any(|xi| xi < &Rat::from_integer(0.into()) || xi > &one) {
            set_error("point outside the box");
            return SG_INPUT_ERROR;
        }
        let member = match g.index.cert.membership(&x) {
            Ok(m) => m,
            Err(e) => {
                set_error(e.to_string());
                return SG_INPUT_ERROR;
            }
        };
        let (agreed, payload) = if member {
            let profile = match canonical_profile(&g.index, &x) {
                Ok(p) => p,
                Err(e) => {
                    set_error(e.to_string());
                    return SG_INTERNAL_ERROR;
                }
            };
            let verdict = match g.game.check_equilibrium(&profile, &Rat::from_integer(0.into())) {
                Ok(v) => v,
                Err(e) => {
                    set_error(e.to_string());
                    return SG_INTERNAL_ERROR;
                }
            };
            let payload = serde_json::json!({
                "member": true,
                "verdict": "in",
                "canonical_pass": verdict.pass,
                "profile": profile
                    .probs
                    .iter()
                    .map(semigame::rational::rat_to_string)
                    .collect::<Vec<_>>(),
            });
            (verdict.pass, payload)
        } else {
            match refute(&g.index, &x) {
                Ok(outcome) => {
                    let agreed = outcome.is_refuted();
                    let mut payload = refute_outcome_json(&outcome, &g.game);
                    payload["member"] = serde_json::json!(false);
                    payload["verdict"] = serde_json::json!("out");
                    (agreed, payload)
                }
                Err(e) => {
                    set_error(e.to_string());
                    return SG_INTERNAL_ERROR;
                }
            }
        };
        let mut s = serde_json::to_string_pretty(&payload).expect("check payload");
        s.push('\n');
        *out_json = to_owned_cstr(s);
        if agreed {
            SG_OK
        } else {
            set_error("game verdict disagrees with membership");
            SG_VERIFICATION_FAILURE
        }
    })
}

/// Grid projection over `{0, 1/r, ..., 1}^n`. Writes the JSON report to
/// `out_json`; returns 0 when there are no disagreements, 1 otherwise.
///
/// # Safety
/// `game` must be a live handle; `out_json` valid to write one pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_project_grid(
    game: *const sg_game,
    resolution: c_uint,
    out_json: *mut *mut c_char,
) -> c_int {
    guard(|| {
        if game.is_null() || out_json.is_null() {
            set_error("null pointer argument");
            return SG_INPUT_ERROR;
        }
        if resolution == 0 {
            set_error("grid resolution must be >= 1");
            return SG_INPUT_ERROR;
        }
        let g = &*game;
        match project_grid(&g.game, &g.index, resolution) {
            Ok(report) => {
                let mut s = serde_json::to_string_pretty(&grid_report_json(&report, &g.game))
                    .expect("grid payload");
                s.push('\n');
                *out_json = to_owned_cstr(s);
                if report.pass() {
                    SG_OK
                } else {
                    set_error("grid projection found disagreements");
                    SG_VERIFICATION_FAILURE
                }
            }
            Err(e) => {
                set_error(e.to_string());
                SG_INTERNAL_ERROR
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;

    fn parse(text: &str) -> *mut sg_certificate {
        let c = CString::new(text).unwrap();
        let mut out: *mut sg_certificate = ptr::null_mut();
        let code = unsafe { sg_certificate_parse(c.as_ptr(), &mut out) };
        assert_eq!(code, SG_OK);
        out
    }

    fn take_string(p: *mut c_char) -> String {
        assert!(!p.is_null());
        let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
        unsafe { sg_string_free(p) };
        s
    }

    const HALF: &str =
        "vars: x1\nmode: equilibrium\npoly P1: 2*x1 - 1\nformula: P1\nwitness: 0\n";

    #[test]
    fn parse_compile_check_roundtrip() {
        let cert = parse(HALF);
        let digest = take_string(unsafe { sg_certificate_digest(cert) });
        assert_eq!(digest.len(), 64);
        let mut game: *mut sg_game = ptr::null_mut();
        assert_eq!(unsafe { sg_compile(cert, 0, 0, &mut game) }, SG_OK);
        assert_eq!(unsafe { sg_game_player_count(game) }, 5);
        let json = take_string(unsafe { sg_game_to_json(game) });
        assert!(json.contains("\"certificate_digest\""));

        let point = CString::new("1/4").unwrap();
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(unsafe { sg_check_point(game, point.as_ptr(), &mut out) }, SG_OK);
        let verdict = take_string(out);
        assert!(verdict.contains("\"verdict\": \"in\""));

        let point = CString::new("3/4").unwrap();
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(unsafe { sg_check_point(game, point.as_ptr(), &mut out) }, SG_OK);
        let verdict = take_string(out);
        assert!(verdict.contains("\"refuted\": true"));

        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(unsafe { sg_project_grid(game, 8, &mut out) }, SG_OK);
        let report = take_string(out);
        assert!(report.contains("\"pass\": true"));

        unsafe {
            sg_game_free(game);
            sg_certificate_free(cert);
        }
    }

    #[test]
    fn errors_set_message() {
        let c = CString::new("vars x1\n").unwrap();
        let mut out: *mut sg_certificate = ptr::null_mut();
        let code = unsafe { sg_certificate_parse(c.as_ptr(), &mut out) };
        assert_eq!(code, SG_INPUT_ERROR);
        let err = take_string(sg_last_error());
        assert!(err.contains("unrecognized line"), "{err}");
    }

    #[test]
    fn integer_mode_via_ffi() {
        let cert = parse(
            "vars: x1\nmode: equilibrium\npoly P1: 2*x1^2 - 1\npoly P2: 1 - 2*x1^2\n\
             formula: AND(P1,P2)\nwitness_alg 1: R=[-1,0,2] interval=[1/2,1]\n",
        );
        let mut game: *mut sg_game = ptr::null_mut();
        assert_eq!(unsafe { sg_compile(cert, 1, 0, &mut game) }, SG_OK);
        assert_eq!(unsafe { sg_game_player_count(game) }, 14);
        let json = take_string(unsafe { sg_game_to_json(game) });
        assert!(json.contains("\"integer_mode\": true"));
        assert!(json.contains("\"quotient_polys\""));
        unsafe {
            sg_game_free(game);
            sg_certificate_free(cert);
        }
    }

    #[test]
    fn version_is_static() {
        let v = unsafe { CStr::from_ptr(sg_version()) }.to_str().unwrap();
        assert!(!v.is_empty());
    }
}

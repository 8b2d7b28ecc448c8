//! Exact rational scalars and their canonical `p/q` text form.
//!
//! Every number that crosses a module or serialization boundary in this
//! crate is a [`Rat`]. The canonical text form is `p/q` in lowest terms
//! with `q > 0`; plain integers are accepted on input and normalized to
//! `p/1` on output.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt::Write as _;

pub type Rat = BigRational;

/// Shorthand for a rational from machine integers; used pervasively in tests.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Canonical serialization: always `p/q`, lowest terms, positive denominator.
pub fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer. Whitespace around the tokens is not allowed.
pub fn rat_from_str(s: &str) -> Result<Rat, String> {
    let parse_int = |t: &str| -> Result<BigInt, String> {
        t.parse::<BigInt>()
            .map_err(|_| format!("invalid integer `{t}`"))
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(format!("zero denominator in `{s}`"));
            }
            Ok(Rat::new(parse_int(p)?, den))
        }
    }
}

/// Renders `r` as a decimal string with exactly `digits` fractional digits,
/// rounded toward minus infinity (`Down`) or plus infinity (`Up`).
///
/// Used for reporting real-valued bounds that have no exact rational form;
/// the two directions bracket the true value.
pub fn decimal_directed(r: &Rat, digits: u32, round_up: bool) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = r * Rat::from_integer(scale.clone());
    let mut int_part = scaled.floor().to_integer();
    if round_up && !scaled.is_integer() {
        int_part += 1;
    }
    let neg = int_part.is_negative();
    let abs = int_part.abs();
    let (whole, frac) = (abs.clone() / &scale, abs % &scale);
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    let _ = write!(out, "{whole}.{frac:0>width$}", width = digits as usize);
    out
}

/// True iff `r` is an integer.
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

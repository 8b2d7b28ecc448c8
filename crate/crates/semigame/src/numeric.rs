//! Certified rational enclosures of logarithms.
//!
//! The player-count and component-count bounds involve real-valued logs that
//! have no exact rational form. These helpers return rational `(lo, hi)`
//! pairs that provably bracket the true value, tight enough for any number
//! of displayed digits; callers round the endpoints outward.

use crate::rational::{rat, Rat};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `(lo, hi)` with `lo <= ln(x) <= hi` and `hi - lo <= width`.
pub fn ln_bounds(x: &Rat, width: &Rat) -> (Rat, Rat) {
    assert!(x > &Rat::zero(), "ln requires a positive argument");
    let two = Rat::from_integer(2.into());
    let one = Rat::one();
    // Range reduction: x = m * 2^k with m in [1, 2).
    let mut m = x.clone();
    let mut k: i64 = 0;
    while m >= two {
        m /= &two;
        k += 1;
    }
    while m < one {
        m *= &two;
        k -= 1;
    }
    let halved = width * rat(1, 2);
    let (mlo, mhi) = atanh_ln(&m, &halved);
    if k == 0 {
        return (mlo, mhi);
    }
    let ln2_width = &halved / Rat::from_integer(BigInt::from(k.unsigned_abs()));
    let (l2lo, l2hi) = atanh_ln(&two, &ln2_width);
    let kq = Rat::from_integer(BigInt::from(k));
    if k > 0 {
        (mlo + &kq * l2lo, mhi + &kq * l2hi)
    } else {
        (mlo + &kq * l2hi, mhi + &kq * l2lo)
    }
}

/// `ln` of `x in [1, 2]` via `2*atanh((x-1)/(x+1))` with an explicit
/// geometric tail bound.
fn atanh_ln(x: &Rat, width: &Rat) -> (Rat, Rat) {
    let one = Rat::one();
    let t = (x - &one) / (x + &one);
    if t.is_zero() {
        return (Rat::zero(), Rat::zero());
    }
    let t2 = &t * &t;
    let mut sum = Rat::zero();
    let mut power = t.clone();
    let mut j: u64 = 0;
    loop {
        sum += &power / Rat::from_integer(BigInt::from(2 * j + 1));
        j += 1;
        power *= &t2;
        // Tail after j terms: 2 * sum_{i>=j} t^(2i+1)/(2i+1)
        //   <= 2 * t^(2j+1) / ((2j+1)(1 - t^2)).
        let tail = (&power + &power)
            / (Rat::from_integer(BigInt::from(2 * j + 1)) * (&one - &t2));
        if tail <= *width {
            let lo = &sum + &sum;
            let hi = &lo + tail;
            return (lo, hi);
        }
    }
}

/// `(lo, hi)` bracketing `log2(x)` for `x >= 1`; exact for powers of two.
pub fn log2_bounds(x: &Rat, width: &Rat) -> (Rat, Rat) {
    assert!(x >= &Rat::one());
    // Exact when x is a power of two.
    let two = Rat::from_integer(2.into());
    let mut m = x.clone();
    let mut k: i64 = 0;
    while m >= two {
        m /= &two;
        k += 1;
    }
    if m.is_one() {
        let kq = Rat::from_integer(BigInt::from(k));
        return (kq.clone(), kq);
    }
    let target = width * rat(1, 4);
    let (llo, lhi) = ln_bounds(x, &target);
    let (l2lo, l2hi) = atanh_ln(&two, &target);
    // ln(x) >= 0 here, so dividing by the bracketing ln 2 keeps direction.
    (llo / &l2hi, lhi / &l2lo)
}

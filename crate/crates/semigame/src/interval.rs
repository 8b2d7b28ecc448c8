//! Exact interval arithmetic over the rationals.
//!
//! Intervals are closed with rational endpoints; all operations return the
//! exact image hull, so enclosures never involve rounding.

use crate::poly::Polynomial;
use crate::rational::Rat;
use crate::unipoly::Sign;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rat,
    pub hi: Rat,
}

impl Interval {
    pub fn new(lo: Rat, hi: Rat) -> Interval {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(v: Rat) -> Interval {
        Interval { lo: v.clone(), hi: v }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn contains(&self, v: &Rat) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let candidates = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = candidates.iter().min().unwrap().clone();
        let hi = candidates.iter().max().unwrap().clone();
        Interval::new(lo, hi)
    }

    pub fn scale(&self, k: &Rat) -> Interval {
        if k >= &Rat::zero() {
            Interval::new(&self.lo * k, &self.hi * k)
        } else {
            Interval::new(&self.hi * k, &self.lo * k)
        }
    }

    pub fn pow(&self, e: u32) -> Interval {
        if e == 0 {
            return Interval::point(Rat::one());
        }
        let lp = pow_rat(&self.lo, e);
        let hp = pow_rat(&self.hi, e);
        if self.lo >= Rat::zero() {
            Interval::new(lp, hp)
        } else if self.hi <= Rat::zero() {
            if e % 2 == 0 {
                Interval::new(hp, lp)
            } else {
                Interval::new(lp, hp)
            }
        } else if e % 2 == 1 {
            Interval::new(lp, hp)
        } else {
            Interval::new(Rat::zero(), lp.max(hp))
        }
    }

    /// The sign of every point in the interval, when uniform.
    pub fn definite_sign(&self) -> Option<Sign> {
        if self.lo > Rat::zero() {
            Some(Sign::Pos)
        } else if self.hi < Rat::zero() {
            Some(Sign::Neg)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Sign::Zero)
        } else {
            None
        }
    }
}

fn pow_rat(r: &Rat, e: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e {
        acc *= r;
    }
    acc
}

/// Exact enclosure of a polynomial's image over a box, term by term.
pub fn eval_poly_box(p: &Polynomial, box_: &[Interval]) -> Interval {
    assert_eq!(box_.len(), p.n_vars());
    let mut acc = Interval::point(Rat::zero());
    for (exps, c) in p.terms() {
        let mut term = Interval::point(c.clone());
        for (iv, &e) in box_.iter().zip(exps) {
            if e > 0 {
                term = term.mul(&iv.pow(e));
            }
        }
        acc = acc.add(&term);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    #[test]
    fn pow_handles_signs() {
        let i = Interval::new(rat_int(-2), rat_int(1));
        assert_eq!(i.pow(2), Interval::new(rat_int(0), rat_int(4)));
        assert_eq!(i.pow(3), Interval::new(rat_int(-8), rat_int(1)));
        let pos = Interval::new(rat(1, 2), rat_int(1));
        assert_eq!(pos.pow(2), Interval::new(rat(1, 4), rat_int(1)));
    }

    #[test]
    fn box_eval_encloses_true_values() {
        // P = x1^2 + x2^2 - 1 over [0,1/2] x [0,1/2].
        let p = Polynomial::from_terms(
            2,
            [
                (vec![2, 0], rat_int(1)),
                (vec![0, 2], rat_int(1)),
                (vec![0, 0], rat_int(-1)),
            ],
        );
        let b = vec![
            Interval::new(rat_int(0), rat(1, 2)),
            Interval::new(rat_int(0), rat(1, 2)),
        ];
        let iv = eval_poly_box(&p, &b);
        assert_eq!(iv.lo, rat_int(-1));
        assert_eq!(iv.hi, rat(-1, 2));
        assert_eq!(iv.definite_sign(), Some(Sign::Neg));
    }
}

//! Points with algebraic coordinates and exact sign decisions at them.
//!
//! A coordinate is either an exact rational or a real algebraic number given
//! by an integer-coefficient polynomial together with an isolating interval
//! in `[0,1]`. Signs of polynomials at such points are decided exactly when
//! possible (remainder reduction by the defining polynomials) and otherwise
//! by interval refinement up to a depth limit.

use crate::interval::{eval_poly_box, Interval};
use crate::poly::Polynomial;
use crate::rational::{rat, Rat};
use crate::unipoly::{sturm_root_count, Sign, UniPoly};
use num_traits::Zero;
use std::fmt;

/// Default bisection depth before a sign query gives up.
pub const DEFAULT_REFINE_DEPTH: u32 = 64;

#[derive(Clone, Debug)]
pub enum Coordinate {
    Rational(Rat),
    Algebraic(AlgebraicNumber),
}

/// A real algebraic number: the unique root of `poly` inside `interval`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicNumber {
    pub poly: UniPoly,
    pub interval: Interval,
}

#[derive(Clone, Debug)]
pub enum IsolationError {
    ZeroPolynomial,
    NotSquarefree,
    BadInterval { lo: Rat, hi: Rat },
    RootCount { count: usize },
}

impl fmt::Display for IsolationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsolationError::ZeroPolynomial => write!(f, "defining polynomial is zero"),
            IsolationError::NotSquarefree => write!(f, "defining polynomial is not squarefree"),
            IsolationError::BadInterval { lo, hi } => {
                write!(f, "isolating interval [{lo}, {hi}] is not ordered")
            }
            IsolationError::RootCount { count } => write!(
                f,
                "isolating interval contains {count} roots (exactly one required)"
            ),
        }
    }
}

impl std::error::Error for IsolationError {}

impl AlgebraicNumber {
    /// Validates squarefreeness and unique isolation. A root landing exactly
    /// on an endpoint, with no interior root, collapses to that rational.
    pub fn isolate(poly: UniPoly, lo: Rat, hi: Rat) -> Result<Coordinate, IsolationError> {
        if poly.is_zero() {
            return Err(IsolationError::ZeroPolynomial);
        }
        if lo >= hi {
            return Err(IsolationError::BadInterval { lo, hi });
        }
        if !poly.is_squarefree() {
            return Err(IsolationError::NotSquarefree);
        }
        let interior = sturm_root_count(&poly, &lo, &hi).map_err(|_| IsolationError::ZeroPolynomial)?;
        let at_lo = poly.eval(&lo).is_zero();
        let at_hi = poly.eval(&hi).is_zero();
        match (interior, at_lo, at_hi) {
            (1, false, false) => Ok(Coordinate::Algebraic(AlgebraicNumber {
                poly,
                interval: Interval::new(lo, hi),
            })),
            (0, true, false) => Ok(Coordinate::Rational(lo)),
            (0, false, true) => Ok(Coordinate::Rational(hi)),
            (n, l, h) => Err(IsolationError::RootCount {
                count: n + usize::from(l) + usize::from(h),
            }),
        }
    }

    /// One bisection step. Returns the refined coordinate; if the midpoint is
    /// an exact root the coordinate collapses to a rational.
    pub fn bisect(&self) -> Coordinate {
        let mid = (&self.interval.lo + &self.interval.hi) * rat(1, 2);
        match self.poly.sign_at(&mid) {
            Sign::Zero => Coordinate::Rational(mid),
            s => {
                let lo_sign = self.poly.sign_at(&self.interval.lo);
                // The root lies in the half across which the sign changes.
                let (lo, hi) = if lo_sign != s {
                    (self.interval.lo.clone(), mid)
                } else {
                    (mid, self.interval.hi.clone())
                };
                Coordinate::Algebraic(AlgebraicNumber {
                    poly: self.poly.clone(),
                    interval: Interval::new(lo, hi),
                })
            }
        }
    }
}

impl Coordinate {
    pub fn as_rational(&self) -> Option<&Rat> {
        match self {
            Coordinate::Rational(r) => Some(r),
            Coordinate::Algebraic(_) => None,
        }
    }

    pub fn enclosure(&self) -> Interval {
        match self {
            Coordinate::Rational(r) => Interval::point(r.clone()),
            Coordinate::Algebraic(a) => a.interval.clone(),
        }
    }

    pub fn refine(&mut self) {
        if let Coordinate::Algebraic(a) = self {
            *self = a.bisect();
        }
    }

    /// Exact equality test against a rational.
    pub fn equals_rational(&self, v: &Rat) -> bool {
        match self {
            Coordinate::Rational(r) => r == v,
            Coordinate::Algebraic(a) => a.interval.contains(v) && a.poly.eval(v).is_zero(),
        }
    }
}

/// Outcome of a sign query at an algebraic point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignResult {
    Known(Sign),
    /// Refinement exhausted the depth budget with 0 still inside the enclosure.
    Undecided { depth: u32 },
}

/// Decides the sign of `p` at the point given by `coords`.
///
/// Rational coordinates are substituted exactly first. For the remaining
/// algebraic coordinates the polynomial is reduced modulo each defining
/// polynomial (which preserves the value at the point); a zero remainder
/// proves the sign is exactly zero, which pure interval arithmetic could
/// never conclude. Otherwise the isolating intervals are bisected until the
/// enclosure of `p` excludes zero or the depth limit is hit.
pub fn sign_at_point(p: &Polynomial, coords: &[Coordinate], max_depth: u32) -> SignResult {
    assert_eq!(p.n_vars(), coords.len());
    let rat_subs: Vec<Option<Rat>> = coords
        .iter()
        .map(|c| c.as_rational().cloned())
        .collect();
    let mut reduced = p.substitute_partial(&rat_subs);
    for (i, c) in coords.iter().enumerate() {
        if let Coordinate::Algebraic(a) = c {
            if reduced.var_degree(i) as usize >= a.poly.degree() {
                reduced = reduced.rem_by_univariate(i, &a.poly);
            }
        }
    }
    if reduced.is_zero() {
        return SignResult::Known(Sign::Zero);
    }
    if let Some(v) = reduced.constant_value() {
        return SignResult::Known(Sign::of(&v));
    }
    let mut work: Vec<Coordinate> = coords.to_vec();
    for depth in 0..=max_depth {
        let box_: Vec<Interval> = work.iter().map(Coordinate::enclosure).collect();
        let enclosure = eval_poly_box(&reduced, &box_);
        if let Some(s) = enclosure.definite_sign() {
            return SignResult::Known(s);
        }
        if depth == max_depth {
            break;
        }
        for c in &mut work {
            c.refine();
        }
    }
    SignResult::Undecided { depth: max_depth }
}

/// Refines `value` until its enclosure excludes `other` or certifies it as
/// the root; returns true iff the algebraic value equals the rational.
pub fn separates_from_rational(value: &mut Coordinate, other: &Rat) -> bool {
    if value.equals_rational(other) {
        return false;
    }
    while value.enclosure().contains(other) {
        value.refine();
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    fn sqrt_half() -> Coordinate {
        AlgebraicNumber::isolate(UniPoly::from_integers(&[-1, 0, 2]), rat(1, 2), rat_int(1))
            .unwrap()
    }

    #[test]
    fn isolate_validates() {
        // Two roots in the interval.
        let err = AlgebraicNumber::isolate(
            UniPoly::from_integers(&[3, -16, 16]),
            rat_int(0),
            rat_int(1),
        );
        assert!(matches!(err, Err(IsolationError::RootCount { count: 2 })));
        // Squarefree failure.
        let err = AlgebraicNumber::isolate(UniPoly::from_integers(&[1, -2, 1]), rat_int(0), rat_int(1));
        assert!(matches!(err, Err(IsolationError::NotSquarefree)));
        // Root exactly at an endpoint collapses to a rational.
        let c = AlgebraicNumber::isolate(UniPoly::from_integers(&[-1, 2]), rat(1, 2), rat_int(1))
            .unwrap();
        assert_eq!(c.as_rational(), Some(&rat(1, 2)));
    }

    #[test]
    fn reduction_detects_exact_zero() {
        // P = 2x^2 - 1 at x = sqrt(1/2): exactly zero, invisible to intervals.
        let p = Polynomial::from_terms(1, [(vec![2], rat_int(2)), (vec![0], rat_int(-1))]);
        assert_eq!(
            sign_at_point(&p, &[sqrt_half()], 8),
            SignResult::Known(Sign::Zero)
        );
    }

    #[test]
    fn refinement_decides_strict_signs() {
        // P = x - 1 is negative at sqrt(1/2) but the initial enclosure
        // [1/2,1] - 1 = [-1/2, 0] does not show it.
        let p = Polynomial::from_terms(1, [(vec![1], rat_int(1)), (vec![0], rat_int(-1))]);
        assert_eq!(
            sign_at_point(&p, &[sqrt_half()], 16),
            SignResult::Known(Sign::Neg)
        );
        let q = Polynomial::from_terms(1, [(vec![1], rat_int(10)), (vec![0], rat_int(-7))]);
        // 10x - 7 > 0 at sqrt(1/2) ~ 0.70710 (10*0.7071 = 7.071); needs real depth.
        assert_eq!(
            sign_at_point(&q, &[sqrt_half()], 32),
            SignResult::Known(Sign::Pos)
        );
    }

    #[test]
    fn undecided_when_depth_exhausted() {
        let p = Polynomial::from_terms(1, [(vec![1], rat_int(10)), (vec![0], rat_int(-7))]);
        assert_eq!(
            sign_at_point(&p, &[sqrt_half()], 0),
            SignResult::Undecided { depth: 0 }
        );
    }

    #[test]
    fn separation_refines_until_disjoint() {
        let mut c = sqrt_half();
        assert!(separates_from_rational(&mut c, &rat(1, 2)));
        assert!(!c.enclosure().contains(&rat(1, 2)));
        let mut again = sqrt_half();
        // sqrt(1/2) is not rational, so any rational differs; but the exact
        // root test must hold for a rational-root polynomial.
        let mut lin = AlgebraicNumber::isolate(UniPoly::from_integers(&[-1, 3]), rat_int(0), rat(1, 2))
            .unwrap();
        assert!(!separates_from_rational(&mut lin, &rat(1, 3)));
        assert!(separates_from_rational(&mut again, &rat(7, 10)));
    }
}

//! Dense univariate polynomials over the rationals, with the Sturm-chain
//! machinery used for witness validation and root isolation.
//!
//! Coefficients are stored constant-first (`coeffs[i]` multiplies `X^i`)
//! with no trailing zeros, so `degree` is `coeffs.len() - 1`.

use crate::rational::Rat;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(r: &Rat) -> Sign {
        match r.cmp(&Rat::zero()) {
            Ordering::Less => Sign::Neg,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Pos,
        }
    }
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> UniPoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> UniPoly {
        UniPoly::new(coeffs.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> UniPoly {
        UniPoly::new(coeffs.iter().cloned().map(Rat::from_integer).collect())
    }

    pub fn zero() -> UniPoly {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the zero polynomial is reported as 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    /// True iff every coefficient is an integer.
    pub fn is_integer(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &Rat) -> Sign {
        Sign::of(&self.eval(x))
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, k: &Rat) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Euclidean division; panics only if `div` is zero, which callers exclude.
    pub fn divrem(&self, div: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let dd = div.degree();
        let lead = div.leading().unwrap();
        if rem.len() <= dd {
            return (UniPoly::zero(), UniPoly::new(rem));
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        while rem.len() > dd {
            let rdeg = rem.len() - 1;
            let factor = rem.last().unwrap() / lead;
            quot[rdeg - dd] = factor.clone();
            for i in 0..=dd {
                let t = &div.coeffs[i] * &factor;
                rem[rdeg - dd + i] -= t;
            }
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.leading().unwrap().clone();
        a.scale(&(Rat::one() / lead))
    }

    /// Squarefree iff gcd with the derivative is constant.
    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        if self.degree() == 0 {
            return true;
        }
        self.gcd(&self.derivative()).degree() == 0
    }

    /// Substitutes `X := a + b*X`, expanding exactly.
    pub fn compose_linear(&self, a: &Rat, b: &Rat) -> UniPoly {
        // Horner on the shifted variable: result = sum c_i (a + bX)^i.
        let shift = UniPoly::new(vec![a.clone(), b.clone()]);
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            let mut coeffs = acc.mul(&shift).coeffs;
            if coeffs.is_empty() {
                coeffs.push(c.clone());
            } else {
                coeffs[0] += c;
            }
            acc = UniPoly::new(coeffs);
        }
        acc
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    /// Divides out all factors `(X - root)`, returning the quotient and the
    /// multiplicity removed. `root` need not actually be a root (then the
    /// input is returned with multiplicity 0).
    pub fn deflate_root(&self, root: &Rat) -> (UniPoly, usize) {
        let mut p = self.clone();
        let mut mult = 0;
        let linear = UniPoly::new(vec![-root.clone(), Rat::one()]);
        while !p.is_zero() && p.eval(root).is_zero() {
            let (q, r) = p.divrem(&linear);
            debug_assert!(r.is_zero());
            p = q;
            mult += 1;
        }
        (p, mult)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                write!(f, "{c}")?;
                first = false;
            } else if c.is_negative() {
                write!(f, " - {}", -c)?;
            } else {
                write!(f, " + {c}")?;
            }
            if i > 0 {
                write!(f, "*X^{i}")?;
            }
        }
        Ok(())
    }
}

/// The Sturm chain of `p`: the signed-remainder sequence starting with
/// `(p, p')`, trailing zero polynomial dropped.
pub fn sturm_chain(p: &UniPoly) -> Vec<UniPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    while !chain.last().unwrap().is_zero() {
        let n = chain.len();
        let (_, r) = chain[n - 2].divrem(&chain[n - 1]);
        chain.push(r.neg());
    }
    chain.pop();
    chain
}

fn sign_variations(chain: &[UniPoly], x: &Rat) -> usize {
    let mut count = 0;
    let mut prev: Option<Sign> = None;
    for p in chain {
        match p.sign_at(x) {
            Sign::Zero => {}
            s => {
                if let Some(ps) = prev {
                    if ps != s {
                        count += 1;
                    }
                }
                prev = Some(s);
            }
        }
    }
    count
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SturmError {
    ZeroPolynomial,
    EmptyInterval,
}

impl fmt::Display for SturmError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SturmError::ZeroPolynomial => write!(f, "zero polynomial has no isolated roots"),
            SturmError::EmptyInterval => write!(f, "interval endpoints must satisfy lo < hi"),
        }
    }
}

impl std::error::Error for SturmError {}

/// Number of distinct real roots of `p` in the open interval `(lo, hi)`.
///
/// Endpoints that happen to be roots are deflated away exactly before the
/// sign-variation count, so the precondition `p(lo) != 0 != p(hi)` of the
/// classical statement is restored internally.
pub fn sturm_root_count(p: &UniPoly, lo: &Rat, hi: &Rat) -> Result<usize, SturmError> {
    if p.is_zero() {
        return Err(SturmError::ZeroPolynomial);
    }
    if lo >= hi {
        return Err(SturmError::EmptyInterval);
    }
    let (p, _) = p.deflate_root(lo);
    if p.is_zero() {
        return Err(SturmError::ZeroPolynomial);
    }
    let (p, _) = p.deflate_root(hi);
    if p.is_zero() {
        return Err(SturmError::ZeroPolynomial);
    }
    if p.degree() == 0 {
        return Ok(0);
    }
    let chain = sturm_chain(&p);
    let (va, vb) = (sign_variations(&chain, lo), sign_variations(&chain, hi));
    Ok(va.saturating_sub(vb))
}

/// Number of distinct real roots of `p` in the closed interval `[lo, hi]`.
pub fn sturm_root_count_closed(p: &UniPoly, lo: &Rat, hi: &Rat) -> Result<usize, SturmError> {
    let open = sturm_root_count(p, lo, hi)?;
    let at_lo = usize::from(p.eval(lo).is_zero());
    let at_hi = usize::from(p.eval(hi).is_zero());
    Ok(open + at_lo + at_hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn p(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_integers(coeffs)
    }

    #[test]
    fn eval_and_derivative() {
        // 2X^2 - 1
        let q = p(&[-1, 0, 2]);
        assert_eq!(q.eval(&rat(1, 2)), rat(-1, 2));
        assert_eq!(q.eval(&rat_int(1)), rat_int(1));
        assert_eq!(q.derivative(), p(&[0, 4]));
    }

    #[test]
    fn divrem_exact_and_remainder() {
        // (X-1)(X-2) = X^2 - 3X + 2
        let prod = p(&[2, -3, 1]);
        let (q, r) = prod.divrem(&p(&[-1, 1]));
        assert_eq!(q, p(&[-2, 1]));
        assert!(r.is_zero());
        let (_, r) = p(&[1, 0, 1]).divrem(&p(&[-1, 1]));
        assert_eq!(r, p(&[2]));
    }

    #[test]
    fn squarefree_detection() {
        assert!(p(&[-1, 0, 2]).is_squarefree());
        // (X-1)^2
        assert!(!p(&[1, -2, 1]).is_squarefree());
    }

    #[test]
    fn root_counts_match_known_roots() {
        // 2X^2 - 1: roots at ±sqrt(1/2); only the positive one is in (0,1).
        let q = p(&[-1, 0, 2]);
        assert_eq!(sturm_root_count(&q, &rat_int(0), &rat_int(1)).unwrap(), 1);
        assert_eq!(sturm_root_count(&q, &rat_int(0), &rat(1, 2)).unwrap(), 0);
        assert_eq!(sturm_root_count(&q, &rat_int(-1), &rat_int(1)).unwrap(), 2);
        // 16X^2 - 16X + 3 = (4X-1)(4X-3): two roots in (0,1).
        let two = p(&[3, -16, 16]);
        assert_eq!(sturm_root_count(&two, &rat_int(0), &rat_int(1)).unwrap(), 2);
    }

    #[test]
    fn root_counts_handle_root_endpoints() {
        // X(X-1): roots exactly at the endpoints of [0,1].
        let q = p(&[0, -1, 1]);
        assert_eq!(sturm_root_count(&q, &rat_int(0), &rat_int(1)).unwrap(), 0);
        assert_eq!(sturm_root_count_closed(&q, &rat_int(0), &rat_int(1)).unwrap(), 2);
    }

    #[test]
    fn compose_linear_matches_pointwise() {
        // R(X) = 2X^2 - 1 composed with X := (X+1)/2.
        let q = p(&[-1, 0, 2]).compose_linear(&rat(1, 2), &rat(1, 2));
        for t in [rat_int(0), rat(1, 3), rat_int(1), rat(-5, 7)] {
            let direct = p(&[-1, 0, 2]).eval(&((&t + rat_int(1)) / rat_int(2)));
            assert_eq!(q.eval(&t), direct);
        }
    }

    #[test]
    fn deflate_removes_multiplicity() {
        // X^2(X-1)
        let q = p(&[0, 0, -1, 1]);
        let (rest, m) = q.deflate_root(&rat_int(0));
        assert_eq!(m, 2);
        assert_eq!(rest, p(&[-1, 1]));
    }
}

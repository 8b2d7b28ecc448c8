//! Closed-form calculators around the construction: the connected-component
//! bound for polynomial systems, the derived bound on equilibrium
//! components of a binary game, the minimal-player lower bound, and the
//! generator of the finite family that realizes it.

use crate::cert::{Certificate, Mode, Witness};
use crate::formula::SetFormula;
use crate::numeric::ln_bounds;
use crate::poly::Polynomial;
use crate::rational::{decimal_directed, rat, Rat};
use num_bigint::BigUint;
use num_traits::One;
use std::fmt;

#[derive(Clone, Debug)]
pub enum BoundsError {
    DegreeTooSmall { d: u64 },
    Domain { what: String },
    DuplicateAlphas,
    AlphaOutsideBox,
}

impl fmt::Display for BoundsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundsError::DegreeTooSmall { d } => {
                write!(f, "component bound needs total degree >= 2, got {d}")
            }
            BoundsError::Domain { what } => write!(f, "{what}"),
            BoundsError::DuplicateAlphas => write!(f, "family nodes must be distinct"),
            BoundsError::AlphaOutsideBox => write!(f, "family nodes must lie in [0,1]"),
        }
    }
}

impl std::error::Error for BoundsError {}

/// Connected components of a set described by unions and intersections of
/// `s` polynomial inequalities in `r` variables of total degree at most
/// `d`: fewer than `(2d - 1) * d^(r + s - 1)`. Exact big integer.
pub fn component_bound(d: u64, r: u32, s: u32) -> Result<BigUint, BoundsError> {
    if d < 2 {
        return Err(BoundsError::DegreeTooSmall { d });
    }
    let base = BigUint::from(d);
    let exp = r + s - 1;
    Ok(BigUint::from(2 * d - 1) * base.pow(exp))
}

/// Components of the equilibrium set of an `N`-player binary game.
#[derive(Clone, Debug)]
pub struct EquilibriumComponentsBound {
    /// The headline `2 * N^(7N)`.
    pub headline: BigUint,
    /// For `N >= 3`, the sharper `(2N-3)(N-1)^(7N-1)` from which the
    /// headline follows: the equilibrium set is cut out by `6N` multiaffine
    /// inequalities of total degree `N-1` in `N` variables.
    pub sharper: Option<BigUint>,
}

pub fn equilibrium_components_bound(n: u32) -> EquilibriumComponentsBound {
    let headline = BigUint::from(2u32) * BigUint::from(n).pow(7 * n);
    let sharper = (n >= 3).then(|| {
        let b = component_bound(u64::from(n) - 1, n, 6 * n).expect("degree >= 2 for n >= 3");
        debug_assert!(b < headline);
        b
    });
    EquilibriumComponentsBound { headline, sharper }
}

/// `n*ln(d) / (7*ln(n*ln d))`: below this player count, no binary game can
/// realize the generated `d^n`-point family. The value is irrational, so it
/// is reported as a directed 12-digit bracket with a mandatory
/// approximation flag.
#[derive(Clone, Debug)]
pub struct MinPlayersBound {
    pub lower: String,
    pub upper: String,
    /// Always false: the value cannot be exact.
    pub exact: bool,
}

pub fn min_players_lower_bound(n: u32, d: u32) -> Result<MinPlayersBound, BoundsError> {
    if n < 2 || d < 2 {
        return Err(BoundsError::Domain { what: "requires n >= 2 and d >= 2".into() });
    }
    let width = rat(1, 10_000_000_000_000_000);
    let (ln_d_lo, ln_d_hi) = ln_bounds(&Rat::from_integer(d.into()), &width);
    let nq = Rat::from_integer(n.into());
    let num_lo = &nq * &ln_d_lo;
    let num_hi = &nq * &ln_d_hi;
    if num_lo <= Rat::one() {
        return Err(BoundsError::Domain { what: "requires n*ln(d) > 1".into() });
    }
    let (den_lo, _) = ln_bounds(&num_lo, &width);
    let (_, den_hi) = ln_bounds(&num_hi, &width);
    let seven = Rat::from_integer(7.into());
    let lower = &num_lo / (&seven * den_hi);
    let upper = &num_hi / (&seven * den_lo);
    Ok(MinPlayersBound {
        lower: decimal_directed(&lower, 12, false),
        upper: decimal_directed(&upper, 12, true),
        exact: false,
    })
}

/// For display next to compiled games: the bound as a float.
pub fn min_players_lower_bound_f64(n: u32, d: u32) -> Option<f64> {
    min_players_lower_bound(n, d).ok().and_then(|b| b.lower.parse::<f64>().ok().map(|x| x.max(0.0)))
}

/// The hard family: `P(x) = sum_i prod_j (x_i - alpha_j)^2` vanishes exactly
/// on the `d^n` product points `{alpha_1..alpha_d}^n`, so the certified set
/// of the returned certificate is that finite grid; the witness is the
/// all-`alpha_1` corner. Per-variable degree is `2d`.
pub fn gen_lower_bound_instance(
    n: usize,
    alphas: &[Rat],
) -> Result<Certificate, BoundsError> {
    if alphas.is_empty() || n == 0 {
        return Err(BoundsError::Domain { what: "need n >= 1 and d >= 1".into() });
    }
    for (i, a) in alphas.iter().enumerate() {
        if alphas[..i].contains(a) {
            return Err(BoundsError::DuplicateAlphas);
        }
        if a < &Rat::from_integer(0.into()) || a > &Rat::one() {
            return Err(BoundsError::AlphaOutsideBox);
        }
    }
    let mut total = Polynomial::zero(n);
    for i in 0..n {
        let xi = Polynomial::var(n, i);
        let mut prod = Polynomial::constant(n, Rat::one());
        for a in alphas {
            let factor = xi.sub(&Polynomial::constant(n, a.clone()));
            prod = prod.mul(&factor.mul(&factor));
        }
        total = total.add(&prod);
    }
    let witness = vec![alphas[0].clone(); n];
    Ok(Certificate {
        var_names: (1..=n).map(|i| format!("x{i}")).collect(),
        mode: Mode::Equilibrium,
        poly_names: vec!["P1".into()],
        polys: vec![total],
        formula: SetFormula::Leaf { poly: 0 },
        witness: Witness::Rational(witness),
    })
}

/// `d^n`, the cardinality of the generated family.
pub fn family_cardinality(n: usize, d: usize) -> BigUint {
    BigUint::from(d).pow(n as u32)
}

/// Bound report for a compiled certificate.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub n_players: usize,
    /// Inputs and value of the component bound applied to the equilibrium
    /// system of the compiled game (degree N-1, N variables, 6N
    /// constraints); absent for N < 3.
    pub component: Option<(u64, u32, u32, BigUint)>,
    pub equilibrium_components: EquilibriumComponentsBound,
    pub min_players: Option<MinPlayersBound>,
    /// `d^n` when the certificate is a single-leaf even-power family.
    pub cardinality: Option<BigUint>,
}

pub fn bound_report(cert: &Certificate, n_players: usize) -> BoundReport {
    let n_u32 = n_players as u32;
    let component = (n_players >= 3).then(|| {
        let d = (n_players - 1) as u64;
        let (r, s) = (n_u32, 6 * n_u32);
        (d, r, s, component_bound(d, r, s).expect("N >= 3 gives degree >= 2"))
    });
    let degrees = cert.leaf_var_degrees();
    let d_max = degrees.iter().copied().max().unwrap_or(0);
    // The lower-bound family has per-variable degree 2d; reuse d = deg/2
    // when even, else floor(deg/2) is still a valid comparison point.
    let min_players = if cert.n() >= 2 && d_max >= 4 {
        min_players_lower_bound(cert.n() as u32, d_max / 2).ok()
    } else {
        None
    };
    BoundReport {
        n_players,
        component,
        equilibrium_components: equilibrium_components_bound(n_u32),
        min_players,
        cardinality: None,
    }
}

pub fn biguint_to_string(b: &BigUint) -> String {
    b.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    #[test]
    fn component_bound_examples() {
        assert_eq!(component_bound(2, 1, 1).unwrap(), BigUint::from(6u32));
        assert_eq!(component_bound(2, 2, 2).unwrap(), BigUint::from(24u32));
        assert_eq!(component_bound(3, 1, 1).unwrap(), BigUint::from(15u32));
        assert!(component_bound(1, 1, 1).is_err());
    }

    #[test]
    fn equilibrium_components_examples() {
        assert_eq!(
            equilibrium_components_bound(2).headline,
            BigUint::from(32768u32)
        );
        assert_eq!(equilibrium_components_bound(1).headline, BigUint::from(2u32));
        let three = equilibrium_components_bound(3);
        assert_eq!(three.sharper.unwrap(), BigUint::from(3145728u32));
        assert_eq!(
            three.headline,
            BigUint::from(2u32) * BigUint::from(3u32).pow(21)
        );
    }

    #[test]
    fn component_bounds_monotone_in_players() {
        let mut prev = equilibrium_components_bound(1).headline;
        for n in 2..12 {
            let cur = equilibrium_components_bound(n).headline;
            assert!(cur > prev);
            prev = cur;
        }
    }

    #[test]
    fn min_players_brackets() {
        // Frozen from the exact formula n*ln d / (7 ln(n ln d)) evaluated
        // with certified interval arithmetic.
        let b = min_players_lower_bound(2, 2).unwrap();
        assert_eq!(b.lower, "0.606311326930");
        assert_eq!(b.upper, "0.606311326931");
        assert!(!b.exact);
        let b = min_players_lower_bound(10, 16).unwrap();
        assert_eq!(b.lower, "1.192174611619");
        assert_eq!(b.upper, "1.192174611620");
        assert!(min_players_lower_bound(1, 2).is_err());
    }

    #[test]
    fn family_instance_roots() {
        let cert = gen_lower_bound_instance(1, &[rat(1, 4), rat(3, 4)]).unwrap();
        let p = &cert.polys[0];
        assert_eq!(p.eval(&[rat(1, 4)]).unwrap(), rat_int(0));
        assert_eq!(p.eval(&[rat(3, 4)]).unwrap(), rat_int(0));
        assert!(p.eval(&[rat(1, 2)]).unwrap() > rat_int(0));
        assert_eq!(p.var_degree(0), 4);
        assert!(cert.membership(&[rat(1, 4)]).unwrap());
        assert!(!cert.membership(&[rat(1, 2)]).unwrap());
        // n = 2: members are exactly the 4 grid points on the 1/4-step grid.
        let cert = gen_lower_bound_instance(2, &[rat(1, 4), rat(3, 4)]).unwrap();
        let mut members = 0;
        for a in 0..=4 {
            for b in 0..=4 {
                if cert.membership(&[rat(a, 4), rat(b, 4)]).unwrap() {
                    members += 1;
                }
            }
        }
        assert_eq!(members, 4);
        assert_eq!(family_cardinality(2, 2), BigUint::from(4u32));
        // Degenerate single node.
        let cert = gen_lower_bound_instance(1, &[rat(1, 2)]).unwrap();
        assert!(cert.membership(&[rat(1, 2)]).unwrap());
        assert!(!cert.membership(&[rat(1, 4)]).unwrap());
        // Validation failures.
        assert!(matches!(
            gen_lower_bound_instance(1, &[rat(1, 4), rat(1, 4)]),
            Err(BoundsError::DuplicateAlphas)
        ));
        assert!(matches!(
            gen_lower_bound_instance(1, &[rat(5, 4)]),
            Err(BoundsError::AlphaOutsideBox)
        ));
    }

    #[test]
    fn family_certificate_parses_back() {
        let cert = gen_lower_bound_instance(1, &[rat(1, 4), rat(3, 4)]).unwrap();
        let text = cert.canonical_text();
        let back = crate::parse::parse_certificate(&text).unwrap();
        assert_eq!(back.digest(), cert.digest());
    }
}

//! Certificates: the source language of the compiler.
//!
//! A certificate names a finite family of polynomials, combines their
//! sub-level sets `{P <= 0}` with intersections and unions, and supplies a
//! point of the described set (exactly rational, or algebraic with isolating
//! intervals) proving nonemptiness. In payoff mode the set lives in
//! `[-D, D]^n` and is rescaled onto the unit box before compilation.

use crate::algebraic::{sign_at_point, AlgebraicNumber, Coordinate, IsolationError, SignResult};
use crate::formula::{to_selector, Selector, SetFormula};
use crate::poly::{PolyError, Polynomial};
use crate::rational::{rat_to_string, Rat};
use crate::unipoly::{Sign, UniPoly};
use sha2::{Digest, Sha256};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Equilibrium,
    /// Set lives in `[-D, D]^n`; the target is the equilibrium-payoff
    /// projection rather than the strategy projection.
    Payoff { box_radius: Rat },
}

#[derive(Clone, Debug)]
pub enum Witness {
    Rational(Vec<Rat>),
    Algebraic(Vec<AlgebraicWitnessCoord>),
}

/// One `witness_alg` line: integer polynomial plus isolating interval.
#[derive(Clone, Debug)]
pub struct AlgebraicWitnessCoord {
    pub poly: UniPoly,
    pub lo: Rat,
    pub hi: Rat,
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub var_names: Vec<String>,
    pub mode: Mode,
    pub poly_names: Vec<String>,
    pub polys: Vec<Polynomial>,
    pub formula: SetFormula,
    pub witness: Witness,
}

#[derive(Clone, Debug)]
pub enum CertError {
    Arity(PolyError),
    NotPayoffMode,
    AlgebraicWitnessNotSupported(&'static str),
    Isolation { coord: usize, source: IsolationError },
}

impl fmt::Display for CertError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertError::Arity(e) => write!(f, "{e}"),
            CertError::NotPayoffMode => write!(f, "certificate is not in payoff mode"),
            CertError::AlgebraicWitnessNotSupported(what) => {
                write!(f, "algebraic witness is not supported for {what}")
            }
            CertError::Isolation { coord, source } => {
                write!(f, "witness coordinate {}: {source}", coord + 1)
            }
        }
    }
}

impl std::error::Error for CertError {}

impl From<PolyError> for CertError {
    fn from(e: PolyError) -> Self {
        CertError::Arity(e)
    }
}

/// Verdict of witness validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessVerdict {
    Confirmed,
    Rejected,
    Undecided { depth: u32 },
}

#[derive(Clone, Debug)]
pub struct WitnessReport {
    pub verdict: WitnessVerdict,
    /// Sign of each named polynomial at the witness, where decided.
    pub poly_signs: Vec<Option<Sign>>,
}

impl Certificate {
    pub fn n(&self) -> usize {
        self.var_names.len()
    }

    pub fn poly_index(&self, name: &str) -> Option<usize> {
        self.poly_names.iter().position(|p| p == name)
    }

    /// Per-variable degree over the polynomials referenced by the formula.
    pub fn leaf_var_degrees(&self) -> Vec<u32> {
        let mut degs = vec![0u32; self.n()];
        for &p in &self.formula.leaf_polys() {
            for (i, d) in self.polys[p].var_degrees().into_iter().enumerate() {
                degs[i] = degs[i].max(d);
            }
        }
        degs
    }

    pub fn selector(&self) -> Selector {
        to_selector(&self.formula)
    }

    /// Exact membership of a rational point under the formula semantics.
    pub fn membership(&self, x: &[Rat]) -> Result<bool, CertError> {
        let signs = self.poly_signs_at(x)?;
        Ok(self.formula.holds(&signs))
    }

    pub fn poly_signs_at(&self, x: &[Rat]) -> Result<Vec<Sign>, CertError> {
        self.polys
            .iter()
            .map(|p| Ok(Sign::of(&p.eval(x)?)))
            .collect()
    }

    /// Rescales a payoff-mode certificate onto the unit box: the returned
    /// equilibrium-mode certificate describes `E' = {x : -D + 2Dx in E}`,
    /// with every polynomial composed accordingly and the witness mapped by
    /// `z' = (z + D) / (2D)`. Per-variable degrees are unchanged.
    pub fn to_unit_box(&self) -> Result<Certificate, CertError> {
        let d = match &self.mode {
            Mode::Payoff { box_radius } => box_radius.clone(),
            Mode::Equilibrium => return Err(CertError::NotPayoffMode),
        };
        let two_d = &d + &d;
        let witness = match &self.witness {
            Witness::Rational(z) => {
                Witness::Rational(z.iter().map(|zi| (zi + &d) / &two_d).collect())
            }
            Witness::Algebraic(_) => {
                return Err(CertError::AlgebraicWitnessNotSupported("payoff mode"))
            }
        };
        Ok(Certificate {
            var_names: self.var_names.clone(),
            mode: Mode::Equilibrium,
            poly_names: self.poly_names.clone(),
            polys: self
                .polys
                .iter()
                .map(|p| p.substitute_affine(&-&d, &two_d))
                .collect(),
            formula: self.formula.clone(),
            witness,
        })
    }

    /// The witness as exact coordinates, with isolation validated.
    pub fn witness_coordinates(&self) -> Result<Vec<Coordinate>, CertError> {
        match &self.witness {
            Witness::Rational(z) => Ok(z.iter().cloned().map(Coordinate::Rational).collect()),
            Witness::Algebraic(coords) => coords
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    AlgebraicNumber::isolate(c.poly.clone(), c.lo.clone(), c.hi.clone())
                        .map_err(|source| CertError::Isolation { coord: i, source })
                })
                .collect(),
        }
    }

    /// Checks that the witness actually belongs to the described set.
    ///
    /// Rational witnesses are decided exactly. Algebraic witnesses combine
    /// exact remainder reduction (for boundary cases where a polynomial
    /// vanishes at the witness) with isolating-interval refinement up to
    /// `max_depth` bisections per sign query.
    pub fn validate_witness(&self, max_depth: u32) -> Result<WitnessReport, CertError> {
        match &self.witness {
            Witness::Rational(z) => {
                let signs = self.poly_signs_at(z)?;
                let verdict = if self.formula.holds(&signs) {
                    WitnessVerdict::Confirmed
                } else {
                    WitnessVerdict::Rejected
                };
                Ok(WitnessReport {
                    verdict,
                    poly_signs: signs.into_iter().map(Some).collect(),
                })
            }
            Witness::Algebraic(_) => {
                let point = self.witness_coordinates()?;
                let signs: Vec<Option<Sign>> = self
                    .polys
                    .iter()
                    .map(|p| match sign_at_point(p, &point, max_depth) {
                        SignResult::Known(s) => Some(s),
                        SignResult::Undecided { .. } => None,
                    })
                    .collect();
                let verdict = match self.formula.holds_three_valued(&signs) {
                    Some(true) => WitnessVerdict::Confirmed,
                    Some(false) => WitnessVerdict::Rejected,
                    None => WitnessVerdict::Undecided { depth: max_depth },
                };
                Ok(WitnessReport { verdict, poly_signs: signs })
            }
        }
    }

    /// Deterministic regeneration of the certificate text. Two certificates
    /// with the same canonical text are identical for every purpose in this
    /// crate; the digest is taken over these bytes.
    pub fn canonical_text(&self) -> String {
        let mut out = String::new();
        out.push_str("vars:");
        for v in &self.var_names {
            out.push(' ');
            out.push_str(v);
        }
        out.push('\n');
        match &self.mode {
            Mode::Equilibrium => out.push_str("mode: equilibrium\n"),
            Mode::Payoff { box_radius } => {
                out.push_str(&format!("mode: payoff D={}\n", rat_to_string(box_radius)));
            }
        }
        for (name, poly) in self.poly_names.iter().zip(&self.polys) {
            out.push_str(&format!("poly {name}: {}\n", poly.to_text(&self.var_names)));
        }
        out.push_str("formula: ");
        render_formula(&self.formula, &self.poly_names, &mut out);
        out.push('\n');
        match &self.witness {
            Witness::Rational(z) => {
                let parts: Vec<String> = z.iter().map(rat_to_string).collect();
                out.push_str(&format!("witness: {}\n", parts.join(", ")));
            }
            Witness::Algebraic(coords) => {
                for (i, c) in coords.iter().enumerate() {
                    let coeffs: Vec<String> = c
                        .poly
                        .coeffs()
                        .iter()
                        .map(|r| r.numer().to_string())
                        .collect();
                    out.push_str(&format!(
                        "witness_alg {}: R=[{}] interval=[{},{}]\n",
                        i + 1,
                        coeffs.join(","),
                        rat_to_string(&c.lo),
                        rat_to_string(&c.hi)
                    ));
                }
            }
        }
        out
    }

    /// Hex SHA-256 of the canonical text.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.canonical_text().as_bytes());
        let out = hasher.finalize();
        out.iter().map(|b| format!("{b:02x}")).collect()
    }
}

fn render_formula(f: &SetFormula, names: &[String], out: &mut String) {
    match f {
        SetFormula::Leaf { poly } => out.push_str(&names[*poly]),
        SetFormula::Intersect(children) => {
            out.push_str("AND(");
            for (i, c) in children.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                render_formula(c, names, out);
            }
            out.push(')');
        }
        SetFormula::Union(children) => {
            out.push_str("OR(");
            for (i, c) in children.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                render_formula(c, names, out);
            }
            out.push(')');
        }
    }
}

/// True iff every coefficient of every polynomial is an integer.
pub fn all_polys_integer(cert: &Certificate) -> bool {
    cert.polys
        .iter()
        .all(|p| p.terms().all(|(_, c)| c.denom() == &num_bigint::BigInt::from(1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn half_interval() -> Certificate {
        Certificate {
            var_names: vec!["x1".into()],
            mode: Mode::Equilibrium,
            poly_names: vec!["P1".into()],
            polys: vec![Polynomial::from_terms(
                1,
                [(vec![1], rat_int(2)), (vec![0], rat_int(-1))],
            )],
            formula: SetFormula::Leaf { poly: 0 },
            witness: Witness::Rational(vec![rat_int(0)]),
        }
    }

    #[test]
    fn membership_on_half_interval() {
        let cert = half_interval();
        assert!(cert.membership(&[rat(1, 4)]).unwrap());
        assert!(cert.membership(&[rat(1, 2)]).unwrap());
        assert!(!cert.membership(&[rat(3, 4)]).unwrap());
    }

    #[test]
    fn union_membership() {
        // [0,1/4] union [3/4,1] via 4x-1 and 3-4x.
        let cert = Certificate {
            var_names: vec!["x1".into()],
            mode: Mode::Equilibrium,
            poly_names: vec!["P1".into(), "P2".into()],
            polys: vec![
                Polynomial::from_terms(1, [(vec![1], rat_int(4)), (vec![0], rat_int(-1))]),
                Polynomial::from_terms(1, [(vec![1], rat_int(-4)), (vec![0], rat_int(3))]),
            ],
            formula: SetFormula::Union(vec![
                SetFormula::Leaf { poly: 0 },
                SetFormula::Leaf { poly: 1 },
            ]),
            witness: Witness::Rational(vec![rat_int(0)]),
        };
        assert!(!cert.membership(&[rat(1, 2)]).unwrap());
        assert!(cert.membership(&[rat(1, 8)]).unwrap());
        assert!(cert.membership(&[rat(7, 8)]).unwrap());
    }

    #[test]
    fn unit_box_transform_maps_witness_and_set() {
        // E = {x <= 0} in [-2,2]: P = x, D = 2 gives P' = 4x - 2, z' = 1/2.
        let cert = Certificate {
            var_names: vec!["x1".into()],
            mode: Mode::Payoff { box_radius: rat_int(2) },
            poly_names: vec!["P1".into()],
            polys: vec![Polynomial::var(1, 0)],
            formula: SetFormula::Leaf { poly: 0 },
            witness: Witness::Rational(vec![rat_int(0)]),
        };
        let unit = cert.to_unit_box().unwrap();
        assert_eq!(
            unit.polys[0],
            Polynomial::from_terms(1, [(vec![1], rat_int(4)), (vec![0], rat_int(-2))])
        );
        match &unit.witness {
            Witness::Rational(z) => assert_eq!(z[0], rat(1, 2)),
            _ => panic!("expected rational witness"),
        }
        // Membership commutes with the affine map.
        for k in 0..=8 {
            let x = rat(k, 8);
            let mapped = rat_int(-2) + rat_int(4) * &x;
            assert_eq!(
                unit.membership(&[x]).unwrap(),
                cert.membership(&[mapped]).unwrap()
            );
        }
    }

    #[test]
    fn rational_witness_validation() {
        let mut cert = half_interval();
        assert_eq!(
            cert.validate_witness(8).unwrap().verdict,
            WitnessVerdict::Confirmed
        );
        cert.witness = Witness::Rational(vec![rat_int(1)]);
        assert_eq!(
            cert.validate_witness(8).unwrap().verdict,
            WitnessVerdict::Rejected
        );
    }

    #[test]
    fn algebraic_boundary_witness_confirms_via_remainder() {
        // E = {2x^2-1 <= 0} ∩ {1-2x^2 <= 0} = {sqrt(1/2)}; both leaves vanish
        // at the witness, which only the division shortcut can certify.
        let cert = Certificate {
            var_names: vec!["x1".into()],
            mode: Mode::Equilibrium,
            poly_names: vec!["P1".into(), "P2".into()],
            polys: vec![
                Polynomial::from_terms(1, [(vec![2], rat_int(2)), (vec![0], rat_int(-1))]),
                Polynomial::from_terms(1, [(vec![2], rat_int(-2)), (vec![0], rat_int(1))]),
            ],
            formula: SetFormula::Intersect(vec![
                SetFormula::Leaf { poly: 0 },
                SetFormula::Leaf { poly: 1 },
            ]),
            witness: Witness::Algebraic(vec![AlgebraicWitnessCoord {
                poly: UniPoly::from_integers(&[-1, 0, 2]),
                lo: rat(1, 2),
                hi: rat_int(1),
            }]),
        };
        let report = cert.validate_witness(64).unwrap();
        assert_eq!(report.verdict, WitnessVerdict::Confirmed);
        assert_eq!(report.poly_signs, vec![Some(Sign::Zero), Some(Sign::Zero)]);
    }

    #[test]
    fn digest_is_stable_and_text_canonical() {
        let cert = half_interval();
        let text = cert.canonical_text();
        assert_eq!(
            text,
            "vars: x1\nmode: equilibrium\npoly P1: -1 + 2*x1\nformula: P1\nwitness: 0/1\n"
        );
        assert_eq!(cert.digest(), cert.digest());
        assert_eq!(cert.digest().len(), 64);
    }
}

//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are kept in a `BTreeMap` from exponent tuples to nonzero
//! coefficients, so iteration order (and therefore every serialization
//! derived from it) is deterministic.

use crate::rational::{rat_to_string, Rat};
use crate::unipoly::UniPoly;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    n_vars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyError {
    ArityMismatch { expected: usize, got: usize },
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::ArityMismatch { expected, got } => {
                write!(f, "point has {got} coordinates, polynomial expects {expected}")
            }
        }
    }
}

impl std::error::Error for PolyError {}

impl Polynomial {
    pub fn zero(n_vars: usize) -> Polynomial {
        Polynomial { n_vars, terms: BTreeMap::new() }
    }

    pub fn constant(n_vars: usize, c: Rat) -> Polynomial {
        let mut p = Polynomial::zero(n_vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; n_vars], c);
        }
        p
    }

    /// The monomial `x_i` (0-based variable index).
    pub fn var(n_vars: usize, i: usize) -> Polynomial {
        assert!(i < n_vars);
        let mut exps = vec![0; n_vars];
        exps[i] = 1;
        let mut p = Polynomial::zero(n_vars);
        p.terms.insert(exps, Rat::one());
        p
    }

    pub fn from_terms(n_vars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rat)>) -> Polynomial {
        let mut p = Polynomial::zero(n_vars);
        for (exps, c) in terms {
            p.add_term(exps, c);
        }
        p
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().iter().all(|&e| e == 0))
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(Rat::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Rat) {
        assert_eq!(exps.len(), self.n_vars);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.n_vars, other.n_vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &Rat) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero(self.n_vars);
        }
        Polynomial {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.n_vars, other.n_vars);
        let mut out = Polynomial::zero(self.n_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::constant(self.n_vars, Rat::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Exact value at a rational point.
    pub fn eval(&self, x: &[Rat]) -> Result<Rat, PolyError> {
        if x.len() != self.n_vars {
            return Err(PolyError::ArityMismatch { expected: self.n_vars, got: x.len() });
        }
        let mut acc = Rat::zero();
        for (exps, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &e) in x.iter().zip(exps) {
                for _ in 0..e {
                    t *= xi;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Maximum exponent of variable `i` over all terms.
    pub fn var_degree(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn var_degrees(&self) -> Vec<u32> {
        (0..self.n_vars).map(|i| self.var_degree(i)).collect()
    }

    /// Substitutes `x_i := a + b*x_i` for every variable simultaneously.
    /// Per-variable degrees are preserved whenever `b != 0`.
    pub fn substitute_affine(&self, a: &Rat, b: &Rat) -> Polynomial {
        let mut out = Polynomial::zero(self.n_vars);
        for (exps, c) in &self.terms {
            // Expand prod_i (a + b x_i)^{e_i} one variable at a time.
            let mut partial: Vec<(Vec<u32>, Rat)> = vec![(vec![0; self.n_vars], c.clone())];
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let expansion = binomial_affine(a, b, e);
                let mut next = Vec::with_capacity(partial.len() * expansion.len());
                for (pe, pc) in &partial {
                    for (k, coef) in expansion.iter().enumerate() {
                        if coef.is_zero() {
                            continue;
                        }
                        let mut ne = pe.clone();
                        ne[i] += k as u32;
                        next.push((ne, pc * coef));
                    }
                }
                partial = next;
            }
            for (e, t) in partial {
                out.add_term(e, t);
            }
        }
        out
    }

    /// Views the polynomial as univariate in variable `i` with coefficients
    /// in the remaining variables: returns degree -> coefficient polynomial
    /// (exponent of `x_i` zeroed out in the coefficient's terms).
    pub fn by_var(&self, i: usize) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (exps, c) in &self.terms {
            let d = exps[i];
            let mut rest = exps.clone();
            rest[i] = 0;
            out.entry(d)
                .or_insert_with(|| Polynomial::zero(self.n_vars))
                .add_term(rest, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Remainder of division by a univariate polynomial `r` in variable `i`,
    /// treating the other variables as scalars. The value at any point whose
    /// `i`-th coordinate is a root of `r` is unchanged.
    pub fn rem_by_univariate(&self, i: usize, r: &UniPoly) -> Polynomial {
        assert!(!r.is_zero());
        let dr = r.degree() as u32;
        if dr == 0 {
            return Polynomial::zero(self.n_vars);
        }
        let lead = r.leading().unwrap();
        let mut coeffs = self.by_var(i);
        while let Some((&d, _)) = coeffs.iter().next_back() {
            if d < dr {
                break;
            }
            let top = coeffs.remove(&d).unwrap();
            let q = top.scale(&(Rat::one() / lead));
            for (j, rc) in r.coeffs().iter().enumerate() {
                if rc.is_zero() || j as u32 == dr {
                    continue;
                }
                let delta = q.scale(&-rc);
                let slot = coeffs
                    .entry(d - dr + j as u32)
                    .or_insert_with(|| Polynomial::zero(self.n_vars));
                *slot = slot.add(&delta);
                if slot.is_zero() {
                    coeffs.remove(&(d - dr + j as u32));
                }
            }
        }
        let mut out = Polynomial::zero(self.n_vars);
        for (d, p) in coeffs {
            for (mut exps, c) in p.terms {
                exps[i] = d;
                out.add_term(exps, c);
            }
        }
        out
    }

    /// Substitutes exact rational values for a subset of variables, keeping
    /// the arity (substituted variables simply stop appearing).
    pub fn substitute_partial(&self, values: &[Option<Rat>]) -> Polynomial {
        assert_eq!(values.len(), self.n_vars);
        let mut out = Polynomial::zero(self.n_vars);
        for (exps, c) in &self.terms {
            let mut coef = c.clone();
            let mut ne = exps.clone();
            for (i, v) in values.iter().enumerate() {
                if let Some(val) = v {
                    for _ in 0..exps[i] {
                        coef *= val;
                    }
                    ne[i] = 0;
                }
            }
            out.add_term(ne, coef);
        }
        out
    }

    /// Restriction to a single variable, assuming all other variables are
    /// absent from the terms (returns `None` otherwise).
    pub fn to_univariate(&self, i: usize) -> Option<UniPoly> {
        let mut coeffs = vec![Rat::zero(); self.var_degree(i) as usize + 1];
        for (exps, c) in &self.terms {
            if exps.iter().enumerate().any(|(j, &e)| j != i && e > 0) {
                return None;
            }
            coeffs[exps[i] as usize] = c.clone();
        }
        Some(UniPoly::new(coeffs))
    }

    /// Deterministic human/grammar text form: terms in exponent-tuple order.
    pub fn to_text(&self, var_names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (exps, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let vars: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        var_names[i].clone()
                    } else {
                        format!("{}^{}", var_names[i], e)
                    }
                })
                .collect();
            let coef_txt = if mag.is_integer() {
                mag.numer().to_string()
            } else {
                rat_to_string(&mag)
            };
            if vars.is_empty() {
                out.push_str(&coef_txt);
            } else if mag.is_one() {
                out.push_str(&vars.join("*"));
            } else {
                out.push_str(&coef_txt);
                out.push('*');
                out.push_str(&vars.join("*"));
            }
        }
        out
    }
}

/// Coefficients of `(a + b*X)^e` by ascending power of `X`.
fn binomial_affine(a: &Rat, b: &Rat, e: u32) -> Vec<Rat> {
    let mut out = vec![Rat::one()];
    for _ in 0..e {
        let mut next = vec![Rat::zero(); out.len() + 1];
        for (k, c) in out.iter().enumerate() {
            next[k] += c * a;
            next[k + 1] += c * b;
        }
        out = next;
    }
    out
}

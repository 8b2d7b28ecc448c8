//! Boolean structure of a certificate: intersections and unions over
//! polynomial sub-level sets, and the selector polynomial derived from it.
//!
//! A leaf `P` denotes `{x : P(x) <= 0}`. The selector replaces each leaf by
//! a variable in `[0,1]`, every intersection by `+` and every union by `*`;
//! it is nonnegative on the unit box and vanishes exactly on the sign
//! patterns admissible for membership.

use crate::rational::Rat;
use crate::unipoly::Sign;
use num_traits::Zero;

/// Formula tree. Leaves carry the index of a named polynomial; the leaf
/// order (depth-first, left to right) also indexes the sign players of the
/// compiled game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetFormula {
    Leaf { poly: usize },
    Intersect(Vec<SetFormula>),
    Union(Vec<SetFormula>),
}

impl SetFormula {
    /// Number of leaves (counted with multiplicity: a polynomial referenced
    /// twice yields two leaves).
    pub fn leaf_count(&self) -> usize {
        match self {
            SetFormula::Leaf { .. } => 1,
            SetFormula::Intersect(children) | SetFormula::Union(children) => {
                children.iter().map(SetFormula::leaf_count).sum()
            }
        }
    }

    /// Polynomial index of each leaf, in leaf order.
    pub fn leaf_polys(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            SetFormula::Leaf { poly } => out.push(*poly),
            SetFormula::Intersect(children) | SetFormula::Union(children) => {
                for c in children {
                    c.collect_leaves(out);
                }
            }
        }
    }

    /// Truth value given the sign of each *named polynomial* at a point.
    pub fn holds(&self, poly_signs: &[Sign]) -> bool {
        match self {
            SetFormula::Leaf { poly } => poly_signs[*poly] != Sign::Pos,
            SetFormula::Intersect(children) => children.iter().all(|c| c.holds(poly_signs)),
            SetFormula::Union(children) => children.iter().any(|c| c.holds(poly_signs)),
        }
    }

    /// Three-valued truth when some leaf signs are unknown.
    pub fn holds_three_valued(&self, poly_signs: &[Option<Sign>]) -> Option<bool> {
        match self {
            SetFormula::Leaf { poly } => poly_signs[*poly].map(|s| s != Sign::Pos),
            SetFormula::Intersect(children) => {
                let mut any_unknown = false;
                for c in children {
                    match c.holds_three_valued(poly_signs) {
                        Some(false) => return Some(false),
                        Some(true) => {}
                        None => any_unknown = true,
                    }
                }
                if any_unknown {
                    None
                } else {
                    Some(true)
                }
            }
            SetFormula::Union(children) => {
                let mut any_unknown = false;
                for c in children {
                    match c.holds_three_valued(poly_signs) {
                        Some(true) => return Some(true),
                        Some(false) => {}
                        None => any_unknown = true,
                    }
                }
                if any_unknown {
                    None
                } else {
                    Some(false)
                }
            }
        }
    }
}

/// Selector expression tree over one variable per formula leaf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Selector {
    Leaf { index: usize },
    Sum(Vec<Selector>),
    Product(Vec<Selector>),
}

/// Structural transform: leaves in depth-first order become `p_0..p_{C-1}`,
/// intersections become sums, unions become products.
pub fn to_selector(formula: &SetFormula) -> Selector {
    let mut next = 0usize;
    build_selector(formula, &mut next)
}

fn build_selector(formula: &SetFormula, next: &mut usize) -> Selector {
    match formula {
        SetFormula::Leaf { .. } => {
            let index = *next;
            *next += 1;
            Selector::Leaf { index }
        }
        SetFormula::Intersect(children) => {
            Selector::Sum(children.iter().map(|c| build_selector(c, next)).collect())
        }
        SetFormula::Union(children) => {
            Selector::Product(children.iter().map(|c| build_selector(c, next)).collect())
        }
    }
}

impl Selector {
    pub fn eval(&self, s: &[Rat]) -> Rat {
        match self {
            Selector::Leaf { index } => s[*index].clone(),
            Selector::Sum(children) => children.iter().map(|c| c.eval(s)).sum(),
            Selector::Product(children) => children.iter().map(|c| c.eval(s)).product(),
        }
    }

    /// Minimum over the free leaves (None entries) of the selector on
    /// `[0,1]^C`. The selector is nondecreasing in every leaf variable on
    /// the unit box, so the minimum sits at free leaves = 0.
    pub fn min_over_free(&self, forced: &[Option<Rat>]) -> Rat {
        let values: Vec<Rat> = forced
            .iter()
            .map(|v| v.clone().unwrap_or_else(Rat::zero))
            .collect();
        self.eval(&values)
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Selector::Leaf { .. } => 1,
            Selector::Sum(children) | Selector::Product(children) => {
                children.iter().map(Selector::leaf_count).sum()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn or_and_leaf() -> SetFormula {
        // OR(AND(P0, P1), P2)
        SetFormula::Union(vec![
            SetFormula::Intersect(vec![
                SetFormula::Leaf { poly: 0 },
                SetFormula::Leaf { poly: 1 },
            ]),
            SetFormula::Leaf { poly: 2 },
        ])
    }

    #[test]
    fn selector_shape_follows_formula() {
        let sel = to_selector(&or_and_leaf());
        assert_eq!(
            sel,
            Selector::Product(vec![
                Selector::Sum(vec![Selector::Leaf { index: 0 }, Selector::Leaf { index: 1 }]),
                Selector::Leaf { index: 2 },
            ])
        );
        // (p0 + p1) * p2 at (1, 1/2, 1/3) = (3/2)(1/3) = 1/2.
        assert_eq!(
            sel.eval(&[rat_int(1), rat(1, 2), rat(1, 3)]),
            rat(1, 2)
        );
        let single = to_selector(&SetFormula::Leaf { poly: 0 });
        assert_eq!(single, Selector::Leaf { index: 0 });
        let and2 = to_selector(&SetFormula::Intersect(vec![
            SetFormula::Leaf { poly: 0 },
            SetFormula::Leaf { poly: 1 },
        ]));
        assert_eq!(and2.eval(&[rat(1, 3), rat(1, 4)]), rat(7, 12));
    }

    #[test]
    fn duplicate_polynomial_leaves_get_distinct_variables() {
        let f = SetFormula::Union(vec![
            SetFormula::Leaf { poly: 0 },
            SetFormula::Leaf { poly: 0 },
        ]);
        let sel = to_selector(&f);
        assert_eq!(
            sel,
            Selector::Product(vec![Selector::Leaf { index: 0 }, Selector::Leaf { index: 1 }])
        );
        assert_eq!(f.leaf_count(), 2);
    }

    #[test]
    fn three_valued_semantics_short_circuit() {
        let f = or_and_leaf();
        // Unknown leaf dominated by a true OR branch.
        assert_eq!(
            f.holds_three_valued(&[None, Some(Sign::Pos), Some(Sign::Neg)]),
            Some(true)
        );
        assert_eq!(
            f.holds_three_valued(&[None, Some(Sign::Neg), Some(Sign::Pos)]),
            None
        );
        assert_eq!(
            f.holds_three_valued(&[Some(Sign::Pos), Some(Sign::Neg), Some(Sign::Pos)]),
            Some(false)
        );
    }

    #[test]
    fn min_over_free_is_at_zero() {
        let sel = to_selector(&or_and_leaf());
        // Leaf 0 forced to 1, leaves 1 and 2 free: min = (1 + 0) * 0 = 0.
        assert_eq!(
            sel.min_over_free(&[Some(rat_int(1)), None, None]),
            rat_int(0)
        );
        // All forced positive: min > 0.
        assert_eq!(
            sel.min_over_free(&[Some(rat_int(1)), Some(rat_int(1)), Some(rat_int(1))]),
            rat_int(2)
        );
    }
}

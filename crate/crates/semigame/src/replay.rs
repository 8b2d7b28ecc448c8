//! Independent re-checker for refutation traces.
//!
//! Replays a trace step by step, re-deriving every forced value from the
//! game's payoff maps and the step's stated premises alone. It shares no
//! code with the forward engine in [`crate::verify`]: pins are re-derived by
//! multiplying premise values through the pair's actual payoff tables, sign
//! and detector steps by evaluating the actual Top maps, root steps by Sturm
//! counting on the claimed interval, anchors by checking the pin-pair
//! structure and the exact disagreement of the pinned value with the fixed
//! coordinate.

use crate::algebraic::Coordinate;
use crate::compile::CompilationIndex;
use crate::game::{BinaryGame, MultiaffineMap, PlayerId};
use crate::rational::Rat;
use crate::unipoly::{sturm_root_count_closed, UniPoly};
use crate::verify::{RefutationTrace, Rule};
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, Debug)]
pub enum ReplayError {
    MissingPremise { step: usize, premise: PlayerId },
    Structure { step: usize, what: String },
    ValueMismatch { step: usize },
    SignNotStrict { step: usize },
    DetectorNotForced { step: usize },
    RootNotIsolated { step: usize },
    AnchorTargetMismatch { step: usize },
    ContradictionInvalid { what: String },
    AlgebraicPremise { step: usize },
}

impl fmt::Display for ReplayError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReplayError::MissingPremise { step, premise } => {
                write!(f, "step {step}: premise player {premise} has no value yet")
            }
            ReplayError::Structure { step, what } => write!(f, "step {step}: {what}"),
            ReplayError::ValueMismatch { step } => {
                write!(f, "step {step}: re-derived value differs from the recorded one")
            }
            ReplayError::SignNotStrict { step } => {
                write!(f, "step {step}: payoff at premises does not have the claimed strict sign")
            }
            ReplayError::DetectorNotForced { step } => {
                write!(f, "step {step}: selector minimum over free signs is not positive")
            }
            ReplayError::RootNotIsolated { step } => {
                write!(f, "step {step}: claimed interval does not isolate one root")
            }
            ReplayError::AnchorTargetMismatch { step } => {
                write!(f, "step {step}: anchored value does not match the pin target")
            }
            ReplayError::ContradictionInvalid { what } => write!(f, "terminal step: {what}"),
            ReplayError::AlgebraicPremise { step } => {
                write!(f, "step {step}: rule needs rational premises")
            }
        }
    }
}

impl std::error::Error for ReplayError {}

struct ReplayState<'a> {
    game: &'a BinaryGame,
    values: Vec<Option<Coordinate>>,
}

impl<'a> ReplayState<'a> {
    fn rational(&self, p: PlayerId, step: usize) -> Result<Rat, ReplayError> {
        match &self.values[p] {
            Some(Coordinate::Rational(r)) => Ok(r.clone()),
            Some(Coordinate::Algebraic(_)) => Err(ReplayError::AlgebraicPremise { step }),
            None => Err(ReplayError::MissingPremise { step, premise: p }),
        }
    }

    /// Evaluates a map; unvalued variables are an error when `default` is
    /// `None`, otherwise they take the given value (the detector uses 0,
    /// which is sound there because its map has nonnegative coefficients
    /// and is therefore minimized at 0 over the free players).
    fn eval_map(
        &self,
        map: &MultiaffineMap,
        default: Option<&Rat>,
        step: usize,
    ) -> Result<Rat, ReplayError> {
        let mut acc = Rat::zero();
        for (vars, c) in map.terms() {
            let mut t = c.clone();
            for &v in vars {
                match (&self.values[v], default) {
                    (Some(Coordinate::Rational(r)), _) => t *= r,
                    (Some(Coordinate::Algebraic(_)), _) => {
                        return Err(ReplayError::AlgebraicPremise { step })
                    }
                    (None, Some(d)) => t *= d,
                    (None, None) => {
                        return Err(ReplayError::MissingPremise { step, premise: v })
                    }
                }
            }
            acc += t;
        }
        Ok(acc)
    }
}

/// Checks that `(a, b)` form a pin pair with the given target map:
/// `a`: Top = target, Bottom = b; `b`: Top = a, Bottom = target.
fn check_pin_pair(
    game: &BinaryGame,
    a: PlayerId,
    b: PlayerId,
    target: &MultiaffineMap,
    step: usize,
) -> Result<(), ReplayError> {
    let pa = &game.players[a];
    let pb = &game.players[b];
    let mismatch = |what: &str| ReplayError::Structure { step, what: what.to_string() };
    if &pa.top != target {
        return Err(mismatch("pin player's Top is not the target expression"));
    }
    if pa.bottom != MultiaffineMap::var(b) {
        return Err(mismatch("pin player's Bottom is not the mirror variable"));
    }
    if pb.top != MultiaffineMap::var(a) {
        return Err(mismatch("mirror's Top is not the pinned variable"));
    }
    if &pb.bottom != target {
        return Err(mismatch("mirror's Bottom is not the target expression"));
    }
    Ok(())
}

/// Finds the mirror of a pinned player from the game structure alone: the
/// player mentioned by its Bottom map.
fn mirror_of(game: &BinaryGame, p: PlayerId, step: usize) -> Result<PlayerId, ReplayError> {
    let vars = game.players[p].bottom.variables();
    if vars.len() != 1 {
        return Err(ReplayError::Structure {
            step,
            what: "pinned player's Bottom must mention exactly one player".into(),
        });
    }
    Ok(vars[0])
}

/// Replays `trace` over the game for the fixed point `x`, re-deriving every
/// forced value and the terminal contradiction.
pub fn replay_trace(
    game: &BinaryGame,
    index: &CompilationIndex,
    x: &[Rat],
    trace: &RefutationTrace,
) -> Result<(), ReplayError> {
    let mut st = ReplayState { game, values: vec![None; game.n_players()] };
    for (i, &b) in index.basic.iter().enumerate() {
        st.values[b] = Some(Coordinate::Rational(x[i].clone()));
    }

    for (step, fv) in trace.steps.iter().enumerate() {
        for &p in &fv.premises {
            if st.values[p].is_none() {
                return Err(ReplayError::MissingPremise { step, premise: p });
            }
        }
        match fv.rule {
            Rule::Pin => {
                let target = st.game.players[fv.player].top.clone();
                let mirror = mirror_of(st.game, fv.player, step)?;
                check_pin_pair(st.game, fv.player, mirror, &target, step)?;
                // The target must be a single product of already-valued
                // players; its value is the pinned one.
                let mut terms = target.terms();
                let (vars, coef) = terms.next().ok_or(ReplayError::Structure {
                    step,
                    what: "pin target is empty".into(),
                })?;
                if terms.next().is_some() || !coef.is_one() {
                    return Err(ReplayError::Structure {
                        step,
                        what: "pin target is not a plain product".into(),
                    });
                }
                let mut derived = Rat::one();
                for &v in vars {
                    derived *= st.rational(v, step)?;
                }
                match &fv.value {
                    Coordinate::Rational(r) if *r == derived => {}
                    _ => return Err(ReplayError::ValueMismatch { step }),
                }
            }
            Rule::SignPos | Rule::SignNeg => {
                let player = &st.game.players[fv.player];
                if !player.bottom.is_zero() {
                    return Err(ReplayError::Structure {
                        step,
                        what: "sign player's Bottom is not 0".into(),
                    });
                }
                let value = st.eval_map(&player.top, None, step)?;
                let (want_pos, forced) = match fv.rule {
                    Rule::SignPos => (true, Rat::one()),
                    _ => (false, Rat::zero()),
                };
                if want_pos != value.is_positive() || value.is_zero() {
                    return Err(ReplayError::SignNotStrict { step });
                }
                match &fv.value {
                    Coordinate::Rational(r) if *r == forced => {}
                    _ => return Err(ReplayError::ValueMismatch { step }),
                }
            }
            Rule::Detector => {
                let player = &st.game.players[fv.player];
                if !player.bottom.is_zero() {
                    return Err(ReplayError::Structure {
                        step,
                        what: "detector's Bottom is not 0".into(),
                    });
                }
                // Minimum over unvalued (free) sign players sits at 0 only
                // because every coefficient is nonnegative; check that.
                if player.top.terms().any(|(_, c)| c.is_negative()) {
                    return Err(ReplayError::Structure {
                        step,
                        what: "detector's Top has negative coefficients".into(),
                    });
                }
                let min = st.eval_map(&player.top, Some(&Rat::zero()), step)?;
                if !min.is_positive() {
                    return Err(ReplayError::DetectorNotForced { step });
                }
                match &fv.value {
                    Coordinate::Rational(r) if r.is_one() => {}
                    _ => return Err(ReplayError::ValueMismatch { step }),
                }
            }
            Rule::Root => {
                let detector = index.detector;
                if st.rational(detector, step)? != Rat::one() {
                    return Err(ReplayError::Structure {
                        step,
                        what: "root forcing requires the detector at Top".into(),
                    });
                }
                let player = &st.game.players[fv.player];
                if !player.bottom.is_zero() {
                    return Err(ReplayError::Structure {
                        step,
                        what: "root player's Bottom is not 0".into(),
                    });
                }
                // Top = u * f(ladder): every term must mention the detector.
                if player.top.terms().any(|(vars, _)| !vars.contains(&detector)) {
                    return Err(ReplayError::Structure {
                        step,
                        what: "root player's Top is not gated by the detector".into(),
                    });
                }
                // The forced value must be the unique root in [0,1] of the
                // polynomial it claims, and that polynomial must match the
                // one this player's payoff lifts.
                let ix = index.integer.as_ref().ok_or(ReplayError::Structure {
                    step,
                    what: "root step outside integer mode".into(),
                })?;
                let i = ix
                    .root
                    .iter()
                    .position(|&v| v == fv.player)
                    .ok_or(ReplayError::Structure { step, what: "not a root player".into() })?;
                let expected_lift = crate::compile::multiaffine_lift(
                    &crate::poly::Polynomial::from_terms(
                        1,
                        ix.data.q_polys[i]
                            .coeffs()
                            .iter()
                            .enumerate()
                            .map(|(e, c)| (vec![e as u32], c.clone())),
                    ),
                    &[ix.root_ladder[i].clone()],
                )
                .map_err(|_| ReplayError::Structure {
                    step,
                    what: "cannot lift the claimed polynomial".into(),
                })?
                .gate_by(detector)
                .map_err(|_| ReplayError::Structure {
                    step,
                    what: "cannot gate the claimed polynomial".into(),
                })?;
                if player.top != expected_lift {
                    return Err(ReplayError::Structure {
                        step,
                        what: "root player's payoff does not lift the claimed polynomial".into(),
                    });
                }
                check_isolates(&ix.data.q_polys[i], &fv.value, step)?;
            }
            Rule::Anchor => {
                let detector = index.detector;
                if st.rational(detector, step)? != Rat::one() {
                    return Err(ReplayError::Structure {
                        step,
                        what: "anchor requires the detector at Top".into(),
                    });
                }
                match &index.integer {
                    None => replay_rational_anchor(&mut st, index, fv, step)?,
                    Some(_) => replay_integer_anchor(&mut st, index, fv, step)?,
                }
            }
        }
        st.values[fv.player] = Some(fv.value.clone());
    }

    // Terminal: the forced value at `forced_step` must disagree with the
    // fixed coordinate of the same basic player.
    let c = &trace.contradiction;
    let step = trace
        .steps
        .get(c.forced_step)
        .ok_or_else(|| ReplayError::ContradictionInvalid { what: "bad step index".into() })?;
    if step.player != c.player {
        return Err(ReplayError::ContradictionInvalid {
            what: "contradiction names a different player than the forced step".into(),
        });
    }
    let i = index
        .basic
        .iter()
        .position(|&b| b == c.player)
        .ok_or_else(|| ReplayError::ContradictionInvalid {
            what: "contradiction player is not a basic player".into(),
        })?;
    if x[i] != c.fixed {
        return Err(ReplayError::ContradictionInvalid {
            what: "recorded fixed value differs from the point".into(),
        });
    }
    let mut forced = step.value.clone();
    if !crate::algebraic::separates_from_rational(&mut forced, &c.fixed) {
        return Err(ReplayError::ContradictionInvalid {
            what: "forced value does not differ from the fixed coordinate".into(),
        });
    }
    Ok(())
}

/// The claimed value must be the unique root of `poly` within its interval
/// (inside [0,1]).
fn check_isolates(poly: &UniPoly, value: &Coordinate, step: usize) -> Result<(), ReplayError> {
    match value {
        Coordinate::Rational(r) => {
            if !poly.eval(r).is_zero() || r < &Rat::zero() || r > &Rat::one() {
                return Err(ReplayError::RootNotIsolated { step });
            }
            Ok(())
        }
        Coordinate::Algebraic(a) => {
            if &a.poly != poly {
                return Err(ReplayError::RootNotIsolated { step });
            }
            if a.interval.lo < Rat::zero() || a.interval.hi > Rat::one() {
                return Err(ReplayError::RootNotIsolated { step });
            }
            match sturm_root_count_closed(poly, &a.interval.lo, &a.interval.hi) {
                Ok(1) => Ok(()),
                _ => Err(ReplayError::RootNotIsolated { step }),
            }
        }
    }
}

fn replay_rational_anchor(
    st: &mut ReplayState,
    index: &CompilationIndex,
    fv: &crate::verify::ForcedValue,
    step: usize,
) -> Result<(), ReplayError> {
    let i = index
        .basic
        .iter()
        .position(|&b| b == fv.player)
        .ok_or(ReplayError::Structure { step, what: "anchor on a non-basic player".into() })?;
    let player = &st.game.players[fv.player];
    if !player.bottom.is_zero() {
        return Err(ReplayError::Structure {
            step,
            what: "anchored player's Bottom is not 0".into(),
        });
    }
    // Top must be (z - x_i0) * u: coefficient of {u} is z, of {x_i0, u} is -1,
    // nothing else.
    let detector = index.detector;
    let rung0 = index.ladder[i][0].power;
    let mut z: Option<Rat> = None;
    let mut saw_pin_term = false;
    for (vars, c) in player.top.terms() {
        if vars.len() == 1 && vars[0] == detector {
            z = Some(c.clone());
        } else if vars.len() == 2 && vars.contains(&detector) && vars.contains(&rung0) {
            if *c != -Rat::one() {
                return Err(ReplayError::Structure {
                    step,
                    what: "anchor payoff has a wrong pin coefficient".into(),
                });
            }
            saw_pin_term = true;
        } else {
            return Err(ReplayError::Structure {
                step,
                what: "anchor payoff has an unexpected term".into(),
            });
        }
    }
    if !saw_pin_term {
        return Err(ReplayError::Structure {
            step,
            what: "anchor payoff is missing the -x_i0*u term".into(),
        });
    }
    let z = z.unwrap_or_else(Rat::zero);
    // The rung-0 pin (a premise) identifies x_i0 with x_i, so with u = 1 the
    // payoff gap is z - x_i. Any x_i != z then fails the best response:
    // positive gap needs x_i = 1 but z <= 1, negative needs x_i = 0 but z >= 0.
    let pinned = st.rational(rung0, step)?;
    let xi = st.rational(fv.player, step)?;
    if pinned != xi {
        return Err(ReplayError::Structure {
            step,
            what: "rung-0 pin does not identify x_i0 with x_i".into(),
        });
    }
    if z < Rat::zero() || z > Rat::one() {
        return Err(ReplayError::Structure {
            step,
            what: "anchor target outside [0,1]".into(),
        });
    }
    match &fv.value {
        Coordinate::Rational(r) if *r == z => Ok(()),
        _ => Err(ReplayError::AnchorTargetMismatch { step }),
    }
}

fn replay_integer_anchor(
    st: &mut ReplayState,
    index: &CompilationIndex,
    fv: &crate::verify::ForcedValue,
    step: usize,
) -> Result<(), ReplayError> {
    let ix = index.integer.as_ref().expect("checked by caller");
    let i = index
        .basic
        .iter()
        .position(|&b| b == fv.player)
        .ok_or(ReplayError::Structure { step, what: "anchor on a non-basic player".into() })?;
    // Pin-pair structure between X_i and Y_i with the scaled target.
    let anchor = ix.anchor[i];
    let target = st.game.players[fv.player].top.clone();
    let pa = &st.game.players[fv.player];
    let pb = &st.game.players[anchor];
    let m2 = Rat::from_integer(ix.data.m2.clone());
    if pa.bottom != MultiaffineMap::var(anchor).scale(&m2) {
        return Err(ReplayError::Structure {
            step,
            what: "anchored player's Bottom is not M2 * mirror".into(),
        });
    }
    if pb.top != MultiaffineMap::var(fv.player).scale(&m2) {
        return Err(ReplayError::Structure {
            step,
            what: "anchor mirror's Top is not M2 * x_i".into(),
        });
    }
    if pb.bottom != target {
        return Err(ReplayError::Structure {
            step,
            what: "anchor mirror's Bottom is not the target".into(),
        });
    }
    // With u = 1 the target is (v_i + alpha_i) / M2; the root premise pins
    // v_i on the unique root of Q_i, so the anchored value must be the
    // unique root of S(x) = Q_i(M2 x - alpha_i) in the mapped interval,
    // which is the witness coordinate.
    let root_value = st.values[ix.root[i]]
        .clone()
        .ok_or(ReplayError::MissingPremise { step, premise: ix.root[i] })?;
    let alpha = Rat::from_integer(ix.data.alpha[i].clone());
    let s_poly = ix.data.q_polys[i].compose_linear(&-&alpha, &m2);
    match (&root_value, &fv.value) {
        (Coordinate::Rational(v), Coordinate::Rational(z)) => {
            if (v + &alpha) / &m2 != *z {
                return Err(ReplayError::AnchorTargetMismatch { step });
            }
            Ok(())
        }
        (Coordinate::Algebraic(root), Coordinate::Algebraic(claimed)) => {
            // S and the claimed polynomial must agree up to a nonzero scalar.
            let cp = &claimed.poly;
            if cp.is_zero() || cp.degree() != s_poly.degree() {
                return Err(ReplayError::AnchorTargetMismatch { step });
            }
            let scale = s_poly.leading().unwrap() / cp.leading().unwrap();
            if cp.scale(&scale) != s_poly {
                return Err(ReplayError::AnchorTargetMismatch { step });
            }
            // The claimed interval must isolate one root of S, inside the
            // image of the root's interval under x -> (x + alpha)/M2.
            let lo_map = (&root.interval.lo + &alpha) / &m2;
            let hi_map = (&root.interval.hi + &alpha) / &m2;
            let lo = if claimed.interval.lo > lo_map { claimed.interval.lo.clone() } else { lo_map };
            let hi = if claimed.interval.hi < hi_map { claimed.interval.hi.clone() } else { hi_map };
            if lo >= hi {
                return Err(ReplayError::AnchorTargetMismatch { step });
            }
            match sturm_root_count_closed(&s_poly, &lo, &hi) {
                Ok(1) => Ok(()),
                _ => Err(ReplayError::AnchorTargetMismatch { step }),
            }
        }
        _ => Err(ReplayError::AnchorTargetMismatch { step }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compile::{compile_equilibrium, CompileOptions};
    use crate::integer::compile_integer;
    use crate::parse::parse_certificate;
    use crate::rational::{rat, rat_int};
    use crate::verify::{refute, RefuteOutcome};

    fn refuted_trace(
        src: &str,
        x: &[Rat],
        integer: bool,
    ) -> (crate::game::BinaryGame, CompilationIndex, RefutationTrace) {
        let cert = parse_certificate(src).unwrap();
        let (game, index) = if integer {
            compile_integer(&cert, &CompileOptions::default()).unwrap()
        } else {
            compile_equilibrium(&cert, &CompileOptions::default()).unwrap()
        };
        match refute(&index, x).unwrap() {
            RefuteOutcome::Refuted(trace) => (game, index, trace),
            other => panic!("expected refutation, got {other:?}"),
        }
    }

    #[test]
    fn replays_rational_trace() {
        let (game, index, trace) = refuted_trace(
            "vars: x1\nmode: equilibrium\npoly P1: 2*x1 - 1\nformula: P1\nwitness: 0\n",
            &[rat(3, 4)],
            false,
        );
        replay_trace(&game, &index, &[rat(3, 4)], &trace).unwrap();
    }

    #[test]
    fn replays_integer_trace() {
        let src = "vars: x1\nmode: equilibrium\npoly P1: 2*x1^2 - 1\npoly P2: 1 - 2*x1^2\n\
                   formula: AND(P1,P2)\nwitness_alg 1: R=[-1,0,2] interval=[1/2,1]\n";
        let (game, index, trace) = refuted_trace(src, &[rat(1, 2)], true);
        replay_trace(&game, &index, &[rat(1, 2)], &trace).unwrap();
    }

    #[test]
    fn rejects_corrupted_steps() {
        let (game, index, trace) = refuted_trace(
            "vars: x1\nmode: equilibrium\npoly P1: 2*x1 - 1\nformula: P1\nwitness: 0\n",
            &[rat(3, 4)],
            false,
        );
        // Corrupt the pin value.
        let mut bad = trace.clone();
        bad.steps[0].value = Coordinate::Rational(rat(1, 4));
        assert!(matches!(
            replay_trace(&game, &index, &[rat(3, 4)], &bad),
            Err(ReplayError::ValueMismatch { step: 0 })
        ));
        // Corrupt the anchor target.
        let mut bad = trace.clone();
        bad.steps[3].value = Coordinate::Rational(rat(3, 4));
        assert!(replay_trace(&game, &index, &[rat(3, 4)], &bad).is_err());
        // Claim a contradiction at a matching point.
        let mut bad = trace.clone();
        bad.contradiction.fixed = rat_int(0);
        assert!(replay_trace(&game, &index, &[rat(3, 4)], &bad).is_err());
        // A sign step whose payoff is not strictly positive.
        let mut bad = trace;
        bad.steps[1].rule = Rule::SignNeg;
        bad.steps[1].value = Coordinate::Rational(rat_int(0));
        assert!(matches!(
            replay_trace(&game, &index, &[rat(3, 4)], &bad),
            Err(ReplayError::SignNotStrict { step: 1 })
        ));
    }
}

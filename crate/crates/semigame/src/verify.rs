//! Equilibrium-side verification of compiled games.
//!
//! For a point of the certified set, [`canonical_profile`] builds the
//! explicit equilibrium extending it (exact rational check at rational
//! points; interval-certified at algebraic witnesses). For a point outside,
//! [`refute`] runs the branch-free forcing pass — ladder pins, sign forcing,
//! detector, anchor — ending in a contradiction that is replayable on its
//! own (see [`crate::replay`]). [`project_grid`] runs all three checks over
//! a grid and reports any disagreement with the membership oracle, and
//! [`grid_scan_equilibria`] is the brute-force oracle for hand-built
//! gadgets.

use crate::algebraic::{separates_from_rational, AlgebraicNumber, Coordinate};
use crate::compile::CompilationIndex;
use crate::game::{BinaryGame, GameError, MixedProfile, PlayerId};
use crate::interval::{eval_poly_box, Interval};
use crate::poly::Polynomial;
use crate::rational::{rat, Rat};
use crate::unipoly::Sign;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, Debug)]
pub enum VerifyError {
    Game(GameError),
    Cert(crate::cert::CertError),
    PointArity { expected: usize, got: usize },
    PointOutsideBox { coord: usize },
    TooManyPlayers { n: usize, limit: usize },
    Isolation(crate::algebraic::IsolationError),
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::Game(e) => write!(f, "{e}"),
            VerifyError::Cert(e) => write!(f, "{e}"),
            VerifyError::PointArity { expected, got } => {
                write!(f, "point has {got} coordinates, expected {expected}")
            }
            VerifyError::PointOutsideBox { coord } => {
                write!(f, "point coordinate {coord} outside [0,1]")
            }
            VerifyError::TooManyPlayers { n, limit } => {
                write!(f, "profile scan supports at most {limit} players, game has {n}")
            }
            VerifyError::Isolation(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for VerifyError {}

impl From<GameError> for VerifyError {
    fn from(e: GameError) -> Self {
        VerifyError::Game(e)
    }
}

impl From<crate::cert::CertError> for VerifyError {
    fn from(e: crate::cert::CertError) -> Self {
        VerifyError::Cert(e)
    }
}

fn check_point(index: &CompilationIndex, x: &[Rat]) -> Result<(), VerifyError> {
    if x.len() != index.cert.n() {
        return Err(VerifyError::PointArity { expected: index.cert.n(), got: x.len() });
    }
    for (i, xi) in x.iter().enumerate() {
        if xi < &Rat::zero() || xi > &Rat::one() {
            return Err(VerifyError::PointOutsideBox { coord: i + 1 });
        }
    }
    Ok(())
}

/// Canonical equilibrium profile over a point `x` of the unit box: basic
/// players at `x`, ladder players at the exact powers, sign players at the
/// indicator of their leaf being violated, detector at Bottom. The profile
/// passes the exact equilibrium check iff `x` belongs to the certified set.
pub fn canonical_profile(index: &CompilationIndex, x: &[Rat]) -> Result<MixedProfile, VerifyError> {
    check_point(index, x)?;
    let cert = &index.cert;
    let total = index.expected_player_count();
    let mut probs = vec![Rat::zero(); total];
    for (i, &b) in index.basic.iter().enumerate() {
        probs[b] = x[i].clone();
    }
    for (i, rungs) in index.ladder.iter().enumerate() {
        let mut pow = x[i].clone();
        for pair in rungs {
            probs[pair.power] = pow.clone();
            probs[pair.mirror] = pow.clone();
            pow = &pow * &pow;
        }
    }
    let signs = cert.poly_signs_at(x)?;
    for (c, &s) in index.sign.iter().enumerate() {
        probs[s] = if signs[index.leaf_polys[c]] == Sign::Pos { Rat::one() } else { Rat::zero() };
    }
    probs[index.detector] = Rat::zero();
    if let Some(ix) = &index.integer {
        ix.fill_canonical(index, x, &mut probs);
    }
    Ok(MixedProfile::new(probs))
}

/// Forcing rules of the refutation engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    /// Pin pair forces a ladder player onto `x_i * prod_{j<k} x_ij`.
    Pin,
    /// Leaf polynomial strictly positive forces its sign player to Top.
    SignPos,
    /// Leaf polynomial strictly negative forces its sign player to Bottom.
    SignNeg,
    /// Selector strictly positive over every admissible sign pattern forces
    /// the detector to Top.
    Detector,
    /// With the detector at Top, a root player is forced onto the unique
    /// root of its rescaled polynomial in `[0,1]`.
    Root,
    /// With the detector at Top, a basic player is forced onto the witness
    /// coordinate.
    Anchor,
}

impl Rule {
    pub fn json_name(&self) -> &'static str {
        match self {
            Rule::Pin => "pin",
            Rule::SignPos => "sign_pos",
            Rule::SignNeg => "sign_neg",
            Rule::Detector => "detector",
            Rule::Root => "root",
            Rule::Anchor => "anchor",
        }
    }
}

/// One forced assignment with its justification.
#[derive(Clone, Debug)]
pub struct ForcedValue {
    pub player: PlayerId,
    pub value: Coordinate,
    pub rule: Rule,
    pub premises: Vec<PlayerId>,
}

/// Terminal conflict: the value forced at `forced_step` disagrees with the
/// fixed coordinate of `player`.
#[derive(Clone, Debug)]
pub struct Contradiction {
    pub player: PlayerId,
    pub forced_step: usize,
    pub fixed: Rat,
}

#[derive(Clone, Debug)]
pub struct RefutationTrace {
    pub steps: Vec<ForcedValue>,
    pub contradiction: Contradiction,
}

#[derive(Clone, Debug)]
pub enum RefuteOutcome {
    Refuted(RefutationTrace),
    /// No contradiction reachable; holds exactly when the point is a member.
    /// The forcing prefix (pins and signs) is still reported.
    NotRefuted { steps: Vec<ForcedValue> },
}

impl RefuteOutcome {
    pub fn is_refuted(&self) -> bool {
        matches!(self, RefuteOutcome::Refuted(_))
    }

    pub fn steps(&self) -> &[ForcedValue] {
        match self {
            RefuteOutcome::Refuted(t) => &t.steps,
            RefuteOutcome::NotRefuted { steps } => steps,
        }
    }
}

/// Branch-free forcing pass for a fixed point `x` in the unit box, in the
/// compiler's player order. Returns a contradiction trace iff `x` lies
/// outside the certified set.
pub fn refute(index: &CompilationIndex, x: &[Rat]) -> Result<RefuteOutcome, VerifyError> {
    check_point(index, x)?;
    let cert = &index.cert;
    let mut steps: Vec<ForcedValue> = Vec::new();

    // Ladder pins: x_ik = x_i^(2^k), premises are the base player and the
    // earlier rungs whose product is the pin target.
    for (i, rungs) in index.ladder.iter().enumerate() {
        let mut pow = x[i].clone();
        let mut premises = vec![index.basic[i]];
        for pair in rungs {
            steps.push(ForcedValue {
                player: pair.power,
                value: Coordinate::Rational(pow.clone()),
                rule: Rule::Pin,
                premises: premises.clone(),
            });
            premises.push(pair.power);
            pow = &pow * &pow;
        }
    }

    // Sign forcing from the exact leaf values. Premises are the ladder
    // players the lifted leaf actually mentions.
    let signs = cert.poly_signs_at(x)?;
    let mut forced_signs: Vec<Option<Rat>> = vec![None; index.sign.len()];
    for (c, &s) in index.sign.iter().enumerate() {
        let poly = &cert.polys[index.leaf_polys[c]];
        let mut premises: Vec<PlayerId> = Vec::new();
        for (exps, _) in poly.terms() {
            for (i, &e) in exps.iter().enumerate() {
                for (k, pair) in index.ladder[i].iter().enumerate() {
                    if (e >> k) & 1 == 1 {
                        premises.push(pair.power);
                    }
                }
            }
        }
        premises.sort_unstable();
        premises.dedup();
        match signs[index.leaf_polys[c]] {
            Sign::Pos => {
                forced_signs[c] = Some(Rat::one());
                steps.push(ForcedValue {
                    player: s,
                    value: Coordinate::Rational(Rat::one()),
                    rule: Rule::SignPos,
                    premises,
                });
            }
            Sign::Neg => {
                forced_signs[c] = Some(Rat::zero());
                steps.push(ForcedValue {
                    player: s,
                    value: Coordinate::Rational(Rat::zero()),
                    rule: Rule::SignNeg,
                    premises,
                });
            }
            Sign::Zero => {}
        }
    }

    // Detector: the selector is nondecreasing in each sign variable on the
    // unit box, so its minimum over the free signs sits at 0. A strictly
    // positive minimum forces Top.
    let min_selector = index.selector.min_over_free(&forced_signs);
    if !min_selector.is_positive() {
        return Ok(RefuteOutcome::NotRefuted { steps });
    }
    let sign_premises: Vec<PlayerId> = index
        .sign
        .iter()
        .zip(&forced_signs)
        .filter(|(_, v)| v.is_some())
        .map(|(&s, _)| s)
        .collect();
    steps.push(ForcedValue {
        player: index.detector,
        value: Coordinate::Rational(Rat::one()),
        rule: Rule::Detector,
        premises: sign_premises,
    });

    // Anchor: with the detector at Top, each basic player is pinned to the
    // witness coordinate; the first mismatch is the contradiction.
    match (&index.witness, &index.integer) {
        (Some(z), _) => {
            for (i, zi) in z.iter().enumerate() {
                if &x[i] != zi {
                    // Premises: the detector at Top and the rung-0 pin
                    // identifying x_i0 with x_i.
                    steps.push(ForcedValue {
                        player: index.basic[i],
                        value: Coordinate::Rational(zi.clone()),
                        rule: Rule::Anchor,
                        premises: vec![index.detector, index.ladder[i][0].power],
                    });
                    let forced_step = steps.len() - 1;
                    return Ok(RefuteOutcome::Refuted(RefutationTrace {
                        steps,
                        contradiction: Contradiction {
                            player: index.basic[i],
                            forced_step,
                            fixed: x[i].clone(),
                        },
                    }));
                }
            }
            Ok(RefuteOutcome::NotRefuted { steps })
        }
        (None, Some(ix)) => {
            for i in 0..index.basic.len() {
                let mut target = ix.witness_coords[i].clone();
                if !separates_from_rational(&mut target, &x[i]) {
                    continue;
                }
                // Root player forced onto the unique root of Q_i in [0,1].
                let root_value = AlgebraicNumber::isolate(
                    ix.data.q_polys[i].clone(),
                    Rat::zero(),
                    Rat::one(),
                )
                .map_err(VerifyError::Isolation)?;
                steps.push(ForcedValue {
                    player: ix.root[i],
                    value: root_value,
                    rule: Rule::Root,
                    premises: vec![index.detector],
                });
                steps.push(ForcedValue {
                    player: index.basic[i],
                    value: target,
                    rule: Rule::Anchor,
                    premises: vec![index.detector, ix.root[i]],
                });
                let forced_step = steps.len() - 1;
                return Ok(RefuteOutcome::Refuted(RefutationTrace {
                    steps,
                    contradiction: Contradiction {
                        player: index.basic[i],
                        forced_step,
                        fixed: x[i].clone(),
                    },
                }));
            }
            Ok(RefuteOutcome::NotRefuted { steps })
        }
        (None, None) => Ok(RefuteOutcome::NotRefuted { steps }),
    }
}

/// Per-point verdict of the grid projection.
#[derive(Clone, Debug)]
pub struct PointVerdict {
    pub x: Vec<Rat>,
    pub member: bool,
    pub canonical_pass: bool,
    pub refuted: bool,
    /// In payoff mode, the designated players' exact payoffs at the
    /// canonical profile.
    pub payoffs: Option<Vec<Rat>>,
    /// Filled only for disagreeing points.
    pub trace: Option<RefutationTrace>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Disagreement {
    MemberWithoutCanonical,
    NonMemberNotRefuted,
    RefutedMember,
}

impl Disagreement {
    pub fn json_name(&self) -> &'static str {
        match self {
            Disagreement::MemberWithoutCanonical => "member_without_canonical_equilibrium",
            Disagreement::NonMemberNotRefuted => "non_member_not_refuted",
            Disagreement::RefutedMember => "refuted_member",
        }
    }
}

#[derive(Clone, Debug)]
pub struct GridReport {
    pub resolution: u32,
    pub points: Vec<PointVerdict>,
    pub disagreements: Vec<(usize, Disagreement)>,
}

impl GridReport {
    pub fn pass(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Runs membership, the canonical check and the refutation engine over
/// every point of the grid `{0, 1/r, ..., 1}^n`, reporting the three
/// possible disagreement patterns. An empty disagreement list instantiates
/// the projection theorem at grid scale.
pub fn project_grid(
    game: &BinaryGame,
    index: &CompilationIndex,
    resolution: u32,
) -> Result<GridReport, VerifyError> {
    assert!(resolution >= 1);
    let n = index.cert.n();
    let mut points = Vec::new();
    let mut disagreements = Vec::new();
    let mut counters = vec![0u32; n];
    loop {
        let x: Vec<Rat> = counters.iter().map(|&k| rat(k as i64, resolution as i64)).collect();
        let member = index.cert.membership(&x)?;
        let profile = canonical_profile(index, &x)?;
        let canonical_pass = game.check_equilibrium(&profile, &Rat::zero())?.pass;
        let outcome = refute(index, &x)?;
        let refuted = outcome.is_refuted();
        let payoffs = match &index.payoff_players {
            None => None,
            Some(players) => {
                let mut vals = Vec::with_capacity(players.len());
                for &p in players {
                    let top = game.players[p].top.eval(&profile)?;
                    let bottom = game.players[p].bottom.eval(&profile)?;
                    let sp = &profile.probs[p];
                    vals.push(sp * top + (Rat::one() - sp) * bottom);
                }
                Some(vals)
            }
        };
        let mut verdict = PointVerdict { x, member, canonical_pass, refuted, payoffs, trace: None };
        let idx = points.len();
        if member && !canonical_pass {
            disagreements.push((idx, Disagreement::MemberWithoutCanonical));
        }
        if !member && !refuted {
            disagreements.push((idx, Disagreement::NonMemberNotRefuted));
        }
        if member && refuted {
            disagreements.push((idx, Disagreement::RefutedMember));
            if let RefuteOutcome::Refuted(trace) = outcome {
                verdict.trace = Some(trace);
            }
        }
        points.push(verdict);

        // Lexicographic odometer over the grid.
        let mut pos = n;
        while pos > 0 {
            if counters[pos - 1] < resolution {
                counters[pos - 1] += 1;
                break;
            }
            counters[pos - 1] = 0;
            pos -= 1;
        }
        if pos == 0 {
            break;
        }
    }
    Ok(GridReport { resolution, points, disagreements })
}

pub const SCAN_PLAYER_LIMIT: usize = 6;

/// Brute-force equilibrium oracle: all `(r+1)^N` grid profiles passing the
/// eps-equilibrium check. Only for hand-built gadgets; compiled games are
/// far beyond this.
pub fn grid_scan_equilibria(
    game: &BinaryGame,
    resolution: u32,
    eps: &Rat,
) -> Result<Vec<MixedProfile>, VerifyError> {
    let n = game.n_players();
    if n > SCAN_PLAYER_LIMIT {
        return Err(VerifyError::TooManyPlayers { n, limit: SCAN_PLAYER_LIMIT });
    }
    let mut out = Vec::new();
    let mut counters = vec![0u32; n];
    loop {
        let profile = MixedProfile::new(
            counters.iter().map(|&k| rat(k as i64, resolution as i64)).collect(),
        );
        if game.check_equilibrium(&profile, eps)?.pass {
            out.push(profile);
        }
        let mut pos = n;
        while pos > 0 {
            if counters[pos - 1] < resolution {
                counters[pos - 1] += 1;
                break;
            }
            counters[pos - 1] = 0;
            pos -= 1;
        }
        if pos == 0 {
            break;
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Canonical check at an algebraic witness
// ---------------------------------------------------------------------------

/// Result of certifying one player's gap at the algebraic witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GapCertificate {
    /// The gap is the zero polynomial after reduction: exactly zero.
    ExactZero,
    /// Strict sign certified by an enclosure of the stated width.
    Certified { sign: Sign, width_log2: i64 },
    /// Enclosure still straddles zero at the maximum refinement.
    Undecided,
}

#[derive(Clone, Debug)]
pub struct WitnessCanonicalReport {
    pub pass: bool,
    pub gaps: Vec<GapCertificate>,
    /// Players whose gap verdict is incompatible with an equilibrium (or
    /// undecided).
    pub failures: Vec<PlayerId>,
}

/// Interval-certified canonical check at the (algebraic) witness of an
/// integer-mode game.
///
/// Every profile value at the witness is a power product of the witness
/// coordinates, so each payoff gap is a polynomial in them. Gaps that reduce
/// to the zero polynomial modulo the defining polynomials are exactly zero
/// (all the indifferences of the construction land here); remaining gaps get
/// a certified sign from interval refinement at width `2^-width_exp`, which
/// must then be compatible with the player's exact 0/1 probability.
pub fn certify_canonical_at_witness(
    game: &BinaryGame,
    index: &CompilationIndex,
    width_exp: u32,
) -> Result<WitnessCanonicalReport, VerifyError> {
    let ix = index
        .integer
        .as_ref()
        .expect("witness certification applies to integer-mode games");
    let n = index.cert.n();
    let coords = &ix.witness_coords;

    // Symbolic profile: polynomial in the witness coordinates per player.
    let total = game.n_players();
    let mut sym: Vec<Polynomial> = vec![Polynomial::zero(n); total];
    for (i, &b) in index.basic.iter().enumerate() {
        sym[b] = Polynomial::var(n, i);
    }
    for (i, rungs) in index.ladder.iter().enumerate() {
        for (k, pair) in rungs.iter().enumerate() {
            let mono = Polynomial::from_terms(n, [(unit_exp(n, i, 1u32 << k), Rat::one())]);
            sym[pair.power] = mono.clone();
            sym[pair.mirror] = mono;
        }
    }
    for (i, rungs) in ix.root_ladder.iter().enumerate() {
        for (k, pair) in rungs.iter().enumerate() {
            let mono = Polynomial::from_terms(n, [(unit_exp(n, i, 1u32 << k), Rat::one())]);
            sym[pair.power] = mono.clone();
            sym[pair.mirror] = mono;
        }
    }
    for (i, &v) in ix.root.iter().enumerate() {
        sym[v] = Polynomial::var(n, i);
    }
    for (i, &y) in ix.anchor.iter().enumerate() {
        sym[y] = Polynomial::var(n, i);
    }
    // Sign players: exact 0/1 from the validated witness signs.
    let report = index.cert.validate_witness(width_exp.max(64))?;
    for (c, &s) in index.sign.iter().enumerate() {
        let sign = report.poly_signs[index.leaf_polys[c]];
        let val = match sign {
            Some(Sign::Pos) => Rat::one(),
            Some(_) => Rat::zero(),
            None => Rat::zero(),
        };
        sym[s] = Polynomial::constant(n, val);
    }
    sym[index.detector] = Polynomial::zero(n);

    let width_target = pow2_neg(width_exp);
    let mut gaps = Vec::with_capacity(total);
    let mut failures = Vec::new();
    for (p, player) in game.players.iter().enumerate() {
        let gap_poly = eval_map_symbolic(&player.top, &sym, n)
            .sub(&eval_map_symbolic(&player.bottom, &sym, n));
        let cert = certify_gap_sign(&gap_poly, coords, &width_target, width_exp + 32);
        let ok = match &cert {
            GapCertificate::ExactZero => true,
            GapCertificate::Certified { sign, .. } => {
                // prob > 0 requires gap >= 0; prob < 1 requires gap <= 0.
                // Certified strict signs therefore need an exact 0/1 prob.
                let prob = &sym[p];
                match sign {
                    Sign::Pos => prob.constant_value() == Some(Rat::one()),
                    Sign::Neg => prob.constant_value() == Some(Rat::zero()),
                    Sign::Zero => true,
                }
            }
            GapCertificate::Undecided => false,
        };
        if !ok {
            failures.push(p);
        }
        gaps.push(cert);
    }
    Ok(WitnessCanonicalReport { pass: failures.is_empty(), gaps, failures })
}

fn unit_exp(n: usize, i: usize, e: u32) -> Vec<u32> {
    let mut exps = vec![0u32; n];
    exps[i] = e;
    exps
}

/// Substitutes the symbolic per-player polynomials into a multiaffine map.
fn eval_map_symbolic(
    map: &crate::game::MultiaffineMap,
    sym: &[Polynomial],
    n: usize,
) -> Polynomial {
    let mut acc = Polynomial::zero(n);
    for (vars, c) in map.terms() {
        let mut term = Polynomial::constant(n, c.clone());
        for &v in vars {
            term = term.mul(&sym[v]);
        }
        acc = acc.add(&term);
    }
    acc
}

fn pow2_neg(e: u32) -> Rat {
    let mut r = Rat::one();
    for _ in 0..e {
        r *= rat(1, 2);
    }
    r
}

/// Sign of a gap polynomial at the witness point with a width guarantee:
/// exact zero via reduction, otherwise interval refinement until the
/// enclosure has width at most `width_target` or the sign is certified.
fn certify_gap_sign(
    gap: &Polynomial,
    coords: &[Coordinate],
    width_target: &Rat,
    max_depth: u32,
) -> GapCertificate {
    let rat_subs: Vec<Option<Rat>> = coords.iter().map(|c| c.as_rational().cloned()).collect();
    let mut reduced = gap.substitute_partial(&rat_subs);
    for (i, c) in coords.iter().enumerate() {
        if let Coordinate::Algebraic(a) = c {
            if reduced.var_degree(i) as usize >= a.poly.degree() {
                reduced = reduced.rem_by_univariate(i, &a.poly);
            }
        }
    }
    if reduced.is_zero() {
        return GapCertificate::ExactZero;
    }
    if let Some(v) = reduced.constant_value() {
        return GapCertificate::Certified { sign: Sign::of(&v), width_log2: i64::MIN };
    }
    // Refine all the way down to the certification width, so every reported
    // verdict is backed by an enclosure at least that narrow.
    let mut work: Vec<Coordinate> = coords.to_vec();
    for _ in 0..=max_depth {
        let box_: Vec<Interval> = work.iter().map(Coordinate::enclosure).collect();
        let enc = eval_poly_box(&reduced, &box_);
        let width = enc.width();
        if &width <= width_target {
            return match enc.definite_sign() {
                Some(sign) => GapCertificate::Certified { sign, width_log2: width_log2(&width) },
                // Straddles zero at full width: only reduction can prove an
                // exact zero, and it already failed.
                None => GapCertificate::Undecided,
            };
        }
        for c in &mut work {
            c.refine();
        }
    }
    GapCertificate::Undecided
}

fn width_log2(w: &Rat) -> i64 {
    if w.is_zero() {
        return i64::MIN;
    }
    let mut k: i64 = 0;
    let mut v = w.clone();
    let one = Rat::one();
    let two = Rat::from_integer(2.into());
    while v < one {
        v *= &two;
        k -= 1;
    }
    while v >= two {
        v /= &two;
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compile::{compile_equilibrium, pin_gadget, CompileOptions};
    use crate::integer::compile_integer;
    use crate::parse::parse_certificate;
    use crate::rational::rat_int;

    fn half() -> (BinaryGame, CompilationIndex) {
        let cert = parse_certificate(
            "vars: x1\nmode: equilibrium\npoly P1: 2*x1 - 1\nformula: P1\nwitness: 0\n",
        )
        .unwrap();
        compile_equilibrium(&cert, &CompileOptions::default()).unwrap()
    }

    #[test]
    fn canonical_profile_half_interval() {
        let (game, index) = half();
        // x = 1/4 is a member: all gaps consistent at eps = 0.
        let profile = canonical_profile(&index, &[rat(1, 4)]).unwrap();
        assert_eq!(profile.probs[0], rat(1, 4));
        assert_eq!(profile.probs[index.ladder[0][0].power], rat(1, 4));
        assert_eq!(profile.probs[index.sign[0]], rat_int(0));
        let verdict = game.check_equilibrium(&profile, &Rat::zero()).unwrap();
        assert!(verdict.pass);
        // Hand-checked gaps: sign player -1/2, everyone else 0.
        assert_eq!(verdict.gaps[index.sign[0]], rat(-1, 2));
        assert_eq!(verdict.gaps[0], rat_int(0));
        assert_eq!(verdict.gaps[index.detector], rat_int(0));
        // x = 3/4 is not a member: the detector breaks the check.
        let profile = canonical_profile(&index, &[rat(3, 4)]).unwrap();
        let verdict = game.check_equilibrium(&profile, &Rat::zero()).unwrap();
        assert!(!verdict.pass);
        let v = verdict.first_violation.unwrap();
        assert_eq!(v.player, index.detector);
        assert_eq!(v.gap, rat_int(1));
    }

    #[test]
    fn refute_half_interval_trace_shape() {
        let (_, index) = half();
        match refute(&index, &[rat(3, 4)]).unwrap() {
            RefuteOutcome::Refuted(trace) => {
                // pin, sign_pos, detector, anchor.
                assert_eq!(trace.steps.len(), 4);
                assert_eq!(trace.steps[0].rule, Rule::Pin);
                assert!(matches!(&trace.steps[0].value, Coordinate::Rational(v) if *v == rat(3, 4)));
                assert_eq!(trace.steps[1].rule, Rule::SignPos);
                assert_eq!(trace.steps[2].rule, Rule::Detector);
                assert_eq!(trace.steps[3].rule, Rule::Anchor);
                assert!(matches!(&trace.steps[3].value, Coordinate::Rational(v) if v.is_zero()));
                assert_eq!(trace.contradiction.player, 0);
                assert_eq!(trace.contradiction.fixed, rat(3, 4));
            }
            other => panic!("expected refutation, got {other:?}"),
        }
        assert!(!refute(&index, &[rat(1, 4)]).unwrap().is_refuted());
    }

    #[test]
    fn refute_respects_free_signs_in_unions() {
        // OR of two leaves; at x = 1/8 one leaf is negative, the selector
        // minimum is 0, nothing forces the detector.
        let cert = parse_certificate(
            "vars: x1\nmode: equilibrium\npoly P1: 4*x1 - 1\npoly P2: 3 - 4*x1\n\
             formula: OR(P1,P2)\nwitness: 0\n",
        )
        .unwrap();
        let (_, index) = compile_equilibrium(&cert, &CompileOptions::default()).unwrap();
        assert!(!refute(&index, &[rat(1, 8)]).unwrap().is_refuted());
        // Midpoint: both leaves positive, selector = 1, refuted.
        assert!(refute(&index, &[rat(1, 2)]).unwrap().is_refuted());
        // Boundary x = 1/4: P1 = 0 (free), selector min = 0.
        assert!(!refute(&index, &[rat(1, 4)]).unwrap().is_refuted());
    }

    #[test]
    fn project_grid_half_interval() {
        let (game, index) = half();
        let report = project_grid(&game, &index, 16).unwrap();
        assert_eq!(report.points.len(), 17);
        assert!(report.pass());
        for p in &report.points {
            assert_eq!(p.member, p.x[0] <= rat(1, 2));
            assert_eq!(p.member, p.canonical_pass);
            assert_eq!(p.member, !p.refuted);
        }
    }

    #[test]
    fn grid_scan_on_pin_gadget() {
        let g = pin_gadget(&rat(1, 2));
        let eqs = grid_scan_equilibria(&g, 10, &Rat::zero()).unwrap();
        assert!(!eqs.is_empty());
        for p in &eqs {
            assert_eq!(p.probs[0], rat(1, 2));
        }
        // x = 0: every equilibrium has the pinned player at 0.
        let g = pin_gadget(&Rat::zero());
        let eqs = grid_scan_equilibria(&g, 10, &Rat::zero()).unwrap();
        assert_eq!(eqs.len(), 11);
        for p in &eqs {
            assert!(p.probs[0].is_zero());
        }
    }

    #[test]
    fn scan_rejects_large_games() {
        let (game, _) = half();
        // 5 players is fine, but build a 7-player dummy to hit the guard.
        let mut big = game.clone();
        while big.players.len() <= SCAN_PLAYER_LIMIT {
            big.players.push(big.players[big.players.len() - 1].clone());
        }
        assert!(matches!(
            grid_scan_equilibria(&big, 1, &Rat::zero()),
            Err(VerifyError::TooManyPlayers { .. })
        ));
    }

    #[test]
    fn integer_refutation_with_algebraic_forcing() {
        let cert = crate::integer::tests::sqrt_half_cert();
        let (game, index) = compile_integer(&cert, &CompileOptions::default()).unwrap();
        let ix = index.integer.as_ref().unwrap();
        match refute(&index, &[rat(1, 2)]).unwrap() {
            RefuteOutcome::Refuted(trace) => {
                let rules: Vec<Rule> = trace.steps.iter().map(|s| s.rule).collect();
                assert_eq!(
                    rules,
                    vec![Rule::Pin, Rule::Pin, Rule::SignNeg, Rule::SignPos, Rule::Detector, Rule::Root, Rule::Anchor]
                );
                // Root step value is the root of Q_1 in a refined interval.
                let root_step = &trace.steps[5];
                assert_eq!(root_step.player, ix.root[0]);
                match &root_step.value {
                    Coordinate::Algebraic(a) => {
                        assert_eq!(a.poly, ix.data.q_polys[0]);
                    }
                    other => panic!("expected algebraic root value, got {other:?}"),
                }
                // Anchor value excludes 1/2 after refinement.
                match &trace.steps[6].value {
                    Coordinate::Algebraic(a) => {
                        assert!(!a.interval.contains(&rat(1, 2)));
                    }
                    other => panic!("expected algebraic anchor value, got {other:?}"),
                }
            }
            other => panic!("expected refutation, got {other:?}"),
        }
        // Grid projection: E ∩ grid_16 is empty (sqrt(1/2) is irrational),
        // every grid point must be refuted and no canonical check passes.
        let report = project_grid(&game, &index, 16).unwrap();
        assert!(report.pass());
        for p in &report.points {
            assert!(!p.member && p.refuted && !p.canonical_pass);
        }
    }

    #[test]
    fn witness_canonical_certified_at_width() {
        let cert = crate::integer::tests::sqrt_half_cert();
        let (game, index) = compile_integer(&cert, &CompileOptions::default()).unwrap();
        let report = certify_canonical_at_witness(&game, &index, 40).unwrap();
        assert!(report.pass, "failures: {:?}", report.failures);
        // The construction makes every gap exactly zero here (sign players
        // included, since both leaves vanish at the witness).
        for (p, gap) in report.gaps.iter().enumerate() {
            match gap {
                GapCertificate::ExactZero => {}
                GapCertificate::Certified { width_log2, .. } => {
                    assert!(*width_log2 <= -40, "player {p}: width 2^{width_log2}");
                }
                GapCertificate::Undecided => panic!("player {p} undecided"),
            }
        }
    }

    #[test]
    fn witness_canonical_with_strict_leaf() {
        // Add a strictly satisfied leaf P3 = x - 1 (negative at the witness):
        // its sign player has a strictly negative gap certified by intervals.
        let cert = parse_certificate(
            "vars: x1\nmode: equilibrium\npoly P1: 2*x1^2 - 1\npoly P2: 1 - 2*x1^2\n\
             poly P3: x1 - 1\nformula: AND(P1,P2,P3)\n\
             witness_alg 1: R=[-1,0,2] interval=[1/2,1]\n",
        )
        .unwrap();
        let (game, index) = compile_integer(&cert, &CompileOptions::default()).unwrap();
        let report = certify_canonical_at_witness(&game, &index, 40).unwrap();
        assert!(report.pass, "failures: {:?}", report.failures);
        let s3 = index.sign[2];
        match &report.gaps[s3] {
            GapCertificate::Certified { sign: Sign::Neg, width_log2 } => {
                assert!(*width_log2 <= -40);
            }
            other => panic!("expected certified negative gap, got {other:?}"),
        }
    }
}

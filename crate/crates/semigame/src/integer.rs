//! Integer-payoff compilation for certificates with integer-coefficient
//! polynomials and an algebraic witness.
//!
//! A rational-payoff game cannot carry an irrational witness coordinate in
//! an anchor payoff. Instead, each coordinate's defining polynomial `R_i`
//! is rescaled to `Q_i(x) = M2^d1 * R_i((x + alpha_i)/M2)` whose unique root
//! in `[0,1]` is `M2*z_i - alpha_i`; an extra player `V_i` is forced onto
//! that root, and a pin pair re-derives `x_i = z_i` from it. Multiplying the
//! pin pair through by `M2` makes every pure payoff an integer.

use crate::algebraic::Coordinate;
use crate::cert::{all_polys_integer, Certificate, Mode, Witness};
use crate::compile::{
    build_power_ladder, ladder_q, multiaffine_lift, selector_map, CompilationIndex, CompileError,
    CompileOptions, LadderPair,
};
use crate::game::{BinaryGame, GameMeta, MultiaffineMap, Player, PlayerId, Role};
use crate::interval::Interval;
use crate::poly::Polynomial;
use crate::rational::{is_integer, Rat};
use crate::unipoly::{sturm_root_count_closed, Sign, SturmError, UniPoly};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use std::fmt;

pub use crate::unipoly::sturm_root_count;

#[derive(Clone, Debug)]
pub enum IntegerError {
    Compile(CompileError),
    NonIntegerCoefficients { poly: String },
    RationalWitness,
    IntervalNotUnitFraction { coord: usize },
    AlphaNotInteger { coord: usize },
    MixedScales,
    SignRule { coord: usize },
    RootCount { coord: usize, count: usize },
    Sturm(SturmError),
    NonIntegerPurePayoff { player: PlayerId },
}

impl fmt::Display for IntegerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntegerError::Compile(e) => write!(f, "{e}"),
            IntegerError::NonIntegerCoefficients { poly } => {
                write!(f, "polynomial {poly} has non-integer coefficients")
            }
            IntegerError::RationalWitness => write!(
                f,
                "integer mode needs per-coordinate witness_alg lines (a rational p/q \
                 embeds as R=[-p,q] with an isolating interval)"
            ),
            IntegerError::IntervalNotUnitFraction { coord } => write!(
                f,
                "witness interval of coordinate {coord} is not of the form [a/M, (a+1)/M]"
            ),
            IntegerError::AlphaNotInteger { coord } => write!(
                f,
                "witness interval of coordinate {coord} does not start on a multiple of 1/M"
            ),
            IntegerError::MixedScales => {
                write!(f, "all witness intervals must share the same width 1/M")
            }
            IntegerError::SignRule { coord } => write!(
                f,
                "rescaled polynomial of coordinate {coord} has the same strict sign at 0 and 1"
            ),
            IntegerError::RootCount { coord, count } => write!(
                f,
                "rescaled polynomial of coordinate {coord} has {count} roots in [0,1], expected 1"
            ),
            IntegerError::Sturm(e) => write!(f, "{e}"),
            IntegerError::NonIntegerPurePayoff { player } => {
                write!(f, "player {player} has a non-integer pure payoff (construction bug)")
            }
        }
    }
}

impl std::error::Error for IntegerError {}

impl From<CompileError> for IntegerError {
    fn from(e: CompileError) -> Self {
        IntegerError::Compile(e)
    }
}

impl From<SturmError> for IntegerError {
    fn from(e: SturmError) -> Self {
        IntegerError::Sturm(e)
    }
}

/// Witness data in the integer construction's own coordinates.
#[derive(Clone, Debug)]
pub struct AlgebraicWitnessData {
    /// `R_i` per coordinate, integer coefficients, squarefree.
    pub r_polys: Vec<UniPoly>,
    /// Isolating interval `[alpha_i/M2, (1+alpha_i)/M2]` per coordinate.
    pub intervals: Vec<Interval>,
    pub alpha: Vec<BigInt>,
    pub m2: BigInt,
    /// `max_i deg R_i`.
    pub d1: usize,
    /// Sign-normalized rescaled polynomials `Q_i`.
    pub q_polys: Vec<UniPoly>,
}

/// Extra players emitted by the integer compiler, appended after the
/// detector: `V_i`, their ladders `(V_ik, W_ik)`, then the anchors `Y_i`.
#[derive(Clone, Debug)]
pub struct IntegerIndex {
    pub data: AlgebraicWitnessData,
    pub root: Vec<PlayerId>,
    pub root_ladder: Vec<Vec<LadderPair>>,
    pub anchor: Vec<PlayerId>,
    /// Isolated witness coordinates (endpoint roots collapse to rationals).
    pub witness_coords: Vec<Coordinate>,
}

impl IntegerIndex {
    pub fn extra_player_count(&self) -> usize {
        let n = self.root.len();
        2 * n + 2 * self.root_ladder.iter().map(Vec::len).sum::<usize>()
    }

    /// Canonical values of the extra players at a rational point: `v_i` and
    /// `y_i` sit at `x_i`, the `v`-ladder at the exact powers.
    pub fn fill_canonical(&self, _index: &CompilationIndex, x: &[Rat], probs: &mut [Rat]) {
        for (i, (&v, &y)) in self.root.iter().zip(&self.anchor).enumerate() {
            probs[v] = x[i].clone();
            probs[y] = x[i].clone();
            let mut pow = x[i].clone();
            for pair in &self.root_ladder[i] {
                probs[pair.power] = pow.clone();
                probs[pair.mirror] = pow.clone();
                pow = &pow * &pow;
            }
        }
    }
}

/// Rescales `r` onto the unit interval: `Q(x) = m2^d1 * r((x + alpha)/m2)`,
/// sign-normalized so that `Q(0) >= 0 >= Q(1)`, with exactly one root in
/// `[0,1]` (verified by Sturm count).
pub fn build_isolated_quotient(
    r: &UniPoly,
    alpha: &BigInt,
    m2: &BigInt,
    d1: usize,
    coord: usize,
) -> Result<UniPoly, IntegerError> {
    let m2q = Rat::from_integer(m2.clone());
    let aq = Rat::from_integer(alpha.clone());
    let shift = &aq / &m2q;
    let inv = Rat::one() / &m2q;
    let raw = r.compose_linear(&shift, &inv);
    let mut scale = Rat::one();
    for _ in 0..d1 {
        scale *= &m2q;
    }
    let q = raw.scale(&scale);
    debug_assert!(q.is_integer(), "rescaling must clear denominators");
    let q0 = q.sign_at(&Rat::zero());
    let q1 = q.sign_at(&Rat::one());
    let normalized = match (q0, q1) {
        (Sign::Pos | Sign::Zero, Sign::Neg | Sign::Zero) => q,
        (Sign::Neg | Sign::Zero, Sign::Pos | Sign::Zero) => q.neg(),
        _ => return Err(IntegerError::SignRule { coord }),
    };
    let count = sturm_root_count_closed(&normalized, &Rat::zero(), &Rat::one())?;
    if count != 1 {
        return Err(IntegerError::RootCount { coord, count });
    }
    Ok(normalized)
}

/// Derives `(alpha_i, M2)` from the witness intervals and validates every
/// invariant of the construction.
pub fn witness_data(cert: &Certificate) -> Result<AlgebraicWitnessData, IntegerError> {
    let coords = match &cert.witness {
        Witness::Algebraic(coords) => coords,
        Witness::Rational(_) => return Err(IntegerError::RationalWitness),
    };
    let mut m2: Option<BigInt> = None;
    let mut alpha = Vec::with_capacity(coords.len());
    let mut r_polys = Vec::with_capacity(coords.len());
    let mut intervals = Vec::with_capacity(coords.len());
    for (i, c) in coords.iter().enumerate() {
        let width = &c.hi - &c.lo;
        // width = 1/M2 with M2 a positive integer
        let inv = Rat::one() / &width;
        if !is_integer(&inv) || !inv.is_positive() {
            return Err(IntegerError::IntervalNotUnitFraction { coord: i + 1 });
        }
        let m2_here = inv.to_integer();
        let a = &c.lo * Rat::from_integer(m2_here.clone());
        if !is_integer(&a) || a.is_negative() {
            return Err(IntegerError::AlphaNotInteger { coord: i + 1 });
        }
        match &m2 {
            None => m2 = Some(m2_here),
            Some(existing) if *existing == m2_here => {}
            Some(_) => return Err(IntegerError::MixedScales),
        }
        alpha.push(a.to_integer());
        r_polys.push(c.poly.clone());
        intervals.push(Interval::new(c.lo.clone(), c.hi.clone()));
    }
    let m2 = m2.expect("parser guarantees at least one coordinate");
    let d1 = r_polys.iter().map(UniPoly::degree).max().unwrap_or(0);
    let mut q_polys = Vec::with_capacity(r_polys.len());
    for (i, r) in r_polys.iter().enumerate() {
        q_polys.push(build_isolated_quotient(r, &alpha[i], &m2, d1, i + 1)?);
    }
    Ok(AlgebraicWitnessData { r_polys, intervals, alpha, m2, d1, q_polys })
}

/// Compiles an integer-coefficient certificate with an algebraic witness
/// into a game whose pure payoffs are all integers.
pub fn compile_integer(
    cert: &Certificate,
    opts: &CompileOptions,
) -> Result<(BinaryGame, CompilationIndex), IntegerError> {
    if cert.mode != Mode::Equilibrium {
        return Err(CompileError::WrongMode { expected: "equilibrium" }.into());
    }
    if !all_polys_integer(cert) {
        let offender = cert
            .poly_names
            .iter()
            .zip(&cert.polys)
            .find(|(_, p)| p.terms().any(|(_, c)| !is_integer(c)))
            .map(|(n, _)| n.clone())
            .unwrap_or_default();
        return Err(IntegerError::NonIntegerCoefficients { poly: offender });
    }
    let data = witness_data(cert)?;
    let witness_coords = cert
        .witness_coordinates()
        .map_err(CompileError::Cert)?;
    // Witness membership gate, as in the rational compiler.
    let report = cert
        .validate_witness(opts.witness_refine_depth)
        .map_err(CompileError::Cert)?;
    let undecided_override = match report.verdict {
        crate::cert::WitnessVerdict::Confirmed => false,
        crate::cert::WitnessVerdict::Rejected => {
            return Err(CompileError::WitnessRejected.into())
        }
        crate::cert::WitnessVerdict::Undecided { depth } => {
            if opts.allow_undecided_witness {
                true
            } else {
                return Err(CompileError::WitnessUndecided { depth }.into());
            }
        }
    };

    let n = cert.n();
    let degrees = cert.leaf_var_degrees();
    let q: Vec<usize> = degrees.iter().map(|&d| ladder_q(d)).collect();
    let leaf_polys = cert.formula.leaf_polys();
    let c_leaves = leaf_polys.len();

    // Player order: the rational core first (X_i, x-ladders, signs, U),
    // then V_i, the v-ladders, and the anchors Y_i.
    let basic: Vec<PlayerId> = (0..n).collect();
    let mut next = n;
    let mut ladder: Vec<Vec<LadderPair>> = Vec::with_capacity(n);
    for qi in &q {
        let mut rungs = Vec::with_capacity(*qi);
        for _ in 0..*qi {
            rungs.push(LadderPair { power: next, mirror: next + 1 });
            next += 2;
        }
        ladder.push(rungs);
    }
    let sign: Vec<PlayerId> = (0..c_leaves).map(|c| next + c).collect();
    next += c_leaves;
    let detector = next;
    next += 1;
    let root: Vec<PlayerId> = (0..n).map(|i| next + i).collect();
    next += n;
    let mut root_ladder: Vec<Vec<LadderPair>> = Vec::with_capacity(n);
    for qp in &data.q_polys {
        let rungs_len = ladder_q(qp.degree() as u32);
        let mut rungs = Vec::with_capacity(rungs_len);
        for _ in 0..rungs_len {
            rungs.push(LadderPair { power: next, mirror: next + 1 });
            next += 2;
        }
        root_ladder.push(rungs);
    }
    let anchor: Vec<PlayerId> = (0..n).map(|i| next + i).collect();
    next += n;
    let total = next;

    let m2q = Rat::from_integer(data.m2.clone());
    let mut players: Vec<Option<Player>> = vec![None; total];
    // Pin-pair target of coordinate i, scaled by M2:
    //   M2*(1-u)*x_i0 + u*(v_i + alpha_i).
    let scaled_target = |i: usize| {
        let mut m = MultiaffineMap::zero();
        m.add_term(&[ladder[i][0].power], m2q.clone());
        m.add_term(&[ladder[i][0].power, detector], -m2q.clone());
        m.add_term(&[detector, root[i]], Rat::one());
        m.add_term(&[detector], Rat::from_integer(data.alpha[i].clone()));
        m
    };
    for (i, &b) in basic.iter().enumerate() {
        players[b] = Some(Player {
            role: Role::Basic { i: i + 1 },
            top: scaled_target(i),
            bottom: MultiaffineMap::var(anchor[i]).scale(&m2q),
        });
    }
    for i in 0..n {
        for k in 0..q[i] {
            let (pw, mi) = build_power_ladder(basic[i], &ladder[i], k, i + 1, false);
            players[ladder[i][k].power] = Some(pw);
            players[ladder[i][k].mirror] = Some(mi);
        }
    }
    for (c, (&s, &p)) in sign.iter().zip(&leaf_polys).enumerate() {
        let lifted = multiaffine_lift(&cert.polys[p], &ladder)?;
        players[s] = Some(Player {
            role: Role::Sign { c: c + 1 },
            top: lifted,
            bottom: MultiaffineMap::zero(),
        });
    }
    let selector = cert.selector();
    players[detector] = Some(Player {
        role: Role::Detector,
        top: selector_map(&selector, &sign)?,
        bottom: MultiaffineMap::zero(),
    });
    for i in 0..n {
        let qp_poly = Polynomial::from_terms(
            1,
            data.q_polys[i]
                .coeffs()
                .iter()
                .enumerate()
                .map(|(e, c)| (vec![e as u32], c.clone())),
        );
        let lifted = multiaffine_lift(&qp_poly, &[root_ladder[i].clone()])?;
        players[root[i]] = Some(Player {
            role: Role::Root { i: i + 1 },
            top: lifted.gate_by(detector).map_err(CompileError::Game)?,
            bottom: MultiaffineMap::zero(),
        });
        for k in 0..root_ladder[i].len() {
            let (pw, mi) = build_power_ladder(root[i], &root_ladder[i], k, i + 1, true);
            players[root_ladder[i][k].power] = Some(pw);
            players[root_ladder[i][k].mirror] = Some(mi);
        }
        players[anchor[i]] = Some(Player {
            role: Role::Anchor { i: i + 1 },
            top: MultiaffineMap::var(basic[i]).scale(&m2q),
            bottom: scaled_target(i),
        });
    }

    let game = BinaryGame {
        players: players.into_iter().map(Option::unwrap).collect(),
        meta: GameMeta {
            certificate_digest: cert.digest(),
            mode: "equilibrium".into(),
            projection_players: basic.clone(),
            integer_mode: true,
            box_radius: None,
            witness_undecided_override: undecided_override,
        },
    };
    game.validate_structure().map_err(CompileError::Game)?;
    // Guard against construction bugs: every pure payoff must be an integer.
    for (p, player) in game.players.iter().enumerate() {
        for map in [&player.top, &player.bottom] {
            if !vertex_values(map).iter().all(is_integer) {
                return Err(IntegerError::NonIntegerPurePayoff { player: p });
            }
        }
    }

    let index = CompilationIndex {
        cert: cert.clone(),
        basic,
        q,
        ladder,
        sign,
        leaf_polys,
        detector,
        selector,
        witness: None,
        payoff_players: None,
        box_radius: None,
        integer: Some(IntegerIndex { data, root, root_ladder, anchor, witness_coords }),
    };
    debug_assert_eq!(game.n_players(), index.expected_player_count());
    Ok((game, index))
}

/// Values of a map at all 0/1 assignments of its own variables.
pub fn vertex_values(map: &MultiaffineMap) -> Vec<Rat> {
    let vars = map.variables();
    let mut out = Vec::with_capacity(1 << vars.len());
    for mask in 0u64..(1u64 << vars.len()) {
        let value = map.eval_vertex(|v| {
            let pos = vars.iter().position(|&w| w == v).unwrap();
            (mask >> pos) & 1 == 1
        });
        out.push(value);
    }
    out
}

/// Largest pure-payoff magnitude per player, with the construction's own
/// a-priori bound `2^(rungs) * max |coef Q_i|` for each root player.
#[derive(Clone, Debug)]
pub struct MagnitudeReport {
    pub max_abs: BigInt,
    pub per_player: Vec<BigInt>,
    /// `(player, bound)` for each root player `V_i`.
    pub root_bounds: Vec<(PlayerId, BigInt)>,
}

pub fn max_payoff_magnitude(game: &BinaryGame, index: &CompilationIndex) -> MagnitudeReport {
    let mut per_player = Vec::with_capacity(game.players.len());
    let mut max_abs = BigInt::zero();
    for player in &game.players {
        let mut m = BigInt::zero();
        for map in [&player.top, &player.bottom] {
            for v in vertex_values(map) {
                let a = v.numer().abs() / v.denom().abs();
                m = m.max(a);
            }
        }
        max_abs = max_abs.clone().max(m.clone());
        per_player.push(m);
    }
    let mut root_bounds = Vec::new();
    if let Some(ix) = &index.integer {
        for (i, &v) in ix.root.iter().enumerate() {
            let rungs = ix.root_ladder[i].len();
            let max_coef = ix.data.q_polys[i]
                .coeffs()
                .iter()
                .map(|c| c.numer().abs())
                .max()
                .unwrap_or_else(BigInt::zero);
            root_bounds.push((v, (BigInt::one() << rungs) * max_coef));
        }
    }
    MagnitudeReport { max_abs, per_player, root_bounds }
}

/// Exact player count of the integer construction next to its closed-form
/// bound `1 + C + n(5 + 2 log2 d) + 2n(1 + log2 d1)`.
#[derive(Clone, Debug)]
pub struct IntegerCountReport {
    pub exact: usize,
    pub bound_lo: Option<String>,
    pub bound_hi: Option<String>,
    pub exact_le: Option<bool>,
}

pub fn player_count_integer(cert: &Certificate) -> Result<IntegerCountReport, IntegerError> {
    let data = witness_data(cert)?;
    let n = cert.n();
    let degrees = cert.leaf_var_degrees();
    let q: Vec<usize> = degrees.iter().map(|&d| ladder_q(d)).collect();
    let rungs: Vec<usize> = data
        .q_polys
        .iter()
        .map(|qp| ladder_q(qp.degree() as u32))
        .collect();
    let c_leaves = cert.formula.leaf_count();
    let exact =
        3 * n + 2 * q.iter().sum::<usize>() + 2 * rungs.iter().sum::<usize>() + c_leaves + 1;
    let d_max = degrees.iter().copied().max().unwrap_or(0);
    if d_max == 0 || data.d1 == 0 {
        return Ok(IntegerCountReport { exact, bound_lo: None, bound_hi: None, exact_le: None });
    }
    let width = crate::rational::rat(1, 10_000_000_000_000_000);
    let (dlo, dhi) = crate::numeric::log2_bounds(&Rat::from_integer(d_max.into()), &width);
    let (d1lo, d1hi) = crate::numeric::log2_bounds(&Rat::from_integer(data.d1.into()), &width);
    let fixed = Rat::from_integer((1 + c_leaves + 7 * n).into());
    let scale = Rat::from_integer((2 * n).into());
    let lo = &fixed + &scale * (&dlo + &d1lo);
    let hi = &fixed + &scale * (&dhi + &d1hi);
    // exact <= bound  iff  2^(sum q + sum rungs - 2n) <= (d*d1)^n.
    let t = q.iter().sum::<usize>() + rungs.iter().sum::<usize>() - 2 * n;
    let lhs = BigUint::from(1u32) << t;
    let rhs = (BigUint::from(d_max) * BigUint::from(data.d1)).pow(n as u32);
    Ok(IntegerCountReport {
        exact,
        bound_lo: Some(crate::rational::decimal_directed(&lo, 12, false)),
        bound_hi: Some(crate::rational::decimal_directed(&hi, 12, true)),
        exact_le: Some(lhs <= rhs),
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::parse::parse_certificate;
    use crate::rational::{rat, rat_int};

    pub(crate) fn sqrt_half_cert() -> Certificate {
        parse_certificate(
            "vars: x1\nmode: equilibrium\npoly P1: 2*x1^2 - 1\npoly P2: 1 - 2*x1^2\n\
             formula: AND(P1,P2)\nwitness_alg 1: R=[-1,0,2] interval=[1/2,1]\n",
        )
        .unwrap()
    }

    #[test]
    fn quotient_matches_hand_expansion() {
        // R = 2X^2 - 1, alpha = 1, M2 = 2, d1 = 2:
        // raw Q = 4*R((x+1)/2) = 2x^2 + 4x - 2; normalized -2x^2 - 4x + 2.
        let q = build_isolated_quotient(
            &UniPoly::from_integers(&[-1, 0, 2]),
            &BigInt::from(1),
            &BigInt::from(2),
            2,
            1,
        )
        .unwrap();
        assert_eq!(q, UniPoly::from_integers(&[2, -4, -2]));
        assert_eq!(q.sign_at(&Rat::zero()), Sign::Pos);
        assert_eq!(q.sign_at(&Rat::one()), Sign::Neg);
        // Root transport: root of Q in [0,1] is sqrt(2)-1.
        assert_eq!(
            sturm_root_count(&q, &rat_int(0), &rat_int(1)).unwrap(),
            1
        );
    }

    #[test]
    fn quotient_degenerate_rational_witness() {
        // R = 2X - 1, alpha = 0, M2 = 1, d1 = 1: Q = 2x - 1, normalized 1 - 2x.
        let q = build_isolated_quotient(
            &UniPoly::from_integers(&[-1, 2]),
            &BigInt::from(0),
            &BigInt::from(1),
            1,
            1,
        )
        .unwrap();
        assert_eq!(q, UniPoly::from_integers(&[1, -2]));
    }

    #[test]
    fn quotient_rejects_bad_isolation() {
        // (4X-1)(4X-3): two roots in [0,1] and the same strict sign at both
        // endpoints, caught by the sign rule.
        let r = UniPoly::from_integers(&[3, -16, 16]);
        let err =
            build_isolated_quotient(&r, &BigInt::from(0), &BigInt::from(1), 2, 1).unwrap_err();
        assert!(matches!(err, IntegerError::SignRule { .. }), "{err}");
        // (4X-1)(2X-1)(4X-3): sign rule passes, three roots in [0,1].
        let r = UniPoly::from_integers(&[-3, 22, -48, 32]);
        let err =
            build_isolated_quotient(&r, &BigInt::from(0), &BigInt::from(1), 3, 1).unwrap_err();
        assert!(matches!(err, IntegerError::RootCount { count: 3, .. }), "{err}");
    }

    #[test]
    fn quotient_identity_symbolic() {
        // M2^d1 * R((x+alpha)/M2) = ±Q as polynomials.
        let r = UniPoly::from_integers(&[-1, 0, 2]);
        let (alpha, m2, d1) = (BigInt::from(1), BigInt::from(2), 2usize);
        let q = build_isolated_quotient(&r, &alpha, &m2, d1, 1).unwrap();
        let raw = r
            .compose_linear(&rat(1, 2), &rat(1, 2))
            .scale(&rat_int(4));
        assert_eq!(raw, q.neg());
    }

    #[test]
    fn integer_compile_sqrt_half() {
        let cert = sqrt_half_cert();
        let (game, index) = compile_integer(&cert, &CompileOptions::default()).unwrap();
        // n=1, q=2, two leaves, detector, V with 2 rungs, anchor:
        // 1 + 4 + 2 + 1 + 1 + 4 + 1 = 14.
        assert_eq!(game.n_players(), 14);
        assert!(game.meta.integer_mode);
        let ix = index.integer.as_ref().unwrap();
        assert_eq!(ix.data.m2, BigInt::from(2));
        assert_eq!(ix.data.alpha, vec![BigInt::from(1)]);
        assert_eq!(ix.data.q_polys[0], UniPoly::from_integers(&[2, -4, -2]));
        // All pure payoffs integers (also enforced internally).
        for player in &game.players {
            for map in [&player.top, &player.bottom] {
                assert!(vertex_values(map).iter().all(is_integer));
            }
        }
        let count = player_count_integer(&cert).unwrap();
        assert_eq!(count.exact, 14);
        assert_eq!(count.exact_le, Some(true));
        assert_eq!(count.bound_lo.as_deref(), Some("14.000000000000"));
    }

    #[test]
    fn magnitude_bound_holds() {
        let cert = sqrt_half_cert();
        let (game, index) = compile_integer(&cert, &CompileOptions::default()).unwrap();
        let report = max_payoff_magnitude(&game, &index);
        let ix = index.integer.as_ref().unwrap();
        let (v_player, bound) = &report.root_bounds[0];
        assert_eq!(*v_player, ix.root[0]);
        // 2 rungs, max |coef Q| = 4: bound 2^2 * 4 = 16.
        assert_eq!(*bound, BigInt::from(16));
        assert!(report.per_player[*v_player] <= *bound);
        assert_eq!(report.per_player[*v_player], BigInt::from(4));
    }

    #[test]
    fn non_integer_polys_rejected() {
        let cert = parse_certificate(
            "vars: x1\nmode: equilibrium\npoly P1: x1 - 1/2\nformula: P1\n\
             witness_alg 1: R=[0,1] interval=[0,1/2]\n",
        )
        .unwrap();
        assert!(matches!(
            compile_integer(&cert, &CompileOptions::default()),
            Err(IntegerError::NonIntegerCoefficients { .. })
        ));
    }

    #[test]
    fn interval_scale_validation() {
        // width 2/5 is not a unit fraction.
        let cert = parse_certificate(
            "vars: x1\nmode: equilibrium\npoly P1: 2*x1 - 1\nformula: P1\n\
             witness_alg 1: R=[-1,5] interval=[1/5,3/5]\n",
        )
        .unwrap();
        assert!(matches!(
            witness_data(&cert),
            Err(IntegerError::IntervalNotUnitFraction { coord: 1 })
        ));
    }
}

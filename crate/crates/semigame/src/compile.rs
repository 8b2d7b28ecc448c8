//! Lowering from certificates to binary games.
//!
//! The construction emits, in a fixed topological order: the `n` basic
//! players whose Top-probabilities realize the projection; per variable a
//! ladder of pin pairs forcing `x_ik = x_i^(2^k)` in every equilibrium; one
//! sign player per formula leaf whose Top payoff is the leaf polynomial
//! lifted to the ladder variables; and a detector whose Top payoff is the
//! selector over the sign players. The basic players' payoff `(z_i - x_i0)u`
//! then pins every would-be equilibrium outside the set to the witness `z`,
//! which is the contradiction realizing the projection theorem.

use crate::cert::{Certificate, Mode, Witness, WitnessVerdict};
use crate::formula::Selector;
use crate::game::{BinaryGame, GameError, GameMeta, MultiaffineMap, Player, PlayerId, Role};
use crate::numeric::log2_bounds;
use crate::poly::Polynomial;
use crate::rational::{decimal_directed, rat, Rat};
use num_bigint::BigUint;
use num_traits::One;
use std::fmt;

#[derive(Clone, Debug)]
pub enum CompileError {
    WrongMode { expected: &'static str },
    WitnessRejected,
    WitnessUndecided { depth: u32 },
    AlgebraicWitnessNeedsIntegerMode,
    LadderCapacity { var: usize, degree: u32, q: usize },
    Cert(crate::cert::CertError),
    Game(GameError),
}

impl fmt::Display for CompileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompileError::WrongMode { expected } => {
                write!(f, "certificate must be in {expected} mode")
            }
            CompileError::WitnessRejected => {
                write!(f, "witness is not a member of the described set")
            }
            CompileError::WitnessUndecided { depth } => write!(
                f,
                "witness membership undecided after {depth} refinement steps \
                 (pass --allow-undecided-witness to compile anyway)"
            ),
            CompileError::AlgebraicWitnessNeedsIntegerMode => write!(
                f,
                "algebraic witness coordinates cannot appear in rational payoffs; \
                 compile with --integer"
            ),
            CompileError::LadderCapacity { var, degree, q } => write!(
                f,
                "degree {degree} in variable {var} exceeds ladder capacity (q = {q})"
            ),
            CompileError::Cert(e) => write!(f, "{e}"),
            CompileError::Game(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CompileError {}

impl From<crate::cert::CertError> for CompileError {
    fn from(e: crate::cert::CertError) -> Self {
        CompileError::Cert(e)
    }
}

impl From<GameError> for CompileError {
    fn from(e: GameError) -> Self {
        CompileError::Game(e)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CompileOptions {
    pub allow_undecided_witness: bool,
    pub witness_refine_depth: u32,
}

impl Default for CompileOptions {
    fn default() -> Self {
        CompileOptions { allow_undecided_witness: false, witness_refine_depth: 64 }
    }
}

/// One rung of a power ladder: the forced player and its mirror.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LadderPair {
    pub power: PlayerId,
    pub mirror: PlayerId,
}

/// Bookkeeping produced by compilation: who is who in the emitted game,
/// plus the certificate actually compiled (already rescaled onto the unit
/// box in payoff mode). The verifier steers by this index.
#[derive(Clone, Debug)]
pub struct CompilationIndex {
    pub cert: Certificate,
    pub basic: Vec<PlayerId>,
    pub q: Vec<usize>,
    pub ladder: Vec<Vec<LadderPair>>,
    pub sign: Vec<PlayerId>,
    /// Named-poly index of each formula leaf, in leaf order.
    pub leaf_polys: Vec<usize>,
    pub detector: PlayerId,
    pub selector: Selector,
    /// Rational witness of the compiled certificate (absent in integer mode).
    pub witness: Option<Vec<Rat>>,
    /// `Y_i0` indices when compiled in payoff mode.
    pub payoff_players: Option<Vec<PlayerId>>,
    pub box_radius: Option<Rat>,
    /// Extra structure emitted by the integer-mode compiler.
    pub integer: Option<crate::integer::IntegerIndex>,
}

/// Smallest ladder length `q >= 1` with `d < 2^q`. Even a variable of
/// degree 0 keeps a one-rung ladder: the anchor payoff references `x_i0`.
pub fn ladder_q(d: u32) -> usize {
    let mut q = 1usize;
    while u64::from(d) >= 1u64 << q {
        q += 1;
    }
    q
}

/// Payoff tables of one ladder rung: the power player prefers Top according
/// to `x_i * prod_{j<k} x_ij`, its mirror inverts the comparison, and in any
/// equilibrium the pair forces `x_ik` to equal that product.
pub fn build_power_ladder(
    base: PlayerId,
    rungs: &[LadderPair],
    k: usize,
    role_i: usize,
    integer_roles: bool,
) -> (Player, Player) {
    let mut prod_vars: Vec<PlayerId> = vec![base];
    prod_vars.extend(rungs[..k].iter().map(|p| p.power));
    let prod = MultiaffineMap::monomial(&prod_vars, Rat::one());
    let power = Player {
        role: if integer_roles {
            Role::RootPower { i: role_i, k }
        } else {
            Role::Power { i: role_i, k }
        },
        top: prod.clone(),
        bottom: MultiaffineMap::var(rungs[k].mirror),
    };
    let mirror = Player {
        role: if integer_roles {
            Role::RootMirror { i: role_i, k }
        } else {
            Role::Mirror { i: role_i, k }
        },
        top: MultiaffineMap::var(rungs[k].power),
        bottom: prod,
    };
    (power, mirror)
}

/// Rewrites a polynomial as a multiaffine map over ladder variables: each
/// exponent is decomposed into its binary digits, so the monomial
/// `x_i^m` becomes the product of the ladder players `X_ik` with bit `k`
/// set in `m`. Exact: evaluating the map at the exact powers of any point
/// reproduces the polynomial value.
pub fn multiaffine_lift(
    p: &Polynomial,
    ladder: &[Vec<LadderPair>],
) -> Result<MultiaffineMap, CompileError> {
    let mut out = MultiaffineMap::zero();
    for (exps, coef) in p.terms() {
        let mut vars: Vec<PlayerId> = Vec::new();
        for (i, &e) in exps.iter().enumerate() {
            let q = ladder[i].len();
            if u64::from(e) >= 1u64 << q {
                return Err(CompileError::LadderCapacity { var: i + 1, degree: e, q });
            }
            for (k, pair) in ladder[i].iter().enumerate() {
                if (e >> k) & 1 == 1 {
                    vars.push(pair.power);
                }
            }
        }
        out.add_term(&vars, coef.clone());
    }
    Ok(out)
}

/// Expands a selector tree into a multiaffine term list over the sign
/// players. Distinct leaves map to distinct players, so products stay
/// multiaffine; the term count is bounded by the product of the union
/// branch counts.
pub fn selector_map(sel: &Selector, sign: &[PlayerId]) -> Result<MultiaffineMap, CompileError> {
    Ok(match sel {
        Selector::Leaf { index } => MultiaffineMap::var(sign[*index]),
        Selector::Sum(children) => {
            let mut acc = MultiaffineMap::zero();
            for c in children {
                acc = acc.add(&selector_map(c, sign)?);
            }
            acc
        }
        Selector::Product(children) => {
            let mut acc = MultiaffineMap::constant(Rat::one());
            for c in children {
                acc = acc.mul_disjoint(&selector_map(c, sign)?)?;
            }
            acc
        }
    })
}

/// Validates the witness under `opts`, returning the override flag actually
/// used (true iff an UNDECIDED verdict was accepted).
fn gate_witness(cert: &Certificate, opts: &CompileOptions) -> Result<bool, CompileError> {
    let report = cert.validate_witness(opts.witness_refine_depth)?;
    match report.verdict {
        WitnessVerdict::Confirmed => Ok(false),
        WitnessVerdict::Rejected => Err(CompileError::WitnessRejected),
        WitnessVerdict::Undecided { depth } => {
            if opts.allow_undecided_witness {
                Ok(true)
            } else {
                Err(CompileError::WitnessUndecided { depth })
            }
        }
    }
}

/// Compiles an equilibrium-mode certificate with a rational witness.
pub fn compile_equilibrium(
    cert: &Certificate,
    opts: &CompileOptions,
) -> Result<(BinaryGame, CompilationIndex), CompileError> {
    if cert.mode != Mode::Equilibrium {
        return Err(CompileError::WrongMode { expected: "equilibrium" });
    }
    let witness = match &cert.witness {
        Witness::Rational(z) => z.clone(),
        Witness::Algebraic(_) => return Err(CompileError::AlgebraicWitnessNeedsIntegerMode),
    };
    let undecided_override = gate_witness(cert, opts)?;

    let n = cert.n();
    let degrees = cert.leaf_var_degrees();
    let q: Vec<usize> = degrees.iter().map(|&d| ladder_q(d)).collect();
    let leaf_polys = cert.formula.leaf_polys();
    let c_leaves = leaf_polys.len();

    // Fixed player order: X_1..X_n, ladders by (i, k) with power before
    // mirror, sign players in leaf order, detector last.
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
    let total = next + 1;

    let mut players: Vec<Option<Player>> = vec![None; total];
    for (i, &b) in basic.iter().enumerate() {
        let mut top = MultiaffineMap::zero();
        top.add_term(&[detector], witness[i].clone());
        top.add_term(&[ladder[i][0].power, detector], -Rat::one());
        players[b] = Some(Player { role: Role::Basic { i: i + 1 }, top, bottom: MultiaffineMap::zero() });
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

    let game = BinaryGame {
        players: players.into_iter().map(Option::unwrap).collect(),
        meta: GameMeta {
            certificate_digest: cert.digest(),
            mode: "equilibrium".into(),
            projection_players: basic.clone(),
            integer_mode: false,
            box_radius: None,
            witness_undecided_override: undecided_override,
        },
    };
    game.validate_structure()?;
    let index = CompilationIndex {
        cert: cert.clone(),
        basic,
        q,
        ladder,
        sign,
        leaf_polys,
        detector,
        selector,
        witness: Some(witness),
        payoff_players: None,
        box_radius: None,
        integer: None,
    };
    debug_assert_eq!(game.n_players(), index.expected_player_count());
    Ok((game, index))
}

/// Compiles a payoff-mode certificate: rescales the set onto the unit box,
/// compiles the equilibrium game for the rescaled set, then retargets each
/// `Y_i0` with the strategically equivalent payoff `-D + 2D * (.)`, whose
/// equilibrium value is exactly the original coordinate.
pub fn compile_payoff(
    cert: &Certificate,
    opts: &CompileOptions,
) -> Result<(BinaryGame, CompilationIndex), CompileError> {
    let d = match &cert.mode {
        Mode::Payoff { box_radius } => box_radius.clone(),
        Mode::Equilibrium => return Err(CompileError::WrongMode { expected: "payoff" }),
    };
    let unit = cert.to_unit_box()?;
    let (mut game, mut index) = compile_equilibrium(&unit, opts)?;
    let two_d = &d + &d;
    let mut payoff_players = Vec::with_capacity(index.basic.len());
    for i in 0..index.basic.len() {
        let y = index.ladder[i][0].mirror;
        let player = &mut game.players[y];
        player.role = Role::Payoff { i: i + 1 };
        let mut top = MultiaffineMap::constant(-d.clone());
        top.add_term(&[index.ladder[i][0].power], two_d.clone());
        let mut bottom = MultiaffineMap::constant(-d.clone());
        bottom.add_term(&[index.basic[i]], two_d.clone());
        player.top = top;
        player.bottom = bottom;
        payoff_players.push(y);
    }
    game.meta.mode = "payoff".into();
    game.meta.projection_players = payoff_players.clone();
    game.meta.box_radius = Some(d.clone());
    game.meta.certificate_digest = cert.digest();
    game.validate_structure()?;
    index.payoff_players = Some(payoff_players);
    index.box_radius = Some(d);
    Ok((game, index))
}

impl CompilationIndex {
    pub fn expected_player_count(&self) -> usize {
        let base = self.cert.n() + 2 * self.q.iter().sum::<usize>() + self.sign.len() + 1;
        match &self.integer {
            None => base,
            Some(ix) => base + ix.extra_player_count(),
        }
    }
}

/// The two-player pin pair forcing the first player's Top-probability to
/// equal `x` in every equilibrium, regardless of any other players.
pub fn pin_gadget(x: &Rat) -> BinaryGame {
    BinaryGame {
        players: vec![
            Player {
                role: Role::Basic { i: 1 },
                top: MultiaffineMap::constant(x.clone()),
                bottom: MultiaffineMap::var(1),
            },
            Player {
                role: Role::Basic { i: 2 },
                top: MultiaffineMap::var(0),
                bottom: MultiaffineMap::constant(x.clone()),
            },
        ],
        meta: GameMeta {
            certificate_digest: String::new(),
            mode: "gadget".into(),
            projection_players: vec![0],
            integer_mode: false,
            box_radius: None,
            witness_undecided_override: false,
        },
    }
}

/// Exact player count next to the two closed-form bounds. The bounds use
/// real-valued logs, so they are reported as directed 12-digit decimals;
/// the `exact_le` flags are decided by exact big-integer comparisons.
#[derive(Clone, Debug)]
pub struct PlayerCountReport {
    pub exact: usize,
    pub n: usize,
    pub leaves: usize,
    pub q: Vec<usize>,
    pub var_degrees: Vec<u32>,
    /// `1 + C + n(3 + 2*log2(max_i d_i))`; absent when the max degree is 0.
    pub headline: Option<BoundReportEntry>,
    /// `1 + C + 3n + 2*sum_i log2(d_i)`; absent when any degree is 0.
    pub refined: Option<BoundReportEntry>,
}

#[derive(Clone, Debug)]
pub struct BoundReportEntry {
    pub lo: String,
    pub hi: String,
    /// Exact big-integer verdict of `exact_count <= bound`.
    pub exact_le: bool,
}

pub fn player_count(cert: &Certificate) -> PlayerCountReport {
    let work = match &cert.mode {
        Mode::Payoff { .. } => cert.to_unit_box().expect("payoff certificate has a radius"),
        Mode::Equilibrium => cert.clone(),
    };
    let n = work.n();
    let degrees = work.leaf_var_degrees();
    let q: Vec<usize> = degrees.iter().map(|&d| ladder_q(d)).collect();
    let leaves = work.formula.leaf_count();
    let exact = n + 2 * q.iter().sum::<usize>() + leaves + 1;
    let sum_q = q.iter().sum::<usize>();
    let d_max = degrees.iter().copied().max().unwrap_or(0);
    let width = rat(1, 10_000_000_000_000_000);

    // exact <= headline  iff  sum q_i - n <= n*log2(d)  iff  2^(sum q - n) <= d^n.
    let headline = (d_max >= 1).then(|| {
        let fixed = Rat::from_integer((1 + leaves + 3 * n).into());
        let (llo, lhi) = log2_bounds(&Rat::from_integer(d_max.into()), &width);
        let scale = Rat::from_integer((2 * n).into());
        let lo = &fixed + &scale * llo;
        let hi = &fixed + &scale * lhi;
        let lhs = BigUint::from(1u32) << (sum_q - n);
        let rhs = BigUint::from(d_max).pow(n as u32);
        BoundReportEntry {
            lo: decimal_directed(&lo, 12, false),
            hi: decimal_directed(&hi, 12, true),
            exact_le: lhs <= rhs,
        }
    });
    let refined = degrees.iter().all(|&d| d >= 1).then(|| {
        let fixed = Rat::from_integer((1 + leaves + 3 * n).into());
        let mut lo = fixed.clone();
        let mut hi = fixed;
        for &d in &degrees {
            let (llo, lhi) = log2_bounds(&Rat::from_integer(d.into()), &width);
            lo += &llo + &llo;
            hi += &lhi + &lhi;
        }
        let lhs = BigUint::from(1u32) << (sum_q - n);
        let rhs: BigUint = degrees.iter().map(|&d| BigUint::from(d)).product();
        BoundReportEntry {
            lo: decimal_directed(&lo, 12, false),
            hi: decimal_directed(&hi, 12, true),
            exact_le: lhs <= rhs,
        }
    });
    PlayerCountReport { exact, n, leaves, q, var_degrees: degrees, headline, refined }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::MixedProfile;
    use crate::parse::parse_certificate;
    use crate::rational::rat_int;
    use num_traits::Zero;

    pub(crate) fn half_interval() -> Certificate {
        parse_certificate(
            "vars: x1\nmode: equilibrium\npoly P1: 2*x1 - 1\nformula: P1\nwitness: 0\n",
        )
        .unwrap()
    }

    #[test]
    fn ladder_q_examples() {
        assert_eq!(ladder_q(1), 1);
        assert_eq!(ladder_q(4), 3);
        assert_eq!(ladder_q(0), 1);
        assert_eq!(ladder_q(3), 2);
        assert_eq!(ladder_q(7), 3);
        assert_eq!(ladder_q(8), 4);
    }

    #[test]
    fn half_interval_compiles_to_five_players() {
        let cert = half_interval();
        let (game, index) = compile_equilibrium(&cert, &CompileOptions::default()).unwrap();
        assert_eq!(game.n_players(), 5);
        assert_eq!(index.q, vec![1]);
        // U's Top is the single sign variable.
        let u = &game.players[index.detector];
        assert_eq!(u.top, MultiaffineMap::var(index.sign[0]));
        // X_1's Top is (0 - x_10)*u = -x_10*u.
        let x1 = &game.players[0];
        let mut expected = MultiaffineMap::zero();
        expected.add_term(&[index.ladder[0][0].power, index.detector], rat_int(-1));
        assert_eq!(x1.top, expected);
        assert!(x1.bottom.is_zero());
    }

    #[test]
    fn ladder_payoffs_match_tables() {
        // Degree-7 polynomial gives a 3-rung ladder.
        let cert = parse_certificate(
            "vars: x1\nmode: equilibrium\npoly P1: x1^7 - 1\nformula: P1\nwitness: 0\n",
        )
        .unwrap();
        let (game, index) = compile_equilibrium(&cert, &CompileOptions::default()).unwrap();
        assert_eq!(index.q, vec![3]);
        // X_12: Top = x_1 * x_10 * x_11, Bottom = y_12.
        let x12 = &game.players[index.ladder[0][2].power];
        assert_eq!(
            x12.top,
            MultiaffineMap::monomial(
                &[0, index.ladder[0][0].power, index.ladder[0][1].power],
                Rat::one()
            )
        );
        assert_eq!(x12.bottom, MultiaffineMap::var(index.ladder[0][2].mirror));
        // Y_12 inverts the pair.
        let y12 = &game.players[index.ladder[0][2].mirror];
        assert_eq!(y12.top, MultiaffineMap::var(index.ladder[0][2].power));
        assert_eq!(y12.bottom, x12.top);
    }

    #[test]
    fn lift_examples() {
        // x^3 with q = 2 becomes the product of rungs 0 and 1.
        let ladder = vec![vec![
            LadderPair { power: 10, mirror: 11 },
            LadderPair { power: 12, mirror: 13 },
        ]];
        let p = Polynomial::from_terms(1, [(vec![3], Rat::one())]);
        let lifted = multiaffine_lift(&p, &ladder).unwrap();
        assert_eq!(lifted, MultiaffineMap::monomial(&[10, 12], Rat::one()));
        // 2x - 1.
        let p = Polynomial::from_terms(1, [(vec![1], rat_int(2)), (vec![0], rat_int(-1))]);
        let lifted = multiaffine_lift(&p, &ladder).unwrap();
        let mut expected = MultiaffineMap::constant(rat_int(-1));
        expected.add_term(&[10], rat_int(2));
        assert_eq!(lifted, expected);
        // Capacity guard.
        let p = Polynomial::from_terms(1, [(vec![4], Rat::one())]);
        assert!(matches!(
            multiaffine_lift(&p, &ladder),
            Err(CompileError::LadderCapacity { var: 1, degree: 4, q: 2 })
        ));
    }

    #[test]
    fn lift_evaluates_like_the_polynomial() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let n_vars = rng.gen_range(1..=2);
            let mut terms = Vec::new();
            for _ in 0..rng.gen_range(1..=5) {
                let exps: Vec<u32> = (0..n_vars).map(|_| rng.gen_range(0..=7)).collect();
                let num = rng.gen_range(-9i64..=9);
                let den = rng.gen_range(1i64..=9);
                terms.push((exps, rat(num, den)));
            }
            let p = Polynomial::from_terms(n_vars, terms);
            let q: Vec<usize> = (0..n_vars).map(|i| ladder_q(p.var_degree(i))).collect();
            let mut next = n_vars;
            let mut ladder = Vec::new();
            for qi in &q {
                let mut rungs = Vec::new();
                for _ in 0..*qi {
                    rungs.push(LadderPair { power: next, mirror: next + 1 });
                    next += 2;
                }
                ladder.push(rungs);
            }
            let lifted = multiaffine_lift(&p, &ladder).unwrap();
            let x: Vec<Rat> = (0..n_vars)
                .map(|_| rat(rng.gen_range(0i64..=8), 8))
                .collect();
            let mut probs = vec![Rat::zero(); next];
            for i in 0..n_vars {
                probs[i] = x[i].clone();
                let mut pow = x[i].clone();
                for pair in &ladder[i] {
                    probs[pair.power] = pow.clone();
                    probs[pair.mirror] = pow.clone();
                    pow = &pow * &pow;
                }
            }
            let profile = MixedProfile::new(probs);
            assert_eq!(lifted.eval(&profile).unwrap(), p.eval(&x).unwrap());
        }
    }

    #[test]
    fn player_count_examples() {
        // d = 1: exact 5 and headline bound exactly 5.
        let report = player_count(&half_interval());
        assert_eq!(report.exact, 5);
        let headline = report.headline.unwrap();
        assert!(headline.exact_le);
        assert_eq!(headline.lo, "5.000000000000");
        assert_eq!(headline.hi, "5.000000000000");
        // n = 2, d = 4 per variable, 2 leaves: exact 17, bound 1+2+2(3+4)=17.
        let cert = parse_certificate(
            "vars: x1 x2\nmode: equilibrium\npoly P1: x1^4 + x2^4 - 1\npoly P2: x1 + x2 - 1\n\
             formula: AND(P1,P2)\nwitness: 0, 0\n",
        )
        .unwrap();
        let report = player_count(&cert);
        assert_eq!(report.exact, 2 + 2 * (3 + 3) + 2 + 1);
        let headline = report.headline.unwrap();
        assert_eq!(headline.lo, "17.000000000000");
        assert!(headline.exact_le);
        // Per-variable degrees 1 and 4: exact = 2 + 2*(1+3) + C + 1.
        let cert = parse_certificate(
            "vars: x1 x2\nmode: equilibrium\npoly P1: x1 + x2^4 - 1\nformula: P1\nwitness: 0, 0\n",
        )
        .unwrap();
        let report = player_count(&cert);
        assert_eq!(report.exact, 2 + 2 * (1 + 3) + 1 + 1);
        assert!(report.refined.unwrap().exact_le);
    }

    #[test]
    fn undecided_witness_needs_override() {
        // Witness on the boundary of a leaf whose sign is algebraically zero
        // but where the defining polynomial does not divide the leaf:
        // P = x - 1/2 + (2x^2 - 1): at sqrt(1/2) the value is sqrt(1/2) - 1/2 > 0,
        // decidable; instead use a leaf the intervals cannot decide: the leaf
        // equal to the minimal polynomial times a unit is decidable, so take
        // a genuinely undecidable-at-depth-0 case by capping refinement.
        let cert = parse_certificate(
            "vars: x1\nmode: equilibrium\npoly P1: 10*x1 - 7\nformula: P1\n\
             witness_alg 1: R=[-1,0,2] interval=[1/2,1]\n",
        )
        .unwrap();
        // 10*sqrt(1/2) - 7 > 0: the witness is genuinely outside.
        let opts = CompileOptions { witness_refine_depth: 0, ..Default::default() };
        match compile_equilibrium(&cert, &opts) {
            Err(CompileError::AlgebraicWitnessNeedsIntegerMode) => {}
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn rejected_witness_blocks_compilation() {
        let cert = parse_certificate(
            "vars: x1\nmode: equilibrium\npoly P1: 2*x1 - 1\nformula: P1\nwitness: 1\n",
        )
        .unwrap();
        assert!(matches!(
            compile_equilibrium(&cert, &CompileOptions::default()),
            Err(CompileError::WitnessRejected)
        ));
    }

    #[test]
    fn payoff_mode_retargets_payoff_players() {
        let cert = parse_certificate(
            "vars: x1\nmode: payoff D=1/2\npoly P1: x1\nformula: P1\nwitness: -1/2\n",
        )
        .unwrap();
        let (game, index) = compile_payoff(&cert, &CompileOptions::default()).unwrap();
        let y = index.payoff_players.as_ref().unwrap()[0];
        let player = &game.players[y];
        assert_eq!(player.role, Role::Payoff { i: 1 });
        // Top = -1/2 + x_10.
        let mut top = MultiaffineMap::constant(rat(-1, 2));
        top.add_term(&[index.ladder[0][0].power], rat_int(1));
        assert_eq!(player.top, top);
        assert_eq!(game.meta.mode, "payoff");
    }

    #[test]
    fn compilation_is_deterministic() {
        let cert = half_interval();
        let (a, _) = compile_equilibrium(&cert, &CompileOptions::default()).unwrap();
        let (b, _) = compile_equilibrium(&cert, &CompileOptions::default()).unwrap();
        assert_eq!(a.players.len(), b.players.len());
        for (pa, pb) in a.players.iter().zip(&b.players) {
            assert_eq!(pa.top, pb.top);
            assert_eq!(pa.bottom, pb.bottom);
            assert_eq!(pa.role, pb.role);
        }
    }
}

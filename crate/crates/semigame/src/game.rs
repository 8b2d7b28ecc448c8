//! The binary-game intermediate representation.
//!
//! Every player has exactly two pure strategies, Top and Bottom. Payoffs are
//! stored as multiaffine maps over the opponents' Top-probabilities and are
//! never expanded into tensors except on explicit export: compiled games
//! routinely have 30+ players, where a full tensor is out of reach, while
//! each payoff map touches only a handful of variables.

use crate::rational::{rat_to_string, Rat};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// Dense player index within one game.
pub type PlayerId = usize;

/// Structural role of a player in a compiled game. The indices mirror the
/// construction: `i` ranges over the certificate's variables (1-based),
/// `k` over ladder rungs (0-based), `c` over formula leaves (1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Role {
    /// `X_i`: one of the first `n` players; its Top-probability is the
    /// projected coordinate.
    Basic { i: usize },
    /// `X_ik`: ladder player forced to `x_i^(2^k)` in equilibrium.
    Power { i: usize, k: usize },
    /// `Y_ik`: mirror of `X_ik` making the pin pair.
    Mirror { i: usize, k: usize },
    /// `S_c`: sign player of formula leaf `c`, forced by the sign of `P_c`.
    Sign { c: usize },
    /// `U`: detector, forced to Top exactly when the point is outside the set.
    Detector,
    /// `Y_i0` repurposed in payoff mode; its equilibrium payoff is the
    /// projected coordinate.
    Payoff { i: usize },
    /// `V_i` (integer mode): its equilibrium value locates the witness
    /// coordinate as the unique root of a rescaled integer polynomial.
    Root { i: usize },
    /// `V_ik` (integer mode): ladder player over `v_i`.
    RootPower { i: usize, k: usize },
    /// `W_ik` (integer mode): mirror of `V_ik`.
    RootMirror { i: usize, k: usize },
    /// `Y_i` (integer mode): mirror of `X_i` in the anchor pin pair.
    Anchor { i: usize },
}

impl Role {
    pub fn json_name(&self) -> &'static str {
        match self {
            Role::Basic { .. } => "basic",
            Role::Power { .. } => "power",
            Role::Mirror { .. } => "mirror",
            Role::Sign { .. } => "sign",
            Role::Detector => "detector",
            Role::Payoff { .. } => "payoff",
            Role::Root { .. } => "root",
            Role::RootPower { .. } => "root_power",
            Role::RootMirror { .. } => "root_mirror",
            Role::Anchor { .. } => "anchor",
        }
    }

    pub fn indices(&self) -> Vec<usize> {
        match self {
            Role::Basic { i } | Role::Payoff { i } | Role::Root { i } | Role::Anchor { i } => {
                vec![*i]
            }
            Role::Power { i, k }
            | Role::Mirror { i, k }
            | Role::RootPower { i, k }
            | Role::RootMirror { i, k } => vec![*i, *k],
            Role::Sign { c } => vec![*c],
            Role::Detector => vec![],
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::Basic { i } => write!(f, "X{i}"),
            Role::Power { i, k } => write!(f, "X{i}_{k}"),
            Role::Mirror { i, k } => write!(f, "Y{i}_{k}"),
            Role::Sign { c } => write!(f, "S{c}"),
            Role::Detector => write!(f, "U"),
            Role::Payoff { i } => write!(f, "Y{i}_0"),
            Role::Root { i } => write!(f, "V{i}"),
            Role::RootPower { i, k } => write!(f, "V{i}_{k}"),
            Role::RootMirror { i, k } => write!(f, "W{i}_{k}"),
            Role::Anchor { i } => write!(f, "Y{i}"),
        }
    }
}

/// A polynomial of degree at most one in each variable: a finite sum of
/// `coef * prod(vars)` terms over distinct player variables. Keys are
/// strictly increasing index vectors, so iteration (and serialization)
/// order is deterministic.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MultiaffineMap {
    terms: BTreeMap<Vec<PlayerId>, Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GameError {
    UnassignedVariable { var: PlayerId },
    UnknownPlayer { player: PlayerId },
    OwnVariable { player: PlayerId },
    OverlappingVariables,
}

impl fmt::Display for GameError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameError::UnassignedVariable { var } => {
                write!(f, "profile does not assign player variable {var}")
            }
            GameError::UnknownPlayer { player } => write!(f, "no player with index {player}"),
            GameError::OwnVariable { player } => {
                write!(f, "payoff map of player {player} mentions the player itself")
            }
            GameError::OverlappingVariables => {
                write!(f, "product of maps with a shared variable is not multiaffine")
            }
        }
    }
}

impl std::error::Error for GameError {}

impl MultiaffineMap {
    pub fn zero() -> MultiaffineMap {
        MultiaffineMap::default()
    }

    pub fn constant(c: Rat) -> MultiaffineMap {
        let mut m = MultiaffineMap::zero();
        m.add_term(&[], c);
        m
    }

    pub fn var(v: PlayerId) -> MultiaffineMap {
        let mut m = MultiaffineMap::zero();
        m.add_term(&[v], Rat::from_integer(1.into()));
        m
    }

    /// Product of distinct variables with a coefficient.
    pub fn monomial(vars: &[PlayerId], coef: Rat) -> MultiaffineMap {
        let mut m = MultiaffineMap::zero();
        m.add_term(vars, coef);
        m
    }

    pub fn add_term(&mut self, vars: &[PlayerId], coef: Rat) {
        if coef.is_zero() {
            return;
        }
        let mut key = vars.to_vec();
        key.sort_unstable();
        key.dedup();
        assert_eq!(key.len(), vars.len(), "term variables must be distinct");
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MultiaffineMap) -> MultiaffineMap {
        let mut out = self.clone();
        for (vars, c) in &other.terms {
            out.add_term(vars, c.clone());
        }
        out
    }

    pub fn scale(&self, k: &Rat) -> MultiaffineMap {
        if k.is_zero() {
            return MultiaffineMap::zero();
        }
        MultiaffineMap {
            terms: self.terms.iter().map(|(v, c)| (v.clone(), c * k)).collect(),
        }
    }

    /// Product, defined only when the two maps mention disjoint variables
    /// (otherwise the result would leave the multiaffine class).
    pub fn mul_disjoint(&self, other: &MultiaffineMap) -> Result<MultiaffineMap, GameError> {
        let mut out = MultiaffineMap::zero();
        for (va, ca) in &self.terms {
            for (vb, cb) in &other.terms {
                if va.iter().any(|v| vb.contains(v)) {
                    return Err(GameError::OverlappingVariables);
                }
                let mut vars = va.clone();
                vars.extend_from_slice(vb);
                out.add_term(&vars, ca * cb);
            }
        }
        Ok(out)
    }

    /// Multiplies every term by one extra variable (used to gate a payoff on
    /// another player playing Top).
    pub fn gate_by(&self, v: PlayerId) -> Result<MultiaffineMap, GameError> {
        self.mul_disjoint(&MultiaffineMap::var(v))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<PlayerId>, &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn variables(&self) -> Vec<PlayerId> {
        let mut vars: Vec<PlayerId> = self.terms.keys().flatten().copied().collect();
        vars.sort_unstable();
        vars.dedup();
        vars
    }

    pub fn mentions(&self, v: PlayerId) -> bool {
        self.terms.keys().any(|vars| vars.contains(&v))
    }

    /// Exact value under a complete assignment of probabilities.
    pub fn eval(&self, profile: &MixedProfile) -> Result<Rat, GameError> {
        let mut acc = Rat::zero();
        for (vars, c) in &self.terms {
            let mut t = c.clone();
            for &v in vars {
                let p = profile
                    .probs
                    .get(v)
                    .ok_or(GameError::UnassignedVariable { var: v })?;
                t *= p;
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Value at a 0/1 vertex given by a bitmask accessor.
    pub fn eval_vertex(&self, top: impl Fn(PlayerId) -> bool) -> Rat {
        let mut acc = Rat::zero();
        for (vars, c) in &self.terms {
            if vars.iter().all(|&v| top(v)) {
                acc += c;
            }
        }
        acc
    }

    pub fn to_text(&self, game: &BinaryGame) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(vars, c)| {
                if vars.is_empty() {
                    rat_to_string(c)
                } else {
                    let names: Vec<String> =
                        vars.iter().map(|&v| game.players[v].role.to_string().to_lowercase()).collect();
                    format!("{}*{}", rat_to_string(c), names.join("*"))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

#[derive(Clone, Debug)]
pub struct Player {
    pub role: Role,
    pub top: MultiaffineMap,
    pub bottom: MultiaffineMap,
}

/// Game-level metadata carried alongside the players.
#[derive(Clone, Debug, Default)]
pub struct GameMeta {
    pub certificate_digest: String,
    pub mode: String,
    /// Indices of the `n` players whose strategies (or payoffs, in payoff
    /// mode) realize the projection.
    pub projection_players: Vec<PlayerId>,
    pub integer_mode: bool,
    /// In payoff mode, the box radius D of the original set.
    pub box_radius: Option<Rat>,
    /// Set when an UNDECIDED witness was accepted by explicit override.
    pub witness_undecided_override: bool,
}

#[derive(Clone, Debug)]
pub struct BinaryGame {
    pub players: Vec<Player>,
    pub meta: GameMeta,
}

/// One exact Top-probability per player.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedProfile {
    pub probs: Vec<Rat>,
}

impl MixedProfile {
    pub fn new(probs: Vec<Rat>) -> MixedProfile {
        debug_assert!(probs
            .iter()
            .all(|p| p >= &Rat::zero() && p <= &Rat::from_integer(1.into())));
        MixedProfile { probs }
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

/// Outcome of an equilibrium check: either every player is best-responding
/// within slack `eps`, or the first violation is reported.
#[derive(Clone, Debug)]
pub struct EquilibriumVerdict {
    pub pass: bool,
    /// Top-minus-Bottom payoff gap for every player.
    pub gaps: Vec<Rat>,
    pub first_violation: Option<Violation>,
}

#[derive(Clone, Debug)]
pub struct Violation {
    pub player: PlayerId,
    pub gap: Rat,
    pub prob: Rat,
}

impl BinaryGame {
    pub fn n_players(&self) -> usize {
        self.players.len()
    }

    /// Top-minus-Bottom payoff difference of `p` against the opponents in
    /// `profile` (the entry for `p` itself is ignored by multiaffinity and
    /// the own-variable exclusion).
    pub fn payoff_gap(&self, p: PlayerId, profile: &MixedProfile) -> Result<Rat, GameError> {
        let player = self.players.get(p).ok_or(GameError::UnknownPlayer { player: p })?;
        Ok(player.top.eval(profile)? - player.bottom.eval(profile)?)
    }

    /// Best-response check with one-sided slack: PASS iff for every player,
    /// `prob > 0` implies `gap >= -eps` and `prob < 1` implies `gap <= eps`.
    pub fn check_equilibrium(
        &self,
        profile: &MixedProfile,
        eps: &Rat,
    ) -> Result<EquilibriumVerdict, GameError> {
        let one = Rat::from_integer(1.into());
        let mut gaps = Vec::with_capacity(self.players.len());
        let mut first_violation = None;
        for p in 0..self.players.len() {
            let gap = self.payoff_gap(p, profile)?;
            let prob = &profile.probs[p];
            if first_violation.is_none() {
                let plays_top = prob > &Rat::zero();
                let plays_bottom = prob < &one;
                if (plays_top && gap < -eps.clone()) || (plays_bottom && gap > eps.clone()) {
                    first_violation = Some(Violation {
                        player: p,
                        gap: gap.clone(),
                        prob: prob.clone(),
                    });
                }
            }
            gaps.push(gap);
        }
        Ok(EquilibriumVerdict { pass: first_violation.is_none(), gaps, first_violation })
    }

    /// Structural invariant: no payoff map mentions its own player or an
    /// index outside the game.
    pub fn validate_structure(&self) -> Result<(), GameError> {
        let n = self.players.len();
        for (idx, player) in self.players.iter().enumerate() {
            for map in [&player.top, &player.bottom] {
                for v in map.variables() {
                    if v == idx {
                        return Err(GameError::OwnVariable { player: idx });
                    }
                    if v >= n {
                        return Err(GameError::UnknownPlayer { player: v });
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    /// Two-player pin pair with target 1/2, straight from the payoff tables.
    fn gadget() -> BinaryGame {
        let x = rat(1, 2);
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
                    bottom: MultiaffineMap::constant(x),
                },
            ],
            meta: GameMeta::default(),
        }
    }

    #[test]
    fn eval_map_examples() {
        let profile = MixedProfile::new(vec![rat(1, 3), rat(1, 2), rat(1, 2)]);
        assert_eq!(MultiaffineMap::var(0).eval(&profile).unwrap(), rat(1, 3));
        // 2ab - 1 at a = b = 1/2.
        let mut m = MultiaffineMap::zero();
        m.add_term(&[1, 2], rat_int(2));
        m.add_term(&[], rat_int(-1));
        assert_eq!(m.eval(&profile).unwrap(), rat(-1, 2));
        assert_eq!(MultiaffineMap::zero().eval(&profile).unwrap(), rat_int(0));
    }

    #[test]
    fn eval_map_missing_variable() {
        let profile = MixedProfile::new(vec![rat(1, 2)]);
        let m = MultiaffineMap::var(3);
        assert_eq!(
            m.eval(&profile),
            Err(GameError::UnassignedVariable { var: 3 })
        );
    }

    #[test]
    fn gadget_gaps_match_tables() {
        let g = gadget();
        // x = 1/2, x_beta = 1/2: gap of the pinned player is 0.
        let sigma = MixedProfile::new(vec![rat(1, 2), rat(1, 2)]);
        assert_eq!(g.payoff_gap(0, &sigma).unwrap(), rat_int(0));
        // x_beta = 0: gap = 1/2 - 0 = 1/2.
        let sigma = MixedProfile::new(vec![rat(1, 2), rat_int(0)]);
        assert_eq!(g.payoff_gap(0, &sigma).unwrap(), rat(1, 2));
    }

    #[test]
    fn equilibrium_check_on_gadget() {
        let g = gadget();
        let eq = MixedProfile::new(vec![rat(1, 2), rat(1, 2)]);
        assert!(g.check_equilibrium(&eq, &rat_int(0)).unwrap().pass);
        // x_alpha = 3/4 plays Top with positive probability but the gap is
        // 1/2 - 1 < 0: not an equilibrium.
        let bad = MixedProfile::new(vec![rat(3, 4), rat_int(1)]);
        let verdict = g.check_equilibrium(&bad, &rat_int(0)).unwrap();
        assert!(!verdict.pass);
        let v = verdict.first_violation.unwrap();
        assert_eq!(v.player, 0);
        assert_eq!(v.gap, rat(-1, 2));
        // A huge slack makes any profile pass.
        assert!(g.check_equilibrium(&bad, &rat_int(2)).unwrap().pass);
    }

    #[test]
    fn monotone_in_eps() {
        let g = gadget();
        let profile = MixedProfile::new(vec![rat(1, 4), rat(1, 4)]);
        let mut passed = false;
        for k in 0..6 {
            let eps = rat(k, 4);
            let pass = g.check_equilibrium(&profile, &eps).unwrap().pass;
            // once passing, must keep passing as eps grows
            assert!(!passed || pass);
            passed = pass;
        }
        assert!(passed);
    }

    #[test]
    fn structure_validation_catches_own_variable() {
        let mut g = gadget();
        g.players[0].top = MultiaffineMap::var(0);
        assert_eq!(
            g.validate_structure(),
            Err(GameError::OwnVariable { player: 0 })
        );
    }

    #[test]
    fn disjoint_product_guard() {
        let a = MultiaffineMap::var(1);
        let b = MultiaffineMap::var(1);
        assert_eq!(a.mul_disjoint(&b), Err(GameError::OverlappingVariables));
        let c = MultiaffineMap::var(2);
        let prod = a.mul_disjoint(&c).unwrap();
        assert_eq!(prod, MultiaffineMap::monomial(&[1, 2], rat_int(1)));
    }
}

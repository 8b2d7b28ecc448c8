//! Serialization of games, traces and reports.
//!
//! The game JSON schema is the interchange format: exact rationals as
//! `"p/q"` strings, term lists sorted by variable sets, struct fields in a
//! fixed order, so identical games serialize to identical bytes. The tensor
//! and NFG exports materialize all `2^N` pure profiles and exist for
//! external cross-checks on tiny gadgets only.

use crate::algebraic::Coordinate;
use crate::compile::CompilationIndex;
use crate::game::{BinaryGame, GameMeta, MultiaffineMap, Player, PlayerId, Role};
use crate::rational::{rat_from_str, rat_to_string};
use crate::verify::{GridReport, RefutationTrace, RefuteOutcome};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::fmt;

#[derive(Clone, Debug)]
pub enum ExportError {
    TooManyPlayers { n: usize, limit: usize },
    BadRole { role: String },
    BadRational { text: String },
    Json(String),
}

impl fmt::Display for ExportError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExportError::TooManyPlayers { n, limit } => {
                write!(f, "tensor formats materialize 2^N profiles; N = {n} exceeds {limit}")
            }
            ExportError::BadRole { role } => write!(f, "unknown role `{role}`"),
            ExportError::BadRational { text } => write!(f, "invalid rational `{text}`"),
            ExportError::Json(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ExportError {}

pub const TENSOR_PLAYER_LIMIT: usize = 16;

#[derive(Serialize, Deserialize)]
pub struct GameJson {
    pub n_projection: usize,
    pub mode: String,
    pub certificate_digest: String,
    pub projection_players: Vec<usize>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub integer_mode: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub box_radius: Option<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub witness_undecided_override: bool,
    /// Integer mode: the rescaled witness polynomials, echoed for audit.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotient_polys: Option<Vec<Vec<String>>>,
    pub players: Vec<PlayerJson>,
}

#[derive(Serialize, Deserialize)]
pub struct PlayerJson {
    pub index: usize,
    pub role: String,
    pub role_indices: Vec<usize>,
    pub top: Vec<TermJson>,
    pub bottom: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
pub struct TermJson {
    pub vars: Vec<usize>,
    pub coef: String,
}

fn map_to_terms(m: &MultiaffineMap) -> Vec<TermJson> {
    m.terms()
        .map(|(vars, c)| TermJson { vars: vars.clone(), coef: rat_to_string(c) })
        .collect()
}

fn terms_to_map(terms: &[TermJson]) -> Result<MultiaffineMap, ExportError> {
    let mut m = MultiaffineMap::zero();
    for t in terms {
        let coef = rat_from_str(&t.coef)
            .map_err(|_| ExportError::BadRational { text: t.coef.clone() })?;
        m.add_term(&t.vars, coef);
    }
    Ok(m)
}

pub fn game_to_json_value(game: &BinaryGame, index: Option<&CompilationIndex>) -> GameJson {
    let quotient_polys = index.and_then(|ix| ix.integer.as_ref()).map(|ix| {
        ix.data
            .q_polys
            .iter()
            .map(|q| q.coeffs().iter().map(|c| c.numer().to_string()).collect())
            .collect()
    });
    GameJson {
        n_projection: game.meta.projection_players.len(),
        mode: game.meta.mode.clone(),
        certificate_digest: game.meta.certificate_digest.clone(),
        projection_players: game.meta.projection_players.clone(),
        integer_mode: game.meta.integer_mode,
        box_radius: game.meta.box_radius.as_ref().map(rat_to_string),
        witness_undecided_override: game.meta.witness_undecided_override,
        quotient_polys,
        players: game
            .players
            .iter()
            .enumerate()
            .map(|(index, p)| PlayerJson {
                index,
                role: p.role.json_name().to_string(),
                role_indices: p.role.indices(),
                top: map_to_terms(&p.top),
                bottom: map_to_terms(&p.bottom),
            })
            .collect(),
    }
}

/// Byte-stable JSON bytes of a game.
pub fn game_to_json(game: &BinaryGame, index: Option<&CompilationIndex>) -> String {
    let mut s = serde_json::to_string_pretty(&game_to_json_value(game, index))
        .expect("game serialization cannot fail");
    s.push('\n');
    s
}

fn role_from_json(role: &str, idx: &[usize]) -> Result<Role, ExportError> {
    let bad = || ExportError::BadRole { role: role.to_string() };
    let one = |f: fn(usize) -> Role| idx.first().copied().map(f).ok_or_else(bad);
    let two = |f: fn(usize, usize) -> Role| match idx {
        [i, k] => Ok(f(*i, *k)),
        _ => Err(bad()),
    };
    match role {
        "basic" => one(|i| Role::Basic { i }),
        "payoff" => one(|i| Role::Payoff { i }),
        "root" => one(|i| Role::Root { i }),
        "anchor" => one(|i| Role::Anchor { i }),
        "sign" => one(|c| Role::Sign { c }),
        "power" => two(|i, k| Role::Power { i, k }),
        "mirror" => two(|i, k| Role::Mirror { i, k }),
        "root_power" => two(|i, k| Role::RootPower { i, k }),
        "root_mirror" => two(|i, k| Role::RootMirror { i, k }),
        "detector" => Ok(Role::Detector),
        _ => Err(bad()),
    }
}

/// Parses a game back from its JSON form (round-trips with
/// [`game_to_json`]).
pub fn game_from_json(text: &str) -> Result<BinaryGame, ExportError> {
    let parsed: GameJson = serde_json::from_str(text).map_err(|e| ExportError::Json(e.to_string()))?;
    let mut players = Vec::with_capacity(parsed.players.len());
    for p in &parsed.players {
        players.push(Player {
            role: role_from_json(&p.role, &p.role_indices)?,
            top: terms_to_map(&p.top)?,
            bottom: terms_to_map(&p.bottom)?,
        });
    }
    let box_radius = match &parsed.box_radius {
        None => None,
        Some(s) => {
            Some(rat_from_str(s).map_err(|_| ExportError::BadRational { text: s.clone() })?)
        }
    };
    Ok(BinaryGame {
        players,
        meta: GameMeta {
            certificate_digest: parsed.certificate_digest,
            mode: parsed.mode,
            projection_players: parsed.projection_players,
            integer_mode: parsed.integer_mode,
            box_radius,
            witness_undecided_override: parsed.witness_undecided_override,
        },
    })
}

/// Pure-payoff tensor: one `2^N` array per player, exact rationals.
/// Profile `m` assigns Top to player `p` iff bit `p` of `m` is 1.
#[derive(Serialize, Deserialize)]
pub struct TensorJson {
    pub n_players: usize,
    pub convention: String,
    pub payoffs: Vec<Vec<String>>,
}

pub fn game_to_tensor(game: &BinaryGame) -> Result<TensorJson, ExportError> {
    let n = game.n_players();
    if n > TENSOR_PLAYER_LIMIT {
        return Err(ExportError::TooManyPlayers { n, limit: TENSOR_PLAYER_LIMIT });
    }
    let mut payoffs = Vec::with_capacity(n);
    for (p, player) in game.players.iter().enumerate() {
        let mut row = Vec::with_capacity(1 << n);
        for m in 0u64..(1u64 << n) {
            let top = |v: PlayerId| (m >> v) & 1 == 1;
            let map = if top(p) { &player.top } else { &player.bottom };
            row.push(rat_to_string(&map.eval_vertex(top)));
        }
        payoffs.push(row);
    }
    Ok(TensorJson {
        n_players: n,
        convention: "profile m assigns Top to player p iff bit p of m is 1; entry order m = 0..2^N-1".into(),
        payoffs,
    })
}

pub fn tensor_to_string(t: &TensorJson) -> String {
    let mut s = serde_json::to_string_pretty(t).expect("tensor serialization cannot fail");
    s.push('\n');
    s
}

/// Normal-form text export. Strategy 1 is Top. Payoffs are floats (the
/// format has no rational literals); the exact values follow the payoff
/// block as `#`-prefixed trailer lines, which NFG readers that stop after
/// the expected payoff count ignore.
pub fn game_to_nfg(game: &BinaryGame) -> Result<String, ExportError> {
    let n = game.n_players();
    if n > TENSOR_PLAYER_LIMIT {
        return Err(ExportError::TooManyPlayers { n, limit: TENSOR_PLAYER_LIMIT });
    }
    let digest8: String = game.meta.certificate_digest.chars().take(8).collect();
    let mut out = String::new();
    out.push_str(&format!("NFG 1 R \"binary game {digest8}\" {{ "));
    for p in &game.players {
        out.push_str(&format!("\"{}\" ", p.role));
    }
    out.push_str("} { ");
    for _ in 0..n {
        out.push_str("2 ");
    }
    out.push_str("}\n\n");
    // Contingencies with player 1's strategy varying fastest; strategy
    // index 0 is Top.
    let mut exact = Vec::with_capacity((1usize << n) * n);
    for c in 0u64..(1u64 << n) {
        let top = |v: PlayerId| (c >> v) & 1 == 0;
        for (p, player) in game.players.iter().enumerate() {
            let map = if top(p) { &player.top } else { &player.bottom };
            let v = map.eval_vertex(top);
            let f = v.to_f64().unwrap_or(f64::NAN);
            out.push_str(&format!("{f} "));
            exact.push(rat_to_string(&v));
        }
        out.push('\n');
    }
    out.push_str("\n# exact payoffs in the same order:\n# ");
    out.push_str(&exact.join(" "));
    out.push('\n');
    Ok(out)
}

// ---------------------------------------------------------------------------
// Report serialization
// ---------------------------------------------------------------------------

pub fn coordinate_json(c: &Coordinate) -> serde_json::Value {
    match c {
        Coordinate::Rational(r) => json!({ "rational": rat_to_string(r) }),
        Coordinate::Algebraic(a) => json!({
            "poly": a.poly.coeffs().iter().map(rat_to_string).collect::<Vec<_>>(),
            "interval": [rat_to_string(&a.interval.lo), rat_to_string(&a.interval.hi)],
        }),
    }
}

pub fn trace_json(trace: &RefutationTrace, game: &BinaryGame) -> serde_json::Value {
    let steps: Vec<serde_json::Value> = trace
        .steps
        .iter()
        .map(|s| {
            json!({
                "player": s.player,
                "name": game.players[s.player].role.to_string(),
                "rule": s.rule.json_name(),
                "value": coordinate_json(&s.value),
                "premises": s.premises,
            })
        })
        .collect();
    json!({
        "steps": steps,
        "contradiction": {
            "player": trace.contradiction.player,
            "name": game.players[trace.contradiction.player].role.to_string(),
            "forced_step": trace.contradiction.forced_step,
            "fixed": rat_to_string(&trace.contradiction.fixed),
        },
    })
}

pub fn refute_outcome_json(outcome: &RefuteOutcome, game: &BinaryGame) -> serde_json::Value {
    match outcome {
        RefuteOutcome::Refuted(trace) => json!({
            "refuted": true,
            "trace": trace_json(trace, game),
        }),
        RefuteOutcome::NotRefuted { steps } => json!({
            "refuted": false,
            "forced_steps": steps.len(),
        }),
    }
}

pub fn grid_report_json(report: &GridReport, game: &BinaryGame) -> serde_json::Value {
    let points: Vec<serde_json::Value> = report
        .points
        .iter()
        .map(|p| {
            let mut v = json!({
                "x": p.x.iter().map(rat_to_string).collect::<Vec<_>>(),
                "member": p.member,
                "canonical_pass": p.canonical_pass,
                "refuted": p.refuted,
            });
            if let Some(payoffs) = &p.payoffs {
                v["payoffs"] = json!(payoffs.iter().map(rat_to_string).collect::<Vec<_>>());
            }
            if let Some(trace) = &p.trace {
                v["trace"] = trace_json(trace, game);
            }
            v
        })
        .collect();
    json!({
        "resolution": report.resolution,
        "points": points,
        "disagreements": report
            .disagreements
            .iter()
            .map(|(idx, kind)| json!({ "point": idx, "kind": kind.json_name() }))
            .collect::<Vec<_>>(),
        "pass": report.pass(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compile::{compile_equilibrium, pin_gadget, CompileOptions};
    use crate::game::MixedProfile;
    use crate::parse::parse_certificate;
    use crate::rational::{rat, Rat};
    use num_traits::{One, Zero};

    #[test]
    fn pin_gadget_tensor_matches_payoff_matrix() {
        // Target 1/2: the 2x2 bimatrix is ((1/2,1),(1/2,1/2);(1,0),(0,1/2))
        // with rows = first player T,B and columns = second player T,B.
        let g = pin_gadget(&rat(1, 2));
        let t = game_to_tensor(&g).unwrap();
        // m bits: player0 = bit0, player1 = bit1; m=3 is (T,T).
        let p0 = &t.payoffs[0];
        let p1 = &t.payoffs[1];
        assert_eq!(p0[3], "1/2"); // (T,T)
        assert_eq!(p1[3], "1/1");
        assert_eq!(p0[1], "1/2"); // (T,B): player0 top, player1 bottom
        assert_eq!(p1[1], "1/2");
        assert_eq!(p0[2], "1/1"); // (B,T)
        assert_eq!(p1[2], "0/1");
        assert_eq!(p0[0], "0/1"); // (B,B)
        assert_eq!(p1[0], "1/2");
    }

    #[test]
    fn tensor_agrees_with_map_evaluation() {
        let cert = parse_certificate(
            "vars: x1\nmode: equilibrium\npoly P1: 2*x1 - 1\nformula: P1\nwitness: 0\n",
        )
        .unwrap();
        let (game, _) = compile_equilibrium(&cert, &CompileOptions::default()).unwrap();
        let t = game_to_tensor(&game).unwrap();
        let n = game.n_players();
        assert_eq!(t.payoffs[0].len(), 1 << n);
        for m in 0u64..(1u64 << n) {
            let probs: Vec<Rat> = (0..n)
                .map(|p| if (m >> p) & 1 == 1 { Rat::one() } else { Rat::zero() })
                .collect();
            let profile = MixedProfile::new(probs);
            for p in 0..n {
                let map = if (m >> p) & 1 == 1 { &game.players[p].top } else { &game.players[p].bottom };
                assert_eq!(t.payoffs[p][m as usize], rat_to_string(&map.eval(&profile).unwrap()));
            }
        }
    }

    #[test]
    fn json_round_trip_is_identical() {
        let cert = parse_certificate(
            "vars: x1\nmode: equilibrium\npoly P1: 4*x1 - 1\npoly P2: 3 - 4*x1\n\
             formula: OR(P1,P2)\nwitness: 0\n",
        )
        .unwrap();
        let (game, index) = compile_equilibrium(&cert, &CompileOptions::default()).unwrap();
        let text = game_to_json(&game, Some(&index));
        let back = game_from_json(&text).unwrap();
        assert_eq!(game_to_json(&back, None), text);
        assert_eq!(back.players.len(), game.players.len());
        for (a, b) in game.players.iter().zip(&back.players) {
            assert_eq!(a.role, b.role);
            assert_eq!(a.top, b.top);
            assert_eq!(a.bottom, b.bottom);
        }
    }

    #[test]
    fn tensor_rejects_large_games() {
        let cert = parse_certificate(
            "vars: x1 x2 x3\nmode: equilibrium\npoly P1: x1^7 + x2^7 + x3^7 - 1\n\
             formula: P1\nwitness: 0, 0, 0\n",
        )
        .unwrap();
        let (game, _) = compile_equilibrium(&cert, &CompileOptions::default()).unwrap();
        assert!(game.n_players() > TENSOR_PLAYER_LIMIT);
        assert!(matches!(
            game_to_tensor(&game),
            Err(ExportError::TooManyPlayers { .. })
        ));
    }

    #[test]
    fn nfg_header_shape() {
        let g = pin_gadget(&rat(1, 2));
        let nfg = game_to_nfg(&g).unwrap();
        assert!(nfg.starts_with("NFG 1 R "));
        assert!(nfg.contains("{ 2 2 }"));
        // 4 contingencies x 2 players = 8 float payoffs before the trailer.
        let body: Vec<&str> = nfg.lines().collect();
        assert!(body.iter().any(|l| l.starts_with("# exact payoffs")));
    }
}

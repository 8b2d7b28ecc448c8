//! Command-line front end: parse -> validate -> compile -> verify -> report.
//!
//! Machine-readable JSON goes to stdout (byte-stable for identical inputs);
//! human summaries go to stderr. Exit codes: 0 success, 1 verification
//! failure, 2 input error.

use clap::{Parser, Subcommand, ValueEnum};
use semigame::bounds::{self, bound_report, gen_lower_bound_instance};
use semigame::cert::{Certificate, Mode, Witness};
use semigame::compile::{
    compile_equilibrium, compile_payoff, player_count, CompilationIndex, CompileOptions,
};
use semigame::export::{
    game_from_json, game_to_json, game_to_nfg, game_to_tensor, grid_report_json,
    refute_outcome_json, tensor_to_string,
};
use semigame::game::BinaryGame;
use semigame::integer::{compile_integer, max_payoff_magnitude, player_count_integer};
use semigame::parse::parse_certificate;
use semigame::rational::{rat_from_str, rat_to_string, Rat};
use semigame::verify::{canonical_profile, project_grid, refute, RefuteOutcome};
use serde_json::json;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "semigame",
    about = "Compile certified semi-algebraic sets into binary games whose equilibrium \
             projection is exactly the certified set, and verify the result exactly"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Equilibrium,
    Payoff,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Tensor,
    Nfg,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a certificate into a game; print the player-count report.
    Compile {
        cert: PathBuf,
        /// Write the game JSON here (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the certificate's mode line.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Box radius for a payoff-mode override.
        #[arg(long, allow_hyphen_values = true)]
        box_d: Option<String>,
        /// Use the all-integer-payoff construction (requires integer
        /// coefficients and an algebraic witness).
        #[arg(long)]
        integer: bool,
        /// Accept a witness whose membership check is UNDECIDED at the
        /// refinement depth limit (recorded in the game metadata).
        #[arg(long)]
        allow_undecided_witness: bool,
    },
    /// Check one point: canonical equilibrium if it is a member, refutation
    /// trace otherwise.
    Check {
        cert: PathBuf,
        /// Comma-separated rational coordinates, e.g. "1/4" or "-1/2,3/4".
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        integer: bool,
        #[arg(long)]
        allow_undecided_witness: bool,
        /// Check against an existing game JSON instead of recompiling only.
        #[arg(long)]
        game: Option<PathBuf>,
    },
    /// Run membership, canonical check and refutation over a full grid.
    Project {
        cert: PathBuf,
        /// Grid resolution r: points are {0, 1/r, ..., 1}^n.
        #[arg(long)]
        grid: u32,
        #[arg(long)]
        integer: bool,
        #[arg(long)]
        allow_undecided_witness: bool,
        #[arg(long)]
        game: Option<PathBuf>,
    },
    /// Closed-form bound report for a certificate.
    Bounds {
        cert: PathBuf,
        #[arg(long)]
        integer: bool,
        #[arg(long)]
        allow_undecided_witness: bool,
    },
    /// Generate the d^n-point lower-bound family certificate.
    GenLb {
        n: usize,
        d: usize,
        /// Comma-separated distinct rationals in [0,1], one per family node.
        #[arg(long, allow_hyphen_values = true)]
        alphas: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export a compiled game as JSON, a pure-payoff tensor, or NFG text.
    Export {
        cert: PathBuf,
        #[arg(long, value_enum)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        integer: bool,
        #[arg(long)]
        allow_undecided_witness: bool,
        #[arg(long)]
        game: Option<PathBuf>,
    },
}

/// Input-side failure: exit 2 with the diagnostic on stderr.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load_cert(path: &PathBuf) -> Result<Certificate, InputError> {
    let text = fs::read_to_string(path)
        .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
    parse_certificate(&text).map_err(InputError::from)
}

fn apply_mode_override(
    mut cert: Certificate,
    mode: Option<ModeArg>,
    box_d: Option<String>,
) -> Result<Certificate, InputError> {
    match mode {
        None => Ok(cert),
        Some(ModeArg::Equilibrium) => {
            if let Witness::Rational(z) = &cert.witness {
                for (i, zi) in z.iter().enumerate() {
                    if zi < &Rat::from_integer(0.into()) || zi > &Rat::from_integer(1.into()) {
                        return Err(InputError(format!(
                            "mode override to equilibrium: witness coordinate {} outside [0,1]",
                            i + 1
                        )));
                    }
                }
            }
            cert.mode = Mode::Equilibrium;
            Ok(cert)
        }
        Some(ModeArg::Payoff) => {
            let d = match (box_d, &cert.mode) {
                (Some(s), _) => rat_from_str(&s).map_err(InputError)?,
                (None, Mode::Payoff { box_radius }) => box_radius.clone(),
                (None, Mode::Equilibrium) => {
                    return Err(InputError(
                        "mode override to payoff requires --box-d".to_string(),
                    ))
                }
            };
            if d <= Rat::from_integer(0.into()) {
                return Err(InputError("box radius must be positive".to_string()));
            }
            if let Witness::Rational(z) = &cert.witness {
                use num_traits::Signed;
                for (i, zi) in z.iter().enumerate() {
                    if zi.abs() > d {
                        return Err(InputError(format!(
                            "mode override to payoff: witness coordinate {} outside [-D, D]",
                            i + 1
                        )));
                    }
                }
            }
            cert.mode = Mode::Payoff { box_radius: d };
            Ok(cert)
        }
    }
}

fn compile_cert(
    cert: &Certificate,
    integer: bool,
    allow_undecided: bool,
) -> Result<(BinaryGame, CompilationIndex), InputError> {
    let opts = CompileOptions { allow_undecided_witness: allow_undecided, ..Default::default() };
    if integer {
        return compile_integer(cert, &opts).map_err(InputError::from);
    }
    match cert.mode {
        Mode::Equilibrium => compile_equilibrium(cert, &opts).map_err(InputError::from),
        Mode::Payoff { .. } => compile_payoff(cert, &opts).map_err(InputError::from),
    }
}

/// Recompiles and, when `--game` was given, cross-checks the stored game
/// against the certificate digest and the recompiled structure.
fn compile_with_game_override(
    cert: &Certificate,
    integer: bool,
    allow_undecided: bool,
    game_path: &Option<PathBuf>,
) -> Result<(BinaryGame, CompilationIndex), InputError> {
    let (game, index) = compile_cert(cert, integer, allow_undecided)?;
    if let Some(path) = game_path {
        let text = fs::read_to_string(path)
            .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
        let stored = game_from_json(&text)?;
        if stored.meta.certificate_digest != cert.digest() {
            return Err(InputError(format!(
                "game file digest {} does not match certificate digest {}",
                stored.meta.certificate_digest,
                cert.digest()
            )));
        }
        if game_to_json(&stored, None) != game_to_json(&game, None) {
            return Err(InputError(
                "game file differs from the game compiled from the certificate".to_string(),
            ));
        }
    }
    Ok((game, index))
}

fn parse_point(text: &str, n: usize) -> Result<Vec<Rat>, InputError> {
    let coords: Result<Vec<Rat>, _> = text.split(',').map(|t| rat_from_str(t.trim())).collect();
    let coords = coords.map_err(InputError)?;
    if coords.len() != n {
        return Err(InputError(format!(
            "point has {} coordinates, certificate has {n}",
            coords.len()
        )));
    }
    Ok(coords)
}

fn write_or_stdout(out: &Option<PathBuf>, payload: &str) -> Result<bool, InputError> {
    match out {
        Some(path) => {
            fs::write(path, payload)
                .map_err(|e| InputError(format!("cannot write {}: {e}", path.display())))?;
            Ok(true)
        }
        None => {
            print!("{payload}");
            Ok(false)
        }
    }
}

fn count_report_json(cert: &Certificate, integer: bool) -> Result<serde_json::Value, InputError> {
    let report = player_count(cert);
    let entry = |e: &Option<semigame::compile::BoundReportEntry>| match e {
        None => serde_json::Value::Null,
        Some(b) => json!({ "lo": b.lo, "hi": b.hi, "exact_le": b.exact_le }),
    };
    let mut v = json!({
        "exact": report.exact,
        "n": report.n,
        "leaves": report.leaves,
        "ladder_lengths": report.q,
        "var_degrees": report.var_degrees,
        "headline_bound": entry(&report.headline),
        "refined_bound": entry(&report.refined),
    });
    if integer {
        let ic = player_count_integer(cert)?;
        v["integer"] = json!({
            "exact": ic.exact,
            "bound_lo": ic.bound_lo,
            "bound_hi": ic.bound_hi,
            "exact_le": ic.exact_le,
        });
    }
    Ok(v)
}

fn run(cmd: Command) -> Result<ExitCode, InputError> {
    match cmd {
        Command::Compile { cert, out, mode, box_d, integer, allow_undecided_witness } => {
            let cert = apply_mode_override(load_cert(&cert)?, mode, box_d)?;
            let (game, index) = compile_cert(&cert, integer, allow_undecided_witness)?;
            let game_json = game_to_json(&game, Some(&index));
            let counts = count_report_json(&cert, integer)?;
            eprintln!(
                "compiled {} players (mode {}, digest {})",
                game.n_players(),
                game.meta.mode,
                &game.meta.certificate_digest[..8]
            );
            if write_or_stdout(&out, &game_json)? {
                let mut s = serde_json::to_string_pretty(&counts).expect("count report");
                s.push('\n');
                print!("{s}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { cert, point, integer, allow_undecided_witness, game } => {
            let cert = load_cert(&cert)?;
            let (game, index) =
                compile_with_game_override(&cert, integer, allow_undecided_witness, &game)?;
            let raw = parse_point(&point, cert.n())?;
            // Payoff mode: the point lives in [-D,D]^n; map it onto the
            // unit box the compiled game projects to.
            let x: Vec<Rat> = match &index.box_radius {
                None => raw.clone(),
                Some(d) => {
                    let two_d = d + d;
                    raw.iter().map(|xi| (xi + d) / &two_d).collect()
                }
            };
            for (i, xi) in x.iter().enumerate() {
                if xi < &Rat::from_integer(0.into()) || xi > &Rat::from_integer(1.into()) {
                    return Err(InputError(format!("point coordinate {} outside the box", i + 1)));
                }
            }
            let member = index.cert.membership(&x)?;
            let mut payload = json!({
                "point": raw.iter().map(rat_to_string).collect::<Vec<_>>(),
                "member": member,
                "verdict": if member { "in" } else { "out" },
            });
            let agreed;
            if member {
                let profile = canonical_profile(&index, &x)?;
                let verdict = game.check_equilibrium(&profile, &Rat::from_integer(0.into()))?;
                agreed = verdict.pass;
                payload["canonical"] = json!({
                    "profile": profile.probs.iter().map(rat_to_string).collect::<Vec<_>>(),
                    "pass": verdict.pass,
                });
                eprintln!("point is a member; canonical equilibrium pass = {}", verdict.pass);
            } else {
                let outcome = refute(&index, &x)?;
                agreed = outcome.is_refuted();
                payload["refutation"] = refute_outcome_json(&outcome, &game);
                if let RefuteOutcome::Refuted(trace) = &outcome {
                    eprintln!(
                        "point is not a member; refuted in {} steps",
                        trace.steps.len()
                    );
                }
            }
            let mut s = serde_json::to_string_pretty(&payload).expect("check payload");
            s.push('\n');
            print!("{s}");
            Ok(if agreed { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Project { cert, grid, integer, allow_undecided_witness, game } => {
            if grid == 0 {
                return Err(InputError("grid resolution must be >= 1".to_string()));
            }
            let cert = load_cert(&cert)?;
            let (game, index) =
                compile_with_game_override(&cert, integer, allow_undecided_witness, &game)?;
            let report = project_grid(&game, &index, grid)?;
            let payload = grid_report_json(&report, &game);
            eprintln!(
                "projected {} grid points: {} disagreements",
                report.points.len(),
                report.disagreements.len()
            );
            let mut s = serde_json::to_string_pretty(&payload).expect("grid payload");
            s.push('\n');
            print!("{s}");
            Ok(if report.pass() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Bounds { cert, integer, allow_undecided_witness } => {
            let cert = load_cert(&cert)?;
            let (game, index) = compile_cert(&cert, integer, allow_undecided_witness)?;
            let report = bound_report(&cert, game.n_players());
            let counts = count_report_json(&cert, integer)?;
            let mut payload = json!({
                "n_players": report.n_players,
                "player_count": counts,
                "component_bound": report.component.as_ref().map(|(d, r, s, v)| json!({
                    "degree": d, "vars": r, "constraints": s, "value": v.to_string(),
                })),
                "equilibrium_components": {
                    "headline": report.equilibrium_components.headline.to_string(),
                    "sharper": report.equilibrium_components.sharper.as_ref().map(|b| b.to_string()),
                },
                "min_players_lower_bound": report.min_players.as_ref().map(|b| json!({
                    "lower": b.lower, "upper": b.upper, "exact": b.exact,
                })),
            });
            if integer {
                let mag = max_payoff_magnitude(&game, &index);
                payload["max_payoff_magnitude"] = json!({
                    "overall": mag.max_abs.to_string(),
                    "root_player_bounds": mag
                        .root_bounds
                        .iter()
                        .map(|(p, b)| json!({ "player": p, "bound": b.to_string() }))
                        .collect::<Vec<_>>(),
                });
            }
            eprintln!(
                "bounds for {} players (equilibrium components <= {})",
                report.n_players, report.equilibrium_components.headline
            );
            let mut s = serde_json::to_string_pretty(&payload).expect("bounds payload");
            s.push('\n');
            print!("{s}");
            Ok(ExitCode::SUCCESS)
        }
        Command::GenLb { n, d, alphas, out } => {
            let parts: Result<Vec<Rat>, _> =
                alphas.split(',').map(|t| rat_from_str(t.trim())).collect();
            let parts = parts.map_err(InputError)?;
            if parts.len() != d {
                return Err(InputError(format!(
                    "expected {d} family nodes, got {}",
                    parts.len()
                )));
            }
            let cert = gen_lower_bound_instance(n, &parts)?;
            let text = cert.canonical_text();
            eprintln!(
                "generated family: {}^{} = {} members, per-variable degree {}",
                d,
                n,
                bounds::family_cardinality(n, d),
                2 * d
            );
            if write_or_stdout(&out, &text)? {
                let payload = json!({
                    "out": out.as_ref().unwrap().display().to_string(),
                    "n": n,
                    "d": d,
                    "cardinality": bounds::family_cardinality(n, d).to_string(),
                });
                let mut s = serde_json::to_string_pretty(&payload).expect("gen-lb payload");
                s.push('\n');
                print!("{s}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Export { cert, format, out, integer, allow_undecided_witness, game } => {
            let cert = load_cert(&cert)?;
            let (game, index) =
                compile_with_game_override(&cert, integer, allow_undecided_witness, &game)?;
            let payload = match format {
                FormatArg::Json => game_to_json(&game, Some(&index)),
                FormatArg::Tensor => tensor_to_string(&game_to_tensor(&game)?),
                FormatArg::Nfg => game_to_nfg(&game)?,
            };
            eprintln!("exported {} players", game.n_players());
            if write_or_stdout(&out, &payload)? {
                let note = json!({ "out": out.as_ref().unwrap().display().to_string() });
                let mut s = serde_json::to_string_pretty(&note).expect("export note");
                s.push('\n');
                print!("{s}");
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

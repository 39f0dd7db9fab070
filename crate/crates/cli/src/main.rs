use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use transvect_core::game::GameState;
use transvect_core::graphs::{self, FormGraph, GraphClass};
use transvect_core::oracle::{self, Action};
use transvect_core::orbits::{self, DualProblem};
use transvect_core::GraphSpec;

mod files;
mod selftest;
mod serve;

use files::{read_json, CoordsFile, SpaceFile};

#[derive(Debug)]
pub struct CliError {
    kind: String,
    message: String,
}

impl CliError {
    pub fn new(kind: &str, message: impl Into<String>) -> Self {
        Self {
            kind: kind.into(),
            message: message.into(),
        }
    }
}

impl From<transvect_core::Error> for CliError {
    fn from(e: transvect_core::Error) -> Self {
        use transvect_core::Error::*;
        let kind = match &e {
            InvalidInput(_) => "InvalidInput",
            Unsupported(_) => "Unsupported",
            BudgetExceeded { .. } => "BudgetExceeded",
            IllegalMove(_) => "IllegalMove",
        };
        Self::new(kind, e.to_string())
    }
}

/// JSON payload for stdout, exit code, and a one-line summary for stderr.
struct Outcome {
    json: Value,
    code: u8,
    summary: String,
}

impl Outcome {
    fn ok(json: Value, summary: impl Into<String>) -> Self {
        Self {
            json,
            code: 0,
            summary: summary.into(),
        }
    }
}

#[derive(Parser)]
#[command(name = "transvect", version, about = "Orbit questions for transvection groups and the lit-only sigma game")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrbitAction {
    Dual,
    Vector,
    Affine,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether two functionals lie in one orbit of the dual action.
    ReachDual {
        #[arg(short, long)]
        problem: PathBuf,
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        /// Search for an explicit move sequence when the verdict is "same".
        #[arg(long)]
        witness: bool,
    },
    /// Decide whether two vectors lie in one orbit of the transvection group.
    Reach {
        #[arg(short, long)]
        problem: PathBuf,
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
    },
    /// Components of G(S) and their type (GF(2) only).
    Classify {
        #[arg(short, long)]
        problem: PathBuf,
    },
    /// Brute-force orbit partition of all states.
    Orbits {
        #[arg(short, long)]
        problem: PathBuf,
        #[arg(long, value_enum, default_value = "dual")]
        action: OrbitAction,
        /// Functional for the affine action.
        #[arg(long)]
        alpha: Option<PathBuf>,
    },
    /// Isomorphism classes of graphs t-equivalent to a graph.
    Tclass {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 1 << 20)]
        max: usize,
        /// Also print the edge lists of the class representatives.
        #[arg(long)]
        list: bool,
    },
    /// Root multigraph of a line graph, if any.
    Root {
        #[arg(short, long)]
        graph: PathBuf,
    },
    /// Fewest lit lamps reachable from a position.
    Mingame {
        #[arg(short, long)]
        graph: PathBuf,
        #[arg(long)]
        lamps: PathBuf,
    },
    /// Run the game protocol over HTTP or line-delimited stdio.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long)]
        stdio: bool,
        /// Idle minutes before a session is dropped.
        #[arg(long, default_value_t = 30)]
        idle_minutes: u64,
    },
    /// Compare the decider with brute-force orbits on random spaces.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        spaces: usize,
    },
}

fn budget() -> u64 {
    oracle::budget_from_env()
}

fn decision_outcome(d: transvect_core::Decision) -> Outcome {
    let code = if d.is_same() { 0 } else { 1 };
    let summary = match &d.certificate {
        None => "same orbit".to_string(),
        Some(c) => format!("different orbits: {c:?}"),
    };
    Outcome {
        json: serde_json::to_value(&d).expect("serializable"),
        code,
        summary,
    }
}

fn classify_components(g: &FormGraph, p: u8) -> Result<Value, CliError> {
    let comps = g.connected_components();
    let mut kinds = Vec::new();
    let mut roots = Vec::new();
    for c in &comps {
        if p != 2 {
            kinds.push("general_field");
            roots.push(Value::Null);
            continue;
        }
        match graphs::classify(&g.induced(c))? {
            GraphClass::OrthogonalType => {
                kinds.push("orthogonal");
                roots.push(Value::Null);
            }
            GraphClass::LineGraph(root) => {
                kinds.push("line_graph");
                roots.push(json!(root));
            }
        }
    }
    Ok(json!({"components": comps, "per_component": kinds, "roots": roots}))
}

fn run(cmd: Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::ReachDual {
            problem,
            from,
            to,
            witness,
        } => {
            let sp = read_json::<SpaceFile>(&problem)?.to_space()?;
            let alpha = files::functional(&sp, &read_json::<CoordsFile>(&from)?)?;
            let beta = files::functional(&sp, &read_json::<CoordsFile>(&to)?)?;
            let prob = DualProblem::new(sp, alpha, beta)?;
            let mut d = orbits::decide_dual(&prob)?;
            if witness && d.is_same() && d.witness.is_none() {
                let b = usize::try_from(budget()).unwrap_or(usize::MAX);
                d.witness = orbits::find_witness(&prob, b)?;
            }
            Ok(decision_outcome(d))
        }
        Command::Reach { problem, from, to } => {
            let sp = read_json::<SpaceFile>(&problem)?.to_space()?;
            let x = files::vector(&sp, &read_json::<CoordsFile>(&from)?)?;
            let y = files::vector(&sp, &read_json::<CoordsFile>(&to)?)?;
            Ok(decision_outcome(orbits::decide_nondual(&sp, &x, &y)?))
        }
        Command::Classify { problem } => {
            let sp = read_json::<SpaceFile>(&problem)?.to_space()?;
            let g = FormGraph::from_space(&sp)?;
            let out = classify_components(&g, sp.p())?;
            let summary = format!("{} component(s): {}", out["components"].as_array().map_or(0, Vec::len), out["per_component"]);
            Ok(Outcome::ok(out, summary))
        }
        Command::Orbits {
            problem,
            action,
            alpha,
        } => {
            let sp = read_json::<SpaceFile>(&problem)?.to_space()?;
            let part = match action {
                OrbitAction::Dual => oracle::enumerate_orbits(&sp, Action::Dual, budget())?,
                OrbitAction::Vector => oracle::enumerate_orbits(&sp, Action::Vector, budget())?,
                OrbitAction::Affine => {
                    let path = alpha.ok_or_else(|| CliError::new("InvalidInput", "--alpha is required for the affine action"))?;
                    let a = files::functional(&sp, &read_json::<CoordsFile>(&path)?)?;
                    oracle::enumerate_affine_orbits(&sp, &a, budget())?
                }
            };
            let summary = format!("{} orbit(s) on {} states", part.blocks.len(), part.state_count());
            Ok(Outcome::ok(serde_json::to_value(&part).expect("serializable"), summary))
        }
        Command::Tclass { graph, max, list } => {
            let g = read_json::<GraphSpec>(&graph)?.to_graph()?;
            let closure = graphs::t_equivalence_closure(&g, max)?;
            let mut out = json!({"classes": closure.classes.len(), "complete": closure.complete});
            if list {
                let reps: Vec<Value> = closure.graphs().map(|h| json!(h.edges())).collect();
                out["representatives"] = json!(reps);
            }
            if !closure.complete {
                out["error"] = json!("BudgetExceeded");
                return Ok(Outcome {
                    json: out,
                    code: 2,
                    summary: format!("state budget {max} exhausted; partial closure"),
                });
            }
            let summary = format!("{} isomorphism classes", closure.classes.len());
            Ok(Outcome::ok(out, summary))
        }
        Command::Root { graph } => {
            let g = read_json::<GraphSpec>(&graph)?.to_graph()?;
            if !g.is_connected() {
                return Err(CliError::new("InvalidInput", "root recognition expects a connected graph"));
            }
            Ok(match graphs::recognize_root_multigraph(&g) {
                Some(m) => Outcome::ok(json!({"root": m}), "line graph of the printed root"),
                None => Outcome::ok(json!({"root": null}), "not a line graph of any multigraph"),
            })
        }
        Command::Mingame { graph, lamps } => {
            let g = read_json::<GraphSpec>(&graph)?.to_graph()?;
            let l = transvect_core::game::lamps_from_bits(read_json::<CoordsFile>(&lamps)?.coords())?;
            let st = GameState::new(g, l)?;
            let m = st.min_lit(usize::try_from(budget()).unwrap_or(usize::MAX))?;
            let summary = format!("{} lit lamp(s) after {} move(s)", m.count, m.moves.len());
            Ok(Outcome::ok(serde_json::to_value(&m).expect("serializable"), summary))
        }
        Command::Serve {
            port,
            stdio,
            idle_minutes,
        } => {
            let idle = std::time::Duration::from_secs(idle_minutes * 60);
            if stdio {
                serve::stdio(idle)?;
            } else {
                serve::http(port, idle)?;
            }
            Ok(Outcome::ok(Value::Null, "server stopped"))
        }
        Command::Selftest { seed, spaces } => selftest::run(seed, spaces),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let serving = matches!(cli.command, Command::Serve { .. });
    match run(cli.command) {
        Ok(out) => {
            if !serving {
                println!("{}", out.json);
            }
            eprintln!("{}", out.summary);
            ExitCode::from(out.code)
        }
        Err(e) => {
            println!("{}", json!({"error": e.kind, "message": e.message}));
            eprintln!("error: {}", e.message);
            ExitCode::from(2)
        }
    }
}

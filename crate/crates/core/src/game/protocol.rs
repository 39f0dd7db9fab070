//! Request/response JSON protocol over a session store.
//!
//! One JSON object per request, one per response. Sessions are named `s1`,
//! `s2`, ... in creation order and dropped after an idle timeout.

use std::collections::HashMap;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde::Deserialize;
use serde_json::{json, Value};

use super::{lamps_from_bits, witness_vertices, GameState, GraphSpec};
use crate::error::Error;
use crate::graphs::{self, GraphClass};
use crate::oracle::budget_from_env;

pub const DEFAULT_IDLE: Duration = Duration::from_secs(30 * 60);
pub const WITNESS_BUDGET: usize = 1 << 16;

#[derive(Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
enum Request {
    New { graph: GraphSpec, lamps: Vec<u8> },
    Play { session: String, vertex: usize },
    Reachable {
        session: String,
        target: Vec<u8>,
        #[serde(default = "yes")]
        witness: bool,
    },
    Undo { session: String },
    MinLit { session: String },
    Classify { session: String },
}

fn yes() -> bool {
    true
}

struct Session {
    state: GameState,
    last_used: Instant,
}

struct Inner {
    sessions: HashMap<String, Session>,
    next_id: u64,
}

pub struct SessionStore {
    inner: Mutex<Inner>,
    idle: Duration,
}

impl Default for SessionStore {
    fn default() -> Self {
        Self::new(DEFAULT_IDLE)
    }
}

fn error(kind: &str, message: impl Into<String>) -> Value {
    json!({"error": kind, "message": message.into()})
}

fn engine_error(e: Error) -> Value {
    match e {
        Error::IllegalMove(_) => json!({"error": "IllegalMove"}),
        Error::InvalidInput(m) => error("InvalidInput", m),
        Error::Unsupported(m) => error("Unsupported", m),
        e @ Error::BudgetExceeded { .. } => error("BudgetExceeded", e.to_string()),
    }
}

fn state_json(st: &GameState) -> Value {
    json!({
        "state": {"lamps": st.lamps().coords().coords(), "history": st.history()},
        "legal": st.legal_moves(),
    })
}

impl SessionStore {
    pub fn new(idle: Duration) -> Self {
        Self {
            inner: Mutex::new(Inner {
                sessions: HashMap::new(),
                next_id: 1,
            }),
            idle,
        }
    }

    pub fn session_count(&self) -> usize {
        self.inner.lock().unwrap().sessions.len()
    }

    /// Handles one request line and returns the response line.
    pub fn handle_str(&self, line: &str) -> String {
        let resp = match serde_json::from_str::<Value>(line) {
            Ok(v) => self.handle(v),
            Err(e) => error("BadRequest", e.to_string()),
        };
        resp.to_string()
    }

    pub fn handle(&self, req: Value) -> Value {
        self.handle_at(req, Instant::now())
    }

    pub fn handle_at(&self, req: Value, now: Instant) -> Value {
        let req: Request = match serde_json::from_value(req) {
            Ok(r) => r,
            Err(e) => return error("BadRequest", e.to_string()),
        };
        let mut inner = self.inner.lock().unwrap();
        let idle = self.idle;
        inner
            .sessions
            .retain(|_, s| now.saturating_duration_since(s.last_used) <= idle);

        let id = match &req {
            Request::New { graph, lamps } => {
                let st = match graph
                    .to_graph()
                    .and_then(|g| GameState::new(g, lamps_from_bits(lamps)?))
                {
                    Ok(st) => st,
                    Err(e) => return engine_error(e),
                };
                let id = format!("s{}", inner.next_id);
                inner.next_id += 1;
                let mut resp = state_json(&st);
                resp["session"] = json!(id);
                inner.sessions.insert(id, Session { state: st, last_used: now });
                return resp;
            }
            Request::Play { session, .. }
            | Request::Reachable { session, .. }
            | Request::Undo { session }
            | Request::MinLit { session }
            | Request::Classify { session } => session.clone(),
        };
        let Some(sess) = inner.sessions.get_mut(&id) else {
            return error("UnknownSession", format!("no session {id}"));
        };
        sess.last_used = now;
        let st = &sess.state;
        match req {
            Request::New { .. } => unreachable!(),
            Request::Play { vertex, .. } => match st.play(vertex) {
                Ok(next) => {
                    let resp = state_json(&next);
                    sess.state = next;
                    resp
                }
                Err(e) => engine_error(e),
            },
            Request::Undo { .. } => match st.undo() {
                Some(prev) => {
                    let resp = state_json(&prev);
                    sess.state = prev;
                    resp
                }
                None => error("NothingToUndo", "history is empty"),
            },
            Request::Reachable { target, witness, .. } => {
                let budget = witness.then_some(WITNESS_BUDGET);
                match lamps_from_bits(&target).and_then(|t| st.reachable(&t, budget)) {
                    Ok(d) => {
                        let mut resp = json!({"verdict": d.verdict});
                        if let Some(c) = d.certificate {
                            resp["certificate"] = json!(c);
                        }
                        if let Some(w) = d.witness {
                            resp["witness"] = json!(witness_vertices(&w));
                        }
                        resp
                    }
                    Err(e) => engine_error(e),
                }
            }
            Request::MinLit { .. } => {
                let budget = usize::try_from(budget_from_env()).unwrap_or(usize::MAX);
                match st.min_lit(budget) {
                    Ok(m) => json!(m),
                    Err(e) => engine_error(e),
                }
            }
            Request::Classify { .. } => classify_json(st),
        }
    }
}

fn classify_json(st: &GameState) -> Value {
    let comps = st.graph().connected_components();
    let mut kinds = Vec::new();
    let mut roots = Vec::new();
    for c in &comps {
        match graphs::classify(&st.graph().induced(c)) {
            Ok(GraphClass::OrthogonalType) => {
                kinds.push("orthogonal");
                roots.push(Value::Null);
            }
            Ok(GraphClass::LineGraph(root)) => {
                kinds.push("line_graph");
                roots.push(json!(root));
            }
            Err(e) => return engine_error(e),
        }
    }
    json!({"components": comps, "per_component": kinds, "roots": roots})
}

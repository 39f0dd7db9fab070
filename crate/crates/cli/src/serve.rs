use std::io::{BufRead, Write};
use std::time::Duration;

use tiny_http::{Header, Method, Response, Server};
use transvect_core::game::protocol::SessionStore;

use crate::CliError;

const INDEX: &str = "transvect game server\n\nPOST one JSON request per call to /api.\n";

fn io_error(e: impl std::fmt::Display) -> CliError {
    CliError::new("Io", e.to_string())
}

/// Line-delimited protocol: one request per input line, one response per
/// output line. Blank lines are skipped.
pub fn stdio(idle: Duration) -> Result<(), CliError> {
    let store = SessionStore::new(idle);
    let stdin = std::io::stdin();
    let mut out = std::io::stdout().lock();
    for line in stdin.lock().lines() {
        let line = line.map_err(io_error)?;
        if line.trim().is_empty() {
            continue;
        }
        writeln!(out, "{}", store.handle_str(&line)).map_err(io_error)?;
        out.flush().map_err(io_error)?;
    }
    Ok(())
}

pub fn http(port: u16, idle: Duration) -> Result<(), CliError> {
    let server = Server::http(("127.0.0.1", port)).map_err(io_error)?;
    eprintln!("listening on http://127.0.0.1:{port}");
    let store = SessionStore::new(idle);
    let json_header = Header::from_bytes("Content-Type", "application/json").expect("static header");
    for mut req in server.incoming_requests() {
        let resp = match (req.method(), req.url()) {
            (Method::Post, "/api") => {
                let mut body = String::new();
                match req.as_reader().read_to_string(&mut body) {
                    Ok(_) => Response::from_string(store.handle_str(&body)).with_header(json_header.clone()),
                    Err(e) => Response::from_string(e.to_string()).with_status_code(400),
                }
            }
            (Method::Get, "/") => Response::from_string(INDEX),
            _ => Response::from_string("not found").with_status_code(404),
        };
        if let Err(e) = req.respond(resp) {
            eprintln!("response failed: {e}");
        }
    }
    Ok(())
}

use std::path::Path;

use mub_core::mub::{StateJson, StateVector};
use mub_core::{Error, Result};

/// Reads a state file of the form
/// `{"dim": d, "entries": [["a/b", ...], ...], "label": "..."}` where each
/// entry lists power-basis coefficients of a cyclotomic number.
pub fn ingest_state(path: &Path) -> Result<StateVector> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_state(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn parse_state(text: &str) -> Result<StateVector> {
    // serde_json reports "at line L column C" on failure
    let json: StateJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    json.into_state()
}

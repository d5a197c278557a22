//! Input documents. Every document carries `"schema": 1`.
//!
//! ```json
//! {"schema": 1, "potential": {"kind": "canonical", "polytope": {...}},
//!  "polytope": {...}, "samples": 30,
//!  "tolerances": {"step_fraction": 1e-3, "margin_fraction": 0.05, "mesh": 8}}
//! ```

use std::fs;

use serde::Deserialize;
use toric_kahler::schema::{PotentialSpec, SpecJson, SCHEMA_VERSION};
use toric_kahler::PolyhedralSet;

use crate::CliError;

#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    pub step_fraction: Option<f64>,
    pub margin_fraction: Option<f64>,
    pub mesh: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialDoc {
    pub schema: u32,
    pub potential: PotentialSpec,
    /// Restricts sampling to this set.
    #[serde(default)]
    pub polytope: Option<PolyhedralSet>,
    #[serde(default)]
    pub samples: Option<usize>,
    #[serde(default)]
    pub tolerances: Tolerances,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveDoc {
    pub schema: u32,
    pub spec: SpecJson,
    #[serde(default)]
    pub constraints: Vec<String>,
}

/// Reads `arg` as inline JSON when it starts with `{`, else as a path.
pub fn read_text(arg: &str) -> Result<String, CliError> {
    if arg.trim_start().starts_with('{') {
        return Ok(arg.to_string());
    }
    fs::read_to_string(arg).map_err(|e| CliError::Io(format!("{arg}: {e}")))
}

fn check_schema(version: u32) -> Result<(), CliError> {
    if version == SCHEMA_VERSION {
        Ok(())
    } else {
        Err(CliError::Schema(format!(
            "unsupported schema version {version} (expected {SCHEMA_VERSION})"
        )))
    }
}

/// Deserializes a versioned document. A wrong version is reported as such
/// even when the rest of the document does not fit the current layout.
fn parse<T: for<'de> Deserialize<'de>>(text: &str, version: impl Fn(&T) -> u32) -> Result<T, CliError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| CliError::Schema(e.to_string()))?;
    if let Some(v) = value.get("schema").and_then(serde_json::Value::as_u64) {
        check_schema(u32::try_from(v).unwrap_or(u32::MAX))?;
    }
    let doc: T = serde_json::from_value(value).map_err(|e| CliError::Schema(e.to_string()))?;
    check_schema(version(&doc))?;
    Ok(doc)
}

pub fn potential_doc(arg: &str) -> Result<PotentialDoc, CliError> {
    parse(&read_text(arg)?, |d: &PotentialDoc| d.schema)
}

pub fn solve_doc(arg: &str) -> Result<SolveDoc, CliError> {
    parse(&read_text(arg)?, |d: &SolveDoc| d.schema)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_is_required_and_checked() {
        let ok = r#"{"schema":1,"potential":{"kind":"dim2","k":1,"b":0,"c":1}}"#;
        assert!(potential_doc(ok).is_ok());
        let missing = r#"{"potential":{"kind":"dim2","k":1,"b":0,"c":1}}"#;
        assert!(matches!(potential_doc(missing), Err(CliError::Schema(_))));
        let wrong = ok.replace("\"schema\":1", "\"schema\":2");
        assert!(matches!(potential_doc(&wrong), Err(CliError::Schema(_))));
        let extra = ok.replace("\"schema\":1", "\"schema\":1,\"bogus\":3");
        assert!(matches!(potential_doc(&extra), Err(CliError::Schema(_))));
    }

    #[test]
    fn solve_doc_parses() {
        let d = solve_doc(r#"{"schema":1,"spec":{"n":2,"m":1,"a":"1"},"constraints":["C=0","D=0"]}"#).unwrap();
        assert_eq!(d.constraints.len(), 2);
        assert!(d.spec.b.is_none());
    }
}

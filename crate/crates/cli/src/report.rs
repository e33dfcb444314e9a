use std::fmt;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "algebroid-report/1";

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub engine_version: &'static str,
    pub command: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_sha256: Option<String>,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<f64>,
}

impl RunReport {
    pub fn new(command: Vec<String>) -> Self {
        RunReport {
            schema: SCHEMA,
            engine_version: algebroid::VERSION,
            command,
            input_sha256: None,
            status: String::new(),
            error: None,
            result: Value::Null,
            timings_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Result of a command that ran to completion.
pub struct Outcome {
    pub ok: bool,
    pub result: Value,
    pub text: String,
}

#[derive(Debug)]
pub enum Failure {
    Io(String),
    Parse(String),
    Engine(algebroid::Error),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        use algebroid::Error as E;
        match self {
            Failure::Io(_) | Failure::Parse(_) => 2,
            Failure::Engine(E::Parse(_) | E::Poly(_)) => 2,
            Failure::Engine(E::DegreeOverflow { .. }) => 3,
            Failure::Engine(_) => 1,
        }
    }

    /// Structured detail for the report body.
    pub fn detail(&self) -> Value {
        match self {
            Failure::Engine(algebroid::Error::DegreeOverflow { degree, weight, cap }) => serde_json::json!({
                "overflow": {"degree": degree, "weight": weight, "cap": cap}
            }),
            _ => Value::Null,
        }
    }

    pub fn status(&self) -> &'static str {
        match self.exit_code() {
            2 => "parse_error",
            3 => "cap_exceeded",
            _ => "failed",
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Io(m) | Failure::Parse(m) => write!(f, "{m}"),
            Failure::Engine(algebroid::Error::DegreeOverflow { degree, weight, cap }) => write!(
                f,
                "degree overflow: d maps degree-{degree} cochains to weight {weight}, above the cap {cap}; the truncation is not a subcomplex"
            ),
            Failure::Engine(e) => write!(f, "{e}"),
        }
    }
}

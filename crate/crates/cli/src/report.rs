//! Run reports and the exit-code contract.

use serde::Serialize;
use serde_json::Value;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_GUARD: i32 = 3;
pub const EXIT_TRUNCATION: i32 = 4;

#[derive(Debug, Serialize)]
pub struct Check {
    /// Name of the invariant being checked.
    pub name: String,
    pub status: &'static str,
    pub details: Value,
}

#[derive(Debug, Default, Serialize)]
pub struct Totals {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Serialize)]
pub struct ErrorInfo {
    pub kind: &'static str,
    pub message: String,
    pub exit_code: i32,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub config: Value,
    pub output: Value,
    pub checks: Vec<Check>,
    pub totals: Totals,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    pub wall_time_ms: u128,
}

impl RunReport {
    pub fn new(command: Vec<String>, config: Value) -> RunReport {
        RunReport { command, config, output: Value::Null, checks: Vec::new(), totals: Totals::default(), error: None, wall_time_ms: 0 }
    }

    pub fn check(&mut self, name: &str, pass: bool, details: Value) {
        if pass {
            self.totals.passed += 1;
        } else {
            self.totals.failed += 1;
        }
        self.checks.push(Check { name: name.to_string(), status: if pass { "pass" } else { "fail" }, details });
    }

    pub fn exit_code(&self) -> i32 {
        match &self.error {
            Some(e) => e.exit_code,
            None if self.totals.failed > 0 => EXIT_CHECK_FAILED,
            None => EXIT_OK,
        }
    }
}

/// A command failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub kind: &'static str,
    pub message: String,
    pub exit_code: i32,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Failure {
        Failure { kind: "input", message: message.into(), exit_code: EXIT_INPUT }
    }
}

impl From<snt_core::Error> for Failure {
    fn from(e: snt_core::Error) -> Failure {
        let (kind, exit_code) = match e {
            snt_core::Error::SizeGuard { .. } => ("guard", EXIT_GUARD),
            snt_core::Error::Truncation { .. } => ("truncation", EXIT_TRUNCATION),
            _ => ("input", EXIT_INPUT),
        };
        Failure { kind, message: e.to_string(), exit_code }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::input(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Failure {
        Failure::input(format!("malformed JSON: {e}"))
    }
}

impl From<Failure> for ErrorInfo {
    fn from(f: Failure) -> ErrorInfo {
        ErrorInfo { kind: f.kind, message: f.message, exit_code: f.exit_code }
    }
}

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;
use std::process::ExitCode;

use hquat::codes::CodeError;
use hquat::search::SearchError;
use hquat::structure::StructureError;
use hquat::{GaloisRingError, QuaternionError};
use serde_json::Value;

use crate::Format;

/// Why a command did not produce a complete report.
#[derive(Debug)]
pub enum Failure {
    /// Bad input: exit code 2.
    Validation(String),
    /// Search stopped by its budget; the partial report is still printed. Exit code 3.
    Budget(Value),
    /// A check inside the library failed: exit code 1.
    Internal(String),
}

pub type Outcome = Result<Value, Failure>;

impl From<GaloisRingError> for Failure {
    fn from(e: GaloisRingError) -> Self {
        Failure::Validation(e.to_string())
    }
}

impl From<QuaternionError> for Failure {
    fn from(e: QuaternionError) -> Self {
        Failure::Validation(e.to_string())
    }
}

impl From<StructureError> for Failure {
    fn from(e: StructureError) -> Self {
        match e {
            StructureError::NonVanishingImaginaryPart { .. } | StructureError::NonIntegralCharacterSum { .. } => {
                Failure::Internal(e.to_string())
            }
            _ => Failure::Validation(e.to_string()),
        }
    }
}

impl From<CodeError> for Failure {
    fn from(e: CodeError) -> Self {
        match e {
            CodeError::BoundViolated(_) => Failure::Internal(e.to_string()),
            CodeError::Structure(s) => s.into(),
            _ => Failure::Validation(e.to_string()),
        }
    }
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::BoundViolated(_) | SearchError::Verification { .. } => Failure::Internal(e.to_string()),
            SearchError::Code(c) => c.into(),
            _ => Failure::Validation(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Validation(format!("invalid JSON: {e}"))
    }
}

pub fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("values always serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            text(value, 0, &mut s);
            s
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(a.iter().filter_map(scalar).collect::<Vec<_>>().join(", "))
        }
        Value::Array(a) if a.iter().all(|x| x.as_array().is_some_and(|p| p.iter().all(|y| scalar(y).is_some() && !y.is_array()))) => {
            Some(a.iter().filter_map(scalar).map(|p| format!("[{p}]")).collect::<Vec<_>>().join(" "))
        }
        _ => None,
    }
}

fn text(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match scalar(v) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        text(v, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}-");
                        text(item, indent + 1, out);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}

fn emit(value: &Value, format: Format, out: Option<&Path>) -> Result<(), String> {
    let rendered = render(value, format);
    match out {
        Some(path) => std::fs::write(path, rendered).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => match std::io::stdout().lock().write_all(rendered.as_bytes()) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(format!("cannot write output: {e}")),
            _ => Ok(()),
        },
    }
}

/// Prints the report (or the partial report) and maps the outcome to an exit code.
pub fn finish_to(result: Outcome, format: Format, out: Option<&Path>) -> ExitCode {
    let (value, code) = match result {
        Ok(v) => (v, 0),
        Err(Failure::Budget(v)) => {
            eprintln!("budget exhausted; rerun with --resume on the written output to continue");
            (v, 3)
        }
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            return ExitCode::from(1);
        }
    };
    if let Err(msg) = emit(&value, format, out) {
        eprintln!("error: {msg}");
        return ExitCode::from(1);
    }
    ExitCode::from(code)
}

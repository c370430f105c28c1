//! Command-line front end: spec ingestion, exact text/JSON output and SVG diagrams.

pub mod commands;
pub mod render;
pub mod spec_doc;

use cantorkit::{Error, ErrorClass};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;

pub fn exit_code(err: &Error) -> i32 {
    match err.class() {
        ErrorClass::Validation => EXIT_VALIDATION,
        ErrorClass::Domain => EXIT_DOMAIN,
        ErrorClass::Resource => EXIT_RESOURCE,
    }
}

/// Short stable name of an error class.
pub fn error_code(err: &Error) -> &'static str {
    match err.class() {
        ErrorClass::Validation => "validation",
        ErrorClass::Domain => "domain",
        ErrorClass::Resource => "resource",
    }
}

/// The one-line JSON diagnostic written to stderr.
pub fn diagnostic(code: &str, exit: i32, message: &str) -> String {
    serde_json::json!({ "error": code, "exit_code": exit, "message": message }).to_string()
}

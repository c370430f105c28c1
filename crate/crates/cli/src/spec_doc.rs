//! Construction specs as text: preset names and JSON spec documents.
//!
//! ```json
//! {"type": "proportional", "p": "1/3"}
//! {"type": "power", "m": 4}
//! {"type": "subdivision", "n": 4, "removed": [2]}
//! ```

use std::path::Path;

use cantorkit::{ConstructionSpec, Error, Rational, Result};
use serde::{Deserialize, Serialize};

/// Stable preset names and the constructions they stand for.
pub const PRESETS: &[&str] = &["cantor", "c12", "c14", "c34", "svc:<m>", "ac", "ac-reflected", "ac5a", "ac5b"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum SpecDocument {
    Proportional { p: String },
    Power { m: u32 },
    Subdivision { n: u32, removed: Vec<u32> },
}

impl SpecDocument {
    pub fn into_spec(self) -> Result<ConstructionSpec> {
        match self {
            SpecDocument::Proportional { p } => {
                let p: Rational = p.parse().map_err(|e| match e {
                    Error::ZeroDenominator => Error::InvalidSpec(format!("proportion {p:?} has a zero denominator")),
                    other => other,
                })?;
                ConstructionSpec::proportional(p)
            }
            SpecDocument::Power { m } => ConstructionSpec::power(m),
            SpecDocument::Subdivision { n, removed } => {
                let mut sorted = removed.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != removed.len() {
                    return Err(Error::InvalidSpec("removed indices repeat".into()));
                }
                ConstructionSpec::subdivision(n, removed)
            }
        }
    }

    pub fn from_spec(spec: &ConstructionSpec) -> Self {
        match spec {
            ConstructionSpec::Proportional { p } => SpecDocument::Proportional { p: p.to_string() },
            ConstructionSpec::Power { m } => SpecDocument::Power { m: *m },
            ConstructionSpec::Subdivision { n, removed } => {
                SpecDocument::Subdivision { n: *n, removed: removed.iter().copied().collect() }
            }
        }
    }
}

fn parse_error(message: impl Into<String>, line: usize, column: usize) -> Error {
    Error::Parse { message: message.into(), line, column }
}

pub fn preset(name: &str) -> Result<ConstructionSpec> {
    let q = cantorkit::q;
    match name {
        "cantor" => ConstructionSpec::proportional(q(1, 3)),
        "c12" => ConstructionSpec::proportional(q(1, 2)),
        "c14" => ConstructionSpec::proportional(q(1, 4)),
        "c34" => ConstructionSpec::proportional(q(3, 4)),
        "ac" => ConstructionSpec::subdivision(4, [2]),
        "ac-reflected" => ConstructionSpec::subdivision(4, [1]),
        "ac5a" => ConstructionSpec::subdivision(5, [3]),
        "ac5b" => ConstructionSpec::subdivision(5, [2, 3]),
        _ => match name.strip_prefix("svc:") {
            Some(m) => {
                let m: u32 = m
                    .parse()
                    .map_err(|_| parse_error(format!("power base {m:?} is not a positive integer"), 1, 5))?;
                ConstructionSpec::power(m)
            }
            None => Err(parse_error(
                format!("unknown preset {name:?}; expected one of {}", PRESETS.join(", ")),
                1,
                1,
            )),
        },
    }
}

/// Parses a preset name or a JSON spec document.
pub fn parse_spec(input: &str) -> Result<ConstructionSpec> {
    let text = input.trim();
    if text.starts_with('{') {
        let doc: SpecDocument = serde_json::from_str(text).map_err(|e| {
            let message = e.to_string();
            let (line, column) = match e.line() {
                // Tagged-enum errors lose their position; point at the
                // offending field name instead.
                0 => locate_quoted_token(text, &message).unwrap_or((1, 1)),
                line => (line, e.column()),
            };
            parse_error(message, line, column)
        })?;
        doc.into_spec()
    } else {
        preset(text)
    }
}

/// Line and column (1-based) of the first `"name"` in `text`, where `name` is
/// the first backquoted token of `message`.
fn locate_quoted_token(text: &str, message: &str) -> Option<(usize, usize)> {
    let name = message.split('`').nth(1)?;
    let offset = text.find(&format!("\"{name}\""))?;
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    Some((line, column))
}

/// The canonical spec document for `spec`.
pub fn emit_spec(spec: &ConstructionSpec) -> String {
    serde_json::to_string(&SpecDocument::from_spec(spec)).expect("spec documents serialize")
}

/// Resolves a `--spec` argument: a preset, an inline document, or a file path.
pub fn load_spec(arg: &str) -> Result<ConstructionSpec> {
    let looks_inline = arg.trim_start().starts_with('{');
    if looks_inline || preset(arg).is_ok() || !Path::new(arg).is_file() {
        return parse_spec(arg);
    }
    let text = std::fs::read_to_string(arg).map_err(|e| parse_error(format!("cannot read {arg}: {e}"), 1, 1))?;
    parse_spec(&text)
}

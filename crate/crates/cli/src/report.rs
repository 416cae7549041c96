use std::fmt::{Debug, Display};

use serde_json::{json, Value};

pub const SCHEMA: &str = "autlin/v1";

/// One result, printable as text or as a JSON object.
pub struct Report {
    pub text: String,
    pub json: Value,
    /// False when a check ran to completion but did not hold; exit status 1.
    pub ok: bool,
}

impl Report {
    pub fn new(kind: &str, text: impl Into<String>, body: Value) -> Report {
        let mut json = json!({ "schema": SCHEMA, "kind": kind });
        if let (Some(obj), Value::Object(extra)) = (json.as_object_mut(), body) {
            obj.extend(extra);
        }
        Report { text: text.into(), json, ok: true }
    }

    pub fn with_ok(mut self, ok: bool) -> Report {
        self.ok = ok;
        self
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Malformed invocation; exit status 2.
    Usage(String),
    /// Unparsable literal; exit status 2.
    Syntax(String),
    /// The computation itself failed; exit status 1.
    Domain { kind: String, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Syntax(_) => 2,
            CliError::Domain { .. } => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        let (kind, message) = match self {
            CliError::Usage(m) => ("Usage", m.as_str()),
            CliError::Syntax(m) => ("SyntaxError", m.as_str()),
            CliError::Domain { kind, message } => (kind.as_str(), message.as_str()),
        };
        json!({ "schema": SCHEMA, "error": { "kind": kind, "message": message } })
    }
}

impl Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Syntax(m) => write!(f, "syntax error: {m}"),
            CliError::Domain { kind, message } => write!(f, "{kind}: {message}"),
        }
    }
}

/// Wraps a library error; the kind is the variant name of the innermost error.
pub fn domain<E: Debug + Display>(e: E) -> CliError {
    let debug = format!("{e:?}");
    let kind = innermost_variant(&debug);
    CliError::Domain { kind, message: e.to_string() }
}

fn innermost_variant(debug: &str) -> String {
    let mut rest = debug;
    loop {
        let end = rest.find(|c: char| !c.is_alphanumeric() && c != '_').unwrap_or(rest.len());
        let name = &rest[..end];
        // wrapper variants hold exactly one nested enum value
        match rest[end..].strip_prefix('(') {
            Some(inner) if matches!(name, "PlaneAut" | "Field" | "SuperRep" | "Nagao" | "CharLab") => rest = inner,
            _ => return name.to_string(),
        }
    }
}

pub fn syntax(e: impl Display) -> CliError {
    CliError::Syntax(e.to_string())
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

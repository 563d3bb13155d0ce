//! Line-oriented program text formats.
//!
//! Both formats start with a header line, take one statement per line,
//! treat opcodes case-insensitively and strip `#` comments.

mod logical;
mod physical;

use thiserror::Error;

pub use logical::{emit_logical, parse_logical, ParsedLogical};
pub use physical::{emit_physical, parse_physical, ParsedPhysical};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

/// Which format a source text is in, judged by its header.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProgramKind {
    Physical,
    Logical,
}

pub fn detect_kind(src: &str) -> Option<ProgramKind> {
    let (_, header) = statements(src).next()?;
    let first = header.first()?.to_ascii_uppercase();
    match first.as_str() {
        "QPU" => Some(ProgramKind::Physical),
        "LQ" => Some(ProgramKind::Logical),
        _ => None,
    }
}

/// Non-empty lines with comments removed, as `(line number, tokens)`.
pub(crate) fn statements(src: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    src.lines().enumerate().filter_map(|(i, raw)| {
        let code = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = code.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

pub(crate) fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

/// Parses `<prefix><int>`, e.g. `m3` or `q0`.
pub(crate) fn indexed(line: usize, token: Option<&&str>, prefix: char, what: &str) -> Result<usize, ParseError> {
    let Some(token) = token else {
        return err(line, format!("missing {what}"));
    };
    let mut chars = token.chars();
    match chars.next() {
        Some(c) if c.eq_ignore_ascii_case(&prefix) => chars
            .as_str()
            .parse()
            .or_else(|_| err(line, format!("invalid {what} `{token}`"))),
        _ => err(line, format!("expected {what} `{prefix}<n>`, found `{token}`")),
    }
}

pub(crate) fn real(line: usize, token: Option<&&str>, name: &str) -> Result<f64, ParseError> {
    let Some(token) = token else {
        return err(line, format!("missing parameter {name}"));
    };
    match token.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => err(line, format!("invalid value for {name}: `{token}`")),
    }
}

pub(crate) fn header(line: usize, tokens: &[&str], tag: &str, key: &str) -> Result<usize, ParseError> {
    let ok_tag = tokens.first().is_some_and(|t| t.eq_ignore_ascii_case(tag));
    let value = tokens
        .get(1)
        .and_then(|t| t.strip_prefix(key))
        .and_then(|t| t.strip_prefix('='))
        .and_then(|v| v.parse().ok());
    match (ok_tag, value, tokens.len()) {
        (true, Some(v), 2) => Ok(v),
        _ => err(line, format!("expected header `{tag} {key}=<int>`")),
    }
}

pub(crate) fn no_more(line: usize, tokens: &[&str], used: usize) -> Result<(), ParseError> {
    match tokens.get(used) {
        Some(extra) => err(line, format!("unexpected operand `{extra}`")),
        None => Ok(()),
    }
}

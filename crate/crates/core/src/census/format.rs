//! Plain-text matroid files.
//!
//! ```text
//! # the rank-3 whirl
//! n=6 r=3
//! 1 2 4
//! 2 3 5
//! 1 3 6
//! ```
//!
//! The header gives the ground set size and rank; every later non-blank line
//! is one non-basis as ascending 1-indexed elements. `#` starts a comment.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::matroid::SparsePavingMatroid;
use crate::subset::ElementSet;

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn header_field(token: Option<&str>, key: &str, line: usize) -> Result<usize> {
    let token = token.ok_or_else(|| parse_error(line, format!("missing `{key}=`")))?;
    let value = token
        .strip_prefix(key)
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| parse_error(line, format!("expected `{key}=<int>`, found `{token}`")))?;
    value
        .parse()
        .map_err(|_| parse_error(line, format!("`{value}` is not a non-negative integer")))
}

pub fn parse_matroid(text: &str) -> Result<SparsePavingMatroid> {
    let mut header: Option<(usize, usize)> = None;
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((n, r)) = header else {
            let mut tokens = content.split_whitespace();
            let n = header_field(tokens.next(), "n", line_no)?;
            let r = header_field(tokens.next(), "r", line_no)?;
            if let Some(extra) = tokens.next() {
                return Err(parse_error(
                    line_no,
                    format!("unexpected `{extra}` in header"),
                ));
            }
            header = Some((n, r));
            continue;
        };
        let mut elements = Vec::new();
        for token in content.split_whitespace() {
            let e: u32 = token
                .parse()
                .map_err(|_| parse_error(line_no, format!("`{token}` is not an element")))?;
            if e == 0 || e as usize > n {
                return Err(parse_error(line_no, format!("element {e} outside 1..={n}")));
            }
            if elements.last().is_some_and(|&last| last >= e) {
                return Err(parse_error(line_no, "elements must be strictly ascending"));
            }
            elements.push(e);
        }
        if elements.len() != r {
            return Err(parse_error(
                line_no,
                format!("non-basis has {} elements, rank is {r}", elements.len()),
            ));
        }
        lines.push(ElementSet::from_elements(elements)?);
    }
    let (n, r) = header.ok_or_else(|| parse_error(0, "missing `n=<int> r=<int>` header"))?;
    SparsePavingMatroid::new(n, r, lines)
}

/// The canonical text form: header, then non-bases in bitmask order.
pub fn format_matroid(m: &SparsePavingMatroid) -> String {
    let mut out = format!("n={} r={}\n", m.n(), m.rank());
    for c in m.nonbases() {
        let elements: Vec<String> = c.iter().map(|e| e.to_string()).collect();
        let _ = writeln!(out, "{}", elements.join(" "));
    }
    out
}

pub fn read_matroid(path: impl AsRef<Path>) -> Result<SparsePavingMatroid> {
    parse_matroid(&std::fs::read_to_string(path)?)
}

pub fn write_matroid(path: impl AsRef<Path>, m: &SparsePavingMatroid) -> Result<()> {
    std::fs::write(path, format_matroid(m))?;
    Ok(())
}

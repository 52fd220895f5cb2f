//! Reading polyominoes from text.
//!
//! Two formats are accepted. The cell list has one cell per line, `i j`,
//! giving the lower-left corner; lines starting with `#` are comments. The
//! JSON document is `{"cells": [[i, j], ...], "meta": ...}`. A document whose
//! first non-comment byte is `{` is read as JSON.

use std::collections::BTreeSet;

use serde::Deserialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("the input lists no cells")]
    Empty,
}

/// A cell listed more than once; only the first occurrence is kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Duplicate {
    pub line: usize,
    pub cell: (i64, i64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Input {
    /// Distinct cells in the order they first appear.
    pub cells: Vec<(i64, i64)>,
    pub duplicates: Vec<Duplicate>,
    pub meta: Option<serde_json::Value>,
    /// `sha256:` followed by the hex digest of the raw input.
    pub digest: String,
}

#[derive(Deserialize)]
struct Document {
    cells: Vec<(i64, i64)>,
    #[serde(default)]
    meta: Option<serde_json::Value>,
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{:x}", Sha256::digest(bytes))
}

fn is_comment(line: &str) -> bool {
    line.trim_start().starts_with('#')
}

pub fn parse_input(text: &str) -> Result<Input, InputError> {
    let first = text.lines().enumerate().find(|(_, l)| !l.trim().is_empty() && !is_comment(l));
    let (listed, meta) = match first {
        Some((k, l)) if l.trim_start().starts_with('{') => parse_document(text, k)?,
        _ => (parse_cell_list(text)?, None),
    };
    if listed.is_empty() {
        return Err(InputError::Empty);
    }
    let mut seen = BTreeSet::new();
    let mut cells = Vec::new();
    let mut duplicates = Vec::new();
    for (line, cell) in listed {
        if seen.insert(cell) {
            cells.push(cell);
        } else {
            duplicates.push(Duplicate { line, cell });
        }
    }
    Ok(Input { cells, duplicates, meta, digest: digest(text.as_bytes()) })
}

/// Cells with the line they came from.
fn parse_cell_list(text: &str) -> Result<Vec<(usize, (i64, i64))>, InputError> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        if raw.trim().is_empty() || is_comment(raw) {
            continue;
        }
        let fields: Vec<&str> = raw.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(InputError::Syntax {
                line,
                message: format!("expected two integers `i j`, found {} fields", fields.len()),
            });
        }
        let num = |s: &str| {
            s.parse::<i64>().map_err(|_| InputError::Syntax { line, message: format!("`{s}` is not an integer") })
        };
        out.push((line, (num(fields[0])?, num(fields[1])?)));
    }
    Ok(out)
}

/// JSON starting at zero-based line `start`; earlier lines are comments.
fn parse_document(text: &str, start: usize) -> Result<(Vec<(usize, (i64, i64))>, Option<serde_json::Value>), InputError> {
    let body: String = text.lines().skip(start).collect::<Vec<_>>().join("\n");
    let doc: Document = serde_json::from_str(&body).map_err(|e| InputError::Syntax {
        line: start + e.line().max(1),
        message: e.to_string(),
    })?;
    Ok((doc.cells.into_iter().map(|c| (start + 1, c)).collect(), doc.meta))
}

/// The cell-list text for `cells`, one per line, after optional comment lines.
pub fn format_cell_list(comments: &[String], cells: impl IntoIterator<Item = (i64, i64)>) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    for (i, j) in cells {
        out.push_str(&format!("{i} {j}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cell_list_with_comments_and_duplicates() {
        let input = parse_input("# ring\n0 0\n1   0\n\n0 0\n  # indented comment\n-2\t5\n").unwrap();
        assert_eq!(input.cells, vec![(0, 0), (1, 0), (-2, 5)]);
        assert_eq!(input.duplicates, vec![Duplicate { line: 5, cell: (0, 0) }]);
        assert!(input.meta.is_none());
        assert!(input.digest.starts_with("sha256:"));
        assert_eq!(input.digest.len(), "sha256:".len() + 64);
    }

    #[test]
    fn syntax_errors_carry_the_line() {
        assert_eq!(
            parse_input("0 0\n1 x\n"),
            Err(InputError::Syntax { line: 2, message: "`x` is not an integer".into() })
        );
        assert!(matches!(parse_input("# c\n0 0 0\n"), Err(InputError::Syntax { line: 2, .. })));
        assert!(matches!(parse_input("0\n"), Err(InputError::Syntax { line: 1, .. })));
    }

    #[test]
    fn empty_inputs() {
        assert_eq!(parse_input(""), Err(InputError::Empty));
        assert_eq!(parse_input("# only a comment\n\n"), Err(InputError::Empty));
        assert_eq!(parse_input("{\"cells\": []}"), Err(InputError::Empty));
    }

    #[test]
    fn json_document() {
        let text = "# comment first\n{\"cells\": [[0, 0], [1, 0], [1, 0]], \"meta\": {\"name\": \"pair\"}}\n";
        let input = parse_input(text).unwrap();
        assert_eq!(input.cells, vec![(0, 0), (1, 0)]);
        assert_eq!(input.duplicates.len(), 1);
        assert_eq!(input.meta.unwrap()["name"], "pair");
        match parse_input("{\"cells\": [[0, 0],\n [1]]}") {
            Err(InputError::Syntax { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn cell_list_round_trip() {
        let cells = vec![(3, -1), (0, 0), (10, 7)];
        let text = format_cell_list(&["made up".into()], cells.clone());
        assert_eq!(parse_input(&text).unwrap().cells, cells);
    }
}

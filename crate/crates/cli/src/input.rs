//! Arrangement ingestion: JSON files with rational entries, plus the
//! `braid-N` / `boolean-N` shorthands.

use std::str::FromStr;

use serde::Deserialize;

use chambers::rational::Rational;
use chambers::Arrangement;

#[derive(Debug)]
pub enum InputError {
    Io {
        path: String,
        message: String,
    },
    /// Malformed JSON, anchored to a line and column.
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    BadEntry {
        row: usize,
        entry: usize,
        text: String,
    },
    BadShorthand(String),
    Core(chambers::Error),
}

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InputError::Io { path, message } => write!(f, "cannot read {path}: {message}"),
            InputError::Parse {
                path,
                line,
                column,
                message,
            } => write!(f, "{path}:{line}:{column}: {message}"),
            InputError::BadEntry { row, entry, text } => {
                write!(f, "row {row}, entry {entry}: {text:?} is not an integer or p/q")
            }
            InputError::BadShorthand(name) => {
                write!(f, "{name:?} is not braid-N, boolean-N or a readable file")
            }
            InputError::Core(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Deserialize)]
struct ArrangementFile {
    dim: usize,
    hyperplanes: Vec<Vec<Entry>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Int(i64),
    Text(String),
}

fn parse_entry(entry: &Entry, row: usize, index: usize) -> Result<Rational, InputError> {
    match entry {
        Entry::Int(v) => Ok(Rational::from_integer((*v).into())),
        Entry::Text(text) => {
            Rational::from_str(text.trim()).map_err(|_| InputError::BadEntry {
                row,
                entry: index,
                text: text.clone(),
            })
        }
    }
}

fn builtin(name: &str) -> Option<Result<Arrangement, InputError>> {
    let (kind, count) = name.split_once('-')?;
    let count: usize = count.parse().ok()?;
    match kind {
        "braid" if count >= 2 => Some(Ok(Arrangement::braid(count))),
        "boolean" if count >= 1 => Some(Ok(Arrangement::boolean(count))),
        "braid" | "boolean" => Some(Err(InputError::BadShorthand(name.to_string()))),
        _ => None,
    }
}

/// Resolves an arrangement argument: a builtin shorthand or a JSON file of
/// the form `{"dim": 3, "hyperplanes": [["1", "-1", "0"], …]}`.
pub fn parse_arrangement(argument: &str) -> Result<Arrangement, InputError> {
    if let Some(result) = builtin(argument) {
        return result;
    }
    let text = std::fs::read_to_string(argument).map_err(|e| {
        if std::path::Path::new(argument).exists() {
            InputError::Io {
                path: argument.to_string(),
                message: e.to_string(),
            }
        } else {
            InputError::BadShorthand(argument.to_string())
        }
    })?;
    parse_arrangement_text(&text, argument)
}

pub fn parse_arrangement_text(text: &str, path: &str) -> Result<Arrangement, InputError> {
    let file: ArrangementFile =
        serde_json::from_str(text).map_err(|e| InputError::Parse {
            path: path.to_string(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
    let mut normals = Vec::with_capacity(file.hyperplanes.len());
    for (row, entries) in file.hyperplanes.iter().enumerate() {
        let mut normal = Vec::with_capacity(entries.len());
        for (index, entry) in entries.iter().enumerate() {
            normal.push(parse_entry(entry, row, index)?);
        }
        normals.push(normal);
    }
    Arrangement::new(file.dim, normals).map_err(InputError::Core)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins() {
        assert_eq!(parse_arrangement("braid-3").unwrap().len(), 3);
        assert_eq!(parse_arrangement("boolean-4").unwrap().len(), 4);
        assert!(matches!(
            parse_arrangement("braid-1"),
            Err(InputError::BadShorthand(_))
        ));
        assert!(matches!(
            parse_arrangement("no-such-file"),
            Err(InputError::BadShorthand(_))
        ));
    }

    #[test]
    fn json_text_with_rationals() {
        let arr = parse_arrangement_text(
            r#"{ "dim": 2, "hyperplanes": [["1/2", "-1/3"], [0, 1]] }"#,
            "inline",
        )
        .unwrap();
        assert_eq!(arr.len(), 2);
    }

    #[test]
    fn parse_errors_carry_location() {
        let err = parse_arrangement_text("{ \"dim\": 2,\n  broken", "inline").unwrap_err();
        match err {
            InputError::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_entries_are_rejected() {
        let err = parse_arrangement_text(
            r#"{ "dim": 1, "hyperplanes": [["0.5"]] }"#,
            "inline",
        )
        .unwrap_err();
        assert!(matches!(err, InputError::BadEntry { row: 0, entry: 0, .. }));
    }

    #[test]
    fn duplicates_surface_with_both_rows() {
        let err = parse_arrangement_text(
            r#"{ "dim": 2, "hyperplanes": [["1", "-1"], ["-2", "2"]] }"#,
            "inline",
        )
        .unwrap_err();
        match err {
            InputError::Core(chambers::Error::DuplicateHyperplane { first, second }) => {
                assert_eq!((first, second), (0, 1));
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}

//! Matrix input: whitespace-separated rows, or a JSON object `{"rows": [...]}`.

use std::str::FromStr;

use ckbundle_core::{BigInt, IntMatrix};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("line {line}: expected {expected} entries, found {found}")]
    Ragged {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: `{token}` is not an integer")]
    BadToken { line: usize, token: String },
    #[error("invalid JSON matrix: {0}")]
    Json(String),
}

impl ParseError {
    /// 1-based line (text input) or row (JSON input) the error refers to.
    pub fn line(&self) -> Option<usize> {
        match self {
            ParseError::Ragged { line, .. } | ParseError::BadToken { line, .. } => Some(*line),
            _ => None,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RowsObject {
    rows: Vec<Vec<serde_json::Number>>,
}

/// Parses either input format. Text input skips blank lines but reports
/// positions against the original line numbering.
pub fn parse_matrix(text: &str) -> Result<IntMatrix, ParseError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_text(text)
    }
}

fn parse_text(text: &str) -> Result<IntMatrix, ParseError> {
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        let row = tokens
            .iter()
            .map(|t| parse_int(t, line))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(ParseError::Ragged {
                    line,
                    expected: first.len(),
                    found: row.len(),
                });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(ParseError::Empty);
    }
    Ok(IntMatrix::from_rows(rows).expect("rows checked"))
}

fn parse_int(token: &str, line: usize) -> Result<BigInt, ParseError> {
    let (negative, digits) = match token.as_bytes().first() {
        Some(b'-') => (true, &token[1..]),
        Some(b'+') => (false, &token[1..]),
        _ => (false, token),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::BadToken {
            line,
            token: token.to_string(),
        });
    }
    let v = BigInt::from_str(digits).expect("decimal digits");
    Ok(if negative { -v } else { v })
}

fn parse_json(text: &str) -> Result<IntMatrix, ParseError> {
    let obj: RowsObject =
        serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
    if obj.rows.is_empty() || obj.rows[0].is_empty() {
        return Err(ParseError::Empty);
    }
    let width = obj.rows[0].len();
    let mut rows = Vec::with_capacity(obj.rows.len());
    for (idx, row) in obj.rows.iter().enumerate() {
        let line = idx + 1;
        if row.len() != width {
            return Err(ParseError::Ragged {
                line,
                expected: width,
                found: row.len(),
            });
        }
        rows.push(
            row.iter()
                .map(|n| {
                    let s = n.to_string();
                    BigInt::from_str(&s).map_err(|_| ParseError::BadToken { line, token: s })
                })
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    Ok(IntMatrix::from_rows(rows).expect("rows checked"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows.iter().map(|r| r.iter().copied())).unwrap()
    }

    #[test]
    fn text_format() {
        assert_eq!(parse_matrix("5 2\n2 1\n").unwrap(), m(&[&[5, 2], &[2, 1]]));
        assert_eq!(
            parse_matrix("\n  -3\t+4 \n\n1 0").unwrap(),
            m(&[&[-3, 4], &[1, 0]])
        );
        assert_eq!(parse_matrix("1 2 3\n").unwrap(), m(&[&[1, 2, 3]]));
        let big = "123456789012345678901234567890\n";
        assert_eq!(parse_matrix(big).unwrap().get(0, 0).to_string(), big.trim());
    }

    #[test]
    fn json_format() {
        assert_eq!(
            parse_matrix(r#"{"rows": [[1,2],[0,1]]}"#).unwrap(),
            m(&[&[1, 2], &[0, 1]])
        );
        let big = r#"{"rows": [[-98765432109876543210]]}"#;
        assert_eq!(
            parse_matrix(big).unwrap().get(0, 0).to_string(),
            "-98765432109876543210"
        );
    }

    #[test]
    fn errors() {
        assert_eq!(
            parse_matrix("1 2\n3\n"),
            Err(ParseError::Ragged {
                line: 2,
                expected: 2,
                found: 1
            })
        );
        assert_eq!(parse_matrix("1 2\n3\n").unwrap_err().line(), Some(2));
        assert_eq!(parse_matrix(""), Err(ParseError::Empty));
        assert_eq!(parse_matrix(" \n\n"), Err(ParseError::Empty));
        for bad in ["1 x\n", "1.5 2\n", "1 --2\n", "+-1\n", "+\n"] {
            assert!(
                matches!(parse_matrix(bad), Err(ParseError::BadToken { line: 1, .. })),
                "{bad}"
            );
        }
        assert_eq!(
            parse_matrix(r#"{"rows": [[1,2],[3]]}"#).unwrap_err().line(),
            Some(2)
        );
        assert!(matches!(
            parse_matrix(r#"{"rows": [[1.5]]}"#),
            Err(ParseError::BadToken { .. })
        ));
        assert_eq!(parse_matrix(r#"{"rows": []}"#), Err(ParseError::Empty));
        assert!(matches!(
            parse_matrix(r#"{"cols": []}"#),
            Err(ParseError::Json(_))
        ));
        assert!(matches!(parse_matrix("{"), Err(ParseError::Json(_))));
    }
}

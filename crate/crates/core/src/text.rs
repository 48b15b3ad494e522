//! Plain-text ideal format.
//!
//! ```text
//! # comments start with '#'
//! n=3
//! 2 0 0
//! 0 2 1
//! ```
//!
//! The first non-empty line is the header `n=<nvars>`; every following
//! non-empty line is one exponent vector of length `n`. The same format is
//! used for generator orders, in which case the row order is significant.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

/// A parsed ideal together with whether the input listed non-minimal or
/// repeated rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedIdeal {
    pub ideal: MonomialIdeal,
    pub non_minimal_input: bool,
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parse the rows of the format in their given order, without minimalizing.
pub fn parse_monomials(text: &str) -> Result<(usize, Vec<Monomial>)> {
    let mut nvars: Option<usize> = None;
    let mut rows = Vec::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw_line.find('#') {
            Some(p) => &raw_line[..p],
            None => raw_line,
        };
        if line.trim().is_empty() {
            continue;
        }
        let Some(n) = nvars else {
            let start = line.len() - line.trim_start().len();
            let header = line.trim();
            let value = header
                .strip_prefix("n=")
                .ok_or_else(|| parse_error(line_no, start + 1, "expected header `n=<nvars>`"))?;
            let n: usize = value
                .trim()
                .parse()
                .map_err(|_| parse_error(line_no, start + 3, format!("invalid variable count `{value}`")))?;
            if n == 0 {
                return Err(parse_error(line_no, start + 3, "variable count must be positive"));
            }
            nvars = Some(n);
            continue;
        };
        let mut exps = Vec::with_capacity(n);
        let mut offset = 0;
        for token in line.split_whitespace() {
            let column = line[offset..].find(token).map(|p| p + offset).unwrap_or(offset) + 1;
            offset = column - 1 + token.len();
            let e: u32 = token.parse().map_err(|_| {
                if token.starts_with('-') {
                    parse_error(line_no, column, format!("negative exponent `{token}`"))
                } else {
                    parse_error(line_no, column, format!("invalid exponent `{token}`"))
                }
            })?;
            exps.push(e);
        }
        if exps.len() != n {
            return Err(parse_error(
                line_no,
                1,
                format!("expected {n} exponents, found {}", exps.len()),
            ));
        }
        let m = Monomial::new(exps).map_err(|_| parse_error(line_no, 1, "degree overflows u32"))?;
        rows.push(m);
    }
    let nvars = nvars.ok_or_else(|| parse_error(1, 1, "missing header `n=<nvars>`"))?;
    Ok((nvars, rows))
}

pub fn parse_ideal(text: &str) -> Result<ParsedIdeal> {
    let (nvars, rows) = parse_monomials(text)?;
    let count = rows.len();
    let ideal = MonomialIdeal::minimalize(nvars, rows)?;
    Ok(ParsedIdeal {
        non_minimal_input: ideal.len() != count,
        ideal,
    })
}

/// Write monomials in the given order.
pub fn write_monomials(nvars: usize, rows: &[Monomial]) -> String {
    let mut out = format!("n={nvars}\n");
    for m in rows {
        let line = m
            .exponents()
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(" ");
        writeln!(out, "{line}").expect("writing to a String");
    }
    out
}

/// Serialize an ideal with its generators in canonical order.
pub fn serialize_ideal(ideal: &MonomialIdeal) -> String {
    write_monomials(ideal.nvars(), ideal.gens())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::ideal;

    #[test]
    fn parses_simple_ideal() {
        let p = parse_ideal("n=2\n3 0\n0 3\n").unwrap();
        assert_eq!(p.ideal, ideal(2, &[&[3, 0], &[0, 3]]));
        assert!(!p.non_minimal_input);
    }

    #[test]
    fn flags_non_minimal_input() {
        let p = parse_ideal("n=2\n2 0\n3 0\n").unwrap();
        assert_eq!(p.ideal, ideal(2, &[&[2, 0]]));
        assert!(p.non_minimal_input);
        assert!(parse_ideal("n=1\n1\n1\n").unwrap().non_minimal_input);
    }

    #[test]
    fn comments_and_blank_lines() {
        let p = parse_ideal("# header next\n\n  n=3  # three vars\n1 0 0 # x1\n\n0 1 1\n").unwrap();
        assert_eq!(p.ideal, ideal(3, &[&[1, 0, 0], &[0, 1, 1]]));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_ideal("m=2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, column: 1, .. }));
        let e = parse_ideal("n=2\n1 -2\n").unwrap_err();
        match e {
            Error::Parse { line, column, message } => {
                assert_eq!((line, column), (2, 3));
                assert!(message.contains("negative"));
            }
            other => panic!("unexpected {other:?}"),
        }
        let e = parse_ideal("n=2\n1 2 3\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse_ideal("n=2\n1 x\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, column: 3, .. }));
        assert!(matches!(parse_ideal("").unwrap_err(), Error::Parse { .. }));
        assert!(matches!(parse_ideal("n=0\n").unwrap_err(), Error::Parse { .. }));
    }

    #[test]
    fn serialize_is_canonical() {
        let i = ideal(2, &[&[0, 3], &[3, 0], &[1, 1]]);
        assert_eq!(serialize_ideal(&i), "n=2\n1 1\n3 0\n0 3\n");
        assert_eq!(parse_ideal(&serialize_ideal(&i)).unwrap().ideal, i);
    }
}

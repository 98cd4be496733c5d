//! Text formats: rational tokens, series literals, and the two matrix
//! file formats.
//!
//! Series literals follow a small LL(1) grammar:
//!
//! ```text
//! series   := [sign] term { sign term }
//! term     := coeff [ "*" monomial ] | monomial
//! monomial := "t" [ "^" exponent ]
//! coeff    := integer [ "/" positive-integer ]
//! exponent := signed-integer | "(" signed-integer [ "/" positive-integer ] ")"
//! sign     := "+" | "-"
//! ```
//!
//! Whitespace between tokens is ignored. The Unicode minus sign is
//! accepted wherever "-" is, but never emitted. Fractional exponents must
//! be parenthesized: `t^(1/2)`. `"0"` parses to the zero series.
//!
//! Matrix files are line-oriented UTF-8; blank lines and lines starting
//! with `#` are skipped. `.tmat` rows are whitespace-separated rational
//! tokens; `.pmat` rows are `;`-separated series literals (series contain
//! `+`, `-`, and spaces, so whitespace cannot separate them).
//!
//! Formatting is canonical: `parse_series(format_series(s)) == s`, and
//! formatting a parsed series reproduces the canonical text byte for
//! byte.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::puiseux::Term;
use crate::trop::TropicalMatrix;
use crate::{Rat, Series, SeriesMat, TropMat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("byte {pos}: expected {expected}, found {found}")]
    Syntax {
        pos: usize,
        expected: &'static str,
        found: String,
    },
    #[error("byte {pos}: denominator is zero")]
    ZeroDenominator { pos: usize },
    #[error("line {line}: row has {found} entries, expected {expected}")]
    RaggedRow {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}, column {col}: {source}")]
    Token {
        line: usize,
        col: usize,
        source: Box<ParseError>,
    },
    #[error("row {row}, column {col}: {source}")]
    Cell {
        row: usize,
        col: usize,
        source: Box<ParseError>,
    },
    #[error("no matrix rows found")]
    EmptyMatrix,
}

struct Scanner<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner { text, pos: 0 }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn found(&self) -> String {
        match self.peek() {
            Some(c) => format!("'{c}'"),
            None => "end of input".to_string(),
        }
    }

    fn error(&self, expected: &'static str) -> ParseError {
        ParseError::Syntax {
            pos: self.pos,
            expected,
            found: self.found(),
        }
    }

    /// Consumes a minus sign, accepting the Unicode minus as a synonym.
    fn eat_minus(&mut self) -> bool {
        if matches!(self.peek(), Some('-') | Some('\u{2212}')) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        if self.pos == start {
            return Err(self.error("a digit"));
        }
        Ok(
            BigInt::parse_bytes(&self.text.as_bytes()[start..self.pos], 10)
                .expect("digit run parses"),
        )
    }

    /// integer with optional sign
    fn signed_integer(&mut self) -> Result<BigInt, ParseError> {
        let negative = if self.eat_minus() {
            true
        } else {
            if self.peek() == Some('+') {
                self.bump();
            }
            false
        };
        let mag = self.digits()?;
        Ok(if negative { -mag } else { mag })
    }

    /// `numerator [ "/" denominator ]` where the numerator is already parsed.
    fn fraction_tail(&mut self, numerator: BigInt) -> Result<Rat, ParseError> {
        self.skip_ws();
        if self.peek() == Some('/') {
            self.bump();
            self.skip_ws();
            let den_pos = self.pos;
            let den = self.digits()?;
            if den.is_zero() {
                return Err(ParseError::ZeroDenominator { pos: den_pos });
            }
            Ok(Rat::new(numerator, den))
        } else {
            Ok(Rat::from_integer(numerator))
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.peek().is_none()
    }
}

/// Parses a rational token: `integer [ "/" positive-integer ]`, with an
/// optional leading sign. The result is in lowest terms with a positive
/// denominator.
pub fn parse_rational(text: &str) -> Result<Rat, ParseError> {
    let mut p = Scanner::new(text);
    p.skip_ws();
    let numerator = p.signed_integer()?;
    let value = p.fraction_tail(numerator)?;
    if !p.at_end() {
        return Err(p.error("end of input"));
    }
    Ok(value)
}

/// Parses a series literal into canonical form.
///
/// ```
/// use tropkap::parse::{format_series, parse_series};
///
/// let s = parse_series("-1 - t + 2*t^(1/2)").unwrap();
/// assert_eq!(format_series(&s), "-1 + 2*t^(1/2) - t");
/// ```
pub fn parse_series(text: &str) -> Result<Series, ParseError> {
    let mut p = Scanner::new(text);
    let mut terms: Vec<(Rat, Rat)> = Vec::new();

    p.skip_ws();
    let mut negative = if p.eat_minus() {
        true
    } else {
        if p.peek() == Some('+') {
            p.bump();
        }
        false
    };

    loop {
        let (coeff, exp) = parse_term(&mut p)?;
        terms.push((if negative { -coeff } else { coeff }, exp));

        p.skip_ws();
        match p.peek() {
            None => break,
            Some('+') => {
                p.bump();
                negative = false;
            }
            Some('-') | Some('\u{2212}') => {
                p.bump();
                negative = true;
            }
            Some(_) => return Err(p.error("'+', '-', or end of input")),
        }
    }
    Ok(Series::from_terms(terms))
}

/// One unsigned term: `coeff [ "*" monomial ] | monomial`.
fn parse_term(p: &mut Scanner) -> Result<(Rat, Rat), ParseError> {
    p.skip_ws();
    match p.peek() {
        Some('t') => {
            let exp = parse_monomial(p)?;
            Ok((Rat::one(), exp))
        }
        Some(c) if c.is_ascii_digit() => {
            let numerator = p.digits()?;
            let coeff = p.fraction_tail(numerator)?;
            p.skip_ws();
            if p.peek() == Some('*') {
                p.bump();
                p.skip_ws();
                if p.peek() != Some('t') {
                    return Err(p.error("'t'"));
                }
                let exp = parse_monomial(p)?;
                Ok((coeff, exp))
            } else {
                Ok((coeff, Rat::zero()))
            }
        }
        _ => Err(p.error("a coefficient or 't'")),
    }
}

/// `"t" [ "^" exponent ]`; the caller has verified the next char is `t`.
fn parse_monomial(p: &mut Scanner) -> Result<Rat, ParseError> {
    p.bump(); // 't'
    p.skip_ws();
    if p.peek() != Some('^') {
        return Ok(Rat::one());
    }
    p.bump();
    p.skip_ws();
    if p.peek() == Some('(') {
        p.bump();
        p.skip_ws();
        let numerator = p.signed_integer()?;
        let exp = p.fraction_tail(numerator)?;
        p.skip_ws();
        if p.peek() != Some(')') {
            return Err(p.error("')'"));
        }
        p.bump();
        Ok(exp)
    } else {
        Ok(Rat::from_integer(p.signed_integer()?))
    }
}

/// Canonical text for a rational: `n` or `n/d` in lowest terms.
pub fn format_rational(value: &Rat) -> String {
    value.to_string()
}

/// Canonical text for a series; inverse of [`parse_series`].
pub fn format_series(series: &Series) -> String {
    if series.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, Term { coeff, exp }) in series.terms().iter().enumerate() {
        let negative = coeff.is_negative();
        if k == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let magnitude = coeff.abs();
        let monomial = format_monomial(exp);
        match monomial {
            None => out.push_str(&magnitude.to_string()),
            Some(m) => {
                if magnitude.is_one() {
                    out.push_str(&m);
                } else {
                    out.push_str(&magnitude.to_string());
                    out.push('*');
                    out.push_str(&m);
                }
            }
        }
    }
    out
}

fn format_monomial(exp: &Rat) -> Option<String> {
    if exp.is_zero() {
        None
    } else if exp.is_one() {
        Some("t".to_string())
    } else if exp.is_integer() {
        Some(format!("t^{exp}"))
    } else {
        Some(format!("t^({exp})"))
    }
}

/// Parses a `.tmat` body: one row per line, whitespace-separated rational
/// tokens, `#` comment lines and blank lines skipped.
pub fn parse_tropical_matrix(text: &str) -> Result<TropMat, ParseError> {
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut row = Vec::new();
        for token in raw.split_whitespace() {
            let col = token.as_ptr() as usize - raw.as_ptr() as usize + 1;
            let value = parse_rational(token).map_err(|e| ParseError::Token {
                line: line_no,
                col,
                source: Box::new(e),
            })?;
            row.push(value);
        }
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(ParseError::RaggedRow {
                    line: line_no,
                    expected: first.len(),
                    found: row.len(),
                });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(ParseError::EmptyMatrix);
    }
    Ok(TropicalMatrix::from_rows(rows))
}

/// Parses a `.pmat` body: one row per line, `;`-separated series
/// literals, `#` comment lines and blank lines skipped.
pub fn parse_puiseux_matrix(text: &str) -> Result<SeriesMat, ParseError> {
    let mut rows: Vec<Vec<Series>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let row_no = rows.len() + 1;
        let mut row = Vec::new();
        for (cell_idx, cell) in raw.split(';').enumerate() {
            let series = parse_series(cell).map_err(|e| ParseError::Cell {
                row: row_no,
                col: cell_idx + 1,
                source: Box::new(e),
            })?;
            row.push(series);
        }
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(ParseError::RaggedRow {
                    line: line_no,
                    expected: first.len(),
                    found: row.len(),
                });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(ParseError::EmptyMatrix);
    }
    Ok(SeriesMat::from_rows(rows))
}

/// Canonical `.tmat` body (no comments), one row per line.
pub fn format_tropical_matrix(m: &TropMat) -> String {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| format_rational(m.get(i, j)))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// Canonical `.pmat` body (no comments), one row per line.
pub fn format_puiseux_matrix(m: &SeriesMat) -> String {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| format_series(m.get(i, j)))
                .collect::<Vec<_>>()
                .join("; ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

//! Text formats: DIMACS CNF and the line-oriented native format.
//!
//! The native format holds one clause per line. Tokens are nonzero signed
//! integers, `#t` or `#f`; a blank line is the null clause.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{EmitError, ParseError};
use crate::formula::{Clause, Formula, Literal, Token};

/// A parsed formula plus parser diagnostics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parsed {
    pub formula: Formula,
    /// Exact-duplicate clauses dropped while building the formula.
    pub duplicates_collapsed: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FileFormat {
    Dimacs,
    Native,
}

impl FileFormat {
    /// `.cnf` is DIMACS, `.scnf` is native.
    pub fn from_path(path: &Path) -> Option<FileFormat> {
        match path.extension()?.to_str()? {
            "cnf" | "dimacs" => Some(FileFormat::Dimacs),
            "scnf" => Some(FileFormat::Native),
            _ => None,
        }
    }

    pub fn parse(self, text: &str) -> Result<Parsed, ParseError> {
        match self {
            FileFormat::Dimacs => parse_dimacs_with_diagnostics(text),
            FileFormat::Native => parse_native_with_diagnostics(text),
        }
    }

    pub fn emit(self, f: &Formula) -> Result<String, EmitError> {
        match self {
            FileFormat::Dimacs => emit_dimacs(f),
            FileFormat::Native => Ok(emit_native(f)),
        }
    }
}

pub fn parse_dimacs(text: &str) -> Result<Formula, ParseError> {
    parse_dimacs_with_diagnostics(text).map(|p| p.formula)
}

pub fn parse_dimacs_with_diagnostics(text: &str) -> Result<Parsed, ParseError> {
    let mut header: Option<(u64, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    // Line where the unterminated clause started.
    let mut open_since: Option<usize> = None;
    let mut last_line = 0;

    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        last_line = lineno;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed == "%" {
            break;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(ParseError::at(lineno, "duplicate header"));
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            let parsed = match fields.as_slice() {
                ["p", "cnf", v, c] => v.parse::<u64>().ok().zip(c.parse::<usize>().ok()),
                _ => None,
            };
            header = Some(parsed.ok_or_else(|| ParseError::at(lineno, "malformed header, expected `p cnf <nvars> <nclauses>`"))?);
            continue;
        }
        let Some((nvars, _)) = header else {
            return Err(ParseError::at(lineno, "clause before `p cnf` header"));
        };
        for tok in trimmed.split_whitespace() {
            let value: i64 = tok
                .parse()
                .map_err(|_| ParseError::at(lineno, format!("invalid literal `{tok}`")))?;
            if value == 0 {
                clauses.push(Clause::from_literals(current.drain(..)));
                open_since = None;
                continue;
            }
            if value.unsigned_abs() > nvars {
                return Err(ParseError::at(lineno, format!("literal {value} exceeds declared variable count {nvars}")));
            }
            let lit = Literal::from_dimacs(value)
                .ok_or_else(|| ParseError::at(lineno, format!("literal {value} out of range")))?;
            current.push(lit);
            open_since.get_or_insert(lineno);
        }
    }

    let Some((_, nclauses)) = header else {
        return Err(ParseError::at(last_line.max(1), "missing `p cnf` header"));
    };
    if let Some(line) = open_since {
        return Err(ParseError::at(line, "clause not terminated by 0"));
    }
    if clauses.len() != nclauses {
        return Err(ParseError::at(
            last_line.max(1),
            format!("header declares {nclauses} clauses but {} were read", clauses.len()),
        ));
    }
    let (formula, duplicates_collapsed) = Formula::with_duplicate_count(clauses);
    Ok(Parsed { formula, duplicates_collapsed })
}

/// DIMACS text with `nvars` set to the largest variable index.
pub fn emit_dimacs(f: &Formula) -> Result<String, EmitError> {
    let nvars = f.max_variable().map_or(0, |v| v.index());
    let mut out = format!("p cnf {nvars} {}\n", f.len());
    for (i, c) in f.clauses().iter().enumerate() {
        if c.is_tautology() && !c.has_complementary_pair() {
            return Err(EmitError::ConstantInDimacs { index: i + 1 });
        }
        for l in c.literals() {
            let _ = write!(out, "{} ", l.to_dimacs());
        }
        out.push_str("0\n");
    }
    Ok(out)
}

pub fn parse_native(text: &str) -> Result<Formula, ParseError> {
    parse_native_with_diagnostics(text).map(|p| p.formula)
}

pub fn parse_native_with_diagnostics(text: &str) -> Result<Parsed, ParseError> {
    let mut clauses = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let mut tokens = Vec::new();
        let mut col = 0;
        for tok in line.split_whitespace() {
            // Column of this token, 1-based.
            let start = line[col..].find(tok).map_or(col, |p| col + p);
            col = start + tok.len();
            let t = match tok {
                "#t" => Token::True,
                "#f" => Token::False,
                _ => {
                    let value: i64 = tok
                        .parse()
                        .map_err(|_| ParseError::at_col(i + 1, start + 1, format!("invalid token `{tok}`")))?;
                    Token::Lit(
                        Literal::from_dimacs(value)
                            .ok_or_else(|| ParseError::at_col(i + 1, start + 1, "0 is not a literal"))?,
                    )
                }
            };
            tokens.push(t);
        }
        clauses.push(Clause::normalize(tokens));
    }
    let (formula, duplicates_collapsed) = Formula::with_duplicate_count(clauses);
    Ok(Parsed { formula, duplicates_collapsed })
}

pub fn emit_native(f: &Formula) -> String {
    let mut out = String::new();
    for c in f.clauses() {
        let mut parts: Vec<String> = c.literals().iter().map(|l| l.to_dimacs().to_string()).collect();
        if c.is_tautology() && !c.has_complementary_pair() {
            parts.push("#t".to_string());
        }
        out.push_str(&parts.join(" "));
        out.push('\n');
    }
    out
}

//! Text syntax for terms, term lists and orderings.
//!
//! A term is `1` or a `*`-separated product of factors `x<k>` / `x<k>^<e>`
//! with `k >= 1`. A line of two or more whitespace-separated integers is an
//! exponent vector. Lists put one term per line; `#` starts a comment.

use std::fmt;

use janet_barcode::{Term, TermSet, Var, VariableOrdering};

/// A syntax error at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.message
        )
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

/// A term before the variable count is known: exponents by 0-based index.
#[derive(Debug, Clone, PartialEq, Eq)]
enum RawTerm {
    Product(Vec<(usize, u32)>),
    Vector(Vec<u32>),
}

struct Located {
    line: usize,
    column: usize,
    raw: RawTerm,
}

/// Parses one term; `line` and `col0` locate `src` for error messages.
fn parse_raw(src: &str, line: usize, col0: usize) -> Result<RawTerm, ParseError> {
    let tokens: Vec<&str> = src.split_whitespace().collect();
    if tokens.len() >= 2 && tokens.iter().all(|t| t.bytes().all(|b| b.is_ascii_digit())) {
        let mut v = Vec::with_capacity(tokens.len());
        let mut rest = src;
        for tok in tokens {
            let at = src.len() - rest.len() + rest.find(tok).unwrap();
            let e = tok
                .parse::<u32>()
                .map_err(|_| err(line, col0 + at, format!("exponent `{tok}` out of range")))?;
            v.push(e);
            rest = &src[at + tok.len()..];
        }
        return Ok(RawTerm::Vector(v));
    }
    if src.trim() == "1" {
        return Ok(RawTerm::Product(Vec::new()));
    }
    let mut factors = Vec::new();
    let mut offset = 0;
    for factor in src.split('*') {
        let lead = factor.len() - factor.trim_start().len();
        let f = factor.trim();
        let col = col0 + offset + lead;
        offset += factor.len() + 1;
        if f.is_empty() {
            return Err(err(line, col, "expected a factor like `x2` or `x2^3`"));
        }
        let body = f
            .strip_prefix('x')
            .ok_or_else(|| err(line, col, format!("expected `x<index>`, found `{f}`")))?;
        let (idx, exp) = match body.split_once('^') {
            Some((i, e)) => (i, Some(e)),
            None => (body, None),
        };
        let k: usize = idx
            .parse()
            .map_err(|_| err(line, col + 1, format!("bad variable index `{idx}`")))?;
        if k == 0 {
            return Err(err(line, col + 1, "variables are numbered from x1"));
        }
        let e = match exp {
            Some(e) => e
                .parse::<u32>()
                .map_err(|_| err(line, col + 2 + idx.len(), format!("bad exponent `{e}`")))?,
            None => 1,
        };
        factors.push((k - 1, e));
    }
    Ok(RawTerm::Product(factors))
}

/// Resolves raw terms against a variable count: `vars` when given, else the
/// largest index seen (or the common vector length).
fn resolve(items: Vec<Located>, vars: Option<usize>) -> Result<TermSet, ParseError> {
    let inferred = items
        .iter()
        .map(|l| match &l.raw {
            RawTerm::Product(f) => f.iter().map(|(i, _)| i + 1).max().unwrap_or(0),
            RawTerm::Vector(v) => v.len(),
        })
        .max()
        .unwrap_or(0);
    let n = vars.unwrap_or(inferred).max(1);
    let mut terms = Vec::with_capacity(items.len());
    let mut seen = std::collections::HashMap::new();
    for l in items {
        let exps = match l.raw {
            RawTerm::Product(f) => {
                let mut e = vec![0u32; n];
                for (i, p) in f {
                    if i >= n {
                        return Err(err(
                            l.line,
                            l.column,
                            format!("x{} exceeds {n} variables", i + 1),
                        ));
                    }
                    e[i] += p;
                }
                e
            }
            RawTerm::Vector(v) => {
                if v.len() != n {
                    return Err(err(
                        l.line,
                        l.column,
                        format!("exponent vector has {} entries, expected {n}", v.len()),
                    ));
                }
                v
            }
        };
        let t = Term::new(exps).expect("n >= 1");
        if let Some(first) = seen.insert(t.clone(), l.line) {
            return Err(err(
                l.line,
                l.column,
                format!("duplicate term {t} (first on line {first})"),
            ));
        }
        terms.push(t);
    }
    Ok(TermSet::new(n, terms).expect("checked for duplicates and length"))
}

/// Parses a term file: one term per line, `#` comments, blank lines skipped.
pub fn parse_term_file(text: &str, vars: Option<usize>) -> Result<TermSet, ParseError> {
    let mut items = Vec::new();
    for (i, raw_line) in text.lines().enumerate() {
        let content = raw_line.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let column = content.len() - content.trim_start().len() + 1;
        let raw = parse_raw(content, i + 1, 1)?;
        items.push(Located {
            line: i + 1,
            column,
            raw,
        });
    }
    resolve(items, vars)
}

/// Parses an inline list, terms separated by `,` (reported as line 1).
pub fn parse_term_list(text: &str, vars: Option<usize>) -> Result<TermSet, ParseError> {
    let mut items = Vec::new();
    let mut offset = 0;
    for piece in text.split(',') {
        let col0 = offset + 1;
        offset += piece.len() + 1;
        if piece.trim().is_empty() {
            continue;
        }
        let lead = piece.len() - piece.trim_start().len();
        let raw = parse_raw(piece, 1, col0)?;
        items.push(Located {
            line: 1,
            column: col0 + lead,
            raw,
        });
    }
    resolve(items, vars)
}

/// Parses `identity` or `x1<x3<x2` (minimal variable first) over `n`
/// variables.
pub fn parse_ordering(text: &str, n: usize) -> Result<VariableOrdering, ParseError> {
    let text = text.trim();
    if text == "identity" {
        return Ok(VariableOrdering::identity(n));
    }
    let mut vars = Vec::new();
    let mut offset = 0;
    for piece in text.split('<') {
        let col = offset + 1 + (piece.len() - piece.trim_start().len());
        offset += piece.len() + 1;
        let p = piece.trim();
        let k: usize = p
            .strip_prefix('x')
            .and_then(|k| k.parse().ok())
            .filter(|&k| k >= 1)
            .ok_or_else(|| {
                err(
                    1,
                    col,
                    format!("expected `x<index>` in ordering, found `{p}`"),
                )
            })?;
        vars.push(Var(k - 1));
    }
    let o = VariableOrdering::from_min_to_max(vars).map_err(|e| err(1, 1, e.to_string()))?;
    if o.n() != n {
        return Err(err(
            1,
            1,
            format!("ordering lists {} variables, the set has {n}", o.n()),
        ));
    }
    Ok(o)
}

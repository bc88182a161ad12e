//! Plain-text instance files.
//!
//! ```text
//! # comment
//! m n
//! a11 ... a1n        (m rows)
//! b1 ... bm
//! bounds L U         (optional; or `binary` for bounds 0 1)
//! ```

use std::fmt;
use std::fmt::Write as _;

use latref_core::exact::{IntMatrix, IntVector, Integer};
use latref_core::reformulate::EqualitySystem;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceError {
    /// 1-based position of the offending token.
    Syntax { line: usize, column: usize, message: String },
    /// Well-formed file describing an invalid system.
    System(latref_core::Error),
}

impl fmt::Display for InstanceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceError::Syntax { line, column, message } => write!(f, "line {line}, column {column}: {message}"),
            InstanceError::System(e) => write!(f, "invalid system: {e}"),
        }
    }
}

impl std::error::Error for InstanceError {}

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

/// Lines with at least one token, comments stripped.
fn tokenize(src: &str) -> Vec<(usize, Vec<Token<'_>>)> {
    let mut out = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(pos),
                (true, Some(s)) => {
                    let column = body[..s].chars().count() + 1;
                    tokens.push(Token { text: &body[s..pos], line: i + 1, column });
                    start = None;
                }
                _ => {}
            }
        }
        if !tokens.is_empty() {
            out.push((i + 1, tokens));
        }
    }
    out
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> InstanceError {
    InstanceError::Syntax { line, column, message: message.into() }
}

fn integer(t: &Token<'_>) -> Result<Integer, InstanceError> {
    let ok = t.text.strip_prefix(['-', '+']).unwrap_or(t.text);
    if ok.is_empty() || !ok.bytes().all(|c| c.is_ascii_digit()) {
        return Err(syntax(t.line, t.column, format!("expected an integer, found `{}`", t.text)));
    }
    t.text.parse().map_err(|_| syntax(t.line, t.column, format!("expected an integer, found `{}`", t.text)))
}

fn dimension(t: &Token<'_>, what: &str) -> Result<usize, InstanceError> {
    match t.text.parse::<usize>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(syntax(t.line, t.column, format!("expected a positive {what}, found `{}`", t.text))),
    }
}

/// Row of exactly `len` integers.
fn int_row(line: usize, tokens: &[Token<'_>], len: usize, what: &str) -> Result<IntVector, InstanceError> {
    if tokens.len() > len {
        let t = &tokens[len];
        return Err(syntax(t.line, t.column, format!("{what} has more than {len} entries")));
    }
    if tokens.len() < len {
        let last = tokens.last().map_or(1, |t| t.column + t.text.chars().count());
        return Err(syntax(line, last, format!("{what} has {} entries, expected {len}", tokens.len())));
    }
    tokens.iter().map(integer).collect()
}

pub fn parse_instance(src: &str) -> Result<EqualitySystem, InstanceError> {
    let lines = tokenize(src);
    let end = src.lines().count() + 1;
    let mut it = lines.iter();

    let Some((hl, header)) = it.next() else {
        return Err(syntax(end, 1, "empty instance: expected header `m n`"));
    };
    if header.len() != 2 {
        let col = header.get(2).map_or(header[0].column, |t| t.column);
        return Err(syntax(*hl, col, "header must be `m n`"));
    }
    let m = dimension(&header[0], "row count")?;
    let n = dimension(&header[1], "column count")?;

    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let Some((l, toks)) = it.next() else {
            return Err(syntax(end, 1, format!("unexpected end of input: expected row {} of A", i + 1)));
        };
        rows.push(int_row(*l, toks, n, &format!("row {} of A", i + 1))?);
    }
    let Some((bl, btoks)) = it.next() else {
        return Err(syntax(end, 1, "unexpected end of input: expected right-hand side b"));
    };
    let b = int_row(*bl, btoks, m, "right-hand side b")?;

    let mut bounds = None;
    if let Some((l, toks)) = it.next() {
        let kw = &toks[0];
        bounds = Some(match kw.text {
            "binary" => {
                if let Some(t) = toks.get(1) {
                    return Err(syntax(t.line, t.column, "`binary` takes no arguments"));
                }
                (Integer::from(0), Integer::from(1))
            }
            "bounds" => {
                if toks.len() < 3 {
                    let col = toks.last().map_or(1, |t| t.column + t.text.chars().count());
                    return Err(syntax(*l, col, "`bounds` needs a lower and an upper bound"));
                }
                let v = int_row(*l, &toks[1..], 2, "`bounds`")?;
                let (lo, up) = (v[0].clone(), v[1].clone());
                if lo > up {
                    return Err(syntax(*l, toks[1].column, format!("lower bound {lo} exceeds upper bound {up}")));
                }
                (lo, up)
            }
            other => return Err(syntax(*l, kw.column, format!("expected `bounds L U` or `binary`, found `{other}`"))),
        });
    }
    if let Some((_, toks)) = it.next() {
        let t = &toks[0];
        return Err(syntax(t.line, t.column, "unexpected content after the instance"));
    }

    let a = IntMatrix::from_rows(rows).map_err(InstanceError::System)?;
    let (lower, upper) = match bounds {
        Some((lo, up)) => (Some(vec![lo; n]), Some(vec![up; n])),
        None => (None, None),
    };
    EqualitySystem::new(a, b, lower, upper).map_err(InstanceError::System)
}

fn uniform(v: Option<&IntVector>) -> Result<Option<&Integer>, String> {
    match v {
        None => Ok(None),
        Some(v) if v.iter().all(|x| *x == v[0]) => Ok(Some(&v[0])),
        Some(_) => Err("per-variable bounds cannot be written in the instance format".into()),
    }
}

/// Inverse of [`parse_instance`] for systems without bounds or with the
/// same bounds on every variable.
pub fn emit_instance(sys: &EqualitySystem) -> Result<String, String> {
    let bounds = match (uniform(sys.lower())?, uniform(sys.upper())?) {
        (None, None) => None,
        (Some(lo), Some(up)) => Some((lo, up)),
        _ => return Err("a lower bound without an upper bound (or vice versa) cannot be written".into()),
    };
    let join = |v: &[Integer]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let mut out = format!("{} {}\n", sys.m(), sys.n());
    for i in 0..sys.m() {
        writeln!(out, "{}", join(sys.a().row(i))).unwrap();
    }
    writeln!(out, "{}", join(sys.b())).unwrap();
    match bounds {
        Some((lo, up)) if *lo == Integer::from(0) && *up == Integer::from(1) => out.push_str("binary\n"),
        Some((lo, up)) => writeln!(out, "bounds {lo} {up}").unwrap(),
        None => {}
    }
    Ok(out)
}

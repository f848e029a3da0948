//! Text formats for formulas and certificates.
//!
//! Formula files:
//!
//! ```text
//! c model F
//! p rsat 2 3 2 finite:3
//! 1:le:1/2 2:ge:1/1
//! 3:ge:1/2 1:le:0/1
//! ```
//!
//! Lines starting with `c` are comments; `c model F` and `c model F'` record
//! whether clauses were drawn with distinct variables (F' when absent). Each
//! clause line holds exactly `k` literal tokens `<var>:<le|ge>:<num>/<den>`
//! with a 1-based variable and a reduced fraction.
//!
//! Certificate files start with `cert bicycle <ell> <i0> <i1>` or
//! `cert snake <ell>` followed by `ell + 1` chain lines
//! `<clause index> <literal> <literal>`, with 0-based clause indices.

use rsat_core::{Bicycle, Clause, Formula, Literal, Snake, TruthValueSpec};
use std::fmt::{self, Write as _};
use std::str::FromStr;

/// A malformed input line.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}{}", token.as_ref().map(|t| format!(" (token `{t}`)")).unwrap_or_default())]
pub struct ParseError {
    /// 1-based; 0 for problems with the file as a whole.
    pub line: usize,
    pub token: Option<String>,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, message: impl fmt::Display) -> Self {
        ParseError {
            line,
            token: None,
            message: message.to_string(),
        }
    }

    fn token(line: usize, token: &str, message: impl fmt::Display) -> Self {
        ParseError {
            line,
            token: Some(token.to_string()),
            message: message.to_string(),
        }
    }
}

/// Content lines with their 1-based numbers, comments and blanks removed.
/// Also reports a `c model` comment.
fn content_lines(text: &str) -> (Vec<(usize, &str)>, Option<bool>) {
    let mut model = None;
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line == "c" || line.starts_with("c ") {
            match line[1..].trim() {
                "model F" => model = Some(true),
                "model F'" => model = Some(false),
                _ => {}
            }
            continue;
        }
        lines.push((i + 1, line));
    }
    (lines, model)
}

fn parse_number<T: FromStr>(line: usize, tok: &str, what: &str) -> Result<T, ParseError> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::token(line, tok, format!("expected {what}")));
    }
    tok.parse()
        .map_err(|_| ParseError::token(line, tok, format!("{what} out of range")))
}

fn parse_literal(line: usize, tok: &str, n: u32, vspec: TruthValueSpec) -> Result<Literal, ParseError> {
    let lit: Literal = tok.parse().map_err(|e| ParseError::token(line, tok, e))?;
    if lit.var() > n {
        return Err(ParseError::token(line, tok, format!("variable {} exceeds n = {n}", lit.var())));
    }
    if !vspec.contains(lit.bound()) {
        return Err(ParseError::token(line, tok, format!("bound {} is not in {vspec}", lit.bound())));
    }
    Ok(lit)
}

pub fn render_formula(f: &Formula) -> String {
    let mut out = String::new();
    let model = if f.distinct_vars_per_clause() { "F" } else { "F'" };
    writeln!(out, "c model {model}").unwrap();
    writeln!(out, "p rsat {} {} {} {}", f.k(), f.n(), f.m(), f.vspec()).unwrap();
    for clause in f.clauses() {
        let toks: Vec<String> = clause.literals().iter().map(Literal::to_string).collect();
        writeln!(out, "{}", toks.join(" ")).unwrap();
    }
    out
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let (lines, model) = content_lines(text);
    let mut iter = lines.into_iter();
    let Some((hline, header)) = iter.next() else {
        return Err(ParseError::at(0, "missing `p rsat` header"));
    };
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 6 || toks[0] != "p" || toks[1] != "rsat" {
        return Err(ParseError::at(hline, "expected `p rsat <k> <n> <m> <vspec>`"));
    }
    let k: usize = parse_number(hline, toks[2], "clause width k")?;
    let n: u32 = parse_number(hline, toks[3], "variable count n")?;
    let m: usize = parse_number(hline, toks[4], "clause count m")?;
    if k < 2 {
        return Err(ParseError::token(hline, toks[2], "k must be at least 2"));
    }
    let vspec: TruthValueSpec = toks[5].parse().map_err(|e| ParseError::token(hline, toks[5], e))?;
    let distinct = model.unwrap_or(false);

    let mut clauses = Vec::with_capacity(m);
    let mut last_line = hline;
    for (line, text) in iter {
        last_line = line;
        if clauses.len() == m {
            return Err(ParseError::at(line, format!("more than m = {m} clause lines")));
        }
        let toks: Vec<&str> = text.split_whitespace().collect();
        if toks.len() != k {
            return Err(ParseError::at(line, format!("expected {k} literals, found {}", toks.len())));
        }
        let lits = toks
            .iter()
            .map(|tok| parse_literal(line, tok, n, vspec))
            .collect::<Result<Vec<_>, _>>()?;
        let clause = Clause::new(lits);
        if distinct && clause.has_repeated_variable() {
            return Err(ParseError::at(line, "clause repeats a variable under model F"));
        }
        clauses.push(clause);
    }
    if clauses.len() != m {
        return Err(ParseError::at(
            last_line,
            format!("expected {m} clause lines, found {}", clauses.len()),
        ));
    }
    Formula::new(k, n, vspec, distinct, clauses).map_err(|e| ParseError::at(hline, e))
}

/// A certificate of either kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Bicycle(Bicycle),
    Snake(Snake),
}

fn pair_line(out: &mut String, ci: usize, a: &Literal, b: &Literal) {
    writeln!(out, "{ci} {a} {b}").unwrap();
}

pub fn render_certificate(c: &Certificate) -> String {
    let mut out = String::new();
    match c {
        Certificate::Bicycle(b) => {
            writeln!(out, "cert bicycle {} {} {}", b.ell, b.i0, b.i1).unwrap();
            for (i, &ci) in b.clause_indices.iter().enumerate() {
                pair_line(&mut out, ci, b.wf(i), b.wt(i + 1));
            }
        }
        Certificate::Snake(s) => {
            writeln!(out, "cert snake {}", s.ell).unwrap();
            for (&ci, (l, lp)) in s.clause_indices.iter().zip(&s.pairs) {
                pair_line(&mut out, ci, l, lp);
            }
        }
    }
    out
}

pub fn parse_certificate(text: &str) -> Result<Certificate, ParseError> {
    let (lines, _) = content_lines(text);
    let mut iter = lines.into_iter();
    let Some((hline, header)) = iter.next() else {
        return Err(ParseError::at(0, "missing `cert` header"));
    };
    let toks: Vec<&str> = header.split_whitespace().collect();
    let (kind, ell, i0, i1) = match toks.as_slice() {
        ["cert", "bicycle", ell, i0, i1] => (
            "bicycle",
            parse_number::<usize>(hline, ell, "length")?,
            parse_number::<usize>(hline, i0, "index i0")?,
            parse_number::<usize>(hline, i1, "index i1")?,
        ),
        ["cert", "snake", ell] => ("snake", parse_number::<usize>(hline, ell, "length")?, 0, 0),
        _ => {
            return Err(ParseError::at(
                hline,
                "expected `cert bicycle <ell> <i0> <i1>` or `cert snake <ell>`",
            ))
        }
    };
    let mut indices = Vec::with_capacity(ell + 1);
    let mut pairs = Vec::with_capacity(ell + 1);
    let mut last_line = hline;
    for (line, text) in iter {
        last_line = line;
        let toks: Vec<&str> = text.split_whitespace().collect();
        let [ci, a, b] = toks.as_slice() else {
            return Err(ParseError::at(line, "expected `<clause index> <literal> <literal>`"));
        };
        indices.push(parse_number::<usize>(line, ci, "clause index")?);
        let lit = |tok: &str| tok.parse::<Literal>().map_err(|e| ParseError::token(line, tok, e));
        pairs.push((lit(a)?, lit(b)?));
    }
    if pairs.len() != ell + 1 {
        return Err(ParseError::at(
            last_line,
            format!("expected {} chain lines, found {}", ell + 1, pairs.len()),
        ));
    }
    Ok(match kind {
        "bicycle" => Certificate::Bicycle(Bicycle {
            ell,
            i0,
            i1,
            literals: pairs.into_iter().flat_map(|(a, b)| [a, b]).collect(),
            clause_indices: indices,
        }),
        _ => Certificate::Snake(Snake::from_chain(ell, indices, pairs)),
    })
}

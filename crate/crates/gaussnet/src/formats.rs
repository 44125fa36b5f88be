//! Text formats: DAG files, printed polynomials, pair lists and JSON for
//! rational matrices.

use std::fmt::Write as _;

use gaussnet_core::algebra::{Monomial, Var, MAX_INDEX};
use gaussnet_core::{BigRational, Dag, GraphError, Poly, RationalMatrix};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("missing `n <count>` header")]
    MissingHeader,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("polynomial, column {col}: {msg}")]
    Poly { col: usize, msg: String },
    #[error("{0}")]
    Syntax(String),
}

fn line_err(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Line { line, msg: msg.into() }
}

/// Parses the DAG format:
///
/// ```text
/// # comment
/// n 4
/// 1 -> 2
/// 3 -> 4   # trailing comments too
/// ```
///
/// Input whose edges do not all point from smaller to larger numbers is
/// renumbered topologically; the original numbers become labels.
pub fn parse_dag(text: &str) -> Result<Dag, FormatError> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let Some(count) = n else {
            let rest = body
                .strip_prefix('n')
                .filter(|r| r.starts_with(char::is_whitespace))
                .ok_or_else(|| line_err(line, format!("expected `n <count>`, found `{body}`")))?;
            let c = rest.trim().parse::<usize>().map_err(|_| line_err(line, "vertex count is not a number"))?;
            if c > MAX_INDEX {
                return Err(line_err(line, format!("at most {MAX_INDEX} vertices are supported")));
            }
            n = Some(c);
            continue;
        };
        let (l, r) = body
            .split_once("->")
            .ok_or_else(|| line_err(line, format!("expected `<i> -> <j>`, found `{body}`")))?;
        let vertex = |s: &str| -> Result<usize, FormatError> {
            let v = s.trim().parse::<usize>().map_err(|_| line_err(line, format!("`{}` is not a vertex", s.trim())))?;
            if v == 0 || v > count {
                return Err(line_err(line, format!("unknown vertex {v} (graph has {count} vertices)")));
            }
            Ok(v)
        };
        let e = (vertex(l)?, vertex(r)?);
        if e.0 == e.1 {
            return Err(line_err(line, format!("self-loop at {}", e.0)));
        }
        if edges.contains(&e) {
            return Err(line_err(line, format!("duplicate edge {} -> {}", e.0, e.1)));
        }
        edges.push(e);
    }
    let n = n.ok_or(FormatError::MissingHeader)?;
    Ok(Dag::from_edges(n, &edges)?)
}

/// Printed form: the header, then edges sorted lexicographically. Labels
/// that differ from the vertex numbers are listed in a comment.
pub fn print_dag(g: &Dag) -> String {
    let mut s = String::new();
    if let Some(labels) = g.labels() {
        if labels.iter().enumerate().any(|(k, l)| *l != (k + 1).to_string()) {
            let names: Vec<String> = labels.iter().enumerate().map(|(k, l)| format!("{}={l}", k + 1)).collect();
            let _ = writeln!(s, "# labels {}", names.join(" "));
        }
    }
    let _ = writeln!(s, "n {}", g.n());
    for &(i, j) in g.edges() {
        let _ = writeln!(s, "{i} -> {j}");
    }
    s
}

/// Parses the printed polynomial form: `+`/`-` separated terms, each an
/// optional integer coefficient and `*`-joined factors `a1` (or `a(1)`),
/// `l(1,2)`, `s(1,2)`, each optionally raised to `^k`.
pub fn parse_poly(text: &str) -> Result<Poly, FormatError> {
    PolyParser { src: text.as_bytes(), pos: 0 }.parse()
}

struct PolyParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl PolyParser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, FormatError> {
        Err(FormatError::Poly { col: self.pos + 1, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), FormatError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{}`", c as char))
        }
    }

    fn digits(&mut self) -> Option<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn index(&mut self) -> Result<usize, FormatError> {
        match self.digits().map(str::parse::<usize>) {
            Some(Ok(v)) if (1..=MAX_INDEX).contains(&v) => Ok(v),
            Some(_) => self.err(format!("index must be between 1 and {MAX_INDEX}")),
            None => self.err("expected an index"),
        }
    }

    fn pair(&mut self) -> Result<(usize, usize), FormatError> {
        self.expect(b'(')?;
        let i = self.index()?;
        self.expect(b',')?;
        let j = self.index()?;
        self.expect(b')')?;
        Ok((i, j))
    }

    fn variable(&mut self) -> Result<Var, FormatError> {
        let here = self.pos;
        match self.peek() {
            Some(b'a') => {
                self.pos += 1;
                let i = if self.peek() == Some(b'(') {
                    self.pos += 1;
                    let i = self.index()?;
                    self.expect(b')')?;
                    i
                } else {
                    self.index()?
                };
                Ok(Var::node_variance(i))
            }
            Some(b'l') => {
                self.pos += 1;
                let (i, j) = self.pair()?;
                if i >= j {
                    self.pos = here;
                    return self.err(format!("edge weight l({i},{j}) needs i < j"));
                }
                Ok(Var::edge_weight(i, j))
            }
            Some(b's') => {
                self.pos += 1;
                let (i, j) = self.pair()?;
                Ok(Var::sigma(i, j))
            }
            _ => self.err("expected a coefficient or a variable a, l(i,j), s(i,j)"),
        }
    }

    fn exponent(&mut self) -> Result<u32, FormatError> {
        if !self.eat(b'^') {
            return Ok(1);
        }
        match self.digits().map(str::parse::<u32>) {
            Some(Ok(e)) => Ok(e),
            _ => self.err("expected an exponent"),
        }
    }

    fn term(&mut self) -> Result<(Monomial, BigInt), FormatError> {
        let mut coeff = BigInt::one();
        let mut factors = Vec::new();
        loop {
            if matches!(self.peek(), Some(b'0'..=b'9')) {
                let c: BigInt = self.digits().expect("peeked a digit").parse().expect("digits");
                coeff *= c.pow(self.exponent()?);
            } else {
                let v = self.variable()?;
                factors.push((v, self.exponent()?));
            }
            if !self.eat(b'*') {
                break;
            }
        }
        Ok((Monomial::from_pairs(factors), coeff))
    }

    fn parse(mut self) -> Result<Poly, FormatError> {
        let mut terms = Vec::new();
        let mut sign = if self.eat(b'-') {
            -1
        } else {
            self.eat(b'+');
            1
        };
        if self.peek().is_none() {
            return self.err("empty polynomial");
        }
        loop {
            let (m, c) = self.term()?;
            terms.push((m, c * sign));
            match self.peek() {
                None => break,
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                Some(c) => return self.err(format!("unexpected `{}`", c as char)),
            }
            self.pos += 1;
        }
        Ok(Poly::from_terms(terms))
    }
}

/// Parses `"(1,1),(2,2)"`; the empty string is the empty list.
pub fn parse_pairs(text: &str) -> Result<Vec<(usize, usize)>, FormatError> {
    let bad = || FormatError::Syntax(format!("expected a list like \"(1,1),(2,2)\", found \"{text}\""));
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Ok(Vec::new());
    }
    let inner = compact.strip_prefix('(').and_then(|s| s.strip_suffix(')')).ok_or_else(bad)?;
    inner
        .split("),(")
        .map(|p| {
            let (i, j) = p.split_once(',').ok_or_else(bad)?;
            Ok((i.parse().map_err(|_| bad())?, j.parse().map_err(|_| bad())?))
        })
        .collect()
}

/// Parses a comma-separated vertex list such as `1,2`; empty means none.
pub fn parse_set(text: &str) -> Result<Vec<usize>, FormatError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| FormatError::Syntax(format!("`{s}` is not a vertex"))))
        .collect()
}

/// `num/den`, denominator always written.
pub fn rational_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(s: &str) -> Result<BigRational, FormatError> {
    let bad = || FormatError::Syntax(format!("`{s}` is not a rational number"));
    let (n, d) = s.trim().split_once('/').unwrap_or((s.trim(), "1"));
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

pub fn matrix_to_json(m: &RationalMatrix) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|row| Value::Array(row.iter().map(|q| Value::String(rational_string(q))).collect()))
            .collect(),
    )
}

/// Reads a matrix written as nested arrays of `"num/den"` strings (plain
/// integers are accepted too), or an object holding one under `"sigma"`.
pub fn matrix_from_json(v: &Value) -> Result<RationalMatrix, FormatError> {
    let v = v.get("sigma").unwrap_or(v);
    let bad = |msg: &str| FormatError::Syntax(format!("matrix JSON: {msg}"));
    let rows = v.as_array().ok_or_else(|| bad("expected an array of rows"))?;
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let row = row.as_array().ok_or_else(|| bad("expected each row to be an array"))?;
        let entries = row
            .iter()
            .map(|e| match e {
                Value::String(s) => parse_rational(s),
                Value::Number(n) if n.is_i64() => Ok(BigRational::from_integer(n.as_i64().expect("i64").into())),
                _ => Err(bad("entries must be \"num/den\" strings")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        out.push(entries);
    }
    RationalMatrix::from_rows(out).map_err(|_| bad("rows have different lengths"))
}

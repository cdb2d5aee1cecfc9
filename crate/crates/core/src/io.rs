//! Text formats.
//!
//! Group spec: `Z7`, `Z3^3`, `Z2xZ4xZ4` (case-insensitive, no whitespace).
//!
//! Difference-set file:
//!
//! ```text
//! Z7
//! 1 2 4
//! ```
//!
//! Tournament file: the vertex count, then one row of `0`/`1` per vertex,
//! bit `(x, y)` set iff `x → y`.
//!
//! ```text
//! 3
//! 001
//! 100
//! 010
//! ```

use crate::diffset::CandidateSet;
use crate::error::{Error, Result};
use crate::groups::AbelianGroup;
use crate::tourney::Tournament;

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_modulus(s: &str, what: &str) -> std::result::Result<u64, String> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("expected a decimal {what}, found {s:?}"));
    }
    s.parse().map_err(|e| format!("bad {what} {s:?}: {e}"))
}

/// Parses a group spec string.
pub fn parse_group(spec: &str) -> Result<AbelianGroup> {
    let err = |msg: String| Error::InvalidGroup(format!("{spec:?}: {msg}"));
    if spec.is_empty() {
        return Err(err("empty group spec".into()));
    }
    if spec.chars().any(char::is_whitespace) {
        return Err(err("whitespace is not allowed".into()));
    }
    let lower = spec.to_ascii_lowercase();
    let mut moduli = Vec::new();
    for factor in lower.split('x') {
        let body = factor
            .strip_prefix('z')
            .ok_or_else(|| err(format!("factor {factor:?} must start with Z")))?;
        let (m, k) = match body.split_once('^') {
            Some((m, k)) => (
                parse_modulus(m, "modulus").map_err(&err)?,
                parse_modulus(k, "exponent").map_err(&err)?,
            ),
            None => (parse_modulus(body, "modulus").map_err(&err)?, 1),
        };
        if k == 0 {
            return Err(err("exponent must be at least 1".into()));
        }
        moduli.extend(std::iter::repeat_n(m, k as usize));
    }
    AbelianGroup::new(&moduli).map_err(|e| err(e.to_string()))
}

pub fn parse_diffset(text: &str) -> Result<CandidateSet> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
    let (_, header) = lines
        .next()
        .ok_or_else(|| perr(1, "missing group spec line"))?;
    let group = parse_group(header).map_err(|e| perr(1, e.to_string()))?;
    let (line_no, body) = lines.next().unwrap_or((2, ""));
    let mut indices = Vec::new();
    for tok in body.split_whitespace() {
        let i: usize = tok
            .parse()
            .map_err(|_| perr(line_no, format!("expected an element index, found {tok:?}")))?;
        if i >= group.order() {
            return Err(perr(
                line_no,
                format!(
                    "index {i} out of range for {group} of order {}",
                    group.order()
                ),
            ));
        }
        if indices.contains(&i) {
            return Err(perr(line_no, format!("index {i} listed twice")));
        }
        indices.push(i);
    }
    for (n, rest) in lines {
        if !rest.trim().is_empty() {
            return Err(perr(n, "unexpected content after the element line"));
        }
    }
    CandidateSet::new(group, indices)
}

pub fn emit_diffset(d: &CandidateSet) -> String {
    let idx: Vec<String> = d.indices().iter().map(usize::to_string).collect();
    format!("{}\n{}\n", d.group(), idx.join(" "))
}

#[allow(clippy::needless_range_loop)]
pub fn parse_tournament(text: &str) -> Result<Tournament> {
    let lines: Vec<&str> = text.lines().map(|l| l.trim_end_matches('\r')).collect();
    let header = lines
        .first()
        .ok_or_else(|| perr(1, "missing vertex count"))?;
    let n: usize = header
        .trim()
        .parse()
        .map_err(|_| perr(1, format!("expected the vertex count, found {header:?}")))?;
    let mut rows = Vec::with_capacity(n);
    for x in 0..n {
        let line_no = x + 2;
        let line = lines
            .get(x + 1)
            .ok_or_else(|| perr(line_no, format!("missing row {x}")))?;
        if line.len() != n {
            return Err(perr(
                line_no,
                format!("row {x} has {} characters, expected {n}", line.len()),
            ));
        }
        let row = line
            .chars()
            .enumerate()
            .map(|(y, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(perr(
                    line_no,
                    format!("column {y}: expected 0 or 1, found {other:?}"),
                )),
            })
            .collect::<Result<Vec<bool>>>()?;
        if row[x] {
            return Err(perr(line_no, format!("loop at vertex {x}")));
        }
        rows.push(row);
    }
    if let Some(extra) = lines[n + 1..].iter().position(|l| !l.trim().is_empty()) {
        return Err(perr(n + 2 + extra, "unexpected content after the last row"));
    }
    for x in 0..n {
        for y in x + 1..n {
            if rows[x][y] == rows[y][x] {
                let what = if rows[x][y] { "both" } else { "neither" };
                return Err(perr(
                    x + 2,
                    format!("{what} of ({x},{y}) and ({y},{x}) present"),
                ));
            }
        }
    }
    Tournament::from_adjacency(&rows)
}

pub fn emit_tournament(t: &Tournament) -> String {
    let mut s = format!("{}\n", t.n());
    for row in t.to_rows() {
        s.push_str(&row);
        s.push('\n');
    }
    s
}

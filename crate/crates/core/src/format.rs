//! Text formats for grammars and scoring functions.
//!
//! SLP file:
//!
//! ```text
//! SLP 3
//! 1 -> 'a'
//! 2 -> 'b'
//! 3 -> 1 2
//! ```
//!
//! Variable `n` is the root. Blank lines and lines starting with `#` are
//! skipped. Inside quotes, `\\`, `\'`, `\n`, `\t` and `\r` are escapes.
//!
//! Scoring file, tab-separated:
//!
//! ```text
//! ALPHABET	ab
//! DEL	a	1
//! INS	a	1
//! SUB	a	b	1.5
//! ```
//!
//! Costs are non-negative decimals; all of them are scaled by the largest
//! number of fractional digits used. Omitted `SUB(a,a)` entries are zero.

#![allow(clippy::tabs_in_doc_comments)] // the example must show real tabs

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::scoring::{RawCost, ScoringFunction, ScoringTable};
use crate::slp::{Production, Slp, VarId};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Escapes a character for use inside quotes or a tab-separated field.
pub fn escape_char(c: char) -> String {
    match c {
        '\\' => "\\\\".into(),
        '\'' => "\\'".into(),
        '\n' => "\\n".into(),
        '\t' => "\\t".into(),
        '\r' => "\\r".into(),
        c => c.to_string(),
    }
}

/// Decodes escapes in `s`.
pub fn unescape(s: &str) -> std::result::Result<Vec<char>, String> {
    let mut out = Vec::new();
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        out.push(match chars.next() {
            Some('\\') => '\\',
            Some('\'') => '\'',
            Some('n') => '\n',
            Some('t') => '\t',
            Some('r') => '\r',
            Some(other) => return Err(format!("unknown escape \\{other}")),
            None => return Err("dangling backslash".into()),
        });
    }
    Ok(out)
}

/// Lines that carry content, with one-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
}

/// Whether `text` starts with an SLP header.
pub fn looks_like_slp(text: &str) -> bool {
    text.lines().next().is_some_and(|l| l.starts_with("SLP "))
}

pub fn parse_slp(text: &str) -> Result<Slp> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing SLP header"))?;
    let n: usize = header
        .trim()
        .strip_prefix("SLP ")
        .and_then(|rest| rest.trim().parse().ok())
        .ok_or_else(|| parse_err(hline, format!("expected \"SLP <n>\", found {header:?}")))?;
    let mut entries = Vec::with_capacity(n);
    for (ln, line) in lines {
        let (lhs, rhs) = line
            .split_once("->")
            .ok_or_else(|| parse_err(ln, "expected \"<i> -> ...\""))?;
        let number: usize = lhs
            .trim()
            .parse()
            .map_err(|_| parse_err(ln, format!("bad variable number {:?}", lhs.trim())))?;
        let rhs = rhs.trim();
        let prod = if let Some(quoted) = rhs.strip_prefix('\'').and_then(|r| r.strip_suffix('\'')) {
            match unescape(quoted).map_err(|e| parse_err(ln, e))?.as_slice() {
                [c] => Production::Terminal(*c),
                _ => return Err(parse_err(ln, format!("terminal must be one character, found {rhs}"))),
            }
        } else {
            let refs: Vec<&str> = rhs.split_whitespace().collect();
            let [p, q] = refs.as_slice() else {
                return Err(parse_err(
                    ln,
                    format!("expected a quoted character or two variables, found {rhs:?}"),
                ));
            };
            let var = |s: &str| -> Result<VarId> {
                match s.parse::<usize>() {
                    Ok(k) if k >= 1 => Ok(VarId::from_number(k)),
                    _ => Err(parse_err(ln, format!("bad variable reference {s:?}"))),
                }
            };
            Production::Pair(var(p)?, var(q)?)
        };
        if entries.len() == n {
            return Err(parse_err(ln, format!("more than the declared {n} productions")));
        }
        entries.push((number, prod));
    }
    if entries.len() != n {
        return Err(Error::InvalidSlp(format!(
            "header declares {n} productions, found {}",
            entries.len()
        )));
    }
    Slp::from_numbered(entries)
}

pub fn write_slp(slp: &Slp) -> String {
    let mut out = format!("SLP {}\n", slp.size());
    for (i, prod) in slp.productions().iter().enumerate() {
        let _ = match *prod {
            Production::Terminal(c) => writeln!(out, "{} -> '{}'", i + 1, escape_char(c)),
            Production::Pair(p, q) => writeln!(out, "{} -> {} {}", i + 1, p.number(), q.number()),
        };
    }
    out
}

/// Parses a decimal cost into `(digits as integer, fractional digits)`.
fn parse_decimal(s: &str) -> std::result::Result<Option<(i64, u32)>, String> {
    let lower = s.to_ascii_lowercase();
    if matches!(lower.trim_start_matches(['+', '-']), "inf" | "infinity" | "nan") {
        return Ok(None);
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() || !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(format!("bad cost {s:?}"));
    }
    let mut value: i64 = 0;
    for b in int.bytes().chain(frac.bytes()) {
        value = value
            .checked_mul(10)
            .and_then(|v| v.checked_add(i64::from(b - b'0')))
            .ok_or_else(|| format!("cost {s:?} is too large"))?;
    }
    Ok(Some((if neg { -value } else { value }, frac.len() as u32)))
}

fn single_char(field: &str, ln: usize) -> Result<char> {
    match unescape(field).map_err(|e| parse_err(ln, e))?.as_slice() {
        [c] => Ok(*c),
        _ => Err(parse_err(ln, format!("expected one character, found {field:?}"))),
    }
}

/// Reads a scoring file into an unvalidated table.
pub fn parse_scoring_table(text: &str) -> Result<ScoringTable> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing ALPHABET line"))?;
    let alphabet = header
        .strip_prefix("ALPHABET\t")
        .ok_or_else(|| parse_err(hline, "expected \"ALPHABET<TAB><chars>\""))?;
    let mut table = ScoringTable::new(unescape(alphabet).map_err(|e| parse_err(hline, e))?);

    enum Key {
        Del(char),
        Ins(char),
        Sub(char, char),
    }
    let mut raw = Vec::new();
    for (ln, line) in lines {
        let fields: Vec<&str> = line.split('\t').collect();
        let (key, cost) = match fields.as_slice() {
            ["DEL", c, cost] => (Key::Del(single_char(c, ln)?), cost),
            ["INS", c, cost] => (Key::Ins(single_char(c, ln)?), cost),
            ["SUB", a, b, cost] => (Key::Sub(single_char(a, ln)?, single_char(b, ln)?), cost),
            _ => return Err(parse_err(ln, format!("unrecognized line {line:?}"))),
        };
        let cost = parse_decimal(cost.trim()).map_err(|e| parse_err(ln, e))?;
        raw.push((ln, key, cost));
    }

    let scale = raw.iter().filter_map(|(_, _, c)| c.map(|(_, d)| d)).max().unwrap_or(0);
    table.scale = scale;
    for (ln, key, cost) in raw {
        let value = match cost {
            None => RawCost::NonFinite,
            Some((v, digits)) => 10i64
                .checked_pow(scale - digits)
                .and_then(|m| v.checked_mul(m))
                .map(RawCost::Finite)
                .ok_or_else(|| parse_err(ln, "cost too large at this decimal scale"))?,
        };
        let slot = match key {
            Key::Del(c) => table.del.insert(c, value),
            Key::Ins(c) => table.ins.insert(c, value),
            Key::Sub(a, b) => table.sub.insert((a, b), value),
        };
        if slot.is_some() {
            return Err(parse_err(ln, "entry given twice"));
        }
    }
    Ok(table)
}

pub fn parse_scoring(text: &str) -> Result<ScoringFunction> {
    parse_scoring_table(text)?.build()
}

pub fn write_scoring(sf: &ScoringFunction) -> String {
    let alphabet: String = sf.alphabet().iter().map(|&c| escape_char(c)).collect();
    let mut out = format!("ALPHABET\t{alphabet}\n");
    let cost = |v: Option<u64>| sf.format_cost(v.expect("character is in the alphabet"));
    for &c in sf.alphabet() {
        let _ = writeln!(out, "DEL\t{}\t{}", escape_char(c), cost(sf.del(c)));
        let _ = writeln!(out, "INS\t{}\t{}", escape_char(c), cost(sf.ins(c)));
    }
    for &a in sf.alphabet() {
        for &b in sf.alphabet() {
            let _ = writeln!(
                out,
                "SUB\t{}\t{}\t{}",
                escape_char(a),
                escape_char(b),
                cost(sf.sub(a, b))
            );
        }
    }
    out
}

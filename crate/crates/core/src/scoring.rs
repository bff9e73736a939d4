//! Scoring functions: per-character deletion and insertion costs plus a
//! replacement cost for every ordered pair of characters.
//!
//! Costs are exact non-negative integers. Decimal costs are supported by a
//! fixed `scale`: every cost is stored multiplied by `10^scale`, so all
//! arithmetic stays integral and [`ScoringFunction::format_cost`] renders the
//! result back as a decimal.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::monge::Cost;

/// Largest accepted (scaled) cost of a single edit operation.
pub const MAX_COST: i64 = 1 << 31;

/// Largest accepted number of decimal places.
pub const MAX_SCALE: u32 = 6;

/// A cost as written by the user, before validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RawCost {
    /// Scaled integer value.
    Finite(i64),
    /// `inf`, `nan` and friends.
    NonFinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Del,
    Ins,
    Sub,
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Op::Del => "DEL",
            Op::Ins => "INS",
            Op::Sub => "SUB",
        })
    }
}

/// One problem found by [`ScoringTable::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptyAlphabet,
    DuplicateCharacter(char),
    ScaleTooLarge(u32),
    NegativeCost { op: Op, chars: Vec<char>, value: i64 },
    NonFinite { op: Op, chars: Vec<char> },
    TooLarge { op: Op, chars: Vec<char>, value: i64 },
    IncompleteTable { op: Op, chars: Vec<char> },
    UnknownCharacter { op: Op, chars: Vec<char> },
}

fn show(op: &Op, chars: &[char]) -> String {
    let list: Vec<String> = chars.iter().map(|c| format!("{c:?}")).collect();
    format!("{op}({})", list.join(","))
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyAlphabet => write!(f, "empty alphabet"),
            Violation::DuplicateCharacter(c) => write!(f, "duplicate character {c:?} in alphabet"),
            Violation::ScaleTooLarge(s) => {
                write!(f, "decimal scale {s} exceeds the supported {MAX_SCALE} places")
            }
            Violation::NegativeCost { op, chars, value } => {
                write!(f, "negative cost {value} for {}", show(op, chars))
            }
            Violation::NonFinite { op, chars } => {
                write!(f, "non-finite value for {}", show(op, chars))
            }
            Violation::TooLarge { op, chars, value } => {
                write!(f, "cost {value} for {} exceeds limit {MAX_COST}", show(op, chars))
            }
            Violation::IncompleteTable { op, chars } => {
                write!(f, "incomplete table: missing {}", show(op, chars))
            }
            Violation::UnknownCharacter { op, chars } => {
                write!(f, "{} mentions a character outside the alphabet", show(op, chars))
            }
        }
    }
}

/// Unvalidated scoring description, as assembled by a parser or by hand.
///
/// A missing `SUB(a,a)` entry defaults to zero; every other missing entry is
/// an [`Violation::IncompleteTable`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScoringTable {
    pub alphabet: Vec<char>,
    pub scale: u32,
    pub del: BTreeMap<char, RawCost>,
    pub ins: BTreeMap<char, RawCost>,
    pub sub: BTreeMap<(char, char), RawCost>,
}

impl ScoringTable {
    pub fn new(alphabet: impl IntoIterator<Item = char>) -> Self {
        ScoringTable {
            alphabet: alphabet.into_iter().collect(),
            ..Default::default()
        }
    }

    pub fn set_del(&mut self, c: char, cost: i64) -> &mut Self {
        self.del.insert(c, RawCost::Finite(cost));
        self
    }

    pub fn set_ins(&mut self, c: char, cost: i64) -> &mut Self {
        self.ins.insert(c, RawCost::Finite(cost));
        self
    }

    pub fn set_sub(&mut self, a: char, b: char, cost: i64) -> &mut Self {
        self.sub.insert((a, b), RawCost::Finite(cost));
        self
    }

    /// Checks every invariant and lists all violations found.
    pub fn validate(&self) -> std::result::Result<(), Vec<Violation>> {
        let mut report = Vec::new();
        if self.alphabet.is_empty() {
            report.push(Violation::EmptyAlphabet);
        }
        if self.scale > MAX_SCALE {
            report.push(Violation::ScaleTooLarge(self.scale));
        }
        let mut seen = HashMap::new();
        for &c in &self.alphabet {
            if seen.insert(c, ()).is_some() {
                report.push(Violation::DuplicateCharacter(c));
            }
        }

        let mut check = |op: Op, chars: Vec<char>, raw: Option<&RawCost>, default_zero: bool| match raw {
            None if default_zero => {}
            None => report.push(Violation::IncompleteTable { op, chars }),
            Some(RawCost::NonFinite) => report.push(Violation::NonFinite { op, chars }),
            Some(&RawCost::Finite(value)) if value < 0 => report.push(Violation::NegativeCost { op, chars, value }),
            Some(&RawCost::Finite(value)) if value > MAX_COST => report.push(Violation::TooLarge { op, chars, value }),
            Some(_) => {}
        };
        for &a in &self.alphabet {
            check(Op::Del, vec![a], self.del.get(&a), false);
            check(Op::Ins, vec![a], self.ins.get(&a), false);
            for &b in &self.alphabet {
                check(Op::Sub, vec![a, b], self.sub.get(&(a, b)), a == b);
            }
        }

        for &c in self.del.keys() {
            if !seen.contains_key(&c) {
                report.push(Violation::UnknownCharacter {
                    op: Op::Del,
                    chars: vec![c],
                });
            }
        }
        for &c in self.ins.keys() {
            if !seen.contains_key(&c) {
                report.push(Violation::UnknownCharacter {
                    op: Op::Ins,
                    chars: vec![c],
                });
            }
        }
        for &(a, b) in self.sub.keys() {
            if !seen.contains_key(&a) || !seen.contains_key(&b) {
                report.push(Violation::UnknownCharacter {
                    op: Op::Sub,
                    chars: vec![a, b],
                });
            }
        }

        if report.is_empty() {
            Ok(())
        } else {
            Err(report)
        }
    }

    pub fn build(&self) -> Result<ScoringFunction> {
        self.validate()
            .map_err(|v| Error::InvalidScoring(v.iter().map(ToString::to_string).collect()))?;
        let alphabet = self.alphabet.clone();
        let sigma = alphabet.len();
        let finite = |raw: Option<&RawCost>| match raw {
            Some(&RawCost::Finite(v)) => v as Cost,
            _ => 0,
        };
        let mut del = Vec::with_capacity(sigma);
        let mut ins = Vec::with_capacity(sigma);
        let mut sub = Vec::with_capacity(sigma * sigma);
        for &a in &alphabet {
            del.push(finite(self.del.get(&a)));
            ins.push(finite(self.ins.get(&a)));
            for &b in &alphabet {
                sub.push(finite(self.sub.get(&(a, b))));
            }
        }
        let index = alphabet.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
        Ok(ScoringFunction {
            alphabet,
            index,
            del,
            ins,
            sub,
            scale: self.scale,
        })
    }
}

/// A validated scoring function. Immutable; cheap lookups by symbol index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoringFunction {
    alphabet: Vec<char>,
    index: HashMap<char, u32>,
    del: Vec<Cost>,
    ins: Vec<Cost>,
    sub: Vec<Cost>,
    scale: u32,
}

impl ScoringFunction {
    /// Unit costs for every operation, zero for replacing a character by itself.
    pub fn levenshtein(alphabet: impl IntoIterator<Item = char>) -> Result<Self> {
        let mut chars: Vec<char> = alphabet.into_iter().collect();
        chars.sort_unstable();
        chars.dedup();
        if chars.is_empty() {
            return Err(Error::InvalidArgument("empty alphabet".into()));
        }
        let mut table = ScoringTable::new(chars.iter().copied());
        for &a in &chars {
            table.set_del(a, 1).set_ins(a, 1);
            for &b in &chars {
                table.set_sub(a, b, i64::from(a != b));
            }
        }
        table.build()
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    /// Number of decimal places the integer costs carry.
    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn contains(&self, c: char) -> bool {
        self.index.contains_key(&c)
    }

    pub fn symbol(&self, c: char) -> Result<u32> {
        self.index.get(&c).copied().ok_or(Error::UnknownCharacter(c))
    }

    /// Maps characters to dense symbol indices.
    pub fn encode<I: IntoIterator<Item = char>>(&self, chars: I) -> Result<Vec<u32>> {
        chars.into_iter().map(|c| self.symbol(c)).collect()
    }

    pub fn del(&self, c: char) -> Option<Cost> {
        self.index.get(&c).map(|&i| self.del[i as usize])
    }

    pub fn ins(&self, c: char) -> Option<Cost> {
        self.index.get(&c).map(|&i| self.ins[i as usize])
    }

    pub fn sub(&self, a: char, b: char) -> Option<Cost> {
        Some(self.sub_sym(*self.index.get(&a)?, *self.index.get(&b)?))
    }

    #[inline]
    pub(crate) fn del_sym(&self, a: u32) -> Cost {
        self.del[a as usize]
    }

    #[inline]
    pub(crate) fn ins_sym(&self, b: u32) -> Cost {
        self.ins[b as usize]
    }

    #[inline]
    pub(crate) fn sub_sym(&self, a: u32, b: u32) -> Cost {
        self.sub[a as usize * self.alphabet.len() + b as usize]
    }

    /// Largest single-operation cost.
    pub fn max_cost(&self) -> Cost {
        self.del
            .iter()
            .chain(&self.ins)
            .chain(&self.sub)
            .copied()
            .max()
            .unwrap_or(0)
    }

    /// Round-trips back to a table with every entry explicit.
    pub fn to_table(&self) -> ScoringTable {
        let mut table = ScoringTable::new(self.alphabet.iter().copied());
        table.scale = self.scale;
        for (i, &a) in self.alphabet.iter().enumerate() {
            table.set_del(a, self.del[i] as i64).set_ins(a, self.ins[i] as i64);
            for (j, &b) in self.alphabet.iter().enumerate() {
                table.set_sub(a, b, self.sub[i * self.alphabet.len() + j] as i64);
            }
        }
        table
    }

    /// Renders a scaled cost as a decimal string (`"3"`, `"2.50"`).
    pub fn format_cost(&self, cost: Cost) -> String {
        if self.scale == 0 {
            return cost.to_string();
        }
        let unit = 10u64.pow(self.scale);
        format!("{}.{:0width$}", cost / unit, cost % unit, width = self.scale as usize)
    }
}

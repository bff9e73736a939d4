//! Straight-line programs: grammars that derive exactly one string.
//!
//! Every variable has exactly one production, either a single terminal or
//! an ordered pair of strictly smaller variables. The last variable is the
//! root. Derived lengths are cached, so lengths of exponentially long
//! derivations are available without expanding anything.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

mod lz78;

pub use lz78::{lz78_parse, Phrase};

/// A grammar variable. Stored zero-based; displayed one-based (`X1`, `X2`, ...).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId(u32);

impl VarId {
    pub fn from_index(index: usize) -> Self {
        VarId(u32::try_from(index).expect("SLP larger than u32::MAX variables"))
    }

    /// `X1` is number 1.
    pub fn from_number(number: usize) -> Self {
        assert!(number >= 1, "variable numbers start at 1");
        VarId::from_index(number - 1)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn number(self) -> usize {
        self.index() + 1
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X{}", self.number())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Production {
    Terminal(char),
    Pair(VarId, VarId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slp {
    productions: Vec<Production>,
    lengths: Vec<u64>,
}

impl Slp {
    /// Builds an SLP from productions listed in variable order; the last one is the root.
    pub fn new(productions: Vec<Production>) -> Result<Self> {
        if productions.is_empty() {
            return Err(Error::InvalidSlp("no productions".into()));
        }
        let mut lengths: Vec<u64> = Vec::with_capacity(productions.len());
        for (i, prod) in productions.iter().enumerate() {
            lengths.push(match *prod {
                Production::Terminal(_) => 1,
                Production::Pair(p, q) => {
                    check_backward(i, p, q)?;
                    lengths[p.index()]
                        .checked_add(lengths[q.index()])
                        .ok_or_else(|| Error::InvalidSlp(format!("length of X{} overflows", i + 1)))?
                }
            });
        }
        Ok(Slp { productions, lengths })
    }

    /// Assembles an SLP from `(number, production)` entries in any order,
    /// with one-based variable numbers as they appear in SLP files.
    pub fn from_numbered(entries: Vec<(usize, Production)>) -> Result<Self> {
        let n = entries.len();
        let mut slots: Vec<Option<Production>> = vec![None; n];
        for (number, prod) in entries {
            if number == 0 || number > n {
                return Err(Error::InvalidSlp(format!("variable index {number} outside 1..={n}")));
            }
            if slots[number - 1].replace(prod).is_some() {
                return Err(Error::InvalidSlp(format!("duplicate production for X{number}")));
            }
        }
        // every slot is filled: n entries, no duplicates, all in range
        Slp::new(slots.into_iter().map(Option::unwrap).collect())
    }

    /// Pairs productions with a caller-supplied length cache, without checks.
    /// Use [`Slp::validate`] to verify the result.
    pub fn from_parts_unchecked(productions: Vec<Production>, lengths: Vec<u64>) -> Self {
        Slp { productions, lengths }
    }

    /// Re-checks backward references and the cached lengths.
    pub fn validate(&self) -> Result<()> {
        if self.productions.is_empty() {
            return Err(Error::InvalidSlp("no productions".into()));
        }
        if self.lengths.len() != self.productions.len() {
            return Err(Error::InvalidSlp(format!(
                "length mismatch: {} cached lengths for {} variables",
                self.lengths.len(),
                self.productions.len()
            )));
        }
        for (i, prod) in self.productions.iter().enumerate() {
            let expected = match *prod {
                Production::Terminal(_) => Some(1),
                Production::Pair(p, q) => {
                    check_backward(i, p, q)?;
                    self.lengths[p.index()].checked_add(self.lengths[q.index()])
                }
            };
            if expected != Some(self.lengths[i]) {
                return Err(Error::InvalidSlp(format!(
                    "length mismatch at X{}: cached {}, derived {:?}",
                    i + 1,
                    self.lengths[i],
                    expected
                )));
            }
        }
        Ok(())
    }

    /// Number of variables, `n`.
    pub fn size(&self) -> usize {
        self.productions.len()
    }

    pub fn root(&self) -> VarId {
        VarId::from_index(self.productions.len() - 1)
    }

    /// Length of the derived string, `N`.
    pub fn derived_len(&self) -> u64 {
        self.lengths[self.productions.len() - 1]
    }

    pub fn productions(&self) -> &[Production] {
        &self.productions
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> {
        (0..self.productions.len()).map(VarId::from_index)
    }

    fn check(&self, var: VarId) -> Result<()> {
        if var.index() < self.productions.len() {
            Ok(())
        } else {
            Err(Error::VarOutOfRange(var))
        }
    }

    pub fn production(&self, var: VarId) -> Result<Production> {
        self.check(var)?;
        Ok(self.productions[var.index()])
    }

    /// Length of the string derived by `var`, from the cache.
    pub fn var_length(&self, var: VarId) -> Result<u64> {
        self.check(var)?;
        Ok(self.lengths[var.index()])
    }

    #[inline]
    pub(crate) fn len_of(&self, var: VarId) -> u64 {
        self.lengths[var.index()]
    }

    #[inline]
    pub(crate) fn prod_of(&self, var: VarId) -> Production {
        self.productions[var.index()]
    }

    /// The string derived by `var`.
    pub fn expand(&self, var: VarId) -> Result<String> {
        Ok(self.expand_chars(var)?.into_iter().collect())
    }

    pub fn expand_chars(&self, var: VarId) -> Result<Vec<char>> {
        self.check(var)?;
        let mut out = Vec::with_capacity(self.lengths[var.index()] as usize);
        self.expand_into(var, &mut out);
        Ok(out)
    }

    pub(crate) fn expand_into(&self, var: VarId, out: &mut Vec<char>) {
        let mut stack = vec![var];
        while let Some(v) = stack.pop() {
            match self.productions[v.index()] {
                Production::Terminal(c) => out.push(c),
                Production::Pair(p, q) => {
                    stack.push(q);
                    stack.push(p);
                }
            }
        }
    }

    /// The full derived string.
    pub fn text(&self) -> String {
        self.expand(self.root()).expect("root is in range")
    }

    /// Height of the parse tree; terminals have height 0.
    pub fn depth(&self) -> usize {
        let mut height = vec![0usize; self.productions.len()];
        for (i, prod) in self.productions.iter().enumerate() {
            if let Production::Pair(p, q) = *prod {
                height[i] = 1 + height[p.index()].max(height[q.index()]);
            }
        }
        height[self.productions.len() - 1]
    }

    /// Balanced grammar for `text`: one terminal per distinct character,
    /// then adjacent pairs level by level. Identical pairs share a variable.
    pub fn from_plain(text: &str) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::InvalidArgument("cannot build an SLP for empty text".into()));
        }
        let mut builder = Builder::default();
        let mut level: Vec<VarId> = text.chars().map(|c| builder.terminal(c)).collect();
        while level.len() > 1 {
            let next = level
                .chunks(2)
                .map(|pair| match *pair {
                    [p, q] => builder.pair(p, q),
                    [p] => p,
                    _ => unreachable!(),
                })
                .collect();
            level = next;
        }
        builder.finish(level[0])
    }

    /// Grammar built from an LZ78 factorization: one variable per phrase
    /// (referenced phrase followed by the extension character), then a
    /// left-deep chain concatenating the phrases.
    pub fn from_lz78(phrases: &[Phrase]) -> Result<Self> {
        if phrases.is_empty() {
            return Err(Error::InvalidArgument("empty phrase list".into()));
        }
        let mut builder = Builder::default();
        let mut phrase_vars: Vec<VarId> = Vec::with_capacity(phrases.len());
        for (k, phrase) in phrases.iter().enumerate() {
            if phrase.prev > k {
                return Err(Error::InvalidArgument(format!(
                    "phrase {} refers to phrase {} which is not yet defined",
                    k + 1,
                    phrase.prev
                )));
            }
            let var = match (phrase.prev, phrase.ext) {
                (0, Some(c)) => builder.terminal(c),
                (0, None) => return Err(Error::InvalidArgument(format!("phrase {} is empty", k + 1))),
                (p, Some(c)) => {
                    let t = builder.terminal(c);
                    builder.pair_unshared(phrase_vars[p - 1], t)
                }
                (p, None) => phrase_vars[p - 1],
            };
            phrase_vars.push(var);
        }
        let mut acc = phrase_vars[0];
        for &v in &phrase_vars[1..] {
            acc = builder.pair_unshared(acc, v);
        }
        builder.finish(acc)
    }

    /// Copy of this SLP keeping only variables reachable from the root,
    /// renumbered in their original order.
    pub fn trimmed(&self) -> Self {
        let n = self.productions.len();
        let mut live = vec![false; n];
        live[n - 1] = true;
        for i in (0..n).rev() {
            if live[i] {
                if let Production::Pair(p, q) = self.productions[i] {
                    live[p.index()] = true;
                    live[q.index()] = true;
                }
            }
        }
        let mut remap = vec![VarId(0); n];
        let mut productions = Vec::new();
        let mut lengths = Vec::new();
        for i in 0..n {
            if !live[i] {
                continue;
            }
            remap[i] = VarId::from_index(productions.len());
            productions.push(match self.productions[i] {
                Production::Pair(p, q) => Production::Pair(remap[p.index()], remap[q.index()]),
                t => t,
            });
            lengths.push(self.lengths[i]);
        }
        Slp { productions, lengths }
    }

    /// Grammar for the first `len` characters, built by descending from the
    /// root and chaining the fully covered subtrees. Adds `O(depth)` variables.
    pub fn prefix(&self, len: u64) -> Result<Self> {
        if len == 0 || len > self.derived_len() {
            return Err(Error::InvalidArgument(format!(
                "prefix length {len} outside 1..={}",
                self.derived_len()
            )));
        }
        let mut pieces = Vec::new();
        let mut v = self.root();
        let mut need = len;
        while need > 0 {
            if self.len_of(v) == need {
                pieces.push(v);
                break;
            }
            match self.prod_of(v) {
                Production::Pair(p, q) => {
                    if need <= self.len_of(p) {
                        v = p;
                    } else {
                        pieces.push(p);
                        need -= self.len_of(p);
                        v = q;
                    }
                }
                Production::Terminal(_) => unreachable!("terminal longer than remaining prefix"),
            }
        }
        let mut productions = self.productions.clone();
        let mut lengths = self.lengths.clone();
        let mut acc = pieces[0];
        for &piece in &pieces[1..] {
            productions.push(Production::Pair(acc, piece));
            lengths.push(lengths[acc.index()] + lengths[piece.index()]);
            acc = VarId::from_index(productions.len() - 1);
        }
        if acc.index() != productions.len() - 1 {
            // a single piece: make it the root by re-stating its production
            productions.push(productions[acc.index()]);
            lengths.push(lengths[acc.index()]);
        }
        Ok(Slp { productions, lengths }.trimmed())
    }
}

fn check_backward(i: usize, p: VarId, q: VarId) -> Result<()> {
    if p.index() >= i || q.index() >= i {
        return Err(Error::InvalidSlp(format!(
            "forward reference: X{} -> {} {}",
            i + 1,
            p,
            q
        )));
    }
    Ok(())
}

/// Incremental SLP construction with shared terminals.
#[derive(Default)]
struct Builder {
    productions: Vec<Production>,
    lengths: Vec<u64>,
    terminals: HashMap<char, VarId>,
    pairs: HashMap<(VarId, VarId), VarId>,
}

impl Builder {
    fn push(&mut self, prod: Production, len: u64) -> VarId {
        self.productions.push(prod);
        self.lengths.push(len);
        VarId::from_index(self.productions.len() - 1)
    }

    fn terminal(&mut self, c: char) -> VarId {
        if let Some(&v) = self.terminals.get(&c) {
            return v;
        }
        let v = self.push(Production::Terminal(c), 1);
        self.terminals.insert(c, v);
        v
    }

    fn pair(&mut self, p: VarId, q: VarId) -> VarId {
        if let Some(&v) = self.pairs.get(&(p, q)) {
            return v;
        }
        let v = self.pair_unshared(p, q);
        self.pairs.insert((p, q), v);
        v
    }

    fn pair_unshared(&mut self, p: VarId, q: VarId) -> VarId {
        let len = self.lengths[p.index()] + self.lengths[q.index()];
        self.push(Production::Pair(p, q), len)
    }

    fn finish(mut self, root: VarId) -> Result<Slp> {
        if root.index() != self.productions.len() - 1 {
            // root must be the last variable
            let prod = self.productions[root.index()];
            let len = self.lengths[root.index()];
            self.push(prod, len);
        }
        let slp = Slp {
            productions: self.productions,
            lengths: self.lengths,
        }
        .trimmed();
        debug_assert!(slp.validate().is_ok());
        Ok(slp)
    }
}

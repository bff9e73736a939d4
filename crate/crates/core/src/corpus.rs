//! Input families for tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::scoring::{ScoringFunction, ScoringTable};
use crate::slp::{Production, Slp, VarId};

/// Fibonacci word with `terms` variables: `X1 -> b`, `X2 -> a`,
/// `Xk -> X(k-1) X(k-2)`.
pub fn fibonacci_slp(terms: usize) -> Result<Slp> {
    if terms < 2 {
        return Err(Error::InvalidArgument("need at least two terms".into()));
    }
    let mut prods = vec![Production::Terminal('b'), Production::Terminal('a')];
    for k in 2..terms {
        prods.push(Production::Pair(VarId::from_index(k - 1), VarId::from_index(k - 2)));
    }
    Slp::new(prods)
}

/// First `len` characters of the Fibonacci word, as an SLP of size `O(log len)`.
pub fn fibonacci_prefix(len: u64) -> Result<Slp> {
    let mut terms = 2;
    while fibonacci_slp(terms)?.derived_len() < len {
        terms += 1;
    }
    fibonacci_slp(terms)?.prefix(len)
}

/// Thue-Morse word of length `2^order` over `{a, b}`.
pub fn thue_morse_slp(order: u32) -> Result<Slp> {
    // (complement of t_k, t_k) for each level, t_k last
    let mut prods = vec![Production::Terminal('b'), Production::Terminal('a')];
    for _ in 0..order {
        let (u, t) = (VarId::from_index(prods.len() - 2), VarId::from_index(prods.len() - 1));
        prods.push(Production::Pair(u, t));
        prods.push(Production::Pair(t, u));
    }
    Ok(Slp::new(prods)?.trimmed())
}

/// First `len` characters of the Thue-Morse word.
pub fn thue_morse_prefix(len: u64) -> Result<Slp> {
    let order = 64 - len.max(1).saturating_sub(1).leading_zeros();
    thue_morse_slp(order)?.prefix(len)
}

/// Same grammar with terminal characters renamed by `map`.
pub fn map_terminals(slp: &Slp, map: impl Fn(char) -> char) -> Slp {
    let prods = slp
        .productions()
        .iter()
        .map(|p| match *p {
            Production::Terminal(c) => Production::Terminal(map(c)),
            pair => pair,
        })
        .collect();
    Slp::new(prods).expect("renaming keeps the grammar valid")
}

/// The first `size` letters of `a..z`.
pub fn alphabet(size: usize) -> Vec<char> {
    ('a'..='z').take(size).collect()
}

pub fn random_string<R: Rng + ?Sized>(rng: &mut R, alphabet: &[char], len: usize) -> String {
    (0..len)
        .map(|_| *alphabet.choose(rng).expect("non-empty alphabet"))
        .collect()
}

/// Text with long repeats: random chunks copied from earlier text, mixed
/// with fresh characters.
pub fn random_repetitive<R: Rng + ?Sized>(rng: &mut R, alphabet: &[char], len: usize) -> String {
    let mut out: Vec<char> = Vec::with_capacity(len);
    while out.len() < len {
        if out.len() < 4 || rng.gen_bool(0.2) {
            out.push(*alphabet.choose(rng).expect("non-empty alphabet"));
        } else {
            let start = rng.gen_range(0..out.len());
            let take = rng.gen_range(1..=(out.len() - start)).min(len - out.len());
            out.extend_from_within(start..start + take);
        }
    }
    out.into_iter().collect()
}

/// Random integer costs in `0..=max_cost`, with `SUB(a,a) = 0`.
pub fn random_scoring<R: Rng + ?Sized>(rng: &mut R, alphabet: &[char], max_cost: i64) -> ScoringFunction {
    let mut table = ScoringTable::new(alphabet.iter().copied());
    for &a in alphabet {
        table.set_del(a, rng.gen_range(0..=max_cost));
        table.set_ins(a, rng.gen_range(0..=max_cost));
        for &b in alphabet {
            let cost = if a == b { 0 } else { rng.gen_range(0..=max_cost) };
            table.set_sub(a, b, cost);
        }
    }
    table.build().expect("random table is complete and non-negative")
}

/// Random grammar with `size` variables: a few terminals, then pairs of
/// earlier variables. Unreachable variables are dropped.
pub fn random_slp<R: Rng + ?Sized>(rng: &mut R, alphabet: &[char], size: usize) -> Slp {
    let terminals = alphabet.len().clamp(1, size.max(1));
    let mut prods: Vec<Production> = alphabet[..terminals].iter().map(|&c| Production::Terminal(c)).collect();
    while prods.len() < size.max(terminals + 1) {
        let k = prods.len();
        // lean towards recent variables so lengths grow
        let pick = |rng: &mut R| {
            if rng.gen_bool(0.5) {
                rng.gen_range(k.saturating_sub(3)..k)
            } else {
                rng.gen_range(0..k)
            }
        };
        let (p, q) = (pick(rng), pick(rng));
        prods.push(Production::Pair(VarId::from_index(p), VarId::from_index(q)));
    }
    Slp::new(prods).expect("pairs only refer backwards").trimmed()
}

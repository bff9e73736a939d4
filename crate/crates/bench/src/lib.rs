//! Input families shared by the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use slp_edit::corpus::{alphabet, fibonacci_prefix, map_terminals, random_repetitive, thue_morse_prefix};
use slp_edit::slp::lz78_parse;
use slp_edit::{Result, ScoringFunction, Slp};

/// A pair of grammars with the scoring they are compared under.
pub struct Workload {
    pub name: &'static str,
    pub a: Slp,
    pub b: Slp,
    pub scoring: ScoringFunction,
}

fn swap_ab(slp: &Slp) -> Slp {
    map_terminals(slp, |c| if c == 'a' { 'b' } else { 'a' })
}

/// Fibonacci word of length `len` against its letter-swapped copy.
pub fn fibonacci_pair(len: u64) -> Result<Workload> {
    let a = fibonacci_prefix(len)?;
    Ok(Workload {
        name: "fibonacci",
        b: swap_ab(&a),
        a,
        scoring: ScoringFunction::levenshtein("ab".chars())?,
    })
}

/// Thue-Morse prefix of length `len` against the Fibonacci word of the same length.
pub fn thue_morse_pair(len: u64) -> Result<Workload> {
    Ok(Workload {
        name: "thue-morse",
        a: thue_morse_prefix(len)?,
        b: fibonacci_prefix(len)?,
        scoring: ScoringFunction::levenshtein("ab".chars())?,
    })
}

/// Two LZ78-compressed repetitive strings over four letters.
pub fn repetitive_pair(len: usize, seed: u64) -> Result<Workload> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let chars = alphabet(4);
    let mut ingest = |_| Slp::from_lz78(&lz78_parse(&random_repetitive(&mut rng, &chars, len))?);
    Ok(Workload {
        name: "repetitive",
        a: ingest(0)?,
        b: ingest(1)?,
        scoring: ScoringFunction::levenshtein(chars)?,
    })
}

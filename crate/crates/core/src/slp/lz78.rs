use std::collections::HashMap;

use crate::error::{Error, Result};

/// One LZ78 phrase: a previously seen phrase (1-based, 0 for the empty
/// phrase) extended by one character. Only the final phrase may lack an
/// extension, when the input ends inside an existing phrase.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Phrase {
    pub prev: usize,
    pub ext: Option<char>,
}

impl From<(usize, char)> for Phrase {
    fn from((prev, c): (usize, char)) -> Self {
        Phrase { prev, ext: Some(c) }
    }
}

/// Standard LZ78 factorization.
pub fn lz78_parse(text: &str) -> Result<Vec<Phrase>> {
    if text.is_empty() {
        return Err(Error::InvalidArgument("cannot factorize empty text".into()));
    }
    let mut trie: HashMap<(usize, char), usize> = HashMap::new();
    let mut phrases = Vec::new();
    let mut cur = 0;
    for c in text.chars() {
        match trie.get(&(cur, c)) {
            Some(&next) => cur = next,
            None => {
                phrases.push(Phrase {
                    prev: cur,
                    ext: Some(c),
                });
                trie.insert((cur, c), phrases.len());
                cur = 0;
            }
        }
    }
    if cur != 0 {
        phrases.push(Phrase { prev: cur, ext: None });
    }
    Ok(phrases)
}

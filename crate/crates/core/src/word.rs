//! Words in a free monoid on ordered generators.

use std::cmp::Ordering;
use std::fmt;

/// A word over 0-based generator indices. Length equals tensor degree;
/// the empty word is the degree-0 monomial.
///
/// The derived-free `Ord` below is deglex: shorter words come first, words
/// of equal length compare lexicographically in declared generator order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn single(gen: usize) -> Self {
        Word(vec![gen as u8])
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        Word(indices.iter().map(|&i| i as u8).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&b| b as usize)
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// All `n^k` words of length `k` over `n` generators, in lex order.
    pub fn all_of_length(n_gens: usize, k: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..k {
            let mut next = Vec::with_capacity(out.len() * n_gens);
            for w in &out {
                for g in 0..n_gens {
                    let mut v = w.0.clone();
                    v.push(g as u8);
                    next.push(Word(v));
                }
            }
            out = next;
        }
        out
    }

    /// Render with the given generator names, `1` for the empty word.
    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        for g in self.word.letters() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(&self.names[g])?;
        }
        Ok(())
    }
}

//! Alphabets and words.
//!
//! An [`Alphabet`] is a finite ordered set of symbols; a [`Word`] is a finite
//! sequence of symbols. The declaration order of an alphabet is fixed at
//! construction and used everywhere a canonical enumeration is needed
//! (derivative closures, breadth-first searches, DOT output).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Characters with a fixed meaning in the expression grammars; they can never
/// be alphabet symbols.
pub const RESERVED_SYMBOLS: &[char] = &['∅', '#', 'ε', '_', '|', '&', '!', '*', '(', ')', '^'];

/// Default cap on alphabet size. Derivative and monoid closures scale with
/// the number of symbols, so large alphabets are opt-in via
/// [`Alphabet::with_limit`].
pub const DEFAULT_MAX_SYMBOLS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlphabetError {
    #[error("duplicate symbol {0:?} in alphabet")]
    DuplicateSymbol(char),
    #[error("symbol {0:?} is reserved by the expression grammar")]
    ReservedSymbol(char),
    #[error("alphabet has {count} symbols, limit is {max}")]
    TooManySymbols { count: usize, max: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("symbol {symbol:?} at position {position} is not in the alphabet")]
    ForeignSymbol { symbol: char, position: usize },
}

/// A finite, ordered set of distinct symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<char>", into = "Vec<char>")]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    /// Builds an alphabet from symbols in declaration order, enforcing the
    /// default size limit.
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self, AlphabetError> {
        Self::with_limit(symbols, DEFAULT_MAX_SYMBOLS)
    }

    /// Builds an alphabet with an explicit size limit.
    pub fn with_limit(
        symbols: impl IntoIterator<Item = char>,
        max: usize,
    ) -> Result<Self, AlphabetError> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.len() > max {
            return Err(AlphabetError::TooManySymbols { count: symbols.len(), max });
        }
        for (i, &s) in symbols.iter().enumerate() {
            if RESERVED_SYMBOLS.contains(&s) {
                return Err(AlphabetError::ReservedSymbol(s));
            }
            if symbols[..i].contains(&s) {
                return Err(AlphabetError::DuplicateSymbol(s));
            }
        }
        Ok(Alphabet { symbols })
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn contains(&self, symbol: char) -> bool {
        self.symbols.contains(&symbol)
    }

    /// Position of `symbol` in declaration order.
    pub fn index_of(&self, symbol: char) -> Option<usize> {
        self.symbols.iter().position(|&s| s == symbol)
    }

    pub fn symbol(&self, index: usize) -> char {
        self.symbols[index]
    }

    /// All words of length at most `max_len`, in shortlex order (length
    /// first, then declaration order of symbols).
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        let mut words = vec![Word::epsilon()];
        let mut last_layer: Vec<Word> = vec![Word::epsilon()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &last_layer {
                for &a in &self.symbols {
                    let ext = w.extended(a);
                    words.push(ext.clone());
                    next.push(ext);
                }
            }
            if next.is_empty() {
                break;
            }
            last_layer = next;
        }
        words
    }
}

impl TryFrom<Vec<char>> for Alphabet {
    type Error = AlphabetError;
    fn try_from(symbols: Vec<char>) -> Result<Self, AlphabetError> {
        // Serde input may legitimately exceed the default cap only via
        // explicit construction, so deserialization keeps the default limit
        // generous: the declared symbols themselves are the contract.
        Alphabet::with_limit(symbols, usize::MAX)
    }
}

impl From<Alphabet> for Vec<char> {
    fn from(a: Alphabet) -> Vec<char> {
        a.symbols
    }
}

impl FromStr for Alphabet {
    type Err = AlphabetError;
    fn from_str(s: &str) -> Result<Self, AlphabetError> {
        Alphabet::new(s.chars())
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// A finite sequence of symbols. The empty word displays as `ε`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "String", into = "String")]
pub struct Word {
    symbols: Vec<char>,
}

impl Word {
    pub fn epsilon() -> Self {
        Word { symbols: Vec::new() }
    }

    /// Builds a word, checking every symbol against `alphabet`.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self, WordError> {
        let mut symbols = Vec::new();
        for (position, symbol) in text.chars().enumerate() {
            if !alphabet.contains(symbol) {
                return Err(WordError::ForeignSymbol { symbol, position });
            }
            symbols.push(symbol);
        }
        Ok(Word { symbols })
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// This word with `symbol` appended.
    pub fn extended(&self, symbol: char) -> Word {
        let mut symbols = self.symbols.clone();
        symbols.push(symbol);
        Word { symbols }
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        Word { symbols }
    }
}

impl From<Vec<char>> for Word {
    fn from(symbols: Vec<char>) -> Self {
        Word { symbols }
    }
}

impl From<String> for Word {
    fn from(s: String) -> Self {
        Word { symbols: s.chars().collect() }
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        w.symbols.into_iter().collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.symbols.is_empty() {
            write!(f, "ε")
        } else {
            for s in &self.symbols {
                write!(f, "{s}")?;
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_rejects_duplicates_and_reserved() {
        assert_eq!(
            Alphabet::new("aba".chars()),
            Err(AlphabetError::DuplicateSymbol('a'))
        );
        assert_eq!(
            Alphabet::new("a*".chars()),
            Err(AlphabetError::ReservedSymbol('*'))
        );
    }

    #[test]
    fn alphabet_order_is_declaration_order() {
        let a = Alphabet::new("ba".chars()).unwrap();
        assert_eq!(a.symbols(), &['b', 'a']);
        assert_eq!(a.index_of('a'), Some(1));
    }

    #[test]
    fn empty_alphabet_is_allowed() {
        let a = Alphabet::new([]).unwrap();
        assert!(a.is_empty());
        assert_eq!(a.words_up_to(4), vec![Word::epsilon()]);
    }

    #[test]
    fn word_parse_checks_membership() {
        let ab = Alphabet::new("ab".chars()).unwrap();
        assert!(Word::parse("abba", &ab).is_ok());
        assert_eq!(
            Word::parse("abc", &ab),
            Err(WordError::ForeignSymbol { symbol: 'c', position: 2 })
        );
    }

    #[test]
    fn words_up_to_is_shortlex() {
        let ab = Alphabet::new("ab".chars()).unwrap();
        let words: Vec<String> = ab.words_up_to(2).into_iter().map(String::from).collect();
        assert_eq!(words, ["", "a", "b", "aa", "ab", "ba", "bb"]);
    }
}

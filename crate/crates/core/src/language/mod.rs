//! Regular languages presented by extended regular expressions.
//!
//! A [`Language`] pairs an expression in ACI-normal form with the alphabet
//! it is read over. The alphabet matters: `!∅` over `{a}` and over `{a,b}`
//! are different languages, and derivatives range over the declared symbols.
//!
//! The key operation is the left quotient `a⁻¹L = {w | aw ∈ L}`, computed
//! syntactically by [`Language::derivative`]. Because normal forms identify
//! enough similar expressions, iterating derivatives from any expression
//! reaches only finitely many distinct normal forms
//! ([`Language::derivative_count_bound`] gives an explicit cap), which is
//! what makes every construction downstream — automata, monoids, profinite
//! approximations — effective.

mod ast;
mod display;
mod equiv;
mod parse;

pub use ast::Ast;
pub use parse::{ParseError, ParseErrorKind};

pub(crate) use ast::{complement_of, concat_of, intersect_of, star_of, union_of};
pub(crate) use equiv::{bisimilar, DerivCache};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::alphabet::{Alphabet, Word};

/// Errors from constructing or combining languages.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LanguageError {
    #[error("expression uses symbol {symbol:?} outside the alphabet")]
    ForeignSymbol { symbol: char },
    #[error("operands are over different alphabets ({left} vs {right})")]
    AlphabetMismatch { left: String, right: String },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A regular language over a fixed alphabet, carried by an expression in
/// ACI-normal form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LanguageWire", into = "LanguageWire")]
pub struct Language {
    alphabet: Alphabet,
    ast: Ast,
}

#[derive(Serialize, Deserialize)]
struct LanguageWire {
    alphabet: Alphabet,
    ast: Ast,
}

impl TryFrom<LanguageWire> for Language {
    type Error = LanguageError;

    fn try_from(wire: LanguageWire) -> Result<Language, LanguageError> {
        Language::new(wire.ast, wire.alphabet)
    }
}

impl From<Language> for LanguageWire {
    fn from(language: Language) -> LanguageWire {
        LanguageWire {
            alphabet: language.alphabet,
            ast: language.ast,
        }
    }
}

impl Language {
    /// Normalizes `ast` and checks every literal lies in `alphabet`.
    pub fn new(ast: Ast, alphabet: Alphabet) -> Result<Language, LanguageError> {
        let mut literals = Vec::new();
        ast.literals(&mut literals);
        for symbol in literals {
            if !alphabet.contains(symbol) {
                return Err(LanguageError::ForeignSymbol { symbol });
            }
        }
        Ok(Language {
            ast: ast.normalize(),
            alphabet,
        })
    }

    /// Parses expression syntax over the given alphabet.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Language, LanguageError> {
        let ast = parse::parse(text, alphabet)?;
        Ok(Language {
            ast,
            alphabet: alphabet.clone(),
        })
    }

    /// The language containing no words.
    pub fn empty(alphabet: Alphabet) -> Language {
        Language {
            ast: Ast::Empty,
            alphabet,
        }
    }

    /// The language containing exactly the empty word.
    pub fn epsilon(alphabet: Alphabet) -> Language {
        Language {
            ast: Ast::Epsilon,
            alphabet,
        }
    }

    /// The language of all words, Σ*.
    pub fn full(alphabet: Alphabet) -> Language {
        Language {
            ast: Ast::full(),
            alphabet,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn ast(&self) -> &Ast {
        &self.ast
    }

    /// True iff the empty word is in the language.
    pub fn nullable(&self) -> bool {
        self.ast.nullable()
    }

    /// Left quotient by one symbol: `a⁻¹L = {w | aw ∈ L}`.
    pub fn derivative(&self, symbol: char) -> Result<Language, LanguageError> {
        if !self.alphabet.contains(symbol) {
            return Err(LanguageError::ForeignSymbol { symbol });
        }
        Ok(Language {
            ast: self.ast.derivative(symbol),
            alphabet: self.alphabet.clone(),
        })
    }

    /// Left quotient by a word: `u⁻¹L = {w | uw ∈ L}`.
    pub fn word_derivative(&self, word: &Word) -> Result<Language, LanguageError> {
        let mut ast = self.ast.clone();
        for &symbol in word.symbols() {
            if !self.alphabet.contains(symbol) {
                return Err(LanguageError::ForeignSymbol { symbol });
            }
            ast = ast.derivative(symbol);
        }
        Ok(Language {
            ast,
            alphabet: self.alphabet.clone(),
        })
    }

    /// Membership: `w ∈ L` iff `w⁻¹L` is nullable.
    pub fn contains(&self, word: &Word) -> Result<bool, LanguageError> {
        Ok(self.word_derivative(word)?.nullable())
    }

    /// Upper bound on the number of distinct word derivatives (states of the
    /// derivative closure) guaranteed by ACI normalization.
    pub fn derivative_count_bound(&self) -> u64 {
        self.ast.derivative_count_bound()
    }

    pub fn union(&self, other: &Language) -> Result<Language, LanguageError> {
        let ast = union_of(vec![self.ast.clone(), other.clone_ast_checked(self)?]);
        Ok(Language {
            ast,
            alphabet: self.alphabet.clone(),
        })
    }

    pub fn intersect(&self, other: &Language) -> Result<Language, LanguageError> {
        let ast = intersect_of(vec![self.ast.clone(), other.clone_ast_checked(self)?]);
        Ok(Language {
            ast,
            alphabet: self.alphabet.clone(),
        })
    }

    pub fn concat(&self, other: &Language) -> Result<Language, LanguageError> {
        let ast = concat_of(vec![self.ast.clone(), other.clone_ast_checked(self)?]);
        Ok(Language {
            ast,
            alphabet: self.alphabet.clone(),
        })
    }

    pub fn complement(&self) -> Language {
        Language {
            ast: complement_of(self.ast.clone()),
            alphabet: self.alphabet.clone(),
        }
    }

    pub fn star(&self) -> Language {
        Language {
            ast: star_of(self.ast.clone()),
            alphabet: self.alphabet.clone(),
        }
    }

    /// Symmetric difference, used when hunting for separating words.
    pub fn symmetric_difference(&self, other: &Language) -> Result<Language, LanguageError> {
        let left = self.intersect(&other.complement())?;
        let right = other.intersect(&self.complement())?;
        left.union(&right)
    }

    /// Semantic equality: do the two expressions denote the same language?
    /// Errors if the alphabets differ.
    pub fn semantically_equal(&self, other: &Language) -> Result<bool, LanguageError> {
        other.clone_ast_checked(self)?;
        Ok(bisimilar(
            &self.alphabet,
            &self.ast,
            &other.ast,
            &mut DerivCache::new(),
        ))
    }

    fn clone_ast_checked(&self, context: &Language) -> Result<Ast, LanguageError> {
        if self.alphabet != context.alphabet {
            return Err(LanguageError::AlphabetMismatch {
                left: context.alphabet.to_string(),
                right: self.alphabet.to_string(),
            });
        }
        Ok(self.ast.clone())
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.ast, f)
    }
}

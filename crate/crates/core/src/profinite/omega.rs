//! ω-terms: finite syntax for elements of the free profinite monoid.
//!
//! Grammar: alphabet symbols, juxtaposition for product, postfix `^w` for
//! the ω-power (the unique idempotent among the powers of an element), and
//! parentheses. Example: `(ab)^w a`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::alphabet::Alphabet;
use crate::monoid::{MonoidError, SigmaMonoid};

/// A term over symbols, product, and ω-power.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OmegaTerm {
    Symbol(char),
    Concat(Box<OmegaTerm>, Box<OmegaTerm>),
    OmegaPower(Box<OmegaTerm>),
}

/// Parse failures for ω-terms, with character offsets.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OmegaParseError {
    #[error("empty term at position {position}")]
    EmptyTerm { position: usize },
    #[error("unexpected character {symbol:?} at position {position}")]
    UnexpectedChar { symbol: char, position: usize },
    #[error("symbol {symbol:?} at position {position} is not in the alphabet")]
    ForeignSymbol { symbol: char, position: usize },
    #[error("`^` at position {position} must be followed by `w`")]
    BadPowerSuffix { position: usize },
    #[error("unbalanced parenthesis at position {position}")]
    Unbalanced { position: usize },
}

impl OmegaTerm {
    pub fn symbol(symbol: char) -> OmegaTerm {
        OmegaTerm::Symbol(symbol)
    }

    pub fn concat(left: OmegaTerm, right: OmegaTerm) -> OmegaTerm {
        OmegaTerm::Concat(Box::new(left), Box::new(right))
    }

    pub fn omega_power(inner: OmegaTerm) -> OmegaTerm {
        OmegaTerm::OmegaPower(Box::new(inner))
    }

    /// Parses `text` against the alphabet. `^` is reserved by [`Alphabet`],
    /// so `^w` is never ambiguous with a symbol.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<OmegaTerm, OmegaParseError> {
        let chars: Vec<char> = text.chars().collect();
        let mut parser = TermParser {
            chars: &chars,
            pos: 0,
            alphabet,
        };
        let term = parser.term()?;
        match parser.peek() {
            None => Ok(term),
            Some(')') => Err(OmegaParseError::Unbalanced {
                position: parser.pos,
            }),
            Some(symbol) => Err(OmegaParseError::UnexpectedChar {
                symbol,
                position: parser.pos,
            }),
        }
    }

    /// Evaluates in a Σ-monoid: symbols to their generators, concatenation
    /// to the product, ω-power to the idempotent power.
    pub fn eval(&self, node: &SigmaMonoid) -> Result<usize, MonoidError> {
        match self {
            OmegaTerm::Symbol(symbol) => node.generator(*symbol),
            OmegaTerm::Concat(left, right) => {
                let l = left.eval(node)?;
                let r = right.eval(node)?;
                Ok(node.monoid().mul(l, r))
            }
            OmegaTerm::OmegaPower(inner) => {
                let x = inner.eval(node)?;
                node.monoid().idempotent_power(x)
            }
        }
    }

    /// Every symbol occurring in the term.
    pub fn symbols(&self) -> Vec<char> {
        fn collect(term: &OmegaTerm, out: &mut Vec<char>) {
            match term {
                OmegaTerm::Symbol(symbol) => {
                    if !out.contains(symbol) {
                        out.push(*symbol);
                    }
                }
                OmegaTerm::Concat(left, right) => {
                    collect(left, out);
                    collect(right, out);
                }
                OmegaTerm::OmegaPower(inner) => collect(inner, out),
            }
        }
        let mut out = Vec::new();
        collect(self, &mut out);
        out
    }
}

impl std::fmt::Display for OmegaTerm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OmegaTerm::Symbol(symbol) => write!(f, "{symbol}"),
            OmegaTerm::Concat(left, right) => {
                write!(f, "{left}")?;
                // right-nested products need parentheses to reparse into
                // the same tree; everything else concatenates flat
                if matches!(**right, OmegaTerm::Concat(..)) {
                    write!(f, "({right})")
                } else {
                    write!(f, "{right}")
                }
            }
            OmegaTerm::OmegaPower(inner) => {
                if matches!(**inner, OmegaTerm::Symbol(_)) {
                    write!(f, "{inner}^w")
                } else {
                    write!(f, "({inner})^w")
                }
            }
        }
    }
}

struct TermParser<'a> {
    chars: &'a [char],
    pos: usize,
    alphabet: &'a Alphabet,
}

impl TermParser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    /// term := factor+ (left-associated product)
    fn term(&mut self) -> Result<OmegaTerm, OmegaParseError> {
        let mut acc = self.factor()?;
        while let Some(symbol) = self.peek() {
            if symbol == ')' || symbol == '^' {
                break;
            }
            acc = OmegaTerm::concat(acc, self.factor()?);
        }
        Ok(acc)
    }

    /// factor := primary ("^w")*
    fn factor(&mut self) -> Result<OmegaTerm, OmegaParseError> {
        let mut term = self.primary()?;
        while self.peek() == Some('^') {
            self.pos += 1;
            if self.peek() != Some('w') {
                return Err(OmegaParseError::BadPowerSuffix {
                    position: self.pos - 1,
                });
            }
            self.pos += 1;
            term = OmegaTerm::omega_power(term);
        }
        Ok(term)
    }

    /// primary := symbol | "(" term ")"
    fn primary(&mut self) -> Result<OmegaTerm, OmegaParseError> {
        match self.peek() {
            None => Err(OmegaParseError::EmptyTerm { position: self.pos }),
            Some('(') => {
                let open = self.pos;
                self.pos += 1;
                let term = self.term()?;
                if self.peek() != Some(')') {
                    return Err(OmegaParseError::Unbalanced { position: open });
                }
                self.pos += 1;
                Ok(term)
            }
            Some(symbol) if self.alphabet.contains(symbol) => {
                self.pos += 1;
                Ok(OmegaTerm::Symbol(symbol))
            }
            Some(symbol @ (')' | '^')) => Err(OmegaParseError::UnexpectedChar {
                symbol,
                position: self.pos,
            }),
            Some(symbol) => Err(OmegaParseError::ForeignSymbol {
                symbol,
                position: self.pos,
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::FiniteMonoid;

    fn ab() -> Alphabet {
        "ab".parse().unwrap()
    }

    #[test]
    fn parses_symbols_products_and_powers() {
        let t = OmegaTerm::parse("ab", &ab()).unwrap();
        assert_eq!(
            t,
            OmegaTerm::concat(OmegaTerm::symbol('a'), OmegaTerm::symbol('b'))
        );
        let t = OmegaTerm::parse("a^w", &ab()).unwrap();
        assert_eq!(t, OmegaTerm::omega_power(OmegaTerm::symbol('a')));
        // postfix binds tighter than juxtaposition
        let t = OmegaTerm::parse("ab^w", &ab()).unwrap();
        assert_eq!(
            t,
            OmegaTerm::concat(
                OmegaTerm::symbol('a'),
                OmegaTerm::omega_power(OmegaTerm::symbol('b'))
            )
        );
        let t = OmegaTerm::parse("(ab)^w", &ab()).unwrap();
        assert_eq!(
            t,
            OmegaTerm::omega_power(OmegaTerm::concat(
                OmegaTerm::symbol('a'),
                OmegaTerm::symbol('b')
            ))
        );
        // iterated powers chain without parentheses
        let t = OmegaTerm::parse("a^w^w", &ab()).unwrap();
        assert_eq!(
            t,
            OmegaTerm::omega_power(OmegaTerm::omega_power(OmegaTerm::symbol('a')))
        );
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert_eq!(
            OmegaTerm::parse("", &ab()),
            Err(OmegaParseError::EmptyTerm { position: 0 })
        );
        assert_eq!(
            OmegaTerm::parse("a^b", &ab()),
            Err(OmegaParseError::BadPowerSuffix { position: 1 })
        );
        assert_eq!(
            OmegaTerm::parse("ac", &ab()),
            Err(OmegaParseError::ForeignSymbol {
                symbol: 'c',
                position: 1
            })
        );
        assert_eq!(
            OmegaTerm::parse("(ab", &ab()),
            Err(OmegaParseError::Unbalanced { position: 0 })
        );
        assert_eq!(
            OmegaTerm::parse("ab)", &ab()),
            Err(OmegaParseError::Unbalanced { position: 2 })
        );
        assert_eq!(
            OmegaTerm::parse("^w", &ab()),
            Err(OmegaParseError::UnexpectedChar {
                symbol: '^',
                position: 0
            })
        );
    }

    #[test]
    fn display_roundtrips() {
        for text in ["a", "ab", "a^w", "ab^w", "(ab)^w", "(ab)^wa", "a^w^w"] {
            let term = OmegaTerm::parse(text, &ab()).unwrap();
            let printed = term.to_string();
            assert_eq!(
                OmegaTerm::parse(&printed, &ab()).unwrap(),
                term,
                "{text} → {printed}"
            );
        }
    }

    #[test]
    fn eval_uses_idempotent_powers() {
        // Z2 with both generators = 1: a^w = 0, so (a^w)b = 0·1 = 1
        let z2 = SigmaMonoid::new(FiniteMonoid::cyclic(2), ab(), vec![1, 1]).unwrap();
        let t = OmegaTerm::parse("a^wb", &ab()).unwrap();
        assert_eq!(t.eval(&z2).unwrap(), 1);
        // in a group, every ω-power is the identity
        let z3 = SigmaMonoid::new(FiniteMonoid::cyclic(3), "a".parse().unwrap(), vec![1]).unwrap();
        let t = OmegaTerm::parse("a^w", &"a".parse().unwrap()).unwrap();
        assert_eq!(t.eval(&z3).unwrap(), 0);
        // foreign symbols surface as monoid errors
        let t = OmegaTerm::symbol('z');
        assert!(matches!(
            t.eval(&z2),
            Err(MonoidError::ForeignSymbol { symbol: 'z' })
        ));
    }
}

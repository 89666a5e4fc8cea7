//! Recursive-descent parser for the extended regular expression syntax.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! union     := intersect ('|' intersect)*
//! intersect := concat ('&' concat)*
//! concat    := factor+                    (juxtaposition)
//! factor    := '!' factor | starred
//! starred   := primary '*'*
//! primary   := literal | '∅' | '#' | 'ε' | '_' | '(' union ')'
//! ```
//!
//! `#` and `_` are ASCII spellings of `∅` and `ε`. Literals are exactly the
//! declared alphabet symbols; any other character is rejected. There is no
//! whitespace skipping, so the empty string is a syntax error rather than ε.

use thiserror::Error;

use super::ast::{complement_of, concat_of, intersect_of, star_of, union_of, Ast};
use crate::alphabet::Alphabet;

/// Syntax error with the character position (0-based) where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at position {position}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("character {0:?} is not in the alphabet")]
    ForeignSymbol(char),
}

pub(crate) fn parse(text: &str, alphabet: &Alphabet) -> Result<Ast, ParseError> {
    let mut parser = Parser {
        chars: text.chars().collect(),
        pos: 0,
        alphabet,
    };
    let ast = parser.union()?;
    match parser.peek() {
        None => Ok(ast),
        // The only structural character that can block progress here is an
        // unmatched ')'; anything else is a symbol outside the alphabet.
        Some(')') => Err(parser.fail(ParseErrorKind::UnexpectedChar(')'))),
        Some(c) => Err(parser.fail(ParseErrorKind::ForeignSymbol(c))),
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn fail(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            position: self.pos,
            kind,
        }
    }

    fn union(&mut self) -> Result<Ast, ParseError> {
        let mut alternatives = vec![self.intersect()?];
        while self.peek() == Some('|') {
            self.bump();
            alternatives.push(self.intersect()?);
        }
        Ok(union_of(alternatives))
    }

    fn intersect(&mut self) -> Result<Ast, ParseError> {
        let mut parts = vec![self.concat()?];
        while self.peek() == Some('&') {
            self.bump();
            parts.push(self.concat()?);
        }
        Ok(intersect_of(parts))
    }

    fn concat(&mut self) -> Result<Ast, ParseError> {
        let mut factors = vec![self.factor()?];
        while let Some(c) = self.peek() {
            if c == '!' || self.starts_primary(c) {
                factors.push(self.factor()?);
            } else {
                break;
            }
        }
        Ok(concat_of(factors))
    }

    fn starts_primary(&self, c: char) -> bool {
        matches!(c, '∅' | '#' | 'ε' | '_' | '(') || self.alphabet.contains(c)
    }

    fn factor(&mut self) -> Result<Ast, ParseError> {
        if self.peek() == Some('!') {
            self.bump();
            Ok(complement_of(self.factor()?))
        } else {
            self.starred()
        }
    }

    fn starred(&mut self) -> Result<Ast, ParseError> {
        let mut ast = self.primary()?;
        while self.peek() == Some('*') {
            self.bump();
            ast = star_of(ast);
        }
        Ok(ast)
    }

    fn primary(&mut self) -> Result<Ast, ParseError> {
        match self.peek() {
            None => Err(self.fail(ParseErrorKind::UnexpectedEnd)),
            Some('∅') | Some('#') => {
                self.bump();
                Ok(Ast::Empty)
            }
            Some('ε') | Some('_') => {
                self.bump();
                Ok(Ast::Epsilon)
            }
            Some('(') => {
                self.bump();
                let inner = self.union()?;
                match self.bump() {
                    Some(')') => Ok(inner),
                    Some(c) => {
                        self.pos -= 1;
                        Err(self.fail(ParseErrorKind::UnexpectedChar(c)))
                    }
                    None => Err(self.fail(ParseErrorKind::UnexpectedEnd)),
                }
            }
            Some(c) if self.alphabet.contains(c) => {
                self.bump();
                Ok(Ast::Literal(c))
            }
            Some(c) if matches!(c, ')' | '|' | '&' | '*' | '!') => {
                Err(self.fail(ParseErrorKind::UnexpectedChar(c)))
            }
            Some(c) => Err(self.fail(ParseErrorKind::ForeignSymbol(c))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        "ab".parse().unwrap()
    }

    fn lit(c: char) -> Ast {
        Ast::Literal(c)
    }

    #[test]
    fn precedence_star_tightest() {
        // ab* = a(b*), not (ab)*
        let ast = parse("ab*", &ab()).unwrap();
        assert_eq!(
            ast,
            Ast::Concat(vec![lit('a'), Ast::Star(Box::new(lit('b')))])
        );
    }

    #[test]
    fn precedence_complement_over_concat() {
        // !ab = (!a)b
        let ast = parse("!ab", &ab()).unwrap();
        assert_eq!(
            ast,
            Ast::Concat(vec![Ast::Complement(Box::new(lit('a'))), lit('b')])
        );
    }

    #[test]
    fn precedence_star_over_complement() {
        // !a* = !(a*)
        let ast = parse("!a*", &ab()).unwrap();
        assert_eq!(
            ast,
            Ast::Complement(Box::new(Ast::Star(Box::new(lit('a')))))
        );
    }

    #[test]
    fn precedence_concat_over_intersect_over_union() {
        // a|ab&b = a | ((ab) & b)
        let ast = parse("a|ab&b", &ab()).unwrap();
        let ab_cat = Ast::Concat(vec![lit('a'), lit('b')]);
        assert_eq!(
            ast,
            Ast::Union(vec![lit('a'), Ast::Intersect(vec![lit('b'), ab_cat])])
        );
    }

    #[test]
    fn ascii_aliases() {
        assert_eq!(parse("#", &ab()).unwrap(), Ast::Empty);
        assert_eq!(parse("_", &ab()).unwrap(), Ast::Epsilon);
        assert_eq!(parse("∅", &ab()).unwrap(), Ast::Empty);
        assert_eq!(parse("ε", &ab()).unwrap(), Ast::Epsilon);
    }

    #[test]
    fn empty_input_is_an_error() {
        let err = parse("", &ab()).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnexpectedEnd);
        assert_eq!(err.position, 0);
    }

    #[test]
    fn foreign_symbol_reported_with_position() {
        let err = parse("ac", &ab()).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::ForeignSymbol('c'));
        assert_eq!(err.position, 1);
    }

    #[test]
    fn unbalanced_parens() {
        let err = parse("(a", &ab()).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnexpectedEnd);
        let err = parse("a)", &ab()).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnexpectedChar(')'));
    }

    #[test]
    fn parse_result_is_normalized() {
        assert_eq!(parse("b|a|b", &ab()).unwrap(), parse("a|b", &ab()).unwrap());
        assert_eq!(parse("∅*", &ab()).unwrap(), Ast::Epsilon);
        assert_eq!(parse("!!a", &ab()).unwrap(), lit('a'));
    }
}

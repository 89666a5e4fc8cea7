//! Brute-force language oracle for cross-checking the derivative engine.
//!
//! Denotations are computed by set enumeration over the finite universe of
//! words up to a length cap — structural recursion with union /
//! intersection / set-difference and fixpoint iteration for star. No
//! derivatives, no automata: an independent witness for what each
//! expression means.

use std::collections::BTreeSet;

use regulus::alphabet::{Alphabet, Word};
use regulus::language::Language;
use regulus::Ast;

/// All words over `alphabet` of length ≤ `max_len`, as plain strings.
pub fn all_words(alphabet: &Alphabet, max_len: usize) -> Vec<String> {
    alphabet
        .words_up_to(max_len)
        .iter()
        .map(word_string)
        .collect()
}

/// A word as the string of its symbols (empty string for ε).
pub fn word_string(word: &Word) -> String {
    word.symbols().iter().collect()
}

/// The members of `language` among all words of length ≤ `max_len`,
/// computed by set enumeration.
pub fn oracle_members(language: &Language, max_len: usize) -> BTreeSet<String> {
    let universe: BTreeSet<String> = all_words(language.alphabet(), max_len)
        .into_iter()
        .collect();
    denote(language.ast(), &universe, max_len)
}

fn denote(ast: &Ast, universe: &BTreeSet<String>, max_len: usize) -> BTreeSet<String> {
    match ast {
        Ast::Empty => BTreeSet::new(),
        Ast::Epsilon => [String::new()].into_iter().collect(),
        Ast::Literal(symbol) => {
            let mut set = BTreeSet::new();
            if max_len >= 1 {
                set.insert(symbol.to_string());
            }
            set
        }
        Ast::Union(children) => children
            .iter()
            .flat_map(|child| denote(child, universe, max_len))
            .collect(),
        Ast::Intersect(children) => {
            let mut sets = children.iter().map(|child| denote(child, universe, max_len));
            let first = sets.next().expect("normalized intersections are non-unary");
            sets.fold(first, |acc, set| acc.intersection(&set).cloned().collect())
        }
        Ast::Concat(children) => {
            let mut acc: BTreeSet<String> = [String::new()].into_iter().collect();
            for child in children {
                acc = concat_sets(&acc, &denote(child, universe, max_len), max_len);
                if acc.is_empty() {
                    break;
                }
            }
            acc
        }
        Ast::Complement(inner) => {
            let members = denote(inner, universe, max_len);
            universe.difference(&members).cloned().collect()
        }
        Ast::Star(inner) => {
            let step = denote(inner, universe, max_len);
            let mut acc: BTreeSet<String> = [String::new()].into_iter().collect();
            loop {
                let grown = concat_sets(&acc, &step, max_len);
                let before = acc.len();
                acc.extend(grown);
                if acc.len() == before {
                    return acc;
                }
            }
        }
    }
}

/// Pairwise concatenation, truncated to the length cap.
fn concat_sets(
    left: &BTreeSet<String>,
    right: &BTreeSet<String>,
    max_len: usize,
) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for u in left {
        let u_len = u.chars().count();
        if u_len > max_len {
            continue;
        }
        for v in right {
            if u_len + v.chars().count() <= max_len {
                out.insert(format!("{u}{v}"));
            }
        }
    }
    out
}

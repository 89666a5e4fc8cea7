//! Semantic equality of expressions by derivative bisimulation.
//!
//! Two expressions denote the same language iff no word separates them.
//! The check explores pairs of word derivatives in lockstep, merging pairs
//! with a union-find so each equivalence class is visited once; ACI
//! normalization guarantees only finitely many derivatives exist, so the
//! exploration terminates. A nullability mismatch on any reached pair is a
//! separating word.

use std::collections::HashMap;

use super::ast::Ast;
use crate::alphabet::Alphabet;
use crate::dsu::Dsu;

/// Memo table for single-symbol derivatives, shared across the many
/// bisimulation runs a derivative closure performs.
#[derive(Default)]
pub(crate) struct DerivCache {
    map: HashMap<(Ast, char), Ast>,
}

impl DerivCache {
    pub fn new() -> DerivCache {
        DerivCache::default()
    }

    pub fn derivative(&mut self, ast: &Ast, symbol: char) -> Ast {
        if let Some(found) = self.map.get(&(ast.clone(), symbol)) {
            return found.clone();
        }
        let computed = ast.derivative(symbol);
        self.map
            .insert((ast.clone(), symbol), computed.clone());
        computed
    }
}

/// True iff `left` and `right` denote the same language over `alphabet`.
pub(crate) fn bisimilar(
    alphabet: &Alphabet,
    left: &Ast,
    right: &Ast,
    cache: &mut DerivCache,
) -> bool {
    let mut ids: HashMap<Ast, usize> = HashMap::new();
    let mut dsu = Dsu::new(0);
    let mut intern = |ast: &Ast, dsu: &mut Dsu| -> usize {
        if let Some(&id) = ids.get(ast) {
            id
        } else {
            let id = dsu.push();
            ids.insert(ast.clone(), id);
            id
        }
    };

    let mut pending = vec![(left.clone(), right.clone())];
    while let Some((l, r)) = pending.pop() {
        let (li, ri) = (intern(&l, &mut dsu), intern(&r, &mut dsu));
        if !dsu.union(li, ri) {
            continue;
        }
        if l.nullable() != r.nullable() {
            return false;
        }
        for symbol in alphabet.symbols() {
            pending.push((cache.derivative(&l, *symbol), cache.derivative(&r, *symbol)));
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::language::parse::parse;

    fn check(left: &str, right: &str) -> bool {
        let alphabet: Alphabet = "ab".parse().unwrap();
        let l = parse(left, &alphabet).unwrap();
        let r = parse(right, &alphabet).unwrap();
        bisimilar(&alphabet, &l, &r, &mut DerivCache::new())
    }

    #[test]
    fn structural_identity_is_semantic() {
        assert!(check("(ab)*", "(ab)*"));
    }

    #[test]
    fn star_unrolling() {
        assert!(check("a*", "ε|aa*"));
        assert!(check("(a|b)*", "(a*b*)*"));
    }

    #[test]
    fn de_morgan() {
        assert!(check("!(a&b)", "!a|!b"));
        assert!(check("!(a|b)", "!a&!b"));
    }

    #[test]
    fn full_and_empty() {
        assert!(check("!∅", "(a|b)*|!(a|b)*"));
        assert!(check("∅", "a&b"));
    }

    #[test]
    fn inequivalent_pairs() {
        assert!(!check("a*", "a*b"));
        assert!(!check("(ab)*", "(ba)*"));
        assert!(!check("ε", "∅"));
    }
}

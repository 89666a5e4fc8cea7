//! Expression trees for extended regular expressions and their normal form.
//!
//! Every [`Ast`] held by a [`Language`](super::Language) is kept in
//! ACI-normal form:
//!
//! * `Union` and `Intersect` children are flattened, deduplicated and sorted
//!   by the canonical order (constructor tag, then lexicographic recursion);
//! * unit and annihilator laws are applied: `∅|L = L`, `Σ*&L = L`,
//!   `∅·L = ∅`, `∅&L = ∅`, `ε·L = L`, `∅* = ε`, `ε* = ε`;
//! * `!!L = L` and `L** = L*`.
//!
//! This similarity quotient is what keeps the set of word derivatives of any
//! expression finite, so derivative closures and bisimulations terminate.

use serde::{Deserialize, Serialize};

/// Extended regular expression syntax. `Complement(Empty)` plays the role of
/// the full language Σ*.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ast {
    Empty,
    Epsilon,
    Literal(char),
    Concat(Vec<Ast>),
    Union(Vec<Ast>),
    Intersect(Vec<Ast>),
    Complement(Box<Ast>),
    Star(Box<Ast>),
}

impl Ast {
    /// The full language Σ* in normal form.
    pub fn full() -> Ast {
        Ast::Complement(Box::new(Ast::Empty))
    }

    /// True iff the empty word belongs to the denoted language.
    pub fn nullable(&self) -> bool {
        match self {
            Ast::Empty | Ast::Literal(_) => false,
            Ast::Epsilon | Ast::Star(_) => true,
            Ast::Concat(children) | Ast::Intersect(children) => {
                children.iter().all(Ast::nullable)
            }
            Ast::Union(children) => children.iter().any(Ast::nullable),
            Ast::Complement(child) => !child.nullable(),
        }
    }

    /// Rewrites an arbitrary expression into ACI-normal form.
    pub fn normalize(&self) -> Ast {
        match self {
            Ast::Empty => Ast::Empty,
            Ast::Epsilon => Ast::Epsilon,
            Ast::Literal(symbol) => Ast::Literal(*symbol),
            Ast::Concat(children) => concat_of(children.iter().map(Ast::normalize).collect()),
            Ast::Union(children) => union_of(children.iter().map(Ast::normalize).collect()),
            Ast::Intersect(children) => {
                intersect_of(children.iter().map(Ast::normalize).collect())
            }
            Ast::Complement(child) => complement_of(child.normalize()),
            Ast::Star(child) => star_of(child.normalize()),
        }
    }

    /// Brzozowski derivative with respect to one symbol. Assumes `self` is in
    /// normal form; the result is in normal form.
    pub(crate) fn derivative(&self, symbol: char) -> Ast {
        match self {
            Ast::Empty | Ast::Epsilon => Ast::Empty,
            Ast::Literal(other) => {
                if *other == symbol {
                    Ast::Epsilon
                } else {
                    Ast::Empty
                }
            }
            Ast::Concat(children) => {
                // d(c₀·rest) = d(c₀)·rest, plus d(rest) for every nullable
                // prefix c₀…cᵢ.
                let mut terms = Vec::new();
                for (i, child) in children.iter().enumerate() {
                    let mut factors = vec![child.derivative(symbol)];
                    factors.extend(children[i + 1..].iter().cloned());
                    terms.push(concat_of(factors));
                    if !child.nullable() {
                        break;
                    }
                }
                union_of(terms)
            }
            Ast::Union(children) => {
                union_of(children.iter().map(|c| c.derivative(symbol)).collect())
            }
            Ast::Intersect(children) => {
                intersect_of(children.iter().map(|c| c.derivative(symbol)).collect())
            }
            Ast::Complement(child) => complement_of(child.derivative(symbol)),
            Ast::Star(child) => {
                concat_of(vec![child.derivative(symbol), Ast::Star(child.clone())])
            }
        }
    }

    /// Saturating upper bound on the number of distinct word derivatives of
    /// `self` under ACI normalization, the classical similarity bound:
    /// `d(a) ≤ 3`, `d(R|S), d(R&S) ≤ d(R)·d(S)`, `d(!R) = d(R)`,
    /// `d(R·S) ≤ d(R)·2^d(S)`, `d(R*) ≤ 2^d(R)+1`.
    pub fn derivative_count_bound(&self) -> u64 {
        match self {
            Ast::Empty => 1,
            Ast::Epsilon => 2,
            Ast::Literal(_) => 3,
            Ast::Union(children) | Ast::Intersect(children) => children
                .iter()
                .map(Ast::derivative_count_bound)
                .fold(1u64, u64::saturating_mul),
            Ast::Complement(child) => child.derivative_count_bound(),
            Ast::Concat(children) => match children.split_last() {
                None => 2,
                Some((last, init)) => {
                    let mut bound = last.derivative_count_bound();
                    for child in init.iter().rev() {
                        bound = child
                            .derivative_count_bound()
                            .saturating_mul(saturating_pow2(bound));
                    }
                    bound
                }
            },
            Ast::Star(child) => {
                saturating_pow2(child.derivative_count_bound()).saturating_add(1)
            }
        }
    }

    /// All literal symbols occurring in the expression.
    pub(crate) fn literals(&self, out: &mut Vec<char>) {
        match self {
            Ast::Empty | Ast::Epsilon => {}
            Ast::Literal(symbol) => out.push(*symbol),
            Ast::Concat(children) | Ast::Union(children) | Ast::Intersect(children) => {
                for child in children {
                    child.literals(out);
                }
            }
            Ast::Complement(child) | Ast::Star(child) => child.literals(out),
        }
    }
}

fn saturating_pow2(exp: u64) -> u64 {
    if exp >= 63 {
        u64::MAX
    } else {
        1u64 << exp
    }
}

/// Concatenation of already-normalized factors.
pub(crate) fn concat_of(factors: Vec<Ast>) -> Ast {
    let mut flat = Vec::with_capacity(factors.len());
    for factor in factors {
        match factor {
            Ast::Empty => return Ast::Empty,
            Ast::Epsilon => {}
            Ast::Concat(inner) => flat.extend(inner),
            other => flat.push(other),
        }
    }
    match flat.len() {
        0 => Ast::Epsilon,
        1 => flat.pop().unwrap(),
        _ => Ast::Concat(flat),
    }
}

/// Union of already-normalized alternatives.
pub(crate) fn union_of(alternatives: Vec<Ast>) -> Ast {
    let mut flat = Vec::with_capacity(alternatives.len());
    for alternative in alternatives {
        match alternative {
            Ast::Empty => {}
            Ast::Union(inner) => flat.extend(inner),
            other => flat.push(other),
        }
    }
    flat.sort();
    flat.dedup();
    match flat.len() {
        0 => Ast::Empty,
        1 => flat.pop().unwrap(),
        _ => Ast::Union(flat),
    }
}

/// Intersection of already-normalized parts.
pub(crate) fn intersect_of(parts: Vec<Ast>) -> Ast {
    let full = Ast::full();
    let mut flat = Vec::with_capacity(parts.len());
    for part in parts {
        match part {
            Ast::Empty => return Ast::Empty,
            Ast::Intersect(inner) => flat.extend(inner.into_iter().filter(|c| *c != full)),
            other if other == full => {}
            other => flat.push(other),
        }
    }
    flat.sort();
    flat.dedup();
    match flat.len() {
        0 => full,
        1 => flat.pop().unwrap(),
        _ => Ast::Intersect(flat),
    }
}

/// Complement of an already-normalized expression.
pub(crate) fn complement_of(child: Ast) -> Ast {
    match child {
        Ast::Complement(inner) => *inner,
        other => Ast::Complement(Box::new(other)),
    }
}

/// Kleene star of an already-normalized expression.
pub(crate) fn star_of(child: Ast) -> Ast {
    match child {
        Ast::Empty | Ast::Epsilon => Ast::Epsilon,
        star @ Ast::Star(_) => star,
        other => Ast::Star(Box::new(other)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(c: char) -> Ast {
        Ast::Literal(c)
    }

    #[test]
    fn union_is_flattened_sorted_deduped() {
        let raw = Ast::Union(vec![
            lit('b'),
            Ast::Union(vec![lit('a'), lit('b')]),
            Ast::Empty,
        ]);
        assert_eq!(raw.normalize(), Ast::Union(vec![lit('a'), lit('b')]));
    }

    #[test]
    fn concat_absorbs_empty_and_drops_epsilon() {
        let raw = Ast::Concat(vec![lit('a'), Ast::Empty, lit('b')]);
        assert_eq!(raw.normalize(), Ast::Empty);
        let raw = Ast::Concat(vec![Ast::Epsilon, lit('a'), Ast::Epsilon]);
        assert_eq!(raw.normalize(), lit('a'));
    }

    #[test]
    fn star_laws() {
        assert_eq!(Ast::Star(Box::new(Ast::Empty)).normalize(), Ast::Epsilon);
        assert_eq!(Ast::Star(Box::new(Ast::Epsilon)).normalize(), Ast::Epsilon);
        let double = Ast::Star(Box::new(Ast::Star(Box::new(lit('a')))));
        assert_eq!(double.normalize(), Ast::Star(Box::new(lit('a'))));
    }

    #[test]
    fn double_complement_cancels() {
        let raw = Ast::Complement(Box::new(Ast::Complement(Box::new(lit('a')))));
        assert_eq!(raw.normalize(), lit('a'));
    }

    #[test]
    fn intersect_identity_and_annihilator() {
        let raw = Ast::Intersect(vec![Ast::full(), lit('a')]);
        assert_eq!(raw.normalize(), lit('a'));
        let raw = Ast::Intersect(vec![lit('a'), Ast::Empty]);
        assert_eq!(raw.normalize(), Ast::Empty);
        let raw = Ast::Intersect(vec![Ast::full()]);
        assert_eq!(raw.normalize(), Ast::full());
    }

    #[test]
    fn nullable_cases() {
        assert!(Ast::Epsilon.nullable());
        assert!(!lit('a').nullable());
        assert!(Ast::Star(Box::new(lit('a'))).nullable());
        assert!(!Ast::Complement(Box::new(Ast::Star(Box::new(lit('a'))))).nullable());
        assert!(Ast::full().nullable());
    }

    #[test]
    fn derivative_of_concat_with_nullable_head() {
        // d_a((a|b)* a) = (a|b)* a | ε
        let star = Ast::Star(Box::new(Ast::Union(vec![lit('a'), lit('b')])));
        let expr = Ast::Concat(vec![star.clone(), lit('a')]).normalize();
        let expected = union_of(vec![
            concat_of(vec![star, lit('a')]),
            Ast::Epsilon,
        ]);
        assert_eq!(expr.derivative('a'), expected);
    }

    #[test]
    fn derivative_bound_saturates() {
        let mut deep = lit('a');
        for _ in 0..12 {
            deep = Ast::Star(Box::new(Ast::Concat(vec![deep.clone(), deep]))).normalize();
        }
        assert_eq!(deep.derivative_count_bound(), u64::MAX);
    }
}
